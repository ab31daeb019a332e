use super::*;
use crate::exactmath::arith::ratio;
use crate::quaternion::{build_algebra, charpoly12, maximal_order, to_m12q};

fn zeta7() -> CMFieldSpec {
    CMFieldSpec::from_i64s([-1, -2, 1, 1], [-4, 0, 1], false).unwrap()
}

fn case3() -> CMFieldSpec {
    CMFieldSpec::from_i64s([-7, 14, -7, 1], [1, -6, 1], false).unwrap()
}

#[test]
fn degenerate_zeta7_at_7_passes_everything() {
    let cand = degenerate_solution(&zeta7(), 7).unwrap();
    let rep = check_candidate(&cand).unwrap();
    assert!(rep.overall, "{:?}", rep.first_failure);
    assert_eq!(rep.checks.len(), 8 + 6 + 9 + 9 + 9 + 9 + 3);
    for id in [
        "(int)",
        "(5)",
        "(1a)",
        "(2)",
        "(3)",
        "(4)",
        "(ix)",
        "(IX)",
        "comm-dual-7",
        "m1",
        "n1",
        "s1",
    ] {
        assert!(rep.passed(id), "{id}");
    }
}

#[test]
fn degenerate_needs_witness() {
    assert!(matches!(
        degenerate_solution(&zeta7(), 11),
        Err(crate::Error::NoWitness(_))
    ));
    assert!(matches!(
        degenerate_solution(&case3(), 7),
        Err(crate::Error::NoWitness(_))
    ));
}

#[test]
fn corrupted_skewness_is_caught() {
    let mut cand = degenerate_solution(&zeta7(), 7).unwrap();
    cand.n.e[0][1] = cand.n.e[0][1].add(&Quaternion::one());
    let rep = check_candidate(&cand).unwrap();
    assert!(!rep.overall);
    let first = rep.first_failure.as_ref().unwrap();
    assert_eq!(first.id, "(q-s)");
    assert!(!rep.passed("(5)"));
}

#[test]
fn corrupted_diagonal_fails_int() {
    let mut cand = degenerate_solution(&zeta7(), 7).unwrap();
    cand.m.e[0][0] = cand.m.e[0][0].add(&Quaternion::i());
    let rep = check_candidate(&cand).unwrap();
    assert_eq!(rep.first_failure.unwrap().id, "(int)");
}

#[test]
fn entries_outside_order_rejected() {
    let mut cand = degenerate_solution(&zeta7(), 7).unwrap();
    cand.m.e[0][0] = Quaternion::scalar(ratio(1, 3));
    assert!(matches!(
        check_candidate(&cand),
        Err(crate::Error::InvalidInput(_))
    ));
}

#[test]
fn json_roundtrip() {
    let cand = degenerate_solution(&zeta7(), 7).unwrap();
    let j = cand.to_json();
    let back = EmbeddingCandidate::from_json(&cand.spec, &cand.order, &j).unwrap();
    assert_eq!(back, cand);
}

#[test]
fn case3_above_bound_is_empty() {
    let out = search_solutions(&case3(), 186629, &SearchOptions::default()).unwrap();
    assert_eq!(out.budget, 18);
    assert!(out.exhausted);
    assert!(out.solutions.is_empty());
}

#[test]
fn zeta7_search_solutions_certify() {
    let spec = zeta7();
    let out = search_solutions(&spec, 3, &SearchOptions::default()).unwrap();
    assert!(out.exhausted);
    assert!(!out.solutions.is_empty());
    let c4 = spec.alpha_charpoly().pow(4);
    for s in &out.solutions {
        assert!(check_candidate(s).unwrap().overall);
        assert_eq!(charpoly12(&to_m12q(s.alg(), &s.m)), c4);
    }
}

#[test]
fn search_is_worker_independent() {
    let spec = zeta7();
    let a = search_solutions(
        &spec,
        7,
        &SearchOptions {
            workers: Some(1),
            ..Default::default()
        },
    )
    .unwrap();
    let b = search_solutions(
        &spec,
        7,
        &SearchOptions {
            workers: Some(4),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(a.nodes_visited, b.nodes_visited);
    assert_eq!(a.solutions.len(), b.solutions.len());
    for (x, y) in a.solutions.iter().zip(&b.solutions) {
        assert_eq!(x.n, y.n);
    }
}

#[test]
fn small_budget_prefilter() {
    let spec = zeta7();
    let out = search_solutions(
        &spec,
        7,
        &SearchOptions {
            budget_override: Some(3),
            ..Default::default()
        },
    )
    .unwrap();
    assert!(out.exhausted && out.solutions.is_empty() && out.nodes_visited == 0);
}

#[test]
fn noncommutativity_witness() {
    let alg = build_algebra(3).unwrap();
    let _ = maximal_order(&alg).unwrap();
    let rational = QMatrix3::from_fn(|i, j| Quaternion::scalar(rat((i * 3 + j) as i64)));
    assert!(noncommutativity_check(&alg, &rational).is_none());
    let mut t = QMatrix3::zero();
    t.e[0][0] = Quaternion::i();
    t.e[1][2] = Quaternion::j();
    let w = noncommutativity_check(&alg, &t).unwrap();
    assert_eq!((w.first, w.second), ((0, 0), (1, 2)));
}
