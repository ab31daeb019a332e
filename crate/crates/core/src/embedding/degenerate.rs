//! Embeddings built from an imaginary quadratic subfield `ℚ(√d) ⊂ K`.

use super::symmetric::{symmetric_matrix_with_charpoly_bounded, DEFAULT_MAX_DENOMINATOR};
use super::{check_candidate, ElementData, EmbeddingCandidate};
use crate::cmfield::imaginary_quadratic_subfield;
use crate::error::{internal, Error, Result};
use crate::exactmath::arith::rat;
use crate::exactmath::CMFieldSpec;
use crate::quaternion::{build_algebra, enumerate_coords, maximal_order, Mat3};
use crate::QMatrix3;

/// With `α = d s²` and `ω` in the maximal order at `p` with `ω² = d`: `M = α(S)`, `N = ω·s(S)`
/// for a symmetric rational `S` with characteristic polynomial g. If `N` leaves the order,
/// falls back to `M = S`, `N = ω·I`, which embeds `ℤ[β, √d]`.
pub fn degenerate_solution(spec: &CMFieldSpec, p: u64) -> Result<EmbeddingCandidate> {
    degenerate_solution_with(spec, p, DEFAULT_MAX_DENOMINATOR)
}

/// As [`degenerate_solution`], with the denominator bound of the symmetric-matrix search.
pub fn degenerate_solution_with(
    spec: &CMFieldSpec,
    p: u64,
    max_den: i64,
) -> Result<EmbeddingCandidate> {
    let w = imaginary_quadratic_subfield(spec)
        .ok_or_else(|| Error::NoWitness("the field has no imaginary quadratic subfield".into()))?;
    let alg = build_algebra(p)?;
    let order = maximal_order(&alg)?;
    let nd = w.d.unsigned_abs() as i64;
    let omega = enumerate_coords(&order, nd, true)
        .into_iter()
        .find(|x| order.nrd_coords(x) == nd)
        .map(|x| order.element(&x))
        .ok_or_else(|| {
            Error::NoWitness(format!(
                "no element with square {} in the maximal order at p = {p}",
                w.d
            ))
        })?;

    let s_beta = symmetric_matrix_with_charpoly_bounded(spec.base.g(), max_den)?;
    let on_s = |x: &crate::exactmath::CubicNum| s_beta.eval_poly(&x.to_poly());
    let m = Mat3::from_scalars(&on_s(&spec.alpha));
    let s_of = on_s(&w.s);
    let n = QMatrix3::from_fn(|i, j| omega.scale(&s_of[(i, j)]));
    let in_order = |x: &QMatrix3| x.e.iter().flatten().all(|q| order.contains(q));
    if !spec.alpha_is_rational() && in_order(&m) && in_order(&n) {
        let cand = EmbeddingCandidate::new(spec, &order, m, n);
        if check_candidate(&cand)?.overall {
            return Ok(cand);
        }
    }

    let m = Mat3::from_scalars(&s_beta);
    let n = QMatrix3::from_fn(|i, j| {
        if i == j {
            omega.clone()
        } else {
            crate::Quaternion::zero()
        }
    });
    if !in_order(&m) {
        return Err(Error::NotFound("no integral symmetric matrix for g".into()));
    }
    let mut cand = EmbeddingCandidate::new(spec, &order, m, n);
    cand.element = ElementData {
        charpoly: spec.base.g().clone(),
        eta_trace: [rat(0), rat(0), rat(0)],
        eta_norm: [rat(-w.d), rat(0), rat(0)],
    };
    let report = check_candidate(&cand)?;
    if !report.overall {
        return internal(format!(
            "degenerate candidate fails {:?}",
            report.first_failure.map(|c| c.id)
        ));
    }
    Ok(cand)
}
