//! Exhaustive search for skew `Q` over one maximal order with `c_α(Q²) = 0`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{check_candidate, EmbeddingCandidate};
use crate::error::{internal, invalid, Error, Result};
use crate::exactmath::arith::floor;
use crate::exactmath::sturm::real_roots_refined;
use crate::exactmath::CMFieldSpec;
use crate::quaternion::{build_algebra, enumerate_coords, maximal_order, Coords, Mat3, OrderBasis};

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Stop a partition after this many complete matrices (the outcome is then not exhausted).
    pub max_nodes_per_partition: Option<u64>,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Replaces `-Tr(α)` as the norm budget.
    pub budget_override: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub solutions: Vec<EmbeddingCandidate>,
    pub exhausted: bool,
    pub budget: i64,
    pub nodes_visited: u64,
}

type CMat = [[Coords; 3]; 3];

struct Ctx<'a> {
    order: &'a OrderBasis,
    /// `c_α` scaled to integer coefficients, low degree first.
    coeffs: [i64; 4],
    lo: i64,
    hi: i64,
    diag: BTreeMap<i64, Vec<Coords>>,
    off: BTreeMap<i64, Vec<Coords>>,
    limit: Option<u64>,
}

struct PartResult {
    found: Vec<CMat>,
    nodes: u64,
    complete: bool,
}

fn add(x: &Coords, y: &Coords) -> Coords {
    [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]]
}

fn mat_mul(o: &OrderBasis, x: &CMat, y: &CMat) -> CMat {
    let mut out = [[[0i64; 4]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] = add(&out[i][j], &o.mul_coords(&x[i][k], &y[k][j]));
            }
        }
    }
    out
}

impl Ctx<'_> {
    /// `c_α(M) = 0` for `M = Q²`, after the cheap `n₁` identity.
    fn accepts(&self, q: &CMat) -> bool {
        let o = self.order;
        let m = mat_mul(o, q, q);
        // n₁·k3 = k3·(ae + eℓ + aℓ - Nrd b - Nrd c - Nrd f); diagonal entries are integers
        let one = o.scalar_coords(1);
        let diag: Vec<i64> = (0..3)
            .map(|i| {
                let k = one.iter().position(|&c| c != 0).expect("1 is nonzero");
                m[i][i][k] / one[k]
            })
            .collect();
        let n1 = diag[0] * diag[1] + diag[1] * diag[2] + diag[0] * diag[2]
            - o.nrd_coords(&m[0][1])
            - o.nrd_coords(&m[0][2])
            - o.nrd_coords(&m[1][2]);
        if n1 * self.coeffs[3] != self.coeffs[1] {
            return false;
        }
        let m2 = mat_mul(o, &m, &m);
        let m3 = mat_mul(o, &m2, &m);
        for i in 0..3 {
            for j in 0..3 {
                for t in 0..4 {
                    let mut v = self.coeffs[3] * m3[i][j][t]
                        + self.coeffs[2] * m2[i][j][t]
                        + self.coeffs[1] * m[i][j][t];
                    if i == j {
                        v += self.coeffs[0] * one[t];
                    }
                    if v != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `d` is the negated diagonal entry `Nrd(x_i) + Σ Nrd(q_ij)`.
    fn in_window(&self, d: i64) -> bool {
        (self.lo..=self.hi).contains(&d)
    }

    fn partition(&self, triple: [i64; 3], rest: i64) -> PartResult {
        let o = self.order;
        let mut res = PartResult {
            found: Vec::new(),
            nodes: 0,
            complete: true,
        };
        let empty = Vec::new();
        let diag_of = |n: i64| self.diag.get(&n).unwrap_or(&empty);
        let off_of = |n: i64| self.off.get(&n).unwrap_or(&empty);
        // off-diagonal norm triples (m12, m13, m23) with sum `rest`, ascending lexicographic
        let mut shells = Vec::new();
        for m12 in 0..=rest {
            for m13 in 0..=rest - m12 {
                let m23 = rest - m12 - m13;
                let a = triple[0] + m12 + m13;
                let e = triple[1] + m12 + m23;
                let l = triple[2] + m13 + m23;
                // at most one zero off-diagonal norm, else Q splits off a rational eigenvalue of Q²
                let zeros = [m12, m13, m23].iter().filter(|&&m| m == 0).count();
                if zeros <= 1 && self.in_window(a) && self.in_window(e) && self.in_window(l) {
                    shells.push([m12, m13, m23]);
                }
            }
        }
        for &[m12, m13, m23] in &shells {
            for x1 in diag_of(triple[0]) {
                for x2 in diag_of(triple[1]) {
                    for x3 in diag_of(triple[2]) {
                        for q12 in off_of(m12) {
                            for q13 in off_of(m13) {
                                for q23 in off_of(m23) {
                                    if let Some(lim) = self.limit {
                                        if res.nodes >= lim {
                                            res.complete = false;
                                            return res;
                                        }
                                    }
                                    res.nodes += 1;
                                    let neg = |x: &Coords| o.conj_coords(x).map(|c| -c);
                                    let q: CMat = [
                                        [*x1, *q12, *q13],
                                        [neg(q12), *x2, *q23],
                                        [neg(q13), neg(q23), *x3],
                                    ];
                                    if self.accepts(&q) {
                                        res.found.push(q);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        res
    }
}

/// Searches `M₃(O)` at `p` for skew `Q` with `c_α(Q²) = 0` whose norms fill the budget
/// `B = -Tr(α)`. Every hit is re-certified by [`check_candidate`].
pub fn search_solutions(spec: &CMFieldSpec, p: u64, opts: &SearchOptions) -> Result<SearchOutcome> {
    if spec.alpha_is_rational() {
        return invalid("the search needs α generating K+");
    }
    let tr = spec.trace_alpha();
    let budget = match opts.budget_override {
        Some(b) => b,
        None => {
            if !tr.is_integer() {
                return invalid(format!("budget -Tr(α) = {} is not an integer", -tr));
            }
            (-tr.to_integer())
                .to_i64()
                .ok_or_else(|| Error::InvalidInput("budget too large".into()))?
        }
    };
    let alg = build_algebra(p)?;
    let order = maximal_order(&alg)?;
    let empty = |nodes| SearchOutcome {
        solutions: Vec::new(),
        exhausted: true,
        budget,
        nodes_visited: nodes,
    };
    // s and t nonzero cost at least 2 + 2
    if budget < 4 {
        return Ok(empty(0));
    }

    let c = spec.alpha_charpoly();
    let den = c
        .coeffs()
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    let mut coeffs = [0i64; 4];
    for (i, k) in coeffs.iter_mut().enumerate() {
        let v = c.coeff(i) * num_rational::BigRational::from_integer(den.clone());
        *k = v
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::InvalidInput("coefficients too large".into()))?;
    }
    let roots = real_roots_refined(&c, 8)?;
    let lo_root = roots
        .iter()
        .map(|r| r.lo.clone())
        .min()
        .expect("three roots");
    let hi_root = roots
        .iter()
        .map(|r| r.hi.clone())
        .max()
        .expect("three roots");
    // each diagonal entry of Q² is a Rayleigh quotient, so its negation lies in [-λmax, -λmin]
    let lo = floor(&-hi_root).to_i64().unwrap_or(i64::MIN);
    let hi = (-lo_root).ceil().to_integer().to_i64().unwrap_or(i64::MAX);

    let group = |xs: Vec<Coords>| {
        let mut m: BTreeMap<i64, Vec<Coords>> = BTreeMap::new();
        for x in xs {
            m.entry(order.nrd_coords(&x)).or_default().push(x);
        }
        m
    };
    let ctx = Ctx {
        order: &order,
        coeffs,
        lo,
        hi,
        diag: group(enumerate_coords(&order, budget, true)),
        off: group(enumerate_coords(&order, budget / 2, false)),
        limit: opts.max_nodes_per_partition,
    };

    let mut parts = Vec::new();
    for n1 in 0..=budget {
        for n2 in 0..=budget - n1 {
            for n3 in 0..=budget - n1 - n2 {
                let rest = budget - n1 - n2 - n3;
                let present = |n| ctx.diag.contains_key(&n);
                if rest % 2 == 0 && present(n1) && present(n2) && present(n3) {
                    parts.push(([n1, n2, n3], rest / 2));
                }
            }
        }
    }
    let run = || {
        parts
            .par_iter()
            .map(|(t, r)| ctx.partition(*t, *r))
            .collect::<Vec<_>>()
    };
    let results = crate::with_workers(opts.workers, run)?;

    let mut out = empty(0);
    for r in results {
        out.nodes_visited += r.nodes;
        out.exhausted &= r.complete;
        for q in r.found {
            let qm = Mat3::from_fn(|i, j| order.element(&q[i][j]));
            let m = alg.mat3_mul(&qm, &qm);
            let cand = EmbeddingCandidate::new(spec, &order, m, qm);
            let report = check_candidate(&cand)?;
            if !report.overall {
                return internal(format!(
                    "accepted matrix fails {}",
                    report.first_failure.map(|c| c.id).unwrap_or_default()
                ));
            }
            out.solutions.push(cand);
        }
    }
    Ok(out)
}
