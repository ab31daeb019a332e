//! Candidates for the embedding problem, the relation battery, the exhaustive search and the
//! degenerate construction from an imaginary quadratic subfield.

mod check;
mod degenerate;
mod search;
mod symmetric;

pub use check::{check_candidate, Check, ConstraintReport};
pub use degenerate::{degenerate_solution, degenerate_solution_with};
pub use search::{search_solutions, SearchOptions, SearchOutcome};
pub use symmetric::{
    symmetric_matrix_with_charpoly, symmetric_matrix_with_charpoly_bounded, DEFAULT_MAX_DENOMINATOR,
};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactmath::arith::{fmt_rational, parse_rational, rat};
use crate::exactmath::CMFieldSpec;
use crate::quaternion::{Mat3, OrderBasis, QuaternionAlgebra};
use crate::{QMatrix3, Quaternion, Rational, UniPoly};

/// What the matrix `M` represents: an element `x` of K+ with characteristic polynomial
/// `charpoly`, and `Tr_{K/K+}(η)`, `N_{K/K+}(η)` written over the power basis `1, x, x²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementData {
    pub charpoly: UniPoly,
    pub eta_trace: [Rational; 3],
    pub eta_norm: [Rational; 3],
}

impl ElementData {
    /// `M = ι(α)`, `N = ι(η)` with `η² = α`: trace 0, norm `-α`.
    pub fn for_alpha(spec: &CMFieldSpec) -> Self {
        ElementData {
            charpoly: spec.alpha_charpoly(),
            eta_trace: [rat(0), rat(0), rat(0)],
            eta_norm: [rat(0), rat(-1), rat(0)],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingCandidate {
    pub m: QMatrix3,
    pub n: QMatrix3,
    pub order: OrderBasis,
    pub spec: CMFieldSpec,
    pub element: ElementData,
}

impl EmbeddingCandidate {
    pub fn new(spec: &CMFieldSpec, order: &OrderBasis, m: QMatrix3, n: QMatrix3) -> Self {
        EmbeddingCandidate {
            m,
            n,
            order: order.clone(),
            spec: spec.clone(),
            element: ElementData::for_alpha(spec),
        }
    }

    pub fn alg(&self) -> &QuaternionAlgebra {
        &self.order.alg
    }

    pub fn to_json(&self) -> CandidateJson {
        let default = ElementData::for_alpha(&self.spec);
        let custom = self.element != default;
        CandidateJson {
            m: self
                .m
                .to_strings()
                .into_iter()
                .map(|r| r.into_iter().map(|q| q.to_vec()).collect())
                .collect(),
            n: self
                .n
                .to_strings()
                .into_iter()
                .map(|r| r.into_iter().map(|q| q.to_vec()).collect())
                .collect(),
            m_charpoly: custom.then(|| {
                self.element
                    .charpoly
                    .coeffs()
                    .iter()
                    .map(fmt_rational)
                    .collect()
            }),
            eta_trace: custom.then(|| self.element.eta_trace.iter().map(fmt_rational).collect()),
            eta_norm: custom.then(|| self.element.eta_norm.iter().map(fmt_rational).collect()),
        }
    }

    pub fn from_json(spec: &CMFieldSpec, order: &OrderBasis, j: &CandidateJson) -> Result<Self> {
        let m = Mat3::from_strings(&j.m)?;
        let n = Mat3::from_strings(&j.n)?;
        let mut cand = EmbeddingCandidate::new(spec, order, m, n);
        if let Some(cp) = &j.m_charpoly {
            let cs: Vec<Rational> = cp
                .iter()
                .map(|c| parse_rational(c))
                .collect::<Result<_>>()?;
            cand.element.charpoly = UniPoly::new(cs);
        }
        let triple = |v: &Option<Vec<String>>, dflt: &[Rational; 3]| -> Result<[Rational; 3]> {
            match v {
                None => Ok(dflt.clone()),
                Some(v) if v.len() == 3 => Ok([
                    parse_rational(&v[0])?,
                    parse_rational(&v[1])?,
                    parse_rational(&v[2])?,
                ]),
                Some(_) => invalid("coefficient vectors have 3 entries"),
            }
        };
        cand.element.eta_trace = triple(&j.eta_trace, &cand.element.eta_trace)?;
        cand.element.eta_norm = triple(&j.eta_norm, &cand.element.eta_norm)?;
        Ok(cand)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CandidateJson {
    #[serde(rename = "M")]
    pub m: Vec<Vec<Vec<String>>>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_charpoly: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_trace: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_norm: Option<Vec<String>>,
}

/// A pair of entries of `T` that do not commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoncommWitness {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub x: Quaternion,
    pub y: Quaternion,
}

/// Finds two entries of `T` that fail to commute, scanning pairs in row-major order.
pub fn noncommutativity_check(alg: &QuaternionAlgebra, t: &QMatrix3) -> Option<NoncommWitness> {
    let pos: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
    for (k, &a) in pos.iter().enumerate() {
        for &b in &pos[k + 1..] {
            let (x, y) = (&t.e[a.0][a.1], &t.e[b.0][b.1]);
            if !alg.commutes(x, y) {
                return Some(NoncommWitness {
                    first: a,
                    second: b,
                    x: x.clone(),
                    y: y.clone(),
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests;
