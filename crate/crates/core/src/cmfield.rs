//! Galois classification of sextic CM-fields, CM-types and the prime bound.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactmath::arith::{
    floor, fmt_rational, is_prime, kronecker_prime, prev_prime, rat, rational_sqrt,
    squarefree_kernel,
};
use crate::exactmath::{sqrt_in_field, CMFieldSpec, CubicFieldSpec, CubicNum};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GaloisClass {
    CyclicC6,
    DihedralD12,
    ElemC2cubeSemidirectC3,
    ElemC2cubeSemidirectS3,
}

impl GaloisClass {
    pub fn case_index(self) -> u8 {
        match self {
            GaloisClass::CyclicC6 => 1,
            GaloisClass::DihedralD12 => 2,
            GaloisClass::ElemC2cubeSemidirectC3 | GaloisClass::ElemC2cubeSemidirectS3 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GaloisClass::CyclicC6 => "C6",
            GaloisClass::DihedralD12 => "D12",
            GaloisClass::ElemC2cubeSemidirectC3 => "(C2)^3:C3",
            GaloisClass::ElemC2cubeSemidirectS3 => "(C2)^3:S3",
        }
    }
}

/// `α = d s²` with `d < 0` squarefree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImQuadWitness {
    pub d: i64,
    pub s: CubicNum,
}

/// A CM-type up to complex conjugation.
///
/// `signs` are attached to the ascending real roots of g with `signs[0] = +1`. For cases 1
/// and 2 they are relative to `√d` of the imaginary quadratic subfield, for case 3 relative
/// to `η = √α`. `exponents` is the label `{a, b}` of `{1, σ^a, σ^b}` in case 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CMType {
    pub case: u8,
    pub signs: [i8; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<[u8; 2]>,
    pub primitive: bool,
}

/// Is the discriminant of g a rational square (Galois group C3)?
pub fn cubic_is_cyclic(base: &CubicFieldSpec) -> bool {
    rational_sqrt(&base.discriminant()).is_some()
}

pub fn imaginary_quadratic_subfield(spec: &CMFieldSpec) -> Option<ImQuadWitness> {
    let n = spec.norm_alpha();
    let d = squarefree_kernel(&(n.numer() * n.denom()));
    if !d.is_negative() {
        return None;
    }
    let x = spec.alpha.scale(&Rational::from_integer(d.clone()).recip());
    let s = sqrt_in_field(&x, &spec.base)?;
    Some(ImQuadWitness { d: d.to_i64()?, s })
}

pub fn classify(spec: &CMFieldSpec) -> Result<GaloisClass> {
    let cyclic = cubic_is_cyclic(&spec.base);
    let imquad = imaginary_quadratic_subfield(spec).is_some();
    if !imquad && spec.alpha_is_rational() {
        return invalid("rational alpha without an imaginary quadratic subfield");
    }
    Ok(match (imquad, cyclic) {
        (true, true) => GaloisClass::CyclicC6,
        (true, false) => GaloisClass::DihedralD12,
        (false, true) => GaloisClass::ElemC2cubeSemidirectC3,
        (false, false) => GaloisClass::ElemC2cubeSemidirectS3,
    })
}

/// The automorphism of a cyclic cubic field sending the smallest root of g to the middle one,
/// as the image `h(β)` of the generator.
pub fn cyclic_automorphism(base: &CubicFieldSpec) -> Option<CubicNum> {
    if !cubic_is_cyclic(base) {
        return None;
    }
    let roots = base.roots(160);
    let pts: [Rational; 3] = std::array::from_fn(|i| roots[i].midpoint());
    let images = [pts[1].clone(), pts[2].clone(), pts[0].clone()];
    let h = base.reconstruct_from_values(&pts, &images, &BigInt::from(1_000_000))?;
    base.eval_poly(base.g(), &h).is_zero().then_some(h)
}

/// Signs `(ε₂, ε₃)` of the order-3 automorphism lift acting on η, see [`CMType`].
fn case1_lift_signs(spec: &CMFieldSpec) -> Option<(i32, i32)> {
    let k = &spec.base;
    let h = cyclic_automorphism(k)?;
    let h_alpha = k.eval_poly(&spec.alpha.to_poly(), &h);
    let ratio = k.div(&h_alpha, &spec.alpha)?;
    let mut u = sqrt_in_field(&ratio, k)?;
    if k.norm(&u) == rat(-1) {
        u = u.neg();
    }
    let s = k.signs(&u);
    Some((s[0], s[0] * s[1]))
}

const REPRESENTATIVES: [[i8; 3]; 4] = [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]];

fn normalize(v: [i32; 3]) -> [i32; 3] {
    if v[0] < 0 {
        [-v[0], -v[1], -v[2]]
    } else {
        v
    }
}

pub fn enumerate_cm_types(spec: &CMFieldSpec) -> Result<Vec<CMType>> {
    let class = classify(spec)?;
    let case = class.case_index();
    if case == 3 {
        return Ok(REPRESENTATIVES
            .iter()
            .map(|&signs| CMType {
                case,
                signs,
                exponents: None,
                primitive: true,
            })
            .collect());
    }
    let w = imaginary_quadratic_subfield(spec).expect("classified with a witness");
    let labels = if case == 1 {
        let (e2, e3) = case1_lift_signs(spec)
            .ok_or_else(|| crate::Error::Internal("no order-3 automorphism lift".into()))?;
        let s_signs = spec.base.signs(&w.s);
        Some((e2, e3, s_signs))
    } else {
        None
    };
    Ok(REPRESENTATIVES
        .iter()
        .map(|&signs| {
            let exponents = labels.map(|(e2, e3, ss)| {
                // η = √d · s, so the η-relative signs pick up the signs of s
                let eta = normalize(std::array::from_fn(|i| signs[i] as i32 * ss[i]));
                let a = if eta[1] == e2 { 4 } else { 1 };
                let b = if eta[2] == e3 { 2 } else { 5 };
                [a, b]
            });
            CMType {
                case,
                signs,
                exponents,
                primitive: signs != [1, 1, 1],
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeBound {
    pub trace: Rational,
    pub bound: Rational,
    pub max_prime: Option<u64>,
    /// The bound is a theorem only for fields without an imaginary quadratic subfield.
    pub applicable: bool,
}

/// `4 Tr(α)⁶ / 3⁶` and the largest prime not exceeding it.
pub fn prime_bound(spec: &CMFieldSpec) -> Result<PrimeBound> {
    if spec.alpha_is_rational() {
        return invalid("prime bound needs a non-rational alpha");
    }
    let trace = spec.trace_alpha();
    let bound = rat(4) * num_traits::pow(trace.clone(), 6) / rat(729);
    let max_prime = floor(&bound).to_u64().and_then(prev_prime);
    let applicable = classify(spec)?.case_index() == 3;
    Ok(PrimeBound {
        trace,
        bound,
        max_prime,
        applicable,
    })
}

/// Searches `α s²` over nonzero integral `s` with coordinates in `[-height, height]` for the
/// smallest `|Tr|`. Ties keep the first in lexicographic order; `s = 1` wins ties with itself.
pub fn minimize_trace(spec: &CMFieldSpec, height: i64) -> Result<(CMFieldSpec, CubicNum)> {
    let mut best = (spec.trace_alpha().abs(), CubicNum::one());
    for a in -height..=height {
        for b in -height..=height {
            for c in -height..=height {
                let s = CubicNum::from_i64s([a, b, c]);
                if s.is_zero() {
                    continue;
                }
                let x = spec.base.mul(&spec.alpha, &spec.base.square(&s));
                let t = spec.base.trace(&x).abs();
                if t < best.0 {
                    best = (t, s);
                }
            }
        }
    }
    Ok((spec.rescaled(&best.1)?, best.1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionType {
    Ordinary,
    Supersingular,
}

/// Reduction type of an elliptic curve with CM by `Q(√d)` at `p`.
pub fn deuring_type(d: i64, p: u64) -> Result<ReductionType> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if d >= 0 || !crate::exactmath::arith::is_squarefree_i64(d) {
        return invalid(format!("{d} is not a negative squarefree integer"));
    }
    let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
    Ok(match kronecker_prime(disc, p) {
        1 => ReductionType::Ordinary,
        _ => ReductionType::Supersingular,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CMFieldReport {
    pub galois: String,
    pub case: u8,
    pub im_quad_d: Option<i64>,
    pub cm_types: Vec<CMType>,
    pub bound: Option<String>,
    pub max_prime: Option<u64>,
    pub bound_applicable: bool,
}

pub fn report(spec: &CMFieldSpec) -> Result<CMFieldReport> {
    let class = classify(spec)?;
    let bound = if spec.alpha_is_rational() {
        None
    } else {
        Some(prime_bound(spec)?)
    };
    Ok(CMFieldReport {
        galois: format!("{class:?}"),
        case: class.case_index(),
        im_quad_d: imaginary_quadratic_subfield(spec).map(|w| w.d),
        cm_types: enumerate_cm_types(spec)?,
        bound: bound.as_ref().map(|b| fmt_rational(&b.bound)),
        max_prime: bound.as_ref().and_then(|b| b.max_prime),
        bound_applicable: bound.is_some_and(|b| b.applicable),
    })
}
