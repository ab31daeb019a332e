//! The CM-field `K = K+(η)`, `η² = α`, and its JSON form.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::arith::{fmt_rational, parse_rational, rat};
use super::cubic::{CubicFieldSpec, CubicNum};
use crate::error::{invalid, Result};
use crate::{Rational, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMFieldSpec {
    pub base: CubicFieldSpec,
    pub alpha: CubicNum,
    /// Set for auxiliary fixtures whose α is a rational constant.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FieldSpecFile {
    pub g: Vec<String>,
    pub alpha: Vec<String>,
    #[serde(default)]
    pub degenerate_rational_alpha: bool,
}

impl CMFieldSpec {
    pub fn new(base: CubicFieldSpec, alpha: CubicNum, degenerate: bool) -> Result<Self> {
        if alpha.is_zero() {
            return invalid("alpha is zero");
        }
        if let Some(q) = alpha.as_rational() {
            if !degenerate {
                return invalid(
                    "alpha is rational; set degenerate_rational_alpha for such fixtures",
                );
            }
            if !q.is_negative() {
                return invalid("alpha is not totally negative");
            }
        } else if !base.is_totally_negative(&alpha) {
            return invalid("alpha is not totally negative");
        }
        Ok(CMFieldSpec {
            base,
            alpha,
            degenerate,
        })
    }

    pub fn from_i64s(g: [i64; 4], alpha: [i64; 3], degenerate: bool) -> Result<Self> {
        Self::new(
            CubicFieldSpec::from_i64s(g)?,
            CubicNum::from_i64s(alpha),
            degenerate,
        )
    }

    pub fn alpha_is_rational(&self) -> bool {
        self.alpha.as_rational().is_some()
    }

    /// Characteristic polynomial `c_α` of α over Q.
    pub fn alpha_charpoly(&self) -> UniPoly {
        self.base.charpoly(&self.alpha)
    }

    pub fn trace_alpha(&self) -> Rational {
        self.base.trace(&self.alpha)
    }

    pub fn norm_alpha(&self) -> Rational {
        self.base.norm(&self.alpha)
    }

    /// Same field with α replaced by `α s²`.
    pub fn rescaled(&self, s: &CubicNum) -> Result<Self> {
        let a = self.base.mul(&self.alpha, &self.base.square(s));
        Self::new(self.base.clone(), a, self.degenerate)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: FieldSpecFile = serde_json::from_str(s)
            .map_err(|e| crate::Error::InvalidInput(format!("field spec: {e}")))?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &FieldSpecFile) -> Result<Self> {
        if file.g.len() != 4 {
            return invalid("g must list 4 coefficients c0..c3");
        }
        if file.alpha.len() != 3 {
            return invalid("alpha must list 3 coordinates");
        }
        let g: Vec<Rational> = file
            .g
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<_>>()?;
        if g[3] != rat(1) {
            return invalid("g must be monic");
        }
        let a: Vec<Rational> = file
            .alpha
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<_>>()?;
        let base = CubicFieldSpec::new(UniPoly::new(g))?;
        let alpha = CubicNum::new(a[0].clone(), a[1].clone(), a[2].clone());
        Self::new(base, alpha, file.degenerate_rational_alpha)
    }

    pub fn to_file(&self) -> FieldSpecFile {
        FieldSpecFile {
            g: (0..4)
                .map(|i| fmt_rational(&self.base.g().coeff(i)))
                .collect(),
            alpha: self.alpha.to_strings(),
            degenerate_rational_alpha: self.degenerate,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_file()).expect("serializable")
    }
}

/// Minimal polynomial `c_α(x²)` of `η = √α`.
pub fn minpoly_eta(spec: &CMFieldSpec) -> Result<UniPoly> {
    if spec.alpha_is_rational() {
        return invalid("alpha is rational, so η does not generate K over Q");
    }
    if !spec.base.is_totally_negative(&spec.alpha) {
        return invalid("alpha is not totally negative");
    }
    Ok(spec.alpha_charpoly().substitute_square())
}

/// Element `u + v η` of `K = K+(η)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelQuadNum {
    pub u: CubicNum,
    pub v: CubicNum,
}

impl RelQuadNum {
    pub fn from_base(u: CubicNum) -> Self {
        RelQuadNum {
            u,
            v: CubicNum::zero(),
        }
    }

    pub fn eta() -> Self {
        RelQuadNum {
            u: CubicNum::zero(),
            v: CubicNum::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}

impl CMFieldSpec {
    pub fn rq_add(&self, x: &RelQuadNum, y: &RelQuadNum) -> RelQuadNum {
        RelQuadNum {
            u: x.u.add(&y.u),
            v: x.v.add(&y.v),
        }
    }

    pub fn rq_mul(&self, x: &RelQuadNum, y: &RelQuadNum) -> RelQuadNum {
        let k = &self.base;
        let vv = k.mul(&k.mul(&x.v, &y.v), &self.alpha);
        RelQuadNum {
            u: k.mul(&x.u, &y.u).add(&vv),
            v: k.mul(&x.u, &y.v).add(&k.mul(&x.v, &y.u)),
        }
    }

    /// Complex conjugation `η ↦ -η`.
    pub fn rq_conj(&self, x: &RelQuadNum) -> RelQuadNum {
        RelQuadNum {
            u: x.u.clone(),
            v: x.v.neg(),
        }
    }

    /// `f(x)` for a polynomial with rational coefficients.
    pub fn rq_eval(&self, f: &UniPoly, x: &RelQuadNum) -> RelQuadNum {
        f.coeffs()
            .iter()
            .rev()
            .fold(RelQuadNum::from_base(CubicNum::zero()), |acc, c| {
                self.rq_add(
                    &self.rq_mul(&acc, x),
                    &RelQuadNum::from_base(CubicNum::from_rational(c.clone())),
                )
            })
    }
}

impl Zero for RelQuadNum {
    fn zero() -> Self {
        RelQuadNum::from_base(CubicNum::zero())
    }
    fn is_zero(&self) -> bool {
        RelQuadNum::is_zero(self)
    }
}

impl std::ops::Add for RelQuadNum {
    type Output = RelQuadNum;
    fn add(self, o: RelQuadNum) -> RelQuadNum {
        RelQuadNum {
            u: self.u.add(&o.u),
            v: self.v.add(&o.v),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta7() -> CMFieldSpec {
        CMFieldSpec::from_i64s([-1, -2, 1, 1], [-4, 0, 1], false).unwrap()
    }

    #[test]
    fn minpoly_zeta7() {
        assert_eq!(
            minpoly_eta(&zeta7()).unwrap(),
            UniPoly::from_i64s(&[7, 0, 14, 0, 7, 0, 1])
        );
    }

    #[test]
    fn minpoly_rejects_rational() {
        let d12 = CMFieldSpec::from_i64s([-3, 12, -7, 1], [-3, 0, 0], true).unwrap();
        assert!(minpoly_eta(&d12).is_err());
        assert!(CMFieldSpec::from_i64s([-3, 12, -7, 1], [-3, 0, 0], false).is_err());
    }

    #[test]
    fn rejects_positive_alpha() {
        assert!(CMFieldSpec::from_i64s([-1, -2, 1, 1], [4, 0, 1], false).is_err());
        assert!(CMFieldSpec::from_i64s([-1, -2, 1, 1], [4, 0, 0], true).is_err());
    }

    #[test]
    fn eta_satisfies_minpoly() {
        let s = zeta7();
        let f = minpoly_eta(&s).unwrap();
        assert!(s.rq_eval(&f, &RelQuadNum::eta()).is_zero());
    }

    #[test]
    fn json_roundtrip_and_strictness() {
        let s = zeta7();
        let text = serde_json::to_string(&s.to_file()).unwrap();
        assert_eq!(CMFieldSpec::from_json_str(&text).unwrap(), s);
        let extra = r#"{"g":["-1","-2","1","1"],"alpha":["-4","0","1"],"x":1}"#;
        assert!(CMFieldSpec::from_json_str(extra).is_err());
        let nonmonic = r#"{"g":["-1","-2","1","2"],"alpha":["-4","0","1"]}"#;
        assert!(CMFieldSpec::from_json_str(nonmonic).is_err());
    }
}
