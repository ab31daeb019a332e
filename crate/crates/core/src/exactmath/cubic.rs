//! The totally real cubic field `K+ = Q[x]/(g)` in the power basis `1, β, β²`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::arith::{fmt_rational, is_integer, rat, reconstruct};
use super::resultant::poly_discriminant;
use super::sturm::{real_roots_refined, sturm_sign_data, RealRoot};
use crate::error::{invalid, Result};
use crate::{QMatrix, Rational, UniPoly};

/// Element `c0 + c1 β + c2 β²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicNum {
    pub coords: [Rational; 3],
}

impl CubicNum {
    pub fn new(c0: Rational, c1: Rational, c2: Rational) -> Self {
        CubicNum {
            coords: [c0, c1, c2],
        }
    }

    pub fn from_i64s(c: [i64; 3]) -> Self {
        Self::new(rat(c[0]), rat(c[1]), rat(c[2]))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::new(q, Rational::zero(), Rational::zero())
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn beta() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.coords[1].is_zero() && self.coords[2].is_zero()).then_some(&self.coords[0])
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::new(self.coords.to_vec())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            coords: std::array::from_fn(|i| &self.coords[i] + &o.coords[i]),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            coords: std::array::from_fn(|i| &self.coords[i] - &o.coords[i]),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: std::array::from_fn(|i| -&self.coords[i]),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            coords: std::array::from_fn(|i| &self.coords[i] * q),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_rational).collect()
    }
}

impl fmt::Display for CubicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// A monic, irreducible, totally real cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicFieldSpec {
    g: UniPoly,
}

impl CubicFieldSpec {
    pub fn new(g: UniPoly) -> Result<Self> {
        if g.degree() != Some(3) || !g.is_monic() {
            return invalid(format!("g = {g} is not a monic cubic"));
        }
        if poly_discriminant(&g)?.is_zero() {
            return invalid(format!("g = {g} has a repeated root"));
        }
        let (real, _) = sturm_sign_data(&g)?;
        if real != 3 {
            return invalid(format!("g = {g} is not totally real"));
        }
        if let Some(r) = rational_root(&g) {
            return invalid(format!("g = {g} is reducible: rational root {r}"));
        }
        Ok(CubicFieldSpec { g })
    }

    pub fn from_i64s(c: [i64; 4]) -> Result<Self> {
        Self::new(UniPoly::from_i64s(&c))
    }

    pub fn g(&self) -> &UniPoly {
        &self.g
    }

    pub fn discriminant(&self) -> Rational {
        poly_discriminant(&self.g).expect("cubic")
    }

    /// Real roots of g, ascending, refined to width below `2^-bits`.
    pub fn roots(&self, bits: u32) -> Vec<RealRoot> {
        real_roots_refined(&self.g, bits).expect("g squarefree")
    }

    pub fn reduce(&self, p: &UniPoly) -> CubicNum {
        let r = p.rem(&self.g);
        CubicNum::new(r.coeff(0), r.coeff(1), r.coeff(2))
    }

    pub fn mul(&self, x: &CubicNum, y: &CubicNum) -> CubicNum {
        self.reduce(&(&x.to_poly() * &y.to_poly()))
    }

    pub fn square(&self, x: &CubicNum) -> CubicNum {
        self.mul(x, x)
    }

    pub fn pow(&self, x: &CubicNum, n: u32) -> CubicNum {
        (0..n).fold(CubicNum::one(), |acc, _| self.mul(&acc, x))
    }

    /// `p(x)` computed in K+.
    pub fn eval_poly(&self, p: &UniPoly, x: &CubicNum) -> CubicNum {
        p.coeffs().iter().rev().fold(CubicNum::zero(), |acc, c| {
            self.mul(&acc, x).add(&CubicNum::from_rational(c.clone()))
        })
    }

    /// Matrix of multiplication by `x` in the power basis (columns are images of β^j).
    pub fn regular_matrix(&self, x: &CubicNum) -> QMatrix {
        let mut m = QMatrix::zeros(3, 3);
        let mut bj = CubicNum::one();
        for j in 0..3 {
            let col = self.mul(x, &bj);
            for i in 0..3 {
                m[(i, j)] = col.coords[i].clone();
            }
            bj = self.mul(&bj, &CubicNum::beta());
        }
        m
    }

    pub fn charpoly(&self, x: &CubicNum) -> UniPoly {
        self.regular_matrix(x).charpoly()
    }

    pub fn trace(&self, x: &CubicNum) -> Rational {
        self.regular_matrix(x).trace()
    }

    pub fn norm(&self, x: &CubicNum) -> Rational {
        self.regular_matrix(x).det()
    }

    pub fn inv(&self, x: &CubicNum) -> Option<CubicNum> {
        let m = self.regular_matrix(x);
        let e0 = QMatrix::from_rows(vec![vec![rat(1)], vec![rat(0)], vec![rat(0)]]);
        let s = m.solve(&e0)?;
        Some(CubicNum::new(
            s[(0, 0)].clone(),
            s[(1, 0)].clone(),
            s[(2, 0)].clone(),
        ))
    }

    pub fn div(&self, x: &CubicNum, y: &CubicNum) -> Option<CubicNum> {
        Some(self.mul(x, &self.inv(y)?))
    }

    /// Signs of `x` under the three real embeddings, in ascending root order.
    pub fn signs(&self, x: &CubicNum) -> [i32; 3] {
        let mut roots = self.roots(8);
        let u = x.to_poly();
        std::array::from_fn(|i| roots[i].sign_of(&u))
    }

    pub fn is_totally_negative(&self, x: &CubicNum) -> bool {
        self.signs(x) == [-1, -1, -1]
    }

    pub fn is_totally_positive(&self, x: &CubicNum) -> bool {
        self.signs(x) == [1, 1, 1]
    }

    /// Numerical values under the three real embeddings.
    pub fn embed_f64(&self, x: &CubicNum) -> [f64; 3] {
        use num_traits::ToPrimitive;
        let roots = self.roots(60);
        let u = x.to_poly();
        std::array::from_fn(|i| u.eval(&roots[i].midpoint()).to_f64().unwrap_or(f64::NAN))
    }

    /// Recovers an element from approximate embedding values `v_i ≈ x(θ_i)`.
    ///
    /// `points` are rational approximations of the roots matching `values`.
    pub fn reconstruct_from_values(
        &self,
        points: &[Rational; 3],
        values: &[Rational; 3],
        max_den: &BigInt,
    ) -> Option<CubicNum> {
        let v = QMatrix::from_rows(
            points
                .iter()
                .map(|t| vec![rat(1), t.clone(), t * t])
                .collect(),
        );
        let rhs = QMatrix::from_rows(values.iter().map(|x| vec![x.clone()]).collect());
        let c = v.solve(&rhs)?;
        Some(CubicNum::new(
            reconstruct(&c[(0, 0)], max_den),
            reconstruct(&c[(1, 0)], max_den),
            reconstruct(&c[(2, 0)], max_den),
        ))
    }
}

/// A rational root of a cubic with rational coefficients, found by scaling to a monic
/// integral cubic and testing the integers next to each isolated real root.
pub fn rational_root(g: &UniPoly) -> Option<Rational> {
    let g = g.monic();
    let d = g
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let dq = Rational::from_integer(d.clone());
    // h(x) = d^3 g(x/d)
    let n = g.degree()?;
    let h = UniPoly::new(
        (0..=n)
            .map(|i| g.coeff(i) * num_traits::pow(dq.clone(), n - i))
            .collect(),
    );
    debug_assert!(h.coeffs().iter().all(is_integer));
    let sf = h.squarefree_part();
    for root in real_roots_refined(&sf, 2).ok()? {
        let lo: BigInt = root.lo.numer().div_floor(root.lo.denom()) - 1;
        let hi = root.hi.numer().div_ceil(root.hi.denom()) + 1;
        let mut k = lo;
        while k <= hi {
            let kq = Rational::from_integer(k.clone());
            if h.eval(&kq).is_zero() {
                return Some(kq / &dq);
            }
            k += 1;
        }
    }
    None
}

/// Square root of `x` in K+, when it exists.
///
/// Works from fixed-point square roots of the embeddings with `bits` of precision,
/// tries the four sign patterns, reconstructs coordinates with denominators at most
/// `max_den`, and verifies exactly.
pub fn sqrt_in_field_with(
    base: &CubicFieldSpec,
    x: &CubicNum,
    bits: u32,
    max_den: &BigInt,
) -> Option<CubicNum> {
    if x.is_zero() {
        return Some(CubicNum::zero());
    }
    if let Some(q) = x.as_rational() {
        if let Some(r) = super::arith::rational_sqrt(q) {
            return Some(CubicNum::from_rational(r));
        }
    }
    if base.signs(x) != [1, 1, 1] {
        return None;
    }
    let roots = base.roots(bits + 32);
    let pts: [Rational; 3] = std::array::from_fn(|i| roots[i].midpoint());
    let u = x.to_poly();
    let scale = BigInt::one() << (2 * bits);
    let unit = Rational::from_integer(BigInt::one() << bits);
    let sq: [Rational; 3] = std::array::from_fn(|i| {
        let v = u.eval(&pts[i]);
        let fixed = (v * Rational::from_integer(scale.clone())).to_integer();
        Rational::from_integer(fixed.abs().sqrt()) / &unit
    });
    for pattern in 0..4u32 {
        let vals: [Rational; 3] = std::array::from_fn(|i| {
            let flip = i > 0 && pattern >> (i - 1) & 1 == 1;
            if flip {
                -sq[i].clone()
            } else {
                sq[i].clone()
            }
        });
        if let Some(s) = base.reconstruct_from_values(&pts, &vals, max_den) {
            if base.square(&s) == *x {
                return Some(s);
            }
        }
    }
    None
}

pub const DEFAULT_SQRT_BITS: u32 = 128;

pub fn default_max_denominator() -> BigInt {
    BigInt::from(1_000_000)
}

pub fn sqrt_in_field(x: &CubicNum, base: &CubicFieldSpec) -> Option<CubicNum> {
    sqrt_in_field_with(base, x, DEFAULT_SQRT_BITS, &default_max_denominator())
}

pub fn charpoly_cubicnum(x: &CubicNum, base: &CubicFieldSpec) -> UniPoly {
    base.charpoly(x)
}
