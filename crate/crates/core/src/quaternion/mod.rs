//! The definite quaternion algebra `B_{p,∞}`, maximal orders and 3×3 matrices over it.

mod embed;
mod hilbert;
mod order;

pub use embed::{charpoly12, lift_t, reduced_diagonal_trace, to_m12q, to_m4q, LiftedT};
pub use hilbert::{hilbert_symbol, ramified_places, Place};
pub use order::{enumerate_coords, enumerate_norm_le, maximal_order, Coords, OrderBasis};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{internal, invalid, Result};
use crate::exactmath::arith::{fmt_rational, is_prime, kronecker_prime, parse_rational};
use crate::scalar::Scalar;
use crate::{Quaternion, Rational};

/// `x0 + x1 i + x2 j + x3 k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quat<T> {
    pub c: [T; 4],
}

impl<T: Scalar> Quat<T> {
    pub fn new(x: T, y: T, z: T, w: T) -> Self {
        Quat { c: [x, y, z, w] }
    }

    pub fn from_i64s(c: [i64; 4]) -> Self {
        Quat {
            c: c.map(T::from_i64),
        }
    }

    pub fn scalar(x: T) -> Self {
        Quat::new(x, T::zero(), T::zero(), T::zero())
    }

    pub fn zero() -> Self {
        Self::scalar(T::zero())
    }

    pub fn one() -> Self {
        Self::scalar(T::one())
    }

    pub fn i() -> Self {
        Self::from_i64s([0, 1, 0, 0])
    }

    pub fn j() -> Self {
        Self::from_i64s([0, 0, 1, 0])
    }

    pub fn k() -> Self {
        Self::from_i64s([0, 0, 0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_scalar(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Quat {
            c: std::array::from_fn(|i| self.c[i].clone() + o.c[i].clone()),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Quat {
            c: std::array::from_fn(|i| self.c[i].clone() - o.c[i].clone()),
        }
    }

    pub fn neg(&self) -> Self {
        Quat {
            c: std::array::from_fn(|i| -self.c[i].clone()),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Quat {
            c: std::array::from_fn(|i| self.c[i].clone() * s.clone()),
        }
    }

    /// Canonical involution.
    pub fn conj(&self) -> Self {
        Quat::new(
            self.c[0].clone(),
            -self.c[1].clone(),
            -self.c[2].clone(),
            -self.c[3].clone(),
        )
    }

    /// Reduced trace `q + conj(q)`.
    pub fn trd(&self) -> T {
        self.c[0].clone() + self.c[0].clone()
    }
}

impl Quaternion {
    pub fn to_strings(&self) -> [String; 4] {
        std::array::from_fn(|i| fmt_rational(&self.c[i]))
    }

    pub fn from_strings(s: &[String]) -> Result<Self> {
        if s.len() != 4 {
            return invalid("a quaternion has 4 coordinates");
        }
        Ok(Quat::new(
            parse_rational(&s[0])?,
            parse_rational(&s[1])?,
            parse_rational(&s[2])?,
            parse_rational(&s[3])?,
        ))
    }
}

/// `(a, b)_Q` with `i² = a`, `j² = b`, `k = ij`: `(-ε, -p)`, or `(-1, -1)` for `p = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuaternionAlgebra {
    pub p: u64,
    pub epsilon: u64,
}

impl QuaternionAlgebra {
    pub fn a(&self) -> i64 {
        -(self.epsilon as i64)
    }

    pub fn b(&self) -> i64 {
        if self.p == 2 {
            -1
        } else {
            -(self.p as i64)
        }
    }

    pub fn mul<T: Scalar>(&self, x: &Quat<T>, y: &Quat<T>) -> Quat<T> {
        let a = T::from_i64(self.a());
        let b = T::from_i64(self.b());
        let ab = a.clone() * b.clone();
        let [x0, x1, x2, x3] = &x.c;
        let [y0, y1, y2, y3] = &y.c;
        let m = |u: &T, v: &T| u.clone() * v.clone();
        Quat::new(
            m(x0, y0) + a.clone() * m(x1, y1) + b.clone() * m(x2, y2) - ab * m(x3, y3),
            m(x0, y1) + m(x1, y0) - b.clone() * m(x2, y3) + b * m(x3, y2),
            m(x0, y2) + m(x2, y0) + a.clone() * m(x1, y3) - a * m(x3, y1),
            m(x0, y3) + m(x3, y0) + m(x1, y2) - m(x2, y1),
        )
    }

    /// Reduced norm `q conj(q)`.
    pub fn nrd<T: Scalar>(&self, x: &Quat<T>) -> T {
        let a = T::from_i64(self.a());
        let b = T::from_i64(self.b());
        let [x0, x1, x2, x3] = &x.c;
        x0.clone() * x0.clone()
            - a.clone() * x1.clone() * x1.clone()
            - b.clone() * x2.clone() * x2.clone()
            + a * b * x3.clone() * x3.clone()
    }

    pub fn inv(&self, x: &Quaternion) -> Option<Quaternion> {
        let n = self.nrd(x);
        (!n.is_zero()).then(|| x.conj().scale(&n.recip()))
    }

    pub fn commutes<T: Scalar>(&self, x: &Quat<T>, y: &Quat<T>) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn mat3_mul<T: Scalar>(&self, x: &Mat3<T>, y: &Mat3<T>) -> Mat3<T> {
        Mat3::from_fn(|i, j| {
            (0..3).fold(Quat::zero(), |acc, k| {
                acc.add(&self.mul(&x.e[i][k], &y.e[k][j]))
            })
        })
    }

    pub fn mat3_pow<T: Scalar>(&self, x: &Mat3<T>, n: u32) -> Mat3<T> {
        (0..n).fold(Mat3::identity(), |acc, _| self.mat3_mul(&acc, x))
    }

    /// `c(X)` for a polynomial with scalar coefficients.
    pub fn mat3_eval_poly(
        &self,
        p: &crate::poly::Poly<Rational>,
        x: &Mat3<Rational>,
    ) -> Mat3<Rational> {
        p.coeffs().iter().rev().fold(Mat3::zero(), |acc, c| {
            self.mat3_mul(&acc, x).add(&Mat3::scalar(c.clone()))
        })
    }
}

/// The parameter ε with `i² = -ε`.
pub fn epsilon_for(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    Ok(match p {
        2 => 1,
        _ if p % 4 == 3 => 1,
        _ if p % 8 == 5 => 2,
        _ => (3u64..)
            .step_by(4)
            .find(|&l| is_prime(l) && kronecker_prime(l as i64, p) == -1)
            .expect("a non-residue prime exists"),
    })
}

/// `B_{p,∞}` in the presentation above, certified by its ramification set.
pub fn build_algebra(p: u64) -> Result<QuaternionAlgebra> {
    let alg = QuaternionAlgebra {
        p,
        epsilon: epsilon_for(p)?,
    };
    let ram = ramified_places(&alg);
    if ram != vec![Place::Prime(p), Place::Infinity] {
        return internal(format!("algebra for p = {p} ramifies at {ram:?}"));
    }
    Ok(alg)
}

/// 3×3 matrix over a quaternion algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3<T> {
    pub e: [[Quat<T>; 3]; 3],
}

impl<T: Scalar> Mat3<T> {
    pub fn from_fn(f: impl Fn(usize, usize) -> Quat<T>) -> Self {
        Mat3 {
            e: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| Quat::zero())
    }

    pub fn identity() -> Self {
        Self::scalar(T::one())
    }

    pub fn scalar(x: T) -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                Quat::scalar(x.clone())
            } else {
                Quat::zero()
            }
        })
    }

    /// Matrix with rational entries embedded as scalars.
    pub fn from_scalars(m: &crate::matrix::Matrix<T>) -> Self {
        Self::from_fn(|i, j| Quat::scalar(m[(i, j)].clone()))
    }

    pub fn diagonal(d: [Quat<T>; 3]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i].clone() } else { Quat::zero() })
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.e[i][j].add(&o.e[i][j]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.e[i][j].sub(&o.e[i][j]))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(|i, j| self.e[i][j].neg())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_fn(|i, j| self.e[i][j].scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(Quat::is_zero)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(|i, j| self.e[j][i].conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.dagger() == *self
    }

    pub fn is_skew(&self) -> bool {
        self.dagger() == self.neg()
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> Quat<T> {
        self.e[0][0].add(&self.e[1][1]).add(&self.e[2][2])
    }

    /// `X'_{ij} = X_{π(i) π(j)}`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        Self::from_fn(|i, j| self.e[perm[i]][perm[j]].clone())
    }
}

impl Mat3<Rational> {
    pub fn to_strings(&self) -> Vec<Vec<[String; 4]>> {
        self.e
            .iter()
            .map(|row| row.iter().map(Quaternion::to_strings).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<Vec<String>>]) -> Result<Self> {
        if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
            return invalid("a matrix needs 3 rows of 3 quaternions");
        }
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] = Quaternion::from_strings(&rows[i][j])?;
            }
        }
        Ok(out)
    }
}

pub fn mat3_dagger<T: Scalar>(x: &Mat3<T>) -> Mat3<T> {
    x.dagger()
}
