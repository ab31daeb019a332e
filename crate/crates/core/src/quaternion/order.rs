//! Maximal orders as rank-4 lattices, with integral structure data for fast arithmetic.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Quat, QuaternionAlgebra};
use crate::error::{internal, Result};
use crate::exactmath::arith::{exact_isqrt, is_integer, rat, ratio};
use crate::{QMatrix, Quaternion, Rational};

/// Integer coordinates over an order basis.
pub type Coords = [i64; 4];

#[derive(Clone, Debug)]
pub struct OrderBasis {
    pub alg: QuaternionAlgebra,
    pub basis: [Quaternion; 4],
    /// `Trd(e_i conj(e_j))`; `Nrd(x) = x^T G x / 2`.
    pub gram: QMatrix,
    /// `e_i e_j = Σ_k mult[i][j][k] e_k`.
    pub mult: [[Coords; 4]; 4],
    /// `conj(e_i) = Σ_k conj[i][k] e_k`.
    pub conj: [Coords; 4],
    /// `Trd(e_i)`.
    pub trd: Coords,
    gram_int: [[i64; 4]; 4],
    to_coords: QMatrix,
}

impl PartialEq for OrderBasis {
    fn eq(&self, o: &Self) -> bool {
        self.alg == o.alg && self.basis == o.basis
    }
}

impl OrderBasis {
    /// Builds and certifies an order: full rank, contains 1, closed under multiplication
    /// and conjugation, reduced discriminant `p`.
    pub fn new(alg: QuaternionAlgebra, basis: [Quaternion; 4]) -> Result<Self> {
        let m = QMatrix::from_rows(
            (0..4)
                .map(|k| basis.iter().map(|e| e.c[k].clone()).collect())
                .collect(),
        );
        let Some(to_coords) = m.inverse() else {
            return internal("order basis is not of full rank");
        };
        let coords_of = |q: &Quaternion| -> Option<Coords> {
            let mut out = [0i64; 4];
            for (i, o) in out.iter_mut().enumerate() {
                let v = (0..4).fold(Rational::zero(), |acc, k| {
                    acc + &to_coords[(i, k)] * &q.c[k]
                });
                if !is_integer(&v) {
                    return None;
                }
                *o = v.to_integer().to_i64()?;
            }
            Some(out)
        };
        if coords_of(&Quaternion::one()).is_none() {
            return internal("1 is not in the lattice");
        }
        let mut mult = [[[0i64; 4]; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                mult[i][j] = coords_of(&alg.mul(&basis[i], &basis[j])).ok_or_else(|| {
                    crate::Error::Internal(format!("e{i} e{j} leaves the lattice"))
                })?;
            }
        }
        let mut conj = [[0i64; 4]; 4];
        for i in 0..4 {
            conj[i] = coords_of(&basis[i].conj())
                .ok_or_else(|| crate::Error::Internal("not closed under conjugation".into()))?;
        }
        let mut gram = QMatrix::zeros(4, 4);
        let mut gram_int = [[0i64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let t = alg.mul(&basis[i], &basis[j].conj()).trd();
                if !is_integer(&t) {
                    return internal("non-integral reduced trace form");
                }
                gram_int[i][j] = t.to_integer().to_i64().expect("small");
                gram[(i, j)] = t;
            }
        }
        let trd = std::array::from_fn(|i| basis[i].trd().to_integer().to_i64().unwrap_or(i64::MAX));
        let order = OrderBasis {
            alg,
            basis,
            gram,
            mult,
            conj,
            trd,
            gram_int,
            to_coords,
        };
        let disc = order.reduced_discriminant();
        if disc != Some(BigInt::from(alg.p)) {
            return internal(format!("reduced discriminant {disc:?} != {}", alg.p));
        }
        Ok(order)
    }

    /// `sqrt(det(Trd(e_i conj(e_j))))`, if the determinant is a square.
    pub fn reduced_discriminant(&self) -> Option<BigInt> {
        let d = self.gram.det();
        if !is_integer(&d) {
            return None;
        }
        exact_isqrt(&d.to_integer().abs())
    }

    /// Coordinates of `q` if it lies in the order.
    pub fn coords_of(&self, q: &Quaternion) -> Option<Coords> {
        let mut out = [0i64; 4];
        for (i, o) in out.iter_mut().enumerate() {
            let v = (0..4).fold(Rational::zero(), |acc, k| {
                acc + &self.to_coords[(i, k)] * &q.c[k]
            });
            if !is_integer(&v) {
                return None;
            }
            *o = v.to_integer().to_i64()?;
        }
        Some(out)
    }

    pub fn contains(&self, q: &Quaternion) -> bool {
        self.coords_of(q).is_some()
    }

    pub fn element(&self, x: &Coords) -> Quaternion {
        (0..4).fold(Quaternion::zero(), |acc, i| {
            acc.add(&self.basis[i].scale(&rat(x[i])))
        })
    }

    pub fn mul_coords(&self, x: &Coords, y: &Coords) -> Coords {
        let mut out = [0i64; 4];
        for i in 0..4 {
            if x[i] == 0 {
                continue;
            }
            for j in 0..4 {
                if y[j] == 0 {
                    continue;
                }
                let c = x[i] * y[j];
                for k in 0..4 {
                    out[k] += c * self.mult[i][j][k];
                }
            }
        }
        out
    }

    pub fn conj_coords(&self, x: &Coords) -> Coords {
        let mut out = [0i64; 4];
        for i in 0..4 {
            for k in 0..4 {
                out[k] += x[i] * self.conj[i][k];
            }
        }
        out
    }

    pub fn nrd_coords(&self, x: &Coords) -> i64 {
        let mut s = 0;
        for i in 0..4 {
            for j in 0..4 {
                s += x[i] * self.gram_int[i][j] * x[j];
            }
        }
        s / 2
    }

    pub fn trd_coords(&self, x: &Coords) -> i64 {
        (0..4).map(|i| x[i] * self.trd[i]).sum()
    }

    /// The integer written as order coordinates.
    pub fn scalar_coords(&self, n: i64) -> Coords {
        let one = self.coords_of(&Quaternion::one()).expect("1 in order");
        one.map(|c| c * n)
    }
}

/// Standard maximal-order recipes per congruence class of p, each certified.
pub fn maximal_order(alg: &QuaternionAlgebra) -> Result<OrderBasis> {
    let p = alg.p;
    let q = |x: Rational, y: Rational, z: Rational, w: Rational| Quat::new(x, y, z, w);
    let z = rat(0);
    let h = ratio(1, 2);
    let basis: [Quaternion; 4] = if p == 2 {
        [
            Quaternion::one(),
            Quaternion::i(),
            Quaternion::j(),
            q(h.clone(), h.clone(), h.clone(), h),
        ]
    } else if p % 4 == 3 {
        [
            Quaternion::one(),
            Quaternion::i(),
            q(h.clone(), z.clone(), h.clone(), z.clone()),
            q(z.clone(), h.clone(), z, h),
        ]
    } else if p % 8 == 5 {
        let f = ratio(1, 4);
        [
            Quaternion::one(),
            q(h.clone(), z.clone(), h.clone(), h),
            q(z.clone(), f.clone(), ratio(1, 2), f),
            Quaternion::k(),
        ]
    } else {
        let l = alg.epsilon as i64;
        let c = (0..l)
            .find(|&c| (c * c * (p as i64) + 1) % l == 0)
            .ok_or_else(|| crate::Error::Internal(format!("no c with {l} | c²p + 1")))?;
        [
            q(h.clone(), h.clone(), z.clone(), z.clone()),
            q(z.clone(), z.clone(), h.clone(), -h),
            q(z.clone(), ratio(1, l), z, ratio(-c, l)),
            Quaternion::k(),
        ]
    };
    let order = OrderBasis::new(*alg, basis)?;
    if !order.contains(&Quaternion::one()) {
        return internal("order does not contain 1");
    }
    Ok(order)
}

/// Exact positive-definite quadratic form in "completed squares" shape:
/// `Q(x) = Σ_i d_i (x_i + Σ_{j>i} μ_ij x_j)²`.
struct Ldl {
    d: Vec<Rational>,
    mu: Vec<Vec<Rational>>,
}

fn ldl(a: &QMatrix) -> Ldl {
    let n = a.rows();
    let mut q = a.clone();
    let mut d = vec![Rational::zero(); n];
    let mut mu = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        d[i] = q[(i, i)].clone();
        for j in i + 1..n {
            mu[i][j] = &q[(i, j)] / &d[i];
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let v = &q[(j, k)] - &mu[i][j] * &d[i] * &mu[i][k];
                q[(j, k)] = v;
            }
        }
    }
    Ldl { d, mu }
}

fn floor_r(x: &Rational) -> i64 {
    x.floor().to_integer().to_i64().expect("small")
}

/// All order elements with `Nrd ≤ bound` (and trace zero if asked), as coordinates,
/// sorted lexicographically.
pub fn enumerate_coords(order: &OrderBasis, bound: i64, trace_zero: bool) -> Vec<Coords> {
    let form = order.gram.scale(&ratio(1, 2));
    let l = ldl(&form);
    let n = 4;
    let mut out = Vec::new();
    let mut x = [0i64; 4];
    let b = rat(bound);
    // depth-first from the last coordinate
    fn rec(i: usize, n: usize, rem: Rational, x: &mut [i64; 4], l: &Ldl, out: &mut Vec<Coords>) {
        let c: Rational =
            -(i + 1..n).fold(Rational::zero(), |acc, j| acc + &l.mu[i][j] * rat(x[j]));
        let start = floor_r(&c);
        let fits = |t: i64| -> Option<Rational> {
            let diff = rat(t) - &c;
            let used = &l.d[i] * &diff * &diff;
            (used <= rem).then(|| &rem - used)
        };
        // walk outward from floor(c) in both directions
        let mut t = start;
        while let Some(r) = fits(t) {
            x[i] = t;
            if i == 0 {
                out.push(*x);
            } else {
                rec(i - 1, n, r, x, l, out);
            }
            t -= 1;
        }
        let mut t = start + 1;
        while let Some(r) = fits(t) {
            x[i] = t;
            if i == 0 {
                out.push(*x);
            } else {
                rec(i - 1, n, r, x, l, out);
            }
            t += 1;
        }
        x[i] = 0;
    }
    if bound >= 0 {
        rec(n - 1, n, b, &mut x, &l, &mut out);
    }
    if trace_zero {
        out.retain(|v| order.trd_coords(v) == 0);
    }
    out.sort();
    out
}

/// Order elements with `Nrd ≤ bound`, ordered lexicographically on their order coordinates.
pub fn enumerate_norm_le(order: &OrderBasis, bound: i64, trace_zero: bool) -> Vec<Quaternion> {
    enumerate_coords(order, bound, trace_zero)
        .iter()
        .map(|x| order.element(x))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::build_algebra;

    #[test]
    fn recipes_certify() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 29, 41, 73, 89, 97, 101, 113, 193] {
            let alg = build_algebra(p).unwrap();
            let o = maximal_order(&alg).unwrap();
            assert_eq!(o.reduced_discriminant(), Some(BigInt::from(p)));
            assert!(o.contains(&Quaternion::one()));
        }
    }

    #[test]
    fn p3_contains_half_one_plus_j() {
        let o = maximal_order(&build_algebra(3).unwrap()).unwrap();
        assert!(o.contains(&Quat::new(ratio(1, 2), rat(0), ratio(1, 2), rat(0))));
    }

    #[test]
    fn integer_arithmetic_matches_rational() {
        let o = maximal_order(&build_algebra(17).unwrap()).unwrap();
        let xs: [Coords; 3] = [[1, -2, 3, 0], [0, 1, 1, -1], [2, 0, -1, 5]];
        for x in &xs {
            for y in &xs {
                let prod = o.alg.mul(&o.element(x), &o.element(y));
                assert_eq!(o.element(&o.mul_coords(x, y)), prod);
            }
            assert_eq!(rat(o.nrd_coords(x)), o.alg.nrd(&o.element(x)));
            assert_eq!(o.element(&o.conj_coords(x)), o.element(x).conj());
        }
    }

    #[test]
    fn enumeration_matches_box_search() {
        for p in [2u64, 3, 5, 17] {
            let o = maximal_order(&build_algebra(p).unwrap()).unwrap();
            for bound in 0..6 {
                let fast = enumerate_coords(&o, bound, false);
                let mut naive = Vec::new();
                let r = 12;
                for a in -r..=r {
                    for b in -r..=r {
                        for c in -r..=r {
                            for d in -r..=r {
                                let x = [a, b, c, d];
                                if o.nrd_coords(&x) <= bound {
                                    naive.push(x);
                                }
                            }
                        }
                    }
                }
                assert_eq!(fast, naive, "p = {p}, bound = {bound}");
            }
        }
    }

    #[test]
    fn trivial_bounds() {
        let o = maximal_order(&build_algebra(7).unwrap()).unwrap();
        assert_eq!(enumerate_norm_le(&o, 0, false), vec![Quaternion::zero()]);
        let ones = enumerate_norm_le(&o, 1, false);
        assert!(ones.contains(&Quaternion::one()) && ones.contains(&Quaternion::one().neg()));
        assert!(enumerate_norm_le(&o, 7, true)
            .iter()
            .all(|q| q.trd().is_zero()));
    }
}
