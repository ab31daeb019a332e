//! Sturm sequences, real-root counting and root isolation over the rationals.

use num_traits::{One, Signed, Zero};

use super::arith::{ratio, sign_of};
use crate::error::{invalid, Result};
use crate::{Rational, UniPoly};

pub fn sturm_sequence(f: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        seq.push(-&r);
    }
    seq.pop();
    seq
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn var_at(seq: &[UniPoly], x: &Rational) -> usize {
    variations(seq.iter().map(|p| sign_of(&p.eval(x))))
}

fn var_at_infinity(seq: &[UniPoly], positive: bool) -> usize {
    variations(seq.iter().map(|p| {
        let s = sign_of(&p.lead());
        let d = p.degree().unwrap_or(0);
        if positive || d % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

/// Number of distinct real roots in `(lo, hi]`.
pub fn count_roots_in(seq: &[UniPoly], lo: &Rational, hi: &Rational) -> usize {
    var_at(seq, lo).saturating_sub(var_at(seq, hi))
}

/// `(real roots, negative roots)` of a squarefree polynomial.
pub fn sturm_sign_data(f: &UniPoly) -> Result<(usize, usize)> {
    match f.degree() {
        None => return invalid("zero polynomial"),
        Some(0) => return Ok((0, 0)),
        _ => {}
    }
    if !f.is_squarefree() {
        return invalid(format!("polynomial {f} is not squarefree"));
    }
    let seq = sturm_sequence(f);
    let minus = var_at_infinity(&seq, false);
    let total = minus - var_at_infinity(&seq, true);
    let zero = Rational::zero();
    let mut neg = minus - var_at(&seq, &zero);
    if f.eval(&zero).is_zero() {
        neg -= 1;
    }
    Ok((total, neg))
}

/// Cauchy bound: every real root lies in `(-B, B)`.
pub fn cauchy_bound(f: &UniPoly) -> Rational {
    let lead = f.lead().abs();
    let n = f.degree().unwrap_or(0);
    let m = (0..n)
        .map(|i| f.coeff(i).abs() / &lead)
        .fold(Rational::zero(), |a, b| a.max(b));
    m + Rational::one()
}

/// A real root of a squarefree polynomial, pinned in `(lo, hi]` (or exactly, if `lo == hi`).
#[derive(Clone, Debug)]
pub struct RealRoot {
    pub lo: Rational,
    pub hi: Rational,
    seq: Vec<UniPoly>,
}

impl RealRoot {
    pub fn poly(&self) -> &UniPoly {
        &self.seq[0]
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    /// One bisection step.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = self.midpoint();
        if self.poly().eval(&mid).is_zero() {
            self.lo = mid.clone();
            self.hi = mid;
        } else if count_roots_in(&self.seq, &self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Bisects until the width is below `2^-bits`.
    pub fn refine(&mut self, bits: u32) {
        let eps = Rational::new(1.into(), num_bigint::BigInt::one() << bits);
        while !self.is_exact() && self.width() >= eps {
            self.bisect();
        }
    }

    /// Sign of `u` at this root, exact. Zero only if `u` vanishes there.
    pub fn sign_of(&mut self, u: &UniPoly) -> i32 {
        if u.is_zero() {
            return 0;
        }
        if self.is_exact() {
            return sign_of(&u.eval(&self.lo));
        }
        let common = u.gcd(self.poly());
        if common.degree().unwrap_or(0) > 0 {
            // the root is a root of u iff it is a root of the common factor
            let cs = sturm_sequence(&common);
            if count_roots_in(&cs, &self.lo, &self.hi) > 0 {
                return 0;
            }
        }
        let us = sturm_sequence(&u.squarefree_part());
        loop {
            let s_hi = sign_of(&u.eval(&self.hi));
            if s_hi != 0 && count_roots_in(&us, &self.lo, &self.hi) == 0 {
                return s_hi;
            }
            self.bisect();
            if self.is_exact() {
                return sign_of(&u.eval(&self.lo));
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

/// Isolates all real roots of a squarefree polynomial, ascending.
pub fn isolate_real_roots(f: &UniPoly) -> Result<Vec<RealRoot>> {
    if f.is_zero() || !f.is_squarefree() && f.degree() != Some(0) {
        return invalid(format!("polynomial {f} is not squarefree"));
    }
    let seq = sturm_sequence(f);
    let b = cauchy_bound(f);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match count_roots_in(&seq, &lo, &hi) {
            0 => {}
            1 => out.push(RealRoot {
                lo,
                hi,
                seq: seq.clone(),
            }),
            _ => {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Roots isolated and refined to width below `2^-bits`.
pub fn real_roots_refined(f: &UniPoly, bits: u32) -> Result<Vec<RealRoot>> {
    let mut roots = isolate_real_roots(f)?;
    for r in &mut roots {
        r.refine(bits);
    }
    Ok(roots)
}

/// Counts real roots by a sign-change scan over a fine grid and bisection; test oracle only.
pub fn naive_real_root_count(f: &UniPoly, steps: i64) -> usize {
    let b = cauchy_bound(f);
    let mut count = 0;
    let mut prev = sign_of(&f.eval(&-b.clone()));
    for k in 1..=steps {
        let x = -&b + &b * ratio(2 * k, steps);
        let s = sign_of(&f.eval(&x));
        if s == 0 {
            count += 1;
        } else if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(
            sturm_sign_data(&UniPoly::from_i64s(&[7, 14, 7, 1])).unwrap(),
            (3, 3)
        );
        assert_eq!(
            sturm_sign_data(&UniPoly::from_i64s(&[1, 0, 1])).unwrap(),
            (0, 0)
        );
        assert_eq!(
            sturm_sign_data(&UniPoly::from_i64s(&[-7, 14, -7, 1])).unwrap(),
            (3, 0)
        );
        assert!(sturm_sign_data(&UniPoly::from_i64s(&[1, 2, 1])).is_err());
    }

    #[test]
    fn root_at_zero_not_negative() {
        // x(x+1)(x-2)
        assert_eq!(
            sturm_sign_data(&UniPoly::from_i64s(&[0, -2, -1, 1])).unwrap(),
            (3, 1)
        );
    }

    #[test]
    fn isolate_and_sign() {
        let g = UniPoly::from_i64s(&[-1, -2, 1, 1]);
        let mut roots = real_roots_refined(&g, 40).unwrap();
        assert_eq!(roots.len(), 3);
        let approx: Vec<f64> = roots.iter().map(RealRoot::to_f64).collect();
        assert!((approx[0] + 1.8019377).abs() < 1e-6);
        assert!((approx[2] - 1.2469796).abs() < 1e-6);
        let x = UniPoly::x();
        assert_eq!(roots[0].sign_of(&x), -1);
        assert_eq!(roots[2].sign_of(&x), 1);
    }
}
