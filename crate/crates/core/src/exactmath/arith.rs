//! Integer and rational helpers.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};
use crate::Rational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad_rational(s))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad_rational(s))?;
            if d.is_zero() {
                return invalid(format!("zero denominator in {s:?}"));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(t.parse().map_err(|_| bad_rational(s))?),
    };
    Ok(parsed)
}

fn bad_rational(s: &str) -> crate::Error {
    crate::Error::InvalidInput(format!("not a rational: {s:?}"))
}

/// `"num/den"`, denominator omitted when 1.
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Rational square test: numerator and denominator separately.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = exact_isqrt(q.numer())?;
    let d = exact_isqrt(q.denom())?;
    Some(Rational::new(n, d))
}

/// Factorization by trial division, primes ascending with exponents.
pub fn factor_bigint(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Squarefree part of a nonzero integer, keeping its sign.
pub fn squarefree_kernel(n: &BigInt) -> BigInt {
    let sign = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    factor_bigint(n)
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(sign, |acc, (p, _)| acc * p)
}

pub fn is_squarefree_i64(n: i64) -> bool {
    n != 0 && squarefree_kernel(&BigInt::from(n)) == BigInt::from(n)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn next_prime(n: u64) -> u64 {
    let mut m = n + 1;
    while !is_prime(m) {
        m += 1;
    }
    m
}

/// Largest prime `<= n`, if any.
pub fn prev_prime(n: u64) -> Option<u64> {
    (2..=n).rev().find(|&m| is_prime(m))
}

pub fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&m| is_prime(m)).collect()
}

/// Jacobi symbol `(a | n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi needs odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol `(d | p)` for a prime `p`.
pub fn kronecker_prime(d: i64, p: u64) -> i32 {
    if p == 2 {
        if d % 2 == 0 {
            0
        } else {
            match d.rem_euclid(8) {
                1 | 7 => 1,
                _ => -1,
            }
        }
    } else {
        jacobi(d, p)
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

/// Floor of a rational as an integer.
pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Best rational approximation with denominator at most `bound`, from the continued fraction.
pub fn reconstruct(x: &Rational, bound: &BigInt) -> Rational {
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x.clone();
    loop {
        let a = floor(&r);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > bound {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = &r - Rational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        r = frac.recip();
    }
    if k1.is_zero() {
        return Rational::from_integer(floor(x));
    }
    Rational::new(h1, k1)
}

pub fn sign_of(q: &Rational) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(fmt_rational(&ratio(-3, 2)), "-3/2");
        assert_eq!(fmt_rational(&rat(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn primes() {
        let trial = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "{n}");
        }
        assert_eq!(prev_prime(645), Some(643));
        assert_eq!(next_prime(186624), 186629);
    }

    #[test]
    fn kronecker_matches_euler() {
        for &p in &[3u64, 5, 7, 11, 13, 101] {
            for a in -30i64..30 {
                let e = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
                let want = if e == 0 {
                    0
                } else if e == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker_prime(a, p), want);
            }
        }
        assert_eq!(kronecker_prime(-7, 2), 1);
        assert_eq!(kronecker_prime(-3, 2), -1);
    }

    #[test]
    fn kernel() {
        assert_eq!(squarefree_kernel(&BigInt::from(-343)), BigInt::from(-7));
        assert_eq!(squarefree_kernel(&BigInt::from(72)), BigInt::from(2));
    }

    #[test]
    fn continued_fraction() {
        let x = ratio(355, 113) + Rational::new(BigInt::one(), BigInt::from(10).pow(30));
        assert_eq!(reconstruct(&x, &BigInt::from(1000)), ratio(355, 113));
        assert_eq!(reconstruct(&ratio(-7, 3), &BigInt::from(10)), ratio(-7, 3));
    }
}
