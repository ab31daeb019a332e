//! Local Hilbert symbols over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::QuaternionAlgebra;
use crate::error::{invalid, Result};
use crate::exactmath::arith::{factor_bigint, jacobi, rat};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Place::Prime(p) => s.serialize_u64(*p),
            Place::Infinity => s.serialize_str("inf"),
        }
    }
}

fn split(n: &BigInt, p: u64) -> (u32, BigInt) {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    (v, n)
}

fn mod_small(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("small residue")
}

/// `(a, b)_v` for nonzero rationals.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return invalid("Hilbert symbol of zero");
    }
    // same square class as an integer
    let a = a.numer() * a.denom();
    let b = b.numer() * b.denom();
    Ok(match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (al, u) = split(&a, 2);
            let (be, v) = split(&b, 2);
            let (u8_, v8) = (mod_small(&u, 8), mod_small(&v, 8));
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u8_) * eps(v8) + al as u64 * omega(v8) + be as u64 * omega(u8_);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (al, u) = split(&a, p);
            let (be, v) = split(&b, p);
            let mut s = 1;
            if (al * be) % 2 == 1 && p % 4 == 3 {
                s = -s;
            }
            if be % 2 == 1 {
                s *= jacobi(mod_small(&u, p) as i64, p);
            }
            if al % 2 == 1 {
                s *= jacobi(mod_small(&v, p) as i64, p);
            }
            s
        }
    })
}

/// Places among ∞, 2, p and the primes dividing ε where the algebra ramifies.
/// All other places are unramified because both parameters are units there.
pub fn ramified_places(alg: &QuaternionAlgebra) -> Vec<Place> {
    let a = rat(alg.a());
    let b = rat(alg.b());
    let mut candidates = vec![Place::Infinity, Place::Prime(2), Place::Prime(alg.p)];
    for (q, _) in factor_bigint(&BigInt::from(alg.epsilon)) {
        candidates.push(Place::Prime(q.to_u64().expect("small")));
    }
    candidates.sort();
    candidates.dedup();
    candidates
        .into_iter()
        .filter(|&v| hilbert_symbol(&a, &b, v).expect("nonzero") == -1)
        .collect()
}
