use rayon::prelude::*;
use serde::Serialize;

use crate::error::{internal, invalid, Error, Result};
use crate::exactmath::arith::is_prime;
use crate::ff::{gcd, Fq};

/// `y^N = x^{a1} (x-1)^{a2}`, branched over 0, 1 and ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoverSpec {
    pub n: u64,
    pub a1: u64,
    pub a2: u64,
}

impl CoverSpec {
    pub fn new(n: u64, a1: u64, a2: u64) -> Result<Self> {
        if n < 2 {
            return invalid("N must be at least 2");
        }
        if a1 == 0 || a2 == 0 || a1 >= n || a2 >= n {
            return invalid("exponents must lie strictly between 0 and N");
        }
        if gcd(gcd(n, a1), a2) != 1 {
            return invalid("gcd(N, a1, a2) must be 1");
        }
        if (a1 + a2) % n == 0 {
            return invalid("the cover must be branched at infinity");
        }
        Ok(CoverSpec { n, a1, a2 })
    }

    /// Parses `N,a1,a2`.
    pub fn parse(s: &str) -> Result<Self> {
        let v: Vec<u64> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bad cover entry {t:?}")))
            })
            .collect::<Result<_>>()?;
        match v[..] {
            [n, a1, a2] => CoverSpec::new(n, a1, a2),
            _ => invalid("a cover is given as N,a1,a2"),
        }
    }

    pub fn a3(&self) -> u64 {
        (2 * self.n - self.a1 - self.a2) % self.n
    }

    pub fn exponents(&self) -> [u64; 3] {
        [self.a1, self.a2, self.a3()]
    }

    pub fn check_good(&self, p: u64) -> Result<()> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if self.n % p == 0 {
            return Err(Error::BadReduction {
                p,
                reason: format!("p divides N = {}", self.n),
            });
        }
        Ok(())
    }

    /// Points over `F_q` of the smooth model. Above `x ∉ {0,1,∞}` there are `gcd(N, q-1)`
    /// points when `x^{a1}(x-1)^{a2}` is an N-th power and none otherwise. Above a branch point
    /// with `e = gcd(N, a)`, the rational points are the roots of `t^e = u`, where `u` is the
    /// leading coefficient of the unit part there: `(-1)^{a2}` at 0, 1 at 1 and ∞.
    pub fn count_points(&self, p: u64, k: usize) -> Result<u64> {
        self.check_good(p)?;
        let f = Fq::new(p, k)?;
        let q = f.q;
        let g = gcd(self.n, q - 1);
        let (a1, a2) = (self.a1 % g, self.a2 % g);
        let affine: u64 = (2..q)
            .into_par_iter()
            .map(|x| {
                let xm1 = f.dec(x);
                if (a1 * f.log(x) + a2 * f.log(xm1)) % g == 0 {
                    g
                } else {
                    0
                }
            })
            .sum();
        let minus_one = if self.a2 % 2 == 1 { f.neg(1) } else { 1 };
        let over0 = f.count_roots_of(gcd(self.n, self.a1), minus_one);
        let over1 = f.count_roots_of(gcd(self.n, self.a2), 1);
        let over_inf = f.count_roots_of(gcd(self.n, self.a3()), 1);
        Ok(affine + over0 + over1 + over_inf)
    }
}

/// Riemann–Hurwitz for the cyclic cover of degree N.
pub fn rh_genus(spec: &CoverSpec) -> Result<u32> {
    let n = spec.n as i64;
    let s: i64 = spec
        .exponents()
        .iter()
        .map(|&a| n - gcd(spec.n, a) as i64)
        .sum();
    let two_g_minus_2 = -2 * n + s;
    if two_g_minus_2 % 2 != 0 || two_g_minus_2 < -2 {
        return internal(format!("Riemann-Hurwitz gives 2g - 2 = {two_g_minus_2}"));
    }
    Ok((two_g_minus_2 / 2 + 1) as u32)
}

/// Least `(N, b1, b2, b3)` with `b_i ≡ c·a_σ(i)` over units c and permutations σ.
pub fn normalize_cover(spec: &CoverSpec) -> [u64; 4] {
    let n = spec.n;
    let a = spec.exponents();
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut best = [n, a[0], a[1], a[2]];
    for c in (1..n).filter(|&c| gcd(c, n) == 1) {
        for s in PERMS {
            let t = [n, c * a[s[0]] % n, c * a[s[1]] % n, c * a[s[2]] % n];
            best = best.min(t);
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCMType {
    pub n: u64,
    pub genus: u32,
    /// `(i, dim)` for `i = 1..N-1`: dimension of the eigenspace where the automorphism
    /// `y ↦ ζy` acts by `ζ^i` on holomorphic differentials.
    pub dims: Vec<(u64, u64)>,
    pub has_cm: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cm_type: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive: Option<bool>,
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

/// `dim_i = -1 + Σ_j ⟨-i a_j / N⟩`; when `2g = φ(N)` the type is `{i : dim_i = 1}` and it is
/// primitive iff no unit other than 1 stabilizes it.
pub fn cover_cm_type(spec: &CoverSpec) -> Result<CoverCMType> {
    let genus = rh_genus(spec)?;
    let n = spec.n;
    let dims: Vec<(u64, u64)> = (1..n)
        .map(|i| {
            let num: u64 = spec.exponents().iter().map(|&a| (n - i * a % n) % n).sum();
            (i, (num / n).saturating_sub(1))
        })
        .collect();
    let total: u64 = dims.iter().map(|d| d.1).sum();
    if total != genus as u64 {
        return internal(format!(
            "eigenspace dimensions sum to {total}, genus is {genus}"
        ));
    }
    let has_cm = 2 * genus as u64 == euler_phi(n);
    let (cm_type, primitive) = if has_cm {
        let s: Vec<u64> = dims.iter().filter(|d| d.1 == 1).map(|d| d.0).collect();
        let stable = (2..n).filter(|&u| gcd(u, n) == 1).any(|u| {
            let mut t: Vec<u64> = s.iter().map(|x| x * u % n).collect();
            t.sort();
            t == s
        });
        (Some(s), Some(!stable))
    } else {
        (None, None)
    };
    Ok(CoverCMType {
        n,
        genus,
        dims,
        has_cm,
        cm_type,
        primitive,
    })
}
