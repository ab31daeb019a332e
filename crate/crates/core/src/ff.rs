//! Prime fields, polynomials over them and small extension fields `F_{p^k}` with
//! log/antilog tables.

use crate::error::{invalid, Result};
use crate::exactmath::arith::{is_prime, pow_mod};

/// Polynomial over `F_p`, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, c: Vec<u64>) -> Self {
        let mut c: Vec<u64> = c.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_i64s(p: u64, c: &[i64]) -> Self {
        Self::new(
            p,
            c.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect(),
        )
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.inv(self.lead());
        Self::new(self.p, self.c.iter().map(|&x| x * li % self.p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let g = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(
            self.p,
            (0..n)
                .map(|i| (g(&self.c, i) + self.p - g(&o.c, i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let li = self.inv(d.lead());
        if r.len() <= dd {
            return (Self::new(p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let f = r[i] * li % p;
            q[i - dd] = f;
            for (j, &c) in d.c.iter().enumerate() {
                r[i - dd + j] = (r[i - dd + j] + p - f * c % p) % p;
            }
        }
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = Self::new(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &c| (acc * x + c) % self.p)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let p = f.p as u128;
    let x = FpPoly::x(f.p);
    let f = f.monic();
    for r in prime_factors(n as u64) {
        let h = x.pow_mod(p.pow((n as u64 / r) as u32), &f).sub(&x);
        if f.gcd(&h).degree() != Some(0) {
            return false;
        }
    }
    x.pow_mod(p.pow(n as u32), &f).sub(&x).rem(&f).is_zero()
}

/// The monic irreducible of degree `k` whose coefficient vector, read from the constant term
/// upward, is lexicographically least.
pub fn least_irreducible(p: u64, k: usize) -> FpPoly {
    let total = p.pow(k as u32);
    for n in 0..total {
        let mut c = Vec::with_capacity(k + 1);
        let mut m = n;
        for _ in 0..k {
            c.push(m % p);
            m /= p;
        }
        c.push(1);
        let f = FpPoly::new(p, c);
        if is_irreducible(&f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Monic irreducible factors with multiplicity, by trial division in increasing degree
/// (intended for small degree).
pub fn factor(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut g = f.monic();
    let mut out = Vec::new();
    let mut d = 1;
    while g.degree().unwrap_or(0) >= 2 * d {
        let total = p.pow(d as u32);
        for n in 0..total {
            let mut c = Vec::with_capacity(d + 1);
            let mut m = n;
            for _ in 0..d {
                c.push(m % p);
                m /= p;
            }
            c.push(1);
            let h = FpPoly::new(p, c);
            let mut e = 0;
            loop {
                let (q, r) = g.div_rem(&h);
                if !r.is_zero() {
                    break;
                }
                g = q;
                e += 1;
            }
            if e > 0 {
                out.push((h, e));
            }
        }
        d += 1;
    }
    if g.degree().unwrap_or(0) > 0 {
        match out.iter_mut().find(|(h, _)| *h == g) {
            Some((_, e)) => *e += 1,
            None => out.push((g, 1)),
        }
    }
    out.sort();
    out
}

/// `F_q`, `q = p^k`, as `F_p[x]/(m)` with `m` the least irreducible of degree k.
///
/// Elements are integers in `[0, q)` whose base-p digits are the coefficients.
#[derive(Clone, Debug)]
pub struct Fq {
    pub p: u64,
    pub k: usize,
    pub q: u64,
    pub modulus: FpPoly,
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl Fq {
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if k == 0 {
            return invalid("extension degree must be positive");
        }
        let q = p.checked_pow(k as u32).filter(|&q| q <= 1 << 26);
        let Some(q) = q else {
            return invalid(format!("field of size {p}^{k} is too large for tables"));
        };
        let modulus = least_irreducible(p, k);
        let decode = |n: u64| -> FpPoly {
            let mut c = Vec::with_capacity(k);
            let mut m = n;
            for _ in 0..k {
                c.push(m % p);
                m /= p;
            }
            FpPoly::new(p, c)
        };
        let encode = |f: &FpPoly| -> u64 { f.c.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let order = q - 1;
        let factors = prime_factors(order);
        let gen = (2..q.max(3))
            .map(&decode)
            .find(|g| {
                factors
                    .iter()
                    .all(|r| encode(&g.pow_mod((order / r) as u128, &modulus)) != 1)
            })
            .unwrap_or_else(|| decode(1));
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = FpPoly::new(p, vec![1]);
        for (i, slot) in exp.iter_mut().enumerate() {
            let e = encode(&cur);
            *slot = e as u32;
            log[e as usize] = i as u32;
            cur = cur.mul(&gen).rem(&modulus);
        }
        Ok(Fq {
            p,
            k,
            q,
            modulus,
            log,
            exp,
        })
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, mut a: u64, mut b: u64) -> u64 {
        let p = self.p;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, mut a: u64) -> u64 {
        let p = self.p;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += (p - a % p) % p * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// `a - 1`, touching only the constant digit.
    pub fn dec(&self, a: u64) -> u64 {
        let d = a % self.p;
        a - d + (d + self.p - 1) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q - 1);
        self.exp[s as usize] as u64
    }

    /// Discrete logarithm of a nonzero element to the table generator.
    pub fn log(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.log[a as usize] as u64
    }

    pub fn exp(&self, e: u64) -> u64 {
        self.exp[(e % (self.q - 1)) as usize] as u64
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        self.exp((self.log(a) as u128 * e as u128 % (self.q - 1) as u128) as u64)
    }

    /// Horner evaluation of an integer polynomial (lowest degree first).
    pub fn eval_int_poly(&self, c: &[i64], x: u64) -> u64 {
        c.iter()
            .rev()
            .fold(0, |acc, &ci| self.add(self.mul(acc, x), self.from_int(ci)))
    }

    /// Number of `t ∈ F_q` with `t^e = c`.
    pub fn count_roots_of(&self, e: u64, c: u64) -> u64 {
        if c == 0 {
            return 1;
        }
        let g = gcd(e, self.q - 1);
        if self.log(c) % g == 0 {
            g
        } else {
            0
        }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
