use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::Curve;
use crate::error::{internal, Result};
use crate::exactmath::arith::ratio;
use crate::poly::Poly;
use crate::{Rational, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionClass {
    Ordinary,
    Supersingular,
    Intermediate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaData {
    pub curve: String,
    pub p: u64,
    pub genus: u32,
    /// `#C(F_{p^k})` for `k = 1, 2, …`.
    pub counts: Vec<u64>,
    /// `L(T)`, lowest degree first.
    #[serde(rename = "L")]
    pub l: Vec<i64>,
    /// `(slope numerator, slope denominator, horizontal length)`.
    pub slopes: Vec<(i64, i64, u32)>,
    pub p_rank: u32,
    #[serde(rename = "class")]
    pub class: ReductionClass,
    /// Largest `| |α|/√p - 1 |` over reciprocal roots α of `L`.
    pub weil_deviation: f64,
}

impl ZetaData {
    pub fn functional_equation_holds(&self) -> bool {
        functional_equation_holds(&self.l, self.p, self.genus)
    }
}

/// `L(T)` from point counts by Newton's identities. With fewer than `2g` counts the upper
/// half comes from the functional equation; with `2g` counts every coefficient is computed
/// directly and the functional equation becomes a check.
pub fn l_polynomial(counts: &[u64], p: u64, g: u32) -> Result<Vec<i64>> {
    let g = g as usize;
    if counts.len() < g {
        return internal(format!(
            "{} counts do not determine a genus-{g} L-polynomial",
            counts.len()
        ));
    }
    let m = counts.len().min(2 * g);
    let p = p as i128;
    let s: Vec<i128> = (1..=m)
        .map(|k| p.pow(k as u32) + 1 - counts[k - 1] as i128)
        .collect();
    let mut c = vec![1i128];
    for k in 1..=m {
        let acc: i128 = (1..=k).map(|i| s[i - 1] * c[k - i]).sum();
        if acc % k as i128 != 0 {
            return internal(format!("Newton identity not integral at degree {k}"));
        }
        c.push(-acc / k as i128);
    }
    for k in m + 1..=2 * g {
        let j = 2 * g - k;
        c.push(p.pow((g - j) as u32) * c[j]);
    }
    c.into_iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| crate::Error::Internal("L coefficient overflow".into()))
        })
        .collect()
}

pub fn functional_equation_holds(l: &[i64], p: u64, g: u32) -> bool {
    let g = g as usize;
    l.len() == 2 * g + 1
        && l[0] == 1
        && (0..=g).all(|k| l[2 * g - k] as i128 == (p as i128).pow((g - k) as u32) * l[k] as i128)
}

fn vp(mut n: i64, p: u64) -> u32 {
    let p = p as i64;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Lower convex hull of `(k, v_p(c_k))`, as slopes with their horizontal lengths.
pub fn newton_slopes(l: &[i64], p: u64) -> Vec<(Rational, u32)> {
    let pts: Vec<(i64, i64)> = l
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (k as i64, vp(c, p) as i64))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b if it lies on or above the segment a–pt
            if (b.1 - a.1) * (pt.0 - a.0) >= (pt.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out: Vec<(Rational, u32)> = Vec::new();
    for w in hull.windows(2) {
        let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let slope = ratio(dy, dx);
        match out.last_mut() {
            Some((s, len)) if *s == slope => *len += dx as u32,
            _ => out.push((slope, dx as u32)),
        }
    }
    out
}

/// Durand–Kerner on a monic complex polynomial.
fn complex_roots(f: &Poly<Complex64>) -> Vec<Complex64> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let lead = f.lead();
    let f = Poly::new(f.coeffs().iter().map(|c| c / lead).collect());
    let radius = 1.0
        + f.coeffs()
            .iter()
            .take(n)
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius / 2.0).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = f.eval(&z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm() / z[i].norm().max(1.0));
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// Largest relative deviation of `|α|` from `√p` over the reciprocal roots of `L`, computed
/// on the squarefree part so repeated roots do not stall the iteration.
pub fn weil_deviation(l: &[i64], p: u64) -> f64 {
    let rev: Vec<i64> = l.iter().rev().copied().collect();
    let sq = UniPoly::from_i64s(&rev).squarefree_part();
    let cf = Poly::new(
        sq.coeffs()
            .iter()
            .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect(),
    );
    let sp = (p as f64).sqrt();
    complex_roots(&cf)
        .iter()
        .map(|z| (z.norm() / sp - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Counts over `F_{p^k}` for `k = 1..=k_max` (at least the genus), the L-polynomial, its
/// Newton polygon and the resulting reduction class.
pub fn zeta_classify_with(curve: &Curve, p: u64, k_max: usize) -> Result<ZetaData> {
    let g = curve.genus()?;
    curve.check_good(p)?;
    let k_max = k_max.max(g as usize);
    let counts = (1..=k_max)
        .map(|k| curve.count_points(p, k))
        .collect::<Result<Vec<_>>>()?;
    let l = l_polynomial(&counts, p, g)?;
    if !functional_equation_holds(&l, p, g) {
        return internal(format!(
            "L-polynomial at p = {p} violates the functional equation"
        ));
    }
    let slopes = newton_slopes(&l, p);
    let p_rank = slopes
        .iter()
        .filter(|s| s.0 == ratio(0, 1))
        .map(|s| s.1)
        .sum();
    let class = if p_rank == g {
        ReductionClass::Ordinary
    } else if slopes.iter().all(|s| s.0 == ratio(1, 2)) {
        ReductionClass::Supersingular
    } else {
        ReductionClass::Intermediate
    };
    let weil_deviation = weil_deviation(&l, p);
    let slopes = slopes
        .into_iter()
        .map(|(s, m)| {
            (
                s.numer().to_i64().unwrap_or(0),
                s.denom().to_i64().unwrap_or(1),
                m,
            )
        })
        .collect();
    Ok(ZetaData {
        curve: curve.name(),
        p,
        genus: g,
        counts,
        l,
        slopes,
        p_rank,
        class,
        weil_deviation,
    })
}

pub fn zeta_classify(curve: &Curve, p: u64) -> Result<ZetaData> {
    zeta_classify_with(curve, p, 0)
}
