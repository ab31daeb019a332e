//! Symmetric rational matrices with a prescribed cubic characteristic polynomial.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::ToPrimitive;

use crate::error::{invalid, Error, Result};
use crate::exactmath::arith::{fmt_rational, rat};
use crate::exactmath::cubic::rational_root;
use crate::exactmath::sturm::sturm_sign_data;
use crate::{QMatrix, Rational, UniPoly};

pub const DEFAULT_MAX_DENOMINATOR: i64 = 12;

pub fn symmetric_matrix_with_charpoly(c: &UniPoly) -> Result<QMatrix> {
    symmetric_matrix_with_charpoly_bounded(c, DEFAULT_MAX_DENOMINATOR)
}

/// Split cubics give the diagonal of their roots; otherwise matrices with entries in `(1/D)ℤ`
/// are searched for `D = 1..=max_den`, every hit verified exactly.
pub fn symmetric_matrix_with_charpoly_bounded(c: &UniPoly, max_den: i64) -> Result<QMatrix> {
    if c.degree() != Some(3) || !c.is_monic() {
        return invalid("expected a monic cubic");
    }
    if let Some(roots) = split_roots(c) {
        return Ok(QMatrix::diagonal(&roots));
    }
    let (real, _) = sturm_sign_data(c)?;
    if real != 3 {
        return invalid("the cubic must have three real roots");
    }
    let m1 = c.coeff(2);
    let n1 = c.coeff(1);
    let power_sum = &m1 * &m1 - rat(2) * &n1;
    for den in 1..=max_den.max(1) {
        let dq = rat(den);
        let tr = -&m1 * &dq;
        let sq = &power_sum * &dq * &dq;
        if !tr.is_integer() || !sq.is_integer() {
            continue;
        }
        let (Some(tr), Some(sq)) = (tr.to_integer().to_i64(), sq.to_integer().to_i64()) else {
            continue;
        };
        if let Some(m) = search_scaled(c, den, tr, sq) {
            return Ok(m);
        }
    }
    Err(Error::NotFound(format!(
        "no symmetric matrix with denominator <= {max_den} has characteristic polynomial with x^2 coefficient {}",
        fmt_rational(&m1)
    )))
}

fn split_roots(c: &UniPoly) -> Option<Vec<Rational>> {
    let mut f = c.clone();
    let mut roots = Vec::new();
    while f.degree().unwrap_or(0) > 0 {
        let r = if f.degree() == Some(1) {
            -f.coeff(0) / f.coeff(1)
        } else {
            rational_root(&f)?
        };
        let lin = UniPoly::linear(r.clone());
        f = f.div_rem(&lin).0;
        roots.push(r);
    }
    roots.sort();
    Some(roots)
}

/// Numerators `[[a,b,c],[b,e,f],[c,f,l]]` over `den` with `a+e+l = tr` and
/// `a²+e²+l²+2(b²+c²+f²) = sq`.
fn search_scaled(c: &UniPoly, den: i64, tr: i64, sq: i64) -> Option<QMatrix> {
    let isqrt = |n: i64| if n < 0 { -1 } else { n.sqrt() };
    let r = isqrt(sq);
    let dq = Rational::from_integer(BigInt::from(den));
    let d2 = &dq * &dq;
    let want_m2 = c.coeff(1) * &d2;
    let want_det = -c.coeff(0) * &d2 * &dq;
    if !want_m2.is_integer() || !want_det.is_integer() {
        return None;
    }
    let (Some(want_m2), Some(want_det)) = (
        want_m2.to_integer().to_i64(),
        want_det.to_integer().to_i64(),
    ) else {
        return None;
    };
    for a in -r..=r {
        let ra = sq - a * a;
        for e in -r..=r {
            let l = tr - a - e;
            let diag = a * a + e * e + l * l;
            let rest = sq - diag;
            if rest < 0 || rest % 2 != 0 || ra < 0 {
                continue;
            }
            let off = rest / 2;
            let ro = isqrt(off);
            for b in -ro..=ro {
                let rb = off - b * b;
                let rc = isqrt(rb);
                for cc in -rc..=rc {
                    let rf = rb - cc * cc;
                    let f = isqrt(rf);
                    if f * f != rf {
                        continue;
                    }
                    for f in if f == 0 { vec![0] } else { vec![-f, f] } {
                        let m2 = a * e + e * l + a * l - b * b - cc * cc - f * f;
                        let det =
                            a * (e * l - f * f) - b * (b * l - f * cc) + cc * (b * f - e * cc);
                        if m2 != want_m2 || det != want_det {
                            continue;
                        }
                        let m = QMatrix::from_rows(
                            [[a, b, cc], [b, e, f], [cc, f, l]]
                                .iter()
                                .map(|row| row.iter().map(|&x| rat(x) / &dq).collect())
                                .collect(),
                        );
                        if &m.charpoly() == c {
                            return Some(m);
                        }
                    }
                }
            }
        }
    }
    None
}
