use num_traits::Zero;

use super::arith::rat;
use crate::error::{invalid, Result};
use crate::{QMatrix, Rational, UniPoly};

/// Sylvester-matrix resultant of two nonzero polynomials.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Rational {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Rational::zero();
    };
    if m + n == 0 {
        return rat(1);
    }
    let size = m + n;
    let mut s = QMatrix::zeros(size, size);
    for r in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            s[(r, r + k)] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            s[(n + r, r + k)] = c.clone();
        }
    }
    s.det()
}

/// `disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
pub fn poly_discriminant(f: &UniPoly) -> Result<Rational> {
    let n = match f.degree() {
        Some(n) if n >= 2 => n,
        _ => return invalid("discriminant needs degree at least 2"),
    };
    let r = resultant(f, &f.derivative()) / f.lead();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}
