//! Rational matrix models of the algebra, and the change of basis producing the matrix T.

use num_traits::Zero;

use super::{Mat3, QuaternionAlgebra};
use crate::error::{invalid, Error, Result};
use crate::exactmath::arith::rat;
use crate::{QMatrix, QMatrix3, Quaternion, Rational, UniPoly};

fn basis_images(alg: &QuaternionAlgebra) -> [QMatrix; 4] {
    let e = alg.epsilon as i64;
    let q = if alg.p == 2 { 1 } else { alg.p as i64 };
    [
        QMatrix::identity(4),
        QMatrix::from_i64s(&[&[0, -e, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -e], &[0, 0, 1, 0]]),
        QMatrix::from_i64s(&[&[0, 0, -q, 0], &[0, 0, 0, q], &[1, 0, 0, 0], &[0, -1, 0, 0]]),
        QMatrix::from_i64s(&[
            &[0, 0, 0, -e * q],
            &[0, 0, -q, 0],
            &[0, e, 0, 0],
            &[1, 0, 0, 0],
        ]),
    ]
}

/// `B ↪ M₄(Q)`.
pub fn to_m4q(alg: &QuaternionAlgebra, q: &Quaternion) -> QMatrix {
    let imgs = basis_images(alg);
    (0..4).fold(QMatrix::zeros(4, 4), |acc, k| {
        &acc + &imgs[k].scale(&q.c[k])
    })
}

/// `M₃(B) ↪ M₁₂(Q)`, blockwise.
pub fn to_m12q(alg: &QuaternionAlgebra, x: &QMatrix3) -> QMatrix {
    let mut u = QMatrix::zeros(12, 12);
    for i in 0..3 {
        for j in 0..3 {
            u.set_block(4 * i, 4 * j, &to_m4q(alg, &x.e[i][j]));
        }
    }
    u
}

pub fn charpoly12(u: &QMatrix) -> UniPoly {
    u.charpoly()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedT {
    pub t: QMatrix3,
    /// `Q` was replaced by `Q_{π(i) π(j)}` before lifting.
    pub perm: [usize; 3],
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// `T = P Q P⁻¹` with `P = diag(1, s/δ₂, t/δ₃)`, where `s = Q₁₂`, `t = Q₁₃`.
///
/// If `s` or `t` vanishes, the first permutation of the three factors making both nonzero is
/// applied; `δ₂`, `δ₃` must equal `Nrd(s)`, `Nrd(t)` of the matrix actually lifted.
pub fn lift_t(alg: &QuaternionAlgebra, q: &QMatrix3, delta2: i64, delta3: i64) -> Result<LiftedT> {
    if !q.is_skew() {
        return invalid("lift_T needs a skew matrix");
    }
    if delta2 <= 0 || delta3 <= 0 {
        return invalid("δ₂ and δ₃ must be positive");
    }
    let perm = PERMS
        .iter()
        .copied()
        .find(|&p| {
            let m = q.permuted(p);
            !m.e[0][1].is_zero() && !m.e[0][2].is_zero()
        })
        .ok_or_else(|| {
            Error::NotNormalizable("no ordering of the factors has s, t nonzero".into())
        })?;
    let m = q.permuted(perm);
    let (s, t) = (&m.e[0][1], &m.e[0][2]);
    if alg.nrd(s) != rat(delta2) || alg.nrd(t) != rat(delta3) {
        return invalid(format!(
            "declared δ₂ = {delta2}, δ₃ = {delta3} but Nrd(s) = {}, Nrd(t) = {}",
            alg.nrd(s),
            alg.nrd(t)
        ));
    }
    let d2 = rat(delta2).recip();
    let d3 = rat(delta3).recip();
    let p = Mat3::diagonal([Quaternion::one(), s.scale(&d2), t.scale(&d3)]);
    let pinv = Mat3::diagonal([
        Quaternion::one(),
        alg.inv(&s.scale(&d2)).expect("nonzero"),
        alg.inv(&t.scale(&d3)).expect("nonzero"),
    ]);
    Ok(LiftedT {
        t: alg.mat3_mul(&alg.mat3_mul(&p, &m), &pinv),
        perm,
    })
}

/// `Σ_i Trd(X_ii)`; the trace of the 12×12 image is twice this.
pub fn reduced_diagonal_trace(x: &QMatrix3) -> Rational {
    (0..3).fold(Rational::zero(), |acc, i| acc + x.e[i][i].trd())
}
