//! Sextic CM-fields, quaternion maximal orders and the genus-3 embedding problem.
//!
//! The algebraic core ([`poly::Poly`], [`matrix::Matrix`], [`quaternion::Quat`]) is generic
//! over a [`scalar::Scalar`]; exact computations use the rational aliases below.

pub mod cmfield;
pub mod curves;
pub mod embedding;
pub mod error;
pub mod exactmath;
pub mod ff;
pub mod matrix;
pub mod poly;
pub mod quaternion;
pub mod scalar;

pub use error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
/// Univariate polynomial over the rationals, coefficients lowest degree first.
pub type UniPoly = poly::Poly<Rational>;
/// Dense rational matrix.
pub type QMatrix = matrix::Matrix<Rational>;
/// Quaternion with rational coordinates over the basis 1, i, j, k.
pub type Quaternion = quaternion::Quat<Rational>;
/// 3×3 matrix over a quaternion algebra.
pub type QMatrix3 = quaternion::Mat3<Rational>;

pub use cmfield::{CMType, GaloisClass, ImQuadWitness};
pub use exactmath::{CMFieldSpec, CubicFieldSpec, CubicNum};
pub use quaternion::{OrderBasis, QuaternionAlgebra};

/// Runs `f` on a dedicated pool of `workers` threads, or on the global pool.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Internal(e.to_string()))
            .map(|pool| pool.install(f)),
    }
}
