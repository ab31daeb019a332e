//! Exact rational arithmetic, polynomials over Q, and the fields `K+` and `K = K+(√α)`.

pub mod arith;
pub mod cubic;
pub mod resultant;
pub mod spec;
pub mod sturm;

pub use cubic::{charpoly_cubicnum, sqrt_in_field, sqrt_in_field_with, CubicFieldSpec, CubicNum};
pub use resultant::{poly_discriminant, resultant};
pub use spec::{minpoly_eta, CMFieldSpec, FieldSpecFile, RelQuadNum};
pub use sturm::{isolate_real_roots, sturm_sign_data, RealRoot};
