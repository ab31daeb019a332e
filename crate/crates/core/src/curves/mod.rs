//! Cyclic covers `y^N = x^{a1} (x-1)^{a2}` of the line and Picard curves `y³ = f(x)`: genus,
//! CM-types, point counts and zeta functions.

mod cover;
mod picard;
mod zeta;

pub use cover::{cover_cm_type, normalize_cover, rh_genus, CoverCMType, CoverSpec};
pub use picard::{quartic_mod_p, PicardSpec};
pub use zeta::{
    functional_equation_holds, l_polynomial, newton_slopes, weil_deviation, zeta_classify,
    zeta_classify_with, ReductionClass, ZetaData,
};

use crate::error::Result;

/// A curve whose points we can count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Curve {
    Cover(CoverSpec),
    Picard(PicardSpec),
}

impl Curve {
    pub fn genus(&self) -> Result<u32> {
        match self {
            Curve::Cover(c) => rh_genus(c),
            Curve::Picard(_) => Ok(3),
        }
    }

    /// Errors with a bad-reduction reason when the model is not smooth at `p`.
    pub fn check_good(&self, p: u64) -> Result<()> {
        match self {
            Curve::Cover(c) => c.check_good(p),
            Curve::Picard(f) => f.check_good(p),
        }
    }

    /// Points of the smooth projective model over `F_{p^k}`.
    pub fn count_points(&self, p: u64, k: usize) -> Result<u64> {
        match self {
            Curve::Cover(c) => c.count_points(p, k),
            Curve::Picard(f) => f.count_points(p, k),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Curve::Cover(c) => format!("y^{} = x^{} (x-1)^{}", c.n, c.a1, c.a2),
            Curve::Picard(f) => format!("y^3 = {}", f.poly_string()),
        }
    }
}
