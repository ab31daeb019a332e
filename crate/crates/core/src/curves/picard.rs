use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactmath::arith::is_prime;
use crate::ff::{factor, FpPoly, Fq};
use crate::UniPoly;

/// `y³ = f(x)` with f an integral quartic with simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PicardFile", into = "PicardFile")]
pub struct PicardSpec {
    /// Coefficients, lowest degree first.
    pub f: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PicardFile {
    f: Vec<i64>,
}

impl TryFrom<PicardFile> for PicardSpec {
    type Error = Error;
    fn try_from(v: PicardFile) -> Result<Self> {
        PicardSpec::new(v.f)
    }
}

impl From<PicardSpec> for PicardFile {
    fn from(s: PicardSpec) -> Self {
        PicardFile { f: s.f }
    }
}

impl PicardSpec {
    pub fn new(f: Vec<i64>) -> Result<Self> {
        if f.len() != 5 || f[4] == 0 {
            return invalid("f must be a quartic given by 5 coefficients");
        }
        if !UniPoly::from_i64s(&f).is_squarefree() {
            return invalid("f must have simple roots");
        }
        Ok(PicardSpec { f })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn poly(&self) -> UniPoly {
        UniPoly::from_i64s(&self.f)
    }

    pub fn poly_string(&self) -> String {
        self.poly().to_string()
    }

    pub fn check_good(&self, p: u64) -> Result<()> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if p == 3 {
            return Err(Error::BadReduction {
                p,
                reason: "the cover y^3 = f(x) is inseparable in characteristic 3".into(),
            });
        }
        let fp = FpPoly::from_i64s(p, &self.f);
        if fp.degree() != Some(4) {
            return Err(Error::BadReduction {
                p,
                reason: "f drops degree mod p".into(),
            });
        }
        let d = FpPoly::new(p, (1..5).map(|i| fp.c[i] * i as u64).collect());
        if fp.gcd(&d).degree() != Some(0) {
            return Err(Error::BadReduction {
                p,
                reason: "f has a repeated root mod p; this model is singular".into(),
            });
        }
        Ok(())
    }

    /// Affine solutions plus the single point at infinity.
    pub fn count_points(&self, p: u64, k: usize) -> Result<u64> {
        self.check_good(p)?;
        let fq = Fq::new(p, k)?;
        let cubes = (fq.q - 1) % 3 == 0;
        let affine: u64 = (0..fq.q)
            .into_par_iter()
            .map(|x| {
                let v = fq.eval_int_poly(&self.f, x);
                match (v, cubes) {
                    (0, _) | (_, false) => 1,
                    (v, true) if fq.log(v) % 3 == 0 => 3,
                    _ => 0,
                }
            })
            .sum();
        Ok(affine + 1)
    }
}

/// Monic irreducible factorization of f over `F_p` with multiplicities.
pub fn quartic_mod_p(spec: &PicardSpec, p: u64) -> Result<Vec<(FpPoly, u32)>> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    let fp = FpPoly::from_i64s(p, &spec.f);
    if fp.is_zero() {
        return invalid("f vanishes mod p");
    }
    Ok(factor(&fp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> PicardSpec {
        PicardSpec::new(vec![-130975, 24440, -1274, 0, 1]).unwrap()
    }

    #[test]
    fn factorization_mod_5() {
        let fs = quartic_mod_p(&c4(), 5).unwrap();
        let expect = vec![
            (FpPoly::from_i64s(5, &[0, 1]), 2),
            (FpPoly::from_i64s(5, &[2, 1]), 1),
            (FpPoly::from_i64s(5, &[3, 1]), 1),
        ];
        assert_eq!(fs, expect);
    }

    #[test]
    fn bad_models() {
        for p in [2, 3, 5, 13] {
            assert!(
                matches!(c4().count_points(p, 1), Err(Error::BadReduction { .. })),
                "{p}"
            );
        }
        assert!(c4().check_good(7).is_ok());
    }

    #[test]
    fn counts_match_brute_force() {
        for p in [7u64, 11, 17, 19] {
            let mut n = 1;
            for x in 0..p {
                let v = c4()
                    .f
                    .iter()
                    .rev()
                    .fold(0i64, |acc, &c| (acc * x as i64 + c).rem_euclid(p as i64));
                n += (0..p).filter(|&y| (y * y % p * y % p) as i64 == v).count() as u64;
            }
            assert_eq!(c4().count_points(p, 1).unwrap(), n);
        }
    }
}
