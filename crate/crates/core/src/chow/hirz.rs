use serde::{Deserialize, Serialize};

use super::ChowError;

/// The class `a C0 + b f` on the Hirzebruch surface with invariant `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HirzClass {
    pub e: u32,
    pub a: i64,
    pub b: i64,
}

impl HirzClass {
    pub fn new(e: u32, a: i64, b: i64) -> HirzClass {
        HirzClass { e, a, b }
    }

    pub fn section(e: u32) -> HirzClass {
        HirzClass::new(e, 1, 0)
    }

    pub fn fiber(e: u32) -> HirzClass {
        HirzClass::new(e, 0, 1)
    }

    pub fn add(self, rhs: HirzClass) -> HirzClass {
        HirzClass::new(self.e, self.a + rhs.a, self.b + rhs.b)
    }
}

/// Bilinear extension of `C0^2 = -e`, `C0 f = 1`, `f^2 = 0`.
pub fn hirz_intersect(c1: &HirzClass, c2: &HirzClass) -> Result<i64, ChowError> {
    if c1.e != c2.e {
        return Err(ChowError::MismatchedSurface(c1.e, c2.e));
    }
    let e = c1.e as i64;
    Ok(-e * c1.a * c2.a + c1.a * c2.b + c1.b * c2.a)
}

/// `K = -2 C0 - (2 + e) f`.
pub fn hirz_canonical(e: u32) -> HirzClass {
    HirzClass::new(e, -2, -(2 + e as i64))
}

/// Arithmetic genus `1 + Y (Y + K) / 2`; an odd `Y (Y + K)` is reported
/// rather than rounded.
pub fn hirz_adjunction_genus(y: &HirzClass) -> Result<i64, ChowError> {
    let v = hirz_intersect(y, &y.add(hirz_canonical(y.e)))?;
    if v % 2 != 0 {
        return Err(ChowError::OddPairing(v));
    }
    Ok(1 + v / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_relations() {
        let c0 = HirzClass::section(2);
        let f = HirzClass::fiber(2);
        assert_eq!(hirz_intersect(&c0, &c0), Ok(-2));
        assert_eq!(hirz_intersect(&f, &f), Ok(0));
        assert_eq!(hirz_intersect(&HirzClass::new(2, 2, 4), &c0), Ok(0));
        assert!(hirz_intersect(&c0, &HirzClass::fiber(1)).is_err());
    }

    #[test]
    fn genus_examples() {
        assert_eq!(hirz_adjunction_genus(&HirzClass::new(1, 2, 3)), Ok(1));
        assert_eq!(hirz_adjunction_genus(&HirzClass::new(0, 2, 2)), Ok(1));
        assert_eq!(hirz_adjunction_genus(&HirzClass::section(0)), Ok(0));
    }
}
