use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A complex coordinate constrained to the open half-plane `Re > floor`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlanePoint {
    value: Complex64,
    floor: f64,
}

impl HalfPlanePoint {
    pub fn new(value: Complex64, floor: f64) -> Result<Self> {
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::Domain(format!("non-finite point {value}")));
        }
        if value.re <= floor {
            return Err(Error::Domain(format!(
                "Re({value}) = {} is not > {floor}",
                value.re
            )));
        }
        Ok(Self { value, floor })
    }

    /// Point of the half-plane `Re > 1/2`.
    pub fn dirichlet(value: Complex64) -> Result<Self> {
        Self::new(value, 0.5)
    }

    /// Point of the half-plane `Re > 0`.
    pub fn right(value: Complex64) -> Result<Self> {
        Self::new(value, 0.0)
    }

    pub fn real(re: f64, floor: f64) -> Result<Self> {
        Self::new(Complex64::new(re, 0.0), floor)
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn conj(&self) -> Self {
        Self {
            value: self.value.conj(),
            floor: self.floor,
        }
    }

    /// Re-tag the point with a different floor, checking the new constraint.
    pub fn with_floor(&self, floor: f64) -> Result<Self> {
        Self::new(self.value, floor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_points_on_or_left_of_the_floor() {
        assert!(HalfPlanePoint::real(0.5, 0.5).is_err());
        assert!(HalfPlanePoint::real(0.4, 0.5).is_err());
        assert!(HalfPlanePoint::real(0.500001, 0.5).is_ok());
        assert!(HalfPlanePoint::new(Complex64::new(f64::NAN, 0.0), 0.0).is_err());
    }

    #[test]
    fn conj_keeps_floor() {
        let p = HalfPlanePoint::dirichlet(Complex64::new(1.0, 2.0)).unwrap();
        assert_eq!(p.conj().value(), Complex64::new(1.0, -2.0));
        assert_eq!(p.conj().floor(), 0.5);
    }
}
