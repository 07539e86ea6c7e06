//! Multiprecision arithmetic, series kernels, transport along contours and
//! reference constants.

pub mod complex;
pub mod matrix;
pub mod real;
pub mod reference;
pub mod series;
pub mod transport;

use crate::error::{Error, Result};

/// Working precision and target accuracy shared by every computation.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionConfig {
    pub working_bits: u32,
    pub target_tol: f64,
    /// Path clearance as a fraction of the smallest distance among the
    /// singular points and the path endpoints.
    pub clearance: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig { working_bits: 256, target_tol: 1e-30, clearance: 1e-3 }
    }
}

impl PrecisionConfig {
    pub fn new(working_bits: u32, target_tol: f64) -> Result<Self> {
        if working_bits < 64 {
            return Err(Error::Argument(format!("working_bits must be at least 64, got {working_bits}")));
        }
        if !(target_tol > 0.0 && target_tol.is_finite()) {
            return Err(Error::Argument(format!("target_tol must be positive, got {target_tol}")));
        }
        Ok(PrecisionConfig { working_bits, target_tol, clearance: 1e-3 })
    }

    pub fn with_clearance(mut self, clearance: f64) -> Self {
        self.clearance = clearance;
        self
    }

    /// Decimal digits requested by `target_tol`.
    pub fn tol_digits(&self) -> u32 {
        (-self.target_tol.log10()).ceil().max(1.0) as u32
    }

    /// Precision actually used: at least `working_bits`, and enough for
    /// twice the digits of the tolerance.
    pub fn bits(&self) -> u32 {
        let need = (2.0 * self.tol_digits() as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16;
        let b = self.working_bits.max(need);
        b.div_ceil(64) * 64
    }

    /// Same configuration at a different working precision.
    pub fn with_bits(&self, bits: u32) -> Self {
        PrecisionConfig { working_bits: bits, ..self.clone() }
    }

    /// Same configuration with a different tolerance.
    pub fn with_tol(&self, tol: f64) -> Self {
        PrecisionConfig { target_tol: tol, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(PrecisionConfig::new(32, 1e-10).is_err());
        assert!(PrecisionConfig::new(128, 0.0).is_err());
        assert!(PrecisionConfig::new(128, -1.0).is_err());
        let p = PrecisionConfig::default();
        assert_eq!(p.bits(), 256);
        assert_eq!(p.tol_digits(), 30);
    }

    #[test]
    fn guard_digits_raise_precision() {
        let p = PrecisionConfig::new(64, 1e-30).unwrap();
        assert!(p.bits() as f64 * std::f64::consts::LOG10_2 >= 60.0);
    }
}
