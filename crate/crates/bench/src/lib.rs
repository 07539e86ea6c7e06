//! Shared fixtures for the benchmarks.

use polylog::itint::{FormWord, LogForm};
use polylog::{Complex, MonodromyWord, PrecisionConfig};

pub fn precision(bits: u32) -> PrecisionConfig {
    let tol = 2f64.powi(-(bits as i32) / 2 + 8);
    PrecisionConfig::new(bits, tol).expect("valid precision")
}

/// Points off the principal disk, where evaluation needs transport.
pub fn sample_points(bits: u32) -> Vec<Complex> {
    [(2.0, 1.0), (-1.5, 0.5), (0.3, -2.0), (0.0, 1.0)].iter().map(|&(a, b)| Complex::from_f64(a, b, bits)).collect()
}

pub fn sample_word() -> MonodromyWord {
    "s0 s1 s0^-1 s1^-1".parse().expect("valid word")
}

/// `w0 w1 w0 w1`.
pub fn sample_forms(bits: u32) -> FormWord {
    let (a, b) = (LogForm::omega0(bits), LogForm::omega1(bits));
    FormWord::new(vec![a.clone(), b.clone(), a, b])
}
