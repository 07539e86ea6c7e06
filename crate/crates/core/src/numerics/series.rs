use super::complex::Complex;
use super::PrecisionConfig;
use crate::error::{Error, Result};

/// Radius inside which the defining power series is summed directly.
pub const SERIES_RADIUS: f64 = 0.75;

/// Number of terms so that `r^(N+1) / ((N+1)^k (1-r)) < tol`.
pub fn terms_needed(r: f64, k: u32, tol: f64) -> usize {
    if r == 0.0 {
        return 0;
    }
    let mut n = 1usize;
    loop {
        let bound = ((n as f64 + 1.0) * r.ln() - k as f64 * (n as f64 + 1.0).ln()).exp() / (1.0 - r);
        if bound < tol {
            return n;
        }
        n += 1;
    }
}

fn check_disk(x: &Complex) -> Result<()> {
    let r2 = x.norm_sqr();
    let lim = super::real::Real::from_f64(SERIES_RADIUS * SERIES_RADIUS, r2.prec());
    if r2 > lim {
        return Err(Error::Domain(format!("|x| = {:.6} exceeds series radius 3/4", r2.to_f64().sqrt())));
    }
    Ok(())
}

/// `sum_{n>=1} x^n / n^k` for `|x| <= 3/4`.
pub fn series_polylog(k: u32, x: &Complex, prec: &PrecisionConfig) -> Result<Complex> {
    if k < 1 {
        return Err(Error::Argument("polylog order must be at least 1".into()));
    }
    Ok(series_polylog_all(k, x, prec)?.pop().unwrap())
}

/// `[Li_1(x), ..., Li_kmax(x)]` from one pass over the powers of `x`.
pub fn series_polylog_all(kmax: u32, x: &Complex, prec: &PrecisionConfig) -> Result<Vec<Complex>> {
    if kmax < 1 {
        return Err(Error::Argument("polylog order must be at least 1".into()));
    }
    check_disk(x)?;
    let bits = prec.bits();
    let x = x.round_to(bits);
    let mut sums = vec![Complex::zero(bits); kmax as usize];
    let r = x.abs_f64();
    let n_terms = terms_needed(r, 1, prec.target_tol * 1e-6);
    let mut pow = Complex::one(bits);
    for n in 1..=n_terms as u64 {
        pow = &pow * &x;
        let mut t = pow.clone();
        for s in sums.iter_mut() {
            t = t.div_u64(n);
            *s += &t;
        }
    }
    Ok(sums)
}
