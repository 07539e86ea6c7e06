//! The fundamental solution `Lambda(x)` of the polylogarithm connection,
//! branch transport of `Li_k`, and the single-valued functions `D1..D3`.
//!
//! `Lambda` is upper triangular of size `n+1`. Row 0 is
//! `(1, Li_1 x, ..., Li_n x)`; for `j >= 1` row `j` has
//! `(2 pi i)^j log^{k-j} x / (k-j)!` in column `k >= j`. It satisfies
//! `dLambda = Lambda omega` with `omega_{01} = dz/(1-z)` and
//! `omega_{j,j+1} = dz/z` for `j >= 1`.

use crate::error::{Error, Result};
use crate::monodromy;
use crate::numerics::complex::Complex;
use crate::numerics::matrix::CMatrix;
use crate::numerics::real::Real;
use crate::numerics::series::{series_polylog_all, SERIES_RADIUS};
use crate::numerics::transport::{ode_transport, Connection};
use crate::numerics::PrecisionConfig;
use crate::paths::{Path, PathSegment};

/// A point together with the value of `Lambda` reached along `history`.
#[derive(Clone, Debug)]
pub struct BranchState {
    pub n: usize,
    pub point: Complex,
    pub history: Path,
    pub lambda: CMatrix,
}

impl BranchState {
    /// Largest deviation of the diagonal from `(2 pi i)^j` and of the
    /// strictly lower part from zero.
    pub fn invariant_residual(&self) -> f64 {
        let bits = self.lambda.prec();
        let tpi = Complex::two_pi_i(bits);
        let mut d = Complex::one(bits);
        let mut worst = 0f64;
        for i in 0..=self.n {
            worst = worst.max((self.lambda.get(i, i) - &d).abs_f64());
            for j in 0..i {
                worst = worst.max(self.lambda.get(i, j).abs_f64());
            }
            d = &d * &tpi;
        }
        worst
    }
}

/// The connection `omega` of order `n` (matrices of size `n+1`).
pub fn lambda_connection(n: usize, bits: u32) -> Connection {
    let mut c = Connection::new(n + 1);
    let zero = Complex::zero(bits);
    let one = Complex::one(bits);
    if n >= 1 {
        // dz/(1-z) = -dz/(z-1)
        c.add_term(&one, 0, 1, -one.clone());
    }
    for j in 1..n {
        c.add_term(&zero, j, j + 1, one.clone());
    }
    c
}

fn in_principal_disk(x: &Complex) -> bool {
    let bits = x.prec();
    let half = Real::from_f64(0.5, bits);
    let d = Complex::new(&x.re - &half, x.im.clone()).norm_sqr();
    d < Real::from_f64(0.25, bits)
}

/// Rows `1..=n` of `Lambda` given a value of `log x`.
fn log_rows(n: usize, log_x: &Complex, bits: u32, m: &mut CMatrix) {
    let tpi = Complex::two_pi_i(bits);
    // p[k] = log^k x / k!
    let mut p = vec![Complex::one(bits)];
    for k in 1..=n {
        p.push((&p[k - 1] * log_x).div_u64(k as u64));
    }
    let mut tj = Complex::one(bits);
    for j in 1..=n {
        tj = &tj * &tpi;
        for k in j..=n {
            m.set(j, k, &tj * &p[k - j]);
        }
    }
}

/// `(1, Li_1 x, ..., Li_n x)` on the principal branch, `|x - 1/2| < 1/2`.
fn principal_row0(x: &Complex, n: usize, prec: &PrecisionConfig) -> Result<Vec<Complex>> {
    let bits = prec.bits();
    if x.abs_f64() <= SERIES_RADIUS * (1.0 - 1e-12) {
        let mut row = vec![Complex::one(bits)];
        row.extend(series_polylog_all(n as u32, x, prec)?);
        return Ok(row);
    }
    // short transport from 1/2 inside the disk
    let path = Path::at_half(bits).line_to(x.clone());
    let start = principal_row0(&Complex::from_f64(0.5, 0.0, bits), n, prec)?;
    row0_transport(&start, &path, n, prec)
}

fn row0_transport(start: &[Complex], path: &Path, n: usize, prec: &PrecisionConfig) -> Result<Vec<Complex>> {
    let conn = lambda_connection(n, prec.bits());
    let init = CMatrix { rows: 1, cols: n + 1, data: start.to_vec() };
    Ok(ode_transport(&conn, path, &init, prec)?.data)
}

/// `Lambda(x)` on the principal branch.
pub fn principal_lambda(x: &Complex, n: usize, prec: &PrecisionConfig) -> Result<BranchState> {
    if n < 1 {
        return Err(Error::Argument("order n must be at least 1".into()));
    }
    let bits = prec.bits();
    let x = x.round_to(bits);
    if !in_principal_disk(&x) {
        return Err(Error::Domain(format!("x = {} is outside the disk |x - 1/2| < 1/2", x.to_decimal(12))));
    }
    let mut m = CMatrix::zeros(n + 1, n + 1, bits);
    for (k, v) in principal_row0(&x, n, prec)?.into_iter().enumerate() {
        m.set(0, k, v);
    }
    log_rows(n, &x.ln(), bits, &mut m);
    Ok(BranchState { n, point: x.clone(), history: Path::new(x), lambda: m })
}

/// Analytically continue `state` along `path`.
pub fn continue_branch(state: &BranchState, path: &Path, prec: &PrecisionConfig) -> Result<BranchState> {
    let bits = prec.bits();
    let conn = lambda_connection(state.n, bits);
    let lambda = ode_transport(&conn, path, &state.lambda, prec)?;
    let history = state.history.compose(path)?;
    Ok(BranchState { n: state.n, point: path.end_point(), history, lambda })
}

/// `Lambda` at the end of `path` (starting from the principal value at
/// its basepoint).
pub fn lambda_along(path: &Path, n: usize, prec: &PrecisionConfig) -> Result<BranchState> {
    let start = principal_lambda(&path.basepoint, n, prec)?;
    continue_branch(&start, path, prec)
}

/// Value of `Li_k` on the branch held by `state`.
pub fn li_value(state: &BranchState, k: usize) -> Result<Complex> {
    if k < 1 || k > state.n {
        return Err(Error::Index { index: k, max: state.n });
    }
    Ok(state.lambda.get(0, k).clone())
}

/// Row 0 of `Lambda` at the end of `path`, which starts at `1/2`.
pub fn row0_along(path: &Path, n: usize, prec: &PrecisionConfig) -> Result<Vec<Complex>> {
    let start = principal_row0(&path.basepoint.round_to(prec.bits()), n, prec)?;
    row0_transport(&start, path, n, prec)
}

/// Straight route from `1/2` to `x`, bent around 0 or 1 by a short arc of
/// radius `min(1/4, |x - p|/2)` where it would pass too close.
pub fn standard_path(x: &Complex, bits: u32) -> Path {
    let x = x.round_to(bits);
    let a = (0.5f64, 0f64);
    let b = x.to_f64();
    let mut path = Path::at_half(bits);
    let d = (b.0 - a.0, b.1 - a.1);
    let l2 = d.0 * d.0 + d.1 * d.1;
    let mut detour = None;
    for p in [(0.0f64, 0.0f64), (1.0, 0.0)] {
        let r = 0.25f64.min((b.0 - p.0).hypot(b.1 - p.1) / 2.0);
        if l2 == 0.0 {
            break;
        }
        let t = (((p.0 - a.0) * d.0 + (p.1 - a.1) * d.1) / l2).clamp(0.0, 1.0);
        let c = (a.0 + t * d.0 - p.0, a.1 + t * d.1 - p.1);
        let dist = c.0.hypot(c.1);
        if dist < r && t > 0.0 && t < 1.0 {
            detour = Some((p, r, c, dist));
        }
    }
    let Some((p, r, c, dist)) = detour else {
        return path.line_to(x);
    };
    // chord where the segment crosses the circle |z - p| = r
    let l = l2.sqrt();
    let u = (d.0 / l, d.1 / l);
    let half = (r * r - dist * dist).max(0.0).sqrt();
    let entry = (c.0 - half * u.0, c.1 - half * u.1);
    let exit = (c.0 + half * u.0, c.1 + half * u.1);
    let th1 = entry.1.atan2(entry.0);
    let th2 = exit.1.atan2(exit.0);
    let mut sweep = th2 - th1;
    let tau = std::f64::consts::TAU;
    while sweep > std::f64::consts::PI {
        sweep -= tau;
    }
    while sweep <= -std::f64::consts::PI {
        sweep += tau;
    }
    if dist == 0.0 {
        // passes through the puncture: go round counterclockwise
        sweep = std::f64::consts::PI;
    }
    let center = Complex::from_f64(p.0, p.1, bits);
    let arc = PathSegment::arc(
        center,
        Real::from_f64(r, bits),
        Real::from_f64(th1, bits),
        Real::from_f64(th1 + sweep, bits),
    );
    path = path.line_to(arc.start());
    let arc_end = arc.end();
    path.segments.push(arc);
    path.line_to(arc_end).line_to(x)
}

/// `(1, Li_1(x), ..., Li_n(x))`: principal values inside the disk
/// `|x - 1/2| < 1/2`, otherwise the values along [`standard_path`].
pub fn li_row(x: &Complex, n: usize, prec: &PrecisionConfig) -> Result<Vec<Complex>> {
    let x = x.round_to(prec.bits());
    if in_principal_disk(&x) {
        principal_row0(&x, n, prec)
    } else {
        row0_along(&standard_path(&x, prec.bits()), n, prec)
    }
}

/// `D1(x) = log|x|`.
pub fn d1(x: &Complex) -> Result<Real> {
    if x.is_zero() {
        return Err(Error::Domain("log|x| at x = 0".into()));
    }
    Ok(x.norm_sqr().ln().mul_2exp(-1))
}

fn is_one(x: &Complex) -> bool {
    x.im.is_zero() && x.re == Real::one(x.prec())
}

/// `D2` from the branch values `Li_1, Li_2` at `x`.
pub fn d2_from_branch(x: &Complex, li1: &Complex, li2: &Complex) -> Real {
    // arg(1 - x) = -Im Li_1 on every branch
    let lx = x.norm_sqr().ln().mul_2exp(-1);
    &li2.im - &(&lx * &li1.im)
}

/// `D3` from the branch values `Li_1, Li_2, Li_3` at `x`.
pub fn d3_from_branch(x: &Complex, li1: &Complex, li2: &Complex, li3: &Complex) -> Real {
    let lx = x.norm_sqr().ln().mul_2exp(-1);
    let t2 = &lx * &li2.re;
    let t1 = (&lx.square() * &li1.re).div_u64(3);
    &(&li3.re - &t2) + &t1
}

/// Bloch-Wigner dilogarithm `Im Li_2(x) + log|x| arg(1 - x)`, extended by
/// zero at 0 and 1.
pub fn d2(x: &Complex, prec: &PrecisionConfig) -> Result<Real> {
    let bits = prec.bits();
    if x.is_zero() || is_one(x) {
        return Ok(Real::zero(bits));
    }
    let row = li_row(x, 2, prec)?;
    Ok(d2_from_branch(&x.round_to(bits), &row[1], &row[2]))
}

/// `D2` computed on the branch reached along `path` (which must start at
/// `1/2` and end at the point of evaluation).
pub fn d2_along(path: &Path, prec: &PrecisionConfig) -> Result<Real> {
    let row = row0_along(path, 2, prec)?;
    Ok(d2_from_branch(&path.end_point().round_to(prec.bits()), &row[1], &row[2]))
}

/// Single-valued trilogarithm `Re[Li_3 - log|x| Li_2 + log^2|x| Li_1 / 3]`.
/// Extended by 0 at the origin and by its limit `zeta(3)` at 1.
pub fn d3(x: &Complex, prec: &PrecisionConfig) -> Result<Real> {
    let bits = prec.bits();
    if x.is_zero() {
        return Ok(Real::zero(bits));
    }
    if is_one(x) {
        let lim = monodromy::limit_mhs(monodromy::Puncture::One, 3, prec)?;
        return Ok(lim.matrix.get(0, 3).re.clone());
    }
    let row = li_row(x, 3, prec)?;
    Ok(d3_from_branch(&x.round_to(bits), &row[1], &row[2], &row[3]))
}

/// `D3` on the branch reached along `path`.
pub fn d3_along(path: &Path, prec: &PrecisionConfig) -> Result<Real> {
    let row = row0_along(path, 3, prec)?;
    Ok(d3_from_branch(&path.end_point().round_to(prec.bits()), &row[1], &row[2], &row[3]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::reference::{catalan_reference, zeta_reference};
    use crate::paths::{standard_loop, word_to_path, Letter};

    fn p() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(re, im, 256)
    }

    #[test]
    fn lambda_at_half() {
        let s = principal_lambda(&c(0.5, 0.0), 1, &p()).unwrap();
        assert!((&s.lambda.get(0, 1).re - &Real::ln2(256)).abs().to_f64() < 1e-30);
        assert!(s.lambda.get(0, 1).im.is_zero());
        assert!((s.lambda.get(1, 1) - &Complex::two_pi_i(256)).abs_f64() < 1e-70);
        assert!(s.lambda.get(1, 0).is_zero());
    }

    #[test]
    fn diagonal_and_log_entry() {
        let x = c(0.3, 0.35);
        let s = principal_lambda(&x, 4, &p()).unwrap();
        assert!(s.invariant_residual() < 1e-60);
        let expect = &Complex::two_pi_i(256) * &x.ln();
        assert!((s.lambda.get(1, 2) - &expect).abs_f64() < 1e-60);
        let far = c(0.95, 0.1);
        let s = principal_lambda(&far, 3, &p()).unwrap();
        assert!(s.invariant_residual() < 1e-60);
        assert!(principal_lambda(&c(1.2, 0.0), 2, &p()).is_err());
    }

    #[test]
    fn li2_half_series() {
        let s = principal_lambda(&c(0.5, 0.0), 2, &p()).unwrap();
        let v = li_value(&s, 2).unwrap();
        let frozen = Real::parse_decimal("0.5822405264650125059026563201596801087441984748061264254343470478731710440716832", 256).unwrap();
        assert!((&v.re - &frozen).abs().to_f64() < 1e-30);
        assert!(matches!(li_value(&s, 3), Err(Error::Index { .. })));
        assert!(matches!(li_value(&s, 0), Err(Error::Index { .. })));
    }

    #[test]
    fn principal_near_one_matches_frozen() {
        // disk point beyond the series radius: reached by transport
        let x = c(0.9, 0.2);
        let s = principal_lambda(&x, 2, &p()).unwrap();
        let mut sum_check = Complex::zero(256);
        // Li_2(x) + Li_2(1-x) = zeta(2) - log x log(1-x)
        let y = &Complex::one(256) - &x;
        let sy = principal_lambda(&y, 2, &p()).unwrap();
        sum_check += s.lambda.get(0, 2);
        sum_check += sy.lambda.get(0, 2);
        let z2 = Complex::from_real(zeta_reference(2, &p()).unwrap());
        let rhs = &z2 - &(&x.ln() * &y.ln());
        assert!((&sum_check - &rhs).abs_f64() < 1e-30);
    }

    #[test]
    fn monodromy_of_row0_around_one() {
        let x = c(0.5, 0.0);
        let s0 = principal_lambda(&x, 3, &p()).unwrap();
        let s1 = continue_branch(&s0, &standard_loop(Letter::S1, 256), &p()).unwrap();
        let tpi = Complex::two_pi_i(256);
        let d1 = s1.lambda.get(0, 1) - s0.lambda.get(0, 1);
        assert!((&d1 + &tpi).abs_f64() < 1e-30);
        let d2 = s1.lambda.get(0, 2) - s0.lambda.get(0, 2);
        assert!((&d2 + &(&tpi * &x.ln())).abs_f64() < 1e-30);
    }

    #[test]
    fn flat_square_loop() {
        let s0 = principal_lambda(&c(0.5, 0.0), 3, &p()).unwrap();
        let sq = Path::at_half(256)
            .line_to(c(0.6, 0.0))
            .line_to(c(0.6, 0.1))
            .line_to(c(0.5, 0.1))
            .line_to(c(0.5, 0.0));
        let s1 = continue_branch(&s0, &sq, &p()).unwrap();
        assert!(s1.lambda.max_abs_diff(&s0.lambda) < 1e-30);
        let there = Path::at_half(256).line_to(c(0.25, 0.0));
        let s2 = continue_branch(&continue_branch(&s0, &there, &p()).unwrap(), &there.invert(), &p()).unwrap();
        assert!(s2.lambda.max_abs_diff(&s0.lambda) < 1e-30);
    }

    #[test]
    fn frozen_continued_values() {
        let row = li_row(&c(2.0, 1.0), 2, &p()).unwrap();
        assert!((row[2].re.to_f64() - 1.186_688_537_000_057_8).abs() < 1e-14);
        assert!((row[2].im.to_f64() - 2.407_740_769_345_772).abs() < 1e-14);
        let row = li_row(&c(-3.0, 0.5), 3, &p()).unwrap();
        assert!((row[3].re.to_f64() + 2.356_449_873_780_664).abs() < 1e-14);
        assert!((row[3].im.to_f64() - 0.322_868_293_622_828_5).abs() < 1e-14);
    }

    #[test]
    fn d2_special_values() {
        for x in [0.1, 0.5, 0.9] {
            assert!(d2(&c(x, 0.0), &p()).unwrap().abs().to_f64() < 1e-30);
        }
        let g = catalan_reference(&p());
        assert!((&d2(&c(0.0, 1.0), &p()).unwrap() - &g).abs().to_f64() < 1e-28);
        assert!(d2(&Complex::zero(256), &p()).unwrap().is_zero());
        assert!(d2(&Complex::one(256), &p()).unwrap().is_zero());
    }

    #[test]
    fn d2_conjugation_and_real_axis() {
        for (re, im) in [(0.3, 0.8), (-2.0, 0.5), (3.0, -1.5), (1.0, 0.01)] {
            let a = d2(&c(re, im), &p()).unwrap();
            let b = d2(&c(re, -im), &p()).unwrap();
            assert!((&a + &b).abs().to_f64() < 1e-28);
        }
        // real points outside (0, 1) also give zero
        for x in [-3.0, 2.5] {
            assert!(d2(&c(x, 0.0), &p()).unwrap().abs().to_f64() < 1e-28);
        }
    }

    #[test]
    fn d3_at_one_is_zeta3() {
        let z3 = zeta_reference(3, &p()).unwrap();
        assert!((&d3(&Complex::one(256), &p()).unwrap() - &z3).abs().to_f64() < 1e-25);
        // continuity towards 1
        let near = d3(&c(1.0 - 1e-12, 1e-12), &p()).unwrap();
        assert!((&near - &z3).abs().to_f64() < 1e-9);
    }

    #[test]
    fn d2_d3_branch_independent() {
        let x = c(-0.7, 1.3);
        let base2 = d2(&x, &p()).unwrap();
        let base3 = d3(&x, &p()).unwrap();
        for w in ["s0", "s1", "s0 s1^-1", "s1 s1 s0"] {
            let loops = word_to_path(&w.parse().unwrap(), 256);
            let path = loops.compose(&standard_path(&x, 256)).unwrap();
            assert!((&d2_along(&path, &p()).unwrap() - &base2).abs().to_f64() < 1e-28, "{w}");
            assert!((&d3_along(&path, &p()).unwrap() - &base3).abs().to_f64() < 1e-28, "{w}");
        }
    }

    #[test]
    fn detour_paths_validate() {
        for (re, im) in [(-2.0, 0.0), (3.0, 0.0), (-0.001, 0.0001), (1.0005, -0.0001), (4.0, 1e-9)] {
            let path = standard_path(&c(re, im), 256);
            path.validate(&[(0.0, 0.0), (1.0, 0.0)], 1e-3).unwrap();
            assert!((&path.end_point() - &c(re, im)).abs_f64() < 1e-60);
        }
    }
}
