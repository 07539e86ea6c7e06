//! Path-ordered transport for Fuchsian connections.
//!
//! A connection is `Omega(z) dz = sum_p R_p dz / (z - p)` with sparse
//! constant residues `R_p`. Solutions of `dM = M Omega` are advanced by
//! Taylor expansion about each step point; the step length is a fixed
//! fraction of the distance to the nearest pole, and the series is
//! truncated once its terms fall below the per-step tolerance.

use super::complex::Complex;
use super::matrix::CMatrix;
use super::real::Real;
use super::PrecisionConfig;
use crate::error::{Error, Result};
use crate::paths::{Path, PathSegment};

/// Ratio of step length to distance from the nearest pole.
const STEP_RATIO: f64 = 0.35;
const MAX_TERMS: usize = 5000;
const MAX_STEPS: usize = 1_000_000;

#[derive(Clone, Debug)]
enum Coef {
    One,
    MinusOne,
    General(Complex),
}

impl Coef {
    fn from(c: Complex) -> Coef {
        if c.im.is_zero() && c.re.abs() == Real::one(c.prec()) {
            if c.re.is_negative() {
                Coef::MinusOne
            } else {
                Coef::One
            }
        } else {
            Coef::General(c)
        }
    }

    fn value(&self, bits: u32) -> Complex {
        match self {
            Coef::One => Complex::one(bits),
            Coef::MinusOne => -Complex::one(bits),
            Coef::General(c) => c.clone(),
        }
    }
}

#[derive(Clone, Debug)]
struct PoleData {
    pole: Complex,
    /// (row, col, coefficient) entries of the residue.
    entries: Vec<(usize, usize, Coef)>,
    /// Distinct source rows of the residue entries.
    sources: Vec<usize>,
    /// For each entry, its index in `sources`.
    slot: Vec<usize>,
}

/// A connection `sum_p R_p dz/(z - p)` on square matrices of size `dim`.
#[derive(Clone, Debug)]
pub struct Connection {
    dim: usize,
    poles: Vec<PoleData>,
}

impl Connection {
    pub fn new(dim: usize) -> Connection {
        Connection { dim, poles: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Add `c * E_{row,col} dz / (z - pole)`.
    pub fn add_term(&mut self, pole: &Complex, row: usize, col: usize, c: Complex) {
        assert!(row < self.dim && col < self.dim, "entry out of range");
        if c.is_zero() {
            return;
        }
        let idx = match self.poles.iter().position(|p| &p.pole == pole) {
            Some(i) => i,
            None => {
                self.poles.push(PoleData { pole: pole.clone(), entries: Vec::new(), sources: Vec::new(), slot: Vec::new() });
                self.poles.len() - 1
            }
        };
        let pd = &mut self.poles[idx];
        if let Some(k) = pd.entries.iter().position(|e| e.0 == row && e.1 == col) {
            let bits = c.prec();
            let sum = &pd.entries[k].2.value(bits) + &c;
            pd.entries[k].2 = Coef::from(sum);
            return;
        }
        let s = match pd.sources.iter().position(|&r| r == row) {
            Some(s) => s,
            None => {
                pd.sources.push(row);
                pd.sources.len() - 1
            }
        };
        pd.entries.push((row, col, Coef::from(c)));
        pd.slot.push(s);
    }

    pub fn poles(&self) -> Vec<Complex> {
        self.poles.iter().map(|p| p.pole.clone()).collect()
    }

    pub fn poles_f64(&self) -> Vec<(f64, f64)> {
        self.poles.iter().map(|p| p.pole.to_f64()).collect()
    }

    /// Residue matrix at `pole` (zero if `pole` is not singular).
    pub fn residue(&self, pole: &Complex, bits: u32) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim, bits);
        if let Some(p) = self.poles.iter().find(|p| &p.pole == pole) {
            for (r, c, v) in &p.entries {
                m.set(*r, *c, v.value(bits));
            }
        }
        m
    }

    /// Coefficient matrix of `dz` at `z`.
    pub fn eval(&self, z: &Complex) -> CMatrix {
        let bits = z.prec();
        let mut m = CMatrix::zeros(self.dim, self.dim, bits);
        for p in &self.poles {
            let u = (z - &p.pole).recip();
            for (r, c, v) in &p.entries {
                let cur = m.get(*r, *c) + &(&u * &v.value(bits));
                m.set(*r, *c, cur);
            }
        }
        m
    }

    fn min_pole_distance(&self, z: &Complex) -> f64 {
        self.poles.iter().map(|p| (z - &p.pole).abs_f64()).fold(f64::INFINITY, f64::min)
    }

    /// One Taylor step from `z0` by `h` applied to the rows of `m`.
    fn taylor_step(&self, m: &CMatrix, z0: &Complex, h: &Complex, eps: f64, bits: u32) -> Result<CMatrix> {
        let rows = m.rows;
        let d = self.dim;
        let us: Vec<Complex> = self.poles.iter().map(|p| h.div(&(z0 - &p.pole))).collect();
        let mut t: Vec<Vec<Complex>> =
            self.poles.iter().map(|p| vec![Complex::zero(bits); rows * p.sources.len()]).collect();
        let mut cur = m.data.clone();
        let mut sum = m.data.clone();
        let zero = Complex::zero(bits);
        let mut small = 0;
        for k in 0..MAX_TERMS {
            let mut next = vec![zero.clone(); rows * d];
            for (pi, pd) in self.poles.iter().enumerate() {
                let u = &us[pi];
                let tp = &mut t[pi];
                let ns = pd.sources.len();
                for (si, &src) in pd.sources.iter().enumerate() {
                    for i in 0..rows {
                        let slot = &mut tp[i * ns + si];
                        let c = &cur[i * d + src];
                        if c.is_zero() && slot.is_zero() {
                            continue;
                        }
                        *slot = u * &(c - &*slot);
                    }
                }
                for (e, (_, col, coef)) in pd.entries.iter().enumerate() {
                    let si = pd.slot[e];
                    for i in 0..rows {
                        let v = &tp[i * ns + si];
                        if v.is_zero() {
                            continue;
                        }
                        let target = &mut next[i * d + col];
                        match coef {
                            Coef::One => *target += v,
                            Coef::MinusOne => *target -= v,
                            Coef::General(c) => *target += &(v * c),
                        }
                    }
                }
            }
            let kk = (k + 1) as u64;
            let mut mag = 0f64;
            for x in next.iter_mut() {
                if !x.is_zero() {
                    *x = x.div_u64(kk);
                    mag = mag.max(x.abs_f64());
                }
            }
            let mut scale = 1f64;
            for (s, x) in sum.iter_mut().zip(&next) {
                if !x.is_zero() {
                    *s += x;
                }
                scale = scale.max(s.abs_f64());
            }
            if mag <= eps * scale {
                small += 1;
                if small >= 2 {
                    return Ok(CMatrix { rows, cols: d, data: sum });
                }
            } else {
                small = 0;
            }
            cur = next;
        }
        Err(Error::NonConvergence(format!("Taylor series did not settle in {MAX_TERMS} terms")))
    }

    /// Step points along one segment, each chord within the disk of
    /// convergence of its starting point.
    fn segment_points(&self, seg: &PathSegment, bits: u32) -> Result<Vec<Complex>> {
        let mut pts = Vec::new();
        match seg {
            PathSegment::Line { start, end } => {
                let start = start.round_to(bits);
                let end = end.round_to(bits);
                pts.push(start.clone());
                let delta = &end - &start;
                let len = delta.abs_f64();
                if len == 0.0 {
                    return Ok(pts);
                }
                let dir = delta.scale(&delta.abs().recip());
                let mut z = start;
                loop {
                    let step = STEP_RATIO * self.min_pole_distance(&z);
                    if step.is_nan() || step <= 1e-300 {
                        return Err(Error::NonConvergence("step size underflow".into()));
                    }
                    if (&end - &z).abs_f64() <= step {
                        pts.push(end.clone());
                        break;
                    }
                    z = &z + &dir.scale(&Real::from_f64(step, bits));
                    pts.push(z.clone());
                    if pts.len() > MAX_STEPS {
                        return Err(Error::NonConvergence("too many steps".into()));
                    }
                }
            }
            PathSegment::Arc { center, radius, angle_start, angle_end } => {
                let sweep = (angle_end - angle_start).to_f64();
                let r = radius.to_f64();
                // worst-case clearance along the arc
                let dmin = self
                    .poles
                    .iter()
                    .map(|p| seg.distance_to(p.pole.to_f64()))
                    .fold(f64::INFINITY, f64::min);
                let chord_max = STEP_RATIO * dmin;
                let n = if sweep == 0.0 {
                    0
                } else {
                    let ang = if chord_max >= 2.0 * r { 1.0 } else { 2.0 * (chord_max / (2.0 * r)).asin() };
                    (sweep.abs() / ang.min(1.0)).ceil() as usize
                };
                if n > MAX_STEPS {
                    return Err(Error::NonConvergence("too many steps".into()));
                }
                pts.push(seg.start());
                if n > 0 {
                    let dtheta = (angle_end - angle_start).div_u64(n as u64);
                    let rot = Complex::cis(&dtheta);
                    let mut e = Complex::cis(angle_start).scale(radius);
                    for _ in 1..n {
                        e = &e * &rot;
                        pts.push(center + &e);
                    }
                    pts.push(seg.end());
                }
            }
        }
        Ok(pts.into_iter().map(|z| z.round_to(bits)).collect())
    }
}

/// Solve `dM = M Omega` along `path` starting from `init` (any number of
/// rows; each row is transported independently).
pub fn ode_transport(conn: &Connection, path: &Path, init: &CMatrix, prec: &PrecisionConfig) -> Result<CMatrix> {
    assert_eq!(init.cols, conn.dim, "initial value has wrong width");
    let bits = prec.bits();
    path.validate(&conn.poles_f64(), prec.clearance)?;
    let eps = prec.target_tol * 1e-10;
    let mut m = CMatrix { rows: init.rows, cols: init.cols, data: init.data.iter().map(|z| z.round_to(bits)).collect() };
    if conn.poles.is_empty() {
        return Ok(m);
    }
    for seg in &path.segments {
        let pts = conn.segment_points(seg, bits)?;
        for w in pts.windows(2) {
            let h = &w[1] - &w[0];
            if h.is_zero() {
                continue;
            }
            m = conn.taylor_step(&m, &w[0], &h, eps, bits)?;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{standard_loop, word_to_path, Letter};

    fn p() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn zero_connection_is_identity() {
        let c = Connection::new(3);
        let path = word_to_path(&"s0 s1".parse().unwrap(), 256);
        let out = ode_transport(&c, &path, &CMatrix::identity(3, 256), &p()).unwrap();
        assert_eq!(out, CMatrix::identity(3, 256));
    }

    #[test]
    fn residue_loop() {
        // omega_0 * E_01 around s0 gives I + 2 pi i E_01
        let mut c = Connection::new(2);
        c.add_term(&Complex::zero(256), 0, 1, Complex::one(256));
        let path = standard_loop(Letter::S0, 256);
        let out = ode_transport(&c, &path, &CMatrix::identity(2, 256), &p()).unwrap();
        let mut expect = CMatrix::identity(2, 256);
        expect.set(0, 1, Complex::two_pi_i(256));
        assert!(out.max_abs_diff(&expect) < 1e-30);
    }

    #[test]
    fn reverse_transport_returns() {
        let mut c = Connection::new(3);
        c.add_term(&Complex::zero(256), 1, 2, Complex::one(256));
        c.add_term(&Complex::one(256), 0, 1, -Complex::one(256));
        let path = Path::at_half(256)
            .line_to(Complex::from_f64(-1.0, 2.0, 256))
            .line_to(Complex::from_f64(3.0, -0.5, 256));
        let init = CMatrix::identity(3, 256);
        let fwd = ode_transport(&c, &path, &init, &p()).unwrap();
        let back = ode_transport(&c, &path.invert(), &fwd, &p()).unwrap();
        assert!(back.max_abs_diff(&init) < 1e-30);
    }

    #[test]
    fn scalar_exponential() {
        // dM = M * a dz/(z - p): M(z) = ((z - p)/(z0 - p))^a
        let mut c = Connection::new(1);
        let a = Complex::from_f64(0.3, -1.25, 256);
        let pole = Complex::from_f64(0.2, 0.7, 256);
        c.add_term(&pole, 0, 0, a.clone());
        let z0 = Complex::from_f64(0.5, 0.0, 256);
        let z1 = Complex::from_f64(2.0, -1.0, 256);
        let path = Path::new(z0.clone()).line_to(z1.clone());
        let out = ode_transport(&c, &path, &CMatrix::identity(1, 256), &p()).unwrap();
        let expect = (&a * &(&(&z1 - &pole).ln() - &(&z0 - &pole).ln())).exp();
        assert!((out.get(0, 0) - &expect).abs_f64() < 1e-30);
    }

    #[test]
    fn proximity_error() {
        let mut c = Connection::new(2);
        c.add_term(&Complex::one(256), 0, 1, Complex::one(256));
        let path = Path::at_half(256).line_to(Complex::from_f64(1.5, 1e-12, 256));
        let r = ode_transport(&c, &path, &CMatrix::identity(2, 256), &p());
        assert!(matches!(r, Err(Error::SingularityProximity { .. })));
    }

    #[test]
    fn rows_are_independent() {
        let mut c = Connection::new(3);
        c.add_term(&Complex::zero(256), 1, 2, Complex::one(256));
        c.add_term(&Complex::one(256), 0, 1, -Complex::one(256));
        let path = word_to_path(&"s0 s1^-1".parse().unwrap(), 256);
        let full = ode_transport(&c, &path, &CMatrix::identity(3, 256), &p()).unwrap();
        let row = ode_transport(&c, &path, &CMatrix::identity(3, 256).select_rows(&[1]), &p()).unwrap();
        assert!(row.max_abs_diff(&full.select_rows(&[1])) < 1e-40);
    }
}
