//! Seeded random inputs and the self-check suites run by `selftest`.
//!
//! Every suite draws its cases from a ChaCha generator seeded by the
//! caller, so a given seed reproduces the same cases and the same report.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bloch::{d2_eval, five_term_element, polyhedron_check, tetra_volume, wedge_map, ProjectivePoint};
use crate::error::{Error, Result};
use crate::hopf::{polylog_rep, quotient_relation_basis, rep_exact};
use crate::itint::{iterated_integrals, shuffle_product, transport_series, FormWord, LogForm};
use crate::monodromy::{
    check_relative_weight, connection_residues, limit_mhs, local_log, monodromy_exact, monodromy_numeric,
    FiltrationSpec, Puncture,
};
use crate::numerics::complex::Complex;
use crate::numerics::matrix::CMatrix;
use crate::numerics::real::Real;
use crate::numerics::reference::{catalan_reference, zeta_reference};
use crate::numerics::PrecisionConfig;
use crate::paths::{standard_loop, word_to_path, Letter, MonodromyWord, Path};
use crate::polylog::{d2, d2_along, d3, d3_along, standard_path};
use crate::regulator::{
    heisenberg_holonomy, holonomy_vs_tame, steinberg_residual, tame_product, RationalFunction, ValuationPoint,
};

pub const SUITE_NAMES: [&str; 9] =
    ["monodromy", "zeta", "five-term", "single-valued", "constants", "chen", "regulator", "exact", "volume"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Word of length `1..=max_len` in `s0, s1` and their inverses.
pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> MonodromyWord {
    let len = rng.gen_range(1..=max_len);
    MonodromyWord::new((0..len).map(|_| *Letter::ALL.choose(rng).unwrap()).collect())
}

/// Point in the box `|re|, |im| <= r`, at least `gap` away from 0 and 1.
pub fn random_complex(rng: &mut ChaCha8Rng, r: f64, gap: f64, bits: u32) -> Complex {
    loop {
        let (a, b) = (rng.gen_range(-r..r), rng.gen_range(-r..r));
        if a.hypot(b) > gap && (a - 1.0).hypot(b) > gap {
            return Complex::from_f64(a, b, bits);
        }
    }
}

/// Rational `p/q` with `|p| <= h`, `1 <= q <= h`, outside `{0, 1}`.
pub fn random_rational(rng: &mut ChaCha8Rng, h: i64) -> BigRational {
    loop {
        let x = BigRational::new(BigInt::from(rng.gen_range(-h..=h)), BigInt::from(rng.gen_range(1..=h)));
        if !x.is_zero() && !x.is_one() {
            return x;
        }
    }
}

/// `c * prod (t - a)^e` with `a` drawn from `support` and `|e| <= 2`.
pub fn random_split_function(rng: &mut ChaCha8Rng, support: &[BigRational]) -> RationalFunction {
    let k = rng.gen_range(1..=3.min(support.len()));
    let pts: Vec<&BigRational> = support.choose_multiple(rng, k).collect();
    let factors: Vec<(BigRational, i32)> = pts
        .into_iter()
        .map(|a| {
            let mut e = 0;
            while e == 0 {
                e = rng.gen_range(-2..=2);
            }
            (a.clone(), e)
        })
        .collect();
    let c = BigRational::new(BigInt::from(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 }), BigInt::from(rng.gen_range(1..=4)));
    RationalFunction::from_factors(c, &factors)
}

fn seg_distance(a: (f64, f64), b: (f64, f64), p: (f64, f64)) -> f64 {
    let d = (b.0 - a.0, b.1 - a.1);
    let l2 = d.0 * d.0 + d.1 * d.1;
    let t = if l2 == 0.0 { 0.0 } else { (((p.0 - a.0) * d.0 + (p.1 - a.1) * d.1) / l2).clamp(0.0, 1.0) };
    (a.0 + t * d.0 - p.0).hypot(a.1 + t * d.1 - p.1)
}

/// Polygon through `start` and `k` random vertices (closing back to
/// `start` if `closed`), keeping every edge at least `gap` from each of
/// `avoid`.
pub fn random_polygon(
    rng: &mut ChaCha8Rng,
    start: &Complex,
    k: usize,
    closed: bool,
    avoid: &[(f64, f64)],
    gap: f64,
    bits: u32,
) -> Path {
    let s = start.to_f64();
    'retry: loop {
        let mut verts = vec![s];
        for _ in 0..k {
            verts.push((rng.gen_range(-1.5..2.5), rng.gen_range(-1.5..1.5)));
        }
        if closed {
            verts.push(s);
        }
        for w in verts.windows(2) {
            if avoid.iter().any(|&p| seg_distance(w[0], w[1], p) < gap) {
                continue 'retry;
            }
        }
        let mut path = Path::new(start.round_to(bits));
        for (i, v) in verts.iter().enumerate().skip(1) {
            let z = if closed && i == verts.len() - 1 { start.round_to(bits) } else { Complex::from_f64(v.0, v.1, bits) };
            path = path.line_to(z);
        }
        return path;
    }
}

/// Random point of `P^1`, infinity with probability 1/8.
pub fn random_projective(rng: &mut ChaCha8Rng, bits: u32) -> ProjectivePoint {
    if rng.gen_bool(0.125) {
        ProjectivePoint::Infinity
    } else {
        ProjectivePoint::Finite(Complex::from_f64(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), bits))
    }
}

/// Pairwise distinct points, finite ones at least `gap` apart.
pub fn random_distinct_points(rng: &mut ChaCha8Rng, k: usize, gap: f64, bits: u32) -> Vec<ProjectivePoint> {
    loop {
        let pts: Vec<ProjectivePoint> = (0..k).map(|_| random_projective(rng, bits)).collect();
        let inf = pts.iter().filter(|p| **p == ProjectivePoint::Infinity).count();
        let fin: Vec<(f64, f64)> = pts.iter().filter_map(|p| p.finite().map(|z| z.to_f64())).collect();
        let ok = inf <= 1
            && fin.iter().enumerate().all(|(i, a)| fin[i + 1..].iter().all(|b| (a.0 - b.0).hypot(a.1 - b.1) > gap));
        if ok {
            return pts;
        }
    }
}

/// Outcome of one family of checks.
#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub cases: usize,
    pub failures: usize,
    /// Largest residual seen (exact checks report 0 or 1).
    pub worst: f64,
    pub tol: f64,
}

impl Check {
    fn new(label: &str, tol: f64) -> Check {
        Check { label: label.to_string(), cases: 0, failures: 0, worst: 0.0, tol }
    }

    /// Record a residual; passes when `r < tol` (or `r == 0` for `tol == 0`).
    pub fn record(&mut self, r: f64) {
        self.cases += 1;
        if !r.is_nan() {
            self.worst = self.worst.max(r);
        }
        let ok = if self.tol == 0.0 { r == 0.0 } else { r < self.tol };
        if !ok {
            self.failures += 1;
        }
    }

    pub fn record_bool(&mut self, ok: bool) {
        self.record(if ok { 0.0 } else { 1.0 });
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<34} cases={:<5} failures={:<4} worst={:.3e} tol={:.1e}",
            self.label, self.cases, self.failures, self.worst, self.tol
        )
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        writeln!(f, "suite {}", self.name)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        write!(f, "suite {}: {}", self.name, if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Case counts scaled by `scale` (1.0 gives the full acceptance sizes).
fn count(full: usize, scale: f64) -> usize {
    ((full as f64 * scale).ceil() as usize).max(1)
}

pub fn run_suite(name: &str, seed: u64, scale: f64, prec: &PrecisionConfig) -> Result<SuiteReport> {
    let checks = match name {
        "monodromy" => suite_monodromy(seed, scale, prec)?,
        "zeta" => suite_zeta(prec)?,
        "five-term" => suite_five_term(seed, scale, prec)?,
        "single-valued" => suite_single_valued(seed, scale, prec)?,
        "constants" => suite_constants(prec)?,
        "chen" => suite_chen(seed, scale, prec)?,
        "regulator" => suite_regulator(seed, scale, prec)?,
        "exact" => suite_exact(seed, scale)?,
        "volume" => suite_volume(seed, scale, prec)?,
        other => return Err(Error::Argument(format!("unknown suite '{other}' (known: {})", SUITE_NAMES.join(", ")))),
    };
    Ok(SuiteReport { name: name.to_string(), checks })
}

fn suite_monodromy(seed: u64, scale: f64, prec: &PrecisionConfig) -> Result<Vec<Check>> {
    let mut r = rng(seed);
    let mut c = Check::new("numeric vs exact monodromy", 1e-20);
    for _ in 0..count(20, scale) {
        let w = random_word(&mut r, 6);
        for n in 1..=6 {
            let num = monodromy_numeric(&w, n, prec)?;
            c.record(num.max_abs_diff(&monodromy_exact(&w, n).to_numeric(prec.bits())));
        }
    }
    Ok(vec![c])
}

fn suite_zeta(prec: &PrecisionConfig) -> Result<Vec<Check>> {
    let bits = prec.bits();
    let mut c1 = Check::new("limit at 1: zeta(2..5)", 1e-20);
    let one = limit_mhs(Puncture::One, 5, prec)?;
    c1.record(one.matrix.get(0, 1).abs_f64());
    for k in 2..=5u32 {
        let z = Complex::from_real(zeta_reference(k, prec)?);
        c1.record((one.matrix.get(0, k as usize) - &z).abs_f64());
    }
    let mut c0 = Check::new("limit at 0: diag (2 pi i)^j", 1e-20);
    let zero = limit_mhs(Puncture::Zero, 5, prec)?;
    let tpi = Complex::two_pi_i(bits);
    let diag = CMatrix::from_fn(6, 6, |i, j| if i == j { tpi.powi(i as u32) } else { Complex::zero(bits) });
    c0.record(zero.matrix.max_abs_diff(&diag));
    Ok(vec![c1, c0])
}

fn suite_five_term(seed: u64, scale: f64, prec: &PrecisionConfig) -> Result<Vec<Check>> {
    let mut r = rng(seed);
    let bits = prec.bits();
    let mut c = Check::new("five-term D2 sum", 1e-25);
    let mut done = 0;
    while done < count(1000, scale) {
        let x = random_complex(&mut r, 3.0, 0.05, bits);
        let y = random_complex(&mut r, 3.0, 0.05, bits);
        let Ok(e) = five_term_element(&x, &y) else { continue };
        c.record(d2_eval(&e, prec)?.abs().to_f64());
        done += 1;
    }
    Ok(vec![c])
}

fn suite_single_valued(seed: u64, scale: f64, prec: &PrecisionConfig) -> Result<Vec<Check>> {
    let mut r = rng(seed);
    let bits = prec.bits();
    let mut c2 = Check::new("D2 branch independence", 1e-25);
    let mut c3 = Check::new("D3 branch independence", 1e-25);
    for _ in 0..count(100, scale) {
        let x = random_complex(&mut r, 2.5, 0.1, bits);
        let w = random_word(&mut r, 3);
        let path = word_to_path(&w, bits).compose(&standard_path(&x, bits))?;
        c2.record((&d2_along(&path, prec)? - &d2(&x, prec)?).abs().to_f64());
        c3.record((&d3_along(&path, prec)? - &d3(&x, prec)?).abs().to_f64());
    }
    Ok(vec![c2, c3])
}

fn suite_constants(prec: &PrecisionConfig) -> Result<Vec<Check>> {
    let bits = prec.bits();
    let mut c = Check::new("D2(i) = Catalan, D3(1) = zeta(3)", 1e-25);
    c.record((&d2(&Complex::i(bits), prec)? - &catalan_reference(prec)).abs().to_f64());
    c.record((&d3(&Complex::one(bits), prec)? - &zeta_reference(3, prec)?).abs().to_f64());
    Ok(vec![c])
}

fn random_form(rng: &mut ChaCha8Rng, bits: u32) -> LogForm {
    match rng.gen_range(0..3) {
        0 => LogForm::omega0(bits),
        1 => LogForm::omega1(bits),
        _ => LogForm::pole(Complex::from_f64(-1.0, 0.0, bits)),
    }
}

fn random_form_word(rng: &mut ChaCha8Rng, len: usize, bits: u32) -> FormWord {
    FormWord::new((0..len).map(|_| random_form(rng, bits)).collect())
}

const CHEN_POLES: [(f64, f64); 3] = [(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0)];

fn suite_chen(seed: u64, scale: f64, prec: &PrecisionConfig) -> Result<Vec<Check>> {
    let mut r = rng(seed);
    let bits = prec.bits();
    let half = Complex::from_f64(0.5, 0.0, bits);
    let tol = 1e-25;
    let mut rep = Check::new("reparameterization", tol);
    let mut comp = Check::new("composition", tol);
    let mut inv = Check::new("inversion", tol);
    let mut shuf = Check::new("shuffle", tol);
    let mut group = Check::new("transport series group-like (m=5)", tol);
    let n = count(50, scale);
    for _ in 0..n {
        let k = r.gen_range(1..=3);
        let path = random_polygon(&mut r, &half, k, false, &CHEN_POLES, 0.1, bits);
        let len = r.gen_range(1..=5);
        let word = random_form_word(&mut r, len, bits);
        let seg = r.gen_range(0..path.segments.len());
        let t = Real::from_f64(r.gen_range(0.1..0.9), bits);
        let split = path.split_segment(seg, &t);
        let a = iterated_integrals(std::slice::from_ref(&word), &path, prec)?;
        let b = iterated_integrals(std::slice::from_ref(&word), &split, prec)?;
        rep.record((&a[0] - &b[0]).abs_f64());
    }
    for _ in 0..n {
        let len = r.gen_range(1..=2);
        let alpha = random_polygon(&mut r, &half, len, false, &CHEN_POLES, 0.1, bits);
        let len = r.gen_range(1..=2);
        let beta = random_polygon(&mut r, &alpha.end_point(), len, false, &CHEN_POLES, 0.1, bits);
        let len = r.gen_range(1..=4);
        let word = random_form_word(&mut r, len, bits);
        let prefixes: Vec<FormWord> = (0..=word.len()).map(|k| FormWord::new(word.0[..k].to_vec())).collect();
        let suffixes: Vec<FormWord> = (0..=word.len()).map(|k| FormWord::new(word.0[k..].to_vec())).collect();
        let ia = iterated_integrals(&prefixes, &alpha, prec)?;
        let ib = iterated_integrals(&suffixes, &beta, prec)?;
        let whole = iterated_integrals(std::slice::from_ref(&word), &alpha.compose(&beta)?, prec)?;
        let mut conv = Complex::zero(bits);
        for k in 0..=word.len() {
            conv += &(&ia[k] * &ib[k]);
        }
        comp.record((&whole[0] - &conv).abs_f64());
    }
    for _ in 0..n {
        let len = r.gen_range(1..=3);
        let path = random_polygon(&mut r, &half, len, false, &CHEN_POLES, 0.1, bits);
        let len = r.gen_range(1..=5);
        let word = random_form_word(&mut r, len, bits);
        let fwd = iterated_integrals(std::slice::from_ref(&word.reversed()), &path, prec)?;
        let back = iterated_integrals(std::slice::from_ref(&word), &path.invert(), prec)?;
        let sign = if word.len().is_multiple_of(2) { 1 } else { -1 };
        inv.record((&back[0] - &fwd[0].mul_i64(sign)).abs_f64());
    }
    for _ in 0..n {
        let len = r.gen_range(1..=3);
        let path = random_polygon(&mut r, &half, len, false, &CHEN_POLES, 0.1, bits);
        let lu = r.gen_range(1..=3);
        let lv = r.gen_range(1..=(5 - lu).min(3));
        let u = random_form_word(&mut r, lu, bits);
        let v = random_form_word(&mut r, lv, bits);
        let sh = shuffle_product(&u, &v);
        let mut words = vec![u.clone(), v.clone()];
        words.extend(sh.iter().map(|(w, _)| w.clone()));
        let vals = iterated_integrals(&words, &path, prec)?;
        let mut rhs = Complex::zero(bits);
        for (k, (_, m)) in sh.iter().enumerate() {
            rhs += &vals[k + 2].mul_i64(*m as i64);
        }
        shuf.record((&(&vals[0] * &vals[1]) - &rhs).abs_f64());
    }
    for i in 0..n {
        let closed = i % 2 == 0;
        let len = r.gen_range(1..=3);
        let path = random_polygon(&mut r, &half, len, closed, &CHEN_POLES[..2], 0.1, bits);
        group.record(transport_series(&path, 5, prec)?.is_grouplike());
    }
    Ok(vec![rep, comp, inv, shuf, group])
}

fn small_support() -> Vec<BigRational> {
    [-3i64, -2, -1, 0, 1, 2, 3, 4].iter().map(|&a| BigRational::from_integer(a.into())).collect()
}

fn suite_regulator(seed: u64, scale: f64, prec: &PrecisionConfig) -> Result<Vec<Check>> {
    let mut r = rng(seed);
    let bits = prec.bits();
    let support = small_support();
    let mut tame = Check::new("holonomy vs tame (relative)", 1e-15);
    for _ in 0..count(50, scale) {
        let f = random_split_function(&mut r, &support);
        let g = random_split_function(&mut r, &support);
        let p = if r.gen_bool(0.2) {
            ValuationPoint::Infinity
        } else {
            ValuationPoint::Finite(support.choose(&mut r).unwrap().clone())
        };
        let (h, t) = holonomy_vs_tame(&f, &g, &p, prec)?;
        let tc = Complex::from_real(Real::from_rational(&t, bits));
        tame.record((&h - &tc).abs_f64() / tc.abs_f64());
    }
    let mut st = Check::new("Steinberg residual", 1e-25);
    st.record(steinberg_residual(&standard_loop(Letter::S0, bits), prec)?);
    st.record(steinberg_residual(&standard_loop(Letter::S1, bits), prec)?);
    let half = Complex::from_f64(0.5, 0.0, bits);
    for i in 0..count(10, scale) {
        let lp = if i % 2 == 0 {
            word_to_path(&random_word(&mut r, 4), bits)
        } else {
            random_polygon(&mut r, &half, 3, true, &[(0.0, 0.0), (1.0, 0.0)], 0.1, bits)
        };
        st.record(steinberg_residual(&lp, prec)?);
    }
    // loops through 1/2 avoid the support points other than 0 and 1
    let mut bil = Check::new("I bilinearity mod Z(2)", 1e-25);
    let mut skew = Check::new("I skew-symmetry mod Z(2)", 1e-25);
    for _ in 0..count(20, scale) {
        let lp = word_to_path(&random_word(&mut r, 3), bits);
        let f1 = random_split_function(&mut r, &support);
        let f2 = random_split_function(&mut r, &support);
        let g = random_split_function(&mut r, &support);
        let i12 = heisenberg_holonomy(&f1.mul(&f2), &g, &lp, prec)?;
        let i1 = heisenberg_holonomy(&f1, &g, &lp, prec)?;
        let i2 = heisenberg_holonomy(&f2, &g, &lp, prec)?;
        let d = crate::regulator::RegulatorValue::new(&(&i12.representative - &i1.representative) - &i2.representative);
        bil.record(d.lattice_distance());
        let ig = heisenberg_holonomy(&g, &f1, &lp, prec)?;
        let s = crate::regulator::RegulatorValue::new(&i1.representative + &ig.representative);
        skew.record(s.lattice_distance());
    }
    Ok(vec![tame, st, bil, skew])
}

fn suite_exact(seed: u64, scale: f64) -> Result<Vec<Check>> {
    let mut r = rng(seed);
    let mut wedge = Check::new("wedge map kills five-term", 0.0);
    let mut done = 0;
    while done < count(500, scale) {
        let x = random_rational(&mut r, 30);
        let y = random_rational(&mut r, 30);
        let Ok(e) = five_term_element(&x, &y) else { continue };
        wedge.record_bool(wedge_map(&e).is_zero());
        done += 1;
    }
    let mut recip = Check::new("tame symbol reciprocity", 0.0);
    let support = small_support();
    for _ in 0..count(100, scale) {
        let f = random_split_function(&mut r, &support);
        let g = random_split_function(&mut r, &support);
        recip.record_bool(tame_product(&f, &g)? == BigRational::one());
    }
    let mut kill = Check::new("rep kills relation basis (d=8)", 0.0);
    let basis = quotient_relation_basis(8)?;
    for n in 1..=8 {
        kill.record_bool(basis.iter().all(|e| rep_exact(e.series(), n).is_zero()));
    }
    let mut weight = Check::new("relative weight of local logs", 0.0);
    let mut res = Check::new("residues nilpotent, sum zero", 0.0);
    for n in 1..=8 {
        for l in [Letter::S0, Letter::S1] {
            weight.record_bool(check_relative_weight(&local_log(l, n), &FiltrationSpec::new(n)));
        }
        let (r0, r1, rinf) = connection_residues(n);
        let (a0, a1) = polylog_rep(n);
        res.record_bool(
            r0.is_nilpotent() && r1.is_nilpotent() && rinf.is_nilpotent() && r0.add(&r1).add(&rinf).is_zero() && a0 == r0 && a1 == r1,
        );
    }
    Ok(vec![wedge, recip, kill, weight, res])
}

fn suite_volume(seed: u64, scale: f64, prec: &PrecisionConfig) -> Result<Vec<Check>> {
    let mut r = rng(seed);
    let bits = prec.bits();
    let mut poly = Check::new("polyhedron decompositions agree", 1e-25);
    for _ in 0..count(100, scale) {
        let p = random_distinct_points(&mut r, 5, 0.05, bits);
        let pts = [p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone(), p[4].clone()];
        poly.record(polyhedron_check(&pts, prec)?);
    }
    let mut anti = Check::new("D2 cross ratio antisymmetry", 1e-25);
    for _ in 0..count(20, scale) {
        let p = random_distinct_points(&mut r, 4, 0.05, bits);
        let base = [p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()];
        let v = tetra_volume(&base, prec)?;
        let mut worst = 0f64;
        for perm in permutations4() {
            let q = [base[perm[0]].clone(), base[perm[1]].clone(), base[perm[2]].clone(), base[perm[3]].clone()];
            let w = tetra_volume(&q, prec)?;
            let expect = if sign(&perm) > 0 { v.clone() } else { -&v };
            worst = worst.max((&w - &expect).abs().to_f64());
        }
        anti.record(worst);
    }
    Ok(vec![poly, anti])
}

/// The 24 permutations of `0..4`.
pub fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p.contains(&i)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Sign of a permutation by counting inversions.
pub fn sign(p: &[usize]) -> i32 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}
