//! Truncated noncommutative series in `X_0, X_1`, their Hopf structure,
//! Lyndon bases of the free Lie algebra, the polylogarithm quotient and
//! its representation on matrices of size `n+1`.
//!
//! Series are stored densely: the word of length `L` with letters
//! `b_1 ... b_L` (most significant first) sits at index `2^L - 1 + b`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::itint::transport_series;
use crate::monodromy::{connection_residues, monodromy_exact, ExactMatrix};
use crate::numerics::complex::Complex;
use crate::numerics::matrix::CMatrix;
use crate::numerics::real::Real;
use crate::numerics::PrecisionConfig;
use crate::paths::{word_to_path, MonodromyWord};
use crate::polylog::principal_lambda;

/// Dense index of the word of length `len` with bit pattern `bits`.
pub fn word_index(len: usize, bits: usize) -> usize {
    (1usize << len) - 1 + bits
}

/// Inverse of [`word_index`].
pub fn index_word(idx: usize) -> (usize, usize) {
    let len = (usize::BITS - (idx + 1).leading_zeros() - 1) as usize;
    (len, idx + 1 - (1usize << len))
}

fn letters_to_bits(w: &[u8]) -> usize {
    w.iter().fold(0, |acc, &l| (acc << 1) | (l as usize & 1))
}

fn bits_to_letters(len: usize, bits: usize) -> Vec<u8> {
    (0..len).rev().map(|k| ((bits >> k) & 1) as u8).collect()
}

/// Ring operations needed by [`TensorSeries`].
pub trait Coefficient: Clone + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn c_add(&self, o: &Self) -> Self;
    fn c_sub(&self, o: &Self) -> Self;
    fn c_mul(&self, o: &Self) -> Self;
    fn c_ratio(&self, num: i64, den: i64) -> Self;
    fn magnitude(&self) -> f64;
    fn c_is_zero(&self) -> bool;
    /// Slack allowed when checking a constant term.
    fn slack(&self) -> f64;
}

impl Coefficient for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn c_add(&self, o: &Self) -> Self {
        self + o
    }
    fn c_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn c_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn c_ratio(&self, num: i64, den: i64) -> Self {
        self * BigRational::new(num.into(), den.into())
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn slack(&self) -> f64 {
        0.0
    }
}

impl Coefficient for Complex {
    fn zero_like(&self) -> Self {
        Complex::zero(self.prec())
    }
    fn one_like(&self) -> Self {
        Complex::one(self.prec())
    }
    fn c_add(&self, o: &Self) -> Self {
        self + o
    }
    fn c_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn c_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn c_ratio(&self, num: i64, den: i64) -> Self {
        self.mul_i64(num).div_i64(den)
    }
    fn magnitude(&self) -> f64 {
        self.abs_f64()
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn slack(&self) -> f64 {
        2f64.powi(-(self.prec() as i32) / 2)
    }
}

/// Series in `X_0, X_1` truncated above degree `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorSeries<C> {
    m: usize,
    coeffs: Vec<C>,
}

impl<C: Coefficient> TensorSeries<C> {
    /// Dense coefficients in index order; `coeffs.len()` must be `2^{m+1} - 1`.
    pub fn from_coeffs(m: usize, coeffs: Vec<C>) -> TensorSeries<C> {
        assert_eq!(coeffs.len(), (1usize << (m + 1)) - 1, "wrong coefficient count");
        TensorSeries { m, coeffs }
    }

    /// The zero series; `sample` fixes the coefficient ring (and precision).
    pub fn zero(m: usize, sample: &C) -> TensorSeries<C> {
        TensorSeries { m, coeffs: vec![sample.zero_like(); (1usize << (m + 1)) - 1] }
    }

    pub fn one(m: usize, sample: &C) -> TensorSeries<C> {
        let mut s = TensorSeries::zero(m, sample);
        s.coeffs[0] = sample.one_like();
        s
    }

    /// `c X_w`.
    pub fn monomial(m: usize, w: &[u8], c: C) -> TensorSeries<C> {
        let mut s = TensorSeries::zero(m, &c);
        if w.len() <= m {
            s.coeffs[word_index(w.len(), letters_to_bits(w))] = c;
        }
        s
    }

    /// The generator `X_i`.
    pub fn generator(i: u8, m: usize, sample: &C) -> TensorSeries<C> {
        TensorSeries::monomial(m, &[i], sample.one_like())
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn get(&self, w: &[u8]) -> &C {
        &self.coeffs[word_index(w.len(), letters_to_bits(w))]
    }

    pub fn set(&mut self, w: &[u8], c: C) {
        self.coeffs[word_index(w.len(), letters_to_bits(w))] = c;
    }

    /// Nonzero terms as (word, coefficient).
    pub fn terms(&self) -> Vec<(Vec<u8>, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.c_is_zero())
            .map(|(i, c)| {
                let (len, b) = index_word(i);
                (bits_to_letters(len, b), c)
            })
            .collect()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.c_is_zero()).map(|i| index_word(i).0)
    }

    fn check_degree(&self, o: &Self) -> Result<()> {
        if self.m != o.m {
            return Err(Error::Argument(format!("truncation degrees differ: {} vs {}", self.m, o.m)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_degree(o)?;
        Ok(TensorSeries { m: self.m, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.c_add(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_degree(o)?;
        Ok(TensorSeries { m: self.m, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.c_sub(b)).collect() })
    }

    pub fn scale(&self, k: &C) -> Self {
        TensorSeries { m: self.m, coeffs: self.coeffs.iter().map(|a| a.c_mul(k)).collect() }
    }

    fn ratio(&self, num: i64, den: i64) -> Self {
        TensorSeries { m: self.m, coeffs: self.coeffs.iter().map(|a| a.c_ratio(num, den)).collect() }
    }

    /// Truncated concatenation product.
    pub fn concat_product(&self, o: &Self) -> Result<Self> {
        self.check_degree(o)?;
        let m = self.m;
        let mut out = TensorSeries::zero(m, &self.coeffs[0]);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.c_is_zero() {
                continue;
            }
            let (la, ba) = index_word(i);
            for lb in 0..=(m - la) {
                for bb in 0..(1usize << lb) {
                    let b = &o.coeffs[word_index(lb, bb)];
                    if b.c_is_zero() {
                        continue;
                    }
                    let k = word_index(la + lb, (ba << lb) | bb);
                    out.coeffs[k] = out.coeffs[k].c_add(&a.c_mul(b));
                }
            }
        }
        Ok(out)
    }

    /// `ab - ba`.
    pub fn bracket(&self, o: &Self) -> Result<Self> {
        self.concat_product(o)?.sub(&o.concat_product(self)?)
    }

    /// Coproduct with primitive letters (unshuffle), as a table on pairs
    /// of word indices with total degree at most `m`.
    pub fn coproduct(&self) -> HashMap<(usize, usize), C> {
        let mut table: HashMap<(usize, usize), C> = HashMap::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.c_is_zero() {
                continue;
            }
            let (len, bits) = index_word(i);
            let letters = bits_to_letters(len, bits);
            for mask in 0..(1usize << len) {
                let (mut lu, mut bu, mut lv, mut bv) = (0, 0, 0, 0);
                for (p, &l) in letters.iter().enumerate() {
                    if (mask >> p) & 1 == 1 {
                        bu = (bu << 1) | l as usize;
                        lu += 1;
                    } else {
                        bv = (bv << 1) | l as usize;
                        lv += 1;
                    }
                }
                let key = (word_index(lu, bu), word_index(lv, bv));
                match table.get_mut(&key) {
                    Some(e) => *e = e.c_add(c),
                    None => {
                        table.insert(key, c.clone());
                    }
                }
            }
        }
        table
    }

    fn coproduct_residual(&self, expected: impl Fn(usize, usize) -> Option<C>) -> f64 {
        let d = self.coproduct();
        let mut worst = 0f64;
        for lu in 0..=self.m {
            for lv in 0..=(self.m - lu) {
                for bu in 0..(1usize << lu) {
                    for bv in 0..(1usize << lv) {
                        let key = (word_index(lu, bu), word_index(lv, bv));
                        let r = match (d.get(&key), expected(key.0, key.1)) {
                            (Some(a), Some(b)) => a.c_sub(&b).magnitude(),
                            (Some(a), None) => a.magnitude(),
                            (None, Some(b)) => b.magnitude(),
                            (None, None) => 0.0,
                        };
                        worst = worst.max(r);
                    }
                }
            }
        }
        worst
    }

    /// Largest coefficient of `Delta(a) - a (x) a`.
    pub fn is_grouplike(&self) -> f64 {
        self.coproduct_residual(|u, v| {
            let p = self.coeffs[u].c_mul(&self.coeffs[v]);
            (!p.c_is_zero()).then_some(p)
        })
    }

    /// Largest coefficient of `Delta(a) - 1 (x) a - a (x) 1`.
    pub fn is_primitive(&self) -> f64 {
        self.coproduct_residual(|u, v| {
            let c = match (u, v) {
                (0, 0) => self.coeffs[0].c_add(&self.coeffs[0]),
                (0, v) => self.coeffs[v].clone(),
                (u, 0) => self.coeffs[u].clone(),
                _ => return None,
            };
            (!c.c_is_zero()).then_some(c)
        })
    }

    fn constant_is(&self, target: &C) -> Result<()> {
        let c = &self.coeffs[0];
        if c.c_sub(target).magnitude() > c.slack() {
            return Err(Error::Argument("series has the wrong constant term".into()));
        }
        Ok(())
    }

    /// `exp` of a series with zero constant term.
    pub fn series_exp(&self) -> Result<Self> {
        let zero = self.coeffs[0].zero_like();
        self.constant_is(&zero)?;
        let mut x = self.clone();
        x.coeffs[0] = zero;
        let mut acc = TensorSeries::one(self.m, &self.coeffs[0]);
        let mut term = acc.clone();
        for k in 1..=self.m {
            term = term.concat_product(&x)?.ratio(1, k as i64);
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// `log` of a series with constant term 1.
    pub fn series_log(&self) -> Result<Self> {
        let one = self.coeffs[0].one_like();
        self.constant_is(&one)?;
        let mut x = self.clone();
        x.coeffs[0] = one.zero_like();
        let mut acc = TensorSeries::zero(self.m, &one);
        let mut term = TensorSeries::one(self.m, &one);
        for k in 1..=self.m {
            term = term.concat_product(&x)?;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&term.ratio(sign, k as i64))?;
        }
        Ok(acc)
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for TensorSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let word: String = w.iter().map(|l| format!("X{l}")).collect();
            if word.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}){word}")?;
            }
        }
        Ok(())
    }
}

/// All Lyndon words over `0 < 1` of length `1..=n`, in lexicographic
/// order (Duval).
pub fn lyndon_words(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let mut x: Vec<u8> = (0..n).map(|i| w[i % w.len()]).collect();
        while x.last() == Some(&1) {
            x.pop();
        }
        match x.last_mut() {
            Some(l) => *l = 1,
            None => break,
        }
        w = x;
    }
    out
}

/// Whether `w` is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Split `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> Option<(&[u8], &[u8])> {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| (&w[..i], &w[i..]))
}

/// Number of Lyndon words of length `d` (Witt's formula).
pub fn lyndon_count(d: usize) -> usize {
    if d == 0 {
        return 0;
    }
    let mut total: i64 = 0;
    for k in 1..=d {
        if d.is_multiple_of(k) {
            total += mobius(k) * (1i64 << (d / k));
        }
    }
    (total / d as i64) as usize
}

fn mobius(mut n: usize) -> i64 {
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

/// Lie polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement {
    series: TensorSeries<BigRational>,
}

impl LieElement {
    /// Accepts `series` only if it is primitive (with zero constant term).
    pub fn new(series: TensorSeries<BigRational>) -> Result<LieElement> {
        if !series.coeffs[0].is_zero() || series.is_primitive() != 0.0 {
            return Err(Error::Argument("series is not primitive".into()));
        }
        Ok(LieElement { series })
    }

    pub fn generator(i: u8, m: usize) -> LieElement {
        LieElement { series: TensorSeries::generator(i, m, &BigRational::zero()) }
    }

    /// Standard bracketing of a Lyndon word.
    pub fn from_lyndon(w: &[u8], m: usize) -> LieElement {
        assert!(is_lyndon(w), "not a Lyndon word");
        match standard_factorization(w) {
            None => LieElement::generator(w[0], m),
            Some((u, v)) => LieElement::from_lyndon(u, m).bracket(&LieElement::from_lyndon(v, m)),
        }
    }

    pub fn bracket(&self, o: &LieElement) -> LieElement {
        LieElement { series: self.series.bracket(&o.series).expect("same truncation") }
    }

    pub fn series(&self) -> &TensorSeries<BigRational> {
        &self.series
    }

    pub fn is_zero(&self) -> bool {
        self.series.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coordinates in the Lyndon basis; the bracketing of a Lyndon word
    /// `w` is `w` plus lexicographically larger words, so each degree is
    /// a triangular solve.
    pub fn lyndon_coordinates(&self) -> Result<Vec<(Vec<u8>, BigRational)>> {
        let m = self.series.m;
        let mut out = Vec::new();
        let mut rest = self.series.clone();
        let words = lyndon_words(m);
        for d in 1..=m {
            let mut ws: Vec<&Vec<u8>> = words.iter().filter(|w| w.len() == d).collect();
            ws.sort();
            for w in ws {
                let c = rest.get(w).clone();
                if c.is_zero() {
                    continue;
                }
                let p = LieElement::from_lyndon(w, m).series.scale(&c);
                rest = rest.sub(&p)?;
                out.push((w.clone(), c));
            }
        }
        if rest.coeffs.iter().any(|c| !c.is_zero()) {
            return Err(Error::Argument("not a Lie polynomial".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self.lyndon_coordinates() {
            Ok(coords) if !coords.is_empty() => {
                for (k, (w, c)) in coords.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    let word: String = w.iter().map(|l| l.to_string()).collect();
                    write!(f, "({c})P[{word}]")?;
                }
                Ok(())
            }
            _ => write!(f, "0"),
        }
    }
}

/// Row echelon form over `Q` for rank computations.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    /// Reduce `v`; keep it and return true if it is independent.
    fn insert(&mut self, mut v: Vec<BigRational>) -> bool {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let k = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= &k * y;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let k = v[p].recip();
                for x in v.iter_mut() {
                    *x *= &k;
                }
                for (_, r) in self.rows.iter_mut() {
                    if !r[p].is_zero() {
                        let c = r[p].clone();
                        for (x, y) in r.iter_mut().zip(&v) {
                            *x -= &c * y;
                        }
                    }
                }
                self.rows.push((p, v));
                true
            }
        }
    }
}

fn degree_part(s: &TensorSeries<BigRational>, d: usize) -> Vec<BigRational> {
    (0..(1usize << d)).map(|b| s.coeffs[word_index(d, b)].clone()).collect()
}

fn homogeneous_degree(s: &TensorSeries<BigRational>) -> Option<usize> {
    s.valuation()
}

/// Basis of the ideal generated by `ad(X_1)[L, L]` in degrees `3..=d`,
/// built from `[X_1, P(w)]` for Lyndon `w` of length at least 2 and
/// closed under `ad(X_0)`, `ad(X_1)`.
pub fn quotient_relation_basis(d: usize) -> Result<Vec<LieElement>> {
    if d < 3 {
        return Err(Error::Argument("relation degree must be at least 3".into()));
    }
    let x0 = LieElement::generator(0, d);
    let x1 = LieElement::generator(1, d);
    let mut by_degree: Vec<Vec<LieElement>> = vec![Vec::new(); d + 1];
    let mut echelons: Vec<Echelon> = (0..=d).map(|_| Echelon::default()).collect();
    let mut add = |e: LieElement, by_degree: &mut Vec<Vec<LieElement>>| {
        if let Some(k) = homogeneous_degree(&e.series) {
            if echelons[k].insert(degree_part(&e.series, k)) {
                by_degree[k].push(e);
            }
        }
    };
    for w in lyndon_words(d - 1) {
        if w.len() >= 2 {
            add(x1.bracket(&LieElement::from_lyndon(&w, d)), &mut by_degree);
        }
    }
    for k in 3..d {
        let current = by_degree[k].clone();
        for e in current {
            add(x0.bracket(&e), &mut by_degree);
            add(x1.bracket(&e), &mut by_degree);
        }
    }
    Ok(by_degree.into_iter().flatten().collect())
}

/// `dim L_d - dim (ideal)_d`, the dimension of the quotient in degree `d`.
pub fn quotient_dimension(d: usize) -> Result<usize> {
    if d < 3 {
        return Ok(lyndon_count(d));
    }
    let basis = quotient_relation_basis(d)?;
    let rank = basis.iter().filter(|e| homogeneous_degree(&e.series) == Some(d)).count();
    Ok(lyndon_count(d) - rank)
}

/// Images of `X_0` and `X_1` on matrices of size `n+1`.
pub fn polylog_rep(n: usize) -> (ExactMatrix, ExactMatrix) {
    let (r0, r1, _) = connection_residues(n);
    (r0, r1)
}

/// `sum_w c_w A_w` for the representation of order `n`. Words longer
/// than `n` act by zero.
pub fn rep_exact(s: &TensorSeries<BigRational>, n: usize) -> ExactMatrix {
    let (a0, a1) = polylog_rep(n);
    let gens = [a0, a1];
    let mut acc = ExactMatrix::zeros(n);
    let top = s.m.min(n);
    let mut level = vec![ExactMatrix::identity(n)];
    for len in 0..=top {
        for (b, mat) in level.iter().enumerate() {
            let c = &s.coeffs[word_index(len, b)];
            if !c.is_zero() {
                acc = acc.add(&mat.scale(c));
            }
        }
        if len < top {
            level = level.iter().flat_map(|mat| gens.iter().map(move |g| mat.mul(g))).collect();
        }
    }
    acc
}

/// Numeric counterpart of [`rep_exact`].
pub fn rep_complex(s: &TensorSeries<Complex>, n: usize, bits: u32) -> CMatrix {
    let (a0, a1) = polylog_rep(n);
    let gens = [a0.to_numeric(bits), a1.to_numeric(bits)];
    let mut acc = CMatrix::zeros(n + 1, n + 1, bits);
    let top = s.m.min(n);
    let mut level = vec![CMatrix::identity(n + 1, bits)];
    for len in 0..=top {
        for (b, mat) in level.iter().enumerate() {
            let c = &s.coeffs[word_index(len, b)];
            if !c.is_zero() {
                acc = acc.add(&mat.scale(c));
            }
        }
        if len < top {
            level = level.iter().flat_map(|mat| gens.iter().map(move |g| mat.matmul(g))).collect();
        }
    }
    acc
}

fn exp_nilpotent_numeric(a: &CMatrix) -> CMatrix {
    let n = a.rows;
    let bits = a.prec();
    let mut acc = CMatrix::identity(n, bits);
    let mut term = acc.clone();
    for k in 1..=n {
        term = term.matmul(a).scale(&Complex::from_real(Real::one(bits)).div_u64(k as u64));
        acc = acc.add(&term);
    }
    acc
}

/// `exp(rep(log Theta))` for the loop of `word`, compared with the exact
/// monodromy written in the frame of the transport:
/// `Lambda(1/2)^{-1} M Lambda(1/2)`. Returns the largest entry difference.
pub fn monodromy_consistency(word: &MonodromyWord, n: usize, prec: &PrecisionConfig) -> Result<f64> {
    let bits = prec.bits();
    let theta = transport_series(&word_to_path(word, bits), n.max(1), prec)?;
    let log = theta.series_log()?;
    let lhs = exp_nilpotent_numeric(&rep_complex(&log, n, bits));
    let lam = principal_lambda(&Complex::from_f64(0.5, 0.0, bits), n, prec)?.lambda;
    let inv = lam.inverse().ok_or_else(|| Error::Degenerate("Lambda(1/2) is singular".into()))?;
    let rhs = inv.matmul(&monodromy_exact(word, n).to_numeric(bits)).matmul(&lam);
    Ok(lhs.max_abs_diff(&rhs))
}

/// Rational series with small random coefficients (used by property
/// tests and self checks).
pub fn rational_series_from(m: usize, vals: &[(i64, i64)]) -> TensorSeries<BigRational> {
    let len = (1usize << (m + 1)) - 1;
    let coeffs = (0..len)
        .map(|i| {
            let (a, b) = vals[i % vals.len()];
            BigRational::new(BigInt::from(a), BigInt::from(b.max(1)))
        })
        .collect();
    TensorSeries::from_coeffs(m, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn index_round_trip() {
        for i in 0..200 {
            let (l, b) = index_word(i);
            assert_eq!(word_index(l, b), i);
        }
        assert_eq!(index_word(0), (0, 0));
        assert_eq!(word_index(2, 0b10), 5);
    }

    #[test]
    fn coproduct_of_generator() {
        let x0 = TensorSeries::generator(0, 3, &r(0));
        let d = x0.coproduct();
        assert_eq!(d.len(), 2);
        assert_eq!(d[&(0, word_index(1, 0))], r(1));
        assert_eq!(d[&(word_index(1, 0), 0)], r(1));
        assert_eq!(x0.is_primitive(), 0.0);
    }

    #[test]
    fn exp_log_round_trip() {
        let m = 4;
        let v = TensorSeries::monomial(m, &[0, 1], r(3));
        let e = v.series_exp().unwrap();
        assert_eq!(e.series_log().unwrap(), v);
        assert!(TensorSeries::one(m, &r(0)).series_exp().is_err());
        assert!(v.series_log().is_err());
    }

    #[test]
    fn exp_of_generator_is_grouplike_brute_force() {
        // brute force: exp(X0) = sum X0^k/k!, and Delta(X0^k) = sum C(k,j) X0^j (x) X0^{k-j}
        let m = 4;
        let e = TensorSeries::generator(0, m, &r(0)).series_exp().unwrap();
        let d = e.coproduct();
        let mut fact = vec![r(1)];
        for k in 1..=m {
            fact.push(&fact[k - 1] * r(k as i64));
        }
        for j in 0..=m {
            for k in 0..=(m - j) {
                let key = (word_index(j, 0), word_index(k, 0));
                let expect = (&fact[j] * &fact[k]).recip();
                assert_eq!(d[&key], expect);
            }
        }
        assert_eq!(e.is_grouplike(), 0.0);
        assert_eq!(TensorSeries::one(m, &r(0)).is_grouplike(), 0.0);
    }

    #[test]
    fn commutators_are_primitive() {
        let m = 4;
        let x0 = LieElement::generator(0, m);
        let x1 = LieElement::generator(1, m);
        let s = x0.series().add(x0.bracket(&x1).series()).unwrap();
        assert_eq!(s.is_primitive(), 0.0);
        assert!(LieElement::new(s).is_ok());
        assert!(LieElement::new(TensorSeries::monomial(m, &[0, 1], r(1))).is_err());
    }

    #[test]
    fn lyndon_enumeration() {
        let ws = lyndon_words(5);
        for d in 1..=5 {
            assert_eq!(ws.iter().filter(|w| w.len() == d).count(), lyndon_count(d));
        }
        // brute force over all words
        for d in 1..=8 {
            let brute = (0..(1usize << d)).filter(|&b| is_lyndon(&bits_to_letters(d, b))).count();
            assert_eq!(brute, lyndon_count(d));
        }
        let mut sorted = ws.clone();
        sorted.sort();
        assert_eq!(ws, sorted);
        assert_eq!(standard_factorization(&[0, 0, 1]), Some((&[0u8][..], &[0u8, 1][..])));
    }

    #[test]
    fn lyndon_coordinates_recover_brackets() {
        let m = 5;
        let a = LieElement::from_lyndon(&[0, 0, 1, 1], m);
        let b = LieElement::from_lyndon(&[0, 1, 1], m);
        let sum = LieElement::new(a.series().add(&b.series().scale(&r(-2))).unwrap()).unwrap();
        let c = sum.lyndon_coordinates().unwrap();
        assert_eq!(c, vec![(vec![0, 1, 1], r(-2)), (vec![0, 0, 1, 1], r(1))]);
    }

    #[test]
    fn relation_basis_low_degree() {
        let b = quotient_relation_basis(3).unwrap();
        assert_eq!(b.len(), 1);
        let x0 = LieElement::generator(0, 3);
        let x1 = LieElement::generator(1, 3);
        assert_eq!(b[0], x1.bracket(&x0.bracket(&x1)));
        assert!(quotient_relation_basis(2).is_err());
    }

    #[test]
    fn quotient_is_one_dimensional() {
        for d in 2..=7 {
            assert_eq!(quotient_dimension(d).unwrap(), 1, "degree {d}");
        }
    }

    #[test]
    fn rep_images() {
        let (a0, a1) = polylog_rep(2);
        let mut e0 = ExactMatrix::zeros(2);
        e0.set(1, 2, r(1));
        let mut e1 = ExactMatrix::zeros(2);
        e1.set(0, 1, r(-1));
        assert_eq!(a0, e0);
        assert_eq!(a1, e1);
        assert!(a0.is_nilpotent() && a1.is_nilpotent());
    }

    #[test]
    fn rep_exponentials_are_generator_monodromies() {
        use crate::monodromy::generator_matrix;
        use crate::paths::Letter;
        for n in 1..=6 {
            let (a0, a1) = polylog_rep(n);
            assert_eq!(a0.exp_nilpotent(), generator_matrix(Letter::S0, n));
            assert_eq!(a1.exp_nilpotent(), generator_matrix(Letter::S1, n));
        }
    }

    #[test]
    fn rep_kills_relations() {
        for n in 1..=5 {
            for e in quotient_relation_basis(6).unwrap() {
                assert!(rep_exact(e.series(), n).is_zero());
            }
        }
    }

    #[test]
    fn transport_consistency_small() {
        let prec = PrecisionConfig::default();
        for w in ["s0", "s1", "s0 s1^-1"] {
            let word: MonodromyWord = w.parse().unwrap();
            let r = monodromy_consistency(&word, 3, &prec).unwrap();
            assert!(r < 1e-25, "{w}: {r}");
        }
    }
}
