//! Iterated integrals of logarithmic 1-forms along paths.
//!
//! `int_gamma w_1 ... w_r` is the `(0, r)` entry of the transport of the
//! strictly upper triangular connection with `w_i` in slot `(i-1, i)`.
//! Families of words are integrated together by stacking their chains on
//! a shared root state.
//!
//! The transport series pairs `e_0 = dz/z` with `X_0` and
//! `e_1 = -dz/(1-z) = dz/(z-1)` with `X_1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::hopf::{word_index, TensorSeries};
use crate::numerics::complex::Complex;
use crate::numerics::matrix::CMatrix;
use crate::numerics::transport::{ode_transport, Connection};
use crate::numerics::PrecisionConfig;
use crate::paths::Path;
use crate::regulator::RationalFunction;

/// A closed logarithmic 1-form.
#[derive(Clone, Debug, PartialEq)]
pub enum LogForm {
    /// `c dz/(z - a)`
    Pole { a: Complex, c: Complex },
    /// `c dlog f`
    Dlog { f: RationalFunction, c: Complex },
}

impl LogForm {
    pub fn pole(a: Complex) -> LogForm {
        let bits = a.prec();
        LogForm::Pole { a, c: Complex::one(bits) }
    }

    /// `dz/z`
    pub fn omega0(bits: u32) -> LogForm {
        LogForm::pole(Complex::zero(bits))
    }

    /// `dz/(1 - z)`
    pub fn omega1(bits: u32) -> LogForm {
        LogForm::Pole { a: Complex::one(bits), c: -Complex::one(bits) }
    }

    pub fn dlog(f: RationalFunction) -> LogForm {
        LogForm::Dlog { f, c: Complex::one(64) }
    }

    pub fn scaled(&self, k: &Complex) -> LogForm {
        match self {
            LogForm::Pole { a, c } => LogForm::Pole { a: a.clone(), c: c * k },
            LogForm::Dlog { f, c } => LogForm::Dlog { f: f.clone(), c: c * k },
        }
    }

    /// The form as `sum c_k dz/(z - a_k)`.
    pub fn pole_terms(&self, bits: u32) -> Vec<(Complex, Complex)> {
        match self {
            LogForm::Pole { a, c } => vec![(a.round_to(bits), c.round_to(bits))],
            LogForm::Dlog { f, c } => f
                .divisor_complex(bits)
                .into_iter()
                .map(|(z, k)| (z, c.round_to(bits).mul_i64(k)))
                .collect(),
        }
    }

    /// `w0`, `w1`, `pole:<complex>` or `dlog:<rational function>`,
    /// optionally prefixed by `<complex>*`.
    pub fn parse(s: &str, bits: u32) -> Result<LogForm> {
        let s = s.trim();
        if let Some((k, rest)) = s.split_once('*') {
            if !rest.contains('*') && !k.contains(':') {
                let c = Complex::parse(k, bits).ok_or_else(|| Error::Parse(format!("bad scalar '{k}'")))?;
                return Ok(LogForm::parse(rest, bits)?.scaled(&c));
            }
        }
        match s {
            "w0" => return Ok(LogForm::omega0(bits)),
            "w1" => return Ok(LogForm::omega1(bits)),
            _ => {}
        }
        if let Some(a) = s.strip_prefix("pole:") {
            let a = Complex::parse(a, bits).ok_or_else(|| Error::Parse(format!("bad pole '{a}'")))?;
            return Ok(LogForm::pole(a));
        }
        if let Some(f) = s.strip_prefix("dlog:") {
            return Ok(LogForm::dlog(RationalFunction::parse(f)?));
        }
        Err(Error::Parse(format!("unknown form '{s}'")))
    }
}

impl fmt::Display for LogForm {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            LogForm::Pole { a, c } => write!(f, "({}) dz/(z - ({}))", c.to_decimal(6), a.to_decimal(6)),
            LogForm::Dlog { f: g, c } => write!(f, "({}) dlog({})", c.to_decimal(6), g),
        }
    }
}

/// An ordered word of forms.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FormWord(pub Vec<LogForm>);

impl FormWord {
    pub fn new(forms: Vec<LogForm>) -> FormWord {
        FormWord(forms)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> FormWord {
        FormWord(self.0.iter().rev().cloned().collect())
    }

    /// Comma separated list of forms.
    pub fn parse(s: &str, bits: u32) -> Result<FormWord> {
        if s.trim().is_empty() {
            return Ok(FormWord::default());
        }
        s.split(',').map(|x| LogForm::parse(x, bits)).collect::<Result<Vec<_>>>().map(FormWord)
    }
}

/// Iterated integrals of several words along one path.
pub fn iterated_integrals(words: &[FormWord], path: &Path, prec: &PrecisionConfig) -> Result<Vec<Complex>> {
    let bits = prec.bits();
    let dim = 1 + words.iter().map(|w| w.len()).sum::<usize>();
    let mut conn = Connection::new(dim);
    let mut ends = Vec::with_capacity(words.len());
    let mut next = 1;
    for w in words {
        let mut prev = 0;
        for form in &w.0 {
            for (a, c) in form.pole_terms(bits) {
                conn.add_term(&a, prev, next, c);
            }
            prev = next;
            next += 1;
        }
        ends.push(prev);
    }
    let mut init = CMatrix::zeros(1, dim, bits);
    init.set(0, 0, Complex::one(bits));
    let row = ode_transport(&conn, path, &init, prec)?;
    Ok(ends.into_iter().map(|e| row.get(0, e).clone()).collect())
}

/// `int_path w_1 ... w_r`; the empty word gives 1.
pub fn iterated_integral(word: &FormWord, path: &Path, prec: &PrecisionConfig) -> Result<Complex> {
    Ok(iterated_integrals(std::slice::from_ref(word), path, prec)?.remove(0))
}

/// Shuffle product of two words: each distinct interleaving with the
/// number of shuffles producing it.
pub fn shuffle<T: Clone + PartialEq>(u: &[T], v: &[T]) -> Vec<(Vec<T>, u64)> {
    let mut out: Vec<(Vec<T>, u64)> = Vec::new();
    let mut cur = Vec::with_capacity(u.len() + v.len());
    fn rec<T: Clone + PartialEq>(u: &[T], v: &[T], cur: &mut Vec<T>, out: &mut Vec<(Vec<T>, u64)>) {
        if u.is_empty() && v.is_empty() {
            match out.iter_mut().find(|(w, _)| w == cur) {
                Some(e) => e.1 += 1,
                None => out.push((cur.clone(), 1)),
            }
            return;
        }
        if let Some((a, rest)) = u.split_first() {
            cur.push(a.clone());
            rec(rest, v, cur, out);
            cur.pop();
        }
        if let Some((b, rest)) = v.split_first() {
            cur.push(b.clone());
            rec(u, rest, cur, out);
            cur.pop();
        }
    }
    rec(u, v, &mut cur, &mut out);
    out
}

/// Shuffle product of form words.
pub fn shuffle_product(u: &FormWord, v: &FormWord) -> Vec<(FormWord, u64)> {
    shuffle(&u.0, &v.0).into_iter().map(|(w, k)| (FormWord(w), k)).collect()
}

/// Degree `m` truncation of `1 + sum_w (int_path e_w) X_w`.
pub fn transport_series(path: &Path, m: usize, prec: &PrecisionConfig) -> Result<TensorSeries<Complex>> {
    if m < 1 {
        return Err(Error::Argument("truncation degree must be at least 1".into()));
    }
    let bits = prec.bits();
    let dim = (1usize << (m + 1)) - 1;
    let one = Complex::one(bits);
    let mut conn = Connection::new(dim);
    let poles = [Complex::zero(bits), Complex::one(bits)];
    for len in 0..m {
        for w in 0..(1usize << len) {
            let from = word_index(len, w);
            for (i, p) in poles.iter().enumerate() {
                conn.add_term(p, from, word_index(len + 1, (w << 1) | i), one.clone());
            }
        }
    }
    let mut init = CMatrix::zeros(1, dim, bits);
    init.set(0, 0, one);
    let row = ode_transport(&conn, path, &init, prec)?;
    Ok(TensorSeries::from_coeffs(m, row.data))
}
