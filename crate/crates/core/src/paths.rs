//! Piecewise line/arc contours in the punctured plane and homotopy words.

use crate::error::{Error, Result};
use crate::numerics::complex::Complex;
use crate::numerics::real::Real;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq)]
pub enum PathSegment {
    Line { start: Complex, end: Complex },
    /// Points `center + radius * e^{i theta}` for theta running from
    /// `angle_start` to `angle_end`.
    Arc { center: Complex, radius: Real, angle_start: Real, angle_end: Real },
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

impl PathSegment {
    pub fn line(start: Complex, end: Complex) -> PathSegment {
        PathSegment::Line { start, end }
    }

    pub fn arc(center: Complex, radius: Real, angle_start: Real, angle_end: Real) -> PathSegment {
        PathSegment::Arc { center, radius, angle_start, angle_end }
    }

    pub fn start(&self) -> Complex {
        match self {
            PathSegment::Line { start, .. } => start.clone(),
            PathSegment::Arc { center, radius, angle_start, .. } => center + &Complex::cis(angle_start).scale(radius),
        }
    }

    pub fn end(&self) -> Complex {
        match self {
            PathSegment::Line { end, .. } => end.clone(),
            PathSegment::Arc { center, radius, angle_end, .. } => center + &Complex::cis(angle_end).scale(radius),
        }
    }

    pub fn reversed(&self) -> PathSegment {
        match self {
            PathSegment::Line { start, end } => PathSegment::Line { start: end.clone(), end: start.clone() },
            PathSegment::Arc { center, radius, angle_start, angle_end } => PathSegment::Arc {
                center: center.clone(),
                radius: radius.clone(),
                angle_start: angle_end.clone(),
                angle_end: angle_start.clone(),
            },
        }
    }

    /// Point at parameter `t` in `[0, 1]`.
    pub fn point_at(&self, t: &Real) -> Complex {
        match self {
            PathSegment::Line { start, end } => start + &(end - start).scale(t),
            PathSegment::Arc { center, radius, angle_start, angle_end } => {
                let a = angle_start + &(angle_end - angle_start) * t;
                center + &Complex::cis(&a).scale(radius)
            }
        }
    }

    /// Split at parameter `t` in `(0, 1)`.
    pub fn split(&self, t: &Real) -> (PathSegment, PathSegment) {
        match self {
            PathSegment::Line { start, end } => {
                let mid = self.point_at(t);
                (PathSegment::line(start.clone(), mid.clone()), PathSegment::line(mid, end.clone()))
            }
            PathSegment::Arc { center, radius, angle_start, angle_end } => {
                let a = angle_start + &(angle_end - angle_start) * t;
                (
                    PathSegment::arc(center.clone(), radius.clone(), angle_start.clone(), a.clone()),
                    PathSegment::arc(center.clone(), radius.clone(), a, angle_end.clone()),
                )
            }
        }
    }

    pub fn length_f64(&self) -> f64 {
        match self {
            PathSegment::Line { start, end } => (end - start).abs_f64(),
            PathSegment::Arc { radius, angle_start, angle_end, .. } => {
                radius.to_f64() * (angle_end - angle_start).to_f64().abs()
            }
        }
    }

    /// Distance from `p` to the segment, in double precision.
    pub fn distance_to(&self, p: (f64, f64)) -> f64 {
        match self {
            PathSegment::Line { start, end } => {
                let pc = Complex::from_f64(p.0, p.1, start.prec());
                let a = (start - &pc).to_f64();
                let b = (end - &pc).to_f64();
                let d = (b.0 - a.0, b.1 - a.1);
                let l2 = d.0 * d.0 + d.1 * d.1;
                if l2 == 0.0 {
                    return a.0.hypot(a.1);
                }
                let t = (-(a.0 * d.0 + a.1 * d.1) / l2).clamp(0.0, 1.0);
                if t <= 0.5 {
                    (a.0 + t * d.0).hypot(a.1 + t * d.1)
                } else {
                    let s = t - 1.0;
                    (b.0 + s * d.0).hypot(b.1 + s * d.1)
                }
            }
            PathSegment::Arc { center, radius, angle_start, angle_end } => {
                let pc = Complex::from_f64(p.0, p.1, center.prec());
                let c = (center - &pc).to_f64();
                let p = (0.0, 0.0);
                let r = radius.to_f64();
                let (a0, a1) = (angle_start.to_f64(), angle_end.to_f64());
                let rho = dist(c, p);
                let (lo, hi) = if a0 <= a1 { (a0, a1) } else { (a1, a0) };
                let tau = std::f64::consts::TAU;
                let inside = if hi - lo >= tau || rho == 0.0 {
                    true
                } else {
                    let phi = (p.1 - c.1).atan2(p.0 - c.0);
                    let k = ((lo - phi) / tau).ceil();
                    phi + k * tau <= hi
                };
                if inside {
                    (rho - r).abs()
                } else {
                    let e0 = (c.0 + r * a0.cos(), c.1 + r * a0.sin());
                    let e1 = (c.0 + r * a1.cos(), c.1 + r * a1.sin());
                    dist(e0, p).min(dist(e1, p))
                }
            }
        }
    }

    pub fn round_to(&self, bits: u32) -> PathSegment {
        match self {
            PathSegment::Line { start, end } => PathSegment::line(start.round_to(bits), end.round_to(bits)),
            PathSegment::Arc { center, radius, angle_start, angle_end } => PathSegment::arc(
                center.round_to(bits),
                radius.round_to(bits),
                angle_start.round_to(bits),
                angle_end.round_to(bits),
            ),
        }
    }
}

/// A contour: consecutive segments from a basepoint.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub basepoint: Complex,
    pub segments: Vec<PathSegment>,
}

/// Largest gap between consecutive records that `Path::parse` bridges.
pub const PARSE_GAP: f64 = 1e-12;

fn close_points(a: &Complex, b: &Complex) -> bool {
    let scale = a.abs_f64().max(b.abs_f64()).max(1.0);
    let bits = a.prec().min(b.prec()) as i32;
    (a - b).abs_f64() <= scale * 2f64.powi(24 - bits)
}

impl Path {
    /// Empty path at `basepoint`.
    pub fn new(basepoint: Complex) -> Path {
        Path { basepoint, segments: Vec::new() }
    }

    /// Empty path at the default basepoint `1/2`.
    pub fn at_half(bits: u32) -> Path {
        Path::new(Complex::from_f64(0.5, 0.0, bits))
    }

    pub fn from_segments(basepoint: Complex, segments: Vec<PathSegment>) -> Result<Path> {
        let p = Path { basepoint, segments };
        p.check_continuity()?;
        Ok(p)
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn end_point(&self) -> Complex {
        self.segments.last().map(|s| s.end()).unwrap_or_else(|| self.basepoint.clone())
    }

    pub fn is_closed(&self) -> bool {
        close_points(&self.basepoint, &self.end_point())
    }

    /// Append a segment starting where the path currently ends.
    pub fn push(&mut self, seg: PathSegment) -> Result<()> {
        if !close_points(&self.end_point(), &seg.start()) {
            return Err(Error::Discontinuity(self.segments.len()));
        }
        self.segments.push(seg);
        Ok(())
    }

    pub fn line_to(mut self, z: Complex) -> Path {
        let s = self.end_point();
        self.segments.push(PathSegment::line(s, z));
        self
    }

    pub fn check_continuity(&self) -> Result<()> {
        let mut cur = self.basepoint.clone();
        for (i, s) in self.segments.iter().enumerate() {
            if !close_points(&cur, &s.start()) {
                return Err(Error::Discontinuity(i));
            }
            cur = s.end();
        }
        Ok(())
    }

    /// Smallest clearance allowed for the given singular points: `frac`
    /// times the smallest distance among the points and the path endpoints.
    pub fn clearance(&self, singular: &[(f64, f64)], frac: f64) -> f64 {
        let bits = self.basepoint.prec();
        let mut pts: Vec<Complex> = singular.iter().map(|p| Complex::from_f64(p.0, p.1, bits)).collect();
        pts.push(self.basepoint.clone());
        pts.push(self.end_point());
        let mut m = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d = (&pts[i] - &pts[j]).abs_f64();
                if d > 0.0 {
                    m = m.min(d);
                }
            }
        }
        if m.is_finite() {
            frac * m
        } else {
            frac
        }
    }

    /// Check continuity and that every segment keeps the clearance from
    /// each singular point.
    pub fn validate(&self, singular: &[(f64, f64)], frac: f64) -> Result<()> {
        self.check_continuity()?;
        let delta = self.clearance(singular, frac);
        for s in &self.segments {
            for &p in singular {
                let d = s.distance_to(p);
                if d < delta {
                    return Err(Error::SingularityProximity {
                        point: format!("{}{:+}i", p.0, p.1),
                        distance: d,
                        clearance: delta,
                    });
                }
            }
        }
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Path) -> Result<Path> {
        if !close_points(&self.end_point(), &other.basepoint) {
            return Err(Error::Discontinuity(self.segments.len()));
        }
        let mut segs = self.segments.clone();
        segs.extend(other.segments.iter().cloned());
        Ok(Path { basepoint: self.basepoint.clone(), segments: segs })
    }

    pub fn invert(&self) -> Path {
        Path {
            basepoint: self.end_point(),
            segments: self.segments.iter().rev().map(|s| s.reversed()).collect(),
        }
    }

    /// Split segment `i` at parameter `t`.
    pub fn split_segment(&self, i: usize, t: &Real) -> Path {
        let mut segs = self.segments.clone();
        let (a, b) = segs[i].split(t);
        segs[i] = a;
        segs.insert(i + 1, b);
        Path { basepoint: self.basepoint.clone(), segments: segs }
    }

    pub fn length_f64(&self) -> f64 {
        self.segments.iter().map(|s| s.length_f64()).sum()
    }

    pub fn round_to(&self, bits: u32) -> Path {
        Path {
            basepoint: self.basepoint.round_to(bits),
            segments: self.segments.iter().map(|s| s.round_to(bits)).collect(),
        }
    }

    /// Parse the line-oriented path file format.
    pub fn parse(text: &str, bits: u32) -> Result<Path> {
        let num = |s: &str| parse_angle(s, bits).ok_or_else(|| Error::Parse(format!("bad number '{s}'")));
        let mut base: Option<Complex> = None;
        let mut segs = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let want = |n: usize| -> Result<()> {
                if toks.len() != n {
                    Err(Error::Parse(format!("line {}: expected {} fields", ln + 1, n)))
                } else {
                    Ok(())
                }
            };
            match toks[0] {
                "basepoint" => {
                    want(3)?;
                    base = Some(Complex::new(num(toks[1])?, num(toks[2])?));
                }
                "line" => {
                    want(5)?;
                    segs.push(PathSegment::line(
                        Complex::new(num(toks[1])?, num(toks[2])?),
                        Complex::new(num(toks[3])?, num(toks[4])?),
                    ));
                }
                "arc" => {
                    want(6)?;
                    let r = num(toks[3])?;
                    if r.is_negative() || r.is_zero() {
                        return Err(Error::Parse(format!("line {}: radius must be positive", ln + 1)));
                    }
                    segs.push(PathSegment::arc(Complex::new(num(toks[1])?, num(toks[2])?), r, num(toks[4])?, num(toks[5])?));
                }
                other => return Err(Error::Parse(format!("line {}: unknown record '{other}'", ln + 1))),
            }
        }
        let base = base.ok_or_else(|| Error::Parse("missing basepoint header".into()))?;
        // decimal angles rarely land exactly on the previous endpoint: join
        // gaps below PARSE_GAP with a short line, reject larger ones, and
        // close a path that ends within PARSE_GAP of its basepoint
        let mut path = Path::new(base.clone());
        for (i, s) in segs.into_iter().enumerate() {
            let end = path.end_point();
            let start = s.start();
            if !close_points(&end, &start) {
                if (&end - &start).abs_f64() > PARSE_GAP {
                    return Err(Error::Discontinuity(i));
                }
                path.segments.push(PathSegment::line(end, start));
            }
            path.segments.push(s);
        }
        let end = path.end_point();
        if !path.segments.is_empty() && !close_points(&end, &base) && (&end - &base).abs_f64() <= PARSE_GAP {
            path.segments.push(PathSegment::line(end, base));
        }
        Ok(path)
    }

    /// Render in the path file format.
    pub fn to_file_string(&self) -> String {
        let d = |r: &Real| r.to_decimal(((r.prec() as f64) * std::f64::consts::LOG10_2) as usize);
        let mut out = format!("basepoint {} {}\n", d(&self.basepoint.re), d(&self.basepoint.im));
        for s in &self.segments {
            match s {
                PathSegment::Line { start, end } => {
                    out += &format!("line {} {} {} {}\n", d(&start.re), d(&start.im), d(&end.re), d(&end.im))
                }
                PathSegment::Arc { center, radius, angle_start, angle_end } => {
                    out += &format!(
                        "arc {} {} {} {} {}\n",
                        d(&center.re),
                        d(&center.im),
                        d(radius),
                        d(angle_start),
                        d(angle_end)
                    )
                }
            }
        }
        out
    }
}

/// Decimal literal, optionally followed by `pi` (`2pi`, `-0.5pi`, `pi`).
fn parse_angle(s: &str, bits: u32) -> Option<Real> {
    let s = s.trim();
    if let Some(body) = s.strip_suffix("pi") {
        let body = body.trim_end_matches('*');
        let c = match body {
            "" | "+" => Real::one(bits),
            "-" => -Real::one(bits),
            _ => Real::parse_decimal(body, bits)?,
        };
        return Some(&c * &Real::pi(bits));
    }
    Real::parse_decimal(s, bits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    S0,
    S1,
    S0Inv,
    S1Inv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::S0 => Letter::S0Inv,
            Letter::S1 => Letter::S1Inv,
            Letter::S0Inv => Letter::S0,
            Letter::S1Inv => Letter::S1,
        }
    }

    pub const ALL: [Letter; 4] = [Letter::S0, Letter::S1, Letter::S0Inv, Letter::S1Inv];
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::S0 => "s0",
            Letter::S1 => "s1",
            Letter::S0Inv => "s0^-1",
            Letter::S1Inv => "s1^-1",
        })
    }
}

/// Word in the free group on `s0`, `s1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MonodromyWord {
    pub letters: Vec<Letter>,
}

impl MonodromyWord {
    pub fn new(letters: Vec<Letter>) -> MonodromyWord {
        MonodromyWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> MonodromyWord {
        MonodromyWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &MonodromyWord) -> MonodromyWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        MonodromyWord { letters }
    }
}

impl fmt::Display for MonodromyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for MonodromyWord {
    type Err = Error;

    /// Accepts letters `s0`, `s1` with optional inverse markers `^-1`,
    /// `-1`, `'` or `⁻¹`, separated by spaces, commas, `*` or nothing.
    fn from_str(s: &str) -> Result<MonodromyWord> {
        let cs: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut letters = Vec::new();
        while i < cs.len() {
            let c = cs[i];
            if c.is_whitespace() || c == ',' || c == '*' || c == '.' {
                i += 1;
                continue;
            }
            if c != 's' && c != 'S' && c != 'σ' {
                return Err(Error::Parse(format!("unexpected '{c}' in word")));
            }
            let base = match cs.get(i + 1) {
                Some('0') | Some('₀') => Letter::S0,
                Some('1') | Some('₁') => Letter::S1,
                _ => return Err(Error::Parse("letter must be s0 or s1".into())),
            };
            i += 2;
            let rest: String = cs[i..].iter().take(3).collect();
            let inv = if rest.starts_with("^-1") {
                i += 3;
                true
            } else if rest.starts_with("-1") || rest.starts_with("⁻¹") {
                i += 2;
                true
            } else if rest.starts_with('\'') || rest.starts_with('i') {
                i += 1;
                true
            } else {
                false
            };
            letters.push(if inv { base.inverse() } else { base });
        }
        Ok(MonodromyWord { letters })
    }
}

/// The generator loops based at `1/2`: radius-1/2 circles about 0 and 1.
pub fn standard_loop(letter: Letter, bits: u32) -> Path {
    let half = Real::from_f64(0.5, bits);
    let pi = Real::pi(bits);
    let two_pi = pi.mul_2exp(1);
    let zero = Real::zero(bits);
    let seg = match letter {
        Letter::S0 => PathSegment::arc(Complex::zero(bits), half, zero, two_pi),
        Letter::S0Inv => PathSegment::arc(Complex::zero(bits), half, zero, -two_pi),
        Letter::S1 => PathSegment::arc(Complex::one(bits), half, pi.clone(), pi.mul_u64(3)),
        Letter::S1Inv => PathSegment::arc(Complex::one(bits), half, pi.clone(), -pi),
    };
    Path { basepoint: Complex::from_f64(0.5, 0.0, bits), segments: vec![seg] }
}

/// Concatenation of the standard loops of the letters.
pub fn word_to_path(word: &MonodromyWord, bits: u32) -> Path {
    let mut p = Path::at_half(bits);
    for &l in &word.letters {
        p.segments.extend(standard_loop(l, bits).segments);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: u32 = 256;
    const PUNCTURES: [(f64, f64); 2] = [(0.0, 0.0), (1.0, 0.0)];

    #[test]
    fn standard_loops() {
        let p = standard_loop(Letter::S0, B);
        match &p.segments[0] {
            PathSegment::Arc { center, radius, angle_start, angle_end } => {
                assert!(center.is_zero());
                assert_eq!(radius.to_f64(), 0.5);
                assert!(angle_start.is_zero());
                assert!((angle_end.to_f64() - std::f64::consts::TAU).abs() < 1e-15);
            }
            _ => panic!("expected arc"),
        }
        let p = standard_loop(Letter::S1, B);
        match &p.segments[0] {
            PathSegment::Arc { center, angle_start, angle_end, .. } => {
                assert_eq!(center.to_f64(), (1.0, 0.0));
                assert!((angle_start.to_f64() - std::f64::consts::PI).abs() < 1e-15);
                assert!((angle_end.to_f64() - 3.0 * std::f64::consts::PI).abs() < 1e-15);
            }
            _ => panic!("expected arc"),
        }
        let p = standard_loop(Letter::S0Inv, B);
        match &p.segments[0] {
            PathSegment::Arc { angle_end, .. } => assert!((angle_end.to_f64() + std::f64::consts::TAU).abs() < 1e-15),
            _ => panic!("expected arc"),
        }
        for l in Letter::ALL {
            let p = standard_loop(l, B);
            assert!(p.is_closed());
            p.validate(&PUNCTURES, 1e-3).unwrap();
        }
    }

    #[test]
    fn words() {
        let w: MonodromyWord = "s0 s1 s0^-1 s1'".parse().unwrap();
        assert_eq!(w.letters, vec![Letter::S0, Letter::S1, Letter::S0Inv, Letter::S1Inv]);
        let w2: MonodromyWord = "s0s1s0-1s1⁻¹".parse().unwrap();
        assert_eq!(w, w2);
        assert_eq!(w.to_string().parse::<MonodromyWord>().unwrap(), w);
        assert!("s2".parse::<MonodromyWord>().is_err());
        let empty: MonodromyWord = "".parse().unwrap();
        let p = word_to_path(&empty, B);
        assert!(p.is_empty());
        assert_eq!(p.basepoint.to_f64(), (0.5, 0.0));
        let p = word_to_path(&"s0 s1".parse().unwrap(), B);
        assert_eq!(p.segments.len(), 2);
        p.validate(&PUNCTURES, 1e-3).unwrap();
    }

    #[test]
    fn invert_and_compose() {
        let p = word_to_path(&"s0 s1^-1".parse().unwrap(), B);
        assert_eq!(p.invert().invert(), p);
        let q = p.compose(&p.invert()).unwrap();
        q.validate(&PUNCTURES, 1e-3).unwrap();
        let far = Path::new(Complex::from_f64(3.0, 0.0, B));
        assert!(matches!(p.compose(&far), Err(Error::Discontinuity(_))));
    }

    #[test]
    fn clearance_rule() {
        let bad = Path::at_half(B).line_to(Complex::from_f64(1.0, 0.0, B));
        assert!(matches!(bad.validate(&PUNCTURES, 1e-3), Err(Error::SingularityProximity { .. })));
        let ok = Path::at_half(B).line_to(Complex::from_f64(0.99, 0.0, B));
        ok.validate(&PUNCTURES, 1e-3).unwrap();
        let grazing = Path::new(Complex::from_f64(1.0, -0.5, B)).line_to(Complex::from_f64(1.0 + 1e-9, 0.5, B));
        assert!(grazing.validate(&PUNCTURES, 1e-3).is_err());
    }

    #[test]
    fn discontinuity_detected() {
        let segs = vec![
            PathSegment::line(Complex::from_f64(0.5, 0.0, B), Complex::from_f64(0.5, 1.0, B)),
            PathSegment::line(Complex::from_f64(0.6, 1.0, B), Complex::from_f64(0.5, 0.0, B)),
        ];
        assert_eq!(Path::from_segments(Complex::from_f64(0.5, 0.0, B), segs), Err(Error::Discontinuity(1)));
    }

    #[test]
    fn file_round_trip() {
        let text = "# two loops\nbasepoint 0.5 0\narc 0 0 0.5 0 2pi\narc 1 0 0.5 pi 3pi\nline 0.5 0 0.5 0.25\n";
        let p = Path::parse(text, B).unwrap();
        assert_eq!(p.segments.len(), 3);
        let again = Path::parse(&p.to_file_string(), B).unwrap();
        for (a, b) in p.segments.iter().zip(&again.segments) {
            assert!((&a.end() - &b.end()).abs_f64() < 1e-70);
        }
        assert!(Path::parse("line 0 0 1 1\n", B).is_err());
        assert!(Path::parse("basepoint 0.5 0\ncurve 1\n", B).is_err());
        assert!(matches!(Path::parse("basepoint 0.5 0\nline 0 0 1 1\n", B), Err(Error::Discontinuity(0))));
        // a 20-digit angle leaves a gap that gets bridged
        let p = Path::parse("basepoint 0.5 0\narc 1 0 0.5 3.1415926535897932385 9.4247779607693797154\n", B).unwrap();
        assert_eq!(p.segments.len(), 3);
        assert!(p.check_continuity().is_ok() && p.is_closed());
    }

    #[test]
    fn arc_distance() {
        let seg = PathSegment::arc(Complex::zero(B), Real::from_f64(1.0, B), Real::zero(B), Real::pi(B).mul_2exp(-1));
        assert!((seg.distance_to((2.0, 2.0)) - (8f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!((seg.distance_to((-2.0, 0.0)) - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(seg.distance_to((0.0, 0.0)), 1.0);
    }
}
