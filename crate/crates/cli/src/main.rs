//! `polylog` command-line front end.

mod output;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polylog::bloch::{
    d2_eval, five_term_element, parse_points, polyhedron_check, tetra_volume, wedge_map, BlochCombo, ProjectivePoint,
};
use polylog::hopf::{lyndon_count, quotient_dimension, quotient_relation_basis, rep_exact};
use polylog::itint::{iterated_integral, FormWord};
use polylog::monodromy::{limit_mhs, monodromy_exact, monodromy_numeric, Puncture};
use polylog::polylog::{d2, d3, lambda_along, li_value, li_row};
use polylog::regulator::{
    heisenberg_holonomy, parse_rational, steinberg_residual, tame_symbol, RationalFunction, ValuationPoint,
};
use polylog::suites::{run_suite, SUITE_NAMES};
use polylog::{Complex, Error, MonodromyWord, Path, PrecisionConfig, Real};

use output::{Annotation, Format, Table};

#[derive(Parser, Debug)]
#[command(name = "polylog", version, about = "Classical polylogarithms: branches, monodromy, D2/D3, regulators")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Working precision in bits.
    #[arg(long, global = true, env = "POLYLOG_BITS", default_value_t = 256)]
    bits: u32,
    /// Absolute output tolerance.
    #[arg(long, global = true, default_value_t = 1e-30)]
    tol: f64,
    /// Order n of the polylogarithm system.
    #[arg(long, global = true, default_value_t = 6)]
    n: usize,
    /// Truncation degree m for series and Lie checks.
    #[arg(long, global = true, default_value_t = 6)]
    m: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Output format (default: table, csv for d2-grid).
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Table,
    Csv,
    JsonLines,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Branch value of Li_k at x (principal, or along --path).
    Eval {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long)]
        path: Option<String>,
    },
    /// Bloch-Wigner dilogarithm D2(x).
    D2 {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Single-valued trilogarithm D3(x).
    D3 {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// D2 on a rectangular grid. Columns: re, im, d2.
    D2Grid {
        /// `lo:hi`
        #[arg(long, allow_hyphen_values = true)]
        re_range: String,
        #[arg(long, allow_hyphen_values = true)]
        im_range: String,
        #[arg(long)]
        step: f64,
    },
    /// Monodromy matrix of a word in s0, s1 (e.g. "s0 s1^-1").
    Monodromy {
        #[arg(long)]
        word: String,
        /// Also transport numerically and report the deviation.
        #[arg(long)]
        numeric: bool,
    },
    /// Limit period matrix at a puncture.
    LimitMhs {
        #[arg(long)]
        at: String,
    },
    /// Iterated integral of a comma separated list of forms along a path file.
    Itint {
        #[arg(long)]
        forms: String,
        #[arg(long)]
        path: String,
    },
    /// Tame symbol of two rational functions at a point.
    Tame {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Dilogarithm regulator holonomy of (f, g) around a closed path.
    Holonomy {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        path: String,
    },
    /// Holonomy of (1 - t, t) around a closed path.
    Steinberg {
        #[arg(long)]
        path: String,
    },
    /// Image of a rational Bloch combination under x -> x ^ (1 - x).
    BlochWedge {
        #[arg(long)]
        combo: String,
    },
    /// Five-term element at rational (x, y): terms, wedge image, D2 sum.
    FiveTerm {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Ideal tetrahedron volume (4 points) or polyhedron check (5 points).
    Volume {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Lyndon counts and the relation quotient up to a degree.
    LieCheck {
        #[arg(long)]
        degree: usize,
    },
    /// Run seeded invariant suites.
    Selftest {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Fraction of the full case counts to run.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

/// Failures mapped to exit codes.
enum Failure {
    Input(String),
    Numeric(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::NonConvergence(_) | Error::PrecisionTooLow { .. } => Failure::Numeric(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

type CliResult = std::result::Result<String, Failure>;

struct Ctx {
    prec: PrecisionConfig,
    run: RunConfig,
    format: Format,
}

impl Ctx {
    fn bits(&self) -> u32 {
        self.prec.bits()
    }

    fn numeric(&self) -> Annotation {
        Annotation::Numeric { bits: self.bits(), tol: self.prec.target_tol }
    }

    fn digits(&self) -> usize {
        self.prec.tol_digits() as usize
    }

    fn real(&self, v: &Real) -> String {
        output::fmt_real(v, self.prec.target_tol, self.digits())
    }

    fn complex(&self, v: &Complex) -> String {
        output::fmt_complex(v, self.prec.target_tol, self.digits())
    }

    fn parse_complex(&self, s: &str) -> std::result::Result<Complex, Failure> {
        Complex::parse(s, self.bits()).ok_or_else(|| Failure::Input(format!("bad complex literal '{s}'")))
    }

    fn read_path(&self, file: &str) -> std::result::Result<Path, Failure> {
        Ok(Path::parse(&fs::read_to_string(file)?, self.bits())?)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let prec = match PrecisionConfig::new(cli.run.bits, cli.run.tol) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let default = if matches!(cli.cmd, Cmd::D2Grid { .. }) { Format::Csv } else { Format::Table };
    let format = match cli.run.format {
        Some(FormatArg::Table) => Format::Table,
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::JsonLines) => Format::JsonLines,
        None => default,
    };
    let ctx = Ctx { prec, run: cli.run.clone(), format };
    match dispatch(&ctx, &cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(out)) => {
            print!("{out}");
            ExitCode::from(3)
        }
    }
}

fn dispatch(ctx: &Ctx, cmd: &Cmd) -> CliResult {
    match cmd {
        Cmd::Eval { k, x, path } => eval(ctx, *k, x.as_deref(), path.as_deref()),
        Cmd::D2 { x } => single_valued(ctx, x, 2),
        Cmd::D3 { x } => single_valued(ctx, x, 3),
        Cmd::D2Grid { re_range, im_range, step } => d2_grid(ctx, re_range, im_range, *step),
        Cmd::Monodromy { word, numeric } => monodromy(ctx, word, *numeric),
        Cmd::LimitMhs { at } => limit(ctx, at),
        Cmd::Itint { forms, path } => {
            let word = FormWord::parse(forms, ctx.bits())?;
            let v = iterated_integral(&word, &ctx.read_path(path)?, &ctx.prec)?;
            Ok(Table::scalar("value", ctx.complex(&v)).render(ctx.format, &ctx.numeric()))
        }
        Cmd::Tame { f, g, at } => {
            let f = RationalFunction::parse(f)?;
            let g = RationalFunction::parse(g)?;
            let v = tame_symbol(&f, &g, &ValuationPoint::parse(at)?)?;
            Ok(Table::scalar("tame", v.to_string()).render(ctx.format, &Annotation::Exact))
        }
        Cmd::Holonomy { f, g, path } => {
            let f = RationalFunction::parse(f)?;
            let g = RationalFunction::parse(g)?;
            let v = heisenberg_holonomy(&f, &g, &ctx.read_path(path)?, &ctx.prec)?;
            let mut t = Table::new(&["quantity", "value"]);
            t.push(vec!["representative".into(), ctx.complex(&v.representative)]);
            t.push(vec!["normalized".into(), ctx.complex(&v.normalized)]);
            t.push(vec!["exp(I/2 pi i)".into(), ctx.complex(&v.exponential())]);
            Ok(t.render(ctx.format, &ctx.numeric()))
        }
        Cmd::Steinberg { path } => {
            let r = steinberg_residual(&ctx.read_path(path)?, &ctx.prec)?;
            Ok(Table::scalar("residual", format!("{r:.3e}")).render(ctx.format, &ctx.numeric()))
        }
        Cmd::BlochWedge { combo } => {
            let c = BlochCombo::parse(&fs::read_to_string(combo)?)?;
            Ok(wedge_table(&wedge_map(&c).to_string()).render(ctx.format, &Annotation::Exact))
        }
        Cmd::FiveTerm { x, y } => five_term(ctx, x, y),
        Cmd::Volume { points } => volume(ctx, points),
        Cmd::LieCheck { degree } => lie_check(ctx, *degree),
        Cmd::Selftest { suite, scale } => selftest(ctx, suite, *scale),
    }
}

fn eval(ctx: &Ctx, k: usize, x: Option<&str>, path: Option<&str>) -> CliResult {
    if k < 1 {
        return Err(Failure::Input("k must be at least 1".into()));
    }
    let value = match path {
        Some(file) => {
            let path = ctx.read_path(file)?;
            if let Some(x) = x {
                let x = ctx.parse_complex(x)?;
                let gap = (&x - &path.end_point()).abs_f64();
                if gap > ctx.prec.target_tol.sqrt() {
                    return Err(Failure::Input(format!("path ends {gap:.3e} away from x")));
                }
            }
            li_value(&lambda_along(&path, k, &ctx.prec)?, k)?
        }
        None => {
            let x = x.ok_or_else(|| Failure::Input("eval needs --x or --path".into()))?;
            li_row(&ctx.parse_complex(x)?, k, &ctx.prec)?.swap_remove(k)
        }
    };
    Ok(Table::scalar("value", ctx.complex(&value)).render(ctx.format, &ctx.numeric()))
}

fn single_valued(ctx: &Ctx, x: &str, which: u8) -> CliResult {
    let v = match ProjectivePoint::parse(x, ctx.bits())? {
        // D2(1/x) = -D2(x) and D3(1/x) = D3(x) give 0 at infinity
        ProjectivePoint::Infinity => Real::zero(ctx.bits()),
        ProjectivePoint::Finite(z) if which == 2 => d2(&z, &ctx.prec)?,
        ProjectivePoint::Finite(z) => d3(&z, &ctx.prec)?,
    };
    Ok(Table::scalar(if which == 2 { "d2" } else { "d3" }, ctx.real(&v)).render(ctx.format, &ctx.numeric()))
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), Failure> {
    let bad = || Failure::Input(format!("bad range '{s}' (expected lo:hi)"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = a.trim().parse().map_err(|_| bad())?;
    let hi: f64 = b.trim().parse().map_err(|_| bad())?;
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn d2_grid(ctx: &Ctx, re: &str, im: &str, step: f64) -> CliResult {
    if step.is_nan() || step <= 0.0 {
        return Err(Failure::Input("step must be positive".into()));
    }
    let (r0, r1) = parse_range(re)?;
    let (i0, i1) = parse_range(im)?;
    let nr = ((r1 - r0) / step + 1e-9).floor() as i64;
    let ni = ((i1 - i0) / step + 1e-9).floor() as i64;
    if (nr + 1) * (ni + 1) > 1_000_000 {
        return Err(Failure::Input("grid has more than 10^6 points".into()));
    }
    let mut t = Table::new(&["re", "im", "d2"]);
    for a in 0..=ni {
        for b in 0..=nr {
            let (x, y) = (r0 + b as f64 * step, i0 + a as f64 * step);
            let v = d2(&Complex::from_f64(x, y, ctx.bits()), &ctx.prec)?;
            t.push(vec![format!("{x}"), format!("{y}"), ctx.real(&v)]);
        }
    }
    Ok(t.render(ctx.format, &ctx.numeric()))
}

fn parse_word(s: &str) -> std::result::Result<MonodromyWord, Failure> {
    s.parse::<MonodromyWord>().map_err(Failure::from)
}

fn monodromy(ctx: &Ctx, word: &str, numeric: bool) -> CliResult {
    let w = parse_word(word)?;
    let n = ctx.run.n;
    let exact = monodromy_exact(&w, n);
    let mut t = Table::matrix(n + 1, |i, j| exact.get(i, j).to_string());
    if !numeric {
        return Ok(t.render(ctx.format, &Annotation::Exact));
    }
    let num = monodromy_numeric(&w, n, &ctx.prec)?;
    let dev = num.max_abs_diff(&exact.to_numeric(ctx.bits()));
    t.note(format!("numeric deviation {dev:.3e}"));
    Ok(t.render(ctx.format, &ctx.numeric()))
}

fn limit(ctx: &Ctx, at: &str) -> CliResult {
    let p = match at.trim() {
        "0" => Puncture::Zero,
        "1" => Puncture::One,
        other => return Err(Failure::Input(format!("--at must be 0 or 1, got '{other}'"))),
    };
    let r = limit_mhs(p, ctx.run.n, &ctx.prec)?;
    let mut t = Table::matrix(ctx.run.n + 1, |i, j| ctx.complex(r.matrix.get(i, j)));
    t.note(format!("tangent {}d/dz, t0 {:.1e}, residual {:.3e}", if r.tangent_sign < 0 { "-" } else { "" }, r.t0, r.residual));
    Ok(t.render(ctx.format, &ctx.numeric()))
}

fn wedge_table(w: &str) -> Table {
    Table::scalar("wedge", if w.is_empty() { "0".to_string() } else { w.to_string() })
}

fn five_term(ctx: &Ctx, x: &str, y: &str) -> CliResult {
    let x = parse_rational(x)?;
    let y = parse_rational(y)?;
    let e = five_term_element(&x, &y)?;
    let d = d2_eval(&e.to_complex(ctx.bits()), &ctx.prec)?;
    let mut t = Table::new(&["coeff", "argument"]);
    for (c, a) in &e.terms {
        t.push(vec![c.to_string(), a.to_string()]);
    }
    t.note(format!("wedge image: {}", wedge_map(&e)));
    t.note(format!("D2 sum: {}", ctx.real(&d)));
    Ok(t.render(ctx.format, &ctx.numeric()))
}

fn volume(ctx: &Ctx, points: &str) -> CliResult {
    let pts = parse_points(points, ctx.bits())?;
    match pts.len() {
        4 => {
            let v = tetra_volume(&[pts[0].clone(), pts[1].clone(), pts[2].clone(), pts[3].clone()], &ctx.prec)?;
            Ok(Table::scalar("volume", ctx.real(&v)).render(ctx.format, &ctx.numeric()))
        }
        5 => {
            let arr = [pts[0].clone(), pts[1].clone(), pts[2].clone(), pts[3].clone(), pts[4].clone()];
            let r = polyhedron_check(&arr, &ctx.prec)?;
            Ok(Table::scalar("residual", format!("{r:.3e}")).render(ctx.format, &ctx.numeric()))
        }
        k => Err(Failure::Input(format!("expected 4 or 5 points, got {k}"))),
    }
}

fn lie_check(ctx: &Ctx, degree: usize) -> CliResult {
    if degree < 1 {
        return Err(Failure::Input("degree must be at least 1".into()));
    }
    let mut t = Table::new(&["degree", "lyndon", "quotient", "relations", "rep_kills"]);
    let mut ok = true;
    for d in 1..=degree {
        let (rels, kills) = if d >= 3 {
            let basis = quotient_relation_basis(d)?;
            let kills = (1..=ctx.run.n.max(d)).all(|n| basis.iter().all(|e| rep_exact(e.series(), n).is_zero()));
            (basis.len().to_string(), kills)
        } else {
            ("0".to_string(), true)
        };
        ok &= kills;
        t.push(vec![
            d.to_string(),
            lyndon_count(d).to_string(),
            quotient_dimension(d)?.to_string(),
            rels,
            kills.to_string(),
        ]);
    }
    let out = t.render(ctx.format, &Annotation::Exact);
    if ok {
        Ok(out)
    } else {
        Err(Failure::Invariant(out))
    }
}

fn selftest(ctx: &Ctx, suite: &str, scale: f64) -> CliResult {
    if scale.is_nan() || scale <= 0.0 || scale > 1.0 {
        return Err(Failure::Input("scale must be in (0, 1]".into()));
    }
    let names: Vec<&str> = if suite == "all" { SUITE_NAMES.to_vec() } else { vec![suite] };
    let mut t = Table::new(&["suite", "check", "status", "cases", "failures", "worst", "tol"]);
    let mut ok = true;
    for name in names {
        let r = run_suite(name, ctx.run.seed, scale, &ctx.prec)?;
        for c in &r.checks {
            ok &= c.passed();
            t.push(vec![
                name.to_string(),
                c.label.clone(),
                if c.passed() { "PASS" } else { "FAIL" }.to_string(),
                c.cases.to_string(),
                c.failures.to_string(),
                format!("{:.3e}", c.worst),
                format!("{:.1e}", c.tol),
            ]);
        }
    }
    let out = t.render(ctx.format, &ctx.numeric());
    if ok {
        Ok(out)
    } else {
        Err(Failure::Invariant(out))
    }
}
