//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Each criterion is checked through the public API with the seeded suites
//! at full size and 256-bit working precision. One check is a known failure
//! (see `KNOWN_FAILURES`); it is reported as FAIL, and the process exits
//! nonzero if any other check fails or if that one unexpectedly passes.

use std::process::ExitCode;
use std::time::Instant;

use polylog::suites::{run_suite, Check};
use polylog::PrecisionConfig;

const SEED: u64 = 20240611;

/// (criterion, check label, reason)
const KNOWN_FAILURES: [(u32, &str, &str); 1] = [(
    8,
    "wedge map kills five-term",
    "the five-term orientation used maps to (-1)^(x/y), a 2-torsion class, not 0",
)];

struct Criterion {
    id: u32,
    title: &'static str,
    suites: &'static [&'static str],
    budget_s: Option<f64>,
}

const CRITERIA: [Criterion; 9] = [
    Criterion { id: 1, title: "monodromy exactness", suites: &["monodromy"], budget_s: Some(60.0) },
    Criterion { id: 2, title: "zeta recovery", suites: &["zeta"], budget_s: Some(120.0) },
    Criterion { id: 3, title: "five-term suite", suites: &["five-term"], budget_s: None },
    Criterion { id: 4, title: "single-valuedness", suites: &["single-valued"], budget_s: None },
    Criterion { id: 5, title: "Catalan and zeta(3)", suites: &["constants"], budget_s: None },
    Criterion { id: 6, title: "Chen laws", suites: &["chen"], budget_s: None },
    Criterion { id: 7, title: "regulator", suites: &["regulator"], budget_s: None },
    Criterion { id: 8, title: "exact algebra", suites: &["exact"], budget_s: None },
    Criterion { id: 9, title: "volume", suites: &["volume"], budget_s: None },
];

fn main() -> ExitCode {
    let prec = PrecisionConfig::default();
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    let mut unexpected: Vec<String> = Vec::new();
    for c in CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let start = Instant::now();
        let mut checks: Vec<Check> = Vec::new();
        let mut error = None;
        for s in c.suites {
            match run_suite(s, SEED, 1.0, &prec) {
                Ok(r) => checks.extend(r.checks),
                Err(e) => error = Some(format!("{s}: {e}")),
            }
        }
        let secs = start.elapsed().as_secs_f64();
        for ch in &checks {
            println!("    {ch}");
        }
        let in_budget = c.budget_s.is_none_or(|b| secs < b);
        let ok = error.is_none() && checks.iter().all(Check::passed) && in_budget;
        let budget = c.budget_s.map(|b| format!(" (budget {b:.0} s)")).unwrap_or_default();
        let mut notes = Vec::new();
        if let Some(e) = &error {
            notes.push(format!("error: {e}"));
        }
        if !in_budget {
            notes.push("over time budget".to_string());
        }
        if error.is_some() || !in_budget {
            unexpected.push(format!("criterion {}: {}", c.id, notes.join("; ")));
        }
        for ch in &checks {
            let known = KNOWN_FAILURES.iter().find(|k| k.0 == c.id && k.1 == ch.label);
            match (ch.passed(), known) {
                (false, Some(k)) => notes.push(format!("known failure '{}': {}", k.1, k.2)),
                (false, None) => unexpected.push(format!("criterion {}: '{}' failed", c.id, ch.label)),
                (true, Some(k)) => unexpected.push(format!("criterion {}: known failure '{}' passed", c.id, k.1)),
                (true, None) => {}
            }
        }
        let notes = if notes.is_empty() { String::new() } else { format!(" ({})", notes.join("; ")) };
        println!(
            "criterion {}: {} {} [{secs:.1} s{budget}]{notes}",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.title
        );
        if !ok {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("unexpected: {u}");
        }
        ExitCode::FAILURE
    }
}
