//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! The stretch case is attempted and reported but does not decide the
//! outcome; set `SEQLOGIC_SKIP_STRETCH=1` to leave it out.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use seqlogic::casebook::{self, CaseReport, Status, SuiteOptions, SuiteReport};

struct Criterion {
    id: u32,
    title: &'static str,
    cases: &'static [&'static str],
    /// Per-case wall-clock ceiling.
    within: Option<Duration>,
}

const MIN: Duration = Duration::from_secs(60);

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "Fibonacci word prefix palindromes",
        cases: &["prefixtest"],
        within: Some(MIN),
    },
    Criterion {
        id: 2,
        title: "unsum gap, marker and Fibonacci-word statements",
        cases: &["gap1", "gapmark2", "triplegap", "palindrome", "testUV", "testVW"],
        within: Some(Duration::from_secs(600)),
    },
    Criterion {
        id: 3,
        title: "unsums, gaps and palindromic blocks against the sieve",
        cases: &["gap1", "palindrome"],
        within: None,
    },
    Criterion {
        id: 4,
        title: "binomial parity",
        cases: &["fine"],
        within: None,
    },
    Criterion {
        id: 5,
        title: "co3 and its all-nonzero degrees",
        cases: &["co3", "co3no0"],
        within: None,
    },
    Criterion {
        id: 6,
        title: "co4 and its all-nonzero degrees",
        cases: &["co4", "co4no0"],
        within: None,
    },
    Criterion {
        id: 7,
        title: "co5 generation",
        cases: &["co5"],
        within: None,
    },
    Criterion {
        id: 8,
        title: "anti-Fibonacci, anti-Tribonacci and anti-Teranacci statements",
        cases: &["zaslavsky", "antitribonacci", "antiteranacci", "remainders"],
        within: None,
    },
    Criterion {
        id: 9,
        title: "sum-defect kernel evidence",
        cases: &["clergyman"],
        within: None,
    },
    Criterion {
        id: 10,
        title: "sum-free sequences",
        cases: &[
            "seq123", "seq134", "seq145", "isinG2", "isinG3", "isinG4", "isinG5", "isinG6",
            "isinG7", "isinG8", "isinG9", "isinG10", "seq148", "periodicity", "stephan",
        ],
        within: None,
    },
];

fn case_problem(report: Option<&CaseReport>, name: &str, within: Option<Duration>) -> Option<String> {
    let Some(r) = report else {
        return Some(format!("{name}: not run"));
    };
    match &r.status {
        Status::Fail(e) => Some(format!("{name}: {e}")),
        Status::Skipped => Some(format!("{name}: skipped")),
        Status::Pass => match within {
            Some(t) if r.elapsed > t => Some(format!("{name}: took {:.1?}", r.elapsed)),
            _ => None,
        },
    }
}

fn line(id: u32, ok: bool, title: &str, elapsed: Duration) {
    let mark = if ok { "PASS" } else { "FAIL" };
    println!("criterion {id:>2}: {mark} {title} [{elapsed:.1?}]");
}

fn check_criterion(c: &Criterion, suite: &SuiteReport) -> bool {
    let mut problems = Vec::new();
    let mut elapsed = Duration::ZERO;
    for name in c.cases {
        let r = suite.get(name);
        elapsed += r.map_or(Duration::ZERO, |r| r.elapsed);
        problems.extend(case_problem(r, name, c.within));
    }
    line(c.id, problems.is_empty(), c.title, elapsed);
    for p in &problems {
        println!("    {p}");
    }
    if c.id == 5 {
        if let Some(r) = suite.get("co3no0") {
            for n in r.notes.iter().filter(|n| n.contains("max_nonzero")) {
                println!("    {n}");
            }
        }
    }
    problems.is_empty()
}

fn stretch() {
    let Some(case) = casebook::case("co5no0") else {
        return;
    };
    if std::env::var_os("SEQLOGIC_SKIP_STRETCH").is_some() {
        println!("    co5no0: stretch case not attempted");
        return;
    }
    let r = casebook::run_case(&case, seqlogic::Limits::default());
    for l in r.to_string().lines() {
        println!("    {l}");
    }
}

fn properties() -> bool {
    let start = Instant::now();
    let mut problems = Vec::new();
    for system in common::SYSTEMS {
        if let Err(e) = common::arithmetic_exhaustive(system, 5000) {
            problems.push(e);
        }
    }
    problems.extend(common::automata_suite(1, 24).err());
    problems.extend(common::formula_suite(2, 24).err());
    line(
        11,
        problems.is_empty(),
        "engine properties",
        start.elapsed(),
    );
    for p in &problems {
        println!("    {p}");
    }
    problems.is_empty()
}

fn main() -> ExitCode {
    let suite = casebook::run_suite(&SuiteOptions::default());
    let mut ok = true;
    for c in CRITERIA {
        ok &= check_criterion(c, &suite);
        if c.id == 7 {
            stretch();
        }
    }
    ok &= properties();
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
