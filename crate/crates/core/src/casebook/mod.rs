//! The regression corpus: transcribed scripts, expected verdicts and paired
//! brute-force checks.
//!
//! Cases are listed in `data/cases/manifest.txt`. Each runs in a fresh
//! session, so the suite does not depend on order.

mod checks;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::automata::Verdict;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{Outcome, Session};

pub use checks::check_names;

const MANIFEST: &str = include_str!("../../data/cases/manifest.txt");

const FILES: &[(&str, &str)] = &[
    ("antiteranacci.txt", include_str!("../../data/cases/antiteranacci.txt")),
    ("antitribonacci.txt", include_str!("../../data/cases/antitribonacci.txt")),
    ("co3no0.txt", include_str!("../../data/cases/co3no0.txt")),
    ("co4no0.txt", include_str!("../../data/cases/co4no0.txt")),
    ("co5no0.txt", include_str!("../../data/cases/co5no0.txt")),
    ("fibword.txt", include_str!("../../data/cases/fibword.txt")),
    ("fine.txt", include_str!("../../data/cases/fine.txt")),
    ("gap1.txt", include_str!("../../data/cases/gap1.txt")),
    ("gapmark2.txt", include_str!("../../data/cases/gapmark2.txt")),
    ("isin-g.txt", include_str!("../../data/cases/isin-g.txt")),
    ("palindrome.txt", include_str!("../../data/cases/palindrome.txt")),
    ("subsum123.txt", include_str!("../../data/cases/subsum123.txt")),
    ("subsum134.txt", include_str!("../../data/cases/subsum134.txt")),
    ("subsum145.txt", include_str!("../../data/cases/subsum145.txt")),
    ("subsum148.txt", include_str!("../../data/cases/subsum148.txt")),
    ("testuv.txt", include_str!("../../data/cases/testuv.txt")),
    ("testvw.txt", include_str!("../../data/cases/testvw.txt")),
    ("triplegap.txt", include_str!("../../data/cases/triplegap.txt")),
    ("unsums.txt", include_str!("../../data/cases/unsums.txt")),
    ("zaslavsky.txt", include_str!("../../data/cases/zaslavsky.txt")),
];

/// A shipped script file by name.
pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Verdict(Verdict),
    /// Free-variable result with this many states.
    States(usize),
    Fingerprint(u64),
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Verdict(v) => write!(f, "{v}"),
            Expected::States(n) => write!(f, "states={n}"),
            Expected::Fingerprint(h) => write!(f, "fingerprint={h:016x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub name: String,
    /// What the case is about.
    pub topic: String,
    pub scripts: Vec<String>,
    pub substitutions: Vec<(String, String)>,
    /// Result names with their expected values.
    pub expect: Vec<(String, Expected)>,
    pub oracle: Option<String>,
    pub tags: Vec<String>,
}

impl Case {
    pub fn is_stretch(&self) -> bool {
        self.has_tag("stretch")
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    /// Whether `filter` names this case or one of its tags.
    pub fn matches(&self, filter: &str) -> bool {
        self.name == filter || self.has_tag(filter)
    }

    /// The concatenated scripts with substitutions applied.
    pub fn script(&self) -> Result<String> {
        let mut text = String::new();
        for s in &self.scripts {
            let body = file(s).ok_or_else(|| Error::UnknownName(s.clone()))?;
            text.push_str(body);
            if !text.ends_with('\n') {
                text.push('\n');
            }
        }
        for (from, to) in &self.substitutions {
            text = substitute(&text, from, to);
        }
        Ok(text)
    }
}

/// Replaces whole identifiers `from` by `to`.
fn substitute(text: &str, from: &str, to: &str) -> String {
    let ident = |c: char| c.is_ascii_alphanumeric() || c == '_';
    let mut out = String::with_capacity(text.len());
    let mut word = String::new();
    for c in text.chars().chain(std::iter::once('\0')) {
        if ident(c) {
            word.push(c);
            continue;
        }
        if !word.is_empty() {
            out.push_str(if word == from { to } else { &word });
            word.clear();
        }
        if c != '\0' {
            out.push(c);
        }
    }
    out
}

fn parse_expected(v: &str, line: usize) -> Result<Expected> {
    if let Some(n) = v.strip_prefix("states=") {
        return n
            .parse()
            .map(Expected::States)
            .map_err(|_| Error::format(line, format!("bad state count `{n}`")));
    }
    if let Some(h) = v.strip_prefix("fingerprint=") {
        return u64::from_str_radix(h, 16)
            .map(Expected::Fingerprint)
            .map_err(|_| Error::format(line, format!("bad fingerprint `{h}`")));
    }
    match v {
        "TRUE" => Ok(Expected::Verdict(Verdict::True)),
        "FALSE" => Ok(Expected::Verdict(Verdict::False)),
        _ => Err(Error::format(line, format!("bad expectation `{v}`"))),
    }
}

/// Parses a manifest of blank-line separated stanzas.
pub fn parse_manifest(text: &str) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    let mut cur: Option<Case> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.starts_with('#') {
            continue;
        }
        if l.is_empty() {
            cases.extend(cur.take());
            continue;
        }
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        let words: Vec<&str> = rest.split_whitespace().collect();
        if key == "case" {
            cases.extend(cur.take());
            cur = Some(Case {
                name: rest.to_string(),
                topic: String::new(),
                scripts: Vec::new(),
                substitutions: Vec::new(),
                expect: Vec::new(),
                oracle: None,
                tags: Vec::new(),
            });
            continue;
        }
        let c = cur
            .as_mut()
            .ok_or_else(|| Error::format(line, "field outside a case"))?;
        match (key, words.as_slice()) {
            ("topic", _) => c.topic = rest.to_string(),
            ("script", fs) if !fs.is_empty() => {
                c.scripts.extend(fs.iter().map(|s| s.to_string()))
            }
            ("subst", [from, to]) => c.substitutions.push((from.to_string(), to.to_string())),
            ("expect", [name, v]) => c.expect.push((name.to_string(), parse_expected(v, line)?)),
            ("oracle", [id]) => c.oracle = Some(id.to_string()),
            ("tags", ts) => c.tags.extend(ts.iter().map(|s| s.to_string())),
            _ => return Err(Error::format(line, format!("bad field `{l}`"))),
        }
    }
    cases.extend(cur);
    Ok(cases)
}

/// The shipped cases.
pub fn cases() -> Vec<Case> {
    parse_manifest(MANIFEST).expect("shipped manifest parses")
}

pub fn case(name: &str) -> Option<Case> {
    cases().into_iter().find(|c| c.name == name)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skipped,
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub name: String,
    pub stretch: bool,
    pub status: Status,
    /// Observed values, oracle notes.
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match &self.status {
            Status::Pass => "PASS",
            Status::Fail(_) => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(f, "{status} {} [{:.2?}]", self.name, self.elapsed)?;
        if let Status::Fail(why) = &self.status {
            write!(f, "\n    {why}")?;
        }
        for n in &self.notes {
            write!(f, "\n    {n}")?;
        }
        Ok(())
    }
}

fn compare(
    case: &Case,
    outcomes: &[Outcome],
    notes: &mut Vec<String>,
) -> std::result::Result<(), String> {
    for (name, want) in &case.expect {
        let found = outcomes.iter().rev().find_map(|o| match o {
            Outcome::Evaluated(r) if r.predicate.name == *name => Some(r),
            _ => None,
        });
        let r = found.ok_or_else(|| format!("{name}: not evaluated"))?;
        let ok = match want {
            Expected::Verdict(v) => r.verdict == Some(*v),
            Expected::States(n) => r.verdict.is_none() && r.predicate.dfa.states() == *n,
            Expected::Fingerprint(h) => r.predicate.dfa.fingerprint() == *h,
        };
        let got = match r.verdict {
            Some(v) => v.to_string(),
            None => format!(
                "states={}, fingerprint={:016x}",
                r.predicate.dfa.states(),
                r.predicate.dfa.fingerprint()
            ),
        };
        if !ok {
            let mut why = format!("{name}: expected {want}, got {got}");
            if let Some(c) = &r.counterexample {
                why.push_str(&format!(" (counterexample: {c})"));
            }
            if let Some(w) = &r.witness {
                why.push_str(&format!(" (witness: {w})"));
            }
            return Err(why);
        }
        notes.push(format!("{name}: {got}"));
    }
    Ok(())
}

/// Runs one case in a fresh session.
pub fn run_case(case: &Case, limits: Limits) -> CaseReport {
    let start = Instant::now();
    let mut notes = Vec::new();
    let result = (|| -> std::result::Result<(), String> {
        let mut session = Session::new();
        session.set_limits(limits);
        if !case.scripts.is_empty() {
            let text = case.script().map_err(|e| e.to_string())?;
            let outcomes = session.run_script(&text).map_err(|e| e.to_string())?;
            compare(case, &outcomes, &mut notes)?;
        }
        if let Some(id) = &case.oracle {
            notes.extend(checks::run(id, case, &mut session)?);
        }
        Ok(())
    })();
    CaseReport {
        name: case.name.clone(),
        stretch: case.is_stretch(),
        status: match result {
            Ok(()) => Status::Pass,
            Err(e) => Status::Fail(e),
        },
        notes,
        elapsed: start.elapsed(),
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Case name or tag.
    pub filter: Option<String>,
    /// Run stretch cases too.
    pub stretch: bool,
    pub limits: Limits,
    pub threads: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            filter: None,
            stretch: false,
            limits: Limits::default(),
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    /// Failures of stretch cases do not count.
    pub fn passed(&self) -> bool {
        self.cases
            .iter()
            .all(|c| c.stretch || !matches!(c.status, Status::Fail(_)))
    }

    pub fn get(&self, name: &str) -> Option<&CaseReport> {
        self.cases.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            writeln!(f, "{c}")?;
        }
        let count = |p: fn(&Status) -> bool| self.cases.iter().filter(|c| p(&c.status)).count();
        write!(
            f,
            "{} passed, {} failed, {} skipped",
            count(|s| *s == Status::Pass),
            count(|s| matches!(s, Status::Fail(_))),
            count(|s| *s == Status::Skipped)
        )
    }
}

/// Runs the selected cases, in parallel, reporting in manifest order.
pub fn run_suite(opts: &SuiteOptions) -> SuiteReport {
    let selected: Vec<Case> = cases()
        .into_iter()
        .filter(|c| opts.filter.as_deref().is_none_or(|f| c.matches(f)))
        .collect();
    let slots: Mutex<Vec<Option<CaseReport>>> = Mutex::new(vec![None; selected.len()]);
    let next = AtomicUsize::new(0);
    let explicit = |c: &Case| opts.filter.as_deref() == Some(c.name.as_str());
    std::thread::scope(|s| {
        for _ in 0..opts.threads.clamp(1, selected.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(c) = selected.get(i) else { break };
                let report = if c.is_stretch() && !opts.stretch && !explicit(c) {
                    CaseReport {
                        name: c.name.clone(),
                        stretch: true,
                        status: Status::Skipped,
                        notes: Vec::new(),
                        elapsed: Duration::ZERO,
                    }
                } else {
                    run_case(c, opts.limits)
                };
                slots.lock().unwrap()[i] = Some(report);
            });
        }
    });
    SuiteReport {
        cases: slots.into_inner().unwrap().into_iter().flatten().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_is_complete() {
        let cs = cases();
        let known = check_names();
        for c in &cs {
            assert!(!c.topic.is_empty(), "{}", c.name);
            assert!(c.scripts.iter().all(|s| file(s).is_some()), "{}", c.name);
            if let Some(o) = &c.oracle {
                assert!(known.contains(&o.as_str()), "{o}");
            }
            assert!(!c.expect.is_empty() || c.oracle.is_some(), "{}", c.name);
        }
        let mut names: Vec<&str> = cs.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), cs.len());
    }

    #[test]
    fn every_script_parses() {
        for c in cases() {
            let text = c.script().unwrap();
            crate::logic::parse_script(&text).unwrap_or_else(|e| panic!("{}: {e}", c.name));
        }
    }

    #[test]
    fn substitution_is_whole_word() {
        assert_eq!(substitute("isinG(g,z) g+4 g_1", "g", "7"), "isinG(7,z) 7+4 g_1");
    }

    #[test]
    fn manifest_errors() {
        assert!(parse_manifest("topic x\n").is_err());
        assert!(parse_manifest("case a\nexpect x MAYBE\n").is_err());
        assert!(parse_manifest("case a\nbogus 1\n").is_err());
        let cs = parse_manifest("case a\nexpect p states=4\n\ncase b\ntags x stretch\n").unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].expect[0].1, Expected::States(4));
        assert!(cs[1].is_stretch());
    }
}
