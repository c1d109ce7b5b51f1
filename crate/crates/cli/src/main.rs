use std::io::{BufRead, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use seqlogic::casebook::{self, SuiteOptions};
use seqlogic::logic::{parse_script, Located};
use seqlogic::oracles::{self, Modulus};
use seqlogic::{Error, Limits, Outcome, Session, Verdict};

/// Like `println!`, but a closed stdout is not an error.
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

mod codes {
    pub const MISMATCH: u8 = 1;
    pub const PARSE: u8 = 3;
    pub const UNKNOWN: u8 = 4;
    pub const BUDGET: u8 = 5;
    pub const OTHER: u8 = 6;
}

#[derive(Parser)]
#[command(name = "seqlogic", version, about = "Decide first-order statements about automatic sequences")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Config {
    /// State budget for any single construction.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_states: u64,
    /// Seconds allowed per command.
    #[arg(long, global = true, default_value_t = 600, value_parser = clap::value_parser!(u64).range(1..))]
    timeout: u64,
    /// Directory searched for NAME.txt word files (repeatable).
    #[arg(long = "words", global = true, value_name = "DIR")]
    words: Vec<PathBuf>,
    /// Print timings.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    #[value(name = "TRUE", alias = "true")]
    True,
    #[value(name = "FALSE", alias = "false")]
    False,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a script and print each outcome.
    Run {
        script: PathBuf,
        /// Fail unless every closed eval has this verdict.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Read commands from standard input.
    Repl,
    /// Run the shipped casebook.
    Suite {
        /// Case name or tag.
        #[arg(long)]
        filter: Option<String>,
        /// Include stretch cases.
        #[arg(long)]
        stretch: bool,
        #[arg(long)]
        threads: Option<usize>,
        /// List the cases instead of running them.
        #[arg(long)]
        list: bool,
    },
    /// Print a brute-force sequence or report.
    Oracle {
        name: String,
        params: Vec<u64>,
        #[arg(long, default_value_t = 100)]
        limit: u64,
        /// Fixed modulus for `periodicity` (default: search).
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Write the coefficient automaton for F_q in text form.
    GenCo {
        q: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a predicate, result or word to a file.
    Export {
        name: String,
        #[arg(long, conflicts_with = "txt", required_unless_present = "txt")]
        dot: bool,
        #[arg(long)]
        txt: bool,
        path: PathBuf,
        /// Script defining the name.
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// State and transition counts of a predicate, result or word.
    Inspect {
        name: String,
        #[arg(long)]
        script: Option<PathBuf>,
    },
}

impl Config {
    fn limits(&self) -> Limits {
        Limits {
            max_states: usize::try_from(self.max_states).unwrap_or(usize::MAX),
            timeout: Some(Duration::from_secs(self.timeout)),
        }
    }

    fn session(&self) -> Session {
        let mut s = Session::new();
        s.set_limits(self.limits());
        for d in &self.words {
            s.add_word_dir(d);
        }
        if let Some(env) = std::env::var_os("SEQLOGIC_WORDS") {
            for d in std::env::split_paths(&env) {
                s.add_word_dir(d);
            }
        }
        s
    }
}

fn code_for(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::TwoVariableOperator { .. } | Error::Format { .. } => codes::PARSE,
        Error::UnknownWord(_) | Error::UnknownPredicate(_) | Error::UnknownName(_) => codes::UNKNOWN,
        Error::StateLimit { .. } | Error::Timeout => codes::BUDGET,
        _ => codes::OTHER,
    }
}

/// Error carrying the exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(code_for(&e), e.to_string())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(inner) => Failure(code_for(inner), format!("{e:#}")),
            None => Failure(codes::OTHER, format!("{e:#}")),
        }
    }
}

type Res<T = ()> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

fn dispatch(cli: &Cli) -> Res {
    let cfg = &cli.config;
    match &cli.command {
        Cmd::Run { script, expect } => run(cfg, script, *expect),
        Cmd::Repl => repl(cfg),
        Cmd::Suite {
            filter,
            stretch,
            threads,
            list,
        } => suite(cfg, filter.clone(), *stretch, *threads, *list),
        Cmd::Oracle {
            name,
            params,
            limit,
            modulus,
        } => oracle(name, params, *limit, *modulus),
        Cmd::GenCo { q, output } => gen_co(*q, output.as_deref()),
        Cmd::Export {
            name,
            dot,
            path,
            script,
            ..
        } => {
            let mut s = prepared(cfg, script.as_deref())?;
            let text = s.render(name, *dot)?;
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            out!("{name}: written to {}", path.display());
            Ok(())
        }
        Cmd::Inspect { name, script } => inspect(cfg, name, script.as_deref()),
    }
}

fn load_script(path: &Path) -> Res<Vec<Located>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_script(&text).map_err(|e| Failure(code_for(&e), format!("{}: {e}", path.display())))
}

fn session_for(cfg: &Config, script: &Path) -> Session {
    let mut s = cfg.session();
    if let Some(dir) = script.parent() {
        s.set_base_dir(dir);
        s.add_word_dir(dir);
    }
    s
}

/// A session after running `script`, if any.
fn prepared(cfg: &Config, script: Option<&Path>) -> Res<Session> {
    let Some(path) = script else {
        return Ok(cfg.session());
    };
    let mut s = session_for(cfg, path);
    for c in load_script(path)? {
        s.run(&c.command).map_err(|e| Failure(code_for(&e), format!("line {}: {e}", c.line)))?;
    }
    Ok(s)
}

/// Runs commands, printing outcomes. Budget and timeout errors abort the
/// command only; any other error stops the run.
fn execute(cfg: &Config, s: &mut Session, cmds: &[Located], expect: Option<Expect>) -> Res {
    let mut worst: Option<Failure> = None;
    for c in cmds {
        let start = Instant::now();
        match s.run(&c.command) {
            Ok(o) => {
                if cfg.verbose {
                    out!("{o}  [{:.2?}]", start.elapsed());
                } else {
                    out!("{o}");
                }
                if let (Some(want), Outcome::Evaluated(r)) = (expect, &o) {
                    let want = match want {
                        Expect::True => Verdict::True,
                        Expect::False => Verdict::False,
                    };
                    if r.verdict.is_some_and(|v| v != want) && worst.is_none() {
                        worst = Some(Failure(codes::MISMATCH, format!("{}: expected {want}", r.predicate.name)));
                    }
                }
            }
            Err(e) => {
                let code = code_for(&e);
                out!("{}: error: {e}", c.command.name());
                let f = Failure(code, format!("line {}: {e}", c.line));
                if code != codes::BUDGET {
                    // a later failure caused by an aborted definition reports the abort
                    return Err(match worst {
                        Some(w) if w.0 == codes::BUDGET => w,
                        _ => f,
                    });
                }
                if worst.as_ref().is_none_or(|w| w.0 == codes::MISMATCH) {
                    worst = Some(f);
                }
            }
        }
    }
    std::io::stdout().flush().ok();
    worst.map_or(Ok(()), Err)
}

fn run(cfg: &Config, path: &Path, expect: Option<Expect>) -> Res {
    let cmds = load_script(path)?;
    let mut s = session_for(cfg, path);
    execute(cfg, &mut s, &cmds, expect)
}

fn repl(cfg: &Config) -> Res {
    let mut s = cfg.session();
    let stdin = std::io::stdin();
    let interactive = stdin.is_terminal();
    let mut buf = String::new();
    let mut failed = false;
    let prompt = |more: bool| {
        if interactive {
            eprint!("{}", if more { "... " } else { "> " });
        }
    };
    prompt(false);
    for line in stdin.lock().lines() {
        let line = line.context("reading standard input")?;
        buf.push_str(&line);
        buf.push('\n');
        let t = buf.trim();
        if t.is_empty() || t.starts_with('#') {
            buf.clear();
        } else if t.ends_with(':') {
            match parse_script(&buf) {
                Ok(cmds) => failed |= execute(cfg, &mut s, &cmds, None).is_err(),
                Err(e) => {
                    out!("error: {e}");
                    failed = true;
                }
            }
            buf.clear();
        }
        prompt(!buf.is_empty());
    }
    if failed {
        return Err(Failure(codes::OTHER, String::new()));
    }
    Ok(())
}

fn suite(cfg: &Config, filter: Option<String>, stretch: bool, threads: Option<usize>, list: bool) -> Res {
    if list {
        for c in casebook::cases() {
            if filter.as_deref().is_none_or(|f| c.matches(f)) {
                out!("{:<16} {:<28} {}", c.name, c.tags.join(","), c.topic);
            }
        }
        return Ok(());
    }
    let mut opts = SuiteOptions {
        filter,
        stretch,
        limits: cfg.limits(),
        ..SuiteOptions::default()
    };
    if let Some(t) = threads {
        opts.threads = t;
    }
    if let Some(f) = &opts.filter {
        if !casebook::cases().iter().any(|c| c.matches(f)) {
            return Err(Failure(codes::UNKNOWN, format!("no case or tag `{f}`")));
        }
    }
    let report = casebook::run_suite(&opts);
    out!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(Failure(codes::MISMATCH, String::new()))
    }
}

fn need(params: &[u64], n: usize, usage: &str) -> Res {
    if params.len() == n {
        Ok(())
    } else {
        Err(Failure(codes::PARSE, format!("usage: oracle {usage}")))
    }
}

fn lines(v: impl IntoIterator<Item = impl std::fmt::Display>) {
    let mut out = std::io::stdout().lock();
    for x in v {
        writeln!(out, "{x}").ok();
    }
}

fn oracle(name: &str, params: &[u64], limit: u64, modulus: Option<u64>) -> Res {
    let terms = limit as usize;
    match name {
        "upper-wythoff" => {
            need(params, 0, "upper-wythoff --limit N")?;
            lines(oracles::upper_wythoff(limit));
        }
        "unsums" => {
            need(params, 0, "unsums --limit N")?;
            lines(oracles::unsums(limit));
        }
        "unsum-gaps" => {
            need(params, 0, "unsum-gaps --limit N")?;
            lines(oracles::gaps(&oracles::unsums(limit)));
        }
        "palindromes" => {
            need(params, 0, "palindromes --limit N")?;
            let b = oracles::palindrome_blocks(&oracles::gaps(&oracles::unsums(limit)));
            for (w, sum) in b.words.iter().zip(b.digit_sums()) {
                let digits: String = w.iter().map(u64::to_string).collect();
                out!("{digits} {sum}");
            }
        }
        "fibonacci-word" => {
            need(params, 0, "fibonacci-word --limit N")?;
            lines(oracles::fibonacci_word(terms));
        }
        "anti-nacci" => {
            if params.is_empty() || params.len() > 2 {
                return Err(Failure(codes::PARSE, "usage: oracle anti-nacci K [J] --limit N".into()));
            }
            let k = params[0] as usize;
            if k < 2 {
                return Err(Failure(codes::PARSE, "K must be at least 2".into()));
            }
            let a = oracles::anti_nacci(k, terms);
            let j = params.get(1).map_or(k, |&j| j as usize);
            if j > k {
                return Err(Failure(codes::PARSE, format!("J must be at most {k}")));
            }
            lines(a.sequence(j).iter());
        }
        "remainder-bounds" => {
            need(params, 1, "remainder-bounds K --limit N")?;
            for (n, lo, hi) in oracles::remainder_bounds(params[0] as usize, terms) {
                out!("{n} {lo} {hi}");
            }
        }
        "kernel" => {
            need(params, 1, "kernel K --limit N")?;
            let k = params[0] as usize;
            let d = oracles::sum_defect(k, terms);
            let lens: Vec<usize> = [8, 4, 2, 1].iter().map(|f| terms / f).collect();
            for (l, c) in lens.iter().zip(oracles::kernel_evidence(&d, k, &lens)) {
                out!("{l} {c}");
            }
        }
        "subsumfree" => {
            need(params, 3, "subsumfree X Y Z --limit N")?;
            lines(oracles::subsumfree(params[0], params[1], params[2], terms));
        }
        "periodicity" => {
            need(params, 3, "periodicity X Y Z --limit N [--modulus M]")?;
            let seq = oracles::subsumfree(params[0], params[1], params[2], terms);
            let m = modulus.map_or(Modulus::Search(limit), Modulus::Fixed);
            match oracles::detect_periodicity(&seq, m) {
                Some(p) => out!("{p}"),
                None => out!("no periodicity found"),
            }
        }
        "co3-degrees" => {
            need(params, 0, "co3-degrees --limit N")?;
            lines(oracles::co3_all_nonzero_degrees(terms));
        }
        _ => return Err(Failure(codes::UNKNOWN, format!("unknown oracle `{name}`"))),
    }
    Ok(())
}

fn gen_co(q: u32, output: Option<&Path>) -> Res {
    let w = seqlogic::christol::co_word(q)?;
    let text = w.to_text();
    match output {
        Some(p) => {
            std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            out!("co{q}: {} states written to {}", w.dfao().states(), p.display());
        }
        None => std::io::stdout().lock().write_all(text.as_bytes()).context("writing output")?,
    }
    Ok(())
}

fn inspect(cfg: &Config, name: &str, script: Option<&Path>) -> Res {
    let mut s = prepared(cfg, script)?;
    if let Some(p) = s.predicate(name).or_else(|| s.result(name)) {
        let d = &p.dfa;
        out!("{name}({})", p.params.join(","));
        out!("states: {}", d.states());
        out!("transitions: {}", d.transitions());
        out!("max_nonzero_symbols: {}", d.max_nonzero_symbols());
        return Ok(());
    }
    let w = s.word(name)?;
    let d = w.dfao();
    out!("{name}: word over {}, arity {}", w.system(), w.arity());
    out!("states: {}", d.states());
    out!("transitions: {}", d.transitions());
    out!("outputs: {:?}", d.output_values());
    Ok(())
}
