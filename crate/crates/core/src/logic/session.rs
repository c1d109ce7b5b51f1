use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use super::ast::{Command, Formula, Query};
use super::compile::{words_in, Compiler};
use super::parser::parse_script;
use crate::automata::{Dfa, Verdict};
use crate::error::{Error, Result};
use crate::limits::{with_limits, Limits};
use crate::numeration::NumerationSystem;
use crate::words::{self, Word, WordRegistry};

/// A named automaton with one track per parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    pub name: String,
    pub systems: Vec<NumerationSystem>,
    pub params: Vec<String>,
    pub dfa: Dfa,
}

impl Predicate {
    pub fn system(&self) -> NumerationSystem {
        self.systems.first().copied().unwrap_or(NumerationSystem::MSD_2)
    }

    /// Accepted tuples with every entry at most `bound`.
    pub fn enumerate(&self, bound: u64) -> Vec<Vec<u64>> {
        self.dfa.enumerate(self.system(), bound)
    }

    pub fn to_text(&self) -> String {
        self.dfa.to_text(Some(&self.systems))
    }
}

/// Values of named variables in a counterexample or witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment(pub Vec<(String, u64)>);

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, n)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}={n}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct EvalResult {
    /// Set when the formula is closed.
    pub verdict: Option<Verdict>,
    /// The automaton over the free variables (zero tracks when closed).
    pub predicate: Predicate,
    /// For a false statement starting with `A`: a smallest failing assignment.
    pub counterexample: Option<Assignment>,
    /// For a true statement starting with `E`: a smallest witness.
    pub witness: Option<Assignment>,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Defined(Predicate),
    Evaluated(EvalResult),
    Loaded { name: String, states: usize },
    Exported { name: String, path: PathBuf },
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Defined(p) => write!(
                f,
                "{}({}): {} states",
                p.name,
                p.params.join(","),
                p.dfa.states()
            ),
            Outcome::Evaluated(r) => {
                let p = &r.predicate;
                match r.verdict {
                    Some(v) => {
                        write!(f, "{}: {v}", p.name)?;
                        if let Some(c) = &r.counterexample {
                            write!(f, " (counterexample: {c})")?;
                        }
                        if let Some(w) = &r.witness {
                            write!(f, " (witness: {w})")?;
                        }
                        Ok(())
                    }
                    None => write!(
                        f,
                        "{}({}): {} states",
                        p.name,
                        p.params.join(","),
                        p.dfa.states()
                    ),
                }
            }
            Outcome::Loaded { name, states } => write!(f, "{name}: loaded, {states} states"),
            Outcome::Exported { name, path } => write!(f, "{name}: written to {}", path.display()),
        }
    }
}

/// Predicates, words and results shared by a sequence of commands.
#[derive(Clone, Debug)]
pub struct Session {
    default_system: NumerationSystem,
    predicates: HashMap<String, Arc<Predicate>>,
    results: HashMap<String, Arc<Predicate>>,
    words: WordRegistry,
    word_dirs: Vec<PathBuf>,
    base_dir: Option<PathBuf>,
    limits: Limits,
}

impl Default for Session {
    fn default() -> Self {
        Session::new()
    }
}

impl Session {
    pub fn new() -> Self {
        let isfib = Predicate {
            name: "isfib".into(),
            systems: vec![NumerationSystem::MsdFib],
            params: vec!["n".into()],
            dfa: NumerationSystem::isfib_dfa(),
        };
        Session {
            default_system: NumerationSystem::MSD_2,
            predicates: HashMap::from([("isfib".to_string(), Arc::new(isfib))]),
            results: HashMap::new(),
            words: WordRegistry::with_builtins(),
            word_dirs: Vec::new(),
            base_dir: None,
            limits: Limits::default(),
        }
    }

    pub fn set_limits(&mut self, limits: Limits) {
        self.limits = limits;
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Directories searched for `NAME.txt` when a word is not yet known.
    pub fn add_word_dir(&mut self, dir: impl Into<PathBuf>) {
        self.word_dirs.push(dir.into());
    }

    /// Directory that relative `load`/`export` paths resolve against.
    pub fn set_base_dir(&mut self, dir: impl Into<PathBuf>) {
        self.base_dir = Some(dir.into());
    }

    pub fn add_word(&mut self, word: Word) -> Result<()> {
        self.words.insert(word)
    }

    pub fn predicate(&self, name: &str) -> Option<&Predicate> {
        self.predicates.get(name).map(|p| p.as_ref())
    }

    pub fn result(&self, name: &str) -> Option<&Predicate> {
        self.results.get(name).map(|p| p.as_ref())
    }

    pub(crate) fn loaded_word(&self, name: &str) -> Option<&Word> {
        self.words.get_ref(name)
    }

    /// Looks a word up, loading it from the word directories or the shipped
    /// set on first use.
    pub fn word(&mut self, name: &str) -> Result<Arc<Word>> {
        if let Some(w) = self.words.get(name) {
            return Ok(w);
        }
        let mut found = None;
        for dir in &self.word_dirs {
            let path = dir.join(format!("{name}.txt"));
            if path.is_file() {
                found = Some(words::load_word(name, &path)?);
                break;
            }
        }
        let word = match found {
            Some(w) => w,
            None => words::shipped(name)?.ok_or_else(|| Error::UnknownWord(name.to_string()))?,
        };
        self.words.insert(word)?;
        Ok(self.words.get(name).expect("just inserted"))
    }

    fn resolve(&self, path: &str) -> PathBuf {
        let p = Path::new(path);
        match &self.base_dir {
            Some(b) if p.is_relative() => b.join(p),
            _ => p.to_path_buf(),
        }
    }

    /// Runs every command of a script, stopping at the first error.
    pub fn run_script(&mut self, src: &str) -> Result<Vec<Outcome>> {
        let cmds = parse_script(src)?;
        cmds.into_iter().map(|c| self.run(&c.command)).collect()
    }

    pub fn run(&mut self, cmd: &Command) -> Result<Outcome> {
        let limits = self.limits;
        with_limits(limits, || self.run_unlimited(cmd))
    }

    fn run_unlimited(&mut self, cmd: &Command) -> Result<Outcome> {
        match cmd {
            Command::Def { name, query } => {
                if self.predicates.contains_key(name) {
                    return Err(Error::Redefinition(name.clone()));
                }
                let p = self.compile(name, query)?;
                self.predicates.insert(name.clone(), Arc::new(p.clone()));
                Ok(Outcome::Defined(p))
            }
            Command::Eval { name, query } => {
                let r = self.eval(name, query)?;
                self.results
                    .insert(name.clone(), Arc::new(r.predicate.clone()));
                Ok(Outcome::Evaluated(r))
            }
            Command::Reg {
                name,
                systems,
                regex,
            } => {
                if self.predicates.contains_key(name) {
                    return Err(Error::Redefinition(name.clone()));
                }
                let dfa = crate::regex::compile(regex, systems)?;
                let p = Predicate {
                    name: name.clone(),
                    systems: systems.clone(),
                    params: (1..=systems.len()).map(|i| format!("_{i}")).collect(),
                    dfa,
                };
                self.predicates.insert(name.clone(), Arc::new(p.clone()));
                Ok(Outcome::Defined(p))
            }
            Command::Load { name, path } => {
                let w = words::load_word(name, &self.resolve(path))?;
                let states = w.dfao().states();
                self.words.insert(w)?;
                Ok(Outcome::Loaded {
                    name: name.clone(),
                    states,
                })
            }
            Command::Export { name, path } => {
                let path = self.resolve(path);
                let dot = path.extension().is_some_and(|e| e == "dot");
                let text = self.render(name, dot)?;
                std::fs::write(&path, text)?;
                Ok(Outcome::Exported {
                    name: name.clone(),
                    path,
                })
            }
        }
    }

    /// Text or Graphviz form of a predicate, result or word.
    pub fn render(&mut self, name: &str, dot: bool) -> Result<String> {
        if let Some(p) = self.predicates.get(name).or_else(|| self.results.get(name)) {
            return Ok(if dot { p.dfa.to_dot(name) } else { p.to_text() });
        }
        let w = self.word(name)?;
        Ok(if dot {
            w.dfao().to_dot(name)
        } else {
            w.to_text()
        })
    }

    fn prepare(&mut self, query: &Query) -> Result<NumerationSystem> {
        let mut names = Vec::new();
        words_in(&query.formula, &mut names);
        for w in names {
            self.word(&w)?;
        }
        Ok(query.system.unwrap_or(self.default_system))
    }

    /// Compiles a formula to a predicate over its free variables in order of
    /// first appearance.
    pub fn compile(&mut self, name: &str, query: &Query) -> Result<Predicate> {
        let system = self.prepare(query)?;
        let params = query.formula.free_vars();
        let rel = Compiler::new(self, system).formula(&query.formula)?;
        let dfa = rel.arrange(&params, system)?;
        Ok(Predicate {
            name: name.to_string(),
            systems: vec![system; params.len()],
            params,
            dfa,
        })
    }

    fn eval(&mut self, name: &str, query: &Query) -> Result<EvalResult> {
        let system = self.prepare(query)?;
        let f = &query.formula;
        let params = f.free_vars();
        if !params.is_empty() {
            let predicate = self.compile(name, query)?;
            return Ok(EvalResult {
                verdict: None,
                predicate,
                counterexample: None,
                witness: None,
            });
        }
        // peel the leading block of like quantifiers to report an assignment
        let (forall, vars, body) = leading_block(f);
        let mut c = Compiler::new(self, system);
        let (truth, assignment) = match forall {
            None => (c.formula(f)?.dfa().decide().is_true(), None),
            Some(forall) => {
                let body = c.formula(body)?;
                let target = if forall { body.not(system)? } else { body };
                let found = target.arrange(&vars, system)?;
                let sample = found.shortest_accepted().map(|w| {
                    let a = found.alphabet();
                    Assignment(
                        vars.iter()
                            .enumerate()
                            .map(|(t, v)| {
                                let digits: Vec<u32> = w.iter().map(|&s| a.digit(s, t)).collect();
                                (v.clone(), system.decode(&digits))
                            })
                            .collect(),
                    )
                });
                (sample.is_some() != forall, sample)
            }
        };
        let (counterexample, witness) = match forall {
            Some(true) if !truth => (assignment, None),
            Some(false) if truth => (None, assignment),
            _ => (None, None),
        };
        let dfa = crate::relation::Relation::constant(truth, system).into_dfa();
        Ok(EvalResult {
            verdict: Some(Verdict::from_bool(truth)),
            predicate: Predicate {
                name: name.to_string(),
                systems: Vec::new(),
                params: Vec::new(),
                dfa,
            },
            counterexample,
            witness,
        })
    }
}

fn leading_block(f: &Formula) -> (Option<bool>, Vec<String>, &Formula) {
    let mut vars = Vec::new();
    let mut kind = None;
    let mut cur = f;
    while let Formula::Quant { forall, vars: vs, body } = cur {
        if kind.is_some_and(|k| k != *forall) {
            break;
        }
        kind = Some(*forall);
        for v in vs {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        cur = body;
    }
    (kind, vars, cur)
}
