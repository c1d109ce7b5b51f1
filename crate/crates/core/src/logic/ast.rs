use std::fmt;

use crate::automata::BoolOp;
use crate::numeration::NumerationSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Num(u64),
    Var(String),
    Add(Box<Term>, Box<Term>),
    /// Natural subtraction; undefined when the right side is larger.
    Sub(Box<Term>, Box<Term>),
    Mul(u64, Box<Term>),
    /// Floor division by a positive numeral.
    Div(Box<Term>, u64),
    Index(String, Vec<Term>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Rel(RelOp, Term, Term),
    /// `W[i]..[j] = @c`, or `!= @c` when `negated`.
    Letter {
        word: String,
        index: Vec<Term>,
        value: u32,
        negated: bool,
    },
    Call(String, Vec<Term>),
    Not(Box<Formula>),
    Bin(BoolOp, Box<Formula>, Box<Formula>),
    Quant {
        forall: bool,
        vars: Vec<String>,
        body: Box<Formula>,
    },
}

/// A formula together with its numeration context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub system: Option<NumerationSystem>,
    pub formula: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Def { name: String, query: Query },
    Eval { name: String, query: Query },
    Reg {
        name: String,
        systems: Vec<NumerationSystem>,
        regex: String,
    },
    /// Loads a word from an automaton file.
    Load { name: String, path: String },
    /// Writes a predicate, result or word to a file (`.dot` for Graphviz).
    Export { name: String, path: String },
}

impl Command {
    pub fn name(&self) -> &str {
        match self {
            Command::Def { name, .. }
            | Command::Eval { name, .. }
            | Command::Reg { name, .. }
            | Command::Load { name, .. }
            | Command::Export { name, .. } => name,
        }
    }
}

impl Term {
    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Term, b: Term) -> Term {
        Term::Sub(Box::new(a), Box::new(b))
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    fn free_vars(&self, bound: &[String], out: &mut Vec<String>) {
        match self {
            Term::Num(_) => {}
            Term::Var(v) => {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Add(a, b) | Term::Sub(a, b) => {
                a.free_vars(bound, out);
                b.free_vars(bound, out);
            }
            Term::Mul(_, t) | Term::Div(t, _) => t.free_vars(bound, out),
            Term::Index(_, ix) => ix.iter().for_each(|t| t.free_vars(bound, out)),
        }
    }
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn bin(op: BoolOp, a: Formula, b: Formula) -> Formula {
        Formula::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn forall(vars: &[&str], body: Formula) -> Formula {
        Formula::Quant {
            forall: true,
            vars: vars.iter().map(|v| v.to_string()).collect(),
            body: Box::new(body),
        }
    }

    pub fn exists(vars: &[&str], body: Formula) -> Formula {
        Formula::Quant {
            forall: false,
            vars: vars.iter().map(|v| v.to_string()).collect(),
            body: Box::new(body),
        }
    }

    /// Free variables in order of first appearance.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Formula::Rel(_, a, b) => {
                a.free_vars(bound, out);
                b.free_vars(bound, out);
            }
            Formula::Letter { index, .. } | Formula::Call(_, index) => {
                index.iter().for_each(|t| t.free_vars(bound, out))
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Bin(_, a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Quant { vars, body, .. } => {
                let n = bound.len();
                bound.extend(vars.iter().cloned());
                body.collect_free(bound, out);
                bound.truncate(n);
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Num(n) => write!(f, "{n}"),
            Term::Var(v) => f.write_str(v),
            Term::Add(a, b) => write!(f, "({a}+{b})"),
            Term::Sub(a, b) => write!(f, "({a}-{b})"),
            Term::Mul(c, t) => write!(f, "{c}*{t}"),
            Term::Div(t, c) => write!(f, "{t}/{c}"),
            Term::Index(w, ix) => {
                f.write_str(w)?;
                ix.iter().try_for_each(|t| write!(f, "[{t}]"))
            }
        }
    }
}

impl fmt::Display for RelOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelOp::Eq => "=",
            RelOp::Ne => "!=",
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Gt => ">",
            RelOp::Ge => ">=",
        })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Rel(op, a, b) => write!(f, "{a}{op}{b}"),
            Formula::Letter {
                word,
                index,
                value,
                negated,
            } => {
                f.write_str(word)?;
                index.iter().try_for_each(|t| write!(f, "[{t}]"))?;
                write!(f, "{}@{value}", if *negated { "!=" } else { "=" })
            }
            Formula::Call(name, args) => {
                write!(f, "${name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Formula::Not(x) => write!(f, "~{x}"),
            Formula::Bin(op, a, b) => {
                let sym = match op {
                    BoolOp::And => "&",
                    BoolOp::Or => "|",
                    BoolOp::Xor => "^",
                    BoolOp::Implies => "=>",
                    BoolOp::Iff => "<=>",
                };
                write!(f, "({a} {sym} {b})")
            }
            Formula::Quant { forall, vars, body } => {
                write!(f, "({}{} {body})", if *forall { "A" } else { "E" }, vars.join(","))
            }
        }
    }
}
