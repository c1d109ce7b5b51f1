//! Formulas to automata.
//!
//! Every subterm gets a result variable; temporaries are named `#k`, which the
//! parser can never produce, and are projected away as soon as the enclosing
//! atom is built.

use std::collections::HashMap;

use super::ast::{Formula, RelOp, Term};
use super::session::Session;
use crate::automata::{BoolOp, Dfa};
use crate::error::{Error, Result};
use crate::numeration::NumerationSystem;
use crate::relation::Relation;
use crate::words::Word;

pub(crate) struct Compiler<'s> {
    pub system: NumerationSystem,
    session: &'s Session,
    fresh: usize,
    values: HashMap<String, Dfa>,
}

fn is_temp(name: &str) -> bool {
    name.starts_with('#')
}

impl<'s> Compiler<'s> {
    pub fn new(session: &'s Session, system: NumerationSystem) -> Self {
        Compiler {
            system,
            session,
            fresh: 0,
            values: HashMap::new(),
        }
    }

    fn temp(&mut self) -> String {
        self.fresh += 1;
        format!("#{}", self.fresh)
    }

    fn bind(&self, dfa: &Dfa, names: &[&str]) -> Result<Relation> {
        Relation::bind(dfa, names, self.system)
    }

    /// Conjoins `core` with the relations defining its operands, projecting out
    /// each temporary operand once joined.
    fn join(&self, mut core: Relation, parts: Vec<(Relation, String)>) -> Result<Relation> {
        for (rel, name) in parts {
            if !rel.vars().is_empty() {
                core = core.and(&rel, self.system)?;
            }
            if is_temp(&name) {
                core = core.exists(&name, self.system)?;
            }
        }
        Ok(core)
    }

    fn word(&self, name: &str, arity: usize) -> Result<&Word> {
        let w = self
            .session
            .loaded_word(name)
            .ok_or_else(|| Error::UnknownWord(name.to_string()))?;
        if w.system() != self.system {
            return Err(Error::SystemMismatch {
                name: name.to_string(),
                context: self.system.tag(),
                found: w.system().tag(),
            });
        }
        if w.arity() != arity {
            return Err(Error::Arity {
                name: name.to_string(),
                expected: w.arity(),
                found: arity,
            });
        }
        Ok(w)
    }

    /// Tracks `(i_1, ..., i_m, r)` with `W[i_1]...[i_m] = r`.
    fn word_value(&mut self, name: &str, arity: usize) -> Result<Dfa> {
        if let Some(d) = self.values.get(name) {
            return Ok(d.clone());
        }
        let sys = self.system;
        let w = self.word(name, arity)?;
        let idx: Vec<String> = (0..arity).map(|i| format!("i{i}")).collect();
        let idx_refs: Vec<&str> = idx.iter().map(String::as_str).collect();
        let valid = sys.valid_dfa(arity);
        let mut rel = Relation::constant(false, sys);
        for v in w.dfao().output_values() {
            let pre = w.dfao().preimage(|o| o == v).and(&valid)?;
            let part = Relation::bind(&pre, &idx_refs, sys)?
                .and(&Relation::bind(&sys.const_dfa(v as u64), &["r"], sys)?, sys)?;
            rel = rel.combine(&part, BoolOp::Or, sys)?;
        }
        let mut order = idx;
        order.push("r".into());
        let d = rel.arrange(&order, sys)?;
        self.values.insert(name.to_string(), d.clone());
        Ok(d)
    }

    fn terms(&mut self, ts: &[Term]) -> Result<Vec<(Relation, String)>> {
        ts.iter().map(|t| self.term(t)).collect()
    }

    /// A relation over the variables of `t` and a result variable, with the
    /// result variable's name.
    pub fn term(&mut self, t: &Term) -> Result<(Relation, String)> {
        let sys = self.system;
        match t {
            Term::Var(v) => Ok((Relation::constant(true, sys), v.clone())),
            Term::Num(c) => {
                let r = self.temp();
                Ok((self.bind(&sys.const_dfa(*c), &[&r])?, r))
            }
            Term::Add(a, b) | Term::Sub(a, b) => {
                let pa = self.term(a)?;
                let pb = self.term(b)?;
                let r = self.temp();
                let names: [&str; 3] = if matches!(t, Term::Add(..)) {
                    [&pa.1, &pb.1, &r]
                } else {
                    // r = a - b  iff  r + b = a
                    [&r, &pb.1, &pa.1]
                };
                let core = self.bind(&sys.add_dfa(), &names)?;
                Ok((self.join(core, vec![pa, pb])?, r))
            }
            Term::Mul(c, x) | Term::Div(x, c) => {
                let px = self.term(x)?;
                let r = self.temp();
                let d = if matches!(t, Term::Mul(..)) {
                    sys.mul_dfa(*c)?
                } else {
                    sys.div_dfa(*c)?
                };
                let core = self.bind(&d, &[&px.1, &r])?;
                Ok((self.join(core, vec![px])?, r))
            }
            Term::Index(w, ix) => {
                let value = self.word_value(w, ix.len())?;
                let parts = self.terms(ix)?;
                let r = self.temp();
                let mut names: Vec<&str> = parts.iter().map(|p| p.1.as_str()).collect();
                names.push(&r);
                let core = self.bind(&value, &names)?;
                Ok((self.join(core, parts)?, r))
            }
        }
    }

    pub fn formula(&mut self, f: &Formula) -> Result<Relation> {
        crate::limits::check_time()?;
        let sys = self.system;
        match f {
            Formula::Rel(op, a, b) => {
                let pa = self.term(a)?;
                let pb = self.term(b)?;
                let (x, y) = (pa.1.as_str(), pb.1.as_str());
                let core = match op {
                    RelOp::Eq => self.bind(&sys.eq_dfa(), &[x, y])?,
                    RelOp::Ne => self.bind(&sys.eq_dfa(), &[x, y])?.not(sys)?,
                    RelOp::Lt => self.bind(&sys.less_dfa(), &[x, y])?,
                    RelOp::Gt => self.bind(&sys.less_dfa(), &[y, x])?,
                    RelOp::Le => self.bind(&sys.less_dfa(), &[y, x])?.not(sys)?,
                    RelOp::Ge => self.bind(&sys.less_dfa(), &[x, y])?.not(sys)?,
                };
                self.join(core, vec![pa, pb])
            }
            Formula::Letter {
                word,
                index,
                value,
                negated,
            } => {
                let w = self.word(word, index.len())?;
                let pre = w
                    .dfao()
                    .preimage(|o| (o == *value) != *negated)
                    .and(&sys.valid_dfa(index.len()))?;
                let parts = self.terms(index)?;
                let names: Vec<&str> = parts.iter().map(|p| p.1.as_str()).collect();
                let core = self.bind(&pre, &names)?;
                self.join(core, parts)
            }
            Formula::Call(name, args) => {
                let p = self
                    .session
                    .predicate(name)
                    .ok_or_else(|| Error::UnknownPredicate(name.clone()))?;
                if p.dfa.tracks() != args.len() {
                    return Err(Error::Arity {
                        name: name.clone(),
                        expected: p.dfa.tracks(),
                        found: args.len(),
                    });
                }
                if let Some(s) = p.systems.iter().find(|&&s| s != sys) {
                    return Err(Error::SystemMismatch {
                        name: name.clone(),
                        context: sys.tag(),
                        found: s.tag(),
                    });
                }
                let dfa = p.dfa.clone();
                let parts = self.terms(args)?;
                let names: Vec<&str> = parts.iter().map(|p| p.1.as_str()).collect();
                let core = self.bind(&dfa, &names)?;
                self.join(core, parts)
            }
            Formula::Not(x) => self.formula(x)?.not(sys),
            Formula::Bin(op, a, b) => {
                let ra = self.formula(a)?;
                let rb = self.formula(b)?;
                ra.combine(&rb, *op, sys)
            }
            Formula::Quant { forall, vars, body } => {
                let mut rel = self.formula(body)?;
                for v in vars.iter().rev() {
                    rel = if *forall {
                        rel.forall(v, sys)?
                    } else {
                        rel.exists(v, sys)?
                    };
                }
                Ok(rel)
            }
        }
    }
}

/// Names of all words indexed anywhere in `f`.
pub(crate) fn words_in(f: &Formula, out: &mut Vec<String>) {
    fn term(t: &Term, out: &mut Vec<String>) {
        match t {
            Term::Num(_) | Term::Var(_) => {}
            Term::Add(a, b) | Term::Sub(a, b) => {
                term(a, out);
                term(b, out);
            }
            Term::Mul(_, x) | Term::Div(x, _) => term(x, out),
            Term::Index(w, ix) => {
                if !out.contains(w) {
                    out.push(w.clone());
                }
                ix.iter().for_each(|t| term(t, out));
            }
        }
    }
    match f {
        Formula::Rel(_, a, b) => {
            term(a, out);
            term(b, out);
        }
        Formula::Letter { word, index, .. } => {
            if !out.contains(word) {
                out.push(word.clone());
            }
            index.iter().for_each(|t| term(t, out));
        }
        Formula::Call(_, args) => args.iter().for_each(|t| term(t, out)),
        Formula::Not(x) => words_in(x, out),
        Formula::Bin(_, a, b) => {
            words_in(a, out);
            words_in(b, out);
        }
        Formula::Quant { body, .. } => words_in(body, out),
    }
}
