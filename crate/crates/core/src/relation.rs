//! Automata whose tracks are named by variables.
//!
//! A [`Relation`] keeps its variables sorted and distinct; combining two
//! relations cylindrifies both onto the union of their variables.

use crate::automata::{Alphabet, BoolOp, Dfa};
use crate::error::{Error, Result};
use crate::numeration::NumerationSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    vars: Vec<String>,
    dfa: Dfa,
}

impl Relation {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn into_dfa(self) -> Dfa {
        self.dfa
    }

    pub fn constant(value: bool, system: NumerationSystem) -> Relation {
        let a = Alphabet::uniform(0, system.digits());
        Relation {
            vars: Vec::new(),
            dfa: if value { Dfa::all(a) } else { Dfa::empty(a) },
        }
    }

    /// Names the tracks of `dfa`; repeated names restrict to the diagonal.
    pub fn bind(dfa: &Dfa, names: &[&str], system: NumerationSystem) -> Result<Relation> {
        if names.len() != dfa.tracks() {
            return Err(Error::AlphabetMismatch(format!(
                "{} names for {} tracks",
                names.len(),
                dfa.tracks()
            )));
        }
        let mut vars: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        vars.sort();
        vars.dedup();
        let map: Vec<usize> = names
            .iter()
            .map(|n| vars.binary_search_by(|v| v.as_str().cmp(n)).unwrap())
            .collect();
        let target = Alphabet::uniform(vars.len(), system.digits());
        let identity = vars.len() == names.len() && map.iter().enumerate().all(|(i, &t)| i == t);
        let dfa = if identity {
            dfa.clone()
        } else {
            dfa.cylindrify(&target, &map)?.minimize()
        };
        Ok(Relation { vars, dfa })
    }

    fn lift(&self, vars: &[String], system: NumerationSystem) -> Result<Dfa> {
        if self.vars == vars {
            return Ok(self.dfa.clone());
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).unwrap())
            .collect();
        self.dfa
            .cylindrify(&Alphabet::uniform(vars.len(), system.digits()), &map)
    }

    pub fn combine(&self, other: &Relation, op: BoolOp, system: NumerationSystem) -> Result<Relation> {
        let mut vars: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        vars.sort();
        vars.dedup();
        let a = self.lift(&vars, system)?;
        let b = other.lift(&vars, system)?;
        let mut dfa = a.product(&b, op)?;
        if matches!(op, BoolOp::Implies | BoolOp::Iff | BoolOp::Xor | BoolOp::Or)
            && system.is_fibonacci()
            && !vars.is_empty()
        {
            // these operators can accept invalid digits on a track one side ignores
            dfa = dfa.and(&system.valid_dfa(vars.len()))?;
        }
        Ok(Relation { vars, dfa })
    }

    pub fn and(&self, other: &Relation, system: NumerationSystem) -> Result<Relation> {
        self.combine(other, BoolOp::And, system)
    }

    pub fn not(&self, system: NumerationSystem) -> Result<Relation> {
        let mut dfa = self.dfa.complement();
        if system.is_fibonacci() && !self.vars.is_empty() {
            dfa = dfa.and(&system.valid_dfa(self.vars.len()))?;
        }
        Ok(Relation {
            vars: self.vars.clone(),
            dfa,
        })
    }

    pub fn exists(&self, var: &str, system: NumerationSystem) -> Result<Relation> {
        let Ok(i) = self.vars.binary_search_by(|v| v.as_str().cmp(var)) else {
            return Ok(self.clone());
        };
        let dfa = self.dfa.project(i, system.order())?;
        let mut vars = self.vars.clone();
        vars.remove(i);
        Ok(Relation { vars, dfa })
    }

    pub fn forall(&self, var: &str, system: NumerationSystem) -> Result<Relation> {
        self.not(system)?.exists(var, system)?.not(system)
    }

    /// The automaton with tracks in the given order; `order` must list every
    /// variable of the relation, and may add unconstrained ones.
    pub fn arrange(&self, order: &[String], system: NumerationSystem) -> Result<Dfa> {
        for v in &self.vars {
            if !order.contains(v) {
                return Err(Error::AlphabetMismatch(format!("variable `{v}` not in track order")));
            }
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| order.iter().position(|o| o == v).unwrap())
            .collect();
        let target = Alphabet::uniform(order.len(), system.digits());
        let mut dfa = self.dfa.cylindrify(&target, &map)?;
        if system.is_fibonacci() && order.len() > self.vars.len() {
            dfa = dfa.and(&system.valid_dfa(order.len()))?;
        }
        Ok(dfa.minimize())
    }
}
