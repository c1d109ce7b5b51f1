//! Regular expressions over digit tuples, as used by `reg`.
//!
//! Atoms are tuples `[d1,...,dm]` or bare digits (one track), combined with
//! juxtaposition, `|`, `*`, `+`, `?` and parentheses. `()` is the empty string.

use crate::automata::{Alphabet, Dfa, Nfa};
use crate::error::{Error, Result};
use crate::numeration::NumerationSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Empty,
    Symbol(Vec<u32>),
    Concat(Vec<Regex>),
    Alt(Vec<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
    Optional(Box<Regex>),
}

impl Regex {
    pub fn parse(text: &str) -> Result<Regex> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let r = p.alt()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(Error::syntax(p.pos, format!("unexpected `{}`", p.src[p.pos] as char)));
        }
        Ok(r)
    }

    fn arity(&self) -> Option<usize> {
        match self {
            Regex::Empty => None,
            Regex::Symbol(d) => Some(d.len()),
            Regex::Concat(v) | Regex::Alt(v) => v.iter().find_map(Regex::arity),
            Regex::Star(r) | Regex::Plus(r) | Regex::Optional(r) => r.arity(),
        }
    }

    fn check(&self, alphabet: &Alphabet) -> Result<()> {
        match self {
            Regex::Empty => Ok(()),
            Regex::Symbol(d) => {
                if d.len() != alphabet.tracks() {
                    return Err(Error::Arity {
                        name: format!("{d:?}"),
                        expected: alphabet.tracks(),
                        found: d.len(),
                    });
                }
                alphabet.symbol(d).map(|_| ())
            }
            Regex::Concat(v) | Regex::Alt(v) => v.iter().try_for_each(|r| r.check(alphabet)),
            Regex::Star(r) | Regex::Plus(r) | Regex::Optional(r) => r.check(alphabet),
        }
    }

    /// Thompson fragment from `from` to `to`.
    fn build(&self, nfa: &mut Nfa, from: u32, to: u32) {
        match self {
            Regex::Empty => nfa.add_epsilon(from, to),
            Regex::Symbol(d) => {
                let s = nfa.alphabet().symbol(d).expect("checked");
                nfa.add_edge(from, s, to);
            }
            Regex::Concat(v) => {
                let mut cur = from;
                for (i, r) in v.iter().enumerate() {
                    let next = if i + 1 == v.len() { to } else { nfa.add_state(false) };
                    r.build(nfa, cur, next);
                    cur = next;
                }
                if v.is_empty() {
                    nfa.add_epsilon(from, to);
                }
            }
            Regex::Alt(v) => {
                for r in v {
                    r.build(nfa, from, to);
                }
            }
            Regex::Star(r) | Regex::Plus(r) => {
                let a = nfa.add_state(false);
                let b = nfa.add_state(false);
                nfa.add_epsilon(from, a);
                r.build(nfa, a, b);
                nfa.add_epsilon(b, a);
                nfa.add_epsilon(b, to);
                if matches!(self, Regex::Star(_)) {
                    nfa.add_epsilon(from, to);
                }
            }
            Regex::Optional(r) => {
                r.build(nfa, from, to);
                nfa.add_epsilon(from, to);
            }
        }
    }

    /// The exact language of the expression over the given digit alphabet.
    pub fn to_dfa(&self, alphabet: &Alphabet) -> Result<Dfa> {
        self.check(alphabet)?;
        let mut nfa = Nfa::new(alphabet.clone());
        let start = nfa.add_state(false);
        let end = nfa.add_state(true);
        nfa.set_initial(start);
        self.build(&mut nfa, start, end);
        nfa.determinize()
    }
}

/// Compiles `text` for tracks in the given systems and closes the result
/// under zero padding.
pub fn compile(text: &str, systems: &[NumerationSystem]) -> Result<Dfa> {
    let r = Regex::parse(text)?;
    if systems.is_empty() {
        return Err(Error::Unsupported("regex needs at least one track".into()));
    }
    if let Some(n) = r.arity() {
        if n != systems.len() {
            return Err(Error::Arity {
                name: "regex".into(),
                expected: systems.len(),
                found: n,
            });
        }
    }
    let order = systems[0].order();
    if systems.iter().any(|s| s.order() != order) {
        return Err(Error::Unsupported("tracks read in different directions".into()));
    }
    let alphabet = Alphabet::new(systems.iter().map(|s| s.digits()).collect())?;
    let mut dfa = r.to_dfa(&alphabet)?.pad_close(order)?;
    if systems.iter().all(|s| *s == systems[0]) && systems[0].is_fibonacci() {
        dfa = dfa.and(&systems[0].valid_dfa(systems.len()))?;
    }
    Ok(dfa)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn alt(&mut self) -> Result<Regex> {
        let mut branches = vec![self.concat()?];
        while self.peek() == Some(b'|') {
            self.pos += 1;
            branches.push(self.concat()?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            Regex::Alt(branches)
        })
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == b'|' || c == b')' {
                break;
            }
            items.push(self.postfix()?);
        }
        Ok(match items.len() {
            0 => Regex::Empty,
            1 => items.pop().unwrap(),
            _ => Regex::Concat(items),
        })
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some(b'*') => r = Regex::Star(Box::new(r)),
                Some(b'+') => r = Regex::Plus(Box::new(r)),
                Some(b'?') => r = Regex::Optional(Box::new(r)),
                _ => return Ok(r),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let r = self.alt()?;
                if self.peek() != Some(b')') {
                    return Err(Error::syntax(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut digits = vec![self.digit()?];
                loop {
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            digits.push(self.digit()?);
                        }
                        Some(b']') => {
                            self.pos += 1;
                            return Ok(Regex::Symbol(digits));
                        }
                        _ => return Err(Error::syntax(self.pos, "expected `,` or `]`")),
                    }
                }
            }
            Some(c) if c.is_ascii_digit() => Ok(Regex::Symbol(vec![self.digit()?])),
            Some(c) => Err(Error::syntax(start, format!("unexpected `{}`", c as char))),
            None => Err(Error::syntax(self.pos, "unexpected end of expression")),
        }
    }

    fn digit(&mut self) -> Result<u32> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                self.pos += 1;
                Ok((c - b'0') as u32)
            }
            _ => Err(Error::syntax(self.pos, "expected a digit")),
        }
    }
}
