//! Plain-text automaton files and Graphviz export.
//!
//! ```text
//! lsd_3 lsd_3          # one numeration tag per track, or digit sets {0,1} {0,1,2}
//!
//! 0 1                  # state 0, output 1 (initial state is state 0)
//! 0 0 -> 0
//! 0 1 -> 1
//! ...
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Alphabet, Dfa, Dfao};
use crate::error::{Error, Result};
use crate::numeration::NumerationSystem;

/// Declaration of one input track in a file header.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrackDecl {
    System(NumerationSystem),
    Digits(u32),
}

impl TrackDecl {
    pub fn digits(self) -> u32 {
        match self {
            TrackDecl::System(s) => s.digits(),
            TrackDecl::Digits(d) => d,
        }
    }
}

/// A parsed automaton file. DFAs are files whose outputs are all 0 or 1.
#[derive(Clone, Debug)]
pub struct AutomatonFile {
    pub decls: Vec<TrackDecl>,
    pub machine: Dfao,
}

impl AutomatonFile {
    /// The common numeration system, when every track declares the same one.
    pub fn system(&self) -> Option<NumerationSystem> {
        let mut it = self.decls.iter();
        let first = match it.next()? {
            TrackDecl::System(s) => *s,
            TrackDecl::Digits(_) => return None,
        };
        it.all(|d| *d == TrackDecl::System(first)).then_some(first)
    }

    pub fn to_dfa(&self) -> Result<Dfa> {
        let m = &self.machine;
        if let Some(&o) = m.outputs().iter().find(|&&o| o > 1) {
            return Err(Error::format(0, format!("output {o} is not a DFA output")));
        }
        Dfa::new(
            m.alphabet().clone(),
            m.delta().to_vec(),
            m.outputs().iter().map(|&o| o == 1).collect(),
        )
    }
}

pub fn header(decls: &[TrackDecl]) -> String {
    if decls.is_empty() {
        return "{}".into();
    }
    decls
        .iter()
        .map(|d| match d {
            TrackDecl::System(s) => s.tag(),
            TrackDecl::Digits(n) => {
                let ds: Vec<String> = (0..*n).map(|d| d.to_string()).collect();
                format!("{{{}}}", ds.join(","))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn digit_decls(alphabet: &Alphabet) -> Vec<TrackDecl> {
    alphabet.sizes().iter().map(|&s| TrackDecl::Digits(s)).collect()
}

fn write_table(decls: &[TrackDecl], alphabet: &Alphabet, delta: &[u32], outs: &[u32]) -> String {
    let nsym = alphabet.len();
    let mut s = String::with_capacity(outs.len() * nsym * (alphabet.tracks() * 2 + 8));
    s.push_str(&header(decls));
    s.push('\n');
    let labels: Vec<String> = (0..nsym)
        .map(|sym| {
            alphabet
                .digits(sym)
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    for (q, out) in outs.iter().enumerate() {
        let _ = write!(s, "\n{q} {out}\n");
        for (sym, label) in labels.iter().enumerate() {
            let t = delta[q * nsym + sym];
            if label.is_empty() {
                let _ = writeln!(s, "-> {t}");
            } else {
                let _ = writeln!(s, "{label} -> {t}");
            }
        }
    }
    s
}

impl Dfa {
    /// Text form; `systems` supplies per-track numeration tags, otherwise digit
    /// sets are written.
    pub fn to_text(&self, systems: Option<&[NumerationSystem]>) -> String {
        let decls = match systems {
            Some(ss) => ss.iter().map(|&s| TrackDecl::System(s)).collect(),
            None => digit_decls(&self.alphabet),
        };
        let outs: Vec<u32> = self.accepting.iter().map(|&a| a as u32).collect();
        write_table(&decls, &self.alphabet, &self.delta, &outs)
    }

    pub fn from_text(text: &str) -> Result<Dfa> {
        read_text(text)?.to_dfa()
    }
}

impl Dfao {
    pub fn to_text(&self, systems: Option<&[NumerationSystem]>) -> String {
        let decls = match systems {
            Some(ss) => ss.iter().map(|&s| TrackDecl::System(s)).collect(),
            None => digit_decls(&self.alphabet),
        };
        write_table(&decls, &self.alphabet, &self.delta, &self.output)
    }
}

fn parse_decls(line: &str, lineno: usize) -> Result<Vec<TrackDecl>> {
    let line = line.trim();
    if line == "{}" {
        return Ok(Vec::new());
    }
    let mut decls = Vec::new();
    let mut rest = line;
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('{') {
            let end = r
                .find('}')
                .ok_or_else(|| Error::format(lineno, "unterminated digit set"))?;
            let digits: Vec<u32> = r[..end]
                .split(',')
                .map(|d| d.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::format(lineno, "bad digit in digit set"))?;
            if digits.is_empty() || digits.iter().enumerate().any(|(i, &d)| d != i as u32) {
                return Err(Error::format(lineno, "digit sets must be {0,1,..,k-1}"));
            }
            decls.push(TrackDecl::Digits(digits.len() as u32));
            rest = r[end + 1..].trim_start();
        } else {
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            let tag = &rest[..end];
            let sys: NumerationSystem = tag
                .parse()
                .map_err(|e| Error::format(lineno, e))?;
            decls.push(TrackDecl::System(sys));
            rest = rest[end..].trim_start();
        }
    }
    Ok(decls)
}

/// Parses the text format; missing transitions go to a fresh rejecting sink
/// with output 0.
pub fn read_text(text: &str) -> Result<AutomatonFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, hdr) = lines
        .next()
        .ok_or_else(|| Error::format(1, "missing alphabet declaration"))?;
    let mut decls = parse_decls(hdr, hline)?;

    struct Block {
        output: u32,
        trans: Vec<(usize, Vec<u32>, i64)>,
    }
    let mut ids: HashMap<i64, usize> = HashMap::new();
    let mut order: Vec<i64> = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();
    for (lineno, line) in lines {
        if let Some((lhs, rhs)) = line.split_once("->") {
            let block = blocks
                .last_mut()
                .ok_or_else(|| Error::format(lineno, "transition before any state"))?;
            let digits: Vec<u32> = lhs
                .split_whitespace()
                .map(|d| d.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::format(lineno, "bad digit"))?;
            let target: i64 = rhs
                .trim()
                .parse()
                .map_err(|_| Error::format(lineno, "bad target state"))?;
            block.trans.push((lineno, digits, target));
        } else {
            let mut it = line.split_whitespace();
            let (Some(id), Some(out), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::format(lineno, "expected `STATE OUTPUT`"));
            };
            let id: i64 = id.parse().map_err(|_| Error::format(lineno, "bad state id"))?;
            let output: u32 = out.parse().map_err(|_| Error::format(lineno, "bad output"))?;
            if ids.insert(id, order.len()).is_some() {
                return Err(Error::format(lineno, format!("state {id} declared twice")));
            }
            order.push(id);
            blocks.push(Block {
                output,
                trans: Vec::new(),
            });
        }
    }
    if blocks.is_empty() {
        return Err(Error::format(hline, "no states"));
    }
    let initial = *ids
        .get(&0)
        .ok_or_else(|| Error::format(hline, "state 0 (initial) is missing"))?;

    // arity from the first transition when a single tag abbreviates all tracks
    if decls.len() == 1 {
        if let Some((_, digits, _)) = blocks.iter().flat_map(|b| b.trans.iter()).next() {
            if digits.len() > 1 {
                decls = vec![decls[0]; digits.len()];
            }
        }
    }
    let alphabet = Alphabet::new(decls.iter().map(|d| d.digits()).collect())?;
    let nsym = alphabet.len();

    // index 0 is the initial state; the rest keep file order
    let mut index = vec![0usize; blocks.len()];
    let mut next = 1;
    for (i, slot) in index.iter_mut().enumerate() {
        if i == initial {
            *slot = 0;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let n = blocks.len();
    let sink = n;
    let mut delta = vec![u32::MAX; n * nsym];
    let mut output = vec![0u32; n];
    for (bi, block) in blocks.iter().enumerate() {
        let q = index[bi];
        output[q] = block.output;
        for (lineno, digits, target) in &block.trans {
            let sym = alphabet.symbol(digits).map_err(|e| Error::format(*lineno, e))?;
            let t = *ids
                .get(target)
                .ok_or_else(|| Error::format(*lineno, format!("undeclared state {target}")))?;
            let slot = &mut delta[q * nsym + sym];
            if *slot != u32::MAX {
                return Err(Error::format(*lineno, "nondeterministic transition"));
            }
            *slot = index[t] as u32;
        }
    }
    if delta.contains(&u32::MAX) {
        for t in delta.iter_mut().filter(|t| **t == u32::MAX) {
            *t = sink as u32;
        }
        delta.extend(std::iter::repeat_n(sink as u32, nsym));
        output.push(0);
    }
    Ok(AutomatonFile {
        decls,
        machine: Dfao::new(alphabet, delta, output)?,
    })
}

fn symbol_label(alphabet: &Alphabet, sym: usize) -> String {
    let ds = alphabet.digits(sym);
    match ds.len() {
        0 => "ε".into(),
        1 => ds[0].to_string(),
        _ => format!(
            "[{}]",
            ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        ),
    }
}

fn write_dot(name: &str, alphabet: &Alphabet, delta: &[u32], labels: &[String], accept: &[bool]) -> String {
    let nsym = alphabet.len();
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{name}\" {{");
    s.push_str("  rankdir = LR;\n");
    s.push_str("  init [shape = point];\n");
    for (q, label) in labels.iter().enumerate() {
        let shape = if accept[q] { "doublecircle" } else { "circle" };
        let _ = writeln!(s, "  {q} [shape = {shape}, label = \"{label}\"];");
    }
    s.push_str("  init -> 0;\n");
    for q in 0..labels.len() {
        let mut by_target: Vec<(u32, Vec<String>)> = Vec::new();
        for sym in 0..nsym {
            let t = delta[q * nsym + sym];
            let lab = symbol_label(alphabet, sym);
            match by_target.iter_mut().find(|(tt, _)| *tt == t) {
                Some((_, v)) => v.push(lab),
                None => by_target.push((t, vec![lab])),
            }
        }
        for (t, labs) in by_target {
            let _ = writeln!(s, "  {q} -> {t} [label = \"{}\"];", labs.join(", "));
        }
    }
    s.push_str("}\n");
    s
}

impl Dfa {
    /// Graphviz rendering; accepting states are double circles.
    pub fn to_dot(&self, name: &str) -> String {
        let labels: Vec<String> = (0..self.states()).map(|q| q.to_string()).collect();
        write_dot(name, &self.alphabet, &self.delta, &labels, &self.accepting)
    }
}

impl Dfao {
    /// Graphviz rendering with `state/output` labels; states with nonzero
    /// output are double circles.
    pub fn to_dot(&self, name: &str) -> String {
        let labels: Vec<String> = self
            .output
            .iter()
            .enumerate()
            .map(|(q, o)| format!("{q}/{o}"))
            .collect();
        let accept: Vec<bool> = self.output.iter().map(|&o| o != 0).collect();
        write_dot(name, &self.alphabet, &self.delta, &labels, &accept)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn read_write_round_trip() {
        let a = Alphabet::new(vec![2, 3]).unwrap();
        let d = Dfa::from_fn(a, 2, |q| q == 1, |q, s| (q + s) % 2);
        let text = d.to_text(None);
        assert!(text.starts_with("{0,1} {0,1,2}\n"));
        let back = Dfa::from_text(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_text(None), text);
    }

    #[test]
    fn missing_transitions_go_to_sink() {
        let text = "msd_2\n0 1\n0 -> 0\n";
        let d = Dfa::from_text(text).unwrap();
        assert_eq!(d.states(), 2);
        assert!(d.accepts(&[0, 0]));
        assert!(!d.accepts(&[1]));
    }

    #[test]
    fn single_tag_expands_to_all_tracks() {
        let text = "lsd_3\n0 0\n0 0 -> 0\n";
        let f = read_text(text).unwrap();
        assert_eq!(f.decls.len(), 2);
        assert_eq!(f.machine.alphabet().len(), 9);
    }

    #[test]
    fn malformed_inputs() {
        assert!(read_text("").is_err());
        assert!(read_text("msd_2\n0 1\n2 -> 0\n").is_err());
        assert!(read_text("msd_2\n0 1\n0 -> 7\n").is_err());
        assert!(read_text("msd_2\n0 1\n0 -> 0\n0 -> 0\n").is_err());
        assert!(read_text("{0,2}\n0 1\n").is_err());
        assert!(read_text("msd_2\n1 1\n0 -> 1\n").is_err());
    }

    #[test]
    fn comments_ignored() {
        let text = "# header comment\nmsd_2 # tag\n0 1 # state\n0 -> 0\n1 -> 0\n";
        let d = Dfa::from_text(text).unwrap();
        assert!(d.accepts(&[1, 0, 1]));
    }

    #[test]
    fn dot_marks_accepting() {
        let d = Dfa::all(Alphabet::uniform(1, 2));
        let dot = d.to_dot("all");
        assert_eq!(dot.matches("doublecircle").count(), 1);
        let e = Dfa::empty(Alphabet::uniform(1, 2));
        let dot = e.to_dot("none");
        assert!(!dot.contains("doublecircle"));
        assert_eq!(dot.matches("shape = circle").count(), 1);
    }

    #[test]
    fn zero_track_round_trip() {
        let d = Dfa::all(Alphabet::new(vec![]).unwrap());
        let text = d.to_text(None);
        assert!(text.starts_with("{}\n"));
        assert_eq!(Dfa::from_text(&text).unwrap(), d);
    }
}
