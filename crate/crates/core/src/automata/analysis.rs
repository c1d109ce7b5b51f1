//! Queries on finished automata: verdicts, witnesses, enumeration, and
//! nonzero-digit counting.

use std::collections::VecDeque;
use std::fmt;

use super::Dfa;
use crate::numeration::NumerationSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "TRUE",
            Verdict::False => "FALSE",
        })
    }
}

impl std::str::FromStr for Verdict {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "TRUE" | "true" => Ok(Verdict::True),
            "FALSE" | "false" => Ok(Verdict::False),
            other => Err(format!("expected TRUE or FALSE, got `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cardinality {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => f.write_str("INFINITE"),
        }
    }
}

impl Dfa {
    /// States from which an accepting state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.states();
        let nsym = self.alphabet.len();
        let mut back: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for s in 0..nsym {
                back[self.step(q, s)].push(q as u32);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| live[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &back[q] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p as usize);
                }
            }
        }
        live
    }

    pub fn is_empty_language(&self) -> bool {
        !self.coreachable()[0]
    }

    /// For a closed formula (zero tracks) the verdict is whether the initial
    /// state accepts; otherwise whether the language is nonempty.
    pub fn decide(&self) -> Verdict {
        if self.tracks() == 0 {
            Verdict::from_bool(self.accepting[0])
        } else {
            Verdict::from_bool(!self.is_empty_language())
        }
    }

    /// Shortest accepted symbol string, ties broken lexicographically.
    pub fn shortest_accepted(&self) -> Option<Vec<usize>> {
        let n = self.states();
        let nsym = self.alphabet.len();
        let mut parent: Vec<Option<(u32, u32)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(q) = queue.pop_front() {
            if self.accepting[q] {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur] {
                    word.push(s as usize);
                    cur = p as usize;
                }
                word.reverse();
                return Some(word);
            }
            for s in 0..nsym {
                let t = self.step(q, s);
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q as u32, s as u32));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Maximum number of nonzero symbols on an accepted string, or
    /// `Infinite` when a useful cycle reads a nonzero symbol.
    pub fn max_nonzero_symbols(&self) -> Cardinality {
        let n = self.states();
        let nsym = self.alphabet.len();
        let live = self.coreachable();
        if !live[0] {
            return Cardinality::Finite(0);
        }
        let comp = tarjan(n, |q, out: &mut Vec<(usize, bool)>| {
            if live[q] {
                for s in 0..nsym {
                    let t = self.step(q, s);
                    if live[t] {
                        out.push((t, s != 0));
                    }
                }
            }
        });
        // tarjan numbers components in reverse topological order
        let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
        for q in (0..n).filter(|&q| live[q]) {
            members[comp[q]].push(q);
        }
        let mut best: Vec<i64> = vec![i64::MIN; ncomp];
        for c in 0..ncomp {
            let mut b = i64::MIN;
            for &q in &members[c] {
                if self.accepting[q] {
                    b = b.max(0);
                }
                for s in 0..nsym {
                    let t = self.step(q, s);
                    if !live[t] {
                        continue;
                    }
                    let w = (s != 0) as i64;
                    if comp[t] == c {
                        if w == 1 {
                            return Cardinality::Infinite;
                        }
                    } else if best[comp[t]] != i64::MIN {
                        b = b.max(best[comp[t]] + w);
                    }
                }
            }
            best[c] = b;
        }
        Cardinality::Finite(best[comp[0]].max(0) as usize)
    }

    /// All accepted value tuples with every component at most `bound`, in
    /// lexicographic order. Every track is read in `system`, and only
    /// canonical (valid) representations are considered.
    pub fn enumerate(&self, system: NumerationSystem, bound: u64) -> Vec<Vec<u64>> {
        let tracks = self.tracks();
        if tracks == 0 {
            return if self.accepting[0] { vec![vec![]] } else { vec![] };
        }
        let len = system.encode(bound).digits.len();
        let weights: Vec<u64> = (0..len).map(|i| system.weight(i)).collect();
        let live = self.coreachable();
        let mut out = Vec::new();
        let mut ctx = EnumCtx {
            dfa: self,
            system,
            bound,
            len,
            weights,
            live,
            values: vec![0; tracks],
            last: vec![0; tracks],
            out: &mut out,
        };
        ctx.go(0, 0);
        out.sort();
        out
    }
}

struct EnumCtx<'a> {
    dfa: &'a Dfa,
    system: NumerationSystem,
    bound: u64,
    len: usize,
    weights: Vec<u64>,
    live: Vec<bool>,
    values: Vec<u64>,
    last: Vec<u32>,
    out: &'a mut Vec<Vec<u64>>,
}

impl EnumCtx<'_> {
    fn go(&mut self, pos: usize, q: usize) {
        if !self.live[q] {
            return;
        }
        if pos == self.len {
            if self.dfa.accepting[q] {
                self.out.push(self.values.clone());
            }
            return;
        }
        let weight = match self.system.order() {
            super::Order::Msd => self.weights[self.len - 1 - pos],
            super::Order::Lsd => self.weights[pos],
        };
        let alphabet = self.dfa.alphabet();
        let fib = self.system.is_fibonacci();
        'sym: for s in 0..alphabet.len() {
            for t in 0..alphabet.tracks() {
                let d = alphabet.digit(s, t);
                if fib && d == 1 && self.last[t] == 1 {
                    continue 'sym;
                }
                if self.values[t] + d as u64 * weight > self.bound {
                    continue 'sym;
                }
            }
            let saved_last = self.last.clone();
            for t in 0..alphabet.tracks() {
                let d = alphabet.digit(s, t);
                self.values[t] += d as u64 * weight;
                self.last[t] = d;
            }
            self.go(pos + 1, self.dfa.step(q, s));
            for t in 0..alphabet.tracks() {
                self.values[t] -= alphabet.digit(s, t) as u64 * weight;
            }
            self.last = saved_last;
        }
    }
}

/// Iterative Tarjan SCC; `succ(q, out)` lists edges (target, weight flag).
/// States with no edges listed still receive a component.
fn tarjan(n: usize, mut succ: impl FnMut(usize, &mut Vec<(usize, bool)>)) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSET; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut buf = Vec::new();
    for q in 0..n {
        buf.clear();
        succ(q, &mut buf);
        adj.push(buf.iter().map(|&(t, _)| t).collect());
    }
    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if index[w] == UNSET {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::super::Alphabet;
    use super::*;

    #[test]
    fn zeros_only_has_no_nonzero_digits() {
        let a = Alphabet::uniform(1, 2);
        let d = Dfa::from_fn(a, 2, |q| q == 0, |q, s| if q == 0 && s == 0 { 0 } else { 1 });
        assert_eq!(d.max_nonzero_symbols(), Cardinality::Finite(0));
    }

    #[test]
    fn all_strings_is_infinite() {
        let d = Dfa::all(Alphabet::uniform(1, 2));
        assert_eq!(d.max_nonzero_symbols(), Cardinality::Infinite);
    }

    #[test]
    fn shortest_is_lexicographically_least() {
        // accepts strings containing digit 1 or 2 (base 3)
        let a = Alphabet::uniform(1, 3);
        let d = Dfa::from_fn(a, 2, |q| q == 1, |q, s| if q == 1 || s != 0 { 1 } else { 0 });
        assert_eq!(d.shortest_accepted(), Some(vec![1]));
        assert_eq!(Dfa::empty(Alphabet::uniform(1, 2)).shortest_accepted(), None);
    }

    #[test]
    fn verdict_text() {
        assert_eq!(Verdict::True.to_string(), "TRUE");
        assert_eq!("FALSE".parse::<Verdict>().unwrap(), Verdict::False);
    }
}
