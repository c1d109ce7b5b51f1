//! Nondeterministic automata and the subset construction.

use rustc_hash::FxHashMap;

use super::{Alphabet, Dfa};
use crate::error::Result;
use crate::limits;

/// Nondeterministic automaton with optional epsilon moves.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    initial: Vec<u32>,
    accepting: Vec<bool>,
    edges: Vec<Vec<(u32, u32)>>,
    eps: Vec<Vec<u32>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            initial: Vec::new(),
            accepting: Vec::new(),
            edges: Vec::new(),
            eps: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn add_state(&mut self, accepting: bool) -> u32 {
        self.accepting.push(accepting);
        self.edges.push(Vec::new());
        self.eps.push(Vec::new());
        (self.accepting.len() - 1) as u32
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn set_initial(&mut self, q: u32) {
        self.initial.push(q);
    }

    pub fn set_only_initial(&mut self, q: u32) {
        self.initial = vec![q];
    }

    pub fn set_accepting(&mut self, q: u32, acc: bool) {
        self.accepting[q as usize] = acc;
    }

    pub fn add_edge(&mut self, from: u32, sym: usize, to: u32) {
        self.edges[from as usize].push((sym as u32, to));
    }

    pub fn add_epsilon(&mut self, from: u32, to: u32) {
        self.eps[from as usize].push(to);
    }

    pub fn from_dfa(dfa: &Dfa) -> Self {
        let nsym = dfa.alphabet.len();
        let mut nfa = Nfa::new(dfa.alphabet.clone());
        for q in 0..dfa.states() {
            nfa.add_state(dfa.accepting[q]);
        }
        for q in 0..dfa.states() {
            for s in 0..nsym {
                nfa.add_edge(q as u32, s, dfa.step(q, s) as u32);
            }
        }
        nfa.set_initial(0);
        nfa
    }

    fn closure(&self, set: &mut Vec<u32>, mark: &mut [bool]) {
        let mut i = 0;
        for &q in set.iter() {
            mark[q as usize] = true;
        }
        while i < set.len() {
            let q = set[i] as usize;
            i += 1;
            for &t in &self.eps[q] {
                if !mark[t as usize] {
                    mark[t as usize] = true;
                    set.push(t);
                }
            }
        }
        for &q in set.iter() {
            mark[q as usize] = false;
        }
        set.sort_unstable();
        set.dedup();
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut mark = vec![false; self.states()];
        let mut cur = self.initial.clone();
        self.closure(&mut cur, &mut mark);
        for &s in word {
            let mut next: Vec<u32> = cur
                .iter()
                .flat_map(|&q| self.edges[q as usize].iter())
                .filter(|&&(sym, _)| sym as usize == s)
                .map(|&(_, t)| t)
                .collect();
            self.closure(&mut next, &mut mark);
            cur = next;
        }
        cur.iter().any(|&q| self.accepting[q as usize])
    }

    /// Subset construction; the result is minimized.
    pub fn determinize(&self) -> Result<Dfa> {
        let mut mark = vec![false; self.states()];
        let mut init = self.initial.clone();
        self.closure(&mut init, &mut mark);
        let nsym = self.alphabet.len();
        let mut scratch = mark;
        subset_construction(
            self.alphabet.clone(),
            init,
            |q| self.accepting[q as usize],
            |q, buckets| {
                for &(s, t) in &self.edges[q as usize] {
                    buckets[s as usize].push(t);
                }
            },
            |set| self.closure(set, &mut scratch),
            nsym,
            usize::MAX,
        )
        .map(|d| d.expect("uncapped").minimize())
    }

    /// Reversal: accepts the mirror images of the accepted strings.
    pub fn reverse(&self) -> Nfa {
        let mut r = Nfa::new(self.alphabet.clone());
        for q in 0..self.states() {
            r.add_state(self.initial.contains(&(q as u32)));
        }
        for (q, es) in self.edges.iter().enumerate() {
            for &(s, t) in es {
                r.add_edge(t, s as usize, q as u32);
            }
        }
        for (q, es) in self.eps.iter().enumerate() {
            for &t in es {
                r.add_epsilon(t, q as u32);
            }
        }
        for q in 0..self.states() {
            if self.accepting[q] {
                r.set_initial(q as u32);
            }
        }
        r
    }
}

/// Generic subset construction.
///
/// `expand(q, buckets)` pushes the successors of `q` under each symbol into
/// `buckets[symbol]`; `close` turns a raw successor list into a canonical
/// sorted subset. The empty subset becomes a rejecting sink. Gives `None`
/// once more than `cap` subsets appear.
pub(crate) fn subset_construction(
    alphabet: Alphabet,
    initial: Vec<u32>,
    accepting: impl Fn(u32) -> bool,
    mut expand: impl FnMut(u32, &mut [Vec<u32>]),
    mut close: impl FnMut(&mut Vec<u32>),
    nsym: usize,
    cap: usize,
) -> Result<Option<Dfa>> {
    let mut index: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
    let mut subsets: Vec<Vec<u32>> = Vec::new();
    let mut delta: Vec<u32> = Vec::new();
    let mut acc = Vec::new();
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); nsym];

    let mut init = initial;
    close(&mut init);
    index.insert(init.clone(), 0);
    acc.push(init.iter().any(|&q| accepting(q)));
    subsets.push(init);

    let mut i = 0;
    while i < subsets.len() {
        if i % 256 == 0 {
            limits::check_time()?;
        }
        let cur = std::mem::take(&mut subsets[i]);
        for &q in &cur {
            expand(q, &mut buckets);
        }
        for bucket in buckets.iter_mut() {
            let mut set = std::mem::take(bucket);
            close(&mut set);
            let next = subsets.len() as u32;
            let id = match index.get(&set) {
                Some(&id) => id,
                None => {
                    if subsets.len() >= cap {
                        return Ok(None);
                    }
                    limits::check_states(subsets.len() + 1)?;
                    acc.push(set.iter().any(|&q| accepting(q)));
                    index.insert(set.clone(), next);
                    subsets.push(set);
                    next
                }
            };
            delta.push(id);
        }
        subsets[i] = cur;
        i += 1;
    }
    Dfa::new(alphabet, delta, acc).map(Some)
}

impl Dfa {
    /// Accepts the reversals of the accepted strings.
    pub fn reverse(&self) -> Result<Dfa> {
        Nfa::from_dfa(self).reverse().determinize()
    }
}
