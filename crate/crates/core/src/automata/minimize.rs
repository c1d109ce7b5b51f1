//! Hopcroft partition refinement with canonical BFS renumbering.

use std::collections::VecDeque;

use super::{Alphabet, Dfa};

impl Dfa {
    /// Language-equivalent minimal DFA, states numbered in BFS order from the
    /// initial state with symbols visited in ascending order.
    pub fn minimize(&self) -> Dfa {
        let labels: Vec<u32> = self.accepting.iter().map(|&a| a as u32).collect();
        let (delta, labels) = minimize_labeled(&self.alphabet, &self.delta, &labels);
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            accepting: labels.into_iter().map(|l| l != 0).collect(),
        }
    }
}

/// Minimizes a labeled complete automaton (initial state 0).
pub(crate) fn minimize_labeled(
    alphabet: &Alphabet,
    delta: &[u32],
    labels: &[u32],
) -> (Vec<u32>, Vec<u32>) {
    let nsym = alphabet.len();
    let (delta, labels) = reachable(nsym, delta, labels);
    let n = labels.len();
    let block = refine(nsym, &delta, &labels);
    let nblocks = block.iter().map(|&b| b as usize + 1).max().unwrap_or(0);

    // quotient, then canonical renumbering
    let mut rep = vec![u32::MAX; nblocks];
    for q in 0..n {
        if rep[block[q] as usize] == u32::MAX {
            rep[block[q] as usize] = q as u32;
        }
    }
    let mut order = vec![u32::MAX; nblocks];
    let mut queue = VecDeque::new();
    let start = block[0] as usize;
    order[start] = 0;
    queue.push_back(start);
    let mut seq = Vec::with_capacity(nblocks);
    while let Some(b) = queue.pop_front() {
        seq.push(b);
        let r = rep[b] as usize;
        for s in 0..nsym {
            let t = block[delta[r * nsym + s] as usize] as usize;
            if order[t] == u32::MAX {
                order[t] = seq.len() as u32 + queue.len() as u32;
                queue.push_back(t);
            }
        }
    }
    let mut out_delta = Vec::with_capacity(seq.len() * nsym);
    let mut out_labels = Vec::with_capacity(seq.len());
    for &b in &seq {
        let r = rep[b] as usize;
        out_labels.push(labels[r]);
        for s in 0..nsym {
            out_delta.push(order[block[delta[r * nsym + s] as usize] as usize]);
        }
    }
    (out_delta, out_labels)
}

fn reachable(nsym: usize, delta: &[u32], labels: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = labels.len();
    let mut id = vec![u32::MAX; n];
    let mut seq = vec![0usize];
    id[0] = 0;
    let mut i = 0;
    while i < seq.len() {
        let q = seq[i];
        i += 1;
        for &t in &delta[q * nsym..(q + 1) * nsym] {
            if id[t as usize] == u32::MAX {
                id[t as usize] = seq.len() as u32;
                seq.push(t as usize);
            }
        }
    }
    if seq.len() == n && seq.iter().enumerate().all(|(i, &q)| i == q) {
        return (delta.to_vec(), labels.to_vec());
    }
    let mut d = Vec::with_capacity(seq.len() * nsym);
    for &q in &seq {
        d.extend(delta[q * nsym..(q + 1) * nsym].iter().map(|&t| id[t as usize]));
    }
    (d, seq.iter().map(|&q| labels[q]).collect())
}

/// Returns the coarsest congruence refining the label partition, as a block
/// index per state.
fn refine(nsym: usize, delta: &[u32], labels: &[u32]) -> Vec<u32> {
    let n = labels.len();
    if n <= 1 {
        return vec![0; n];
    }

    // inverse transitions, CSR indexed by (symbol, target)
    let mut offs = vec![0u32; nsym * n + 1];
    for q in 0..n {
        for s in 0..nsym {
            let t = delta[q * nsym + s] as usize;
            offs[s * n + t + 1] += 1;
        }
    }
    for i in 0..nsym * n {
        offs[i + 1] += offs[i];
    }
    let mut fill = offs.clone();
    let mut pre = vec![0u32; nsym * n];
    for q in 0..n {
        for s in 0..nsym {
            let t = delta[q * nsym + s] as usize;
            let k = &mut fill[s * n + t];
            pre[*k as usize] = q as u32;
            *k += 1;
        }
    }
    drop(fill);

    let mut p = Partition::by_labels(labels);
    let mut in_work = vec![true; p.first.len()];
    let mut work: Vec<u32> = (0..p.first.len() as u32).collect();
    let mut splitter = Vec::new();
    let mut touched = Vec::new();

    while let Some(b) = work.pop() {
        in_work[b as usize] = false;
        splitter.clear();
        splitter.extend_from_slice(p.members(b as usize));
        for s in 0..nsym {
            for &t in &splitter {
                let i = s * n + t as usize;
                for &q in &pre[offs[i] as usize..offs[i + 1] as usize] {
                    p.mark(q as usize, &mut touched);
                }
            }
            for &tb in &touched {
                if let Some(nb) = p.split(tb as usize) {
                    in_work.push(false);
                    if in_work[tb as usize] {
                        in_work[nb] = true;
                        work.push(nb as u32);
                    } else {
                        let smaller = if p.size(nb) <= p.size(tb as usize) {
                            nb
                        } else {
                            tb as usize
                        };
                        in_work[smaller] = true;
                        work.push(smaller as u32);
                    }
                }
            }
            touched.clear();
        }
    }
    p.block
}

struct Partition {
    elems: Vec<u32>,
    loc: Vec<u32>,
    block: Vec<u32>,
    first: Vec<u32>,
    end: Vec<u32>,
    mid: Vec<u32>,
}

impl Partition {
    fn by_labels(labels: &[u32]) -> Self {
        let n = labels.len();
        let mut distinct: Vec<u32> = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let mut elems: Vec<u32> = (0..n as u32).collect();
        elems.sort_by_key(|&q| (labels[q as usize], q));
        let mut loc = vec![0u32; n];
        let mut block = vec![0u32; n];
        let mut first = Vec::new();
        let mut end = Vec::new();
        for (i, &q) in elems.iter().enumerate() {
            loc[q as usize] = i as u32;
            let b = distinct.binary_search(&labels[q as usize]).unwrap() as u32;
            block[q as usize] = b;
            if first.len() == b as usize {
                first.push(i as u32);
                end.push(i as u32);
            }
            end[b as usize] = i as u32 + 1;
        }
        let mid = first.clone();
        Partition {
            elems,
            loc,
            block,
            first,
            end,
            mid,
        }
    }

    fn members(&self, b: usize) -> &[u32] {
        &self.elems[self.first[b] as usize..self.end[b] as usize]
    }

    fn size(&self, b: usize) -> usize {
        (self.end[b] - self.first[b]) as usize
    }

    fn mark(&mut self, q: usize, touched: &mut Vec<u32>) {
        let b = self.block[q] as usize;
        let i = self.loc[q];
        let m = self.mid[b];
        if i < m {
            return;
        }
        if m == self.first[b] {
            touched.push(b as u32);
        }
        let other = self.elems[m as usize];
        self.elems.swap(i as usize, m as usize);
        self.loc[other as usize] = i;
        self.loc[q] = m;
        self.mid[b] = m + 1;
    }

    /// Splits off the marked part of `b` as a new block, if it is proper.
    fn split(&mut self, b: usize) -> Option<usize> {
        let (f, m, e) = (self.first[b], self.mid[b], self.end[b]);
        self.mid[b] = f;
        if m == e {
            return None;
        }
        let nb = self.first.len();
        self.first.push(f);
        self.end.push(m);
        self.mid.push(f);
        self.first[b] = m;
        self.mid[b] = m;
        for i in f..m {
            self.block[self.elems[i as usize] as usize] = nb as u32;
        }
        Some(nb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_states_merge() {
        let a = Alphabet::uniform(1, 2);
        let d = Dfa::from_fn(a, 2, |_| true, |q, _| 1 - q);
        let m = d.minimize();
        assert_eq!(m.states(), 1);
        assert!(m.is_accepting(0));
    }

    #[test]
    fn parity_of_ones_needs_two_states() {
        let a = Alphabet::uniform(1, 2);
        // four states tracking parity twice over
        let d = Dfa::from_fn(a, 4, |q| q % 2 == 0, |q, s| (q + s) % 4);
        assert_eq!(d.minimize().states(), 2);
    }

    #[test]
    fn unreachable_states_dropped() {
        let a = Alphabet::uniform(1, 2);
        let d = Dfa::from_fn(a, 3, |q| q == 2, |q, _| if q == 2 { 2 } else { 0 });
        let m = d.minimize();
        assert_eq!(m.states(), 1);
        assert!(!m.is_accepting(0));
    }
}
