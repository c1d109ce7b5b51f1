//! Boolean algebra, projection, and track manipulation.

use rustc_hash::FxHashMap;

use super::determinize::subset_construction;
use super::{Alphabet, Dfa, Nfa, Order};
use crate::error::{Error, Result};
use crate::limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    /// Exclusive or.
    Xor,
    /// Material implication `a => b`.
    Implies,
    /// Equivalence `a <=> b`.
    Iff,
}

impl BoolOp {
    #[inline]
    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::And => a && b,
            BoolOp::Or => a || b,
            BoolOp::Xor => a != b,
            BoolOp::Implies => !a || b,
            BoolOp::Iff => a == b,
        }
    }
}

const DENSE_PAIR_LIMIT: usize = 1 << 24;

impl Dfa {
    /// Synchronous product; the result is minimized.
    pub fn product(&self, other: &Dfa, op: BoolOp) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet, other.alphabet
            )));
        }
        let nsym = self.alphabet.len();
        let (na, nb) = (self.states(), other.states());
        let dense = na.saturating_mul(nb) <= DENSE_PAIR_LIMIT;
        let mut dense_ids = if dense { vec![u32::MAX; na * nb] } else { Vec::new() };
        let mut sparse_ids: FxHashMap<(u32, u32), u32> = FxHashMap::default();
        let mut pairs: Vec<(u32, u32)> = vec![(0, 0)];
        if dense {
            dense_ids[0] = 0;
        } else {
            sparse_ids.insert((0, 0), 0);
        }
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            if i % 1024 == 0 {
                limits::check_time()?;
            }
            let (p, q) = pairs[i];
            let (rp, rq) = (p as usize * nsym, q as usize * nsym);
            for s in 0..nsym {
                let t = (self.delta[rp + s], other.delta[rq + s]);
                let next = pairs.len() as u32;
                let id = if dense {
                    let slot = &mut dense_ids[t.0 as usize * nb + t.1 as usize];
                    if *slot == u32::MAX {
                        *slot = next;
                    }
                    *slot
                } else {
                    *sparse_ids.entry(t).or_insert(next)
                };
                if id == next {
                    limits::check_states(pairs.len() + 1)?;
                    pairs.push(t);
                }
                delta.push(id);
            }
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(p, q)| op.apply(self.accepting[p as usize], other.accepting[q as usize]))
            .collect();
        Ok(Dfa::new(self.alphabet.clone(), delta, accepting)?.minimize())
    }

    pub fn and(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, BoolOp::And)
    }

    pub fn or(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, BoolOp::Or)
    }

    /// Accepts exactly the strings this automaton rejects.
    pub fn complement(&self) -> Dfa {
        Dfa {
            alphabet: self.alphabet.clone(),
            delta: self.delta.clone(),
            accepting: self.accepting.iter().map(|&a| !a).collect(),
        }
    }

    /// Existential projection of `track`.
    ///
    /// A string over the remaining tracks is accepted iff some digit string on
    /// the removed track, after padding every track uniformly with zeros
    /// (leading for msd, trailing for lsd), is accepted. The result keeps the
    /// relative order of the remaining tracks and is minimized.
    pub fn project(&self, track: usize, order: Order) -> Result<Dfa> {
        let tracks = self.tracks();
        if track >= tracks {
            return Err(Error::InvalidTrack { track, tracks });
        }
        let nsym = self.alphabet.len();
        let stride = self.alphabet.stride(track);
        let size = self.alphabet.sizes()[track] as usize;
        let reduce: Vec<u32> = (0..nsym)
            .map(|s| ((s / (stride * size)) * stride + s % stride) as u32)
            .collect();
        let reduced = self.alphabet.without(track);
        let zero_syms: Vec<usize> = (0..size).map(|d| d * stride).collect();
        let n = self.states();

        let (initial, accepting) = match order {
            Order::Msd => {
                let mut seen = vec![false; n];
                let mut init = vec![0u32];
                seen[0] = true;
                let mut i = 0;
                while i < init.len() {
                    let q = init[i] as usize;
                    i += 1;
                    for &z in &zero_syms {
                        let t = self.step(q, z);
                        if !seen[t] {
                            seen[t] = true;
                            init.push(t as u32);
                        }
                    }
                }
                (init, self.accepting.clone())
            }
            Order::Lsd => {
                let mut back: Vec<Vec<u32>> = vec![Vec::new(); n];
                for q in 0..n {
                    for &z in &zero_syms {
                        back[self.step(q, z)].push(q as u32);
                    }
                }
                let mut acc = self.accepting.clone();
                let mut stack: Vec<usize> = (0..n).filter(|&q| acc[q]).collect();
                while let Some(q) = stack.pop() {
                    for &p in &back[q] {
                        if !acc[p as usize] {
                            acc[p as usize] = true;
                            stack.push(p as usize);
                        }
                    }
                }
                (vec![0u32], acc)
            }
        };

        let nred = reduced.len();
        // the direct construction can explode where the reversed one does not
        let cap = (64 * n).max(4096);
        let direct = subset_construction(
            reduced.clone(),
            initial.clone(),
            |q| accepting[q as usize],
            |q, buckets| {
                let row = &self.delta[q as usize * nsym..(q as usize + 1) * nsym];
                for (s, &t) in row.iter().enumerate() {
                    buckets[reduce[s] as usize].push(t);
                }
            },
            |set| {
                set.sort_unstable();
                set.dedup();
            },
            nred,
            cap,
        )?;
        if let Some(d) = direct {
            return Ok(d.minimize());
        }
        let mut nfa = Nfa::new(reduced);
        for &a in &accepting {
            nfa.add_state(a);
        }
        for &q in &initial {
            nfa.set_initial(q);
        }
        for q in 0..n {
            let row = &self.delta[q * nsym..(q + 1) * nsym];
            for (s, &t) in row.iter().enumerate() {
                nfa.add_edge(q as u32, reduce[s] as usize, t);
            }
        }
        let back = nfa.reverse().determinize()?;
        Nfa::from_dfa(&back).reverse().determinize()
    }

    /// Re-reads this automaton over a larger alphabet: track `i` of `self`
    /// becomes track `track_map[i]` of `target`; the other target tracks are
    /// unconstrained.
    pub fn cylindrify(&self, target: &Alphabet, track_map: &[usize]) -> Result<Dfa> {
        if track_map.len() != self.tracks() {
            return Err(Error::AlphabetMismatch("track map length".into()));
        }
        for (i, &t) in track_map.iter().enumerate() {
            if t >= target.tracks() {
                return Err(Error::InvalidTrack {
                    track: t,
                    tracks: target.tracks(),
                });
            }
            if target.sizes()[t] != self.alphabet.sizes()[i] {
                return Err(Error::AlphabetMismatch(format!(
                    "track {i} has {} digits, target track {t} has {}",
                    self.alphabet.sizes()[i],
                    target.sizes()[t]
                )));
            }
        }
        let ntarget = target.len();
        let nsym = self.alphabet.len();
        let map: Vec<usize> = (0..ntarget)
            .map(|s| {
                track_map
                    .iter()
                    .enumerate()
                    .map(|(i, &t)| target.digit(s, t) as usize * self.alphabet.stride(i))
                    .sum()
            })
            .collect();
        limits::check_states(self.states())?;
        let mut delta = Vec::with_capacity(self.states() * ntarget);
        for q in 0..self.states() {
            let row = &self.delta[q * nsym..(q + 1) * nsym];
            delta.extend(map.iter().map(|&s| row[s]));
        }
        Ok(Dfa {
            alphabet: target.clone(),
            delta,
            accepting: self.accepting.clone(),
        })
    }

    /// Closes the language under zero padding: afterwards a string is accepted
    /// iff some string denoting the same value tuple was accepted before.
    pub fn pad_close(&self, order: Order) -> Result<Dfa> {
        let nsym = self.alphabet.len();
        let n = self.states();
        let mut nfa = Nfa::from_dfa(self);
        match order {
            Order::Msd => {
                // 0* . { v : 0^k v accepted }
                let mut zc = vec![0usize];
                let mut seen = vec![false; n];
                seen[0] = true;
                let mut i = 0;
                while i < zc.len() {
                    let t = self.step(zc[i], 0);
                    i += 1;
                    if !seen[t] {
                        seen[t] = true;
                        zc.push(t);
                    }
                }
                let start = nfa.add_state(zc.iter().any(|&q| self.accepting[q]));
                nfa.add_edge(start, 0, start);
                for &q in &zc {
                    for s in 0..nsym {
                        nfa.add_edge(start, s, self.step(q, s) as u32);
                    }
                }
                nfa.set_only_initial(start);
                nfa.determinize()
            }
            Order::Lsd => {
                // { v : v 0^k accepted } . 0*
                let mut acc = self.accepting.clone();
                let mut changed = true;
                while changed {
                    changed = false;
                    for q in 0..n {
                        if !acc[q] && acc[self.step(q, 0)] {
                            acc[q] = true;
                            changed = true;
                        }
                    }
                }
                let tail = nfa.add_state(true);
                nfa.add_edge(tail, 0, tail);
                for (q, &a) in acc.iter().enumerate() {
                    if a {
                        nfa.set_accepting(q as u32, true);
                        nfa.add_edge(q as u32, 0, tail);
                    }
                }
                nfa.determinize()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lsd2_multiple_of(m: usize) -> Dfa {
        // lsd binary: state = (value mod m, 2^i mod m)
        let a = Alphabet::uniform(1, 2);
        let states = m * m;
        Dfa::from_fn(
            a,
            states,
            |q| q / m == 0,
            |q, s| {
                // state r*m + (w-1 mod m) so the start state has w = 1
                let (r, w) = (q / m, (q % m + 1) % m);
                let r2 = (r + s * w) % m;
                let w2 = (w * 2) % m;
                r2 * m + (w2 + m - 1) % m
            },
        )
        .minimize()
    }

    fn lsd_bits(mut v: usize, len: usize) -> Vec<usize> {
        (0..len)
            .map(|_| {
                let b = v & 1;
                v >>= 1;
                b
            })
            .collect()
    }

    #[test]
    fn evens_and_threes_give_sixes() {
        let even = lsd2_multiple_of(2);
        let three = lsd2_multiple_of(3);
        let six = even.and(&three).unwrap();
        for v in 0..=1000 {
            assert_eq!(six.accepts(&lsd_bits(v, 11)), v % 6 == 0, "{v}");
        }
    }

    #[test]
    fn product_with_complement_is_empty() {
        let three = lsd2_multiple_of(3);
        let e = three.and(&three.complement()).unwrap();
        assert_eq!(e.states(), 1);
        assert!(!e.is_accepting(0));
        assert_eq!(three.and(&three).unwrap(), three);
    }

    #[test]
    fn product_rejects_mismatched_alphabets() {
        let a = Dfa::all(Alphabet::uniform(1, 2));
        let b = Dfa::all(Alphabet::uniform(1, 3));
        assert!(matches!(a.and(&b), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn project_invalid_track() {
        let a = Dfa::all(Alphabet::uniform(2, 2));
        assert!(matches!(
            a.project(2, Order::Msd),
            Err(Error::InvalidTrack { track: 2, tracks: 2 })
        ));
    }

    #[test]
    fn cylindrify_swaps_tracks() {
        // first track digit 1 everywhere, second unconstrained
        let a = Alphabet::uniform(2, 2);
        let d = Dfa::from_fn(a.clone(), 2, |q| q == 0, |q, s| {
            if q == 0 && a.digit(s, 0) == 1 {
                0
            } else {
                1
            }
        });
        let swapped = d.cylindrify(&a, &[1, 0]).unwrap();
        assert!(swapped.accepts(&[a.symbol(&[0, 1]).unwrap()]));
        assert!(!swapped.accepts(&[a.symbol(&[1, 0]).unwrap()]));
    }

    #[test]
    fn pad_close_msd_accepts_leading_zeros() {
        // accepts exactly "1"
        let a = Alphabet::uniform(1, 2);
        let d = Dfa::from_fn(a, 3, |q| q == 1, |q, s| if q == 0 && s == 1 { 1 } else { 2 });
        let c = d.pad_close(Order::Msd).unwrap();
        assert!(c.accepts(&[1]));
        assert!(c.accepts(&[0, 0, 1]));
        assert!(!c.accepts(&[1, 0]));
        let l = d.pad_close(Order::Lsd).unwrap();
        assert!(l.accepts(&[1, 0, 0]));
        assert!(!l.accepts(&[0, 1]));
    }
}
