//! Deterministic automata, automata with output, and their algebra over
//! multi-track digit alphabets.
//!
//! Every automaton has initial state `0` and a total transition table stored
//! densely as `states × symbols`. Symbols are digit tuples, one digit per
//! track, indexed in lexicographic tuple order (track 0 most significant).

mod analysis;
mod determinize;
pub mod format;
mod minimize;
mod ops;

use std::fmt;

use crate::error::{Error, Result};

pub use analysis::{Cardinality, Verdict};
pub use determinize::Nfa;
pub use ops::BoolOp;

/// Reading order of digit strings. Automata read msd-first strings closed
/// under leading zeros, lsd-first strings closed under trailing zeros.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Msd,
    Lsd,
}

/// Tuple alphabet: track `i` carries digits `0..sizes[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    sizes: Vec<u32>,
    strides: Vec<usize>,
    len: usize,
}

impl Alphabet {
    pub fn new(sizes: Vec<u32>) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::AlphabetMismatch("empty digit range".into()));
        }
        let mut strides = vec![1usize; sizes.len()];
        let mut len = 1usize;
        for i in (0..sizes.len()).rev() {
            strides[i] = len;
            len = len
                .checked_mul(sizes[i] as usize)
                .ok_or_else(|| Error::AlphabetMismatch("alphabet too large".into()))?;
        }
        Ok(Alphabet {
            sizes,
            strides,
            len,
        })
    }

    pub fn uniform(tracks: usize, digits: u32) -> Self {
        Alphabet::new(vec![digits; tracks]).expect("nonzero digit range")
    }

    pub fn tracks(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// Number of symbols (1 for the zero-track alphabet).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbol(&self, digits: &[u32]) -> Result<usize> {
        if digits.len() != self.tracks() {
            return Err(Error::AlphabetMismatch(format!(
                "symbol has {} digits, alphabet has {} tracks",
                digits.len(),
                self.tracks()
            )));
        }
        let mut sym = 0;
        for (track, (&d, &size)) in digits.iter().zip(&self.sizes).enumerate() {
            if d >= size {
                return Err(Error::DigitOutOfRange { digit: d, track });
            }
            sym += d as usize * self.strides[track];
        }
        Ok(sym)
    }

    pub fn digits(&self, sym: usize) -> Vec<u32> {
        (0..self.tracks()).map(|t| self.digit(sym, t)).collect()
    }

    #[inline]
    pub fn digit(&self, sym: usize, track: usize) -> u32 {
        ((sym / self.strides[track]) % self.sizes[track] as usize) as u32
    }

    pub(crate) fn stride(&self, track: usize) -> usize {
        self.strides[track]
    }

    /// The alphabet with `track` removed.
    pub fn without(&self, track: usize) -> Alphabet {
        let mut sizes = self.sizes.clone();
        sizes.remove(track);
        Alphabet::new(sizes).expect("sub-alphabet of a valid alphabet")
    }

    pub fn is_zero(&self, sym: usize) -> bool {
        sym == 0
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sizes
            .iter()
            .map(|&s| {
                let ds: Vec<String> = (0..s).map(|d| d.to_string()).collect();
                format!("{{{}}}", ds.join(","))
            })
            .collect();
        if parts.is_empty() {
            write!(f, "{{}}")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Deterministic finite automaton with a total transition table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<u32>,
    accepting: Vec<bool>,
}

/// Deterministic finite automaton with output.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfao {
    alphabet: Alphabet,
    delta: Vec<u32>,
    output: Vec<u32>,
}

fn check_table(alphabet: &Alphabet, delta: &[u32], states: usize) -> Result<()> {
    if states == 0 {
        return Err(Error::AlphabetMismatch("automaton needs an initial state".into()));
    }
    if delta.len() != states * alphabet.len() {
        return Err(Error::AlphabetMismatch(format!(
            "transition table has {} entries, expected {}",
            delta.len(),
            states * alphabet.len()
        )));
    }
    if let Some(&bad) = delta.iter().find(|&&t| t as usize >= states) {
        return Err(Error::AlphabetMismatch(format!("transition to missing state {bad}")));
    }
    Ok(())
}

impl Dfa {
    pub fn new(alphabet: Alphabet, delta: Vec<u32>, accepting: Vec<bool>) -> Result<Self> {
        check_table(&alphabet, &delta, accepting.len())?;
        Ok(Dfa {
            alphabet,
            delta,
            accepting,
        })
    }

    /// Builds from a successor function on `states` states.
    pub fn from_fn(
        alphabet: Alphabet,
        states: usize,
        accepting: impl Fn(usize) -> bool,
        mut succ: impl FnMut(usize, usize) -> usize,
    ) -> Self {
        let n = alphabet.len();
        let mut delta = Vec::with_capacity(states * n);
        for q in 0..states {
            for s in 0..n {
                delta.push(succ(q, s) as u32);
            }
        }
        let accepting = (0..states).map(accepting).collect();
        Dfa::new(alphabet, delta, accepting).expect("successor function stays in range")
    }

    pub fn all(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        Dfa {
            alphabet,
            delta: vec![0; n],
            accepting: vec![true],
        }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        Dfa {
            alphabet,
            delta: vec![0; n],
            accepting: vec![false],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn tracks(&self) -> usize {
        self.alphabet.tracks()
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn transitions(&self) -> usize {
        self.delta.len()
    }

    #[inline]
    pub fn step(&self, q: usize, sym: usize) -> usize {
        self.delta[q * self.alphabet.len() + sym] as usize
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    /// FNV-1a hash of the minimized automaton: digit ranges, transitions
    /// and accepting states. Equal languages give equal fingerprints.
    pub fn fingerprint(&self) -> u64 {
        let m = self.minimize();
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |x: u32| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        };
        m.alphabet.sizes().iter().for_each(|&d| eat(d));
        eat(u32::MAX);
        m.delta.iter().for_each(|&t| eat(t));
        m.accepting.iter().for_each(|&a| eat(a as u32));
        h
    }

    pub fn run(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |q, &s| self.step(q, s))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[self.run(word)]
    }

    /// Accepts per-track digit strings of equal length.
    pub fn accepts_tracks(&self, tracks: &[Vec<u32>]) -> Result<bool> {
        Ok(self.accepts(&zip_tracks(&self.alphabet, tracks)?))
    }

    pub fn to_dfao(&self) -> Dfao {
        Dfao {
            alphabet: self.alphabet.clone(),
            delta: self.delta.clone(),
            output: self.accepting.iter().map(|&a| a as u32).collect(),
        }
    }
}

/// Combines per-track digit strings (all the same length) into a symbol word.
pub fn zip_tracks(alphabet: &Alphabet, tracks: &[Vec<u32>]) -> Result<Vec<usize>> {
    if tracks.len() != alphabet.tracks() {
        return Err(Error::AlphabetMismatch(format!(
            "{} tracks given, alphabet has {}",
            tracks.len(),
            alphabet.tracks()
        )));
    }
    let len = tracks.first().map_or(0, |t| t.len());
    if tracks.iter().any(|t| t.len() != len) {
        return Err(Error::AlphabetMismatch("tracks of unequal length".into()));
    }
    let mut buf = vec![0u32; tracks.len()];
    (0..len)
        .map(|i| {
            for (b, t) in buf.iter_mut().zip(tracks) {
                *b = t[i];
            }
            alphabet.symbol(&buf)
        })
        .collect()
}

impl Dfao {
    pub fn new(alphabet: Alphabet, delta: Vec<u32>, output: Vec<u32>) -> Result<Self> {
        check_table(&alphabet, &delta, output.len())?;
        Ok(Dfao {
            alphabet,
            delta,
            output,
        })
    }

    pub fn from_fn(
        alphabet: Alphabet,
        states: usize,
        output: impl Fn(usize) -> u32,
        mut succ: impl FnMut(usize, usize) -> usize,
    ) -> Self {
        let n = alphabet.len();
        let mut delta = Vec::with_capacity(states * n);
        for q in 0..states {
            for s in 0..n {
                delta.push(succ(q, s) as u32);
            }
        }
        let output = (0..states).map(output).collect();
        Dfao::new(alphabet, delta, output).expect("successor function stays in range")
    }

    pub fn constant(alphabet: Alphabet, value: u32) -> Self {
        let n = alphabet.len();
        Dfao {
            alphabet,
            delta: vec![0; n],
            output: vec![value],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn tracks(&self) -> usize {
        self.alphabet.tracks()
    }

    pub fn states(&self) -> usize {
        self.output.len()
    }

    pub fn transitions(&self) -> usize {
        self.delta.len()
    }

    #[inline]
    pub fn step(&self, q: usize, sym: usize) -> usize {
        self.delta[q * self.alphabet.len() + sym] as usize
    }

    pub fn output_of(&self, q: usize) -> u32 {
        self.output[q]
    }

    pub fn outputs(&self) -> &[u32] {
        &self.output
    }

    pub(crate) fn delta(&self) -> &[u32] {
        &self.delta
    }

    pub fn eval(&self, word: &[usize]) -> u32 {
        self.output[word.iter().fold(0, |q, &s| self.step(q, s))]
    }

    pub fn eval_tracks(&self, tracks: &[Vec<u32>]) -> Result<u32> {
        Ok(self.eval(&zip_tracks(&self.alphabet, tracks)?))
    }

    /// Sorted distinct output values.
    pub fn output_values(&self) -> Vec<u32> {
        let mut v = self.output.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The DFA accepting exactly the inputs whose output satisfies `pred`.
    pub fn preimage(&self, pred: impl Fn(u32) -> bool) -> Dfa {
        Dfa {
            alphabet: self.alphabet.clone(),
            delta: self.delta.clone(),
            accepting: self.output.iter().map(|&o| pred(o)).collect(),
        }
        .minimize()
    }

    pub fn minimize(&self) -> Dfao {
        let (delta, output) = minimize::minimize_labeled(&self.alphabet, &self.delta, &self.output);
        Dfao {
            alphabet: self.alphabet.clone(),
            delta,
            output,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_round_trip() {
        let a = Alphabet::new(vec![2, 3]).unwrap();
        assert_eq!(a.len(), 6);
        for s in 0..a.len() {
            assert_eq!(a.symbol(&a.digits(s)).unwrap(), s);
        }
        assert_eq!(a.symbol(&[1, 0]).unwrap(), 3);
        assert!(matches!(
            a.symbol(&[0, 3]),
            Err(Error::DigitOutOfRange { digit: 3, track: 1 })
        ));
    }

    #[test]
    fn zero_track_alphabet_has_one_symbol() {
        let a = Alphabet::new(vec![]).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a.symbol(&[]).unwrap(), 0);
        assert_eq!(a.to_string(), "{}");
    }

    #[test]
    fn table_validation() {
        let a = Alphabet::uniform(1, 2);
        assert!(Dfa::new(a.clone(), vec![0, 1], vec![true]).is_err());
        assert!(Dfa::new(a.clone(), vec![0], vec![true]).is_err());
        assert!(Dfa::new(a, vec![0, 0], vec![true]).is_ok());
    }
}
