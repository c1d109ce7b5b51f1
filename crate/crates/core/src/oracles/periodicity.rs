//! Eventual periodicity of residue sequences.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Periodicity {
    pub modulus: u64,
    pub preperiod: usize,
    pub period: usize,
    /// Residues of one full period, starting at the end of the preperiod.
    pub residues: Vec<u64>,
    /// Values before the periodic part.
    pub initial: Vec<u64>,
}

impl Periodicity {
    /// Sorted distinct residues of the periodic part.
    pub fn residue_set(&self) -> Vec<u64> {
        let mut r = self.residues.clone();
        r.sort_unstable();
        r.dedup();
        r
    }
}

impl fmt::Display for Periodicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "modulus: {}", self.modulus)?;
        writeln!(f, "preperiod: {}", self.preperiod)?;
        writeln!(f, "period: {}", self.period)?;
        writeln!(f, "residues: {}", join(&self.residues))?;
        write!(f, "initial: {}", join(&self.initial))
    }
}

/// Which moduli to try.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Modulus {
    Fixed(u64),
    /// The smallest `m <= bound` such that eventually `a_{n+p} = a_n + m`
    /// for some `p <= m`.
    Search(u64),
}

fn with_modulus(seq: &[u64], m: u64, max_period: usize) -> Option<Periodicity> {
    let r: Vec<u64> = seq.iter().map(|v| v % m).collect();
    let n = r.len();
    for p in 1..=max_period.min(n / 3) {
        // smallest t with r[i] = r[i + p] for all i >= t
        let mut t = n - p;
        while t > 0 && r[t - 1] == r[t - 1 + p] {
            t -= 1;
        }
        if n - t >= (3 * p).max(n / 2) {
            return Some(Periodicity {
                modulus: m,
                preperiod: t,
                period: p,
                residues: r[t..t + p].to_vec(),
                initial: seq[..t].to_vec(),
            });
        }
    }
    None
}

fn shift_modulus(seq: &[u64], bound: u64) -> Option<u64> {
    let n = seq.len();
    let mut best: Option<u64> = None;
    for p in 1..=n / 3 {
        let m = seq[n - 1].checked_sub(seq[n - 1 - p])?;
        let mut t = n - p;
        while t > 0 && seq[t - 1] + m == seq[t - 1 + p] {
            t -= 1;
        }
        if n - t >= (3 * p).max(n / 2) && m >= 2 && m <= bound && p as u64 <= m {
            best = Some(best.map_or(m, |b| b.min(m)));
        }
    }
    best
}

/// Minimal period, then minimal preperiod. The periodic part must hold at
/// least three periods and half of the prefix.
pub fn detect_periodicity(seq: &[u64], modulus: Modulus) -> Option<Periodicity> {
    match modulus {
        Modulus::Fixed(m) => with_modulus(seq, m, seq.len()),
        Modulus::Search(bound) => {
            let m = shift_modulus(seq, bound)?;
            with_modulus(seq, m, m as usize)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::subsumfree;

    #[test]
    fn constant() {
        let p = detect_periodicity(&[7; 20], Modulus::Fixed(5)).unwrap();
        assert_eq!((p.preperiod, p.period), (0, 1));
    }

    #[test]
    fn s123_mod_23() {
        let s = subsumfree(1, 2, 3, 300);
        let p = detect_periodicity(&s, Modulus::Fixed(23)).unwrap();
        assert_eq!((p.preperiod, p.period), (6, 5));
        assert_eq!(s[p.preperiod], 14);
        let q = detect_periodicity(&s, Modulus::Search(100)).unwrap();
        assert_eq!((q.modulus, q.period), (23, 5));
    }

    #[test]
    fn s1512_mod_321() {
        let s = subsumfree(1, 5, 12, 600);
        let p = detect_periodicity(&s, Modulus::Fixed(321)).unwrap();
        assert_eq!(p.period, 32);
    }

    #[test]
    fn none_for_squares() {
        let s: Vec<u64> = (0..30).map(|n| n * n * n + 7 * n).collect();
        assert_eq!(detect_periodicity(&s, Modulus::Fixed(1_000_003)), None);
    }
}
