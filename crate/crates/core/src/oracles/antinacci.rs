//! Anti-k-nacci numbers by the mex procedure.

/// `k` sequences of successively missing numbers and their sum sequence,
/// each indexed from `n = 1` (entry 0 is the first term).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiNacci {
    pub k: usize,
    pub missing: Vec<Vec<u64>>,
    pub sums: Vec<u64>,
}

impl AntiNacci {
    /// The missing numbers merged in increasing order.
    pub fn complement(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.missing.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    /// Sequence `j` for `j < k`, the sums for `j = k`.
    pub fn sequence(&self, j: usize) -> &[u64] {
        if j == self.k {
            &self.sums
        } else {
            &self.missing[j]
        }
    }
}

/// Runs `terms` rounds: each round takes `k` successive mex values of the
/// numbers used so far and then adds their sum to the used set.
pub fn anti_nacci(k: usize, terms: usize) -> AntiNacci {
    assert!(k >= 2, "k must be at least 2");
    // values grow like (k^2 + 1) n
    let cap = (k * k + 2) * (terms + 2) + 16;
    let mut used = vec![false; cap];
    used[0] = true;
    let mut mex = 1usize;
    let mut missing = vec![Vec::with_capacity(terms); k];
    let mut sums = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut sum = 0;
        for seq in missing.iter_mut() {
            while used[mex] {
                mex += 1;
            }
            used[mex] = true;
            seq.push(mex as u64);
            sum += mex;
        }
        if sum >= used.len() {
            used.resize(2 * sum, false);
        }
        used[sum] = true;
        sums.push(sum as u64);
    }
    AntiNacci { k, missing, sums }
}

/// A named affine remainder `c n + offset - m * S_n` of one sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Remainder {
    pub name: &'static str,
    /// Index into [`AntiNacci::sequence`].
    pub sequence: usize,
    pub slope: i64,
    pub offset: i64,
    pub multiplier: i64,
}

impl Remainder {
    pub fn at(&self, n: i64, value: u64) -> i64 {
        self.slope * n + self.offset - self.multiplier * value as i64
    }
}

const REMAINDERS_3: [Remainder; 4] = [
    Remainder { name: "A", sequence: 0, slope: 10, offset: -6, multiplier: 3 },
    Remainder { name: "B", sequence: 1, slope: 10, offset: -2, multiplier: 3 },
    Remainder { name: "C", sequence: 2, slope: 10, offset: 1, multiplier: 3 },
    Remainder { name: "D", sequence: 3, slope: 10, offset: -3, multiplier: 1 },
];

const REMAINDERS_4: [Remainder; 5] = [
    Remainder { name: "A", sequence: 0, slope: 17, offset: -11, multiplier: 4 },
    Remainder { name: "B", sequence: 1, slope: 17, offset: -7, multiplier: 4 },
    Remainder { name: "C", sequence: 2, slope: 17, offset: -3, multiplier: 4 },
    Remainder { name: "D", sequence: 3, slope: 17, offset: 1, multiplier: 4 },
    Remainder { name: "E", sequence: 4, slope: 17, offset: -5, multiplier: 1 },
];

/// The remainder expressions for `k` in 3 and 4.
pub fn remainders(k: usize) -> &'static [Remainder] {
    match k {
        3 => &REMAINDERS_3,
        4 => &REMAINDERS_4,
        _ => &[],
    }
}

/// Remainder values for `n = 1..=terms`.
pub fn remainder_sequence(k: usize, name: &str, terms: usize) -> Option<Vec<u64>> {
    let r = *remainders(k).iter().find(|r| r.name == name)?;
    let a = anti_nacci(k, terms);
    let s = a.sequence(r.sequence);
    s.iter()
        .enumerate()
        .map(|(i, &v)| u64::try_from(r.at(i as i64 + 1, v)).ok())
        .collect()
}

/// Observed `(name, min, max)` of each remainder for `n ≤ terms`.
pub fn remainder_bounds(k: usize, terms: usize) -> Vec<(&'static str, i64, i64)> {
    let a = anti_nacci(k, terms);
    remainders(k)
        .iter()
        .map(|r| {
            let vals = a
                .sequence(r.sequence)
                .iter()
                .enumerate()
                .map(|(i, &v)| r.at(i as i64 + 1, v));
            let (lo, hi) = vals.fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
            (r.name, lo, hi)
        })
        .collect()
}

/// `S_n - (k^2 + 1) n` for the sum sequence, shifted so its minimum is 0.
pub fn sum_defect(k: usize, terms: usize) -> Vec<u64> {
    let a = anti_nacci(k, terms);
    let c = (k * k + 1) as i64;
    let d: Vec<i64> = a
        .sums
        .iter()
        .enumerate()
        .map(|(i, &v)| v as i64 - c * (i as i64 + 1))
        .collect();
    let lo = d.iter().copied().min().unwrap_or(0);
    d.into_iter().map(|x| (x - lo) as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_prefixes() {
        let a2 = anti_nacci(2, 11);
        assert_eq!(a2.sums, vec![3, 9, 13, 18, 23, 29, 33, 39, 43, 49, 53]);
        assert_eq!(
            &a2.complement()[..13],
            &[1, 2, 4, 5, 6, 7, 8, 10, 11, 12, 14, 15, 16]
        );
        let a3 = anti_nacci(3, 10);
        assert_eq!(a3.sums, vec![6, 16, 27, 36, 46, 57, 66, 75, 87, 96]);
    }

    #[test]
    fn partition_and_sums() {
        for k in 2..=5 {
            let n = 3000;
            let a = anti_nacci(k, n);
            let mut all: Vec<u64> = a.complement();
            all.extend(&a.sums);
            all.sort_unstable();
            let top = *a.sums.last().unwrap();
            let seen: Vec<u64> = all.iter().copied().take_while(|&v| v <= top).collect();
            // every positive integer below the last sum appears exactly once
            let below: Vec<u64> = seen.iter().copied().filter(|&v| v < a.missing[0][n - 1]).collect();
            assert_eq!(below, (1..a.missing[0][n - 1]).collect::<Vec<_>>());
            for i in 0..n {
                let s: u64 = a.missing.iter().map(|m| m[i]).sum();
                assert_eq!(s, a.sums[i]);
            }
        }
    }

    #[test]
    fn teranacci_c_exceeds_three() {
        let b = remainder_bounds(4, 100_000);
        let c = b.iter().find(|r| r.0 == "C").unwrap();
        assert_eq!(c.2, 4);
        let e = b.iter().find(|r| r.0 == "E").unwrap();
        assert!(e.1 >= 0 && e.2 <= 3);
    }
}
