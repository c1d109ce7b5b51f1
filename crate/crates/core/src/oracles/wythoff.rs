//! Upper Wythoff numbers, their unsums, and the gap structure.

/// `floor(n * phi)`, exactly: `(n + isqrt(5 n^2)) / 2`.
pub fn floor_phi(n: u64) -> u64 {
    (n + (5 * n * n).isqrt()) / 2
}

/// Upper Wythoff numbers `floor(n phi^2) = n + floor(n phi)`, `n ≥ 1`, up to `limit`.
pub fn upper_wythoff(limit: u64) -> Vec<u64> {
    (1..)
        .map(|n| n + floor_phi(n))
        .take_while(|&v| v <= limit)
        .collect()
}

/// Numbers in `1..=limit` that are not `a + b` with `a < b` upper Wythoff.
pub fn unsums(limit: u64) -> Vec<u64> {
    let uw = upper_wythoff(limit);
    let words = (limit as usize + 64) / 64;
    let mut present = vec![0u64; words];
    for &b in &uw {
        present[b as usize / 64] |= 1 << (b % 64);
    }
    let mut sums = vec![0u64; words];
    for &a in &uw {
        // add {a + b : b in uw, b > a}
        let shift = a as usize;
        let (ws, bs) = (shift / 64, shift % 64);
        let lo = a as usize + 1;
        for w in lo / 64..words {
            let mut bits = present[w];
            if w == lo / 64 {
                bits &= !0u64 << (lo % 64);
            }
            if bits == 0 {
                continue;
            }
            let t = w + ws;
            if t < words {
                sums[t] |= bits << bs;
            }
            if bs > 0 && t + 1 < words {
                sums[t + 1] |= bits >> (64 - bs);
            }
        }
    }
    (1..=limit)
        .filter(|&n| sums[n as usize / 64] >> (n % 64) & 1 == 0)
        .collect()
}

/// The first `len` letters of the Fibonacci word (0 for a, 1 for b), by
/// concatenating `s_{n+1} = s_n s_{n-1}`.
pub fn fibonacci_word(len: usize) -> Vec<u8> {
    let mut prev = vec![0u8];
    let mut cur = vec![0u8, 1];
    while cur.len() < len {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = std::mem::replace(&mut cur, next);
    }
    cur.truncate(len);
    cur
}

/// Values `n > 13` with `n` and `n + 2` both in `unsums` (sorted).
pub fn markers(unsums: &[u64]) -> Vec<u64> {
    let set: std::collections::HashSet<u64> = unsums.iter().copied().collect();
    unsums
        .iter()
        .copied()
        .filter(|&n| n > 13 && set.contains(&(n + 2)))
        .collect()
}

/// Successive differences.
pub fn gaps(seq: &[u64]) -> Vec<u64> {
    seq.windows(2).map(|w| w[1] - w[0]).collect()
}

/// The blocks between the marker gaps 2 that follow the irregular prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalindromeBlocks {
    /// Length of the prefix up to and including the last gap 1.
    pub prefix_len: usize,
    /// `W_1, W_2, ...`, one per pair of equal consecutive blocks.
    pub words: Vec<Vec<u64>>,
    /// Description of the first structural violation, if any.
    pub defect: Option<String>,
}

impl PalindromeBlocks {
    pub fn digit_sums(&self) -> Vec<u64> {
        self.words.iter().map(|w| w.iter().sum()).collect()
    }

    pub fn all_palindromes(&self) -> bool {
        self.words
            .iter()
            .all(|w| w.iter().eq(w.iter().rev()))
    }
}

pub fn palindrome_blocks(gapseq: &[u64]) -> PalindromeBlocks {
    let prefix_len = gapseq.iter().rposition(|&g| g == 1).map_or(0, |i| i + 1);
    let rest = &gapseq[prefix_len..];
    let mut defect = None;
    if rest.first() != Some(&2) {
        defect = Some("no marker after the irregular prefix".to_string());
    }
    let mut blocks: Vec<&[u64]> = rest.split(|&g| g == 2).skip(1).collect();
    // the last block is cut off by the end of the prefix
    blocks.pop();
    let mut words = Vec::new();
    for pair in blocks.chunks(2) {
        if pair.len() < 2 {
            break;
        }
        if pair[0] != pair[1] && defect.is_none() {
            defect = Some(format!("block {} is not repeated", words.len() + 1));
        }
        words.push(pair[0].to_vec());
    }
    PalindromeBlocks {
        prefix_len,
        words,
        defect,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_word_prefix() {
        let f = fibonacci_word(13);
        assert_eq!(f, [0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1]);
        // positions of b, counted from 1, are upper Wythoff numbers
        let b: Vec<u64> = fibonacci_word(100)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .map(|(i, _)| i as u64 + 1)
            .collect();
        assert_eq!(b, upper_wythoff(100));
    }

    #[test]
    fn beatty_floor_matches_float_for_small_n() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        for n in 0..10_000u64 {
            assert_eq!(floor_phi(n), (n as f64 * phi).floor() as u64);
        }
    }

    #[test]
    fn first_upper_wythoff() {
        assert_eq!(
            upper_wythoff(31),
            vec![2, 5, 7, 10, 13, 15, 18, 20, 23, 26, 28, 31]
        );
    }

    #[test]
    fn unsums_against_double_loop() {
        let limit = 3000;
        let uw = upper_wythoff(limit);
        let mut is_sum = vec![false; limit as usize + 1];
        for (i, &a) in uw.iter().enumerate() {
            for &b in &uw[i + 1..] {
                if a + b <= limit {
                    is_sum[(a + b) as usize] = true;
                }
            }
        }
        let slow: Vec<u64> = (1..=limit).filter(|&n| !is_sum[n as usize]).collect();
        assert_eq!(unsums(limit), slow);
        assert_eq!(&unsums(14)[..], &[1, 2, 3, 4, 5, 6, 8, 10, 11, 13, 14]);
    }

    #[test]
    fn gap_prefix() {
        let g = gaps(&unsums(2000));
        let head: Vec<u64> = g.iter().take(16).copied().collect();
        assert_eq!(head, vec![1, 1, 1, 1, 1, 2, 2, 1, 2, 1, 2, 3, 2, 3, 2, 3]);
    }

    #[test]
    fn first_palindromes() {
        let p = palindrome_blocks(&gaps(&unsums(20_000)));
        assert_eq!(p.prefix_len, 10);
        assert_eq!(p.defect, None);
        let w: Vec<String> = p
            .words
            .iter()
            .take(5)
            .map(|w| w.iter().map(|d| d.to_string()).collect())
            .collect();
        assert_eq!(w, vec!["3", "33", "353", "35353", "35355353"]);
    }
}
