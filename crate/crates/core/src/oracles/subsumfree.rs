//! Greedy sequences avoiding sums of three distinct earlier terms.

/// The first `terms` entries of the greedy sequence starting `x, y, z`.
pub fn subsumfree(x: u64, y: u64, z: u64, terms: usize) -> Vec<u64> {
    assert!(x < y && y < z, "start must be increasing");
    let mut seq: Vec<u64> = [x, y, z].into_iter().take(terms).collect();
    // pairs[s] = number of pairs i < j with a_i + a_j = s
    let mut pairs: Vec<u32> = Vec::new();
    let mut member: Vec<bool> = Vec::new();
    let add = |seq: &Vec<u64>, pairs: &mut Vec<u32>, member: &mut Vec<bool>, v: u64| {
        let v = v as usize;
        if member.len() <= v {
            member.resize(2 * v + 1, false);
        }
        member[v] = true;
        for &a in seq.iter() {
            let s = a as usize + v;
            if pairs.len() <= s {
                pairs.resize(2 * s + 1, 0);
            }
            pairs[s] += 1;
        }
    };
    let mut built = Vec::new();
    for &v in &seq {
        add(&built, &mut pairs, &mut member, v);
        built.push(v);
    }
    let is_member = |m: &Vec<bool>, v: u64| m.get(v as usize).copied().unwrap_or(false);
    while seq.len() < terms {
        let mut v = seq[seq.len() - 1] + 1;
        'search: loop {
            // v = a_k + (a_i + a_j) with k outside {i, j}
            let mut forbidden = false;
            for &a in &seq {
                if a >= v {
                    break;
                }
                let s = (v - a) as usize;
                let total = pairs.get(s).copied().unwrap_or(0);
                if total == 0 {
                    continue;
                }
                let b = s as u64;
                let with_a = (b > a && b - a != a && is_member(&member, b - a)) as u32;
                if total > with_a {
                    forbidden = true;
                    break;
                }
            }
            if !forbidden {
                break 'search;
            }
            v += 1;
        }
        add(&seq, &mut pairs, &mut member, v);
        seq.push(v);
    }
    seq
}

/// Successive differences.
pub fn differences(seq: &[u64]) -> Vec<u64> {
    seq.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Positions (1-based `n`, `n > 6`) where `a_{n+6} - a_{n+5} = a_{n+1} - a_n` fails.
pub fn stephan_failures(seq: &[u64]) -> Vec<usize> {
    let a = |n: usize| seq[n - 1];
    (7..)
        .take_while(|&n| n + 6 <= seq.len())
        .filter(|&n| a(n + 6) - a(n + 5) != a(n + 1) - a(n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slow(x: u64, y: u64, z: u64, terms: usize) -> Vec<u64> {
        let mut s = vec![x, y, z];
        while s.len() < terms {
            let mut v = s[s.len() - 1] + 1;
            loop {
                let n = s.len();
                let mut hit = false;
                for i in 0..n {
                    for j in i + 1..n {
                        for k in j + 1..n {
                            hit |= s[i] + s[j] + s[k] == v;
                        }
                    }
                }
                if !hit {
                    break;
                }
                v += 1;
            }
            s.push(v);
        }
        s
    }

    #[test]
    fn listed_prefix() {
        assert_eq!(
            subsumfree(1, 2, 3, 18),
            vec![1, 2, 3, 4, 5, 13, 14, 15, 25, 26, 27, 37, 38, 48, 49, 50, 60, 61]
        );
        assert_eq!(
            &differences(&subsumfree(1, 2, 3, 14))[..],
            &[1, 1, 1, 1, 8, 1, 1, 10, 1, 1, 10, 1, 10]
        );
    }

    #[test]
    fn matches_triple_loop() {
        for (x, y, z) in [(1, 2, 3), (1, 3, 4), (1, 4, 8), (1, 5, 12), (2, 3, 7)] {
            assert_eq!(subsumfree(x, y, z, 60), slow(x, y, z, 60), "{x},{y},{z}");
        }
    }

    #[test]
    fn seq148_residues() {
        let s = subsumfree(1, 4, 8, 200);
        let top = *s.last().unwrap();
        let expected: Vec<u64> = (1..=top)
            .filter(|&z| [1, 4, 11, 12].contains(&z) || (z >= 8 && (6..=10).contains(&(z % 28))))
            .collect();
        assert_eq!(s, expected);
    }
}
