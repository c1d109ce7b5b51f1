//! Counting distinct k-kernel subsequences visible in a prefix.

/// Number of distinct subsequences `n -> s(k^e n + r)` seen in the prefix,
/// for every `e` whose subsequences still have `min_overlap` known terms.
/// Two subsequences are identified when they agree on their common known
/// terms.
pub fn kernel_classes(seq: &[u64], k: usize, min_overlap: usize) -> usize {
    let mut reps: Vec<Vec<u64>> = Vec::new();
    let mut stride = 1usize;
    while seq.len() / stride >= min_overlap {
        for r in 0..stride {
            let sub: Vec<u64> = seq[r..].iter().step_by(stride).copied().collect();
            let known = reps.iter().any(|q| {
                let m = q.len().min(sub.len());
                q[..m] == sub[..m]
            });
            if !known {
                reps.push(sub);
            }
        }
        stride *= k;
    }
    reps.len()
}

/// Kernel class counts for each prefix length in `lens`.
pub fn kernel_evidence(seq: &[u64], k: usize, lens: &[usize]) -> Vec<usize> {
    lens.iter()
        .map(|&l| kernel_classes(&seq[..l.min(seq.len())], k, 16))
        .collect()
}
