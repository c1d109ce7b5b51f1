//! Polynomial products over small finite fields, and the all-nonzero degrees.

/// `F_q` for `q` in 2, 3, 4, 5. Elements of `F_4` are bit pairs of a
/// polynomial in `g` over `F_2` reduced by `g^2 + g + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallField(u32);

impl SmallField {
    pub fn new(q: u32) -> Option<SmallField> {
        matches!(q, 2..=5).then_some(SmallField(q))
    }

    pub fn size(self) -> u32 {
        self.0
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        if self.0 == 4 {
            a ^ b
        } else {
            (a + b) % self.0
        }
    }

    pub fn neg(self, a: u32) -> u32 {
        if self.0 == 4 {
            a
        } else {
            (self.0 - a) % self.0
        }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        if self.0 != 4 {
            return a * b % self.0;
        }
        // carry-less product, then g^2 = g + 1
        let mut p = 0;
        for i in 0..2 {
            if b >> i & 1 == 1 {
                p ^= a << i;
            }
        }
        if p & 4 != 0 {
            p ^= 0b111;
        }
        p
    }

    /// The nonzero roots, in the order their exponents are given: `1, 2`
    /// for `F_3`, `1, g, g^2 = g + 1` for `F_4` and `2, 1, -1, -2` for `F_5`.
    pub fn roots(self) -> Vec<u32> {
        if self.0 == 5 {
            vec![2, 1, 4, 3]
        } else {
            (1..self.0).collect()
        }
    }
}

/// Coefficients (constant term first) of `prod (x - alpha_i)^{e_i}`.
pub fn expand_poly_fq(field: SmallField, exponents: &[u64]) -> Vec<u32> {
    let mut f = vec![1u32];
    for (&alpha, &e) in field.roots().iter().zip(exponents) {
        let c = field.neg(alpha);
        for _ in 0..e {
            let mut g = vec![0; f.len() + 1];
            for (i, &a) in f.iter().enumerate() {
                g[i + 1] = field.add(g[i + 1], a);
                g[i] = field.add(g[i], field.mul(a, c));
            }
            f = g;
        }
    }
    f
}

/// A polynomial mod 3 in two bit planes: bit `i` of `one` (of `two`) is set
/// when the coefficient of `x^i` is 1 (is 2).
#[derive(Clone)]
struct Mod3Poly {
    one: Vec<u64>,
    two: Vec<u64>,
}

impl Mod3Poly {
    fn new(words: usize) -> Self {
        let mut p = Mod3Poly {
            one: vec![0; words],
            two: vec![0; words],
        };
        p.one[0] = 1;
        p
    }

    /// `self * (x + s)` for `s` in {1, 2}, the degree growing to `deg`.
    fn mul_linear(&mut self, s: u32, deg: usize) {
        let words = deg / 64 + 1;
        let mut c1 = 0u64;
        let mut c2 = 0u64;
        for w in 0..words {
            let (a1, a2) = (self.one[w], self.two[w]);
            // shifted copy: x * self
            let b1 = a1 << 1 | c1;
            let b2 = a2 << 1 | c2;
            c1 = a1 >> 63;
            c2 = a2 >> 63;
            // s * self
            let (d1, d2) = if s == 1 { (a1, a2) } else { (a2, a1) };
            let z = !(d1 | d2);
            self.one[w] = (b1 & z) | (!(b1 | b2) & d1) | (b2 & d2);
            self.two[w] = (b2 & z) | (!(b1 | b2) & d2) | (b1 & d1);
        }
    }

    /// Whether coefficients `0..=deg` are all nonzero.
    fn all_nonzero(&self, deg: usize) -> bool {
        let full = deg / 64;
        for w in 0..full {
            if self.one[w] | self.two[w] != u64::MAX {
                return false;
            }
        }
        let bits = deg % 64 + 1;
        let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        (self.one[full] | self.two[full]) & mask == mask
    }
}

/// Degrees `n < limit` for which some `(x - 1)^c (x + 1)^d` with `c + d = n`
/// has no zero coefficient mod 3.
pub fn co3_all_nonzero_degrees(limit: usize) -> Vec<usize> {
    if limit == 0 {
        return Vec::new();
    }
    let words = limit / 64 + 2;
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let found: Vec<Vec<bool>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                scope.spawn(move || {
                    let mut hit = vec![false; limit];
                    let mut base = Mod3Poly::new(words);
                    for c in 0..limit {
                        if c > 0 {
                            base.mul_linear(2, c);
                        }
                        if c % threads != t {
                            continue;
                        }
                        let mut p = base.clone();
                        for n in c..limit {
                            if n > c {
                                p.mul_linear(1, n);
                            }
                            if !hit[n] && p.all_nonzero(n) {
                                hit[n] = true;
                            }
                        }
                    }
                    hit
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    (0..limit).filter(|&n| found.iter().any(|h| h[n])).collect()
}

/// Whether every coefficient of `(x - 1)^c (x + 1)^d` is nonzero mod 3.
pub fn all_nonzero_mod3(c: usize, d: usize) -> bool {
    let n = c + d;
    let mut p = Mod3Poly::new(n / 64 + 2);
    for i in 1..=c {
        p.mul_linear(2, i);
    }
    for i in c + 1..=n {
        p.mul_linear(1, i);
    }
    p.all_nonzero(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_expansions() {
        let f2 = SmallField::new(2).unwrap();
        assert_eq!(expand_poly_fq(f2, &[3]), vec![1, 1, 1, 1]);
        let f3 = SmallField::new(3).unwrap();
        assert_eq!(expand_poly_fq(f3, &[1, 1]), vec![2, 0, 1]);
    }

    #[test]
    fn f4_is_a_field() {
        let f = SmallField::new(4).unwrap();
        for a in 1..4 {
            assert_eq!((1..4).filter(|&b| f.mul(a, b) == 1).count(), 1);
        }
        // g^2 = g + 1
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn degree_100_example() {
        let f = SmallField::new(4).unwrap();
        let c = expand_poly_fq(f, &[28, 35, 37]);
        assert_eq!(c.len(), 101);
        assert!(c.iter().all(|&x| x != 0));
    }

    #[test]
    fn low_degrees() {
        let slow: Vec<usize> = (0..200)
            .filter(|&n| {
                let f = SmallField::new(3).unwrap();
                (0..=n).any(|c| expand_poly_fq(f, &[c as u64, (n - c) as u64]).iter().all(|&x| x != 0))
            })
            .collect();
        assert_eq!(co3_all_nonzero_degrees(200), slow);
    }

    #[test]
    fn mod3_check_matches_expansion() {
        let f = SmallField::new(3).unwrap();
        for c in 0..70 {
            for d in 0..70 {
                let e = expand_poly_fq(f, &[c as u64, d as u64]);
                assert_eq!(all_nonzero_mod3(c, d), e.iter().all(|&x| x != 0), "{c} {d}");
            }
        }
    }
}
