use std::collections::HashMap;

use super::field::FqField;
use super::series::denominator;
#[cfg(test)]
use super::series::SeriesState;
use crate::automata::{Alphabet, Dfao};
use crate::error::{Error, Result};

/// Numerators reachable from `1/Q` have `x`-degree below `q` and degree at
/// most 1 in each `y_i`; such a numerator is stored densely with index
/// `x + q * (bit pattern of the y exponents)`.
struct Dense<'f> {
    f: &'f FqField,
    q: usize,
    /// `Q^{q-1}` as `(x, y exponents, coefficient)`.
    qpow: Vec<(usize, Vec<usize>, u32)>,
    /// Extent of a product in `x` and in each `y_i`.
    rx: usize,
    ry: usize,
}

impl Dense<'_> {
    fn slots(&self) -> usize {
        self.q << (self.q - 1)
    }

    fn product(&self, num: &[u8]) -> Vec<u8> {
        let (q, f) = (self.q, self.f);
        let vars = q - 1;
        let mut r = vec![0u8; self.rx * self.ry.pow(vars as u32)];
        for (slot, &c) in num.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (px, bits) = (slot % q, slot / q);
            for (qx, qy, qc) in &self.qpow {
                let mut idx = 0;
                for i in (0..vars).rev() {
                    idx = idx * self.ry + qy[i] + (bits >> i & 1);
                }
                let idx = idx * self.rx + px + qx;
                r[idx] = f.add(r[idx] as u32, f.mul(c as u32, *qc)) as u8;
            }
        }
        r
    }

    fn section(&self, r: &[u8], e: &[u32]) -> Vec<u8> {
        let q = self.q;
        let vars = q - 1;
        let mut out = vec![0u8; self.slots()];
        for (slot, o) in out.iter_mut().enumerate() {
            let (x, bits) = (slot % q, slot / q);
            let rx = q * x + e[0] as usize;
            if rx >= self.rx {
                continue;
            }
            let mut idx = 0;
            let mut inside = true;
            for i in (0..vars).rev() {
                let y = q * (bits >> i & 1) + e[i + 1] as usize;
                inside &= y < self.ry;
                idx = idx * self.ry + y;
            }
            if inside {
                *o = r[idx * self.rx + rx];
            }
        }
        out
    }
}

/// The coefficient automaton `co_q`: reading `k, a_1, ..., a_{q-1}` least
/// significant digit first, it outputs the coefficient of `x^k` in
/// `prod_i (x - alpha_i)^{a_i}` over `F_q`.
///
/// States are the distinct numerators of the sections of the generating
/// series, numbered in breadth-first order.
pub fn build_co(q: u32) -> Result<Dfao> {
    let f = FqField::new(q)?;
    let qu = q as usize;
    let qpow = denominator(&f)
        .pow(q - 1, &f)
        .terms()
        .map(|(e, c)| (e[0] as usize, e[1..].iter().map(|&y| y as usize).collect(), c))
        .collect();
    let dense = Dense {
        f: &f,
        q: qu,
        qpow,
        rx: qu * (qu - 1) + 1,
        ry: qu + 1,
    };
    let alphabet = Alphabet::uniform(qu, q);
    let symbols: Vec<Vec<u32>> = (0..alphabet.len()).map(|s| alphabet.digits(s)).collect();
    let budget = qu.pow(q);

    let mut one = vec![0u8; dense.slots()];
    one[0] = 1;
    let mut ids: HashMap<Vec<u8>, u32> = HashMap::from([(one.clone(), 0)]);
    let mut states = vec![one];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < states.len() {
        crate::limits::check_time()?;
        let r = dense.product(&states[i]);
        for e in &symbols {
            let next = dense.section(&r, e);
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    let id = states.len() as u32;
                    if states.len() >= budget {
                        return Err(Error::StateLimit { limit: budget });
                    }
                    ids.insert(next.clone(), id);
                    states.push(next);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let output = states.iter().map(|s| s[0] as u32).collect();
    Dfao::new(alphabet, delta, output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::christol::series::cartier;

    /// The same closure with the sparse section operator.
    fn sparse_table(q: u32) -> (Vec<u32>, Vec<u32>) {
        let f = FqField::new(q).unwrap();
        let alphabet = Alphabet::uniform(q as usize, q);
        let mut states = vec![SeriesState::initial(&f)];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < states.len() {
            for sym in 0..alphabet.len() {
                let t = cartier(&states[i], &alphabet.digits(sym), &f);
                let id = match states.iter().position(|s| *s == t) {
                    Some(id) => id,
                    None => {
                        states.push(t);
                        states.len() - 1
                    }
                };
                delta.push(id as u32);
            }
            i += 1;
        }
        (delta, states.iter().map(SeriesState::output).collect())
    }

    #[test]
    fn dense_matches_sparse() {
        for q in 2..=4 {
            let co = build_co(q).unwrap();
            let (delta, out) = sparse_table(q);
            assert_eq!(co.outputs(), &out[..], "q={q}");
            let n = co.alphabet().len();
            for s in 0..co.states() {
                for sym in 0..n {
                    assert_eq!(co.step(s, sym) as u32, delta[s * n + sym]);
                }
            }
        }
    }

    #[test]
    fn state_counts() {
        assert_eq!(build_co(3).unwrap().states(), 9);
        assert_eq!(build_co(3).unwrap().transitions(), 243);
        assert!(build_co(2).unwrap().states() <= 2);
        assert_eq!(build_co(4).unwrap().states(), 46);
        assert_eq!(build_co(4).unwrap().minimize().states(), 46);
    }

    #[test]
    fn deterministic() {
        assert_eq!(build_co(4).unwrap(), build_co(4).unwrap());
    }
}
