use std::collections::BTreeMap;

use super::field::FqField;

/// A sparse polynomial in `x, y_1, ..., y_{q-1}` over a small field.
/// Exponent vectors list `x` first; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly {
    terms: BTreeMap<Vec<u32>, u32>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn constant(c: u32, vars: usize) -> MPoly {
        let mut p = MPoly::zero();
        p.add_term(vec![0; vars], c, None);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u32)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> u32 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// Adds `c` times the monomial; `field` is needed unless the monomial
    /// is new.
    fn add_term(&mut self, exps: Vec<u32>, c: u32, field: Option<&FqField>) {
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = field.expect("field for accumulation").add(*old, c);
                if s == 0 {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, other: &MPoly, f: &FqField) -> MPoly {
        let mut r = self.clone();
        for (e, c) in other.terms() {
            r.add_term(e.to_vec(), c, Some(f));
        }
        r
    }

    pub fn mul(&self, other: &MPoly, f: &FqField) -> MPoly {
        let mut r = MPoly::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                r.add_term(e, f.mul(ca, cb), Some(f));
            }
        }
        r
    }

    pub fn pow(&self, n: u32, f: &FqField) -> MPoly {
        let vars = self.terms.keys().next().map_or(1, Vec::len);
        (0..n).fold(MPoly::constant(1, vars), |acc, _| acc.mul(self, f))
    }

    /// Largest exponent of each variable.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = Vec::new();
        for (e, _) in self.terms() {
            d.resize(e.len(), 0);
            for (m, &x) in d.iter_mut().zip(e) {
                *m = (*m).max(x);
            }
        }
        d
    }
}

/// `Q = prod_i (1 - y_i (x - alpha_i))`, the denominator of the generating
/// series of all coefficients.
pub fn denominator(f: &FqField) -> MPoly {
    let q = f.size() as usize;
    let vars = q;
    let mut r = MPoly::constant(1, vars);
    for (i, &alpha) in f.roots().iter().enumerate() {
        // 1 - y x + alpha y
        let mut factor = MPoly::constant(1, vars);
        let mut yx = vec![0; vars];
        yx[0] = 1;
        yx[i + 1] = 1;
        factor.add_term(yx, f.neg(1), Some(f));
        let mut y = vec![0; vars];
        y[i + 1] = 1;
        factor.add_term(y, alpha, Some(f));
        r = r.mul(&factor, f);
    }
    r
}

/// The series `numerator / Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeriesState {
    pub numerator: MPoly,
}

impl SeriesState {
    pub fn initial(f: &FqField) -> SeriesState {
        SeriesState {
            numerator: MPoly::constant(1, f.size() as usize),
        }
    }

    /// Constant term of the series, which is the numerator's since `Q(0) = 1`.
    pub fn output(&self) -> u32 {
        let vars = self.numerator.terms().next().map_or(0, |(e, _)| e.len());
        self.numerator.coefficient(&vec![0; vars])
    }
}

/// The section `sum c_n z^n -> sum c_{qn+e} z^n`, componentwise in the
/// digits `e`, using `P/Q = P Q^{q-1} / Q(x^q, y^q)`.
pub fn cartier(s: &SeriesState, e: &[u32], f: &FqField) -> SeriesState {
    let q = f.size();
    let qq = denominator(f).pow(q - 1, f);
    let prod = s.numerator.mul(&qq, f);
    let mut r = MPoly::zero();
    for (exps, c) in prod.terms() {
        if exps.iter().zip(e).all(|(x, d)| x % q == *d) {
            r.add_term(exps.iter().map(|x| x / q).collect(), c, Some(f));
        }
    }
    SeriesState { numerator: r }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_stays_zero() {
        let f = FqField::new(3).unwrap();
        let z = SeriesState { numerator: MPoly::zero() };
        assert!(cartier(&z, &[0, 0, 0], &f).numerator.is_zero());
    }

    #[test]
    fn binomial_parity_in_two_states() {
        let f = FqField::new(2).unwrap();
        let mut states = vec![SeriesState::initial(&f)];
        let mut i = 0;
        while i < states.len() {
            for e in [[0, 0], [0, 1], [1, 0], [1, 1]] {
                let t = cartier(&states[i], &e, &f);
                if !states.contains(&t) {
                    states.push(t);
                }
            }
            i += 1;
        }
        assert!(states.len() <= 2);
        // run k, n lsd first
        let co = |mut k: u32, mut n: u32| {
            let mut s = SeriesState::initial(&f);
            while k > 0 || n > 0 {
                s = cartier(&s, &[k % 2, n % 2], &f);
                k /= 2;
                n /= 2;
            }
            s.output()
        };
        for n in 0..=64u32 {
            for k in 0..=64u32 {
                let odd = k <= n && (k & !n) == 0;
                assert_eq!(co(k, n), odd as u32, "k={k} n={n}");
            }
        }
    }
}
