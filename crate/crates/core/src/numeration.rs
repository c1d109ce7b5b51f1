//! Numeration systems and their arithmetic recognizers.
//!
//! Zeckendorf representations are msd-first strings over `{0,1}` without two
//! adjacent ones; the digit at lsd position `i` weighs `F(i+2)` where
//! `F(0)=0, F(1)=1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use crate::automata::{Alphabet, Dfa, Order};
use crate::error::Result;
use crate::relation::Relation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NumerationSystem {
    Msd(u32),
    Lsd(u32),
    MsdFib,
}

impl NumerationSystem {
    pub const MSD_2: NumerationSystem = NumerationSystem::Msd(2);

    pub fn tag(self) -> String {
        match self {
            NumerationSystem::Msd(k) => format!("msd_{k}"),
            NumerationSystem::Lsd(k) => format!("lsd_{k}"),
            NumerationSystem::MsdFib => "msd_fib".into(),
        }
    }

    /// Size of the digit alphabet.
    pub fn digits(self) -> u32 {
        match self {
            NumerationSystem::Msd(k) | NumerationSystem::Lsd(k) => k,
            NumerationSystem::MsdFib => 2,
        }
    }

    pub fn order(self) -> Order {
        match self {
            NumerationSystem::Lsd(_) => Order::Lsd,
            _ => Order::Msd,
        }
    }

    pub fn is_fibonacci(self) -> bool {
        self == NumerationSystem::MsdFib
    }

    /// Weight of the digit at lsd position `i`.
    pub fn weight(self, i: usize) -> u64 {
        match self {
            NumerationSystem::Msd(k) | NumerationSystem::Lsd(k) => (k as u64).pow(i as u32),
            NumerationSystem::MsdFib => fibonacci(i + 2),
        }
    }

    /// Canonical representation, digits in reading order; zero is "0".
    pub fn encode(self, n: u64) -> Representation {
        let mut lsd = Vec::new();
        match self {
            NumerationSystem::Msd(k) | NumerationSystem::Lsd(k) => {
                let mut v = n;
                while v > 0 {
                    lsd.push((v % k as u64) as u32);
                    v /= k as u64;
                }
            }
            NumerationSystem::MsdFib => {
                // greedy: largest F(i+2) not exceeding the remainder
                let mut i = 0;
                while fibonacci(i + 3) <= n {
                    i += 1;
                }
                let mut rest = n;
                lsd = vec![0; if n == 0 { 0 } else { i + 1 }];
                for j in (0..lsd.len()).rev() {
                    let w = fibonacci(j + 2);
                    if w <= rest {
                        lsd[j] = 1;
                        rest -= w;
                    }
                }
            }
        }
        if lsd.is_empty() {
            lsd.push(0);
        }
        if self.order() == Order::Msd {
            lsd.reverse();
        }
        Representation {
            system: self,
            digits: lsd,
        }
    }

    /// Value of a digit string in reading order (padding allowed).
    pub fn decode(self, digits: &[u32]) -> u64 {
        let n = digits.len();
        digits
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let pos = match self.order() {
                    Order::Msd => n - 1 - i,
                    Order::Lsd => i,
                };
                d as u64 * self.weight(pos)
            })
            .sum()
    }

    /// Whether a digit string is a (possibly padded) valid representation.
    pub fn is_valid(self, digits: &[u32]) -> bool {
        digits.iter().all(|&d| d < self.digits())
            && !(self.is_fibonacci() && digits.windows(2).any(|w| w[0] == 1 && w[1] == 1))
    }

    /// Representations of `values`, zero-padded to a common length.
    pub fn encode_tuple(self, values: &[u64]) -> Vec<Vec<u32>> {
        let reps: Vec<Vec<u32>> = values.iter().map(|&v| self.encode(v).digits).collect();
        let len = reps.iter().map(Vec::len).max().unwrap_or(0);
        reps.into_iter().map(|r| self.pad(r, len)).collect()
    }

    pub fn pad(self, mut digits: Vec<u32>, len: usize) -> Vec<u32> {
        match self.order() {
            Order::Msd => {
                let mut padded = vec![0; len.saturating_sub(digits.len())];
                padded.append(&mut digits);
                padded
            }
            Order::Lsd => {
                digits.resize(len.max(digits.len()), 0);
                digits
            }
        }
    }

    // ---- recognizers -------------------------------------------------------

    /// Accepts tuples of valid representations on `tracks` tracks.
    pub fn valid_dfa(self, tracks: usize) -> Dfa {
        cached(self, Kind::Valid(tracks), || {
            let a = Alphabet::uniform(tracks, self.digits());
            if !self.is_fibonacci() {
                return Dfa::all(a);
            }
            let dead = 1usize << tracks;
            Dfa::from_fn(a.clone(), dead + 1, |q| q != dead, |q, s| {
                if q == dead {
                    return dead;
                }
                let mut mask = 0;
                for t in 0..tracks {
                    if a.digit(s, t) == 1 {
                        if q & (1 << t) != 0 {
                            return dead;
                        }
                        mask |= 1 << t;
                    }
                }
                mask
            })
            .minimize()
        })
    }

    /// Accepts `(x, y)` with `x = y`.
    pub fn eq_dfa(self) -> Dfa {
        cached(self, Kind::Eq, || {
            let a = Alphabet::uniform(2, self.digits());
            let d = Dfa::from_fn(a.clone(), 2, |q| q == 0, |q, s| {
                (q == 1 || a.digit(s, 0) != a.digit(s, 1)) as usize
            });
            d.and(&self.valid_dfa(2)).expect("same alphabet")
        })
    }

    /// Accepts `(x, y)` with `x < y`.
    pub fn less_dfa(self) -> Dfa {
        cached(self, Kind::Less, || {
            let a = Alphabet::uniform(2, self.digits());
            // 0: equal so far, 1: less, 2: greater
            let d = Dfa::from_fn(a.clone(), 3, |q| q == 1, |q, s| {
                let (x, y) = (a.digit(s, 0), a.digit(s, 1));
                match self.order() {
                    Order::Msd if q != 0 => q,
                    _ if x < y => 1,
                    _ if x > y => 2,
                    _ => q,
                }
            });
            d.and(&self.valid_dfa(2)).expect("same alphabet")
        })
    }

    /// Accepts `(x, y, z)` with `x + y = z`.
    pub fn add_dfa(self) -> Dfa {
        cached(self, Kind::Add, || match self {
            NumerationSystem::Lsd(k) => lsd_adder(k),
            NumerationSystem::Msd(k) => lsd_adder(k).reverse().expect("small automaton"),
            NumerationSystem::MsdFib => zeckendorf_adder(),
        })
    }

    /// Accepts exactly the representations of `c`.
    pub fn const_dfa(self, c: u64) -> Dfa {
        cached(self, Kind::Const(c), || {
            let a = Alphabet::uniform(1, self.digits());
            let digits = if c == 0 { Vec::new() } else { self.encode(c).digits };
            let len = digits.len();
            let dead = len + 1;
            // states 0..=len count matched digits; padding loops at 0 (msd) or len (lsd)
            Dfa::from_fn(a, len + 2, |q| q == len, |q, s| {
                let s = s as u32;
                if q == dead {
                    dead
                } else if q < len && digits[q] == s {
                    q + 1
                } else if s == 0 && ((self.order() == Order::Msd && q == 0) || (self.order() == Order::Lsd && q == len)) {
                    q
                } else {
                    dead
                }
            })
            .minimize()
        })
    }

    /// Accepts `(x, r)` with `r = c·x`.
    pub fn mul_dfa(self, c: u64) -> Result<Dfa> {
        if let Some(d) = lookup(self, Kind::Mul(c)) {
            return Ok(d);
        }
        let d = if c == 0 {
            let zero = Relation::bind(&self.const_dfa(0), &["r"], self)?;
            let any_x = Relation::bind(&self.valid_dfa(1), &["x"], self)?;
            zero.and(&any_x, self)?.into_dfa()
        } else {
            let add = self.add_dfa();
            let mut acc = Relation::bind(&self.eq_dfa(), &["x", "r"], self)?;
            let bits = 64 - c.leading_zeros();
            for b in (0..bits - 1).rev() {
                // r' = 2r (+ x)
                let prev = Relation::bind(&acc.arrange(&["x".into(), "r".into()], self)?, &["x", "p"], self)?;
                let dbl = Relation::bind(&add, &["p", "p", "q"], self)?;
                let mut next = prev.and(&dbl, self)?.exists("p", self)?;
                if c >> b & 1 == 1 {
                    let plus = Relation::bind(&add, &["q", "x", "r"], self)?;
                    next = next.and(&plus, self)?.exists("q", self)?;
                } else {
                    next = Relation::bind(&next.arrange(&["q".into(), "x".into()], self)?, &["r", "x"], self)?;
                }
                acc = next;
            }
            acc.arrange(&["x".into(), "r".into()], self)?
        };
        store(self, Kind::Mul(c), &d);
        Ok(d)
    }

    /// Accepts `(t, r)` with `r = floor(t / c)`, `c ≥ 1`.
    pub fn div_dfa(self, c: u64) -> Result<Dfa> {
        assert!(c >= 1, "division by zero");
        if let Some(d) = lookup(self, Kind::Div(c)) {
            return Ok(d);
        }
        // exists p, m: p = c*r, p + m = t, m < c
        let mul = Relation::bind(&self.mul_dfa(c)?, &["r", "p"], self)?;
        let add = Relation::bind(&self.add_dfa(), &["p", "m", "t"], self)?;
        let bound = Relation::bind(&self.less_dfa(), &["m", "e"], self)?
            .and(&Relation::bind(&self.const_dfa(c), &["e"], self)?, self)?
            .exists("e", self)?;
        let rel = mul
            .and(&add, self)?
            .exists("p", self)?
            .and(&bound, self)?
            .exists("m", self)?;
        let d = rel.arrange(&["t".into(), "r".into()], self)?;
        store(self, Kind::Div(c), &d);
        Ok(d)
    }

    /// Accepts the Fibonacci numbers `n ≥ 1` (Zeckendorf `10*`).
    pub fn isfib_dfa() -> Dfa {
        cached(NumerationSystem::MsdFib, Kind::IsFib, || {
            let a = Alphabet::uniform(1, 2);
            // 0: leading zeros, 1: seen the one, 2: dead
            Dfa::from_fn(a, 3, |q| q == 1, |q, s| match (q, s) {
                (0, 0) => 0,
                (0, 1) => 1,
                (1, 0) => 1,
                _ => 2,
            })
            .minimize()
        })
    }
}

impl fmt::Display for NumerationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for NumerationSystem {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "msd_fib" {
            return Ok(NumerationSystem::MsdFib);
        }
        let (order, base) = s
            .split_once('_')
            .ok_or_else(|| format!("unknown numeration system `{s}`"))?;
        let k: u32 = base
            .parse()
            .map_err(|_| format!("unknown numeration system `{s}`"))?;
        if !(2..=10).contains(&k) {
            return Err(format!("base {k} out of range 2..=10"));
        }
        match order {
            "msd" => Ok(NumerationSystem::Msd(k)),
            "lsd" => Ok(NumerationSystem::Lsd(k)),
            _ => Err(format!("unknown numeration system `{s}`")),
        }
    }
}

/// A digit string in a numeration system, in reading order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    pub system: NumerationSystem,
    pub digits: Vec<u32>,
}

impl Representation {
    pub fn value(&self) -> u64 {
        self.system.decode(&self.digits)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

pub fn fibonacci(n: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        let c = a.saturating_add(b);
        a = b;
        b = c;
    }
    a
}

fn lsd_adder(k: u32) -> Dfa {
    let a = Alphabet::uniform(3, k);
    // 0, 1: carry, 2: dead
    Dfa::from_fn(a.clone(), 3, |q| q == 0, |q, s| {
        if q == 2 {
            return 2;
        }
        let (x, y, z) = (a.digit(s, 0), a.digit(s, 1), a.digit(s, 2));
        let sum = x + y + q as u32;
        if sum % k == z {
            (sum / k) as usize
        } else {
            2
        }
    })
    .minimize()
}

/// Msd-first Zeckendorf adder. After reading prefixes with Fibonacci values
/// `(p, q)` (value and value shifted down one position) per track, the state
/// keeps `P = px+py-pz`, `Q = qx+qy-qz` and the last digit of each track;
/// appending digits `d` maps `(P, Q)` to `(P+Q+d, P+d)`. Acceptance is `P = 0`.
/// States leaving the bounded window can never return to `P = 0`.
fn zeckendorf_adder() -> Dfa {
    const BOUND: i64 = 64;
    let a = Alphabet::uniform(3, 2);
    let mut ids: HashMap<(i64, i64, u8), usize> = HashMap::new();
    let mut states: Vec<(i64, i64, u8)> = vec![(0, 0, 0)];
    ids.insert((0, 0, 0), 0);
    let dead = usize::MAX;
    let mut trans: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (p, q, last) = states[i];
        let mut row = Vec::with_capacity(8);
        for s in 0..a.len() {
            let ds: Vec<u32> = a.digits(s);
            let mask = (ds[0] | ds[1] << 1 | ds[2] << 2) as u8;
            if mask & last != 0 {
                row.push(dead);
                continue;
            }
            let d = ds[0] as i64 + ds[1] as i64 - ds[2] as i64;
            let (np, nq) = (p + q + d, p + d);
            if np.abs() > BOUND || nq.abs() > BOUND {
                row.push(dead);
                continue;
            }
            let key = (np, nq, mask);
            let id = *ids.entry(key).or_insert_with(|| {
                states.push(key);
                states.len() - 1
            });
            row.push(id);
        }
        trans.push(row);
        i += 1;
    }
    let sink = states.len();
    Dfa::from_fn(a, sink + 1, |q| q < sink && states[q].0 == 0, |q, s| {
        if q == sink {
            sink
        } else {
            match trans[q][s] {
                usize::MAX => sink,
                t => t,
            }
        }
    })
    .minimize()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Valid(usize),
    Eq,
    Less,
    Add,
    Const(u64),
    Mul(u64),
    Div(u64),
    IsFib,
}

type Cache = Mutex<HashMap<(NumerationSystem, Kind), Dfa>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn lookup(sys: NumerationSystem, kind: Kind) -> Option<Dfa> {
    cache().lock().unwrap().get(&(sys, kind)).cloned()
}

fn store(sys: NumerationSystem, kind: Kind, dfa: &Dfa) {
    cache().lock().unwrap().insert((sys, kind), dfa.clone());
}

fn cached(sys: NumerationSystem, kind: Kind, build: impl FnOnce() -> Dfa) -> Dfa {
    if let Some(d) = lookup(sys, kind) {
        return d;
    }
    let d = build();
    store(sys, kind, &d);
    d
}
