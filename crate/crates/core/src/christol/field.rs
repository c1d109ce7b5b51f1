use crate::error::{Error, Result};

/// The field with `q` elements for `q` in 2, 3, 4, 5.
///
/// Prime fields use residues. In `F_4` the element `a + b g` is stored as
/// `a + 2 b`, where `g^2 = g + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqField {
    q: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl FqField {
    pub fn new(q: u32) -> Result<FqField> {
        let n = q as usize;
        let (add, mul): (Vec<u8>, Vec<u8>) = match q {
            2 | 3 | 5 => (0..n * n)
                .map(|i| (((i / n + i % n) % n) as u8, ((i / n) * (i % n) % n) as u8))
                .unzip(),
            4 => {
                // powers of g: 1, g, g + 1
                const EXP: [usize; 3] = [1, 2, 3];
                let log = |a: usize| EXP.iter().position(|&e| e == a).unwrap();
                (0..16)
                    .map(|i| {
                        let (a, b) = (i / 4, i % 4);
                        let m = if a == 0 || b == 0 { 0 } else { EXP[(log(a) + log(b)) % 3] };
                        ((a ^ b) as u8, m as u8)
                    })
                    .unzip()
            }
            _ => return Err(Error::Unsupported(format!("no field with {q} elements here"))),
        };
        Ok(FqField { q, add, mul })
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize] as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// The roots `alpha_1, ..., alpha_{q-1}`, one per exponent track.
    ///
    /// For `q = 5` the order follows the factors `x-2, x-1, x+1, x+2`.
    pub fn roots(&self) -> Vec<u32> {
        match self.q {
            5 => vec![2, 1, 4, 3],
            q => (1..q).collect(),
        }
    }

    /// Display name of an element (`g` and `g^2` in `F_4`).
    pub fn name(&self, a: u32) -> String {
        match (self.q, a) {
            (4, 2) => "g".into(),
            (4, 3) => "g^2".into(),
            _ => a.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in 2..=5 {
            let f = FqField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                // frobenius is the identity
                let mut p = 1;
                for _ in 0..q {
                    p = f.mul(p, a);
                }
                assert_eq!(p, a);
                if a != 0 {
                    assert_eq!((0..q).filter(|&b| f.mul(a, b) == 1).count(), 1);
                }
                for b in 0..q {
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
        let f4 = FqField::new(4).unwrap();
        assert_eq!(f4.mul(2, 2), f4.add(2, 1));
        assert!(FqField::new(6).is_err());
    }
}
