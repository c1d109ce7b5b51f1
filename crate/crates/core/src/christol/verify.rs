use super::field::FqField;
use crate::automata::Verdict;
use crate::error::{Error, Result};
use crate::logic::{Outcome, Session};
use crate::numeration::NumerationSystem;
use crate::oracles::{expand_poly_fq, SmallField};
use crate::words::Word;

/// A coefficient that disagrees with direct expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponents: Vec<u64>,
    pub k: u64,
    pub expected: u32,
    pub found: u32,
}

#[derive(Clone, Debug, Default)]
pub struct CoReport {
    /// Exponent tuples compared against expansion.
    pub tuples: usize,
    pub mismatch: Option<Mismatch>,
    /// Named inductive identities with their verdicts.
    pub identities: Vec<(String, Verdict)>,
}

impl CoReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none() && self.identities.iter().all(|(_, v)| v.is_true())
    }

    pub fn failed_identities(&self) -> Vec<&str> {
        self.identities
            .iter()
            .filter(|(_, v)| !v.is_true())
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

fn field_of(co: &Word) -> Result<(u32, FqField)> {
    let q = match co.system() {
        NumerationSystem::Lsd(q) => q,
        s => return Err(Error::Unsupported(format!("coefficient automata read lsd, not {s}"))),
    };
    if co.arity() != q as usize {
        return Err(Error::Arity {
            name: co.name().to_string(),
            expected: q as usize,
            found: co.arity(),
        });
    }
    Ok((q, FqField::new(q)?))
}

/// Compares `co` with expansion on the given exponent tuples, for every
/// `k` up to two past the degree.
pub fn check_tuples<'a>(
    co: &Word,
    tuples: impl IntoIterator<Item = &'a [u64]>,
) -> Result<(usize, Option<Mismatch>)> {
    let (q, _) = field_of(co)?;
    let field = SmallField::new(q).expect("checked field size");
    let mut count = 0;
    for exps in tuples {
        count += 1;
        let coeffs = expand_poly_fq(field, exps);
        for k in 0..coeffs.len() as u64 + 2 {
            let expected = coeffs.get(k as usize).copied().unwrap_or(0);
            let mut index = vec![k];
            index.extend_from_slice(exps);
            let found = co.at(&index);
            if found != expected {
                return Ok((
                    count,
                    Some(Mismatch {
                        exponents: exps.to_vec(),
                        k,
                        expected,
                        found,
                    }),
                ));
            }
        }
    }
    Ok((count, None))
}

/// All exponent tuples of length `len` with sum at most `bound`.
pub fn tuples_up_to(len: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; len];
    fn rec(i: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out
}

/// Statements that, taken together, prove `co` correct by induction on the
/// exponents: the empty product is 1, and multiplying by `x - alpha` maps
/// coefficients `(f_a, f_{a+1})` to `f_a - alpha f_{a+1}` at `a + 1`, and
/// `f_0` to `-alpha f_0` at 0.
///
/// Returns `(name, script)` pairs; the step identities are the first
/// `(q - 1) q^2`.
pub fn identity_scripts(co: &Word) -> Result<Vec<(String, String)>> {
    let (q, f) = field_of(co)?;
    let name = co.name();
    let tag = co.system().tag();
    let vars: Vec<String> = (1..q).map(|i| format!("x{i}")).collect();
    let idx = |k: &str, bump: Option<usize>| -> String {
        let mut s = format!("{name}[{k}]");
        for (i, v) in vars.iter().enumerate() {
            if bump == Some(i) {
                s += &format!("[{v}+1]");
            } else {
                s += &format!("[{v}]");
            }
        }
        s
    };
    let all = vars.join(",");
    let mut out = Vec::new();
    for (i, &alpha) in f.roots().iter().enumerate() {
        for v0 in 0..q {
            for v1 in 0..q {
                let r = f.sub(v0, f.mul(alpha, v1));
                out.push((
                    format!("step{}_{v0}{v1}", i + 1),
                    format!(
                        "?{tag} Aa,{all} ({}=@{v1} & {}=@{v0}) => {}=@{r}",
                        idx("a+1", None),
                        idx("a", None),
                        idx("a+1", Some(i))
                    ),
                ));
            }
        }
    }
    for (i, &alpha) in f.roots().iter().enumerate() {
        for v in 0..q {
            let r = f.neg(f.mul(alpha, v));
            out.push((
                format!("base{}_{v}", i + 1),
                format!(
                    "?{tag} A{all} {}=@{v} => {}=@{r}",
                    idx("0", None),
                    idx("0", Some(i))
                ),
            ));
        }
    }
    let zeros = "[0]".repeat(vars.len());
    out.push((
        "empty".to_string(),
        format!("?{tag} {name}[0]{zeros}=@1 & Ak k>0 => {name}[k]{zeros}=@0"),
    ));
    Ok(out)
}

/// Proves the identities of [`identity_scripts`] with the logic engine.
pub fn check_identities(co: &Word) -> Result<Vec<(String, Verdict)>> {
    let mut session = Session::new();
    session.add_word(co.clone())?;
    let mut out = Vec::new();
    for (name, formula) in identity_scripts(co)? {
        let outcome = session.run_script(&format!("eval {name} \"{formula}\":"))?;
        match outcome.as_slice() {
            [Outcome::Evaluated(r)] => out.push((name, r.verdict.expect("closed statement"))),
            _ => unreachable!("one eval command"),
        }
    }
    Ok(out)
}

/// Expansion check for every exponent sum up to `bound`, followed by the
/// inductive identities.
pub fn verify_co(co: &Word, bound: u64) -> Result<CoReport> {
    let (q, _) = field_of(co)?;
    let tuples = tuples_up_to(q as usize - 1, bound);
    let (count, mismatch) = check_tuples(co, tuples.iter().map(Vec::as_slice))?;
    Ok(CoReport {
        tuples: count,
        mismatch,
        identities: check_identities(co)?,
    })
}
