//! Automatic words: DFAOs read in a fixed numeration system.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use crate::automata::format::{read_text, TrackDecl};
use crate::automata::{Alphabet, Dfao, Order};
use crate::error::{Error, Result};
use crate::numeration::NumerationSystem;

/// A named automatic word, possibly with several index tracks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    name: String,
    system: NumerationSystem,
    dfao: Dfao,
}

impl Word {
    pub fn new(name: impl Into<String>, system: NumerationSystem, dfao: Dfao) -> Result<Word> {
        let name = name.into();
        if dfao.alphabet().sizes().iter().any(|&s| s != system.digits()) {
            return Err(Error::AlphabetMismatch(format!(
                "word `{name}` has alphabet {} but is declared over {system}",
                dfao.alphabet()
            )));
        }
        Ok(Word { name, system, dfao })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn system(&self) -> NumerationSystem {
        self.system
    }

    pub fn dfao(&self) -> &Dfao {
        &self.dfao
    }

    /// Number of indices (`W[i][j]` has two).
    pub fn arity(&self) -> usize {
        self.dfao.tracks()
    }

    /// The letter at the given indices.
    pub fn at(&self, index: &[u64]) -> u32 {
        assert_eq!(index.len(), self.arity(), "wrong number of indices");
        let tracks = self.system.encode_tuple(index);
        self.dfao
            .eval_tracks(&tracks)
            .expect("canonical digits are in range")
    }

    pub fn prefix(&self, len: usize) -> Vec<u32> {
        (0..len as u64).map(|n| self.at(&[n])).collect()
    }

    pub fn to_text(&self) -> String {
        let systems = vec![self.system; self.arity()];
        self.dfao.to_text(Some(&systems))
    }

    pub fn from_text(name: impl Into<String>, text: &str) -> Result<Word> {
        let name = name.into();
        let file = read_text(text)?;
        let system = match file.system() {
            Some(s) => s,
            None if file.decls.iter().all(|d| matches!(d, TrackDecl::System(_))) => {
                return Err(Error::format(1, "word tracks must share one numeration system"))
            }
            None => return Err(Error::format(1, "word files need a numeration tag")),
        };
        Word::new(name, system, file.machine)
    }
}

pub fn load_word(name: &str, path: &Path) -> Result<Word> {
    let text = std::fs::read_to_string(path)?;
    Word::from_text(name, &text)
}

pub fn save_word(word: &Word, path: &Path) -> Result<()> {
    std::fs::write(path, word.to_text())?;
    Ok(())
}

/// A uniform morphism on letters `0..n`, with an optional coding of letters
/// to outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<Vec<u32>>,
    coding: Vec<u32>,
}

impl Morphism {
    /// Letters are `0..images.len()`; the coding defaults to the identity.
    pub fn new(images: Vec<Vec<u32>>, coding: Option<Vec<u32>>) -> Result<Morphism> {
        let n = images.len();
        let k = images.first().map_or(0, Vec::len);
        if n == 0 || k < 2 {
            return Err(Error::Morphism("images must have length at least 2".into()));
        }
        if images.iter().any(|im| im.len() != k) {
            return Err(Error::Morphism("images differ in length".into()));
        }
        if images.iter().flatten().any(|&l| l as usize >= n) {
            return Err(Error::Morphism("image uses an unknown letter".into()));
        }
        if images[0][0] != 0 {
            return Err(Error::Morphism("not prolongable on the first letter".into()));
        }
        let coding = coding.unwrap_or_else(|| (0..n as u32).collect());
        if coding.len() != n {
            return Err(Error::Morphism("coding has the wrong length".into()));
        }
        Ok(Morphism { images, coding })
    }

    /// Parses `a->ab, b->aa`; letters are numbered in order of first appearance
    /// on the left.
    pub fn parse(text: &str) -> Result<Morphism> {
        let mut rules = Vec::new();
        for rule in text.split(',') {
            let (l, r) = rule
                .split_once("->")
                .ok_or_else(|| Error::Morphism(format!("bad rule `{}`", rule.trim())))?;
            let l = l.trim();
            if l.chars().count() != 1 {
                return Err(Error::Morphism(format!("bad letter `{l}`")));
            }
            rules.push((l.chars().next().unwrap(), r.trim().to_string()));
        }
        let letters: Vec<char> = rules.iter().map(|r| r.0).collect();
        let index = |c: char| {
            letters
                .iter()
                .position(|&l| l == c)
                .map(|i| i as u32)
                .ok_or_else(|| Error::Morphism(format!("letter `{c}` has no image")))
        };
        let images = rules
            .iter()
            .map(|(_, r)| r.chars().map(index).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(images, None)
    }

    pub fn length(&self) -> usize {
        self.images[0].len()
    }

    /// Prefix of the fixed point, computed by iterating the morphism.
    pub fn iterate(&self, len: usize) -> Vec<u32> {
        let mut w = vec![0u32];
        while w.len() < len {
            w = w.iter().flat_map(|&l| self.images[l as usize].iter().copied()).collect();
        }
        w.truncate(len);
        w.into_iter().map(|l| self.coding[l as usize]).collect()
    }
}

/// The msd base-k DFAO of the fixed point starting with the first letter.
pub fn fixed_point_dfao(m: &Morphism) -> Dfao {
    let k = m.length();
    Dfao::from_fn(
        Alphabet::uniform(1, k as u32),
        m.images.len(),
        |q| m.coding[q],
        |q, d| m.images[q][d] as usize,
    )
    .minimize()
}

/// The Fibonacci word, `F[n] = 1` iff the Zeckendorf representation of `n`
/// ends in 1.
pub fn builtin_f() -> Word {
    let dfao = Dfao::from_fn(Alphabet::uniform(1, 2), 2, |q| q as u32, |_, d| d);
    Word::new("F", NumerationSystem::MsdFib, dfao).expect("binary alphabet")
}

/// The period-doubling word, fixed point of `0 -> 01, 1 -> 00`.
pub fn builtin_pd() -> Word {
    let m = Morphism::new(vec![vec![0, 1], vec![0, 0]], None).expect("valid morphism");
    Word::new("PD", NumerationSystem::Msd(2), fixed_point_dfao(&m)).expect("binary alphabet")
}

/// Builtin and loaded words, by name.
#[derive(Clone, Debug, Default)]
pub struct WordRegistry {
    words: HashMap<String, Arc<Word>>,
}

impl WordRegistry {
    pub fn with_builtins() -> Self {
        let mut r = WordRegistry::default();
        r.insert(builtin_f()).expect("fresh registry");
        r.insert(builtin_pd()).expect("fresh registry");
        r
    }

    pub fn insert(&mut self, word: Word) -> Result<()> {
        if self.words.contains_key(word.name()) {
            return Err(Error::Redefinition(word.name().to_string()));
        }
        self.words.insert(word.name().to_string(), Arc::new(word));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<Arc<Word>> {
        self.words.get(name).cloned()
    }

    pub(crate) fn get_ref(&self, name: &str) -> Option<&Word> {
        self.words.get(name).map(|w| w.as_ref())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.words.contains_key(name)
    }

    pub fn names(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.words.keys().map(String::as_str).collect();
        v.sort_unstable();
        v
    }
}

/// Word files bundled with the library.
const SHIPPED: &[(&str, &str)] = &[
    ("xkimber", include_str!("../data/words/xkimber.txt")),
    ("ykimber", include_str!("../data/words/ykimber.txt")),
    ("zkimber", include_str!("../data/words/zkimber.txt")),
    ("wkimber", include_str!("../data/words/wkimber.txt")),
    ("xxkimber", include_str!("../data/words/xxkimber.txt")),
    ("yykimber", include_str!("../data/words/yykimber.txt")),
    ("zzkimber", include_str!("../data/words/zzkimber.txt")),
    ("vvkimber", include_str!("../data/words/vvkimber.txt")),
    ("wwkimber", include_str!("../data/words/wwkimber.txt")),
];

/// Names of the bundled words, besides the builtins `F` and `PD`.
pub fn shipped_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = SHIPPED.iter().map(|(n, _)| *n).collect();
    v.extend(["co2", "co3", "co4", "co5"]);
    v
}

/// A bundled word by name. The coefficient automata `co2` to `co5` are
/// built when first asked for.
pub fn shipped(name: &str) -> Result<Option<Word>> {
    if let Some(q) = name.strip_prefix("co").and_then(|d| d.parse::<u32>().ok()) {
        if (2..=5).contains(&q) {
            return crate::christol::co_word(q).map(Some);
        }
    }
    match SHIPPED.iter().find(|(n, _)| *n == name) {
        Some((n, text)) => Word::from_text(*n, text).map(Some),
        None => Ok(None),
    }
}

/// Settings for [`guess_dfao`].
#[derive(Clone, Copy, Debug)]
pub struct GuessOptions {
    pub order: Order,
    pub max_states: usize,
    /// Fewest common terms on which two candidate states may be compared.
    pub min_overlap: usize,
}

impl Default for GuessOptions {
    fn default() -> Self {
        GuessOptions {
            order: Order::Lsd,
            max_states: 64,
            min_overlap: 8,
        }
    }
}

/// Guesses a DFAO in base `k` generating `prefix`.
///
/// States are kernel subsequences merged when they agree wherever both are
/// known. The result reproduces the whole prefix but is only a candidate.
pub fn guess_dfao(prefix: &[u32], k: u32, opts: GuessOptions) -> Result<Dfao> {
    if prefix.is_empty() {
        return Err(Error::GuessFailed("empty prefix".into()));
    }
    let (delta, output) = match opts.order {
        Order::Lsd => guess_lsd(prefix, k as usize, opts)?,
        Order::Msd => guess_msd(prefix, k as usize, opts)?,
    };
    let dfao = Dfao::new(Alphabet::uniform(1, k), delta, output)?.minimize();
    // the merges rest on partial evidence, so check the whole prefix
    let sys = match opts.order {
        Order::Lsd => NumerationSystem::Lsd(k),
        Order::Msd => NumerationSystem::Msd(k),
    };
    for (n, &v) in prefix.iter().enumerate() {
        let got = dfao.eval_tracks(&[sys.encode(n as u64).digits])?;
        if got != v {
            return Err(Error::GuessFailed(format!(
                "candidate disagrees with the prefix at {n}"
            )));
        }
    }
    Ok(dfao)
}

fn guess_lsd(s: &[u32], k: usize, opts: GuessOptions) -> Result<(Vec<u32>, Vec<u32>)> {
    // state (stride, offset) stands for n -> s(stride*n + offset)
    let len = s.len();
    let terms = |stride: usize, off: usize| if off >= len { 0 } else { (len - off).div_ceil(stride) };
    let agree = |a: (usize, usize), b: (usize, usize)| -> Option<bool> {
        let n = terms(a.0, a.1).min(terms(b.0, b.1));
        if n < opts.min_overlap {
            return None;
        }
        Some((0..n).all(|i| s[a.0 * i + a.1] == s[b.0 * i + b.1]))
    };
    let mut states = vec![(1usize, 0usize)];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (stride, off) = states[i];
        for d in 0..k {
            let child = (stride * k, off + d * stride);
            let mut target = None;
            for (j, &st) in states.iter().enumerate() {
                match agree(child, st) {
                    Some(true) => {
                        target = Some(j);
                        break;
                    }
                    Some(false) => {}
                    None => {
                        return Err(Error::GuessFailed(format!(
                            "prefix of length {len} too short to compare kernel elements"
                        )))
                    }
                }
            }
            let j = match target {
                Some(j) => j,
                None => {
                    if states.len() == opts.max_states {
                        return Err(Error::GuessFailed(format!(
                            "more than {} states needed",
                            opts.max_states
                        )));
                    }
                    states.push(child);
                    states.len() - 1
                }
            };
            delta.push(j as u32);
        }
        i += 1;
    }
    let output = states.iter().map(|&(_, off)| s[off]).collect();
    Ok((delta, output))
}

fn guess_msd(s: &[u32], k: usize, opts: GuessOptions) -> Result<(Vec<u32>, Vec<u32>)> {
    // state m stands for the map from suffixes u to s([m u])
    let len = s.len();
    let agree = |a: usize, b: usize| -> Option<bool> {
        let mut compared = 0;
        let mut block = 1usize;
        loop {
            let (ba, bb) = (a * block, b * block);
            if ba >= len || bb >= len {
                break;
            }
            let n = block.min(len - ba).min(len - bb);
            if (0..n).any(|t| s[ba + t] != s[bb + t]) {
                return Some(false);
            }
            compared += n;
            block *= k;
        }
        (compared >= opts.min_overlap).then_some(true)
    };
    let mut states = vec![0usize];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let m = states[i];
        for d in 0..k {
            let child = m * k + d;
            let mut target = None;
            for (j, &st) in states.iter().enumerate() {
                if st == child {
                    target = Some(j);
                    break;
                }
                match agree(child, st) {
                    Some(true) => {
                        target = Some(j);
                        break;
                    }
                    Some(false) => {}
                    None => {
                        return Err(Error::GuessFailed(format!(
                            "prefix of length {len} too short to compare states"
                        )))
                    }
                }
            }
            let j = match target {
                Some(j) => j,
                None => {
                    if states.len() == opts.max_states {
                        return Err(Error::GuessFailed(format!(
                            "more than {} states needed",
                            opts.max_states
                        )));
                    }
                    states.push(child);
                    states.len() - 1
                }
            };
            delta.push(j as u32);
        }
        i += 1;
    }
    let output = states.iter().map(|&m| s[m]).collect();
    Ok((delta, output))
}
