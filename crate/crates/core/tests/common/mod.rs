//! Engine property checks shared by the property tests and the acceptance
//! runner. Each check returns a short summary or the first violation found.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqlogic::logic::parse_query;
use seqlogic::{Alphabet, BoolOp, Dfa, Nfa, NumerationSystem, Order, Session};

pub const SYSTEMS: [NumerationSystem; 9] = [
    NumerationSystem::Msd(2),
    NumerationSystem::Msd(3),
    NumerationSystem::Msd(4),
    NumerationSystem::Msd(5),
    NumerationSystem::Lsd(2),
    NumerationSystem::Lsd(3),
    NumerationSystem::Lsd(4),
    NumerationSystem::Lsd(5),
    NumerationSystem::MsdFib,
];

const OPS: [BoolOp; 5] = [BoolOp::And, BoolOp::Or, BoolOp::Xor, BoolOp::Implies, BoolOp::Iff];

// ---- arithmetic recognizers ------------------------------------------------

#[derive(Clone, Copy)]
enum Relation {
    Eq,
    Less,
    Add,
}

/// Reference semantics read digit by digit. The state is `None` once the
/// relation is known to fail; the checks for a surviving state imply the
/// relation holds exactly, so pruning can only lose tuples, never add them.
fn reference_step(
    rel: Relation,
    system: NumerationSystem,
    state: (i64, i64),
    d: &[u32],
) -> Option<(i64, i64)> {
    let (k, order) = match system {
        NumerationSystem::Msd(k) => (k as i64, Order::Msd),
        NumerationSystem::Lsd(k) => (k as i64, Order::Lsd),
        NumerationSystem::MsdFib => (0, Order::Msd),
    };
    match rel {
        Relation::Eq => (d[0] == d[1]).then_some(state),
        Relation::Less => {
            // 0 equal, -1 less, 1 greater
            let here = (d[0] as i64 - d[1] as i64).signum();
            Some(match order {
                Order::Msd if state.0 != 0 => state,
                _ if here != 0 => (here, 0),
                _ => state,
            })
        }
        Relation::Add => {
            let e = d[0] as i64 + d[1] as i64 - d[2] as i64;
            match (system, order) {
                (NumerationSystem::MsdFib, _) => {
                    // differences of the values under weights F(i+2) and F(i+1)
                    let (a, b) = state;
                    let next = (a + b + e, a + e);
                    (next.0.abs() <= 64 && next.1.abs() <= 64).then_some(next)
                }
                (_, Order::Msd) => {
                    let next = k * state.0 + e;
                    (next.abs() <= 1).then_some((next, 0))
                }
                (_, Order::Lsd) => {
                    let s = d[0] as i64 + d[1] as i64 + state.0;
                    (s % k == d[2] as i64).then_some((s / k, 0))
                }
            }
        }
    }
}

fn reference_final(rel: Relation, state: (i64, i64)) -> bool {
    match rel {
        Relation::Eq => true,
        Relation::Less => state.0 == -1,
        Relation::Add => state.0 == 0,
    }
}

/// Counts canonical length-`len` strings with every track value at most
/// `bound`: those accepted by `dfa`, and those accepted that also satisfy the
/// reference relation.
fn count(
    dfa: &Dfa,
    rel: Relation,
    system: NumerationSystem,
    bound: u64,
    len: usize,
) -> (u64, u64) {
    let alphabet = dfa.alphabet();
    let tracks = alphabet.tracks();
    let limit = system.pad(system.encode(bound).digits, len);
    let fib = system.is_fibonacci();
    let msd = system.order() == Order::Msd;
    let syms: Vec<Vec<u32>> = (0..alphabet.len()).map(|s| alphabet.digits(s)).collect();

    // (state, bound flags, previous digit mask, reference state)
    type Key = (usize, u32, u32, Option<(i64, i64)>);
    let start_flags = if msd { (1 << tracks) - 1 } else { 0 };
    let mut layer: HashMap<Key, u64> = HashMap::new();
    layer.insert((0, start_flags, 0, Some((0, 0))), 1);
    for &lim in &limit {
        let mut next: HashMap<Key, u64> = HashMap::new();
        for (&(q, flags, last, r), &n) in &layer {
            'sym: for (s, d) in syms.iter().enumerate() {
                let mut nf = 0;
                let mut nl = 0;
                for t in 0..tracks {
                    let bit = 1 << t;
                    if fib && d[t] == 1 && last & bit != 0 {
                        continue 'sym;
                    }
                    if d[t] == 1 {
                        nl |= bit;
                    }
                    if msd {
                        // flag: prefix equals the bound's prefix
                        if flags & bit != 0 {
                            if d[t] > lim {
                                continue 'sym;
                            }
                            if d[t] == lim {
                                nf |= bit;
                            }
                        }
                    } else if d[t] > lim || (d[t] == lim && flags & bit != 0) {
                        // flag: suffix read so far exceeds the bound's
                        nf |= bit;
                    }
                }
                let nr = r.and_then(|st| reference_step(rel, system, st, d));
                *next.entry((dfa.step(q, s), nf, nl, nr)).or_default() += n;
            }
        }
        layer = next;
    }
    let mut accepted = 0;
    let mut agreed = 0;
    for ((q, flags, _, r), n) in layer {
        if !msd && flags != 0 {
            continue;
        }
        if dfa.is_accepting(q) {
            accepted += n;
            if r.is_some_and(|st| reference_final(rel, st)) {
                agreed += n;
            }
        }
    }
    (accepted, agreed)
}

/// Equality, order and addition recognizers accept exactly the true tuples
/// with every operand at most `bound`, at the canonical length and with one
/// extra padding digit.
pub fn arithmetic_exhaustive(system: NumerationSystem, bound: u64) -> Result<(), String> {
    let n = bound;
    let cases = [
        ("eq", Relation::Eq, system.eq_dfa(), n + 1),
        ("less", Relation::Less, system.less_dfa(), n * (n + 1) / 2),
        ("add", Relation::Add, system.add_dfa(), (n + 1) * (n + 2) / 2),
    ];
    for (name, rel, dfa, expected) in cases {
        check_counts(name, rel, &dfa, system, bound, expected)?;
    }
    Ok(())
}

/// The addition check applied to an arbitrary three-track automaton.
pub fn check_adder(dfa: &Dfa, system: NumerationSystem, bound: u64) -> Result<(), String> {
    check_counts("add", Relation::Add, dfa, system, bound, (bound + 1) * (bound + 2) / 2)
}

fn check_counts(
    name: &str,
    rel: Relation,
    dfa: &Dfa,
    system: NumerationSystem,
    bound: u64,
    expected: u64,
) -> Result<(), String> {
    let len = system.encode(bound).digits.len();
    for l in [len, len + 1] {
        let (accepted, agreed) = count(dfa, rel, system, bound, l);
        if accepted != expected || agreed != expected {
            return Err(format!(
                "{} {name} length {l}: {accepted} accepted, {agreed} correct, {expected} true",
                system.tag()
            ));
        }
    }
    Ok(())
}

// ---- random automata -------------------------------------------------------

pub fn random_dfa(rng: &mut impl Rng, sizes: &[u32], max_states: usize) -> Dfa {
    let alphabet = Alphabet::new(sizes.to_vec()).unwrap();
    let n = rng.gen_range(1..=max_states);
    let delta = (0..n * alphabet.len()).map(|_| rng.gen_range(0..n as u32)).collect();
    let accepting = (0..n).map(|_| rng.gen_bool(0.4)).collect();
    Dfa::new(alphabet, delta, accepting).unwrap()
}

/// All strings of length at most `max_len` over `symbols` symbols.
pub fn strings(symbols: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..symbols {
                let mut v: Vec<usize> = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn same_language(a: &Dfa, b: &Dfa, words: &[Vec<usize>]) -> Option<Vec<usize>> {
    words.iter().find(|w| a.accepts(w) != b.accepts(w)).cloned()
}

/// Product and complement agree with pointwise boolean combination.
pub fn check_boolean(a: &Dfa, b: &Dfa, max_len: usize) -> Result<(), String> {
    let words = strings(a.alphabet().len(), max_len);
    let not_a = a.complement();
    for w in &words {
        if not_a.accepts(w) == a.accepts(w) {
            return Err(format!("complement disagrees on {w:?}"));
        }
    }
    for op in OPS {
        let p = a.product(b, op).map_err(|e| e.to_string())?;
        for w in &words {
            if p.accepts(w) != op.apply(a.accepts(w), b.accepts(w)) {
                return Err(format!("{op:?} disagrees on {w:?}"));
            }
        }
    }
    Ok(())
}

/// Projection of one track of a two-track automaton agrees with the padded
/// existential: a string over the kept track is accepted iff zero padding on
/// the kept track (leading for msd, trailing for lsd) and some string on the
/// removed track are accepted. Padding longer than the state count reaches no
/// new states, so the search below is complete.
pub fn check_projection(a: &Dfa, max_len: usize) -> Result<(), String> {
    let alphabet = a.alphabet();
    assert_eq!(alphabet.tracks(), 2);
    let sizes = alphabet.sizes().to_vec();
    for track in 0..2 {
        let keep = 1 - track;
        for order in [Order::Msd, Order::Lsd] {
            let p = a.project(track, order).map_err(|e| e.to_string())?;
            for w in strings(sizes[keep] as usize, max_len) {
                let expected = (0..=a.states()).any(|k| {
                    let mut kept: Vec<u32> = w.iter().map(|&s| s as u32).collect();
                    match order {
                        Order::Msd => {
                            kept.splice(0..0, std::iter::repeat_n(0, k));
                        }
                        Order::Lsd => kept.extend(std::iter::repeat_n(0, k)),
                    }
                    let m = kept.len();
                    let choices = (sizes[track] as usize).pow(m as u32);
                    (0..choices).any(|mut c| {
                        let mut removed = vec![0u32; m];
                        for r in removed.iter_mut() {
                            *r = (c % sizes[track] as usize) as u32;
                            c /= sizes[track] as usize;
                        }
                        let mut tr = vec![Vec::new(), Vec::new()];
                        tr[keep] = kept.clone();
                        tr[track] = removed;
                        a.accepts_tracks(&tr).unwrap()
                    })
                });
                if p.accepts(&w) != expected {
                    return Err(format!("{order:?} projection of track {track} disagrees on {w:?}"));
                }
            }
        }
    }
    Ok(())
}

/// Equivalent copy of `a` with every state split in two and the numbering
/// shuffled (state 0 stays initial).
pub fn inflate(rng: &mut impl Rng, a: &Dfa) -> Dfa {
    let n = a.states();
    let nsym = a.alphabet().len();
    let mut perm: Vec<usize> = (1..2 * n).collect();
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm.insert(0, 0);
    // copy c of state q is old index 2q+c
    let mut delta = vec![0u32; 2 * n * nsym];
    let mut accepting = vec![false; 2 * n];
    for old in 0..2 * n {
        let q = old / 2;
        accepting[perm[old]] = a.is_accepting(q);
        for s in 0..nsym {
            let t = a.step(q, s) * 2 + rng.gen_range(0..2);
            delta[perm[old] * nsym + s] = perm[t] as u32;
        }
    }
    Dfa::new(a.alphabet().clone(), delta, accepting).unwrap()
}

/// Minimization preserves the language, is idempotent, and maps
/// language-equal inputs to identical automata.
pub fn check_minimize(rng: &mut impl Rng, a: &Dfa, max_len: usize) -> Result<(), String> {
    let m = a.minimize();
    if m.minimize() != m {
        return Err("minimize is not idempotent".into());
    }
    let words = strings(a.alphabet().len(), max_len);
    if let Some(w) = same_language(a, &m, &words) {
        return Err(format!("minimize changed the language at {w:?}"));
    }
    let copy = inflate(rng, a);
    if same_language(a, &copy, &words).is_some() {
        return Err("inflated copy is not equivalent".into());
    }
    if copy.minimize() != m {
        return Err("equivalent inputs minimize differently".into());
    }
    Ok(())
}

/// Double reversal returns the language.
pub fn check_brzozowski(a: &Dfa, max_len: usize) -> Result<(), String> {
    let r = a.reverse().map_err(|e| e.to_string())?;
    let rr = r.reverse().map_err(|e| e.to_string())?;
    let words = strings(a.alphabet().len(), max_len);
    for w in &words {
        let mut rev = w.clone();
        rev.reverse();
        if r.accepts(&rev) != a.accepts(w) {
            return Err(format!("reverse disagrees on {w:?}"));
        }
    }
    if let Some(w) = same_language(a, &rr, &words) {
        return Err(format!("double reversal disagrees on {w:?}"));
    }
    if rr.minimize() != a.minimize() {
        return Err("double reversal is not language-equal".into());
    }
    Ok(())
}

/// Random nondeterministic automaton with epsilon moves; determinization
/// agrees with direct simulation.
pub fn check_determinize(rng: &mut impl Rng, symbols: u32, max_len: usize) -> Result<(), String> {
    let mut nfa = Nfa::new(Alphabet::new(vec![symbols]).unwrap());
    let n = rng.gen_range(1..=5u32);
    for _ in 0..n {
        nfa.add_state(rng.gen_bool(0.3));
    }
    for _ in 0..rng.gen_range(0..=3 * n) {
        nfa.add_edge(rng.gen_range(0..n), rng.gen_range(0..symbols as usize), rng.gen_range(0..n));
    }
    for _ in 0..rng.gen_range(0..=n) {
        nfa.add_epsilon(rng.gen_range(0..n), rng.gen_range(0..n));
    }
    let d = nfa.determinize().map_err(|e| e.to_string())?;
    for w in strings(symbols as usize, max_len) {
        if d.accepts(&w) != nfa.accepts(&w) {
            return Err(format!("determinize disagrees on {w:?}"));
        }
    }
    Ok(())
}

/// Runs the automaton checks on `rounds` random inputs.
pub fn automata_suite(seed: u64, rounds: usize) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes: [&[u32]; 4] = [&[2], &[3], &[4], &[2, 2]];
    for round in 0..rounds {
        let sizes = shapes[round % shapes.len()];
        let a = random_dfa(&mut rng, sizes, 6);
        let b = random_dfa(&mut rng, sizes, 6);
        check_boolean(&a, &b, 8).map_err(|e| format!("round {round}: {e}"))?;
        check_minimize(&mut rng, &a, 8).map_err(|e| format!("round {round}: {e}"))?;
        check_brzozowski(&a, 8).map_err(|e| format!("round {round}: {e}"))?;
        check_determinize(&mut rng, 2, 8).map_err(|e| format!("round {round}: {e}"))?;
        if sizes.len() == 2 {
            let small = random_dfa(&mut rng, sizes, 3);
            check_projection(&small, 8).map_err(|e| format!("round {round}: {e}"))?;
        }
    }
    Ok(format!("{rounds} random automata"))
}

// ---- formulas ---------------------------------------------------------------

/// Quantifier-free formulas over `x`, `y`, `z` with a direct evaluator.
#[derive(Clone, Debug)]
pub enum Formula {
    Atom(u64, char, u64, char, u64, &'static str),
    Not(Box<Formula>),
    Bin(Box<Formula>, &'static str, Box<Formula>),
}

const VARS: [char; 3] = ['x', 'y', 'z'];
const RELS: [&str; 6] = ["=", "!=", "<", "<=", ">", ">="];
const CONNECTIVES: [&str; 4] = ["&", "|", "=>", "<=>"];

impl Formula {
    pub fn random(rng: &mut impl Rng, depth: usize) -> Formula {
        if depth == 0 || rng.gen_bool(0.3) {
            // a*u + c REL b*v
            return Formula::Atom(
                rng.gen_range(1..=3),
                VARS[rng.gen_range(0..3)],
                rng.gen_range(0..=4),
                VARS[rng.gen_range(0..3)],
                rng.gen_range(1..=2),
                RELS[rng.gen_range(0..RELS.len())],
            );
        }
        if rng.gen_bool(0.2) {
            return Formula::Not(Box::new(Formula::random(rng, depth - 1)));
        }
        Formula::Bin(
            Box::new(Formula::random(rng, depth - 1)),
            CONNECTIVES[rng.gen_range(0..CONNECTIVES.len())],
            Box::new(Formula::random(rng, depth - 1)),
        )
    }

    pub fn eval(&self, env: &dyn Fn(char) -> u64) -> bool {
        match self {
            Formula::Atom(a, u, c, v, b, rel) => {
                let l = a * env(*u) + c;
                let r = b * env(*v);
                match *rel {
                    "=" => l == r,
                    "!=" => l != r,
                    "<" => l < r,
                    "<=" => l <= r,
                    ">" => l > r,
                    _ => l >= r,
                }
            }
            Formula::Not(f) => !f.eval(env),
            Formula::Bin(l, op, r) => {
                let (l, r) = (l.eval(env), r.eval(env));
                match *op {
                    "&" => l && r,
                    "|" => l || r,
                    "=>" => !l || r,
                    _ => l == r,
                }
            }
        }
    }

    pub fn text(&self) -> String {
        match self {
            Formula::Atom(a, u, c, v, b, rel) => format!("{a}*{u}+{c}{rel}{b}*{v}"),
            Formula::Not(f) => format!("~({})", f.text()),
            Formula::Bin(l, op, r) => format!("({}){op}({})", l.text(), r.text()),
        }
    }
}

fn compile(session: &mut Session, system: NumerationSystem, text: &str) -> Result<Dfa, String> {
    let q = parse_query(&format!("?{} {text}", system.tag())).map_err(|e| e.to_string())?;
    let p = session.compile("t", &q).map_err(|e| format!("{text}: {e}"))?;
    Ok(p.dfa)
}

/// `A` and `~E~` (and `E` and `~A~`) compile to identical automata, and the
/// existential agrees with direct evaluation over a bounded witness range.
pub fn check_formula(
    session: &mut Session,
    system: NumerationSystem,
    f: &Formula,
) -> Result<(), String> {
    let body = format!("x=x & y=y & z=z & ({})", f.text());
    let all = compile(session, system, &format!("Ax {body}"))?;
    let dual = compile(session, system, &format!("~(Ex ~({body}))"))?;
    if all != dual {
        return Err(format!("{} A/~E~ differ for {body}", system.tag()));
    }
    let ex = compile(session, system, &format!("Ex {body}"))?;
    let dual = compile(session, system, &format!("~(Ax ~({body}))"))?;
    if ex != dual {
        return Err(format!("{} E/~A~ differ for {body}", system.tag()));
    }

    // a bounded witness keeps the brute force finite
    let bounded = format!("Ex x<=y+z & ({})", f.text());
    let pred = compile(session, system, &format!("y=y & z=z & ({bounded})"))?;
    let free = compile(session, system, &format!("y=y & z=z & x=x & ({})", f.text()))?;
    const B: u64 = 12;
    let got = pred.enumerate(system, B);
    let mut want = Vec::new();
    for y in 0..=B {
        for z in 0..=B {
            if (0..=y + z).any(|x| f.eval(&|c| [x, y, z][(c as u8 - b'x') as usize])) {
                want.push(vec![y, z]);
            }
        }
    }
    if got != want {
        return Err(format!("{} bounded existential disagrees for {}", system.tag(), f.text()));
    }
    let got = free.enumerate(system, B);
    let mut want = Vec::new();
    for y in 0..=B {
        for z in 0..=B {
            for x in 0..=B {
                if f.eval(&|c| [x, y, z][(c as u8 - b'x') as usize]) {
                    want.push(vec![y, z, x]);
                }
            }
        }
    }
    if got != want {
        return Err(format!("{} free formula disagrees for {}", system.tag(), f.text()));
    }
    Ok(())
}

pub fn formula_suite(seed: u64, rounds: usize) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let systems = [
        NumerationSystem::Msd(2),
        NumerationSystem::Lsd(2),
        NumerationSystem::Msd(3),
        NumerationSystem::MsdFib,
    ];
    let mut session = Session::new();
    for round in 0..rounds {
        let f = Formula::random(&mut rng, 3);
        let system = systems[round % systems.len()];
        check_formula(&mut session, system, &f).map_err(|e| format!("round {round}: {e}"))?;
    }
    Ok(format!("{rounds} random formulas"))
}
