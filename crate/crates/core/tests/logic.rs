use seqlogic::logic::{EvalResult, Outcome};
use seqlogic::oracles;
use seqlogic::{Error, Limits, NumerationSystem, Session, Verdict};

fn eval(session: &mut Session, line: &str) -> EvalResult {
    match session.run_script(line).unwrap().pop() {
        Some(Outcome::Evaluated(r)) => r,
        other => panic!("{other:?}"),
    }
}

fn verdict(line: &str) -> Verdict {
    eval(&mut Session::new(), line).verdict.unwrap()
}

#[test]
fn arguments_bind_by_position() {
    let mut s = Session::new();
    s.run_script("def lt \"x<y\":").unwrap();
    assert_eq!(eval(&mut s, "eval a \"$lt(1,2)\":").verdict, Some(Verdict::True));
    assert_eq!(eval(&mut s, "eval b \"$lt(2,1)\":").verdict, Some(Verdict::False));
    assert_eq!(eval(&mut s, "eval c \"Ea,b $lt(b,a) & a=1\":").verdict, Some(Verdict::True));
    let r = eval(&mut s, "eval d \"$lt(q,p+1)\":");
    assert_eq!(r.predicate.params, ["q", "p"]);
    let got = r.predicate.enumerate(3);
    let want: Vec<Vec<u64>> = (0..=3u64)
        .flat_map(|q| (0..=3u64).filter(move |&p| q < p + 1).map(move |p| vec![q, p]))
        .collect();
    assert_eq!(got, want);
}

#[test]
fn counterexamples_and_witnesses_are_smallest() {
    let mut s = Session::new();
    let r = eval(&mut s, "eval a \"Ax x<5\":");
    assert_eq!(r.verdict, Some(Verdict::False));
    assert_eq!(r.counterexample.unwrap().to_string(), "x=5");
    let r = eval(&mut s, "eval b \"Ex,y x>3 & y=x+2 & x<10\":");
    assert_eq!(r.witness.unwrap().to_string(), "x=4, y=6");
}

#[test]
fn quantifier_duality_on_fixed_statements() {
    for system in ["msd_2", "lsd_2", "msd_fib", "msd_3"] {
        for body in ["Ey y=2*x", "x<7 | Ey x=y+y+1", "Ey,z y+z=x & y<z & z<=3"] {
            let a = verdict(&format!("eval a \"?{system} Ax {body}\":"));
            let b = verdict(&format!("eval b \"?{system} ~(Ex ~({body}))\":"));
            assert_eq!(a, b, "{system} {body}");
            let e = verdict(&format!("eval c \"?{system} Ex {body}\":"));
            let f = verdict(&format!("eval d \"?{system} ~(Ax ~({body}))\":"));
            assert_eq!(e, f, "{system} {body}");
        }
    }
}

#[test]
fn presburger_facts() {
    assert_eq!(verdict("eval a \"Ax Ey x=2*y | x=2*y+1\":"), Verdict::True);
    assert_eq!(verdict("eval a \"Ax,y x+y=y+x\":"), Verdict::True);
    assert_eq!(verdict("eval a \"?msd_fib Ax,y,z (x+y)+z=x+(y+z)\":"), Verdict::True);
    assert_eq!(verdict("eval a \"?lsd_3 Ex x+x=x+1\":"), Verdict::True);
    assert_eq!(verdict("eval a \"Ex x<x\":"), Verdict::False);
    assert_eq!(verdict("eval a \"?msd_5 Ax x/5*5<=x\":"), Verdict::True);
}

#[test]
fn word_indexing_matches_fibonacci_word() {
    let mut s = Session::new();
    let r = eval(&mut s, "eval b \"?msd_fib F[n]=@1\":");
    let word = oracles::fibonacci_word(500);
    let want: Vec<Vec<u64>> = (0..500u64)
        .filter(|&n| word[n as usize] == 1)
        .map(|n| vec![n])
        .collect();
    assert_eq!(r.predicate.enumerate(499), want);
}

#[test]
fn session_rules() {
    let mut s = Session::new();
    s.run_script("def p \"x<3\":").unwrap();
    assert!(matches!(s.run_script("def p \"x<4\":"), Err(Error::Redefinition(_))));
    s.run_script("eval r \"Ex x=1\":\neval r \"Ex x<x\":").unwrap();
    assert!(s.result("r").is_some());
    assert!(matches!(s.run_script("eval q \"$nope(1)\":"), Err(Error::UnknownPredicate(_))));
    assert!(matches!(s.run_script("eval q \"Ax NOPE[x]=@1\":"), Err(Error::UnknownWord(_))));
    assert!(matches!(
        s.run_script("eval q \"Ex,y x*y=6\":"),
        Err(Error::TwoVariableOperator { .. })
    ));
    assert!(matches!(s.run_script("eval q \"Ax x<\":"), Err(Error::Syntax { .. })));
}

#[test]
fn mixed_systems_are_rejected() {
    let mut s = Session::new();
    s.run_script("def f \"?msd_fib x<3\":").unwrap();
    assert!(matches!(
        s.run_script("eval q \"?msd_2 $f(1)\":"),
        Err(Error::SystemMismatch { .. })
    ));
}

#[test]
fn state_budget_is_enforced() {
    let mut s = Session::new();
    s.set_limits(Limits {
        max_states: 4,
        ..Limits::default()
    });
    let r = s.run_script("eval q \"?msd_fib Ex,y,z x+y=z & z=x+17\":");
    assert!(matches!(r, Err(Error::StateLimit { .. })), "{r:?}");
}

#[test]
fn enumerate_examples() {
    let mut s = Session::new();
    let r = eval(&mut s, "eval f \"?msd_fib $isfib(n)\":");
    let flat: Vec<u64> = r.predicate.enumerate(13).into_iter().map(|v| v[0]).collect();
    assert_eq!(flat, [1, 2, 3, 5, 8, 13]);
    assert_eq!(r.predicate.system(), NumerationSystem::MsdFib);
}
