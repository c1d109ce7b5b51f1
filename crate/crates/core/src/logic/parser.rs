//! Lexer and recursive-descent parser for scripts and formulas.
//!
//! Precedence, loosest first: `<=>`, `=>` (right-associative), `|` and `^`,
//! `&`, `~`. A quantifier extends as far right as possible.

use super::ast::{Command, Formula, Query, RelOp, Term};
use crate::automata::BoolOp;
use crate::error::{Error, Result};
use crate::numeration::NumerationSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Quant(bool),
    Pred(String),
    Letter(u32),
    Op(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
}

const OPS: [&str; 20] = [
    "<=>", "=>", "<=", ">=", "!=", "=", "<", ">", "&", "|", "^", "~", "+", "-", "*", "/", "(", ")",
    "[", "]",
];

fn lex(src: &str, base: usize) -> Result<Vec<Token>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() || c == b'\\' {
            i += 1;
            continue;
        }
        let pos = base + i;
        if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i]
                .parse()
                .map_err(|_| Error::syntax(pos, "numeral too large"))?;
            out.push(Token { tok: Tok::Num(n), pos });
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let word = &src[start..i];
            let mut j = i;
            while j < b.len() && b[j].is_ascii_whitespace() {
                j += 1;
            }
            let indexed = j < b.len() && b[j] == b'[';
            if (c == b'A' || c == b'E') && !indexed {
                out.push(Token {
                    tok: Tok::Quant(c == b'A'),
                    pos,
                });
                if word.len() > 1 {
                    out.push(Token {
                        tok: Tok::Ident(word[1..].to_string()),
                        pos: pos + 1,
                    });
                }
            } else {
                out.push(Token {
                    tok: Tok::Ident(word.to_string()),
                    pos,
                });
            }
            continue;
        }
        if c == b'$' || c == b'@' {
            i += 1;
            let start = i;
            if c == b'$' {
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                if start == i {
                    return Err(Error::syntax(pos, "expected a predicate name after `$`"));
                }
                out.push(Token {
                    tok: Tok::Pred(src[start..i].to_string()),
                    pos,
                });
            } else {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let v = src[start..i]
                    .parse()
                    .map_err(|_| Error::syntax(pos, "expected a number after `@`"))?;
                out.push(Token {
                    tok: Tok::Letter(v),
                    pos,
                });
            }
            continue;
        }
        if c == b',' {
            out.push(Token { tok: Tok::Op(","), pos });
            i += 1;
            continue;
        }
        match OPS.iter().find(|op| src[i..].starts_with(**op)) {
            Some(op) => {
                out.push(Token { tok: Tok::Op(op), pos });
                i += op.len();
            }
            None => {
                let ch = src[i..].chars().next().unwrap();
                return Err(Error::syntax(pos, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    fn is_op(&self, op: &str) -> bool {
        matches!(self.peek(), Some(Tok::Op(o)) if *o == op)
    }

    fn eat(&mut self, op: &str) -> bool {
        if self.is_op(op) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: &str) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(Error::syntax(self.pos(), format!("expected `{op}`")))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut lhs = self.implication()?;
        while self.eat("<=>") {
            let rhs = self.implication()?;
            lhs = Formula::bin(BoolOp::Iff, lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat("=>") {
            let rhs = self.implication()?;
            return Ok(Formula::bin(BoolOp::Implies, lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        loop {
            let op = if self.eat("|") {
                BoolOp::Or
            } else if self.eat("^") {
                BoolOp::Xor
            } else {
                return Ok(lhs);
            };
            let rhs = self.conjunction()?;
            lhs = Formula::bin(op, lhs, rhs);
        }
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat("&") {
            let rhs = self.unary()?;
            lhs = Formula::bin(BoolOp::And, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat("~") {
            return Ok(Formula::not(self.unary()?));
        }
        if let Some(Tok::Quant(forall)) = self.peek() {
            let forall = *forall;
            self.i += 1;
            let mut vars = vec![self.ident("a variable")?];
            while self.eat(",") {
                vars.push(self.ident("a variable")?);
            }
            let body = self.formula()?;
            return Ok(Formula::Quant {
                forall,
                vars,
                body: Box::new(body),
            });
        }
        self.atom()
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok(s)
            }
            _ => Err(Error::syntax(self.pos(), format!("expected {what}"))),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Pred(name)) => {
                let name = name.clone();
                self.i += 1;
                self.expect("(")?;
                let mut args = Vec::new();
                if !self.eat(")") {
                    args.push(self.term()?);
                    while self.eat(",") {
                        args.push(self.term()?);
                    }
                    self.expect(")")?;
                }
                Ok(Formula::Call(name, args))
            }
            Some(Tok::Op("(")) => {
                let save = self.i;
                match self.relation() {
                    Ok(f) => Ok(f),
                    Err(term_err) => {
                        self.i = save;
                        self.i += 1;
                        let f = self.formula().map_err(|e| furthest(e, term_err))?;
                        self.expect(")")?;
                        Ok(f)
                    }
                }
            }
            _ => self.relation(),
        }
    }

    fn relation(&mut self) -> Result<Formula> {
        let lhs = self.term()?;
        let op = match self.peek() {
            Some(Tok::Op("=")) => RelOp::Eq,
            Some(Tok::Op("!=")) => RelOp::Ne,
            Some(Tok::Op("<")) => RelOp::Lt,
            Some(Tok::Op("<=")) => RelOp::Le,
            Some(Tok::Op(">")) => RelOp::Gt,
            Some(Tok::Op(">=")) => RelOp::Ge,
            _ => return Err(Error::syntax(self.pos(), "expected a comparison")),
        };
        let op_pos = self.pos();
        self.i += 1;
        if let Some(Tok::Letter(v)) = self.peek() {
            let value = *v;
            self.i += 1;
            let negated = match op {
                RelOp::Eq => false,
                RelOp::Ne => true,
                _ => return Err(Error::syntax(op_pos, "letters compare only with `=` or `!=`")),
            };
            return match lhs {
                Term::Index(word, index) => Ok(Formula::Letter {
                    word,
                    index,
                    value,
                    negated,
                }),
                _ => Err(Error::syntax(op_pos, "`@` literals compare only with word letters")),
            };
        }
        let rhs = self.term()?;
        Ok(Formula::Rel(op, lhs, rhs))
    }

    fn term(&mut self) -> Result<Term> {
        let mut lhs = self.product()?;
        loop {
            if self.eat("+") {
                let rhs = self.product()?;
                lhs = fold_add(lhs, rhs);
            } else if self.eat("-") {
                let rhs = self.product()?;
                lhs = match (&lhs, &rhs) {
                    (Term::Num(a), Term::Num(b)) if a >= b => Term::Num(a - b),
                    _ => Term::sub(lhs, rhs),
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Term> {
        let mut lhs = self.factor()?;
        loop {
            let pos = self.pos();
            if self.eat("*") {
                let rhs = self.factor()?;
                lhs = match (lhs, rhs) {
                    (Term::Num(a), Term::Num(b)) => Term::Num(
                        a.checked_mul(b)
                            .ok_or_else(|| Error::syntax(pos, "numeral too large"))?,
                    ),
                    (Term::Num(c), t) | (t, Term::Num(c)) => Term::Mul(c, Box::new(t)),
                    _ => return Err(Error::TwoVariableOperator { op: '*', pos }),
                };
            } else if self.eat("/") {
                let rhs = self.factor()?;
                lhs = match (lhs, rhs) {
                    (_, Term::Num(0)) => return Err(Error::syntax(pos, "division by zero")),
                    (Term::Num(a), Term::Num(b)) => Term::Num(a / b),
                    (t, Term::Num(c)) => Term::Div(Box::new(t), c),
                    _ => return Err(Error::TwoVariableOperator { op: '/', pos }),
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Term> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Term::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                if !self.is_op("[") {
                    return Ok(Term::Var(name));
                }
                let mut index = Vec::new();
                while self.eat("[") {
                    index.push(self.term()?);
                    self.expect("]")?;
                }
                Ok(Term::Index(name, index))
            }
            Some(Tok::Op("(")) => {
                self.i += 1;
                let t = self.term()?;
                self.expect(")")?;
                Ok(t)
            }
            _ => Err(Error::syntax(self.pos(), "expected a term")),
        }
    }
}

fn fold_add(a: Term, b: Term) -> Term {
    match (&a, &b) {
        (Term::Num(x), Term::Num(y)) => Term::Num(x + y),
        _ => Term::add(a, b),
    }
}

/// The more informative of two syntax errors: the one further along, except
/// that operator errors always win.
fn furthest(a: Error, b: Error) -> Error {
    match (&a, &b) {
        (Error::TwoVariableOperator { .. }, _) => a,
        (_, Error::TwoVariableOperator { .. }) => b,
        (Error::Syntax { pos: pa, .. }, Error::Syntax { pos: pb, .. }) if pb > pa => b,
        _ => a,
    }
}

/// Parses a formula string, with an optional leading `?system` tag.
pub fn parse_query(text: &str) -> Result<Query> {
    parse_query_at(text, 0)
}

fn parse_query_at(text: &str, base: usize) -> Result<Query> {
    let trimmed = text.trim_start();
    let mut offset = text.len() - trimmed.len();
    let mut system = None;
    if let Some(rest) = trimmed.strip_prefix('?') {
        let tag: String = rest
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .collect();
        system = Some(
            tag.parse::<NumerationSystem>()
                .map_err(|e| Error::syntax(base + offset, e))?,
        );
        offset += 1 + tag.len();
    }
    let toks = lex(&text[offset..], base + offset)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: base + text.len(),
    };
    if p.peek().is_none() {
        return Err(Error::syntax(p.pos(), "empty formula"));
    }
    let formula = p.formula()?;
    if p.peek().is_some() {
        return Err(Error::syntax(p.pos(), "unexpected token"));
    }
    Ok(Query { system, formula })
}

/// A command together with the line it starts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub line: usize,
    pub command: Command,
}

/// Splits a script into commands. Each command ends with `:`; `#` starts a
/// comment outside strings.
pub fn parse_script(src: &str) -> Result<Vec<Located>> {
    let b = src.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let line_of = |pos: usize| src[..pos].matches('\n').count() + 1;
    let skip = |i: &mut usize| loop {
        while *i < b.len() && b[*i].is_ascii_whitespace() {
            *i += 1;
        }
        if *i < b.len() && b[*i] == b'#' {
            while *i < b.len() && b[*i] != b'\n' {
                *i += 1;
            }
        } else {
            break;
        }
    };
    let word = |i: &mut usize| -> String {
        let start = *i;
        while *i < b.len() && (b[*i].is_ascii_alphanumeric() || b[*i] == b'_') {
            *i += 1;
        }
        src[start..*i].to_string()
    };
    let string = |i: &mut usize| -> Result<(usize, String)> {
        if *i >= b.len() || b[*i] != b'"' {
            return Err(Error::syntax(*i, "expected a quoted string"));
        }
        let start = *i + 1;
        let end = src[start..]
            .find('"')
            .map(|e| start + e)
            .ok_or_else(|| Error::syntax(*i, "unterminated string"))?;
        *i = end + 1;
        Ok((start, src[start..end].to_string()))
    };
    loop {
        skip(&mut i);
        if i >= b.len() {
            return Ok(out);
        }
        let at = i;
        let line = line_of(at);
        let kw = word(&mut i);
        skip(&mut i);
        let name = word(&mut i);
        if name.is_empty() {
            return Err(Error::syntax(i, "expected a name"));
        }
        skip(&mut i);
        let command = match kw.as_str() {
            "def" | "eval" => {
                let (start, text) = string(&mut i)?;
                let query = parse_query_at(&text, start)?;
                if kw == "def" {
                    Command::Def { name, query }
                } else {
                    Command::Eval { name, query }
                }
            }
            "reg" => {
                let mut systems = Vec::new();
                while i < b.len() && b[i] != b'"' {
                    let p = i;
                    let tag = word(&mut i);
                    if tag.is_empty() {
                        return Err(Error::syntax(p, "expected a numeration system"));
                    }
                    systems.push(tag.parse().map_err(|e| Error::syntax(p, e))?);
                    skip(&mut i);
                }
                let (_, regex) = string(&mut i)?;
                Command::Reg {
                    name,
                    systems,
                    regex,
                }
            }
            "load" | "export" => {
                let (_, path) = string(&mut i)?;
                if kw == "load" {
                    Command::Load { name, path }
                } else {
                    Command::Export { name, path }
                }
            }
            "" => return Err(Error::syntax(at, "expected a command")),
            other => return Err(Error::syntax(at, format!("unknown command `{other}`"))),
        };
        skip(&mut i);
        if i >= b.len() || b[i] != b':' {
            return Err(Error::syntax(i, "expected `:` after command"));
        }
        while i < b.len() && b[i] == b':' {
            i += 1;
        }
        out.push(Located { line, command });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Formula as F;

    fn parse(s: &str) -> Formula {
        parse_query(s).unwrap().formula
    }

    fn rel(op: RelOp, a: Term, b: Term) -> Formula {
        F::Rel(op, a, b)
    }

    #[test]
    fn fine_statement_shape() {
        let f = parse("Aj $power2(j+1) <=> (Ak (k<=j => $bincoef(k,j)))");
        let expected = F::forall(
            &["j"],
            F::bin(
                BoolOp::Iff,
                F::Call("power2".into(), vec![Term::add(Term::var("j"), Term::Num(1))]),
                F::forall(
                    &["k"],
                    F::bin(
                        BoolOp::Implies,
                        rel(RelOp::Le, Term::var("k"), Term::var("j")),
                        F::Call("bincoef".into(), vec![Term::var("k"), Term::var("j")]),
                    ),
                ),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn numeral_multiplication() {
        let f = parse("Ek z=k*23+2");
        let expected = F::exists(
            &["k"],
            rel(
                RelOp::Eq,
                Term::var("z"),
                Term::add(Term::Mul(23, Box::new(Term::var("k"))), Term::Num(2)),
            ),
        );
        assert_eq!(f, expected);
        assert_eq!(parse("z=k*(10*2+3)"), parse("z=23*k"));
    }

    #[test]
    fn two_variable_product_is_rejected() {
        let e = parse_query("Ax x*y=1").unwrap_err();
        assert!(e.to_string().starts_with("operator not applicable to two variables"));
        assert!(matches!(
            parse_query("Ek,w z=k*(10*g+3)+w").unwrap_err(),
            Error::TwoVariableOperator { op: '*', .. }
        ));
        assert!(matches!(
            parse_query("x/y=1").unwrap_err(),
            Error::TwoVariableOperator { op: '/', .. }
        ));
    }

    #[test]
    fn system_prefix_and_letters() {
        let q = parse_query("?msd_fib Af Aj ($isfib(f) & f>=3 & j<=f-3) => F[j]=F[f-3-j]").unwrap();
        assert_eq!(q.system, Some(NumerationSystem::MsdFib));
        assert_eq!(q.formula.free_vars(), Vec::<String>::new());
        let q = parse_query("?lsd_3 Aa,c,d(co3[a+1][c][d]=@1 & co3[a][c][d]=@0) => co3[a+1][c+1][d]=@2")
            .unwrap();
        assert!(matches!(q.formula, F::Quant { ref vars, .. } if vars.len() == 3));
        assert!(parse_query("x=@1").is_err());
    }

    #[test]
    fn quantifier_scope_is_maximal() {
        let f = parse("Ek n=2*k+1 | Ek n=2*k+2");
        match f {
            F::Quant { body, .. } => assert!(matches!(*body, F::Bin(BoolOp::Or, _, _))),
            _ => panic!("expected quantifier"),
        }
        assert_eq!(parse("E a, b, c a<b"), parse("Ea,b,c a<b"));
    }

    #[test]
    fn parenthesized_terms_and_formulas() {
        let f = parse("(10*n-6-xkimber[n-1])/3=s");
        assert_eq!(f.free_vars(), vec!["n".to_string(), "s".to_string()]);
        let g = parse("(z=1 | z=5)");
        assert!(matches!(g, F::Bin(BoolOp::Or, _, _)));
        let h = parse("k<=(u+1)/2");
        assert!(matches!(h, F::Rel(RelOp::Le, _, Term::Div(_, 2))));
    }

    #[test]
    fn precedence() {
        // a & b | c => d <=> e  ==  (((a & b) | c) => d) <=> e
        let f = parse("a=0 & b=0 | c=0 => d=0 <=> e=0");
        let F::Bin(BoolOp::Iff, l, _) = f else { panic!() };
        let F::Bin(BoolOp::Implies, l, _) = *l else { panic!() };
        let F::Bin(BoolOp::Or, l, _) = *l else { panic!() };
        assert!(matches!(*l, F::Bin(BoolOp::And, _, _)));
        let g = parse("a=0 => b=0 => c=0");
        let F::Bin(BoolOp::Implies, _, r) = g else { panic!() };
        assert!(matches!(*r, F::Bin(BoolOp::Implies, _, _)));
    }

    #[test]
    fn free_variables_in_first_appearance_order() {
        let f = parse("En (t>0) & $marker2(n) & $marker2(n+t)");
        assert_eq!(f.free_vars(), vec!["t".to_string()]);
        let g = parse("Ek,w ((w>=g & w<=2*g)) & z=k*23+w");
        assert!(g.to_string().contains("23*k"));
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse_query("x = = 1").unwrap_err() {
            Error::Syntax { pos, .. } => assert_eq!(pos, 4),
            e => panic!("{e}"),
        }
        assert!(parse_query("").is_err());
        assert!(parse_query("?msd_99 x=1").is_err());
        assert!(parse_query("(x=1").is_err());
    }

    #[test]
    fn scripts() {
        let src = r#"
            # comment
            reg power2 msd_2 "0*10*":
            def uw "?msd_fib m>=1 & F[m-1]=@1":
            eval prop "Az z>0 => z=z"::
            load w "words/w.txt":
        "#;
        let cmds = parse_script(src).unwrap();
        assert_eq!(cmds.len(), 4);
        assert_eq!(cmds[0].line, 3);
        assert!(matches!(&cmds[0].command, Command::Reg { systems, .. } if systems.len() == 1));
        assert!(matches!(&cmds[2].command, Command::Eval { name, .. } if name == "prop"));
        assert!(parse_script("def x \"x=1\"").is_err());
        assert!(parse_script("frob x \"x=1\":").is_err());
    }
}
