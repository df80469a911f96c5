//! Text form of polynomial mappings.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := base ("^" natural)?
//! base     := rational | identifier | "(" expr ")" | "-" factor
//! vector   := "[" expr ("," expr)* "]"
//! rational := integer ("/" positive-integer)?
//! ```
//!
//! A document is either a single `expr` (codomain dimension one) or a
//! `vector`. Multiplication is always explicit.
//!
//! Variables resolve in one of three ways. With [`parse`], identifiers that
//! are all of the form `x<N>` index the variables directly (`x3` alone gives
//! three variables); otherwise the distinct identifiers become the variables
//! in natural sort order. [`parse_with_vars`] and [`parse_with_nvars`] fix the
//! variable list up front and reject anything else.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::ScalarPoly;
use crate::{Error, Rat, Result, VectorPoly};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn err(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse { line: pos.line, column: pos.column, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut pos = Pos { line: 1, column: 1 };
    while let Some(&c) = chars.peek() {
        let start = pos;
        let advance = |pos: &mut Pos, c: char| {
            if c == '\n' {
                pos.line += 1;
                pos.column = 1;
            } else {
                pos.column += 1;
            }
        };
        if c.is_whitespace() {
            chars.next();
            advance(&mut pos, c);
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
                advance(&mut pos, d);
            }
            out.push((Tok::Int(digits.parse().expect("ascii digits")), start));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                name.push(d);
                chars.next();
                advance(&mut pos, d);
            }
            out.push((Tok::Ident(name), start));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            other => return Err(err(start, format!("unexpected character `{other}`"))),
        };
        chars.next();
        advance(&mut pos, c);
        out.push((tok, start));
    }
    out.push((Tok::Eof, pos));
    Ok(out)
}

#[derive(Debug)]
enum Expr {
    Num(Rat),
    Var(String, Pos),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected {}, found {}", tok.describe(), self.peek().describe())))
        }
    }

    fn document(&mut self) -> Result<Vec<Expr>> {
        let items = if *self.peek() == Tok::LBracket {
            self.bump();
            let mut items = vec![self.expr()?];
            while *self.peek() == Tok::Comma {
                self.bump();
                items.push(self.expr()?);
            }
            self.expect(Tok::RBracket)?;
            items
        } else {
            vec![self.expr()?]
        };
        if *self.peek() != Tok::Eof {
            let hint = match self.peek() {
                Tok::Ident(_) | Tok::Int(_) | Tok::LParen => " (multiplication must be written with `*`)",
                _ => "",
            };
            return Err(err(self.pos(), format!("unexpected {}{hint}", self.peek().describe())));
        }
        Ok(items)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, pos) = self.bump();
        let e = match tok {
            Tok::Int(e) => e,
            Tok::Minus => return Err(err(pos, "negative exponent")),
            other => return Err(err(pos, format!("exponent must be a natural number, found {}", other.describe()))),
        };
        if *self.peek() == Tok::Slash {
            return Err(err(self.pos(), "non-integer exponent"));
        }
        let e = e.to_u32().ok_or_else(|| err(pos, "exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn base(&mut self) -> Result<Expr> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(num) => {
                if *self.peek() != Tok::Slash {
                    return Ok(Expr::Num(Rat::from_integer(num)));
                }
                self.bump();
                let (tok, dpos) = self.bump();
                match tok {
                    Tok::Int(den) if den.is_zero() => Err(err(dpos, "division by zero")),
                    Tok::Int(den) => Ok(Expr::Num(Rat::new(num, den))),
                    other => Err(err(dpos, format!("expected a positive integer denominator, found {}", other.describe()))),
                }
            }
            Tok::Ident(name) => Ok(Expr::Var(name, pos)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Minus => Ok(Expr::Neg(Box::new(self.factor()?))),
            other => Err(err(pos, format!("expected a number, variable or `(`, found {}", other.describe()))),
        }
    }
}

fn collect_names<'a>(e: &'a Expr, out: &mut BTreeSet<&'a str>) {
    match e {
        Expr::Num(_) => {}
        Expr::Var(name, _) => {
            out.insert(name);
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            collect_names(a, out);
            collect_names(b, out);
        }
        Expr::Neg(a) | Expr::Pow(a, _) => collect_names(a, out),
    }
}

fn build(e: &Expr, names: &[String]) -> Result<ScalarPoly> {
    let n = names.len();
    Ok(match e {
        Expr::Num(c) => ScalarPoly::constant(n, c.clone()),
        Expr::Var(name, pos) => match names.iter().position(|v| v == name) {
            Some(i) => ScalarPoly::var(n, i),
            None => return Err(err(*pos, format!("unknown identifier `{name}`"))),
        },
        Expr::Add(a, b) => &build(a, names)? + &build(b, names)?,
        Expr::Sub(a, b) => &build(a, names)? - &build(b, names)?,
        Expr::Mul(a, b) => &build(a, names)? * &build(b, names)?,
        Expr::Neg(a) => -&build(a, names)?,
        Expr::Pow(a, k) => build(a, names)?.pow(*k),
    })
}

fn auto_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

/// Orders identifiers so that embedded numbers compare by value: `y2 < y10`.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(&cb) {
        let ord = if *da && *db {
            let (ta, tb) = (sa.trim_start_matches('0'), sb.trim_start_matches('0'));
            ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb))
        } else {
            sa.cmp(sb)
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

fn parse_ast(text: &str) -> Result<Vec<Expr>> {
    Parser { toks: lex(text)?, at: 0 }.document()
}

fn assemble(items: &[Expr], names: &[String]) -> Result<VectorPoly> {
    let coords = items.iter().map(|e| build(e, names)).collect::<Result<Vec<_>>>()?;
    VectorPoly::new(coords)
}

/// A parsed mapping together with the variable names it was resolved against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub poly: VectorPoly,
    pub names: Vec<String>,
}

/// Parses with automatic variable resolution, also returning the names.
pub fn parse_named(text: &str) -> Result<Parsed> {
    let items = parse_ast(text)?;
    let mut used = BTreeSet::new();
    for e in &items {
        collect_names(e, &mut used);
    }
    let indices: Option<Vec<usize>> = used.iter().map(|s| auto_index(s)).collect();
    let names = match indices {
        Some(ix) => default_names(ix.into_iter().max().unwrap_or(0)),
        None => {
            let mut names: Vec<String> = used.iter().map(|s| s.to_string()).collect();
            names.sort_by(|a, b| natural_cmp(a, b));
            names
        }
    };
    let poly = assemble(&items, &names)?;
    Ok(Parsed { poly, names })
}

pub fn parse(text: &str) -> Result<VectorPoly> {
    Ok(parse_named(text)?.poly)
}

/// Parses against an explicit variable list; other identifiers are errors.
pub fn parse_with_vars(text: &str, names: &[String]) -> Result<VectorPoly> {
    let mut seen = BTreeSet::new();
    for name in names {
        if !seen.insert(name) {
            return Err(Error::InvalidArgument(format!("variable `{name}` declared twice")));
        }
    }
    assemble(&parse_ast(text)?, names)
}

/// Parses over exactly `x1..xn`.
pub fn parse_with_nvars(text: &str, nvars: usize) -> Result<VectorPoly> {
    parse_with_vars(text, &default_names(nvars))
}

/// `x1, ..., xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Canonical text with variables `x1..xn`.
pub fn format(p: &VectorPoly) -> String {
    format_with_vars(p, &default_names(p.nvars()))
}

pub fn format_with_vars(p: &VectorPoly, names: &[String]) -> String {
    assert_eq!(names.len(), p.nvars(), "one name per variable");
    if p.codim() == 1 {
        return format_scalar(&p.coords()[0], names);
    }
    let parts: Vec<String> = p.coords().iter().map(|c| format_scalar(c, names)).collect();
    format!("[{}]", parts.join(", "))
}

/// Terms in descending graded-lex order, e.g. `x1^2 - 1/2*x1*x2 + 3`.
pub fn format_scalar(p: &ScalarPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (mono, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        let factors: Vec<String> = mono
            .exps()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { names[v].clone() } else { format!("{}^{e}", names[v]) })
            .collect();
        if factors.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::positivity::counterexample_cubic;
    use crate::Monomial;

    const CUBIC: &str =
        "x1^3 + x2^3 + x3^3 + 3*x1^2*(x2+x3) + 3*x2^2*(x1+x3) + 3*x3^2*(x1+x2) - 6*x1*x2*x3";

    fn parse_err(text: &str) -> (usize, usize, String) {
        match parse(text) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("expected parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn cubic_parses_to_counterexample() {
        assert_eq!(parse(CUBIC).unwrap(), counterexample_cubic());
    }

    #[test]
    fn literals() {
        assert!(parse("0").unwrap().is_zero());
        let p = parse("1/2*x1*x2").unwrap();
        assert_eq!(p.coords()[0].num_terms(), 1);
        assert_eq!(p.coords()[0].coeff(&Monomial::new(vec![1, 1])), Rat::new(1.into(), 2.into()));
        assert_eq!(parse("6/4").unwrap().coords()[0].coeff(&Monomial::one(0)), Rat::new(3.into(), 2.into()));
    }

    #[test]
    fn unary_minus_binds_to_factor() {
        let p = parse("-x1^2").unwrap();
        assert_eq!(p.coords()[0].coeff(&Monomial::new(vec![2])), rat(-1));
        let q = parse("(-x1)^3").unwrap();
        assert_eq!(q.coords()[0].coeff(&Monomial::new(vec![3])), rat(-1));
        assert_eq!(parse("--x1").unwrap(), parse("x1").unwrap());
    }

    #[test]
    fn vectors() {
        let p = parse("[x1, x2^2, 1]").unwrap();
        assert_eq!(p.codim(), 3);
        assert_eq!(p.nvars(), 2);
        assert_eq!(format(&p), "[x1, x2^2, 1]");
    }

    #[test]
    fn variable_resolution() {
        let auto = parse_named("x3 + 1").unwrap();
        assert_eq!(auto.names, default_names(3));
        let named = parse_named("y10*t + y2").unwrap();
        assert_eq!(named.names, vec!["t", "y2", "y10"]);
        assert_eq!(format_with_vars(&named.poly, &named.names), "t*y10 + y2");
        let single = parse_named("x^2 + x").unwrap();
        assert_eq!(single.names, vec!["x"]);
        assert_eq!(parse_with_nvars("x1", 3).unwrap().nvars(), 3);
        let vars = vec!["a".to_string(), "b".to_string()];
        assert_eq!(parse_with_vars("b*a", &vars).unwrap(), parse("x1*x2").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_err("x1^-2"), (1, 4, "negative exponent".into()));
        assert_eq!(parse_err("x1^3/2").2, "non-integer exponent");
        assert_eq!(parse_err("1/0").2, "division by zero");
        let (line, column, _) = parse_err("x1 +\n  * x2");
        assert_eq!((line, column), (2, 3));
        assert!(parse_err("2 x1").2.contains("`*`"));
        assert!(parse_err("x1 + $").2.contains("unexpected character"));
        assert!(parse_err("(x1").2.contains("expected `)`"));
        assert!(matches!(parse_with_nvars("x4", 3), Err(Error::Parse { column: 1, .. })));
        let vars = vec!["a".to_string()];
        assert!(parse_with_vars("a + b", &vars).unwrap_err().to_string().contains("unknown identifier `b`"));
    }

    #[test]
    fn format_examples() {
        assert_eq!(format(&VectorPoly::zero(2, 1)), "0");
        assert_eq!(format(&parse("x2*x1").unwrap()), "x1*x2");
        assert_eq!(format(&parse("3 - x1 + 1/2*x1^2*x2 - x2^3").unwrap()), "1/2*x1^2*x2 - x2^3 - x1 + 3");
        assert_eq!(format(&parse("-1/3").unwrap()), "-1/3");
        assert_eq!(
            format(&counterexample_cubic()),
            "x1^3 + 3*x1^2*x2 + 3*x1^2*x3 + 3*x1*x2^2 - 6*x1*x2*x3 + 3*x1*x3^2 + x2^3 + 3*x2^2*x3 + 3*x2*x3^2 + x3^3"
        );
    }

    #[test]
    fn format_is_idempotent_canonicalization() {
        for text in ["(x1 - x2)^3", "[x1*x2 - 1, -x2]", "1/2*(x1+1/3)^2", CUBIC] {
            let once = format(&parse(text).unwrap());
            let twice = format(&parse(&once).unwrap());
            assert_eq!(once, twice);
            assert_eq!(parse(&once).unwrap(), parse(text).unwrap());
        }
    }
}
