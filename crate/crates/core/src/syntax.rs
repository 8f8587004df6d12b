//! Text syntax for fields: `@z` is `∂z`, `~z` is `dz̄`, `i` the imaginary unit,
//! `^` is the wedge unless followed by an integer exponent, and `*` is the
//! graded product.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{GaussRat, Poly};
use crate::mvf::{Chart, ChartRef, FormedMultiVector, MultiVector};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Imag,
    Sym(String),
    D(String),
    Dbar(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, i32, Pos),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Imag => write!(f, "i"),
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::D(s) => write!(f, "@{s}"),
            Expr::Dbar(s) => write!(f, "~{s}"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a})*({b})"),
            Expr::Wedge(a, b) => write!(f, "({a})^({b})"),
            Expr::Div(a, b, _) => write!(f, "({a})/({b})"),
            Expr::Pow(a, k, _) => write!(f, "({a})^({k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    At,
    Tilde,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn err(p: Pos, msg: impl Into<String>) -> Error {
    Error::Syntax { line: p.line, col: p.col, msg: msg.into() }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let start = i;
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
                return Err(err(Pos { line, col: col + (i - start) }, "decimal literals are not supported; use p/q"));
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '@' => Tok::At,
                '~' => Tok::Tilde,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '.' => return Err(err(pos, "decimal literals are not supported; use p/q")),
                _ => return Err(err(pos, format!("unexpected character `{c}`"))),
            }
        };
        col += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected {what}")))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut a = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    a = Expr::Add(Box::new(a), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.bump();
                    a = Expr::Sub(Box::new(a), Box::new(self.product()?));
                }
                _ => return Ok(a),
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut a = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    a = Expr::Mul(Box::new(a), Box::new(self.unary()?));
                }
                Tok::Caret => {
                    self.bump();
                    a = Expr::Wedge(Box::new(a), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let p = self.pos();
                    self.bump();
                    a = Expr::Div(Box::new(a), Box::new(self.unary()?), p);
                }
                _ => return Ok(a),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    /// An exponent follows `^` only as `n` or `(n)` or `(-n)`.
    fn exponent_ahead(&self) -> Option<usize> {
        if *self.peek() != Tok::Caret {
            return None;
        }
        match self.peek_at(1) {
            Tok::Int(_) => Some(1),
            Tok::LParen => match (self.peek_at(2), self.peek_at(3), self.peek_at(4)) {
                (Tok::Int(_), Tok::RParen, _) => Some(3),
                (Tok::Minus, Tok::Int(_), Tok::RParen) => Some(4),
                _ => None,
            },
            _ => None,
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let mut a = self.atom()?;
        while let Some(n) = self.exponent_ahead() {
            let p = self.pos();
            let toks: Vec<Tok> = (0..=n).map(|_| self.bump()).collect();
            let neg = toks.contains(&Tok::Minus);
            let k = toks
                .iter()
                .find_map(|t| if let Tok::Int(k) = t { Some(k.clone()) } else { None })
                .expect("exponent");
            let k: i32 = i32::try_from(k).map_err(|_| err(p, "exponent too large"))?;
            a = Expr::Pow(Box::new(a), if neg { -k } else { k }, p);
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Expr> {
        let p = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Num(n)),
            Tok::Ident(s) if s == "i" => Ok(Expr::Imag),
            Tok::Ident(s) => Ok(Expr::Sym(s)),
            Tok::At => match self.bump() {
                Tok::Ident(s) => Ok(Expr::D(s)),
                _ => Err(err(p, "expected a coordinate after `@`")),
            },
            Tok::Tilde => match self.bump() {
                Tok::Ident(s) => Ok(Expr::Dbar(s)),
                _ => Err(err(p, "expected a coordinate after `~`")),
            },
            Tok::LParen => {
                let e = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::End => Err(err(p, "unexpected end of input")),
            t => Err(err(p, format!("unexpected token {t:?}"))),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, i: 0 };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(err(p.pos(), "trailing input"));
    }
    Ok(e)
}

fn collect(e: &Expr, ds: &mut Vec<String>, bars: &mut Vec<String>) {
    match e {
        Expr::D(s) if !ds.contains(s) => ds.push(s.clone()),
        Expr::Dbar(s) if !bars.contains(s) => bars.push(s.clone()),
        Expr::Neg(a) | Expr::Pow(a, _, _) => collect(a, ds, bars),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Wedge(a, b) | Expr::Div(a, b, _) => {
            collect(a, ds, bars);
            collect(b, ds, bars);
        }
        _ => {}
    }
}

/// The chart holding `hint` first, then remaining `@`/`~` coordinates in
/// order of first appearance.
pub fn infer_chart(exprs: &[&Expr], hint: &[&str], dbar_hint: &[&str]) -> ChartRef {
    let mut ds: Vec<String> = hint.iter().map(|s| s.to_string()).collect();
    let mut bars: Vec<String> = dbar_hint.iter().map(|s| s.to_string()).collect();
    for e in exprs {
        collect(e, &mut ds, &mut bars);
    }
    let d: Vec<&str> = ds.iter().map(String::as_str).collect();
    let b: Vec<&str> = bars.iter().map(String::as_str).collect();
    Chart::with_dbar("U", &d, &b)
}

pub fn eval(e: &Expr, chart: &ChartRef) -> Result<FormedMultiVector> {
    let func = |p: Poly| FormedMultiVector::from_mv(&MultiVector::function(chart, p));
    Ok(match e {
        Expr::Num(n) => func(Poly::constant(GaussRat::new(BigRational::from_integer(n.clone()), BigRational::from_integer(0.into())))),
        Expr::Imag => func(Poly::constant(GaussRat::i())),
        Expr::Sym(s) => func(Poly::sym(s)),
        Expr::D(s) => {
            if !chart.vars().iter().any(|x| x.name() == s) {
                return Err(Error::UnknownSymbol(format!("@{s}")));
            }
            FormedMultiVector::from_mv(&MultiVector::d(chart, s))
        }
        Expr::Dbar(s) => {
            if !chart.dbar().iter().any(|x| x.name() == s) {
                return Err(Error::UnknownSymbol(format!("~{s}")));
            }
            FormedMultiVector::new(&MultiVector::function(chart, Poly::one()), &[s])?
        }
        Expr::Neg(a) => eval(a, chart)?.neg(),
        Expr::Add(a, b) => eval(a, chart)?.add(&eval(b, chart)?)?,
        Expr::Sub(a, b) => eval(a, chart)?.sub(&eval(b, chart)?)?,
        Expr::Mul(a, b) | Expr::Wedge(a, b) => eval(a, chart)?.wedge(&eval(b, chart)?)?,
        Expr::Div(a, b, p) => {
            let d = as_function(&eval(b, chart)?).ok_or_else(|| err(*p, "divisor must be a function"))?;
            let (m, c) = d.as_unit().ok_or_else(|| err(*p, "divisor must be a monomial"))?;
            let c = c.inv().ok_or(Error::DivisionByZero)?;
            eval(a, chart)?.mul_poly(&Poly::term(m.inv(), c))
        }
        Expr::Pow(a, k, p) => {
            let f = as_function(&eval(a, chart)?).ok_or_else(|| err(*p, "only functions can be raised to a power"))?;
            let r = f.powi(*k).ok_or_else(|| err(*p, "negative power of a non-monomial"))?;
            func(r)
        }
    })
}

fn as_function(x: &FormedMultiVector) -> Option<Poly> {
    if x.is_zero() {
        return Some(Poly::zero());
    }
    if x.comps().len() == 1 {
        if let Some(((0, 0), p)) = x.comps().iter().next() {
            return Some(p.clone());
        }
    }
    None
}

/// Parse in a fixed chart.
pub fn parse_field(src: &str, chart: &ChartRef) -> Result<FormedMultiVector> {
    eval(&parse(src)?, chart)
}

pub fn parse_mv(src: &str, chart: &ChartRef) -> Result<MultiVector> {
    let f = parse_field(src, chart)?;
    if f.comps().keys().any(|(_, d)| *d != 0) {
        return Err(Error::UnknownSymbol("unexpected ~ in a multivector".into()));
    }
    Ok(f.form_part(0))
}

/// Parse a scalar expression (no `@`/`~`).
pub fn parse_poly(src: &str) -> Result<Poly> {
    let chart = Chart::new("scalar", &[]);
    let f = parse_field(src, &chart)?;
    as_function(&f).ok_or_else(|| Error::UnknownSymbol(src.to_string()))
}
