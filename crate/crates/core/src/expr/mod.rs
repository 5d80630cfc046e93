//! Text syntax for superfunctions, transitions and forms.
//!
//! Identifiers: `x1 th1 xi1 eps1 p1 ps1 t1 hbar I`; operators `+ - * / ^`;
//! `D(f, v)` is the left derivative of `f` by `v`. Printing uses the
//! [`Display`](std::fmt::Display) impls, which this parser reads back.

mod json;

pub use json::{from_json, to_json, FunctionJson, TermJson};

use crate::charts::Transition;
use crate::error::{Error, Result};
use crate::formsbridge::DifferentialForm;
use crate::scalar::{EvenVar, GaussianRational, Scalar};
use crate::superalgebra::{ChartId, Coord, OddGen, SuperFunction};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let chars: Vec<char> = text.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        let start = column;
        if c.is_ascii_digit() {
            let mut s = String::new();
            while k < chars.len() && chars[k].is_ascii_digit() {
                s.push(chars[k]);
                k += 1;
                column += 1;
            }
            out.push(Token { tok: Tok::Int(s), line, column: start });
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                s.push(chars[k]);
                k += 1;
                column += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line, column: start });
        } else if "+-*/^(),".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line, column: start });
            k += 1;
            column += 1;
        } else {
            return Err(Error::Parse { line, column, msg: format!("unexpected character '{c}'") });
        }
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

/// A variable name of the grammar.
pub fn parse_coord(name: &str) -> Option<Coord> {
    if name == "hbar" {
        return Some(Coord::Even(EvenVar::Hbar));
    }
    let split = name.find(|c: char| c.is_ascii_digit())?;
    let (prefix, digits) = name.split_at(split);
    let idx: u32 = digits.parse().ok().filter(|&i| i > 0)?;
    Some(match prefix {
        "x" => Coord::Even(EvenVar::X(idx)),
        "p" => Coord::Even(EvenVar::Fiber(idx)),
        "t" => Coord::Even(EvenVar::Param(idx)),
        "th" => Coord::Odd(OddGen::theta(idx)),
        "xi" => Coord::Odd(OddGen::xi(idx)),
        "ps" => Coord::Odd(OddGen::fiber(idx)),
        "eps" => Coord::Odd(OddGen::eps(idx)),
        _ => return None,
    })
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    chart: ChartId,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, tok: &Token, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: tok.line, column: tok.column, msg: msg.into() })
    }

    fn at(&self, tok: &Token, e: Error) -> Error {
        match e {
            Error::Parse { .. } => e,
            other => Error::Parse { line: tok.line, column: tok.column, msg: other.to_string() },
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let t = self.bump();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.err(&t, format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<SuperFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Sym('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SuperFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Sym('*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Sym('/') => {
                    let op = self.bump();
                    let d = self.unary()?;
                    let inv = d.invert().map_err(|e| self.at(&op, e))?;
                    acc = &acc * &inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<SuperFunction> {
        if self.peek().tok == Tok::Sym('-') {
            self.bump();
            return Ok(-self.unary()?);
        }
        if self.peek().tok == Tok::Sym('+') {
            self.bump();
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<SuperFunction> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Sym('^') {
            return Ok(base);
        }
        let op = self.bump();
        let negative = if self.peek().tok == Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let t = self.bump();
        let Tok::Int(s) = &t.tok else {
            return self.err(&t, "expected an integer exponent");
        };
        let e: u32 = match s.parse() {
            Ok(e) => e,
            Err(_) => return self.err(&t, "exponent too large"),
        };
        let p = base.pow(e);
        if negative {
            p.invert().map_err(|e| self.at(&op, e))
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<SuperFunction> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(s) => {
                let n: num_bigint::BigInt = s.parse().expect("digits");
                let r = num_rational::BigRational::from_integer(n);
                Ok(SuperFunction::scalar(Scalar::constant(GaussianRational::real(r))).in_chart(self.chart))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) if name == "I" => Ok(SuperFunction::scalar(Scalar::i()).in_chart(self.chart)),
            Tok::Ident(name) if name == "D" && self.peek().tok == Tok::Sym('(') => {
                self.bump();
                let f = self.expr()?;
                self.expect(',')?;
                let v = self.bump();
                let coord = match &v.tok {
                    Tok::Ident(n) => parse_coord(n),
                    _ => None,
                };
                let Some(coord) = coord else {
                    return self.err(&v, "expected a variable to differentiate by");
                };
                self.expect(')')?;
                Ok(f.partial(coord))
            }
            Tok::Ident(name) => match parse_coord(name) {
                Some(c) => Ok(SuperFunction::coord(c).in_chart(self.chart)),
                None => self.err(&t, format!("unknown identifier '{name}'")),
            },
            Tok::End => self.err(&t, "unexpected end of input"),
            Tok::Sym(c) => self.err(&t, format!("unexpected '{c}'")),
        }
    }
}

/// Parses an expression into a function of the given chart.
pub fn parse_in(text: &str, chart: ChartId) -> Result<SuperFunction> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, chart };
    let f = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, "unexpected trailing input");
    }
    Ok(f)
}

pub fn parse(text: &str) -> Result<SuperFunction> {
    parse_in(text, ChartId::default())
}

/// Parses an expression that must be even.
pub fn parse_even(text: &str, chart: ChartId) -> Result<SuperFunction> {
    let f = parse_in(text, chart)?;
    if !f.is_even() {
        return Err(Error::ParityMismatch(format!("'{text}' is not even")));
    }
    Ok(f)
}

/// Parses an expression that must be odd.
pub fn parse_odd(text: &str, chart: ChartId) -> Result<SuperFunction> {
    let f = parse_in(text, chart)?;
    if !f.is_odd() {
        return Err(Error::ParityMismatch(format!("'{text}' is not odd")));
    }
    Ok(f)
}

/// Splits a `;`-separated list or a JSON array of strings.
pub fn split_list(text: &str) -> Result<Vec<String>> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).map_err(|e| Error::Parse { line: e.line(), column: e.column(), msg: e.to_string() });
    }
    Ok(trimmed.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
}

/// `2n` images `x^1..x^n, θ_1..θ_n` of the old coordinates in terms of the new.
pub fn parse_transition(text: &str, source: ChartId, target: ChartId) -> Result<Transition> {
    let images = split_list(text)?.iter().map(|s| parse_in(s, target)).collect::<Result<Vec<_>>>()?;
    Transition::new("user", source, target, images)
}

pub fn parse_form(text: &str, n: u32) -> Result<DifferentialForm> {
    DifferentialForm::new(n, parse(text)?)
}
