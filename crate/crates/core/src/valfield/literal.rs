//! Expression syntax shared by scalar literals and rational maps.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := base ('^' integer)?
//! base   := 'z' | integer | name | '(' expr ')'
//! ```

use num::BigInt;

use super::ValuedField;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    Int(BigInt),
    Name(String),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&mut self) -> Option<char> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        trimmed.chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let rest = &self.src[self.pos..];
        let n = rest.find(|c| !f(c)).unwrap_or(rest.len());
        self.pos += n;
        &rest[..n]
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.eat('/') {
                acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.eat('^') {
            self.peek();
            let digits = self.take_while(|c| c.is_ascii_digit());
            let n: u32 = digits.parse().map_err(|_| self.err("expected a nonnegative integer exponent"))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                Ok(Expr::Int(digits.parse().unwrap()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric());
                Ok(if name == "z" { Expr::Var } else { Expr::Name(name.to_string()) })
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses an expression; the whole input must be consumed.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

impl Expr {
    pub fn mentions_var(&self) -> bool {
        match self {
            Expr::Var => true,
            Expr::Int(_) | Expr::Name(_) => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.mentions_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.mentions_var() || b.mentions_var(),
        }
    }

    /// Evaluates a variable-free expression in `K`.
    pub fn eval_scalar<K: ValuedField>(&self, cfg: &K::Config) -> Result<K> {
        let rec = |e: &Expr| e.eval_scalar::<K>(cfg);
        Ok(match self {
            Expr::Int(n) => K::from_q(cfg, &crate::arith::Q::from_integer(n.clone())),
            Expr::Name(s) => K::parse_atom(cfg, s).ok_or_else(|| Error::Parse(format!("unknown name {s:?}")))?,
            Expr::Var => return Err(Error::Parse("a scalar literal cannot mention z".into())),
            Expr::Neg(a) => rec(a)?.neg(),
            Expr::Add(a, b) => rec(a)?.add(&rec(b)?),
            Expr::Sub(a, b) => rec(a)?.sub(&rec(b)?),
            Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?),
            Expr::Div(a, b) => rec(a)?.div(&rec(b)?).ok_or(Error::DivisionByZero)?,
            Expr::Pow(a, n) => rec(a)?.pow(*n),
        })
    }
}

/// Parses a scalar literal such as `4 + 3*pi` or `-1/2`.
pub fn parse_scalar<K: ValuedField>(cfg: &K::Config, src: &str) -> Result<K> {
    parse_expr(src)?.eval_scalar::<K>(cfg)
}
