//! Expression trees over the variables `a`, `a'`, `b`, `b'` and a
//! precedence-climbing parser for them.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! exponent:= INT ('^' exponent)?          right-associative
//! atom    := VAR | INT | '(' sum ')'
//! ```

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// The four commuting scalars, in polynomial key order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    A,
    APrime,
    B,
    BPrime,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::A, Var::APrime, Var::B, Var::BPrime];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::APrime => "a'",
            Var::B => "b",
            Var::BPrime => "b'",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(Var),
    Int(BigInt),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn var(v: Var) -> Self {
        Expr::Var(v)
    }

    pub fn int(n: i64) -> Self {
        Expr::Int(BigInt::from(n))
    }

    pub fn negation(e: Expr) -> Self {
        Expr::Neg(Box::new(e))
    }

    pub fn sum(l: Expr, r: Expr) -> Self {
        Expr::Add(Box::new(l), Box::new(r))
    }

    pub fn difference(l: Expr, r: Expr) -> Self {
        Expr::Sub(Box::new(l), Box::new(r))
    }

    pub fn product(l: Expr, r: Expr) -> Self {
        Expr::Mul(Box::new(l), Box::new(r))
    }

    pub fn pow(base: Expr, exponent: u32) -> Self {
        Expr::Pow(Box::new(base), exponent)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Var(_) | Expr::Int(_) => 5,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Prints with the minimal parentheses needed to re-parse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => f.write_str(v.name()),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.write_child(f, 3)
            }
            Expr::Add(l, r) | Expr::Sub(l, r) => {
                l.write_child(f, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) {
                    " + "
                } else {
                    " - "
                })?;
                r.write_child(f, 2)
            }
            Expr::Mul(l, r) => {
                l.write_child(f, 2)?;
                f.write_str("*")?;
                r.write_child(f, 3)
            }
            Expr::Pow(base, k) => {
                base.write_child(f, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Var(Var),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                out.push((start, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                while i < bytes.len() && bytes[i] == b'\'' {
                    i += 1;
                }
                let name = &text[start..i];
                let var = match name {
                    "a" => Var::A,
                    "a'" => Var::APrime,
                    "b" => Var::B,
                    "b'" => Var::BPrime,
                    _ => {
                        return Err(Error::UnknownIdentifier {
                            offset: start,
                            name: name.to_string(),
                        })
                    }
                };
                out.push((start, Tok::Var(var)));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::sum(lhs, self.product()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::difference(lhs, self.product()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            lhs = Expr::product(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(Expr::negation(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let k = self.exponent()?;
            return Ok(Expr::pow(base, k));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        let at = self.offset();
        let base = match self.bump() {
            Some(Tok::Int(n)) => u32::try_from(n).map_err(|_| Error::Syntax {
                offset: at,
                message: "exponent too large".into(),
            })?,
            _ => {
                self.pos -= 1;
                return self.err("exponent must be a non-negative integer literal");
            }
        };
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.offset();
            let k = self.exponent()?;
            return base.checked_pow(k).ok_or(Error::Syntax {
                offset: at,
                message: "exponent too large".into(),
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Var(v)) => {
                self.bump();
                Ok(Expr::Var(v))
            }
            Some(Tok::Int(n)) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Some(Tok::LParen) => {
                self.bump();
                let e = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(e)
            }
            Some(_) => self.err("expected a variable, integer or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression; errors carry the byte offset of the problem.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.sum()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}
