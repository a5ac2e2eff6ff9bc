//! Quantity literal syntax: rationals `p/q`, integers, `sqrt(<expr>)`, and
//! `+ - * /` composition with parentheses. The printer emits exactly this
//! grammar, so values round-trip through scenario files bit-for-bit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::repr::Repr;
use super::tower;
use super::{Quantity, QuantityError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralError {
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for LiteralError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at column {}: {}", self.position + 1, self.message)
    }
}

impl std::error::Error for LiteralError {}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input: input.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> LiteralError {
        LiteralError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), LiteralError> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            Some(got) => Err(self.error(format!(
                "expected '{}', found '{}'",
                c as char, got as char
            ))),
            None => Err(self.error(format!("expected '{}', found end of input", c as char))),
        }
    }

    fn expr(&mut self) -> Result<Quantity, LiteralError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Quantity, LiteralError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let divisor = self.factor()?;
                    acc = acc.checked_div(&divisor).map_err(|e| match e {
                        QuantityError::DivisionByZero => self.error("division by zero"),
                        other => self.error(other.to_string()),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Quantity, LiteralError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(b's') => {
                self.keyword("sqrt")?;
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                inner.sqrt().map_err(|e| self.error(e.to_string()))
            }
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), LiteralError> {
        self.skip_ws();
        if self.input[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            Ok(())
        } else {
            Err(self.error(format!("expected '{kw}'")))
        }
    }

    fn number(&mut self) -> Result<Quantity, LiteralError> {
        let numer = self.digits()?;
        if self.input.get(self.pos) == Some(&b'/') {
            // "p/q" written without spaces binds as a rational literal; with
            // left-to-right division the value is identical either way.
            self.pos += 1;
            let start = self.pos;
            let denom = self.digits()?;
            if denom.is_zero() {
                self.pos = start;
                return Err(self.error("zero denominator"));
            }
            return Ok(Quantity::from_big_rational(BigRational::new(numer, denom)));
        }
        Ok(Quantity::from_big_rational(BigRational::from_integer(
            numer,
        )))
    }

    fn digits(&mut self) -> Result<BigInt, LiteralError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        text.parse::<BigInt>()
            .map_err(|e| self.error(format!("bad integer: {e}")))
    }
}

pub(crate) fn parse_literal(input: &str) -> Result<Quantity, LiteralError> {
    let mut p = Parser::new(input);
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.error("trailing input"));
    }
    Ok(value)
}

fn print_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn print_repr(q: &Repr, tower: &tower::Tower) -> String {
    match q {
        Repr::Rat(r) => print_rational(r),
        Repr::Ext { level, a, b } => {
            let rad = print_repr(tower.radicand(*level), tower);
            let root = format!("sqrt({rad})");
            let b_part = match &**b {
                Repr::Rat(r) if r.is_one() => root,
                Repr::Rat(r) if (-r).is_one() => format!("-{root}"),
                Repr::Rat(r) => format!("{}*{}", print_rational(r), root),
                ext => format!("({})*{}", print_repr(ext, tower), root),
            };
            if a.is_zero() {
                return b_part;
            }
            let a_part = print_repr(a, tower);
            match b_part.strip_prefix('-') {
                Some(tail) => format!("{a_part} - {tail}"),
                None => format!("{a_part} + {b_part}"),
            }
        }
    }
}
