//! Polynomial expressions: integers, `a/b` rational literals, variables,
//! `+ - *`, implicit multiplication, `^` with natural exponents, parentheses.

use std::marker::PhantomData;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::Poly;
use super::ring::RingSpec;
use crate::error::{Error, Result};
use crate::field::Field;

/// Exponents above this are rejected before any expansion happens.
const MAX_EXPONENT: u32 = 255;

pub fn parse_poly<F: Field>(ring: &Arc<RingSpec>, src: &str) -> Result<Poly<F>> {
    let mut p = Parser::<F> { ring, src: src.as_bytes(), pos: 0, _f: PhantomData };
    p.skip_ws();
    if p.at_end() {
        return Err(Error::Syntax { pos: 0, msg: "empty expression".into() });
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.unexpected());
    }
    Ok(e)
}

struct Parser<'a, F> {
    ring: &'a Arc<RingSpec>,
    src: &'a [u8],
    pos: usize,
    _f: PhantomData<F>,
}

impl<F: Field> Parser<'_, F> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn unexpected(&self) -> Error {
        match self.peek() {
            None => Error::Syntax { pos: self.pos, msg: "unexpected end of input".into() },
            Some(b) if b"/%!&|=<>.,;:".contains(&b) => {
                Error::UnsupportedOperator { pos: self.pos, op: (b as char).to_string() }
            }
            Some(b) => Error::Syntax { pos: self.pos, msg: format!("unexpected character {:?}", b as char) },
        }
    }

    fn expr(&mut self) -> Result<Poly<F>> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b) if b.is_ascii_alphanumeric() || b == b'(' => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<F>> {
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                return Ok(self.factor()?.neg());
            }
            Some(b'+') => {
                self.pos += 1;
                return self.factor();
            }
            _ => {}
        }
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self.natural()?;
            if e > BigInt::from(MAX_EXPONENT) {
                return Err(Error::Syntax { pos: at, msg: format!("exponent {e} is too large") });
            }
            let e: u32 = e.try_into().expect("bounded above");
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<F>> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(match self.peek() {
                        None => Error::Syntax { pos: self.pos, msg: format!("unclosed parenthesis opened at {start}") },
                        _ => self.unexpected(),
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let num = self.natural()?;
                let mut den = BigInt::one();
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some(b'/') {
                    let slash = self.pos;
                    self.pos += 1;
                    self.skip_ws();
                    if !matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                        return Err(Error::UnsupportedOperator { pos: slash, op: "/".into() });
                    }
                    den = self.natural()?;
                    if den.is_zero() {
                        return Err(Error::DenominatorVanishes { pos: slash });
                    }
                } else {
                    self.pos = save;
                }
                let spec = self.ring.field();
                let c = F::from_ratio(&num, &den, spec).ok_or(Error::DenominatorVanishes { pos: start })?;
                Ok(Poly::constant(self.ring, c))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                // a variable is one letter and an index, so `x1x2` is a product
                while matches!(self.peek(), Some(b) if b.is_ascii_alphabetic()) {
                    self.pos += 1;
                }
                while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.ring.var_index(name) {
                    Some(v) => Ok(Poly::monomial(self.ring, Monomial::var(v), F::one(self.ring.field()))),
                    None => Err(Error::UnknownVariable { pos: start, name: name.to_string() }),
                }
            }
            _ => Err(self.unexpected()),
        }
    }

    fn natural(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }
}
