//! Recursive-descent parser. Every failure carries the byte offset it was
//! detected at; arbitrary input either parses or errors, never panics.

use super::ast::{Expr, Func};
use crate::Real;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEnd,
    UnexpectedChar(char),
    BadNumber,
    BadExponent,
    VariableIndexZero,
    VariableExceedsArity { index: usize, arity: usize },
    UnknownFunction(String),
    ExpectedClosingParen,
    TrailingInput,
    ExponentOutOfRange,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: {kind:?}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    arity: usize,
}

/// Parse `src` as a function of `z1..z{arity}`.
pub fn parse<R: Real>(src: &str, arity: usize) -> Result<Expr<R>, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        arity,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err(ParseErrorKind::TrailingInput));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            offset: self.pos,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<R: Real>(&mut self) -> Result<Expr<R>, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term<R: Real>(&mut self) -> Result<Expr<R>, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor<R: Real>(&mut self) -> Result<Expr<R>, ParseError> {
        if self.eat(b'-') {
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let atom = self.atom()?;
        if self.eat(b'^') {
            let k = self.exponent()?;
            return Ok(Expr::Pow(Box::new(atom), k));
        }
        Ok(atom)
    }

    /// Integer exponent; `-3` and `(-3)` are both accepted.
    fn exponent(&mut self) -> Result<i32, ParseError> {
        let parenthesized = self.eat(b'(');
        let neg = self.eat(b'-');
        let start = {
            self.skip_ws();
            self.pos
        };
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(ParseErrorKind::BadExponent));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let mag: i64 = digits
            .parse()
            .map_err(|_| self.err(ParseErrorKind::ExponentOutOfRange))?;
        if mag > i32::MAX as i64 {
            return Err(self.err(ParseErrorKind::ExponentOutOfRange));
        }
        if parenthesized && !self.eat(b')') {
            return Err(self.err(ParseErrorKind::ExpectedClosingParen));
        }
        let k = mag as i32;
        Ok(if neg { -k } else { k })
    }

    fn atom<R: Real>(&mut self) -> Result<Expr<R>, ParseError> {
        match self.peek() {
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err(ParseErrorKind::ExpectedClosingParen));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(b'z') => self.variable(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            Some(c) => Err(self.err(ParseErrorKind::UnexpectedChar(c as char))),
        }
    }

    fn number<R: Real>(&mut self) -> Result<Expr<R>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
        {
            self.pos += 1;
        }
        // Scientific notation: 1e-3, 2.5E4. The sign is part of the literal.
        if self.pos < self.src.len() && (self.src[self.pos] | 0x20) == b'e' {
            let mark = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && (self.src[self.pos] == b'+' || self.src[self.pos] == b'-')
            {
                self.pos += 1;
            }
            let dstart = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == dstart {
                // not an exponent after all (e.g. "2*exp(z1)")
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos])
            .map_err(|_| self.err(ParseErrorKind::BadNumber))?;
        let v: f64 = text
            .parse()
            .map_err(|_| self.err(ParseErrorKind::BadNumber))?;
        if !v.is_finite() {
            return Err(self.err(ParseErrorKind::BadNumber));
        }
        let r = R::of(v);
        if !r.is_finite() {
            // overflowed the narrower scalar type
            return Err(self.err(ParseErrorKind::BadNumber));
        }
        Ok(Expr::Num(r))
    }

    fn variable<R: Real>(&mut self) -> Result<Expr<R>, ParseError> {
        debug_assert_eq!(self.peek(), Some(b'z'));
        self.pos += 1;
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(ParseErrorKind::UnexpectedChar('z')));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let index: usize = digits
            .parse()
            .map_err(|_| self.err(ParseErrorKind::BadNumber))?;
        if index == 0 {
            return Err(self.err(ParseErrorKind::VariableIndexZero));
        }
        if index > self.arity {
            return Err(self.err(ParseErrorKind::VariableExceedsArity {
                index,
                arity: self.arity,
            }));
        }
        Ok(Expr::Var(index - 1))
    }

    fn ident<R: Real>(&mut self) -> Result<Expr<R>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if name == "i" {
            return Ok(Expr::I);
        }
        let func = match name {
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            _ => {
                self.pos = start;
                return Err(self.err(ParseErrorKind::UnknownFunction(name.to_string())));
            }
        };
        if !self.eat(b'(') {
            let found = self.peek().map(|c| c as char).unwrap_or(' ');
            return Err(self.err(ParseErrorKind::UnexpectedChar(found)));
        }
        let inner = self.expr()?;
        if !self.eat(b')') {
            return Err(self.err(ParseErrorKind::ExpectedClosingParen));
        }
        Ok(Expr::Call(func, Box::new(inner)))
    }
}
