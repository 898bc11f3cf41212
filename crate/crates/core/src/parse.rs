//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor (("*" factor) | ("/" integer))*
//! factor := base ("^" nat)?
//! base   := "X" | "Y" | "Z" | "W" | integer | "w" | "u" | "(" expr ")"
//! ```
//!
//! `w` is ζ₃ and `u` is ζ₆ = 1 + w. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Poly, VAR_NAMES};
use crate::scalar::{EisNum, Rat};

pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty input"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err(&format!("unexpected `{}`", p.peek_char())));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or('?')
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        self.skip_ws();
        let mut acc = if self.eat(b'-') {
            -&self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                self.skip_ws();
                let at = self.pos;
                let d = match self.peek() {
                    Some(c) if c.is_ascii_digit() => self.integer()?,
                    _ => return Err(Error::NonIntegerDivisor { pos: at }),
                };
                // `2/3^2` would be ambiguous; the divisor is a bare literal
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    return Err(Error::NonIntegerDivisor { pos: at });
                }
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                acc = acc.scale(&EisNum::from_rat(Rat::new(1.into(), d)));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let b = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {}
                _ => return Err(self.err("expected a natural-number exponent")),
            }
            let at = self.pos;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?;
            Ok(b.pow(e))
        } else {
            Ok(b)
        }
    }

    fn base(&mut self) -> Result<Poly> {
        self.skip_ws();
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        match c {
            b'(' => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            b'0'..=b'9' => {
                let n = self.integer()?;
                Ok(Poly::constant(EisNum::from_rat(Rat::from_integer(n))))
            }
            c if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("?");
                match name {
                    "w" => Ok(Poly::constant(EisNum::zeta3())),
                    "u" => Ok(Poly::constant(EisNum::zeta6())),
                    _ => {
                        let mut chars = name.chars();
                        match (chars.next(), chars.next()) {
                            (Some(v), None) if VAR_NAMES.contains(&v) => {
                                let i = VAR_NAMES.iter().position(|&x| x == v).unwrap();
                                Ok(Poly::var(i))
                            }
                            _ => Err(Error::UnknownVariable { name: name.to_string(), pos: start }),
                        }
                    }
                }
            }
            _ => Err(self.err(&format!("unexpected `{}`", self.peek_char()))),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        s.parse().map_err(|_| Error::Parse { pos: start, msg: "expected an integer".into() })
    }
}
