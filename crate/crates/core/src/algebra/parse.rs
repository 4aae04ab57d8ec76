//! Text syntax for elements.
//!
//! ```text
//! expr := term (('+' | '-') term)*
//! term := ['-'] [int ['*']] atom | int
//! atom := '[' expr ',' expr ']' | name
//! name := ident ['[' … ']']
//! ```
//!
//! A bare `0` is the zero element. Whitespace is ignored.

use num_bigint::BigInt;

use super::{AlgebraSpec, LieElement};
use crate::error::{LieError, Result};

struct Parser<'a> {
    spec: &'a AlgebraSpec,
    src: Vec<char>,
    pos: usize,
    truncation: usize,
}

fn err(msg: impl Into<String>) -> LieError {
    LieError::Parse(msg.into())
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(format!("expected `{c}` at offset {}", self.pos)))
        }
    }

    fn expr(&mut self) -> Result<LieElement> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LieElement> {
        let negative = self.eat('-');
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let coeff = if self.pos > start {
            let digits: String = self.src[start..self.pos].iter().collect();
            let c: BigInt = digits.parse().map_err(|_| err("bad integer"))?;
            self.eat('*');
            Some(c)
        } else {
            None
        };
        let atom = match (self.peek(), &coeff) {
            (Some('[') | Some('A'..='Z' | 'a'..='z' | '_'), _) => self.atom()?,
            (_, Some(_)) => self.spec.zero(self.truncation),
            _ => return Err(err(format!("expected a term at offset {}", self.pos))),
        };
        let mut x = match coeff {
            Some(c) => atom.scaled(&c),
            None => atom,
        };
        if negative {
            x = x.neg();
        }
        Ok(x)
    }

    fn atom(&mut self) -> Result<LieElement> {
        if self.eat('[') {
            let a = self.expr()?;
            self.expect(',')?;
            let b = self.expr()?;
            self.expect(']')?;
            return self.spec.bracket(&a, &b, self.truncation);
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        if self.peek() == Some('[') {
            while let Some(c) = self.peek() {
                self.pos += 1;
                if c == ']' {
                    break;
                }
            }
        }
        let name: String = self.src[start..self.pos].iter().collect();
        self.spec.generator(&name, self.truncation)
    }
}

impl AlgebraSpec {
    /// Parse an element such as `2*B[1,2] - [B[1,3],B[2,3]]`.
    pub fn parse_element(&self, text: &str, truncation: usize) -> Result<LieElement> {
        let mut p = Parser {
            spec: self,
            src: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            truncation,
        };
        if p.src.is_empty() {
            return Err(err("empty expression"));
        }
        let x = p.expr()?;
        if p.pos != p.src.len() {
            return Err(err(format!("unexpected `{}` at offset {}", p.src[p.pos], p.pos)));
        }
        Ok(x)
    }
}
