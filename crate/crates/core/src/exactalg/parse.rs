//! Polynomial text input.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant. A JSON array of
//! coefficients, lowest degree first, is accepted as well.

use num_bigint::BigInt;

use super::poly_q::PolyQ;
use super::rational::{parse_rational, Rational};
use super::AlgebraError;

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 10_000;

pub fn parse_poly(input: &str) -> Result<PolyQ, AlgebraError> {
    let trimmed = input.trim();
    if trimmed.starts_with('[') {
        return parse_json_coeffs(trimmed);
    }
    let mut parser = Parser { chars: trimmed.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
    if parser.chars.is_empty() {
        return Err(AlgebraError::Parse("empty polynomial".into()));
    }
    let poly = parser.expr()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error("unexpected character"));
    }
    Ok(poly)
}

fn parse_json_coeffs(s: &str) -> Result<PolyQ, AlgebraError> {
    let values: Vec<serde_json::Value> =
        serde_json::from_str(s).map_err(|e| AlgebraError::Parse(format!("bad coefficient array: {e}")))?;
    let coeffs = values
        .iter()
        .map(|v| match v {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
            other => Err(AlgebraError::Parse(format!("coefficient must be an integer or a rational string, got {other}"))),
        })
        .collect::<Result<Vec<Rational>, _>>()?;
    Ok(PolyQ::new(coeffs))
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, what: &str) -> AlgebraError {
        let rest: String = self.chars[self.pos.min(self.chars.len())..].iter().collect();
        AlgebraError::Parse(format!("{what} at position {} (remaining: {rest:?})", self.pos))
    }

    fn expr(&mut self) -> Result<PolyQ, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<PolyQ, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if !rhs.is_constant() || rhs.is_zero() {
                        return Err(self.error("division only by a nonzero constant"));
                    }
                    acc = acc.scale(&rhs.leading().recip());
                }
                Some(c) if c == 'x' || c == 'X' || c == '(' || c.is_ascii_digit() => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<PolyQ, AlgebraError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyQ, AlgebraError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let digits = self.digits();
        let e: u32 = digits.parse().map_err(|_| self.error("expected a nonnegative integer exponent"))?;
        if e > MAX_EXPONENT {
            return Err(self.error("exponent too large"));
        }
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<PolyQ, AlgebraError> {
        match self.peek() {
            Some('x' | 'X') => {
                self.pos += 1;
                Ok(PolyQ::x())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(PolyQ::constant(Rational::from_integer(n)))
            }
            _ => Err(self.error("expected a number, 'x' or '('")),
        }
    }
}
