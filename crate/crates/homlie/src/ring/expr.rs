//! Recursive-descent parser for the structure-file expression grammar:
//! exact rational literals `p` or `p/q`, ring variables, `+ - * ^` and
//! parentheses. No polynomial division: `/` binds only integer literals.

use num::{BigInt, BigRational};
use thiserror::Error;

use super::{CoefficientRing, RingElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {found:?} at byte {at}")]
    UnexpectedChar { found: char, at: usize },
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("unknown variable {name:?} at byte {at}")]
    UnknownVariable { name: String, at: usize },
    #[error("zero denominator in rational literal at byte {at}")]
    ZeroDenominator { at: usize },
    #[error("exponent must be a nonnegative integer at byte {at}")]
    BadExponent { at: usize },
    #[error("trailing input at byte {at}")]
    TrailingInput { at: usize },
}

pub fn parse_element(ring: &CoefficientRing, src: &str) -> Result<RingElement, ParseError> {
    let mut p = Parser {
        ring,
        src: src.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(ParseError::TrailingInput { at: p.pos });
    }
    Ok(value)
}

struct Parser<'a> {
    ring: &'a CoefficientRing,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RingElement, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RingElement, ParseError> {
        let mut acc = self.factor()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RingElement, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            _ => {
                let base = self.atom()?;
                if let Some(b'^') = self.peek() {
                    self.pos += 1;
                    let at = self.pos;
                    let e = self.uint()?.try_into().map_err(|_| ParseError::BadExponent { at })?;
                    Ok(base.pow(e))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<RingElement, ParseError> {
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(c) => Err(ParseError::UnexpectedChar {
                        found: c as char,
                        at: self.pos,
                    }),
                    None => Err(ParseError::UnexpectedEnd),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                if let Some(b'/') = self.peek() {
                    let at = self.pos;
                    self.pos += 1;
                    let den = self.uint()?;
                    if den == 0 {
                        return Err(ParseError::ZeroDenominator { at });
                    }
                    Ok(self
                        .ring
                        .from_rational(BigRational::new(BigInt::from(num), BigInt::from(den))))
                } else {
                    Ok(self.ring.from_rational(BigRational::from(BigInt::from(num))))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii slice")
                    .to_string();
                match self.ring.var_index(&name) {
                    Some(idx) => Ok(self.ring.var(idx)),
                    None => Err(ParseError::UnknownVariable { name, at: start }),
                }
            }
            Some(c) => Err(ParseError::UnexpectedChar {
                found: c as char,
                at: self.pos,
            }),
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.src.get(self.pos) {
                Some(&c) => Err(ParseError::UnexpectedChar {
                    found: c as char,
                    at: self.pos,
                }),
                None => Err(ParseError::UnexpectedEnd),
            };
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii slice")
            .parse()
            .map_err(|_| ParseError::BadExponent { at: start })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_polynomials() {
        let r = CoefficientRing::polynomials(&["x", "y"]).unwrap();
        let p = r.parse("2*x^2*y - 1/2*x + 3").unwrap();
        let q = r.parse("(x*(2*x*y) - x*1/2) + 3").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn unary_minus_and_parens() {
        let r = CoefficientRing::polynomials(&["x"]).unwrap();
        assert_eq!(r.parse("-(x - 1)^2").unwrap(), r.parse("-x^2 + 2*x - 1").unwrap());
    }

    #[test]
    fn display_round_trips() {
        let r = CoefficientRing::polynomials(&["x", "y"]).unwrap();
        let p = r.parse("-1/3*x^2 + x*y - y + 4").unwrap();
        assert_eq!(r.parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn errors_carry_positions() {
        let r = CoefficientRing::polynomials(&["x"]).unwrap();
        assert_eq!(
            r.parse("x + z"),
            Err(ParseError::UnknownVariable {
                name: "z".into(),
                at: 4
            })
        );
        assert_eq!(r.parse("1/0"), Err(ParseError::ZeroDenominator { at: 1 }));
        assert!(matches!(r.parse("x +"), Err(ParseError::UnexpectedEnd)));
        assert!(matches!(r.parse("x x"), Err(ParseError::TrailingInput { .. })));
    }
}
