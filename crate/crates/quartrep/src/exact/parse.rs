use num_traits::{One, Zero};
use thiserror::Error;

use super::bipoly::BiPoly;
use super::rat::{Int, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

const MAX_EXPONENT: u32 = 64;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
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

    fn expr(&mut self) -> Result<BiPoly, ParseError> {
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

    fn term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if d.total_degree() != 0 {
                        return Err(ParseError { pos: at, msg: "division by a non-constant expression".into() });
                    }
                    let c = d.constant_term();
                    if c.is_zero() {
                        return Err(ParseError { pos: at, msg: "division by zero".into() });
                    }
                    acc = acc.scale(&(Rat::one() / c));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BiPoly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected a non-negative integer exponent");
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: u32 = match text.parse() {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => return Err(ParseError { pos: start, msg: "exponent too large".into() }),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BiPoly, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BiPoly::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BiPoly::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: Int = text.parse().expect("digits");
                Ok(BiPoly::constant(Rat::from_integer(n)))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression in `x`, `y` with integer literals and `+ - * / ^ ( )`.
pub fn parse_poly(text: &str) -> Result<BiPoly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat, ratio};

    #[test]
    fn reads_examples() {
        assert_eq!(parse_poly("x^4 + y^4").unwrap(), BiPoly::from_int_terms(&[(4, 0, 1), (0, 4, 1)]));
        assert_eq!(
            parse_poly("(x^2-2*y^2)^2 + x").unwrap(),
            BiPoly::from_int_terms(&[(4, 0, 1), (2, 2, -4), (0, 4, 4), (1, 0, 1)])
        );
        assert_eq!(
            parse_poly("1/2*x*y - 3").unwrap(),
            BiPoly::from_terms([((1, 1), ratio(1, 2)), ((0, 0), rat(-3))])
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_poly("-x^2").unwrap(), BiPoly::from_int_terms(&[(2, 0, -1)]));
        assert_eq!(parse_poly("2*x^2").unwrap(), BiPoly::from_int_terms(&[(2, 0, 2)]));
        assert_eq!(parse_poly("x/3 + y/6").unwrap().normalize().0, BiPoly::from_int_terms(&[(1, 0, 2), (0, 1, 1)]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("2x").is_err());
        assert!(parse_poly("x/y").is_err());
        assert!(parse_poly("(x+1").is_err());
        assert!(parse_poly("x^").is_err());
        assert_eq!(parse_poly("x + z").unwrap_err().pos, 4);
    }

    #[test]
    fn print_parse_round_trip() {
        let f = parse_poly("3/4*x^3*y - x*y^2 + 7 - y").unwrap();
        assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }
}
