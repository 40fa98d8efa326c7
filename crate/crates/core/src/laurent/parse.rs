//! Text syntax for Laurent polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [coeff '*'] factor ('*' factor)* | coeff
//! factor := var ['^' int]
//! coeff  := int | int '/' int
//! var    := 'x' | 'y' | 'z' | 'z' digits
//! ```
//!
//! `x`, `y`, `z` are the first three variables; `z1, z2, ...` name any
//! variable (so `x` and `z1` are the same).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::LaurentPolynomial;
use crate::exactlat::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

const MAX_EXPONENT: i64 = i32::MAX as i64;

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

type Term = (BTreeMap<usize, i64>, Rational);

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits");
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string"))
    }

    fn signed_int(&mut self) -> Result<BigInt, ParseError> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let v = self.digits()?;
        Ok(if negative { -v } else { v })
    }

    fn expr(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut terms = Vec::new();
        let mut negate = false;
        match self.peek() {
            None => return self.error("empty expression"),
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (mono, mut coeff) = self.term()?;
            if negate {
                coeff = -coeff;
            }
            terms.push((mono, coeff));
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                Some(c) => return self.error(format!("unexpected character {:?}", c as char)),
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut mono: BTreeMap<usize, i64> = BTreeMap::new();
        let mut coeff = Rational::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() || c == b'-' || c == b'+' => {
                    let p = self.signed_int()?;
                    let mut value = Rational::from_integer(p);
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let at = self.pos;
                        let q = self.digits()?;
                        if q.is_zero() {
                            self.pos = at;
                            return self.error("zero denominator");
                        }
                        value /= Rational::from_integer(q);
                    }
                    coeff *= value;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let (var, exp) = self.factor()?;
                    let e = mono.entry(var).or_insert(0);
                    *e += exp;
                    if e.abs() > MAX_EXPONENT {
                        return self.error("exponent overflow");
                    }
                }
                Some(c) => return self.error(format!("unexpected character {:?}", c as char)),
                None => return self.error("unexpected end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((mono, coeff));
            }
        }
    }

    fn factor(&mut self) -> Result<(usize, i64), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.text[self.pos];
        self.pos += 1;
        let var = match name {
            b'x' | b'y' => usize::from(name - b'x'),
            b'z' => {
                let d0 = self.pos;
                while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if d0 == self.pos {
                    2
                } else {
                    let s = std::str::from_utf8(&self.text[d0..self.pos]).expect("digits");
                    match s.parse::<usize>() {
                        Ok(i) if i >= 1 => i - 1,
                        _ => {
                            self.pos = start;
                            return self.error(format!("unknown variable z{s}"));
                        }
                    }
                }
            }
            _ => {
                self.pos = start;
                return self.error(format!("unknown variable {:?}", name as char));
            }
        };
        if self.pos < self.text.len() && self.text[self.pos].is_ascii_alphanumeric() {
            self.pos = start;
            return self.error("unknown variable (use '*' between factors)");
        }
        let mut exp = 1i64;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.signed_int()?;
            exp = match i64::try_from(&e) {
                Ok(v) if v.abs() <= MAX_EXPONENT => v,
                _ => {
                    self.pos = at;
                    return self.error("exponent overflow");
                }
            };
        }
        Ok((var, exp))
    }
}

fn parse_terms(text: &str) -> Result<Vec<Term>, ParseError> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
    };
    p.expr()
}

fn assemble(terms: Vec<Term>, rank: usize) -> LaurentPolynomial {
    let mut f = LaurentPolynomial::zero(rank);
    for (mono, coeff) in terms {
        let mut e = vec![0i64; rank];
        for (var, exp) in mono {
            e[var] += exp;
        }
        f.add_term(e, coeff);
    }
    f
}

/// Parses with the rank inferred from the highest variable used (at least 1).
pub fn parse(text: &str) -> Result<LaurentPolynomial, ParseError> {
    let terms = parse_terms(text)?;
    let rank = terms
        .iter()
        .flat_map(|(m, _)| m.keys().copied())
        .max()
        .map_or(1, |v| v + 1);
    Ok(assemble(terms, rank))
}

/// Parses a polynomial in exactly `rank` variables.
pub fn parse_with_rank(text: &str, rank: usize) -> Result<LaurentPolynomial, ParseError> {
    let terms = parse_terms(text)?;
    if let Some(v) = terms.iter().flat_map(|(m, _)| m.keys().copied()).max() {
        if v >= rank {
            return Err(ParseError {
                position: 0,
                message: format!(
                    "unknown variable {} for a polynomial in {rank} variables",
                    variable_name(v, rank.max(v + 1))
                ),
            });
        }
    }
    Ok(assemble(terms, rank))
}

/// Display name of variable `index` in a polynomial of the given rank.
pub fn variable_name(index: usize, rank: usize) -> String {
    if rank <= 3 {
        ["x", "y", "z"][index].to_string()
    } else {
        format!("z{}", index + 1)
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| {
                    let name = variable_name(j, self.rank());
                    if x == 1 {
                        name
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write_coeff(f, &abs)?;
            } else {
                if !abs.is_one() {
                    write_coeff(f, &abs)?;
                    write!(f, "*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for LaurentPolynomial {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlat::int;

    #[test]
    fn worked_example() {
        let f = parse("x^-1*y + 2*y + x*y + y^-1").unwrap();
        assert_eq!(f.rank(), 2);
        assert_eq!(f.num_terms(), 4);
        assert_eq!(f.coeff(&[-1, 1]), int(1));
        assert_eq!(f.coeff(&[0, 1]), int(2));
        assert_eq!(f.coeff(&[1, 1]), int(1));
        assert_eq!(f.coeff(&[0, -1]), int(1));
    }

    #[test]
    fn constants_and_cancellation() {
        let one = parse("1").unwrap();
        assert_eq!(one.num_terms(), 1);
        assert_eq!(one.coeff(&[0]), int(1));
        assert!(parse("x + -1*x").unwrap().is_zero());
        assert!(parse("0").unwrap().is_zero());
    }

    #[test]
    fn rationals_and_long_names() {
        let f = parse("1/2*z1*z4^-2 - 3/4").unwrap();
        assert_eq!(f.rank(), 4);
        assert_eq!(f.coeff(&[1, 0, 0, -2]), crate::exactlat::rational(1, 2));
        assert_eq!(f.to_string(), "-3/4 + 1/2*z1*z4^-2");
        assert_eq!(parse("z").unwrap().rank(), 3);
        assert_eq!(parse("z1").unwrap(), parse("x").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("x + w").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse("x + ").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse("2y").unwrap_err();
        assert_eq!(e.position, 1);
        let e = parse("x^99999999999").unwrap_err();
        assert!(e.message.contains("overflow"));
        let e = parse("x/0").unwrap_err();
        assert!(e.message.contains("unexpected"));
        assert!(parse("").is_err());
        assert!(parse("1/0").unwrap_err().message.contains("zero denominator"));
        assert!(parse_with_rank("z", 2).is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "x^-1*y + 2*y + x*y + y^-1",
            "-x - 2/3*y^5 + 7",
            "z1*z2*z3*z4*z5",
            "x^2*y^-3*z - 1",
        ] {
            let f = parse(text).unwrap();
            let g = parse_with_rank(&f.to_string(), f.rank()).unwrap();
            assert_eq!(f, g, "{text}");
        }
        assert_eq!(parse("x^-1*y + 2*y + x*y + y^-1").unwrap().to_string(), "x^-1*y + y^-1 + 2*y + x*y");
    }
}
