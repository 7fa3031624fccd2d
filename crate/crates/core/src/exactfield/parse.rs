//! Scalar literals: sums of terms such as `3`, `-1/2`, `2/3*i`, `5*sqrt(2)`,
//! `i*sqrt(2)*sqrt(3)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Rational, Scalar, ScalarTower};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
enum Factor {
    Rational(Rational),
    I,
    Sqrt(Rational),
}

#[derive(Debug, Clone)]
struct Term {
    negative: bool,
    factors: Vec<Factor>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
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

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("validated digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let n = self.integer()?;
        if self.eat(b'/') {
            let d = self.integer()?;
            if d.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        match self.peek() {
            Some(b'i') => {
                self.pos += 1;
                Ok(Factor::I)
            }
            Some(b's') => {
                if !self.src[self.pos..].starts_with(b"sqrt") {
                    return self.err("expected `sqrt(`");
                }
                self.pos += 4;
                if !self.eat(b'(') {
                    return self.err("expected `(`");
                }
                let r = self.rational()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(Factor::Sqrt(r))
            }
            Some(c) if c.is_ascii_digit() => Ok(Factor::Rational(self.rational()?)),
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn terms(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let mut factors = vec![self.factor()?];
            while self.eat(b'*') {
                factors.push(self.factor()?);
            }
            terms.push(Term { negative, factors });
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(terms)
    }
}

/// Parses a scalar literal into `tower`. Every `sqrt(r)` must already be
/// available there; see [`scan_radicands`] for building a suitable tower.
pub fn parse_scalar(src: &str, tower: &ScalarTower) -> Result<Scalar> {
    let terms = Parser::new(src).terms()?;
    let mut total = Scalar::zero(tower);
    for term in terms {
        let mut value = Scalar::one(tower);
        for f in term.factors {
            let s = match f {
                Factor::Rational(r) => Scalar::from_rational(tower, r),
                Factor::I => Scalar::i(tower),
                Factor::Sqrt(r) => tower.sqrt(&r).ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("sqrt({r}) is not in the tower {tower}"),
                })?,
            };
            value = &value * &s;
        }
        total = if term.negative {
            &total - &value
        } else {
            &total + &value
        };
    }
    Ok(total)
}

/// Radicands appearing under `sqrt(..)` in a literal.
pub fn scan_radicands(src: &str) -> Result<Vec<Rational>> {
    let terms = Parser::new(src).terms()?;
    Ok(terms
        .into_iter()
        .flat_map(|t| t.factors)
        .filter_map(|f| match f {
            Factor::Sqrt(r) if r > Rational::zero() && !r.is_one() => Some(r),
            _ => None,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    #[test]
    fn grammar_examples() {
        let t = ScalarTower::gaussian().adjoin_sqrt(&rat(2, 1)).unwrap();
        let a = parse_scalar("1/2 + 3/4*i - 2*sqrt(2)", &t).unwrap();
        assert_eq!(a.coords()[0], rat(1, 2));
        assert_eq!(a.coords()[1], rat(3, 4));
        assert_eq!(a.coords()[2], rat(-2, 1));
        assert_eq!(parse_scalar("-i", &t).unwrap(), -Scalar::i(&t));
        assert_eq!(
            parse_scalar("sqrt(8)", &t).unwrap(),
            parse_scalar("2*sqrt(2)", &t).unwrap()
        );
    }

    #[test]
    fn errors_report_position() {
        let t = ScalarTower::gaussian();
        match parse_scalar("1/2 + x", &t) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_scalar("1/0", &t).is_err());
        assert!(parse_scalar("", &t).is_err());
        assert!(parse_scalar("sqrt(2)", &t).is_err());
    }

    #[test]
    fn scans_radicands() {
        assert_eq!(
            scan_radicands("1 + sqrt(2) - i*sqrt(3/4)").unwrap(),
            vec![rat(2, 1), rat(3, 4)]
        );
    }
}
