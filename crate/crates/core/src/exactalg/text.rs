//! Parser for the canonical text form (and hand-written inputs).
//!
//! Grammar: sums and differences of products and quotients of powers of
//! integers, variables (`l<vertex>_<slot>` or identifiers) and parenthesised
//! expressions.  `^` takes a signed integer exponent.

use num::BigInt;

use super::poly::Q;
use super::ratfunc::RatFunc;
use super::var::VarId;
use super::AlgError;

pub fn parse_ratfunc(s: &str) -> Result<RatFunc, AlgError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parses an exact rational such as `-3/4` or `7`.
pub fn parse_rational(s: &str) -> Result<Q, AlgError> {
    let f = parse_ratfunc(s)?;
    f.as_constant()
        .ok_or_else(|| AlgError::Parse(format!("`{}` is not a rational constant", s)))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> AlgError {
        AlgError::Parse(format!("{} at byte {}", msg, self.pos))
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

    fn expr(&mut self) -> Result<RatFunc, AlgError> {
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

    fn term(&mut self) -> Result<RatFunc, AlgError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div_ref(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, AlgError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, AlgError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            if digits.is_empty() {
                return Err(self.err("expected exponent"));
            }
            let k: i32 = digits.parse().map_err(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -k } else { k });
        }
        Ok(base)
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && f(self.src[self.pos]) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<RatFunc, AlgError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(RatFunc::from_q(Q::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
                let v = VarId::parse(&name).ok_or_else(|| self.err(&format!("bad variable `{}`", name)))?;
                Ok(RatFunc::var(v))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_canonically() {
        let f = parse_ratfunc("(l1_1 - l1_2 + t1 + t2)/(l1_2 - l1_1)").unwrap();
        assert_eq!(f.to_string(), "(-l1_1 + l1_2 - t1 - t2)/(l1_1 - l1_2)");
        assert_eq!(parse_ratfunc(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn rationals_and_powers() {
        assert_eq!(parse_rational("-3/6").unwrap().to_string(), "-1/2");
        let f = parse_ratfunc("x^-2 * x^3").unwrap();
        assert_eq!(f, RatFunc::param("x"));
        assert!(parse_ratfunc("x +").is_err());
        assert!(parse_ratfunc("1/(x-x)").is_err());
    }
}
