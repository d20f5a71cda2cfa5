//! Text grammar for polynomials:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer ['/' integer] | variable | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Variables must come from the declared list.

use num_bigint::BigInt;

use super::mpoly::{MPoly, Vars};
use crate::arith::Rat;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

pub fn parse_poly(text: &str, vars: &Vars) -> Result<MPoly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty input"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
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

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let n = self.integer()?;
            let e: u32 = n
                .try_into()
                .map_err(|_| Error::Syntax { pos: start, msg: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(Error::Syntax { pos: at, msg: "zero denominator".into() });
                    }
                    return Ok(MPoly::constant(self.vars, Rat::new(n, d)));
                }
                Ok(MPoly::constant(self.vars, Rat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(MPoly::var(self.vars, i)),
                    None => Err(Error::Syntax {
                        pos: start,
                        msg: format!("unknown variable `{name}`"),
                    }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::mpoly::vars;

    #[test]
    fn parses_terms_with_rationals() {
        let r = vars(&["x0", "x1", "y1"]);
        let f = parse_poly("3/2*x0^2*y1 - x1 + 1", &r).unwrap();
        assert_eq!(f.to_text(), "3/2*x0^2*y1 - x1 + 1");
        let g = parse_poly(" - ( x0 + x1 )^2 ", &r).unwrap();
        assert_eq!(g.to_text(), "-x0^2 - 2*x0*x1 - x1^2");
    }

    #[test]
    fn reports_positions() {
        let r = vars(&["x"]);
        assert_eq!(
            parse_poly("x + z", &r),
            Err(Error::Syntax { pos: 4, msg: "unknown variable `z`".into() })
        );
        assert!(matches!(parse_poly("x +", &r), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("1/0", &r), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn round_trips_canonical_text() {
        let r = vars(&["x", "y"]);
        let f = parse_poly("(x - 2*y)^3 + 7/3*x*y", &r).unwrap();
        assert_eq!(parse_poly(&f.to_text(), &r).unwrap(), f);
    }
}
