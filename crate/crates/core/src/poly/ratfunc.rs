use std::fmt;

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::mpoly::{MPoly, Vars};
use crate::arith::integer::{inv_mod, mul_mod};
use crate::arith::Rat;
use crate::error::{Error, Result};

/// Rational function `num / den` in lowest terms. The denominator is a
/// primitive integer polynomial with positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

/// Value of a rational function at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation<T> {
    Defined(T),
    Pole,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc { den: MPoly::one(num.vars()), num });
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let p = den.primitive();
        let scale = &p.lc() / &den.lc();
        num = num.scale(&scale);
        den = p;
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MPoly) -> Self {
        let den = MPoly::one(p.vars());
        RatFunc { num: p, den }
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        Self::from_poly(MPoly::constant(vars, c))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn add(&self, o: &Self) -> Self {
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .unwrap()
    }

    pub fn sub(&self, o: &Self) -> Self {
        RatFunc::new(
            &(&self.num * &o.den) - &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .unwrap()
    }

    pub fn mul(&self, o: &Self) -> Self {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        RatFunc { num: self.num.pow(n), den: self.den.pow(n) }
    }

    pub fn eval(&self, point: &[Rat]) -> Evaluation<Rat> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Evaluation::Pole;
        }
        Evaluation::Defined(self.num.eval(point) / d)
    }

    pub fn eval_mod(&self, point: &[u64], p: u64) -> Option<Evaluation<u64>> {
        let d = self.den.eval_mod(point, p)?;
        if d == 0 {
            return Some(Evaluation::Pole);
        }
        let n = self.num.eval_mod(point, p)?;
        Some(Evaluation::Defined(mul_mod(n, inv_mod(d, p), p)))
    }

    pub fn substitute(&self, images: &[MPoly]) -> Result<Self> {
        RatFunc::new(self.num.substitute(images), self.den.substitute(images))
    }

    pub fn to_text(&self) -> String {
        if self.den.is_constant() && self.den.lc().is_one() {
            self.num.to_text()
        } else {
            format!("({})/({})", self.num.to_text(), self.den.to_text())
        }
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn zero(vars: &Vars) -> Self {
        RatFunc { num: MPoly::zero(vars), den: MPoly::one(vars) }
    }

    pub fn one(vars: &Vars) -> Self {
        RatFunc { num: MPoly::one(vars), den: MPoly::one(vars) }
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if !self.is_constant() {
            return None;
        }
        let d = self.den.constant_value()?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.constant_value().unwrap_or_else(Rat::zero) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::poly::mpoly::vars;
    use crate::poly::parse::parse_poly;

    #[test]
    fn normal_form_cancels() {
        let r = vars(&["x"]);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let f = RatFunc::new(p("x^2 - 1"), p("2*x - 2")).unwrap();
        assert_eq!(f.num(), &p("1/2*x + 1/2"));
        assert_eq!(f.den(), &p("1"));
        assert_eq!(f.eval(&[rat_int(1)]), Evaluation::Defined(rat_int(1)));
        let g = RatFunc::new(p("1"), p("x - 1")).unwrap();
        assert_eq!(g.eval(&[rat_int(1)]), Evaluation::Pole);
    }

    #[test]
    fn field_operations() {
        let r = vars(&["x", "y"]);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let a = RatFunc::new(p("x"), p("y")).unwrap();
        let b = RatFunc::new(p("y"), p("x + y")).unwrap();
        let s = a.add(&b);
        assert_eq!(s.sub(&b), a);
        assert_eq!(a.mul(&a.inv().unwrap()), RatFunc::one(&r));
    }
}
