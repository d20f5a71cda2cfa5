use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::integer::rat_mod_p;
use crate::arith::{fmt_rat, Rat};
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;

/// Exponent vector. Slots past the ring's variable count are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Exp(pub [u16; MAX_VARS]);

impl Exp {
    pub fn zero() -> Self {
        Exp([0; MAX_VARS])
    }

    pub fn unit(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Exp(e)
    }

    pub fn from_slice(s: &[u16]) -> Self {
        let mut e = [0; MAX_VARS];
        e[..s.len()].copy_from_slice(s);
        Exp(e)
    }

    pub fn deg(&self) -> u32 {
        self.0.iter().map(|&x| x as u32).sum()
    }

    pub fn add(&self, o: &Exp) -> Exp {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        Exp(e)
    }

    pub fn divides(&self, o: &Exp) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o - self`, assuming `self` divides `o`.
    pub fn sub_from(&self, o: &Exp) -> Exp {
        let mut e = o.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Exp(e)
    }

    pub fn lcm(&self, o: &Exp) -> Exp {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a = (*a).max(*b);
        }
        Exp(e)
    }

    pub fn coprime(&self, o: &Exp) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Graded lexicographic comparison, earlier variables heavier.
    pub fn cmp_grlex(&self, o: &Exp) -> Ordering {
        self.deg().cmp(&o.deg()).then_with(|| self.0.cmp(&o.0))
    }

    /// Graded reverse lexicographic comparison.
    pub fn cmp_grevlex(&self, o: &Exp) -> Ordering {
        self.deg().cmp(&o.deg()).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                if self.0[i] != o.0[i] {
                    return o.0[i].cmp(&self.0[i]);
                }
            }
            Ordering::Equal
        })
    }

    pub fn cmp_lex(&self, o: &Exp) -> Ordering {
        self.0.cmp(&o.0)
    }
}

pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted by decreasing graded-lex order with no zero
/// coefficients, so structural equality is mathematical equality and the
/// first term carries the total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    vars: Vars,
    terms: Vec<(Exp, Rat)>,
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly { vars: vars.clone(), terms: vec![] }
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero(vars);
        }
        MPoly { vars: vars.clone(), terms: vec![(Exp::zero(), c)] }
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, Rat::from_integer(BigInt::from(c)))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_int(vars, 1)
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len());
        MPoly { vars: vars.clone(), terms: vec![(Exp::unit(i), Rat::one())] }
    }

    pub fn monomial(vars: &Vars, e: Exp, c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero(vars);
        }
        MPoly { vars: vars.clone(), terms: vec![(e, c)] }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(vars: &Vars, mut terms: Vec<(Exp, Rat)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp_grlex(&a.0));
        let mut out: Vec<(Exp, Rat)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MPoly { vars: vars.clone(), terms: out }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &[(Exp, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Exp::zero())
    }

    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::zero()),
            [(e, c)] if *e == Exp::zero() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; -1 for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms.first().map(|(e, _)| e.deg() as i64).unwrap_or(-1)
    }

    pub fn degree_in(&self, i: usize) -> i64 {
        self.terms.iter().map(|(e, _)| e.0[i] as i64).max().unwrap_or(-1)
    }

    pub fn leading(&self) -> Option<&(Exp, Rat)> {
        self.terms.first()
    }

    pub fn lc(&self) -> Rat {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rat::zero)
    }

    pub fn same_ring(&self, o: &MPoly) -> bool {
        Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars
    }

    fn check_ring(&self, o: &MPoly) {
        assert!(
            self.same_ring(o),
            "ring mismatch: {:?} vs {:?}",
            self.vars,
            o.vars
        );
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((e, _)) => {
                let d = e.deg();
                self.terms.iter().all(|(e, _)| e.deg() == d)
            }
        }
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.iter().any(|(e, _)| e.0[i] > 0))
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Exp, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.add(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut r = MPoly::one(&self.vars);
        let mut b = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = &r * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        r
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.0[i] > 0)
            .map(|(e, c)| {
                let mut ne = *e;
                ne.0[i] -= 1;
                (ne, c * Rat::from_integer(BigInt::from(e.0[i])))
            })
            .collect();
        MPoly::from_terms(&self.vars, terms)
    }

    /// Coefficient of `x_i^k`, as a polynomial in the same ring free of `x_i`.
    pub fn coeff_in(&self, i: usize, k: u16) -> MPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.0[i] == k)
            .map(|(e, c)| {
                let mut ne = *e;
                ne.0[i] = 0;
                (ne, c.clone())
            })
            .collect();
        MPoly::from_terms(&self.vars, terms)
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(e, _)| e.deg() == d).cloned().collect(),
        }
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                if e.0[i] > 0 {
                    t *= num_traits::pow(x.clone(), e.0[i] as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluation modulo p; `None` if a coefficient denominator vanishes mod p.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Option<u64> {
        use crate::arith::integer::{mul_mod, pow_mod};
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = rat_mod_p(c, p)?;
            for (i, x) in point.iter().enumerate() {
                if e.0[i] > 0 {
                    t = mul_mod(t, pow_mod(*x, e.0[i] as u64, p), p);
                }
            }
            acc = (acc + t) % p;
        }
        Some(acc)
    }

    /// Substitutes polynomials (all in one target ring) for each variable.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars());
        let target = images[0].vars.clone();
        let maxdeg: Vec<u16> = (0..self.nvars())
            .map(|i| self.degree_in(i).max(0) as u16)
            .collect();
        let powers: Vec<Vec<MPoly>> = images
            .iter()
            .zip(maxdeg.iter())
            .map(|(g, &d)| {
                let mut v = vec![MPoly::one(&target)];
                for k in 1..=d as usize {
                    let next = &v[k - 1] * g;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = MPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (i, pw) in powers.iter().enumerate() {
                if e.0[i] > 0 {
                    t = &t * &pw[e.0[i] as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-expresses the polynomial in a ring with the given variable names.
    /// Every variable that occurs must exist in the target ring.
    pub fn to_ring(&self, target: &Vars) -> Result<MPoly> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.iter().enumerate() {
            match target.iter().position(|t| t == name) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.degree_in(i) > 0 {
                        return Err(Error::UnknownVariable(name.clone()));
                    }
                    map.push(None);
                }
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = Exp::zero();
                for (i, m) in map.iter().enumerate() {
                    if let Some(j) = m {
                        ne.0[*j] = e.0[i];
                    }
                }
                (ne, c.clone())
            })
            .collect();
        Ok(MPoly::from_terms(target, terms))
    }

    /// Least common multiple of denominators times gcd-free numerators: the
    /// positive rational `c` with `self / c` having coprime integer coefficients.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        Rat::new(num, den)
    }

    /// Primitive integer-coefficient associate with positive leading coefficient.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    pub fn monic(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Division with remainder by a single divisor in graded-lex order.
    pub fn divrem(&self, d: &MPoly) -> Result<(MPoly, MPoly)> {
        self.check_ring(d);
        let (lm, lc) = d.leading().ok_or(Error::DivisionByZero)?.clone();
        let mut q: Vec<(Exp, Rat)> = Vec::new();
        let mut r: Vec<(Exp, Rat)> = Vec::new();
        let mut p = self.clone();
        while let Some((e, c)) = p.terms.first().cloned() {
            if lm.divides(&e) {
                let m = lm.sub_from(&e);
                let coef = &c / &lc;
                p = &p - &d.mul_monomial(&m, &coef);
                q.push((m, coef));
            } else {
                r.push((e, c));
                p.terms.remove(0);
            }
        }
        Ok((MPoly::from_terms(&self.vars, q), MPoly::from_terms(&self.vars, r)))
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        self.check_ring(d);
        let (lm, lc) = d.leading()?.clone();
        let mut q: Vec<(Exp, Rat)> = Vec::new();
        let mut p = self.clone();
        while let Some((e, c)) = p.terms.first().cloned() {
            if !lm.divides(&e) {
                return None;
            }
            let m = lm.sub_from(&e);
            let coef = &c / &lc;
            p = &p - &d.mul_monomial(&m, &coef);
            q.push((m, coef));
        }
        Some(MPoly::from_terms(&self.vars, q))
    }

    /// Pseudo-remainder with respect to variable `i`.
    pub fn prem(&self, d: &MPoly, i: usize) -> MPoly {
        let dd = d.degree_in(i);
        assert!(dd >= 0);
        let lcd = d.coeff_in(i, dd as u16);
        let mut r = self.clone();
        loop {
            let dr = r.degree_in(i);
            if dr < dd || r.is_zero() {
                return r;
            }
            let lcr = r.coeff_in(i, dr as u16);
            let mut shift = Exp::zero();
            shift.0[i] = (dr - dd) as u16;
            r = &(&r * &lcd) - &(&lcr * &d.mul_monomial(&shift, &Rat::one()));
        }
    }

    /// Homogenizes a polynomial in `vars[..]` using a new variable inserted at
    /// `pos` of the target ring, to total degree `deg` (at least the degree).
    pub fn homogenize_into(&self, target: &Vars, pos: usize, deg: u32) -> MPoly {
        assert_eq!(target.len(), self.nvars() + 1);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = Exp::zero();
                let mut k = 0;
                for j in 0..target.len() {
                    if j == pos {
                        ne.0[j] = (deg - e.deg()) as u16;
                    } else {
                        ne.0[j] = e.0[k];
                        k += 1;
                    }
                }
                (ne, c.clone())
            })
            .collect();
        MPoly::from_terms(target, terms)
    }

    /// Sets variable `i` to the constant `v`, staying in the same ring.
    pub fn set_var(&self, i: usize, v: &Rat) -> MPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = *e;
                let k = ne.0[i];
                ne.0[i] = 0;
                (ne, c * num_traits::pow(v.clone(), k as usize))
            })
            .collect();
        MPoly::from_terms(&self.vars, terms)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> MPoly {
        MPoly::from_terms(
            &self.vars,
            self.terms.iter().map(|(e, c)| (*e, f(c))).collect(),
        )
    }

    /// Canonical textual form in the input grammar.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || *e == Exp::zero() {
                factors.push(fmt_rat(&a));
            }
            for (i, name) in self.vars.iter().enumerate() {
                match e.0[i] {
                    0 => {}
                    1 => factors.push(name.clone()),
                    k => factors.push(format!("{name}^{k}")),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self.to_text())
    }
}

impl PartialOrd for MPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order: by term list, leading terms first.
impl Ord for MPoly {
    fn cmp(&self, o: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(o.terms.iter()) {
            let c = a.0.cmp_grlex(&b.0).then_with(|| a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&o.terms.len())
    }
}

fn merge(a: &MPoly, b: &MPoly, negate_b: bool) -> MPoly {
    a.check_ring(b);
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        match a.terms[i].0.cmp_grlex(&b.terms[j].0) {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (e, c) = &b.terms[j];
                out.push((*e, if negate_b { -c } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a.terms[i].1 - &b.terms[j].1
                } else {
                    &a.terms[i].1 + &b.terms[j].1
                };
                if !c.is_zero() {
                    out.push((a.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    for (e, c) in &b.terms[j..] {
        out.push((*e, if negate_b { -c } else { c.clone() }));
    }
    MPoly { vars: a.vars.clone(), terms: out }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        merge(self, o, false)
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        merge(self, o, true)
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        self.check_ring(o);
        if self.is_zero() || o.is_zero() {
            return MPoly::zero(&self.vars);
        }
        if o.terms.len() == 1 {
            return self.mul_monomial(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: std::collections::HashMap<Exp, Rat> =
            std::collections::HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.add(e2);
                let p = c1 * c2;
                match acc.get_mut(&e) {
                    Some(v) => *v += p,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        let mut terms: Vec<(Exp, Rat)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp_grlex(&a.0));
        MPoly { vars: self.vars.clone(), terms }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, o: MPoly) -> MPoly {
        &self + &o
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, o: MPoly) -> MPoly {
        &self - &o
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, o: MPoly) -> MPoly {
        &self * &o
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    fn ring() -> Vars {
        vars(&["x", "y"])
    }

    #[test]
    fn arithmetic_and_order() {
        let r = ring();
        let x = MPoly::var(&r, 0);
        let y = MPoly::var(&r, 1);
        let f = &(&x * &x) - &(&y * &y);
        assert_eq!(f.to_text(), "x^2 - y^2");
        let g = &(&x - &y) * &(&x + &y);
        assert_eq!(f, g);
        assert_eq!(f.total_degree(), 2);
        assert_eq!(f.div_exact(&(&x - &y)).unwrap(), &x + &y);
        assert!(f.div_exact(&(&x - &MPoly::one(&r))).is_none());
    }

    #[test]
    fn divrem_reconstructs() {
        let r = ring();
        let x = MPoly::var(&r, 0);
        let y = MPoly::var(&r, 1);
        let f = &(&x.pow(3) + &(&y * &x)) + &MPoly::from_int(&r, 5);
        let d = &x + &y;
        let (q, rem) = f.divrem(&d).unwrap();
        assert_eq!(&(&q * &d) + &rem, f);
    }

    #[test]
    fn substitution_and_eval() {
        let r = ring();
        let x = MPoly::var(&r, 0);
        let y = MPoly::var(&r, 1);
        let f = &(&x * &x) + &(&y * &y);
        assert_eq!(f.eval(&[rat_int(1), rat_int(2)]), rat_int(5));
        assert_eq!(f.eval_mod(&[1, 2], 5), Some(0));
        let g = f.substitute(&[&x + &y, x.clone()]);
        assert_eq!(g.to_text(), "2*x^2 + 2*x*y + y^2");
    }
}
