//! Dense univariate polynomials over Q, low degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly(pub Vec<Rat>);

impl QPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        QPoly::new(c.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
    }

    pub fn zero() -> Self {
        QPoly(vec![])
    }

    pub fn one() -> Self {
        QPoly(vec![Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lc(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        QPoly::new(self.0.iter().map(|a| a * s).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        if self.deg() < d.deg() {
            return (QPoly::zero(), self.clone());
        }
        let mut r = self.0.clone();
        let dd = d.0.len();
        let inv = d.lc().recip();
        let mut q = vec![Rat::zero(); r.len() - dd + 1];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd - 1] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.0.iter().enumerate() {
                r[i + j] -= &c * b;
            }
            q[i] = c;
        }
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s*self + t*o = g, g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s2 = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s2;
            let t2 = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t2;
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        QPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut r = Rat::zero();
        for a in self.0.iter().rev() {
            r = r * x + a;
        }
        r
    }

    pub fn is_squarefree(&self) -> bool {
        self.deg() <= 0 || self.gcd(&self.derivative()).deg() == 0
    }

    /// Primitive integer associate with positive leading coefficient, and
    /// the rational factor `c` with `self = c * result`.
    pub fn primitive_z(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), vec![]);
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for a in &self.0 {
            num = num.gcd(a.numer());
            den = den.lcm(a.denom());
        }
        let mut c = Rat::new(num, den);
        if self.lc().is_negative() {
            c = -c;
        }
        let z = self
            .0
            .iter()
            .map(|a| {
                let q = a / &c;
                debug_assert!(q.is_integer());
                q.to_integer()
            })
            .collect();
        (c, z)
    }

    pub fn from_z(z: &[BigInt]) -> Self {
        QPoly::new(z.iter().map(|a| Rat::from_integer(a.clone())).collect())
    }

    /// Squarefree decomposition (Yun): monic factors with multiplicities.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, u32)> {
        let mut out = Vec::new();
        if self.deg() <= 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let b = f.gcd(&df);
        let mut w = f.divrem(&b).0;
        let mut c = df.divrem(&b).0;
        let mut y = c.sub(&w.derivative());
        let mut i = 1;
        while w.deg() > 0 {
            let z = w.gcd(&y);
            if z.deg() > 0 {
                out.push((z.clone(), i));
            }
            w = w.divrem(&z).0;
            c = y.divrem(&z).0;
            y = c.sub(&w.derivative());
            i += 1;
        }
        out
    }
}

/// Resultant of two polynomials over Q via the Euclidean algorithm.
pub fn resultant(f: &QPoly, g: &QPoly) -> Rat {
    if f.is_zero() || g.is_zero() {
        return Rat::zero();
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut res = Rat::one();
    loop {
        let da = a.deg();
        let db = b.deg();
        if db == 0 {
            return res * num_traits::pow(b.lc(), da as usize);
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Rat::zero();
        }
        let dr = r.deg();
        if da % 2 == 1 && db % 2 == 1 {
            res = -res;
        }
        res *= num_traits::pow(b.lc(), (da - dr) as usize);
        a = b;
        b = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_and_resultant() {
        // (x-1)^2 (x+2)
        let f = QPoly::from_ints(&[1, -2, 1]).mul(&QPoly::from_ints(&[2, 1]));
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(QPoly::from_ints(&[2, 1]), 1), (QPoly::from_ints(&[-1, 1]), 2)]);
        // Res(x^2+1, x-2) = 5
        let r = resultant(&QPoly::from_ints(&[1, 0, 1]), &QPoly::from_ints(&[-2, 1]));
        assert_eq!(r, Rat::from_integer(BigInt::from(5)));
    }
}
