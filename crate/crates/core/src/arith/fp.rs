//! Dense univariate polynomials over a prime field F_p (p odd, < 2^32).

use rand::Rng;

use super::integer::{inv_mod, mul_mod, pow_mod};

/// Coefficients low degree first, no trailing zeros. The zero polynomial is
/// the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly { p, c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, -1 for zero.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut r = 0;
        for &a in self.c.iter().rev() {
            r = (mul_mod(r, x, self.p) + a) % self.p;
        }
        r
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + p - o.c.get(i).unwrap_or(&0)) % p)
            .collect();
        FpPoly::new(p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        FpPoly::new(p, c)
    }

    pub fn scale(&self, s: u64) -> Self {
        FpPoly::new(self.p, self.c.iter().map(|&a| mul_mod(a, s, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.c.len();
        if r.len() < dd {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = inv_mod(d.lc(), p);
        let mut q = vec![0u64; r.len() - dd + 1];
        for i in (0..q.len()).rev() {
            let coef = mul_mod(r[i + dd - 1], inv, p);
            q[i] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                r[i + j] = (r[i + j] + p - mul_mod(coef, b, p)) % p;
            }
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
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

    /// Returns (g, s, t) with s*self + t*o = g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
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
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod(a, i as u64 % p, p))
            .collect();
        FpPoly::new(p, c)
    }

    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = FpPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    pub fn is_squarefree(&self) -> bool {
        self.deg() <= 0 || self.gcd(&self.derivative()).deg() == 0
    }

    /// All roots in F_p, by brute force for small p and by splitting otherwise.
    pub fn roots(&self) -> Vec<u64> {
        if self.is_zero() {
            return vec![];
        }
        if self.p <= 4096 {
            return (0..self.p).filter(|&x| self.eval(x) == 0).collect();
        }
        let xp = FpPoly::x(self.p).powmod(self.p as u128, self);
        let lin = self.gcd(&xp.sub(&FpPoly::x(self.p)));
        let mut rng = rand::thread_rng();
        let mut out: Vec<u64> = equal_degree_split(&lin, 1, &mut rng)
            .into_iter()
            .map(|f| (self.p - f.c[0]) % self.p)
            .collect();
        out.sort_unstable();
        out
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.clone();
    let mut d = 1;
    while rest.deg() >= 2 * d as isize {
        h = h.powmod(p as u128, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.deg() > 0 {
            out.push((g.clone(), d));
            rest = rest.divrem(&g).0.monic();
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let deg = rest.deg() as usize;
        out.push((rest, deg));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct degree-d factors.
fn equal_degree_split<R: Rng>(f: &FpPoly, d: usize, rng: &mut R) -> Vec<FpPoly> {
    if f.deg() as usize == d {
        return vec![f.monic()];
    }
    if f.deg() <= 0 {
        return vec![];
    }
    let p = f.p;
    let e = ((p as u128).pow(d as u32) - 1) / 2;
    loop {
        let n = f.deg() as usize;
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() <= 0 {
            continue;
        }
        let g = a.powmod(e, f).sub(&FpPoly::one(p));
        let g = f.gcd(&g);
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = f.divrem(&g).0.monic();
            let mut out = equal_degree_split(&g, d, rng);
            out.extend(equal_degree_split(&h, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial, sorted.
pub fn factor_squarefree<R: Rng>(f: &FpPoly, rng: &mut R) -> Vec<FpPoly> {
    let f = f.monic();
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&f) {
        out.extend(equal_degree_split(&g, d, rng));
    }
    out.sort_by(|a, b| (a.deg(), &a.c).cmp(&(b.deg(), &b.c)));
    out
}

/// Square test in F_p^* by Euler's criterion; zero counts as not a unit.
pub fn is_square_unit(a: u64, p: u64) -> bool {
    !a.is_multiple_of(p) && pow_mod(a, (p - 1) / 2, p) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_and_multiplies_back() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let p = 101;
        // (x^2+1)(x^3+x+1)(x-5)
        let a = FpPoly::new(p, vec![1, 0, 1]);
        let b = FpPoly::new(p, vec![1, 1, 0, 1]);
        let c = FpPoly::new(p, vec![p - 5, 1]);
        let f = a.mul(&b).mul(&c);
        let fs = factor_squarefree(&f, &mut rng);
        let prod = fs.iter().fold(FpPoly::one(p), |acc, g| acc.mul(g));
        assert_eq!(prod, f.monic());
        for g in &fs {
            assert!(g.deg() >= 1);
        }
        assert!(fs.len() >= 3);
    }

    #[test]
    fn roots_small_and_large_prime() {
        let f = FpPoly::new(7, vec![6, 0, 1]); // x^2 - 1
        assert_eq!(f.roots(), vec![1, 6]);
        let p = 1_000_003;
        let f = FpPoly::new(p, vec![p - 6, 1]).mul(&FpPoly::new(p, vec![p - 11, 1]));
        assert_eq!(f.roots(), vec![6, 11]);
    }
}
