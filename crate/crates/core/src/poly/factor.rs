//! Factorization over Q: univariate by Zassenhaus (modular factoring, Hensel
//! lifting, subset recombination), bivariate by lifting a univariate
//! factorization along a good evaluation line.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::gcd::{content_in, gcd};
use super::mpoly::{Exp, MPoly};
use super::upoly::QPoly;
use crate::arith::fp::{factor_squarefree, FpPoly};
use crate::arith::integer::primes_from;
use crate::arith::Rat;
use crate::error::{Error, Result};

type ZPoly = Vec<BigInt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rat,
    /// Primitive integer factors with positive leading coefficient, sorted.
    pub factors: Vec<(MPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self, like: &MPoly) -> MPoly {
        let mut r = MPoly::constant(like.vars(), self.unit.clone());
        for (f, m) in &self.factors {
            r = &r * &f.pow(*m);
        }
        r
    }

    pub fn irreducibles(&self) -> impl Iterator<Item = &MPoly> {
        self.factors.iter().map(|(f, _)| f)
    }
}

// ---------------------------------------------------------------------------
// integer polynomial helpers

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    ztrim(c)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Symmetric residues in (-m/2, m/2].
fn zsym(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_fp(a: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::new(p, a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_fp(a: &FpPoly) -> ZPoly {
    a.c.iter().map(|&c| BigInt::from(c)).collect()
}

fn zcontent(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn zprimitive(a: &[BigInt]) -> ZPoly {
    let mut g = zcontent(a);
    if a.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

/// Exact division in Z[x].
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    if a.len() < b.len() {
        return if a.is_empty() { Some(vec![]) } else { None };
    }
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + b.len() - 1].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= &c * y;
        }
        q[i] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(ztrim(q))
    } else {
        None
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

// ---------------------------------------------------------------------------
// Hensel lifting over Z

/// Lifts `f ≡ g0·h0 (mod p)` with `g0` monic to a factorization modulo `p^k`.
fn hensel_pair(f: &[BigInt], g0: &FpPoly, h0: &FpPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, s, t) = g0.ext_gcd(h0);
    debug_assert!(s.mul(g0).add(&t.mul(h0)).deg() == 0);
    let pb = BigInt::from(p);
    let mut g = from_fp(g0);
    let mut h = from_fp(h0);
    let mut m = pb.clone();
    for _ in 1..k {
        let diff = zsub(f, &zmul(&g, &h));
        let e: ZPoly = diff.iter().map(|c| c / &m).collect();
        let ep = to_fp(&e, p);
        let sigma = t.mul(&ep).rem(g0);
        let (tau, r) = ep.sub(&sigma.mul(h0)).divrem(g0);
        debug_assert!(r.is_zero());
        let ms: ZPoly = from_fp(&sigma).iter().map(|c| c * &m).collect();
        let mt: ZPoly = from_fp(&tau).iter().map(|c| c * &m).collect();
        g = zsub(&g, &ms.iter().map(|c| -c).collect::<Vec<_>>());
        h = zsub(&h, &mt.iter().map(|c| -c).collect::<Vec<_>>());
        m *= &pb;
        g = zmod(&g, &m);
        h = zmod(&h, &m);
    }
    (g, h)
}

/// Monic lifts modulo `p^k` of the modular factors `facs` of `f`.
fn hensel_multi(f: &[BigInt], facs: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let pk = BigInt::from(p).pow(k);
    if facs.len() == 1 {
        let inv = mod_inverse(f.last().unwrap(), &pk);
        return vec![zmod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &pk)];
    }
    let half = facs.len() / 2;
    let (a, b) = facs.split_at(half);
    let g0 = a.iter().fold(FpPoly::one(p), |acc, x| acc.mul(x));
    let lcp = to_fp(&[f.last().unwrap().clone()], p);
    let h0 = b.iter().fold(lcp, |acc, x| acc.mul(x));
    let (g, h) = hensel_pair(f, &g0, &h0, p, k);
    let mut out = hensel_multi(&g, a, p, k);
    out.extend(hensel_multi(&h, b, p, k));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a primitive squarefree integer polynomial of
/// positive degree.
fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in primes_from(3, 400) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        if fp.deg() != n as isize || !fp.is_squarefree() {
            continue;
        }
        let facs = factor_squarefree(&fp, &mut rng);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, facs) = best.expect("some prime keeps a squarefree polynomial squarefree");

    // Bound on coefficients of lc * (any factor): |lc| 2^n (n+1) max|f_i|.
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = BigInt::from(2u32) * lc.abs() * (BigInt::one() << n) * BigInt::from(n + 1) * maxc;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let mut lifted = hensel_multi(f, &facs, p, k);

    let mut out = Vec::new();
    let mut cur = f.to_vec();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        for subset in combinations(lifted.len(), s) {
            let lcc = cur.last().unwrap().clone();
            let mut cand = vec![lcc];
            for &i in &subset {
                cand = zmod(&zmul(&cand, &lifted[i]), &pk);
            }
            let cand = zprimitive(&zsym(&cand, &pk));
            if let Some(q) = zdiv_exact(&cur, &cand) {
                out.push(cand);
                cur = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        s += 1;
    }
    if cur.len() > 1 {
        out.push(zprimitive(&cur));
    }
    out
}

/// Factors a univariate polynomial over Q: `f = unit * prod g_i^{m_i}` with
/// each `g_i` primitive in Z[x] with positive leading coefficient.
pub fn factor_univariate(f: &QPoly) -> (Rat, Vec<(QPoly, u32)>) {
    if f.deg() <= 0 {
        return (f.lc(), vec![]);
    }
    let mut out = Vec::new();
    for (part, m) in f.squarefree_decomposition() {
        let (_, z) = part.primitive_z();
        for g in zassenhaus(&z) {
            out.push((QPoly::from_z(&g), m));
        }
    }
    out.sort_by(|a, b| (a.0.deg(), &a.0 .0).cmp(&(b.0.deg(), &b.0 .0)));
    let mut prod = QPoly::one();
    for (g, m) in &out {
        for _ in 0..*m {
            prod = prod.mul(g);
        }
    }
    (f.lc() / prod.lc(), out)
}

// ---------------------------------------------------------------------------
// bivariate

fn to_upoly(f: &MPoly, i: usize) -> QPoly {
    let d = f.degree_in(i).max(0) as usize;
    let mut c = vec![Rat::zero(); d + 1];
    for (e, a) in f.terms() {
        c[e.0[i] as usize] += a;
    }
    QPoly::new(c)
}

fn from_upoly(u: &QPoly, like: &MPoly, i: usize) -> MPoly {
    let terms = u
        .0
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let mut e = Exp::zero();
            e.0[i] = k as u16;
            (e, c.clone())
        })
        .collect();
    MPoly::from_terms(like.vars(), terms)
}

/// Polynomial in x with coefficients truncated power series in y: entry
/// `k` is the coefficient of `y^k`.
type Series = Vec<QPoly>;

fn series_mul(a: &Series, b: &Series, prec: usize) -> Series {
    let mut out = vec![QPoly::zero(); prec];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j >= prec {
                break;
            }
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

fn series_lift_pair(f: &Series, g0: &QPoly, h0: &QPoly, prec: usize) -> (Series, Series) {
    let (_, _s, t) = g0.ext_gcd(h0);
    let mut g = vec![QPoly::zero(); prec];
    let mut h = vec![QPoly::zero(); prec];
    g[0] = g0.clone();
    h[0] = h0.clone();
    for k in 1..prec {
        let mut e = f[k].clone();
        for i in 0..=k {
            e = e.sub(&g[i].mul(&h[k - i]));
        }
        if e.is_zero() {
            continue;
        }
        let sigma = t.mul(&e).rem(g0);
        let (tau, r) = e.sub(&sigma.mul(h0)).divrem(g0);
        debug_assert!(r.is_zero());
        g[k] = sigma;
        h[k] = tau;
    }
    (g, h)
}

fn series_lift(f: &Series, facs: &[QPoly], prec: usize) -> Vec<Series> {
    if facs.len() == 1 {
        return vec![f.clone()];
    }
    let (a, b) = facs.split_at(facs.len() / 2);
    let g0 = a.iter().fold(QPoly::one(), |acc, x| acc.mul(x));
    let h0 = b.iter().fold(QPoly::one(), |acc, x| acc.mul(x));
    let (g, h) = series_lift_pair(f, &g0, &h0, prec);
    let mut out = series_lift(&g, a, prec);
    out.extend(series_lift(&h, b, prec));
    out
}

fn to_series(f: &MPoly, ix: usize, iy: usize, prec: usize) -> Series {
    let dx = f.degree_in(ix).max(0) as usize;
    let mut c = vec![vec![Rat::zero(); dx + 1]; prec];
    for (e, a) in f.terms() {
        let k = e.0[iy] as usize;
        if k < prec {
            c[k][e.0[ix] as usize] += a;
        }
    }
    c.into_iter().map(QPoly::new).collect()
}

fn from_series(s: &Series, like: &MPoly, ix: usize, iy: usize) -> MPoly {
    let mut terms = Vec::new();
    for (k, q) in s.iter().enumerate() {
        for (j, c) in q.0.iter().enumerate() {
            if !c.is_zero() {
                let mut e = Exp::zero();
                e.0[ix] = j as u16;
                e.0[iy] = k as u16;
                terms.push((e, c.clone()));
            }
        }
    }
    MPoly::from_terms(like.vars(), terms)
}

fn shift_var(f: &MPoly, i: usize, by: &Rat) -> MPoly {
    let vars = f.vars();
    let images: Vec<MPoly> = (0..f.nvars())
        .map(|j| {
            let v = MPoly::var(vars, j);
            if j == i {
                &v + &MPoly::constant(vars, by.clone())
            } else {
                v
            }
        })
        .collect();
    f.substitute(&images)
}

/// Irreducible factors of a bivariate polynomial that is squarefree and
/// primitive with respect to both variables.
fn factor_bivariate_squarefree(f: &MPoly, ix: usize, iy: usize) -> Result<Vec<MPoly>> {
    let n = f.degree_in(ix);
    if n <= 1 {
        return Ok(vec![f.primitive()]);
    }
    let lcx = f.coeff_in(ix, n as u16);
    let lcu = to_upoly(&lcx, iy);

    // Good evaluation points: leading coefficient nonzero, specialization squarefree.
    let mut best: Option<(Rat, Vec<QPoly>)> = None;
    let mut good = 0;
    for k in 0..200i64 {
        let y0 = Rat::from_integer(BigInt::from(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }));
        if lcu.eval(&y0).is_zero() {
            continue;
        }
        let u = to_upoly(&f.set_var(iy, &y0), ix);
        if u.deg() != n as isize || !u.is_squarefree() {
            continue;
        }
        let (_, facs) = factor_univariate(&u);
        if facs.len() == 1 {
            return Ok(vec![f.primitive()]);
        }
        let facs: Vec<QPoly> = facs.into_iter().map(|(g, _)| g.monic()).collect();
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((y0, facs));
        }
        good += 1;
        if good >= 3 {
            break;
        }
    }
    let (y0, facs) = best.ok_or_else(|| Error::FactorizationFailed("no good evaluation point".into()))?;

    let g = shift_var(f, iy, &y0);
    let lc_g = g.coeff_in(ix, n as u16);
    let prec = (g.degree_in(iy) + lc_g.degree_in(iy) + 1) as usize;

    // Make g monic in x over Q[[y]].
    let l = to_upoly(&lc_g, iy);
    let mut linv = vec![Rat::zero(); prec];
    linv[0] = l.coeff(0).recip();
    for k in 1..prec {
        let mut s = Rat::zero();
        for i in 1..=k {
            s += l.coeff(i) * &linv[k - i];
        }
        linv[k] = -s * &linv[0];
    }
    let gs = to_series(&g, ix, iy, prec);
    let mut monic: Series = vec![QPoly::zero(); prec];
    for k in 0..prec {
        for i in 0..=k {
            if !linv[i].is_zero() {
                monic[k] = monic[k].add(&gs[k - i].scale(&linv[i]));
            }
        }
    }
    let mut lifted = series_lift(&monic, &facs, prec);

    let mut out = Vec::new();
    let mut cur = g.clone();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        for subset in combinations(lifted.len(), s) {
            let lcc = cur.coeff_in(ix, cur.degree_in(ix) as u16);
            let mut cand = to_series(&lcc, ix, iy, prec);
            for &i in &subset {
                cand = series_mul(&cand, &lifted[i], prec);
            }
            let cand = from_series(&cand, &g, ix, iy);
            let cont = content_in(&cand, ix);
            let Some(cand) = cand.div_exact(&cont) else { continue };
            if let Some(q) = cur.div_exact(&cand) {
                out.push(cand);
                cur = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        s += 1;
    }
    if !cur.is_constant() {
        out.push(cur);
    }
    Ok(out.iter().map(|h| shift_var(h, iy, &-&y0).primitive()).collect())
}

/// Squarefree decomposition with respect to the derivative in `x_i`, for `f`
/// primitive in `x_i`.
fn squarefree_in(f: &MPoly, i: usize) -> Vec<(MPoly, u32)> {
    let mut out = Vec::new();
    let df = f.derivative(i);
    let b = gcd(f, &df);
    let mut w = f.div_exact(&b).expect("gcd divides");
    let mut c = df.div_exact(&b).expect("gcd divides");
    let mut y = &c - &w.derivative(i);
    let mut m = 1;
    while !w.is_constant() {
        let z = gcd(&w, &y);
        if !z.is_constant() {
            out.push((z.clone(), m));
        }
        w = w.div_exact(&z).expect("gcd divides");
        c = y.div_exact(&z).expect("gcd divides");
        y = &c - &w.derivative(i);
        m += 1;
    }
    out
}

fn push_factor(acc: &mut Vec<(MPoly, u32)>, f: MPoly, m: u32) {
    let f = f.primitive();
    if f.is_constant() {
        return;
    }
    if let Some(slot) = acc.iter_mut().find(|(g, _)| *g == f) {
        slot.1 += m;
    } else {
        acc.push((f, m));
    }
}

fn factor_inner(f: &MPoly, acc: &mut Vec<(MPoly, u32)>, mult: u32) -> Result<()> {
    if f.is_constant() {
        return Ok(());
    }
    // Monomial factors first.
    let n = f.nvars();
    let mut shift = Exp::zero();
    for i in 0..n {
        shift.0[i] = f.terms().iter().map(|(e, _)| e.0[i]).min().unwrap_or(0);
    }
    let mut f = f.clone();
    if shift != Exp::zero() {
        for i in 0..n {
            if shift.0[i] > 0 {
                push_factor(acc, MPoly::var(f.vars(), i), mult * shift.0[i] as u32);
            }
        }
        let terms = f.terms().iter().map(|(e, c)| (shift.sub_from(e), c.clone())).collect();
        f = MPoly::from_terms(f.vars(), terms);
    }
    let sv = f.support_vars();
    match sv.len() {
        0 => Ok(()),
        1 => {
            let (_, facs) = factor_univariate(&to_upoly(&f, sv[0]));
            for (g, m) in facs {
                push_factor(acc, from_upoly(&g, &f, sv[0]), mult * m);
            }
            Ok(())
        }
        2 => {
            let (mut ix, mut iy) = (sv[0], sv[1]);
            if f.degree_in(iy) < f.degree_in(ix) {
                std::mem::swap(&mut ix, &mut iy);
            }
            let cx = content_in(&f, ix);
            let cy = content_in(&f, iy);
            if !cx.is_constant() || !cy.is_constant() {
                factor_inner(&cx, acc, mult)?;
                factor_inner(&cy, acc, mult)?;
                let rest = f.div_exact(&cx).and_then(|g| g.div_exact(&cy)).expect("content divides");
                return factor_inner(&rest, acc, mult);
            }
            for (part, m) in squarefree_in(&f, ix) {
                for g in factor_bivariate_squarefree(&part, ix, iy)? {
                    push_factor(acc, g, mult * m);
                }
            }
            Ok(())
        }
        k => Err(Error::UnsupportedArity(k)),
    }
}

/// Factors `f` into irreducibles over Q. At most two variables may remain
/// after removing monomial factors.
pub fn factor(f: &MPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut acc = Vec::new();
    factor_inner(f, &mut acc, 1)?;
    acc.sort_by(|a, b| a.0.total_degree().cmp(&b.0.total_degree()).then_with(|| a.0.cmp(&b.0)));
    let mut prod = MPoly::one(f.vars());
    for (g, m) in &acc {
        prod = &prod * &g.pow(*m);
    }
    Ok(Factorization { unit: f.lc() / prod.lc(), factors: acc })
}

/// Checks irreducibility by factoring.
pub fn is_irreducible(f: &MPoly) -> Result<bool> {
    let fz = factor(f)?;
    Ok(fz.factors.len() == 1 && fz.factors[0].1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::mpoly::vars;
    use crate::poly::parse::parse_poly;

    fn p(s: &str) -> MPoly {
        parse_poly(s, &vars(&["x", "y"])).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let f = factor(&p("x^2 - y^2")).unwrap();
        let got: Vec<_> = f.factors.iter().map(|(g, m)| (g.to_text(), *m)).collect();
        assert_eq!(got, vec![("x - y".to_string(), 1), ("x + y".to_string(), 1)]);
        assert_eq!(f.expand(&p("1")), p("x^2 - y^2"));
    }

    #[test]
    fn sum_of_squares_irreducible() {
        assert!(is_irreducible(&p("x^2 + y^2")).unwrap());
    }

    #[test]
    fn multiplicities() {
        let f = p("(x^2 + y + 1)^2*(x - 3)");
        let fz = factor(&f).unwrap();
        let mut got: Vec<_> = fz.factors.iter().map(|(g, m)| (g.to_text(), *m)).collect();
        got.sort();
        assert_eq!(got, vec![("x - 3".to_string(), 1), ("x^2 + y + 1".to_string(), 2)]);
        assert_eq!(fz.expand(&f), f);
    }

    #[test]
    fn univariate_swinnerton_dyer() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
        let (_, f) = factor_univariate(&QPoly::from_ints(&[1, 0, -10, 0, 1]));
        assert_eq!(f.len(), 1);
        let (u, f) = factor_univariate(&QPoly::from_ints(&[-6, 0, 2, 0, 0, 0, 3]));
        // 3x^6 + 2x^2 - 6: check product
        let mut prod = QPoly::one();
        for (g, m) in &f {
            for _ in 0..*m {
                prod = prod.mul(g);
            }
        }
        assert_eq!(prod.scale(&u), QPoly::from_ints(&[-6, 0, 2, 0, 0, 0, 3]));
    }

    #[test]
    fn nonmonic_bivariate() {
        let f = p("(3*x^2*y - 2*y + 5*x)*(2*x*y^2 + x - 7)*(y^3 - x)");
        let fz = factor(&f).unwrap();
        assert_eq!(fz.factors.len(), 3);
        assert_eq!(fz.expand(&f), f);
    }

    #[test]
    fn three_variables_rejected() {
        let v = vars(&["x", "y", "z"]);
        let f = parse_poly("x*y + z + 1", &v).unwrap();
        assert_eq!(factor(&f), Err(Error::UnsupportedArity(3)));
        // monomial factors do not count
        let g = parse_poly("z^2*(x^2 - y^2)", &v).unwrap();
        assert_eq!(factor(&g).unwrap().factors.len(), 3);
    }
}
