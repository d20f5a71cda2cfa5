//! Buchberger's algorithm over Q with fraction-free integer arithmetic.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mpoly::{Exp, MPoly, Vars};
use crate::arith::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Exp, b: &Exp) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.cmp_grevlex(b),
            MonomialOrder::Lex => a.cmp_lex(b),
        }
    }
}

/// Integer polynomial with terms sorted decreasingly in a fixed order.
#[derive(Clone, Debug)]
struct IPoly {
    terms: Vec<(Exp, BigInt)>,
}

impl IPoly {
    fn from_mpoly(f: &MPoly, ord: MonomialOrder) -> IPoly {
        let p = f.primitive();
        let mut terms: Vec<(Exp, BigInt)> =
            p.terms().iter().map(|(e, c)| (*e, c.numer().clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        IPoly { terms }
    }

    fn to_mpoly(&self, vars: &Vars) -> MPoly {
        MPoly::from_terms(
            vars,
            self.terms.iter().map(|(e, c)| (*e, Rat::from_integer(c.clone()))).collect(),
        )
    }

    fn lm(&self) -> &Exp {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms.first().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        if !g.is_zero() && !g.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
    }
}

/// `ca * a - cb * x^m * b`, both sorted in `ord`.
fn lin_comb(a: &IPoly, ca: &BigInt, b: &IPoly, cb: &BigInt, m: &Exp, ord: MonomialOrder) -> IPoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let be = b.terms.get(j).map(|(e, _)| e.add(m));
        let c = match (a.terms.get(i), &be) {
            (Some((ae, _)), Some(be)) => ord.cmp(ae, be),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match c {
            Ordering::Greater => {
                out.push((a.terms[i].0, ca * &a.terms[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((be.unwrap(), -(cb * &b.terms[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = ca * &a.terms[i].1 - cb * &b.terms[j].1;
                if !v.is_zero() {
                    out.push((a.terms[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    IPoly { terms: out }
}

/// Full reduction of `f` modulo `basis`, result primitive.
fn reduce(f: &IPoly, basis: &[IPoly], ord: MonomialOrder) -> IPoly {
    let mut p = f.clone();
    let mut r: Vec<(Exp, BigInt)> = Vec::new();
    while !p.is_zero() {
        let (e, c) = p.terms[0].clone();
        if let Some(g) = basis.iter().find(|g| g.lm().divides(&e)) {
            let l = c.lcm(g.lc());
            let ca = &l / &c;
            let cb = &l / g.lc();
            let m = g.lm().sub_from(&e);
            // Scale the partial remainder to match.
            if !ca.is_one() {
                for (_, rc) in &mut r {
                    *rc = &*rc * &ca;
                }
            }
            p = lin_comb(&p, &ca, g, &cb, &m, ord);
            // Keep coefficients small.
            if !r.is_empty() {
                let mut gg = BigInt::zero();
                for (_, x) in r.iter().chain(p.terms.iter()) {
                    gg = gg.gcd(x);
                    if gg.is_one() {
                        break;
                    }
                }
                if !gg.is_one() && !gg.is_zero() {
                    for (_, x) in r.iter_mut().chain(p.terms.iter_mut()) {
                        *x = &*x / &gg;
                    }
                }
            } else {
                p.make_primitive();
            }
        } else {
            r.push((e, c));
            p.terms.remove(0);
        }
    }
    let mut out = IPoly { terms: r };
    out.make_primitive();
    out
}

fn spoly(f: &IPoly, g: &IPoly, ord: MonomialOrder) -> IPoly {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().sub_from(&l);
    let mg = g.lm().sub_from(&l);
    let c = f.lc().lcm(g.lc());
    let cf = &c / f.lc();
    let cg = &c / g.lc();
    let a = lin_comb(&IPoly { terms: vec![] }, &BigInt::one(), f, &(-cf), &mf, ord);
    lin_comb(&a, &BigInt::one(), g, &cg, &mg, ord)
}

/// Reduced Groebner basis, each element primitive with positive leading
/// coefficient, sorted by leading monomial.
pub fn groebner_basis(gens: &[MPoly], ord: MonomialOrder) -> Vec<MPoly> {
    let gens: Vec<&MPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = gens.first() else { return vec![] };
    let vars = first.vars().clone();
    let mut basis: Vec<IPoly> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let add = |h: IPoly, basis: &mut Vec<IPoly>, pairs: &mut Vec<(usize, usize)>| {
        let k = basis.len();
        basis.push(h);
        for i in 0..k {
            pairs.push((i, k));
        }
    };
    for g in gens {
        let h = reduce(&IPoly::from_mpoly(g, ord), &basis, ord);
        if !h.is_zero() {
            add(h, &mut basis, &mut pairs);
        }
    }
    while !pairs.is_empty() {
        // Normal selection strategy: smallest lcm degree first.
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = basis[a.0].lm().lcm(basis[a.1].lm());
                let lb = basis[b.0].lm().lcm(basis[b.1].lm());
                la.deg().cmp(&lb.deg()).then_with(|| ord.cmp(&la, &lb))
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi.lm().coprime(fj.lm()) {
            continue;
        }
        let l = fi.lm().lcm(fj.lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly(fi, fj, ord);
        let h = reduce(&s, &basis, ord);
        if !h.is_zero() {
            add(h, &mut basis, &mut pairs);
        }
    }
    // Minimalize, then interreduce.
    let mut minimal: Vec<IPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<IPoly> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let g = &minimal[i];
        // Only the tail can be reducible.
        let tail = IPoly { terms: g.terms[1..].to_vec() };
        let (scale, rem) = reduce_keep(&tail, &others, ord);
        let mut terms = vec![(g.terms[0].0, &g.terms[0].1 * &scale)];
        terms.extend(rem.terms);
        let mut p = IPoly { terms };
        p.make_primitive();
        reduced.push(p);
    }
    reduced.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    reduced.iter().map(|g| g.to_mpoly(&vars)).collect()
}

/// Reduction tracking the overall integer scale: returns `(s, r)` with
/// `s * f ≡ r` modulo the basis.
fn reduce_keep(f: &IPoly, basis: &[IPoly], ord: MonomialOrder) -> (BigInt, IPoly) {
    let mut scale = BigInt::one();
    let mut p = f.clone();
    let mut r: Vec<(Exp, BigInt)> = Vec::new();
    while !p.is_zero() {
        let (e, c) = p.terms[0].clone();
        if let Some(g) = basis.iter().find(|g| g.lm().divides(&e)) {
            let l = c.lcm(g.lc());
            let ca = &l / &c;
            let cb = &l / g.lc();
            let m = g.lm().sub_from(&e);
            for (_, rc) in &mut r {
                *rc = &*rc * &ca;
            }
            scale *= &ca;
            p = lin_comb(&p, &ca, g, &cb, &m, ord);
        } else {
            r.push((e, c));
            p.terms.remove(0);
        }
    }
    (scale, IPoly { terms: r })
}

/// Leading monomial of `f` in the given order.
pub fn leading_exp(f: &MPoly, ord: MonomialOrder) -> Option<Exp> {
    f.terms().iter().map(|(e, _)| *e).max_by(|a, b| ord.cmp(a, b))
}

/// Normal form of `f` modulo a Groebner basis, up to a nonzero rational factor.
pub fn normal_form(f: &MPoly, basis: &[MPoly], ord: MonomialOrder) -> MPoly {
    if f.is_zero() {
        return f.clone();
    }
    let b: Vec<IPoly> = basis.iter().map(|g| IPoly::from_mpoly(g, ord)).collect();
    reduce(&IPoly::from_mpoly(f, ord), &b, ord).to_mpoly(f.vars())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::mpoly::vars;
    use crate::poly::parse::parse_poly;

    #[test]
    fn circle_and_line() {
        let v = vars(&["x", "y"]);
        let f = parse_poly("x^2 + y^2 - 1", &v).unwrap();
        let g = parse_poly("x - y", &v).unwrap();
        let gb = groebner_basis(&[f, g], MonomialOrder::Lex);
        let txt: Vec<String> = gb.iter().map(|g| g.to_text()).collect();
        assert_eq!(txt, vec!["2*y^2 - 1".to_string(), "x - y".to_string()]);
    }

    #[test]
    fn ideal_membership() {
        let v = vars(&["x", "y", "z"]);
        let gens: Vec<MPoly> = ["x*y - z", "y*z - x", "x*z - y"]
            .iter()
            .map(|s| parse_poly(s, &v).unwrap())
            .collect();
        let gb = groebner_basis(&gens, MonomialOrder::Grevlex);
        for g in &gens {
            assert!(normal_form(g, &gb, MonomialOrder::Grevlex).is_zero());
        }
        let combo = &(&gens[0] * &gens[1]) + &(&parse_poly("x+3", &v).unwrap() * &gens[2]);
        assert!(normal_form(&combo, &gb, MonomialOrder::Grevlex).is_zero());
        assert!(!normal_form(&parse_poly("x", &v).unwrap(), &gb, MonomialOrder::Grevlex).is_zero());
    }
}
