//! Tame residues at discrete valuations and the Faddeev reciprocity check.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::{
    rat_gens, square_class_normalize, FieldCtx, FieldElem, Generator, SquareClass, Symbol,
    SymbolSum,
};
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::poly::upoly::{resultant, QPoly};
use crate::poly::{MPoly, RatFunc, Vars};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    FinitePrime(BigUint),
    RealPlace,
    /// Valuation along an irreducible polynomial of the function field's ring.
    CurveValuation(MPoly),
    /// Minus the total degree: the line at infinity of the affine chart.
    LineAtInfinity,
}

impl Place {
    pub fn prime(p: u64) -> Place {
        Place::FinitePrime(BigUint::from(p))
    }

    /// Curve place, normalized to a primitive polynomial; rejects reducible input.
    pub fn curve(pi: &MPoly) -> Result<Place> {
        let fz = crate::poly::factor(pi)?;
        if fz.factors.len() != 1 || fz.factors[0].1 != 1 {
            return Err(Error::NotAValuation(format!("{pi} is not irreducible")));
        }
        Ok(Place::CurveValuation(fz.factors[0].0.clone()))
    }

    pub fn to_json(&self) -> Value {
        match self {
            Place::FinitePrime(p) => json!({"prime": p.to_string()}),
            Place::RealPlace => json!({"real": true}),
            Place::CurveValuation(f) => json!({"curve": f.to_text()}),
            Place::LineAtInfinity => json!({"line_at_infinity": true}),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::FinitePrime(p) => write!(f, "p={p}"),
            Place::RealPlace => f.write_str("real"),
            Place::CurveValuation(g) => write!(f, "{{{g} = 0}}"),
            Place::LineAtInfinity => f.write_str("L"),
        }
    }
}

/// How generators of a function field reduce at a place.
enum Reduction {
    Prime(u64),
    /// Substitute `x_i = image`, then move to `target`.
    Solve { i: usize, image: MPoly, target: Vars },
    /// Reduce lifts modulo the curve equation.
    Curve,
    /// Leading form with the last variable set to one.
    Infinity { target: Vars },
}

fn drop_var(vars: &Vars, i: usize) -> Vars {
    vars.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect()
}

fn ctx_for(vars: Vars) -> FieldCtx {
    if vars.is_empty() {
        FieldCtx::Rationals
    } else {
        FieldCtx::FunctionField(vars)
    }
}

fn plan(ctx: &FieldCtx, v: &Place) -> Result<(FieldCtx, Reduction)> {
    match (ctx, v) {
        (FieldCtx::Rationals, Place::FinitePrime(p)) => {
            let p = p.to_u64().ok_or_else(|| Error::ResidueFieldUnsupported(format!("F_{p}")))?;
            Ok((FieldCtx::prime_field(p)?, Reduction::Prime(p)))
        }
        (FieldCtx::FunctionField(vars), Place::CurveValuation(pi)) => {
            if pi.vars() != vars {
                return Err(Error::RingMismatch(vars.to_vec(), pi.vars().to_vec()));
            }
            if pi.is_constant() {
                return Err(Error::NotAValuation("constant polynomial".into()));
            }
            for i in pi.support_vars() {
                if pi.degree_in(i) == 1 {
                    let c = pi.coeff_in(i, 1);
                    if let Some(c) = c.constant_value() {
                        let h = pi.coeff_in(i, 0);
                        let image = h.scale(&(-c.recip()));
                        let target = drop_var(vars, i);
                        return Ok((ctx_for(target.clone()), Reduction::Solve { i, image, target }));
                    }
                }
            }
            Ok((FieldCtx::Curve { vars: vars.clone(), equation: pi.clone() }, Reduction::Curve))
        }
        (FieldCtx::FunctionField(vars), Place::LineAtInfinity) => {
            let target = drop_var(vars, vars.len() - 1);
            Ok((ctx_for(target.clone()), Reduction::Infinity { target }))
        }
        (FieldCtx::QuadExt(..), _) | (FieldCtx::Curve { .. }, _) => {
            Err(Error::ResidueFieldUnsupported(format!("{ctx:?}")))
        }
        _ => Err(Error::NotAValuation(format!("{v} on {ctx:?}"))),
    }
}

/// Residue field context of `ctx` at `v`.
pub fn residue_ctx(ctx: &FieldCtx, v: &Place) -> Result<FieldCtx> {
    Ok(plan(ctx, v)?.0)
}

/// Valuation parity and residue class of the unit part of a generator.
fn reduce_gen(g: &Generator, v: &Place, rctx: &FieldCtx, red: &Reduction) -> Result<(bool, SquareClass)> {
    let constant = |r: Rat| square_class_normalize(rctx, &FieldElem::Rat(r));
    match g {
        Generator::MinusOne => Ok((false, constant(Rat::from_integer(BigInt::from(-1)))?)),
        Generator::NonSquare => Err(Error::NotAValuation("finite field generator".into())),
        Generator::Prime(q) => {
            if let Reduction::Prime(p) = red {
                if q == &BigUint::from(*p) {
                    return Ok((true, SquareClass::one(rctx.clone())));
                }
            }
            Ok((false, constant(Rat::from_integer(BigInt::from(q.clone())))?))
        }
        Generator::Poly(f) => match (v, red) {
            (Place::CurveValuation(pi), _) if f == pi => Ok((true, SquareClass::one(rctx.clone()))),
            (_, Reduction::Solve { i, image, target }) => {
                let mut images: Vec<MPoly> = (0..f.nvars()).map(|j| MPoly::var(f.vars(), j)).collect();
                images[*i] = image.clone();
                let u = f.substitute(&images).to_ring(target)?;
                Ok((false, unit_class(rctx, u)?))
            }
            (_, Reduction::Curve) => {
                Ok((false, square_class_normalize(rctx, &FieldElem::Func(RatFunc::from_poly(f.clone())))?))
            }
            (_, Reduction::Infinity { target }) => {
                let d = f.total_degree();
                let top = f.homogeneous_part(d as u32);
                let last = f.nvars() - 1;
                let u = top.set_var(last, &Rat::one()).to_ring(target)?;
                Ok((d % 2 == 1, unit_class(rctx, u)?))
            }
            _ => Err(Error::NotAValuation(format!("{v}"))),
        },
    }
}

fn unit_class(rctx: &FieldCtx, u: MPoly) -> Result<SquareClass> {
    if u.is_zero() {
        return Err(Error::NotAValuation("unit reduces to zero".into()));
    }
    match u.constant_value() {
        Some(c) => square_class_normalize(rctx, &FieldElem::Rat(c)),
        None => square_class_normalize(rctx, &FieldElem::Func(RatFunc::from_poly(u))),
    }
}

/// Residue of a normalized sum at a discrete valuation, a sum of one lower
/// degree over the residue field.
pub fn tame_residue(s: &SymbolSum, v: &Place) -> Result<SymbolSum> {
    let (rctx, red) = plan(s.ctx(), v)?;
    let minus_one = square_class_normalize(&rctx, &FieldElem::Rat(Rat::from_integer(BigInt::from(-1))))?;
    let n = s.degree();
    if n == 0 {
        return Err(Error::WrongDegree { expected: 1, got: 0 });
    }
    let mut symbols = Vec::new();
    for atom in s.atoms() {
        let parts: Vec<(bool, SquareClass)> =
            atom.iter().map(|g| reduce_gen(g, v, &rctx, &red)).collect::<Result<_>>()?;
        let odd: Vec<usize> = (0..n).filter(|&i| parts[i].0).collect();
        // Multilinear expansion over the uniformizer positions.
        for mask in 1u32..(1 << odd.len()) {
            let chosen: Vec<usize> =
                odd.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect();
            let mut entries: Vec<SquareClass> =
                (0..n).filter(|i| !chosen.contains(i)).map(|i| parts[i].1.clone()).collect();
            for _ in 1..chosen.len() {
                entries.push(minus_one.clone());
            }
            symbols.push(Symbol { entries });
        }
    }
    let mut out = SymbolSum::zero(rctx.clone(), n - 1);
    if !symbols.is_empty() {
        out = out.add(&SymbolSum::from_symbols(&rctx, &symbols)?)?;
    }
    Ok(out)
}

/// Norm to Q*/Q*^2 of a degree-one residue class.
fn norm_class(r: &SymbolSum) -> Result<BTreeSet<Generator>> {
    let mut acc = BTreeSet::new();
    let mut toggle_all = |gs: BTreeSet<Generator>| {
        for g in gs {
            if !acc.remove(&g) {
                acc.insert(g);
            }
        }
    };
    match r.ctx() {
        FieldCtx::Rationals => {
            for a in r.atoms() {
                toggle_all([a[0].clone()].into());
            }
        }
        FieldCtx::Curve { equation, .. } => {
            let t = equation.support_vars();
            if t.len() != 1 {
                return Err(Error::ResidueFieldUnsupported(equation.to_text()));
            }
            let pi = univariate(equation, t[0]).monic();
            let deg = pi.deg();
            for a in r.atoms() {
                match &a[0] {
                    Generator::Poly(u) => {
                        let n = resultant(&pi, &univariate(u, t[0]));
                        toggle_all(rat_gens(&n)?);
                    }
                    g => {
                        if deg % 2 == 1 {
                            toggle_all([g.clone()].into());
                        }
                    }
                }
            }
        }
        c => return Err(Error::ResidueFieldUnsupported(format!("{c:?}"))),
    }
    Ok(acc)
}

fn univariate(f: &MPoly, i: usize) -> QPoly {
    let d = f.degree_in(i).max(0) as usize;
    let mut c = vec![Rat::zero(); d + 1];
    for (e, a) in f.terms() {
        c[e.0[i] as usize] += a;
    }
    QPoly::new(c)
}

/// Checks that the norms of all residues of a degree-2 class over Q(t)
/// multiply to a square.
pub fn faddeev_reciprocity_check(s: &SymbolSum) -> Result<bool> {
    let FieldCtx::FunctionField(vars) = s.ctx() else {
        return Err(Error::WrongContext(format!("{:?}", s.ctx())));
    };
    if vars.len() != 1 {
        return Err(Error::WrongContext("reciprocity needs one variable".into()));
    }
    if s.degree() != 2 && !s.is_zero() {
        return Err(Error::WrongDegree { expected: 2, got: s.degree() });
    }
    let mut places: BTreeSet<Place> = BTreeSet::new();
    for a in s.atoms() {
        for g in a {
            if let Generator::Poly(f) = g {
                places.insert(Place::CurveValuation(f.clone()));
            }
        }
    }
    places.insert(Place::LineAtInfinity);
    let mut total: BTreeSet<Generator> = BTreeSet::new();
    for v in &places {
        let r = tame_residue(s, v)?;
        for g in norm_class(&r)? {
            if !total.remove(&g) {
                total.insert(g);
            }
        }
    }
    Ok(total.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, vars};

    fn qt() -> (Vars, FieldCtx) {
        let v = vars(&["t"]);
        (v.clone(), FieldCtx::FunctionField(v))
    }

    fn cls(ctx: &FieldCtx, v: &Vars, s: &str) -> SquareClass {
        SquareClass::of(ctx, parse_poly(s, v).unwrap()).unwrap()
    }

    #[test]
    fn residue_examples() {
        let (v, k) = qt();
        let t = Place::curve(&parse_poly("t", &v).unwrap()).unwrap();
        let sym = |a: &str, b: &str| {
            SymbolSum::from_symbols(&k, &[Symbol::new(vec![cls(&k, &v, a), cls(&k, &v, b)]).unwrap()]).unwrap()
        };
        let r = tame_residue(&sym("t", "5"), &t).unwrap();
        assert_eq!(r.as_square_class().unwrap(), SquareClass::int(5));
        let r = tame_residue(&sym("t", "t"), &t).unwrap();
        assert_eq!(r.as_square_class().unwrap(), SquareClass::int(-1));
        let r = tame_residue(&sym("t + 1", "t^2 + 3"), &t).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn reciprocity_examples() {
        let (v, k) = qt();
        let s = SymbolSum::from_symbols(
            &k,
            &[Symbol::new(vec![cls(&k, &v, "t"), cls(&k, &v, "t - 1")]).unwrap()],
        )
        .unwrap();
        let inf = tame_residue(&s, &Place::LineAtInfinity).unwrap();
        assert_eq!(inf.as_square_class().unwrap(), SquareClass::int(-1));
        assert!(faddeev_reciprocity_check(&s).unwrap());
        let s = SymbolSum::from_symbols(
            &k,
            &[Symbol::new(vec![cls(&k, &v, "t^2 + 1"), cls(&k, &v, "3*t^3 - t + 7")]).unwrap()],
        )
        .unwrap();
        assert!(faddeev_reciprocity_check(&s).unwrap());
    }

    #[test]
    fn prime_residue() {
        let s = SymbolSum::from_symbols(&FieldCtx::Rationals, &[Symbol::ints(&[3, 2])]).unwrap();
        let r = tame_residue(&s, &Place::prime(3)).unwrap();
        // 2 is a nonresidue mod 3
        assert_eq!(r.as_square_class().unwrap().gens().len(), 1);
        assert!(matches!(tame_residue(&s, &Place::RealPlace), Err(Error::NotAValuation(_))));
    }
}
