//! Mod-2 Galois cohomology symbols.
//!
//! A square class is stored as a set of generators: `-1`, rational primes and
//! irreducible polynomials appearing to an odd power. A symbol sum is stored
//! in its formal normal form: every symbol is expanded multilinearly into
//! atoms of generators, `(g, g)` is rewritten to `(-1, g)`, and the atoms are
//! added mod 2.

mod hilbert;
mod residue;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::integer::{legendre_u64, odd_power_primes};
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::poly::{factor, MPoly, RatFunc, Vars};

pub use hilbert::{hilbert_symbol, is_local_square, is_trivial_h2_q, is_trivial_h3_q, local_h2, splits_over_quadratic};
pub use residue::{faddeev_reciprocity_check, residue_ctx, tame_residue, Place};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldCtx {
    Rationals,
    Reals,
    PrimeField(u64),
    /// Rational functions over Q in the given variables.
    FunctionField(Vars),
    /// Function field of the plane curve `equation = 0`. Square classes are
    /// carried by polynomial lifts and are not canonical.
    Curve { vars: Vars, equation: MPoly },
    /// Quadratic extension by the square root of a base class.
    QuadExt(Box<FieldCtx>, Box<SquareClass>),
}

impl FieldCtx {
    pub fn prime_field(p: u64) -> Result<FieldCtx> {
        if p == 2 || !crate::arith::integer::is_prime_u64(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(FieldCtx::PrimeField(p))
    }

    pub fn quad_ext(base: FieldCtx, d: SquareClass) -> Result<FieldCtx> {
        if d.is_trivial() {
            return Err(Error::WrongContext("quadratic extension by a square".into()));
        }
        Ok(FieldCtx::QuadExt(Box::new(base), Box::new(d)))
    }

    fn base(&self) -> &FieldCtx {
        match self {
            FieldCtx::QuadExt(b, _) => b.base(),
            c => c,
        }
    }

    /// Whether square-class equality is decided exactly in this context.
    pub fn canonical_classes(&self) -> bool {
        !matches!(self.base(), FieldCtx::Curve { .. })
    }
}

/// Generator of a square-class group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    MinusOne,
    /// The nontrivial class of a finite field.
    NonSquare,
    Prime(BigUint),
    Poly(MPoly),
}

impl Generator {
    pub fn to_json(&self) -> Value {
        match self {
            Generator::MinusOne => json!(-1),
            Generator::NonSquare => json!("nonsquare"),
            Generator::Prime(p) => match p.to_u64() {
                Some(v) => json!(v),
                None => json!(p.to_string()),
            },
            Generator::Poly(f) => json!(f.to_text()),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::MinusOne => f.write_str("-1"),
            Generator::NonSquare => f.write_str("nonsquare"),
            Generator::Prime(p) => write!(f, "{p}"),
            Generator::Poly(g) => write!(f, "{g}"),
        }
    }
}

/// Field element accepted by [`square_class_normalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElem {
    Rat(Rat),
    Fp(u64),
    Func(RatFunc),
}

impl From<Rat> for FieldElem {
    fn from(r: Rat) -> Self {
        FieldElem::Rat(r)
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::Rat(Rat::from_integer(BigInt::from(n)))
    }
}

impl From<MPoly> for FieldElem {
    fn from(p: MPoly) -> Self {
        FieldElem::Func(RatFunc::from_poly(p))
    }
}

impl From<RatFunc> for FieldElem {
    fn from(f: RatFunc) -> Self {
        FieldElem::Func(f)
    }
}

/// Element of F*/F*^2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareClass {
    ctx: FieldCtx,
    gens: BTreeSet<Generator>,
}

pub(crate) fn rat_gens(r: &Rat) -> Result<BTreeSet<Generator>> {
    if r.is_zero() {
        return Err(Error::ZeroElement);
    }
    let n = r.numer() * r.denom();
    let mut gens: BTreeSet<Generator> =
        odd_power_primes(&n)?.into_iter().map(Generator::Prime).collect();
    if n.is_negative() {
        gens.insert(Generator::MinusOne);
    }
    Ok(gens)
}

fn fp_gens(a: u64, p: u64) -> Result<BTreeSet<Generator>> {
    match legendre_u64(a, p) {
        0 => Err(Error::ZeroElement),
        1 => Ok(BTreeSet::new()),
        _ => Ok([Generator::NonSquare].into()),
    }
}

fn toggle(set: &mut BTreeSet<Generator>, g: Generator) {
    if !set.remove(&g) {
        set.insert(g);
    }
}

fn poly_gens(f: &MPoly, out: &mut BTreeSet<Generator>) -> Result<Rat> {
    let fz = factor(f)?;
    for (g, m) in fz.factors {
        if m % 2 == 1 {
            toggle(out, Generator::Poly(g));
        }
    }
    Ok(fz.unit)
}

fn func_gens(num: &MPoly, den: &MPoly) -> Result<BTreeSet<Generator>> {
    if num.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut gens = BTreeSet::new();
    let u = poly_gens(num, &mut gens)? / poly_gens(den, &mut gens)?;
    for g in rat_gens(&u)? {
        toggle(&mut gens, g);
    }
    Ok(gens)
}

/// Canonical square class of a nonzero element.
pub fn square_class_normalize(ctx: &FieldCtx, e: &FieldElem) -> Result<SquareClass> {
    let gens = match (ctx, e) {
        (FieldCtx::Rationals, FieldElem::Rat(r)) => rat_gens(r)?,
        (FieldCtx::Reals, FieldElem::Rat(r)) => {
            if r.is_zero() {
                return Err(Error::ZeroElement);
            }
            if r.is_negative() {
                [Generator::MinusOne].into()
            } else {
                BTreeSet::new()
            }
        }
        (FieldCtx::PrimeField(p), FieldElem::Fp(a)) => fp_gens(*a, *p)?,
        (FieldCtx::PrimeField(p), FieldElem::Rat(r)) => {
            let a = crate::arith::integer::rat_mod_p(r, *p).ok_or(Error::PoleAtPoint)?;
            fp_gens(a, *p)?
        }
        (FieldCtx::FunctionField(_), FieldElem::Rat(r)) => rat_gens(r)?,
        (FieldCtx::FunctionField(vars), FieldElem::Func(f)) => {
            let num = f.num().to_ring(vars)?;
            let den = f.den().to_ring(vars)?;
            func_gens(&num, &den)?
        }
        (FieldCtx::Curve { .. }, FieldElem::Rat(r)) => rat_gens(r)?,
        (FieldCtx::Curve { vars, equation }, FieldElem::Func(f)) => {
            let num = f.num().to_ring(vars)?.divrem(equation)?.1;
            let den = f.den().to_ring(vars)?.divrem(equation)?.1;
            if den.is_zero() {
                return Err(Error::PoleAtPoint);
            }
            func_gens(&num, &den)?
        }
        (FieldCtx::QuadExt(base, _), e) => {
            return Ok(SquareClass::from_gens(ctx.clone(), square_class_normalize(base, e)?.gens));
        }
        _ => return Err(Error::WrongContext(format!("{e:?} in {ctx:?}"))),
    };
    Ok(SquareClass::from_gens(ctx.clone(), gens))
}

impl SquareClass {
    /// Class with the given generator set, reduced in its context.
    pub fn from_gens(ctx: FieldCtx, gens: BTreeSet<Generator>) -> SquareClass {
        let gens = match &ctx {
            FieldCtx::Reals => gens.into_iter().filter(|g| *g == Generator::MinusOne).collect(),
            FieldCtx::QuadExt(_, d) => {
                // Pick the smaller coset representative of {g, g*d}.
                let alt: BTreeSet<Generator> = gens.symmetric_difference(&d.gens).cloned().collect();
                if (alt.len(), &alt) < (gens.len(), &gens) {
                    alt
                } else {
                    gens
                }
            }
            _ => gens,
        };
        SquareClass { ctx, gens }
    }

    pub fn one(ctx: FieldCtx) -> SquareClass {
        SquareClass { ctx, gens: BTreeSet::new() }
    }

    pub fn of(ctx: &FieldCtx, e: impl Into<FieldElem>) -> Result<SquareClass> {
        square_class_normalize(ctx, &e.into())
    }

    /// Square class of a nonzero rational.
    pub fn rat(r: &Rat) -> Result<SquareClass> {
        square_class_normalize(&FieldCtx::Rationals, &FieldElem::Rat(r.clone()))
    }

    pub fn int(n: i64) -> SquareClass {
        Self::rat(&Rat::from_integer(BigInt::from(n))).expect("nonzero integer")
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn gens(&self) -> &BTreeSet<Generator> {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn mul(&self, o: &SquareClass) -> Result<SquareClass> {
        if self.ctx != o.ctx {
            return Err(Error::MixedContext);
        }
        let g = self.gens.symmetric_difference(&o.gens).cloned().collect();
        Ok(SquareClass::from_gens(self.ctx.clone(), g))
    }

    pub fn neg(&self) -> SquareClass {
        let mut g = self.gens.clone();
        match &self.ctx {
            FieldCtx::PrimeField(p) => {
                if p % 4 == 3 {
                    toggle(&mut g, Generator::NonSquare);
                }
            }
            _ => toggle(&mut g, Generator::MinusOne),
        }
        SquareClass::from_gens(self.ctx.clone(), g)
    }

    /// Squarefree integer representative over Q (and over R, F_p as +-1 or
    /// the least nonresidue).
    pub fn rat_representative(&self) -> Option<BigInt> {
        let mut r = BigInt::one();
        for g in &self.gens {
            match g {
                Generator::MinusOne => r = -r,
                Generator::Prime(p) => r *= BigInt::from(p.clone()),
                Generator::NonSquare => {
                    let FieldCtx::PrimeField(p) = self.ctx else { return None };
                    r *= BigInt::from((2..p).find(|&a| legendre_u64(a, p) == -1).unwrap());
                }
                Generator::Poly(_) => return None,
            }
        }
        Some(r)
    }

    /// Product of the generators as a polynomial in `vars` (constants folded in).
    pub fn poly_representative(&self, vars: &Vars) -> MPoly {
        let mut r = MPoly::one(vars);
        for g in &self.gens {
            match g {
                Generator::MinusOne => r = -r,
                Generator::Prime(p) => {
                    r = r.scale(&Rat::from_integer(BigInt::from(p.clone())));
                }
                Generator::NonSquare => {}
                Generator::Poly(f) => r = &r * f,
            }
        }
        r
    }

    pub fn to_json(&self) -> Value {
        if let Some(r) = self.rat_representative() {
            return match r.to_i64() {
                Some(v) => json!(v),
                None => json!(r.to_string()),
            };
        }
        Value::Array(self.gens.iter().map(Generator::to_json).collect())
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.rat_representative() {
            return write!(f, "{r}");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| format!("({g})")).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Cup product of square classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub entries: Vec<SquareClass>,
}

impl Symbol {
    pub fn new(entries: Vec<SquareClass>) -> Result<Symbol> {
        if let Some(first) = entries.first() {
            if entries.iter().any(|e| e.ctx != first.ctx) {
                return Err(Error::MixedContext);
            }
        }
        Ok(Symbol { entries })
    }

    /// Symbol over Q from integer slots.
    pub fn ints(slots: &[i64]) -> Symbol {
        Symbol { entries: slots.iter().map(|&s| SquareClass::int(s)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.entries.len()
    }
}

/// Sorted multiset of generators: a cup product of generators.
pub type Atom = Vec<Generator>;

/// Formal mod-2 sum of symbols of one degree, kept in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolSum {
    ctx: FieldCtx,
    degree: usize,
    atoms: BTreeSet<Atom>,
}

/// Rewrites repeated generators with `(g, g) = (-1, g)` until only `-1`
/// repeats; `None` when the atom vanishes.
fn reduce_atom(ctx: &FieldCtx, mut a: Atom) -> Option<Atom> {
    if let FieldCtx::PrimeField(_) = ctx {
        // Finite fields have trivial cohomology above degree one.
        if a.len() >= 2 {
            return None;
        }
    }
    if let FieldCtx::Reals = ctx {
        if a.iter().any(|g| *g != Generator::MinusOne) {
            return None;
        }
    }
    loop {
        a.sort();
        let pos = a.windows(2).position(|w| w[0] == w[1] && w[0] != Generator::MinusOne);
        match pos {
            Some(i) => a[i] = Generator::MinusOne,
            None => return Some(a),
        }
    }
}

impl SymbolSum {
    pub fn zero(ctx: FieldCtx, degree: usize) -> SymbolSum {
        SymbolSum { ctx, degree, atoms: BTreeSet::new() }
    }

    /// Normal form of a list of symbols.
    pub fn from_symbols(ctx: &FieldCtx, symbols: &[Symbol]) -> Result<SymbolSum> {
        let degree = symbols.first().map_or(0, |s| s.degree());
        let mut out = SymbolSum::zero(ctx.clone(), degree);
        for s in symbols {
            if s.degree() != degree {
                return Err(Error::MixedDegree(degree, s.degree()));
            }
            if s.entries.iter().any(|e| e.ctx != *ctx) {
                return Err(Error::MixedContext);
            }
            let mut partial: Vec<Atom> = vec![vec![]];
            for e in &s.entries {
                let mut next = Vec::with_capacity(partial.len() * e.gens.len());
                for p in &partial {
                    for g in &e.gens {
                        let mut q = p.clone();
                        q.push(g.clone());
                        next.push(q);
                    }
                }
                partial = next;
            }
            for a in partial {
                out.toggle(a);
            }
        }
        Ok(out)
    }

    pub fn from_symbol(s: &Symbol) -> Result<SymbolSum> {
        let ctx = s.entries.first().map_or(FieldCtx::Rationals, |e| e.ctx.clone());
        Self::from_symbols(&ctx, std::slice::from_ref(s))
    }

    /// Adds an atom (mod 2) after reduction.
    pub fn toggle(&mut self, a: Atom) {
        if let Some(a) = reduce_atom(&self.ctx, a) {
            if !self.atoms.remove(&a) {
                self.atoms.insert(a);
            }
        }
    }

    pub fn add(&self, o: &SymbolSum) -> Result<SymbolSum> {
        if self.ctx != o.ctx {
            return Err(Error::MixedContext);
        }
        if self.degree != o.degree && !self.is_zero() && !o.is_zero() {
            return Err(Error::MixedDegree(self.degree, o.degree));
        }
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = o.degree;
        }
        for a in &o.atoms {
            out.toggle(a.clone());
        }
        Ok(out)
    }

    /// Cup product with a class appended in the last slot.
    pub fn cup(&self, c: &SquareClass) -> Result<SymbolSum> {
        if self.ctx != c.ctx {
            return Err(Error::MixedContext);
        }
        let mut out = SymbolSum::zero(self.ctx.clone(), self.degree + 1);
        for a in &self.atoms {
            for g in &c.gens {
                let mut b = a.clone();
                b.push(g.clone());
                out.toggle(b);
            }
        }
        Ok(out)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Degree-one sum as a square class.
    pub fn as_square_class(&self) -> Option<SquareClass> {
        if self.degree != 1 {
            return None;
        }
        let gens = self.atoms.iter().map(|a| a[0].clone()).collect();
        Some(SquareClass::from_gens(self.ctx.clone(), gens))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "deg": self.degree,
            "terms": self.atoms.iter().map(|a| Value::Array(a.iter().map(Generator::to_json).collect())).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SymbolSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|a| format!("({})", a.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Normal form of an arbitrary list of symbols (alias of
/// [`SymbolSum::from_symbols`] for symmetry with the other operations).
pub fn symbol_sum_normalize(ctx: &FieldCtx, symbols: &[Symbol]) -> Result<SymbolSum> {
    SymbolSum::from_symbols(ctx, symbols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(SquareClass::int(18).rat_representative(), Some(BigInt::from(2)));
        assert_eq!(SquareClass::int(49).rat_representative(), Some(BigInt::from(1)));
        assert_eq!(SquareClass::int(-50).rat_representative(), Some(BigInt::from(-2)));
        let q = FieldCtx::Rationals;
        assert!(SymbolSum::from_symbols(&q, &[Symbol::ints(&[4, 7])]).unwrap().is_zero());
        assert!(SymbolSum::from_symbols(&q, &[Symbol::ints(&[3, -3])]).unwrap().is_zero());
        assert_eq!(
            square_class_normalize(&q, &FieldElem::Rat(Rat::zero())),
            Err(Error::ZeroElement)
        );
    }

    #[test]
    fn product_entries_expand() {
        let q = FieldCtx::Rationals;
        let (a, b, d) = (3, 5, 7);
        let lhs = SymbolSum::from_symbols(&q, &[Symbol::ints(&[a * b, a * d])]).unwrap();
        let rhs = SymbolSum::from_symbols(
            &q,
            &[Symbol::ints(&[a, b]), Symbol::ints(&[a, a]), Symbol::ints(&[a, d]), Symbol::ints(&[b, d])],
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_shape() {
        let s = SymbolSum::from_symbols(&FieldCtx::Rationals, &[Symbol::ints(&[-1, -1, -1])]).unwrap();
        assert_eq!(s.to_json().to_string(), r#"{"deg":3,"terms":[[-1,-1,-1]]}"#);
    }

    #[test]
    fn mixed_degree_rejected() {
        let r = SymbolSum::from_symbols(&FieldCtx::Rationals, &[Symbol::ints(&[2, 3]), Symbol::ints(&[2])]);
        assert_eq!(r, Err(Error::MixedDegree(2, 1)));
    }
}
