//! Diagonal quadratic forms: diagonalization, invariants, Clifford classes
//! and Pfister forms. Decisions specific to Q live in [`rational`].

mod rational;

use std::fmt;

use num_traits::Zero;
use serde_json::Value;

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::milnor::{FieldCtx, FieldElem, Generator, SquareClass, Symbol, SymbolSum};
use crate::poly::{MPoly, PolyMatrix, RatFunc, Vars};

pub use rational::{
    invariants, is_hyperbolic, is_isotropic_over_q, isometric_over_q, verify_remark_chain,
    witt_complement_exists, ChainStep, FormInvariants, RemarkChainReport,
};

/// Diagonal form `<a_1, ..., a_n>` with entries taken up to squares.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagForm {
    ctx: FieldCtx,
    entries: Vec<SquareClass>,
}

impl DiagForm {
    pub fn new(ctx: FieldCtx, entries: Vec<SquareClass>) -> Result<DiagForm> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("a form needs at least one entry".into()));
        }
        if entries.iter().any(|e| *e.ctx() != ctx) {
            return Err(Error::MixedContext);
        }
        Ok(DiagForm { ctx, entries })
    }

    /// Form over Q from nonzero integers.
    pub fn ints(xs: &[i64]) -> DiagForm {
        DiagForm::new(FieldCtx::Rationals, xs.iter().map(|&x| SquareClass::int(x)).collect())
            .expect("nonempty")
    }

    pub fn rats(xs: &[Rat]) -> Result<DiagForm> {
        let entries = xs.iter().map(SquareClass::rat).collect::<Result<Vec<_>>>()?;
        DiagForm::new(FieldCtx::Rationals, entries)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn entries(&self) -> &[SquareClass] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Orthogonal sum.
    pub fn perp(&self, o: &DiagForm) -> Result<DiagForm> {
        let mut e = self.entries.clone();
        e.extend(o.entries.iter().cloned());
        DiagForm::new(self.ctx.clone(), e)
    }

    /// The scaled form `s * q`.
    pub fn scale(&self, s: &SquareClass) -> Result<DiagForm> {
        let e = self.entries.iter().map(|a| a.mul(s)).collect::<Result<Vec<_>>>()?;
        DiagForm::new(self.ctx.clone(), e)
    }

    /// Product of the entries.
    pub fn determinant(&self) -> SquareClass {
        self.entries
            .iter()
            .fold(SquareClass::one(self.ctx.clone()), |acc, a| acc.mul(a).expect("same context"))
    }

    /// `(-1)^(n(n-1)/2) * det`.
    pub fn signed_discriminant(&self) -> SquareClass {
        let n = self.rank();
        let d = self.determinant();
        if (n * (n - 1) / 2) % 2 == 1 {
            d.neg()
        } else {
            d
        }
    }

    /// Hasse-Witt class `sum_{i<j} (a_i, a_j)`.
    pub fn hasse_witt(&self) -> Result<SymbolSum> {
        let mut syms = Vec::new();
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                syms.push(Symbol::new(vec![self.entries[i].clone(), self.entries[j].clone()])?);
            }
        }
        if syms.is_empty() {
            return Ok(SymbolSum::zero(self.ctx.clone(), 2));
        }
        SymbolSum::from_symbols(&self.ctx, &syms)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.entries.iter().map(SquareClass::to_json).collect())
    }
}

impl fmt::Display for DiagForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Slots of a Pfister form `<<u, v, w>> = <1,-u> (x) <1,-v> (x) <1,-w>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfisterSpec {
    slots: Vec<SquareClass>,
}

impl PfisterSpec {
    pub fn new(slots: Vec<SquareClass>) -> Result<PfisterSpec> {
        if slots.is_empty() || slots.len() > 3 {
            return Err(Error::InvalidInput(format!("{} Pfister slots", slots.len())));
        }
        if slots.iter().any(|s| s.ctx() != slots[0].ctx()) {
            return Err(Error::MixedContext);
        }
        Ok(PfisterSpec { slots })
    }

    pub fn ints(xs: &[i64]) -> Result<PfisterSpec> {
        PfisterSpec::new(xs.iter().map(|&x| SquareClass::int(x)).collect())
    }

    pub fn slots(&self) -> &[SquareClass] {
        &self.slots
    }

    /// The symbol `(u, v, w)` the form belongs to.
    pub fn symbol(&self) -> Symbol {
        Symbol { entries: self.slots.clone() }
    }
}

/// Expands the tensor product; entry `k` has sign and slot set given by the
/// bits of `k`, so `<<u,v,w>>` is `<1,-u,-v,uv,-w,uw,vw,-uvw>`.
pub fn pfister(spec: &PfisterSpec) -> DiagForm {
    let ctx = spec.slots[0].ctx().clone();
    let mut entries = vec![SquareClass::one(ctx.clone())];
    for s in &spec.slots {
        let m = s.neg();
        let next: Vec<SquareClass> =
            entries.iter().map(|e| e.mul(&m).expect("same context")).collect();
        entries.extend(next);
    }
    DiagForm { ctx, entries }
}

/// Brauer class of the Clifford algebra (rank 4) or of the even Clifford
/// algebra (rank 3). Both ranks share the formula `hw(q) + (-1, -det q)`.
pub fn clifford_invariant(f: &DiagForm) -> Result<SymbolSum> {
    match f.rank() {
        3 | 4 => {
            let m1 = SquareClass::one(f.ctx.clone()).neg();
            let corr = Symbol::new(vec![m1, f.determinant().neg()])?;
            f.hasse_witt()?.add(&SymbolSum::from_symbols(&f.ctx, &[corr])?)
        }
        n => Err(Error::UnsupportedRank(n)),
    }
}

/// Diagonal form together with the congruence that produced it.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    /// Diagonal values `B(v_i, v_i)`.
    pub values: Vec<RatFunc>,
    /// New basis vectors in the original coordinates.
    pub basis: Vec<Vec<RatFunc>>,
    pub form: DiagForm,
}

fn class_of(ctx: &FieldCtx, v: &RatFunc) -> Result<SquareClass> {
    let e = match (ctx, v.constant_value()) {
        (_, Some(c)) => FieldElem::Rat(c),
        (FieldCtx::Rationals | FieldCtx::Reals, None) => {
            return Err(Error::WrongContext(format!("{v} is not a constant")));
        }
        (_, None) => FieldElem::Func(v.clone()),
    };
    SquareClass::of(ctx, e)
}

fn bilinear(g: &[Vec<RatFunc>], x: &[RatFunc], y: &[RatFunc]) -> RatFunc {
    let vars = g[0][0].vars().clone();
    let mut s = RatFunc::zero(&vars);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() && !g[i][j].is_zero() {
                s = s.add(&xi.mul(&g[i][j]).mul(yj));
            }
        }
    }
    s
}

/// Orthogonal basis of a symmetric matrix over the function field of its
/// ring (or over Q when the entries are constants). With a seed vector the
/// first basis vector is the seed.
pub fn diagonalize(g: &PolyMatrix, ctx: &FieldCtx, seed: Option<&[Rat]>) -> Result<Diagonalization> {
    if !g.is_symmetric() {
        return Err(Error::InvalidInput("matrix is not symmetric".into()));
    }
    let n = g.size();
    let vars = g.vars().clone();
    let gm: Vec<Vec<RatFunc>> =
        g.rows().into_iter().map(|r| r.into_iter().map(RatFunc::from_poly).collect()).collect();
    let unit = |i: usize| -> Vec<RatFunc> {
        (0..n)
            .map(|j| if i == j { RatFunc::one(&vars) } else { RatFunc::zero(&vars) })
            .collect()
    };
    let mut w: Vec<Vec<RatFunc>> = (0..n).map(unit).collect();
    if let Some(s) = seed {
        if s.len() != n {
            return Err(Error::InvalidInput(format!("seed has length {}, expected {n}", s.len())));
        }
        let k = s.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::InvalidInput("zero seed".into()))?;
        let sv: Vec<RatFunc> = s.iter().map(|c| RatFunc::constant(&vars, c.clone())).collect();
        w.remove(k);
        w.insert(0, sv);
    }
    let mut a: Vec<Vec<RatFunc>> =
        w.iter().map(|x| w.iter().map(|y| bilinear(&gm, x, y)).collect()).collect();
    if seed.is_some() && a[0][0].is_zero() {
        return Err(Error::InvalidInput("seed vector is isotropic".into()));
    }

    let mut values = Vec::with_capacity(n);
    let mut basis = Vec::with_capacity(n);
    while !w.is_empty() {
        let m = w.len();
        let i = match (0..m).find(|&i| !a[i][i].is_zero()) {
            Some(i) => i,
            None => {
                // All diagonal entries vanish: v_i + v_j has value 2 a_ij.
                let (i, j) = (0..m)
                    .flat_map(|i| (0..m).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero())
                    .ok_or(Error::DegenerateForm)?;
                let wi: Vec<RatFunc> = w[i].iter().zip(&w[j]).map(|(x, y)| x.add(y)).collect();
                w[i] = wi;
                let row: Vec<RatFunc> = (0..m).map(|k| a[i][k].add(&a[j][k])).collect();
                for k in 0..m {
                    a[i][k] = row[k].clone();
                    a[k][i] = row[k].clone();
                }
                a[i][i] = row[i].add(&row[j]);
                i
            }
        };
        let p = a[i][i].clone();
        let vi = w[i].clone();
        let mut nw = Vec::with_capacity(m - 1);
        let mut na = Vec::with_capacity(m - 1);
        let rest: Vec<usize> = (0..m).filter(|&k| k != i).collect();
        let coef: Vec<RatFunc> =
            rest.iter().map(|&j| a[j][i].div(&p)).collect::<Result<Vec<_>>>()?;
        for (r, &j) in rest.iter().enumerate() {
            nw.push(w[j].iter().zip(&vi).map(|(x, y)| x.sub(&coef[r].mul(y))).collect());
            na.push(
                rest.iter()
                    .map(|&k| a[j][k].sub(&coef[r].mul(&a[i][k])))
                    .collect::<Vec<RatFunc>>(),
            );
        }
        values.push(p);
        basis.push(vi);
        w = nw;
        a = na;
    }
    let entries = values.iter().map(|v| class_of(ctx, v)).collect::<Result<Vec<_>>>()?;
    Ok(Diagonalization { values, basis, form: DiagForm::new(ctx.clone(), entries)? })
}

/// Diagonalization of a rational symmetric matrix.
pub fn diagonalize_rat(m: &[Vec<Rat>], seed: Option<&[Rat]>) -> Result<Diagonalization> {
    let vars: Vars = crate::poly::vars(&[]);
    let rows = m
        .iter()
        .map(|r| r.iter().map(|c| MPoly::constant(&vars, c.clone())).collect())
        .collect();
    diagonalize(&PolyMatrix::new(rows)?, &FieldCtx::Rationals, seed)
}

/// Whether the class is negative at the real place.
pub(crate) fn is_negative(c: &SquareClass) -> bool {
    c.gens().contains(&Generator::MinusOne)
}
