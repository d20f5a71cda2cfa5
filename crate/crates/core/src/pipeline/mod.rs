//! From a cubic fourfold containing the plane `x0 = x1 = x2 = 0` to its
//! quadric surface bundle over P^2, the discriminant sextic and the
//! quaternion symbol of the Clifford algebra.

mod certificates;
mod ramification;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::{rat, Rat};
use crate::error::{Error, Result};
use crate::forms::{clifford_invariant, diagonalize, Diagonalization};
use crate::milnor::{FieldCtx, SquareClass, Symbol, SymbolSum};
use crate::poly::{
    factor, is_smooth_plane_curve, parse_poly, vars, CurveVerdict, Exp, MPoly, PolyMatrix, RatFunc,
    Vars,
};

pub use certificates::{
    check_norm_certificate, fiber_specialization_suite, split_kernel_decision,
    vanishing_given_norm, verify_main_identity, FiberPoint, FiberSuiteReport, NormCertificate,
    NormCheck, VanishingReport,
};
pub use ramification::{
    ramification_report, RamEntry, RamificationParams, RamificationReport, Verdict,
};

pub const FOURFOLD_VARS: [&str; 6] = ["x0", "x1", "x2", "y0", "y1", "y2"];
pub const BASE_VARS: [&str; 3] = ["x0", "x1", "x2"];

pub fn fourfold_vars() -> Vars {
    vars(&FOURFOLD_VARS)
}

pub fn base_vars() -> Vars {
    vars(&BASE_VARS)
}

/// Cubic in `x0..x2, y0..y2` vanishing on the plane `x = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicFourfold {
    pub equation: MPoly,
}

impl CubicFourfold {
    pub fn new(equation: MPoly) -> Result<CubicFourfold> {
        let equation = equation.to_ring(&fourfold_vars())?;
        if equation.is_zero() || !equation.is_homogeneous() || equation.total_degree() != 3 {
            return Err(Error::NotHomogeneousDegree3);
        }
        for (e, c) in equation.terms() {
            if e.0[0] + e.0[1] + e.0[2] == 0 {
                let m = MPoly::monomial(&fourfold_vars(), *e, c.clone());
                return Err(Error::PlaneNotContained(m.to_text()));
            }
        }
        Ok(CubicFourfold { equation })
    }
}

pub fn parse_and_validate(text: &str) -> Result<CubicFourfold> {
    CubicFourfold::new(parse_poly(text, &fourfold_vars())?)
}

/// Coefficients of the cubic by degree in `y`, the Gram matrix of the
/// associated bilinear form and its determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricBundleData {
    /// `a[m][n]` for `m <= n`, mirrored below the diagonal.
    pub a: [[MPoly; 3]; 3],
    pub b: [MPoly; 3],
    pub c: MPoly,
    pub gram: PolyMatrix,
    pub delta: MPoly,
}

pub fn extract_bundle(x: &CubicFourfold) -> QuadricBundleData {
    let bv = base_vars();
    let zero = MPoly::zero(&bv);
    let mut a: [[MPoly; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
    let mut b: [MPoly; 3] = std::array::from_fn(|_| zero.clone());
    let mut c = zero.clone();
    for (e, coef) in x.equation.terms() {
        let xe = Exp::from_slice(&[e.0[0], e.0[1], e.0[2]]);
        let mono = MPoly::monomial(&bv, xe, coef.clone());
        let ys: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat_n(i, e.0[3 + i] as usize)).collect();
        match ys.as_slice() {
            [] => c = &c + &mono,
            [p] => b[*p] = &b[*p] + &mono,
            [m, n] => a[*m][*n] = &a[*m][*n] + &mono,
            _ => unreachable!("validated: no monomial is cubic in y"),
        }
    }
    for m in 0..3 {
        for n in 0..m {
            a[m][n] = a[n][m].clone();
        }
    }
    let two = Rat::from_integer(2.into());
    let rows: Vec<Vec<MPoly>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| match (i, j) {
                    (3, 3) => c.scale(&two),
                    (3, p) | (p, 3) => b[p].clone(),
                    (m, n) if m == n => a[m][m].scale(&two),
                    (m, n) => a[m][n].clone(),
                })
                .collect()
        })
        .collect();
    let gram = PolyMatrix::new(rows).expect("4x4");
    let delta = gram.determinant();
    QuadricBundleData { a, b, c, gram, delta }
}

impl QuadricBundleData {
    pub fn a00(&self) -> &MPoly {
        &self.a[0][0]
    }

    pub fn to_json(&self) -> Value {
        let mut a = serde_json::Map::new();
        for m in 0..3 {
            for n in m..3 {
                a.insert(format!("a{m}{n}"), json!(self.a[m][n].to_text()));
            }
        }
        json!({
            "a": a,
            "b": self.b.iter().map(|p| p.to_text()).collect::<Vec<_>>(),
            "c": self.c.to_text(),
            "delta": self.delta.to_text(),
        })
    }
}

/// Whether the discriminant curve is smooth, with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationReport {
    pub simple: bool,
    pub curve: CurveVerdict,
    pub a00_nonzero: bool,
}

pub fn check_simple_degeneration(q: &QuadricBundleData) -> Result<DegenerationReport> {
    if q.delta.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let curve = is_smooth_plane_curve(&q.delta)?;
    Ok(DegenerationReport { simple: curve.is_smooth(), curve, a00_nonzero: !q.a00().is_zero() })
}

/// The affine chart `a00 = 1` of P^2: one base variable is solved for and
/// the other two become coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    /// Index of the eliminated variable.
    pub solved: usize,
    /// Indices of the chart coordinates.
    pub coords: [usize; 2],
    pub vars: Vars,
    /// The eliminated variable as a polynomial in the chart coordinates.
    pub image: MPoly,
    pub a00: MPoly,
}

impl Chart {
    pub fn new(a00: &MPoly) -> Result<Chart> {
        let a00 = a00.to_ring(&base_vars())?;
        if a00.is_zero() {
            return Err(Error::ChartFailure);
        }
        if !a00.is_homogeneous() || a00.total_degree() != 1 {
            return Err(Error::InvalidInput(format!("a00 = {a00} is not a linear form")));
        }
        let coef = |i: usize| a00.coeff_in(i, 1).constant_value().unwrap_or_else(Rat::zero);
        let solved = (0..3).find(|&i| !coef(i).is_zero()).expect("nonzero linear form");
        let coords = match solved {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        let cv = vars(&[BASE_VARS[coords[0]], BASE_VARS[coords[1]]]);
        let cs = coef(solved);
        let mut image = MPoly::constant(&cv, cs.recip());
        for (j, &k) in coords.iter().enumerate() {
            image = &image - &MPoly::var(&cv, j).scale(&(coef(k) / &cs));
        }
        Ok(Chart { solved, coords, vars: cv, image, a00 })
    }

    /// `f / a00^deg f` restricted to the chart.
    pub fn apply(&self, f: &MPoly) -> MPoly {
        let mut images = vec![MPoly::zero(&self.vars); 3];
        images[self.solved] = self.image.clone();
        for (j, &k) in self.coords.iter().enumerate() {
            images[k] = MPoly::var(&self.vars, j);
        }
        f.substitute(&images)
    }

    /// Chart coordinates of a projective point off `a00 = 0`.
    pub fn coordinates(&self, p: &[Rat]) -> Result<[Rat; 2]> {
        let l = self.a00.eval(p);
        if l.is_zero() {
            return Err(Error::BadPoint("point lies on the line a00 = 0".into()));
        }
        Ok([&p[self.coords[0]] / &l, &p[self.coords[1]] / &l])
    }
}

/// The quaternion symbol `alpha = (-ab, -ad)` of the bundle in the chart.
#[derive(Clone, Debug)]
pub struct CliffordSymbolData {
    pub chart: Chart,
    pub ctx: FieldCtx,
    /// Matrix of the trivialized form `q / a00` in the chart.
    pub matrix: PolyMatrix,
    pub diagonalization: Diagonalization,
    pub delta_chart: MPoly,
    pub a: SquareClass,
    pub b: SquareClass,
    pub e: SquareClass,
    pub d: SquareClass,
    pub alpha: SymbolSum,
    /// `(a,b) + (a,abd) + (b,abd) + (-1,-d)` and the Clifford invariant of
    /// `<1,a,b,e>` both normalize to alpha.
    pub identity_verified: bool,
}

impl CliffordSymbolData {
    pub fn a_value(&self) -> &RatFunc {
        &self.diagonalization.values[1]
    }

    pub fn b_value(&self) -> &RatFunc {
        &self.diagonalization.values[2]
    }

    pub fn e_value(&self) -> &RatFunc {
        &self.diagonalization.values[3]
    }

    /// Representative `a b e` of `d`.
    pub fn d_value(&self) -> RatFunc {
        self.a_value().mul(self.b_value()).mul(self.e_value())
    }
}

pub fn clifford_symbol(q: &QuadricBundleData) -> Result<CliffordSymbolData> {
    let chart = Chart::new(q.a00())?;
    let half = rat(1, 2);
    let matrix = q.gram.map(|f| chart.apply(f).scale(&half));
    let ctx = FieldCtx::FunctionField(chart.vars.clone());
    let seed = [Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()];
    let diagonalization = diagonalize(&matrix, &ctx, Some(&seed))?;
    let delta_chart = chart.apply(&q.delta);
    if delta_chart.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let ent = diagonalization.form.entries();
    if !ent[0].is_trivial() {
        return Err(Error::DiscMismatch("trivialized form does not represent 1".into()));
    }
    let (a, b, e) = (ent[1].clone(), ent[2].clone(), ent[3].clone());
    let d = a.mul(&b)?.mul(&e)?;
    let d_det = SquareClass::of(&ctx, delta_chart.clone())?;
    if d != d_det {
        return Err(Error::DiscMismatch(format!("abe = {d} but delta/a00^6 = {d_det}")));
    }
    let ab = a.mul(&b)?;
    let ad = a.mul(&d)?;
    let abd = ab.mul(&d)?;
    let m1 = SquareClass::one(ctx.clone()).neg();
    let alpha = SymbolSum::from_symbols(&ctx, &[Symbol::new(vec![ab.neg(), ad.neg()])?])?;
    let four = SymbolSum::from_symbols(
        &ctx,
        &[
            Symbol::new(vec![a.clone(), b.clone()])?,
            Symbol::new(vec![a.clone(), abd.clone()])?,
            Symbol::new(vec![b.clone(), abd])?,
            Symbol::new(vec![m1, d.neg()])?,
        ],
    )?;
    let identity_verified = four == alpha && clifford_invariant(&diagonalization.form)? == alpha;
    Ok(CliffordSymbolData {
        chart,
        ctx,
        matrix,
        diagonalization,
        delta_chart,
        a,
        b,
        e,
        d,
        alpha,
        identity_verified,
    })
}

/// Irreducible factors of the discriminant in the chart.
pub fn delta_factors(cs: &CliffordSymbolData) -> Result<Vec<(MPoly, u32)>> {
    Ok(factor(&cs.delta_chart)?.factors)
}

/// The reference fixture: `a00 = x0`, `a11 = x1`, `a22 = x2`, all
/// off-diagonal `a = x0 + x1 + x2`, `b = (x1^2, x2^2, x0^2)`,
/// `c = x0^3 + x1^3 + x2^3`.
pub const X0_TEXT: &str = "x0*y0^2 + x1*y1^2 + x2*y2^2 \
    + (x0 + x1 + x2)*(y0*y1 + y0*y2 + y1*y2) \
    + x1^2*y0 + x2^2*y1 + x0^2*y2 + x0^3 + x1^3 + x2^3";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    #[test]
    fn validation() {
        assert!(parse_and_validate("x0*y0^2 + x1*y1^2 + x2*y2^2 + x0^3").is_ok());
        assert!(matches!(parse_and_validate("y0^3 + x0*y1^2"), Err(Error::PlaneNotContained(_))));
        assert_eq!(parse_and_validate("x0*y0"), Err(Error::NotHomogeneousDegree3));
        assert!(matches!(parse_and_validate("x0*y3^2"), Err(Error::Syntax { pos: 3, .. })));
    }

    #[test]
    fn degenerate_bundles() {
        let q = extract_bundle(&parse_and_validate("x0^3").unwrap());
        assert!(q.delta.is_zero());
        assert_eq!(check_simple_degeneration(&q), Err(Error::ZeroDiscriminant));
        let q = extract_bundle(&parse_and_validate("x0*y0^2 + x1*y1^2 + x2*y2^2").unwrap());
        assert_eq!(q.a[1][1].to_text(), "x1");
        assert!(q.delta.is_zero());
    }

    #[test]
    fn x0_bundle() {
        let q = extract_bundle(&parse_and_validate(X0_TEXT).unwrap());
        assert_eq!(q.a[0][1].to_text(), "x0 + x1 + x2");
        assert_eq!(q.b[2].to_text(), "x0^2");
        assert!(q.delta.is_homogeneous());
        assert_eq!(q.delta.total_degree(), 6);
        let pt = [rat_int(2), rat_int(-1), rat_int(3)];
        let num: Vec<Vec<Rat>> = q.gram.eval(&pt);
        assert_eq!(q.delta.eval(&pt), crate::poly::matrix::rat_determinant(&num));
    }

    #[test]
    fn diagonal_toy() {
        // Gram already 2 a00 <1, a, b, abd> with a = x1/x0, b = x2/x0, d = 3.
        let x = parse_and_validate("x0*y0^2 + x1*y1^2 + x2*y2^2 + 3*x1*x2*x0").unwrap();
        let cs = clifford_symbol(&extract_bundle(&x)).unwrap();
        assert!(cs.identity_verified);
        let ctx = cs.ctx.clone();
        let v = &cs.chart.vars;
        let a = SquareClass::of(&ctx, MPoly::var(v, 0)).unwrap();
        let b = SquareClass::of(&ctx, MPoly::var(v, 1)).unwrap();
        let d = SquareClass::of(&ctx, MPoly::from_int(v, 3)).unwrap();
        assert_eq!(cs.d, d);
        let want = Symbol::new(vec![a.mul(&b).unwrap().neg(), a.mul(&d).unwrap().neg()]).unwrap();
        assert_eq!(cs.alpha, SymbolSum::from_symbol(&want).unwrap());
    }

    #[test]
    fn hyperbolic_toy() {
        // a = -1, b = -1, d = 1: alpha = (-1, 1) vanishes.
        let x = parse_and_validate("x0*y0^2 - x0*y1^2 - x0*y2^2 + x0^3").unwrap();
        let cs = clifford_symbol(&extract_bundle(&x)).unwrap();
        assert!(cs.d.is_trivial());
        assert!(cs.alpha.is_zero());
    }

    #[test]
    fn chart_failure() {
        let x = parse_and_validate("x1*y1^2 + x2*y2^2 + x0*y0*y1 + x0^3").unwrap();
        assert!(matches!(clifford_symbol(&extract_bundle(&x)), Err(Error::ChartFailure)));
    }
}
