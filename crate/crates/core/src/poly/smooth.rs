//! Smoothness of projective plane curves via the Jacobian ideal.

use num_traits::{One, Zero};

use super::factor::factor_univariate;
use super::gcd::gcd;
use super::groebner::{groebner_basis, leading_exp, MonomialOrder};
use super::mpoly::MPoly;
use super::upoly::QPoly;
use crate::arith::Rat;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveVerdict {
    Smooth,
    /// A rational singular point if one exists, else the reduced grevlex
    /// basis of the Jacobian ideal.
    Singular { point: Option<Vec<Rat>>, basis: Vec<MPoly> },
    /// Carries a repeated factor.
    NotReduced(MPoly),
}

impl CurveVerdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self, CurveVerdict::Smooth)
    }
}

pub fn is_smooth_plane_curve(f: &MPoly) -> Result<CurveVerdict> {
    if f.nvars() != 3 {
        return Err(Error::WrongVariableCount { expected: 3, got: f.nvars() });
    }
    if f.is_zero() || !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if f.is_constant() {
        return Ok(CurveVerdict::Smooth);
    }
    let partials: Vec<MPoly> = (0..3).map(|i| f.derivative(i)).collect();
    let mut g = f.clone();
    for p in &partials {
        g = gcd(&g, p);
    }
    if !g.is_constant() {
        return Ok(CurveVerdict::NotReduced(g));
    }
    // Euler's relation puts f in the ideal of its partials.
    let gb = groebner_basis(&partials, MonomialOrder::Grevlex);
    let pure = |i: usize| {
        gb.iter().any(|b| {
            let e = leading_exp(b, MonomialOrder::Grevlex).unwrap();
            (0..3).all(|j| (j == i) == (e.0[j] > 0))
        })
    };
    if (0..3).all(pure) {
        return Ok(CurveVerdict::Smooth);
    }
    Ok(CurveVerdict::Singular { point: rational_singular_point(f, &partials), basis: gb })
}

fn rational_roots(u: &QPoly) -> Vec<Rat> {
    if u.is_zero() {
        return vec![];
    }
    let (_, facs) = factor_univariate(u);
    facs.iter().filter(|(g, _)| g.deg() == 1).map(|(g, _)| -g.coeff(0) / g.coeff(1)).collect()
}

fn univariate(f: &MPoly, i: usize) -> QPoly {
    let d = f.degree_in(i).max(0) as usize;
    let mut c = vec![Rat::zero(); d + 1];
    for (e, a) in f.terms() {
        c[e.0[i] as usize] += a;
    }
    QPoly::new(c)
}

fn is_singular_at(f: &MPoly, partials: &[MPoly], pt: &[Rat]) -> bool {
    f.eval(pt).is_zero() && partials.iter().all(|p| p.eval(pt).is_zero())
}

/// Searches the charts x0 = 1, then x0 = 0 and x1 = 1, then (0:0:1).
fn rational_singular_point(f: &MPoly, partials: &[MPoly]) -> Option<Vec<Rat>> {
    let one = Rat::one();
    let zero = Rat::zero();
    let mut eqs: Vec<MPoly> = vec![f.clone()];
    eqs.extend(partials.iter().cloned());

    let chart: Vec<MPoly> = eqs.iter().map(|e| e.set_var(0, &one)).collect();
    let lex = groebner_basis(&chart, MonomialOrder::Lex);
    if let Some(elim) = lex.iter().find(|g| g.degree_in(1) <= 0 && !g.is_constant()) {
        for r2 in rational_roots(&univariate(elim, 2)) {
            let mut u = QPoly::zero();
            for g in &lex {
                u = u.gcd(&univariate(&g.set_var(2, &r2), 1));
            }
            for r1 in rational_roots(&u) {
                let pt = vec![one.clone(), r1, r2.clone()];
                if is_singular_at(f, partials, &pt) {
                    return Some(pt);
                }
            }
        }
    }

    let mut u = QPoly::zero();
    for e in &eqs {
        u = u.gcd(&univariate(&e.set_var(0, &zero).set_var(1, &one), 2));
    }
    for r in rational_roots(&u) {
        let pt = vec![zero.clone(), one.clone(), r];
        if is_singular_at(f, partials, &pt) {
            return Some(pt);
        }
    }
    let pt = vec![zero.clone(), zero, one];
    is_singular_at(f, partials, &pt).then_some(pt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::poly::mpoly::vars;
    use crate::poly::parse::parse_poly;

    fn p(s: &str) -> MPoly {
        parse_poly(s, &vars(&["x0", "x1", "x2"])).unwrap()
    }

    #[test]
    fn fermat_sextic_smooth() {
        assert_eq!(is_smooth_plane_curve(&p("x0^6 + x1^6 + x2^6")).unwrap(), CurveVerdict::Smooth);
    }

    #[test]
    fn singular_witness() {
        match is_smooth_plane_curve(&p("x0^6 + x1^6")).unwrap() {
            CurveVerdict::Singular { point, .. } => {
                assert_eq!(point, Some(vec![rat_int(0), rat_int(0), rat_int(1)]))
            }
            v => panic!("{v:?}"),
        }
        // nodal cubic, node at (1:0:0)
        match is_smooth_plane_curve(&p("x2^2*x0 - x1^2*x0 - x1^3")).unwrap() {
            CurveVerdict::Singular { point, .. } => {
                assert_eq!(point, Some(vec![rat_int(1), rat_int(0), rat_int(0)]))
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn not_reduced() {
        let v = is_smooth_plane_curve(&p("x0^2*(x1^3 + x2^3 + x0^3)")).unwrap();
        assert_eq!(v, CurveVerdict::NotReduced(p("x0")));
    }

    #[test]
    fn errors() {
        assert_eq!(is_smooth_plane_curve(&p("x0^2 + x1")), Err(Error::NotHomogeneous));
        let q = parse_poly("x^2 + y^2", &vars(&["x", "y"])).unwrap();
        assert_eq!(
            is_smooth_plane_curve(&q),
            Err(Error::WrongVariableCount { expected: 3, got: 2 })
        );
    }
}
