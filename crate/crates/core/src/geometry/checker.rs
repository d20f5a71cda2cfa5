//! Independent verification of zero-cycle certificates. Each function is
//! pulled back to its parameter line, its divisor is read off from a
//! factorization of binary forms, and every closed point is pushed into the
//! ambient space as its Chow form `prod (u . z)`. The relation holds when
//! the pushed-forward divisors add up to `2P - 2Q`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use super::ZeroCycleCertificate;
use crate::arith::Rat;
use crate::poly::{factor::factor_univariate, upoly::QPoly, vars, MPoly, PolyMatrix, Vars};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCheck {
    pub accepted: bool,
    pub detail: Vec<String>,
}

impl CycleCheck {
    pub fn to_json(&self) -> Value {
        json!({ "accepted": self.accepted, "detail": self.detail })
    }
}

type Cycle = BTreeMap<MPoly, i64>;

fn u_ring() -> Vars {
    vars(&["u0", "u1", "u2", "u3"])
}

fn point_chow(u: &Vars, z: &[Rat]) -> MPoly {
    let mut f = MPoly::zero(u);
    for (i, c) in z.iter().enumerate() {
        f = &f + &MPoly::var(u, i).scale(c);
    }
    f.monic()
}

/// Coefficients of a binary form in `s` after setting `t = 1`, padded to
/// `deg + 1` entries.
fn dehomogenize(f: &MPoly, deg: usize) -> Vec<Rat> {
    let mut c = vec![Rat::zero(); deg + 1];
    for (e, k) in f.terms() {
        c[e.0[0] as usize] += k;
    }
    c
}

/// Chow form of the closed point `h = 0` (`h` irreducible in `s`) under the
/// parameterization: the resultant of `h` and `sum u_i phi_i(s, 1)`.
fn chow_of_root(u: &Vars, h: &QPoly, param: &[MPoly], k: usize) -> MPoly {
    let cols: Vec<Vec<Rat>> = param.iter().map(|f| dehomogenize(f, k)).collect();
    let ell: Vec<MPoly> = (0..=k)
        .map(|d| {
            let mut f = MPoly::zero(u);
            for (i, c) in cols.iter().enumerate() {
                f = &f + &MPoly::var(u, i).scale(&c[d]);
            }
            f
        })
        .collect();
    let e = h.deg() as usize;
    let n = e + k;
    let mut rows = vec![vec![MPoly::zero(u); n]; n];
    // Coefficients from the top degree down.
    for r in 0..k {
        for j in 0..=e {
            rows[r][r + j] = MPoly::constant(u, h.coeff(e - j));
        }
    }
    for r in 0..e {
        for j in 0..=k {
            rows[k + r][r + j] = ell[k - j].clone();
        }
    }
    PolyMatrix::new(rows).expect("square").determinant().monic()
}

fn add_divisor(u: &Vars, form: &MPoly, param: &[MPoly], k: usize, sign: i64, acc: &mut Cycle) -> Result<(), String> {
    let total = form.total_degree() as usize;
    let coeffs = dehomogenize(form, total);
    let f = QPoly::new(coeffs);
    let at_inf = total as isize - f.deg();
    if at_inf > 0 {
        let mut z = MPoly::zero(u);
        for (i, ph) in param.iter().enumerate() {
            let top = dehomogenize(ph, k)[k].clone();
            z = &z + &MPoly::var(u, i).scale(&top);
        }
        if z.is_zero() {
            return Err("parameterization has a base point at infinity".into());
        }
        *acc.entry(z.monic()).or_default() += sign * at_inf as i64;
    }
    if f.deg() > 0 {
        let (_, fs) = factor_univariate(&f);
        for (h, m) in fs {
            let chow = chow_of_root(u, &h, param, k);
            if chow.is_zero() {
                return Err("parameterization has a base point".into());
            }
            *acc.entry(chow).or_default() += sign * m as i64;
        }
    }
    Ok(())
}

pub fn check_zero_cycle_certificate(cert: &ZeroCycleCertificate) -> CycleCheck {
    let mut detail = Vec::new();
    let u = u_ring();
    let mut total = Cycle::new();
    for cf in &cert.functions {
        let label = &cf.label;
        if cf.param.len() != 4 || cf.param.iter().any(|f| !f.is_homogeneous()) {
            detail.push(format!("{label}: parameterization is not four binary forms"));
            continue;
        }
        let k = cf.param.iter().map(|f| f.total_degree()).max().unwrap_or(-1);
        if k < 1 || cf.param.iter().any(|f| !f.is_zero() && f.total_degree() != k) {
            detail.push(format!("{label}: parameterization forms have mixed degrees"));
            continue;
        }
        if !cert.surface.substitute(&cf.param).is_zero() {
            detail.push(format!("{label}: curve is not on the surface"));
            continue;
        }
        if cf.den.is_zero()
            || !cf.num.is_homogeneous()
            || !cf.den.is_homogeneous()
            || cf.num.total_degree() != cf.den.total_degree()
        {
            detail.push(format!("{label}: function is not a ratio of forms of equal degree"));
            continue;
        }
        let (n, d) = (cf.num.substitute(&cf.param), cf.den.substitute(&cf.param));
        if n.is_zero() || d.is_zero() {
            detail.push(format!("{label}: function vanishes or has a pole along the curve"));
            continue;
        }
        for (form, sign) in [(&n, 1), (&d, -1)] {
            if let Err(e) = add_divisor(&u, form, &cf.param, k as usize, sign, &mut total) {
                detail.push(format!("{label}: {e}"));
            }
        }
    }
    let mut target = Cycle::new();
    *target.entry(point_chow(&u, &cert.p)).or_default() += 2;
    *target.entry(point_chow(&u, &cert.q)).or_default() -= 2;
    total.retain(|_, m| *m != 0);
    target.retain(|_, m| *m != 0);
    if total != target {
        let show = |c: &Cycle| c.iter().map(|(z, m)| format!("{m}*[{z}]")).collect::<Vec<_>>().join(" + ");
        detail.push(format!("divisor sum {} differs from 2P - 2Q = {}", show(&total), show(&target)));
    }
    CycleCheck { accepted: detail.is_empty(), detail }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::error::Error;
    use crate::geometry::{coordinate_vars, zero_cycle_two_torsion_certificate, LineInSpace, SectionKind, FERMAT_LINE, FERMAT_SURFACE};
    use crate::poly::parse_poly;

    fn pt(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    fn fermat() -> (MPoly, LineInSpace) {
        (parse_poly(FERMAT_SURFACE, &coordinate_vars(4)).unwrap(), LineInSpace::parse(FERMAT_LINE).unwrap())
    }

    #[test]
    fn line_pair_section() {
        // P on the line (a, b, -a, -b), which meets L.
        let (s, l) = fermat();
        let c = zero_cycle_two_torsion_certificate(&s, &l, &pt(&[1, 2, -1, -2]), &pt(&[1, -1, 0, 0])).unwrap();
        assert_eq!(c.kind, SectionKind::LinePair);
        let r = check_zero_cycle_certificate(&c);
        assert!(r.accepted, "{:?}", r.detail);
    }

    #[test]
    fn smooth_conic_section() {
        let (s, l) = fermat();
        let c = zero_cycle_two_torsion_certificate(&s, &l, &pt(&[3, 4, 5, -6]), &pt(&[2, -2, 3, -3])).unwrap();
        assert_eq!(c.kind, SectionKind::SmoothConic);
        assert_eq!(crate::geometry::ZeroCycleCertificate::from_json(&c.to_json()).unwrap(), c);
        let r = check_zero_cycle_certificate(&c);
        assert!(r.accepted, "{:?}", r.detail);
    }

    #[test]
    fn point_on_line() {
        let (s, l) = fermat();
        let c = zero_cycle_two_torsion_certificate(&s, &l, &pt(&[2, -2, 1, -1]), &pt(&[0, 0, 1, -1])).unwrap();
        assert_eq!(c.kind, SectionKind::PointOnLine);
        assert!(check_zero_cycle_certificate(&c).accepted);
    }

    #[test]
    fn tampered_certificate_rejected() {
        let (s, l) = fermat();
        let mut c = zero_cycle_two_torsion_certificate(&s, &l, &pt(&[1, 2, -1, -2]), &pt(&[1, -1, 0, 0])).unwrap();
        c.q = pt(&[1, -1, 1, -1]);
        assert!(!check_zero_cycle_certificate(&c).accepted);
    }

    #[test]
    fn errors() {
        let (s, l) = fermat();
        assert!(matches!(
            zero_cycle_two_torsion_certificate(&s, &l, &pt(&[1, 1, 1, 1]), &pt(&[1, -1, 0, 0])),
            Err(Error::InvalidPoint(_))
        ));
        // A reducible surface containing the plane x0 + x1 = 0.
        let v = coordinate_vars(4);
        let red = parse_poly("(x0 + x1)*(x0^2 + x1^2 + x2^2 + x3^2)", &v).unwrap();
        assert_eq!(
            zero_cycle_two_torsion_certificate(&red, &l, &pt(&[1, -1, 5, 7]), &pt(&[1, -1, 0, 0])),
            Err(Error::PlaneInSurface)
        );
    }
}
