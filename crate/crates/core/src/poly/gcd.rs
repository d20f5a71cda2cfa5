//! Multivariate gcd over Q by recursive primitive polynomial remainder
//! sequences. Adequate for the low degrees met in the pipeline.

use super::mpoly::MPoly;

/// Content with respect to variable `i`: gcd of the coefficients of the
/// powers of `x_i`, normalized primitive.
pub fn content_in(f: &MPoly, i: usize) -> MPoly {
    let d = f.degree_in(i);
    let mut g = MPoly::zero(f.vars());
    for k in 0..=d.max(0) {
        let c = f.coeff_in(i, k as u16);
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

/// Greatest common divisor, normalized to integer coefficients with no
/// common factor and positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    if f.is_constant() || g.is_constant() {
        return MPoly::one(f.vars());
    }
    let sf = f.support_vars();
    let sg = g.support_vars();
    let i = *sf.iter().chain(sg.iter()).min().unwrap();
    if !sf.contains(&i) {
        return gcd(f, &content_in(g, i));
    }
    if !sg.contains(&i) {
        return gcd(&content_in(f, i), g);
    }
    let cf = content_in(f, i);
    let cg = content_in(g, i);
    let c = gcd(&cf, &cg);
    let mut a = f.div_exact(&cf).expect("content divides").primitive();
    let mut b = g.div_exact(&cg).expect("content divides").primitive();
    if a.degree_in(i) < b.degree_in(i) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.degree_in(i) == 0 {
            return c.primitive();
        }
        let r = a.prem(&b, i);
        if r.is_zero() {
            let pb = b.div_exact(&content_in(&b, i)).expect("content divides");
            return (&c * &pb).primitive();
        }
        a = b;
        b = r.div_exact(&content_in(&r, i)).expect("content divides").primitive();
    }
}

pub fn lcm(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() || g.is_zero() {
        return MPoly::zero(f.vars());
    }
    let d = gcd(f, g);
    (&f.div_exact(&d).unwrap() * g).primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::mpoly::vars;
    use crate::poly::parse::parse_poly;

    #[test]
    fn bivariate_gcd() {
        let r = vars(&["x", "y"]);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let a = p("(x^2 + y + 1)*(x - 3*y)^2");
        let b = p("(x^2 + y + 1)*(x - 3*y)*(x + y)");
        assert_eq!(gcd(&a, &b), p("x^3 - 3*x^2*y + x*y - 3*y^2 + x - 3*y"));
        assert!(gcd(&p("x + y"), &p("x - y")).is_constant());
    }

    #[test]
    fn trivariate_gcd_with_content() {
        let r = vars(&["x", "y", "z"]);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let common = p("y*z + x - 1");
        let a = &common * &p("z^2 + x*y");
        let b = &common * &p("2*y - z");
        assert_eq!(gcd(&a, &b), common.primitive());
        assert_eq!(gcd(&p("6*x*y"), &p("4*x^2")), p("x"));
    }
}
