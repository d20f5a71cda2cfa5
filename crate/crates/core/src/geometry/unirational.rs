//! Tangent lines along `L`: for `p` on `L` and a direction `w` in the
//! tangent hyperplane at `p`, the line `p + lambda w` meets `X` twice at `p`
//! and once more at `F(w) p - Q_p(w) w`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{check_cubic, linalg, verify_line_in_cubic, LineInSpace};
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::poly::{parse_poly, upoly::QPoly, vars, MPoly, Vars};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTwoMapCertificate {
    pub cubic: MPoly,
    pub line: LineInSpace,
    /// `s` moves along `L`, `t1..` are affine coordinates on the tangent
    /// directions.
    pub params: Vars,
    pub map: Vec<MPoly>,
    pub substitution_identity: MPoly,
    /// `sum_i dF/dx_i(r0 + r r1) * map_i`, whose roots in `r` are the points
    /// of `L` whose tangent hyperplane contains the image point.
    pub fiber_polynomial: MPoly,
    pub fiber_degree: i64,
    pub fiber_discriminant_nonzero: bool,
    /// `r - s` divides the fiber polynomial.
    pub contains_source: bool,
    /// `X` is smooth at every point of `L`.
    pub smooth_along_line: bool,
}

impl DegreeTwoMapCertificate {
    pub fn passes(&self) -> bool {
        self.substitution_identity.is_zero()
            && self.fiber_degree == 2
            && self.fiber_discriminant_nonzero
            && self.contains_source
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cubic": self.cubic.to_text(),
            "coordinates": self.cubic.vars().to_vec(),
            "line": self.line.to_json(),
            "params": self.params.to_vec(),
            "map": self.map.iter().map(MPoly::to_text).collect::<Vec<_>>(),
            "substitution_identity": self.substitution_identity.to_text(),
            "fiber_polynomial_terms": self.fiber_polynomial.len(),
            "fiber_degree": self.fiber_degree,
            "fiber_discriminant_nonzero": self.fiber_discriminant_nonzero,
            "contains_source": self.contains_source,
            "smooth_along_line": self.smooth_along_line,
            "passes": self.passes(),
        })
    }

    /// Rebuilds a certificate from its JSON form, recomputing every derived
    /// field from the cubic, the line and the map.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidInput(format!("certificate field `{what}` missing or malformed"));
        let strs = |key: &str| -> Result<Vec<String>> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(key))?
                .iter()
                .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad(key)))
                .collect()
        };
        let coords = strs("coordinates")?;
        let cv = vars(&coords.iter().map(String::as_str).collect::<Vec<_>>());
        let cubic = parse_poly(v.get("cubic").and_then(Value::as_str).ok_or_else(|| bad("cubic"))?, &cv)?;
        let rows = v.get("line").and_then(Value::as_array).ok_or_else(|| bad("line"))?;
        let text = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .map(|xs| xs.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(" "))
                    .ok_or_else(|| bad("line"))
            })
            .collect::<Result<Vec<_>>>()?
            .join(";");
        let line = LineInSpace::parse(&text)?;
        let pnames = strs("params")?;
        let params = vars(&pnames.iter().map(String::as_str).collect::<Vec<_>>());
        let map = strs("map")?.iter().map(|s| parse_poly(s, &params)).collect::<Result<Vec<_>>>()?;
        certify(cubic, line, params, map, None)
    }
}

/// Recomputes every check of the certificate from its cubic, line and map.
pub fn verify_degree_two_certificate(cert: &DegreeTwoMapCertificate) -> Result<bool> {
    let again = certify(cert.cubic.clone(), cert.line.clone(), cert.params.clone(), cert.map.clone(), None)?;
    Ok(again.passes())
}

fn param_vars(n: usize) -> Vars {
    let mut names = vec!["s".to_string()];
    names.extend((1..n).map(|i| format!("t{i}")));
    vars(&names.iter().map(String::as_str).collect::<Vec<_>>())
}

/// `r0 + s r1` with `s` the first variable of `ring`.
fn point_on_line(line: &LineInSpace, ring: &Vars) -> Vec<MPoly> {
    let s = MPoly::var(ring, 0);
    let [r0, r1] = line.rows();
    r0.iter()
        .zip(r1)
        .map(|(a, b)| &MPoly::constant(ring, a.clone()) + &s.scale(b))
        .collect()
}

fn as_univariate(f: &MPoly) -> QPoly {
    let mut c = vec![Rat::zero(); f.degree_in(0).max(0) as usize + 1];
    for (e, k) in f.terms() {
        c[e.0[0] as usize] += k;
    }
    QPoly::new(c)
}

pub fn unirational_param_degree2(x: &MPoly, line: &LineInSpace) -> Result<DegreeTwoMapCertificate> {
    check_cubic(x)?;
    let m = x.nvars();
    if m < 4 {
        return Err(Error::InvalidInput("need a cubic in at least 4 variables".into()));
    }
    if !verify_line_in_cubic(x, line)? {
        return Err(Error::LineNotInX);
    }
    let params = param_vars(m - 2);
    let p = point_on_line(line, &params);
    let partials: Vec<MPoly> = (0..m).map(|i| x.derivative(i)).collect();
    let g: Vec<MPoly> = partials.iter().map(|d| d.substitute(&p)).collect();
    if g.iter().all(MPoly::is_zero) {
        return Err(Error::TangencyDegenerate("the cubic is singular along L".into()));
    }
    let smooth = {
        let common = g.iter().fold(QPoly::zero(), |acc, gi| acc.gcd(&as_univariate(gi)));
        let at_inf: Vec<Rat> = partials.iter().map(|d| d.eval(&line.rows()[1])).collect();
        common.deg() == 0 && at_inf.iter().any(|v| !v.is_zero())
    };

    // Directions modulo p: u r1 + sum c_j e_j, cut down to the tangent
    // hyperplane by solving for the coordinate k.
    let basis = linalg::complete_basis(line.rows(), m);
    let k = *basis
        .iter()
        .filter(|&&j| !g[j].is_zero())
        .min_by_key(|&&j| (g[j].total_degree(), g[j].len()))
        .expect("nonzero gradient has a nonzero coordinate off L");
    let others: Vec<usize> = basis.iter().copied().filter(|&j| j != k).collect();
    let mut c: Vec<MPoly> = vec![MPoly::zero(&params); m];
    for (i, &j) in others.iter().enumerate() {
        c[j] = if i == 0 { MPoly::one(&params) } else { MPoly::var(&params, i + 1) };
    }
    let u = MPoly::var(&params, 1);
    let r1 = &line.rows()[1];
    let mut lin = MPoly::zero(&params);
    for &j in &others {
        lin = &lin + &(&c[j] * &g[j]);
    }
    let w: Vec<MPoly> = (0..m)
        .map(|i| {
            let mut wi = &g[k] * &(&u.scale(&r1[i]) + &c[i]);
            if i == k {
                wi = &wi - &lin;
            }
            wi
        })
        .collect();

    let fw = x.substitute(&w);
    let mut q = MPoly::zero(&params);
    let half = Rat::new(1.into(), 2.into());
    for i in 0..m {
        for j in i..m {
            let h = partials[i].derivative(j);
            if h.is_zero() {
                continue;
            }
            let h = h.substitute(&p);
            let term = &(&h * &w[i]) * &w[j];
            q = &q + &if i == j { term.scale(&half) } else { term };
        }
    }
    if q.is_zero() {
        return Err(Error::TangencyDegenerate("the residual point stays on L".into()));
    }
    let map: Vec<MPoly> = (0..m).map(|i| &(&fw * &p[i]) - &(&q * &w[i])).collect();
    let scale = common_content(&map).recip();
    let map = map.iter().map(|f| f.scale(&scale)).collect::<Vec<_>>();
    certify(x.clone(), line.clone(), params, map, Some(smooth))
}

/// Positive rational `c` with `map / c` integral and primitive as a whole.
fn common_content(map: &[MPoly]) -> Rat {
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    for (_, c) in map.iter().flat_map(|f| f.terms()) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        Rat::one()
    } else {
        Rat::new(num, den)
    }
}

fn certify(
    cubic: MPoly,
    line: LineInSpace,
    params: Vars,
    map: Vec<MPoly>,
    smooth: Option<bool>,
) -> Result<DegreeTwoMapCertificate> {
    check_cubic(&cubic)?;
    let m = cubic.nvars();
    if map.len() != m || line.ambient() != m || params.len() != m - 2 {
        return Err(Error::InvalidInput("map, line and cubic dimensions disagree".into()));
    }
    if !verify_line_in_cubic(&cubic, &line)? {
        return Err(Error::LineNotInX);
    }
    let substitution_identity = cubic.substitute(&map);

    let mut names: Vec<String> = params.to_vec();
    names.push("r".into());
    let fv = vars(&names.iter().map(String::as_str).collect::<Vec<_>>());
    let ridx = names.len() - 1;
    let rvar = MPoly::var(&fv, ridx);
    let [r0, r1] = line.rows();
    let pr: Vec<MPoly> = (0..m).map(|i| &MPoly::constant(&fv, r0[i].clone()) + &rvar.scale(&r1[i])).collect();
    let mut fib = MPoly::zero(&fv);
    for i in 0..m {
        let gi = cubic.derivative(i).substitute(&pr);
        fib = &fib + &(&gi * &map[i].to_ring(&fv)?);
    }
    let fiber_degree = fib.degree_in(ridx);
    let disc_nonzero = fiber_degree == 2 && {
        let (c2, c1, c0) = (fib.coeff_in(ridx, 2), fib.coeff_in(ridx, 1), fib.coeff_in(ridx, 0));
        !(&(&c1 * &c1) - &(&c2 * &c0).scale(&Rat::from_integer(4.into()))).is_zero()
    };
    let contains_source = !fib.is_zero() && fib.div_exact(&(&rvar - &MPoly::var(&fv, 0))).is_some();
    let smooth_along_line = match smooth {
        Some(b) => b,
        None => {
            let st = point_on_line(&line, &params);
            let g: Vec<MPoly> = (0..m).map(|i| cubic.derivative(i).substitute(&st)).collect();
            let common = g.iter().fold(QPoly::zero(), |acc, gi| acc.gcd(&as_univariate(gi)));
            let at_inf = (0..m).any(|i| !cubic.derivative(i).eval(r1).is_zero());
            common.deg() == 0 && at_inf
        }
    };
    Ok(DegreeTwoMapCertificate {
        cubic,
        line,
        params,
        map,
        substitution_identity,
        fiber_polynomial: fib,
        fiber_degree,
        fiber_discriminant_nonzero: disc_nonzero,
        contains_source,
        smooth_along_line,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{coordinate_vars, FERMAT_LINE, FERMAT_SURFACE};

    #[test]
    fn fermat_surface() {
        let x = parse_poly(FERMAT_SURFACE, &coordinate_vars(4)).unwrap();
        let l = LineInSpace::parse(FERMAT_LINE).unwrap();
        let cert = unirational_param_degree2(&x, &l).unwrap();
        assert!(cert.substitution_identity.is_zero());
        assert_eq!(cert.fiber_degree, 2);
        assert!(cert.passes() && cert.smooth_along_line);
        assert!(verify_degree_two_certificate(&cert).unwrap());
        let back = DegreeTwoMapCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn singular_along_line() {
        let x = parse_poly("x0^2*x2 + x1^2*x3 + x0*x1*x2 + x0^3", &coordinate_vars(4)).unwrap();
        let l = LineInSpace::ints(&[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap();
        assert!(matches!(unirational_param_degree2(&x, &l), Err(Error::TangencyDegenerate(_))));
        let l = LineInSpace::ints(&[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
        assert_eq!(unirational_param_degree2(&x, &l), Err(Error::LineNotInX));
    }
}
