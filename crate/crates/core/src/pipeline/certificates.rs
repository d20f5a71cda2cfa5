//! Norm certificates, the symbol identities behind the vanishing of
//! `alpha u (f)`, and fiberwise consistency checks.

use num_traits::Zero;
use serde_json::{json, Value};

use super::CliffordSymbolData;
use crate::arith::{fmt_rat, Rat};
use crate::error::{Error, Result};
use crate::forms::{clifford_invariant, diagonalize_rat, DiagForm};
use crate::milnor::{is_trivial_h2_q, is_trivial_h3_q, splits_over_quadratic, FieldCtx, SquareClass, Symbol, SymbolSum};
use crate::poly::{is_irreducible, parse_poly, Evaluation, MPoly, RatFunc};

/// Claim: `f = g1^2 - d g2^2` and `div(f) = C - 2n L`. All functions live
/// in the chart ring; `curve` is homogeneous in `x0, x1, x2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormCertificate {
    pub f: RatFunc,
    pub g1: RatFunc,
    pub g2: RatFunc,
    pub d: RatFunc,
    pub curve: MPoly,
    pub n: u32,
}

impl NormCertificate {
    /// Functions are given as `"poly"` or `["num", "den"]` in the chart
    /// coordinates, `curve` in `x0, x1, x2`.
    pub fn from_json(v: &Value, chart: &crate::poly::Vars) -> Result<Self> {
        let bad = |what: &str| Error::InvalidInput(format!("norm certificate field `{what}` missing or malformed"));
        let func = |key: &str| -> Result<RatFunc> {
            match v.get(key) {
                Some(Value::String(s)) => Ok(RatFunc::from_poly(parse_poly(s, chart)?)),
                Some(Value::Array(xs)) if xs.len() == 2 => {
                    let part = |x: &Value| x.as_str().ok_or_else(|| bad(key)).and_then(|s| parse_poly(s, chart));
                    RatFunc::new(part(&xs[0])?, part(&xs[1])?)
                }
                _ => Err(bad(key)),
            }
        };
        let curve = v.get("curve").and_then(Value::as_str).ok_or_else(|| bad("curve"))?;
        let n = v.get("n").and_then(Value::as_u64).and_then(|n| u32::try_from(n).ok()).ok_or_else(|| bad("n"))?;
        Ok(NormCertificate {
            f: func("f")?,
            g1: func("g1")?,
            g2: func("g2")?,
            d: func("d")?,
            curve: parse_poly(curve, &super::base_vars())?,
            n,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormCheck {
    /// `d` represents the discriminant class of the bundle.
    pub d_matches: bool,
    pub norm_ok: bool,
    pub divisor_ok: bool,
    pub detail: Vec<String>,
}

impl NormCheck {
    pub fn passed(&self) -> bool {
        self.d_matches && self.norm_ok && self.divisor_ok
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d_matches": self.d_matches,
            "norm_ok": self.norm_ok,
            "divisor_ok": self.divisor_ok,
            "passed": self.passed(),
            "detail": self.detail,
        })
    }
}

pub fn check_norm_certificate(cert: &NormCertificate, cs: &CliffordSymbolData) -> Result<NormCheck> {
    let cv = &cs.chart.vars;
    let mut detail = Vec::new();
    for (name, r) in [("f", &cert.f), ("g1", &cert.g1), ("g2", &cert.g2), ("d", &cert.d)] {
        if r.vars() != cv {
            return Err(Error::InvalidInput(format!("{name} is not in the chart ring {cv:?}")));
        }
    }
    let d_matches = !cert.d.is_zero() && SquareClass::of(&cs.ctx, cert.d.clone())? == cs.d;
    if !d_matches {
        detail.push("d does not represent the discriminant class".into());
    }
    let rhs = cert.g1.mul(&cert.g1).sub(&cert.d.mul(&cert.g2).mul(&cert.g2));
    let norm_ok = rhs == cert.f && !cert.f.is_zero();
    if !norm_ok {
        detail.push(format!("NormMismatch: g1^2 - d g2^2 = {rhs}, f = {}", cert.f));
    }
    let divisor_ok = divisor_is(cert, cs, &mut detail)?;
    Ok(NormCheck { d_matches, norm_ok, divisor_ok, detail })
}

/// In the chart `div(f) = C - 2n L` means: `f` is a constant times the
/// chart equation of `C`, `C` is irreducible and does not contain `L`, and
/// `deg C = 2n`.
fn divisor_is(cert: &NormCertificate, cs: &CliffordSymbolData, detail: &mut Vec<String>) -> Result<bool> {
    let c = cert.curve.to_ring(&super::base_vars())?;
    if c.is_zero() || !c.is_homogeneous() {
        detail.push("DivisorMismatch: curve is not a nonzero form".into());
        return Ok(false);
    }
    let cc = cs.chart.apply(&c);
    if cc.total_degree() != c.total_degree() {
        detail.push("DivisorMismatch: curve contains the line L".into());
        return Ok(false);
    }
    if !is_irreducible(&cc)? {
        detail.push("DivisorMismatch: curve is reducible".into());
        return Ok(false);
    }
    if c.total_degree() != 2 * cert.n as i64 {
        detail.push(format!("DivisorMismatch: deg C = {} but 2n = {}", c.total_degree(), 2 * cert.n));
        return Ok(false);
    }
    let f = &cert.f;
    let ok = f.den().is_constant()
        && f.num().div_exact(&cc).is_some_and(|q| q.is_constant() && !q.is_zero());
    if !ok {
        detail.push(format!("DivisorMismatch: f = {f} is not a constant multiple of C"));
    }
    Ok(ok)
}

/// `(ab, ad, f) = (a,b,f) + (a,a,f) + (ab,d,f)` as normal forms.
pub fn verify_main_identity(a: &SquareClass, b: &SquareClass, d: &SquareClass, f: &SquareClass) -> Result<bool> {
    let ctx = a.ctx().clone();
    let ab = a.mul(b)?;
    let ad = a.mul(d)?;
    let lhs = SymbolSum::from_symbols(&ctx, &[Symbol::new(vec![ab.clone(), ad, f.clone()])?])?;
    let rhs = SymbolSum::from_symbols(
        &ctx,
        &[
            Symbol::new(vec![a.clone(), b.clone(), f.clone()])?,
            Symbol::new(vec![a.clone(), a.clone(), f.clone()])?,
            Symbol::new(vec![ab, d.clone(), f.clone()])?,
        ],
    )?;
    Ok(lhs == rhs)
}

/// Triviality over Q of the three summands of `alpha u (f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub f: Rat,
    /// `(a, b, f)`, trivial by the isotropy of `<1,-a,-b,abd>`.
    pub abf_trivial: bool,
    /// `(a, a, f) = (-1, a, f)`.
    pub aaf_trivial: bool,
    /// `(d, f)` in the Brauer group.
    pub df_trivial: bool,
    /// `(ab, d, f)`, decided directly.
    pub abdf_trivial: bool,
}

impl VanishingReport {
    pub fn all_trivial(&self) -> bool {
        self.abf_trivial && self.aaf_trivial && self.abdf_trivial
    }

    pub fn to_json(&self) -> Value {
        json!({
            "f": fmt_rat(&self.f),
            "abf_trivial": self.abf_trivial,
            "aaf_trivial": self.aaf_trivial,
            "df_trivial": self.df_trivial,
            "abdf_trivial": self.abdf_trivial,
            "all_trivial": self.all_trivial(),
        })
    }
}

/// Witnesses: `x^2 - a y^2 = b (u^2 - a d v^2) != 0` and `f = g^2 - d h^2`.
pub fn vanishing_given_norm(a: &Rat, b: &Rat, d: &Rat, iso: [&Rat; 4], norm: [&Rat; 2]) -> Result<VanishingReport> {
    let [x, y, u, v] = iso;
    let lhs = x * x - a * y * y;
    let rhs = b * &(u * u - a * d * v * v);
    if lhs != rhs || lhs.is_zero() {
        return Err(Error::WitnessInvalid(format!(
            "x^2 - a y^2 = {} but b (u^2 - a d v^2) = {}",
            fmt_rat(&lhs),
            fmt_rat(&rhs)
        )));
    }
    let [g, h] = norm;
    let f = g * g - d * h * h;
    if f.is_zero() {
        return Err(Error::WitnessInvalid("g^2 - d h^2 = 0".into()));
    }
    let q = FieldCtx::Rationals;
    let (ca, cb, cd, cf) = (SquareClass::rat(a)?, SquareClass::rat(b)?, SquareClass::rat(d)?, SquareClass::rat(&f)?);
    let h3 = |xs: [&SquareClass; 3]| -> Result<bool> {
        let s = Symbol::new(xs.iter().map(|c| (*c).clone()).collect())?;
        is_trivial_h3_q(&SymbolSum::from_symbols(&q, &[s])?)
    };
    let ab = ca.mul(&cb)?;
    let df = SymbolSum::from_symbols(&q, &[Symbol::new(vec![cd.clone(), cf.clone()])?])?;
    Ok(VanishingReport {
        abf_trivial: h3([&ca, &cb, &cf])?,
        aaf_trivial: h3([&ca, &ca, &cf])?,
        df_trivial: is_trivial_h2_q(&df)?,
        abdf_trivial: h3([&ab, &cd, &cf])?,
        f,
    })
}

/// Constant quaternion classes split by the function field of the quadric:
/// `{0, c(Q)}` for trivial discriminant or a cone over a conic, else `{0}`.
pub fn split_kernel_decision(q: &DiagForm) -> Result<Vec<SymbolSum>> {
    let zero = SymbolSum::zero(q.ctx().clone(), 2);
    let with_c = |c: SymbolSum| if c.is_zero() { vec![zero.clone()] } else { vec![zero.clone(), c] };
    match q.rank() {
        3 => Ok(with_c(clifford_invariant(q)?)),
        4 if q.signed_discriminant().is_trivial() => Ok(with_c(clifford_invariant(q)?)),
        4 => Ok(vec![zero]),
        n => Err(Error::UnsupportedRank(n)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPoint {
    pub point: Vec<Rat>,
    pub fiber: DiagForm,
    /// The fiber discriminant is a square (the point lifts to the double
    /// cover).
    pub disc_trivial: bool,
    pub alpha: SymbolSum,
    pub clifford: SymbolSum,
    pub alpha_matches_clifford: bool,
    /// Membership in the split kernel of the fiber over Q.
    pub alpha_in_kernel: bool,
    /// Membership in the split kernel of the fiber over the residue field
    /// `Q(sqrt(d(P)))` of the point of the double cover.
    pub alpha_in_kernel_on_cover: bool,
}

impl FiberPoint {
    pub fn to_json(&self) -> Value {
        json!({
            "point": self.point.iter().map(fmt_rat).collect::<Vec<_>>(),
            "fiber": self.fiber.to_json(),
            "disc_trivial": self.disc_trivial,
            "alpha": self.alpha.to_json(),
            "clifford": self.clifford.to_json(),
            "alpha_matches_clifford": self.alpha_matches_clifford,
            "alpha_in_kernel": self.alpha_in_kernel,
            "alpha_in_kernel_on_cover": self.alpha_in_kernel_on_cover,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSuiteReport {
    pub points: Vec<FiberPoint>,
}

impl FiberSuiteReport {
    pub fn to_json(&self) -> Value {
        json!({ "points": self.points.iter().map(FiberPoint::to_json).collect::<Vec<_>>() })
    }
}

fn eval_nonzero(f: &RatFunc, pt: &[Rat], name: &str) -> Result<Rat> {
    match f.eval(pt) {
        Evaluation::Defined(v) if !v.is_zero() => Ok(v),
        _ => Err(Error::BadPoint(format!("{name} has a zero or pole at the point"))),
    }
}

fn fiber_point(cs: &CliffordSymbolData, p: &[Rat]) -> Result<FiberPoint> {
    if p.len() != 3 || p.iter().all(|x| x.is_zero()) {
        return Err(Error::BadPoint("need a point of P^2".into()));
    }
    let uv = cs.chart.coordinates(p)?;
    if cs.delta_chart.eval(&uv).is_zero() {
        return Err(Error::BadPoint("point lies on the discriminant curve".into()));
    }
    let m = cs.matrix.eval(&uv);
    let fiber = diagonalize_rat(&m, None)?.form;
    let a = eval_nonzero(cs.a_value(), &uv, "a")?;
    let b = eval_nonzero(cs.b_value(), &uv, "b")?;
    let d = eval_nonzero(&cs.d_value(), &uv, "d")?;
    let q = FieldCtx::Rationals;
    let alpha = SymbolSum::from_symbols(
        &q,
        &[Symbol::new(vec![SquareClass::rat(&-(&a * &b))?, SquareClass::rat(&-(&a * &d))?])?],
    )?;
    let clifford = clifford_invariant(&fiber)?;
    let alpha_matches_clifford = is_trivial_h2_q(&alpha.add(&clifford)?)?;
    let mut alpha_in_kernel = false;
    for k in split_kernel_decision(&fiber)? {
        if is_trivial_h2_q(&alpha.add(&k)?)? {
            alpha_in_kernel = true;
        }
    }
    // Over Q(sqrt(d)) the fiber has square discriminant, so the kernel there
    // is {0, c(Q)}.
    let alpha_in_kernel_on_cover =
        splits_over_quadratic(&alpha, &d)? || splits_over_quadratic(&alpha.add(&clifford)?, &d)?;
    Ok(FiberPoint {
        point: p.to_vec(),
        alpha_in_kernel_on_cover,
        disc_trivial: fiber.signed_discriminant().is_trivial(),
        fiber,
        alpha,
        clifford,
        alpha_matches_clifford,
        alpha_in_kernel,
    })
}

/// Specializes the bundle at rational points of `P^2 - (D u L)` and compares
/// alpha with the Clifford invariant and the split kernel of each fiber.
pub fn fiber_specialization_suite(cs: &CliffordSymbolData, points: &[Vec<Rat>]) -> Result<FiberSuiteReport> {
    let points = points.iter().map(|p| fiber_point(cs, p)).collect::<Result<Vec<_>>>()?;
    Ok(FiberSuiteReport { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::pipeline::{clifford_symbol, extract_bundle, parse_and_validate};

    #[test]
    fn kernel_examples() {
        let k = split_kernel_decision(&DiagForm::ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(k.len(), 2);
        assert_eq!(k[1], SymbolSum::from_symbol(&Symbol::ints(&[-1, -1])).unwrap());
        assert_eq!(split_kernel_decision(&DiagForm::ints(&[1, 1, 1, 2])).unwrap().len(), 1);
        let k = split_kernel_decision(&DiagForm::ints(&[1, 1, 1])).unwrap();
        assert_eq!(k[1], SymbolSum::from_symbol(&Symbol::ints(&[-1, -1])).unwrap());
        assert_eq!(split_kernel_decision(&DiagForm::ints(&[1, 1])), Err(Error::UnsupportedRank(2)));
    }

    #[test]
    fn main_identity_examples() {
        let c = SquareClass::int;
        assert!(verify_main_identity(&c(2), &c(3), &c(5), &c(7)).unwrap());
        assert!(verify_main_identity(&c(1), &c(-3), &c(5), &c(-1)).unwrap());
        assert!(verify_main_identity(&c(-6), &c(10), &c(1), &c(15)).unwrap());
    }

    #[test]
    fn vanishing_examples() {
        let r = rat_int;
        let rep = vanishing_given_norm(&r(-1), &r(1), &r(-1), [&r(1), &r(0), &r(1), &r(0)], [&r(1), &r(2)]).unwrap();
        assert_eq!(rep.f, r(5));
        assert!(rep.all_trivial());
        let rep = vanishing_given_norm(&r(2), &r(7), &r(3), [&r(3), &r(1), &r(1), &r(0)], [&r(1), &r(0)]).unwrap();
        assert!(rep.all_trivial());
        assert!(matches!(
            vanishing_given_norm(&r(2), &r(7), &r(3), [&r(3), &r(1), &r(2), &r(0)], [&r(1), &r(0)]),
            Err(Error::WitnessInvalid(_))
        ));
    }

    fn toy() -> CliffordSymbolData {
        // Delta / a00^6 = 16 * 7 in the chart x0 = 1, so d is the constant 7.
        let x = parse_and_validate("x0*y0^2 + x0*y1^2 + 7*x0*y2^2 + x0^3").unwrap();
        clifford_symbol(&extract_bundle(&x)).unwrap()
    }

    #[test]
    fn norm_certificates() {
        let cs = toy();
        let v = cs.chart.vars.clone();
        let p = |s: &str| RatFunc::from_poly(crate::poly::parse_poly(s, &v).unwrap());
        let curve = crate::poly::parse_poly("x1^2 - 7*x2^2", &crate::pipeline::base_vars()).unwrap();
        let good = NormCertificate { f: p("x1^2 - 7*x2^2"), g1: p("x1"), g2: p("x2"), d: p("7"), curve: curve.clone(), n: 1 };
        assert!(check_norm_certificate(&good, &cs).unwrap().passed());
        let parsed = NormCertificate::from_json(
            &json!({"f": "x1^2 - 7*x2^2", "g1": "x1", "g2": ["x2", "1"], "d": "7", "curve": "x1^2 - 7*x2^2", "n": 1}),
            &v,
        )
        .unwrap();
        assert_eq!(parsed, good);
        let bad = NormCertificate { f: p("x1^2 - 7*x2^2 + 1"), ..good.clone() };
        let r = check_norm_certificate(&bad, &cs).unwrap();
        assert!(!r.norm_ok && r.detail[0].starts_with("NormMismatch"));
        let extra = NormCertificate {
            f: p("(x1^2 - 7*x2^2)*(x1 + 1)^2"),
            g1: p("x1^2 + x1"),
            g2: p("x1*x2 + x2"),
            ..good.clone()
        };
        let r = check_norm_certificate(&extra, &cs).unwrap();
        assert!(r.norm_ok && !r.divisor_ok);
    }

    #[test]
    fn fiber_suite_on_toy() {
        let cs = toy();
        let pts = vec![vec![rat_int(1), rat_int(2), rat_int(3)]];
        let rep = fiber_specialization_suite(&cs, &pts).unwrap();
        assert!(rep.points[0].alpha_matches_clifford);
        assert!(rep.points[0].alpha_in_kernel_on_cover);
        let on_l = vec![vec![rat_int(0), rat_int(1), rat_int(1)]];
        assert!(matches!(fiber_specialization_suite(&cs, &on_l), Err(Error::BadPoint(_))));
    }
}
