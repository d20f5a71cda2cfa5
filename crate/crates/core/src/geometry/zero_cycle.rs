//! `2(P - Q) = 0` on a cubic surface through a line `L`: the plane spanned
//! by `P` and `L` cuts out `L` plus a conic `K`; on `K` the divisor `2P` is
//! cut by the tangent at `P`, and `K . L` moves to `2Q` on `L`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{check_cubic, dot, linalg, verify_line_in_cubic, LineInSpace};
use crate::arith::{fmt_rat, parse_rat, Rat};
use crate::error::{Error, Result};
use crate::poly::{matrix::rat_determinant, parse_poly, vars, MPoly, Vars};

/// A rational function `num / den` (forms of equal degree in the ambient
/// coordinates) on the curve parameterized by `param` (binary forms in
/// `s, t`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFunction {
    pub label: String,
    pub param: Vec<MPoly>,
    pub num: MPoly,
    pub den: MPoly,
}

impl CurveFunction {
    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "param": self.param.iter().map(MPoly::to_text).collect::<Vec<_>>(),
            "num": self.num.to_text(),
            "den": self.den.to_text(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionKind {
    /// `P` lies on `L`.
    PointOnLine,
    /// The residual conic is smooth.
    SmoothConic,
    /// The residual conic is a pair of rational lines; only the one through
    /// `P` is used.
    LinePair,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCycleCertificate {
    pub surface: MPoly,
    pub line: LineInSpace,
    pub p: Vec<Rat>,
    pub q: Vec<Rat>,
    pub kind: SectionKind,
    /// Linear form of the plane through `P` and `L`.
    pub plane: Option<Vec<Rat>>,
    /// Residual conic in the plane coordinates `a, b, c` of
    /// `a r0 + b r1 + c P`.
    pub conic: Option<MPoly>,
    pub functions: Vec<CurveFunction>,
}

impl ZeroCycleCertificate {
    pub fn to_json(&self) -> Value {
        let pt = |v: &[Rat]| v.iter().map(fmt_rat).collect::<Vec<_>>();
        json!({
            "surface": self.surface.to_text(),
            "coordinates": self.surface.vars().to_vec(),
            "line": self.line.to_json(),
            "p": pt(&self.p),
            "q": pt(&self.q),
            "kind": format!("{:?}", self.kind),
            "plane": self.plane.as_ref().map(|h| pt(h)),
            "conic": self.conic.as_ref().map(MPoly::to_text),
            "functions": self.functions.iter().map(CurveFunction::to_json).collect::<Vec<_>>(),
            "target": "2(P - Q)",
        })
    }
}

impl ZeroCycleCertificate {
    /// Reads the certificate back; nothing derived is trusted, the checker
    /// recomputes all divisors.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidInput(format!("certificate field `{what}` missing or malformed"));
        let text = |v: &Value, key: &str| -> Result<String> {
            v.get(key).and_then(Value::as_str).map(str::to_string).ok_or_else(|| bad(key))
        };
        let texts = |v: &Value, key: &str| -> Result<Vec<String>> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(key))?
                .iter()
                .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad(key)))
                .collect()
        };
        let point = |key: &str| -> Result<Vec<Rat>> {
            texts(v, key)?.iter().map(|s| parse_rat(s).ok_or_else(|| bad(key))).collect()
        };
        let names = texts(v, "coordinates")?;
        let xv = vars(&names.iter().map(String::as_str).collect::<Vec<_>>());
        let surface = parse_poly(&text(v, "surface")?, &xv)?;
        let rows = v.get("line").and_then(Value::as_array).ok_or_else(|| bad("line"))?;
        let mut rs = Vec::new();
        for r in rows {
            let xs = r.as_array().ok_or_else(|| bad("line"))?;
            rs.push(xs.iter().map(|x| x.as_str().and_then(parse_rat).ok_or_else(|| bad("line"))).collect::<Result<Vec<_>>>()?);
        }
        let [r0, r1] = <[Vec<Rat>; 2]>::try_from(rs).map_err(|_| bad("line"))?;
        let line = LineInSpace::new(r0, r1)?;
        let kind = match text(v, "kind")?.as_str() {
            "PointOnLine" => SectionKind::PointOnLine,
            "SmoothConic" => SectionKind::SmoothConic,
            "LinePair" => SectionKind::LinePair,
            _ => return Err(bad("kind")),
        };
        let plane = match v.get("plane") {
            Some(Value::Null) | None => None,
            Some(_) => Some(point("plane")?),
        };
        let abc = vars(&["a", "b", "c"]);
        let conic = match v.get("conic") {
            Some(Value::String(s)) => Some(parse_poly(s, &abc)?),
            _ => None,
        };
        let st = param_ring();
        let mut functions = Vec::new();
        for f in v.get("functions").and_then(Value::as_array).ok_or_else(|| bad("functions"))? {
            functions.push(CurveFunction {
                label: text(f, "label")?,
                param: texts(f, "param")?.iter().map(|s| parse_poly(s, &st)).collect::<Result<Vec<_>>>()?,
                num: parse_poly(&text(f, "num")?, &xv)?,
                den: parse_poly(&text(f, "den")?, &xv)?,
            });
        }
        Ok(ZeroCycleCertificate { surface, line, p: point("p")?, q: point("q")?, kind, plane, conic, functions })
    }
}

fn param_ring() -> Vars {
    vars(&["s", "t"])
}

/// Linear form `sum h_i x_i`.
fn linear(ring: &Vars, h: &[Rat]) -> MPoly {
    let mut f = MPoly::zero(ring);
    for (i, c) in h.iter().enumerate() {
        f = &f + &MPoly::var(ring, i).scale(c);
    }
    f
}

/// `s u + t v` as binary forms.
fn pencil(ring: &Vars, u: &[Rat], v: &[Rat]) -> Vec<MPoly> {
    let (s, t) = (MPoly::var(ring, 0), MPoly::var(ring, 1));
    u.iter().zip(v).map(|(a, b)| &s.scale(a) + &t.scale(b)).collect()
}

fn square_ratio(num: MPoly, den: MPoly) -> (MPoly, MPoly) {
    (num.pow(2), den.pow(2))
}

pub fn zero_cycle_two_torsion_certificate(
    surface: &MPoly,
    line: &LineInSpace,
    p: &[Rat],
    q: &[Rat],
) -> Result<ZeroCycleCertificate> {
    check_cubic(surface)?;
    if surface.nvars() != 4 || line.ambient() != 4 {
        return Err(Error::InvalidInput("a cubic surface needs 4 coordinates".into()));
    }
    if !verify_line_in_cubic(surface, line)? {
        return Err(Error::LineNotInX);
    }
    if p.len() != 4 || p.iter().all(Zero::is_zero) || !surface.eval(p).is_zero() {
        return Err(Error::InvalidPoint("P is not a point of the surface".into()));
    }
    let (aq, bq) = line
        .coordinates_of(q)
        .ok_or_else(|| Error::InvalidPoint("Q is not a point of L".into()))?;
    let xv = surface.vars().clone();
    let st = param_ring();
    let [r0, r1] = line.rows().clone();

    if let Some((ap, bp)) = line.coordinates_of(p) {
        // P - Q is already principal on L.
        let extra = linalg::complete_basis(&[r0.clone(), r1.clone()], 4);
        let forms = dual_forms(&xv, &[r0.clone(), r1.clone(), unit(extra[0]), unit(extra[1])])?;
        let (num, den) = square_ratio(
            &forms[0].scale(&bp) - &forms[1].scale(&ap),
            &forms[0].scale(&bq) - &forms[1].scale(&aq),
        );
        return Ok(ZeroCycleCertificate {
            surface: surface.clone(),
            line: line.clone(),
            p: p.to_vec(),
            q: q.to_vec(),
            kind: SectionKind::PointOnLine,
            plane: None,
            conic: None,
            functions: vec![CurveFunction { label: "L".into(), param: pencil(&st, &r0, &r1), num, den }],
        });
    }

    let plane = linalg::nullspace(&[r0.clone(), r1.clone(), p.to_vec()], 4).remove(0);
    let abc = vars(&["a", "b", "c"]);
    let images: Vec<MPoly> = (0..4)
        .map(|i| {
            &(&MPoly::var(&abc, 0).scale(&r0[i]) + &MPoly::var(&abc, 1).scale(&r1[i]))
                + &MPoly::var(&abc, 2).scale(&p[i])
        })
        .collect();
    let section = surface.substitute(&images);
    if section.is_zero() {
        return Err(Error::PlaneInSurface);
    }
    let conic = section.div_exact(&MPoly::var(&abc, 2)).expect("L lies in the section");
    let extra = linalg::complete_basis(&[r0.clone(), r1.clone(), p.to_vec()], 4);
    let forms = dual_forms(&xv, &[r0.clone(), r1.clone(), p.to_vec(), unit(extra[0])])?;
    let (fa, fb, fc) = (&forms[0], &forms[1], &forms[2]);
    let q_form = &fa.scale(&bq) - &fb.scale(&aq);

    let gram: Vec<Vec<Rat>> = (0..3)
        .map(|i| (0..3).map(|j| conic.derivative(i).derivative(j).eval(&[Rat::zero(), Rat::zero(), Rat::zero()])).collect())
        .collect();
    let mut functions = Vec::new();
    let kind;
    if !rat_determinant(&gram).is_zero() {
        kind = SectionKind::SmoothConic;
        // K = c K1(a, b) + K2(a, b); lines through P meet K again at
        // (s K1, t K1, -K2).
        let k1 = conic.coeff_in(2, 1);
        let k2 = conic.coeff_in(2, 0);
        let (s, t) = (MPoly::var(&st, 0), MPoly::var(&st, 1));
        let on_st = |f: &MPoly| f.substitute(&[s.clone(), t.clone(), MPoly::zero(&st)]);
        let (k1s, k2s) = (on_st(&k1), on_st(&k2));
        let param: Vec<MPoly> = (0..4)
            .map(|i| &(&k1s * &(&s.scale(&r0[i]) + &t.scale(&r1[i]))) - &k2s.scale(&p[i]))
            .collect();
        let in_x = |f: &MPoly| f.substitute(&[fa.clone(), fb.clone(), fc.clone()]);
        functions.push(CurveFunction { label: "K".into(), param, num: in_x(&k1), den: fc.clone() });
        functions.push(CurveFunction {
            label: "L".into(),
            param: pencil(&st, &r0, &r1),
            num: in_x(&k2),
            den: q_form.pow(2),
        });
    } else {
        let kernel = linalg::nullspace(&gram, 3);
        if kernel.len() != 1 || (kernel[0][0].is_zero() && kernel[0][1].is_zero()) {
            return Err(Error::DegenerateConic("P is a singular point of the residual conic".into()));
        }
        kind = SectionKind::LinePair;
        let (a0, b0) = (kernel[0][0].clone(), kernel[0][1].clone());
        let r: Vec<Rat> = (0..4).map(|i| &a0 * &r0[i] + &b0 * &r1[i]).collect();
        let (num, den) = square_ratio(&fa.scale(&a0) + &fb.scale(&b0), fc.clone());
        functions.push(CurveFunction { label: "M".into(), param: pencil(&st, p, &r), num, den });
        let (num, den) = square_ratio(&fa.scale(&b0) - &fb.scale(&a0), q_form);
        functions.push(CurveFunction { label: "L".into(), param: pencil(&st, &r0, &r1), num, den });
    }
    debug_assert!(dot(&plane, p).is_zero());
    Ok(ZeroCycleCertificate {
        surface: surface.clone(),
        line: line.clone(),
        p: p.to_vec(),
        q: q.to_vec(),
        kind,
        plane: Some(plane),
        conic: Some(conic),
        functions,
    })
}

fn unit(i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); 4];
    v[i] = Rat::one();
    v
}

/// Linear forms taking the coordinates with respect to the given basis.
fn dual_forms(ring: &Vars, basis: &[Vec<Rat>]) -> Result<Vec<MPoly>> {
    let cols: Vec<Vec<Rat>> = (0..4).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    let inv = linalg::inverse(&cols).ok_or_else(|| Error::InvalidInput("dependent basis".into()))?;
    Ok(inv.iter().map(|row| linear(ring, row)).collect())
}
