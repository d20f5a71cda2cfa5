//! Constructions on cubic hypersurfaces containing a rational line: the
//! tangent-line parameterization of degree 2 and 2-torsion relations
//! between points of a cubic surface.

mod checker;
pub(crate) mod linalg;
mod unirational;
mod zero_cycle;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::{fmt_rat, parse_rat, Rat};
use crate::error::{Error, Result};
use crate::poly::{vars, MPoly, Vars};

pub use checker::{check_zero_cycle_certificate, CycleCheck};
pub use unirational::{unirational_param_degree2, verify_degree_two_certificate, DegreeTwoMapCertificate};
pub use zero_cycle::{zero_cycle_two_torsion_certificate, CurveFunction, SectionKind, ZeroCycleCertificate};

/// A projective line given as the row span of two vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineInSpace {
    rows: [Vec<Rat>; 2],
}

impl LineInSpace {
    pub fn new(r0: Vec<Rat>, r1: Vec<Rat>) -> Result<Self> {
        if r0.len() != r1.len() || r0.len() < 2 {
            return Err(Error::InvalidInput("line rows must have equal length >= 2".into()));
        }
        if linalg::rank(&[r0.clone(), r1.clone()]) != 2 {
            return Err(Error::LineRankDeficient);
        }
        Ok(LineInSpace { rows: [r0, r1] })
    }

    pub fn ints(r0: &[i64], r1: &[i64]) -> Result<Self> {
        let f = |r: &[i64]| r.iter().map(|&x| Rat::from_integer(x.into())).collect();
        Self::new(f(r0), f(r1))
    }

    /// Two rows separated by `;`, entries by whitespace or commas.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<Rat>> = text
            .split(';')
            .map(|r| {
                r.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_rat(s).ok_or_else(|| Error::InvalidInput(format!("bad number `{s}`"))))
                    .collect()
            })
            .collect::<Result<_>>()?;
        match <[Vec<Rat>; 2]>::try_from(rows) {
            Ok([a, b]) => Self::new(a, b),
            Err(_) => Err(Error::InvalidInput("a line needs exactly two rows".into())),
        }
    }

    pub fn rows(&self) -> &[Vec<Rat>; 2] {
        &self.rows
    }

    /// Number of homogeneous coordinates of the ambient space.
    pub fn ambient(&self) -> usize {
        self.rows[0].len()
    }

    /// `s r0 + t r1` with `s, t` the two variables of `ring`.
    pub fn parameterization(&self, ring: &Vars) -> Vec<MPoly> {
        let (s, t) = (MPoly::var(ring, 0), MPoly::var(ring, 1));
        (0..self.ambient())
            .map(|i| &s.scale(&self.rows[0][i]) + &t.scale(&self.rows[1][i]))
            .collect()
    }

    /// `(a, b)` with `p = a r0 + b r1`, if `p` lies on the line.
    pub fn coordinates_of(&self, p: &[Rat]) -> Option<(Rat, Rat)> {
        if p.len() != self.ambient() {
            return None;
        }
        let cols: Vec<Vec<Rat>> = (0..p.len())
            .map(|i| vec![self.rows[0][i].clone(), self.rows[1][i].clone(), -p[i].clone()])
            .collect();
        let ns = linalg::nullspace(&cols, 3);
        let v = ns.into_iter().find(|v| !v[2].is_zero())?;
        let l = v[2].recip();
        Some((&v[0] * &l, &v[1] * &l))
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        self.coordinates_of(p).is_some()
    }

    pub fn to_json(&self) -> Value {
        json!(self.rows.iter().map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>()).collect::<Vec<_>>())
    }

    pub fn to_text(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Whether the cubic vanishes identically on the line.
pub fn verify_line_in_cubic(x: &MPoly, line: &LineInSpace) -> Result<bool> {
    if x.nvars() != line.ambient() {
        return Err(Error::WrongVariableCount { expected: x.nvars(), got: line.ambient() });
    }
    let st = vars(&["s", "t"]);
    Ok(x.substitute(&line.parameterization(&st)).is_zero())
}

/// Default coordinate names `x0, x1, ...`.
pub fn coordinate_vars(n: usize) -> Vars {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    vars(&refs)
}

pub(crate) fn check_cubic(x: &MPoly) -> Result<()> {
    if x.is_zero() || !x.is_homogeneous() || x.total_degree() != 3 {
        return Err(Error::NotHomogeneousDegree3);
    }
    Ok(())
}

pub(crate) fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Fermat cubic surface and its line `(s, -s, t, -t)`.
pub const FERMAT_SURFACE: &str = "x0^3 + x1^3 + x2^3 + x3^3";
pub const FERMAT_LINE: &str = "1 -1 0 0; 0 0 1 -1";
/// A cubic fourfold in `x0..x5` through the line `(s, -s, t, -t, 0, 0)`.
pub const FOURFOLD_WITH_LINE: &str = "x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3 + x0*x2*x4 + x1*x5^2 + x3*x4*x5";
pub const FOURFOLD_LINE: &str = "1 -1 0 0 0 0; 0 0 1 -1 0 0";
