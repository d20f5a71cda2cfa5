//! Residues of alpha at every candidate place, with verdicts that never
//! overstate: an exact square witness, a nonsquare value at a smooth point
//! over F_p, or a probabilistic verdict with its confidence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::CliffordSymbolData;
use crate::arith::fp::FpPoly;
use crate::arith::integer::{is_prime_u64, legendre, legendre_u64, mul_mod, pow_mod, primes_from, rat_mod_p};
use crate::error::{Error, Result};
use crate::milnor::{tame_residue, FieldCtx, Place, SquareClass, SymbolSum};
use crate::poly::{factor, MPoly, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The residue normalizes to the trivial class.
    Trivial { witness: String },
    /// The residue takes a nonsquare value at a smooth point of the
    /// reduction mod `prime`, where it is regular and nonzero.
    NontrivialWitness { point: Vec<(String, u64)>, prime: u64, value: u64 },
    /// `trials` independent specializations all gave squares.
    ProbablyTrivial { trials: u32 },
    /// Too few usable specializations were found.
    NoGoodSpecializationFound { attempts: u32 },
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Trivial { .. } => "Trivial",
            Verdict::NontrivialWitness { .. } => "NontrivialWitness",
            Verdict::ProbablyTrivial { .. } => "ProbablyTrivial",
            Verdict::NoGoodSpecializationFound { .. } => "NoGoodSpecializationFound",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Verdict::Trivial { witness } => json!({"kind": self.tag(), "witness": witness}),
            Verdict::NontrivialWitness { point, prime, value } => json!({
                "kind": self.tag(),
                "point": point.iter().map(|(v, x)| json!([v, x])).collect::<Vec<_>>(),
                "prime": prime,
                "value": value,
            }),
            Verdict::ProbablyTrivial { trials } => json!({
                "kind": self.tag(),
                "trials": trials,
                "confidence": format!("1 - 2^-{trials}"),
            }),
            Verdict::NoGoodSpecializationFound { attempts } => {
                json!({"kind": self.tag(), "attempts": attempts})
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamEntry {
    pub place: Place,
    /// Which data the place was harvested from (`delta`, `a00`, `a`, ...).
    pub sources: Vec<String>,
    /// Lies on the discriminant curve or on L.
    pub on_locus: bool,
    pub residue: SymbolSum,
    pub verdict: Verdict,
}

impl RamEntry {
    pub fn to_json(&self) -> Value {
        json!({
            "place": self.place.to_json(),
            "sources": self.sources,
            "on_locus": self.on_locus,
            "residue": self.residue.to_json(),
            "verdict": self.verdict.to_json(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationParams {
    pub seed: u64,
    pub primes: Vec<u64>,
    /// Number of square specializations required for `ProbablyTrivial`.
    pub confidence_bits: u32,
}

impl Default for RamificationParams {
    fn default() -> Self {
        RamificationParams { seed: 0x5eed, primes: primes_from(10_007, 8), confidence_bits: 40 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationReport {
    pub params: RamificationParams,
    pub entries: Vec<RamEntry>,
}

impl RamificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.params.seed,
            "primes": self.params.primes,
            "confidence_bits": self.params.confidence_bits,
            "entries": self.entries.iter().map(RamEntry::to_json).collect::<Vec<_>>(),
        })
    }
}

fn add_factors(
    places: &mut BTreeMap<Place, Vec<String>>,
    f: &MPoly,
    source: &str,
) -> Result<()> {
    if f.is_constant() {
        return Ok(());
    }
    for (g, _) in factor(f)?.factors {
        let e = places.entry(Place::CurveValuation(g)).or_default();
        if !e.iter().any(|s| s == source) {
            e.push(source.to_string());
        }
    }
    Ok(())
}

fn add_ratfunc(places: &mut BTreeMap<Place, Vec<String>>, f: &RatFunc, source: &str) -> Result<()> {
    add_factors(places, f.num(), source)?;
    add_factors(places, f.den(), source)
}

pub fn ramification_report(cs: &CliffordSymbolData, params: &RamificationParams) -> Result<RamificationReport> {
    if let Some(&p) = params.primes.iter().find(|&&p| p == 2 || !is_prime_u64(p)) {
        return Err(Error::BadPrime(p));
    }
    if params.primes.is_empty() {
        return Err(Error::InvalidInput("empty prime list".into()));
    }
    let mut places: BTreeMap<Place, Vec<String>> = BTreeMap::new();
    add_factors(&mut places, &cs.delta_chart, "delta")?;
    let delta_places: Vec<Place> = places.keys().cloned().collect();
    places.entry(Place::LineAtInfinity).or_default().push("a00".into());
    add_ratfunc(&mut places, cs.a_value(), "a")?;
    add_ratfunc(&mut places, cs.b_value(), "b")?;
    add_ratfunc(&mut places, &cs.d_value(), "d")?;

    let list: Vec<(Place, Vec<String>)> = places.into_iter().collect();
    let entries = list
        .into_par_iter()
        .enumerate()
        .map(|(idx, (place, sources))| {
            let residue = tame_residue(&cs.alpha, &place)?;
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ (idx as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let verdict = decide(&residue, params, &mut rng)?;
            let on_locus = place == Place::LineAtInfinity || delta_places.contains(&place);
            Ok(RamEntry { place, sources, on_locus, residue, verdict })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RamificationReport { params: params.clone(), entries })
}

/// A point of the residue curve over F_p with the value there, or `None`
/// when the draw is unusable.
type Sample = Option<(Vec<(String, u64)>, u64)>;

fn sample<R: Rng>(ctx: &FieldCtx, u: &MPoly, p: u64, rng: &mut R) -> Sample {
    let names = u.vars();
    match ctx {
        FieldCtx::FunctionField(_) | FieldCtx::Rationals => {
            let pt: Vec<u64> = (0..u.nvars()).map(|_| rng.gen_range(0..p)).collect();
            let val = u.eval_mod(&pt, p)?;
            Some((names.iter().cloned().zip(pt).collect(), val))
        }
        FieldCtx::Curve { equation, .. } => {
            // Random free coordinate, then a root of the curve equation in
            // the other one.
            let free = if equation.degree_in(1) > 0 { 0 } else { 1 };
            let t = rng.gen_range(0..p);
            let uni = univariate_mod(equation, 1 - free, t, p)?;
            let roots = uni.roots();
            if roots.is_empty() {
                return None;
            }
            let r = roots[rng.gen_range(0..roots.len())];
            let pt = if free == 0 { [t, r] } else { [r, t] };
            let dx = equation.derivative(0).eval_mod(&pt, p)?;
            let dy = equation.derivative(1).eval_mod(&pt, p)?;
            if dx == 0 && dy == 0 {
                return None;
            }
            let val = u.eval_mod(&pt, p)?;
            Some((names.iter().cloned().zip(pt).collect(), val))
        }
        _ => None,
    }
}

/// `f` as a polynomial in variable `i` over F_p, the other variable set to `t`.
fn univariate_mod(f: &MPoly, i: usize, t: u64, p: u64) -> Option<FpPoly> {
    let d = f.degree_in(i).max(0) as usize;
    let mut c = vec![0u64; d + 1];
    for (e, a) in f.terms() {
        let a = rat_mod_p(a, p)?;
        let v = mul_mod(a, pow_mod(t, e.0[1 - i] as u64, p), p);
        let k = e.0[i] as usize;
        c[k] = (c[k] + v) % p;
    }
    let poly = FpPoly::new(p, c);
    (!poly.is_zero() && poly.deg() > 0).then_some(poly)
}

fn decide<R: Rng>(residue: &SymbolSum, params: &RamificationParams, rng: &mut R) -> Result<Verdict> {
    if residue.is_zero() {
        return Ok(Verdict::Trivial { witness: "residue class normalizes to 1".into() });
    }
    let class: SquareClass = residue
        .as_square_class()
        .ok_or_else(|| Error::WrongDegree { expected: 1, got: residue.degree() })?;
    let ctx = residue.ctx();
    // Constants are decided exactly in Q(t); the function field of a curve
    // may contain square roots of constants, so those are sampled too.
    if let (Some(c), FieldCtx::FunctionField(_) | FieldCtx::Rationals) = (class.rat_representative(), ctx) {
        return Ok(constant_witness(&c));
    }
    let rvars = match ctx {
        FieldCtx::FunctionField(v) => v.clone(),
        FieldCtx::Curve { vars, .. } => vars.clone(),
        c => return Err(Error::ResidueFieldUnsupported(format!("{c:?}"))),
    };
    let u = class.poly_representative(&rvars);
    let need = params.confidence_bits;
    let max_attempts = 64 * need.max(1) + 256;
    let mut squares = 0;
    for _ in 0..max_attempts {
        let p = params.primes[rng.gen_range(0..params.primes.len())];
        let Some((point, val)) = sample(ctx, &u, p, rng) else { continue };
        if val == 0 {
            continue;
        }
        if legendre_u64(val, p) == -1 {
            return Ok(Verdict::NontrivialWitness { point, prime: p, value: val });
        }
        squares += 1;
        if squares >= need {
            return Ok(Verdict::ProbablyTrivial { trials: squares });
        }
    }
    Ok(Verdict::NoGoodSpecializationFound { attempts: max_attempts })
}

/// A nonsquare rational constant is a nonresidue modulo some small prime.
fn constant_witness(c: &BigInt) -> Verdict {
    for p in primes_from(3, 2000) {
        if legendre(c, p) == -1 {
            let value = rat_mod_p(&crate::arith::Rat::from_integer(c.clone()), p).unwrap_or(0);
            return Verdict::NontrivialWitness { point: vec![], prime: p, value };
        }
    }
    Verdict::NoGoodSpecializationFound { attempts: 2000 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milnor::Symbol;
    use crate::poly::{parse_poly, vars};

    #[test]
    fn nonsquare_witness_at_x() {
        // alpha = (x, y - 1) at x = 0: residue y - 1; y = 3 gives 2, a
        // nonresidue mod 11.
        let v = vars(&["x", "y"]);
        let ctx = FieldCtx::FunctionField(v.clone());
        let x = SquareClass::of(&ctx, parse_poly("x", &v).unwrap()).unwrap();
        let y1 = SquareClass::of(&ctx, parse_poly("y - 1", &v).unwrap()).unwrap();
        let alpha = SymbolSum::from_symbols(&ctx, &[Symbol::new(vec![x, y1]).unwrap()]).unwrap();
        let place = Place::curve(&parse_poly("x", &v).unwrap()).unwrap();
        let r = tame_residue(&alpha, &place).unwrap();
        let params = RamificationParams { seed: 1, primes: vec![11], confidence_bits: 20 };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        match decide(&r, &params, &mut rng).unwrap() {
            Verdict::NontrivialWitness { point, prime, value } => {
                assert_eq!(prime, 11);
                assert_eq!(legendre_u64(value, 11), -1);
                assert_eq!((point[0].1 + 11 - 1) % 11, value);
            }
            v => panic!("{v:?}"),
        }
        assert_eq!(legendre_u64(2, 11), -1);
    }

    #[test]
    fn constants_trivial() {
        let v = vars(&["x", "y"]);
        let ctx = FieldCtx::FunctionField(v.clone());
        let alpha = SymbolSum::from_symbols(
            &ctx,
            &[Symbol::new(vec![SquareClass::of(&ctx, MPoly::from_int(&v, 3)).unwrap(), SquareClass::of(&ctx, MPoly::from_int(&v, 5)).unwrap()]).unwrap()],
        )
        .unwrap();
        let place = Place::curve(&parse_poly("x^2 + y^2 + 1", &v).unwrap()).unwrap();
        let r = tame_residue(&alpha, &place).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(decide(&r, &RamificationParams::default(), &mut rng).unwrap(), Verdict::Trivial { .. }));
    }
}
