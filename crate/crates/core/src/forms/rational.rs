//! Classification of quadratic forms over Q by rank, discriminant,
//! Hasse-Witt class and signature.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::{is_negative, pfister, DiagForm, PfisterSpec};
use crate::arith::integer::{legendre, valuation};
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::milnor::{is_trivial_h2_q, local_h2, FieldCtx, Generator, Place, SquareClass, SymbolSum};

/// Complete set of isometry invariants over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormInvariants {
    pub rank: usize,
    pub signed_disc: SquareClass,
    pub hasse_witt: SymbolSum,
    pub signature: i64,
}

fn require_q(f: &DiagForm) -> Result<()> {
    if *f.ctx() != FieldCtx::Rationals {
        return Err(Error::UnsupportedContext(format!("{:?}", f.ctx())));
    }
    Ok(())
}

fn signature(f: &DiagForm) -> i64 {
    let neg = f.entries().iter().filter(|e| is_negative(e)).count() as i64;
    f.rank() as i64 - 2 * neg
}

pub fn invariants(f: &DiagForm) -> Result<FormInvariants> {
    require_q(f)?;
    Ok(FormInvariants {
        rank: f.rank(),
        signed_disc: f.signed_discriminant(),
        hasse_witt: f.hasse_witt()?,
        signature: signature(f),
    })
}

pub fn isometric_over_q(f1: &DiagForm, f2: &DiagForm) -> Result<bool> {
    let a = invariants(f1)?;
    let b = invariants(f2)?;
    Ok(a.rank == b.rank
        && a.signed_disc == b.signed_disc
        && a.signature == b.signature
        && is_trivial_h2_q(&a.hasse_witt.add(&b.hasse_witt)?)?)
}

/// Isometric to a sum of hyperbolic planes.
pub fn is_hyperbolic(f: &DiagForm) -> Result<bool> {
    require_q(f)?;
    if f.rank() % 2 == 1 {
        return Ok(false);
    }
    let h: Vec<i64> = (0..f.rank()).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    isometric_over_q(f, &DiagForm::ints(&h))
}

/// Primes where some entry has odd valuation, together with 2.
fn bad_primes(f: &DiagForm) -> BTreeSet<BigUint> {
    let mut ps: BTreeSet<BigUint> = [BigUint::from(2u32)].into();
    for e in f.entries() {
        for g in e.gens() {
            if let Generator::Prime(p) = g {
                ps.insert(p.clone());
            }
        }
    }
    ps
}

/// Whether a squarefree integer is a square in the completion at `v`.
fn is_local_square(n: &BigInt, v: &Place) -> bool {
    match v {
        Place::RealPlace => n.is_positive(),
        Place::FinitePrime(p) => {
            if valuation(n, p) % 2 == 1 {
                return false;
            }
            if *p == BigUint::from(2u32) {
                n.mod_floor(&BigInt::from(8)) == BigInt::from(1)
            } else {
                legendre(n, p.to_u64().expect("small prime")) == 1
            }
        }
        _ => false,
    }
}

fn sym(a: &SquareClass, b: &SquareClass) -> Result<SymbolSum> {
    SymbolSum::from_symbols(
        a.ctx(),
        &[crate::milnor::Symbol::new(vec![a.clone(), b.clone()])?],
    )
}

/// Hasse-Minkowski: local conditions for ranks up to 4, the real place
/// alone from rank 5 on.
pub fn is_isotropic_over_q(f: &DiagForm) -> Result<bool> {
    require_q(f)?;
    let e = f.entries();
    let neg = e.iter().filter(|c| is_negative(c)).count();
    let indefinite = neg > 0 && neg < e.len();
    match e.len() {
        1 => Ok(false),
        2 => Ok(e[0].mul(&e[1])?.neg().is_trivial()),
        3 => {
            // <a,b,c> ~ c<a/c, b/c, 1> is isotropic iff (-ac, -bc) splits.
            let x = e[0].mul(&e[2])?.neg();
            let y = e[1].mul(&e[2])?.neg();
            is_trivial_h2_q(&sym(&x, &y)?)
        }
        4 => {
            if !indefinite {
                return Ok(false);
            }
            // Anisotropic at v iff det is a local square and the Hasse
            // invariant differs from that of the hyperbolic space.
            let det = f.determinant();
            let d = det.rat_representative().expect("class over Q");
            let eps = f.hasse_witt()?;
            let m1 = SquareClass::int(-1);
            let mm = sym(&m1, &m1)?;
            let mut places = vec![Place::RealPlace];
            places.extend(bad_primes(f).into_iter().map(Place::FinitePrime));
            for v in places {
                if is_local_square(&d, &v) && local_h2(&eps, &v)? != local_h2(&mm, &v)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Ok(indefinite),
    }
}

/// One displayed isometry of the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub label: &'static str,
    pub lhs: DiagForm,
    pub rhs: DiagForm,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemarkChainReport {
    pub steps: Vec<ChainStep>,
    /// `<1,-f> = <d,-df>`.
    pub norm_isometry: bool,
    /// The rank-4 subform `d<1,a,b,abd>`.
    pub subform: DiagForm,
    /// Its complement in the Pfister form.
    pub complement: DiagForm,
    pub subform_holds: bool,
}

impl RemarkChainReport {
    pub fn all_pass(&self) -> bool {
        self.norm_isometry && self.subform_holds && self.steps.iter().all(|s| s.holds)
    }
}

/// Checks the decomposition of `<<-ab,-ad,f>>` into a form containing
/// `d<1,a,b,abd>`, given `f = g^2 - d h^2`.
pub fn verify_remark_chain(a: &Rat, b: &Rat, d: &Rat, f: &Rat, g: &Rat, h: &Rat) -> Result<RemarkChainReport> {
    if &(g * g) - &(d * h * h) != *f {
        return Err(Error::NormWitnessInvalid(format!("{g}^2 - {d}*{h}^2 != {f}")));
    }
    let [ca, cb, cd, cf] = [a, b, d, f].map(SquareClass::rat);
    let (ca, cb, cd, cf) = (ca?, cb?, cd?, cf?);
    let one = SquareClass::int(1);
    let ab = ca.mul(&cb)?;
    let ad = ca.mul(&cd)?;
    let bd = cb.mul(&cd)?;
    let mf = cf.neg();
    let df = cd.mul(&cf)?;
    let q = FieldCtx::Rationals;
    let form = |xs: Vec<SquareClass>| DiagForm::new(q.clone(), xs);

    let pf = pfister(&PfisterSpec::new(vec![ab.neg(), ad.neg(), cf.clone()])?);
    let s0 = form(vec![one.clone(), ab.clone(), ad.clone(), bd.clone()])?
        .perp(&form(vec![one.clone(), ab.clone(), ad.clone(), bd.clone()])?.scale(&mf)?)?;
    let tail = form(vec![ab.clone(), bd.clone(), ad.clone()])?.scale(&mf)?;
    let head = form(vec![ab.clone(), ad.clone(), bd.clone()])?;
    let s1 = head.perp(&form(vec![one.clone(), mf.clone()])?)?.perp(&tail)?;
    let s2 = head.perp(&form(vec![cd.clone(), df.neg()])?)?.perp(&tail)?;
    let s3 = form(vec![cd.clone(), ab.clone(), ad.clone(), bd.clone()])?
        .perp(&form(vec![cd.clone(), ab.clone(), bd.clone(), ad.clone()])?.scale(&mf)?)?;

    let mut steps = Vec::new();
    for (label, l, r) in [
        ("decomposition", &pf, &s0),
        ("split off <1,-f>", &s0, &s1),
        ("norm similarity", &s1, &s2),
        ("regroup", &s2, &s3),
    ] {
        steps.push(ChainStep { label, lhs: l.clone(), rhs: r.clone(), holds: isometric_over_q(l, r)? });
    }
    let norm_isometry =
        isometric_over_q(&form(vec![one.clone(), mf.clone()])?, &form(vec![cd.clone(), df.neg()])?)?;
    let subform = form(vec![one, ca, cb, ab.mul(&cd)?])?.scale(&cd)?;
    let complement = form(vec![cd, ab, bd, ad])?.scale(&mf)?;
    let subform_holds = isometric_over_q(&subform.perp(&complement)?, &pf)?;
    Ok(RemarkChainReport { steps, norm_isometry, subform, complement, subform_holds })
}

/// Whether some rank-4 form `q'` satisfies `q + q' = s * <<phi>>`. The
/// invariants of `q'` are forced; over Q a rank-4 form with given
/// determinant, Hasse class and signature exists iff the real place is
/// consistent.
pub fn witt_complement_exists(q: &DiagForm, phi: &PfisterSpec, s: &SquareClass) -> Result<bool> {
    require_q(q)?;
    if q.rank() != 4 || phi.slots().len() != 3 {
        return Err(Error::UnsupportedRank(q.rank()));
    }
    let t = pfister(phi).scale(s)?;
    require_q(&t)?;
    let sig = signature(&t) - signature(q);
    if sig.abs() > 4 {
        return Ok(false);
    }
    let neg = (4 - sig) / 2;
    // det(q') and hw(q') from hw(q + q') = hw(q) + hw(q') + (det q, det q').
    let det = t.determinant().mul(&q.determinant())?;
    let hw = t.hasse_witt()?.add(&q.hasse_witt()?)?.add(&sym(&q.determinant(), &det)?)?;
    if is_negative(&det) != (neg % 2 == 1) {
        return Ok(false);
    }
    // A real form with k negative entries has Hasse sign (-1)^(k(k-1)/2).
    let want = if (neg * (neg - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(local_h2(&hw, &Place::RealPlace)? == want)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    fn f(xs: &[i64]) -> DiagForm {
        DiagForm::ints(xs)
    }

    #[test]
    fn invariant_examples() {
        let i = invariants(&f(&[1, -1])).unwrap();
        assert_eq!((i.rank, i.signature), (2, 0));
        assert!(i.signed_disc.is_trivial() && i.hasse_witt.is_zero());
        assert_eq!(invariants(&f(&[1, 1, 1, 1])).unwrap().signature, 4);
    }

    #[test]
    fn isotropy_examples() {
        assert!(!is_isotropic_over_q(&f(&[1, -2])).unwrap());
        assert!(is_isotropic_over_q(&f(&[1, 1, -1])).unwrap());
        assert!(is_isotropic_over_q(&f(&[1, 1, 1, 1, -7])).unwrap());
        assert!(!is_isotropic_over_q(&f(&[1, 1, -3])).unwrap());
        // 7 w^2 is never a sum of three squares.
        assert!(!is_isotropic_over_q(&f(&[1, 1, 1, -7])).unwrap());
        assert!(is_isotropic_over_q(&f(&[1, 1, 1, -3])).unwrap());
        assert!(!is_isotropic_over_q(&f(&[1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn isometry_examples() {
        assert!(isometric_over_q(&f(&[1, -1]), &f(&[2, -2])).unwrap());
        assert!(!isometric_over_q(&f(&[1, 1]), &f(&[1, -1])).unwrap());
        assert!(isometric_over_q(&f(&[1, -2]), &f(&[7, -14])).unwrap());
        assert!(!isometric_over_q(&f(&[1, 1]), &f(&[3, 3])).unwrap());
        assert!(isometric_over_q(&f(&[1, 1]), &f(&[2, 2])).unwrap());
    }

    #[test]
    fn remark_chain_examples() {
        let r = |x: i64| rat_int(x);
        let rep = verify_remark_chain(&r(1), &r(1), &r(7), &r(2), &r(3), &r(1)).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        let rep = verify_remark_chain(&r(-1), &r(-1), &r(-1), &r(5), &r(1), &r(2)).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert!(matches!(
            verify_remark_chain(&r(1), &r(1), &r(7), &r(3), &r(3), &r(1)),
            Err(Error::NormWitnessInvalid(_))
        ));
    }

    #[test]
    fn complement_examples() {
        let phi = PfisterSpec::ints(&[2, 3, 5]).unwrap();
        let s = SquareClass::int(7);
        let t = pfister(&phi).scale(&s).unwrap();
        let q = DiagForm::new(FieldCtx::Rationals, t.entries()[..4].to_vec()).unwrap();
        assert!(witt_complement_exists(&q, &phi, &s).unwrap());
        // Hyperbolic target: the complement <-1,-1,-1,-1> exists.
        let hyp = PfisterSpec::ints(&[1, 1, 1]).unwrap();
        assert!(witt_complement_exists(&f(&[1, 1, 1, 1]), &hyp, &SquareClass::int(1)).unwrap());
        // Positive definite target with a negative q: signature too large.
        let def = PfisterSpec::ints(&[-1, -1, -1]).unwrap();
        assert!(!witt_complement_exists(&f(&[-1, -1, -1, -1]), &def, &SquareClass::int(1)).unwrap());
        assert!(!witt_complement_exists(&f(&[1, 1, 1, 1]), &def, &SquareClass::int(-1)).unwrap());
    }
}
