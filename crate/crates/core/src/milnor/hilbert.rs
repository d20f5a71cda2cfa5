//! Local Hilbert symbols and global triviality over Q.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{FieldCtx, Generator, SymbolSum};
use crate::arith::integer::{legendre, valuation};
use crate::arith::Rat;
use crate::error::{Error, Result};

use super::residue::Place;

fn split(n: &BigInt, p: &BigUint) -> (u32, BigInt) {
    let v = valuation(n, p);
    let u = n / BigInt::from(p.clone()).pow(v);
    (v, u)
}

fn mod8(u: &BigInt) -> u32 {
    u.mod_floor(&BigInt::from(8)).to_u32().unwrap()
}

/// (a, b)_v for nonzero rationals; 1 or -1.
pub fn hilbert_symbol(a: &Rat, b: &Rat, v: &Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    // Same square classes, integral representatives.
    let a = a.numer() * a.denom();
    let b = b.numer() * b.denom();
    match v {
        Place::RealPlace => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::FinitePrime(p) => {
            let two = BigUint::from(2u32);
            let (alpha, u) = split(&a, p);
            let (beta, w) = split(&b, p);
            if *p == two {
                let eps = |x: &BigInt| ((mod8(x) - 1) / 2) % 2;
                let omega = |x: &BigInt| {
                    let r = mod8(x);
                    ((r * r - 1) / 8) % 2
                };
                let e = eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u);
                Ok(if e % 2 == 0 { 1 } else { -1 })
            } else {
                let pu = p.to_u64().ok_or_else(|| Error::FactorizationFailed("prime too large".into()))?;
                let mut s = 1;
                if alpha % 2 == 1 && beta % 2 == 1 && pu % 4 == 3 {
                    s = -s;
                }
                if beta % 2 == 1 {
                    s *= legendre(&u, pu);
                }
                if alpha % 2 == 1 {
                    s *= legendre(&w, pu);
                }
                Ok(s)
            }
        }
        v => Err(Error::NotAValuation(format!("{v} is not a place of Q"))),
    }
}

fn gen_value(g: &Generator) -> Result<Rat> {
    match g {
        Generator::MinusOne => Ok(Rat::from_integer(BigInt::from(-1))),
        Generator::Prime(p) => Ok(Rat::from_integer(BigInt::from(p.clone()))),
        _ => Err(Error::WrongContext("generator outside Q".into())),
    }
}

/// Places where a degree-2 sum over Q can be locally nontrivial.
fn support(s: &SymbolSum) -> BTreeSet<BigUint> {
    let mut ps: BTreeSet<BigUint> = [BigUint::from(2u32)].into();
    for a in s.atoms() {
        for g in a {
            if let Generator::Prime(p) = g {
                ps.insert(p.clone());
            }
        }
    }
    ps
}

/// Local invariant of a degree-2 sum over Q at a place.
pub fn local_h2(s: &SymbolSum, v: &Place) -> Result<i32> {
    let mut prod = 1;
    for a in s.atoms() {
        prod *= hilbert_symbol(&gen_value(&a[0])?, &gen_value(&a[1])?, v)?;
    }
    Ok(prod)
}

/// Whether a degree-2 class over Q vanishes in Br(Q)[2].
pub fn is_trivial_h2_q(s: &SymbolSum) -> Result<bool> {
    if s.degree() != 2 && !s.is_zero() {
        return Err(Error::WrongDegree { expected: 2, got: s.degree() });
    }
    if *s.ctx() != FieldCtx::Rationals {
        return Err(Error::WrongContext(format!("{:?}", s.ctx())));
    }
    if local_h2(s, &Place::RealPlace)? == -1 {
        return Ok(false);
    }
    for p in support(s) {
        if local_h2(s, &Place::FinitePrime(p))? == -1 {
            return Ok(false);
        }
    }
    Ok(true)
}


/// Whether a nonzero rational is a square in the completion at `v`.
pub fn is_local_square(r: &Rat, v: &Place) -> Result<bool> {
    if r.is_zero() {
        return Err(Error::ZeroElement);
    }
    let n = r.numer() * r.denom();
    match v {
        Place::RealPlace => Ok(n.is_positive()),
        Place::FinitePrime(p) => {
            let (e, u) = split(&n, p);
            if e % 2 == 1 {
                return Ok(false);
            }
            if *p == BigUint::from(2u32) {
                return Ok(mod8(&u) == 1);
            }
            Ok(match p.to_u64() {
                Some(q) => legendre(&u, q) == 1,
                None => {
                    let pi = BigInt::from(p.clone());
                    let e = (&pi - 1) / 2;
                    u.mod_floor(&pi).modpow(&e, &pi) == BigInt::from(1)
                }
            })
        }
        Place::CurveValuation(_) | Place::LineAtInfinity => Err(Error::NotAValuation(format!("{v:?}"))),
    }
}

/// Whether a degree-2 class over Q dies over `Q(sqrt(delta))`: at every
/// place where it is nonsplit, `delta` must not be a local square.
pub fn splits_over_quadratic(s: &SymbolSum, delta: &Rat) -> Result<bool> {
    if *s.ctx() != FieldCtx::Rationals {
        return Err(Error::WrongContext(format!("{:?}", s.ctx())));
    }
    if s.is_zero() {
        return Ok(true);
    }
    if s.degree() != 2 {
        return Err(Error::WrongDegree { expected: 2, got: s.degree() });
    }
    let mut places = vec![Place::RealPlace];
    places.extend(support(s).into_iter().map(Place::FinitePrime));
    for v in places {
        if local_h2(s, &v)? == -1 && is_local_square(delta, &v)? {
            return Ok(false);
        }
    }
    Ok(true)
}
/// Whether a degree-3 class over Q vanishes. Above degree two the
/// cohomology of Q is detected at the real place, where only
/// `(-1, -1, -1)` survives.
pub fn is_trivial_h3_q(s: &SymbolSum) -> Result<bool> {
    if s.degree() != 3 && !s.is_zero() {
        return Err(Error::WrongDegree { expected: 3, got: s.degree() });
    }
    if *s.ctx() != FieldCtx::Rationals {
        return Err(Error::WrongContext(format!("{:?}", s.ctx())));
    }
    let real = vec![Generator::MinusOne; 3];
    Ok(!s.atoms().contains(&real))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::milnor::Symbol;

    fn h(a: i64, b: i64, v: &Place) -> i32 {
        hilbert_symbol(&rat_int(a), &rat_int(b), v).unwrap()
    }

    #[test]
    fn quadratic_splitting() {
        let q = SymbolSum::from_symbol(&Symbol::ints(&[-1, -1])).unwrap();
        assert!(splits_over_quadratic(&q, &rat_int(-1)).unwrap());
        assert!(splits_over_quadratic(&q, &rat_int(-3)).unwrap());
        assert!(!splits_over_quadratic(&q, &rat_int(2)).unwrap());
        assert!(!splits_over_quadratic(&q, &rat_int(-7)).unwrap());
        let two = Place::FinitePrime(BigUint::from(2u32));
        assert!(is_local_square(&rat_int(17), &two).unwrap());
        assert!(!is_local_square(&rat_int(5), &two).unwrap());
        assert!(is_local_square(&rat_int(2), &Place::FinitePrime(BigUint::from(7u32))).unwrap());
        assert!(!is_local_square(&rat_int(3), &Place::FinitePrime(BigUint::from(7u32))).unwrap());
    }

    fn p(n: u32) -> Place {
        Place::FinitePrime(BigUint::from(n))
    }

    /// Solvability of z^2 = a x^2 + b y^2 in Z/p^k with a primitive solution;
    /// for k large enough this decides the local symbol.
    fn brute(a: i64, b: i64, q: i64, k: u32) -> i32 {
        let m = q.pow(k);
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if x % q == 0 && y % q == 0 && z % q == 0 {
                        continue;
                    }
                    if (z * z - a * x * x - b * y * y).rem_euclid(m) == 0 {
                        return 1;
                    }
                }
            }
        }
        -1
    }

    #[test]
    fn examples() {
        assert_eq!(h(-1, -1, &Place::RealPlace), -1);
        assert_eq!(h(-1, -1, &p(2)), -1);
        assert_eq!(h(2, 7, &p(7)), 1);
    }

    #[test]
    fn brute_force_agreement() {
        // Units and uniformizer-times-units, p = 3, 5 (mod p^2) and p = 2 (mod 16).
        let vals = [-6, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 15];
        for &a in &vals {
            for &b in &vals {
                for (q, k) in [(3, 3), (5, 2), (2, 4)] {
                    assert_eq!(h(a, b, &p(q as u32)), brute(a, b, q, k), "({a},{b})_{q}");
                }
            }
        }
    }

    #[test]
    fn product_formula() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                if a == 0 || b == 0 {
                    continue;
                }
                let mut prod = h(a, b, &Place::RealPlace);
                for q in [2u32, 3, 5, 7, 11] {
                    prod *= h(a, b, &p(q));
                }
                assert_eq!(prod, 1, "({a},{b})");
            }
        }
    }

    #[test]
    fn h2_and_h3_examples() {
        let q = FieldCtx::Rationals;
        let s = |x: &[i64]| SymbolSum::from_symbols(&q, &[Symbol::ints(x)]).unwrap();
        assert!(is_trivial_h2_q(&s(&[1, 5])).unwrap());
        assert!(!is_trivial_h2_q(&s(&[-1, -1])).unwrap());
        assert!(is_trivial_h2_q(&s(&[2, -1])).unwrap());
        assert!(!is_trivial_h3_q(&s(&[-1, -1, -1])).unwrap());
        assert!(is_trivial_h3_q(&s(&[2, 3, 5])).unwrap());
        assert!(is_trivial_h3_q(&s(&[4, 3, 5])).unwrap());
        assert_eq!(
            is_trivial_h3_q(&s(&[2, 3])),
            Err(Error::WrongDegree { expected: 3, got: 2 })
        );
    }
}
