use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rat;
use crate::error::{Error, Result};

const SMALL_PRIMES_LIMIT: u64 = 10_000;

fn small_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SMALL_PRIMES_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
    })
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization of a positive integer as sorted `(prime, exponent)`
/// pairs. Cofactors that survive trial division must fit in 64 bits.
pub fn factor_biguint(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut rest = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for &p in small_primes() {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
    }
    if rest.is_one() {
        return Ok(out);
    }
    let small = rest.to_u64().ok_or_else(|| {
        Error::FactorizationFailed(format!("integer cofactor {rest} exceeds 64 bits"))
    })?;
    let mut ps = Vec::new();
    factor_u64_into(small, &mut ps);
    ps.sort_unstable();
    for p in ps {
        let bp = BigUint::from(p);
        match out.iter_mut().find(|(q, _)| *q == bp) {
            Some(entry) => entry.1 += 1,
            None => out.push((bp, 1)),
        }
    }
    out.sort();
    Ok(out)
}

/// Sorted odd-or-two primes appearing to an odd power in `n`.
pub fn odd_power_primes(n: &BigInt) -> Result<Vec<BigUint>> {
    Ok(factor_biguint(n.magnitude())?
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .collect())
}

/// Squarefree part of a nonzero integer, sign preserved: 18 -> 2, -50 -> -2.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut r = BigInt::one();
    for p in odd_power_primes(n)? {
        r *= BigInt::from(p);
    }
    if n.sign() == Sign::Minus {
        r = -r;
    }
    Ok(r)
}

/// Squarefree integer representing the square class of a nonzero rational.
pub fn rat_square_class(r: &Rat) -> Result<BigInt> {
    if r.is_zero() {
        return Err(Error::ZeroElement);
    }
    squarefree_part(&(r.numer() * r.denom()))
}

pub fn is_square_int(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

pub fn is_square_rat(r: &Rat) -> bool {
    !r.is_negative() && is_square_int(r.numer()) && is_square_int(r.denom())
}

pub fn sqrt_rat(r: &Rat) -> Option<Rat> {
    if !is_square_rat(r) {
        return None;
    }
    Some(Rat::new(r.numer().sqrt(), r.denom().sqrt()))
}

/// Legendre symbol (a | p) for an odd prime p, returning -1, 0 or 1.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    let r = a.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    legendre_u64(r, p)
}

pub fn legendre_u64(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Reduces a rational modulo p, `None` when p divides the denominator.
pub fn rat_mod_p(r: &Rat, p: u64) -> Option<u64> {
    let bp = BigInt::from(p);
    let d = r.denom().mod_floor(&bp).to_u64().unwrap();
    if d == 0 {
        return None;
    }
    let n = r.numer().mod_floor(&bp).to_u64().unwrap();
    Some(mul_mod(n, inv_mod(d, p), p))
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigUint) -> u32 {
    let bp = BigInt::from(p.clone());
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &bp).is_zero() {
        n /= &bp;
        v += 1;
    }
    v
}

/// Odd primes in increasing order starting above `from`.
pub fn primes_from(from: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = from + 1;
    while out.len() < count {
        if n > 2 && is_prime_u64(n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&bi(18)).unwrap(), bi(2));
        assert_eq!(squarefree_part(&bi(49)).unwrap(), bi(1));
        assert_eq!(squarefree_part(&bi(-50)).unwrap(), bi(-2));
        assert_eq!(squarefree_part(&bi(0)), Err(Error::ZeroElement));
        assert_eq!(rat_square_class(&super::super::rat(3, 12)).unwrap(), bi(1));
    }

    #[test]
    fn factors_large_semiprime() {
        let n = BigUint::from(1_000_003u64) * BigUint::from(998_244_353u64);
        let f = factor_biguint(&n).unwrap();
        assert_eq!(
            f,
            vec![(BigUint::from(1_000_003u64), 1), (BigUint::from(998_244_353u64), 1)]
        );
    }

    #[test]
    fn legendre_matches_euler_by_enumeration() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in 1..p {
                let is_sq = (1..p).any(|x| x * x % p == a);
                assert_eq!(legendre_u64(a, p), if is_sq { 1 } else { -1 });
            }
        }
    }
}
