//! Exact integer/rational arithmetic: p-adic valuations on Q, Legendre
//! symbols, squarefree parts, and bounded trial-division factorization.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational, reduced with positive denominator (enforced by num-rational).
pub type Rational = BigRational;

/// Default trial-division bound for integer factorization.
pub const FACTOR_BOUND: u64 = 1_000_000;

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Additive p-adic valuation of a nonzero integer.
pub fn valuation_int(x: &BigInt, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut y = x.abs();
    loop {
        let (q, r) = y.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        y = q;
        v += 1;
    }
}

/// Additive p-adic valuation of a nonzero rational, normalized so that
/// valuation(p, p) = 1.
pub fn valuation(x: &Rational, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(valuation_int(x.numer(), p)? - valuation_int(x.denom(), p)?)
}

/// Unit part of x at p: x / p^valuation(x, p), as a rational coprime to p.
pub fn unit_part(x: &Rational, p: u64) -> Result<Rational> {
    let v = valuation(x, p)?;
    Ok(x * pow_rat(p, -v))
}

fn pow_rat(p: u64, e: i64) -> Rational {
    let pk = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(pk)
    } else {
        BigRational::new(BigInt::one(), pk)
    }
}

/// p^e as a rational, e possibly negative.
pub fn prime_power(p: u64, e: i64) -> Rational {
    pow_rat(p, e)
}

/// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
pub fn legendre_int(a: &BigInt, p: u64) -> Result<i8> {
    if p == 2 {
        return Err(Error::OddPrimeRequired);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let a = a.mod_floor(&pb);
    if a.is_zero() {
        return Ok(0);
    }
    let e = (&pb - BigInt::one()) / BigInt::from(2);
    let r = a.modpow(&e, &pb);
    if r.is_one() {
        Ok(1)
    } else {
        Ok(-1)
    }
}

/// Legendre symbol of a rational unit at p (numerator and denominator both
/// coprime to p).
pub fn legendre_rat(a: &Rational, p: u64) -> Result<i8> {
    let n = legendre_int(a.numer(), p)?;
    let d = legendre_int(a.denom(), p)?;
    if n == 0 || d == 0 {
        return Ok(0);
    }
    Ok(n * d)
}

/// Deterministic primality by trial division; inputs are desk-scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial-division factorization of |n| up to `bound`; errors if a composite
/// cofactor beyond the bound survives.
pub fn factorize(n: &BigInt, bound: u64) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut m = n.abs();
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, e: u32, out: &mut Vec<(u64, u32)>| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut e2 = 0u32;
    while m.is_even() {
        m /= 2;
        e2 += 1;
    }
    push(2, e2, &mut out);
    let mut d = 3u64;
    while BigInt::from(d) * BigInt::from(d) <= m {
        if d > bound {
            return Err(Error::FactorBoundExceeded(bound, m.to_string()));
        }
        let db = BigInt::from(d);
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&db);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        push(d, e, &mut out);
        d += 2;
    }
    if !m.is_one() {
        // prime cofactor
        let p: u64 = m
            .to_string()
            .parse()
            .map_err(|_| Error::FactorBoundExceeded(bound, m.to_string()))?;
        push(p, 1, &mut out);
    }
    Ok(out)
}

/// Squarefree integer d with x = d * (rational square). Sign of d matches x.
pub fn squarefree_part(x: &Rational) -> Result<BigInt> {
    squarefree_part_bounded(x, FACTOR_BOUND)
}

pub fn squarefree_part_bounded(x: &Rational, bound: u64) -> Result<BigInt> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    // a/b = ab / b^2, so the squarefree part of a/b is that of a*b.
    let prod = x.numer() * x.denom();
    let fac = factorize(&prod, bound)?;
    let mut d = BigInt::one();
    for (p, e) in fac {
        if e % 2 == 1 {
            d *= BigInt::from(p);
        }
    }
    if prod.is_negative() {
        d = -d;
    }
    Ok(d)
}

/// Modular exponentiation on u64 (moduli < 2^32 to avoid overflow in mul).
pub fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mm = m as u128;
    let mut bb = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    let _ = &mut b;
    r as u64
}

/// Multiplicative order of a modulo prime q.
pub fn order_mod(a: u64, q: u64) -> u64 {
    let mut t = 1u64;
    let mut x = a % q;
    while x != 1 {
        x = (x as u128 * (a % q) as u128 % q as u128) as u64;
        t += 1;
        debug_assert!(t <= q);
    }
    t
}

/// Primes in ascending order, desk-scale.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| is_prime(n))
}

/// Smallest positive quadratic non-residue modulo an odd prime.
pub fn smallest_nonresidue(p: u64) -> u64 {
    let mut u = 2u64;
    loop {
        if legendre_int(&BigInt::from(u), p).unwrap() == -1 {
            return u;
        }
        u += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&rat(-20), 2).unwrap(), 2);
        assert_eq!(valuation(&rat(-20), 3).unwrap(), 0);
        // 65536 = 2^16, checked by repeated division
        let mut n = 65536i64;
        let mut v = 0;
        while n % 2 == 0 {
            n /= 2;
            v += 1;
        }
        assert_eq!(v, 16);
        assert_eq!(valuation(&rat(65536), 2).unwrap(), 16);
        assert_eq!(valuation(&rat_frac(3, 8), 2).unwrap(), -3);
        assert!(matches!(valuation(&rat(0), 5), Err(Error::ZeroInput)));
        assert!(matches!(valuation(&rat(7), 6), Err(Error::NotPrime(6))));
    }

    #[test]
    fn valuation_is_additive() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let p = *[2u64, 3, 5, 7, 11].iter().nth(rng.gen_range(0..5)).unwrap();
            let x = rat_frac(rng.gen_range(1..2000), rng.gen_range(1..2000));
            let y = rat_frac(rng.gen_range(1..2000), rng.gen_range(1..2000));
            assert_eq!(
                valuation(&(&x * &y), p).unwrap(),
                valuation(&x, p).unwrap() + valuation(&y, p).unwrap()
            );
            let s = &x + &y;
            if !s.is_zero() {
                assert!(
                    valuation(&s, p).unwrap()
                        >= valuation(&x, p).unwrap().min(valuation(&y, p).unwrap())
                );
            }
        }
    }

    #[test]
    fn legendre_examples() {
        // oracle: squares mod 7 are {1, 2, 4}
        let squares: Vec<i64> = (1..7).map(|x| (x * x) % 7).collect();
        assert!(squares.contains(&1) && squares.contains(&2) && !squares.contains(&5));
        assert_eq!(legendre_int(&big(1), 7).unwrap(), 1);
        assert_eq!(legendre_int(&big(2), 7).unwrap(), 1);
        assert_eq!(legendre_int(&big(5), 7).unwrap(), -1);
        assert_eq!(legendre_int(&big(14), 7).unwrap(), 0);
        assert!(matches!(legendre_int(&big(3), 2), Err(Error::OddPrimeRequired)));
    }

    #[test]
    fn legendre_is_multiplicative() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..500 {
            let p = *[3u64, 7, 11, 13, 101].iter().nth(rng.gen_range(0..5)).unwrap();
            let a = big(rng.gen_range(1..10_000));
            let b = big(rng.gen_range(1..10_000));
            if (&a % p as i64).is_zero() || (&b % p as i64).is_zero() {
                continue;
            }
            assert_eq!(
                legendre_int(&(&a * &b), p).unwrap(),
                legendre_int(&a, p).unwrap() * legendre_int(&b, p).unwrap()
            );
        }
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&rat(8)).unwrap(), big(2));
        assert_eq!(squarefree_part(&rat(-40)).unwrap(), big(-10));
        assert_eq!(squarefree_part(&rat_frac(49, 4)).unwrap(), big(1));
        assert!(matches!(squarefree_part(&rat(0)), Err(Error::ZeroInput)));
    }

    #[test]
    fn squarefree_kills_square_factors() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let x = rat_frac(
                rng.gen_range(1..500) * if rng.gen_bool(0.5) { -1 } else { 1 },
                rng.gen_range(1..500),
            );
            let k = rat_frac(rng.gen_range(1..60), rng.gen_range(1..60));
            let scaled = &x * (&k * &k);
            assert_eq!(
                squarefree_part(&x).unwrap(),
                squarefree_part(&scaled).unwrap()
            );
        }
    }

    #[test]
    fn factorize_disc_of_example_quartic() {
        // -117614919680 = -2^14 * 5 * 23 * 62423
        let d = big(-117614919680);
        let f = factorize(&d, FACTOR_BOUND).unwrap();
        assert_eq!(f, vec![(2, 14), (5, 1), (23, 1), (62423, 1)]);
    }

    #[test]
    fn order_and_nonresidue() {
        assert_eq!(order_mod(2, 7), 3);
        assert_eq!(smallest_nonresidue(7), 3);
        assert_eq!(smallest_nonresidue(3), 2);
    }
}
