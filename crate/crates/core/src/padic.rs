//! Truncated p-adic numbers with certified precision, Hensel square roots,
//! and square classes of Q_p*.
//!
//! A nonzero value is stored as p^val * unit with the unit known modulo
//! p^prec; precision only ever shrinks through arithmetic, so every digit a
//! value claims to know is correct. A value that cannot be distinguished
//! from 0 carries only the bound v(x) >= val.

use crate::arith::{self, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// Default working precision in base-p digits. Far beyond what degree <= 4
/// discriminants require, still instant.
pub const DEFAULT_PRECISION: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdic {
    p: u64,
    /// v(x) for a nonzero value; a lower bound on v(x) when `unit` is None.
    val: i64,
    /// Unit part in [1, p^prec), coprime to p; None when the value is
    /// indistinguishable from zero at this precision.
    unit: Option<BigInt>,
    prec: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadicOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl PAdic {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.unit.is_none()
    }

    /// Exact valuation; errors when the value is indistinguishable from 0.
    pub fn valuation(&self) -> Result<i64> {
        match &self.unit {
            Some(_) => Ok(self.val),
            None => Err(Error::InsufficientPrecision(format!(
                "value is O({}^{}), valuation unknown",
                self.p, self.val
            ))),
        }
    }

    /// Lower bound on v(x), valid in all cases.
    pub fn valuation_lower_bound(&self) -> i64 {
        self.val
    }

    pub fn unit_mod(&self, k: usize) -> Result<BigInt> {
        match &self.unit {
            Some(u) => Ok(u.mod_floor(&BigInt::from(self.p).pow(k.min(self.prec) as u32))),
            None => Err(Error::InsufficientPrecision(
                "no unit part: value indistinguishable from zero".into(),
            )),
        }
    }

    /// A zero-at-precision value: v(x) >= val.
    pub fn zero_at(p: u64, val: i64) -> Self {
        PAdic { p, val, unit: None, prec: 0 }
    }

    pub fn from_rational(p: u64, prec: usize, x: &Rational) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if prec == 0 {
            return Err(Error::Domain("precision must be positive".into()));
        }
        if x.is_zero() {
            return Ok(PAdic::zero_at(p, prec as i64));
        }
        let v = arith::valuation(x, p)?;
        let u = arith::unit_part(x, p)?;
        let modulus = BigInt::from(p).pow(prec as u32);
        // u = a/b with a, b coprime to p; reduce mod p^prec
        let num = u.numer().mod_floor(&modulus);
        let den_inv = mod_inverse(&u.denom().mod_floor(&modulus), &modulus)?;
        let unit = (num * den_inv).mod_floor(&modulus);
        Ok(PAdic { p, val: v, unit: Some(unit), prec })
    }

    pub fn from_int(p: u64, prec: usize, n: i64) -> Result<Self> {
        Self::from_rational(p, prec, &arith::rat(n))
    }

    /// Multiply by p^k.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.val += k;
        out
    }

    fn assert_same_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        match &self.unit {
            None => self.clone(),
            Some(u) => {
                let m = BigInt::from(self.p).pow(self.prec as u32);
                PAdic {
                    p: self.p,
                    val: self.val,
                    unit: Some((-u).mod_floor(&m)),
                    prec: self.prec,
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.assert_same_prime(other)?;
        let p = self.p;
        // absolute knowledge bounds: value known mod p^m
        let known_self = self.known_to();
        let known_other = other.known_to();
        let m = known_self.min(known_other);
        match (&self.unit, &other.unit) {
            (None, None) => Ok(PAdic::zero_at(p, m)),
            (None, Some(_)) | (Some(_), None) => {
                let (z, nz) = if self.unit.is_none() { (self, other) } else { (other, self) };
                if nz.val < z.val {
                    // nonzero part dominates; digits beyond the zero's bound are lost
                    let new_prec = (m - nz.val).max(0) as usize;
                    if new_prec == 0 {
                        return Ok(PAdic::zero_at(p, m));
                    }
                    let mu = BigInt::from(p).pow(new_prec as u32);
                    Ok(PAdic {
                        p,
                        val: nz.val,
                        unit: Some(nz.unit.as_ref().unwrap().mod_floor(&mu)),
                        prec: new_prec,
                    })
                } else {
                    Ok(PAdic::zero_at(p, m))
                }
            }
            (Some(u1), Some(u2)) => {
                let v = self.val.min(other.val);
                let width = (m - v).max(0) as usize;
                if width == 0 {
                    return Ok(PAdic::zero_at(p, m));
                }
                let modulus = BigInt::from(p).pow(width as u32);
                let t1 = u1 * BigInt::from(p).pow((self.val - v) as u32);
                let t2 = u2 * BigInt::from(p).pow((other.val - v) as u32);
                let s = (t1 + t2).mod_floor(&modulus);
                Ok(Self::from_representative(p, v, s, width))
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.assert_same_prime(other)?;
        let p = self.p;
        match (&self.unit, &other.unit) {
            (Some(u1), Some(u2)) => {
                let prec = self.prec.min(other.prec);
                let m = BigInt::from(p).pow(prec as u32);
                Ok(PAdic {
                    p,
                    val: self.val + other.val,
                    unit: Some((u1 * u2).mod_floor(&m)),
                    prec,
                })
            }
            // v(xy) >= bound(x) + bound-or-val(y)
            _ => Ok(PAdic::zero_at(p, self.val + other.val)),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.assert_same_prime(other)?;
        let p = self.p;
        let (uv, uu, up) = match &other.unit {
            Some(u) => (other.val, u, other.prec),
            None => {
                return Err(Error::InsufficientPrecision(format!(
                    "division by a value indistinguishable from 0 (O({}^{}))",
                    p, other.val
                )))
            }
        };
        match &self.unit {
            None => Ok(PAdic::zero_at(p, self.val - uv)),
            Some(u1) => {
                let prec = self.prec.min(up);
                let m = BigInt::from(p).pow(prec as u32);
                let inv = mod_inverse(&uu.mod_floor(&m), &m)?;
                Ok(PAdic {
                    p,
                    val: self.val - uv,
                    unit: Some((u1 * inv).mod_floor(&m)),
                    prec,
                })
            }
        }
    }

    /// n-th power by repeated squaring (n >= 0).
    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = PAdic::from_int(self.p, self.prec.max(1), 1)?;
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// x known modulo p^known_to.
    fn known_to(&self) -> i64 {
        match &self.unit {
            Some(_) => self.val + self.prec as i64,
            None => self.val,
        }
    }

    /// Build from representative s of p^v * s known mod p^width; strips
    /// p-factors from s and certifies the leftover precision.
    pub fn from_representative(p: u64, v: i64, s: BigInt, width: usize) -> Self {
        if s.is_zero() {
            return PAdic::zero_at(p, v + width as i64);
        }
        let t = arith::valuation_int(&s, p).unwrap();
        if t as usize >= width {
            return PAdic::zero_at(p, v + width as i64);
        }
        let new_prec = width - t as usize;
        let u = s / BigInt::from(p).pow(t as u32);
        let m = BigInt::from(p).pow(new_prec as u32);
        PAdic { p, val: v + t, unit: Some(u.mod_floor(&m)), prec: new_prec }
    }

    /// Nearest rational representative p^val * unit (exact as an element of Q,
    /// congruent to the value modulo p^(val+prec)).
    pub fn representative(&self) -> Rational {
        match &self.unit {
            None => Rational::zero(),
            Some(u) => {
                Rational::from_integer(u.clone()) * arith::prime_power(self.p, self.val)
            }
        }
    }

    /// Base-p digits of the unit part, length prec.
    pub fn digits(&self) -> Vec<u64> {
        match &self.unit {
            None => vec![],
            Some(u) => {
                let mut out = Vec::with_capacity(self.prec);
                let p = BigInt::from(self.p);
                let mut x = u.clone();
                for _ in 0..self.prec {
                    let (q, r) = x.div_rem(&p);
                    out.push(r.to_u64().unwrap());
                    x = q;
                }
                out
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "val": self.val,
            "digits": self.digits(),
            "prec": self.prec,
        })
    }

    /// Truncate to at most `prec` digits of the unit part.
    pub fn truncate(&self, prec: usize) -> Self {
        match &self.unit {
            None => self.clone(),
            Some(u) => {
                let np = prec.min(self.prec).max(1);
                let m = BigInt::from(self.p).pow(np as u32);
                PAdic { p: self.p, val: self.val, unit: Some(u.mod_floor(&m)), prec: np }
            }
        }
    }
}

impl std::fmt::Display for PAdic {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.unit {
            None => write!(fm, "O({}^{})", self.p, self.val),
            Some(_) => {
                let digits = self.digits();
                let mut terms: Vec<String> = Vec::new();
                for (i, d) in digits.iter().enumerate() {
                    if *d == 0 {
                        continue;
                    }
                    terms.push(match i {
                        0 => format!("{}", d),
                        1 => format!("{}*{}", d, self.p),
                        _ => format!("{}*{}^{}", d, self.p, i),
                    });
                }
                if terms.is_empty() {
                    terms.push("0".into());
                }
                write!(
                    fm,
                    "{}^{} * ({}) + O({}^{})",
                    self.p,
                    self.val,
                    terms.join(" + "),
                    self.p,
                    self.val + self.prec as i64
                )
            }
        }
    }
}

/// Spec-level arithmetic entry point with full error reporting.
pub fn padic_arith(a: &PAdic, b: &PAdic, op: PadicOp) -> Result<PAdic> {
    match op {
        PadicOp::Add => a.add(b),
        PadicOp::Sub => a.sub(b),
        PadicOp::Mul => a.mul(b),
        PadicOp::Div => a.div(b),
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(Error::Domain(format!("{} not invertible mod {}", a, m)));
    }
    Ok(e.x.mod_floor(m))
}

/// Hensel square root. `Ok(None)` is a certified non-square (odd valuation,
/// non-residue unit, or unit != 1 mod 8 at p = 2); precision too low to
/// decide raises `InsufficientPrecision`.
pub fn padic_sqrt(a: &PAdic) -> Result<Option<PAdic>> {
    let p = a.p();
    if a.is_zero_at_precision() {
        return Err(Error::InsufficientPrecision(
            "cannot certify square root of a value indistinguishable from 0".into(),
        ));
    }
    let v = a.valuation()?;
    if v % 2 != 0 {
        return Ok(None); // certificate: odd valuation
    }
    let prec = a.precision();
    if p == 2 {
        if prec < 3 {
            return Err(Error::InsufficientPrecision(
                "need at least 3 digits to decide squareness at p = 2".into(),
            ));
        }
        let u = a.unit_mod(prec)?;
        let u8v = u.mod_floor(&BigInt::from(8)).to_u64().unwrap();
        if u8v != 1 {
            return Ok(None); // certificate: unit != 1 mod 8
        }
        // bitwise lift: s^2 = u mod 2^k, k = 3..prec
        let mut s = BigInt::one();
        for k in 3..prec {
            let m = BigInt::from(2).pow((k + 1) as u32);
            if !(((&s * &s) - &u).mod_floor(&m)).is_zero() {
                s += BigInt::from(2).pow((k - 1) as u32);
            }
        }
        let out_prec = prec - 1;
        let m = BigInt::from(2).pow(out_prec as u32);
        Ok(Some(PAdic {
            p,
            val: v / 2,
            unit: Some(s.mod_floor(&m)),
            prec: out_prec,
        }))
    } else {
        let u = a.unit_mod(prec)?;
        let r0 = match sqrt_mod_p(&u, p) {
            Some(r) => r,
            None => return Ok(None), // certificate: non-residue mod p
        };
        // Newton: r <- (r + u/r)/2 mod p^prec, quadratic convergence
        let m = BigInt::from(p).pow(prec as u32);
        let inv2 = mod_inverse(&BigInt::from(2), &m)?;
        let mut r = r0;
        let mut steps = 0usize;
        loop {
            let rinv = mod_inverse(&r, &m)?;
            let next = ((&r + (&u * rinv)) * &inv2).mod_floor(&m);
            if next == r {
                break;
            }
            r = next;
            steps += 1;
            if steps > prec + 4 {
                break;
            }
        }
        debug_assert!(((&r * &r) - &u).mod_floor(&m).is_zero());
        Ok(Some(PAdic { p, val: v / 2, unit: Some(r), prec }))
    }
}

/// Square root modulo a prime, u64 surface for the residue toolkit.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    sqrt_mod_p(&BigInt::from(a), p).map(|r| r.to_u64().unwrap())
}

fn sqrt_mod_p(u: &BigInt, p: u64) -> Option<BigInt> {
    let pb = BigInt::from(p);
    let um = u.mod_floor(&pb);
    if arith::legendre_int(&um, p).ok()? != 1 {
        return None;
    }
    // Tonelli-Shanks, deterministic non-residue choice
    if p % 4 == 3 {
        let e = (&pb + BigInt::one()) / BigInt::from(4);
        return Some(um.modpow(&e, &pb));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = BigInt::from(arith::smallest_nonresidue(p));
    let mut m = s;
    let mut c = z.modpow(&BigInt::from(q), &pb);
    let mut t = um.modpow(&BigInt::from(q), &pb);
    let mut r = um.modpow(&BigInt::from((q + 1) / 2), &pb);
    while !t.is_one() {
        let mut i = 0u32;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = (&tt * &tt).mod_floor(&pb);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = c.modpow(&BigInt::from(2u64).pow(m - i - 1), &pb);
        m = i;
        c = (&b * &b).mod_floor(&pb);
        t = (&t * &c).mod_floor(&pb);
        r = (&r * &b).mod_floor(&pb);
    }
    Some(r)
}

/// Canonical square class of Q_p* / (Q_p*)^2: 4 classes for odd p
/// (representatives {1, u, p, u p}, u the smallest non-residue), 8 for p = 2
/// (representatives {1, -1, 5, -5, 2, -2, 10, -10}).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareClass {
    pub p: u64,
    /// valuation parity of the class
    pub odd_val: bool,
    /// for odd p: 1 (residue) or the fixed non-residue u; for p = 2: unit
    /// representative in {1, -1, 5, -5}
    pub unit_rep: i64,
}

impl SquareClass {
    pub fn is_trivial(&self) -> bool {
        !self.odd_val && self.unit_rep == 1
    }

    /// Integer representative of the class: unit_rep * (p if odd_val).
    pub fn representative(&self) -> BigInt {
        let mut r = BigInt::from(self.unit_rep);
        if self.odd_val {
            r *= BigInt::from(self.p);
        }
        r
    }

    pub fn mul(&self, other: &SquareClass) -> Result<SquareClass> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let odd_val = self.odd_val ^ other.odd_val;
        let unit_rep = if self.p == 2 {
            let m = (self.unit_rep * other.unit_rep).rem_euclid(8);
            unit_rep_2(m as u64)
        } else {
            let u = arith::smallest_nonresidue(self.p) as i64;
            // non-residue * non-residue = residue
            if (self.unit_rep == 1) == (other.unit_rep == 1) {
                1
            } else {
                u
            }
        };
        Ok(SquareClass { p: self.p, odd_val, unit_rep })
    }

    pub fn label(&self) -> String {
        self.representative().to_string()
    }
}

fn unit_rep_2(m_mod_8: u64) -> i64 {
    match m_mod_8 % 8 {
        1 => 1,
        3 => -5,
        5 => 5,
        7 => -1,
        _ => unreachable!("even residue has no unit class"),
    }
}

/// Square class of a nonzero rational in Q_p*.
pub fn square_class(x: &Rational, p: u64) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let v = arith::valuation(x, p)?;
    let u = arith::unit_part(x, p)?;
    let unit_rep = if p == 2 {
        let m8 = BigInt::from(8);
        let num = u.numer().mod_floor(&m8);
        let den = u.denom().mod_floor(&m8);
        let den_inv = mod_inverse(&den, &m8)?;
        unit_rep_2((num * den_inv).mod_floor(&m8).to_u64().unwrap())
    } else if arith::legendre_rat(&u, p)? == 1 {
        1
    } else {
        arith::smallest_nonresidue(p) as i64
    };
    Ok(SquareClass { p, odd_val: v.rem_euclid(2) == 1, unit_rep })
}

/// Square class of a p-adic value; requires enough certified digits
/// (1 for odd p, 3 for p = 2).
pub fn square_class_padic(x: &PAdic) -> Result<SquareClass> {
    let p = x.p();
    let v = x.valuation()?;
    let need = if p == 2 { 3 } else { 1 };
    if x.precision() < need {
        return Err(Error::InsufficientPrecision(format!(
            "square class needs {} digits, have {}",
            need,
            x.precision()
        )));
    }
    let unit_rep = if p == 2 {
        unit_rep_2(x.unit_mod(3)?.to_u64().unwrap() % 8)
    } else {
        let u = x.unit_mod(1)?;
        if arith::legendre_int(&u, p)? == 1 {
            1
        } else {
            arith::smallest_nonresidue(p) as i64
        }
    };
    Ok(SquareClass { p, odd_val: v.rem_euclid(2) == 1, unit_rep })
}

/// True when x is a square in Q_p* (certified through the class data).
pub fn is_square(x: &Rational, p: u64) -> Result<bool> {
    Ok(square_class(x, p)?.is_trivial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};
    use rand::{Rng, SeedableRng};

    #[test]
    fn embedding_and_add() {
        // (p=5): 2 + 3 -> 5 = 5^1 * 1
        let a = PAdic::from_int(5, 16, 2).unwrap();
        let b = PAdic::from_int(5, 16, 3).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s.valuation().unwrap(), 1);
        assert_eq!(s.unit_mod(1).unwrap(), BigInt::one());

        // (p=2): (1 + 2 + 4) * 1 = 7
        let x = PAdic::from_int(2, 16, 7).unwrap();
        let one = PAdic::from_int(2, 16, 1).unwrap();
        let prod = x.mul(&one).unwrap();
        assert_eq!(prod.representative(), rat(7));
        assert_eq!(prod.digits()[..3], [1, 1, 1]);
    }

    #[test]
    fn inverse_two_at_three() {
        // 1/2 in Q_3 has digits 2,1,1,1,...; oracle: multiply back mod 3^N
        let half = PAdic::from_rational(3, 12, &rat_frac(1, 2)).unwrap();
        let d = half.digits();
        assert_eq!(d[0], 2);
        assert!(d[1..].iter().all(|&x| x == 1));
        let two = PAdic::from_int(3, 12, 2).unwrap();
        let back = half.mul(&two).unwrap();
        assert_eq!(back.representative(), rat(1) - rat(3).pow(12) * rat(0));
        let diff = back.sub(&PAdic::from_int(3, 12, 1).unwrap()).unwrap();
        assert!(diff.is_zero_at_precision());
    }

    #[test]
    fn cancellation_shrinks_precision() {
        let a = PAdic::from_int(5, 10, 26).unwrap();
        let b = PAdic::from_int(5, 10, 1).unwrap();
        let d = a.sub(&b).unwrap(); // 25 = 5^2
        assert_eq!(d.valuation().unwrap(), 2);
        // knowledge was mod 5^10, so 8 digits survive
        assert_eq!(d.precision(), 8);
    }

    #[test]
    fn division_by_indistinguishable_zero_errors() {
        let a = PAdic::from_int(7, 8, 3).unwrap();
        let z = PAdic::zero_at(7, 8);
        assert!(matches!(a.div(&z), Err(Error::InsufficientPrecision(_))));
        let mismatch = PAdic::from_int(5, 8, 3).unwrap();
        assert!(matches!(
            padic_arith(&a, &mismatch, PadicOp::Add),
            Err(Error::PrimeMismatch(7, 5))
        ));
    }

    #[test]
    fn sqrt_17_exists_at_2() {
        // oracle: brute force x with x^2 = 17 mod 2^12 exists, then lift
        let mut found = false;
        for x in (1u64..4096).step_by(2) {
            if (x * x) % 4096 == 17 % 4096 {
                found = true;
                break;
            }
        }
        assert!(found);
        let a = PAdic::from_int(2, 24, 17).unwrap();
        let r = padic_sqrt(&a).unwrap().expect("17 = 1 mod 8 is a square");
        let diff = r.mul(&r).unwrap().sub(&a).unwrap();
        assert!(diff.is_zero_at_precision());
    }

    #[test]
    fn sqrt_minus5_none_at_2() {
        let a = PAdic::from_int(2, 24, -5).unwrap();
        assert!(padic_sqrt(&a).unwrap().is_none());
    }

    #[test]
    fn sqrt_disc_example_at_3() {
        // d = disc(g) = disc(f) = -117614919680 lies in Q_3*^2
        let d = rat(-117614919680);
        let a = PAdic::from_rational(3, 40, &d).unwrap();
        let r = padic_sqrt(&a).unwrap().expect("disc is a 3-adic square");
        let diff = r.mul(&r).unwrap().sub(&a).unwrap();
        assert!(diff.is_zero_at_precision());
        assert!(square_class(&d, 3).unwrap().is_trivial());
    }

    #[test]
    fn square_class_examples() {
        // -5*d(f) in Q_2*^2, -5 not
        let d = rat(-117614919680);
        let c1 = square_class(&(rat(-5) * &d), 2).unwrap();
        assert!(c1.is_trivial());
        let c2 = square_class(&rat(-5), 2).unwrap();
        assert!(!c2.is_trivial());
        assert_eq!(c2.representative(), BigInt::from(-5));
        let c3 = square_class(&rat(9), 3).unwrap();
        assert!(c3.is_trivial());
    }

    #[test]
    fn square_class_is_multiplicative() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for &p in &[2u64, 3, 5, 7] {
            for _ in 0..250 {
                let x = rat_frac(
                    rng.gen_range(1..3000) * if rng.gen_bool(0.5) { -1 } else { 1 },
                    rng.gen_range(1..3000),
                );
                let y = rat_frac(
                    rng.gen_range(1..3000) * if rng.gen_bool(0.5) { -1 } else { 1 },
                    rng.gen_range(1..3000),
                );
                let cx = square_class(&x, p).unwrap();
                let cy = square_class(&y, p).unwrap();
                let cxy = square_class(&(&x * &y), p).unwrap();
                assert_eq!(cx.mul(&cy).unwrap(), cxy);
            }
        }
    }

    #[test]
    fn squares_iff_legendre_odd_p() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            for u in 1..p {
                let l = arith::legendre_int(&BigInt::from(u), p).unwrap();
                let a = PAdic::from_int(p, 12, u as i64).unwrap();
                let s = padic_sqrt(&a).unwrap();
                assert_eq!(s.is_some(), l == 1, "p={} u={}", p, u);
            }
        }
    }

    #[test]
    fn squares_iff_1_mod_8_at_2() {
        for n in (-999i64..1000).step_by(2) {
            let a = PAdic::from_int(2, 16, n).unwrap();
            let s = padic_sqrt(&a).unwrap();
            assert_eq!(s.is_some(), n.rem_euclid(8) == 1, "n={}", n);
        }
    }

    #[test]
    fn resquare_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let p = *[2u64, 3, 5, 13].iter().nth(rng.gen_range(0..4)).unwrap();
            let x = rat_frac(
                rng.gen_range(1..500) * if rng.gen_bool(0.5) { -1 } else { 1 },
                rng.gen_range(1..500),
            );
            let sq = &x * &x;
            let a = PAdic::from_rational(p, 20, &sq).unwrap();
            let r = padic_sqrt(&a).unwrap().expect("constructed square");
            let diff = r.mul(&r).unwrap().sub(&a).unwrap();
            assert!(diff.is_zero_at_precision());
        }
    }

    #[test]
    fn display_and_json() {
        let a = PAdic::from_int(5, 4, 50).unwrap();
        assert_eq!(format!("{}", a), "5^2 * (2) + O(5^6)");
        let j = a.to_json();
        assert_eq!(j["p"], 5);
        assert_eq!(j["val"], 2);
        assert_eq!(j["prec"], 4);
    }
}
