//! Polynomials with p-adic coefficients: just enough structure for cofactor
//! division, residue reduction, and the normalization transforms used by the
//! local factorization routines. Heavy algebra stays over Q.

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::modp::ModPoly;
use crate::padic::PAdic;
use crate::poly::QPoly;
use num_traits::ToPrimitive;

#[derive(Debug, Clone)]
pub struct PadicPoly {
    pub p: u64,
    /// ascending; the leading coefficient must be certified nonzero
    pub coeffs: Vec<PAdic>,
}

impl PadicPoly {
    pub fn from_qpoly(f: &QPoly, p: u64, prec: usize) -> Result<PadicPoly> {
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| PAdic::from_rational(p, prec, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(PadicPoly { p, coeffs })
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> &PAdic {
        self.coeffs.last().expect("nonempty polynomial")
    }

    pub fn coeff(&self, i: usize) -> PAdic {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| PAdic::zero_at(self.p, i64::MAX / 4))
    }

    pub fn is_monic(&self) -> Result<bool> {
        let l = self.lead();
        Ok(l.valuation()? == 0 && l.unit_mod(1)? == num_bigint::BigInt::from(1))
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Result<PadicPoly> {
        let l = self.lead().clone();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.div(&l))
            .collect::<Result<Vec<_>>>()?;
        Ok(PadicPoly { p: self.p, coeffs })
    }

    pub fn eval(&self, x: &PAdic) -> Result<PAdic> {
        let mut acc = PAdic::zero_at(self.p, i64::MAX / 4);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Result<PadicPoly> {
        if self.coeffs.len() <= 1 {
            return Ok(PadicPoly { p: self.p, coeffs: vec![PAdic::zero_at(self.p, i64::MAX / 4)] });
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let k = PAdic::from_int(self.p, c.precision().max(1), i as i64)?;
            coeffs.push(c.mul(&k)?);
        }
        Ok(PadicPoly { p: self.p, coeffs })
    }

    /// Quotient by the monic linear factor (X - r); the remainder is returned
    /// for certification (it should be indistinguishable from zero when r is
    /// a certified root).
    pub fn synthetic_div(&self, r: &PAdic) -> Result<(PadicPoly, PAdic)> {
        let n = self.deg();
        let mut q = vec![PAdic::zero_at(self.p, i64::MAX / 4); n];
        let mut carry = self.coeffs[n].clone();
        for i in (0..n).rev() {
            q[i] = carry.clone();
            carry = carry.mul(r)?.add(&self.coeffs[i])?;
        }
        Ok((PadicPoly { p: self.p, coeffs: q }, carry))
    }

    /// X -> X + c.
    pub fn shift(&self, c: &PAdic) -> Result<PadicPoly> {
        let mut acc: Vec<PAdic> = vec![];
        // Horner: f(X + c) built from the top coefficient down
        for co in self.coeffs.iter().rev() {
            // acc = acc * (X + c) + co
            let mut next = vec![PAdic::zero_at(self.p, i64::MAX / 4); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i + 1] = next[i + 1].add(a)?;
                next[i] = next[i].add(&a.mul(c)?)?;
            }
            next[0] = next[0].add(co)?;
            acc = next;
        }
        Ok(PadicPoly { p: self.p, coeffs: acc })
    }

    /// X -> p^s X followed by division by p^(s deg): keeps the polynomial
    /// monic and moves root valuations down by s.
    pub fn scale_var(&self, s: i64) -> PadicPoly {
        let n = self.deg() as i64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.shift(s * (i as i64 - n)))
            .collect();
        PadicPoly { p: self.p, coeffs }
    }

    /// Reduction mod p. Requires every coefficient to be certified integral
    /// and its residue known.
    pub fn residue(&self) -> Result<ModPoly> {
        let mut c = Vec::with_capacity(self.coeffs.len());
        for co in &self.coeffs {
            if co.is_zero_at_precision() {
                if co.valuation_lower_bound() >= 1 {
                    c.push(0);
                } else {
                    return Err(Error::InsufficientPrecision(
                        "coefficient residue unknown".into(),
                    ));
                }
            } else {
                let v = co.valuation()?;
                if v < 0 {
                    return Err(Error::Domain("non-integral coefficient in residue".into()));
                }
                if v >= 1 {
                    c.push(0);
                } else {
                    c.push(co.unit_mod(1)?.to_u64().ok_or_else(|| {
                        Error::Domain("residue does not fit in u64".into())
                    })?);
                }
            }
        }
        Ok(ModPoly::new(self.p, c))
    }

    /// Coefficient valuations for Newton-polygon work: exact valuation where
    /// certified, `Err` for coefficients whose valuation is only bounded.
    pub fn coeff_valuations(&self) -> Vec<std::result::Result<i64, i64>> {
        self.coeffs
            .iter()
            .map(|c| match c.valuation() {
                Ok(v) => Ok(v),
                Err(_) => Err(c.valuation_lower_bound()),
            })
            .collect()
    }

    /// Exact rational representatives of each coefficient (truncations).
    pub fn to_qpoly_representative(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c.representative()).collect())
    }

    pub fn min_precision(&self) -> usize {
        self.coeffs
            .iter()
            .filter(|c| !c.is_zero_at_precision())
            .map(|c| c.precision())
            .min()
            .unwrap_or(0)
    }
}

impl std::fmt::Display for PadicPoly {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .map(|(i, c)| format!("({})*X^{}", c, i))
            .collect();
        write!(fm, "{}", parts.join(" + "))
    }
}

/// Exact representative poly for display/JSON, one rational per coefficient.
pub fn padic_coeff_strings(f: &PadicPoly) -> Vec<String> {
    f.coeffs.iter().rev().map(|c| format!("{}", c)).collect()
}

pub fn padic_coeffs_json(f: &PadicPoly) -> serde_json::Value {
    serde_json::Value::Array(self_coeffs_json(f))
}

fn self_coeffs_json(f: &PadicPoly) -> Vec<serde_json::Value> {
    f.coeffs.iter().rev().map(|c| c.to_json()).collect()
}

/// Rational-coefficient view used when a factor is exactly rational.
pub fn qpoly_coeffs_json(f: &QPoly) -> serde_json::Value {
    crate::poly::to_json_descending(f)
}

/// Embed and evaluate: value of a rational polynomial at a p-adic point.
pub fn eval_qpoly_padic(f: &QPoly, x: &PAdic, prec: usize) -> Result<PAdic> {
    let fp = PadicPoly::from_qpoly(f, x.p(), prec)?;
    fp.eval(x)
}

/// Convenience: the p-adic embedding of a rational at the given precision.
pub fn embed(p: u64, prec: usize, x: &Rational) -> Result<PAdic> {
    PAdic::from_rational(p, prec, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::poly::QPoly;

    #[test]
    fn synthetic_division_certifies_roots() {
        // f = (X - 3)(X^2 + 1) over Q_5
        let f = QPoly::from_descending_ints(&[1, -3, 1, -3]);
        let fp = PadicPoly::from_qpoly(&f, 5, 20).unwrap();
        let r = PAdic::from_int(5, 20, 3).unwrap();
        let (q, rem) = fp.synthetic_div(&r).unwrap();
        assert!(rem.is_zero_at_precision() || rem.representative() == rat(0));
        assert_eq!(q.deg(), 2);
        let back = q.eval(&PAdic::from_int(5, 20, 2).unwrap()).unwrap();
        assert_eq!(back.representative(), rat(5)); // 2^2 + 1
    }

    #[test]
    fn shift_and_scale() {
        let f = QPoly::from_descending_ints(&[1, 0, -2]); // X^2 - 2
        let fp = PadicPoly::from_qpoly(&f, 7, 16).unwrap();
        let c = PAdic::from_int(7, 16, 3).unwrap();
        let g = fp.shift(&c).unwrap(); // (X+3)^2 - 2 = X^2 + 6X + 7
        assert_eq!(g.coeff(0).representative(), rat(7));
        assert_eq!(g.coeff(1).representative(), rat(6));
        let s = fp.scale_var(1); // (7X)^2 - 2 over 7^2 => X^2 - 2/49
        assert_eq!(s.coeff(0).valuation().unwrap(), -2);
        assert_eq!(s.coeff(2).valuation().unwrap(), 0);
    }

    #[test]
    fn residue_reduction() {
        let f = QPoly::from_descending_ints(&[1, 8, 256, -20]);
        let fp = PadicPoly::from_qpoly(&f, 3, 8).unwrap();
        let r = fp.residue().unwrap();
        assert_eq!(r.c, vec![1, 1, 2, 1]); // -20=1, 256=1, 8=2, 1
    }
}
