//! Dense univariate polynomials over Q: exact arithmetic, resultants and
//! discriminants, the resolvent cubic, Sturm chains, and complete
//! factorization in degree <= 4.

use crate::arith::{rat, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial over Q, coefficients ascending, no trailing zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    /// Monomial c * X^n.
    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut v = vec![Rational::zero(); n + 1];
        v[n] = c;
        QPoly::new(v)
    }

    pub fn x() -> Self {
        QPoly::monomial(rat(1), 1)
    }

    pub fn from_descending(coeffs: &[Rational]) -> Self {
        let mut v: Vec<Rational> = coeffs.to_vec();
        v.reverse();
        QPoly::new(v)
    }

    pub fn from_descending_ints(coeffs: &[i64]) -> Self {
        QPoly::from_descending(&coeffs.iter().map(|&c| rat(c)).collect::<Vec<_>>())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree of a nonzero polynomial; panics on zero (call sites check).
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat((i + 1) as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            v[i] += c;
        }
        QPoly::new(v)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::new(v)
    }

    pub fn mul_scalar(&self, s: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division; divisor must be nonzero.
    pub fn div_rem(&self, d: &QPoly) -> Result<(QPoly, QPoly)> {
        if d.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut rem = self.coeffs.clone();
        let dd = d.deg();
        let dl = d.lead();
        if rem.len() < dd + 1 {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = &rem[i] / &dl;
            if !c.is_zero() {
                q[i - dd] = c.clone();
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let idx = i - dd + j;
                    rem[idx] = &rem[idx] - &(&c * dc);
                }
            }
        }
        Ok((QPoly::new(q), QPoly::new(rem)))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let l = a.lead();
            a.mul_scalar(&(rat(1) / l))
        }
    }

    /// f(aX + b).
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> QPoly {
        let mut acc = QPoly::zero();
        let lin = QPoly::new(vec![b.clone(), a.clone()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&QPoly::constant(c.clone()));
        }
        acc
    }

    /// X^deg * f(1/X).
    pub fn reverse(&self) -> QPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        QPoly::new(v)
    }

    /// Scale so the coefficients are coprime integers with positive leading
    /// coefficient; returns (primitive integer polynomial, unit multiplier)
    /// with self = multiplier * primitive.
    pub fn primitive_integer(&self) -> (QPoly, Rational) {
        if self.is_zero() {
            return (QPoly::zero(), rat(1));
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = QPoly::new(
            ints.iter()
                .map(|c| Rational::from_integer(c / &g))
                .collect(),
        );
        let mult = Rational::new(g, denom_lcm);
        (prim, mult)
    }

    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.denom().is_one() {
                    Some(c.to_integer())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        self.mul_scalar(&(rat(1) / self.lead()))
    }

    pub fn pow(&self, n: usize) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_separable(&self) -> bool {
        match self.degree() {
            None | Some(0) => true,
            _ => self.gcd(&self.derivative()).deg() == 0,
        }
    }
}

/// Resultant over Q via the Euclidean remainder sequence.
pub fn resultant(f: &QPoly, g: &QPoly) -> Rational {
    if f.is_zero() || g.is_zero() {
        return Rational::zero();
    }
    let (df, dg) = (f.deg(), g.deg());
    if dg == 0 {
        return pow_rat(&g.lead(), df as u32);
    }
    if df == 0 {
        return pow_rat(&f.lead(), dg as u32);
    }
    if df < dg {
        let sign = if df * dg % 2 == 1 { rat(-1) } else { rat(1) };
        return sign * resultant(g, f);
    }
    let (_, r) = f.div_rem(g).expect("nonzero divisor");
    if r.is_zero() {
        return Rational::zero();
    }
    let dr = r.deg();
    let sign = if df * dg % 2 == 1 { rat(-1) } else { rat(1) };
    sign * pow_rat(&g.lead(), (df - dr) as u32) * resultant(g, &r)
}

fn pow_rat(x: &Rational, n: u32) -> Rational {
    let mut acc = rat(1);
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// disc(f) = (-1)^(n(n-1)/2) resultant(f, f') / lead(f).
pub fn discriminant(f: &QPoly) -> Result<Rational> {
    let n = f.degree().ok_or(Error::ZeroInput)?;
    if n < 1 {
        return Err(Error::Domain("discriminant needs degree >= 1".into()));
    }
    let res = resultant(f, &f.derivative());
    let sign = if (n * (n - 1) / 2) % 2 == 1 { rat(-1) } else { rat(1) };
    Ok(sign * res / f.lead())
}

/// Depress a monic quartic: returns (g, s) with g(Y) = f(Y + s) having no
/// cubic term, s = -a3/4.
pub fn depress_quartic(f: &QPoly) -> Result<(QPoly, Rational)> {
    if f.degree() != Some(4) {
        return Err(Error::DegreeUnsupported(f.degree().unwrap_or(0), 4));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let s = -f.coeff(3) / rat(4);
    Ok((f.compose_linear(&rat(1), &s), s))
}

/// Resolvent cubic of a monic quartic. For the depressed form
/// X^4 + pX^2 + qX + r this is Y^3 - 2p Y^2 + (p^2 - 4r) Y + q^2; the
/// convention is pinned so that X^4 + 8X^2 + 256X - 20 yields
/// Y^3 - 16Y^2 + 144Y + 65536. General quartics are depressed first and the
/// resolvent of the depressed form is returned.
pub fn resolvent_cubic(f: &QPoly) -> Result<QPoly> {
    let (g, _) = depress_quartic(f)?;
    let p = g.coeff(2);
    let q = g.coeff(1);
    let r = g.coeff(0);
    Ok(QPoly::new(vec![
        &q * &q,
        &p * &p - rat(4) * &r,
        rat(-2) * &p,
        rat(1),
    ]))
}

/// Number of distinct real roots via a Sturm chain (exact).
pub fn sturm_real_root_count(f: &QPoly) -> Result<usize> {
    let n = f.degree().ok_or(Error::ZeroInput)?;
    if n == 0 {
        return Ok(0);
    }
    // squarefree part: distinct roots only
    let sf = {
        let g = f.gcd(&f.derivative());
        if g.deg() == 0 {
            f.clone()
        } else {
            f.div_rem(&g)?.0
        }
    };
    let mut chain = vec![sf.clone(), sf.derivative()];
    while !chain.last().unwrap().is_zero() {
        let k = chain.len();
        let (_, r) = chain[k - 2].div_rem(&chain[k - 1])?;
        chain.push(r.neg());
    }
    chain.pop();
    let sign_at_inf = |p: &QPoly, neg: bool| -> i8 {
        if p.is_zero() {
            return 0;
        }
        let l = p.lead();
        let mut s = if l.is_positive() { 1i8 } else { -1 };
        if neg && p.deg() % 2 == 1 {
            s = -s;
        }
        s
    };
    let variations = |neg: bool| -> usize {
        let signs: Vec<i8> = chain
            .iter()
            .map(|p| sign_at_inf(p, neg))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    Ok(variations(true) - variations(false))
}

/// Complete factorization over Q in degree <= 4.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub constant: Rational,
    /// (monic irreducible factor, multiplicity)
    pub factors: Vec<(QPoly, usize)>,
}

impl Factorization {
    pub fn product(&self) -> QPoly {
        let mut acc = QPoly::constant(self.constant.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub fn factor_over_q(f: &QPoly) -> Result<Factorization> {
    let n = f.degree().ok_or(Error::ZeroInput)?;
    if n > 4 {
        return Err(Error::DegreeUnsupported(n, 4));
    }
    let constant = f.lead();
    let mut work = f.monic();
    let mut factors: Vec<(QPoly, usize)> = Vec::new();

    // X^k part
    let mut zero_mult = 0usize;
    while work.coeff(0).is_zero() && work.deg() > 0 {
        work = work.div_rem(&QPoly::x())?.0;
        zero_mult += 1;
    }
    if zero_mult > 0 {
        factors.push((QPoly::x(), zero_mult));
    }

    // squarefree decomposition (Yun), then split each squarefree piece
    for (part, mult) in squarefree_decomposition(&work)? {
        for irr in factor_squarefree(&part)? {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| format!("{}", a.0).cmp(&format!("{}", b.0)))
    });
    Ok(Factorization { constant, factors })
}

fn squarefree_decomposition(f: &QPoly) -> Result<Vec<(QPoly, usize)>> {
    if f.deg() == 0 {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let g = f.gcd(&f.derivative());
    if g.deg() == 0 {
        out.push((f.clone(), 1));
        return Ok(out);
    }
    let mut w = f.div_rem(&g)?.0;
    let mut y = g;
    let mut i = 1usize;
    while w.deg() > 0 {
        let c = w.gcd(&y);
        let part = w.div_rem(&c)?.0;
        if part.deg() > 0 {
            out.push((part, i));
        }
        w = c.clone();
        y = y.div_rem(&c)?.0;
        i += 1;
    }
    if y.deg() > 0 {
        // leftover perfect power (cannot happen in char 0 with Yun)
        out.push((y, i));
    }
    Ok(out)
}

/// Rational roots of a squarefree monic polynomial, by divisor search on the
/// primitive integer form.
pub fn rational_roots(f: &QPoly) -> Vec<Rational> {
    if f.is_zero() || f.deg() == 0 {
        return vec![];
    }
    let (prim, _) = f.primitive_integer();
    let ints = prim.integer_coeffs().expect("primitive form is integral");
    let a0 = &ints[0];
    let an = ints.last().unwrap();
    if a0.is_zero() {
        let mut roots = vec![Rational::zero()];
        let rest = f.div_rem(&QPoly::x()).unwrap().0;
        roots.extend(rational_roots(&rest));
        return roots;
    }
    let num_divs = divisors(&a0.abs());
    let den_divs = divisors(&an.abs());
    let mut roots = Vec::new();
    for nu in &num_divs {
        for de in &den_divs {
            for sign in [1i64, -1] {
                let cand = Rational::new(nu * BigInt::from(sign), de.clone());
                if f.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // desk-scale inputs; trial division enumeration
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

fn factor_squarefree(f: &QPoly) -> Result<Vec<QPoly>> {
    let n = f.deg();
    match n {
        0 => Ok(vec![]),
        1 => Ok(vec![f.clone()]),
        _ => {
            let roots = rational_roots(f);
            if !roots.is_empty() {
                let mut rest = f.clone();
                let mut out = Vec::new();
                for r in &roots {
                    let lin = QPoly::new(vec![-r, rat(1)]);
                    rest = rest.div_rem(&lin)?.0;
                    out.push(lin);
                }
                out.extend(factor_squarefree(&rest)?);
                return Ok(out);
            }
            match n {
                2 | 3 => Ok(vec![f.clone()]), // no rational root => irreducible
                4 => factor_rootless_quartic(f),
                _ => Err(Error::DegreeUnsupported(n, 4)),
            }
        }
    }
}

/// Quadratic splittings of a monic quartic with no rational roots: f splits
/// into two monic quadratics over Q iff the auxiliary cubic
/// S(Z) = Z^3 + 2pZ^2 + (p^2-4r)Z - q^2 of the depressed form has a rational
/// root z0 with z0 = u^2 a rational square (u = 0 allowed exactly when q = 0).
fn factor_rootless_quartic(f: &QPoly) -> Result<Vec<QPoly>> {
    let (g, s) = depress_quartic(&f.monic())?;
    let p = g.coeff(2);
    let q = g.coeff(1);
    let r = g.coeff(0);
    let aux = QPoly::new(vec![
        -(&q * &q),
        &p * &p - rat(4) * &r,
        rat(2) * &p,
        rat(1),
    ]);
    for z0 in rational_roots(&aux) {
        if z0.is_zero() {
            if !q.is_zero() {
                continue;
            }
            // biquadratic: Y^4 + pY^2 + r = (Y^2+v)(Y^2+w) iff p^2-4r is a square
            let d = &p * &p - rat(4) * &r;
            if let Some(sq) = rational_sqrt(&d) {
                let v = (&p - &sq) / rat(2);
                let w = (&p + &sq) / rat(2);
                let f1 = QPoly::new(vec![v, rat(0), rat(1)]);
                let f2 = QPoly::new(vec![w, rat(0), rat(1)]);
                return Ok(shift_back(vec![f1, f2], &s));
            }
        } else if let Some(u) = rational_sqrt(&z0) {
            if u.is_zero() {
                continue;
            }
            let qu = &q / &u;
            let v = (&p + &z0 - &qu) / rat(2);
            let w = (&p + &z0 + &qu) / rat(2);
            let f1 = QPoly::new(vec![v, u.clone(), rat(1)]);
            let f2 = QPoly::new(vec![w, -u, rat(1)]);
            return Ok(shift_back(vec![f1, f2], &s));
        }
    }
    Ok(vec![f.clone()])
}

fn shift_back(factors: Vec<QPoly>, s: &Rational) -> Vec<QPoly> {
    factors
        .into_iter()
        .map(|f| f.compose_linear(&rat(1), s))
        .collect()
}

/// Exact square root in Q, if any.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rational::zero());
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(fm, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(fm, "-")?;
                }
                first = false;
            } else if neg {
                write!(fm, " - ")?;
            } else {
                write!(fm, " + ")?;
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(fm, "{}", mag)?;
            }
            match i {
                0 => {}
                1 => write!(fm, "X")?,
                _ => write!(fm, "X^{}", i)?,
            }
        }
        Ok(())
    }
}

/// Parse "X^4+8X^2+256X-20" style strings or a degree-descending JSON array
/// such as [1,0,8,256,-20] (sniffed by a leading '[').
pub fn parse_poly(s: &str) -> Result<QPoly> {
    let t = s.trim();
    if t.starts_with('[') {
        let vals: Vec<serde_json::Value> = serde_json::from_str(t)
            .map_err(|e| Error::Domain(format!("bad JSON coefficient array: {}", e)))?;
        let mut coeffs = Vec::new();
        for v in vals {
            let c = match &v {
                serde_json::Value::Number(n) => {
                    if let Some(i) = n.as_i64() {
                        rat(i)
                    } else {
                        return Err(Error::Domain(format!("non-integer JSON coefficient {}", n)));
                    }
                }
                serde_json::Value::String(st) => parse_rational(st)?,
                _ => return Err(Error::Domain(format!("bad coefficient {}", v))),
            };
            coeffs.push(c);
        }
        return Ok(QPoly::from_descending(&coeffs));
    }
    parse_poly_text(t)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Domain(format!("bad rational '{}': {}", s, e)))
}

fn parse_poly_text(s: &str) -> Result<QPoly> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Domain("empty polynomial".into()));
    }
    let mut terms: Vec<(Rational, usize)> = Vec::new();
    let bytes: Vec<char> = cleaned.chars().collect();
    let mut i = 0usize;
    while i < bytes.len() {
        let mut sign = rat(1);
        while i < bytes.len() && (bytes[i] == '+' || bytes[i] == '-') {
            if bytes[i] == '-' {
                sign = -sign;
            }
            i += 1;
        }
        if i >= bytes.len() {
            return Err(Error::Domain(format!("dangling sign in '{}'", s)));
        }
        // coefficient digits (possibly a fraction a/b)
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '/') {
            i += 1;
        }
        let coeff_str: String = bytes[start..i].iter().collect();
        let mut coeff = if coeff_str.is_empty() {
            rat(1)
        } else {
            parse_rational(&coeff_str)?
        };
        coeff *= sign;
        if i < bytes.len() && bytes[i] == '*' {
            i += 1;
        }
        let mut exp = 0usize;
        if i < bytes.len() && (bytes[i] == 'X' || bytes[i] == 'x') {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == '^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let e_str: String = bytes[es..i].iter().collect();
                exp = e_str
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad exponent in '{}'", s)))?;
            }
        } else if coeff_str.is_empty() {
            return Err(Error::Domain(format!("bad term in '{}'", s)));
        }
        terms.push((coeff, exp));
    }
    let max_deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); max_deg + 1];
    for (c, e) in terms {
        coeffs[e] += c;
    }
    Ok(QPoly::new(coeffs))
}

pub fn to_json_descending(f: &QPoly) -> serde_json::Value {
    let mut v: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
    v.reverse();
    serde_json::json!(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;
    use rand::{Rng, SeedableRng};

    fn f58() -> QPoly {
        QPoly::from_descending_ints(&[1, 0, 8, 256, -20])
    }

    fn g58() -> QPoly {
        QPoly::from_descending_ints(&[1, -16, 144, 65536])
    }

    #[test]
    fn parse_and_display() {
        let f = parse_poly("X^4+8X^2+256X-20").unwrap();
        assert_eq!(f, f58());
        assert_eq!(format!("{}", f), "X^4 + 8X^2 + 256X - 20");
        let j = parse_poly("[1,0,8,256,-20]").unwrap();
        assert_eq!(j, f);
        assert_eq!(parse_poly("-X").unwrap(), QPoly::from_descending_ints(&[-1, 0]));
        assert_eq!(
            parse_poly("1/2X^2-3").unwrap(),
            QPoly::new(vec![rat(-3), rat(0), rat_frac(1, 2)])
        );
        assert!(parse_poly("X^+").is_err());
    }

    #[test]
    fn discriminant_cubic_example() {
        // oracle: -4a^3 - 27b^2 with a=-3, b=1 gives 108 - 27 = 81
        let f = QPoly::from_descending_ints(&[1, 0, -3, 1]);
        assert_eq!(discriminant(&f).unwrap(), rat(81));
    }

    #[test]
    fn discriminant_quadratic_formula() {
        // disc(X^2 - d) = 4d
        for d in [-7i64, -1, 2, 5, 13] {
            let f = QPoly::from_descending_ints(&[1, 0, -d]);
            assert_eq!(discriminant(&f).unwrap(), rat(4 * d));
        }
    }

    #[test]
    fn discriminant_of_example_pair() {
        let df = discriminant(&f58()).unwrap();
        let dg = discriminant(&g58()).unwrap();
        assert_eq!(df, dg);
        assert_eq!(df, rat(-117614919680));
    }

    #[test]
    fn resolvent_matches_paper_pair() {
        assert_eq!(resolvent_cubic(&f58()).unwrap(), g58());
        // X^4 + qX -> X^3 + q^2 (p = r = 0)
        let f = QPoly::from_descending_ints(&[1, 0, 0, 9, 0]);
        assert_eq!(
            resolvent_cubic(&f).unwrap(),
            QPoly::from_descending_ints(&[1, 0, 0, 81])
        );
        assert!(matches!(
            resolvent_cubic(&QPoly::from_descending_ints(&[2, 0, 0, 0, 1])),
            Err(Error::NotMonic)
        ));
    }

    #[test]
    fn resolvent_discriminant_identity_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let mut done = 0;
        while done < 200 {
            let f = QPoly::from_descending_ints(&[
                1,
                rng.gen_range(-9..10),
                rng.gen_range(-9..10),
                rng.gen_range(-9..10),
                rng.gen_range(-9..10),
            ]);
            let d = discriminant(&f).unwrap();
            if d.is_zero() {
                continue;
            }
            let r = resolvent_cubic(&f).unwrap();
            assert_eq!(discriminant(&r).unwrap(), d, "f = {}", f);
            done += 1;
        }
    }

    #[test]
    fn factor_examples() {
        let fac = factor_over_q(&f58()).unwrap();
        assert!(fac.is_irreducible(), "f58 must be irreducible over Q");

        let fac2 = factor_over_q(&QPoly::from_descending_ints(&[1, 0, -1])).unwrap();
        assert_eq!(fac2.factors.len(), 2);
        assert_eq!(fac2.product(), QPoly::from_descending_ints(&[1, 0, -1]));

        let fac3 = factor_over_q(&QPoly::from_descending_ints(&[1, 0, 0, 0, 1])).unwrap();
        assert!(fac3.is_irreducible(), "X^4+1 irreducible over Q");
    }

    #[test]
    fn x4_plus_1_irreducible_via_bounded_search_oracle() {
        // oracle: exhaustive integer quadratic-pair search with coefficient
        // bound from root bounds (all roots of X^4+1 have |.| = 1, so any
        // monic integer quadratic factor has coefficients bounded by 2)
        let f = QPoly::from_descending_ints(&[1, 0, 0, 0, 1]);
        let mut reducible = false;
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let q = QPoly::from_descending_ints(&[1, a, b]);
                let (quo, rem) = f.div_rem(&q).unwrap();
                if rem.is_zero() && quo.deg() == 2 {
                    reducible = true;
                }
            }
        }
        assert!(!reducible);
    }

    #[test]
    fn factor_product_reconstructs_input() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        for _ in 0..300 {
            let deg = rng.gen_range(1..5);
            let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-8..9)).collect();
            if c[deg] == 0 {
                c[deg] = 1;
            }
            let f = QPoly::new(c.iter().map(|&x| rat(x)).collect());
            let fac = factor_over_q(&f).unwrap();
            assert_eq!(fac.product(), f, "f = {}", f);
            for (g, _) in &fac.factors {
                assert!(factor_over_q(g).unwrap().is_irreducible(), "{} factor {}", f, g);
            }
        }
    }

    #[test]
    fn factor_with_multiplicity() {
        // (X-1)^2 (X+2)
        let f = QPoly::from_descending_ints(&[1, -1, 1]) // placeholder
            .mul(&QPoly::one());
        let _ = f;
        let g = QPoly::from_descending_ints(&[1, -1])
            .pow(2)
            .mul(&QPoly::from_descending_ints(&[1, 2]));
        let fac = factor_over_q(&g).unwrap();
        assert_eq!(fac.product(), g);
        assert!(fac.factors.iter().any(|(_, m)| *m == 2));
    }

    #[test]
    fn resultant_zero_iff_common_factor() {
        let a = QPoly::from_descending_ints(&[1, -1]); // X - 1
        let b = QPoly::from_descending_ints(&[1, 0, -1]); // X^2 - 1
        assert!(resultant(&a, &b).is_zero());
        let c = QPoly::from_descending_ints(&[1, 1]);
        let d = QPoly::from_descending_ints(&[1, 0, 1]);
        assert!(!resultant(&c, &d).is_zero());
    }

    #[test]
    fn sturm_counts() {
        // X^5 - 4X + 2 has exactly 3 real roots
        let f = QPoly::from_descending_ints(&[1, 0, 0, 0, -4, 2]);
        assert_eq!(sturm_real_root_count(&f).unwrap(), 3);
        // f58: disc < 0 quartic, exactly 2 real roots
        assert_eq!(sturm_real_root_count(&f58()).unwrap(), 2);
        // X^2 + 1: none
        assert_eq!(
            sturm_real_root_count(&QPoly::from_descending_ints(&[1, 0, 1])).unwrap(),
            0
        );
        // (X-1)^2: one distinct
        assert_eq!(
            sturm_real_root_count(&QPoly::from_descending_ints(&[1, -2, 1])).unwrap(),
            1
        );
    }

    #[test]
    fn disc_zero_iff_repeated_factor_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..500 {
            let deg = rng.gen_range(1..5);
            let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-6..7)).collect();
            if c[deg] == 0 {
                c[deg] = 1;
            }
            let f = QPoly::new(c.iter().map(|&x| rat(x)).collect());
            let d = discriminant(&f).unwrap();
            let fac = factor_over_q(&f).unwrap();
            let repeated = fac.factors.iter().any(|(_, m)| *m > 1);
            assert_eq!(d.is_zero(), repeated, "f = {}", f);
        }
    }
}
