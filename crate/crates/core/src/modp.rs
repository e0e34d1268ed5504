//! Polynomial arithmetic over F_p and small extensions F_{p^d}, for residue
//! factorization, root finding mod p, and Dedekind factor-shape checks.
//! Moduli are desk-scale (p < 2^31); coefficients live in u64 with u128
//! products.

use crate::error::{Error, Result};

fn addm(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn invm(a: u64, p: u64) -> u64 {
    // p prime
    crate::arith::powmod(a, p - 2, p)
}

/// Dense polynomial over F_p, ascending coefficients, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        ModPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        ModPoly { p, c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &co in self.c.iter().rev() {
            acc = addm(mulm(acc, x, self.p), co, self.p);
        }
        acc
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invm(*self.c.last().unwrap(), self.p);
        ModPoly::new(self.p, self.c.iter().map(|&x| mulm(x, inv, self.p)).collect())
    }

    pub fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::zero(self.p);
        }
        let mut v = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = addm(v[i + j], mulm(a, b, self.p), self.p);
            }
        }
        ModPoly::new(self.p, v)
    }

    pub fn sub(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let mut v = vec![0u64; n];
        for (i, &a) in self.c.iter().enumerate() {
            v[i] = a;
        }
        for (i, &b) in o.c.iter().enumerate() {
            v[i] = subm(v[i], b, self.p);
        }
        ModPoly::new(self.p, v)
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.deg();
        let dl_inv = invm(*d.c.last().unwrap(), p);
        while r.len() > dd {
            let lead = *r.last().unwrap();
            if lead != 0 {
                let c = mulm(lead, dl_inv, p);
                let off = r.len() - 1 - dd;
                for (j, &dc) in d.c.iter().enumerate() {
                    r[off + j] = subm(r[off + j], mulm(c, dc, p), p);
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.len() <= dd {
                break;
            }
        }
        ModPoly::new(p, r)
    }

    pub fn div_exact(&self, d: &ModPoly) -> ModPoly {
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.deg();
        let dl_inv = invm(*d.c.last().unwrap(), p);
        let mut q = vec![0u64; r.len().saturating_sub(dd)];
        for i in (dd..r.len()).rev() {
            let c = mulm(r[i], dl_inv, p);
            if c != 0 {
                q[i - dd] = c;
                for (j, &dc) in d.c.iter().enumerate() {
                    r[i - dd + j] = subm(r[i - dd + j], mulm(c, dc, p), p);
                }
            }
        }
        ModPoly::new(p, q)
    }

    pub fn gcd(&self, o: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> ModPoly {
        if self.c.len() <= 1 {
            return ModPoly::zero(self.p);
        }
        ModPoly::new(
            self.p,
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(i, &co)| mulm(co, (i as u64 + 1) % self.p, self.p))
                .collect(),
        )
    }

    /// self^e mod m, by square and multiply.
    pub fn powmod(&self, mut e: u64, m: &ModPoly) -> ModPoly {
        let mut base = self.rem(m);
        let mut acc = ModPoly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// X^(p^k) mod m.
    pub fn frobenius_power(m: &ModPoly, k: u32) -> ModPoly {
        let p = m.p;
        let mut x = ModPoly::x(p).rem(m);
        for _ in 0..k {
            // raise to p-th power
            x = x.powmod_self(p, m);
        }
        x
    }

    fn powmod_self(&self, e: u64, m: &ModPoly) -> ModPoly {
        self.powmod(e, m)
    }

    pub fn squarefree_part(&self) -> ModPoly {
        let d = self.derivative();
        if d.is_zero() {
            // perfect p-th power in F_p[X]; desk degrees <= 4 so extract directly
            return self.monic();
        }
        let g = self.gcd(&d);
        if g.deg() == 0 {
            self.monic()
        } else {
            self.div_exact(&g).monic()
        }
    }
}

/// Degrees (with multiplicity) of the irreducible factors of f over F_p.
/// For degree <= 4 only.
pub fn factor_shape(f: &ModPoly) -> Result<Vec<usize>> {
    let n = f.deg();
    if n > 4 {
        return Err(Error::DegreeUnsupported(n, 4));
    }
    if n == 0 {
        return Ok(vec![]);
    }
    let d = f.derivative();
    if d.is_zero() {
        // f = g(X^p) = g^p by Frobenius
        let p = f.p as usize;
        let g = ModPoly::new(f.p, f.c.iter().step_by(p).cloned().collect());
        let inner = factor_shape(&g)?;
        let mut shape = Vec::new();
        for _ in 0..p {
            shape.extend(inner.iter().cloned());
        }
        return finish_shape(shape);
    }
    let g = f.gcd(&d);
    if g.deg() == 0 {
        return finish_shape(shape_squarefree(&f.monic())?);
    }
    // f/g carries each distinct factor of multiplicity not divisible by p once
    let mut shape = shape_squarefree(&f.div_exact(&g))?;
    shape.extend(factor_shape(&g)?);
    finish_shape(shape)
}

fn finish_shape(mut shape: Vec<usize>) -> Result<Vec<usize>> {
    shape.sort_unstable();
    Ok(shape)
}

fn shape_squarefree(f: &ModPoly) -> Result<Vec<usize>> {
    let n = f.deg();
    if n == 0 {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut rest = f.monic();
    // distinct-degree: gcd with X^(p^d) - X peels factors of degree d
    for d in 1..=4u32 {
        if rest.deg() == 0 {
            break;
        }
        if (rest.deg() as u32) < d {
            break;
        }
        let frob = ModPoly::frobenius_power(&rest, d);
        let diff = frob.sub(&ModPoly::x(rest.p).rem(&rest));
        let g = if diff.is_zero() { rest.clone() } else { rest.gcd(&diff) };
        if g.deg() > 0 {
            debug_assert!(g.deg() % d as usize == 0);
            for _ in 0..(g.deg() / d as usize) {
                out.push(d as usize);
            }
            rest = rest.div_exact(&g);
        }
    }
    if rest.deg() > 0 {
        out.push(rest.deg());
    }
    Ok(out)
}

pub fn is_irreducible_mod_p(f: &ModPoly) -> Result<bool> {
    let shape = factor_shape(f)?;
    Ok(shape.len() == 1)
}

/// Distinct roots of f in F_p.
pub fn roots_mod_p(f: &ModPoly) -> Vec<u64> {
    let p = f.p;
    if f.deg() <= 4 && p <= 4096 {
        return (0..p).filter(|&x| f.eval(x) == 0).collect();
    }
    // linear part via gcd(f, X^p - X)
    let frob = ModPoly::frobenius_power(&f.monic(), 1);
    let diff = frob.sub(&ModPoly::x(p).rem(f));
    let lin = if diff.is_zero() { f.monic() } else { f.gcd(&diff) };
    extract_roots(&lin)
}

fn extract_roots(g: &ModPoly) -> Vec<u64> {
    // g splits into distinct linear factors
    let p = g.p;
    match g.deg() {
        0 => vec![],
        1 => vec![subm(0, mulm(g.c[0], invm(g.c[1], p), p), p)],
        2 => {
            // quadratic formula
            let a = g.c[2];
            let b = g.c[1];
            let c = g.c[0];
            let disc = subm(mulm(b, b, p), mulm(4 % p, mulm(a, c, p), p), p);
            match sqrt_mod_p_u64(disc, p) {
                None => vec![],
                Some(s) => {
                    let inv2a = invm(mulm(2 % p, a, p), p);
                    let r1 = mulm(subm(s, b, p), inv2a, p);
                    let r2 = mulm(subm(subm(0, b, p), s, p), inv2a, p);
                    if r1 == r2 {
                        vec![r1]
                    } else {
                        vec![r1, r2]
                    }
                }
            }
        }
        _ => {
            // Cantor-Zassenhaus style split with deterministic shifts
            for t in 0..64u64 {
                let shift = ModPoly::new(p, vec![t, 1]);
                let e = (p - 1) / 2;
                let pw = shift.powmod(e, g);
                let cand = pw.sub(&ModPoly::one(p));
                if cand.is_zero() {
                    continue;
                }
                let h = g.gcd(&cand);
                if h.deg() > 0 && h.deg() < g.deg() {
                    let mut a = extract_roots(&h);
                    a.extend(extract_roots(&g.div_exact(&h)));
                    return a;
                }
            }
            // fall back to scan for stubborn small p
            (0..p.min(1 << 22)).filter(|&x| g.eval(x) == 0).collect()
        }
    }
}

pub fn sqrt_mod_p_u64(a: u64, p: u64) -> Option<u64> {
    if p == 2 {
        return Some(a % 2);
    }
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if crate::arith::powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let r = crate::padic::sqrt_mod_prime(a, p)?;
    Some(r)
}

/// The field F_{p^d} as F_p[Y]/(w), w a fixed monic irreducible of degree d
/// (smallest in lexicographic coefficient order). Elements are coefficient
/// vectors of length d.
#[derive(Debug, Clone)]
pub struct SmallField {
    pub p: u64,
    pub d: usize,
    /// modulus, ascending, monic, length d+1
    pub w: Vec<u64>,
}

pub type FqElem = Vec<u64>;

impl SmallField {
    pub fn new(p: u64, d: usize) -> Result<SmallField> {
        if d == 1 {
            return Ok(SmallField { p, d, w: vec![0, 1] });
        }
        if p.pow(d as u32) > 1 << 22 {
            return Err(Error::SearchBoundExceeded(format!(
                "residue field F_{}^{} too large",
                p, d
            )));
        }
        // search monic irreducible of degree d
        let total = p.pow(d as u32);
        for code in 0..total {
            let mut w = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                w.push(c % p);
                c /= p;
            }
            w.push(1);
            let mp = ModPoly::new(p, w.clone());
            if is_irreducible_mod_p(&mp)? {
                return Ok(SmallField { p, d, w });
            }
        }
        Err(Error::SearchBoundExceeded(format!("no irreducible found for F_{}^{}", p, d)))
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.d as u32)
    }

    pub fn zero(&self) -> FqElem {
        vec![0; self.d]
    }

    pub fn one(&self) -> FqElem {
        let mut v = vec![0; self.d];
        v[0] = 1;
        v
    }

    pub fn from_u64(&self, n: u64) -> FqElem {
        let mut v = vec![0; self.d];
        v[0] = n % self.p;
        v
    }

    /// Enumerate all field elements (index order).
    pub fn element(&self, mut idx: u64) -> FqElem {
        let mut v = vec![0; self.d];
        for slot in v.iter_mut() {
            *slot = idx % self.p;
            idx /= self.p;
        }
        v
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        (0..self.d).map(|i| addm(a[i], b[i], self.p)).collect()
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        (0..self.d).map(|i| subm(a[i], b[i], self.p)).collect()
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let pa = ModPoly::new(self.p, a.clone());
        let pb = ModPoly::new(self.p, b.clone());
        let w = ModPoly::new(self.p, self.w.clone());
        let r = pa.mul(&pb).rem(&w);
        let mut v = r.c;
        v.resize(self.d, 0);
        v
    }

    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return None;
        }
        // a^(q-2)
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = self.size() - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Some(acc)
    }

    /// Evaluate a polynomial with F_q coefficients at x in F_q.
    pub fn eval_poly(&self, coeffs: &[FqElem], x: &FqElem) -> FqElem {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    /// Distinct roots in F_q of a polynomial with F_q coefficients
    /// (exhaustive scan; field sizes are capped in `new`).
    pub fn roots(&self, coeffs: &[FqElem]) -> Vec<FqElem> {
        (0..self.size())
            .map(|i| self.element(i))
            .filter(|x| self.is_zero(&self.eval_poly(coeffs, x)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f58_mod(p: u64) -> ModPoly {
        ModPoly::new(
            p,
            vec![(-20i64).rem_euclid(p as i64) as u64, 256 % p, 8 % p, 0, 1],
        )
    }

    #[test]
    fn shapes_match_known_factorizations() {
        // X^4+8X^2+256X-20 mod 3 = (X+1)(irreducible cubic)
        assert_eq!(factor_shape(&f58_mod(3)).unwrap(), vec![1, 3]);
        // mod 5: X(X-1)(X+3)^2
        assert_eq!(factor_shape(&f58_mod(5)).unwrap(), vec![1, 1, 1, 1]);
        // mod 23: (X-10)^2 (X^2-3X+9)
        assert_eq!(factor_shape(&f58_mod(23)).unwrap(), vec![1, 1, 2]);
    }

    #[test]
    fn roots_and_irreducibility() {
        let f = ModPoly::new(7, vec![1, 0, 1]); // X^2+1 mod 7: irreducible (7=3 mod 4)
        assert!(roots_mod_p(&f).is_empty());
        assert!(is_irreducible_mod_p(&f).unwrap());
        let g = ModPoly::new(13, vec![1, 0, 1]); // 13 = 1 mod 4: splits
        assert_eq!(roots_mod_p(&g).len(), 2);
        // large p root extraction
        let p = 1_000_003u64;
        let h = ModPoly::new(p, vec![p - 4, 0, 0, 0, 1]); // X^4 - 4 = (X^2-2)(X^2+2)
        let roots = roots_mod_p(&h);
        for r in &roots {
            assert_eq!(h.eval(*r), 0);
        }
    }

    #[test]
    fn small_field_arithmetic() {
        let f4 = SmallField::new(2, 2).unwrap();
        // F_4: x^2+x+1 = 0 for the generator
        assert_eq!(f4.w, vec![1, 1, 1]);
        let g = f4.element(2); // Y
        let g2 = f4.mul(&g, &g);
        assert_eq!(g2, f4.add(&g, &f4.one())); // Y^2 = Y + 1
        let inv = f4.inv(&g).unwrap();
        assert_eq!(f4.mul(&g, &inv), f4.one());
        // F_81
        let f81 = SmallField::new(3, 4).unwrap();
        for idx in [1u64, 5, 17, 80] {
            let a = f81.element(idx);
            let ai = f81.inv(&a).unwrap();
            assert_eq!(f81.mul(&a, &ai), f81.one());
        }
    }
}
