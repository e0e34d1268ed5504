//! Arithmetic in unramified extensions W = Z_p[Y]/(w) of Z_p and certified
//! root counting there. Used to pin residue degrees of quartic local factors
//! and as an independent oracle for Galois-ness of unramified factors.

use crate::arith;
use crate::error::{Error, Result};
use crate::modp::{FqElem, SmallField};
use crate::poly::QPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// The ring W/p^k with W the unramified extension of Z_p of degree d,
/// presented as Z_p[Y]/(w) for a fixed monic integer lift w of an
/// irreducible polynomial over F_p. Elements are coefficient vectors.
#[derive(Debug, Clone)]
pub struct UnramifiedRing {
    pub p: u64,
    pub d: usize,
    pub w: Vec<BigInt>,
    pub field: SmallField,
}

pub type WElem = Vec<BigInt>;

impl UnramifiedRing {
    pub fn new(p: u64, d: usize) -> Result<UnramifiedRing> {
        let field = SmallField::new(p, d)?;
        let w = field.w.iter().map(|&c| BigInt::from(c)).collect();
        Ok(UnramifiedRing { p, d, w, field })
    }

    pub fn zero(&self) -> WElem {
        vec![BigInt::zero(); self.d]
    }

    pub fn from_int(&self, n: &BigInt) -> WElem {
        let mut v = self.zero();
        v[0] = n.clone();
        v
    }

    fn modulus(&self, k: usize) -> BigInt {
        BigInt::from(self.p).pow(k as u32)
    }

    pub fn reduce(&self, a: &WElem, k: usize) -> WElem {
        let m = self.modulus(k);
        a.iter().map(|c| c.mod_floor(&m)).collect()
    }

    pub fn add(&self, a: &WElem, b: &WElem, k: usize) -> WElem {
        let m = self.modulus(k);
        (0..self.d)
            .map(|i| (&a[i] + &b[i]).mod_floor(&m))
            .collect()
    }

    pub fn sub(&self, a: &WElem, b: &WElem, k: usize) -> WElem {
        let m = self.modulus(k);
        (0..self.d)
            .map(|i| (&a[i] - &b[i]).mod_floor(&m))
            .collect()
    }

    pub fn mul(&self, a: &WElem, b: &WElem, k: usize) -> WElem {
        let m = self.modulus(k);
        let mut prod = vec![BigInt::zero(); 2 * self.d - 1];
        for i in 0..self.d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.d {
                prod[i + j] = (&prod[i + j] + &a[i] * &b[j]).mod_floor(&m);
            }
        }
        for i in (self.d..prod.len()).rev() {
            let c = prod[i].clone();
            if c.is_zero() {
                continue;
            }
            prod[i] = BigInt::zero();
            for (j, wc) in self.w.iter().enumerate().take(self.d) {
                prod[i - self.d + j] = (&prod[i - self.d + j] - &c * wc).mod_floor(&m);
            }
        }
        prod.truncate(self.d);
        prod
    }

    /// min p-adic valuation across coordinates; None for the zero vector.
    pub fn val(&self, a: &WElem) -> Option<i64> {
        let mut best: Option<i64> = None;
        for c in a {
            if !c.is_zero() {
                let v = arith::valuation_int(c, self.p).unwrap();
                best = Some(best.map_or(v, |b| b.min(v)));
            }
        }
        best
    }

    pub fn is_zero(&self, a: &WElem) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    /// Divide by p^t (coordinates must be divisible).
    pub fn shift_down(&self, a: &WElem, t: i64) -> WElem {
        if t <= 0 {
            let f = BigInt::from(self.p).pow((-t) as u32);
            return a.iter().map(|c| c * &f).collect();
        }
        let pk = BigInt::from(self.p).pow(t as u32);
        a.iter().map(|c| c / &pk).collect()
    }

    pub fn residue(&self, a: &WElem) -> FqElem {
        a.iter()
            .map(|c| c.mod_floor(&BigInt::from(self.p)).to_u64().unwrap())
            .collect()
    }

    pub fn lift(&self, a: &FqElem) -> WElem {
        a.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Inverse of a unit modulo p^k: residue inversion plus Newton lifting.
    pub fn inv_unit(&self, a: &WElem, k: usize) -> Result<WElem> {
        let res = self.residue(a);
        let rinv = self
            .field
            .inv(&res)
            .ok_or_else(|| Error::Domain("not a unit in W".into()))?;
        let mut x = self.lift(&rinv);
        let two = self.from_int(&BigInt::from(2));
        let mut good = 1usize;
        while good < k {
            good *= 2;
            let kk = good.min(k);
            let ax = self.mul(a, &x, kk);
            let t = self.sub(&two, &ax, kk);
            x = self.mul(&x, &t, kk);
        }
        Ok(self.reduce(&x, k))
    }

    /// Evaluate an integer polynomial (ascending) at a, in W/p^k.
    pub fn eval_int_poly(&self, coeffs: &[BigInt], a: &WElem, k: usize) -> WElem {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.mul(&acc, a, k);
            acc[0] = (&acc[0] + c).mod_floor(&self.modulus(k));
        }
        acc
    }

    /// Coefficients of g(c + X) via repeated synthetic Horner shifts.
    pub fn taylor_shift(&self, coeffs: &[BigInt], c: &WElem, k: usize) -> Vec<WElem> {
        let n = coeffs.len();
        let mut work: Vec<WElem> = coeffs.iter().map(|x| self.from_int(x)).collect();
        let mut out: Vec<WElem> = Vec::with_capacity(n);
        for stop in 0..n {
            for i in (stop..n - 1).rev() {
                let t = self.mul(&work[i + 1], c, k);
                work[i] = self.add(&work[i], &t, k);
            }
            out.push(work[stop].clone());
        }
        out
    }
}

/// A certified root in the unramified extension, as p^val * unit with the
/// unit coordinates known modulo p^known.
#[derive(Debug, Clone)]
pub struct WRoot {
    pub unit: WElem,
    pub val: i64,
    pub known: usize,
    /// v_W(g(approx)) at certification; None when exactly zero
    pub g_val: Option<i64>,
    pub gprime_val: i64,
    pub is_exact_zero: bool,
}

impl WRoot {
    pub fn value_at(&self, ring: &UnramifiedRing, k: usize) -> Option<WElem> {
        if self.is_exact_zero {
            return Some(ring.zero());
        }
        if self.val < 0 {
            return None;
        }
        Some(ring.reduce(&ring.shift_down(&self.unit, -self.val), k))
    }
}

/// Count and certify the roots of a rational polynomial in the unramified
/// extension of Q_p of degree d. Complete for separable inputs.
pub fn count_roots_unramified(
    h: &QPoly,
    p: u64,
    d: usize,
    prec: usize,
) -> Result<(usize, Vec<WRoot>, UnramifiedRing)> {
    let disc = crate::poly::discriminant(h)?;
    if disc.is_zero() {
        return Err(Error::Inseparable);
    }
    let ring = UnramifiedRing::new(p, d)?;
    let (prim, _) = h.primitive_integer();
    let mut roots: Vec<WRoot> = Vec::new();

    let mut prim_nz = prim.clone();
    if prim_nz.coeff(0).is_zero() {
        roots.push(WRoot {
            unit: ring.zero(),
            val: 0,
            known: prec,
            g_val: None,
            gprime_val: 0,
            is_exact_zero: true,
        });
        prim_nz = prim_nz.div_rem(&QPoly::x())?.0;
    }
    for reversed in [false, true] {
        if prim_nz.deg() == 0 {
            continue;
        }
        let base = if reversed { prim_nz.reverse() } else { prim_nz.clone() };
        let g = monicize_integer(&base);
        let lc = base.lead();
        let lcv = arith::valuation(&lc, p)?;
        for r in w_roots_monic(&ring, &g, prec)? {
            // y-root of g; root of base is y/lc; of prim: same, or lc/y reversed
            let (val, unit) = if !reversed {
                (r.val - lcv, r.unit.clone())
            } else {
                (lcv - r.val, r.unit.clone())
            };
            if reversed && val >= 0 {
                continue; // unit/positive roots handled by the direct pass
            }
            let unit_adj = adjust_unit(&ring, &unit, &lc, reversed, r.known)?;
            roots.push(WRoot { unit: unit_adj, val, known: r.known, ..r });
        }
    }
    dedupe_roots(&ring, &mut roots, &disc, p)?;
    Ok((roots.len(), roots, ring))
}

fn adjust_unit(
    ring: &UnramifiedRing,
    y_unit: &WElem,
    lc: &crate::arith::Rational,
    reversed: bool,
    k: usize,
) -> Result<WElem> {
    let m = ring.modulus(k);
    let lc_unit = arith::unit_part(lc, ring.p)?;
    let num = lc_unit.numer().mod_floor(&m);
    let den = lc_unit.denom().mod_floor(&m);
    let den_inv = modinv(&den, &m)?;
    let lcw = ring.from_int(&(num * den_inv).mod_floor(&m));
    if !reversed {
        // x-unit = y-unit * lc-unit^{-1}
        let inv = ring.inv_unit(&lcw, k)?;
        Ok(ring.mul(y_unit, &inv, k))
    } else {
        // x-unit = lc-unit * y-unit^{-1}
        let inv = ring.inv_unit(y_unit, k)?;
        Ok(ring.mul(&lcw, &inv, k))
    }
}

fn modinv(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(Error::Domain("non-unit in modular inverse".into()));
    }
    Ok(e.x.mod_floor(m))
}

fn monicize_integer(f: &QPoly) -> Vec<BigInt> {
    // g(Y) = lc^(n-1) f(Y/lc): integer monic; roots y = lc * (roots of f)
    let n = f.deg();
    let ints = f.integer_coeffs().expect("primitive integer polynomial");
    let lc = ints.last().unwrap().clone();
    let mut out = Vec::with_capacity(n + 1);
    for (i, c) in ints.iter().enumerate() {
        if i == n {
            out.push(BigInt::one());
        } else {
            out.push(c * lc.pow((n - 1 - i) as u32));
        }
    }
    out
}

/// DFS root isolation for a monic integer polynomial over W. Complete: the
/// children of every undecided class are exactly the residue roots of the
/// renormalized Taylor shift, and the Hensel certificate fires by depth
/// 2 v(disc) + 1 (Bezout: u g + w g' = disc with integral u, w).
fn w_roots_monic(ring: &UnramifiedRing, g: &[BigInt], prec: usize) -> Result<Vec<WRoot>> {
    let p = ring.p;
    let gq = QPoly::new(
        g.iter()
            .map(|c| crate::arith::Rational::from_integer(c.clone()))
            .collect(),
    );
    let disc = crate::poly::discriminant(&gq)?;
    if disc.is_zero() {
        return Err(Error::Inseparable);
    }
    let vdisc = arith::valuation(&disc, p)?.max(0);
    let depth_cap = (2 * vdisc + 6) as usize;
    let target = prec.max((2 * vdisc + 8) as usize);
    let work_prec = target + vdisc as usize + 4;
    let gp: Vec<BigInt> = g
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();

    let mut out: Vec<WRoot> = Vec::new();
    let gbar: Vec<FqElem> = g
        .iter()
        .map(|c| ring.field.from_u64(c.mod_floor(&BigInt::from(p)).to_u64().unwrap()))
        .collect();
    let mut stack: Vec<(WElem, usize)> = ring
        .field
        .roots(&gbar)
        .into_iter()
        .map(|r| (ring.lift(&r), 1usize))
        .collect();
    let mut nodes = 0usize;

    while let Some((c, k)) = stack.pop() {
        nodes += 1;
        if nodes > 200_000 {
            return Err(Error::SearchBoundExceeded(
                "root isolation tree too large".into(),
            ));
        }
        let gc = ring.eval_int_poly(g, &c, work_prec);
        let gpc = ring.eval_int_poly(&gp, &c, work_prec);
        let fpv = ring.val(&gpc);
        let exact = ring.is_zero(&gc);
        let mut collected = false;
        if exact {
            push_root(ring, &mut out, &c, target, None, fpv.unwrap_or(0));
            collected = true;
        } else {
            let fv = ring.val(&gc).unwrap_or(work_prec as i64);
            if matches!(fpv, Some(dv) if fv > 2 * dv) {
                let dv = fpv.unwrap();
                let refined = w_newton(ring, g, &gp, &c, dv, target)?;
                push_root(ring, &mut out, &refined, target, Some(fv), dv);
                collected = true;
            }
        }
        // the class holds exactly the collected root once its radius beats
        // v(g'); shallower classes may contain further roots, keep refining
        if collected && matches!(fpv, Some(dv) if (k as i64) > dv) {
            continue;
        }
        if k >= depth_cap {
            if collected {
                continue;
            }
            return Err(Error::Domain(
                "unramified root isolation exceeded certified depth".into(),
            ));
        }
        // children: residue roots of the renormalized shift g(c + p^k T)
        let shifted = ring.taylor_shift(g, &c, work_prec);
        let pk = BigInt::from(p).pow(k as u32);
        let scaled: Vec<WElem> = shifted
            .iter()
            .enumerate()
            .map(|(i, co)| co.iter().map(|x| x * pk.pow(i as u32)).collect())
            .collect();
        let m = scaled.iter().filter_map(|co| ring.val(co)).min().unwrap_or(0);
        let red: Vec<FqElem> = scaled
            .iter()
            .map(|co| ring.residue(&ring.shift_down(co, m)))
            .collect();
        for t in ring.field.roots(&red) {
            let tv = ring.lift(&t);
            let child: WElem = (0..ring.d).map(|i| &c[i] + &tv[i] * &pk).collect();
            stack.push((child, k + 1));
        }
    }
    Ok(out)
}

fn push_root(
    ring: &UnramifiedRing,
    out: &mut Vec<WRoot>,
    value: &WElem,
    known: usize,
    g_val: Option<i64>,
    gprime_val: i64,
) {
    match ring.val(value) {
        None => out.push(WRoot {
            unit: ring.zero(),
            val: 0,
            known,
            g_val,
            gprime_val,
            is_exact_zero: true,
        }),
        Some(v) => out.push(WRoot {
            unit: ring.shift_down(value, v),
            val: v,
            known: known.saturating_sub(v as usize),
            g_val,
            gprime_val,
            is_exact_zero: false,
        }),
    }
}

fn w_newton(
    ring: &UnramifiedRing,
    g: &[BigInt],
    gp: &[BigInt],
    c0: &WElem,
    dv: i64,
    target: usize,
) -> Result<WElem> {
    let work = target + dv as usize + 2;
    let mut c = c0.clone();
    for _ in 0..(64 + target) {
        let gc = ring.eval_int_poly(g, &c, work);
        match ring.val(&gc) {
            None => break,
            Some(v) if v as usize >= target + dv as usize => break,
            _ => {}
        }
        let gpc = ring.eval_int_poly(gp, &c, work);
        let dvev = ring.val(&gpc).ok_or_else(|| {
            Error::InsufficientPrecision("derivative vanished during Newton".into())
        })?;
        let u = ring.shift_down(&gpc, dvev);
        let uinv = ring.inv_unit(&u, work)?;
        let step_num = ring.shift_down(&gc, dvev);
        let step = ring.mul(&step_num, &uinv, work);
        c = ring.sub(&c, &step, work);
    }
    Ok(ring.reduce(&c, target))
}

fn dedupe_roots(
    ring: &UnramifiedRing,
    roots: &mut Vec<WRoot>,
    disc: &crate::arith::Rational,
    p: u64,
) -> Result<()> {
    // distinct roots x, y of a separable polynomial satisfy
    // v(x - y) <= v_p(disc)/2; representatives are refined far past that,
    // so agreement beyond v(disc) means equality
    let vd = arith::valuation(disc, p)?.max(0);
    let mut kept: Vec<WRoot> = Vec::new();
    'outer: for r in roots.drain(..) {
        for k in &kept {
            if r.is_exact_zero && k.is_exact_zero {
                continue 'outer;
            }
            if r.is_exact_zero != k.is_exact_zero || r.val != k.val {
                continue;
            }
            let kk = r.known.min(k.known).max(1);
            let d = ring.sub(&ring.reduce(&r.unit, kk), &ring.reduce(&k.unit, kk), kk);
            let dv = ring.val(&d).map(|v| v + r.val).unwrap_or(i64::MAX / 4);
            if dv > vd {
                continue 'outer; // same root
            }
        }
        kept.push(r);
    }
    *roots = kept;
    Ok(())
}

/// Is z = p^val * unit a square in W ⊗ Q? Needs 3 certified unit digits at
/// p = 2 and one otherwise. (1 + 8W consists of squares by Newton lifting,
/// and F_q* has odd order for p = 2, so mod 8 decides; for odd p the residue
/// character decides.)
pub fn unramified_is_square(
    ring: &UnramifiedRing,
    unit: &WElem,
    val: i64,
    known: usize,
) -> Result<bool> {
    if known < if ring.p == 2 { 3 } else { 1 } {
        return Err(Error::InsufficientPrecision(
            "square test needs more digits".into(),
        ));
    }
    if val % 2 != 0 {
        return Ok(false);
    }
    if ring.p == 2 {
        let m = BigInt::from(8);
        let um: Vec<BigInt> = unit.iter().map(|c| c.mod_floor(&m)).collect();
        let total = 8u64.pow(ring.d as u32);
        for code in 0..total {
            let mut x = ring.zero();
            let mut cc = code;
            for slot in x.iter_mut() {
                *slot = BigInt::from(cc % 8);
                cc /= 8;
            }
            let sq = ring.mul(&x, &x, 3);
            if (0..ring.d).all(|i| (&sq[i] - &um[i]).mod_floor(&m).is_zero()) {
                return Ok(true);
            }
        }
        Ok(false)
    } else {
        let res = ring.residue(unit);
        if ring.field.is_zero(&res) {
            return Err(Error::InsufficientPrecision("unit residue is zero".into()));
        }
        let q = ring.field.size();
        let mut acc = ring.field.one();
        let mut base = res;
        let mut e = (q - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = ring.field.mul(&acc, &base);
            }
            base = ring.field.mul(&base, &base);
            e >>= 1;
        }
        Ok(acc == ring.field.one())
    }
}
