//! Root counting and degree <= 4 factorization over Q_p and over quadratic
//! extensions Q_p(sqrt d), via Newton polygons and certified Hensel lifting.
//!
//! Every yes/no answer is a certificate: roots carry Hensel data
//! (v(f(r)) > 2 v(f'(r))), non-existence comes from exhausting residue
//! classes to a discriminant-determined depth, and square/non-square calls
//! go through the certified square-class machinery.

use crate::arith::{self, rat, Rational};
use crate::error::{Error, Result};
use crate::modp::{self, ModPoly};
use crate::padic::{self, PAdic, SquareClass};
use crate::padic_poly::PadicPoly;
use crate::poly::{self, QPoly};
use crate::unram::{self, UnramifiedRing};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// One segment of a Newton polygon: `slope` is the hull slope (so a segment
/// of slope -s and length l accounts for exactly l roots of valuation s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub slope: Rational,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn total_length(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }

    /// Root valuations (negated slopes) with multiplicities.
    pub fn root_valuations(&self) -> Vec<(Rational, usize)> {
        self.segments
            .iter()
            .map(|s| (-s.slope.clone(), s.length))
            .collect()
    }

    pub fn min_root_valuation(&self) -> Option<Rational> {
        self.root_valuations().into_iter().map(|(v, _)| v).min()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self
            .segments
            .iter()
            .map(|s| serde_json::json!({"slope": s.slope.to_string(), "length": s.length}))
            .collect::<Vec<_>>())
    }
}

fn hull_from_points(points: &[(usize, i64)]) -> Vec<(usize, i64)> {
    // lower convex hull, left to right; points sorted by index
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // drop b if it lies on or above segment a-pt
            let lhs = (b.1 - a.1) as i128 * (pt.0 - a.0) as i128;
            let rhs = (pt.1 - a.1) as i128 * (b.0 - a.0) as i128;
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull
}

fn polygon_from_valuations(vals: &[(usize, i64)], degree: usize) -> Result<NewtonPolygon> {
    if vals.is_empty() || vals[0].0 != 0 {
        return Err(Error::Domain("newton polygon requires f(0) != 0".into()));
    }
    debug_assert_eq!(vals.last().unwrap().0, degree);
    let hull = hull_from_points(vals);
    let mut segments = Vec::new();
    for w in hull.windows(2) {
        let (i1, v1) = w[0];
        let (i2, v2) = w[1];
        segments.push(Segment {
            slope: Rational::new(BigInt::from(v2 - v1), BigInt::from((i2 - i1) as i64)),
            length: i2 - i1,
        });
    }
    Ok(NewtonPolygon { segments })
}

/// Newton polygon of a rational polynomial at p. Pre: f != 0 and f(0) != 0.
pub fn newton_polygon(f: &QPoly, p: u64) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.coeff(0).is_zero() {
        return Err(Error::Domain("newton polygon requires f(0) != 0".into()));
    }
    let mut vals = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            vals.push((i, arith::valuation(c, p)?));
        }
    }
    polygon_from_valuations(&vals, f.deg())
}

/// Newton polygon of a p-adic polynomial; requires certified valuations on
/// the hull (coefficients indistinguishable from zero must be bounded away
/// from below the hull, else the polygon cannot be certified).
pub fn newton_polygon_padic(f: &PadicPoly) -> Result<NewtonPolygon> {
    let n = f.deg();
    let mut known: Vec<(usize, i64)> = Vec::new();
    let mut unknown: Vec<(usize, i64)> = Vec::new();
    for (i, cv) in f.coeff_valuations().iter().enumerate() {
        match cv {
            Ok(v) => known.push((i, *v)),
            Err(bound) => unknown.push((i, *bound)),
        }
    }
    if known.is_empty() || known[0].0 != 0 || known.last().unwrap().0 != n {
        return Err(Error::InsufficientPrecision(
            "constant or leading coefficient valuation unknown".into(),
        ));
    }
    let pg = polygon_from_valuations(&known, n)?;
    // certify: unknown coefficients must lie on or above the hull
    let hull = hull_from_points(&known);
    for (i, bound) in unknown {
        let mut ok = false;
        for w in hull.windows(2) {
            let (i1, v1) = w[0];
            let (i2, v2) = w[1];
            if i1 <= i && i <= i2 {
                // hull value at i (rational): v1 + (i-i1)(v2-v1)/(i2-i1)
                let lhs = (bound - v1) as i128 * (i2 - i1) as i128;
                let rhs = (v2 - v1) as i128 * (i - i1) as i128;
                ok = lhs >= rhs;
                break;
            }
        }
        if !ok {
            return Err(Error::InsufficientPrecision(format!(
                "coefficient {} known only to O(p^{}), below the certified hull",
                i, bound
            )));
        }
    }
    Ok(pg)
}

/// A certified root of f in Q_p.
#[derive(Debug, Clone)]
pub struct QpRoot {
    /// rational representative, correct modulo p^(valuation + known_digits)
    pub approx: Rational,
    pub valuation: i64,
    pub known_digits: usize,
    /// v_p(f(approx)); None when the representative is an exact root
    pub f_val: Option<i64>,
    pub fprime_val: i64,
    pub is_exact: bool,
}

impl QpRoot {
    pub fn to_padic(&self, p: u64, prec: usize) -> Result<PAdic> {
        if self.is_exact && self.approx.is_zero() {
            return Ok(PAdic::zero_at(p, prec as i64 + 8));
        }
        Ok(PAdic::from_rational(p, prec.min(self.known_digits.max(1)), &self.approx)?)
    }
}

#[derive(Debug, Clone)]
pub struct QpRootCount {
    pub p: u64,
    pub count: usize,
    pub roots: Vec<QpRoot>,
}

/// Certified count of the roots of f in Q_p, with representatives. Complete:
/// residue classes are exhausted to depth 2 v_p(disc) + O(1), past which the
/// Hensel certificate provably fires on every surviving class.
pub fn count_roots_qp(f: &QPoly, p: u64, prec: usize) -> Result<QpRootCount> {
    let disc = poly::discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::Inseparable);
    }
    let (_, wroots, ring) = unram::count_roots_unramified(f, p, 1, prec)?;
    let fp = f.derivative();
    let mut roots = Vec::new();
    for r in &wroots {
        let approx = if r.is_exact_zero {
            Rational::zero()
        } else {
            Rational::from_integer(r.unit[0].clone()) * arith::prime_power(p, r.val)
        };
        let (f_val, fprime_val, is_exact) = {
            let fv = f.eval(&approx);
            let fpv = fp.eval(&approx);
            let dv = if fpv.is_zero() {
                i64::MAX / 4
            } else {
                arith::valuation(&fpv, p)?
            };
            if fv.is_zero() {
                (None, dv, true)
            } else {
                (Some(arith::valuation(&fv, p)?), dv, false)
            }
        };
        // Hensel certificate at the representative
        if let Some(fv) = f_val {
            debug_assert!(fv > 2 * fprime_val, "uncertified root escaped isolation");
        }
        roots.push(QpRoot {
            approx,
            valuation: if r.is_exact_zero { i64::MAX / 4 } else { r.val },
            known_digits: r.known,
            f_val,
            fprime_val,
            is_exact,
        });
    }
    let _ = ring;
    roots.sort_by(|a, b| a.valuation.cmp(&b.valuation));
    Ok(QpRootCount { p, count: roots.len(), roots })
}

/// Element a + b sqrt(d) of Q_p(sqrt d), p-adic components.
#[derive(Debug, Clone)]
pub struct QuadExtElement {
    pub p: u64,
    pub d: BigInt,
    pub a: PAdic,
    pub b: PAdic,
}

impl QuadExtElement {
    pub fn new(p: u64, d: BigInt, a: PAdic, b: PAdic) -> Self {
        QuadExtElement { p, d, a, b }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(QuadExtElement {
            p: self.p,
            d: self.d.clone(),
            a: self.a.add(&o.a)?,
            b: self.b.add(&o.b)?,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        Ok(QuadExtElement {
            p: self.p,
            d: self.d.clone(),
            a: self.a.sub(&o.a)?,
            b: self.b.sub(&o.b)?,
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let dq = PAdic::from_rational(
            self.p,
            self.a.precision().max(o.a.precision()).max(1),
            &Rational::from_integer(self.d.clone()),
        )?;
        let a = self.a.mul(&o.a)?.add(&dq.mul(&self.b.mul(&o.b)?)?)?;
        let b = self.a.mul(&o.b)?.add(&self.b.mul(&o.a)?)?;
        Ok(QuadExtElement { p: self.p, d: self.d.clone(), a, b })
    }

    pub fn conj(&self) -> Self {
        QuadExtElement {
            p: self.p,
            d: self.d.clone(),
            a: self.a.clone(),
            b: self.b.neg(),
        }
    }

    /// Field norm a^2 - d b^2 (multiplicative).
    pub fn norm(&self) -> Result<PAdic> {
        let dq = PAdic::from_rational(
            self.p,
            self.a.precision().max(1),
            &Rational::from_integer(self.d.clone()),
        )?;
        self.a.mul(&self.a)?.sub(&dq.mul(&self.b.mul(&self.b)?)?)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm()?;
        let c = self.conj();
        Ok(QuadExtElement {
            p: self.p,
            d: self.d.clone(),
            a: c.a.div(&n)?,
            b: c.b.div(&n)?,
        })
    }

    pub fn eval_qpoly(f: &QPoly, x: &Self, prec: usize) -> Result<Self> {
        let p = x.p;
        let zero = PAdic::zero_at(p, i64::MAX / 4);
        let mut acc = QuadExtElement::new(p, x.d.clone(), zero.clone(), zero);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(x)?;
            let cq = PAdic::from_rational(p, prec, c)?;
            acc.a = acc.a.add(&cq)?;
        }
        Ok(acc)
    }
}

/// A certified root of f in Q_p(sqrt d), components a + b sqrt d with the
/// Jacobian certificate det J = N(f'(x)): the residual norm valuation
/// strictly exceeds twice the Jacobian's.
#[derive(Debug, Clone)]
pub struct QuadRoot {
    pub a: PAdic,
    pub b: PAdic,
    /// lower bound on v_p(N(f(x))) at the representative
    pub residual_bound: i64,
    /// v_p(N(f'(x))) = v_p(det J)
    pub jacobian_val: i64,
}

#[derive(Debug, Clone)]
pub struct QuadRootCount {
    pub p: u64,
    pub d: BigInt,
    pub count: usize,
    pub roots: Vec<QuadRoot>,
}

/// Certified count of the roots of f in Q_p(sqrt d). Isolation goes through
/// the complete local factorization (roots of degree <= 2 over Q_p are
/// exactly the Q_p-roots plus the roots of quadratic factors whose
/// discriminant lies in the square class of d); each reported root is then
/// verified in coordinates with the two-variable Hensel/Jacobian certificate
/// det J = N(f'(a + b sqrt d)). Pre: d a non-square in Q_p.
pub fn count_roots_quadratic_ext(f: &QPoly, p: u64, d: &BigInt, prec: usize) -> Result<QuadRootCount> {
    let dclass = padic::square_class(&Rational::from_integer(d.clone()), p)?;
    if dclass.is_trivial() {
        return Err(Error::Domain(
            "d is a square in Q_p; use count_roots_qp".into(),
        ));
    }
    let disc = poly::discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::Inseparable);
    }
    let work = prec.max(24);
    let factors = factor_over_qp(f, p, work)?;
    let mut roots: Vec<QuadRoot> = Vec::new();
    for fac in &factors {
        match fac.degree {
            1 => {
                let r = fac.root.as_ref().expect("linear factor root");
                let a = r.to_padic(p, work)?;
                let b = PAdic::zero_at(p, work as i64 + 8);
                roots.push(certify_quad_root(f, p, d, a, b, work)?);
            }
            2 => {
                let qd = fac.disc_class()?;
                if !qd.mul(&dclass)?.is_trivial() {
                    continue; // root field is a different quadratic extension
                }
                // x = (-B ± u sqrt d)/2 where disc = u^2 d
                let q = fac.poly.to_padic(p, work)?;
                let dp = PAdic::from_rational(p, work, &Rational::from_integer(d.clone()))?;
                let ratio = fac.disc.div(&dp)?;
                let u = padic::padic_sqrt(&ratio)?.ok_or_else(|| {
                    Error::InsufficientPrecision("square class matched but sqrt failed".into())
                })?;
                let two = PAdic::from_int(p, work, 2)?;
                let a = q.coeff(1).neg().div(&two)?;
                let b = u.div(&two)?;
                roots.push(certify_quad_root(f, p, d, a.clone(), b.clone(), work)?);
                roots.push(certify_quad_root(f, p, d, a, b.neg(), work)?);
            }
            _ => {} // roots of higher-degree factors have degree > 2 over Q_p
        }
    }
    Ok(QuadRootCount { p, d: d.clone(), count: roots.len(), roots })
}

fn certify_quad_root(
    f: &QPoly,
    p: u64,
    d: &BigInt,
    a: PAdic,
    b: PAdic,
    prec: usize,
) -> Result<QuadRoot> {
    let x = QuadExtElement::new(p, d.clone(), a, b);
    let fx = QuadExtElement::eval_qpoly(f, &x, prec)?;
    let fpx = QuadExtElement::eval_qpoly(&f.derivative(), &x, prec)?;
    let residual = fx.norm()?;
    let jac = fpx.norm()?;
    let jacobian_val = jac.valuation().map_err(|_| {
        Error::InsufficientPrecision("Jacobian norm indistinguishable from zero".into())
    })?;
    let residual_bound = residual.valuation_lower_bound();
    if !residual.is_zero_at_precision() {
        let rv = residual.valuation()?;
        if rv <= 2 * jacobian_val {
            return Err(Error::InsufficientPrecision(
                "quadratic-extension root failed its Jacobian certificate".into(),
            ));
        }
    }
    Ok(QuadRoot { a: x.a, b: x.b, residual_bound, jacobian_val })
}

fn mod_inv(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(Error::Domain("non-unit in modular inverse".into()));
    }
    Ok(e.x.mod_floor(m))
}


/// An irreducible factor of f over Q_p, tagged with its ramification data.
#[derive(Debug, Clone)]
pub enum FactorPoly {
    Rational(QPoly),
    Padic(PadicPoly),
}

impl FactorPoly {
    pub fn degree(&self) -> usize {
        match self {
            FactorPoly::Rational(q) => q.deg(),
            FactorPoly::Padic(q) => q.deg(),
        }
    }

    pub fn to_padic(&self, p: u64, prec: usize) -> Result<PadicPoly> {
        match self {
            FactorPoly::Rational(q) => PadicPoly::from_qpoly(q, p, prec),
            FactorPoly::Padic(q) => Ok(q.clone()),
        }
    }

    pub fn coeffs_json(&self) -> serde_json::Value {
        match self {
            FactorPoly::Rational(q) => crate::poly::to_json_descending(q),
            FactorPoly::Padic(q) => serde_json::Value::Array(
                q.coeffs.iter().rev().map(|c| c.to_json()).collect(),
            ),
        }
    }

    pub fn display(&self) -> String {
        match self {
            FactorPoly::Rational(q) => format!("{}", q),
            FactorPoly::Padic(q) => format!("{}", q.to_qpoly_representative()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LocalFactor {
    pub p: u64,
    pub poly: FactorPoly,
    pub degree: usize,
    /// ramification index
    pub e: usize,
    /// residue degree
    pub f: usize,
    pub disc: PAdic,
    /// present for degree-1 factors
    pub root: Option<QpRoot>,
}

impl LocalFactor {
    pub fn disc_class(&self) -> Result<SquareClass> {
        padic::square_class_padic(&self.disc)
    }

    /// Squarefree integer d with root field Q_p(sqrt d), for quadratic factors.
    pub fn quadratic_field_class(&self) -> Result<BigInt> {
        if self.degree != 2 {
            return Err(Error::Domain("not a quadratic factor".into()));
        }
        Ok(self.disc_class()?.representative())
    }

    pub fn is_unramified(&self) -> bool {
        self.e == 1
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::json!({
            "degree": self.degree,
            "e": self.e,
            "f": self.f,
            "factor_coeffs": self.poly.coeffs_json(),
        });
        if let Some(r) = &self.root {
            obj["roots"] = serde_json::json!([r.approx.to_string()]);
        }
        obj
    }
}

/// Complete certified factorization of f over Q_p with e/f annotations.
/// Lemma-1.3 shape: the factors correspond to the prolongations of p to
/// Q[X]/(f).
pub fn factor_over_qp(f: &QPoly, p: u64, prec: usize) -> Result<Vec<LocalFactor>> {
    let n = f.degree().ok_or(Error::ZeroInput)?;
    if n == 0 || n > 4 {
        return Err(Error::DegreeUnsupported(n, 4));
    }
    let disc = poly::discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::Inseparable);
    }
    let mut factors: Vec<LocalFactor> = Vec::new();
    let rc = count_roots_qp(f, p, prec)?;
    let fmonic = f.monic();
    let mut cof = PadicPoly::from_qpoly(&fmonic, p, prec)?;
    let fprime = PadicPoly::from_qpoly(&f.derivative(), p, prec)?;
    for r in &rc.roots {
        let rp = r.to_padic(p, prec)?;
        let (q, rem) = cof.synthetic_div(&rp)?;
        if !rem.is_zero_at_precision() && rem.valuation_lower_bound() < 4 {
            return Err(Error::InsufficientPrecision(
                "root division left a visible remainder".into(),
            ));
        }
        let lin = PadicPoly {
            p,
            coeffs: vec![rp.neg(), PAdic::from_int(p, prec, 1)?],
        };
        factors.push(LocalFactor {
            p,
            poly: FactorPoly::Padic(lin),
            degree: 1,
            e: 1,
            f: 1,
            disc: PAdic::from_int(p, prec, 1)?,
            root: Some(r.clone()),
        });
        cof = q;
    }
    let m = n - rc.count;
    match m {
        0 => {}
        2 => {
            let dq = quad_disc(&cof)?;
            let (e, fr) = quadratic_ef(&padic::square_class_padic(&dq)?)?;
            factors.push(LocalFactor {
                p,
                poly: FactorPoly::Padic(cof),
                degree: 2,
                e,
                f: fr,
                disc: dq,
                root: None,
            });
        }
        3 => {
            // cubic cofactor: irreducible (no Q_p roots remain); exact
            // disc(C) = disc(f)/f'(r)^2 for f = (X - r) C
            let r = &factors[0]
                .root
                .as_ref()
                .expect("linear factor has a root")
                .to_padic(p, prec)?;
            let fpr = fprime.eval(r)?;
            let lead_adj = PAdic::from_rational(p, prec, &f.lead())?;
            // disc scales: disc(f) = lc^2 disc(monic f) * ... handled via monic form
            let disc_monic = poly::discriminant(&fmonic)?;
            let dm = PAdic::from_rational(p, prec, &disc_monic)?;
            let fpr_monic = fpr.div(&lead_adj)?;
            let dq = dm.div(&fpr_monic.mul(&fpr_monic)?)?;
            let (e, fr) = match ramification_shift_loop(&cof)? {
                RamOutcome::Known(e, fr) => (e, fr),
                RamOutcome::Deferred => {
                    return Err(Error::Domain("cubic ramification cannot defer".into()))
                }
            };
            factors.push(LocalFactor {
                p,
                poly: FactorPoly::Padic(cof),
                degree: 3,
                e,
                f: fr,
                disc: dq,
                root: None,
            });
        }
        4 => {
            // no roots: try the quadratic-quadratic split via the auxiliary cubic
            match quartic_split(&fmonic, p, prec)? {
                Some((q1, q2)) => {
                    for q in [q1, q2] {
                        let dq = quad_disc(&q)?;
                        let (e, fr) = quadratic_ef(&padic::square_class_padic(&dq)?)?;
                        factors.push(LocalFactor {
                            p,
                            poly: FactorPoly::Padic(q),
                            degree: 2,
                            e,
                            f: fr,
                            disc: dq,
                            root: None,
                        });
                    }
                }
                None => {
                    let (e, fr) = quartic_ef(&fmonic, p, prec)?;
                    factors.push(LocalFactor {
                        p,
                        poly: FactorPoly::Rational(fmonic.clone()),
                        degree: 4,
                        e,
                        f: fr,
                        disc: PAdic::from_rational(p, prec, &poly::discriminant(&fmonic)?)?,
                        root: None,
                    });
                }
            }
        }
        _ => {
            return Err(Error::Domain(format!(
                "impossible cofactor degree {} for separable input",
                m
            )))
        }
    }
    factors.sort_by(|a, b| {
        a.degree
            .cmp(&b.degree)
            .then_with(|| a.poly.display().cmp(&b.poly.display()))
    });
    Ok(factors)
}

fn quad_disc(q: &PadicPoly) -> Result<PAdic> {
    // monic X^2 + bX + c: disc = b^2 - 4c
    let b = q.coeff(1);
    let c = q.coeff(0);
    let four = PAdic::from_int(q.p, b.precision().max(c.precision()).max(1), 4)?;
    b.mul(&b)?.sub(&four.mul(&c)?)
}

/// e/f of a quadratic extension from the square class of its discriminant.
fn quadratic_ef(class: &SquareClass) -> Result<(usize, usize)> {
    if class.is_trivial() {
        return Err(Error::Domain("discriminant is a square: factor splits".into()));
    }
    if class.odd_val {
        return Ok((2, 1));
    }
    if class.p == 2 {
        // unit classes: 5 is the unramified one, -1 and -5 ramify (wildly)
        if class.unit_rep == 5 {
            Ok((1, 2))
        } else {
            Ok((2, 1))
        }
    } else {
        Ok((1, 2)) // non-residue unit: unramified
    }
}

/// Quadratic-quadratic splittings of a rootless monic quartic over Q_p:
/// exists iff the auxiliary cubic S(Z) = Z^3 + 2pZ^2 + (p^2-4r)Z - q^2 of
/// the depressed form has a Q_p-root z0 that is a square (z0 = 0, i.e.
/// q = 0, splits iff p^2 - 4r is a square).
fn quartic_split(f: &QPoly, p: u64, prec: usize) -> Result<Option<(PadicPoly, PadicPoly)>> {
    let (g, shift) = poly::depress_quartic(f)?;
    let pt = g.coeff(2);
    let q = g.coeff(1);
    let r = g.coeff(0);
    let aux = QPoly::new(vec![
        -(&q * &q),
        &pt * &pt - rat(4) * &r,
        rat(2) * &pt,
        rat(1),
    ]);
    let sroots = count_roots_qp(&aux, p, prec.max(24))?;
    let embed = |x: &Rational| PAdic::from_rational(p, prec, x);
    for z in &sroots.roots {
        if z.is_exact && z.approx.is_zero() {
            // q = 0: biquadratic split iff p^2 - 4r is a square
            debug_assert!(q.is_zero());
            let delta = &pt * &pt - rat(4) * &r;
            let dp = embed(&delta)?;
            if let Some(sq) = padic::padic_sqrt(&dp)? {
                let two = PAdic::from_int(p, prec, 2)?;
                let v = embed(&pt)?.sub(&sq)?.div(&two)?;
                let w = embed(&pt)?.add(&sq)?.div(&two)?;
                let zero = PAdic::zero_at(p, prec as i64 + 8);
                let one = PAdic::from_int(p, prec, 1)?;
                let f1 = PadicPoly { p, coeffs: vec![v, zero.clone(), one.clone()] };
                let f2 = PadicPoly { p, coeffs: vec![w, zero, one] };
                return Ok(Some((shift_back_padic(&f1, &shift)?, shift_back_padic(&f2, &shift)?)));
            }
            continue;
        }
        let zp = z.to_padic(p, prec)?;
        if let Some(u) = padic::padic_sqrt(&zp)? {
            // f = (Y^2 + uY + v)(Y^2 - uY + w), v,w = (p + z -/+ q/u)/2
            let two = PAdic::from_int(p, prec, 2)?;
            let qu = embed(&q)?.div(&u)?;
            let base = embed(&pt)?.add(&zp)?;
            let v = base.sub(&qu)?.div(&two)?;
            let w = base.add(&qu)?.div(&two)?;
            let one = PAdic::from_int(p, prec, 1)?;
            let f1 = PadicPoly { p, coeffs: vec![v, u.clone(), one.clone()] };
            let f2 = PadicPoly { p, coeffs: vec![w, u.neg(), one] };
            return Ok(Some((shift_back_padic(&f1, &shift)?, shift_back_padic(&f2, &shift)?)));
        }
    }
    Ok(None)
}

fn shift_back_padic(q: &PadicPoly, s: &Rational) -> Result<PadicPoly> {
    // factor in the depressed variable Y; original X = Y + s, so substitute
    // Y = X - s
    let sp = PAdic::from_rational(q.p, q.min_precision().max(8), &(-s))?;
    q.shift(&sp)
}

enum RamOutcome {
    Known(usize, usize),
    Deferred,
}

/// Shift-and-rescale loop deciding (e, f) of the extension defined by a
/// monic irreducible factor. Complete for degrees 1-3; quartics defer the
/// slope-denominator-2 and repeated-quadratic-residue cases to the
/// unramified-tower route.
fn ramification_shift_loop(h0: &PadicPoly) -> Result<RamOutcome> {
    let n = h0.deg();
    let p = h0.p;
    if n == 1 {
        return Ok(RamOutcome::Known(1, 1));
    }
    let mut h = h0.monic()?;
    for _iter in 0..64 {
        let pg = newton_polygon_padic(&h)?;
        if pg.segments.len() != 1 {
            return Err(Error::ReducibleInput);
        }
        let slope = -pg.segments[0].slope.clone();
        let den = slope.denom().to_usize().unwrap_or(usize::MAX);
        if den > 1 {
            if den == n {
                return Ok(RamOutcome::Known(n, 1));
            }
            return Ok(RamOutcome::Deferred); // den = 2, n = 4
        }
        let s = slope.to_integer().to_i64().unwrap();
        if s != 0 {
            h = h.scale_var(s);
        }
        let hbar = h.residue()?;
        if modp::is_irreducible_mod_p(&hbar)? {
            return Ok(RamOutcome::Known(1, n));
        }
        // prime-power residue?
        let roots = modp::roots_mod_p(&hbar);
        if roots.len() == 1 {
            let c = roots[0];
            // is hbar = (X - c)^n?
            let shifted = shift_modpoly(&hbar, c);
            if shifted.c.iter().take(n).all(|&x| x == 0) {
                let cp = PAdic::from_int(p, h.min_precision().max(8), c as i64)?;
                h = h.shift(&cp)?;
                continue;
            }
        }
        if n == 4 {
            if let Some(g) = residue_square_root(&hbar) {
                if modp::is_irreducible_mod_p(&g)? && g.deg() == 2 {
                    return Ok(RamOutcome::Deferred);
                }
            }
        }
        // coprime residue factors would mean h is reducible
        return Err(Error::ReducibleInput);
    }
    Err(Error::InsufficientPrecision(
        "ramification loop did not terminate within precision".into(),
    ))
}

fn shift_modpoly(f: &ModPoly, c: u64) -> ModPoly {
    // f(X + c)
    let p = f.p;
    let mut work = f.c.clone();
    let n = work.len();
    for stop in 0..n {
        for i in (stop..n - 1).rev() {
            work[i] = (work[i] + (work[i + 1] as u128 * c as u128 % p as u128) as u64) % p;
        }
    }
    ModPoly::new(p, work)
}

/// If f = g^2 in F_p[X], return g.
fn residue_square_root(f: &ModPoly) -> Option<ModPoly> {
    let p = f.p;
    let d = f.derivative();
    let g = if d.is_zero() {
        // p = 2 case: f = g(X^2) = g(X)^2, take every other coefficient
        ModPoly::new(p, f.c.iter().step_by(2).cloned().collect())
    } else {
        f.gcd(&d)
    };
    if g.deg() * 2 != f.deg() {
        return None;
    }
    if g.mul(&g) == f.monic() {
        Some(g)
    } else {
        None
    }
}

/// Full (e, f) for a monic irreducible quartic over Q_p, completing the
/// deferred cases via root counting in unramified towers: e = 1 iff f has a
/// root in W_4; otherwise the residue degree is even iff the auxiliary cubic
/// certifies a quadratic split over W_2.
fn quartic_ef(f: &QPoly, p: u64, prec: usize) -> Result<(usize, usize)> {
    let hp = PadicPoly::from_qpoly(f, p, prec)?;
    if let RamOutcome::Known(e, fr) = ramification_shift_loop(&hp)? {
        return Ok((e, fr));
    }
    let (c4, _, _) = unram::count_roots_unramified(f, p, 4, 24)?;
    if c4 > 0 {
        return Ok((1, 4));
    }
    if quartic_splits_over_w2(f, p)? {
        Ok((2, 2))
    } else {
        Ok((4, 1))
    }
}

/// Does the monic quartic split into quadratics over the unramified
/// quadratic extension W_2?
pub fn quartic_splits_over_w2(f: &QPoly, p: u64) -> Result<bool> {
    let (g, _) = poly::depress_quartic(&f.monic())?;
    let pt = g.coeff(2);
    let q = g.coeff(1);
    let r = g.coeff(0);
    let aux = QPoly::new(vec![
        -(&q * &q),
        &pt * &pt - rat(4) * &r,
        rat(2) * &pt,
        rat(1),
    ]);
    let (_, sroots, ring) = unram::count_roots_unramified(&aux, p, 2, 24)?;
    for z in &sroots {
        if z.is_exact_zero {
            let delta = &pt * &pt - rat(4) * &r;
            if delta.is_zero() {
                continue;
            }
            if rational_is_square_in(&ring, &delta)? {
                return Ok(true);
            }
            continue;
        }
        if unram::unramified_is_square(&ring, &z.unit, z.val, z.known)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn rational_is_square_in(ring: &UnramifiedRing, x: &Rational) -> Result<bool> {
    let v = arith::valuation(x, ring.p)?;
    let u = arith::unit_part(x, ring.p)?;
    let k = 8usize;
    let m = BigInt::from(ring.p).pow(k as u32);
    let num = u.numer().mod_floor(&m);
    let den_inv = mod_inv(&u.denom().mod_floor(&m), &m)?;
    let unit = ring.from_int(&(num * den_inv).mod_floor(&m));
    unram::unramified_is_square(ring, &unit, v, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;

    fn f58() -> QPoly {
        QPoly::from_descending_ints(&[1, 0, 8, 256, -20])
    }

    #[test]
    fn polygon_examples() {
        // X^2 - p: one segment of slope -1/2, length 2
        for p in [2u64, 5, 13] {
            let f = QPoly::new(vec![rat(-(p as i64)), rat(0), rat(1)]);
            let pg = newton_polygon(&f, p).unwrap();
            assert_eq!(pg.segments.len(), 1);
            assert_eq!(pg.segments[0].slope, rat_frac(-1, 2));
            assert_eq!(pg.segments[0].length, 2);
        }
        // f58 at 2: hull of (0,2),(1,8),(2,3),(4,0): single slope -1/2
        let pg = newton_polygon(&f58(), 2).unwrap();
        assert_eq!(pg.total_length(), 4);
        let vals: Vec<(Rational, usize)> = pg.root_valuations();
        let total: Rational = vals
            .iter()
            .map(|(v, l)| v * rat(*l as i64))
            .fold(rat(0), |a, b| a + b);
        assert_eq!(total, rat(2)); // = v_2(-20)
        // X^2 - 1: single slope-0 segment
        let pg = newton_polygon(&QPoly::from_descending_ints(&[1, 0, -1]), 7).unwrap();
        assert_eq!(pg.segments.len(), 1);
        assert_eq!(pg.segments[0].slope, rat(0));
    }

    #[test]
    fn example58_roots_at_3_and_2() {
        let rc3 = count_roots_qp(&f58(), 3, 24).unwrap();
        assert_eq!(rc3.count, 1, "f has exactly one root in Q_3");
        let rc2 = count_roots_qp(&f58(), 2, 24).unwrap();
        assert_eq!(rc2.count, 0, "f has no roots in Q_2");
    }

    #[test]
    fn sqrt17_has_two_roots_at_2() {
        let f = QPoly::from_descending_ints(&[1, 0, -17]);
        let rc = count_roots_qp(&f, 2, 24).unwrap();
        assert_eq!(rc.count, 2);
        for r in &rc.roots {
            // certificate: v(f(r)) > 2 v(f'(r))
            if let Some(fv) = r.f_val {
                assert!(fv > 2 * r.fprime_val);
            }
        }
    }

    #[test]
    fn example58_roots_in_quadratic_extensions() {
        let f = f58();
        let r2 = count_roots_quadratic_ext(&f, 2, &BigInt::from(2), 16).unwrap();
        assert!(r2.count >= 1, "f has roots in Q_2(sqrt 2)");
        let rm10 = count_roots_quadratic_ext(&f, 2, &BigInt::from(-10), 16).unwrap();
        assert!(rm10.count >= 1, "f has roots in Q_2(sqrt -10)");
        // and none in the other 2-adic quadratic extensions
        for d in [-1i64, -2, 5, -5, 10] {
            let r = count_roots_quadratic_ext(&f, 2, &BigInt::from(d), 16).unwrap();
            assert_eq!(r.count, 0, "no roots in Q_2(sqrt {})", d);
        }
    }

    #[test]
    fn quad_ext_trivial_example() {
        // X^2 - d has the two roots ±sqrt(d) in Q_p(sqrt d)
        for (p, d) in [(2u64, 2i64), (5, 10), (7, -1), (3, 3)] {
            let dc = padic::square_class(&rat(d), p).unwrap();
            if dc.is_trivial() {
                continue;
            }
            let f = QPoly::from_descending_ints(&[1, 0, -d]);
            let rc = count_roots_quadratic_ext(&f, p, &BigInt::from(d), 16).unwrap();
            assert_eq!(rc.count, 2, "p={} d={}", p, d);
        }
    }

    #[test]
    fn factor_f58_at_2_two_ramified_quadratics() {
        let factors = factor_over_qp(&f58(), 2, 48).unwrap();
        assert_eq!(factors.len(), 2, "two prolongations at p = 2");
        let mut classes: Vec<BigInt> = factors
            .iter()
            .map(|fac| {
                assert_eq!(fac.degree, 2);
                assert_eq!((fac.e, fac.f), (2, 1));
                fac.quadratic_field_class().unwrap()
            })
            .collect();
        classes.sort();
        assert_eq!(classes, vec![BigInt::from(-10), BigInt::from(2)]);
    }

    #[test]
    fn factor_f58_at_3_linear_plus_cubic() {
        let factors = factor_over_qp(&f58(), 3, 48).unwrap();
        assert_eq!(factors.len(), 2, "two prolongations at p = 3");
        assert_eq!(factors[0].degree, 1);
        assert_eq!(factors[1].degree, 3);
        // the cubic is unramified: e = 1, f = 3
        assert_eq!((factors[1].e, factors[1].f), (1, 3));
    }

    #[test]
    fn factor_f58_at_5_and_23() {
        let f5 = factor_over_qp(&f58(), 5, 48).unwrap();
        let degs: Vec<usize> = f5.iter().map(|x| x.degree).collect();
        assert_eq!(degs, vec![1, 1, 2]);
        let quad = &f5[2];
        assert_eq!((quad.e, quad.f), (2, 1), "ramified quadratic at 5");

        let f23 = factor_over_qp(&f58(), 23, 48).unwrap();
        let degs: Vec<usize> = f23.iter().map(|x| x.degree).collect();
        assert_eq!(degs, vec![2, 2]);
        let efs: Vec<(usize, usize)> = f23.iter().map(|x| (x.e, x.f)).collect();
        assert!(efs.contains(&(2, 1)) && efs.contains(&(1, 2)));
    }

    #[test]
    fn split_quadratic_factors() {
        // X^2 - 1 splits into two linears everywhere
        let f = QPoly::from_descending_ints(&[1, 0, -1]);
        for p in [2u64, 3, 5, 13] {
            let fac = factor_over_qp(&f, p, 24).unwrap();
            assert_eq!(fac.len(), 2);
            assert!(fac.iter().all(|x| x.degree == 1));
        }
    }

    #[test]
    fn x4_plus_1_is_totally_ramified_quartic_at_2() {
        let f = QPoly::from_descending_ints(&[1, 0, 0, 0, 1]);
        let fac = factor_over_qp(&f, 2, 32).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].degree, 4);
        assert_eq!((fac[0].e, fac[0].f), (4, 1));
        // and splits into two quadratics over Q_p for every odd p
        for p in [3u64, 5, 7, 11, 13, 17] {
            let fac = factor_over_qp(&f, p, 24).unwrap();
            let degs: Vec<usize> = fac.iter().map(|x| x.degree).collect();
            assert!(
                degs == vec![2, 2] || degs == vec![1, 1, 1, 1],
                "X^4+1 mod {} shape {:?}",
                p,
                degs
            );
        }
    }

    #[test]
    fn unramified_quartic_detected() {
        // lift of an irreducible quartic mod 5
        let mut found = None;
        'outer: for c0 in 1..5i64 {
            for c1 in 0..5i64 {
                let f = QPoly::from_descending_ints(&[1, 0, 0, c1, c0]);
                let m = ModPoly::new(5, vec![c0.rem_euclid(5) as u64, c1.rem_euclid(5) as u64, 0, 0, 1]);
                if modp::is_irreducible_mod_p(&m).unwrap() {
                    found = Some(f);
                    break 'outer;
                }
            }
        }
        let f = found.expect("an irreducible quartic mod 5 exists");
        let fac = factor_over_qp(&f, 5, 24).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!((fac[0].e, fac[0].f), (1, 4));
    }

    #[test]
    fn stuck_quartic_e2_f2() {
        // X^4 - 2uX^2 + u^2 - p with u a non-residue: residue (X^2-u)^2,
        // field Q_p(sqrt p, sqrt(u + sqrt p))-shaped with e = f = 2
        let u = 2i64; // non-residue mod 5
        let f = QPoly::from_descending_ints(&[1, 0, -2 * u, 0, u * u - 5]);
        let fac = factor_over_qp(&f, 5, 32).unwrap();
        assert_eq!(fac.len(), 1, "irreducible over Q_5");
        assert_eq!((fac[0].e, fac[0].f), (2, 2));
    }

    #[test]
    fn prolongation_count_matches_dedekind_at_good_primes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let mut done = 0;
        while done < 25 {
            let f = QPoly::from_descending_ints(&[
                1,
                rng.gen_range(-9..10),
                rng.gen_range(-9..10),
                rng.gen_range(-9..10),
                rng.gen_range(-9..10),
            ]);
            let d = poly::discriminant(&f).unwrap();
            if d.is_zero() {
                continue;
            }
            let mut checked = 0;
            let mut p = 2u64;
            while checked < 2 {
                if arith::valuation(&d, p).unwrap() == 0 {
                    let fac = factor_over_qp(&f, p, 24).unwrap();
                    let ints = f.integer_coeffs().unwrap();
                    let fm = ModPoly::new(
                        p,
                        ints.iter()
                            .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
                            .collect(),
                    );
                    let shape = modp::factor_shape(&fm).unwrap();
                    assert_eq!(fac.len(), shape.len(), "f = {} at p = {}", f, p);
                    // degrees match too, and e = 1 everywhere
                    let mut degs: Vec<usize> = fac.iter().map(|x| x.degree).collect();
                    degs.sort_unstable();
                    assert_eq!(degs, shape);
                    assert!(fac.iter().all(|x| x.e == 1));
                    checked += 1;
                }
                p = arith::primes_from(p + 1).next().unwrap();
            }
            done += 1;
        }
    }
}
