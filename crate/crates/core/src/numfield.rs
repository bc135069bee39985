//! Arithmetic in `F = Q[X]/(f)` for monic irreducible `f`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::cnum::{Disk, Interval};
use crate::error::{Error, Result};
use crate::irreducible::{require_irreducible, IrreducibilityCertificate};
use crate::lckrank::SubfieldCertificate;
use crate::parse::{format_coords, parse_coords};
use crate::poly::{int_rat, IntPoly, RatPoly, Rational};
use crate::realroots::{refine_embeddings, refine_interval, signature_unchecked, EmbeddingSet, Signature};

/// Radius used for the first embedding computation; refined on demand.
const INITIAL_BITS: u32 = 64;

pub struct NumberField {
    poly: IntPoly,
    modulus: RatPoly,
    signature: Signature,
    irreducibility: IrreducibilityCertificate,
    cache: RwLock<Option<EmbeddingSet>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.poly)
    }
}

fn two_pow_neg(bits: u32) -> Rational {
    Rational::new(BigInt::one(), crate::cnum::pow2(bits))
}

impl NumberField {
    pub fn new(poly: IntPoly) -> Result<Arc<NumberField>> {
        if !poly.is_monic() {
            return Err(Error::InvalidInput(format!("defining polynomial {poly} is not monic")));
        }
        if poly.degree() == 0 {
            return Err(Error::InvalidInput("defining polynomial is constant".into()));
        }
        let irreducibility = require_irreducible(&poly)?;
        let signature = signature_unchecked(&poly);
        Ok(Arc::new(NumberField {
            modulus: poly.to_rat(),
            poly,
            signature,
            irreducibility,
            cache: RwLock::new(None),
        }))
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn irreducibility(&self) -> &IrreducibilityCertificate {
        &self.irreducibility
    }

    /// Embeddings with every radius at most `eps`, served from the cache when
    /// an earlier refinement is already fine enough.
    pub fn embeddings(&self, eps: &Rational) -> Result<EmbeddingSet> {
        if let Some(e) = self.cache.read().expect("embedding cache poisoned").as_ref() {
            if &e.radius <= eps {
                return Ok(e.clone());
            }
        }
        let fresh = refine_embeddings(&self.poly, eps)?;
        let mut slot = self.cache.write().expect("embedding cache poisoned");
        match slot.as_ref() {
            Some(old) if old.radius <= fresh.radius => Ok(old.clone()),
            _ => {
                *slot = Some(fresh.clone());
                Ok(fresh)
            }
        }
    }

    pub fn element(self: &Arc<Self>, coords: Vec<Rational>) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        Ok(FieldElement { field: self.clone(), rep: RatPoly::new(coords) })
    }

    pub fn element_i64(self: &Arc<Self>, coords: &[i64]) -> Result<FieldElement> {
        self.element(coords.iter().map(|&c| int_rat(c)).collect())
    }

    pub fn parse_element(self: &Arc<Self>, s: &str) -> Result<FieldElement> {
        self.element(parse_coords(s)?)
    }

    /// The class of an arbitrary rational polynomial.
    pub fn from_poly(self: &Arc<Self>, p: &RatPoly) -> FieldElement {
        let rep = p.rem(&self.modulus).expect("modulus is nonzero");
        FieldElement { field: self.clone(), rep }
    }

    pub fn from_rational(self: &Arc<Self>, c: Rational) -> FieldElement {
        FieldElement { field: self.clone(), rep: RatPoly::constant(c) }
    }

    pub fn from_int(self: &Arc<Self>, c: i64) -> FieldElement {
        self.from_rational(int_rat(c))
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_int(1)
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        self.from_int(0)
    }

    /// The class of `X`.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        self.from_poly(&RatPoly::x())
    }

    pub fn same_as(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other) || self.poly == other.poly
    }
}

#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    rep: RatPoly,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_coords(&self.coords()))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        self.field.same_as(&o.field) && self.rep == o.rep
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Representative polynomial `w` with `x = w(α)` and `deg w < n`.
    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    pub fn coords(&self) -> Vec<Rational> {
        (0..self.field.degree()).map(|i| self.rep.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep == RatPoly::one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.rep.degree() == 0).then(|| self.rep.coeff(0))
    }

    fn check_field(&self, o: &FieldElement) {
        assert!(self.field.same_as(&o.field), "elements belong to different fields");
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let (g, s, _) = self.rep.xgcd(&self.field.modulus)?;
        debug_assert!(g == RatPoly::one(), "modulus must be irreducible");
        Ok(self.field.from_poly(&s))
    }

    pub fn div(&self, o: &FieldElement) -> Result<FieldElement> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.field.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> FieldElement {
        FieldElement { field: self.field.clone(), rep: self.rep.scale(c) }
    }

    /// `p(x)` for a rational polynomial `p`.
    pub fn eval_poly(&self, p: &RatPoly) -> FieldElement {
        let mut acc = self.field.zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &self.field.from_rational(c.clone());
        }
        acc
    }

    /// Characteristic polynomial of multiplication by `x`, i.e.
    /// `Res_X(f(X), Y - w(X))`, obtained by evaluating the resultant at
    /// `n + 1` integer points and interpolating.
    pub fn char_poly(&self) -> RatPoly {
        let n = self.field.degree();
        if let Some(c) = self.as_rational() {
            return RatPoly::new(vec![-c, Rational::one()]).pow(n as u32);
        }
        let f = &self.field.modulus;
        let xs: Vec<Rational> = (0..=n as i64).map(int_rat).collect();
        let ys: Vec<Rational> = xs
            .iter()
            .map(|y| f.resultant(&(&RatPoly::constant(y.clone()) - &self.rep)))
            .collect();
        RatPoly::interpolate(&xs, &ys)
    }

    /// Monic minimal polynomial over Q.
    pub fn min_poly(&self) -> RatPoly {
        let c = self.char_poly();
        let m = c.squarefree_part();
        debug_assert!(self.field.degree().is_multiple_of(m.degree()));
        debug_assert_eq!(m.pow((self.field.degree() / m.degree()) as u32), c);
        m
    }

    /// Minimal polynomial with integer coefficients, when `x` is integral.
    pub fn integral_min_poly(&self) -> Option<IntPoly> {
        self.min_poly().to_int()
    }

    pub fn is_integral(&self) -> bool {
        self.integral_min_poly().is_some()
    }

    pub fn norm(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        // f is monic, so Res(f, w) = prod w(α_i)
        self.field.modulus.resultant(&self.rep)
    }

    pub fn trace(&self) -> Rational {
        let n = self.field.degree();
        -self.char_poly().coeff(n - 1)
    }

    /// Enclosures of `σ_1(x), …, σ_{s+t}(x)`, each of radius at most `eps`.
    pub fn embed(&self, eps: &Rational) -> Result<Vec<Disk>> {
        let mut bits = INITIAL_BITS;
        loop {
            let emb = self.field.embeddings(&(eps * two_pow_neg(bits)))?;
            let vals: Vec<Disk> =
                emb.disks().iter().map(|d| Disk::eval(&self.rep, d, bits + 32)).collect();
            if vals.iter().all(|v| &v.rad <= eps) {
                return Ok(vals);
            }
            bits *= 2;
            if bits > crate::MAX_BITS {
                return Err(Error::Precision(crate::MAX_BITS));
            }
        }
    }

    /// Double-precision values of `σ_1(x), …, σ_{s+t}(x)`, each with relative
    /// error near the unit roundoff even when a conjugate is tiny.
    pub fn embed_f64(&self) -> Result<Vec<Complex64>> {
        if self.is_zero() {
            let sig = self.field.signature();
            return Ok(vec![Complex64::new(0.0, 0.0); sig.s + sig.t]);
        }
        let mut bits = 64;
        loop {
            let disks = self.embed(&two_pow_neg(bits))?;
            let fine = disks.iter().all(|d| {
                let m = d.re.abs() + d.im.abs();
                d.rad.is_zero() || d.rad < m * two_pow_neg(56)
            });
            if fine {
                return Ok(disks.iter().map(|d| d.to_c64()).collect());
            }
            bits *= 2;
            if bits > crate::MAX_BITS {
                return Err(Error::Precision(crate::MAX_BITS));
            }
        }
    }

    /// Signs of `x` under the real embeddings σ_1..σ_s, decided exactly by
    /// refining each isolating interval until the image excludes zero.
    pub fn real_signs(&self) -> Result<Vec<i8>> {
        if self.is_zero() {
            return Err(Error::InvalidInput("zero has no sign".into()));
        }
        if let Some(c) = self.as_rational() {
            let s = if c.is_positive() { 1 } else { -1 };
            return Ok(vec![s; self.field.signature.s]);
        }
        let emb = self.field.embeddings(&two_pow_neg(INITIAL_BITS))?;
        let mut signs = Vec::with_capacity(emb.real.len());
        for iv in &emb.real {
            signs.push(self.sign_on(iv)?);
        }
        Ok(signs)
    }

    fn sign_on(&self, iv: &Interval) -> Result<i8> {
        let mut iv = iv.clone();
        let mut bits = INITIAL_BITS;
        loop {
            let v = Interval::eval(&self.rep, &iv);
            if v.is_positive() {
                return Ok(1);
            }
            if v.is_negative() {
                return Ok(-1);
            }
            bits *= 2;
            if bits > crate::MAX_BITS {
                return Err(Error::Precision(crate::MAX_BITS));
            }
            iv = refine_interval(&self.field.poly, &iv, &two_pow_neg(bits));
        }
    }

    /// Positive under every real embedding (vacuously true when `s = 0`).
    pub fn is_totally_positive(&self) -> Result<bool> {
        Ok(self.real_signs()?.iter().all(|&s| s > 0))
    }

    /// `Nm_{F/E}(x) = x · τ(x)` expressed in the power basis of the subfield
    /// `E = Q(γ)` described by the certificate.
    pub fn relative_norm(&self, cert: &SubfieldCertificate) -> Result<FieldElement> {
        if cert.field_poly != self.field.poly {
            return Err(Error::Certificate("certificate belongs to a different field".into()));
        }
        let tau_alpha = cert.involution_image(&self.field)?;
        let prod = self * &tau_alpha.eval_poly(&self.rep);
        let gamma = self.field.from_poly(&cert.generator);
        let e = NumberField::new(cert.subfield_poly.clone())?;
        let coords = express_in_powers(&prod, &gamma, e.degree()).ok_or_else(|| {
            Error::Certificate("relative norm does not lie in the subfield".into())
        })?;
        e.element(coords)
    }
}

/// Coordinates `c` with `x = Σ c_j γ^j` for `j < m`, if they exist.
pub fn express_in_powers(x: &FieldElement, gamma: &FieldElement, m: usize) -> Option<Vec<Rational>> {
    let n = x.field.degree();
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut pw = x.field.one();
    for _ in 0..m {
        cols.push(pw.coords());
        pw = &pw * gamma;
    }
    // augmented n × (m + 1) system
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(x.rep.coeff(i));
            row
        })
        .collect();
    solve_exact(&mut a, m)
}

/// Gauss–Jordan on an augmented matrix with `m` unknowns; `None` if inconsistent
/// or underdetermined.
pub(crate) fn solve_exact(a: &mut [Vec<Rational>], m: usize) -> Option<Vec<Rational>> {
    let rows = a.len();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..m {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let k = a[i][c].clone();
                for j in 0..=m {
                    let t = &k * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < m || a[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    Some((0..m).map(|i| a[i][m].clone()).collect())
}

macro_rules! elem_op {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr for &FieldElement {
            type Output = FieldElement;
            fn $f(self, o: &FieldElement) -> FieldElement {
                self.check_field(o);
                let op: fn(&RatPoly, &RatPoly) -> RatPoly = $body;
                self.field.from_poly(&op(&self.rep, &o.rep))
            }
        }
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $f(self, o: FieldElement) -> FieldElement {
                (&self).$f(&o)
            }
        }
    };
}

elem_op!(Add, add, |a, b| a + b);
elem_op!(Sub, sub, |a, b| a - b);
elem_op!(Mul, mul, |a, b| a * b);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), rep: -&self.rep }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn x4m2() -> Arc<NumberField> {
        NumberField::new(IntPoly::from_i64s(&[-2, 0, 0, 0, 1])).unwrap()
    }

    fn rp(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn basic_arithmetic() {
        let k = x4m2();
        let a = k.generator();
        assert_eq!(&a * &a.pow(3).unwrap(), k.from_int(2));
        let x = k.element_i64(&[1, 0, 1, 0]).unwrap();
        let y = k.element_i64(&[-1, 0, 1, 0]).unwrap();
        let q = x.div(&y).unwrap();
        assert_eq!(&q * &y, x);
        assert_eq!(&x + &k.zero(), x);
        assert!(k.zero().inv().is_err());
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(NumberField::new(IntPoly::from_i64s(&[-1, 0, 0, 0, 1])).is_err());
        assert!(NumberField::new(IntPoly::from_i64s(&[1, 0, 2])).is_err());
    }

    #[test]
    fn characteristic_and_minimal_polynomials() {
        let k = x4m2();
        let a = k.generator();
        assert_eq!(a.char_poly(), rp(&[-2, 0, 0, 0, 1]));
        let a2 = &a * &a;
        assert_eq!(a2.char_poly(), rp(&[-2, 0, 1]).pow(2));
        assert_eq!(a2.min_poly(), rp(&[-2, 0, 1]));
        assert_eq!(k.from_int(3).char_poly(), rp(&[-3, 1]).pow(4));
        assert_eq!(k.from_int(5).min_poly(), rp(&[-5, 1]));
        let one = k.one();
        let w = (&a - &one).div(&(&a + &one)).unwrap();
        assert_eq!(w.min_poly(), rp(&[1, -12, 6, -12, 1]));
    }

    #[test]
    fn norms_and_traces() {
        let k = x4m2();
        assert_eq!(k.generator().norm(), int_rat(-2));
        assert_eq!(k.element_i64(&[1, 0, 1, 0]).unwrap().norm(), int_rat(1));
        assert_eq!(k.one().norm(), int_rat(1));
        assert_eq!(k.one().trace(), int_rat(4));
        let x = k.element(vec![rat(1, 2), int_rat(0), rat(-3, 5), int_rat(1)]).unwrap();
        let cp = x.char_poly();
        assert_eq!(x.norm(), cp.coeff(0));
        assert_eq!(x.trace(), -cp.coeff(3));
    }

    #[test]
    fn total_positivity() {
        let k = x4m2();
        assert!(k.element_i64(&[1, 0, 1, 0]).unwrap().is_totally_positive().unwrap());
        assert!(!k.element_i64(&[-1, 1, 0, 0]).unwrap().is_totally_positive().unwrap());
        assert!(k.from_int(2).is_totally_positive().unwrap());
        assert!(k.zero().is_totally_positive().is_err());
        assert_eq!(k.generator().real_signs().unwrap(), vec![-1, 1]);
    }

    #[test]
    fn embeddings_of_generator() {
        let k = x4m2();
        let v = k.generator().embed_f64().unwrap();
        let r = 2f64.powf(0.25);
        assert!((v[0].re + r).abs() < 1e-14 && v[0].im.abs() < 1e-14);
        assert!((v[1].re - r).abs() < 1e-14);
        assert!(v[2].re.abs() < 1e-14 && (v[2].im - r).abs() < 1e-14);
    }

    #[test]
    fn express_in_subfield_powers() {
        let k = x4m2();
        let a2 = k.generator().pow(2).unwrap();
        let x = k.element_i64(&[3, 0, 2, 0]).unwrap();
        assert_eq!(express_in_powers(&x, &a2, 2), Some(vec![int_rat(3), int_rat(2)]));
        assert_eq!(express_in_powers(&k.generator(), &a2, 2), None);
    }

    #[test]
    fn element_text_round_trip() {
        let k = x4m2();
        let x = k.parse_element("(1, -1/2, 0, 3)").unwrap();
        assert_eq!(k.parse_element(&x.to_string()).unwrap(), x);
        assert!(k.parse_element("(1, 2)").is_err());
    }
}
