//! Units of `Z[α]`: detection, bounded search, totally positive units,
//! dilation factors at the complex place and the log-embedding rank.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cnum::{ln_interval, Disk, Interval};
use crate::error::{Error, Result};
use crate::lckrank::SubfieldCertificate;
use crate::numfield::{FieldElement, NumberField};
use crate::poly::{rat_to_f64, IntPoly, Rational};
use crate::realroots::certified_roots;

/// A unit with its norm and sign data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitElement {
    pub element: FieldElement,
    pub norm: i8,
    pub totally_positive: bool,
}

impl UnitElement {
    /// Wrap `x` after checking that it is an integral unit.
    pub fn new(x: FieldElement) -> Result<UnitElement> {
        if !is_unit(&x)? {
            return Err(Error::InvalidInput(format!("{x} is not a unit")));
        }
        let norm = if x.norm().is_positive() { 1 } else { -1 };
        let totally_positive = x.is_totally_positive()?;
        Ok(UnitElement { element: x, norm, totally_positive })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.element.field()
    }

    pub fn is_one(&self) -> bool {
        self.element.is_one()
    }

    pub fn is_plus_minus_one(&self) -> bool {
        self.element.as_rational().is_some()
    }

    pub fn mul(&self, o: &UnitElement) -> UnitElement {
        let element = &self.element * &o.element;
        UnitElement {
            totally_positive: self.totally_positive && o.totally_positive
                || element.is_totally_positive().unwrap_or(false),
            norm: self.norm * o.norm,
            element,
        }
    }

    /// A totally positive unit in the same class: `u`, `-u` or `u²`.
    pub fn totally_positive_version(&self) -> Result<UnitElement> {
        if self.totally_positive {
            return Ok(self.clone());
        }
        let neg = -&self.element;
        if neg.is_totally_positive()? {
            let norm = if self.field().degree().is_multiple_of(2) { self.norm } else { -self.norm };
            return Ok(UnitElement { element: neg, norm, totally_positive: true });
        }
        let sq = &self.element * &self.element;
        Ok(UnitElement { element: sq, norm: 1, totally_positive: true })
    }
}

/// Serializable summary of a unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitRecord {
    #[serde(with = "crate::serial::rationals")]
    pub coords: Vec<Rational>,
    pub norm: i8,
    pub totally_positive: bool,
}

impl From<&UnitElement> for UnitRecord {
    fn from(u: &UnitElement) -> Self {
        UnitRecord { coords: u.element.coords(), norm: u.norm, totally_positive: u.totally_positive }
    }
}

/// `Nm(x) = ±1` for integral `x`.
pub fn is_unit(x: &FieldElement) -> Result<bool> {
    if !x.is_integral() {
        return Err(Error::NotIntegral);
    }
    Ok(x.norm().abs().is_one())
}

/// Integer multiplication-by-`x` matrix in the basis `1, α, …, α^{n-1}`
/// (column `j` holds the coordinates of `x α^j`), or `None` on `i128` overflow.
fn mult_matrix(f: &[i128], x: &[i128]) -> Option<Vec<Vec<i128>>> {
    let n = x.len();
    let mut cols = Vec::with_capacity(n);
    let mut v = x.to_vec();
    for _ in 0..n {
        cols.push(v.clone());
        let top = v[n - 1];
        let mut next = vec![0i128; n];
        for i in (1..n).rev() {
            next[i] = v[i - 1].checked_sub(top.checked_mul(f[i])?)?;
        }
        next[0] = top.checked_mul(f[0])?.checked_neg()?;
        v = next;
    }
    Some(cols)
}

/// Fraction-free Gaussian elimination; `None` on overflow.
fn bareiss_det(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else { return Some(0) };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Some(sign * m[n - 1][n - 1])
}

fn exact_norm(field: &Arc<NumberField>, f: &[i128], x: &[i64]) -> BigInt {
    let xi: Vec<i128> = x.iter().map(|&c| c as i128).collect();
    if let Some(d) = mult_matrix(f, &xi).and_then(bareiss_det) {
        return BigInt::from(d);
    }
    let e = field.element_i64(x).expect("coordinate count matches");
    e.norm().to_integer()
}

/// All units with power-basis coordinates in `[-bound, bound]`, one per
/// `±` pair (first nonzero coordinate positive), sorted by height then
/// coordinates.
pub fn unit_search_bounded(field: &Arc<NumberField>, bound: i64) -> Result<Vec<UnitElement>> {
    if bound < 1 {
        return Err(Error::InvalidInput("coefficient bound must be at least 1".into()));
    }
    let n = field.degree();
    let f: Vec<i128> = field
        .poly()
        .coeffs()
        .iter()
        .map(|c| c.to_i128().ok_or_else(|| Error::InvalidInput("coefficients too large".into())))
        .collect::<Result<_>>()?;
    let side = (2 * bound + 1) as u64;
    let total = side.checked_pow(n as u32).ok_or_else(|| {
        Error::InvalidInput(format!("search box of side {side} in dimension {n} is too large"))
    })?;
    let mut found: Vec<Vec<i64>> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let mut k = idx;
            let mut x = vec![0i64; n];
            for c in x.iter_mut() {
                *c = (k % side) as i64 - bound;
                k /= side;
            }
            let lead = x.iter().find(|&&c| c != 0)?;
            if *lead < 0 {
                return None;
            }
            exact_norm(field, &f, &x).abs().is_one().then_some(x)
        })
        .collect();
    found.sort_by_key(|x| (x.iter().map(|c| c.abs()).max(), x.clone()));
    found
        .into_iter()
        .map(|x| UnitElement::new(field.element_i64(&x)?))
        .collect()
}

/// Units obtained as quotients `x / y` of box elements with the same
/// `|Nm| ≤ max_norm` (generating principal ideals that coincide), together
/// with the units of the box itself; one per `±` pair, sorted by height.
pub fn unit_search_quotients(field: &Arc<NumberField>, bound: i64, max_norm: u64) -> Result<Vec<UnitElement>> {
    if bound < 1 {
        return Err(Error::InvalidInput("coefficient bound must be at least 1".into()));
    }
    let n = field.degree();
    let f: Vec<i128> = field
        .poly()
        .coeffs()
        .iter()
        .map(|c| c.to_i128().ok_or_else(|| Error::InvalidInput("coefficients too large".into())))
        .collect::<Result<_>>()?;
    let side = (2 * bound + 1) as u64;
    let total = side.checked_pow(n as u32).ok_or_else(|| {
        Error::InvalidInput(format!("search box of side {side} in dimension {n} is too large"))
    })?;
    let mut small: Vec<(u64, Vec<i64>)> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let mut k = idx;
            let mut x = vec![0i64; n];
            for c in x.iter_mut() {
                *c = (k % side) as i64 - bound;
                k /= side;
            }
            if *x.iter().find(|&&c| c != 0)? < 0 {
                return None;
            }
            let nm = exact_norm(field, &f, &x).abs().to_u64()?;
            (nm >= 1 && nm <= max_norm).then_some((nm, x))
        })
        .collect();
    small.sort_by_key(|(nm, x)| (*nm, x.iter().map(|c| c.abs()).max(), x.clone()));

    let mut candidates = Vec::with_capacity(small.len());
    for (nm, x) in small {
        candidates.push((nm, field.element_i64(&x)?));
    }
    quotient_units(candidates)
}

/// Units `x / y` for candidates of equal `|Nm|` generating the same ideal,
/// plus candidates of norm `±1`. Candidates are scanned in the given order.
fn quotient_units(candidates: Vec<(u64, FieldElement)>) -> Result<Vec<UnitElement>> {
    let mut units: Vec<FieldElement> = Vec::new();
    let push = |u: FieldElement, units: &mut Vec<FieldElement>| {
        if u.as_rational().is_none() && !units.iter().any(|v| *v == u || *v == -&u) {
            units.push(u);
        }
    };
    let mut reps: std::collections::BTreeMap<u64, Vec<FieldElement>> = Default::default();
    for (nm, x) in candidates {
        if nm == 1 {
            push(x, &mut units);
            continue;
        }
        let class = reps.entry(nm).or_default();
        let mut matched = false;
        for r in class.iter() {
            if *r == x || *r == -&x {
                matched = true;
                break;
            }
            let q = x.div(r)?;
            if q.is_integral() {
                push(q, &mut units);
                matched = true;
                break;
            }
        }
        if !matched {
            class.push(x);
        }
    }
    let mut out = units.into_iter().map(UnitElement::new).collect::<Result<Vec<_>>>()?;
    let height = |u: &UnitElement| {
        u.element.coords().iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    };
    out.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.element.coords().cmp(&b.element.coords())));
    Ok(out)
}

/// Floating-point LLL (δ = 0.99) on the rows of `b`, applying the same
/// integer operations to the coordinate rows `c`.
fn lll_f64(b: &mut [Vec<f64>], c: &mut [Vec<i64>]) {
    let k = b.len();
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let gso = |b: &[Vec<f64>]| {
        let mut bs: Vec<Vec<f64>> = Vec::with_capacity(k);
        let mut mu = vec![vec![0.0; k]; k];
        for i in 0..k {
            let mut v = b[i].clone();
            for j in 0..i {
                mu[i][j] = dot(&b[i], &bs[j]) / dot(&bs[j], &bs[j]);
                for (x, y) in v.iter_mut().zip(&bs[j]) {
                    *x -= mu[i][j] * y;
                }
            }
            bs.push(v);
        }
        (bs, mu)
    };
    let mut i = 1;
    let mut guard = 0;
    while i < k && guard < 10_000 {
        guard += 1;
        for j in (0..i).rev() {
            let (_, mu) = gso(b);
            let r = mu[i][j].round();
            if r != 0.0 {
                let (bj, cj) = (b[j].clone(), c[j].clone());
                for (x, y) in b[i].iter_mut().zip(&bj) {
                    *x -= r * y;
                }
                for (x, y) in c[i].iter_mut().zip(&cj) {
                    *x -= r as i64 * y;
                }
            }
        }
        let (bs, mu) = gso(b);
        if dot(&bs[i], &bs[i]) >= (0.99 - mu[i][i - 1] * mu[i][i - 1]) * dot(&bs[i - 1], &bs[i - 1]) {
            i += 1;
        } else {
            b.swap(i, i - 1);
            c.swap(i, i - 1);
            i = (i - 1).max(1);
        }
    }
}

/// Units from elements of small norm found by LLL-reducing `σ(Z[α])` with
/// the places rescaled by `rounds` seeded random weights in `[-spread, spread]`.
pub fn unit_search_lattice(field: &Arc<NumberField>, rounds: usize, spread: f64, seed: u64) -> Result<Vec<UnitElement>> {
    use rand::{Rng, SeedableRng};
    let n = field.degree();
    let sig = field.signature();
    let places = sig.s + sig.t;
    let alpha = field.generator();
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut x = field.one();
    for _ in 0..n {
        let e = x.embed_f64()?;
        let mut row: Vec<f64> = e[..sig.s].iter().map(|z| z.re).collect();
        for z in &e[sig.s..] {
            row.push(z.re);
            row.push(z.im);
        }
        cols.push(row);
        x = &x * &alpha;
    }
    let f: Vec<i128> = field
        .poly()
        .coeffs()
        .iter()
        .map(|c| c.to_i128().ok_or_else(|| Error::InvalidInput("coefficients too large".into())))
        .collect::<Result<_>>()?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut seen: std::collections::BTreeSet<Vec<i64>> = Default::default();
    let mut candidates: Vec<(u64, FieldElement)> = Vec::new();
    for round in 0..rounds {
        let w: Vec<f64> = (0..places).map(|_| if round == 0 { 0.0 } else { rng.gen_range(-spread..=spread) }).collect();
        let scale: Vec<f64> = (0..n)
            .map(|i| if i < sig.s { w[i] } else { w[sig.s + (i - sig.s) / 2] })
            .map(f64::exp)
            .collect();
        let mut b: Vec<Vec<f64>> = cols.iter().map(|r| r.iter().zip(&scale).map(|(x, s)| x * s).collect()).collect();
        let mut c: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        lll_f64(&mut b, &mut c);
        for v in c {
            let mut v = v;
            if let Some(&lead) = v.iter().find(|&&x| x != 0) {
                if lead < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
            }
            if !seen.insert(v.clone()) {
                continue;
            }
            let nm = exact_norm(field, &f, &v).abs();
            if let Some(nm) = nm.to_u64() {
                if nm > 0 {
                    candidates.push((nm, field.element_i64(&v)?));
                }
            }
        }
    }
    quotient_units(candidates)
}

/// Fundamental unit of the maximal order of `Q(√d)` for squarefree `d > 1`,
/// as an element of `Q[X]/(X² - d)`.
pub fn quadratic_fundamental_unit(d: i64) -> Result<UnitElement> {
    if d <= 1 || !is_squarefree(d) {
        return Err(Error::InvalidInput(format!("{d} is not a squarefree integer > 1")));
    }
    let field = NumberField::new(IntPoly::from_i64s(&[-d, 0, 1]))?;
    let d_big = BigInt::from(d);
    let root = d_big.sqrt();
    let half_integral = d.rem_euclid(4) == 1;
    // continued fraction of (P0 + √d)/Q0, with θ = √d or θ = (1 + √d)/2
    let (mut pp, mut qq) = if half_integral {
        (BigInt::one(), BigInt::from(2))
    } else {
        (BigInt::zero(), BigInt::one())
    };
    let (mut p0, mut p1) = (BigInt::one(), BigInt::zero());
    let (mut q0, mut q1) = (BigInt::zero(), BigInt::one());
    let c = (BigInt::from(d) - 1) / 4;
    for _ in 0..100_000 {
        let a = (&pp + &root) / &qq;
        let p2 = &a * &p0 + &p1;
        let q2 = &a * &q0 + &q1;
        p1 = std::mem::replace(&mut p0, p2);
        q1 = std::mem::replace(&mut q0, q2);
        let (p, q) = (&p0, &q0);
        let nm = if half_integral { p * p - p * q - &c * q * q } else { p * p - &d_big * q * q };
        if nm.abs().is_one() {
            let coords = if half_integral {
                // conjugate of p - qθ is (2p - q + q√d)/2
                vec![Rational::new(BigInt::from(2) * p - q, BigInt::from(2)), Rational::new(q.clone(), BigInt::from(2))]
            } else {
                vec![Rational::from_integer(p.clone()), Rational::from_integer(q.clone())]
            };
            return UnitElement::new(field.element(coords)?);
        }
        pp = &a * &qq - &pp;
        qq = (&d_big - &pp * &pp) / &qq;
    }
    Err(Error::InvalidInput(format!("continued fraction for √{d} did not close")))
}

fn is_squarefree(d: i64) -> bool {
    let mut k = 2i64;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// `|σ_{s+1}(u)|²` with a certified enclosure, plus `Nm_{F/E}(u)` when a
/// subfield certificate is supplied.
#[derive(Clone, Debug)]
pub struct DilationFactor {
    pub value: f64,
    pub enclosure: Interval,
    pub exact_form: Option<FieldElement>,
}

impl DilationFactor {
    pub fn error_bound(&self) -> f64 {
        rat_to_f64(&self.enclosure.width())
    }
}

fn complex_place_disk(x: &FieldElement, eps: &Rational) -> Result<Disk> {
    let s = x.field().signature().s;
    Ok(x.embed(eps)?.swap_remove(s))
}

fn require_one_complex_place(field: &NumberField) -> Result<()> {
    let sig = field.signature();
    if sig.t != 1 {
        return Err(Error::Signature { s: sig.s, t: sig.t, reason: "need exactly one complex place".into() });
    }
    Ok(())
}

pub fn dilation_factor(u: &UnitElement, cert: Option<&SubfieldCertificate>) -> Result<DilationFactor> {
    require_one_complex_place(u.field())?;
    let eps = Rational::new(BigInt::one(), crate::cnum::pow2(80));
    let z = complex_place_disk(&u.element, &eps)?;
    let enclosure = z.abs_sq(96);
    let value = enclosure.to_f64();
    let exact_form = match cert {
        None => None,
        Some(c) => {
            let e = u.element.relative_norm(c)?;
            // evaluate the E-element at σ_{s+1}(γ) and compare
            let gamma = u.field().from_poly(&c.generator);
            let g_at = complex_place_disk(&gamma, &eps)?;
            let v = Disk::eval(e.rep(), &g_at, 96);
            let lo = &enclosure.lo - &v.rad - &eps;
            let hi = &enclosure.hi + &v.rad + &eps;
            if v.re < lo || v.re > hi {
                return Err(Error::Certificate(
                    "relative norm disagrees with the complex-place modulus".into(),
                ));
            }
            Some(e)
        }
    };
    Ok(DilationFactor { value, enclosure, exact_form })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum UnimodularEvidence {
    /// The minimal polynomial is not palindromic, so `1/σ(u)` is not a conjugate.
    NotReciprocal,
    /// `|σ_{s+1}(u)|` is certified away from 1.
    OffUnitCircle {
        #[serde(with = "crate::serial::rational")]
        lower: Rational,
        #[serde(with = "crate::serial::rational")]
        upper: Rational,
    },
    /// `conj(σ_{s+1}(u))` and `1/σ_{s+1}(u)` lie in the same isolating disk of
    /// the minimal polynomial, so they are the same root.
    PairedRoots { bits: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularVerdict {
    pub unimodular: bool,
    pub min_poly: IntPoly,
    pub evidence: UnimodularEvidence,
}

/// Exact decision of `|σ_{s+1}(u)| = 1`.
pub fn is_unimodular_at_complex_place(u: &UnitElement) -> Result<UnimodularVerdict> {
    require_one_complex_place(u.field())?;
    if u.is_plus_minus_one() {
        return Err(Error::InvalidInput("±1 is excluded".into()));
    }
    let min_poly = u.element.integral_min_poly().ok_or(Error::NotIntegral)?;
    if !min_poly.is_reciprocal() {
        return Ok(UnimodularVerdict { unimodular: false, min_poly, evidence: UnimodularEvidence::NotReciprocal });
    }
    let one = Rational::one();
    let mut bits = 64u32;
    while bits <= crate::MAX_BITS {
        let eps = Rational::new(BigInt::one(), crate::cnum::pow2(bits + 16));
        let z = complex_place_disk(&u.element, &eps)?;
        let lower = z.abs_lower(bits + 16);
        let upper = z.abs_upper(bits + 16);
        if lower > one || upper < one {
            return Ok(UnimodularVerdict {
                unimodular: false,
                min_poly,
                evidence: UnimodularEvidence::OffUnitCircle { lower, upper },
            });
        }
        if let (Some(inv), Ok(roots)) = (z.recip(bits + 16), certified_roots(&min_poly, bits)) {
            // each of conj(z) and 1/z is a root of the palindromic min poly; if
            // both disks meet a single isolating disk, they are the same root
            let conj = z.conj();
            let only = |d: &Disk| {
                let hits: Vec<usize> =
                    (0..roots.len()).filter(|&i| !d.disjoint(&roots[i])).collect();
                (hits.len() == 1).then(|| hits[0])
            };
            if matches!((only(&conj), only(&inv)), (Some(a), Some(b)) if a == b) {
                return Ok(UnimodularVerdict {
                    unimodular: true,
                    min_poly,
                    evidence: UnimodularEvidence::PairedRoots { bits },
                });
            }
        }
        bits *= 2;
    }
    Err(Error::Precision(crate::MAX_BITS))
}

/// Rank of `U_F⁺` from Dirichlet's theorem together with an exhibited set of
/// multiplicatively independent totally positive units.
#[derive(Clone, Debug)]
pub struct PositiveUnitRank {
    pub theoretical: usize,
    pub exhibited: Vec<UnitElement>,
    /// Certified log vectors (real places) of the exhibited units.
    pub logs: Vec<Vec<Interval>>,
    pub bound: i64,
}

/// Bits used for certified logarithms; enclosures are narrower than `1e-20`.
pub const LOG_BITS: u32 = 96;

/// `ln |σ_i(u)|` over the real places, certified.
pub fn real_log_vector(u: &FieldElement, bits: u32) -> Result<Vec<Interval>> {
    let s = u.field().signature().s;
    let eps = Rational::new(BigInt::one(), crate::cnum::pow2(bits + 16));
    let vals = u.embed(&eps)?;
    let mut out = Vec::with_capacity(s);
    for d in vals.iter().take(s) {
        let iv = d.re_interval();
        let abs = if iv.is_negative() { iv.neg() } else { iv };
        let l = ln_interval(&abs, bits).ok_or(Error::Precision(bits))?;
        out.push(l);
    }
    Ok(out)
}

fn interval_det(m: &[Vec<Interval>]) -> Interval {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = Interval::point(Rational::zero());
    for j in 0..k {
        let minor: Vec<Vec<Interval>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = m[0][j].mul(&interval_det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// True when some maximal minor of the `k × s` matrix is certified nonzero.
pub fn certified_full_rank(rows: &[Vec<Interval>]) -> bool {
    let k = rows.len();
    if k == 0 {
        return true;
    }
    let s = rows[0].len();
    if k > s {
        return false;
    }
    crate::irreducible::combinations(s, k).iter().any(|cols| {
        let sub: Vec<Vec<Interval>> =
            rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        !interval_det(&sub).contains_zero()
    })
}

pub fn positive_unit_rank(field: &Arc<NumberField>, bound: i64) -> Result<PositiveUnitRank> {
    let sig = field.signature();
    if sig.s == 0 {
        return Err(Error::Signature { s: sig.s, t: sig.t, reason: "no real place".into() });
    }
    let theoretical = sig.s + sig.t - 1;
    let mut exhibited = Vec::new();
    let mut logs: Vec<Vec<Interval>> = Vec::new();
    if theoretical > 0 {
        for u in unit_search_bounded(field, bound)? {
            if u.is_plus_minus_one() {
                continue;
            }
            let tp = u.totally_positive_version()?;
            let l = real_log_vector(&tp.element, LOG_BITS)?;
            logs.push(l);
            if certified_full_rank(&logs) {
                exhibited.push(tp);
                if exhibited.len() == theoretical {
                    break;
                }
            } else {
                logs.pop();
            }
        }
    }
    Ok(PositiveUnitRank { theoretical, exhibited, logs, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int_rat, rat};

    fn x4m2() -> Arc<NumberField> {
        NumberField::new(IntPoly::from_i64s(&[-2, 0, 0, 0, 1])).unwrap()
    }

    fn w(k: &Arc<NumberField>) -> UnitElement {
        let a = k.generator();
        let one = k.one();
        UnitElement::new((&a - &one).div(&(&a + &one)).unwrap()).unwrap()
    }

    #[test]
    fn unit_detection() {
        let k = x4m2();
        assert!(is_unit(&k.element_i64(&[1, 0, 1, 0]).unwrap()).unwrap());
        assert!(!is_unit(&k.generator()).unwrap());
        assert!(is_unit(&k.one()).unwrap());
        let half = k.from_rational(rat(1, 2));
        assert!(matches!(is_unit(&half), Err(Error::NotIntegral)));
    }

    #[test]
    fn determinant_norm_matches_resultant() {
        let k = x4m2();
        let f: Vec<i128> = vec![-2, 0, 0, 0, 1];
        for x in [[1, 0, 1, 0], [-1, 1, 0, 0], [3, -2, 2, -2], [5, 7, -3, 1]] {
            let e = k.element_i64(&x).unwrap();
            assert_eq!(exact_norm(&k, &f, &x), e.norm().to_integer());
        }
    }

    #[test]
    fn bounded_search_examples() {
        let k = x4m2();
        let units = unit_search_bounded(&k, 2).unwrap();
        let has = |c: &[i64]| units.iter().any(|u| u.element == k.element_i64(c).unwrap());
        assert!(has(&[1, 0, 1, 0]));
        // α - 1 is stored with a positive leading coordinate as 1 - α
        assert!(has(&[1, -1, 0, 0]));
        assert!(has(&[1, 0, 0, 0]));
        let q = NumberField::new(IntPoly::from_i64s(&[-2, 0, 1])).unwrap();
        let units = unit_search_bounded(&q, 1).unwrap();
        assert!(units.iter().any(|u| u.element == q.element_i64(&[1, 1]).unwrap()));
    }

    #[test]
    fn quadratic_units() {
        let c = |d| quadratic_fundamental_unit(d).unwrap().element.coords();
        assert_eq!(c(2), vec![int_rat(1), int_rat(1)]);
        assert_eq!(c(3), vec![int_rat(2), int_rat(1)]);
        assert_eq!(c(5), vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(c(13), vec![rat(3, 2), rat(1, 2)]);
        assert_eq!(c(94), vec![int_rat(2143295), int_rat(221064)]);
        assert!(quadratic_fundamental_unit(8).is_err());
        assert!(quadratic_fundamental_unit(1).is_err());
    }

    #[test]
    fn dilation_factors() {
        let k = x4m2();
        let u = UnitElement::new(k.element_i64(&[1, 0, 1, 0]).unwrap()).unwrap();
        let d = dilation_factor(&u, None).unwrap();
        assert!((d.value - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-15);
        let one = UnitElement::new(k.one()).unwrap();
        assert!((dilation_factor(&one, None).unwrap().value - 1.0).abs() < 1e-18);
        let dw = dilation_factor(&w(&k), None).unwrap();
        assert!(dw.enclosure.contains(&Rational::one()));
    }

    #[test]
    fn unimodularity() {
        let k = x4m2();
        let v = is_unimodular_at_complex_place(&w(&k)).unwrap();
        assert!(v.unimodular);
        assert_eq!(v.min_poly, IntPoly::from_i64s(&[1, -12, 6, -12, 1]));
        let u = UnitElement::new(k.element_i64(&[1, 0, 1, 0]).unwrap()).unwrap();
        let v = is_unimodular_at_complex_place(&u).unwrap();
        assert!(!v.unimodular);
        assert_eq!(v.evidence, UnimodularEvidence::NotReciprocal);
        assert!(is_unimodular_at_complex_place(&UnitElement::new(k.one()).unwrap()).is_err());
    }

    #[test]
    fn totally_positive_versions() {
        let k = x4m2();
        let u = UnitElement::new(k.element_i64(&[-1, 1, 0, 0]).unwrap()).unwrap();
        assert!(!u.totally_positive);
        let tp = u.totally_positive_version().unwrap();
        assert!(tp.totally_positive && tp.element.is_totally_positive().unwrap());
        assert_eq!(tp.element.norm(), int_rat(1));
    }

    #[test]
    fn small_positive_ranks() {
        let q = NumberField::new(IntPoly::from_i64s(&[-2, 0, 1])).unwrap();
        let r = positive_unit_rank(&q, 3).unwrap();
        assert_eq!(r.theoretical, 1);
        assert_eq!(r.exhibited.len(), 1);
        // 1 - √2 comes first in the search order; its square is the positive version
        assert_eq!(r.exhibited[0].element, q.element_i64(&[3, -2]).unwrap());
        let rationals = NumberField::new(IntPoly::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(positive_unit_rank(&rationals, 1).unwrap().theoretical, 0);
    }
}
