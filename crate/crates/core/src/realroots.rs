//! Sturm-certified real root counting and isolation, certified complex root
//! enclosures, and the signature `(s, t)` of a defining polynomial.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::cnum::{round_dyadic, Disk, Interval};
use crate::error::{Error, Result};
use crate::irreducible;
use crate::poly::{big_to_f64, int_rat, IntPoly, Rational};

/// Numbers of real embeddings and of complex-conjugate pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub s: usize,
    pub t: usize,
}

impl Signature {
    pub fn degree(&self) -> usize {
        self.s + 2 * self.t
    }
}

/// Sturm sequence of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<IntPoly>,
}

fn positive_primitive(p: &IntPoly) -> IntPoly {
    let c = p.content().abs();
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    IntPoly::new(p.coeffs().iter().map(|x| x / &c).collect())
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let p0 = positive_primitive(p);
        let mut seq = vec![p0.clone()];
        let d = positive_primitive(&p0.derivative());
        if d.is_zero() {
            return SturmChain { seq };
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            if b.degree() == 0 {
                break;
            }
            let delta = a.degree() - b.degree() + 1;
            let prem = a.pseudo_rem(b);
            if prem.is_zero() {
                break;
            }
            // prem = lc(b)^delta * rem, so the sign of rem is known
            let flip = b.leading().is_negative() && delta % 2 == 1;
            let next = if flip { prem } else { -prem };
            seq.push(positive_primitive(&next));
        }
        SturmChain { seq }
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.seq.iter().map(|p| sign_rat(&p.eval(x))))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = sign_big(&p.leading());
            if p.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| sign_big(&p.leading())))
    }

    /// Number of distinct real roots in the open interval `(a, b)`; endpoints must not be roots.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

fn sign_rat(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_big(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact count of real roots of `p` in `(a, b)`.
pub fn sturm_count(p: &IntPoly, a: &Rational, b: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    if a >= b {
        return Err(Error::InvalidInput(format!("empty interval ({a}, {b})")));
    }
    let sq = p.squarefree_part();
    for e in [a, b] {
        if sq.eval(e).is_zero() {
            return Err(Error::EndpointIsRoot(e.to_string()));
        }
    }
    Ok(SturmChain::new(&sq).count(a, b))
}

/// Real root count of the squarefree part, with no irreducibility requirement.
pub fn count_real_roots(p: &IntPoly) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    SturmChain::new(&p.squarefree_part()).count_all()
}

/// Isolating intervals for the real roots of a squarefree polynomial, ascending.
/// An interval is either a rational point (an exact rational root) or an open
/// interval whose endpoints are not roots and which contains exactly one root.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<Interval> {
    let sq = p.squarefree_part();
    if sq.degree() == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(&sq);
    let b = sq.cauchy_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count(&lo, &hi);
        match n {
            0 => {}
            1 => out.push(Interval::new(lo, hi)),
            _ => {
                let m = split_point(&sq, &lo, &hi);
                stack.push((lo, m.clone()));
                stack.push((m, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// A rational strictly inside `(lo, hi)` that is not a root of `p`; the midpoint when possible.
fn split_point(p: &IntPoly, lo: &Rational, hi: &Rational) -> Rational {
    let w = hi - lo;
    let mut k = 2i64;
    loop {
        for j in 1..k {
            let m = lo + &w * Rational::new(BigInt::from(j), BigInt::from(k));
            if !p.eval(&m).is_zero() {
                return m;
            }
        }
        k += 1;
    }
}

/// Shrink an isolating interval of a simple root by bisection until its width is at most `eps`.
pub fn refine_interval(p: &IntPoly, iv: &Interval, eps: &Rational) -> Interval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    if lo == hi {
        return iv.clone();
    }
    let mut slo = sign_rat(&p.eval(&lo));
    debug_assert!(slo != 0);
    while &(&hi - &lo) > eps {
        let m = (&lo + &hi) / int_rat(2);
        let sm = sign_rat(&p.eval(&m));
        if sm == 0 {
            return Interval::point(m);
        }
        if sm == slo {
            lo = m;
            slo = sm;
        } else {
            hi = m;
        }
    }
    Interval::new(lo, hi)
}

/// Signature of a squarefree polynomial, without an irreducibility check.
pub fn signature_unchecked(p: &IntPoly) -> Signature {
    let sq = p.squarefree_part();
    let s = count_real_roots(&sq);
    Signature { s, t: (sq.degree() - s) / 2 }
}

/// Signature of the number field defined by an irreducible polynomial.
pub fn signature(p: &IntPoly) -> Result<Signature> {
    irreducible::require_irreducible(p)?;
    Ok(signature_unchecked(p))
}

pub fn is_totally_real(p: &IntPoly) -> Result<bool> {
    Ok(signature(p)?.t == 0)
}

// ---------------------------------------------------------------------------
// complex roots

#[derive(Clone, Debug)]
struct CRat {
    re: Rational,
    im: Rational,
}

impl CRat {
    fn from_c64(z: Complex64) -> Self {
        CRat {
            re: Rational::from_float(z.re).unwrap_or_else(Rational::zero),
            im: Rational::from_float(z.im).unwrap_or_else(Rational::zero),
        }
    }
    fn add(&self, o: &CRat) -> CRat {
        CRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &CRat) -> CRat {
        CRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn abs_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
    fn div(&self, o: &CRat) -> Option<CRat> {
        let d = o.abs_sq();
        if d.is_zero() {
            return None;
        }
        Some(CRat {
            re: (&self.re * &o.re + &self.im * &o.im) / &d,
            im: (&self.im * &o.re - &self.re * &o.im) / &d,
        })
    }
    fn round(&self, bits: u32) -> CRat {
        CRat { re: round_dyadic(&self.re, bits).0, im: round_dyadic(&self.im, bits).0 }
    }
}

fn eval_crat(p: &IntPoly, z: &CRat) -> (CRat, CRat) {
    // value and derivative by Horner
    let mut v = CRat { re: Rational::zero(), im: Rational::zero() };
    let mut d = v.clone();
    for c in p.coeffs().iter().rev() {
        d = d.mul(z).add(&v);
        v = v.mul(z);
        v.re += Rational::from_integer(c.clone());
    }
    (v, d)
}

/// Double-precision Aberth iteration for all roots.
pub fn approximate_roots(p: &IntPoly) -> Vec<Complex64> {
    let n = p.degree();
    if n == 0 {
        return Vec::new();
    }
    let lc = big_to_f64(&p.leading());
    let c: Vec<f64> = p.coeffs().iter().map(|x| big_to_f64(x) / lc).collect();
    if n == 1 {
        return vec![Complex64::new(-c[0], 0.0)];
    }
    let mut r: f64 = 0.0;
    for (k, a) in c.iter().enumerate().take(n) {
        r = r.max(a.abs().powf(1.0 / (n - k) as f64));
    }
    let r = r.max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            d = d * x + v;
            v = v * x + a;
        }
        (v, d)
    };
    for _ in 0..1000 {
        let mut maxstep: f64 = 0.0;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / d;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                maxstep = maxstep.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if maxstep < 1e-16 {
            break;
        }
    }
    z
}

/// Certified enclosures of all `n` roots of a squarefree polynomial: pairwise
/// disjoint disks, each containing exactly one root, with radius below `2^-bits`
/// (or the best achieved before the precision cap).
pub fn certified_roots(p: &IntPoly, target_bits: u32) -> Result<Vec<Disk>> {
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let p = p.squarefree_part();
    if p.degree() != n {
        return Err(Error::InvalidInput("polynomial is not squarefree".into()));
    }
    if n == 1 {
        let r = Rational::new(-p.coeff(0), p.coeff(1));
        return Ok(vec![Disk::real(r)]);
    }
    let mut z: Vec<CRat> = approximate_roots(&p).into_iter().map(CRat::from_c64).collect();
    let mut bits = 64u32.max(target_bits + 16);
    let target = Rational::new(BigInt::one(), crate::cnum::pow2(target_bits));
    for _round in 0..12 {
        let steps = 3 + (bits / 64).ilog2() as usize;
        for _ in 0..steps {
            aberth_step(&p, &mut z, bits);
        }
        if let Some(disks) = inclusion_disks(&p, &z, bits) {
            if disks.iter().all(|d| d.rad <= target) {
                return Ok(disks);
            }
        }
        bits = bits.saturating_mul(2);
        if bits > crate::MAX_BITS {
            break;
        }
    }
    Err(Error::Precision(crate::MAX_BITS))
}

fn aberth_step(p: &IntPoly, z: &mut [CRat], bits: u32) {
    let n = z.len();
    for i in 0..n {
        let (v, d) = eval_crat(p, &z[i]);
        if v.re.is_zero() && v.im.is_zero() {
            continue;
        }
        let Some(ratio) = v.div(&d) else { continue };
        let mut s = CRat { re: Rational::zero(), im: Rational::zero() };
        let one = CRat { re: Rational::one(), im: Rational::zero() };
        for j in 0..n {
            if j != i {
                if let Some(q) = one.div(&z[i].sub(&z[j])) {
                    s = s.add(&q.round(bits + 8));
                }
            }
        }
        let denom = one.sub(&ratio.mul(&s));
        if let Some(w) = ratio.div(&denom) {
            z[i] = z[i].sub(&w).round(bits);
        }
    }
}

/// Weierstrass inclusion disks `D(z_i, n |W_i|)`; returned only when pairwise disjoint.
fn inclusion_disks(p: &IntPoly, z: &[CRat], bits: u32) -> Option<Vec<Disk>> {
    let n = z.len();
    let lc = Rational::from_integer(p.leading());
    let mut disks = Vec::with_capacity(n);
    for i in 0..n {
        let (v, _) = eval_crat(p, &z[i]);
        let mut prod = CRat { re: lc.clone(), im: Rational::zero() };
        for j in 0..n {
            if j != i {
                prod = prod.mul(&z[i].sub(&z[j]));
            }
        }
        let den = prod.abs_sq();
        if den.is_zero() {
            return None;
        }
        // |W_i| = sqrt(|v|^2 / |prod|^2)
        let w2 = v.abs_sq() / den;
        let w = crate::cnum::sqrt_upper(&w2, bits + 8);
        let rad = w.clone() * int_rat(n as i64);
        let (rad, step) = round_dyadic(&rad, bits + 8);
        disks.push(Disk::new(z[i].re.clone(), z[i].im.clone(), rad + step));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !disks[i].disjoint(&disks[j]) {
                return None;
            }
        }
    }
    Some(disks)
}

/// The complex embeddings of a number field, certified.
#[derive(Clone, Debug)]
pub struct EmbeddingSet {
    pub poly: IntPoly,
    /// Isolating intervals for the real roots, ascending.
    pub real: Vec<Interval>,
    /// Upper half-plane representatives of the complex pairs, in σ order.
    pub complex: Vec<Disk>,
    /// Every returned radius (real half-width or disk radius) is at most this.
    pub radius: Rational,
}

impl EmbeddingSet {
    pub fn signature(&self) -> Signature {
        Signature { s: self.real.len(), t: self.complex.len() }
    }

    /// Disks for σ_1..σ_{s+t}.
    pub fn disks(&self) -> Vec<Disk> {
        self.real
            .iter()
            .map(Disk::from_interval)
            .chain(self.complex.iter().cloned())
            .collect()
    }

    /// Disks for all n embeddings: σ_1..σ_{s+t} followed by the conjugates.
    pub fn all_disks(&self) -> Vec<Disk> {
        let mut v = self.disks();
        v.extend(self.complex.iter().map(|d| d.conj()));
        v
    }

    pub fn real_f64(&self) -> Vec<f64> {
        self.real.iter().map(|iv| iv.to_f64()).collect()
    }

    pub fn complex_f64(&self) -> Vec<Complex64> {
        self.complex.iter().map(|d| d.to_c64()).collect()
    }
}

fn eps_bits(eps: &Rational) -> u32 {
    // smallest b with 2^-b <= eps
    let mut b = 0u32;
    let mut v = Rational::one();
    while &v > eps {
        v /= int_rat(2);
        b += 1;
    }
    b
}

/// All roots of a squarefree polynomial with certified radius at most `eps`.
pub fn refine_embeddings(p: &IntPoly, eps: &Rational) -> Result<EmbeddingSet> {
    if !eps.is_positive() {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    if p.degree() == 0 {
        return Err(Error::InvalidInput("constant polynomial has no roots".into()));
    }
    let p = p.squarefree_part();
    let n = p.degree();
    let width = eps * int_rat(2);
    let real: Vec<Interval> = isolate_real_roots(&p)
        .iter()
        .map(|iv| refine_interval(&p, iv, &width))
        .collect();
    let s = real.len();
    let t = (n - s) / 2;
    let mut complex = Vec::new();
    if t > 0 {
        let mut bits = eps_bits(eps);
        loop {
            let disks = certified_roots(&p, bits)?;
            let mut upper: Vec<Disk> = disks
                .iter()
                .filter(|d| d.excludes_real_axis() && d.im.is_positive())
                .cloned()
                .collect();
            let lower = disks
                .iter()
                .filter(|d| d.excludes_real_axis() && d.im.is_negative())
                .count();
            if upper.len() == t && lower == t {
                upper.sort_by(compare_pairs);
                complex = upper;
                break;
            }
            bits = bits.saturating_mul(2).max(bits + 32);
            if bits > crate::MAX_BITS {
                return Err(Error::Precision(crate::MAX_BITS));
            }
        }
    }
    Ok(EmbeddingSet { poly: p, real, complex, radius: eps.clone() })
}

/// Smallest real part first; ties (overlapping real-part ranges) by smaller imaginary part.
fn compare_pairs(a: &Disk, b: &Disk) -> std::cmp::Ordering {
    let gap = (&a.re - &b.re).abs();
    if gap > &a.rad + &b.rad {
        a.re.cmp(&b.re)
    } else {
        a.im.cmp(&b.im)
    }
}
