//! Generators for the example families: polynomials with Galois group `S_{2n}`
//! and one complex place, quadratic extensions `E(√(α - q))` of totally real
//! fields, and totally real fields cut out of cyclotomic cosine fields.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::is_prime;
use crate::galois::{factor_pattern, FactorPattern};
use crate::irreducible::{is_irreducible, Irreducibility};
use crate::poly::{IntPoly, Rational};
use crate::realroots::{is_totally_real, isolate_real_roots, signature_unchecked, Signature, SturmChain};

/// Inputs of the `S_{2n}` recipe `f = -15 f1 + 10 f2 + 6 f3 + 30 g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalFamilySpec {
    pub n: usize,
    pub f1: IntPoly,
    pub f2: IntPoly,
    pub f3: IntPoly,
    pub g: IntPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalConstruction {
    pub poly: IntPoly,
    /// Patterns of `f` modulo 2, 3 and 5.
    pub witnesses: Vec<FactorPattern>,
}

fn construct_err(msg: String) -> Error {
    Error::Construct(msg)
}

fn check_shape(name: &str, p: &IntPoly, n: usize) -> Result<()> {
    if !p.is_monic() || p.degree() != 2 * n {
        return Err(construct_err(format!("{name} = {p} must be monic of degree {}", 2 * n)));
    }
    Ok(())
}

fn pattern_or_err(name: &str, p: &IntPoly, prime: u64) -> Result<Vec<usize>> {
    match factor_pattern(p, prime)? {
        Some(pat) => Ok(pat.degrees),
        None => Err(construct_err(format!("{name} is not squarefree modulo {prime}"))),
    }
}

/// Check the three congruence conditions of the recipe.
pub fn validate_maximal_spec(spec: &MaximalFamilySpec) -> Result<()> {
    let n = spec.n;
    if n < 2 {
        return Err(construct_err("n must be at least 2".into()));
    }
    check_shape("f1", &spec.f1, n)?;
    check_shape("f2", &spec.f2, n)?;
    check_shape("f3", &spec.f3, n)?;
    if !spec.g.is_zero() && spec.g.degree() >= 2 * n {
        return Err(construct_err(format!("g must have degree below {}", 2 * n)));
    }
    let p1 = pattern_or_err("f1", &spec.f1, 2)?;
    if p1 != [2 * n] {
        return Err(construct_err(format!("f1 is not irreducible modulo 2 (pattern {p1:?})")));
    }
    let p2 = pattern_or_err("f2", &spec.f2, 3)?;
    if p2 != [1, 2 * n - 1] {
        return Err(construct_err(format!(
            "f2 is not a linear times an irreducible factor modulo 3 (pattern {p2:?})"
        )));
    }
    let p3 = pattern_or_err("f3", &spec.f3, 5)?;
    let ok3 = p3.len() == 3 && p3.contains(&2) && p3.iter().filter(|&&d| d % 2 == 1).count() == 2;
    if !ok3 {
        return Err(construct_err(format!(
            "f3 is not a quadratic times two odd-degree factors modulo 5 (pattern {p3:?})"
        )));
    }
    Ok(())
}

fn combine(spec: &MaximalFamilySpec, g: &IntPoly) -> IntPoly {
    let k = |c: i64, p: &IntPoly| p.scale(&BigInt::from(c));
    let f = &(&k(-15, &spec.f1) + &k(10, &spec.f2)) + &k(6, &spec.f3);
    &f + &k(30, g)
}

pub fn make_maximal(spec: &MaximalFamilySpec) -> Result<MaximalConstruction> {
    validate_maximal_spec(spec)?;
    let poly = combine(spec, &spec.g);
    if !poly.is_monic() {
        return Err(construct_err(format!("{poly} is not monic")));
    }
    let mut witnesses = Vec::with_capacity(3);
    for p in [2, 3, 5] {
        let pat = factor_pattern(&poly, p)?
            .ok_or_else(|| construct_err(format!("{poly} is not squarefree modulo {p}")))?;
        witnesses.push(pat);
    }
    debug_assert_eq!(witnesses[0].degrees, vec![2 * spec.n]);
    Ok(MaximalConstruction { poly, witnesses })
}

/// `g` polynomials with coefficients in `[-bound, bound]`, ordered by height
/// and then lexicographically, together with the resulting `f`, keeping those
/// for which `f` has signature `(2n - 2, 1)`.
pub fn signature_candidates(
    spec: &MaximalFamilySpec,
    bound: i64,
) -> impl Iterator<Item = (IntPoly, IntPoly)> + '_ {
    let dim = 2 * spec.n;
    let target = Signature { s: 2 * spec.n - 2, t: 1 };
    let heights = 0..=bound;
    heights.flat_map(move |h| {
        let side = (2 * h + 1) as u64;
        (0..side.pow(dim as u32)).filter_map(move |idx| {
            let mut k = idx;
            let mut c = vec![0i64; dim];
            for x in c.iter_mut() {
                *x = (k % side) as i64 - h;
                k /= side;
            }
            // each g is visited once, at its own height
            if c.iter().map(|x| x.abs()).max().unwrap_or(0) != h {
                return None;
            }
            let g = IntPoly::from_i64s(&c);
            let f = combine(spec, &g);
            (signature_unchecked(&f) == target).then_some((g, f))
        })
    })
}

/// First `g` in the box giving signature `(2n - 2, 1)`, or `None`.
pub fn search_g_for_signature(spec: &MaximalFamilySpec, bound: i64) -> Result<Option<(IntPoly, IntPoly)>> {
    let mut probe = spec.clone();
    probe.g = IntPoly::zero();
    validate_maximal_spec(&probe)?;
    Ok(signature_candidates(spec, bound).next())
}

/// Choice of the rational shift `q` in `E(√(α - q))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfShift {
    Value(Rational),
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfConstruction {
    pub poly: IntPoly,
    #[serde(with = "crate::serial::rational")]
    pub q: Rational,
    pub signature: Signature,
}

/// `E(√(α - q))` with `α` the smallest root of `E` and `q` between the two
/// smallest roots, presented by a monic integral polynomial.
pub fn make_half(e_poly: &IntPoly, shift: HalfShift) -> Result<HalfConstruction> {
    let n = e_poly.degree();
    if n < 2 || !e_poly.is_monic() {
        return Err(construct_err("subfield polynomial must be monic of degree at least 2".into()));
    }
    if let Irreducibility::Reducible { factor } = is_irreducible(e_poly)? {
        return Err(construct_err(format!("{e_poly} is reducible (factor {factor})")));
    }
    if !is_totally_real(e_poly)? {
        return Err(construct_err(format!("{e_poly} is not totally real")));
    }
    let q = match shift {
        HalfShift::Value(q) => q,
        HalfShift::Auto => {
            let roots = isolate_real_roots(e_poly);
            (&roots[0].hi + &roots[1].lo) / Rational::from_integer(2.into())
        }
    };
    // exactly one root of E lies below q, and q itself is not a root
    let chain = SturmChain::new(e_poly);
    if e_poly.eval(&q).is_zero() || chain.variations_at_neg_inf() - chain.variations_at(&q) != 1 {
        return Err(construct_err(format!(
            "q = {q} must lie strictly between the two smallest roots of {e_poly}"
        )));
    }
    // with q = a/b, β' = b·√(α - q) has minimal polynomial b^{2n} E((X² + ab)/b²)
    let a = q.numer().clone();
    let b = q.denom().clone();
    let b2 = &b * &b;
    let shifted = IntPoly::new(vec![&a * &b, BigInt::zero(), BigInt::one()]);
    let mut poly = IntPoly::zero();
    for (k, c) in e_poly.coeffs().iter().enumerate() {
        let scale = c * num_traits::pow(b2.clone(), n - k);
        poly = &poly + &shifted.pow(k as u32).scale(&scale);
    }
    if let Irreducibility::Reducible { factor } = is_irreducible(&poly)? {
        return Err(construct_err(format!("{poly} is reducible (factor {factor})")));
    }
    let signature = signature_unchecked(&poly);
    let want = Signature { s: 2 * n - 2, t: 1 };
    if signature != want {
        return Err(construct_err(format!(
            "{poly} has signature ({}, {}), expected ({}, 1)",
            signature.s,
            signature.t,
            want.s
        )));
    }
    Ok(HalfConstruction { poly, q, signature })
}

/// Minimal polynomial of `2cos(2π/p)`: `1 + Σ_{k=1}^{(p-1)/2} D_k(y)` where
/// `D_k(x + 1/x) = x^k + x^{-k}`.
pub fn min_poly_cos(p: u64) -> Result<IntPoly> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    let m = (p - 1) / 2;
    let y = IntPoly::x();
    let mut prev = IntPoly::constant(2);
    let mut cur = y.clone();
    let mut acc = &IntPoly::one() + &cur;
    for _ in 1..m {
        let next = &(&y * &cur) - &prev;
        acc = &acc + &next;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotallyRealConstruction {
    pub poly: IntPoly,
    /// Conductor of the cyclotomic field used, 0 for the degree-1 convention.
    pub prime: u64,
    pub n: usize,
}

fn primitive_root(p: u64) -> u64 {
    let order = p - 1;
    let mut factors = Vec::new();
    let mut m = order;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    (2..p).find(|&g| factors.iter().all(|&q| powmod(g, order / q) != 1)).expect("primes have primitive roots")
}

/// Element of `Z[ζ_p]` stored as `Σ v_k ζ^k`, `k < p` (not reduced by `Φ_p`).
#[derive(Clone)]
struct Cyclo(Vec<BigInt>);

impl Cyclo {
    fn zero(p: usize) -> Self {
        Cyclo(vec![BigInt::zero(); p])
    }
    fn add(&self, o: &Cyclo) -> Cyclo {
        Cyclo(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
    fn mul(&self, o: &Cyclo) -> Cyclo {
        let p = self.0.len();
        let mut r = Cyclo::zero(p);
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                r.0[(i + j) % p] += a * b;
            }
        }
        r
    }
    fn neg(&self) -> Cyclo {
        Cyclo(self.0.iter().map(|a| -a).collect())
    }
    /// The rational integer represented, using `1 + ζ + … + ζ^{p-1} = 0`.
    fn as_integer(&self) -> Option<BigInt> {
        let v1 = &self.0[1];
        self.0[1..].iter().all(|x| x == v1).then(|| &self.0[0] - v1)
    }
}

/// A degree-`n` totally real polynomial whose roots are Gaussian periods of
/// length `(p - 1)/n` for the least prime `p` with `n | (p - 1)/2`.
pub fn make_totally_real(n: usize) -> Result<TotallyRealConstruction> {
    if n == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    if n == 1 {
        return Ok(TotallyRealConstruction { poly: IntPoly::from_i64s(&[-1, 1]), prime: 0, n });
    }
    let n64 = n as u64;
    let p = (3u64..).find(|&p| is_prime(p) && ((p - 1) / 2) % n64 == 0).expect("Dirichlet");
    let pu = p as usize;
    let g = primitive_root(p);
    let len = (p - 1) / n64;
    let periods: Vec<Cyclo> = (0..n64)
        .map(|j| {
            let mut v = Cyclo::zero(pu);
            let mut x = 1u64;
            for _ in 0..j {
                x = x * g % p;
            }
            let gn = (0..n64).fold(1u64, |acc, _| acc * g % p);
            for _ in 0..len {
                v.0[x as usize] += 1;
                x = x * gn % p;
            }
            v
        })
        .collect();
    // ∏ (Y - η_j), coefficients ascending in Y
    let mut coeffs: Vec<Cyclo> = vec![{
        let mut one = Cyclo::zero(pu);
        one.0[0] = BigInt::one();
        one
    }];
    for eta in &periods {
        let mut next = vec![Cyclo::zero(pu); coeffs.len() + 1];
        let neg = eta.neg();
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].add(&c.mul(&neg));
        }
        coeffs = next;
    }
    let ints = coeffs
        .iter()
        .map(|c| c.as_integer())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| construct_err("period polynomial has non-rational coefficients".into()))?;
    let poly = IntPoly::new(ints);
    if poly.degree() != n || !is_totally_real(&poly)? {
        return Err(construct_err(format!("{poly} is not totally real of degree {n}")));
    }
    Ok(TotallyRealConstruction { poly, prime: p, n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn table_spec() -> MaximalFamilySpec {
        MaximalFamilySpec {
            n: 2,
            f1: p(&[1, 1, 0, 0, 1]),
            f2: p(&[1, 1, 0, 0, 1]),
            f3: p(&[-2, 0, 1, 0, 1]),
            g: IntPoly::zero(),
        }
    }

    #[test]
    fn table_row_maximal() {
        let c = make_maximal(&table_spec()).unwrap();
        assert_eq!(c.poly, p(&[-17, -5, 6, 0, 1]));
        let pats: Vec<Vec<usize>> = c.witnesses.iter().map(|w| w.degrees.clone()).collect();
        assert_eq!(pats, vec![vec![4], vec![1, 3], vec![1, 1, 2]]);
    }

    #[test]
    fn bad_f1_is_named() {
        let mut spec = table_spec();
        spec.f1 = p(&[1, 0, 1, 0, 1]);
        let err = make_maximal(&spec).unwrap_err().to_string();
        assert!(err.contains("f1"), "{err}");
    }

    #[test]
    fn g_shift_keeps_residues() {
        let mut spec = table_spec();
        spec.g = p(&[0, 0, 0, 1]);
        let f = make_maximal(&spec).unwrap().poly;
        assert!(f.is_monic() && f.degree() == 4);
        let base = make_maximal(&table_spec()).unwrap().poly;
        for q in [2, 3, 5] {
            let diff = &f - &base;
            assert!(diff.coeffs().iter().all(|c| (c % BigInt::from(q)).is_zero()));
        }
    }

    #[test]
    fn g_search() {
        let (g, f) = search_g_for_signature(&table_spec(), 0).unwrap().unwrap();
        assert!(g.is_zero());
        assert_eq!(f, p(&[-17, -5, 6, 0, 1]));
        assert_eq!(search_g_for_signature(&table_spec(), -1).unwrap(), None);
        assert!(signature_candidates(&table_spec(), 3).nth(1).is_some());
    }

    #[test]
    fn half_examples() {
        let h = make_half(&p(&[-2, 0, 1]), HalfShift::Value(Rational::zero())).unwrap();
        assert_eq!(h.poly, p(&[-2, 0, 0, 0, 1]));
        assert!(make_half(&p(&[-2, 0, 1]), HalfShift::Value(Rational::from_integer(2.into()))).is_err());
        let h = make_half(&p(&[-1, -2, 1, 1]), HalfShift::Auto).unwrap();
        assert_eq!(h.poly.degree(), 6);
        assert_eq!(h.signature, Signature { s: 4, t: 1 });
    }

    #[test]
    fn half_with_fractional_shift() {
        // q = 1/2 for X² - 2: β = 2·√(√2 - 1/2) has minimal polynomial (X² + 2)² - 32
        let h = make_half(&p(&[-2, 0, 1]), HalfShift::Value(Rational::new(1.into(), 2.into()))).unwrap();
        assert_eq!(h.poly, p(&[-28, 0, 4, 0, 1]));
    }

    #[test]
    fn cosine_polynomials() {
        assert_eq!(min_poly_cos(3).unwrap(), p(&[1, 1]));
        assert_eq!(min_poly_cos(5).unwrap(), p(&[-1, 1, 1]));
        assert_eq!(min_poly_cos(7).unwrap(), p(&[-1, -2, 1, 1]));
        assert!(min_poly_cos(9).is_err());
        assert!(min_poly_cos(2).is_err());
    }

    #[test]
    fn totally_real_fields() {
        assert_eq!(make_totally_real(1).unwrap().poly, p(&[-1, 1]));
        let c = make_totally_real(2).unwrap();
        assert_eq!((c.prime, c.poly), (5, p(&[-1, 1, 1])));
        let c = make_totally_real(3).unwrap();
        assert_eq!((c.prime, c.poly), (7, p(&[-1, -2, 1, 1])));
        for n in 4..=7 {
            let c = make_totally_real(n).unwrap();
            assert_eq!(c.poly.degree(), n);
            assert_eq!(((c.prime - 1) / 2) % n as u64, 0);
            assert!(is_irreducible(&c.poly).unwrap().is_irreducible());
        }
    }
}
