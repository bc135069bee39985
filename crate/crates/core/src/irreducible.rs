//! Irreducibility over Q with a checkable certificate, or an explicit factor.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cnum::Disk;
use crate::error::{Error, Result};
use crate::ff::{self, factor_mod_p, primes_up_to};
use crate::poly::{IntPoly, Rational};
use crate::realroots::certified_roots;

/// Primes scanned for mod-p and degree-sieve certificates.
const SIEVE_PRIME_BOUND: u64 = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IrreducibilityCertificate {
    Linear,
    /// Irreducible with squarefree reduction modulo `p`.
    ModP { p: u64 },
    /// Eisenstein criterion at `p`.
    Eisenstein { p: u64 },
    /// Factor-degree patterns whose attainable subset sums intersect in `{0, n}`.
    DegreeSieve { patterns: Vec<(u64, Vec<usize>)> },
    /// No subset of the certified complex roots yields an integral factor.
    FactorSearch { subsets_checked: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible(IrreducibilityCertificate),
    Reducible { factor: IntPoly },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible(_))
    }
}

pub fn is_irreducible(p: &IntPoly) -> Result<Irreducibility> {
    if p.degree() == 0 {
        return Err(Error::InvalidInput("constant polynomial".into()));
    }
    let p = p.primitive();
    let n = p.degree();
    if n == 1 {
        return Ok(Irreducibility::Irreducible(IrreducibilityCertificate::Linear));
    }
    let g = p.gcd(&p.derivative());
    if g.degree() > 0 {
        return Ok(Irreducibility::Reducible { factor: g });
    }
    if let Some(f) = rational_root_factor(&p) {
        return Ok(Irreducibility::Reducible { factor: f });
    }
    if let Some(q) = eisenstein_prime(&p) {
        return Ok(Irreducibility::Irreducible(IrreducibilityCertificate::Eisenstein { p: q }));
    }
    let mut attainable: BTreeSet<usize> = (0..=n).collect();
    let mut used = Vec::new();
    for q in primes_up_to(SIEVE_PRIME_BOUND) {
        let Ok(fac) = factor_mod_p(&p, q, 0) else { continue };
        if !fac.is_squarefree() {
            continue;
        }
        let degs = fac.degrees();
        if degs.len() == 1 {
            return Ok(Irreducibility::Irreducible(IrreducibilityCertificate::ModP { p: q }));
        }
        let sums = subset_sums(&degs);
        let next: BTreeSet<usize> = attainable.intersection(&sums).copied().collect();
        if next.len() < attainable.len() {
            used.push((q, degs));
            attainable = next;
        }
        if attainable.len() == 2 {
            return Ok(Irreducibility::Irreducible(IrreducibilityCertificate::DegreeSieve {
                patterns: used,
            }));
        }
    }
    let allowed: Vec<usize> = attainable.into_iter().filter(|&d| d > 0 && 2 * d <= n).collect();
    factor_search(&p, &allowed)
}

/// Error unless `p` is irreducible over Q.
pub fn require_irreducible(p: &IntPoly) -> Result<IrreducibilityCertificate> {
    match is_irreducible(p)? {
        Irreducibility::Irreducible(c) => Ok(c),
        Irreducibility::Reducible { factor } => Err(Error::Reducible(factor.to_string())),
    }
}

pub fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0]);
    for &d in degs {
        let shifted: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(shifted);
    }
    s
}

fn small_divisors(x: &BigInt) -> Option<Vec<BigInt>> {
    let x = x.abs().to_u64()?;
    if x > 1_000_000_000_000 {
        return None;
    }
    let mut v = Vec::new();
    let mut d = 1u64;
    while d * d <= x {
        if x % d == 0 {
            v.push(BigInt::from(d));
            if d * d != x {
                v.push(BigInt::from(x / d));
            }
        }
        d += 1;
    }
    Some(v)
}

/// Linear factor from a rational root, trying small roots first (positive before negative).
fn rational_root_factor(p: &IntPoly) -> Option<IntPoly> {
    if p.coeff(0).is_zero() {
        return Some(IntPoly::x());
    }
    let nums = small_divisors(&p.coeff(0))?;
    let dens = small_divisors(&p.leading())?;
    let mut cands: Vec<Rational> = Vec::new();
    for a in &nums {
        for b in &dens {
            if a.gcd(b).is_one() {
                cands.push(Rational::new(a.clone(), b.clone()));
            }
        }
    }
    cands.sort();
    for r in cands {
        for x in [r.clone(), -r] {
            if p.eval(&x).is_zero() {
                return Some(IntPoly::new(vec![-x.numer().clone(), x.denom().clone()]));
            }
        }
    }
    None
}

fn eisenstein_prime(p: &IntPoly) -> Option<u64> {
    let n = p.degree();
    let mut g = BigInt::zero();
    for c in &p.coeffs()[..n] {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return None;
    }
    for q in primes_up_to(1000) {
        let qb = BigInt::from(q);
        if !(&g % &qb).is_zero() {
            continue;
        }
        if (p.leading() % &qb).is_zero() {
            continue;
        }
        if (p.coeff(0) % (&qb * &qb)).is_zero() {
            continue;
        }
        return Some(q);
    }
    None
}

/// Exhaustive search over conjugation-closed subsets of the roots. A rational
/// factor with those roots exists iff `lc * prod (x - r)` has integer
/// coefficients; certified disks decide each subset.
fn factor_search(p: &IntPoly, degrees: &[usize]) -> Result<Irreducibility> {
    let n = p.degree();
    let lc = Rational::from_integer(p.leading());
    let mut bits = 64u32;
    let checked = 'precision: loop {
        let roots = certified_roots(p, bits)?;
        let mut checked = 0usize;
        for &k in degrees {
            for subset in combinations(n, k) {
                if !closed_under_conjugation(&roots, &subset) {
                    continue;
                }
                checked += 1;
                let mut prod = vec![Disk::real(lc.clone())];
                for &i in &subset {
                    prod = mul_linear(&prod, &roots[i], bits);
                }
                let mut ints = Vec::with_capacity(prod.len());
                for c in &prod {
                    if c.excludes_integers() {
                        ints.clear();
                        break;
                    }
                    match c.near_integer() {
                        Some(v) => ints.push(v),
                        None => {
                            if bits >= crate::MAX_BITS {
                                return Err(Error::Precision(bits));
                            }
                            bits *= 2;
                            continue 'precision;
                        }
                    }
                }
                if ints.len() == prod.len() {
                    let cand = IntPoly::new(ints).primitive();
                    if cand.degree() == k && p.exact_div(&cand).is_some() {
                        return Ok(Irreducibility::Reducible { factor: cand });
                    }
                }
            }
        }
        break checked;
    };
    Ok(Irreducibility::Irreducible(IrreducibilityCertificate::FactorSearch {
        subsets_checked: checked,
    }))
}

fn closed_under_conjugation(roots: &[Disk], subset: &[usize]) -> bool {
    subset.iter().all(|&i| {
        let c = roots[i].conj();
        if !roots[i].excludes_real_axis() {
            return true;
        }
        subset.iter().any(|&j| !roots[j].disjoint(&c))
    })
}

/// Multiply a polynomial with disk coefficients by `(x - r)`.
fn mul_linear(p: &[Disk], r: &Disk, bits: u32) -> Vec<Disk> {
    let mut out = vec![Disk::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] = out[i + 1].add(c);
        out[i] = out[i].sub(&c.mul(r, bits));
    }
    out
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Re-verify a certificate for `p` using only exact computations.
pub fn check_certificate(p: &IntPoly, cert: &IrreducibilityCertificate) -> Result<()> {
    let p = p.primitive();
    let n = p.degree();
    let fail = |m: &str| Err(Error::Certificate(m.to_string()));
    match cert {
        IrreducibilityCertificate::Linear => {
            if n == 1 {
                Ok(())
            } else {
                fail("not linear")
            }
        }
        IrreducibilityCertificate::ModP { p: q } => {
            let fac = factor_mod_p(&p, *q, 0)?;
            if fac.is_squarefree() && fac.degrees() == vec![n] {
                Ok(())
            } else {
                fail("reduction is not irreducible")
            }
        }
        IrreducibilityCertificate::Eisenstein { p: q } => {
            if !ff::is_prime(*q) {
                return Err(Error::NotPrime(*q));
            }
            let qb = BigInt::from(*q);
            let ok = p.coeffs()[..n].iter().all(|c| (c % &qb).is_zero())
                && !(p.leading() % &qb).is_zero()
                && !(p.coeff(0) % (&qb * &qb)).is_zero();
            if ok {
                Ok(())
            } else {
                fail("Eisenstein conditions fail")
            }
        }
        IrreducibilityCertificate::DegreeSieve { patterns } => {
            let mut att: BTreeSet<usize> = (0..=n).collect();
            for (q, degs) in patterns {
                let fac = factor_mod_p(&p, *q, 0)?;
                if !fac.is_squarefree() || &fac.degrees() != degs {
                    return fail("pattern mismatch");
                }
                att = att.intersection(&subset_sums(degs)).copied().collect();
            }
            if att == BTreeSet::from([0, n]) {
                Ok(())
            } else {
                fail("sieve leaves intermediate degrees")
            }
        }
        IrreducibilityCertificate::FactorSearch { .. } => match is_irreducible(&p)? {
            Irreducibility::Irreducible(_) => Ok(()),
            Irreducibility::Reducible { .. } => fail("factor found"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn mod2_certificate() {
        assert_eq!(
            is_irreducible(&p(&[1, 1, 0, 0, 1])).unwrap(),
            Irreducibility::Irreducible(IrreducibilityCertificate::ModP { p: 2 })
        );
    }

    #[test]
    fn eisenstein_certificate() {
        assert_eq!(
            is_irreducible(&p(&[2, -4, 0, 0, 0, 1])).unwrap(),
            Irreducibility::Irreducible(IrreducibilityCertificate::Eisenstein { p: 2 })
        );
    }

    #[test]
    fn x4_minus_1_factor() {
        assert_eq!(
            is_irreducible(&p(&[-1, 0, 0, 0, 1])).unwrap(),
            Irreducibility::Reducible { factor: p(&[-1, 1]) }
        );
    }

    #[test]
    fn constant_is_an_error() {
        assert!(is_irreducible(&p(&[5])).is_err());
    }

    #[test]
    fn swinnerton_dyer_like_needs_search() {
        // x^4 + 1 factors modulo every prime into pieces of degree <= 2
        let r = is_irreducible(&p(&[1, 0, 0, 0, 1])).unwrap();
        assert!(matches!(
            r,
            Irreducibility::Irreducible(IrreducibilityCertificate::FactorSearch { .. })
        ));
        // product of two quadratics without rational roots
        let f = &p(&[1, 0, 1]) * &p(&[-2, 0, 1]);
        match is_irreducible(&f).unwrap() {
            Irreducibility::Reducible { factor } => {
                assert!(factor == p(&[1, 0, 1]) || factor == p(&[-2, 0, 1]));
            }
            other => panic!("expected a factor, got {other:?}"),
        }
    }

    #[test]
    fn certificates_recheck() {
        for c in [&[1i64, 1, 0, 0, 1][..], &[2, -4, 0, 0, 0, 1], &[-17, -5, 6, 0, 1], &[1, 0, 0, 0, 1]] {
            let f = p(c);
            if let Irreducibility::Irreducible(cert) = is_irreducible(&f).unwrap() {
                check_certificate(&f, &cert).unwrap();
            } else {
                panic!("{f} should be irreducible");
            }
        }
    }
}
