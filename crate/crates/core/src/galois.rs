//! Frobenius cycle types and symmetric-group certificates.
//!
//! By Dedekind's theorem, when `P mod p` is squarefree its factor degrees are
//! the cycle type of a Frobenius element in the Galois group of `P`. Three
//! well-chosen cycle types force the group to be all of `S_n`:
//!
//! * an `n`-cycle (irreducible reduction) makes the group transitive;
//! * an `(n-1)`-cycle (pattern `[1, n-1]`) upgrades this to 2-transitive;
//! * a pattern with a single part equal to 2 and every other part odd has an
//!   odd power that is a transposition, and a 2-transitive group containing a
//!   transposition is symmetric.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{factor_mod_p, factor_fp, is_prime, primes_up_to, FpPoly};
use crate::irreducible::require_irreducible;
use crate::poly::IntPoly;

/// Irreducible-factor degrees of `P mod p`, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorPattern {
    pub p: u64,
    pub degrees: Vec<usize>,
}

/// What a factor pattern proves about the Galois group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleRole {
    /// An `n`-cycle: the group is transitive.
    Transitive,
    /// An `(n-1)`-cycle fixing one root.
    LongCycle,
    /// Some odd power is a transposition.
    Transposition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub p: u64,
    pub pattern: Vec<usize>,
    pub roles: Vec<CycleRole>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    FullSymmetric,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisCertificate {
    pub degree: usize,
    pub witnesses: Vec<Witness>,
    pub conclusion: Conclusion,
    /// Seed used for equal-degree splitting while scanning.
    pub seed: u64,
}

impl GaloisCertificate {
    pub fn is_full_symmetric(&self) -> bool {
        self.conclusion == Conclusion::FullSymmetric
    }
}

/// Factor pattern of `P mod p`, or `None` when the reduction is not squarefree.
pub fn factor_pattern(poly: &IntPoly, p: u64) -> Result<Option<FactorPattern>> {
    factor_pattern_seeded(poly, p, 0)
}

fn factor_pattern_seeded(poly: &IntPoly, p: u64, seed: u64) -> Result<Option<FactorPattern>> {
    let fac = factor_mod_p(poly, p, seed)?;
    if !fac.is_squarefree() {
        return Ok(None);
    }
    Ok(Some(FactorPattern { p, degrees: fac.degrees() }))
}

/// Roles a cycle type can play in a degree-`n` symmetric-group argument.
pub fn roles_of(degrees: &[usize], n: usize) -> Vec<CycleRole> {
    let mut roles = Vec::new();
    if degrees == [n] {
        roles.push(CycleRole::Transitive);
    }
    if n >= 2 && degrees == [1, n - 1] {
        roles.push(CycleRole::LongCycle);
    }
    let twos = degrees.iter().filter(|&&d| d == 2).count();
    if twos == 1 && degrees.iter().all(|&d| d == 2 || d % 2 == 1) {
        roles.push(CycleRole::Transposition);
    }
    roles
}

fn required_roles(n: usize) -> &'static [CycleRole] {
    match n {
        0 | 1 => &[],
        2 => &[CycleRole::Transitive],
        _ => &[CycleRole::Transitive, CycleRole::LongCycle, CycleRole::Transposition],
    }
}

/// Scan primes up to `prime_budget` for Frobenius witnesses proving `Gal(P) = S_n`.
///
/// Only the first witness of each role is kept, and the scan stops once all
/// roles are covered.
pub fn certify_symmetric_group(poly: &IntPoly, prime_budget: u64) -> Result<GaloisCertificate> {
    certify_symmetric_group_seeded(poly, prime_budget, 0)
}

pub fn certify_symmetric_group_seeded(
    poly: &IntPoly,
    prime_budget: u64,
    seed: u64,
) -> Result<GaloisCertificate> {
    require_irreducible(poly)?;
    let n = poly.degree();
    let needed = required_roles(n);
    let mut found: Vec<CycleRole> = Vec::new();
    let mut witnesses = Vec::new();
    for p in primes_up_to(prime_budget) {
        if needed.iter().all(|r| found.contains(r)) {
            break;
        }
        let pattern = match factor_pattern_seeded(poly, p, seed) {
            Ok(Some(pat)) => pat,
            Ok(None) | Err(Error::PrimeDividesLeading(_)) => continue,
            Err(e) => return Err(e),
        };
        let fresh: Vec<CycleRole> = roles_of(&pattern.degrees, n)
            .into_iter()
            .filter(|r| needed.contains(r) && !found.contains(r))
            .collect();
        if fresh.is_empty() {
            continue;
        }
        found.extend(&fresh);
        witnesses.push(Witness { p, pattern: pattern.degrees, roles: fresh });
    }
    let conclusion = if needed.iter().all(|r| found.contains(r)) {
        Conclusion::FullSymmetric
    } else {
        Conclusion::Inconclusive
    };
    Ok(GaloisCertificate { degree: n, witnesses, conclusion, seed })
}

/// With full symmetric group the stabiliser of a root is maximal, so `Q(α)`
/// has no fields strictly between `Q` and itself.
pub fn no_proper_subfields(cert: &GaloisCertificate, n: usize) -> Result<bool> {
    if !cert.is_full_symmetric() {
        return Err(Error::Certificate("Galois certificate is inconclusive".into()));
    }
    if cert.degree != n {
        return Err(Error::Certificate(format!(
            "certificate is for degree {}, not {n}",
            cert.degree
        )));
    }
    Ok(true)
}

/// Re-derive every witness pattern from scratch and confirm the conclusion.
pub fn check_galois_certificate(poly: &IntPoly, cert: &GaloisCertificate) -> Result<()> {
    let n = poly.degree();
    if cert.degree != n {
        return Err(Error::Certificate("degree mismatch".into()));
    }
    let mut covered = Vec::new();
    for w in &cert.witnesses {
        if !is_prime(w.p) {
            return Err(Error::Certificate(format!("{} is not prime", w.p)));
        }
        let fp = FpPoly::from_int(poly, w.p);
        if fp.degree() != n {
            return Err(Error::Certificate(format!("{} divides the leading coefficient", w.p)));
        }
        let fac = factor_fp(&fp, cert.seed);
        if !fac.is_squarefree() {
            return Err(Error::Certificate(format!("reduction mod {} is not squarefree", w.p)));
        }
        if fac.degrees() != w.pattern {
            return Err(Error::Certificate(format!("pattern mod {} does not match", w.p)));
        }
        let roles = roles_of(&w.pattern, n);
        for r in &w.roles {
            if !roles.contains(r) {
                return Err(Error::Certificate(format!("pattern mod {} cannot play {r:?}", w.p)));
            }
            covered.push(*r);
        }
    }
    let complete = required_roles(n).iter().all(|r| covered.contains(r));
    match (cert.conclusion, complete) {
        (Conclusion::FullSymmetric, false) => {
            Err(Error::Certificate("witnesses do not force the symmetric group".into()))
        }
        _ => Ok(()),
    }
}
