//! LCK rank of Oeljeklaus–Toma manifolds with one complex place.
//!
//! For a field of signature `(s, 1)` the first Betti number is `s`, and the
//! rank is either `s` (maximal) or `s/2`. The second case happens exactly when
//! `F` is a quadratic extension of a totally real field `E`; the classifier
//! either exhibits `E` with a [`SubfieldCertificate`] or proves that no such
//! subfield exists.
//!
//! Subfield detection works on root matchings. An index-2 subfield is the
//! fixed field of an involution `τ` of `F`, and `τ(α) = t(α)` for a polynomial
//! `t` with `disc(f) · t ∈ Z[X]`. Since `t` must map each root to its partner,
//! `t` is the interpolant of the matching; it is computed in certified disk
//! arithmetic and either proven non-integral or rounded and checked exactly.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::cnum::Disk;
use crate::error::{Error, Result};
use crate::galois::{certify_symmetric_group_seeded, check_galois_certificate, GaloisCertificate};
use crate::irreducible::require_irreducible;
use crate::numfield::{express_in_powers, solve_exact, FieldElement, NumberField};
use crate::poly::{IntPoly, RatPoly, Rational};
use crate::realroots::{is_totally_real, signature_unchecked, Signature};
use crate::units::{is_unimodular_at_complex_place, unit_search_bounded, UnitElement, UnitRecord};

/// Default number of primes scanned for Frobenius witnesses.
pub const DEFAULT_PRIME_BUDGET: u64 = 200;

/// Integers tried in the generator `ατ(α) + c(α + τ(α))` after sum and product.
const MIXED_RANGE: std::ops::RangeInclusive<i64> = 1..=5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSource {
    Sum,
    Product,
    Mixed { c: i64 },
    UnitTrace,
}

/// Evidence that `F = Q[X]/(f)` is a quadratic extension of the totally real
/// field `E = Q[Y]/(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldCertificate {
    pub field_poly: IntPoly,
    /// `g`, monic, irreducible, totally real, of degree `n/2`.
    pub subfield_poly: IntPoly,
    /// `w` with `γ = w(α)` a root of `g`.
    pub generator: RatPoly,
    /// `[c, b]` so that `X² + b(γ) X + c(γ)` is the minimal polynomial of `α` over `E`.
    pub quadratic_factor: [RatPoly; 2],
    pub source: GeneratorSource,
}

type EPoly = Vec<FieldElement>;

fn epoly_from(e: &Arc<NumberField>, c: &[RatPoly]) -> EPoly {
    c.iter().map(|p| e.from_poly(p)).collect()
}

/// Division by a monic polynomial over a number field.
fn epoly_divmod_monic(a: &EPoly, b: &EPoly) -> (EPoly, EPoly) {
    let db = b.len() - 1;
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![b[0].field().zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let lead = r[k + db].clone();
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &(&lead * bc);
        }
        q[k] = lead;
    }
    r.truncate(db);
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    (q, r)
}

fn epoly_to_string(p: &EPoly) -> String {
    let mut terms = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let coef = c.rep().display_var("y");
        let var = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        terms.push(match (k, coef.as_str()) {
            (0, _) => format!("({coef})"),
            (_, "1") => var,
            _ => format!("({coef})*{var}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl SubfieldCertificate {
    fn quadratic(&self, e: &Arc<NumberField>) -> EPoly {
        let mut q = epoly_from(e, &self.quadratic_factor);
        q.push(e.one());
        q
    }

    /// `τ(α) = -b(γ) - α`, the other root of the quadratic factor.
    pub fn involution_image(&self, field: &Arc<NumberField>) -> Result<FieldElement> {
        if field.poly() != &self.field_poly {
            return Err(Error::Certificate("certificate belongs to a different field".into()));
        }
        let gamma = field.from_poly(&self.generator);
        let b = gamma.eval_poly(&self.quadratic_factor[1]);
        Ok(-(&b + &field.generator()))
    }

    /// Exact re-verification; returns the quadratic factor and its cofactor
    /// over `E`, both rendered with `y` for `γ`.
    pub fn verify(&self) -> Result<(String, String)> {
        let f = &self.field_poly;
        let g = &self.subfield_poly;
        let n = f.degree();
        if !n.is_multiple_of(2) || g.degree() * 2 != n {
            return Err(Error::Certificate(format!("deg g = {} is not half of {n}", g.degree())));
        }
        if !g.is_monic() {
            return Err(Error::Certificate("g is not monic".into()));
        }
        require_irreducible(g).map_err(|e| Error::Certificate(format!("g: {e}")))?;
        if !is_totally_real(g)? {
            return Err(Error::Certificate("g is not totally real".into()));
        }
        let field = NumberField::new(f.clone())?;
        let gamma = field.from_poly(&self.generator);
        if !gamma.eval_poly(&g.to_rat()).is_zero() {
            return Err(Error::Certificate("g(w(α)) is not zero".into()));
        }
        let alpha = field.generator();
        let b = gamma.eval_poly(&self.quadratic_factor[1]);
        let c = gamma.eval_poly(&self.quadratic_factor[0]);
        if !(&(&(&alpha * &alpha) + &(&b * &alpha)) + &c).is_zero() {
            return Err(Error::Certificate("α is not a root of the quadratic factor".into()));
        }
        let e = NumberField::new(g.clone())?;
        let q = self.quadratic(&e);
        let fe: EPoly = f.coeffs().iter().map(|k| e.from_rational(Rational::from_integer(k.clone()))).collect();
        let (quot, rem) = epoly_divmod_monic(&fe, &q);
        if !rem.is_empty() {
            return Err(Error::Certificate("quadratic factor does not divide f over E".into()));
        }
        Ok((epoly_to_string(&q), epoly_to_string(&quot)))
    }
}

/// Build a certificate from a candidate generator `γ = w(α)` of `E`; `None`
/// when `γ` has degree below `n/2`.
pub fn certificate_from_generator(
    field: &Arc<NumberField>,
    w: &RatPoly,
    source: GeneratorSource,
) -> Result<Option<SubfieldCertificate>> {
    let n = field.degree();
    let m = n / 2;
    let gamma = field.from_poly(w);
    let g = gamma
        .integral_min_poly()
        .ok_or_else(|| Error::Certificate("subfield generator is not integral".into()))?;
    if g.degree() != m {
        return Ok(None);
    }
    // α² = C(γ) + B(γ) α in the basis γ^j, γ^j α
    let alpha = field.generator();
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut pw = field.one();
    let mut pws = Vec::with_capacity(m);
    for _ in 0..m {
        pws.push(pw.clone());
        pw = &pw * &gamma;
    }
    for p in &pws {
        cols.push(p.coords());
    }
    for p in &pws {
        cols.push((p * &alpha).coords());
    }
    let target = (&alpha * &alpha).coords();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let Some(sol) = solve_exact(&mut a, n) else { return Ok(None) };
    let cpoly = -&RatPoly::new(sol[..m].to_vec());
    let bpoly = -&RatPoly::new(sol[m..].to_vec());
    let cert = SubfieldCertificate {
        field_poly: field.poly().clone(),
        subfield_poly: g,
        generator: w.clone(),
        quadratic_factor: [cpoly, bpoly],
        source,
    };
    cert.verify()?;
    Ok(Some(cert))
}

/// Two certificates for the same `F` describe the same subfield.
pub fn same_subfield(a: &SubfieldCertificate, b: &SubfieldCertificate) -> Result<bool> {
    if a.field_poly != b.field_poly || a.subfield_poly.degree() != b.subfield_poly.degree() {
        return Ok(false);
    }
    let field = NumberField::new(a.field_poly.clone())?;
    let ga = field.from_poly(&a.generator);
    let gb = field.from_poly(&b.generator);
    let m = a.subfield_poly.degree();
    Ok(express_in_powers(&ga, &gb, m).is_some() && express_in_powers(&gb, &ga, m).is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ExclusionReason {
    /// Coefficient `k` of `disc(f) · t` is certified not to be an integer.
    NonIntegral { coefficient: usize, bits: u32 },
    /// The certified rounding of `t` is not an involution of `F`.
    NotAnInvolution { detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingRecord {
    pub pairs: Vec<[usize; 2]>,
    pub excluded: ExclusionReason,
}

/// Every admissible root matching was ruled out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustionProof {
    #[serde(with = "crate::serial::big")]
    pub discriminant: BigInt,
    pub matchings: Vec<MatchingRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubfieldSearch {
    Found(SubfieldCertificate),
    Exhausted(ExhaustionProof),
    Undecided { pairs: Vec<[usize; 2]>, reason: String },
}

/// Perfect matchings of `items` in lexicographic order.
pub fn perfect_matchings(items: &[usize]) -> Vec<Vec<[usize; 2]>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let first = items[0];
    let mut out = Vec::new();
    for j in 1..items.len() {
        let rest: Vec<usize> =
            items[1..].iter().enumerate().filter(|(k, _)| k + 1 != j).map(|(_, &v)| v).collect();
        for mut m in perfect_matchings(&rest) {
            m.insert(0, [first, items[j]]);
            out.push(m);
        }
    }
    out
}

/// Lagrange basis `D · (f(X)/(X - r_i)) / f'(r_i)` at one precision.
struct InterpolationBasis {
    roots: Vec<Disk>,
    basis: Vec<Vec<Disk>>,
}

fn interpolation_basis(field: &NumberField, d: &Rational, bits: u32) -> Result<Option<InterpolationBasis>> {
    let eps = Rational::new(BigInt::one(), crate::cnum::pow2(bits));
    let roots = field.embeddings(&eps)?.all_disks();
    let f = field.poly();
    let n = f.degree();
    let df = f.derivative();
    let wb = bits + 32;
    let mut basis = Vec::with_capacity(n);
    for r in &roots {
        let mut q = vec![Disk::zero(); n];
        q[n - 1] = Disk::real(Rational::one());
        for k in (1..n).rev() {
            q[k - 1] = q[k].mul(r, wb).add_rat(&Rational::from_integer(f.coeff(k)));
        }
        let Some(inv) = Disk::eval_int(&df, r, wb).recip(wb) else { return Ok(None) };
        let scale = inv.scale(d);
        basis.push(q.iter().map(|c| c.mul(&scale, wb)).collect());
    }
    Ok(Some(InterpolationBasis { roots, basis }))
}

enum MatchingOutcome {
    Excluded(ExclusionReason),
    Involution(FieldElement),
    Unresolved,
}

fn test_matching(
    field: &Arc<NumberField>,
    perm: &[usize],
    d: &BigInt,
    bases: &mut Vec<Option<InterpolationBasis>>,
) -> Result<MatchingOutcome> {
    let n = field.degree();
    let dr = Rational::from_integer(d.clone());
    for level in 0.. {
        let bits = 64u32 << level;
        if bits > crate::MAX_BITS {
            break;
        }
        if bases.len() <= level {
            bases.push(interpolation_basis(field, &dr, bits)?);
        }
        let Some(basis) = &bases[level] else { continue };
        let wb = bits + 32;
        let mut rounded = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = Disk::zero();
            for i in 0..n {
                acc = acc.add(&basis.roots[perm[i]].mul(&basis.basis[i][k], wb));
            }
            if acc.excludes_integers() {
                return Ok(MatchingOutcome::Excluded(ExclusionReason::NonIntegral {
                    coefficient: k,
                    bits,
                }));
            }
            if let Some(v) = acc.near_integer() {
                rounded.push(Rational::new(v, d.clone()));
            }
        }
        if rounded.len() < n {
            continue;
        }
        let t = RatPoly::new(rounded);
        let image = field.from_poly(&t);
        let alpha = field.generator();
        let detail = if !image.eval_poly(&field.poly().to_rat()).is_zero() {
            Some("t(α) is not a root of f")
        } else if image.eval_poly(&t) != alpha {
            Some("t(t(α)) differs from α")
        } else if image == alpha {
            Some("t is the identity")
        } else {
            None
        };
        return Ok(match detail {
            Some(s) => MatchingOutcome::Excluded(ExclusionReason::NotAnInvolution { detail: s.into() }),
            None => MatchingOutcome::Involution(image),
        });
    }
    Ok(MatchingOutcome::Unresolved)
}

fn require_gate(field: &NumberField) -> Result<Signature> {
    let sig = field.signature();
    if sig.t != 1 || sig.s == 0 {
        let reason = if sig.s == 0 { "no real place" } else { "need exactly one complex place" };
        return Err(Error::Signature { s: sig.s, t: sig.t, reason: reason.into() });
    }
    Ok(sig)
}

/// First Betti number of the OT manifold: `b₁ = s`.
pub fn betti1(field: &NumberField) -> Result<usize> {
    Ok(require_gate(field)?.s)
}

/// Certificate for a totally real index-2 subfield, or a proof that none exists.
pub fn find_index2_totally_real_subfield(field: &Arc<NumberField>) -> Result<SubfieldSearch> {
    let n = field.degree();
    if n % 2 == 1 {
        return Err(Error::InvalidInput("odd degree fields have no index-2 subfield".into()));
    }
    let sig = require_gate(field)?;
    let s = sig.s;
    let d = field.poly().discriminant().abs();
    let reals: Vec<usize> = (0..s).collect();
    let mut bases = Vec::new();
    let mut records = Vec::new();
    let mut degenerate: Option<Vec<[usize; 2]>> = None;
    for mut pairs in perfect_matchings(&reals) {
        pairs.push([s, s + 1]);
        let mut perm = vec![0; n];
        for &[a, b] in &pairs {
            perm[a] = b;
            perm[b] = a;
        }
        match test_matching(field, &perm, &d, &mut bases)? {
            MatchingOutcome::Excluded(excluded) => records.push(MatchingRecord { pairs, excluded }),
            MatchingOutcome::Unresolved => {
                return Ok(SubfieldSearch::Undecided {
                    pairs,
                    reason: format!("precision cap of {} bits reached", crate::MAX_BITS),
                })
            }
            MatchingOutcome::Involution(tau) => {
                let alpha = field.generator();
                let sum = &alpha + &tau;
                let prod = &alpha * &tau;
                let mut chain = vec![(sum.rep().clone(), GeneratorSource::Sum), (prod.rep().clone(), GeneratorSource::Product)];
                for c in MIXED_RANGE {
                    let mixed = &prod + &sum.scale(&Rational::from_integer(c.into()));
                    chain.push((mixed.rep().clone(), GeneratorSource::Mixed { c }));
                }
                for (w, source) in chain {
                    if let Some(cert) = certificate_from_generator(field, &w, source)? {
                        return Ok(SubfieldSearch::Found(cert));
                    }
                }
                degenerate.get_or_insert(pairs);
            }
        }
    }
    if let Some(pairs) = degenerate {
        return Ok(SubfieldSearch::Undecided {
            pairs,
            reason: "every generator in the fallback chain is degenerate".into(),
        });
    }
    Ok(SubfieldSearch::Exhausted(ExhaustionProof { discriminant: d, matchings: records }))
}

/// `E = Q(u + 1/u)` for a unit of modulus one at the complex place.
pub fn subfield_from_unimodular_unit(u: &UnitElement) -> Result<SubfieldCertificate> {
    let verdict = is_unimodular_at_complex_place(u)?;
    if !verdict.unimodular {
        return Err(Error::InvalidInput("unit is not unimodular at the complex place".into()));
    }
    let gamma = &u.element + &u.element.inv()?;
    certificate_from_generator(u.field(), gamma.rep(), GeneratorSource::UnitTrace)?.ok_or_else(|| {
        Error::Certificate("u + 1/u generates a subfield of degree below n/2".into())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    Maximal,
    Half,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum RankCertificate {
    OddDegree,
    NoProperSubfield(GaloisCertificate),
    MatchingExhausted(ExhaustionProof),
    Subfield(SubfieldCertificate),
    UnimodularUnit { unit: UnitRecord, subfield: SubfieldCertificate },
    Undecided { pairs: Vec<[usize; 2]>, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossCheckStatus {
    Agrees,
    Disagrees,
    Inconclusive,
}

/// Advisory comparison with a bounded unit search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitCrossCheck {
    pub bound: i64,
    pub units_found: usize,
    pub unimodular_unit: Option<UnitRecord>,
    pub status: CrossCheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub field: IntPoly,
    pub signature: Signature,
    pub degree: usize,
    pub betti1: usize,
    pub dim_c: usize,
    pub lck_rank: Option<usize>,
    pub case: Case,
    pub certificate: RankCertificate,
    pub galois: Option<GaloisCertificate>,
    pub unit_check: Option<UnitCrossCheck>,
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub prime_budget: u64,
    pub seed: u64,
    /// Run the unit cross-check with this coefficient bound.
    pub unit_bound: Option<i64>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { prime_budget: DEFAULT_PRIME_BUDGET, seed: 0, unit_bound: None }
    }
}

pub fn classify(field: &Arc<NumberField>) -> Result<RankReport> {
    classify_with(field, &ClassifyOptions::default())
}

fn first_unimodular_unit(field: &Arc<NumberField>, bound: i64) -> Result<(usize, Option<UnitElement>)> {
    let units = unit_search_bounded(field, bound)?;
    let count = units.len();
    for u in units {
        if u.is_plus_minus_one() || !u.element.integral_min_poly().is_some_and(|p| p.is_reciprocal()) {
            continue;
        }
        let tp = u.totally_positive_version()?;
        if tp.is_plus_minus_one() {
            continue;
        }
        if is_unimodular_at_complex_place(&tp)?.unimodular {
            return Ok((count, Some(tp)));
        }
    }
    Ok((count, None))
}

pub fn classify_with(field: &Arc<NumberField>, opts: &ClassifyOptions) -> Result<RankReport> {
    let sig = require_gate(field)?;
    let n = field.degree();
    let s = sig.s;
    let mut galois = None;
    let (case, certificate) = if n % 2 == 1 {
        (Case::Maximal, RankCertificate::OddDegree)
    } else {
        let cert = certify_symmetric_group_seeded(field.poly(), opts.prime_budget, opts.seed)?;
        galois = Some(cert.clone());
        if cert.is_full_symmetric() {
            (Case::Maximal, RankCertificate::NoProperSubfield(cert))
        } else {
            match find_index2_totally_real_subfield(field)? {
                SubfieldSearch::Found(c) => (Case::Half, RankCertificate::Subfield(c)),
                SubfieldSearch::Exhausted(p) => (Case::Maximal, RankCertificate::MatchingExhausted(p)),
                SubfieldSearch::Undecided { pairs, reason } => {
                    (Case::Undecided, RankCertificate::Undecided { pairs, reason })
                }
            }
        }
    };
    let mut report = RankReport {
        field: field.poly().clone(),
        signature: sig,
        degree: n,
        betti1: s,
        dim_c: n - 1,
        lck_rank: rank_for(case, s),
        case,
        certificate,
        galois,
        unit_check: None,
    };
    if let Some(bound) = opts.unit_bound {
        let (units_found, unit) = first_unimodular_unit(field, bound)?;
        let status = match (&unit, report.case) {
            (Some(_), Case::Half) | (None, Case::Maximal) => CrossCheckStatus::Agrees,
            (Some(_), Case::Maximal) => CrossCheckStatus::Disagrees,
            _ => CrossCheckStatus::Inconclusive,
        };
        if let (Some(u), Case::Undecided) = (&unit, report.case) {
            let subfield = subfield_from_unimodular_unit(u)?;
            report.case = Case::Half;
            report.lck_rank = rank_for(Case::Half, s);
            report.certificate = RankCertificate::UnimodularUnit { unit: u.into(), subfield };
        }
        report.unit_check = Some(UnitCrossCheck {
            bound,
            units_found,
            unimodular_unit: unit.as_ref().map(UnitRecord::from),
            status,
        });
    }
    Ok(report)
}

fn rank_for(case: Case, s: usize) -> Option<usize> {
    match case {
        Case::Maximal => Some(s),
        Case::Half => Some(s / 2),
        Case::Undecided => None,
    }
}

/// Re-run the exact verification steps behind a report.
pub fn recheck(report: &RankReport) -> Result<()> {
    let field = NumberField::new(report.field.clone())?;
    let sig = signature_unchecked(field.poly());
    if sig != report.signature || report.degree != field.degree() {
        return Err(Error::Certificate("signature or degree mismatch".into()));
    }
    if report.betti1 != betti1(&field)? || report.dim_c + 1 != report.degree {
        return Err(Error::Certificate("Betti number or dimension mismatch".into()));
    }
    if report.lck_rank != rank_for(report.case, sig.s) {
        return Err(Error::Certificate("rank does not match the case".into()));
    }
    if let Some(g) = &report.galois {
        check_galois_certificate(field.poly(), g)?;
    }
    let expect_case = |c: Case| {
        if report.case == c {
            Ok(())
        } else {
            Err(Error::Certificate(format!("certificate implies {c:?}, report says {:?}", report.case)))
        }
    };
    match &report.certificate {
        RankCertificate::OddDegree => {
            expect_case(Case::Maximal)?;
            if report.degree.is_multiple_of(2) {
                return Err(Error::Certificate("degree is even".into()));
            }
        }
        RankCertificate::NoProperSubfield(g) => {
            expect_case(Case::Maximal)?;
            check_galois_certificate(field.poly(), g)?;
            crate::galois::no_proper_subfields(g, report.degree)?;
        }
        RankCertificate::MatchingExhausted(p) => {
            expect_case(Case::Maximal)?;
            match find_index2_totally_real_subfield(&field)? {
                SubfieldSearch::Exhausted(q) if &q == p => {}
                _ => return Err(Error::Certificate("matching search does not reproduce".into())),
            }
        }
        RankCertificate::Subfield(c) => {
            expect_case(Case::Half)?;
            if c.field_poly != report.field {
                return Err(Error::Certificate("subfield certificate is for another field".into()));
            }
            c.verify()?;
        }
        RankCertificate::UnimodularUnit { unit, subfield } => {
            expect_case(Case::Half)?;
            let u = UnitElement::new(field.element(unit.coords.clone())?)?;
            if !u.element.integral_min_poly().is_some_and(|p| p.is_reciprocal()) {
                return Err(Error::Certificate("unit minimal polynomial is not reciprocal".into()));
            }
            if subfield.field_poly != report.field {
                return Err(Error::Certificate("subfield certificate is for another field".into()));
            }
            subfield.verify()?;
        }
        RankCertificate::Undecided { .. } => expect_case(Case::Undecided)?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> Arc<NumberField> {
        NumberField::new(IntPoly::from_i64s(c)).unwrap()
    }

    #[test]
    fn matchings_enumerate_in_order() {
        assert_eq!(perfect_matchings(&[0, 1]), vec![vec![[0, 1]]]);
        let m = perfect_matchings(&[0, 1, 2, 3]);
        assert_eq!(m, vec![vec![[0, 1], [2, 3]], vec![[0, 2], [1, 3]], vec![[0, 3], [1, 2]]]);
        assert_eq!(perfect_matchings(&[0, 1, 2, 3, 4, 5]).len(), 15);
    }

    #[test]
    fn x4_minus_2_has_sqrt2_subfield() {
        let k = field(&[-2, 0, 0, 0, 1]);
        let SubfieldSearch::Found(cert) = find_index2_totally_real_subfield(&k).unwrap() else {
            panic!("expected a certificate")
        };
        assert_eq!(cert.subfield_poly, IntPoly::from_i64s(&[-2, 0, 1]));
        assert_eq!(cert.source, GeneratorSource::Product);
        let (q, cofactor) = cert.verify().unwrap();
        assert_eq!(q, "x^2 + (y)");
        assert_eq!(cofactor, "x^2 + (-y)");
        // τ(α) = -α
        assert_eq!(cert.involution_image(&k).unwrap(), -k.generator());
    }

    #[test]
    fn table_polynomial_has_no_subfield() {
        let k = field(&[-17, -5, 6, 0, 1]);
        let SubfieldSearch::Exhausted(p) = find_index2_totally_real_subfield(&k).unwrap() else {
            panic!("expected exhaustion")
        };
        assert_eq!(p.matchings.len(), 1);
    }

    #[test]
    fn odd_degree_search_is_an_error() {
        assert!(find_index2_totally_real_subfield(&field(&[2, -4, 0, 0, 0, 1])).is_err());
    }

    #[test]
    fn relative_norms() {
        let k = field(&[-2, 0, 0, 0, 1]);
        let SubfieldSearch::Found(cert) = find_index2_totally_real_subfield(&k).unwrap() else {
            panic!()
        };
        // γ = -α², so 1 + α² = 1 - γ and Nm(1 + α²) = (1 - γ)² = 3 - 2γ
        let u = k.element_i64(&[1, 0, 1, 0]).unwrap();
        let nm = u.relative_norm(&cert).unwrap();
        assert_eq!(nm.coords(), vec![Rational::from_integer(3.into()), Rational::from_integer((-2).into())]);
        let one = k.one();
        let w = (&k.generator() - &one).div(&(&k.generator() + &one)).unwrap();
        assert!(w.relative_norm(&cert).unwrap().is_one());
        assert!(one.relative_norm(&cert).unwrap().is_one());
    }

    #[test]
    fn subfield_from_unit() {
        let k = field(&[-2, 0, 0, 0, 1]);
        let one = k.one();
        let w = UnitElement::new((&k.generator() - &one).div(&(&k.generator() + &one)).unwrap()).unwrap();
        let cert = subfield_from_unimodular_unit(&w).unwrap();
        assert_eq!(cert.subfield_poly, IntPoly::from_i64s(&[4, -12, 1]));
        let SubfieldSearch::Found(other) = find_index2_totally_real_subfield(&k).unwrap() else {
            panic!()
        };
        assert!(same_subfield(&cert, &other).unwrap());
        assert!(subfield_from_unimodular_unit(&UnitElement::new(one).unwrap()).is_err());
    }

    #[test]
    fn classification_examples() {
        let r = classify(&field(&[-2, 0, 0, 0, 1])).unwrap();
        assert_eq!((r.betti1, r.lck_rank, r.case), (2, Some(1), Case::Half));
        recheck(&r).unwrap();
        let r = classify(&field(&[-17, -5, 6, 0, 1])).unwrap();
        assert_eq!((r.betti1, r.lck_rank, r.case), (2, Some(2), Case::Maximal));
        assert!(matches!(r.certificate, RankCertificate::NoProperSubfield(_)));
        recheck(&r).unwrap();
        let r = classify(&field(&[2, -4, 0, 0, 0, 1])).unwrap();
        assert_eq!((r.signature.s, r.signature.t), (3, 1));
        assert_eq!((r.lck_rank, r.certificate.clone()), (Some(3), RankCertificate::OddDegree));
        recheck(&r).unwrap();
    }

    #[test]
    fn gate_rejects_wrong_signatures() {
        assert!(matches!(classify(&field(&[1, 0, 1])), Err(Error::Signature { s: 0, t: 1, .. })));
        assert!(betti1(&field(&[-2, 0, 1])).is_err());
    }

    #[test]
    fn tampered_reports_fail_recheck() {
        let mut r = classify(&field(&[-2, 0, 0, 0, 1])).unwrap();
        r.lck_rank = Some(2);
        assert!(recheck(&r).is_err());
        let mut r = classify(&field(&[-2, 0, 0, 0, 1])).unwrap();
        if let RankCertificate::Subfield(c) = &mut r.certificate {
            c.quadratic_factor[0] = RatPoly::from_ints(&[1]);
        }
        assert!(recheck(&r).is_err());
    }

    #[test]
    fn unit_cross_check_agrees() {
        let opts = ClassifyOptions { unit_bound: Some(3), ..Default::default() };
        let r = classify_with(&field(&[-2, 0, 0, 0, 1]), &opts).unwrap();
        assert_eq!(r.unit_check.unwrap().status, CrossCheckStatus::Agrees);
    }
}
