//! Floating-point checks of the action of `O_F ⋊ U⁺` on `H^s × C`.
//!
//! Everything here is verification at explicit tolerances. The exact facts
//! (units, norms, embeddings) come from the other modules; this one only
//! evaluates the Kähler potential and its Hessian and confirms the identities
//! the action should satisfy at sampled points.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cnum::{ln_interval, pow2, Interval};
use crate::error::{Error, Result};
use crate::numfield::{FieldElement, NumberField};
use crate::poly::{IntPoly, Rational};
use crate::realroots::Signature;
use crate::units::{dilation_factor, unit_search_bounded, unit_search_lattice, UnitElement, UnitRecord};

/// A point of `H^s × C`: `h` holds the `s` half-plane coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeomPoint {
    pub h: Vec<Complex64>,
    pub c: Complex64,
}

impl GeomPoint {
    pub fn new(h: Vec<Complex64>, c: Complex64) -> Result<GeomPoint> {
        let p = GeomPoint { h, c };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        match self.h.iter().position(|z| !(z.im > 0.0)) {
            Some(j) => Err(Error::InvalidInput(format!("Im z_{} = {} is not positive", j + 1, self.h[j].im))),
            None => Ok(()),
        }
    }

    fn coords(&self) -> impl Iterator<Item = &Complex64> {
        self.h.iter().chain(std::iter::once(&self.c))
    }
}

pub type Matrix = Vec<Vec<Complex64>>;

fn phi1(z: &GeomPoint) -> f64 {
    z.h.iter().map(|w| 1.0 / (2.0 * w.im)).product()
}

/// `φ(z) = ∏ i/(z_j - z̄_j) + |z_{s+1}|²`.
pub fn potential(z: &GeomPoint) -> Result<f64> {
    z.validate()?;
    Ok(phi1(z) + z.c.norm_sqr())
}

/// The matrix `(∂_l ∂̄_k φ)` up to the constant factor, with the `C` block
/// normalised to 2.
pub fn hessian(z: &GeomPoint) -> Result<Matrix> {
    z.validate()?;
    let s = z.h.len();
    let p = Complex64::new(phi1(z), 0.0);
    let d: Vec<Complex64> = z.h.iter().map(|w| w - w.conj()).collect();
    let mut m = vec![vec![Complex64::zero(); s + 1]; s + 1];
    for k in 0..s {
        for l in 0..s {
            m[k][l] = if k == l { -2.0 * p / (d[k] * d[k]) } else { -p / (d[k] * d[l]) };
        }
    }
    m[s][s] = Complex64::new(2.0, 0.0);
    Ok(m)
}

/// Cholesky test; rejects matrices that are not Hermitian to working precision.
pub fn is_positive_definite(h: &Matrix) -> Result<bool> {
    let n = h.len();
    if h.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("matrix is not square".into()));
    }
    let scale = h.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);
    for i in 0..n {
        for j in 0..=i {
            if (h[i][j] - h[j][i].conj()).norm() > 1e-12 * scale.max(f64::MIN_POSITIVE) {
                return Err(Error::InvalidInput(format!("matrix is not Hermitian at ({i}, {j})")));
            }
        }
    }
    let mut l = vec![vec![Complex64::zero(); n]; n];
    for j in 0..n {
        let mut d = h[j][j].re;
        for k in 0..j {
            d -= l[j][k].norm_sqr();
        }
        if !(d > 0.0) {
            return Ok(false);
        }
        let piv = d.sqrt();
        l[j][j] = Complex64::new(piv, 0.0);
        for i in j + 1..n {
            let mut v = h[i][j];
            for k in 0..j {
                v -= l[i][k] * l[j][k].conj();
            }
            l[i][j] = v / piv;
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub enum ActionKind {
    Translation(FieldElement),
    Rotation(UnitElement),
}

/// A group element together with `σ_1(·), …, σ_{s+1}(·)` in double precision.
#[derive(Clone, Debug)]
pub struct ActionElement {
    pub kind: ActionKind,
    pub embedded: Vec<Complex64>,
}

fn first_places(x: &FieldElement) -> Result<Vec<Complex64>> {
    let s = x.field().signature().s;
    let mut v = x.embed_f64()?;
    v.truncate(s + 1);
    Ok(v)
}

impl ActionElement {
    pub fn translation(a: &FieldElement) -> Result<ActionElement> {
        Ok(ActionElement { embedded: first_places(a)?, kind: ActionKind::Translation(a.clone()) })
    }

    pub fn rotation(u: &UnitElement) -> Result<ActionElement> {
        if !u.totally_positive {
            return Err(Error::InvalidInput(format!("{} is not totally positive", u.element)));
        }
        Ok(ActionElement { embedded: first_places(&u.element)?, kind: ActionKind::Rotation(u.clone()) })
    }
}

/// `T_a(z) = z + σ(a)` or `R_u(z) = σ(u)·z`, coordinatewise.
pub fn act(e: &ActionElement, z: &GeomPoint) -> Result<GeomPoint> {
    let s = z.h.len();
    if e.embedded.len() != s + 1 {
        return Err(Error::InvalidInput("point and field have different signatures".into()));
    }
    let f = |w: &Complex64, k: usize| match e.kind {
        ActionKind::Translation(_) => w + e.embedded[k],
        ActionKind::Rotation(_) => w * e.embedded[k],
    };
    let h = z.h.iter().enumerate().map(|(k, w)| f(w, k)).collect();
    Ok(GeomPoint { h, c: f(&z.c, s) })
}

/// Seeded points with `Im z_j` log-uniform in `[1e-2, 1e2]` and real parts
/// and the `C` coordinate uniform in `[-10, 10]`.
pub fn sample_points(s: usize, count: usize, seed: u64) -> Vec<GeomPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let h = (0..s)
                .map(|_| {
                    let re = rng.gen_range(-10.0..=10.0);
                    let im = 10f64.powf(rng.gen_range(-2.0..=2.0));
                    Complex64::new(re, im)
                })
                .collect();
            let c = Complex64::new(rng.gen_range(-10.0..=10.0), rng.gen_range(-10.0..=10.0));
            GeomPoint { h, c }
        })
        .collect()
}

fn max_with_index(v: impl IntoIterator<Item = f64>) -> (f64, Option<usize>) {
    v.into_iter().enumerate().fold((0.0, None), |(m, i), (k, x)| {
        if x > m || x.is_nan() || i.is_none() {
            (x, Some(k))
        } else {
            (m, i)
        }
    })
}

/// Outcome of one tolerance check; `worst_sample` indexes the sample list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub worst_sample: Option<usize>,
}

impl CheckResult {
    fn new(name: &str, (value, worst_sample): (f64, Option<usize>), tolerance: f64) -> Self {
        CheckResult { name: name.into(), value, tolerance, passed: value <= tolerance, worst_sample }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomothetyReport {
    pub factor: f64,
    pub relative_error: CheckResult,
    pub log_spread: CheckResult,
    pub translation_hessian: CheckResult,
}

impl HomothetyReport {
    pub fn passed(&self) -> bool {
        self.relative_error.passed && self.log_spread.passed && self.translation_hessian.passed
    }
}

fn matrix_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `φ(R_u z) = c φ(z)` with `c = |σ_{s+1}(u)|²`, measured relative to `c φ(z)`,
/// at every sample; constancy of
/// `log φ(R_u z) - log φ(z)`, and invariance of the Hessian under `T_α`.
pub fn check_homothety(u: &UnitElement, samples: &[GeomPoint], tol: f64) -> Result<HomothetyReport> {
    let factor = dilation_factor(u, None)?.value;
    let rot = ActionElement::rotation(u)?;
    let tr = ActionElement::translation(&u.field().generator())?;
    let rows: Vec<(f64, f64, f64)> = samples
        .par_iter()
        .map(|z| {
            let p = potential(z)?;
            let q = potential(&act(&rot, z)?)?;
            let moved = hessian(&act(&tr, z)?)?;
            Ok(((q - factor * p).abs() / (factor * p), q.ln() - p.ln(), matrix_diff(&moved, &hessian(z)?)))
        })
        .collect::<Result<_>>()?;
    let logs: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let lo = logs.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = max_with_index(logs.iter().map(|l| l - lo));
    Ok(HomothetyReport {
        factor,
        relative_error: CheckResult::new("homothety", max_with_index(rows.iter().map(|r| r.0)), tol),
        log_spread: CheckResult::new("log-constancy", spread, tol),
        translation_hessian: CheckResult::new(
            "translation-hessian",
            max_with_index(rows.iter().map(|r| r.2)),
            tol.min(1e-12),
        ),
    })
}

fn residual(a: &GeomPoint, b: &GeomPoint) -> f64 {
    a.coords().zip(b.coords()).map(|(x, y)| (x - y).norm() / y.norm().max(1.0)).fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupLawResiduals {
    pub law: f64,
    pub commutator: f64,
}

/// The five group elements entering the law and commutator identities,
/// embedded once so that many points can be tested cheaply.
pub struct GroupLawActions {
    ta: ActionElement,
    tb: ActionElement,
    ru: ActionElement,
    rv: ActionElement,
    t_ab: ActionElement,
    r_uv: ActionElement,
    t_neg_a: ActionElement,
    r_u_inv: ActionElement,
    t_comm: ActionElement,
}

impl GroupLawActions {
    pub fn new(a: &FieldElement, b: &FieldElement, u: &UnitElement, v: &UnitElement) -> Result<Self> {
        let u_inv = UnitElement { element: u.element.inv()?, norm: u.norm, totally_positive: u.totally_positive };
        let one_minus = &(&u.field().one() - &u.element) * a;
        Ok(GroupLawActions {
            ta: ActionElement::translation(a)?,
            tb: ActionElement::translation(b)?,
            ru: ActionElement::rotation(u)?,
            rv: ActionElement::rotation(v)?,
            t_ab: ActionElement::translation(&(a + &(&u.element * b)))?,
            r_uv: ActionElement::rotation(&u.mul(v))?,
            t_neg_a: ActionElement::translation(&-a)?,
            r_u_inv: ActionElement::rotation(&u_inv)?,
            t_comm: ActionElement::translation(&one_minus)?,
        })
    }

    /// Residuals of `(T_a R_u)(T_b R_v) = T_{a+ub} R_{uv}` and
    /// `T_a R_u T_{-a} R_u^{-1} = T_{(1-u)a}` at `z`.
    pub fn residuals(&self, z: &GeomPoint) -> Result<GroupLawResiduals> {
        let lhs = act(&self.ta, &act(&self.ru, &act(&self.tb, &act(&self.rv, z)?)?)?)?;
        let rhs = act(&self.t_ab, &act(&self.r_uv, z)?)?;
        let comm = act(&self.ta, &act(&self.ru, &act(&self.t_neg_a, &act(&self.r_u_inv, z)?)?)?)?;
        let expect = act(&self.t_comm, z)?;
        Ok(GroupLawResiduals { law: residual(&lhs, &rhs), commutator: residual(&comm, &expect) })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupLawReport {
    pub law: CheckResult,
    pub commutator: CheckResult,
}

pub fn check_group_law(
    a: &FieldElement,
    b: &FieldElement,
    u: &UnitElement,
    v: &UnitElement,
    samples: &[GeomPoint],
    tol: f64,
) -> Result<GroupLawReport> {
    let actions = GroupLawActions::new(a, b, u, v)?;
    let res: Vec<GroupLawResiduals> = samples.par_iter().map(|z| actions.residuals(z)).collect::<Result<_>>()?;
    Ok(GroupLawReport {
        law: CheckResult::new("group-law", max_with_index(res.iter().map(|r| r.law)), tol),
        commutator: CheckResult::new("commutator", max_with_index(res.iter().map(|r| r.commutator)), tol),
    })
}

/// Rank of `σ(Z[α])` in `R^n`. The determinant of the real-flattened
/// embedding matrix satisfies `det² = |disc f| / 4^t` exactly; the numeric
/// determinant is compared against it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeRank {
    pub rank: usize,
    #[serde(with = "crate::serial::rational")]
    pub det_squared: Rational,
    pub det_numeric: f64,
}

fn det_f64(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())).unwrap();
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let k = m[r][c] / m[c][c];
            for j in c..n {
                m[r][j] -= k * m[c][j];
            }
        }
    }
    det
}

pub fn lattice_rank(field: &Arc<NumberField>) -> Result<LatticeRank> {
    let n = field.degree();
    let Signature { s, t } = field.signature();
    let disc = field.poly().discriminant().abs();
    if disc.is_zero() {
        return Err(Error::InvalidInput("defining polynomial is not squarefree".into()));
    }
    let det_squared = Rational::new(disc, BigInt::one() << (2 * t));
    let alpha = field.generator();
    let mut rows = Vec::with_capacity(n);
    let mut x = field.one();
    for _ in 0..n {
        let e = x.embed_f64()?;
        let mut row: Vec<f64> = e[..s].iter().map(|z| z.re).collect();
        row.extend(e[s..].iter().map(|z| z.re));
        row.extend(e[s..].iter().map(|z| z.im));
        rows.push(row);
        x = &x * &alpha;
    }
    let det_numeric = det_f64(rows);
    let exact = crate::poly::rat_to_f64(&det_squared);
    if !((det_numeric * det_numeric - exact).abs() <= 1e-6 * exact) {
        return Err(Error::Precision(53));
    }
    Ok(LatticeRank { rank: n, det_squared, det_numeric })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub point: Vec<Complex64>,
    pub residual: f64,
    pub real_half_plane_coords: bool,
}

/// `x = a/(1 - u)` solves `u x + a = x`; its first `s` coordinates are real,
/// so it lies on the boundary of `H^s`.
pub fn check_fixed_point(a: &FieldElement, u: &UnitElement) -> Result<FixedPointReport> {
    if u.is_one() {
        return Err(Error::InvalidInput("u = 1 has no isolated fixed point".into()));
    }
    let x = a.div(&(&u.field().one() - &u.element))?;
    let s = u.field().signature().s;
    let p = first_places(&x)?;
    let (pu, pa) = (first_places(&u.element)?, first_places(a)?);
    let residual = (0..=s)
        .map(|k| (pu[k] * p[k] + pa[k] - p[k]).norm() / p[k].norm().max(1.0))
        .fold(0.0, f64::max);
    let real_half_plane_coords = p[..s].iter().all(|z| z.im == 0.0);
    Ok(FixedPointReport { point: p, residual, real_half_plane_coords })
}

const LOG_PREC: u32 = 160;
const RELATION_SCALE_BITS: u64 = 100;
const MAX_RELATION_COEFF: i64 = 1_000_000;

/// Certified `ln |σ_{s+1}(u)|²`.
pub fn log_dilation(u: &UnitElement) -> Result<Interval> {
    let s = u.field().signature().s;
    if u.field().signature().t != 1 {
        let sig = u.field().signature();
        return Err(Error::Signature { s: sig.s, t: sig.t, reason: "need exactly one complex place".into() });
    }
    let eps = Rational::new(BigInt::one(), pow2(LOG_PREC));
    let z = u.element.embed(&eps)?.swap_remove(s);
    ln_interval(&z.abs_sq(LOG_PREC), LOG_PREC).ok_or(Error::Precision(LOG_PREC))
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Textbook LLL with exact Gram–Schmidt (δ = 3/4); dimensions here are tiny.
fn lll(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let k = b.len();
    let delta = Rational::new(3.into(), 4.into());
    let to_rat = |v: &Vec<BigInt>| v.iter().map(|x| Rational::from_integer(x.clone())).collect::<Vec<_>>();
    let gso = |b: &Vec<Vec<BigInt>>| {
        let mut bs: Vec<Vec<Rational>> = Vec::with_capacity(k);
        let mut mu = vec![vec![Rational::zero(); k]; k];
        for i in 0..k {
            let bi = to_rat(&b[i]);
            let mut v = bi.clone();
            for j in 0..i {
                let nj = dot(&bs[j], &bs[j]);
                mu[i][j] = if nj.is_zero() { Rational::zero() } else { dot(&bi, &bs[j]) / nj };
                for (x, y) in v.iter_mut().zip(&bs[j]) {
                    *x -= &mu[i][j] * y;
                }
            }
            bs.push(v);
        }
        (bs, mu)
    };
    let mut i = 1;
    while i < k {
        for j in (0..i).rev() {
            let (_, mu) = gso(&b);
            let r = mu[i][j].round().to_integer();
            if !r.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[i].iter_mut().zip(&bj) {
                    *x -= &r * y;
                }
            }
        }
        let (bs, mu) = gso(&b);
        let lhs = dot(&bs[i], &bs[i]);
        let rhs = (&delta - &mu[i][i - 1] * &mu[i][i - 1]) * dot(&bs[i - 1], &bs[i - 1]);
        if lhs >= rhs {
            i += 1;
        } else {
            b.swap(i, i - 1);
            i = (i - 1).max(1);
        }
    }
    b
}

/// A relation `Σ c_i ℓ_i = 0` with `|c_i| ≤ 10^6` involving the last entry.
fn find_relation(logs: &[Interval]) -> Option<Vec<i64>> {
    let k = logs.len();
    let scale = Rational::from_integer(BigInt::one() << RELATION_SCALE_BITS);
    let basis: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let mut row = vec![BigInt::zero(); k + 1];
            row[i] = BigInt::one();
            row[k] = (&logs[i].mid() * &scale).round().to_integer();
            row
        })
        .collect();
    lll(basis).into_iter().find_map(|row| {
        let c: Vec<i64> = row[..k].iter().map(|x| x.to_i64()).collect::<Option<_>>()?;
        if c[k - 1] == 0 || c.iter().any(|x| x.abs() > MAX_RELATION_COEFF) {
            return None;
        }
        let mut sum = Interval::point(Rational::zero());
        for (ci, l) in c.iter().zip(logs) {
            sum = sum.add(&l.scale(&Rational::from_integer((*ci).into())));
        }
        sum.contains_zero().then_some(c)
    })
}

/// Rank of the subgroup of `R` generated by the logs of the dilation factors.
pub fn dilation_rank_numeric(units: &[UnitElement]) -> Result<usize> {
    let mut basis: Vec<Interval> = Vec::new();
    for u in units {
        // the unit rank s + t - 1 = s caps the answer
        if basis.len() == u.field().signature().s {
            break;
        }
        if !u.totally_positive {
            return Err(Error::InvalidInput(format!("{} is not totally positive", u.element)));
        }
        let mut trial = basis.clone();
        trial.push(log_dilation(u)?);
        if find_relation(&trial).is_none() {
            basis = trial;
        }
    }
    Ok(basis.len())
}

/// Totally positive units other than 1: the box search of the given bound
/// followed by the weighted-lattice search, deduplicated, smallest first.
pub fn positive_units(field: &Arc<NumberField>, bound: i64, seed: u64) -> Result<Vec<UnitElement>> {
    let mut found = unit_search_bounded(field, bound)?;
    found.extend(unit_search_lattice(field, LATTICE_ROUNDS, LATTICE_SPREAD, seed)?);
    let mut out: Vec<UnitElement> = Vec::new();
    for u in found {
        let p = u.totally_positive_version()?;
        if !p.is_one() && !out.iter().any(|q| q.element == p.element) {
            out.push(p);
        }
    }
    let height = |u: &UnitElement| u.element.coords().iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero);
    out.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.element.coords().cmp(&b.element.coords())));
    Ok(out)
}

const LATTICE_ROUNDS: usize = 200;
const HOMOTHETY_UNITS: usize = 4;
const LATTICE_SPREAD: f64 = 6.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometryOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub units_bound: i64,
}

impl Default for GeometryOptions {
    fn default() -> Self {
        GeometryOptions { samples: 1000, seed: 7, tol: 1e-9, units_bound: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitHomothety {
    pub unit: UnitRecord,
    pub report: HomothetyReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub field_poly: IntPoly,
    pub signature: Signature,
    pub options: GeometryOptions,
    pub hessian_size: usize,
    pub hessian: CheckResult,
    pub homothety: Vec<UnitHomothety>,
    pub group_law: GroupLawReport,
    pub fixed_point: FixedPointReport,
    pub fixed_point_check: CheckResult,
    pub lattice: LatticeRank,
    pub dilation_rank: usize,
    pub passed: bool,
}

impl GeometryReport {
    pub fn checks(&self) -> Vec<&CheckResult> {
        let mut v = vec![&self.hessian];
        for h in &self.homothety {
            v.extend([&h.report.relative_error, &h.report.log_spread, &h.report.translation_hessian]);
        }
        v.extend([&self.group_law.law, &self.group_law.commutator, &self.fixed_point_check]);
        v
    }

    /// The failed check with the largest ratio of value to tolerance.
    pub fn worst(&self) -> Option<&CheckResult> {
        self.checks()
            .into_iter()
            .filter(|c| !c.passed)
            .max_by(|a, b| (a.value / a.tolerance).total_cmp(&(b.value / b.tolerance)))
    }
}

/// The whole suite for a field with one complex place.
pub fn verify_geometry(field: &Arc<NumberField>, opts: &GeometryOptions) -> Result<GeometryReport> {
    let sig = field.signature();
    if sig.s < 1 || sig.t != 1 {
        return Err(Error::Signature { s: sig.s, t: sig.t, reason: "need s >= 1 and t = 1".into() });
    }
    let samples = sample_points(sig.s, opts.samples, opts.seed);
    let algebraic_tol = opts.tol.min(1e-12);

    let failures: Vec<f64> = samples
        .par_iter()
        .map(|z| Ok(if is_positive_definite(&hessian(z)?)? { 0.0 } else { 1.0 }))
        .collect::<Result<_>>()?;
    let hessian_check = CheckResult::new("hessian-positive", max_with_index(failures), 0.0);

    let units = positive_units(field, opts.units_bound, opts.seed)?;
    let one = UnitElement::new(field.one())?;
    let mut homothety = Vec::new();
    for u in units.iter().take(HOMOTHETY_UNITS).chain(std::iter::once(&one)) {
        homothety.push(UnitHomothety { unit: u.into(), report: check_homothety(u, &samples, opts.tol)? });
    }

    let alpha = field.generator();
    let u = units.first().unwrap_or(&one);
    let v = units.get(1).unwrap_or(u);
    let group_law = check_group_law(&alpha, &field.one(), u, v, &samples, algebraic_tol)?;

    let fixed_point = match units.first() {
        Some(u) => check_fixed_point(&field.one(), u)?,
        None => FixedPointReport { point: vec![Complex64::zero(); sig.s + 1], residual: 0.0, real_half_plane_coords: true },
    };
    let fp_value = if fixed_point.real_half_plane_coords { fixed_point.residual } else { f64::INFINITY };
    let fixed_point_check = CheckResult::new("fixed-point", (fp_value, None), opts.tol.min(1e-10));

    let lattice = lattice_rank(field)?;
    let dilation_rank = dilation_rank_numeric(&units)?;

    let mut report = GeometryReport {
        field_poly: field.poly().clone(),
        signature: sig,
        options: opts.clone(),
        hessian_size: sig.s + 1,
        hessian: hessian_check,
        homothety,
        group_law,
        fixed_point,
        fixed_point_check,
        lattice,
        dilation_rank,
        passed: false,
    };
    report.passed = report.checks().iter().all(|c| c.passed) && report.lattice.rank == field.degree();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPoly;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn field(c: &[i64]) -> Arc<NumberField> {
        NumberField::new(IntPoly::from_i64s(c)).unwrap()
    }

    fn pt(h: &[Complex64], z: Complex64) -> GeomPoint {
        GeomPoint::new(h.to_vec(), z).unwrap()
    }

    #[test]
    fn potential_values() {
        assert_eq!(potential(&pt(&[c(0., 1.)], c(0., 0.))).unwrap(), 0.5);
        assert_eq!(potential(&pt(&[c(0., 1.)], c(1., 0.))).unwrap(), 1.5);
        assert_eq!(potential(&pt(&[c(0., 1.), c(0., 1.)], c(0., 0.))).unwrap(), 0.25);
        assert!(GeomPoint::new(vec![c(0., 0.)], c(0., 0.)).is_err());
    }

    #[test]
    fn hessian_values() {
        let h = hessian(&pt(&[c(0., 1.)], c(0., 0.))).unwrap();
        assert_eq!(h, vec![vec![c(0.25, 0.), c(0., 0.)], vec![c(0., 0.), c(2., 0.)]]);
        let h = hessian(&pt(&[c(3., 2.)], c(0., 0.))).unwrap();
        assert_eq!(h[0][0], c(1.0 / 32.0, 0.));
        assert!(is_positive_definite(&h).unwrap());
        let neg = vec![vec![c(-1., 0.), c(0., 0.)], vec![c(0., 0.), c(2., 0.)]];
        assert!(!is_positive_definite(&neg).unwrap());
        let skew = vec![vec![c(1., 0.), c(1., 0.)], vec![c(0., 0.), c(2., 0.)]];
        assert!(is_positive_definite(&skew).is_err());
    }

    #[test]
    fn sampled_hessians_are_positive() {
        for s in 1..=3 {
            for z in sample_points(s, 1000, 11) {
                let h = hessian(&z).unwrap();
                assert!(is_positive_definite(&h).unwrap());
                for i in 0..=s {
                    for j in 0..=s {
                        assert_eq!(h[i][j], h[j][i].conj());
                    }
                }
            }
        }
    }

    #[test]
    fn actions_on_fourth_root_of_two() {
        let f = field(&[-2, 0, 0, 0, 1]);
        let z = pt(&[c(0., 1.), c(0., 1.)], c(0., 1.));
        assert_eq!(act(&ActionElement::translation(&f.zero()).unwrap(), &z).unwrap(), z);
        let one = UnitElement::new(f.one()).unwrap();
        assert_eq!(act(&ActionElement::rotation(&one).unwrap(), &z).unwrap(), z);
        let moved = act(&ActionElement::translation(&f.generator()).unwrap(), &z).unwrap();
        let r = 2f64.powf(0.25);
        assert!((moved.h[0] - c(-r, 1.)).norm() < 1e-15);
        assert!((moved.h[1] - c(r, 1.)).norm() < 1e-15);
        assert!((moved.c - c(0., 1. + r)).norm() < 1e-15);
        let minus_one = UnitElement::new(-&f.one()).unwrap();
        assert!(ActionElement::rotation(&minus_one).is_err());
    }

    #[test]
    fn homothety_for_one_plus_alpha_squared() {
        let f = field(&[-2, 0, 0, 0, 1]);
        let u = UnitElement::new(f.element_i64(&[1, 0, 1, 0]).unwrap()).unwrap();
        let samples = sample_points(2, 1000, 7);
        let r = check_homothety(&u, &samples, 1e-9).unwrap();
        assert!((r.factor - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-15);
        assert!(r.passed(), "{r:?}");
        let strict = check_homothety(&u, &samples, 1e-30).unwrap();
        assert!(!strict.passed());
    }

    #[test]
    fn commutator_and_group_law() {
        let f = field(&[-2, 0, 0, 0, 1]);
        let u = UnitElement::new(f.element_i64(&[1, 0, 1, 0]).unwrap()).unwrap();
        let samples = sample_points(2, 100, 3);
        let r = check_group_law(&f.one(), &f.generator(), &u, &u.mul(&u), &samples, 1e-12).unwrap();
        assert!(r.law.passed && r.commutator.passed, "{r:?}");
        let one = UnitElement::new(f.one()).unwrap();
        let z = &samples[0];
        let r = GroupLawActions::new(&f.zero(), &f.zero(), &u, &u).unwrap().residuals(z).unwrap();
        assert!(r.law < 1e-14);
        let r = GroupLawActions::new(&f.generator(), &f.one(), &one, &one).unwrap().residuals(z).unwrap();
        assert!(r.law < 1e-14 && r.commutator < 1e-14);
    }

    #[test]
    fn lattice_ranks() {
        assert_eq!(lattice_rank(&field(&[-2, 0, 0, 0, 1])).unwrap().rank, 4);
        let q = lattice_rank(&field(&[-2, 0, 1])).unwrap();
        assert_eq!(q.rank, 2);
        assert_eq!(q.det_squared, Rational::from_integer(8.into()));
        assert_eq!(lattice_rank(&field(&[-1, 1])).unwrap().rank, 1);
    }

    #[test]
    fn fixed_points() {
        let f = field(&[-2, 0, 0, 0, 1]);
        let u = UnitElement::new(f.element_i64(&[1, 0, 1, 0]).unwrap()).unwrap();
        let origin = check_fixed_point(&f.zero(), &u).unwrap();
        assert!(origin.point.iter().all(|z| z.norm() == 0.0));
        let r = check_fixed_point(&f.one(), &u).unwrap();
        assert!(r.residual < 1e-10 && r.real_half_plane_coords);
        // 1/(1 - u) = -α^{-2}, so the real coordinates are -1/√2
        assert!((r.point[0].re + 0.5f64.sqrt()).abs() < 1e-15);
        assert!(check_fixed_point(&f.one(), &UnitElement::new(f.one()).unwrap()).is_err());
    }

    #[test]
    fn dilation_ranks() {
        let f = field(&[-2, 0, 0, 0, 1]);
        let u = UnitElement::new(f.element_i64(&[1, 0, 1, 0]).unwrap()).unwrap();
        let a = f.generator();
        let w = (&a - &f.one()).div(&(&a + &f.one())).unwrap();
        let w = UnitElement::new(w).unwrap();
        assert!(w.totally_positive);
        assert_eq!(dilation_rank_numeric(&[u.clone(), w, u.mul(&u)]).unwrap(), 1);
        assert_eq!(dilation_rank_numeric(&[UnitElement::new(f.one()).unwrap()]).unwrap(), 0);
        let g = field(&[-17, -5, 6, 0, 1]);
        let units = positive_units(&g, 2, 1).unwrap();
        assert_eq!(dilation_rank_numeric(&units).unwrap(), 2);
    }

    #[test]
    fn suite_passes_and_is_deterministic() {
        let f = field(&[-2, 0, 0, 0, 1]);
        let opts = GeometryOptions { samples: 200, ..Default::default() };
        let a = verify_geometry(&f, &opts).unwrap();
        assert!(a.passed, "{:?}", a.worst());
        assert_eq!(a, verify_geometry(&f, &opts).unwrap());
        let strict = GeometryOptions { tol: 1e-30, ..opts };
        assert!(!verify_geometry(&f, &strict).unwrap().passed);
    }
}
