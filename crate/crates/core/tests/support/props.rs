//! Property checks with their own oracles, shared by the proptest suites and
//! the acceptance runner. Each returns `Err` with a description on failure.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use otk::construct::{make_maximal, MaximalFamilySpec};
use otk::ff::{factor_mod_p, FpPoly};
use otk::poly::{rat, rat_to_f64};
use otk::realroots::{count_real_roots, isolate_real_roots, signature_unchecked};
use otk::{IntPoly, NumberField, RatPoly, Rational};

/// Fields used for the element identities.
pub const FIELDS: [&[i64]; 5] = [
    &[-2, 0, 0, 0, 1],
    &[-17, -5, 6, 0, 1],
    &[2, -4, 0, 0, 0, 1],
    &[1, 0, -3, 0, 0, 0, 1],
    &[-3, 0, 1],
];

fn ip(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

/// Product of `(d x - n)` over the given rationals and of `x^2 + b x + c`
/// over the quadratics, which must have negative discriminant. Returns the
/// polynomial and its real roots in ascending order.
pub fn build_with_roots(roots: &[(i64, i64)], quads: &[(i64, i64)]) -> Result<(IntPoly, Vec<Rational>), String> {
    let mut rs: Vec<Rational> = roots.iter().map(|&(n, d)| rat(n, d)).collect();
    rs.sort();
    rs.dedup();
    let mut p = IntPoly::one();
    for r in &rs {
        p = &p * &IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
    }
    for &(b, c) in quads {
        if b * b >= 4 * c {
            return Err(format!("x^2{b:+}x{c:+} has real roots"));
        }
        p = &p * &ip(&[c, b, 1]);
    }
    Ok((p, rs))
}

/// Exact Sturm count and isolation against roots known by construction, and
/// the f64 root finder against the same roots.
pub fn sturm_vs_known_roots(roots: &[(i64, i64)], quads: &[(i64, i64)]) -> Result<(), String> {
    let (p, rs) = build_with_roots(roots, quads)?;
    if p.degree() == 0 {
        return Ok(());
    }
    let repeated = quads.iter().enumerate().any(|(i, q)| quads[..i].contains(q));
    if repeated {
        return Ok(());
    }
    let count = count_real_roots(&p);
    if count != rs.len() {
        return Err(format!("{p}: Sturm count {count}, expected {}", rs.len()));
    }
    let ivs = isolate_real_roots(&p);
    if ivs.len() != rs.len() {
        return Err(format!("{p}: {} isolating intervals for {} roots", ivs.len(), rs.len()));
    }
    for (iv, r) in ivs.iter().zip(&rs) {
        if !(iv.lo <= *r && *r <= iv.hi) {
            return Err(format!("{p}: root {r} outside [{}, {}]", iv.lo, iv.hi));
        }
    }
    let sig = signature_unchecked(&p);
    if sig.s != rs.len() || sig.t != quads.len() {
        return Err(format!("{p}: signature ({}, {})", sig.s, sig.t));
    }
    let approx = otk::realroots::approximate_roots(&p);
    for r in &rs {
        let x = rat_to_f64(r);
        let near = approx.iter().any(|z| (z.re - x).abs() <= 1e-6 * (1.0 + x.abs()) && z.im.abs() <= 1e-6);
        if !near {
            return Err(format!("{p}: no numeric root near {x}"));
        }
    }
    Ok(())
}

fn ratpoly_pow(p: &RatPoly, e: usize) -> RatPoly {
    let mut acc = RatPoly::one();
    for _ in 0..e {
        acc = &acc * p;
    }
    acc
}

/// `Nm(xy) = Nm(x) Nm(y)`, `Nm(x) = Res(f, x)` for monic `f`, and
/// `char(x) = min(x)^(n / deg min(x))`.
pub fn norm_and_char(field: usize, x: &[i64], y: &[i64]) -> Result<(), String> {
    let f = ip(FIELDS[field % FIELDS.len()]);
    let k = NumberField::new(f.clone()).map_err(|e| e.to_string())?;
    let n = k.degree();
    let pad = |c: &[i64]| -> Vec<i64> { (0..n).map(|i| c.get(i).copied().unwrap_or(0)).collect() };
    let a = k.element_i64(&pad(x)).map_err(|e| e.to_string())?;
    let b = k.element_i64(&pad(y)).map_err(|e| e.to_string())?;
    let ab = &a * &b;
    if ab.norm() != a.norm() * b.norm() {
        return Err(format!("Nm not multiplicative on {a} * {b} in {f}"));
    }
    let res = f.to_rat().resultant(a.rep());
    if res != a.norm() {
        return Err(format!("Nm({a}) = {} but Res = {res}", a.norm()));
    }
    let ch = a.char_poly();
    let mp = a.min_poly();
    if n % mp.degree().max(1) != 0 || ch != ratpoly_pow(&mp, n / mp.degree().max(1)) {
        return Err(format!("char({a}) = {ch} is not a power of min = {mp}"));
    }
    if !a.eval_poly(&mp).is_zero() {
        return Err(format!("min({a}) does not vanish at {a}"));
    }
    Ok(())
}

fn monic_polys(p: u64, d: usize) -> Vec<FpPoly> {
    let count = (p as usize).pow(d as u32);
    (0..count)
        .map(|mut k| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((k % p as usize) as u64);
                k /= p as usize;
            }
            c.push(1);
            FpPoly::new(p, c)
        })
        .collect()
}

/// Irreducibility by trial division against every monic polynomial of
/// degree at most half.
pub fn irreducible_by_trial(f: &FpPoly) -> bool {
    let d = f.degree();
    if d == 0 {
        return false;
    }
    (1..=d / 2).all(|k| monic_polys(f.modulus(), k).iter().all(|g| !f.rem(g).is_zero()))
}

/// Degrees of the irreducible factors, found by trial division.
pub fn pattern_by_trial(f: &FpPoly) -> Vec<usize> {
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut k = 1;
    while rest.degree() > 0 {
        if 2 * k > rest.degree() {
            out.push(rest.degree());
            break;
        }
        let mut found = false;
        for g in monic_polys(f.modulus(), k) {
            let (q, r) = rest.divmod(&g);
            if r.is_zero() {
                out.push(k);
                rest = q;
                found = true;
                break;
            }
        }
        if !found {
            k += 1;
        }
    }
    out.sort_unstable();
    out
}

/// The factorization multiplies back to `f mod p` and its factors are monic
/// and irreducible.
pub fn factor_remultiply(coeffs: &[i64], p: u64, seed: u64) -> Result<(), String> {
    let f = ip(coeffs);
    if f.is_zero() || (f.leading() % BigInt::from(p)).is_zero() {
        return Ok(());
    }
    let fac = factor_mod_p(&f, p, seed).map_err(|e| e.to_string())?;
    let fp = FpPoly::from_int(&f, p);
    if fac.product() != fp {
        return Err(format!("{f} mod {p}: product of factors differs"));
    }
    for (g, m) in &fac.factors {
        if *m == 0 || g.leading() != 1 || !irreducible_by_trial(g) {
            return Err(format!("{f} mod {p}: factor {:?} is not monic irreducible", g.coeffs()));
        }
    }
    Ok(())
}

fn random_monic(rng: &mut ChaCha8Rng, deg: usize) -> IntPoly {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-9..=9)).collect();
    c.push(1);
    ip(&c)
}

fn find_monic(rng: &mut ChaCha8Rng, deg: usize, p: u64, ok: impl Fn(&[usize]) -> bool) -> IntPoly {
    loop {
        let f = random_monic(rng, deg);
        let fp = FpPoly::from_int(&f, p);
        if fp.is_squarefree() && ok(&pattern_by_trial(&fp)) {
            return f;
        }
    }
}

fn reduces_to(f: &IntPoly, g: &IntPoly, p: i64) -> bool {
    let m = BigInt::from(p);
    (0..=f.degree().max(g.degree())).all(|i| ((f.coeff(i) - g.coeff(i)) % &m).is_zero())
}

/// A random admissible spec; the patterns of `f1, f2, f3` are chosen by
/// trial division, independently of the library's factoring.
pub fn random_maximal_spec(seed: u64) -> MaximalFamilySpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=3);
    let d = 2 * n;
    let f1 = find_monic(&mut rng, d, 2, |pat| pat == [d]);
    let f2 = find_monic(&mut rng, d, 3, |pat| pat == [1, d - 1]);
    let f3 = find_monic(&mut rng, d, 5, |pat| {
        pat.len() == 3 && pat.iter().filter(|&&k| k == 2).count() == 1 && pat.iter().filter(|&&k| k % 2 == 1).count() == 2
    });
    let g = IntPoly::new((0..d).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect());
    MaximalFamilySpec { n, f1, f2, f3, g }
}

/// `f ≡ f1, f2, f3 (mod 2, 3, 5)`, `f` monic of degree `2n`, with the
/// expected patterns modulo each prime.
pub fn maximal_congruences(seed: u64) -> Result<(), String> {
    let spec = random_maximal_spec(seed);
    let m = make_maximal(&spec).map_err(|e| e.to_string())?;
    let f = &m.poly;
    if !f.is_monic() || f.degree() != 2 * spec.n {
        return Err(format!("{f} is not monic of degree {}", 2 * spec.n));
    }
    for (g, p) in [(&spec.f1, 2), (&spec.f2, 3), (&spec.f3, 5)] {
        if !reduces_to(f, g, p) {
            return Err(format!("{f} is not congruent to {g} mod {p}"));
        }
        let want = pattern_by_trial(&FpPoly::from_int(g, p as u64));
        if pattern_by_trial(&FpPoly::from_int(f, p as u64)) != want {
            return Err(format!("{f} mod {p} has the wrong pattern"));
        }
    }
    let expected = &(&(&spec.f2.scale(&BigInt::from(10)) - &spec.f1.scale(&BigInt::from(15)))
        + &spec.f3.scale(&BigInt::from(6)))
        + &spec.g.scale(&BigInt::from(30));
    if &expected != f {
        return Err(format!("{f} differs from the linear combination {expected}"));
    }
    Ok(())
}
