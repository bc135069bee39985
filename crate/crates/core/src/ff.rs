//! Polynomials over prime fields and their complete factorization
//! (squarefree decomposition, distinct-degree and equal-degree splitting).

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Largest prime modulus supported; products of two residues must fit in `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_up_to(bound: u64) -> impl Iterator<Item = u64> {
    (2..=bound).filter(|&n| is_prime(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|x| {
                let r = ((x % &pb) + &pb) % &pb;
                r.to_u64().expect("residue fits")
            })
            .collect();
        FpPoly::new(p, c)
    }

    /// Lift to integers with coefficients in `[0, p)`.
    pub fn to_int(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Lift with symmetric residues in `(-p/2, p/2]`.
    pub fn to_int_symmetric(&self) -> IntPoly {
        let p = self.p as i64;
        IntPoly::new(
            self.c
                .iter()
                .map(|&x| {
                    let x = x as i64;
                    BigInt::from(if x > p / 2 { x - p } else { x })
                })
                .collect(),
        )
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        self.scale(inv)
    }

    fn scale(&self, k: u64) -> Self {
        FpPoly::new(self.p, self.c.iter().map(|&x| x * k % self.p).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| {
                (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % self.p
            })
            .collect();
        FpPoly::new(self.p, v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| {
                (self.c.get(i).copied().unwrap_or(0) + self.p - o.c.get(i).copied().unwrap_or(0))
                    % self.p
            })
            .collect();
        FpPoly::new(self.p, v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::new(self.p, vec![]);
        }
        let mut v = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + a * b) % self.p;
            }
        }
        FpPoly::new(self.p, v)
    }

    pub fn divmod(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "division by zero polynomial mod p");
        let p = self.p;
        if self.c.len() < b.c.len() {
            return (FpPoly::new(p, vec![]), self.clone());
        }
        let inv = inv_mod(b.leading(), p);
        let db = b.degree();
        let mut r = self.c.clone();
        let mut q = vec![0u64; self.degree() - db + 1];
        while r.len() >= b.c.len() && !r.is_empty() {
            let k = r.len() - 1 - db;
            let t = r.last().unwrap() * inv % p;
            for (i, &bc) in b.c.iter().enumerate() {
                r[k + i] = (r[k + i] + p - t * bc % p) % p;
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
            q[k] = t;
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.divmod(b).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        FpPoly::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &x)| (i as u64 % p) * x % p)
                .collect(),
        )
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = FpPoly::one(self.p).rem(m);
        let mut base = self.rem(m);
        for i in 0..e.bits() {
            if e.bit(i) {
                result = result.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
        }
        result
    }

    fn pth_root(&self) -> Self {
        // valid when only exponents divisible by p occur
        let p = self.p as usize;
        let v = self.c.iter().step_by(p).copied().collect();
        FpPoly::new(self.p, v)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }
}

/// Factorization over F_p: `unit * prod factor^mult`, factors monic and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpFactorization {
    pub p: u64,
    pub unit: u64,
    pub factors: Vec<(FpPoly, usize)>,
}

impl FpFactorization {
    pub fn product(&self) -> FpPoly {
        let mut acc = FpPoly::new(self.p, vec![self.unit]);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }

    /// Multiset of irreducible factor degrees, with multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.degree(), *m))
            .collect();
        d.sort_unstable();
        d
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (h, m) in squarefree_decomposition(&f.pth_root()) {
            out.push((h, m * p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.divmod(&c).0;
    let mut i = 1;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let z = w.divmod(&y).0;
        if z.degree() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divmod(&w).0;
    }
    if c.degree() > 0 {
        for (h, m) in squarefree_decomposition(&c.monic().pth_root()) {
            out.push((h, m * p as usize));
        }
    }
    out
}

/// Split a squarefree monic polynomial into products of equal-degree irreducibles.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let x = FpPoly::x(p);
    let pe = BigUint::from(p);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    while g.degree() >= 2 * d {
        h = h.powmod(&pe, &g);
        let part = g.gcd(&h.sub(&x));
        if part.degree() > 0 {
            g = g.divmod(&part).0;
            h = h.rem(&g);
            out.push((part, d));
        }
        d += 1;
    }
    if g.degree() > 0 {
        let dg = g.degree();
        out.push((g.monic(), dg));
    }
    out
}

fn random_poly(p: u64, deg: usize, rng: &mut ChaCha8Rng) -> FpPoly {
    FpPoly::new(p, (0..deg).map(|_| rng.gen_range(0..p)).collect())
}

fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = f.degree();
    if n == d {
        out.push(f.monic());
        return;
    }
    let p = f.p;
    loop {
        let a = random_poly(p, n, rng);
        if a.degree() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map sum_{i<d} a^(2^i)
            let two = BigUint::from(2u32);
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.powmod(&two, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (num_traits::pow(BigUint::from(p), d) - BigUint::one()) / BigUint::from(2u32);
            a.powmod(&e, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&b);
        if g.degree() > 0 && g.degree() < n {
            let h = f.divmod(&g).0;
            equal_degree(&g, d, rng, out);
            equal_degree(&h.monic(), d, rng, out);
            return;
        }
    }
}

/// Complete factorization of `f mod p`. The seed drives equal-degree splitting.
pub fn factor_mod_p(f: &IntPoly, p: u64, seed: u64) -> Result<FpFactorization> {
    if !is_prime(p) || p >= MAX_PRIME {
        return Err(Error::NotPrime(p));
    }
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    if (f.leading() % BigInt::from(p)).is_zero() {
        return Err(Error::PrimeDividesLeading(p));
    }
    let fp = FpPoly::from_int(f, p);
    Ok(factor_fp(&fp, seed))
}

pub fn factor_fp(fp: &FpPoly, seed: u64) -> FpFactorization {
    let p = fp.p;
    let unit = fp.leading();
    let monic = fp.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let mut factors = Vec::new();
    for (sq, m) in squarefree_decomposition(&monic) {
        for (part, d) in distinct_degree(&sq) {
            let mut pieces = Vec::new();
            equal_degree(&part, d, &mut rng, &mut pieces);
            factors.extend(pieces.into_iter().map(|f| (f, m)));
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.c.iter().rev().cmp(b.c.iter().rev()))
            .then(ma.cmp(mb))
    });
    FpFactorization { p, unit, factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    #[test]
    fn primes() {
        let v: Vec<u64> = primes_up_to(20).collect();
        assert_eq!(v, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn x4_x_1_mod_2_is_irreducible() {
        let f = IntPoly::from_i64s(&[1, 1, 0, 0, 1]);
        let fac = factor_mod_p(&f, 2, 0).unwrap();
        assert_eq!(fac.factors, vec![(fp(2, &[1, 1, 0, 0, 1]), 1)]);
    }

    #[test]
    fn x4_x_1_mod_3() {
        let f = IntPoly::from_i64s(&[1, 1, 0, 0, 1]);
        let fac = factor_mod_p(&f, 3, 0).unwrap();
        // x - 1 = x + 2, and x^3 + x^2 + x + 2
        assert_eq!(
            fac.factors,
            vec![(fp(3, &[2, 1]), 1), (fp(3, &[2, 1, 1, 1]), 1)]
        );
    }

    #[test]
    fn x4_x2_minus_2_mod_5() {
        let f = IntPoly::from_i64s(&[-2, 0, 1, 0, 1]);
        let fac = factor_mod_p(&f, 5, 0).unwrap();
        assert_eq!(
            fac.factors,
            vec![(fp(5, &[1, 1]), 1), (fp(5, &[4, 1]), 1), (fp(5, &[2, 0, 1]), 1)]
        );
    }

    #[test]
    fn repeated_factors_and_pth_powers() {
        // (x+1)^2 (x^2+1)^3 mod 3, and x^3 - 1 = (x-1)^3 mod 3
        let a = FpPoly::new(3, vec![1, 1]);
        let b = FpPoly::new(3, vec![1, 0, 1]);
        let f = a.mul(&a).mul(&b).mul(&b).mul(&b);
        let fac = factor_fp(&f, 1);
        assert_eq!(fac.factors, vec![(a.clone(), 2), (b, 3)]);
        let g = IntPoly::from_i64s(&[-1, 0, 0, 1]);
        let fac = factor_mod_p(&g, 3, 1).unwrap();
        assert_eq!(fac.factors, vec![(fp(3, &[2, 1]), 3)]);
        assert_eq!(fac.degrees(), vec![1, 1, 1]);
    }

    #[test]
    fn equal_degree_split_mod_2() {
        // the two irreducible cubics mod 2
        let a = fp(2, &[1, 1, 0, 1]);
        let b = fp(2, &[1, 0, 1, 1]);
        let fac = factor_fp(&a.mul(&b), 9);
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(), a.mul(&b));
    }

    #[test]
    fn rejects_bad_modulus() {
        let f = IntPoly::from_i64s(&[1, 0, 2]);
        assert_eq!(factor_mod_p(&f, 4, 0), Err(Error::NotPrime(4)));
        assert_eq!(factor_mod_p(&f, 2, 0), Err(Error::PrimeDividesLeading(2)));
    }
}
