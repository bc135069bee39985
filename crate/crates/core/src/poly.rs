//! Dense univariate polynomials over Z and Q.
//!
//! Coefficients are stored in ascending order and trailing zeros are always
//! trimmed, so the zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Polynomial with rational coefficients, each kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c * x^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c.into();
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.leading().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + big_to_f64(c);
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `x -> q(x)`.
    pub fn compose(&self, q: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &IntPoly::constant(c.clone());
        }
        acc
    }

    /// `x^d P(1/x)` for `d = deg P`.
    pub fn reversed(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// True when `x^d P(1/x) = P(x)`, i.e. the coefficient list is a palindrome.
    pub fn is_reciprocal(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// True when `x^d P(1/x) = -P(x)`.
    pub fn is_antireciprocal(&self) -> bool {
        !self.is_zero()
            && self
                .coeffs
                .iter()
                .zip(self.coeffs.iter().rev())
                .all(|(a, b)| *a == -b)
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) a = q b + r`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "pseudo_rem by zero polynomial");
        if self.coeffs.len() < b.coeffs.len() {
            return self.clone();
        }
        let db = b.degree();
        let lb = b.leading();
        let mut r = self.coeffs.clone();
        let mut steps = self.degree() - db + 1;
        while r.len() >= b.coeffs.len() && !r.is_empty() {
            let k = r.len() - 1 - db;
            let lr = r.last().cloned().unwrap();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[k + i] -= &lr * bc;
            }
            trim(&mut r);
            steps -= 1;
        }
        let extra = num_traits::pow(lb, steps);
        IntPoly::new(r.into_iter().map(|c| c * &extra).collect())
    }

    /// Exact division by an integer polynomial; `None` when the quotient is not integral.
    pub fn exact_div(&self, b: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.to_rat().divmod(&b.to_rat()).ok()?;
        if !r.is_zero() {
            return None;
        }
        q.to_int()
    }

    /// Subresultant polynomial remainder sequence; returns the last nonzero
    /// member (a scalar multiple of the gcd) and the resultant.
    fn subresultant(a: &IntPoly, b: &IntPoly) -> (IntPoly, BigInt) {
        debug_assert!(!a.is_zero() && !b.is_zero());
        let (mut a, mut b, mut s) = if a.degree() < b.degree() {
            let s = if a.degree() % 2 == 1 && b.degree() % 2 == 1 { -1 } else { 1 };
            (b.clone(), a.clone(), s)
        } else {
            (a.clone(), b.clone(), 1)
        };
        if b.degree() == 0 {
            let r = num_traits::pow(b.leading(), a.degree()) * s;
            return (b, r);
        }
        let ca = a.content();
        let cb = b.content();
        a = a.primitive();
        b = b.primitive();
        let t = num_traits::pow(ca.abs(), b.degree())
            * num_traits::pow(cb.abs(), a.degree())
            * sign_pow(&ca, b.degree())
            * sign_pow(&cb, a.degree());
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree() - b.degree();
            if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
                s = -s;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            if r.is_zero() {
                return (a, BigInt::zero());
            }
            let div = &g * num_traits::pow(h.clone(), delta);
            b = IntPoly::new(r.coeffs.iter().map(|c| c / &div).collect());
            g = a.leading();
            // h <- h^(1-delta) g^delta
            h = if delta == 0 {
                h
            } else {
                num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
            };
            if b.degree() == 0 {
                let da = a.degree();
                let hh = if da == 0 {
                    BigInt::one()
                } else {
                    num_traits::pow(b.leading(), da) / num_traits::pow(h, da - 1)
                };
                return (b, t * hh * s);
            }
        }
    }

    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        IntPoly::subresultant(self, other).1
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let (g, res) = IntPoly::subresultant(self, other);
        if !res.is_zero() {
            return IntPoly::one();
        }
        g.primitive()
    }

    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        let r = self.resultant(&self.derivative());
        let sign = if (n * (n.saturating_sub(1)) / 2) % 2 == 1 { -1 } else { 1 };
        r * sign / self.leading()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// `P / gcd(P, P')`, primitive.
    pub fn squarefree_part(&self) -> IntPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.primitive();
        }
        self.to_rat()
            .divmod(&g.to_rat())
            .expect("gcd is nonzero")
            .0
            .primitive_part()
    }

    /// `P(x^2 + q)` for rational `q`.
    pub fn compose_quadratic(&self, q: &Rational) -> RatPoly {
        let sub = RatPoly::new(vec![q.clone(), Rational::zero(), Rational::one()]);
        self.to_rat().compose(&sub)
    }

    /// Largest absolute value of a coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Cauchy bound `1 + max|a_i| / |a_n|`; every complex root has modulus below it.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        Rational::one() + Rational::new(m, lc)
    }
}

fn sign_pow(x: &BigInt, e: usize) -> BigInt {
    if x.is_negative() && e % 2 == 1 {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

pub fn big_to_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

pub fn rat_to_f64(x: &Rational) -> f64 {
    // ToPrimitive on Ratio handles large numerators and denominators.
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        trim(&mut coeffs);
        RatPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| int_rat(x)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The unique polynomial of degree `< xs.len()` through the given points
    /// (Newton divided differences). The abscissae must be distinct.
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> RatPoly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
            }
        }
        let mut acc = RatPoly::zero();
        for i in (0..n).rev() {
            let lin = RatPoly::new(vec![-xs[i].clone(), Rational::one()]);
            acc = &(&acc * &lin) + &RatPoly::constant(dd[i].clone());
        }
        acc
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        RatPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn scale(&self, k: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int_rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> RatPoly {
        let mut acc = RatPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn compose(&self, q: &RatPoly) -> RatPoly {
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &RatPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() < b.coeffs.len() {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let db = b.degree();
        let lb = b.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); self.degree() - db + 1];
        while r.len() >= b.coeffs.len() && !r.is_empty() {
            let k = r.len() - 1 - db;
            let t = r.last().unwrap() / &lb;
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[k + i] -= &t * bc;
            }
            // the leading term cancels exactly; drop it even if rounding were an issue
            r.pop();
            trim(&mut r);
            q[k] = t;
        }
        Ok((RatPoly::new(q), RatPoly::new(r)))
    }

    pub fn rem(&self, b: &RatPoly) -> Result<RatPoly> {
        Ok(self.divmod(b)?.1)
    }

    /// Least common denominator of the coefficients.
    pub fn denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer polynomial `d * self` with `d` the coefficient denominator lcm.
    pub fn clear_denominators(&self) -> (IntPoly, BigInt) {
        let d = self.denominator();
        let v = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(d.clone())).to_integer())
            .collect();
        (IntPoly::new(v), d)
    }

    pub fn primitive_part(&self) -> IntPoly {
        self.clear_denominators().0.primitive()
    }

    pub fn to_int(&self) -> Option<IntPoly> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }

    /// Monic gcd; `gcd(0, 0)` is an error.
    pub fn gcd(&self, other: &RatPoly) -> Result<RatPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidInput("gcd(0, 0) is undefined".into()));
        }
        let a = self.clear_denominators().0;
        let b = other.clear_denominators().0;
        Ok(a.gcd(&b).to_rat().monic())
    }

    /// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn xgcd(&self, other: &RatPoly) -> Result<(RatPoly, RatPoly, RatPoly)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidInput("gcd(0, 0) is undefined".into()));
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
        let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lc = r0.leading();
        let inv = Rational::one() / lc;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Resultant `lc(a)^deg(b) * prod_{a(x)=0} b(x)`, exact.
    pub fn resultant(&self, other: &RatPoly) -> Rational {
        if self.is_zero() || other.is_zero() {
            return Rational::zero();
        }
        let (a, da) = self.clear_denominators();
        let (b, db) = other.clear_denominators();
        let r = Rational::from_integer(a.resultant(&b));
        let scale_a = num_traits::pow(Rational::from_integer(da), other.degree());
        let scale_b = num_traits::pow(Rational::from_integer(db), self.degree());
        r / (scale_a * scale_b)
    }

    pub fn squarefree_part(&self) -> RatPoly {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative()).expect("nonzero");
        self.divmod(&g).expect("nonzero gcd").0.monic()
    }
}

macro_rules! ring_ops {
    ($t:ident, $c:ty) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                let n = self.coeffs.len().max(o.coeffs.len());
                let mut v: Vec<$c> = Vec::with_capacity(n);
                for i in 0..n {
                    let mut c = self.coeffs.get(i).cloned().unwrap_or_else(<$c>::zero);
                    if let Some(x) = o.coeffs.get(i) {
                        c += x;
                    }
                    v.push(c);
                }
                $t::new(v)
            }
        }
        impl Sub for &$t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                let n = self.coeffs.len().max(o.coeffs.len());
                let mut v: Vec<$c> = Vec::with_capacity(n);
                for i in 0..n {
                    let mut c = self.coeffs.get(i).cloned().unwrap_or_else(<$c>::zero);
                    if let Some(x) = o.coeffs.get(i) {
                        c -= x;
                    }
                    v.push(c);
                }
                $t::new(v)
            }
        }
        impl Mul for &$t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                if self.coeffs.is_empty() || o.coeffs.is_empty() {
                    return $t::new(Vec::new());
                }
                let mut v = vec![<$c>::zero(); self.coeffs.len() + o.coeffs.len() - 1];
                for (i, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in o.coeffs.iter().enumerate() {
                        v[i + j] += a * b;
                    }
                }
                $t::new(v)
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t::new(self.coeffs.iter().map(|c| -c).collect())
            }
        }
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

ring_ops!(IntPoly, BigInt);
ring_ops!(RatPoly, Rational);

fn write_terms<T: fmt::Display + Signed + One + PartialEq>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[T],
    var: &str,
) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { "-" } else { "+" })?;
        }
        first = false;
        let show_coeff = i == 0 || !mag.is_one();
        if show_coeff {
            let s = mag.to_string();
            if i > 0 && s.contains('/') {
                write!(f, "({s})")?;
            } else {
                write!(f, "{s}")?;
            }
            if i > 0 {
                write!(f, "*")?;
            }
        }
        match i {
            0 => {}
            1 => write!(f, "{var}")?,
            _ => write!(f, "{var}^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "x")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "x")
    }
}

impl IntPoly {
    /// Render with a chosen variable name.
    pub fn display_var(&self, var: &str) -> String {
        struct D<'a>(&'a IntPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_terms(f, &self.0.coeffs, self.1)
            }
        }
        D(self, var).to_string()
    }
}

impl RatPoly {
    pub fn display_var(&self, var: &str) -> String {
        struct D<'a>(&'a RatPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_terms(f, &self.0.coeffs, self.1)
            }
        }
        D(self, var).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn r(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn add_zero_is_identity() {
        assert_eq!(&r(&[-2, 0, 1]) + &RatPoly::zero(), r(&[-2, 0, 1]));
    }

    #[test]
    fn maximal_family_linear_combination() {
        let f1 = r(&[1, 1, 0, 0, 1]);
        let f3 = r(&[-2, 0, 1, 0, 1]);
        let f = &(&f1.scale(&int_rat(-15)) + &f1.scale(&int_rat(10))) + &f3.scale(&int_rat(6));
        // hand expansion: -5x^4 - 5x - 5 + 6x^4 + 6x^2 - 12
        assert_eq!(f, r(&[-17, -5, 6, 0, 1]));
    }

    #[test]
    fn divmod_round_trip() {
        let a = r(&[-2, 0, 0, 0, 1]);
        let b = r(&[-2, 0, 1]);
        let (q, rem) = a.divmod(&b).unwrap();
        assert_eq!(q, r(&[2, 0, 1]));
        assert_eq!(rem, r(&[2]));
        assert_eq!(&(&q * &b) + &rem, a);
    }

    #[test]
    fn divmod_by_zero_errors() {
        assert!(matches!(r(&[1, 1]).divmod(&RatPoly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn gcd_examples() {
        let f = r(&[-2, 0, 1]);
        assert_eq!(f.gcd(&f).unwrap(), f);
        assert_eq!(r(&[-2, 0, 0, 0, 1]).gcd(&r(&[-1, 1])).unwrap(), RatPoly::one());
        let sq = &f * &f;
        let other = &r(&[0, 2]) * &f;
        assert_eq!(sq.gcd(&other).unwrap(), f);
        assert!(RatPoly::zero().gcd(&RatPoly::zero()).is_err());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(r(&[-2, 0, 1]).resultant(&r(&[-3, 1])), int_rat(7));
        assert_eq!(r(&[-2, 0, 1]).resultant(&r(&[0, 2])), int_rat(-8));
        assert_eq!(r(&[-2, 0, 0, 0, 1]).resultant(&r(&[0, 1])), int_rat(-2));
    }

    #[test]
    fn resultant_with_rational_coefficients() {
        // Res(x - 1/2, x - 1/3) = b(1/2)
        let a = RatPoly::new(vec![rat(-1, 2), int_rat(1)]);
        let b = RatPoly::new(vec![rat(-1, 3), int_rat(1)]);
        assert_eq!(a.resultant(&b), rat(1, 6));
        // scaling: Res(2x - 1, x - 1/3) = 2^1 * (1/2 - 1/3)
        let a2 = RatPoly::new(vec![int_rat(-1), int_rat(2)]);
        assert_eq!(a2.resultant(&b), rat(1, 3));
    }

    #[test]
    fn compose_quadratic_examples() {
        assert_eq!(p(&[-2, 0, 1]).compose_quadratic(&int_rat(0)), r(&[-2, 0, 0, 0, 1]));
        assert_eq!(p(&[0, 1]).compose_quadratic(&int_rat(5)), r(&[5, 0, 1]));
        assert_eq!(
            p(&[-1, -2, 1, 1]).compose_quadratic(&int_rat(0)),
            r(&[-1, 0, -2, 0, 1, 0, 1])
        );
    }

    #[test]
    fn discriminant_quadratic() {
        // b^2 - 4ac
        assert_eq!(p(&[-2, 0, 1]).discriminant(), BigInt::from(8));
        assert_eq!(p(&[-1, 1, 1]).discriminant(), BigInt::from(5));
    }

    #[test]
    fn xgcd_bezout() {
        let a = r(&[1, 0, 1]);
        let b = r(&[-2, 0, 0, 0, 1]);
        let (g, s, t) = a.xgcd(&b).unwrap();
        assert_eq!(g, RatPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[-17, -5, 6, 0, 1]).to_string(), "x^4+6*x^2-5*x-17");
        assert_eq!(p(&[-2, 0, 0, 0, 1]).to_string(), "x^4-2");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn reciprocal_detection() {
        assert!(p(&[1, -12, 6, -12, 1]).is_reciprocal());
        assert!(!p(&[-2, 0, 0, 0, 1]).is_reciprocal());
        assert!(p(&[1, 0, -1]).is_antireciprocal());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let q = RatPoly::new(vec![rat(1, 2), int_rat(-3), int_rat(0), rat(7, 3)]);
        let xs: Vec<Rational> = (0..4).map(int_rat).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| q.eval(x)).collect();
        assert_eq!(RatPoly::interpolate(&xs, &ys), q);
    }
}
