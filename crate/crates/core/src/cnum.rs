//! Certified numerics with exact rational endpoints: real intervals and
//! midpoint-radius complex disks. Midpoints are rounded to dyadic rationals
//! of a chosen precision and the rounding error is absorbed into the radius,
//! so every enclosure is rigorous.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{rat_to_f64, IntPoly, RatPoly, Rational};

pub fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Round to the nearest multiple of `2^-bits`; returns the rounded value and an
/// upper bound on the rounding error.
pub fn round_dyadic(q: &Rational, bits: u32) -> (Rational, Rational) {
    if q.denom().is_one() {
        return (q.clone(), Rational::zero());
    }
    let scale = pow2(bits);
    let num = q.numer() * &scale;
    let (d, _) = num.div_mod_floor(q.denom());
    let r = Rational::new(d, scale.clone());
    let err = Rational::new(BigInt::one(), scale);
    (r, err)
}

/// Rational `r >= sqrt(x)` within `2^-bits` of it.
pub fn sqrt_upper(x: &Rational, bits: u32) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let scale = pow2(2 * bits);
    let scaled = (x * Rational::from_integer(scale)).ceil().to_integer();
    let s = scaled.sqrt();
    let s = if &s * &s < scaled { s + 1 } else { s };
    Rational::new(s, pow2(bits))
}

/// Rational `r <= sqrt(x)` within `2^-bits` of it.
pub fn sqrt_lower(x: &Rational, bits: u32) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let scale = pow2(2 * bits);
    let scaled = (x * Rational::from_integer(scale)).floor().to_integer();
    Rational::new(scaled.sqrt(), pow2(bits))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    pub fn scale(&self, k: &Rational) -> Interval {
        self.mul(&Interval::point(k.clone()))
    }

    /// Outward-round the endpoints to `bits` binary digits.
    pub fn round(&self, bits: u32) -> Interval {
        // round_dyadic floors, so lo is already below; push hi up
        let (lo, _) = round_dyadic(&self.lo, bits);
        let (hi, step) = round_dyadic(&self.hi, bits);
        let hi = if hi < self.hi { hi + step } else { hi };
        Interval::new(lo, hi)
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.mid())
    }

    /// Horner evaluation of a rational polynomial.
    pub fn eval(p: &RatPoly, x: &Interval) -> Interval {
        let mut acc = Interval::point(Rational::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(x).add(&Interval::point(c.clone()));
        }
        acc
    }

    pub fn eval_int(p: &IntPoly, x: &Interval) -> Interval {
        Interval::eval(&p.to_rat(), x)
    }
}

/// Closed complex disk `{ z : |z - (re + i im)| <= rad }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk {
    pub re: Rational,
    pub im: Rational,
    pub rad: Rational,
}

impl Disk {
    pub fn new(re: Rational, im: Rational, rad: Rational) -> Self {
        Disk { re, im, rad }
    }

    pub fn exact(re: Rational, im: Rational) -> Self {
        Disk { re, im, rad: Rational::zero() }
    }

    pub fn real(x: Rational) -> Self {
        Disk::exact(x, Rational::zero())
    }

    pub fn from_interval(iv: &Interval) -> Self {
        let half = iv.width() / Rational::from_integer(2.into());
        Disk::new(iv.mid(), Rational::zero(), half)
    }

    pub fn zero() -> Self {
        Disk::real(Rational::zero())
    }

    pub fn mid_abs_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs_upper(&self, bits: u32) -> Rational {
        sqrt_upper(&self.mid_abs_sq(), bits) + &self.rad
    }

    pub fn abs_lower(&self, bits: u32) -> Rational {
        let l = sqrt_lower(&self.mid_abs_sq(), bits) - &self.rad;
        if l.is_negative() {
            Rational::zero()
        } else {
            l
        }
    }

    /// Enclosure of `|z|^2`.
    pub fn abs_sq(&self, bits: u32) -> Interval {
        let lo = self.abs_lower(bits);
        let hi = self.abs_upper(bits);
        Interval::new(&lo * &lo, &hi * &hi)
    }

    pub fn re_interval(&self) -> Interval {
        Interval::new(&self.re - &self.rad, &self.re + &self.rad)
    }

    pub fn im_interval(&self) -> Interval {
        Interval::new(&self.im - &self.rad, &self.im + &self.rad)
    }

    pub fn conj(&self) -> Disk {
        Disk::new(self.re.clone(), -&self.im, self.rad.clone())
    }

    pub fn neg(&self) -> Disk {
        Disk::new(-&self.re, -&self.im, self.rad.clone())
    }

    pub fn add(&self, o: &Disk) -> Disk {
        Disk::new(&self.re + &o.re, &self.im + &o.im, &self.rad + &o.rad)
    }

    pub fn sub(&self, o: &Disk) -> Disk {
        Disk::new(&self.re - &o.re, &self.im - &o.im, &self.rad + &o.rad)
    }

    pub fn add_rat(&self, c: &Rational) -> Disk {
        Disk::new(&self.re + c, self.im.clone(), self.rad.clone())
    }

    pub fn scale(&self, k: &Rational) -> Disk {
        Disk::new(&self.re * k, &self.im * k, &self.rad * k.abs())
    }

    pub fn mul(&self, o: &Disk, bits: u32) -> Disk {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        // |re| + |im| bounds the modulus and avoids a square root per product
        let m1 = self.re.abs() + self.im.abs();
        let m2 = o.re.abs() + o.im.abs();
        let rad = m1 * &o.rad + m2 * &self.rad + &self.rad * &o.rad;
        Disk::new(re, im, rad).rounded(bits)
    }

    /// Enclosure of `1/z`; `None` when the disk may contain zero.
    pub fn recip(&self, bits: u32) -> Option<Disk> {
        let m2 = self.mid_abs_sq();
        let lo = sqrt_lower(&m2, bits);
        if lo <= self.rad {
            return None;
        }
        let re = &self.re / &m2;
        let im = -&self.im / &m2;
        let rad = &self.rad / (&lo * (&lo - &self.rad));
        Some(Disk::new(re, im, rad).rounded(bits))
    }

    pub fn div(&self, o: &Disk, bits: u32) -> Option<Disk> {
        Some(self.mul(&o.recip(bits)?, bits))
    }

    /// Round the midpoint to `bits` digits, widening the radius accordingly.
    pub fn rounded(&self, bits: u32) -> Disk {
        let (re, e1) = round_dyadic(&self.re, bits);
        let (im, e2) = round_dyadic(&self.im, bits);
        let (rad, step) = round_dyadic(&self.rad, bits);
        let rad = if rad < self.rad { rad + step } else { rad };
        Disk::new(re, im, rad + e1 + e2)
    }

    pub fn eval(p: &RatPoly, z: &Disk, bits: u32) -> Disk {
        let mut acc = Disk::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(z, bits).add_rat(c);
        }
        acc
    }

    pub fn eval_int(p: &IntPoly, z: &Disk, bits: u32) -> Disk {
        Disk::eval(&p.to_rat(), z, bits)
    }

    pub fn contains(&self, re: &Rational, im: &Rational) -> bool {
        let dr = &self.re - re;
        let di = &self.im - im;
        &dr * &dr + &di * &di <= &self.rad * &self.rad
    }

    /// Certainly disjoint from another disk.
    pub fn disjoint(&self, o: &Disk) -> bool {
        let dr = &self.re - &o.re;
        let di = &self.im - &o.im;
        let r = &self.rad + &o.rad;
        &dr * &dr + &di * &di > &r * &r
    }

    /// Disk lies inside `o`.
    pub fn inside(&self, o: &Disk) -> bool {
        if self.rad > o.rad {
            return false;
        }
        let dr = &self.re - &o.re;
        let di = &self.im - &o.im;
        let r = &o.rad - &self.rad;
        &dr * &dr + &di * &di <= &r * &r
    }

    pub fn excludes_real_axis(&self) -> bool {
        self.im.abs() > self.rad
    }

    /// The unique integer within distance `< 1/4` of every point, if certified.
    pub fn near_integer(&self) -> Option<BigInt> {
        if self.rad >= Rational::new(1.into(), 4.into()) {
            return None;
        }
        let quarter = Rational::new(1.into(), 4.into());
        if &self.im.abs() + &self.rad >= quarter {
            return None;
        }
        let n = self.re.round().to_integer();
        let d = (&self.re - Rational::from_integer(n.clone())).abs() + &self.rad;
        (d < quarter).then_some(n)
    }

    /// True when the disk provably contains no integer, i.e. misses the
    /// integer nearest its centre.
    pub fn excludes_integers(&self) -> bool {
        if self.excludes_real_axis() {
            return true;
        }
        !self.contains(&self.re.round(), &Rational::zero())
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    pub fn rad_f64(&self) -> f64 {
        rat_to_f64(&self.rad)
    }
}

/// Rigorous natural logarithm of a positive rational, to roughly `bits` digits.
pub fn ln_rational(x: &Rational, bits: u32) -> Interval {
    assert!(x.is_positive(), "logarithm of a non-positive number");
    // x = 2^e * m with m in [1, 2)
    let mut e: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = Rational::from_integer(2.into());
    let mut m = if e >= 0 {
        x / Rational::from_integer(pow2(e as u32))
    } else {
        x * Rational::from_integer(pow2((-e) as u32))
    };
    while m >= two {
        m /= &two;
        e += 1;
    }
    while m < Rational::one() {
        m *= &two;
        e -= 1;
    }
    let lm = atanh_series(&((&m - Rational::one()) / (&m + Rational::one())), bits);
    let l2 = atanh_series(&Rational::new(1.into(), 3.into()), bits + 8);
    let e_r = Rational::from_integer(e.into());
    // ln m = 2 atanh(y), ln 2 = 2 atanh(1/3)
    let lm = lm.scale(&two);
    let l2 = l2.scale(&(&two * &e_r));
    lm.add(&l2).round(bits + 4)
}

/// Enclosure of `atanh(y)` for `0 <= y <= 1/3`, summed in fixed point with
/// scale `2^(bits + 32)`. Every truncation rounds down, so the computed sum is
/// a lower bound; each term carries at most 3 ulps of accumulated error.
fn atanh_series(y: &Rational, bits: u32) -> Interval {
    if y.is_zero() {
        return Interval::point(Rational::zero());
    }
    let prec = bits + 32;
    let scale = pow2(prec);
    let yy = (y.numer() * &scale).div_floor(y.denom());
    let y2 = (&yy * &yy) >> prec;
    let mut term = yy.clone();
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        sum += &term / BigInt::from(2 * k + 1);
        term = (&term * &y2) >> prec;
        k += 1;
    }
    // after truncation to zero the true tail is below 2 ulps / (1 - y²) < 3 ulps
    let slack = BigInt::from(3 * k + 8);
    Interval::new(Rational::new(sum.clone() - 2, scale.clone()), Rational::new(sum + slack, scale))
}

/// `ln` of a positive interval.
pub fn ln_interval(x: &Interval, bits: u32) -> Option<Interval> {
    if !x.lo.is_positive() {
        return None;
    }
    let lo = ln_rational(&x.lo, bits).lo;
    let hi = ln_rational(&x.hi, bits).hi;
    Some(Interval::new(lo, hi))
}

pub fn sign_of(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
