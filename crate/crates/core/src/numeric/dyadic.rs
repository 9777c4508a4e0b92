use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{rational_to_f64, Rational, Sign};
use crate::error::{Error, Result};

/// Direction for a rounding step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

/// `mant * 2^exp`, normalized so that `mant` is odd (or the value is zero
/// with `exp == 0`). Structural equality is numeric equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn pow2(n: u64) -> BigInt {
    BigInt::one() << n
}

/// `m / 2^s` rounded in direction `dir`.
fn shr_round(m: &BigInt, s: u64, dir: Rounding) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    let d = pow2(s);
    match dir {
        Rounding::Down => m.div_floor(&d),
        Rounding::Up => -((-m).div_floor(&d)),
    }
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Dyadic {
        if mant.is_zero() {
            return Dyadic { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mant, exp }
        } else {
            Dyadic { mant: mant >> tz, exp: exp + tz as i64 }
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_i64(n: i64) -> Dyadic {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// Exact conversion; every finite f64 is dyadic.
    pub fn from_f64(x: f64) -> Option<Dyadic> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Dyadic::new(BigInt::from(m) * sign, e))
    }

    /// `q` rounded to `prec` significant bits in direction `dir`.
    pub fn from_rational(q: &Rational, prec: u32, dir: Rounding) -> Dyadic {
        if q.is_zero() {
            return Dyadic::zero();
        }
        let k = prec as i64 + 1 - (q.numer().bits() as i64 - q.denom().bits() as i64);
        let scaled = if k >= 0 {
            q * Rational::from_integer(pow2(k as u64))
        } else {
            q / Rational::from_integer(pow2((-k) as u64))
        };
        let m = match dir {
            Rounding::Down => scaled.floor().to_integer(),
            Rounding::Up => scaled.ceil().to_integer(),
        };
        Dyadic::new(m, -k)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        Sign::of_bigint(&self.mant)
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// `|self| < 2^magnitude()`; meaningless for zero.
    fn magnitude(&self) -> i64 {
        self.mant.bits() as i64 + self.exp
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), pow2((-self.exp) as u64))
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits();
        if bits > 60 {
            let s = bits - 60;
            let m = shr_round(&self.mant, s, Rounding::Down);
            ldexp(m.to_f64().unwrap_or(0.0), self.exp + s as i64)
        } else {
            ldexp(self.mant.to_f64().unwrap_or(0.0), self.exp)
        }
    }

    /// Rounds to at most `prec` significant bits.
    pub fn round(&self, prec: u32, dir: Rounding) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let s = bits - prec as u64;
        Dyadic::new(shr_round(&self.mant, s, dir), self.exp + s as i64)
    }

    /// Scales by `2^k` exactly.
    pub fn ldexp(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// `floor` or `ceil` of `self * 2^w`.
    fn to_fixed(&self, w: u64, dir: Rounding) -> BigInt {
        let e = self.exp + w as i64;
        if e >= 0 {
            &self.mant << e as u64
        } else {
            shr_round(&self.mant, (-e) as u64, dir)
        }
    }

    fn from_fixed(m: BigInt, w: u64) -> Dyadic {
        Dyadic::new(m, -(w as i64))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let (sa, sb) = (self.sign(), other.sign());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == Sign::Zero {
            return Ordering::Equal;
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints. Every operation rounds
/// outward, so the result contains the exact image of the inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl DyadicInterval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> DyadicInterval {
        assert!(lo <= hi, "inverted interval");
        DyadicInterval { lo, hi, prec }
    }

    fn rounded(lo: Dyadic, hi: Dyadic, prec: u32) -> DyadicInterval {
        DyadicInterval {
            lo: lo.round(prec, Rounding::Down),
            hi: hi.round(prec, Rounding::Up),
            prec,
        }
    }

    pub fn point(x: Dyadic, prec: u32) -> DyadicInterval {
        DyadicInterval::rounded(x.clone(), x, prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> DyadicInterval {
        DyadicInterval::point(Dyadic::from_i64(n), prec)
    }

    pub fn from_rational(q: &Rational, prec: u32) -> DyadicInterval {
        DyadicInterval {
            lo: Dyadic::from_rational(q, prec, Rounding::Down),
            hi: Dyadic::from_rational(q, prec, Rounding::Up),
            prec,
        }
    }

    /// Outward enclosure of the rational interval `[lo, hi]`.
    pub fn from_rational_bounds(lo: &Rational, hi: &Rational, prec: u32) -> DyadicInterval {
        DyadicInterval::new(
            Dyadic::from_rational(lo, prec, Rounding::Down),
            Dyadic::from_rational(hi, prec, Rounding::Up),
            prec,
        )
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> DyadicInterval {
        DyadicInterval::rounded(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn lo_rational(&self) -> Rational {
        self.lo.to_rational()
    }

    pub fn hi_rational(&self) -> Rational {
        self.hi.to_rational()
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }

    pub fn mid_f64(&self) -> f64 {
        (&self.lo + &self.hi).ldexp(-1).to_f64()
    }

    pub fn width(&self) -> Rational {
        (&self.hi - &self.lo).to_rational()
    }

    pub fn width_f64(&self) -> f64 {
        (&self.hi - &self.lo).to_f64()
    }

    /// Certified sign if the interval excludes zero or is exactly `[0, 0]`.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.sign() == Sign::Positive {
            Some(Sign::Positive)
        } else if self.hi.sign() == Sign::Negative {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() != Sign::Positive && self.hi.sign() != Sign::Negative
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        &self.lo_rational() <= q && q <= &self.hi_rational()
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        match Dyadic::from_f64(x) {
            Some(d) => self.lo <= d && d <= self.hi,
            None => false,
        }
    }

    pub fn is_subset_of(&self, other: &DyadicInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Strictly inside the open interval `(lo, hi)`.
    pub fn strictly_inside(&self, lo: &Rational, hi: &Rational) -> bool {
        lo < &self.lo_rational() && &self.hi_rational() < hi
    }

    pub fn hull(&self, other: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn abs(&self) -> DyadicInterval {
        if self.lo.sign() != Sign::Negative {
            self.clone()
        } else if self.hi.sign() != Sign::Positive {
            -self
        } else {
            let hi = (-&self.lo).max(self.hi.clone());
            DyadicInterval { lo: Dyadic::zero(), hi, prec: self.prec }
        }
    }

    pub fn recip(&self) -> Result<DyadicInterval> {
        if self.contains_zero() {
            return Err(Error::Domain {
                function: "recip",
                detail: "interval contains zero".into(),
            });
        }
        let p = self.prec + 2;
        let lo = Dyadic::from_rational(&self.hi_rational().recip(), p, Rounding::Down);
        let hi = Dyadic::from_rational(&self.lo_rational().recip(), p, Rounding::Up);
        Ok(DyadicInterval { lo, hi, prec: self.prec })
    }

    pub fn checked_div(&self, rhs: &DyadicInterval) -> Result<DyadicInterval> {
        Ok(self * &rhs.recip()?)
    }

    pub fn square(&self) -> DyadicInterval {
        let a = self.abs();
        DyadicInterval::rounded(&a.lo * &a.lo, &a.hi * &a.hi, self.prec)
    }

    pub fn powi(&self, n: u32) -> DyadicInterval {
        let mut acc = DyadicInterval::from_i64(1, self.prec);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale_rational(&self, q: &Rational) -> DyadicInterval {
        self * &DyadicInterval::from_rational(q, self.prec)
    }

    pub fn exp(&self) -> DyadicInterval {
        let p = self.prec;
        let (lo, _) = exp_point(&self.lo, p);
        let (_, hi) = exp_point(&self.hi, p);
        DyadicInterval { lo, hi, prec: p }
    }

    pub fn log(&self) -> Result<DyadicInterval> {
        if self.lo.sign() != Sign::Positive {
            return Err(Error::Domain { function: "log", detail: format!("lower endpoint {}", self.lo) });
        }
        let p = self.prec;
        let (lo, _) = log_point(&self.lo, p);
        let (_, hi) = log_point(&self.hi, p);
        Ok(DyadicInterval { lo, hi, prec: p })
    }

    pub fn sqrt(&self) -> Result<DyadicInterval> {
        if self.lo.sign() == Sign::Negative {
            return Err(Error::Domain { function: "sqrt", detail: format!("lower endpoint {}", self.lo) });
        }
        let p = self.prec;
        Ok(DyadicInterval {
            lo: sqrt_point(&self.lo, p, Rounding::Down),
            hi: sqrt_point(&self.hi, p, Rounding::Up),
            prec: p,
        })
    }

    pub fn sin(&self) -> DyadicInterval {
        self.lipschitz_trig(true)
    }

    pub fn cos(&self) -> DyadicInterval {
        self.lipschitz_trig(false)
    }

    // |sin' |, |cos'| <= 1, so f(mid) +- radius encloses the image.
    fn lipschitz_trig(&self, sine: bool) -> DyadicInterval {
        let p = self.prec;
        let mid = (&self.lo + &self.hi).ldexp(-1);
        let rad = (&self.hi - &self.lo).ldexp(-1);
        let (lo, hi) = trig_point(&mid, p, sine);
        let one = Dyadic::one();
        let lo = (&lo - &rad).round(p + 2, Rounding::Down).max(-&one);
        let hi = (&hi + &rad).round(p + 2, Rounding::Up).min(one);
        DyadicInterval { lo, hi, prec: p }
    }
}

impl Add for &DyadicInterval {
    type Output = DyadicInterval;
    fn add(self, rhs: &DyadicInterval) -> DyadicInterval {
        DyadicInterval::rounded(&self.lo + &rhs.lo, &self.hi + &rhs.hi, self.prec.max(rhs.prec))
    }
}

impl Sub for &DyadicInterval {
    type Output = DyadicInterval;
    fn sub(self, rhs: &DyadicInterval) -> DyadicInterval {
        DyadicInterval::rounded(&self.lo - &rhs.hi, &self.hi - &rhs.lo, self.prec.max(rhs.prec))
    }
}

impl Mul for &DyadicInterval {
    type Output = DyadicInterval;
    fn mul(self, rhs: &DyadicInterval) -> DyadicInterval {
        let c = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        DyadicInterval::rounded(lo, hi, self.prec.max(rhs.prec))
    }
}

impl Neg for &DyadicInterval {
    type Output = DyadicInterval;
    fn neg(self) -> DyadicInterval {
        DyadicInterval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Certified enclosure of pi.
pub fn pi(prec: u32) -> DyadicInterval {
    let w = prec as u64 + 32;
    let (a, ea) = atan_inv(5, w);
    let (b, eb) = atan_inv(239, w);
    let s = a * 16 - b * 4;
    let e = ea * 16 + eb * 4;
    let lo = Dyadic::from_fixed(&s - &e, w).round(prec + 2, Rounding::Down);
    let hi = Dyadic::from_fixed(s + e, w).round(prec + 2, Rounding::Up);
    DyadicInterval { lo, hi, prec }
}

/// `atan(1/k)` in fixed point with `w` fractional bits, and an error bound
/// in ulps.
fn atan_inv(k: u64, w: u64) -> (BigInt, BigInt) {
    let k2 = BigInt::from(k * k);
    let mut p = pow2(w) / k;
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        let term = &p / (2 * j + 1);
        if term.is_zero() {
            break;
        }
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        p = &p / &k2;
        j += 1;
    }
    (sum, BigInt::from(2 * j + 4))
}

/// Enclosure of `e^x` with about `prec` correct bits.
fn exp_point(x: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    if x.is_zero() {
        return (Dyadic::one(), Dyadic::one());
    }
    if x.sign() == Sign::Negative {
        let (lo, hi) = exp_point(&x.abs(), prec + 2);
        let p = prec + 2;
        return (
            Dyadic::from_rational(&hi.to_rational().recip(), p, Rounding::Down),
            Dyadic::from_rational(&lo.to_rational().recip(), p, Rounding::Up),
        );
    }
    // x > 0: halve until below 2^-8, sum Taylor terms, square back.
    let s = (x.magnitude() + 8).max(0) as u64;
    let w = prec as u64 + s + 48;
    let r = x.ldexp(-(s as i64)).to_fixed(w, Rounding::Down);
    let one = pow2(w);
    let mut sum = one.clone();
    let mut term = one;
    let mut j: u64 = 0;
    loop {
        j += 1;
        term = (&term * &r >> w) / j;
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    let err = BigInt::from(3 * j + 16);
    let mut lo = &sum - &err;
    let mut hi = sum + err;
    for _ in 0..s {
        lo = shr_round(&(&lo * &lo), w, Rounding::Down);
        hi = shr_round(&(&hi * &hi), w, Rounding::Up);
    }
    (
        Dyadic::from_fixed(lo, w).round(prec + 2, Rounding::Down),
        Dyadic::from_fixed(hi, w).round(prec + 2, Rounding::Up),
    )
}

/// `atanh(y)` for `|y| <= 1/3` in fixed point, with an ulp error bound.
fn atanh_fixed(y: &Rational, w: u64) -> (BigInt, BigInt) {
    let one = pow2(w);
    let yy = (y * Rational::from_integer(one.clone())).floor().to_integer();
    let y2 = (&yy * &yy) >> w;
    let mut p = yy;
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        let term = &p / (2 * j + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        p = (&p * &y2) / &one;
        j += 1;
    }
    (sum, BigInt::from(4 * j + 16))
}

/// Enclosure of `log x` for `x > 0`.
fn log_point(x: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    let xq = x.to_rational();
    // x = m * 2^e with m in [3/4, 3/2)
    let mut e = x.magnitude() - 1;
    let scale = |e: i64| {
        if e >= 0 {
            Rational::from_integer(pow2(e as u64))
        } else {
            Rational::new(BigInt::one(), pow2((-e) as u64))
        }
    };
    let three_halves = Rational::new(BigInt::from(3), BigInt::from(2));
    let mut m = &xq / scale(e);
    if m >= three_halves {
        e += 1;
        m = &xq / scale(e);
    }
    if m.is_one() && e == 0 {
        return (Dyadic::zero(), Dyadic::zero());
    }
    let one = Rational::one();
    let y = (&m - &one) / (&m + &one);
    let extra = if y.is_zero() {
        0
    } else {
        let r = rational_to_f64(&y).abs();
        (-r.log2()).max(0.0).ceil() as u64
    };
    let ebits = 64 - (e.unsigned_abs()).leading_zeros() as u64;
    let w = prec as u64 + extra + ebits + 64;
    let (am, em) = atanh_fixed(&y, w);
    let mut sum = am * 2;
    let mut err = em * 2;
    if e != 0 {
        let (l2, el2) = atanh_fixed(&Rational::new(BigInt::one(), BigInt::from(3)), w);
        sum += l2 * (2 * e);
        err += el2 * (2 * e.unsigned_abs());
    }
    (
        Dyadic::from_fixed(&sum - &err, w).round(prec + 2, Rounding::Down),
        Dyadic::from_fixed(sum + err, w).round(prec + 2, Rounding::Up),
    )
}

fn sqrt_point(x: &Dyadic, prec: u32, dir: Rounding) -> Dyadic {
    if x.is_zero() {
        return Dyadic::zero();
    }
    let target = 2 * (prec as u64 + 4);
    let mut t = target.saturating_sub(x.mant.bits());
    if (x.exp - t as i64).rem_euclid(2) != 0 {
        t += 1;
    }
    let n = &x.mant << t;
    let root = n.sqrt();
    let exact = &root * &root == n;
    let root = if dir == Rounding::Up && !exact { root + 1 } else { root };
    Dyadic::new(root, (x.exp - t as i64) / 2).round(prec + 2, dir)
}

/// Enclosure of `sin x` (or `cos x`) by a Taylor sum around zero; working
/// precision grows with `|x|` to absorb the cancellation.
fn trig_point(x: &Dyadic, prec: u32, sine: bool) -> (Dyadic, Dyadic) {
    let ax = x.abs().to_f64();
    let grow = (1.45 * ax).ceil() as u64 + 2;
    let w = prec as u64 + grow + 64;
    let one = pow2(w);
    let xx = x.to_fixed(w, Rounding::Down);
    let x2 = (&xx * &xx) >> w;
    let (mut term, mut k) = if sine { (xx, 1u64) } else { (one.clone(), 0u64) };
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        if term.is_zero() {
            break;
        }
        sum += &term;
        term = -((&term * &x2) / &one) / ((k + 1) * (k + 2));
        k += 2;
        j += 1;
    }
    let err = BigInt::from(j + 8) << grow;
    (
        Dyadic::from_fixed(&sum - &err, w).round(prec + 2, Rounding::Down),
        Dyadic::from_fixed(sum + err, w).round(prec + 2, Rounding::Up),
    )
}

pub fn interval_exp(x: &DyadicInterval, bits: u32) -> DyadicInterval {
    x.with_precision(bits).exp()
}

pub fn interval_log(x: &DyadicInterval, bits: u32) -> Result<DyadicInterval> {
    x.with_precision(bits).log()
}

pub fn interval_sqrt(x: &DyadicInterval, bits: u32) -> Result<DyadicInterval> {
    x.with_precision(bits).sqrt()
}
