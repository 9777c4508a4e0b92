use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{DyadicInterval, QuadExtValue, Rational, Sign};
use crate::error::{Error, Result};

/// Polynomial over the rationals, constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> RatPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> RatPoly {
        RatPoly::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn from_ints(coeffs: &[BigInt]) -> RatPoly {
        RatPoly::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero() -> RatPoly {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> RatPoly {
        RatPoly::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> RatPoly {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        RatPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn sign_at(&self, t: &Rational) -> Sign {
        Sign::of(&self.eval(t))
    }

    pub fn eval_interval(&self, t: &DyadicInterval) -> DyadicInterval {
        let p = t.precision();
        let mut acc = DyadicInterval::from_i64(0, p);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + &DyadicInterval::from_rational(c, p);
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + super::rational_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, q: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn pow(&self, n: u32) -> RatPoly {
        let mut acc = RatPoly::constant(Rational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `p(a + b*x)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> RatPoly {
        let lin = RatPoly::new(vec![a.clone(), b.clone()]);
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &RatPoly::constant(c.clone());
        }
        acc
    }

    /// Even and odd parts: `p(t) = e(t^2) + t*o(t^2)`.
    pub fn even_odd(&self) -> (RatPoly, RatPoly) {
        let even = self.coeffs.iter().step_by(2).cloned().collect();
        let odd = self.coeffs.iter().skip(1).step_by(2).cloned().collect();
        (RatPoly::new(even), RatPoly::new(odd))
    }

    /// Substitutes `t -> t^2`.
    pub fn spread_squares(&self) -> RatPoly {
        let mut v = vec![Rational::zero(); 2 * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[2 * k] = c.clone();
        }
        RatPoly::new(v)
    }

    /// Quotient and remainder over the rationals.
    pub fn div_rem(&self, rhs: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        if rhs.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rem = self.coeffs.clone();
        let dr = rhs.degree();
        let lead = rhs.leading();
        if rem.len() <= dr {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dr];
        for k in (dr..rem.len()).rev() {
            let c = &rem[k] / &lead;
            if !c.is_zero() {
                for (j, rc) in rhs.coeffs.iter().enumerate() {
                    let idx = k - dr + j;
                    rem[idx] = &rem[idx] - &c * rc;
                }
            }
            quot[k - dr] = c;
        }
        rem.truncate(dr);
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    /// Integer coefficients with content 1 and positive leading coefficient,
    /// proportional to `self`.
    pub fn primitive_int(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sgn = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sgn).collect()
    }

    /// Monic gcd over the rationals.
    pub fn gcd(&self, rhs: &RatPoly) -> Result<RatPoly> {
        let mut a = RatPoly::from_ints(&self.primitive_int());
        let mut b = RatPoly::from_ints(&rhs.primitive_int());
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = RatPoly::from_ints(&r.primitive_int());
        }
        let lead = a.leading();
        Ok(a.scale(&lead.recip()))
    }

    /// `self / gcd(self, self')`, as a primitive integer polynomial.
    pub fn squarefree_part(&self) -> Result<RatPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let prim = self.primitive_int();
        if prim.len() <= 2 || certified_squarefree(&prim) {
            return Ok(RatPoly::from_ints(&prim));
        }
        let g = self.gcd(&self.derivative())?;
        let (q, _) = self.div_rem(&g)?;
        Ok(RatPoly::from_ints(&q.primitive_int()))
    }
}

const MODULI: [u64; 3] = [2_305_843_009_213_693_951, 1_000_000_007, 998_244_353];

fn mod_poly(p: &[BigInt], m: u64) -> Vec<u64> {
    let mb = BigInt::from(m);
    p.iter()
        .map(|c| {
            let r = c.mod_floor(&mb);
            u64::try_from(r).unwrap()
        })
        .collect()
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of gcd(a, b) over GF(m), for prime `m`.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> usize {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let inv = powmod(*b.last().unwrap(), m - 2, m);
        while a.len() >= b.len() {
            let c = mulmod(*a.last().unwrap(), inv, m);
            let shift = a.len() - b.len();
            for (j, bc) in b.iter().enumerate() {
                let t = mulmod(c, *bc, m);
                a[shift + j] = (a[shift + j] + m - t) % m;
            }
            trim_mod(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True if `gcd(p, p') = 1` is certified modulo some prime not dividing the
/// leading coefficient. False means "unknown", not "not squarefree".
fn certified_squarefree(p: &[BigInt]) -> bool {
    let n = p.len() - 1;
    for &m in &MODULI {
        let pm = mod_poly(p, m);
        if pm[n] == 0 || (n as u64) % m == 0 {
            continue;
        }
        let dm: Vec<u64> = (1..=n).map(|k| mulmod(pm[k], k as u64 % m, m)).collect();
        if gcd_degree_mod(pm, dm, m) == 0 {
            return true;
        }
    }
    false
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RatPoly::new(v)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

fn fmt_terms<T, F>(f: &mut fmt::Formatter<'_>, coeffs: &[T], var: &str, show: F) -> fmt::Result
where
    F: Fn(&T) -> Option<String>,
{
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        let Some(s) = show(c) else { continue };
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match k {
            0 => write!(f, "{s}")?,
            1 => write!(f, "({s})*{var}")?,
            _ => write!(f, "({s})*{var}^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.coeffs, "t", |c| (!c.is_zero()).then(|| super::format_rational(c)))
    }
}

/// Name of the indeterminate of a [`Poly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    Z,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::T => "t",
            Var::Z => "z",
        })
    }
}

/// Polynomial with coefficients in `Q(sqrt p, sqrt q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<QuadExtValue>,
    var: Var,
}

impl Poly {
    pub fn new(mut coeffs: Vec<QuadExtValue>, var: Var) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, var }
    }

    pub fn from_rat(p: &RatPoly, var: Var) -> Poly {
        Poly::new(p.coeffs().iter().cloned().map(QuadExtValue::rational).collect(), var)
    }

    /// `a(t) + sqrt(m) * b(t)`.
    pub fn from_parts(a: &RatPoly, b: &RatPoly, m: u64, var: Var) -> Poly {
        let n = a.coeffs().len().max(b.coeffs().len());
        let coeffs = (0..n).map(|k| QuadExtValue::surd(a.coeff(k), b.coeff(k), m)).collect();
        Poly::new(coeffs, var)
    }

    pub fn coeffs(&self) -> &[QuadExtValue] {
        &self.coeffs
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn checked_add(&self, rhs: &Poly) -> Result<Poly> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = QuadExtValue::zero();
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).unwrap_or(&zero);
            let b = rhs.coeffs.get(k).unwrap_or(&zero);
            v.push(a.checked_add(b)?);
        }
        Ok(Poly::new(v, self.var))
    }

    pub fn checked_sub(&self, rhs: &Poly) -> Result<Poly> {
        let neg = Poly { coeffs: rhs.coeffs.iter().map(|c| -c).collect(), var: rhs.var };
        self.checked_add(&neg)
    }

    pub fn eval_rational(&self, t: &Rational) -> Result<QuadExtValue> {
        let mut acc = QuadExtValue::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(t).checked_add(c)?;
        }
        Ok(acc)
    }

    pub fn sign_at(&self, t: &Rational) -> Result<Sign> {
        Ok(self.eval_rational(t)?.sign())
    }

    pub fn eval_interval(&self, t: &DyadicInterval) -> DyadicInterval {
        let p = t.precision();
        let mut acc = DyadicInterval::from_i64(0, p);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + &c.to_interval(p);
        }
        acc
    }

    /// Rational parts `(a, b, m1, c, m2)` with `self = a + sqrt(m1) b + sqrt(m2) c`.
    pub fn split(&self) -> Result<(RatPoly, RatPoly, u64, RatPoly, u64)> {
        let mut rads: Vec<u64> = Vec::new();
        for c in &self.coeffs {
            for (coef, m) in [(c.coeff_d(), c.radicand_d()), (c.coeff_d1(), c.radicand_d1())] {
                if !coef.is_zero() && !rads.contains(&m) {
                    rads.push(m);
                }
            }
        }
        if rads.len() > 2 {
            return Err(Error::TooManyRadicals);
        }
        rads.sort_unstable();
        let m1 = rads.first().copied().unwrap_or(1);
        let m2 = rads.get(1).copied().unwrap_or(1);
        let part = |m: u64| -> RatPoly {
            RatPoly::new(
                self.coeffs
                    .iter()
                    .map(|c| {
                        if c.radicand_d() == m && !c.coeff_d().is_zero() {
                            c.coeff_d().clone()
                        } else if c.radicand_d1() == m && !c.coeff_d1().is_zero() {
                            c.coeff_d1().clone()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect(),
            )
        };
        let a = RatPoly::new(self.coeffs.iter().map(|c| c.base().clone()).collect());
        let b = if m1 > 1 { part(m1) } else { RatPoly::zero() };
        let c = if m2 > 1 { part(m2) } else { RatPoly::zero() };
        Ok((a, b, m1, c, m2))
    }

    /// Product of all conjugates: a rational polynomial vanishing at every
    /// root of `self` (and possibly at roots of its conjugates).
    pub fn norm(&self) -> Result<RatPoly> {
        let (a, b, m1, c, m2) = self.split()?;
        let q = |m: u64| Rational::from_integer(BigInt::from(m));
        if b.is_zero() && c.is_zero() {
            return Ok(a);
        }
        if c.is_zero() {
            return Ok(&(&a * &a) - &(&b * &b).scale(&q(m1)));
        }
        if b.is_zero() {
            return Ok(&(&a * &a) - &(&c * &c).scale(&q(m2)));
        }
        let s = &(&(&a * &a) + &(&b * &b).scale(&q(m1))) - &(&c * &c).scale(&q(m2));
        let ab = &a * &b;
        Ok(&(&s * &s) - &(&ab * &ab).scale(&q(4 * m1)))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.var.to_string();
        fmt_terms(f, &self.coeffs, &var, |c| (!c.is_zero()).then(|| c.to_string()))
    }
}
