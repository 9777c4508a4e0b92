use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{format_decimal, DyadicInterval, Rational, Rounding, Sign};
use crate::error::{Error, Result};

/// Splits `m = outside^2 * core` with `core` squarefree.
pub fn squarefree_split(m: u64) -> (u64, u64) {
    assert!(m > 0, "radicand must be positive");
    let mut core = m;
    let mut outside = 1u64;
    let mut p = 2u64;
    while p * p <= core {
        while core % (p * p) == 0 {
            core /= p * p;
            outside *= p;
        }
        p += 1;
    }
    (outside, core)
}

/// `base + coeff_d*sqrt(radicand_d) + coeff_d1*sqrt(radicand_d1)`.
///
/// Canonical form: radicands are squarefree and distinct, a zero coefficient
/// carries radicand 1, the smaller radicand sits in the first slot, and
/// perfect squares are folded into `base`. Equality of canonical values is
/// therefore structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExtValue {
    base: Rational,
    coeff_d: Rational,
    radicand_d: u64,
    coeff_d1: Rational,
    radicand_d1: u64,
}

type Terms = BTreeMap<u64, Rational>;

impl QuadExtValue {
    pub fn new(base: Rational, coeff_d: Rational, radicand_d: u64, coeff_d1: Rational, radicand_d1: u64) -> QuadExtValue {
        let mut terms = Terms::new();
        push(&mut terms, base, 1);
        push(&mut terms, coeff_d, radicand_d);
        push(&mut terms, coeff_d1, radicand_d1);
        from_terms(terms).expect("at most two radicands")
    }

    pub fn zero() -> QuadExtValue {
        QuadExtValue::rational(Rational::zero())
    }

    pub fn rational(q: Rational) -> QuadExtValue {
        QuadExtValue {
            base: q,
            coeff_d: Rational::zero(),
            radicand_d: 1,
            coeff_d1: Rational::zero(),
            radicand_d1: 1,
        }
    }

    /// `a + b*sqrt(m)`.
    pub fn surd(a: Rational, b: Rational, m: u64) -> QuadExtValue {
        QuadExtValue::new(a, b, m, Rational::zero(), 1)
    }

    /// `sqrt(m)`.
    pub fn sqrt(m: u64) -> QuadExtValue {
        QuadExtValue::surd(Rational::zero(), Rational::one(), m)
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn coeff_d(&self) -> &Rational {
        &self.coeff_d
    }

    pub fn radicand_d(&self) -> u64 {
        self.radicand_d
    }

    pub fn coeff_d1(&self) -> &Rational {
        &self.coeff_d1
    }

    pub fn radicand_d1(&self) -> u64 {
        self.radicand_d1
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.coeff_d.is_zero() && self.coeff_d1.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.coeff_d.is_zero() && self.coeff_d1.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.base)
    }

    fn terms(&self) -> Terms {
        let mut t = Terms::new();
        push(&mut t, self.base.clone(), 1);
        push(&mut t, self.coeff_d.clone(), self.radicand_d);
        push(&mut t, self.coeff_d1.clone(), self.radicand_d1);
        t
    }

    /// Exact sign, decided by comparing squares; no floating point.
    pub fn sign(&self) -> Sign {
        let b = &self.base;
        match (self.coeff_d.is_zero(), self.coeff_d1.is_zero()) {
            (true, true) => Sign::of(b),
            (false, true) => sign2(b, &self.coeff_d, self.radicand_d),
            (true, false) => sign2(b, &self.coeff_d1, self.radicand_d1),
            (false, false) => sign3(b, &self.coeff_d, self.radicand_d, &self.coeff_d1, self.radicand_d1),
        }
    }

    pub fn checked_add(&self, rhs: &QuadExtValue) -> Result<QuadExtValue> {
        let mut t = self.terms();
        for (m, c) in rhs.terms() {
            push(&mut t, c, m);
        }
        from_terms(t)
    }

    pub fn checked_sub(&self, rhs: &QuadExtValue) -> Result<QuadExtValue> {
        self.checked_add(&-rhs)
    }

    /// Product; fails only if the result needs three distinct radicands.
    pub fn checked_mul(&self, rhs: &QuadExtValue) -> Result<QuadExtValue> {
        let mut t = Terms::new();
        for (ma, ca) in self.terms() {
            for (mb, cb) in rhs.terms() {
                let (g, rest) = surd_product(ma, mb);
                push(&mut t, &ca * &cb * Rational::from_integer(BigInt::from(g)), rest);
            }
        }
        from_terms(t)
    }

    pub fn scale(&self, q: &Rational) -> QuadExtValue {
        QuadExtValue {
            base: &self.base * q,
            coeff_d: &self.coeff_d * q,
            radicand_d: if q.is_zero() { 1 } else { self.radicand_d },
            coeff_d1: &self.coeff_d1 * q,
            radicand_d1: if q.is_zero() { 1 } else { self.radicand_d1 },
        }
    }

    /// Exact comparison via the sign of the difference.
    pub fn cmp_exact(&self, rhs: &QuadExtValue) -> Result<std::cmp::Ordering> {
        Ok(match self.checked_sub(rhs)?.sign() {
            Sign::Negative => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Positive => std::cmp::Ordering::Greater,
        })
    }

    pub fn to_interval(&self, prec: u32) -> DyadicInterval {
        let p = prec + 8;
        let mut acc = DyadicInterval::from_rational(&self.base, p);
        for (c, m) in [(&self.coeff_d, self.radicand_d), (&self.coeff_d1, self.radicand_d1)] {
            if !c.is_zero() {
                let r = DyadicInterval::from_i64(m as i64, p).sqrt().expect("positive radicand");
                acc = &acc + &r.scale_rational(c);
            }
        }
        acc.with_precision(prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_interval(64).mid_f64()
    }

    /// Decimal strings bracketing the value, `digits` after the point.
    pub fn decimal_bounds(&self, digits: usize) -> (String, String) {
        if let Some(q) = self.as_rational() {
            return (format_decimal(q, digits, Rounding::Down), format_decimal(q, digits, Rounding::Up));
        }
        let bits = (digits as f64 * 3.33) as u32 + 32;
        let iv = self.to_interval(bits);
        (
            format_decimal(&iv.lo_rational(), digits, Rounding::Down),
            format_decimal(&iv.hi_rational(), digits, Rounding::Up),
        )
    }
}

fn push(terms: &mut Terms, c: Rational, m: u64) {
    if c.is_zero() {
        return;
    }
    let (out, core) = squarefree_split(m);
    let c = c * Rational::from_integer(BigInt::from(out));
    let slot = terms.entry(core).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        terms.remove(&core);
    }
}

/// `sqrt(a)*sqrt(b) = g*sqrt(rest)` for squarefree `a`, `b`.
fn surd_product(a: u64, b: u64) -> (u64, u64) {
    let g = num_integer::gcd(a, b);
    (g, (a / g) * (b / g))
}

fn from_terms(mut t: Terms) -> Result<QuadExtValue> {
    let base = t.remove(&1).unwrap_or_else(Rational::zero);
    if t.len() > 2 {
        return Err(Error::TooManyRadicals);
    }
    let mut it = t.into_iter();
    let (radicand_d, coeff_d) = it.next().unwrap_or((1, Rational::zero()));
    let (radicand_d1, coeff_d1) = it.next().unwrap_or((1, Rational::zero()));
    Ok(QuadExtValue { base, coeff_d, radicand_d, coeff_d1, radicand_d1 })
}

/// Sign of `a + b*sqrt(m)` for non-square `m`.
fn sign2(a: &Rational, b: &Rational, m: u64) -> Sign {
    let (sa, sb) = (Sign::of(a), Sign::of(b));
    if sb.is_zero() || sa == sb {
        return sa;
    }
    if sa.is_zero() {
        return sb;
    }
    let rhs = b * b * Rational::from_integer(BigInt::from(m));
    if a * a > rhs {
        sa
    } else {
        sb
    }
}

/// Sign of `a + b*sqrt(p) + c*sqrt(q)` with distinct squarefree `p`, `q`.
fn sign3(a: &Rational, b: &Rational, p: u64, c: &Rational, q: u64) -> Sign {
    let sx = sign2(a, b, p);
    let sy = Sign::of(c);
    if sy.is_zero() || sx == sy {
        return sx;
    }
    if sx.is_zero() {
        return sy;
    }
    // sign(X + Y) = sign(X) * sign(X^2 - Y^2) when X, Y have opposite signs
    let pr = Rational::from_integer(BigInt::from(p));
    let qr = Rational::from_integer(BigInt::from(q));
    let rat = a * a + b * b * &pr - c * c * &qr;
    let irr = a * b * Rational::from_integer(BigInt::from(2));
    sx * sign2(&rat, &irr, p)
}

impl Neg for &QuadExtValue {
    type Output = QuadExtValue;
    fn neg(self) -> QuadExtValue {
        QuadExtValue {
            base: -&self.base,
            coeff_d: -&self.coeff_d,
            radicand_d: self.radicand_d,
            coeff_d1: -&self.coeff_d1,
            radicand_d1: self.radicand_d1,
        }
    }
}

impl From<Rational> for QuadExtValue {
    fn from(q: Rational) -> QuadExtValue {
        QuadExtValue::rational(q)
    }
}

fn fmt_surd(c: &Rational, m: u64) -> String {
    let num = c.numer().abs();
    let den = c.denom();
    let head = if num.is_one() { String::new() } else { num.to_string() };
    if den.is_one() {
        format!("{head}√{m}")
    } else {
        format!("{head}√{m}/{den}")
    }
}

/// Human-readable form such as `3√3/4` or `√2 - 1/2`.
impl fmt::Display for QuadExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (c, m) in [(&self.coeff_d, self.radicand_d), (&self.coeff_d1, self.radicand_d1)] {
            if !c.is_zero() {
                parts.push((c.is_negative(), fmt_surd(c, m)));
            }
        }
        if !self.base.is_zero() {
            parts.push((self.base.is_negative(), super::format_rational(&self.base.abs())));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (k, (neg, s)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{s}")?,
                (0, false) => write!(f, "{s}")?,
                (_, true) => write!(f, " - {s}")?,
                (_, false) => write!(f, " + {s}")?,
            }
        }
        Ok(())
    }
}
