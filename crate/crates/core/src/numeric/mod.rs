//! Exact and certified arithmetic: rationals, outward-rounded dyadic
//! intervals, the fields Q(sqrt p, sqrt q), polynomials and real-root
//! isolation.

mod dyadic;
mod poly;
mod quadext;
mod roots;

pub use dyadic::{interval_exp, interval_log, interval_sqrt, pi, Dyadic, DyadicInterval, Rounding};
pub use poly::{Poly, RatPoly, Var};
pub use quadext::{squarefree_split, QuadExtValue};
pub use roots::{
    certified_sign, default_width, isolate_real_roots, isolate_roots, isolate_roots_refined, isolate_with_norm, refine,
    refine_certified, IsolatingInterval, MAX_BITS, MAX_SUBDIVISIONS, START_BITS,
};

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = BigRational;

/// Exact sign of a real quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(x: &T) -> Sign {
        if x.is_positive() {
            Sign::Positive
        } else if x.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn of_bigint(x: &BigInt) -> Sign {
        match x.sign() {
            BigSign::Plus => Sign::Positive,
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.as_i8() * rhs.as_i8() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        })
    }
}

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses a fraction `p/q` or a finite decimal such as `-0.125`.
///
/// Floating-point notation (`1e-3`, `inf`) is rejected so that every input
/// has an exact meaning.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = || Error::Parse { input: input.to_string() };
    let s = input.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = parse_int(num.trim()).ok_or_else(err)?;
        let d: BigInt = parse_int(den.trim()).ok_or_else(err)?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(whole) || !all_digits(frac) {
        return Err(err());
    }
    let digits = format!("{whole}{frac}");
    let mantissa: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err())?
    };
    let scale = num_traits::pow(BigInt::from(10u32), frac.len());
    let q = Rational::new(mantissa, scale);
    Ok(if neg { -q } else { q })
}

fn parse_int(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal string of `q` with exactly `digits` fractional digits, rounded in
/// the given direction.
pub fn format_decimal(q: &Rational, digits: usize, dir: Rounding) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = q * Rational::from_integer(scale.clone());
    let n = match dir {
        Rounding::Down => scaled.floor().to_integer(),
        Rounding::Up => scaled.ceil().to_integer(),
    };
    let neg = n.is_negative();
    let abs = n.abs();
    let (whole, frac) = abs.div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// Nearest f64 to a rational. Exact-value decisions never go through this.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Huge numerators/denominators: rescale by powers of two first.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = nb - db;
    let scaled = if shift > 0 {
        q / Rational::from_integer(BigInt::one() << shift as usize)
    } else {
        q * Rational::from_integer(BigInt::one() << (-shift) as usize)
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
}

/// `floor(a + b*sqrt(m))`, exactly.
pub fn floor_surd(a: &Rational, b: &Rational, m: u64) -> BigInt {
    let approx = rational_to_f64(a) + rational_to_f64(b) * (m as f64).sqrt();
    let mut k = BigInt::from(approx.floor() as i64);
    // value - k >= 0 and value - (k+1) < 0
    let value = |k: &BigInt| QuadExtValue::surd(a - Rational::from_integer(k.clone()), b.clone(), m);
    while value(&k).sign() == Sign::Negative {
        k -= 1;
    }
    loop {
        let next = &k + 1;
        if value(&next).sign() == Sign::Negative {
            break;
        }
        k = next;
    }
    k
}

/// `ceil(a + b*sqrt(m))`, exactly.
pub fn ceil_surd(a: &Rational, b: &Rational, m: u64) -> BigInt {
    -floor_surd(&-a, &-b, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions_exactly() {
        assert_eq!(parse_rational("0.3").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("7/21").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("2").unwrap(), int(2));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        for bad in ["", "1e-3", "inf", "1/0", "0.1.2", "abc", "-", "3/"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn decimal_formatting_rounds_outward() {
        let third = rat(1, 3);
        assert_eq!(format_decimal(&third, 4, Rounding::Down), "0.3333");
        assert_eq!(format_decimal(&third, 4, Rounding::Up), "0.3334");
        assert_eq!(format_decimal(&-third, 2, Rounding::Down), "-0.34");
        assert_eq!(format_decimal(&int(5), 0, Rounding::Up), "5");
    }

    #[test]
    fn floor_of_surds() {
        // 3/2 - sqrt(3)/10 = 1.3267...
        assert_eq!(floor_surd(&rat(3, 2), &rat(-1, 10), 3), BigInt::from(1));
        // exactly an integer: 2 - 0*sqrt(2)
        assert_eq!(floor_surd(&int(2), &int(0), 2), BigInt::from(2));
        assert_eq!(ceil_surd(&int(0), &int(1), 2), BigInt::from(2));
        assert_eq!(floor_surd(&int(0), &int(-1), 2), BigInt::from(-2));
    }

    #[test]
    fn huge_rationals_convert_to_f64() {
        let big = BigInt::one() << 3000usize;
        let q = Rational::new(big.clone() * 3, big * 2);
        assert_eq!(rational_to_f64(&q), 1.5);
    }
}
