//! Exact and enclosed numbers as fixed-width decimal strings.

use cube_sections::numeric::{format_decimal, format_rational, Rounding};
use cube_sections::{DyadicInterval, IsolatingInterval, QuadExtValue, Rational};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy)]
pub struct Digits {
    pub digits: usize,
    pub bits: u32,
}

impl Digits {
    pub fn down(&self, q: &Rational) -> String {
        format_decimal(q, self.digits, Rounding::Down)
    }

    pub fn up(&self, q: &Rational) -> String {
        format_decimal(q, self.digits, Rounding::Up)
    }

    /// Outward-rounded `{lo, hi}`.
    pub fn bounds(&self, lo: &Rational, hi: &Rational) -> Value {
        json!({ "lo": self.down(lo), "hi": self.up(hi) })
    }

    pub fn interval(&self, iv: &DyadicInterval) -> Value {
        self.bounds(&iv.lo_rational(), &iv.hi_rational())
    }

    pub fn isolating(&self, iv: &IsolatingInterval) -> Value {
        self.bounds(&iv.lo, &iv.hi)
    }

    pub fn float(&self, x: f64) -> String {
        format!("{x:.*e}", self.digits)
    }

    /// `{base, sqrt_coeff, radicand, decimal_lo, decimal_hi}` plus a readable
    /// form; the second radical appears only when present.
    pub fn exact(&self, v: &QuadExtValue) -> Value {
        let iv = v.to_interval(self.bits);
        let (lo, hi) = match v.as_rational() {
            Some(q) => (self.down(q), self.up(q)),
            None => (self.down(&iv.lo_rational()), self.up(&iv.hi_rational())),
        };
        let mut out = json!({
            "display": display(v),
            "base": format_rational(v.base()),
            "sqrt_coeff": format_rational(v.coeff_d()),
            "radicand": v.radicand_d(),
        });
        let map = out.as_object_mut().expect("object");
        if !v.coeff_d1().is_zero() {
            map.insert("sqrt_coeff_2".into(), json!(format_rational(v.coeff_d1())));
            map.insert("radicand_2".into(), json!(v.radicand_d1()));
        }
        map.insert("decimal_lo".into(), json!(lo));
        map.insert("decimal_hi".into(), json!(hi));
        out
    }
}

/// `3√3/4`, `√2 − 1/2`: surds first, then the rational part.
pub fn display(v: &QuadExtValue) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    for (c, m) in [(v.coeff_d(), v.radicand_d()), (v.coeff_d1(), v.radicand_d1())] {
        if c.is_zero() {
            continue;
        }
        let a = c.abs();
        let num = if a.numer().is_one() { String::new() } else { a.numer().to_string() };
        let den = if a.denom().is_one() { String::new() } else { format!("/{}", a.denom()) };
        terms.push((c.is_negative(), format!("{num}√{m}{den}")));
    }
    if !v.base().is_zero() {
        terms.push((v.base().is_negative(), format_rational(&v.base().abs())));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('−'),
            (0, false) => {}
            (_, true) => s.push_str(" − "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(body);
    }
    s
}
