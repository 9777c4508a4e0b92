//! Local extremality of diagonal sections through the `r`/`s` criterion.
//!
//! The signs of the criterion integrals equal the signs of two finite sums
//! in `z = n/2 - t sqrt(n)`, evaluated here exactly in `Q(sqrt n)`. With
//! `t = p/q` and `w = 2q(z - i)`, every summand becomes an element of
//! `Z[sqrt n]` after multiplying by a positive constant, so the sums are
//! accumulated as integer pairs and divided once at the end.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::asymptotics::{quartic_sign, threshold, Threshold, ThresholdKind};
use crate::error::{Error, Result};
use crate::numeric::{floor_surd, int, isolate_real_roots, rat, IsolatingInterval, QuadExtValue, RatPoly, Rational, Sign};
use crate::sections::binomial_row;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    StrictLocalMax,
    StrictLocalMin,
    NotExtremal,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::StrictLocalMax => "StrictLocalMax",
            Verdict::StrictLocalMin => "StrictLocalMin",
            Verdict::NotExtremal => "NotExtremal",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictMethod {
    ExplicitSum,
    /// Filled in from the large-`n` theorem; no sum was evaluated.
    ByTheorem,
}

impl VerdictMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictMethod::ExplicitSum => "ExplicitSum",
            VerdictMethod::ByTheorem => "ByTheorem",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalityVerdict {
    pub n: u32,
    pub d: u32,
    pub t: Rational,
    pub r_sign: Sign,
    pub s_sign: Sign,
    pub verdict: Verdict,
    pub method: VerdictMethod,
}

/// `x + y sqrt(n)` with integer parts.
#[derive(Clone, Debug)]
struct ZSqrt {
    x: BigInt,
    y: BigInt,
}

impl ZSqrt {
    fn mul(&self, o: &ZSqrt, n: &BigInt) -> ZSqrt {
        ZSqrt { x: &self.x * &o.x + n * &self.y * &o.y, y: &self.x * &o.y + &self.y * &o.x }
    }

    fn pow(&self, mut e: u32, n: &BigInt) -> ZSqrt {
        let mut acc = ZSqrt { x: BigInt::one(), y: BigInt::zero() };
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, n);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, n);
            }
        }
        acc
    }
}

#[derive(Clone, Copy)]
enum SumKind {
    R,
    S,
}

/// The bracket times its positive normalizer, as `c0 + c1 w + c2 w^2`, and
/// that normalizer divided by `(2q)^2`.
fn bracket(kind: SumKind, n: i64, i: i64, two_q: &BigInt) -> ([BigInt; 3], BigInt) {
    let tq2 = two_q * two_q;
    match kind {
        // 2(n-1)(n-2)(2q)^2 [i(n-i)/(n-1) - (n/2-i)(z-i)/(n-2) + 2n(z-i)^2/((n-1)(n-2))]
        SumKind::R => (
            [
                BigInt::from(2 * i * (n - i) * (n - 2)) * &tq2,
                -BigInt::from((n - 2 * i) * (n - 1)) * two_q,
                BigInt::from(4 * n),
            ],
            BigInt::from(2 * (n - 1) * (n - 2)),
        ),
        // 12(n-1)(n-2)(2q)^2 [n/12 - (n/2-i)(z-i)/(n-2) + n(z-i)^2/((n-1)(n-2))]
        SumKind::S => (
            [
                BigInt::from(n * (n - 1) * (n - 2)) * &tq2,
                -BigInt::from(6 * (n - 2 * i) * (n - 1)) * two_q,
                BigInt::from(12 * n),
            ],
            BigInt::from(12 * (n - 1) * (n - 2)),
        ),
    }
}

fn criterion_sum(kind: SumKind, n: u32, t: &Rational) -> Result<QuadExtValue> {
    if n < 4 {
        return Err(Error::FaceTooSmall { n });
    }
    let t = t.abs();
    let nn = BigInt::from(n);
    let (p, q) = (t.numer().clone(), t.denom().clone());
    let two_q = &q * 2;
    // z = n/2 - t sqrt(n); empty sum when z < 0
    let top = floor_surd(&rat(n as i64, 2), &-t.clone(), n as u64);
    if top.is_negative() {
        return Ok(QuadExtValue::zero());
    }
    let top = top.to_i64().expect("top <= n/2").min(n as i64);
    let binom = binomial_row(n);
    let terms: Vec<ZSqrt> = (0..=top)
        .into_par_iter()
        .map(|i| {
            // w = 2q(z - i) = q(n - 2i) - 2p sqrt(n)
            let y: BigInt = -(&p * BigInt::from(2));
            let w = ZSqrt { x: &q * BigInt::from(n as i64 - 2 * i), y };
            let ([c0, c1, c2], _) = bracket(kind, n as i64, i, &two_q);
            let w2 = w.mul(&w, &nn);
            let br = ZSqrt { x: c0 + &c1 * &w.x + &c2 * &w2.x, y: &c1 * &w.y + &c2 * &w2.y };
            let mut v = br.mul(&w.pow(n - 3, &nn), &nn);
            let c = &binom[i as usize];
            if i % 2 == 1 {
                v.x = -v.x * c;
                v.y = -v.y * c;
            } else {
                v.x *= c;
                v.y *= c;
            }
            v
        })
        .collect();
    let (mut x, mut y) = (BigInt::zero(), BigInt::zero());
    for v in terms {
        x += v.x;
        y += v.y;
    }
    let (_, norm) = bracket(kind, n as i64, 0, &two_q);
    // the scaled sum is norm * (2q)^{n-1} times the true sum
    let scale = Rational::from_integer(norm * num_traits::pow(two_q, n as usize - 1));
    Ok(QuadExtValue::surd(Rational::from_integer(x) / &scale, Rational::from_integer(y) / &scale, n as u64))
}

/// Exact value of the sum whose sign is the sign of `r`.
pub fn r_sum(n: u32, t: &Rational) -> Result<QuadExtValue> {
    criterion_sum(SumKind::R, n, t)
}

/// Exact value of the sum whose sign is the sign of `s`.
pub fn s_sum(n: u32, t: &Rational) -> Result<QuadExtValue> {
    criterion_sum(SumKind::S, n, t)
}

/// The criterion table. Zero signs give no verdict.
pub fn verdict_from_signs(n: u32, d: u32, r: Sign, s: Sign) -> Verdict {
    use Sign::*;
    if n == d {
        return match r {
            Negative => Verdict::StrictLocalMax,
            Positive => Verdict::StrictLocalMin,
            Zero => Verdict::Inconclusive,
        };
    }
    match (r, s) {
        (Zero, _) | (_, Zero) => Verdict::Inconclusive,
        (Negative, Negative) => Verdict::StrictLocalMax,
        (Positive, Positive) => Verdict::StrictLocalMin,
        _ => Verdict::NotExtremal,
    }
}

/// Verdict at the diagonal of an `n`-face of `[0,1]^d`. The sums depend on
/// `(n, t)` only; `d` matters just through `n == d`.
pub fn classify(n: u32, d: u32, t: &Rational) -> Result<ExtremalityVerdict> {
    if n < 4 {
        return Err(Error::FaceTooSmall { n });
    }
    if n > d {
        return Err(Error::FaceTooLarge { n, d });
    }
    let r_sign = r_sum(n, t)?.sign();
    let s_sign = s_sum(n, t)?.sign();
    Ok(ExtremalityVerdict {
        n,
        d,
        t: t.clone(),
        r_sign,
        s_sign,
        verdict: verdict_from_signs(n, d, r_sign, s_sign),
        method: VerdictMethod::ExplicitSum,
    })
}

/// Signs of `r` and `s` for `n` past the threshold: `r` opposes the quartic,
/// `s` follows it.
pub fn tail_signs(t: &Rational) -> (Sign, Sign) {
    let q = quartic_sign(&t.abs());
    (-q, q)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub t: Rational,
    pub threshold: Threshold,
    /// Two entries per `n`: `d = n` (cube diagonal) and `d = n + 1`, standing
    /// for every proper face since the verdict does not depend on `d`.
    pub verdicts: Vec<ExtremalityVerdict>,
}

impl SweepReport {
    /// Largest `n` decided by explicit sums.
    pub fn explicit_up_to(&self) -> u32 {
        self.verdicts
            .iter()
            .filter(|v| v.method == VerdictMethod::ExplicitSum)
            .map(|v| v.n)
            .max()
            .unwrap_or(0)
    }
}

/// Verdicts for `4 <= n <= n_max`: explicit sums up to the threshold
/// ceiling, the large-`n` theorem beyond it.
pub fn sweep_classify(t: &Rational, n_max: u32) -> Result<SweepReport> {
    let th = threshold(ThresholdKind::ExtremalityN, t)?;
    let cut = th.ceiling.min(n_max as u64) as u32;
    let explicit: Vec<Result<(Sign, Sign)>> = (4..=cut.max(3))
        .into_par_iter()
        .map(|n| Ok((r_sum(n, t)?.sign(), s_sum(n, t)?.sign())))
        .collect();
    let mut verdicts = Vec::new();
    let mut push = |n: u32, r: Sign, s: Sign, method: VerdictMethod| {
        for d in [n, n + 1] {
            verdicts.push(ExtremalityVerdict {
                n,
                d,
                t: t.clone(),
                r_sign: r,
                s_sign: s,
                verdict: verdict_from_signs(n, d, r, s),
                method,
            });
        }
    };
    for (k, res) in explicit.into_iter().enumerate() {
        let (r, s) = res?;
        push(4 + k as u32, r, s, VerdictMethod::ExplicitSum);
    }
    let (r, s) = tail_signs(t);
    for n in (cut + 1).max(4)..=n_max {
        push(n, r, s, VerdictMethod::ByTheorem);
    }
    Ok(SweepReport { t: t.clone(), threshold: th, verdicts })
}

/// `(7 - (17 - 12 sqrt 2)^{1/3} - (17 + 12 sqrt 2)^{1/3})/24`: with
/// `s = 7 - 24t`, the two cube roots multiply to one, so
/// `s^3 - 3s - 34 = 0`. Returns that cubic in `t`.
pub fn cube_root_constant_poly() -> RatPoly {
    let s = RatPoly::from_i64(&[7, -24]);
    &(&s.pow(3) - &s.scale(&int(3))) - &RatPoly::from_i64(&[34])
}

/// Certified bracket of the constant, about `0.14385`.
pub fn cube_root_constant() -> Result<IsolatingInterval> {
    let p = cube_root_constant_poly();
    let roots = isolate_real_roots(&p, (&int(0), &rat(1, 2)))?;
    let iv = roots.into_iter().next().ok_or(Error::NoSignChange { lo: "0".into(), hi: "1/2".into() })?;
    crate::numeric::refine(&iv, |x| p.sign_at(x), &crate::numeric::default_width())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_vanishes_for_the_square_at_its_center() {
        assert!(s_sum(4, &int(0)).unwrap().is_zero());
        assert_eq!(r_sum(5, &int(0)).unwrap().sign(), Sign::Negative);
        let s5 = s_sum(5, &int(0)).unwrap().sign();
        assert_eq!(s5, Sign::Positive);
        assert_eq!(r_sum(4, &rat(3, 10)).unwrap().sign(), Sign::Positive);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(5, 5, &int(0)).unwrap().verdict, Verdict::StrictLocalMax);
        assert_eq!(classify(4, 4, &rat(3, 10)).unwrap().verdict, Verdict::StrictLocalMin);
        assert_eq!(classify(5, 9, &rat(3, 10)).unwrap().verdict, Verdict::NotExtremal);
        assert_eq!(classify(4, 5, &int(0)).unwrap().verdict, Verdict::Inconclusive);
        assert_eq!(classify(3, 5, &int(0)), Err(Error::FaceTooSmall { n: 3 }));
        assert_eq!(classify(6, 5, &int(0)), Err(Error::FaceTooLarge { n: 6, d: 5 }));
    }

    #[test]
    fn empty_sums_past_the_vertex() {
        assert!(r_sum(4, &int(2)).unwrap().is_zero());
    }

    #[test]
    fn cube_root_constant_bracket() {
        let c = cube_root_constant().unwrap();
        assert!(c.strictly_inside(&rat(14384, 100000), &rat(14386, 100000)));
        let exact = (7.0 - (17.0 - 12.0 * 2f64.sqrt()).cbrt() - (17.0 + 12.0 * 2f64.sqrt()).cbrt()) / 24.0;
        assert!((c.mid_f64() - exact).abs() < 1e-8);
    }

    #[test]
    fn sweep_uses_the_theorem_past_the_threshold() {
        let rep = sweep_classify(&rat(1, 10), 130).unwrap();
        assert_eq!(rep.threshold.ceiling, 124);
        assert_eq!(rep.explicit_up_to(), 124);
        let last = rep.verdicts.last().unwrap();
        assert_eq!(last.method, VerdictMethod::ByTheorem);
        assert_eq!(last.verdict, Verdict::NotExtremal);
    }
}
