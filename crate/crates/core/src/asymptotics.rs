//! Gaussian limit, moment multipliers, error envelopes and dimension
//! thresholds.
//!
//! `G(t) = sqrt(6/pi) e^{-6t^2}`. All polynomial parts are evaluated exactly
//! at rational `t`; rounding enters only through `e^x`, `pi` and square roots.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{
    format_rational, int, pi, rat, refine_certified, DyadicInterval, IsolatingInterval, RatPoly,
    Rational, Sign,
};

/// Working precision for certified enclosures unless stated otherwise.
pub const DEFAULT_BITS: u32 = 128;

/// Minimum dimension of the first- and second-order estimates.
pub const ESTIMATE_MIN_DIM: u32 = 136;

/// Minimum dimension of the `I_{d,4}` estimate.
pub const K4_MIN_DIM: u32 = 124;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianEstimate {
    pub t: Rational,
    pub g: DyadicInterval,
}

/// `p`, `q`, `r` of the second-order estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionPolys {
    pub p: RatPoly,
    pub q: RatPoly,
    pub r: RatPoly,
}

/// `center +- radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub center: DyadicInterval,
    pub radius: DyadicInterval,
}

impl Estimate {
    /// Certified outer bounds of `center +- radius`.
    pub fn bounds(&self) -> (f64, f64) {
        let lo = (self.center.lo() - self.radius.hi()).to_f64();
        let hi = (self.center.hi() + self.radius.hi()).to_f64();
        (lo, hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.bounds();
        lo <= x && x <= hi
    }

    pub fn contains_interval(&self, x: &DyadicInterval) -> bool {
        let lo = self.center.lo() - self.radius.hi();
        let hi = self.center.hi() + self.radius.hi();
        &lo <= x.lo() && x.hi() <= &hi
    }
}

pub fn quartic() -> RatPoly {
    RatPoly::from_i64(&[1, 0, -24, 0, 48])
}

/// Exact sign of `1 - 24t^2 + 48t^4`. Never zero at rational `t`.
pub fn quartic_sign(t: &Rational) -> Sign {
    quartic().sign_at(t)
}

pub fn correction_polys() -> CorrectionPolys {
    CorrectionPolys {
        p: RatPoly::from_i64(&[-3, 0, 72, 0, -144]),
        q: RatPoly::from_i64(&[-65, 0, -6480, 0, 96480, 0, -246528, 0, 145152]),
        r: RatPoly::from_i64(&[2, 3, 2, 3]),
    }
}

/// `sqrt(6/pi)`.
pub fn gaussian_peak(bits: u32) -> DyadicInterval {
    let p = bits + 8;
    let six = DyadicInterval::from_i64(6, p);
    six.checked_div(&pi(p)).and_then(|x| x.sqrt()).expect("pi > 0").with_precision(bits)
}

/// `e^{-6t^2}` for a `t` enclosure.
fn gauss_factor(t: &DyadicInterval) -> DyadicInterval {
    let six = DyadicInterval::from_i64(-6, t.precision());
    (&six * &t.square()).exp()
}

pub fn gaussian(t: &Rational, bits: u32) -> DyadicInterval {
    let p = bits + 8;
    let t2 = t * t * int(-6);
    let e = DyadicInterval::from_rational(&t2, p).exp();
    (&gaussian_peak(p) * &e).with_precision(bits)
}

/// `G` over an interval of `t`.
pub fn gaussian_interval(t: &DyadicInterval) -> DyadicInterval {
    &gaussian_peak(t.precision()) * &gauss_factor(t)
}

pub fn gaussian_estimate(t: &Rational) -> GaussianEstimate {
    GaussianEstimate { t: t.clone(), g: gaussian(t, DEFAULT_BITS) }
}

/// Polynomial multiplier `M_k` with `T_k(t) = M_k(t) T_0(t)`.
///
/// `M_0 = 1`, `M_1 = 6t`, `M_{k+2} = 3(k+1) M_k + 6t (-1)^{k+1} M_{k+1}`.
pub fn moment_multiplier(k: u32) -> RatPoly {
    let mut prev = RatPoly::from_i64(&[1]);
    if k == 0 {
        return prev;
    }
    let mut cur = RatPoly::from_i64(&[0, 6]);
    for j in 0..k.saturating_sub(1) {
        let sign = if j % 2 == 0 { -6 } else { 6 };
        let next = &prev.scale(&int(3 * (j as i64 + 1))) + &(&RatPoly::from_i64(&[0, sign]) * &cur);
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Debug, Clone, PartialEq)]
pub struct TMoment {
    pub k: u32,
    pub multiplier: RatPoly,
    pub value: DyadicInterval,
}

pub fn t_moment(k: u32, t: &Rational) -> TMoment {
    let multiplier = moment_multiplier(k);
    let m = DyadicInterval::from_rational(&multiplier.eval(t), DEFAULT_BITS + 8);
    let value = (&m * &gaussian(t, DEFAULT_BITS + 8)).with_precision(DEFAULT_BITS);
    TMoment { k, multiplier, value }
}

fn require_dim(d: u32, min: u32) -> Result<()> {
    if d < min {
        Err(Error::DimensionTooSmall { dim: d, min })
    } else {
        Ok(())
    }
}

/// `G(1 + p/(20d) + q/(5600 d^2)) +- r/(3 d^3)`, valid for `d >= 136`.
pub fn second_order_estimate(d: u32, t: &Rational) -> Result<Estimate> {
    require_dim(d, ESTIMATE_MIN_DIM)?;
    let t = t.abs();
    let c = correction_polys();
    let dd = int(d as i64);
    let factor = int(1) + c.p.eval(&t) / (int(20) * &dd) + c.q.eval(&t) / (int(5600) * &dd * &dd);
    let p = DEFAULT_BITS + 8;
    let center = (&gaussian(&t, p) * &DyadicInterval::from_rational(&factor, p)).with_precision(DEFAULT_BITS);
    let radius = DyadicInterval::from_rational(&(c.r.eval(&t) / (int(3) * &dd * &dd * &dd)), DEFAULT_BITS);
    Ok(Estimate { center, radius })
}

/// `G(1 + p/(20d)) +- d^{-3/2}`, valid for `d >= 136`.
pub fn first_order_estimate(d: u32, t: &Rational) -> Result<Estimate> {
    require_dim(d, ESTIMATE_MIN_DIM)?;
    let t = t.abs();
    let c = correction_polys();
    let dd = int(d as i64);
    let factor = int(1) + c.p.eval(&t) / (int(20) * &dd);
    let p = DEFAULT_BITS + 8;
    let center = (&gaussian(&t, p) * &DyadicInterval::from_rational(&factor, p)).with_precision(DEFAULT_BITS);
    let dcube = DyadicInterval::from_i64((d as i64).pow(3), p);
    let radius = dcube.sqrt()?.recip()?.with_precision(DEFAULT_BITS);
    Ok(Estimate { center, radius })
}

/// `27 G(t) (1 - 24t^2 + 48t^4) / d^2 +- (2267 + 3132t)/d^3`, the estimate of
/// `I_{d,4}(t)` valid for `d >= 124`.
pub fn k4_estimate(d: u32, t: &Rational) -> Result<Estimate> {
    require_dim(d, K4_MIN_DIM)?;
    let t = t.abs();
    let dd = int(d as i64);
    let p = DEFAULT_BITS + 8;
    let poly = quartic().eval(&t) * int(27) / (&dd * &dd);
    let center = (&gaussian(&t, p) * &DyadicInterval::from_rational(&poly, p)).with_precision(DEFAULT_BITS);
    let rad = (int(2267) + int(3132) * &t) / (&dd * &dd * &dd);
    Ok(Estimate { center, radius: DyadicInterval::from_rational(&rad, DEFAULT_BITS) })
}

/// `lim d^2 (I_{d+1}(t) - I_d(t)) = (3/20) G(t) (1 - 24t^2 + 48t^4)`.
pub fn limit_difference(t: &Rational) -> DyadicInterval {
    let p = DEFAULT_BITS + 8;
    let poly = quartic().eval(t) * rat(3, 20);
    (&gaussian(t, p) * &DyadicInterval::from_rational(&poly, p)).with_precision(DEFAULT_BITS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThresholdKind {
    /// `max{136, e^{6t^2}(12 + 10t + 7t^2 + 10t^3)/|1 - 24t^2 + 48t^4|}`
    MonotonicityDelta,
    /// `max{124, e^{6t^2}(74 + 84t)/|1 - 24t^2 + 48t^4|}`
    ExtremalityN,
}

impl ThresholdKind {
    fn floor(self) -> i64 {
        match self {
            ThresholdKind::MonotonicityDelta => 136,
            ThresholdKind::ExtremalityN => 124,
        }
    }

    fn numerator(self) -> RatPoly {
        match self {
            ThresholdKind::MonotonicityDelta => RatPoly::from_i64(&[12, 10, 7, 10]),
            ThresholdKind::ExtremalityN => RatPoly::from_i64(&[74, 84]),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Threshold {
    pub kind: ThresholdKind,
    pub value: DyadicInterval,
    /// `ceil` of the upper endpoint; loops over `d` run up to this.
    pub ceiling: u64,
}

pub fn threshold(kind: ThresholdKind, t: &Rational) -> Result<Threshold> {
    let t = t.abs();
    let qv = quartic().eval(&t);
    if qv.is_zero() {
        return Err(Error::AtSingularity { t: format_rational(&t) });
    }
    let p = DEFAULT_BITS;
    let ratio = kind.numerator().eval(&t) / qv.abs();
    let e = DyadicInterval::from_rational(&(&t * &t * int(6)), p + 8).exp();
    let raw = (&e * &DyadicInterval::from_rational(&ratio, p + 8)).with_precision(p);
    let floor = DyadicInterval::from_i64(kind.floor(), p);
    let value = if raw.hi() <= floor.lo() {
        floor
    } else if raw.lo() >= floor.hi() {
        raw
    } else {
        raw.hull(&floor)
    };
    let ceiling = value.hi_rational().ceil().to_integer().to_u64().unwrap_or(u64::MAX);
    Ok(Threshold { kind, value, ceiling })
}

/// `f64` value of a threshold, for numeric spot checks only.
pub fn threshold_f64(kind: ThresholdKind, t: f64) -> f64 {
    let q = 1.0 - 24.0 * t * t + 48.0 * t.powi(4);
    let num = kind.numerator().eval_f64(t);
    (kind.floor() as f64).max((6.0 * t * t).exp() * num / q.abs())
}

/// `(1/2) sqrt(1 - sqrt(2/3))`, the smaller root of the quartic.
pub fn gamma_minus(bits: u32) -> DyadicInterval {
    gamma(bits, false)
}

/// `(1/2) sqrt(1 + sqrt(2/3))`.
pub fn gamma_plus(bits: u32) -> DyadicInterval {
    gamma(bits, true)
}

fn gamma(bits: u32, plus: bool) -> DyadicInterval {
    let p = bits + 16;
    let s = DyadicInterval::from_rational(&rat(2, 3), p).sqrt().expect("positive");
    let one = DyadicInterval::from_i64(1, p);
    let inner = if plus { &one + &s } else { &one - &s };
    let half = DyadicInterval::from_rational(&rat(1, 2), p);
    (&half * &inner.sqrt().expect("positive")).with_precision(bits)
}

/// True if the closed range `[a, b]` contains `gamma-` or `gamma+`; decided
/// exactly by the sign of `4t^2 - 1 +- sqrt(6)/3`.
pub fn range_contains_gamma(a: &Rational, b: &Rational) -> bool {
    // the quartic changes sign exactly at gamma+-, and has no rational roots
    let (sa, sb) = (quartic_sign(a), quartic_sign(b));
    if sa != sb {
        return true;
    }
    // same sign at both ends: both roots inside is only possible if a < gamma- < gamma+ < b
    sa == Sign::Positive && below_gamma_minus(a) && above_gamma_plus(b)
}

fn below_gamma_minus(t: &Rational) -> bool {
    // t < gamma- iff 4t^2 - 1 + sqrt(6)/3 < 0
    let v = crate::numeric::QuadExtValue::surd(int(4) * t * t - int(1), rat(1, 3), 6);
    t.is_negative() || v.sign() == Sign::Negative
}

fn above_gamma_plus(t: &Rational) -> bool {
    let v = crate::numeric::QuadExtValue::surd(int(4) * t * t - int(1), rat(-1, 3), 6);
    !t.is_negative() && v.sign() == Sign::Positive
}

/// Roots of equations mixing algebraic functions with `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TranscendentalId {
    /// `(sqrt(2 - 4t^2) - 2t)/(1 - 4t^2) = G(t)`, smaller root
    BetaMinus,
    /// same equation, larger root
    BetaPlus,
    /// `sqrt(2) - 2t = G(t)`, smaller root
    Alpha2InfMinus,
    /// same equation, larger root
    Alpha2InfCirc,
    /// `3 sqrt(3)/4 - 3 sqrt(3) t^2 = G(t)`, smaller root
    Alpha3InfMinus,
}

impl TranscendentalId {
    pub const ALL: [TranscendentalId; 5] = [
        TranscendentalId::BetaMinus,
        TranscendentalId::BetaPlus,
        TranscendentalId::Alpha2InfMinus,
        TranscendentalId::Alpha2InfCirc,
        TranscendentalId::Alpha3InfMinus,
    ];

    /// Bracket from a sign scan of the defining function on the grid `k/100`.
    pub fn default_bracket(self) -> (Rational, Rational) {
        let k = match self {
            TranscendentalId::BetaMinus | TranscendentalId::Alpha2InfMinus => 1,
            TranscendentalId::BetaPlus => 16,
            TranscendentalId::Alpha2InfCirc => 29,
            TranscendentalId::Alpha3InfMinus => 19,
        };
        (rat(k, 100), rat(k + 1, 100))
    }

    /// Enclosure of `lhs(t) - G(t)`.
    pub fn eval(self, t: &Rational, bits: u32) -> DyadicInterval {
        let p = bits + 8;
        let tv = DyadicInterval::from_rational(t, p);
        let lhs = match self {
            TranscendentalId::BetaMinus | TranscendentalId::BetaPlus => {
                let u = int(1) - int(4) * t * t;
                let root = DyadicInterval::from_rational(&(int(2) - int(4) * t * t), p).sqrt().expect("t < 1/sqrt2");
                let num = &root - &(&tv * &DyadicInterval::from_i64(2, p));
                num.checked_div(&DyadicInterval::from_rational(&u, p)).expect("t != 1/2")
            }
            TranscendentalId::Alpha2InfMinus | TranscendentalId::Alpha2InfCirc => {
                let r2 = DyadicInterval::from_i64(2, p).sqrt().expect("positive");
                &r2 - &DyadicInterval::from_rational(&(int(2) * t), p)
            }
            TranscendentalId::Alpha3InfMinus => {
                let r3 = DyadicInterval::from_i64(3, p).sqrt().expect("positive");
                let poly = rat(3, 4) - int(3) * t * t;
                &r3 * &DyadicInterval::from_rational(&poly, p)
            }
        };
        (&lhs - &gaussian(t, p)).with_precision(bits)
    }
}

/// Certified bracket of width at most `10^-8` for the root in `bracket`.
pub fn transcendental_root(id: TranscendentalId, bracket: (&Rational, &Rational)) -> Result<IsolatingInterval> {
    refine_certified(bracket.0, bracket.1, |t, bits| id.eval(t, bits), &crate::numeric::default_width())
}

/// `|q(t)| e^{-6t^2}` over `t in [a, b]`.
pub fn q_envelope(a: &Rational, b: &Rational) -> DyadicInterval {
    let p = 64;
    let tv = DyadicInterval::from_rational_bounds(a, b, p);
    let q = correction_polys().q.eval_interval(&tv).abs();
    &q * &gauss_factor(&tv)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QBoundReport {
    pub pass: bool,
    /// Largest certified upper bound over all accepted cells.
    pub max_envelope: f64,
    /// First cell whose envelope could not be brought below the bound.
    pub witness: Option<(Rational, Rational)>,
}

pub const Q_BOUND: i64 = 2281;
const Q_GRID_END: i64 = 10;
const Q_MAX_SPLITS: u32 = 24;

/// Certifies `|q(t)| e^{-6t^2} <= 2281` for all `t >= 0`: interval cells of
/// width `10^-3` over `[0, 10]` (bisected when too coarse), and the tail
/// bound `|q(t)| <= 600000 t^8` with `t^8 e^{-6t^2}` decreasing past 10.
pub fn q_bound_check() -> QBoundReport {
    use rayon::prelude::*;
    let bound = DyadicInterval::from_i64(Q_BOUND, 64);
    let cells: Vec<i64> = (0..Q_GRID_END * 1000).collect();
    let results: Vec<(f64, Option<(Rational, Rational)>)> = cells
        .par_iter()
        .map(|&k| check_cell(&rat(k, 1000), &rat(k + 1, 1000), &bound, 0))
        .collect();
    let mut max_envelope = 0f64;
    let mut witness = None;
    for (m, w) in results {
        max_envelope = max_envelope.max(m);
        if witness.is_none() {
            witness = w;
        }
    }
    let tail = q_tail_bound();
    max_envelope = max_envelope.max(tail.hi_f64());
    let tail_ok = tail.hi() < bound.lo();
    QBoundReport { pass: witness.is_none() && tail_ok, max_envelope, witness }
}

/// `600000 * 10^8 * e^{-600}`, the envelope bound on `[10, inf)`.
pub fn q_tail_bound() -> DyadicInterval {
    let c = DyadicInterval::from_rational(&(int(600_000) * int(100_000_000)), 64);
    &c * &DyadicInterval::from_i64(-600, 64).exp()
}

fn check_cell(a: &Rational, b: &Rational, bound: &DyadicInterval, depth: u32) -> (f64, Option<(Rational, Rational)>) {
    let env = q_envelope(a, b);
    if env.hi() <= bound.lo() {
        return (env.hi_f64(), None);
    }
    if depth >= Q_MAX_SPLITS {
        return (env.hi_f64(), Some((a.clone(), b.clone())));
    }
    let m = (a + b) / int(2);
    let (m1, w1) = check_cell(a, &m, bound, depth + 1);
    let (m2, w2) = check_cell(&m, b, bound, depth + 1);
    (m1.max(m2), w1.or(w2))
}

/// `7 e^{12/sqrt(d)} / sqrt(pi d)`.
pub fn eulerian_bound(d: u32) -> Result<DyadicInterval> {
    require_dim(d, 2)?;
    let p = DEFAULT_BITS + 8;
    let sd = DyadicInterval::from_i64(d as i64, p).sqrt()?;
    let e = (&DyadicInterval::from_i64(12, p)).checked_div(&sd)?.exp();
    let den = (&pi(p) * &DyadicInterval::from_i64(d as i64, p)).sqrt()?;
    Ok((&DyadicInterval::from_i64(7, p) * &e).checked_div(&den)?.with_precision(DEFAULT_BITS))
}

/// Numeric midpoint-convexity spot check of a threshold on `[a, b]` with
/// `n` grid pairs. Returns the pairs `(x, y)` where
/// `f((x+y)/2) > (f(x) + f(y))/2`.
pub fn convexity_violations(kind: ThresholdKind, a: f64, b: f64, n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for k in 0..n {
        let x = a + (b - a) * (k as f64 + 0.5) / (n as f64 + 1.0);
        let y = b - (b - a) * (k as f64 + 0.25) / (n as f64 + 1.0) / 2.0;
        let (fx, fy, fm) = (threshold_f64(kind, x), threshold_f64(kind, y), threshold_f64(kind, (x + y) / 2.0));
        if fm > 0.5 * (fx + fy) * (1.0 + 1e-12) {
            out.push((x, y));
        }
    }
    out
}

/// `G(t)` in double precision.
pub fn gaussian_f64(t: f64) -> f64 {
    (6.0 / std::f64::consts::PI).sqrt() * (-6.0 * t * t).exp()
}

pub fn limit_difference_f64(t: f64) -> f64 {
    0.15 * gaussian_f64(t) * (1.0 - 24.0 * t * t + 48.0 * t.powi(4))
}
