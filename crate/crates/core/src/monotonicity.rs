//! Monotonicity of `I_d(t)` in `d`: sign certificates, window verdicts, the
//! sup/inf tables and the named constants.
//!
//! Dimensions at or above the threshold `Delta(t)` are settled by the limit
//! theorem (`sign(I_{d+1} - I_d) = sign(1 - 24t^2 + 48t^4)`). Everything below
//! is computed exactly. Threshold monotonicity across a range is assumed from
//! convexity of `Delta` on each side of the singularities.

use std::cmp::Ordering;

use num_traits::Signed;
use rayon::prelude::*;

use crate::asymptotics::{
    gamma_minus, gamma_plus, gaussian, quartic_sign, second_order_estimate, range_contains_gamma, threshold, transcendental_root,
    ThresholdKind, TranscendentalId, DEFAULT_BITS, ESTIMATE_MIN_DIM,
};
use crate::error::{Error, Result};
use crate::numeric::{
    default_width, format_rational, isolate_roots_refined, parse_rational, rat, refine, DyadicInterval,
    IsolatingInterval, Poly, QuadExtValue, Rational, Sign, Var,
};
use crate::quadrature::psi1_bracket;
use crate::sections::{diff_sign, eval_exact, isolate_crossings};

/// Default d-scan cap.
pub const DEFAULT_CAP: u32 = 450;

/// Upper end of the lower covered range of the sup/inf theorems.
pub fn covered_lower_end() -> Rational {
    rat(20916, 100000)
}

/// Upper end of the upper covered range of the sup/inf theorems.
pub fn covered_upper_end() -> Rational {
    rat(64607, 100000)
}

const MAX_COMPARE_BITS: u32 = 4096;

#[derive(Debug, Clone, PartialEq)]
pub enum SignOutcome {
    AllPositive,
    AllNegative,
    /// Roots of the difference in the open range, in increasing order, plus
    /// the point `1/2` where `I_1` jumps when `d = 1`.
    SignChanges(Vec<IsolatingInterval>),
}

impl SignOutcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            SignOutcome::AllPositive => "AllPositive",
            SignOutcome::AllNegative => "AllNegative",
            SignOutcome::SignChanges(_) => "SignChanges",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertMethod {
    ExactSum,
    ByThreshold,
}

impl CertMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CertMethod::ExactSum => "ExactSum",
            CertMethod::ByThreshold => "ByThreshold",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CertPolicy {
    /// Threshold when it applies, exact otherwise.
    #[default]
    Auto,
    ThresholdOnly,
    ExactOnly,
}

/// Sign of `I_{d+1} - I_d` over a closed `t` range.
#[derive(Debug, Clone, PartialEq)]
pub struct SignCertificate {
    pub quantity: String,
    pub d: u32,
    pub t_range: (Rational, Rational),
    pub outcome: SignOutcome,
    pub method: CertMethod,
    /// Exact endpoint signs; `None` for threshold certificates.
    pub endpoint_signs: Option<(Sign, Sign)>,
}

pub fn certify_sign(d: u32, t_range: (&Rational, &Rational)) -> Result<SignCertificate> {
    certify_sign_with(d, t_range, CertPolicy::Auto)
}

pub fn certify_sign_with(d: u32, t_range: (&Rational, &Rational), policy: CertPolicy) -> Result<SignCertificate> {
    let (a, b) = t_range;
    check_range(d, a, b)?;
    let quantity = format!("I_{}(t) - I_{}(t)", d + 1, d);
    if policy != CertPolicy::ExactOnly {
        match threshold_sign(d, a, b) {
            Ok(Some(sign)) => {
                let outcome = if sign == Sign::Positive { SignOutcome::AllPositive } else { SignOutcome::AllNegative };
                return Ok(SignCertificate {
                    quantity,
                    d,
                    t_range: (a.clone(), b.clone()),
                    outcome,
                    method: CertMethod::ByThreshold,
                    endpoint_signs: None,
                });
            }
            Ok(None) if policy == CertPolicy::ThresholdOnly => {
                return Err(Error::DimensionTooSmall { dim: d, min: threshold_ceiling_over(a, b)? as u32 });
            }
            Err(e) if policy == CertPolicy::ThresholdOnly => return Err(e),
            _ => {}
        }
    }
    let lo_sign = diff_sign(d, a)?;
    let hi_sign = diff_sign(d, b)?;
    let mut roots = isolate_crossings(d, (a, b))?;
    roots.extend(jump_points(d, a, b));
    roots.sort_by(|x, y| x.lo.cmp(&y.lo));
    let outcome = if roots.is_empty() {
        // no root inside: the sign is constant on the open range
        let mid = (a + b) / rat(2, 1);
        let s = if a == b { lo_sign } else { diff_sign(d, &mid)? };
        match s {
            Sign::Positive => SignOutcome::AllPositive,
            Sign::Negative => SignOutcome::AllNegative,
            Sign::Zero => SignOutcome::SignChanges(Vec::new()),
        }
    } else {
        SignOutcome::SignChanges(roots)
    };
    Ok(SignCertificate {
        quantity,
        d,
        t_range: (a.clone(), b.clone()),
        outcome,
        method: CertMethod::ExactSum,
        endpoint_signs: Some((lo_sign, hi_sign)),
    })
}

/// `I_1` drops from 1 to 0 just past `t = 1/2`, so `I_2 - I_1` changes sign
/// there without a root: negative at `1/2`, positive right after it.
fn jump_points(d: u32, a: &Rational, b: &Rational) -> Vec<IsolatingInterval> {
    let h = rat(1, 2);
    if d == 1 && a <= &h && &h < b {
        vec![IsolatingInterval::new(h.clone(), h)]
    } else {
        Vec::new()
    }
}

fn check_range(d: u32, a: &Rational, b: &Rational) -> Result<()> {
    if d == 0 {
        return Err(Error::DimensionTooSmall { dim: 0, min: 1 });
    }
    // 0 <= a <= b and b^2 <= (d+1)/4
    if a.is_negative() || a > b || b * b > rat(d as i64 + 1, 4) {
        return Err(Error::Domain {
            function: "certify_sign",
            detail: format!("range [{}, {}] not inside [0, sqrt({})/2]", format_rational(a), format_rational(b), d + 1),
        });
    }
    Ok(())
}

fn threshold_ceiling_over(a: &Rational, b: &Rational) -> Result<u64> {
    let ta = threshold(ThresholdKind::MonotonicityDelta, a)?;
    let tb = threshold(ThresholdKind::MonotonicityDelta, b)?;
    Ok(ta.ceiling.max(tb.ceiling))
}

/// `Some(sign)` when the threshold theorem covers `d` on all of `[a, b]`.
fn threshold_sign(d: u32, a: &Rational, b: &Rational) -> Result<Option<Sign>> {
    if range_contains_gamma(a, b) {
        return Err(Error::StraddlesGamma { lo: format_rational(a), hi: format_rational(b) });
    }
    if threshold_ceiling_over(a, b)? > d as u64 {
        return Ok(None);
    }
    Ok(Some(quartic_sign(a)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowVerdict {
    StrictlyIncreasingAllD,
    StrictlyDecreasingAllD,
    /// `I_d` strictly monotone for `d >= from`, and not from `from - 1`.
    EventuallyMonotone { from: u32, increasing: bool },
    /// The threshold exceeds the scan cap.
    Unknown,
}

impl WindowVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            WindowVerdict::StrictlyIncreasingAllD => "StrictlyIncreasingAllD",
            WindowVerdict::StrictlyDecreasingAllD => "StrictlyDecreasingAllD",
            WindowVerdict::EventuallyMonotone { .. } => "EventuallyMonotone",
            WindowVerdict::Unknown => "Unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowReport {
    pub t: Rational,
    pub verdict: WindowVerdict,
    /// Smallest `d` from which the threshold theorem applies.
    pub threshold: u64,
    /// Exact signs of `I_{d+1} - I_d` for `d = 1..`; empty when `Unknown`.
    pub signs: Vec<Sign>,
}

pub fn monotonicity_window(t: &Rational) -> Result<WindowReport> {
    monotonicity_window_capped(t, DEFAULT_CAP)
}

pub fn monotonicity_window_capped(t: &Rational, cap: u32) -> Result<WindowReport> {
    let t = t.abs();
    let th = threshold(ThresholdKind::MonotonicityDelta, &t)?;
    if th.ceiling > cap as u64 {
        return Ok(WindowReport { t, verdict: WindowVerdict::Unknown, threshold: th.ceiling, signs: Vec::new() });
    }
    let values = section_values(&t, th.ceiling as u32)?;
    let signs = consecutive_signs(values)?;
    let sigma = quartic_sign(&t);
    let verdict = tail_verdict(&signs, sigma);
    Ok(WindowReport { t, verdict, threshold: th.ceiling, signs })
}

fn tail_verdict(signs: &[Sign], sigma: Sign) -> WindowVerdict {
    let increasing = sigma == Sign::Positive;
    // signs[k] is the sign of I_{k+2} - I_{k+1}
    match signs.iter().rposition(|&s| s != sigma) {
        None if increasing => WindowVerdict::StrictlyIncreasingAllD,
        None => WindowVerdict::StrictlyDecreasingAllD,
        Some(k) => WindowVerdict::EventuallyMonotone { from: k as u32 + 2, increasing },
    }
}

/// `I_1(t), ..., I_{d_max}(t)`, computed in parallel.
pub fn section_values(t: &Rational, d_max: u32) -> Result<Vec<QuadExtValue>> {
    (1..=d_max).into_par_iter().map(|d| eval_exact(d, t).map(|v| v.value)).collect()
}

fn consecutive_signs(values: Vec<QuadExtValue>) -> Result<Vec<Sign>> {
    candidates(1, values).par_windows(2).map(|w| Ok(cmp_cands(&w[1], &w[0])?.into())).collect()
}

impl From<Ordering> for Sign {
    fn from(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

/// An exact value with a cached enclosure.
struct Cand {
    d: u32,
    value: QuadExtValue,
    iv: DyadicInterval,
}

impl Cand {
    fn new(d: u32, value: QuadExtValue) -> Cand {
        let iv = value.to_interval(DEFAULT_BITS);
        Cand { d, value, iv }
    }
}

/// Exact comparison, short-circuited by the enclosures.
fn cmp_cands(a: &Cand, b: &Cand) -> Result<Ordering> {
    if a.iv.hi() < b.iv.lo() {
        return Ok(Ordering::Less);
    }
    if a.iv.lo() > b.iv.hi() {
        return Ok(Ordering::Greater);
    }
    a.value.cmp_exact(&b.value)
}

fn candidates(first: u32, values: Vec<QuadExtValue>) -> Vec<Cand> {
    values.into_par_iter().enumerate().map(|(k, v)| Cand::new(first + k as u32, v)).collect()
}

/// Compares an exact value with the Gaussian limit, raising precision until
/// the enclosures separate. They never tie at rational `t`.
fn cmp_with_gaussian(a: &QuadExtValue, t: &Rational) -> Result<(Ordering, DyadicInterval)> {
    let mut bits = DEFAULT_BITS;
    loop {
        let g = gaussian(t, bits);
        let ia = a.to_interval(bits);
        if ia.hi() < g.lo() {
            return Ok((Ordering::Less, g));
        }
        if ia.lo() > g.hi() {
            return Ok((Ordering::Greater, g));
        }
        if bits >= MAX_COMPARE_BITS {
            return Err(Error::PrecisionExhausted { bits });
        }
        bits *= 2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    AttainedAt(u32),
    GaussianLimit,
}

impl Extremum {
    pub fn describe(&self) -> String {
        match self {
            Extremum::AttainedAt(d) => format!("d={d}"),
            Extremum::GaussianLimit => "gaussian".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Exact(QuadExtValue),
    Limit(DyadicInterval),
}

impl Witness {
    pub fn to_interval(&self, bits: u32) -> DyadicInterval {
        match self {
            Witness::Exact(v) => v.to_interval(bits),
            Witness::Limit(g) => g.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupInfReport {
    pub t: Rational,
    pub sup: Extremum,
    pub inf: Extremum,
    pub sup_value: Witness,
    pub inf_value: Witness,
    /// Other dimensions attaining the same extreme value exactly.
    pub sup_ties: Vec<u32>,
    pub inf_ties: Vec<u32>,
    /// From this `d` on the family is monotone by the threshold theorem.
    pub tail_from: u32,
    pub tail_increasing: bool,
    /// Dimensions evaluated exactly; the others below `tail_from` were
    /// excluded by the second-order estimate.
    pub exact_evaluations: u32,
}

/// Whether `t` lies in `[0, 0.20916]` or `(delta, 0.64607]`.
pub fn in_covered_range(t: &Rational) -> Result<bool> {
    let t = t.abs();
    if t <= covered_lower_end() {
        return Ok(true);
    }
    if t > covered_upper_end() {
        return Ok(false);
    }
    Ok(cmp_with_root(&t, &delta_poly(), &delta_bracket()?)? == Ordering::Greater)
}

/// Orders a rational against the unique root of `p` in `iv`.
fn cmp_with_root(t: &Rational, p: &Poly, iv: &IsolatingInterval) -> Result<Ordering> {
    let mut iv = iv.clone();
    let sign_at = |x: &Rational| p.sign_at(x).unwrap_or(Sign::Zero);
    loop {
        if *t <= iv.lo {
            return Ok(Ordering::Less);
        }
        if *t >= iv.hi {
            return Ok(Ordering::Greater);
        }
        if sign_at(t) == Sign::Zero {
            return Ok(Ordering::Equal);
        }
        let w = iv.width() / rat(16, 1);
        iv = refine(&iv, sign_at, &w)?;
    }
}

pub fn sup_inf(t: &Rational) -> Result<SupInfReport> {
    let t = t.abs();
    if !in_covered_range(&t)? {
        return Err(Error::OutsideCoveredRange { t: format_rational(&t) });
    }
    let th = threshold(ThresholdKind::MonotonicityDelta, &t)?;
    let tail_from = th.ceiling as u32;
    let increasing = quartic_sign(&t) == Sign::Positive;
    // past tail_from, I_d moves monotonically towards G, so the extremes over
    // all d are among I_1..I_{tail_from} and G
    let exact_top = tail_from.min(ESTIMATE_MIN_DIM - 1);
    let mut cands = candidates(1, section_values(&t, exact_top)?);
    // the rest only need to lose against the winners; the second-order
    // estimate settles most of them
    let estimated: Vec<(u32, DyadicInterval)> = (ESTIMATE_MIN_DIM..=tail_from)
        .into_par_iter()
        .map(|d| Ok((d, estimate_enclosure(d, &t)?)))
        .collect::<Result<_>>()?;
    let g = gaussian(&t, DEFAULT_BITS);
    let (hi_w, lo_w) = winners(&cands, &g, increasing)?;
    let undecided: Vec<u32> = estimated
        .iter()
        .filter(|(_, e)| !(e.hi() < hi_w.lo() && e.lo() > lo_w.hi()))
        .map(|(d, _)| *d)
        .collect();
    let extra: Vec<Cand> = undecided
        .par_iter()
        .map(|&d| Ok(Cand::new(d, eval_exact(d, &t)?.value)))
        .collect::<Result<_>>()?;
    let exact_count = cands.len() + extra.len();
    cands.extend(extra);

    let (best_max, sup_ties) = extreme(&cands, Ordering::Greater)?;
    let (best_min, inf_ties) = extreme(&cands, Ordering::Less)?;
    let (top, bottom) = (&cands[best_max], &cands[best_min]);
    let mut sup = (Extremum::AttainedAt(top.d), Witness::Exact(top.value.clone()), sup_ties);
    let mut inf = (Extremum::AttainedAt(bottom.d), Witness::Exact(bottom.value.clone()), inf_ties);
    if increasing {
        // increasing tail: G bounds every later I_d from above
        let (ord, g) = cmp_with_gaussian(&top.value, &t)?;
        if ord == Ordering::Less {
            sup = (Extremum::GaussianLimit, Witness::Limit(g), Vec::new());
        }
    } else {
        let (ord, g) = cmp_with_gaussian(&bottom.value, &t)?;
        if ord == Ordering::Greater {
            inf = (Extremum::GaussianLimit, Witness::Limit(g), Vec::new());
        }
    }
    Ok(SupInfReport {
        t,
        sup: sup.0,
        inf: inf.0,
        sup_value: sup.1,
        inf_value: inf.1,
        sup_ties: sup.2,
        inf_ties: inf.2,
        tail_from,
        tail_increasing: increasing,
        exact_evaluations: exact_count as u32,
    })
}

/// Certified enclosure of `I_d(t)` from the second-order estimate.
fn estimate_enclosure(d: u32, t: &Rational) -> Result<DyadicInterval> {
    let e = second_order_estimate(d, t)?;
    Ok(DyadicInterval::new(e.center.lo() - e.radius.hi(), e.center.hi() + e.radius.hi(), DEFAULT_BITS))
}

/// Enclosures of the current largest and smallest candidates, with `G`
/// joining the side the tail approaches it from.
fn winners(
    cands: &[Cand],
    g: &DyadicInterval,
    increasing: bool,
) -> Result<(DyadicInterval, DyadicInterval)> {
    let (mx, _) = extreme(cands, Ordering::Greater)?;
    let (mn, _) = extreme(cands, Ordering::Less)?;
    let mut hi = cands[mx].iv.clone();
    let mut lo = cands[mn].iv.clone();
    if increasing && g.lo() > hi.lo() {
        hi = g.clone();
    }
    if !increasing && g.hi() < lo.hi() {
        lo = g.clone();
    }
    Ok((hi, lo))
}

/// Index of the first extreme candidate in direction `want`, plus the
/// dimensions tying with it exactly.
fn extreme(cands: &[Cand], want: Ordering) -> Result<(usize, Vec<u32>)> {
    let mut best = 0;
    let mut ties = Vec::new();
    for k in 1..cands.len() {
        match cmp_cands(&cands[k], &cands[best])? {
            o if o == want => {
                best = k;
                ties.clear();
            }
            Ordering::Equal => ties.push(cands[k].d),
            _ => {}
        }
    }
    Ok((best, ties))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantMethod {
    PolyRoot,
    Transcendental,
    ClosedForm,
}

impl ConstantMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstantMethod::PolyRoot => "PolyRoot",
            ConstantMethod::Transcendental => "Transcendental",
            ConstantMethod::ClosedForm => "ClosedForm",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedConstant {
    pub name: &'static str,
    pub bracket: IsolatingInterval,
    pub definition: &'static str,
    pub method: ConstantMethod,
    /// Published decimal bracket the certified one must sit inside.
    pub reference: (Rational, Rational),
}

impl NamedConstant {
    pub fn within_reference(&self) -> bool {
        self.bracket.strictly_inside(&self.reference.0, &self.reference.1)
    }
}

fn dec(s: &str) -> Rational {
    parse_rational(s).expect("literal decimal")
}

fn surd(a: i64, b: i64, m: u64) -> QuadExtValue {
    QuadExtValue::surd(rat(a, 1), rat(b, 1), m)
}

/// `16 - 9 sqrt3 - 12(8 - 3 sqrt3) t^2 + 96 t^3`.
pub fn alpha34_minus_poly() -> Poly {
    Poly::new(vec![surd(16, -9, 3), QuadExtValue::zero(), surd(-96, 36, 3), surd(96, 0, 3)], Var::T)
}

/// `32 - 27 sqrt3 + 108 t - 12(16 + 3 sqrt3) t^2 + 192 t^3`.
pub fn alpha34_circ_poly() -> Poly {
    Poly::new(vec![surd(32, -27, 3), surd(108, 0, 3), surd(-192, -36, 3), surd(192, 0, 3)], Var::T)
}

/// `64 - 27 sqrt3 - 84 t + 12(16 - 3 sqrt3) t^2 - 64 t^3`.
pub fn alpha34_plus_poly() -> Poly {
    Poly::new(vec![surd(64, -27, 3), surd(-84, 0, 3), surd(192, -36, 3), surd(-64, 0, 3)], Var::T)
}

/// `575 sqrt5 - 528 sqrt6 - 120(25 sqrt5 - 24 sqrt6) t^2
///  + 240(25 sqrt5 - 36 sqrt6) t^4 + 17280 t^5`.
pub fn delta_poly() -> Poly {
    let two = |a: i64, b: i64| QuadExtValue::new(rat(0, 1), rat(a, 1), 5, rat(b, 1), 6);
    Poly::new(
        vec![
            two(575, -528),
            QuadExtValue::zero(),
            two(-3000, 2880),
            QuadExtValue::zero(),
            two(6000, -8640),
            QuadExtValue::rational(rat(17280, 1)),
        ],
        Var::T,
    )
}

fn delta_bracket() -> Result<IsolatingInterval> {
    poly_root(&delta_poly(), (&rat(22, 100), &rat(23, 100)))
}

/// The unique root of `p` in the open domain, refined to the default width.
fn poly_root(p: &Poly, domain: (&Rational, &Rational)) -> Result<IsolatingInterval> {
    let roots = isolate_roots_refined(p, domain, &default_width())?;
    match roots.as_slice() {
        [r] => Ok(r.clone()),
        _ => Err(Error::Domain {
            function: "poly_root",
            detail: format!(
                "{} roots in ({}, {})",
                roots.len(),
                format_rational(domain.0),
                format_rational(domain.1)
            ),
        }),
    }
}

/// Shrinks an enclosure of an irrational constant to a rational bracket.
fn bracket_of(x: &DyadicInterval) -> IsolatingInterval {
    IsolatingInterval::new(x.lo_rational(), x.hi_rational())
}

fn closed_form(bits: u32, f: impl Fn(u32) -> Result<DyadicInterval>) -> Result<IsolatingInterval> {
    Ok(bracket_of(&f(bits)?))
}

fn di(n: i64, p: u32) -> DyadicInterval {
    DyadicInterval::from_i64(n, p)
}

fn sqrt_of(n: i64, p: u32) -> Result<DyadicInterval> {
    di(n, p).sqrt()
}

fn times(k: i64, x: &DyadicInterval) -> DyadicInterval {
    x.scale_rational(&rat(k, 1))
}

/// `(2 - sqrt(31 - 12 sqrt6)) / (6 sqrt3)`.
pub fn alpha23_minus(bits: u32) -> Result<DyadicInterval> {
    let p = bits + 16;
    let inner = &di(31, p) - &times(12, &sqrt_of(6, p)?);
    (&di(2, p) - &inner.sqrt()?).checked_div(&times(6, &sqrt_of(3, p)?))
}

/// `(5 + 2 sqrt(6 sqrt6 - 14)) / (6 sqrt3)`.
pub fn alpha23_plus(bits: u32) -> Result<DyadicInterval> {
    let p = bits + 16;
    let inner = &times(6, &sqrt_of(6, p)?) - &di(14, p);
    (&di(5, p) + &times(2, &inner.sqrt()?)).checked_div(&times(6, &sqrt_of(3, p)?))
}

/// `sqrt(9 - 4 sqrt3) / 6`.
pub fn alpha13(bits: u32) -> Result<DyadicInterval> {
    let p = bits + 16;
    Ok((&di(9, p) - &times(4, &sqrt_of(3, p)?)).sqrt()?.scale_rational(&rat(1, 6)))
}

/// The table of certified constants, in a fixed order.
pub fn named_constants() -> Result<Vec<NamedConstant>> {
    let bits = DEFAULT_BITS;
    let mut out = Vec::with_capacity(15);
    let mut push = |name, bracket, definition, method, lo: &str, hi: &str| {
        out.push(NamedConstant { name, bracket, definition, method, reference: (dec(lo), dec(hi)) });
    };
    push(
        "gamma-",
        closed_form(bits, |b| Ok(gamma_minus(b)))?,
        "1/2 sqrt(1 - sqrt(2/3)), smaller positive root of 1 - 24t^2 + 48t^4",
        ConstantMethod::ClosedForm,
        "0.2141",
        "0.2142",
    );
    push(
        "gamma+",
        closed_form(bits, |b| Ok(gamma_plus(b)))?,
        "1/2 sqrt(1 + sqrt(2/3)), larger positive root of 1 - 24t^2 + 48t^4",
        ConstantMethod::ClosedForm,
        "0.6738",
        "0.6739",
    );
    push(
        "alpha23-",
        closed_form(bits, alpha23_minus)?,
        "(2 - sqrt(31 - 12 sqrt6)) / (6 sqrt3), first crossing of I_2 and I_3",
        ConstantMethod::ClosedForm,
        "0.0705012",
        "0.0705013",
    );
    push(
        "alpha23+",
        closed_form(bits, alpha23_plus)?,
        "(5 + 2 sqrt(6 sqrt6 - 14)) / (6 sqrt3), last crossing of I_2 and I_3",
        ConstantMethod::ClosedForm,
        "0.641788",
        "0.641789",
    );
    push(
        "alpha34-",
        poly_root(&alpha34_minus_poly(), (&rat(1, 10), &rat(2, 10)))?,
        "root of 16 - 9 sqrt3 - 12(8 - 3 sqrt3)t^2 + 96t^3",
        ConstantMethod::PolyRoot,
        "0.144137",
        "0.144138",
    );
    push(
        "alpha34o",
        poly_root(&alpha34_circ_poly(), (&rat(4, 10), &rat(42, 100)))?,
        "root of 32 - 27 sqrt3 + 108t - 12(16 + 3 sqrt3)t^2 + 192t^3",
        ConstantMethod::PolyRoot,
        "0.407452",
        "0.407453",
    );
    push(
        "alpha34+",
        poly_root(&alpha34_plus_poly(), (&rat(69, 100), &rat(7, 10)))?,
        "root of 64 - 27 sqrt3 - 84t + 12(16 - 3 sqrt3)t^2 - 64t^3",
        ConstantMethod::PolyRoot,
        "0.697308",
        "0.697309",
    );
    push(
        "alpha13",
        closed_form(bits, alpha13)?,
        "sqrt(9 - 4 sqrt3) / 6, where I_3 = I_1",
        ConstantMethod::ClosedForm,
        "0.239895",
        "0.239896",
    );
    push(
        "delta",
        delta_bracket()?,
        "root of 575 sqrt5 - 528 sqrt6 - 120(25 sqrt5 - 24 sqrt6)t^2 + 240(25 sqrt5 - 36 sqrt6)t^4 + 17280t^5",
        ConstantMethod::PolyRoot,
        "0.222924",
        "0.222925",
    );
    let trans = |id: TranscendentalId| {
        let (lo, hi) = id.default_bracket();
        transcendental_root(id, (&lo, &hi))
    };
    push(
        "beta-",
        trans(TranscendentalId::BetaMinus)?,
        "smaller root of I_4 - G",
        ConstantMethod::Transcendental,
        "0.0181611",
        "0.0181612",
    );
    push(
        "beta+",
        trans(TranscendentalId::BetaPlus)?,
        "larger root of I_4 - G below 1/4",
        ConstantMethod::Transcendental,
        "0.165625",
        "0.165626",
    );
    push(
        "alpha2inf-",
        trans(TranscendentalId::Alpha2InfMinus)?,
        "first root of I_2 - G",
        ConstantMethod::Transcendental,
        "0.0173679",
        "0.017368",
    );
    push(
        "alpha2info",
        trans(TranscendentalId::Alpha2InfCirc)?,
        "middle root of I_2 - G",
        ConstantMethod::Transcendental,
        "0.290166",
        "0.290167",
    );
    push(
        "alpha3inf-",
        trans(TranscendentalId::Alpha3InfMinus)?,
        "first root of I_3 - G",
        ConstantMethod::Transcendental,
        "0.192472",
        "0.192473",
    );
    push(
        "psi(1)",
        psi1_bracket()?,
        "root in (0, pi) of the extremality phase function",
        ConstantMethod::Transcendental,
        "0.9832",
        "0.9833",
    );
    Ok(out)
}
