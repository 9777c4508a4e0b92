//! Floating-point oracle for the defining oscillatory integrals.
//!
//! Nothing here is certified. The oracle exists to cross-check the exact
//! modules through an independent route: adaptive Gauss-Kronrod panels on
//! `[0, U]` split at multiples of `pi`, and for slowly decaying integrands
//! an explicit tail. Every integrand is a sum of `e^{i w u} u^{-m}` terms past
//! `U`; each term's tail is taken along the rotated ray `U +- i s`, where
//! it decays like `e^{-|w| s}` instead of oscillating.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{rat, refine_certified, DyadicInterval, IsolatingInterval, Rational};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    /// Budget of Gauss-Kronrod panels over the finite part.
    pub max_panels: usize,
    /// Fixed cutoff `U`; `None` derives it from the tail bound.
    pub tail_cutoff: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { abs_tol: 1e-9, max_panels: 200_000, tail_cutoff: None }
    }
}

impl QuadratureConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        QuadratureConfig { abs_tol, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrandKind {
    /// `(2 sqrt(d)/pi) (sin u/u)^d cos(2 sqrt(d) t u) u^k`
    SincPower,
    /// `(sin u/u)^{n-2} cos(2 sqrt(d) t u) f(u)`
    ExtremalityF { n: u32 },
    /// `(sin u/u)^{n-1} cos(2 sqrt(d) t u) g(u)`
    ExtremalityG { n: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandSpec {
    pub d: u32,
    pub k: u32,
    pub t: f64,
    pub kind: IntegrandKind,
}

impl IntegrandSpec {
    pub fn section(d: u32, t: f64) -> Self {
        IntegrandSpec { d, k: 0, t, kind: IntegrandKind::SincPower }
    }

    pub fn moment(d: u32, k: u32, t: f64) -> Self {
        IntegrandSpec { d, k, t, kind: IntegrandKind::SincPower }
    }

    fn freq(&self) -> f64 {
        2.0 * (self.d as f64).sqrt() * self.t.abs()
    }

    fn prefactor(&self) -> f64 {
        match self.kind {
            IntegrandKind::SincPower => 2.0 * (self.d as f64).sqrt() / PI,
            _ => 1.0,
        }
    }

    /// Decay exponent `m` with `|integrand| <= C u^{-m}` past `pi`, and `C`.
    fn decay(&self) -> (i64, f64) {
        match self.kind {
            IntegrandKind::SincPower => (self.d as i64 - self.k as i64, self.prefactor()),
            IntegrandKind::ExtremalityF { n } | IntegrandKind::ExtremalityG { n } => (n as i64 - 2, 2.0),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |detail: String| Err(Error::Domain { function: "integrate", detail });
        match self.kind {
            IntegrandKind::SincPower => {
                if self.k % 2 == 1 {
                    return bad(format!("k = {} must be even", self.k));
                }
                // d = k + 1 converges conditionally; the rotated tail handles it
                if self.d < self.k + 1 {
                    return bad(format!("d = {} is below k + 1 = {}", self.d, self.k + 1));
                }
            }
            IntegrandKind::ExtremalityF { n } | IntegrandKind::ExtremalityG { n } => {
                if n < 4 || n > self.d {
                    return bad(format!("need 4 <= n <= d, got n = {n}, d = {}", self.d));
                }
            }
        }
        if !self.t.is_finite() {
            return bad("t must be finite".into());
        }
        Ok(())
    }

    fn eval(&self, u: f64) -> f64 {
        let c = (self.freq() * u).cos();
        match self.kind {
            IntegrandKind::SincPower => sinc(u).powi(self.d as i32) * c * u.powi(self.k as i32),
            IntegrandKind::ExtremalityF { n } => sinc(u).powi(n as i32 - 2) * c * f_fn(u),
            IntegrandKind::ExtremalityG { n } => sinc(u).powi(n as i32 - 1) * c * g_fn(u),
        }
    }

    /// The integrand past zero as `sum_j P_j(u) u^{-m_j}` with trigonometric
    /// `P_j`.
    fn tail_terms(&self) -> Vec<(i64, TrigSum)> {
        let a = self.freq();
        let with_cos = |p: TrigSum| p.mul_cos(a);
        match self.kind {
            IntegrandKind::SincPower => {
                vec![(self.d as i64 - self.k as i64, with_cos(TrigSum::sin_pow(self.d)))]
            }
            IntegrandKind::ExtremalityF { n } => {
                let n_ = n as i64;
                vec![
                    (n_, with_cos(TrigSum::sin_pow(n).scale(2.0))),
                    (n_ - 1, with_cos(TrigSum::sin_pow(n - 1).mul(&TrigSum::cos1()).scale(-1.0))),
                    (n_ - 2, with_cos(TrigSum::sin_pow(n - 2).scale(-1.0))),
                ]
            }
            IntegrandKind::ExtremalityG { n } => {
                let n_ = n as i64;
                vec![
                    (n_ - 1, with_cos(TrigSum::sin_pow(n - 1).mul(&TrigSum::cos1()))),
                    (n_ - 2, with_cos(TrigSum::sin_pow(n).scale(1.0 / 3.0))),
                    (n_, with_cos(TrigSum::sin_pow(n).scale(-1.0))),
                ]
            }
        }
    }
}

/// `sin u / u`, by series near zero.
pub fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

const SERIES_SWITCH: f64 = 1e-3;

/// `2 sin^2 u/u^2 - cos u sin u/u - 1`; `-2u^4/45` below `10^-3`, where the
/// neglected remainder is at most `2u^6/315`.
pub fn f_fn(u: f64) -> f64 {
    if u.abs() < SERIES_SWITCH {
        return -2.0 * u.powi(4) / 45.0;
    }
    let s = sinc(u);
    2.0 * s * s - u.cos() * s - 1.0
}

/// `cos u + (u^2/3 - 1) sin u/u`; `-u^4/45` below `10^-3`.
pub fn g_fn(u: f64) -> f64 {
    if u.abs() < SERIES_SWITCH {
        return -u.powi(4) / 45.0;
    }
    u.cos() + (u * u / 3.0 - 1.0) * sinc(u)
}

/// `sqrt(-6 log(sin u/u))` on `(0, pi)`.
pub fn phi(u: f64) -> Result<f64> {
    if !(u > 0.0 && u < PI) {
        return Err(Error::Domain { function: "phi", detail: format!("u = {u} outside (0, pi)") });
    }
    if u < 1e-4 {
        // -log(sinc u) = u^2/6 + u^4/180 + ...
        return Ok(u * (1.0 + u * u / 30.0).sqrt());
    }
    Ok((-6.0 * sinc(u).ln()).sqrt())
}

/// Certified bracket of `psi(1)`, the solution of `sin u/u = e^{-1/6}` in
/// `(0, pi)`.
pub fn psi1_bracket() -> Result<IsolatingInterval> {
    let h = |u: &Rational, bits: u32| {
        let x = DyadicInterval::from_rational(u, bits + 8);
        let lhs = x.sin().checked_div(&x).expect("u > 0");
        let rhs = DyadicInterval::from_rational(&rat(-1, 6), bits + 8).exp();
        (&lhs - &rhs).with_precision(bits)
    };
    refine_certified(&rat(98, 100), &rat(99, 100), h, &crate::numeric::default_width())
}

/// A finite sum `sum c_j e^{i w_j u}`.
#[derive(Debug, Clone, PartialEq)]
struct TrigSum {
    terms: Vec<(f64, Complex64)>,
}

impl TrigSum {
    fn sin_pow(n: u32) -> TrigSum {
        // sin^n u = (2i)^{-n} sum_j C(n,j) (-1)^j e^{i(n-2j)u}
        let mut coef = Complex64::new(1.0, 0.0);
        for _ in 0..n {
            coef /= Complex64::new(0.0, 2.0);
        }
        let mut binom = 1.0f64;
        let mut terms = Vec::with_capacity(n as usize + 1);
        for j in 0..=n {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            terms.push(((n as f64) - 2.0 * j as f64, coef * binom * sign));
            binom = binom * (n - j) as f64 / (j + 1) as f64;
        }
        TrigSum { terms }
    }

    fn cos1() -> TrigSum {
        TrigSum { terms: vec![(1.0, Complex64::new(0.5, 0.0)), (-1.0, Complex64::new(0.5, 0.0))] }
    }

    fn scale(mut self, c: f64) -> TrigSum {
        for t in &mut self.terms {
            t.1 *= c;
        }
        self
    }

    fn mul(&self, rhs: &TrigSum) -> TrigSum {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for &(w1, c1) in &self.terms {
            for &(w2, c2) in &rhs.terms {
                terms.push((w1 + w2, c1 * c2));
            }
        }
        TrigSum { terms }.merged()
    }

    fn mul_cos(&self, a: f64) -> TrigSum {
        let half = TrigSum { terms: vec![(a, Complex64::new(0.5, 0.0)), (-a, Complex64::new(0.5, 0.0))] };
        self.mul(&half)
    }

    /// Combines equal frequencies; frequencies here are sums of integers and
    /// `+-a`, so exact `f64` equality is the right test.
    fn merged(mut self) -> TrigSum {
        self.terms.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal));
        let mut out: Vec<(f64, Complex64)> = Vec::with_capacity(self.terms.len());
        for (w, c) in self.terms {
            match out.last_mut() {
                Some(last) if last.0 == w => last.1 += c,
                _ => out.push((w, c)),
            }
        }
        TrigSum { terms: out }
    }
}

// Gauss-Kronrod 7/15 nodes on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// `(kronrod, |kronrod - gauss|)` on `[a, b]`.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

/// Globally adaptive integration over the given initial breakpoints.
fn adaptive<F: Fn(f64) -> f64>(f: &F, breaks: &[f64], tol: f64, max_panels: usize) -> Result<f64> {
    let mut heap = BinaryHeap::new();
    let (mut total, mut err) = (0.0, 0.0);
    for w in breaks.windows(2) {
        let (v, e) = gk15(f, w[0], w[1]);
        total += v;
        err += e;
        heap.push(Panel { a: w[0], b: w[1], value: v, err: e });
    }
    let mut count = heap.len();
    while err > tol {
        if count >= max_panels {
            return Err(Error::ToleranceUnreachable { tol, panels: count });
        }
        let p = heap.pop().expect("nonempty");
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            return Err(Error::ToleranceUnreachable { tol, panels: count });
        }
        let (v1, e1) = gk15(f, p.a, m);
        let (v2, e2) = gk15(f, m, p.b);
        total += v1 + v2 - p.value;
        err += e1 + e2 - p.err;
        heap.push(Panel { a: p.a, b: m, value: v1, err: e1 });
        heap.push(Panel { a: m, b: p.b, value: v2, err: e2 });
        count += 1;
        // the running sum drifts; resync occasionally
        if count % 4096 == 0 {
            err = heap.iter().map(|p| p.err).sum();
        }
    }
    Ok(total)
}

/// `int_U^inf e^{i w u} u^{-m} du` along `u = U + i sgn(w) s`.
fn rotated_tail(w: f64, m: i64, big_u: f64, tol: f64, max_panels: usize) -> Result<Complex64> {
    if w == 0.0 {
        if m < 2 {
            return Err(Error::Domain {
                function: "integrate",
                detail: "non-oscillating tail term does not converge".into(),
            });
        }
        return Ok(Complex64::new(big_u.powi(1 - m as i32) / (m - 1) as f64, 0.0));
    }
    let sigma = w.signum();
    let aw = w.abs();
    let dir = Complex64::new(0.0, sigma);
    let weight = |s: f64| (-aw * s).exp() * (Complex64::new(big_u, 0.0) + dir * s).powi(-(m as i32));
    // geometric panels out to where the remaining mass is negligible
    let h = big_u.min(1.0 / aw) / 4.0;
    let mut breaks = vec![0.0, h];
    loop {
        let s = *breaks.last().expect("nonempty");
        let modulus = (big_u * big_u + s * s).sqrt();
        let mut rest = (-aw * s).exp() / aw * modulus.powi(-(m as i32));
        if m >= 2 {
            rest = rest.min(s.powi(1 - m as i32) / (m - 1) as f64);
        }
        if rest < tol * 1e-2 || breaks.len() > 400 {
            break;
        }
        breaks.push(2.0 * s);
    }
    let re = adaptive(&|s| weight(s).re, &breaks, tol / 4.0, max_panels)?;
    let im = adaptive(&|s| weight(s).im, &breaks, tol / 4.0, max_panels)?;
    Ok(dir * Complex64::from_polar(1.0, w * big_u) * Complex64::new(re, im))
}

const MAX_CUTOFF: f64 = 64.0 * PI;

/// Cutoff `U` (a multiple of `pi`) and whether the tail beyond it must be
/// integrated explicitly.
fn cutoff(spec: &IntegrandSpec, cfg: &QuadratureConfig) -> (f64, bool) {
    let (m, c) = spec.decay();
    let bound = |u: f64| if m >= 2 { c * u.powi(1 - m as i32) / (m - 1) as f64 } else { f64::INFINITY };
    if let Some(u) = cfg.tail_cutoff {
        return (u, bound(u) >= cfg.abs_tol / 2.0);
    }
    let mut u = PI;
    while u < MAX_CUTOFF {
        if bound(u) < cfg.abs_tol / 2.0 {
            return (u, false);
        }
        u += PI;
    }
    (MAX_CUTOFF, bound(MAX_CUTOFF) >= cfg.abs_tol / 2.0)
}

/// `I_{d,k}(t)` for `SincPower`, or the bare `r`/`s` integrands otherwise.
pub fn integrate(spec: &IntegrandSpec, cfg: &QuadratureConfig) -> Result<f64> {
    spec.validate()?;
    let pre = spec.prefactor();
    let (big_u, need_tail) = cutoff(spec, cfg);
    let w = spec.freq();
    let d = spec.d.max(1) as f64;
    // at most about two oscillations and one envelope width per panel
    let width = PI.min(4.0 * PI / w.max(1e-300)).min(3.0 / d.sqrt() + 0.05);
    let mut breaks = vec![0.0];
    let whole = (big_u / PI).ceil().max(1.0) as usize;
    let per = (PI / width).ceil().max(1.0) as usize;
    for j in 0..whole {
        let (a, b) = (j as f64 * PI, ((j + 1) as f64 * PI).min(big_u));
        for s in 1..=per {
            breaks.push(a + (b - a) * s as f64 / per as f64);
        }
    }
    let budget = cfg.abs_tol / pre / if need_tail { 2.0 } else { 1.0 };
    let head = adaptive(&|u| spec.eval(u), &breaks, budget, cfg.max_panels)?;
    let mut total = head;
    if need_tail {
        let terms = spec.tail_terms();
        let count: usize = terms.iter().map(|(_, p)| p.terms.len()).sum();
        let each = budget / (2.0 * count.max(1) as f64);
        let mut tail = Complex64::new(0.0, 0.0);
        for (m, poly) in &terms {
            for &(freq, c) in &poly.terms {
                if c.norm() == 0.0 {
                    continue;
                }
                tail += c * rotated_tail(freq, *m, big_u, each / c.norm(), cfg.max_panels)?;
            }
        }
        total += tail.re;
    }
    Ok(pre * total)
}

/// `(r, s)` of the extremality criterion:
/// `r = int (sin u/u)^{n-2} cos(2 sqrt(d) t u) f(u) du`,
/// `s = -int (sin u/u)^{n-1} cos(2 sqrt(d) t u) g(u) du`.
pub fn integrate_rs(n: u32, d: u32, t: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    if n < 4 {
        return Err(Error::FaceTooSmall { n });
    }
    if n > d {
        return Err(Error::FaceTooLarge { n, d });
    }
    let r = integrate(&IntegrandSpec { d, k: 0, t, kind: IntegrandKind::ExtremalityF { n } }, cfg)?;
    let s = integrate(&IntegrandSpec { d, k: 0, t, kind: IntegrandKind::ExtremalityG { n } }, cfg)?;
    Ok((r, -s))
}

/// `I_d(t)` with the default configuration.
pub fn section(d: u32, t: f64) -> Result<f64> {
    integrate(&IntegrandSpec::section(d, t), &QuadratureConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions_match_closed_forms() {
        let cfg = QuadratureConfig::with_tol(1e-11);
        let v = integrate(&IntegrandSpec::section(3, 0.0), &cfg).unwrap();
        assert!((v - 0.75 * 3f64.sqrt()).abs() < 1e-10, "{v}");
        let v = integrate(&IntegrandSpec::section(2, 0.25), &cfg).unwrap();
        assert!((v - (2f64.sqrt() - 0.5)).abs() < 1e-10, "{v}");
        let v = integrate(&IntegrandSpec::section(1, 0.2), &cfg).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "{v}");
        let v = integrate(&IntegrandSpec::section(1, 0.7), &cfg).unwrap();
        assert!(v.abs() < 1e-10, "{v}");
    }

    #[test]
    fn even_in_t() {
        let cfg = QuadratureConfig::default();
        let a = integrate(&IntegrandSpec::section(7, 0.3), &cfg).unwrap();
        let b = integrate(&IntegrandSpec::section(7, -0.3), &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn doubling_the_cutoff_is_stable() {
        for d in [2u32, 3, 4, 6] {
            let base = QuadratureConfig { tail_cutoff: Some(32.0 * PI), ..QuadratureConfig::with_tol(1e-10) };
            let twice = QuadratureConfig { tail_cutoff: Some(64.0 * PI), ..base };
            let a = integrate(&IntegrandSpec::section(d, 0.11), &base).unwrap();
            let b = integrate(&IntegrandSpec::section(d, 0.11), &twice).unwrap();
            assert!((a - b).abs() < 1e-10, "d={d}: {a} vs {b}");
        }
    }

    #[test]
    fn series_switch_is_continuous() {
        let u = SERIES_SWITCH;
        let s = sinc(u);
        let f_direct = 2.0 * s * s - u.cos() * s - 1.0;
        assert!((f_fn(u * 0.999_999) - f_direct).abs() < 1e-15);
        assert!(f_fn(0.5) < 0.0 && g_fn(0.5) < 0.0);
    }

    #[test]
    fn phi_and_psi() {
        assert!(phi(1e-4).unwrap() < 1e-3);
        let b = psi1_bracket().unwrap();
        assert!(b.strictly_inside(&rat(9832, 10000), &rat(9833, 10000)));
        let u = b.mid_f64();
        assert!((phi(u).unwrap() - 1.0).abs() < 1e-7);
        assert!(sinc(u) > 2.0 / PI && sinc(u) < 0.85);
        assert!(phi(PI).is_err());
    }

    #[test]
    fn rs_at_the_square_center() {
        let cfg = QuadratureConfig::with_tol(1e-10);
        let (_, s) = integrate_rs(4, 4, 0.0, &cfg).unwrap();
        assert!(s.abs() <= 1e-6, "{s}");
        let (r, _) = integrate_rs(6, 6, 0.0, &cfg).unwrap();
        assert!(r < 0.0);
        assert_eq!(integrate_rs(3, 5, 0.0, &cfg), Err(Error::FaceTooSmall { n: 3 }));
    }
}
