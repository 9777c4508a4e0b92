//! Eulerian numbers, the hypersimplex volume identity, and the quantitative
//! normality of scaled Eulerian numbers.
//!
//! Rows here use the standard indexing: `A(n, k)` counts permutations of
//! `n` letters with `k` descents, `A(n, 0) = A(n, n-1) = 1`. The hypersimplex
//! identity then reads
//!
//! `I_d(sqrt(d)/2 - i/sqrt(d)) = sqrt(d)/(d-1)! * A(d-1, i-1)`,
//!
//! i.e. the alternative convention `A'(d, i)` with `A'(d, 1) = A'(d, d-1) = 1`
//! is `A(d-1, i-1)`. [`calibrate_convention`] rederives this offset from the
//! exact identity rather than assuming it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::asymptotics::{eulerian_bound, gaussian_f64};
use crate::error::{Error, Result};
use crate::numeric::{int, rat, QuadExtValue, Rational};
use crate::sections::{alternating_sum, factorial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianRow {
    pub d: u32,
    /// `A(d, 0), ..., A(d, d-1)`.
    pub entries: Vec<BigInt>,
}

impl EulerianRow {
    /// `A(d, k)`, zero outside `0..d`.
    pub fn get(&self, k: i64) -> BigInt {
        if k < 0 || k as usize >= self.entries.len() {
            BigInt::zero()
        } else {
            self.entries[k as usize].clone()
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().eq(self.entries.iter().rev())
    }

    pub fn sum(&self) -> BigInt {
        self.entries.iter().sum()
    }

    /// Entries as decimal strings, for export.
    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.to_string()).collect()
    }
}

/// One in-place step from row `n-1` to row `n`:
/// `A(n, k) = (k+1) A(n-1, k) + (n-k) A(n-1, k-1)`.
fn advance(buf: &mut Vec<BigInt>, n: u32) {
    buf.push(BigInt::zero());
    for k in (0..n as usize).rev() {
        let mut v = &buf[k] * BigInt::from(k + 1);
        if k > 0 {
            v += &buf[k - 1] * BigInt::from(n as usize - k);
        }
        buf[k] = v;
    }
}

/// Row `d` of the Eulerian triangle, built with a single reusable buffer.
pub fn eulerian_row(d: u32) -> Result<EulerianRow> {
    if d < 1 {
        return Err(Error::DimensionTooSmall { dim: d, min: 1 });
    }
    let mut buf = vec![BigInt::one()];
    for n in 2..=d {
        advance(&mut buf, n);
    }
    Ok(EulerianRow { d, entries: buf })
}

/// Walks rows `1..=d_max`, handing each to `visit`; stops at the first
/// `false`, returning the offending row index.
pub fn scan_rows<F: FnMut(&EulerianRow) -> bool>(d_max: u32, mut visit: F) -> Option<u32> {
    let mut row = EulerianRow { d: 1, entries: vec![BigInt::one()] };
    for n in 1..=d_max {
        if n > 1 {
            advance(&mut row.entries, n);
            row.d = n;
        }
        if !visit(&row) {
            return Some(n);
        }
    }
    None
}

/// Checks symmetry and `sum = d!` for every row up to `d_max`. Returns the
/// first failing `d`, if any.
pub fn check_rows(d_max: u32) -> Option<u32> {
    let mut fact = BigInt::one();
    scan_rows(d_max, |row| {
        fact *= BigInt::from(row.d);
        row.is_symmetric() && row.sum() == fact
    })
}

/// Offset between the hypersimplex identity's indexing and standard rows:
/// the identity uses `A(d - row_offset, i - index_offset)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerianConvention {
    pub row_offset: u32,
    pub index_offset: i64,
}

/// Offset resolved by [`calibrate_convention`].
pub const CALIBRATED: EulerianConvention = EulerianConvention { row_offset: 1, index_offset: 1 };

/// Scaled Eulerian value `sqrt(d)/(d-1)! * A(d - r, i - s)` as an element of
/// `Q(sqrt d)`.
fn scaled_value(d: u32, i: i64, conv: EulerianConvention, row: &EulerianRow) -> QuadExtValue {
    debug_assert_eq!(row.d, d - conv.row_offset);
    let a = row.get(i - conv.index_offset);
    let q = Rational::new(a, factorial(d - 1));
    QuadExtValue::surd(int(0), q, d as u64)
}

/// `I_d` at `t = sqrt(d)/2 - i/sqrt(d)`, which is irrational for non-square
/// `d`; there `z = i`, so the section sum is evaluated at rational `z`.
fn section_at_height(d: u32, i: u32) -> QuadExtValue {
    let s = alternating_sum(d, &int(i as i64));
    let q = s / Rational::from_integer(factorial(d - 1));
    QuadExtValue::surd(int(0), q, d as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypersimplexCheck {
    pub d: u32,
    pub i: u32,
    pub convention: EulerianConvention,
    pub section: QuadExtValue,
    pub scaled_eulerian: QuadExtValue,
    pub holds: bool,
}

/// Compares `I_d` at `t = sqrt(d)/2 - i/sqrt(d)` with the scaled Eulerian
/// number, exactly.
pub fn hypersimplex_identity_check(d: u32, i: u32) -> Result<HypersimplexCheck> {
    hypersimplex_check_with(d, i, CALIBRATED)
}

pub fn hypersimplex_check_with(d: u32, i: u32, convention: EulerianConvention) -> Result<HypersimplexCheck> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { dim: d, min: 2 });
    }
    if i > d / 2 {
        return Err(Error::IndexOutOfRange { dim: d, index: i });
    }
    let row = eulerian_row(d - convention.row_offset)?;
    let section = section_at_height(d, i);
    let scaled_eulerian = scaled_value(d, i as i64, convention, &row);
    let holds = section == scaled_eulerian;
    Ok(HypersimplexCheck { d, i, convention, section, scaled_eulerian, holds })
}

/// Finds the unique offset among the plausible ones for which the identity
/// holds for every `2 <= d <= d_max` and every admissible `i`.
pub fn calibrate_convention(d_max: u32) -> Option<EulerianConvention> {
    let mut hits = Vec::new();
    for row_offset in 0..=1 {
        for index_offset in -1..=1 {
            let conv = EulerianConvention { row_offset, index_offset };
            let ok = (2..=d_max)
                .all(|d| (0..=d / 2).all(|i| hypersimplex_check_with(d, i, conv).map(|c| c.holds).unwrap_or(false)));
            if ok {
                hits.push(conv);
            }
        }
    }
    if hits.len() == 1 {
        hits.pop()
    } else {
        None
    }
}

/// `floor(a * 2^k / b)` scaled back to `f64`; one rounding of an exact ratio.
fn ratio_f64(a: &BigInt, b: &BigInt) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    let shift = 64 + b.bits() as i64 - a.bits() as i64;
    let q = if shift >= 0 { (a << shift as usize).div_floor(b) } else { a.div_floor(&(b << (-shift) as usize)) };
    let top = q.to_f64().unwrap_or(f64::INFINITY);
    top * 2f64.powi(-(shift as i32))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalityReport {
    pub d: u32,
    pub max_dev: f64,
    /// `t` attaining `max_dev` on the grid.
    pub witness_t: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Maximum over `t in {0, 1/100, ...} ∩ [0, sqrt(d)/2)` of
/// `|sqrt(d)/(d-1)! A'(d, ceil(d/2 - sqrt(d) t)) - G(t)|`.
pub fn normality_deviation(d: u32) -> Result<NormalityReport> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { dim: d, min: 2 });
    }
    let row = eulerian_row(d - CALIBRATED.row_offset)?;
    let fact = factorial(d - 1);
    let sd = (d as f64).sqrt();
    let mut cache: std::collections::HashMap<i64, f64> = Default::default();
    let (mut max_dev, mut witness_t) = (0f64, 0f64);
    let mut j = 0i64;
    loop {
        // t = j/100 < sqrt(d)/2  iff  j^2 < 2500 d
        if j * j >= 2500 * d as i64 {
            break;
        }
        let i = ceil_index(d, j);
        let v = *cache
            .entry(i)
            .or_insert_with(|| sd * ratio_f64(&row.get(i - CALIBRATED.index_offset), &fact));
        let t = j as f64 / 100.0;
        let dev = (v - gaussian_f64(t)).abs();
        if dev > max_dev {
            max_dev = dev;
            witness_t = t;
        }
        j += 1;
    }
    let bound = eulerian_bound(d)?.hi_f64();
    Ok(NormalityReport { d, max_dev, witness_t, bound, pass: max_dev <= bound })
}

/// `ceil(d/2 - sqrt(d) j/100)`, exactly.
fn ceil_index(d: u32, j: i64) -> i64 {
    crate::numeric::ceil_surd(&rat(d as i64, 2), &rat(-j, 100), d as u64).to_i64().expect("small")
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    pub d: u32,
    pub i: i64,
    /// `|V_{i+1} - V_i|` for the scaled values on adjacent height intervals.
    pub step: f64,
    /// `(3.6/sqrt(d) - 24/d) sqrt(3/(2 pi)) e^{-0.54}`.
    pub lower_bound: f64,
    pub holds: bool,
}

/// The jump of the scaled Eulerian step function next to `t = 3/10`.
pub fn step_discontinuity(d: u32) -> Result<StepReport> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { dim: d, min: 2 });
    }
    let row = eulerian_row(d - CALIBRATED.row_offset)?;
    let fact = factorial(d - 1);
    let i = ceil_index(d, 30);
    let sd = (d as f64).sqrt();
    let v = |k: i64| sd * ratio_f64(&row.get(k - CALIBRATED.index_offset), &fact);
    let step = (v(i + 1) - v(i)).abs();
    let df = d as f64;
    let lower_bound = (3.6 / sd - 24.0 / df) * (3.0 / (2.0 * std::f64::consts::PI)).sqrt() * (-0.54f64).exp();
    Ok(StepReport { d, i, step, lower_bound, holds: step >= lower_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_rows() {
        assert_eq!(eulerian_row(3).unwrap().entries, ints(&[1, 4, 1]));
        assert_eq!(eulerian_row(4).unwrap().entries, ints(&[1, 11, 11, 1]));
        assert_eq!(eulerian_row(6).unwrap().sum(), BigInt::from(720));
        assert_eq!(check_rows(200), None);
    }

    #[test]
    fn calibration_finds_the_shifted_convention() {
        assert_eq!(calibrate_convention(10), Some(CALIBRATED));
    }

    #[test]
    fn identity_examples() {
        let c = hypersimplex_identity_check(2, 1).unwrap();
        assert!(c.holds);
        assert_eq!(c.section, QuadExtValue::sqrt(2));
        let c = hypersimplex_identity_check(4, 2).unwrap();
        assert!(c.holds);
        assert_eq!(c.section, QuadExtValue::rational(rat(4, 3)));
        assert!(hypersimplex_identity_check(3, 1).unwrap().holds);
        let wrong = EulerianConvention { row_offset: 0, index_offset: 1 };
        assert!(!hypersimplex_check_with(4, 2, wrong).unwrap().holds);
    }

    #[test]
    fn ratio_rounding() {
        let r = ratio_f64(&BigInt::from(1), &BigInt::from(3));
        assert!((r - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(ratio_f64(&BigInt::from(0), &BigInt::from(3)), 0.0);
    }

    #[test]
    fn small_d_deviation_is_vacuous() {
        let r = normality_deviation(2).unwrap();
        assert!(r.pass && r.bound > 1000.0);
    }
}
