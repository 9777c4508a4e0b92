//! Exact diagonal sections.
//!
//! With `z = d/2 - sqrt(d) t`,
//!
//! ```text
//! I_d(t) = sqrt(d)/(d-1)! * sum_{j=0}^{floor z} (-1)^j C(d,j) (z-j)^(d-1)
//! ```
//!
//! and `I_d(t) = 0` once `z < 0`. On each breakpoint interval `z in [i, i+1]`
//! the sum is a single polynomial in `z` with rational coefficients, and in
//! `t` it reads `(d O(t) + sqrt(d) E(t)) / (d-1)!` for rational `O`, `E`.
//!
//! For `d = 1` the empty power `0^0` is 1, so `I_1(1/2) = 1`; the value drops
//! to zero only for `t > 1/2`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{
    default_width, floor_surd, int, isolate_with_norm, rat, refine, IsolatingInterval, Poly, QuadExtValue, RatPoly,
    Rational, Sign, Var,
};

/// `I_d` on one breakpoint interval, as a polynomial in `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionPiece {
    pub d: u32,
    pub i: u32,
    pub poly_in_z: Poly,
    pub valid_z: (Rational, Rational),
}

/// Exact value of `I_d(t)`, an element of `Q(sqrt d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionValue {
    pub value: QuadExtValue,
    pub d: u32,
    pub t: Rational,
}

/// Hypersimplex heights `sqrt(d)/2 - i/sqrt(d)` for `0 <= i <= d/2`,
/// strictly decreasing in `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Breakpoints {
    pub d: u32,
    pub heights: Vec<QuadExtValue>,
}

pub fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn check_dim(d: u32) -> Result<()> {
    if d == 0 {
        Err(Error::DimensionTooSmall { dim: d, min: 1 })
    } else {
        Ok(())
    }
}

/// `sum_{j<=i} (-1)^j C(d,j) (z-j)^(d-1)` expanded in `z`.
pub fn piece_poly_z(d: u32, i: u32) -> RatPoly {
    let n = d - 1;
    let binom_d = binomial_row(d);
    let binom_n = binomial_row(n);
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    for j in 0..=i {
        let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let cj = &binom_d[j as usize] * sign;
        // (z - j)^n = sum_k C(n,k) z^k (-j)^(n-k)
        let mj = -BigInt::from(j);
        let mut pw = BigInt::one();
        for k in (0..=n as usize).rev() {
            coeffs[k] += &cj * &binom_n[k] * &pw;
            pw *= &mj;
        }
    }
    RatPoly::from_ints(&coeffs)
}

pub fn section_piece(d: u32, i: u32) -> Result<SectionPiece> {
    check_dim(d)?;
    if i > d / 2 {
        return Err(Error::IndexOutOfRange { dim: d, index: i });
    }
    let half = rat(d as i64, 2);
    let hi = int(i as i64 + 1).min(half);
    Ok(SectionPiece {
        d,
        i,
        poly_in_z: Poly::from_rat(&piece_poly_z(d, i), Var::Z),
        valid_z: (int(i as i64), hi),
    })
}

/// `I_d` on piece `i` as a polynomial in `t` over `Q(sqrt d)`.
pub fn piece_poly_t(d: u32, i: u32) -> Result<Poly> {
    check_dim(d)?;
    if i > d / 2 {
        return Err(Error::IndexOutOfRange { dim: d, index: i });
    }
    // Q(u) = P(d/2 - u); Q(sqrt(d) t) = E(t) + sqrt(d) O(t)
    let q = piece_poly_z(d, i).compose_affine(&rat(d as i64, 2), &int(-1));
    let dq = int(d as i64);
    let mut even = Vec::new();
    let mut odd = Vec::new();
    let mut dpow = Rational::one();
    for (k, c) in q.coeffs().iter().enumerate() {
        if k % 2 == 0 {
            even.push(c * &dpow);
            odd.push(Rational::zero());
        } else {
            even.push(Rational::zero());
            odd.push(c * &dpow);
            dpow *= &dq;
        }
    }
    let fact = Rational::from_integer(factorial(d - 1)).recip();
    let rational_part = RatPoly::new(odd).scale(&(&dq * &fact));
    let surd_part = RatPoly::new(even).scale(&fact);
    Ok(Poly::from_parts(&rational_part, &surd_part, d as u64, Var::T))
}

/// `sqrt(d)/2 - i/sqrt(d)`.
pub fn breakpoint(d: u32, i: u32) -> QuadExtValue {
    QuadExtValue::surd(Rational::zero(), rat(d as i64 - 2 * i as i64, 2 * d as i64), d as u64)
}

pub fn hypersimplex_heights(d: u32) -> Breakpoints {
    Breakpoints { d, heights: (0..=d / 2).map(|i| breakpoint(d, i)).collect() }
}

/// `x + y sqrt(m)` with integer parts.
#[derive(Clone)]
struct ZSqrt {
    x: BigInt,
    y: BigInt,
}

impl ZSqrt {
    fn mul(&self, o: &ZSqrt, m: &BigInt) -> ZSqrt {
        ZSqrt { x: &self.x * &o.x + &self.y * &o.y * m, y: &self.x * &o.y + &self.y * &o.x }
    }

    fn pow(&self, mut e: u32, m: &BigInt) -> ZSqrt {
        let mut acc = ZSqrt { x: BigInt::one(), y: BigInt::zero() };
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, m);
            }
        }
        acc
    }
}

/// The alternating sum at rational `z` (no `sqrt(d)/(d-1)!` prefactor).
/// Zero for `z < 0`.
pub fn alternating_sum(d: u32, z: &Rational) -> Rational {
    if z.is_negative() {
        return Rational::zero();
    }
    let top = z.floor().to_integer();
    let top = u32::try_from(top).unwrap_or(u32::MAX).min(d);
    let binom = binomial_row(d);
    let mut acc = Rational::zero();
    for j in 0..=top {
        let term = num_traits::pow(z - int(j as i64), (d - 1) as usize) * Rational::from_integer(binom[j as usize].clone());
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Exact `I_d(t)`. Uses `|t|`, since sections are symmetric about the centre.
pub fn eval_exact(d: u32, t: &Rational) -> Result<SectionValue> {
    check_dim(d)?;
    let t = t.abs();
    let value = section_value(d, &t);
    Ok(SectionValue { value, d, t })
}

fn section_value(d: u32, t: &Rational) -> QuadExtValue {
    let p = t.numer().clone();
    let q = t.denom().clone();
    // z = d/2 - (p/q) sqrt(d)
    let top = floor_surd(&rat(d as i64, 2), &-t, d as u64);
    if top.is_negative() {
        return QuadExtValue::zero();
    }
    let top = u32::try_from(top).unwrap_or(u32::MAX).min(d / 2);
    let m = BigInt::from(d);
    let binom = binomial_row(d);
    let mut sx = BigInt::zero();
    let mut sy = BigInt::zero();
    // 2q (z - j) = q (d - 2j) - 2p sqrt(d)
    let b: BigInt = -(&p * BigInt::from(2));
    for j in 0..=top {
        let a = &q * (d as i64 - 2 * j as i64);
        let term = ZSqrt { x: a, y: b.clone() }.pow(d - 1, &m);
        let c = &binom[j as usize];
        if j % 2 == 0 {
            sx += &term.x * c;
            sy += &term.y * c;
        } else {
            sx -= &term.x * c;
            sy -= &term.y * c;
        }
    }
    // sqrt(d) (sx + sy sqrt(d)) = d sy + sx sqrt(d)
    let den: BigInt = factorial(d - 1) * num_traits::pow(&q * BigInt::from(2), (d - 1) as usize);
    QuadExtValue::surd(Rational::new(&sy * &m, den.clone()), Rational::new(sx, den), d as u64)
}

/// Exact sign of `I_{d+1}(t) - I_d(t)`.
pub fn diff_sign(d: u32, t: &Rational) -> Result<Sign> {
    Ok(section_difference(d, t)?.sign())
}

/// `I_{d+1}(t) - I_d(t)` in `Q(sqrt d, sqrt(d+1))`.
pub fn section_difference(d: u32, t: &Rational) -> Result<QuadExtValue> {
    check_dim(d)?;
    let t = t.abs();
    section_value(d + 1, &t).checked_sub(&section_value(d, &t))
}

/// Index of the piece of `I_d` in force at `t >= 0`, or `None` beyond the
/// support. At a breakpoint the larger index wins.
pub fn piece_index(d: u32, t: &Rational) -> Option<u32> {
    let top = floor_surd(&rat(d as i64, 2), &-t, d as u64);
    if top.is_negative() {
        None
    } else {
        Some(u32::try_from(top).unwrap_or(u32::MAX).min(d / 2))
    }
}

/// All `t` in the open range where `I_{d+1}(t) = I_d(t)`, refined to the
/// default width.
pub fn isolate_crossings(d: u32, t_range: (&Rational, &Rational)) -> Result<Vec<IsolatingInterval>> {
    isolate_crossings_to(d, t_range, &default_width())
}

pub fn isolate_crossings_to(d: u32, t_range: (&Rational, &Rational), width: &Rational) -> Result<Vec<IsolatingInterval>> {
    check_dim(d)?;
    let (a, b) = t_range;
    if a >= b {
        return Ok(Vec::new());
    }
    let lo_v = QuadExtValue::rational(a.clone());
    let hi_v = QuadExtValue::rational(b.clone());
    // merged breakpoint grid of d and d+1, restricted to the range
    let mut cuts = vec![lo_v.clone(), hi_v.clone()];
    for dd in [d, d + 1] {
        for i in 0..=dd / 2 {
            let bp = breakpoint(dd, i);
            if bp.cmp_exact(&lo_v)? == Ordering::Greater && bp.cmp_exact(&hi_v)? == Ordering::Less {
                cuts.push(bp);
            }
        }
    }
    let mut err = None;
    cuts.sort_by(|x, y| {
        x.cmp_exact(y).unwrap_or_else(|e| {
            err = Some(e);
            Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    cuts.dedup();

    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (l, r) = (&w[0], &w[1]);
        let mid_iv = l.to_interval(80).hull(&r.to_interval(80));
        let mid = Rational::new(BigInt::one(), BigInt::from(2)) * (mid_iv.lo_rational() + mid_iv.hi_rational());
        let mid = if exact_between(l, r, &mid)? { mid } else { exact_mid(l, r)? };
        let pd = match piece_index(d, &mid) {
            Some(i) => piece_poly_t(d, i)?,
            None => Poly::new(Vec::new(), Var::T),
        };
        let pd1 = match piece_index(d + 1, &mid) {
            Some(j) => piece_poly_t(d + 1, j)?,
            None => Poly::new(Vec::new(), Var::T),
        };
        let diff = pd1.checked_sub(&pd)?;
        if diff.is_zero() {
            continue;
        }
        // outer rational enclosure of the cell
        let outer_lo = l.as_rational().cloned().unwrap_or_else(|| l.to_interval(64).lo_rational());
        let outer_hi = r.as_rational().cloned().unwrap_or_else(|| r.to_interval(64).hi_rational());
        let (roots, sf) = isolate_with_norm(&diff, (&outer_lo, &outer_hi))?;
        for iv in roots {
            if let Some(kept) = place_in_cell(&sf, iv, l, r, width)? {
                out.push(kept);
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

fn exact_between(l: &QuadExtValue, r: &QuadExtValue, x: &Rational) -> Result<bool> {
    let xv = QuadExtValue::rational(x.clone());
    Ok(l.cmp_exact(&xv)? == Ordering::Less && xv.cmp_exact(r)? == Ordering::Less)
}

fn exact_mid(l: &QuadExtValue, r: &QuadExtValue) -> Result<Rational> {
    let mut prec = 128;
    loop {
        let li = l.to_interval(prec);
        let ri = r.to_interval(prec);
        let m = (li.hi_rational() + ri.lo_rational()) / int(2);
        if exact_between(l, r, &m)? {
            return Ok(m);
        }
        prec *= 2;
    }
}

const CELL_REFINE_LIMIT: u32 = 400;

/// Refines a root interval until it is decidedly inside or outside the cell
/// `[l, r)`. A root sitting exactly on `l` stays with this cell; one on `r`
/// belongs to the next.
fn place_in_cell(
    sf: &RatPoly,
    iv: IsolatingInterval,
    l: &QuadExtValue,
    r: &QuadExtValue,
    width: &Rational,
) -> Result<Option<IsolatingInterval>> {
    let mut cur = refine(&iv, |x| sf.sign_at(x), width)?;
    cur.multiplicity_hint = iv.multiplicity_hint;
    for _ in 0..CELL_REFINE_LIMIT {
        let lo = QuadExtValue::rational(cur.lo.clone());
        let hi = QuadExtValue::rational(cur.hi.clone());
        if hi.cmp_exact(l)? != Ordering::Greater || lo.cmp_exact(r)? != Ordering::Less {
            return Ok(None);
        }
        let inside_l = lo.cmp_exact(l)? != Ordering::Less;
        let inside_r = hi.cmp_exact(r)? != Ordering::Greater;
        if inside_l && inside_r {
            return Ok(Some(cur));
        }
        let half = cur.width() / int(2);
        let hint = cur.multiplicity_hint;
        cur = refine(&cur, |x| sf.sign_at(x), &half)?;
        cur.multiplicity_hint = hint;
    }
    // still straddling a cut after deep refinement: the root is the cut itself
    let lo = QuadExtValue::rational(cur.lo.clone());
    Ok((lo.cmp_exact(l)? == Ordering::Less).then_some(cur))
}
