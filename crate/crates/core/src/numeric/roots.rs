use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{DyadicInterval, Poly, RatPoly, Rational, Sign};
use crate::error::{Error, Result};

/// Guard against nontermination of the subdivision search.
pub const MAX_SUBDIVISIONS: usize = 1_000_000;

/// Open interval `(lo, hi)` containing exactly one root of some function,
/// which is nonzero at both endpoints.
///
/// `multiplicity_hint` is 1 when the function changes sign across the
/// interval and 2 when it touches zero without crossing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity_hint: u32,
}

impl IsolatingInterval {
    pub fn new(lo: Rational, hi: Rational) -> IsolatingInterval {
        IsolatingInterval { lo, hi, multiplicity_hint: 1 }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn lo_f64(&self) -> f64 {
        super::rational_to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        super::rational_to_f64(&self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        super::rational_to_f64(&self.mid())
    }

    /// True if `[lo, hi]` lies strictly inside `(a, b)`.
    pub fn strictly_inside(&self, a: &Rational, b: &Rational) -> bool {
        a < &self.lo && &self.hi < b
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn as_interval(&self, prec: u32) -> DyadicInterval {
        DyadicInterval::from_rational_bounds(&self.lo, &self.hi, prec)
    }
}

fn two() -> Rational {
    Rational::from_integer(BigInt::from(2))
}

fn taylor_shift1(a: &mut [BigInt]) {
    let n = a.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let next = a[j + 1].clone();
            a[j] += next;
        }
    }
}

fn variations(a: &[BigInt]) -> usize {
    let mut count = 0;
    let mut last = Sign::Zero;
    for c in a {
        let s = Sign::of_bigint(c);
        if s.is_zero() {
            continue;
        }
        if !last.is_zero() && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Descartes bound for the number of roots of `q` in `(0, 1)`.
fn descartes01(q: &[BigInt]) -> usize {
    let mut r: Vec<BigInt> = q.iter().rev().cloned().collect();
    taylor_shift1(&mut r);
    variations(&r)
}

fn remove_content(q: &mut [BigInt]) {
    let g = q.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in q.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// `p(lo + (hi - lo) x)` as a primitive integer polynomial.
fn to_unit(p: &RatPoly, lo: &Rational, hi: &Rational) -> Vec<BigInt> {
    p.compose_affine(lo, &(hi - lo)).primitive_int()
}

/// Upper bound on the number of roots of `p` in the open interval; exact
/// when it is 0 or 1.
fn descartes_count(p: &RatPoly, lo: &Rational, hi: &Rational) -> usize {
    descartes01(&to_unit(p, lo, hi))
}

enum Found {
    Interval(BigInt, u32),
    Exact(BigInt, u32),
}

/// Vincent-Collins-Akritas bisection on `(0, 1)`.
fn vca(q0: Vec<BigInt>) -> Result<Vec<Found>> {
    let mut out = Vec::new();
    let mut stack = vec![(q0, BigInt::zero(), 0u32)];
    let mut steps = 0usize;
    while let Some((mut q, c, k)) = stack.pop() {
        steps += 1;
        if steps > MAX_SUBDIVISIONS {
            return Err(Error::SubdivisionLimit { limit: MAX_SUBDIVISIONS });
        }
        if q.first().is_some_and(|c0| c0.is_zero()) {
            // exact root at the left endpoint; the outer lower bound is excluded
            if !(c.is_zero() && k == 0) {
                out.push(Found::Exact(c.clone(), k));
            }
            while q.first().is_some_and(|c0| c0.is_zero()) {
                q.remove(0);
            }
        }
        if q.len() <= 1 {
            continue;
        }
        match descartes01(&q) {
            0 => {}
            1 => out.push(Found::Interval(c, k)),
            _ => {
                let n = q.len() - 1;
                let mut left: Vec<BigInt> = q.iter().enumerate().map(|(i, a)| a << (n - i)).collect();
                remove_content(&mut left);
                let mut right = left.clone();
                taylor_shift1(&mut right);
                stack.push((right, &c * 2 + 1, k + 1));
                stack.push((left, c * 2, k + 1));
            }
        }
    }
    Ok(out)
}

/// Isolating intervals for the real roots of `p` in the open interval
/// `(domain.0, domain.1)`, sorted.
pub fn isolate_real_roots(p: &RatPoly, domain: (&Rational, &Rational)) -> Result<Vec<IsolatingInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.squarefree_part()?;
    isolate_squarefree(&sf, domain)
}

fn isolate_squarefree(sf: &RatPoly, domain: (&Rational, &Rational)) -> Result<Vec<IsolatingInterval>> {
    let (a, b) = domain;
    if sf.degree() == 0 || a >= b {
        return Ok(Vec::new());
    }
    let w = b - a;
    let at = |c: &BigInt, k: u32| a + &w * Rational::new(c.clone(), BigInt::one() << k);
    let mut ivs = Vec::new();
    let mut exact = Vec::new();
    for f in vca(to_unit(sf, a, b))? {
        match f {
            Found::Interval(c, k) => ivs.push(IsolatingInterval::new(at(&c, k), at(&(&c + 1), k))),
            Found::Exact(c, k) => exact.push((at(&c, k), &w / Rational::from_integer(BigInt::one() << (k + 2)))),
        }
    }
    // endpoints that are roots belong to the neighbouring interval; pull them in
    for iv in ivs.iter_mut() {
        let step = iv.width();
        let mut j = 2u32;
        while sf.sign_at(&iv.lo).is_zero() {
            let cand = &iv.lo + &step / Rational::from_integer(BigInt::one() << j);
            if !sf.sign_at(&cand).is_zero() && descartes_count(sf, &cand, &iv.hi) == 1 {
                iv.lo = cand;
            }
            j += 1;
        }
        let mut j = 2u32;
        while sf.sign_at(&iv.hi).is_zero() {
            let cand = &iv.hi - &step / Rational::from_integer(BigInt::one() << j);
            if !sf.sign_at(&cand).is_zero() && descartes_count(sf, &iv.lo, &cand) == 1 {
                iv.hi = cand;
            }
            j += 1;
        }
    }
    for (r, mut eps) in exact {
        loop {
            let lo = &r - &eps;
            let hi = &r + &eps;
            let clear = ivs.iter().all(|o| hi <= o.lo || o.hi <= lo);
            if clear
                && !sf.sign_at(&lo).is_zero()
                && !sf.sign_at(&hi).is_zero()
                && descartes_count(sf, &lo, &hi) == 1
            {
                ivs.push(IsolatingInterval::new(lo, hi));
                break;
            }
            eps /= two();
        }
    }
    ivs.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(ivs)
}

/// Isolating intervals for the roots of `p` (coefficients in up to two
/// quadratic extensions) in the open interval `domain`.
///
/// Roots of the norm that are roots of a conjugate only are discarded by an
/// exact sign test at the endpoints, falling back to interval evaluation of
/// `p` on shrinking enclosures.
pub fn isolate_roots(p: &Poly, domain: (&Rational, &Rational)) -> Result<Vec<IsolatingInterval>> {
    Ok(isolate_with_norm(p, domain)?.0)
}

/// [`isolate_roots`] followed by refinement of every interval to `width`.
pub fn isolate_roots_refined(p: &Poly, domain: (&Rational, &Rational), width: &Rational) -> Result<Vec<IsolatingInterval>> {
    let (ivs, sf) = isolate_with_norm(p, domain)?;
    ivs.into_iter().map(|iv| refine(&iv, |x| sf.sign_at(x), width)).collect()
}

/// [`isolate_roots`] plus the squarefree norm polynomial, whose sign changes
/// across every returned interval and can drive further refinement.
pub fn isolate_with_norm(p: &Poly, domain: (&Rational, &Rational)) -> Result<(Vec<IsolatingInterval>, RatPoly)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.norm()?.squarefree_part()?;
    let mut out = Vec::new();
    for iv in isolate_squarefree(&sf, domain)? {
        if let Some(kept) = filter_conjugate(p, &sf, iv)? {
            out.push(kept);
        }
    }
    Ok((out, sf))
}

const FILTER_STEPS: u32 = 256;

fn filter_conjugate(p: &Poly, sf: &RatPoly, iv: IsolatingInterval) -> Result<Option<IsolatingInterval>> {
    let (sl, sh) = (p.sign_at(&iv.lo)?, p.sign_at(&iv.hi)?);
    if sl != sh {
        return Ok(Some(iv));
    }
    let mut cur = iv.clone();
    for step in 0..FILTER_STEPS {
        let prec = 96 + 2 * step;
        let enc = p.eval_interval(&cur.as_interval(prec));
        if !enc.contains_zero() {
            return Ok(None);
        }
        let mid = cur.mid();
        let sm = sf.sign_at(&mid);
        if sm.is_zero() {
            return Ok(p.sign_at(&mid)?.is_zero().then(|| IsolatingInterval { multiplicity_hint: 2, ..iv.clone() }));
        }
        if sm == sf.sign_at(&cur.lo) {
            cur.lo = mid;
        } else {
            cur.hi = mid;
        }
    }
    Ok(Some(IsolatingInterval { multiplicity_hint: 2, ..iv }))
}

/// Bisects `iv` down to `width` using the exact sign function `f`, which
/// must have opposite nonzero signs at the endpoints.
pub fn refine<F>(iv: &IsolatingInterval, f: F, width: &Rational) -> Result<IsolatingInterval>
where
    F: Fn(&Rational) -> Sign,
{
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    let sl = f(&lo);
    let sh = f(&hi);
    if sl.is_zero() || sh.is_zero() || sl == sh {
        return Err(no_sign_change(&lo, &hi));
    }
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / two();
        let sm = f(&mid);
        if sm.is_zero() {
            let mut eps = width / Rational::from_integer(BigInt::from(4));
            for _ in 0..64 {
                let (a, b) = (&mid - &eps, &mid + &eps);
                let (sa, sb) = (f(&a), f(&b));
                if !sa.is_zero() && !sb.is_zero() && sa != sb {
                    return Ok(IsolatingInterval { lo: a, hi: b, multiplicity_hint: iv.multiplicity_hint });
                }
                eps /= two();
            }
            return Ok(IsolatingInterval { lo: &mid - &eps, hi: &mid + &eps, multiplicity_hint: iv.multiplicity_hint });
        }
        if sm == sl {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(IsolatingInterval { lo, hi, multiplicity_hint: iv.multiplicity_hint })
}

fn no_sign_change(lo: &Rational, hi: &Rational) -> Error {
    Error::NoSignChange { lo: super::format_rational(lo), hi: super::format_rational(hi) }
}

pub const START_BITS: u32 = 128;
pub const MAX_BITS: u32 = 4096;

/// Certified sign of an interval-valued function at `x`, doubling the
/// precision from 128 bits until the enclosure excludes zero.
pub fn certified_sign<F>(f: &F, x: &Rational) -> Result<Sign>
where
    F: Fn(&Rational, u32) -> DyadicInterval,
{
    let mut bits = START_BITS;
    loop {
        if let Some(s) = f(x, bits).sign() {
            return Ok(s);
        }
        if bits >= MAX_BITS {
            return Err(Error::PrecisionExhausted { bits });
        }
        bits *= 2;
    }
}

/// Bisection for a root of a transcendental function given by interval
/// enclosures. The endpoints must have opposite certified signs.
pub fn refine_certified<F>(lo: &Rational, hi: &Rational, f: F, width: &Rational) -> Result<IsolatingInterval>
where
    F: Fn(&Rational, u32) -> DyadicInterval,
{
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let sl = certified_sign(&f, &lo)?;
    let sh = certified_sign(&f, &hi)?;
    if sl.is_zero() || sh.is_zero() || sl == sh {
        return Err(no_sign_change(&lo, &hi));
    }
    while &hi - &lo > *width {
        let w = &hi - &lo;
        let mut decided = None;
        // an undecidable midpoint is almost on the root; nudge it
        for nudge in [0i64, 1, -1, 3, -3] {
            let mid = (&lo + &hi) / two() + &w * Rational::new(BigInt::from(nudge), BigInt::from(16));
            match certified_sign(&f, &mid) {
                Ok(s) if !s.is_zero() => {
                    decided = Some((mid, s));
                    break;
                }
                Ok(_) | Err(Error::PrecisionExhausted { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        let (mid, sm) = decided.ok_or(Error::PrecisionExhausted { bits: MAX_BITS })?;
        if sm == sl {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(IsolatingInterval::new(lo, hi))
}

/// `1/10^8`, the default refinement width.
pub fn default_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(100_000_000))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat, QuadExtValue, Var};

    #[test]
    fn sqrt2() {
        let p = RatPoly::from_i64(&[-2, 0, 1]);
        let ivs = isolate_real_roots(&p, (&int(0), &int(2))).unwrap();
        assert_eq!(ivs.len(), 1);
        let r = refine(&ivs[0], |x| p.sign_at(x), &rat(1, 100)).unwrap();
        assert!(r.width() <= rat(1, 100));
        assert!(r.lo < rat(1414214, 1000000) && rat(1414213, 1000000) < r.hi);
    }

    #[test]
    fn exact_rational_roots() {
        // (2t-1)(4t-1)(t-1) on (0, 1): roots 1/4, 1/2 exactly; 1 excluded
        let p = &(&RatPoly::from_i64(&[-1, 2]) * &RatPoly::from_i64(&[-1, 4])) * &RatPoly::from_i64(&[-1, 1]);
        let ivs = isolate_real_roots(&p, (&int(0), &int(1))).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(ivs[0].contains(&rat(1, 4)));
        assert!(ivs[1].contains(&rat(1, 2)));
        for iv in &ivs {
            assert!(!p.sign_at(&iv.lo).is_zero() && !p.sign_at(&iv.hi).is_zero());
        }
        // root at the lower domain endpoint is excluded
        let q = RatPoly::from_i64(&[0, 1]);
        assert!(isolate_real_roots(&q, (&int(0), &int(1))).unwrap().is_empty());
    }

    #[test]
    fn quartic_gamma_roots() {
        let p = RatPoly::from_i64(&[1, 0, -24, 0, 48]);
        let ivs = isolate_real_roots(&p, (&int(0), &int(1))).unwrap();
        assert_eq!(ivs.len(), 2);
        let g = refine(&ivs[0], |x| p.sign_at(x), &rat(1, 100_000_000)).unwrap();
        assert!(g.strictly_inside(&rat(21418, 100000), &rat(21419, 100000)));
    }

    #[test]
    fn conjugate_roots_are_filtered() {
        // t - (sqrt2 - 1): norm (t+1)^2 - 2 also vanishes at -1 - sqrt2, and
        // t + 1 - sqrt2 is the only genuine root; t = sqrt2 - 1 ~ 0.414
        let p = Poly::new(vec![QuadExtValue::surd(int(1), int(-1), 2), QuadExtValue::rational(int(1))], Var::T);
        let ivs = isolate_roots(&p, (&int(-3), &int(1))).unwrap();
        assert_eq!(ivs.len(), 1);
        assert!(ivs[0].contains(&rat(414, 1000)) || ivs[0].width() > rat(0, 1));
        assert!(ivs[0].lo < rat(4143, 10000) && rat(4142, 10000) < ivs[0].hi);
    }

    #[test]
    fn certified_refinement_of_transcendental_root() {
        // exp(t) = 2 on (0, 1)
        let f = |x: &Rational, bits: u32| {
            &DyadicInterval::from_rational(x, bits).exp() - &DyadicInterval::from_i64(2, bits)
        };
        let iv = refine_certified(&int(0), &int(1), f, &rat(1, 10_000_000)).unwrap();
        assert!(iv.lo_f64() <= std::f64::consts::LN_2 && std::f64::consts::LN_2 <= iv.hi_f64());
        assert!(refine_certified(&int(1), &int(2), f, &rat(1, 10)).is_err());
    }
}
