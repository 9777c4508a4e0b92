//! Exact sections against an independent oracle: the Irwin-Hall density
//! built by repeated convolution of uniform densities, in exact rationals.
//! `I_d(t) = sqrt(d) f_d(d/2 - sqrt(d) t)`; for square `d` everything is rational.

use cube_sections::numeric::{rat, rational_to_f64, QuadExtValue, Rational, Sign};
use cube_sections::quadrature::{integrate, IntegrandSpec, QuadratureConfig};
use cube_sections::sections::{
    alternating_sum, breakpoint, diff_sign, eval_exact, isolate_crossings, piece_poly_t,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Density of the sum of `n` uniforms: piece `k` is a polynomial in the
/// local coordinate `u = x - k` on `[k, k+1)`.
fn irwin_hall(n: usize) -> Vec<Vec<Rational>> {
    let mut pieces = vec![vec![Rational::one()]];
    for _ in 1..n {
        // antiderivatives vanishing at u = 0
        let anti: Vec<Vec<Rational>> = pieces
            .iter()
            .map(|p| {
                let mut a = vec![Rational::zero()];
                a.extend(p.iter().enumerate().map(|(i, c)| c / Rational::from_integer((i as i64 + 1).into())));
                a
            })
            .collect();
        let eval = |p: &Vec<Rational>, u: &Rational| p.iter().rev().fold(Rational::zero(), |acc, c| acc * u + c);
        let mut next = Vec::new();
        for k in 0..=pieces.len() {
            // f_{n+1}(k+u) = A_{k-1}(1) - A_{k-1}(u) + A_k(u)
            let deg = anti[0].len();
            let mut poly = vec![Rational::zero(); deg];
            if k > 0 {
                let prev = &anti[k - 1];
                poly[0] += eval(prev, &Rational::one());
                for (i, c) in prev.iter().enumerate() {
                    poly[i] -= c;
                }
            }
            if k < anti.len() {
                for (i, c) in anti[k].iter().enumerate() {
                    poly[i] += c;
                }
            }
            next.push(poly);
        }
        pieces = next;
    }
    pieces
}

fn density(pieces: &[Vec<Rational>], x: &Rational) -> Rational {
    if *x < Rational::zero() {
        return Rational::zero();
    }
    let k = x.floor().to_integer();
    let k: usize = k.try_into().unwrap();
    match pieces.get(k) {
        Some(p) => {
            let u = x - Rational::from_integer(k.into());
            p.iter().rev().fold(Rational::zero(), |acc, c| acc * &u + c)
        }
        None => Rational::zero(),
    }
}

#[test]
fn square_dimensions_match_convolution_oracle() {
    for m in 1..=6i64 {
        let d = (m * m) as usize;
        let pieces = irwin_hall(d);
        for j in 0..=40 {
            // t from 0 to past the support edge m/2
            let t = rat(j * m, 60);
            let z = rat(m * m, 2) - rat(m, 1) * &t;
            let want = rat(m, 1) * density(&pieces, &z);
            let got = eval_exact(d as u32, &t).unwrap().value;
            assert_eq!(got, QuadExtValue::rational(want), "d={d} t={t}");
        }
    }
}

#[test]
fn frozen_values() {
    // 3 sqrt3 / 4
    assert_eq!(eval_exact(3, &rat(0, 1)).unwrap().value, QuadExtValue::surd(rat(0, 1), rat(3, 4), 3));
    assert_eq!(eval_exact(2, &rat(1, 4)).unwrap().value, QuadExtValue::surd(rat(-1, 2), rat(1, 1), 2));
    assert!(eval_exact(4, &rat(1, 1)).unwrap().value.is_zero());
    // the d = 1 convention at the edge
    assert_eq!(eval_exact(1, &rat(1, 2)).unwrap().value, QuadExtValue::rational(rat(1, 1)));
    assert!(eval_exact(1, &rat(3, 5)).unwrap().value.is_zero());
    // 115/192 is the Irwin-Hall density of order 5 at its centre
    assert_eq!(eval_exact(5, &rat(0, 1)).unwrap().value, QuadExtValue::surd(rat(0, 1), rat(115, 192), 5));
}

fn horner(p: &cube_sections::Poly, x: &QuadExtValue) -> QuadExtValue {
    p.coeffs().iter().rev().fold(QuadExtValue::zero(), |acc, c| acc.checked_mul(x).unwrap().checked_add(c).unwrap())
}

#[test]
fn pieces_are_continuous_at_breakpoints() {
    for d in 2..=40u32 {
        for i in 1..=d / 2 {
            let t = breakpoint(d, i);
            let left = horner(&piece_poly_t(d, i - 1).unwrap(), &t);
            let right = horner(&piece_poly_t(d, i).unwrap(), &t);
            assert_eq!(left, right, "d={d} i={i}");
        }
    }
}

#[test]
fn centre_values_increase_towards_the_limit() {
    let limit = (6.0 / std::f64::consts::PI).sqrt();
    let mut prev = eval_exact(3, &rat(0, 1)).unwrap().value;
    for d in 4..=60u32 {
        let cur = eval_exact(d, &rat(0, 1)).unwrap().value;
        assert_eq!(cur.cmp_exact(&prev).unwrap(), std::cmp::Ordering::Greater, "d={d}");
        let iv = cur.to_interval(128);
        assert!(iv.lo_f64() > 1.0 && iv.hi_f64() < limit, "d={d}");
        prev = cur;
    }
}

#[test]
fn alternating_sum_is_symmetric() {
    for d in 1..=15u32 {
        for k in 0..=(4 * d as i64) {
            // I_1 jumps at the support ends, where the 0^0 = 1 convention breaks the symmetry
            if d == 1 && (k == 0 || k == 4) {
                continue;
            }
            let z = rat(k, 4);
            let w = rat(d as i64, 1) - &z;
            assert_eq!(alternating_sum(d, &z), alternating_sum(d, &w), "d={d} z={z}");
        }
    }
}

#[test]
fn sign_is_constant_between_crossings() {
    for d in 1..=8u32 {
        // squares keep the range endpoint rational: use (d+1)/4 >= b^2
        let b = rat(((d + 1) as f64).sqrt().floor() as i64, 2);
        let a = rat(0, 1);
        let roots = isolate_crossings(d, (&a, &b)).unwrap();
        let mut cuts = vec![a.clone()];
        for r in &roots {
            cuts.push(r.lo.clone());
            cuts.push(r.hi.clone());
        }
        cuts.push(b.clone());
        for gap in cuts.chunks(2) {
            let (lo, hi) = (&gap[0], &gap[1]);
            let signs: Vec<Sign> = (1..=10)
                .map(|k| {
                    let t = lo + (hi - lo) * rat(k, 11);
                    diff_sign(d, &t).unwrap()
                })
                .collect();
            assert!(signs.iter().all(|s| *s == signs[0]), "d={d} on ({lo}, {hi}): {signs:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn exact_matches_quadrature(d in 1u32..=30, num in 0i64..=1000) {
        // t uniform on [0, sqrt(d)/2]
        let t = rat((num as f64 * (d as f64).sqrt() / 2.0).floor() as i64, 1000);
        let exact = eval_exact(d, &t).unwrap().value.to_f64();
        let quad = integrate(&IntegrandSpec::section(d, rational_to_f64(&t)), &QuadratureConfig::with_tol(1e-10)).unwrap();
        prop_assert!((exact - quad).abs() <= 1e-8, "d={} t={} {} {}", d, t, exact, quad);
    }

    #[test]
    fn sections_are_even_and_nonnegative(d in 1u32..=40, p in -2000i64..=2000) {
        let t = rat(p, 1000);
        let v = eval_exact(d, &t).unwrap().value;
        prop_assert_eq!(&v, &eval_exact(d, &-t).unwrap().value);
        prop_assert!(v.sign() != Sign::Negative);
    }

    #[test]
    fn zero_past_the_vertex(d in 1u32..=40, extra in 1i64..=100) {
        // t > sqrt(d)/2  iff  4 t^2 > d
        let t = rat((d as f64).sqrt().ceil() as i64 * 100 + extra, 200);
        prop_assume!(rat(4, 1) * &t * &t > rat(d as i64, 1));
        prop_assert!(eval_exact(d, &t).unwrap().value.is_zero());
    }
}
