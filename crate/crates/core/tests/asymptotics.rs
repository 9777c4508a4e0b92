use cube_sections::asymptotics::{
    convexity_violations, first_order_estimate, gaussian, limit_difference, moment_multiplier, quartic_sign,
    second_order_estimate, t_moment, threshold, ThresholdKind,
};
use cube_sections::numeric::{rat, rational_to_f64, RatPoly, Rational, Sign};
use cube_sections::quadrature::{integrate, IntegrandSpec, QuadratureConfig};
use cube_sections::Error;
use proptest::prelude::*;

/// Published closed forms `T_k = M_k T_0`, `k <= 6`.
fn closed_form(k: u32) -> RatPoly {
    let c: &[i64] = match k {
        0 => &[1],
        1 => &[0, 6],
        2 => &[3, 0, -36],
        3 => &[0, 54, 0, -216],
        4 => &[27, 0, -648, 0, 1296],
        5 => &[0, 810, 0, -6480, 0, 7776],
        6 => &[405, 0, -14580, 0, 58320, 0, -46656],
        _ => unreachable!(),
    };
    RatPoly::from_i64(c)
}

#[test]
fn recursion_reproduces_closed_forms() {
    for k in 0..=6 {
        assert_eq!(moment_multiplier(k), closed_form(k), "k={k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn moments_agree_at_random_t(num in -3000i64..=3000) {
        let t = rat(num, 1000);
        for k in 0..=6 {
            prop_assert_eq!(moment_multiplier(k).eval(&t), closed_form(k).eval(&t));
            let m = t_moment(k, &t);
            let want = closed_form(k).eval_f64(rational_to_f64(&t)) * gaussian(&t, 128).mid_f64();
            prop_assert!(m.value.contains_f64(want) || (m.value.mid_f64() - want).abs() < 1e-12 * (1.0 + want.abs()));
        }
    }

    #[test]
    fn limit_sign_follows_quartic(num in 0i64..=100_000) {
        let t = rat(num, 100_000);
        let s = limit_difference(&t).sign();
        prop_assert_eq!(s, Some(quartic_sign(&t)));
    }
}

#[test]
fn envelopes_contain_quadrature() {
    let cfg = QuadratureConfig::with_tol(1e-12);
    for d in [136u32, 150, 200, 300] {
        for t in ["0", "0.1", "0.2141", "0.3", "0.5", "0.67"] {
            let tq = cube_sections::numeric::parse_rational(t).unwrap();
            let v = integrate(&IntegrandSpec::section(d, rational_to_f64(&tq)), &cfg).unwrap();
            assert!(first_order_estimate(d, &tq).unwrap().contains(v), "first order d={d} t={t}");
            assert!(second_order_estimate(d, &tq).unwrap().contains(v), "second order d={d} t={t}");
        }
    }
}

#[test]
fn estimates_refuse_small_dimensions() {
    assert!(matches!(first_order_estimate(135, &rat(0, 1)), Err(Error::DimensionTooSmall { .. })));
    assert!(matches!(second_order_estimate(100, &rat(0, 1)), Err(Error::DimensionTooSmall { .. })));
}

#[test]
fn threshold_examples() {
    let at = |t: Rational| threshold(ThresholdKind::MonotonicityDelta, &t).unwrap();
    assert_eq!(at(rat(0, 1)).ceiling, 136);
    // 540.58..., not the rounded 549 one gets from a two-digit denominator
    let v = at(rat(21, 100)).value;
    assert!(v.lo_f64() > 540.58 && v.hi_f64() < 540.59);
    // grows without bound towards gamma-
    assert!(at(rat(2141, 10000)).ceiling > 10_000);
    assert_eq!(threshold(ThresholdKind::ExtremalityN, &rat(0, 1)).unwrap().ceiling, 124);
}

#[test]
fn convexity_spot_check() {
    // reported, not asserted: the convexity of the thresholds is assumed
    let gm = 0.214_18;
    let gp = 0.673_88;
    for kind in [ThresholdKind::MonotonicityDelta, ThresholdKind::ExtremalityN] {
        for (a, b) in [(0.0, gm - 1e-3), (gm + 1e-3, gp - 1e-3), (gp + 1e-3, 1.0)] {
            let bad = convexity_violations(kind, a, b, 100);
            println!("{kind:?} on [{a}, {b}]: {} midpoint-convexity violations", bad.len());
        }
    }
    assert_eq!(quartic_sign(&rat(1, 2)), Sign::Negative);
}
