use cube_sections::asymptotics::{gaussian, threshold, ThresholdKind};
use cube_sections::monotonicity::{
    alpha34_circ_poly, alpha34_minus_poly, alpha34_plus_poly, certify_sign, certify_sign_with, delta_poly,
    monotonicity_window, monotonicity_window_capped, named_constants, sup_inf, CertMethod, CertPolicy, Extremum,
    SignOutcome, WindowVerdict, Witness,
};
use cube_sections::numeric::{rat, rational_to_f64, QuadExtValue, Rational, Sign};
use cube_sections::quadrature::{integrate, IntegrandSpec, QuadratureConfig};
use cube_sections::sections::{diff_sign, eval_exact, isolate_crossings};
use cube_sections::Error;

fn constant(name: &str) -> cube_sections::IsolatingInterval {
    named_constants().unwrap().into_iter().find(|c| c.name == name).unwrap().bracket
}

fn quad_diff(d: u32, t: &Rational) -> f64 {
    let cfg = QuadratureConfig::with_tol(1e-11);
    let tf = rational_to_f64(t);
    integrate(&IntegrandSpec::section(d + 1, tf), &cfg).unwrap() - integrate(&IntegrandSpec::section(d, tf), &cfg).unwrap()
}

fn agrees(sign: Sign, v: f64) -> bool {
    v.abs() <= 1e-6 || Sign::of(&v) == sign
}

#[test]
fn exact_certificates_survive_quadrature() {
    for d in 1..=8u32 {
        let mut k = 0;
        loop {
            let (a, b) = (rat(k, 20), rat(k + 1, 20));
            if &b * &b * rat(4, 1) > rat(d as i64 + 1, 1) {
                break;
            }
            let c = certify_sign_with(d, (&a, &b), CertPolicy::ExactOnly).unwrap();
            assert_eq!(c.method, CertMethod::ExactSum);
            let (sa, sb) = c.endpoint_signs.unwrap();
            assert!(agrees(sa, quad_diff(d, &a)), "d={d} a={a}");
            assert!(agrees(sb, quad_diff(d, &b)), "d={d} b={b}");
            match &c.outcome {
                SignOutcome::AllPositive => assert!(sa != Sign::Negative && sb != Sign::Negative, "d={d} [{a}, {b}] {sa:?} {sb:?}"),
                SignOutcome::AllNegative => assert!(sa != Sign::Positive && sb != Sign::Positive),
                SignOutcome::SignChanges(roots) => {
                    for r in roots.iter().filter(|r| r.multiplicity_hint == 1) {
                        if r.lo == r.hi {
                            // the jump of I_1
                            assert!(d == 1 && r.lo == rat(1, 2));
                            assert!(quad_diff(1, &rat(51, 100)) > 0.0);
                            continue;
                        }
                        let (l, h) = (diff_sign(d, &r.lo).unwrap(), diff_sign(d, &r.hi).unwrap());
                        assert_eq!(l, -h, "d={d} root {r:?}");
                    }
                }
            }
            k += 1;
        }
    }
}

#[test]
fn threshold_certificates_only_past_the_threshold() {
    let (a, b) = (rat(30, 100), rat(35, 100));
    let c = certify_sign(200, (&a, &b)).unwrap();
    assert_eq!(c.method, CertMethod::ByThreshold);
    for t in [&a, &b] {
        assert!(threshold(ThresholdKind::MonotonicityDelta, t).unwrap().ceiling <= 200);
    }
    // below the threshold the same range is computed
    let c = certify_sign(20, (&a, &b)).unwrap();
    assert_eq!(c.method, CertMethod::ExactSum);
    assert_eq!(c.outcome, SignOutcome::AllNegative);
    assert!(matches!(
        certify_sign_with(20, (&a, &b), CertPolicy::ThresholdOnly),
        Err(Error::DimensionTooSmall { .. })
    ));
    assert!(matches!(certify_sign(3, (&rat(0, 1), &rat(2, 1))), Err(Error::Domain { .. })));
}

#[test]
fn three_four_constants_are_crossings() {
    let width = rat(1, 100_000_000);
    for (poly, lo, hi) in [
        (alpha34_minus_poly(), rat(1, 10), rat(2, 10)),
        (alpha34_circ_poly(), rat(4, 10), rat(42, 100)),
        (alpha34_plus_poly(), rat(69, 100), rat(7, 10)),
    ] {
        let crossings = isolate_crossings(3, (&lo, &hi)).unwrap();
        assert_eq!(crossings.len(), 1);
        let x = &crossings[0];
        assert!(x.width() <= width);
        // the defining polynomial changes sign across the crossing interval
        let (sl, sh) = (poly.sign_at(&x.lo).unwrap(), poly.sign_at(&x.hi).unwrap());
        assert_eq!(sl, -sh, "{lo}..{hi}");
    }
    let d = constant("delta");
    let p = delta_poly();
    assert_eq!(p.sign_at(&d.lo).unwrap(), -p.sign_at(&d.hi).unwrap());
}

/// `I_d - G` at a rational point, decided by enclosures.
fn section_minus_gaussian(d: u32, t: &Rational) -> Sign {
    let v = eval_exact(d, t).unwrap().value.to_interval(200);
    let g = gaussian(t, 200);
    (&v - &g).sign().expect("separated")
}

#[test]
fn gaussian_crossings_bracket_exact_sections() {
    for (name, d) in [("alpha2inf-", 2), ("alpha2info", 2), ("alpha3inf-", 3)] {
        let c = constant(name);
        assert_eq!(section_minus_gaussian(d, &c.lo), -section_minus_gaussian(d, &c.hi), "{name}");
    }
}

#[test]
fn window_examples() {
    assert_eq!(monotonicity_window(&rat(1, 10)).unwrap().verdict, WindowVerdict::StrictlyIncreasingAllD);
    assert_eq!(monotonicity_window(&rat(45, 100)).unwrap().verdict, WindowVerdict::StrictlyDecreasingAllD);
    match monotonicity_window(&rat(5, 100)).unwrap().verdict {
        WindowVerdict::EventuallyMonotone { from, increasing } => assert!(from >= 2 && increasing),
        v => panic!("{v:?}"),
    }
    // Delta(0.2141) is far above any cap
    assert_eq!(monotonicity_window_capped(&rat(2141, 10000), 450).unwrap().verdict, WindowVerdict::Unknown);
}

#[test]
fn sup_inf_examples() {
    let r = sup_inf(&rat(1, 100)).unwrap();
    assert_eq!(r.sup, Extremum::AttainedAt(2));
    assert_eq!(r.sup_value, Witness::Exact(QuadExtValue::surd(rat(-1, 50), rat(1, 1), 2)));

    let r = sup_inf(&rat(25, 100)).unwrap();
    assert_eq!(r.sup, Extremum::AttainedAt(1));
    assert_eq!(r.sup_value, Witness::Exact(QuadExtValue::rational(rat(1, 1))));

    let r = sup_inf(&rat(35, 100)).unwrap();
    assert_eq!(r.inf, Extremum::GaussianLimit);
    let want = (6.0 / std::f64::consts::PI).sqrt() * (-0.735f64).exp();
    assert!((r.inf_value.to_interval(128).mid_f64() - want).abs() < 1e-14);

    let r = sup_inf(&rat(6, 10)).unwrap();
    assert_eq!(r.inf, Extremum::AttainedAt(1));
    assert_eq!(r.inf_value, Witness::Exact(QuadExtValue::zero()));

    for t in [rat(21, 100), rat(2229, 10000), rat(7, 10)] {
        assert!(matches!(sup_inf(&t), Err(Error::OutsideCoveredRange { .. })), "{t}");
    }
}
