//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line.
//!
//! Reference brackets and theorem ranges are restated here as literals so the
//! suite does not trust the library's own tables.

use std::time::{Duration, Instant};

use cube_sections::asymptotics::{
    first_order_estimate, k4_estimate, limit_difference, q_bound_check, second_order_estimate, Q_BOUND,
};
use cube_sections::eulerian::{check_rows, hypersimplex_identity_check, normality_deviation};
use cube_sections::extremality::{classify, r_sum, s_sum, Verdict};
use cube_sections::monotonicity::{monotonicity_window, named_constants, sup_inf, Extremum, WindowVerdict};
use cube_sections::numeric::{parse_rational, rat, rational_to_f64, Rational, Sign};
use cube_sections::quadrature::{integrate, integrate_rs, IntegrandSpec, QuadratureConfig};
use cube_sections::sections::{diff_sign, eval_exact};

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

/// Rational with six decimals, rounded down.
fn six(x: f64) -> Rational {
    rat((x * 1e6).floor() as i64, 1_000_000)
}

use std::io::Write;

fn report(n: u32, name: &str, ok: bool, limit: Duration, start: Instant, detail: String) {
    let took = start.elapsed();
    let pass = ok && took <= limit;
    // straight to the stderr handle so the line survives test output capture
    let _ = writeln!(
        std::io::stderr(),
        "criterion {n} [{name}]: {} ({detail}; {:.1}s, limit {}s)",
        if pass { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        limit.as_secs()
    );
    assert!(ok, "criterion {n} failed: {detail}");
    assert!(took <= limit, "criterion {n} exceeded {}s", limit.as_secs());
}

#[test]
fn criterion_01_constants() {
    let start = Instant::now();
    let expected = [
        ("gamma-", "0.2141", "0.2142"),
        ("gamma+", "0.6738", "0.6739"),
        ("alpha23-", "0.0705012", "0.0705013"),
        ("alpha23+", "0.641788", "0.641789"),
        ("alpha34-", "0.144137", "0.144138"),
        ("alpha34o", "0.407452", "0.407453"),
        ("alpha34+", "0.697308", "0.697309"),
        ("alpha13", "0.239895", "0.239896"),
        ("delta", "0.222924", "0.222925"),
        ("beta-", "0.0181611", "0.0181612"),
        ("beta+", "0.165625", "0.165626"),
        ("alpha2inf-", "0.0173679", "0.017368"),
        ("alpha2info", "0.290166", "0.290167"),
        ("alpha3inf-", "0.192472", "0.192473"),
        ("psi(1)", "0.9832", "0.9833"),
    ];
    let table = named_constants().unwrap();
    let width = rat(1, 10_000_000);
    let mut bad = Vec::new();
    for (name, lo, hi) in expected {
        match table.iter().find(|c| c.name == name) {
            Some(c) if c.bracket.strictly_inside(&q(lo), &q(hi)) && c.bracket.width() <= width => {}
            _ => bad.push(name),
        }
    }
    let ok = table.len() == 15 && bad.is_empty();
    report(1, "constants", ok, Duration::from_secs(10), start, format!("{} rows, failing {:?}", table.len(), bad));
}

#[test]
fn criterion_02_oracle_equivalence() {
    let start = Instant::now();
    let cfg = QuadratureConfig::with_tol(1e-10);
    let mut worst = (0f64, 0u32, 0f64);
    for d in 1..=30u32 {
        let half = (d as f64).sqrt() / 2.0;
        for j in 0..50 {
            let t = six(half * j as f64 / 50.0);
            let exact = eval_exact(d, &t).unwrap().value.to_f64();
            let tf = rational_to_f64(&t);
            let quad = integrate(&IntegrandSpec::section(d, tf), &cfg).unwrap();
            let err = (exact - quad).abs();
            if err > worst.0 {
                worst = (err, d, tf);
            }
        }
    }
    let ok = worst.0 <= 1e-8;
    report(
        2,
        "oracle equivalence",
        ok,
        Duration::from_secs(60),
        start,
        format!("max |exact - quadrature| = {:.2e} at d={}, t={}", worst.0, worst.1, worst.2),
    );
}

fn envelope_grid() -> Vec<(u32, Rational)> {
    let mut grid = Vec::new();
    for d in [136u32, 150, 200, 300] {
        let half = (d as f64).sqrt() / 2.0;
        for k in 0..8 {
            grid.push((d, six(half * k as f64 / 7.0)));
        }
    }
    grid
}

#[test]
fn criterion_03_first_order_envelope() {
    let start = Instant::now();
    let cfg = QuadratureConfig::with_tol(1e-12);
    let mut outside = Vec::new();
    for (d, t) in envelope_grid() {
        let v = integrate(&IntegrandSpec::section(d, rational_to_f64(&t)), &cfg).unwrap();
        if !first_order_estimate(d, &t).unwrap().contains(v) {
            outside.push((d, rational_to_f64(&t)));
        }
    }
    report(
        3,
        "first-order envelope",
        outside.is_empty(),
        Duration::from_secs(30),
        start,
        format!("32 points, outside {outside:?}"),
    );
}

#[test]
fn criterion_04_second_order_envelope() {
    let start = Instant::now();
    let cfg = QuadratureConfig::with_tol(1e-12);
    let mut outside = Vec::new();
    let mut slack = f64::INFINITY;
    for (d, t) in envelope_grid() {
        let v = integrate(&IntegrandSpec::section(d, rational_to_f64(&t)), &cfg).unwrap();
        let est = second_order_estimate(d, &t).unwrap();
        let (lo, hi) = est.bounds();
        slack = slack.min(v - lo).min(hi - v);
        if !est.contains(v) {
            outside.push((d, rational_to_f64(&t)));
        }
    }
    report(
        4,
        "second-order envelope",
        outside.is_empty(),
        Duration::from_secs(30),
        start,
        format!("32 points, min slack {slack:.2e}, outside {outside:?}"),
    );
}

#[test]
fn criterion_05_limit_rate() {
    let start = Instant::now();
    let cfg = QuadratureConfig::with_tol(1e-13);
    let d = 400u32;
    let mut worst = 0f64;
    let mut ok = true;
    for t in ["0", "0.1", "0.3", "0.5"] {
        let tq = q(t);
        let tf = rational_to_f64(&tq);
        let a = integrate(&IntegrandSpec::section(d, tf), &cfg).unwrap();
        let b = integrate(&IntegrandSpec::section(d + 1, tf), &cfg).unwrap();
        let scaled = (d as f64).powi(2) * (b - a);
        let limit = limit_difference(&tq).mid_f64();
        let rel = (scaled - limit).abs() / limit.abs().max(0.02);
        worst = worst.max(rel);
        ok &= rel <= 0.05;
    }
    report(5, "limit rate", ok, Duration::from_secs(60), start, format!("worst relative error {worst:.4} at d=400"));
}

/// `n` evenly spaced points strictly inside `(lo, hi)`, six decimals.
fn interior(lo: f64, hi: f64, n: usize) -> Vec<Rational> {
    (1..=n).map(|k| six(lo + (hi - lo) * k as f64 / (n + 1) as f64)).collect()
}

#[test]
fn criterion_06_monotonicity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let low: Vec<Rational> = (0..20).map(|k| six(0.20916 * k as f64 / 19.0)).collect();
    let high = interior(0.222925, 0.64607, 19).into_iter().chain([q("0.64607")]).collect::<Vec<_>>();
    for d in 5..=60u32 {
        for t in &low {
            if diff_sign(d, t).unwrap() != Sign::Positive {
                failures.push(format!("d={d} t={t} not positive"));
            }
        }
        for t in &high {
            if diff_sign(d, t).unwrap() != Sign::Negative {
                failures.push(format!("d={d} t={t} not negative"));
            }
        }
    }
    for t in interior(0.0705012 + 1e-3, 0.144138 - 1e-3, 20) {
        let v = monotonicity_window(&t).unwrap().verdict;
        if v != WindowVerdict::StrictlyIncreasingAllD {
            failures.push(format!("t={t} {v:?}"));
        }
    }
    let upper = interior(0.407453 + 1e-3, 0.5, 19).into_iter().chain([rat(1, 2)]);
    for t in upper {
        let v = monotonicity_window(&t).unwrap().verdict;
        if v != WindowVerdict::StrictlyDecreasingAllD {
            failures.push(format!("t={t} {v:?}"));
        }
    }
    report(
        6,
        "monotonicity theorems",
        failures.is_empty(),
        Duration::from_secs(300),
        start,
        format!("2240 exact signs, 40 window verdicts, failures {failures:?}"),
    );
}

struct Case {
    label: &'static str,
    sup: bool,
    ranges: &'static [(f64, f64)],
    expect: Extremum,
}

/// Ten interior points split over the sub-ranges of a case.
fn case_points(ranges: &[(f64, f64)]) -> Vec<Rational> {
    let m = ranges.len();
    let mut pts = Vec::new();
    for (j, &(lo, hi)) in ranges.iter().enumerate() {
        let share = 10 / m + usize::from(j < 10 % m);
        pts.extend(interior(lo, hi, share));
    }
    pts
}

#[test]
fn criterion_07_sup_inf_tables() {
    let start = Instant::now();
    // inner sides of the published brackets
    let cases = [
        Case { label: "sup (i)", sup: true, ranges: &[(0.0, 0.0173679), (0.5, 0.641788)], expect: Extremum::AttainedAt(2) },
        Case {
            label: "sup (ii)",
            sup: true,
            ranges: &[(0.192473, 0.20916), (0.222925, 0.239895), (0.641789, 0.64607)],
            expect: Extremum::AttainedAt(3),
        },
        Case { label: "sup (iii)", sup: true, ranges: &[(0.239896, 0.5)], expect: Extremum::AttainedAt(1) },
        Case { label: "sup (iv)", sup: true, ranges: &[(0.017368, 0.192472)], expect: Extremum::GaussianLimit },
        Case { label: "inf (i)", sup: false, ranges: &[(0.0, 0.2071067)], expect: Extremum::AttainedAt(1) },
        Case {
            label: "inf (ii)",
            sup: false,
            ranges: &[(0.2071068, 0.20916), (0.222925, 0.290166)],
            expect: Extremum::AttainedAt(2),
        },
        Case { label: "inf (iii)", sup: false, ranges: &[(0.290167, 0.5)], expect: Extremum::GaussianLimit },
        Case { label: "inf past 1/2", sup: false, ranges: &[(0.5, 0.64607)], expect: Extremum::AttainedAt(1) },
    ];
    let mut failures = Vec::new();
    let mut count = 0;
    for case in &cases {
        let mut pts = case_points(case.ranges);
        // closed endpoints the theorems include
        match case.label {
            "sup (i)" | "inf (i)" => pts.push(rat(0, 1)),
            "sup (iii)" | "inf (iii)" => pts.push(rat(1, 2)),
            _ => {}
        }
        for t in pts {
            count += 1;
            let r = sup_inf(&t).unwrap();
            let got = if case.sup { r.sup } else { r.inf };
            if got != case.expect {
                failures.push(format!("{} t={t}: {got:?}", case.label));
            }
        }
    }
    report(
        7,
        "sup/inf tables",
        failures.is_empty(),
        Duration::from_secs(60),
        start,
        format!("{count} evaluations over {} cases, failures {failures:?}", cases.len()),
    );
}

#[test]
fn criterion_08_eulerian() {
    let start = Instant::now();
    let rows = check_rows(2000);
    let mut identity_fail = Vec::new();
    for d in 2..=30u32 {
        for i in 0..=d / 2 {
            if !hypersimplex_identity_check(d, i).unwrap().holds {
                identity_fail.push((d, i));
            }
        }
    }
    let mut devs = Vec::new();
    let mut normal_ok = true;
    for d in [500u32, 1000, 2000] {
        let r = normality_deviation(d).unwrap();
        let df = d as f64;
        let bound = 7.0 * (12.0 / df.sqrt()).exp() / (std::f64::consts::PI * df).sqrt();
        normal_ok &= r.max_dev <= bound;
        devs.push(format!("d={d}: {:.4} <= {:.4}", r.max_dev, bound));
    }
    let ok = rows.is_none() && identity_fail.is_empty() && normal_ok;
    report(
        8,
        "eulerian",
        ok,
        Duration::from_secs(120),
        start,
        format!("rows to 2000 first failure {rows:?}, identity failures {identity_fail:?}, {}", devs.join(", ")),
    );
}

#[test]
fn criterion_09_extremality() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 4..=20u32 {
        for (t, want) in [
            ("0", Verdict::StrictLocalMax),
            ("0.1", Verdict::StrictLocalMax),
            ("0.14", Verdict::StrictLocalMax),
            ("0.24", Verdict::StrictLocalMin),
            ("0.4", Verdict::StrictLocalMin),
            ("0.59", Verdict::StrictLocalMin),
        ] {
            let v = classify(n, n, &q(t)).unwrap().verdict;
            if v != want {
                failures.push(format!("n=d={n} t={t}: {v:?}"));
            }
        }
    }
    for t in ["0.26", "0.45"] {
        let v = classify(5, 9, &q(t)).unwrap().verdict;
        if v != Verdict::NotExtremal {
            failures.push(format!("(5,9) t={t}: {v:?}"));
        }
    }
    if !s_sum(4, &rat(0, 1)).unwrap().is_zero() {
        failures.push("s_sum(4, 0) != 0".into());
    }
    // the sums at t match the integrals of the n-face at t; for n < d with
    // d = 4n the same face is reached at t/2 in the d-cube's frequency
    let cfg = QuadratureConfig::with_tol(1e-11);
    let mut compared = 0;
    let mut agree = |n: u32, d: u32, t_sum: &Rational, t_int: f64, failures: &mut Vec<String>| {
        let (r, s) = integrate_rs(n, d, t_int, &cfg).unwrap();
        let rs = r_sum(n, t_sum).unwrap().sign();
        let ss = s_sum(n, t_sum).unwrap().sign();
        for (name, val, sign) in [("r", r, rs), ("s", s, ss)] {
            if val.abs() > 1e-6 {
                compared += 1;
                if Sign::of(&val) != sign {
                    failures.push(format!("{name} n={n} d={d} t={t_sum}: integral {val:.3e}, sum {sign:?}"));
                }
            }
        }
    };
    for n in 4..=40u32 {
        for t in ["0", "0.1", "0.3", "0.5"] {
            let tq = q(t);
            agree(n, n, &tq, rational_to_f64(&tq), &mut failures);
        }
    }
    for n in 4..=12u32 {
        for t in ["0.05", "0.1", "0.15", "0.2"] {
            let tq = q(t);
            agree(n, 4 * n, &(&tq * rat(2, 1)), rational_to_f64(&tq), &mut failures);
        }
    }
    report(
        9,
        "extremality",
        failures.is_empty(),
        Duration::from_secs(180),
        start,
        format!("{compared} integral signs compared, failures {failures:?}"),
    );
}

#[test]
fn criterion_10_bounds() {
    let start = Instant::now();
    let qb = q_bound_check();
    let cfg = QuadratureConfig::with_tol(1e-12);
    let mut outside = Vec::new();
    for d in [124u32, 150, 200] {
        for t in ["0", "0.1", "0.2", "0.3", "0.5", "1"] {
            let tq = q(t);
            let v = integrate(&IntegrandSpec::moment(d, 4, rational_to_f64(&tq)), &cfg).unwrap();
            if !k4_estimate(d, &tq).unwrap().contains(v) {
                outside.push((d, t));
            }
        }
    }
    let ok = qb.pass && qb.max_envelope <= Q_BOUND as f64 && outside.is_empty();
    report(
        10,
        "bound propositions",
        ok,
        Duration::from_secs(60),
        start,
        format!("q envelope max {:.1} <= {Q_BOUND}, k=4 corollary outside {outside:?}", qb.max_envelope),
    );
}
