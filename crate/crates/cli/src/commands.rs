use crate::{exact_t, Command, Global};
use clap::{Args, ValueEnum};
use cube_sections::asymptotics::{first_order_estimate, second_order_estimate, Estimate, ESTIMATE_MIN_DIM};
use cube_sections::eulerian::{eulerian_row, hypersimplex_identity_check, normality_deviation, step_discontinuity};
use cube_sections::extremality::{classify, sweep_classify, ExtremalityVerdict};
use cube_sections::monotonicity::{
    certify_sign_with, monotonicity_window_capped, named_constants, sup_inf, CertPolicy, Extremum, SignCertificate,
    SignOutcome, Witness, DEFAULT_CAP,
};
use cube_sections::numeric::{format_rational, rational_to_f64};
use cube_sections::quadrature::{integrate, IntegrandSpec, QuadratureConfig};
use cube_sections::sections::{eval_exact, factorial};
use cube_sections::{Error, Rational, Sign};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(Error::Parse { .. }) => 2,
            CliError::Core(
                Error::Domain { .. }
                | Error::IndexOutOfRange { .. }
                | Error::DimensionTooSmall { .. }
                | Error::AtSingularity { .. }
                | Error::StraddlesGamma { .. }
                | Error::OutsideCoveredRange { .. }
                | Error::FaceTooSmall { .. }
                | Error::FaceTooLarge { .. },
            ) => 3,
            CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Res<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Policy {
    Auto,
    ThresholdOnly,
    ExactOnly,
}

#[derive(Args, Debug)]
pub struct MonotonicityArgs {
    /// Single t: classify the whole family d = 1, 2, ...
    #[arg(long, value_parser = exact_t, allow_hyphen_values = true, conflicts_with_all = ["d", "t_min", "t_max"])]
    pub t: Option<Rational>,
    /// Largest threshold the single-t verdict will scan up to.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u32,
    /// Certify on [t_min, t_max] for this d (or d..=d_max).
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, requires = "d")]
    pub d_max: Option<u32>,
    #[arg(long, value_parser = exact_t, allow_hyphen_values = true)]
    pub t_min: Option<Rational>,
    #[arg(long, value_parser = exact_t, allow_hyphen_values = true)]
    pub t_max: Option<Rational>,
    #[arg(long, value_enum, default_value = "auto")]
    pub policy: Policy,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    #[arg(long, value_parser = exact_t, allow_hyphen_values = true, conflicts_with_all = ["t_min", "t_max"])]
    pub t: Option<Rational>,
    #[arg(long, value_parser = exact_t, allow_hyphen_values = true, requires = "t_max")]
    pub t_min: Option<Rational>,
    #[arg(long, value_parser = exact_t, allow_hyphen_values = true, requires = "t_min")]
    pub t_max: Option<Rational>,
    /// Grid intervals between t_min and t_max (steps + 1 points).
    #[arg(long, default_value_t = 10)]
    pub steps: u32,
}

impl GridArgs {
    fn points(&self) -> Res<Vec<Rational>> {
        match (&self.t, &self.t_min, &self.t_max) {
            (Some(t), _, _) => Ok(vec![t.clone()]),
            (None, Some(a), Some(b)) => {
                if a > b || self.steps == 0 {
                    return Err(CliError::Usage("need t_min <= t_max and steps >= 1".into()));
                }
                let n = Rational::from_integer(self.steps.into());
                Ok((0..=self.steps).map(|k| a + (b - a) * Rational::from_integer(k.into()) / &n).collect())
            }
            _ => Err(CliError::Usage("give --t or both --t-min and --t-max".into())),
        }
    }
}

#[derive(Args, Debug)]
pub struct EulerianArgs {
    #[arg(long)]
    pub d: u32,
    /// Include the row A(d, 0..d-1) as decimal strings.
    #[arg(long)]
    pub row: bool,
    /// Check the normality deviation against its bound.
    #[arg(long)]
    pub check_bound: bool,
    /// Check the jump of the scaled step function next to t = 3/10.
    #[arg(long)]
    pub step: bool,
    /// Check the hypersimplex identity at every breakpoint of I_d.
    #[arg(long)]
    pub identity: bool,
}

pub fn run(cmd: &Command, g: &Global, records: &mut Vec<Value>) -> Res<()> {
    match cmd {
        Command::Eval { d, t, oracle } => eval(*d, t, *oracle, g, records),
        Command::Constants => constants(g, records),
        Command::Monotonicity(a) => monotonicity(a, g, records),
        Command::Supinf(a) => supinf(a, g, records),
        Command::Extremality { n, d, t } => {
            records.push(verdict_record(&classify(*n, *d, t)?));
            Ok(())
        }
        Command::Eulerian(a) => eulerian(a, g, records),
        Command::Sweep { t, n_max } => {
            let rep = sweep_classify(t, *n_max)?;
            records.extend(rep.verdicts.iter().map(verdict_record));
            Ok(())
        }
    }
}

fn sign(s: Sign) -> &'static str {
    match s {
        Sign::Negative => "Negative",
        Sign::Zero => "Zero",
        Sign::Positive => "Positive",
    }
}

fn envelope(est: Estimate, exact: &cube_sections::DyadicInterval, g: &Global) -> Value {
    let lo = est.center.lo() - est.radius.hi();
    let hi = est.center.hi() + est.radius.hi();
    let mut v = g.digits().bounds(&lo.to_rational(), &hi.to_rational());
    v["contains"] = json!(est.contains_interval(exact));
    v
}

fn eval(d: u32, t: &Rational, oracle: bool, g: &Global, records: &mut Vec<Value>) -> Res<()> {
    let sv = eval_exact(d, t)?;
    let fmt = g.digits();
    let mut rec = json!({ "d": d, "t": format_rational(t), "exact": fmt.exact(&sv.value) });
    if oracle {
        let q = integrate(&IntegrandSpec::section(d, rational_to_f64(t)), &QuadratureConfig::with_tol(g.tolerance))?;
        rec["quadrature"] = json!(fmt.float(q));
        let iv = sv.value.to_interval(g.precision_bits);
        let (first, second) = if d >= ESTIMATE_MIN_DIM {
            (envelope(first_order_estimate(d, t)?, &iv, g), envelope(second_order_estimate(d, t)?, &iv, g))
        } else {
            (Value::Null, Value::Null)
        };
        rec["first_order"] = first;
        rec["second_order"] = second;
    }
    records.push(rec);
    Ok(())
}

fn constants(g: &Global, records: &mut Vec<Value>) -> Res<()> {
    let fmt = g.digits();
    for c in named_constants()? {
        records.push(json!({
            "name": c.name,
            "lo": fmt.down(&c.bracket.lo),
            "hi": fmt.up(&c.bracket.hi),
            "reference_bracket": { "lo": format_rational_decimal(&c.reference.0), "hi": format_rational_decimal(&c.reference.1) },
            "method": c.method.as_str(),
            "inside": c.within_reference(),
            "definition": c.definition,
        }));
    }
    Ok(())
}

/// Published brackets are short terminating decimals; print them as such.
fn format_rational_decimal(q: &Rational) -> String {
    for digits in 0..=30 {
        let s = cube_sections::numeric::format_decimal(q, digits, cube_sections::numeric::Rounding::Down);
        if cube_sections::numeric::parse_rational(&s).as_ref() == Ok(q) {
            return s;
        }
    }
    format_rational(q)
}

fn certificate_record(c: &SignCertificate, g: &Global) -> Value {
    let fmt = g.digits();
    let crossings: Vec<Value> = match &c.outcome {
        SignOutcome::SignChanges(v) => v.iter().map(|iv| fmt.isolating(iv)).collect(),
        _ => Vec::new(),
    };
    json!({
        "d": c.d,
        "quantity": c.quantity,
        "interval": fmt.bounds(&c.t_range.0, &c.t_range.1),
        "outcome": c.outcome.as_str(),
        "method": c.method.as_str(),
        "crossings": crossings,
        "endpoint_signs": c.endpoint_signs.map(|(a, b)| json!([sign(a), sign(b)])),
    })
}

fn monotonicity(a: &MonotonicityArgs, g: &Global, records: &mut Vec<Value>) -> Res<()> {
    if let Some(t) = &a.t {
        let w = monotonicity_window_capped(t, a.cap)?;
        let signs: String = w.signs.iter().map(|s| match s {
            Sign::Positive => '+',
            Sign::Negative => '-',
            Sign::Zero => '0',
        }).collect();
        records.push(json!({
            "t": format_rational(&w.t),
            "verdict": w.verdict.as_str(),
            "threshold": w.threshold,
            "signs": signs,
        }));
        return Ok(());
    }
    let (Some(d), Some(lo), Some(hi)) = (a.d, &a.t_min, &a.t_max) else {
        return Err(CliError::Usage("give --t, or --d with --t-min and --t-max".into()));
    };
    let d_max = a.d_max.unwrap_or(d);
    if d_max < d {
        return Err(CliError::Usage("need d <= d_max".into()));
    }
    let policy = match a.policy {
        Policy::Auto => CertPolicy::Auto,
        Policy::ThresholdOnly => CertPolicy::ThresholdOnly,
        Policy::ExactOnly => CertPolicy::ExactOnly,
    };
    // parallel per d, aggregated in order of d
    let certs: Vec<_> = (d..=d_max).into_par_iter().map(|k| certify_sign_with(k, (lo, hi), policy)).collect();
    for c in certs {
        records.push(certificate_record(&c?, g));
    }
    Ok(())
}

fn extremum(e: &Extremum, w: &Witness, ties: &[u32], g: &Global) -> Value {
    let (by, d) = match e {
        Extremum::AttainedAt(d) => ("dimension", Some(*d)),
        Extremum::GaussianLimit => ("gaussian", None),
    };
    let mut v = json!({ "attained_by": by, "d": d });
    let enc = g.digits().interval(&w.to_interval(g.precision_bits));
    v["lo"] = enc["lo"].clone();
    v["hi"] = enc["hi"].clone();
    v["ties"] = json!(ties);
    v
}

fn supinf(a: &GridArgs, g: &Global, records: &mut Vec<Value>) -> Res<()> {
    for t in a.points()? {
        let r = sup_inf(&t)?;
        records.push(json!({
            "t": format_rational(&r.t),
            "sup": extremum(&r.sup, &r.sup_value, &r.sup_ties, g),
            "inf": extremum(&r.inf, &r.inf_value, &r.inf_ties, g),
            "tail_from": r.tail_from,
            "tail_increasing": r.tail_increasing,
            "exact_evaluations": r.exact_evaluations,
        }));
    }
    Ok(())
}

fn verdict_record(v: &ExtremalityVerdict) -> Value {
    json!({
        "n": v.n,
        "d": v.d,
        "t": format_rational(&v.t),
        "r_sign": sign(v.r_sign),
        "s_sign": sign(v.s_sign),
        "verdict": v.verdict.as_str(),
        "method": v.method.as_str(),
    })
}

fn eulerian(a: &EulerianArgs, g: &Global, records: &mut Vec<Value>) -> Res<()> {
    let row = eulerian_row(a.d)?;
    let mut rec = json!({
        "d": a.d,
        "symmetric": row.is_symmetric(),
        "factorial_sum": row.sum() == factorial(a.d),
    });
    if a.row {
        rec["row"] = json!(row.to_strings());
    }
    if a.check_bound {
        let n = normality_deviation(a.d)?;
        rec["normality"] = json!({
            "max_dev": g.digits().float(n.max_dev),
            "witness_t": format!("{:.2}", n.witness_t),
            "bound": g.digits().float(n.bound),
            "pass": n.pass,
        });
    }
    if a.step {
        let s = step_discontinuity(a.d)?;
        rec["step"] = json!({
            "index": s.i,
            "step": g.digits().float(s.step),
            "lower_bound": g.digits().float(s.lower_bound),
            "holds": s.holds,
        });
    }
    if a.identity {
        let checks: Vec<_> = (0..=a.d / 2).into_par_iter().map(|i| hypersimplex_identity_check(a.d, i)).collect();
        let mut holds = true;
        for c in checks {
            holds &= c?.holds;
        }
        rec["hypersimplex"] = json!({ "checked": a.d / 2 + 1, "holds": holds });
    }
    records.push(rec);
    Ok(())
}
