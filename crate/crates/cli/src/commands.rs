use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context};
use serde::{Deserialize, Serialize};
use subordkit::admissibility::{find_threshold, verify_exclusion, ExclusionStatus, GridSpec};
use subordkit::domains::TargetDomain;
use subordkit::figure::{boundary_rows, crescent_circles, FigureRow, MIN_FIGURE_SAMPLES};
use subordkit::series::{TaylorSeries, DEFAULT_ORDER};
use subordkit::subordination::{
    chi_f_direct, chi_f_report, classify_starlike_exp, falsify_with, is_subordinate, y_f, ChiDiscrepancy,
    FalsifyOptions, DEFAULT_CIRCLE_SAMPLES, DEFAULT_RHO_MAX,
};
use subordkit::{ComplexValue, OperatorCoefficients, TheoremId, TheoremSpec};

use crate::args::{CheckArgs, EmitArgs, FalsifyArgs, Format, ThresholdArgs, VerifyArgs};
use crate::output::write_csv;

/// A command's payload and whether it certified a failure.
pub struct Done<R> {
    pub result: R,
    pub failed: bool,
}

fn ok<R>(result: R) -> Done<R> {
    Done { result, failed: false }
}

pub fn verify(a: &VerifyArgs) -> anyhow::Result<Done<impl Serialize>> {
    ensure!(a.theta_samples > 0, "--theta-samples must be positive");
    let spec = TheoremSpec::new(a.id, a.janowski.pair()?)?;
    let c = OperatorCoefficients::new(a.alpha1, a.alpha2, a.alpha3)?;
    let grid = GridSpec::for_order(spec.order, a.mk.m, a.mk.k).with_theta_samples(a.theta_samples);
    let report = verify_exclusion(&spec, &c, &grid)?;
    let failed = report.status == ExclusionStatus::Fail;
    Ok(Done { result: report, failed })
}

pub fn threshold(a: &ThresholdArgs) -> anyhow::Result<Done<impl Serialize>> {
    ensure!(a.theta_samples > 0, "--theta-samples must be positive");
    ensure!(a.tol > 0.0, "--tol must be positive");
    let spec = TheoremSpec::new(a.id, a.janowski.pair()?)?;
    let grid = GridSpec::for_order(spec.order, a.mk.m, a.mk.k).with_theta_samples(a.theta_samples);
    let alpha3 = if spec.order == 3 { a.alpha3 } else { 0.0 };
    Ok(ok(find_threshold(&spec, a.alpha2, alpha3, a.mk.m, a.mk.k, &grid, (0.0, 20.0), a.tol)?))
}

pub fn falsify(a: &FalsifyArgs) -> anyhow::Result<Done<impl Serialize>> {
    let spec = TheoremSpec::new(a.id, a.janowski.pair()?)?;
    let c = OperatorCoefficients::new(a.alpha1, a.alpha2, a.alpha3)?;
    ensure!(c.order() == spec.order, "{} is order {}, the coefficients are order {}", a.id, spec.order, c.order());
    let opts = FalsifyOptions { m: a.mk.m, k: a.mk.k, ..FalsifyOptions::new(a.trials, a.seed) };
    let report = falsify_with(&spec, &c, &opts);
    let failed = report.violations > 0 && !report.advisory;
    Ok(Done { result: report, failed })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoefficientFile {
    class: String,
    coeffs: Vec<[f64; 2]>,
}

fn read_function(path: &Path) -> anyhow::Result<TaylorSeries> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let file: CoefficientFile = serde_json::from_str(&text).with_context(|| format!("malformed {}", path.display()))?;
    ensure!(file.class == "A", "class must be \"A\", got {:?}", file.class);
    ensure!(file.coeffs.len() >= 2, "need at least the coefficients of z^0 and z^1");
    let coeffs: Vec<ComplexValue> = file.coeffs.iter().map(|&[re, im]| ComplexValue::new(re, im)).collect();
    let order = DEFAULT_ORDER.max(coeffs.len() - 1);
    let f = TaylorSeries::new(coeffs, order)?;
    ensure!(f.is_class_a(1e-12), "f must start z + a_2 z^2 + ...");
    Ok(f)
}

#[derive(Serialize)]
struct Condition {
    label: &'static str,
    theorem: TheoremId,
    domain: TargetDomain,
    threshold_holds: bool,
    operator_subordinate: bool,
    /// Both parts hold, so the corollary puts f in S*_e.
    implies_in_s_star_e: bool,
}

#[derive(Serialize)]
struct NamedCheck {
    domain: TargetDomain,
    operator_subordinate: bool,
}

#[derive(Serialize)]
struct OperatorChecks {
    operator: &'static str,
    coefficients: OperatorCoefficients,
    m: f64,
    k: f64,
    named_domain: Option<NamedCheck>,
    conditions: Vec<Condition>,
    chi_f_discrepancy: Option<ChiDiscrepancy>,
}

#[derive(Serialize)]
pub struct CheckResult {
    degree: usize,
    in_s_star_e: bool,
    corollaries: Option<OperatorChecks>,
}

const LABELS: [&str; 6] = ["i", "ii", "iii", "iv", "v", "vi"];

pub fn check(a: &CheckArgs) -> anyhow::Result<Done<CheckResult>> {
    let f = read_function(&a.file)?;
    let degree = f.coeffs().iter().rposition(|c| c.norm() != 0.0).unwrap_or(0);
    let in_s_star_e = classify_starlike_exp(&f)?;
    let janowski = a.janowski.pair()?;

    let corollaries = match (a.alpha1, a.alpha2) {
        (None, None) => {
            ensure!(a.alpha3.is_none() && a.domain.is_none(), "--alpha3 and --domain need --alpha1 and --alpha2");
            None
        }
        (Some(a1), Some(a2)) => {
            let c = OperatorCoefficients::new(a1, a2, a.alpha3.unwrap_or(0.0))?;
            let (name, op, ids, discrepancy) = if c.order() == 2 {
                let ids = [
                    TheoremId::T4_1,
                    TheoremId::T4_3,
                    TheoremId::T4_4,
                    TheoremId::T4_5,
                    TheoremId::T4_6,
                    TheoremId::T4_7,
                    TheoremId::T4_8,
                ];
                ("Y_f", y_f(&f, &c)?, ids, None)
            } else {
                let ids = [
                    TheoremId::T5_1,
                    TheoremId::T5_3,
                    TheoremId::T5_4,
                    TheoremId::T5_5,
                    TheoremId::T5_6,
                    TheoremId::T5_7,
                    TheoremId::T5_8,
                ];
                ("chi_f", chi_f_direct(&f, &c)?, ids, Some(chi_f_report(&f, &c)?))
            };
            let subordinate = |d: &TargetDomain| is_subordinate(&op, d, DEFAULT_RHO_MAX, DEFAULT_CIRCLE_SAMPLES);
            let mut conditions = Vec::new();
            for (i, id) in ids.into_iter().enumerate() {
                let label = match i {
                    0 if janowski.is_none() => continue,
                    0 => "janowski",
                    _ => LABELS[i - 1],
                };
                let spec = TheoremSpec::new(id, janowski)?;
                let threshold_holds = spec.threshold_holds(&c, a.mk.m, a.mk.k);
                let operator_subordinate = subordinate(&spec.domain)?;
                conditions.push(Condition {
                    label,
                    theorem: id,
                    domain: spec.domain,
                    threshold_holds,
                    operator_subordinate,
                    implies_in_s_star_e: threshold_holds && operator_subordinate,
                });
            }
            let named_domain = match &a.domain {
                Some(id) => {
                    let domain = TargetDomain::from_id(id, janowski)?;
                    Some(NamedCheck { domain, operator_subordinate: subordinate(&domain)? })
                }
                None => None,
            };
            Some(OperatorChecks {
                operator: name,
                coefficients: c,
                m: a.mk.m,
                k: a.mk.k,
                named_domain,
                conditions,
                chi_f_discrepancy: discrepancy,
            })
        }
        _ => bail!("--alpha1 and --alpha2 go together"),
    };
    Ok(ok(CheckResult { degree, in_s_star_e, corollaries }))
}

#[derive(Serialize)]
pub struct EmitResult {
    domain: TargetDomain,
    samples: usize,
    rows: usize,
    /// `max |w - 1|` over the boundary rows.
    max_distance_from_one: f64,
    files: Vec<PathBuf>,
    boundary: Option<Vec<FigureRow>>,
    c1: Option<Vec<FigureRow>>,
    c2: Option<Vec<FigureRow>>,
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}_{suffix}.csv"))
}

pub fn emit_boundary(a: &EmitArgs) -> anyhow::Result<Done<EmitResult>> {
    ensure!(a.samples >= MIN_FIGURE_SAMPLES, "--samples must be at least {MIN_FIGURE_SAMPLES}");
    let domain = TargetDomain::from_id(&a.domain, a.janowski.pair()?)?;
    let rows = boundary_rows(&domain, a.samples);
    let circles = (domain.id() == "crescent").then(|| crescent_circles(a.samples));
    let max_distance_from_one = rows.iter().map(|r| (r.point() - 1.0).norm()).fold(0.0, f64::max);
    let mut result = EmitResult {
        domain,
        samples: a.samples,
        rows: rows.len(),
        max_distance_from_one,
        files: Vec::new(),
        boundary: None,
        c1: None,
        c2: None,
    };
    match a.format {
        Format::Csv => {
            let out = a.out.as_deref().context("--out is required with --format csv")?;
            write_csv(out, &rows)?;
            result.files.push(out.to_path_buf());
            if let Some((c1, c2)) = circles {
                for (suffix, rows) in [("c1", c1), ("c2", c2)] {
                    let path = sibling(out, suffix);
                    write_csv(&path, &rows)?;
                    result.files.push(path);
                }
            }
        }
        Format::Json => {
            result.boundary = Some(rows);
            if let Some((c1, c2)) = circles {
                result.c1 = Some(c1);
                result.c2 = Some(c2);
            }
        }
    }
    Ok(ok(result))
}
