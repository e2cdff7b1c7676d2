//! Reruns every closed-form versus oracle comparison and the frame checks.

use std::f64::consts::TAU;

use serde::Serialize;
use smarandache_core::builtin::{salkowski_unit_speed, Circle, Helix, SalkowskiParams, DEFAULT_FRACTION};
use smarandache_core::curve::{sample_curve, SampledCurve};
use smarandache_core::frames::{integrity, transport_residual};
use smarandache_core::pipeline::{bishop, run_kind, to_unit_speed};
use smarandache_core::smarandache::{DiscrepancyReport, SmarandacheKind, Tolerances};

use super::invariant_options;
use crate::args::Global;
use crate::error::{CliError, CliResult};
use crate::output::{emit, json};
use crate::source::load;

pub const FRAME_TOL: f64 = 1e-6;
pub const TRANSPORT_TOL: f64 = 1e-5;
pub const IDENTITY_TOL: f64 = 1e-12;

/// Parameter interval of the helix in the default suite; `N1N2` of
/// helix(1,1) stalls near `t = 3.33` when `θ0 = 0`.
pub const HELIX_T_RANGE: (f64, f64) = (0.0, 3.0);

#[derive(Debug, Serialize)]
pub struct Check {
    pub curve: String,
    pub check: String,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
    /// For relative checks, the absolute error that accompanies `value`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct KindReport {
    pub curve: String,
    pub kind: SmarandacheKind,
    pub report: DiscrepancyReport,
}

#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub checks: Vec<Check>,
    pub reports: Vec<KindReport>,
}

impl Summary {
    fn check(&mut self, curve: &str, check: impl Into<String>, value: f64, limit: f64) {
        let pass = value <= limit;
        self.checks.push(Check { curve: curve.into(), check: check.into(), value, limit, pass, max_abs: None, error: None });
    }

    fn failed(&mut self, curve: &str, check: impl Into<String>, e: &CliError) {
        self.checks.push(Check {
            curve: curve.into(),
            check: check.into(),
            value: f64::NAN,
            limit: f64::NAN,
            pass: false,
            max_abs: None,
            error: Some(format!("{}: {e}", e.kind())),
        });
    }
}

fn default_suite(g: &Global) -> CliResult<Vec<(String, SampledCurve)>> {
    let circle = Circle::new(1.0)?;
    let helix = Helix::new(1.0, 1.0)?;
    let salkowski = SalkowskiParams::new(3f64.sqrt())?;
    let n = g.n.max(4096);
    Ok(vec![
        ("circle R=1".into(), to_unit_speed(sample_curve(|t| circle.point(t), (0.0, TAU), 2048)?, 2048)?),
        ("helix a=1 b=1".into(), to_unit_speed(sample_curve(|t| helix.point(t), HELIX_T_RANGE, n)?, n)?),
        ("salkowski m=sqrt(3)".into(), salkowski_unit_speed(&salkowski, n, DEFAULT_FRACTION)?),
    ])
}

pub fn check_curve(summary: &mut Summary, label: &str, curve: &SampledCurve, g: &Global, tol: &Tolerances) {
    let b = match bishop(curve, g.theta0) {
        Ok(b) => b,
        Err(e) => return summary.failed(label, "bishop frame", &e.into()),
    };
    let fi = integrity(&b);
    summary.check(label, "frame orthonormality", fi.orthonormality, FRAME_TOL);
    summary.check(label, "frame handedness", fi.handedness, FRAME_TOL);
    summary.check(label, "k1^2 + k2^2 = kappa^2", fi.curvature, FRAME_TOL);
    let tr = transport_residual(&b).into_iter().fold(0.0, f64::max);
    summary.check(label, "transport residual", tr, TRANSPORT_TOL);

    for kind in SmarandacheKind::ALL {
        let run = match run_kind(kind, &b, invariant_options(g)) {
            Ok(r) => r,
            Err(e) => {
                summary.failed(label, format!("{kind} invariants"), &e.into());
                continue;
            }
        };
        let bad = run.report.violations(tol);
        for q in ["speed", "kappa_beta", "tau_beta"] {
            let d = run.report.get(q).expect("quantity is compared");
            let pass = !bad.iter().any(|v| v.quantity == q);
            summary.checks.push(Check {
                curve: label.into(),
                check: format!("{kind} {q} max_rel"),
                value: d.max_rel,
                limit: tol.rel,
                pass,
                max_abs: Some(d.max_abs),
                error: None,
            });
        }
        for prefix in ["Tb", "Nb", "Bb"] {
            let limit = if prefix == "Tb" { tol.tangent_abs } else { tol.frame_abs };
            summary.check(label, format!("{kind} {prefix} max_abs"), run.report.max_abs_vector(prefix), limit);
        }
        if kind == SmarandacheKind::N1N2 {
            let worst = run.closed.t.iter().zip(&b.t).map(|(tb, ta)| (tb.dot(ta) + 1.0).abs()).fold(0.0, f64::max);
            summary.check(label, "N1N2 <T_beta, T> + 1", worst, IDENTITY_TOL);
        }
        summary.reports.push(KindReport { curve: label.into(), kind, report: run.report });
    }
}

pub fn run(g: &Global) -> CliResult<()> {
    let tol = Tolerances::from_env()?;
    let cases = if g.expr.is_some() || g.csv.is_some() || g.curve.is_some() {
        let base = load(g)?;
        vec![(base.label, base.curve)]
    } else {
        default_suite(g)?
    };
    let mut summary = Summary::default();
    for (label, curve) in &cases {
        check_curve(&mut summary, label, curve, g, &tol);
    }
    for c in &summary.checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        match (&c.error, c.max_abs) {
            (Some(e), _) => println!("{verdict} {}: {}: {e}", c.curve, c.check),
            (None, Some(abs)) => println!(
                "{verdict} {}: {} = {:.3e}, max_abs = {abs:.3e} (limit {:.0e})",
                c.curve, c.check, c.value, c.limit
            ),
            (None, None) => println!("{verdict} {}: {} = {:.3e} (limit {:.0e})", c.curve, c.check, c.value, c.limit),
        }
    }
    if let Some(path) = &g.out {
        emit(Some(path), &json(&summary))?;
    }
    let failed = summary.checks.iter().filter(|c| !c.pass).count();
    if g.strict && failed > 0 {
        return Err(CliError::Verification(format!("{failed} of {} checks failed", summary.checks.len())));
    }
    Ok(())
}
