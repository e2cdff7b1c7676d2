use smarandache_core::curve::csv::write_curve_csv;
use smarandache_core::pipeline::{bishop, run_kind};
use smarandache_core::smarandache::{write_invariants_csv, Tolerances};

use super::{invariant_options, joined, out_dir};
use crate::args::{Global, SmarandacheArgs};
use crate::error::{CliError, CliResult};
use crate::output::{json, render, write_atomic};
use crate::source::load;

#[derive(serde::Serialize)]
struct Violation<'a> {
    kind: &'a str,
    quantity: &'a str,
    max_abs: f64,
    max_rel: f64,
    s_argmax: f64,
}

pub fn run(g: &Global, a: &SmarandacheArgs) -> CliResult<()> {
    let tol = Tolerances::from_env()?;
    let base = load(g)?;
    let b = bishop(&base.curve, g.theta0)?;
    let dir = out_dir(g);
    let opts = invariant_options(g);
    let mut failed = 0usize;
    let mut code = 0;
    let mut violations = 0usize;
    for &kind in &a.kind.0 {
        let slug = kind.slug();
        let step = run_kind(kind, &b, opts).map_err(CliError::from).and_then(|r| {
            write_atomic(&joined(&dir, format!("beta_{slug}.csv")), &render(|w| write_curve_csv(&r.beta, w)))?;
            write_atomic(&joined(&dir, format!("invariants_{slug}.csv")), &render(|w| write_invariants_csv(&r.closed, w)))?;
            if a.verify {
                write_atomic(&joined(&dir, format!("report_{slug}.json")), &json(&r.report))?;
                for d in r.report.violations(&tol) {
                    let v = Violation {
                        kind: slug,
                        quantity: &d.quantity,
                        max_abs: d.max_abs,
                        max_rel: d.max_rel,
                        s_argmax: d.s_argmax,
                    };
                    println!("{}", serde_json::to_string(&v).expect("record serializes"));
                    violations += 1;
                }
            }
            Ok(())
        });
        if let Err(e) = step {
            if a.kind.0.len() == 1 {
                return Err(e);
            }
            eprintln!("error: {}: {kind}: {e}", e.kind());
            failed += 1;
            code = code.max(e.exit_code());
        }
    }
    if failed > 0 {
        return Err(CliError::Partial { failed, total: a.kind.0.len(), code });
    }
    if g.strict && violations > 0 {
        return Err(CliError::Verification(format!("{violations} comparison(s) beyond tolerance")));
    }
    Ok(())
}
