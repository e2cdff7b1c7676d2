use smarandache_core::pipeline::bishop;
use smarandache_core::smarandache::{construct, oracle_invariants};
use smarandache_core::spheres::{evaluate, index_of_s, usable_range};
use smarandache_core::Error;

use crate::args::{Global, SpheresArgs, Target};
use crate::error::{CliError, CliResult};
use crate::output::{emit, json};
use crate::source::load;

pub fn run(g: &Global, a: &SpheresArgs) -> CliResult<()> {
    if let Some(r) = a.r {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::NonpositiveParameter { name: "r", value: r }.into());
        }
    }
    let base = load(g)?;
    let b = bishop(&base.curve, g.theta0)?;
    // Spheres of β use β's own Bishop frame on its arc-length grid.
    let frame = match a.kind {
        Target::Base => b,
        Target::Kind(kind) => {
            let beta = construct(kind, &b)?;
            oracle_invariants(&beta)?.bishop.ok_or(Error::DegenerateSpeed { s: None, speed: 0.0 })?
        }
    };
    let index = match (a.index, a.s_star) {
        (Some(i), _) => i,
        (None, Some(s)) => index_of_s(&frame, s)?,
        (None, None) => {
            let (lo, hi) = usable_range(&frame);
            (lo + hi) / 2
        }
    };
    let report = evaluate(&frame, index, a.r)?;
    emit(g.out.as_deref(), &json(&report.entries))?;
    match report.failure {
        Some(e) => Err(CliError::Core(e)),
        None => Ok(()),
    }
}
