//! End-to-end helpers shared by the command-line tool, tests and benches.

use crate::curve::{arc_length_reparam, SampledCurve};
use crate::error::Result;
use crate::frames::{bishop_from_frenet, frenet_frame, BishopData, KAPPA_FLOOR};
use crate::smarandache::{
    compare, construct, invariants_with, oracle_invariants, DiscrepancyReport, InvariantOptions, OracleInvariants,
    SmarandacheInvariants, SmarandacheKind,
};

/// Returns `curve` unchanged if it is flagged unit speed, otherwise its
/// arc-length reparametrization with `n_out` samples.
pub fn to_unit_speed(curve: SampledCurve, n_out: usize) -> Result<SampledCurve> {
    if curve.unit_speed {
        Ok(curve)
    } else {
        arc_length_reparam(&curve, n_out)
    }
}

/// Bishop frame of a unit-speed curve, starting at angle `theta0`.
pub fn bishop(curve: &SampledCurve, theta0: f64) -> Result<BishopData> {
    let f = frenet_frame(curve, KAPPA_FLOOR)?;
    Ok(bishop_from_frenet(&f, theta0))
}

/// One Smarandache curve with its closed-form and oracle invariants.
#[derive(Debug, Clone)]
pub struct KindRun {
    pub kind: SmarandacheKind,
    pub beta: SampledCurve,
    pub closed: SmarandacheInvariants,
    pub oracle: OracleInvariants,
    pub report: DiscrepancyReport,
}

pub fn run_kind(kind: SmarandacheKind, bishop: &BishopData, opts: InvariantOptions) -> Result<KindRun> {
    let closed = invariants_with(kind, bishop, opts)?;
    let beta = construct(kind, bishop)?;
    let oracle = oracle_invariants(&beta)?;
    let report = compare(&closed, &oracle)?;
    Ok(KindRun { kind, beta, closed, oracle, report })
}
