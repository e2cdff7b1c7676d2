use smarandache_core::frames::write_frames_csv;
use smarandache_core::pipeline::bishop;

use crate::args::Global;
use crate::error::CliResult;
use crate::output::{emit, render};
use crate::source::load;

pub fn run(g: &Global) -> CliResult<()> {
    let base = load(g)?;
    let b = bishop(&base.curve, g.theta0)?;
    emit(g.out.as_deref(), &render(|w| write_frames_csv(&b, w)))
}
