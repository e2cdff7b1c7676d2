use smarandache_core::curve::csv::read_curve_csv_path;
use smarandache_core::pipeline::bishop;
use smarandache_core::smarandache::{construct, SmarandacheKind};

use super::{joined, out_dir};
use crate::args::{Global, PlotArgs, PlotKind};
use crate::error::CliResult;
use crate::output::{emit, write_atomic};
use crate::source::load;
use crate::svg::{render, Series};

fn title(kind: SmarandacheKind, base: &str) -> String {
    format!("{kind} Smarandache curve of {base}")
}

pub fn run(g: &Global, a: &PlotArgs) -> CliResult<()> {
    if let Some(path) = &a.input {
        let c = read_curve_csv_path(path)?;
        let svg = render(&path.display().to_string(), &[Series { label: "input", points: &c.points }], g.view);
        return emit(g.out.as_deref(), svg.as_bytes());
    }
    let base = load(g)?;
    match a.kind.clone().unwrap_or(PlotKind::Base) {
        PlotKind::Base => {
            let svg = render(&base.label, &[Series { label: "curve", points: &base.curve.points }], g.view);
            emit(g.out.as_deref(), svg.as_bytes())
        }
        PlotKind::Kinds(kinds, many) => {
            let b = bishop(&base.curve, g.theta0)?;
            let dir = out_dir(g);
            for kind in kinds {
                let beta = construct(kind, &b)?;
                let name = kind.to_string();
                let svg = render(&title(kind, &base.label), &[Series { label: &name, points: &beta.points }], g.view);
                if many {
                    write_atomic(&joined(&dir, format!("{}.svg", kind.slug())), svg.as_bytes())?;
                } else {
                    emit(g.out.as_deref(), svg.as_bytes())?;
                }
            }
            Ok(())
        }
    }
}
