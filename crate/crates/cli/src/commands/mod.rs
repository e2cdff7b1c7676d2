mod frames;
mod plot;
mod smarandache;
mod spheres;
mod verify;

use std::path::{Path, PathBuf};

use smarandache_core::smarandache::{InvariantOptions, ThetaIntegration};

use crate::args::{Cli, Command, Global, ThetaWrt};
use crate::error::CliResult;

pub fn run(cli: &Cli) -> CliResult<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Frames => frames::run(g),
        Command::Smarandache(a) => smarandache::run(g, a),
        Command::Spheres(a) => spheres::run(g, a),
        Command::Plot(a) => plot::run(g, a),
        Command::Verify => verify::run(g),
    }
}

fn invariant_options(g: &Global) -> InvariantOptions {
    let theta = match g.theta_beta_wrt {
        ThetaWrt::SStar => ThetaIntegration::ArcLengthOfBeta,
        ThetaWrt::S => ThetaIntegration::ArcLengthOfBase,
    };
    InvariantOptions { theta, ..Default::default() }
}

/// `--out` read as a directory, defaulting to the working directory.
fn out_dir(g: &Global) -> PathBuf {
    g.out.clone().unwrap_or_else(|| PathBuf::from("."))
}

fn joined(dir: &Path, name: String) -> PathBuf {
    dir.join(name)
}
