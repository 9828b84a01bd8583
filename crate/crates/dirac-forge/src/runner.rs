//! Executes a scenario and collects its report.

use std::path::PathBuf;

use anyhow::Context;

use crate::config::Scenario;
use crate::report::{Environment, Record, Report};
use crate::suites;

/// Which blocks of a scenario to execute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    All,
    ConvergenceOnly,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Worker threads; 0 keeps the rayon default.
    pub threads: usize,
    pub seed: Option<u64>,
    /// Replaces the scenario's `grids`.
    pub grids: Option<Vec<usize>>,
    /// Directory relative paths in the scenario resolve against.
    pub base_dir: PathBuf,
}

pub fn run(scenario: &Scenario, opts: &Options, mode: Mode) -> anyhow::Result<Report> {
    let mut s = scenario.clone();
    if let Some(seed) = opts.seed {
        s.seed = seed;
    }
    if let Some(g) = &opts.grids {
        s.grids = g.clone();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .context("building the worker pool")?;
    let records = pool.install(|| execute(&s, opts, mode))?;
    Ok(Report {
        scenario: s.name.clone(),
        environment: Environment {
            tool: "dirac-forge",
            version: env!("CARGO_PKG_VERSION"),
            seed: s.seed,
            threads: opts.threads,
        },
        config: s,
        records,
    })
}

fn execute(s: &Scenario, opts: &Options, mode: Mode) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    let base = opts.base_dir.as_path();
    if mode == Mode::ConvergenceOnly {
        let c = s.convergence.as_ref().context("scenario has no [convergence] block")?;
        return suites::convergence(s, c, &s.grids, base);
    }
    if let Some(a) = &s.algebra {
        out.extend(suites::algebra(a, &s.eps)?);
    }
    if s.stype.is_some() || s.lichnerowicz.is_some() || s.trace.is_some() {
        let gspec = s.geometry.as_ref().context("missing [geometry] block")?;
        let geom = suites::geometry(gspec, s.order, None, base)?;
        if let Some(b) = &s.stype {
            out.extend(suites::stype(s, b, &geom, gspec)?);
        }
        if let Some(b) = &s.lichnerowicz {
            out.extend(suites::lichnerowicz(s, b, &geom, gspec)?);
        }
        if let Some(b) = &s.trace {
            out.extend(suites::trace(s, b, &geom)?);
        }
    }
    if let Some(c) = &s.convergence {
        out.extend(suites::convergence(s, c, &s.grids, base)?);
    }
    if let Some(b) = &s.sigma {
        out.extend(suites::sigma(s, b)?);
    }
    if let Some(b) = &s.geodesic {
        out.extend(suites::geodesic(b)?);
    }
    if let Some(b) = &s.yang_mills {
        out.extend(suites::yang_mills(s, b)?);
    }
    if let Some(b) = &s.dhym {
        out.extend(suites::dhym(s, b)?);
    }
    if let Some(b) = &s.higgs {
        out.extend(suites::higgs(s, b)?);
    }
    Ok(out)
}
