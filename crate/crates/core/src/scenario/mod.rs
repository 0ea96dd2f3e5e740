//! Scenario documents: a JSON description of the structures under test and
//! the checks to run on them.

mod checks;
mod context;
mod schema;

use std::path::Path;

use rayon::prelude::*;

pub use checks::CHECKS;
pub use schema::{
    ActionValue, CommutatorValue, ExpectSpec, HigherValue, LieSpec, Operand, PairSpec, QuantumSpec, SampleSpec, Scenario,
    Space, StarSpec, TermSpec,
};

use crate::error::{Error, Result};
use crate::report::{Report, Status};
use context::Context;

/// Environment variable supplying the seed when neither the command line
/// nor the scenario does.
pub const SEED_ENV: &str = "MOMENTA_SEED";

/// Command-line overrides of scenario settings.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub order: Option<usize>,
    pub seed: Option<u64>,
    pub checks: Option<Vec<String>>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario> {
        serde_json::from_str(text).map_err(|e| Error::Scenario(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Scenario::from_json(&text)
    }
}

/// Seed precedence: override, scenario, `MOMENTA_SEED`, then 0.
pub fn resolve_seed(sc: &Scenario, overrides: &Overrides) -> Result<u64> {
    if let Some(s) = overrides.seed {
        return Ok(s);
    }
    if let Some(s) = sc.space.as_ref().and_then(|s| s.seed) {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Invalid(format!("{SEED_ENV} must be an unsigned integer, found `{v}`"))),
        Err(_) => Ok(0),
    }
}

/// Assemble the declared structures and run the requested checks. Checks
/// run concurrently; the report lists them sorted by name.
pub fn run(sc: &Scenario, fallback_name: &str, overrides: &Overrides) -> Result<Report> {
    let seed = resolve_seed(sc, overrides)?;
    let ctx = Context::build(sc, overrides.order, seed)?;
    let mut names: Vec<String> = overrides
        .checks
        .clone()
        .or_else(|| sc.checks.clone())
        .ok_or_else(|| Error::MissingSection("checks".into()))?;
    names.sort();
    names.dedup();
    let empty = ExpectSpec::default();
    let expect = sc.expect.as_ref().unwrap_or(&empty);
    for n in &names {
        for section in checks::requirements(n)? {
            if !checks::has_section(&ctx, expect, section) {
                return Err(Error::MissingSection((*section).to_string()).in_section(format!("check `{n}`")));
            }
        }
    }
    let results = names.par_iter().map(|n| checks::run(&ctx, expect, n)).collect::<Result<Vec<_>>>()?;
    let name = sc.name.clone().unwrap_or_else(|| fallback_name.to_string());
    Ok(Report::new(name, seed, ctx.order, results.into_iter().flatten().collect()))
}

/// Load and run a scenario file.
pub fn run_scenario(path: &Path, overrides: &Overrides) -> Result<Report> {
    let sc = Scenario::load(path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
    run(&sc, stem, overrides)
}

/// 0 when every check passes (unverified parts do not fail), 1 otherwise.
pub fn exit_code(report: &Report) -> i32 {
    match report.status {
        Status::Fail => 1,
        _ => 0,
    }
}
