// Loading a JSON scenario, running its checks, and emitting the report.

use std::path::PathBuf;

use momenta::report::Format;
use momenta::scenario::{self, exit_code, run_scenario, Overrides, Scenario};

pub fn run() -> momenta::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/r2_abelian.json");
    let report = run_scenario(&path, &Overrides::default())?;
    print!("{}", report.emit(Format::Text));
    println!("exit code {}", exit_code(&report));

    let inline = Scenario::from_json(
        r#"{
            "space": {"variables": ["q", "p"], "order": 3},
            "poisson": [["0", "1"], ["-1", "0"]],
            "lie": {"basis": ["xi"]},
            "momentum": {"xi": "(q^2 + p^2)/2"},
            "hamiltonians": ["q^2 + p^2", "q"],
            "checks": ["jacobi", "noether"]
        }"#,
    )?;
    let overrides = Overrides { seed: Some(5), ..Overrides::default() };
    let report = scenario::run(&inline, "inline", &overrides)?;
    print!("{}", report.emit(Format::Json));
    println!("exit code {}", exit_code(&report));
    Ok(())
}

#[allow(dead_code)]
fn main() -> momenta::Result<()> {
    run()
}
