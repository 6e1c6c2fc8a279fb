// Running a CLI scenario from code and printing its CSV.

use hyperdecay::cli::output::Table;
use hyperdecay::cli::scenario::{Scenario, Units};
use hyperdecay::cli::commands;

const SCENARIO: &str = "\
spectral.model = bw-truncated
spectral.mu0 = 100
spectral.gamma = 1
grid.s = 0, 10000
grid.dtau = 0:2:3
";

pub fn run_example() -> hyperdecay::Result<()> {
    let sc = Scenario::parse(SCENARIO)?;
    let rows = commands::twopoint(&sc, Units::Natural)?;
    let table = Table {
        command: "twopoint".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        scenario_sha256: sc.sha256().into(),
        units: Units::Natural.as_str().into(),
        columns: rows.columns.iter().map(|c| c.to_string()).collect(),
        rows: rows.rows,
    };
    print!("{}", table.to_csv());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
