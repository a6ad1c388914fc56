//! Running an experiment programmatically with parameter overrides.

use psido11::experiments::{run_experiment, Context};
use serde_json::{json, Map};

fn main() -> psido11::Result<()> {
    let mut overrides = Map::new();
    overrides.insert("d".into(), json!([0.5]));
    overrides.insert("J".into(), json!(16));
    let report = run_experiment("flip", &overrides, &Context::default())?;
    for a in &report.assertions {
        println!("{:<28} {:>12.3e} <= {:e}: {}", a.id, a.measured, a.tolerance, a.pass);
    }
    println!("overall: {}", if report.pass() { "PASS" } else { "FAIL" });
    Ok(())
}
