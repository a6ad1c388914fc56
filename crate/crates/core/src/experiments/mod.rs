//! Scripted reproductions of the named constructions. Each experiment returns
//! an [`ExperimentReport`] whose assertions decide PASS/FAIL; nothing else is
//! checked anywhere.

mod algebra;
mod artifacts;
mod composite;
mod continuity;
mod flip;
mod paradiff;
mod partition;
mod product;
mod support;
mod unclosable;
mod weierstrass;

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::cutoffs::{default_profiles, CutoffProfile};
use crate::error::{Error, Result};

pub use algebra::AlgebraParams;
pub use artifacts::{plot_script, write_report};
pub use composite::{composite_input, CompositeParams};
pub use continuity::ContinuityParams;
pub use flip::FlipParams;
pub use paradiff::ParadiffParams;
pub use partition::PartitionParams;
pub use product::ProductParams;
pub use support::SupportParams;
pub use unclosable::UnclosableParams;
pub use weierstrass::WeierstrassParams;

/// Registered experiment names, in suite order.
pub const EXPERIMENTS: [&str; 10] = [
    "partition-check",
    "unclosable",
    "flip",
    "weierstrass",
    "support",
    "paradiff",
    "composite",
    "continuity",
    "algebra",
    "product",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assertion {
    pub id: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// A CSV table: fixed headers, one row per parameter tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, headers: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// Formats a cell; floats use the shortest round-trip representation.
#[macro_export]
#[doc(hidden)]
macro_rules! row {
    ($($x:expr),* $(,)?) => { vec![$(format!("{}", $x)),*] };
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub name: String,
    pub params: Value,
    pub metrics: BTreeMap<String, f64>,
    pub assertions: Vec<Assertion>,
    pub artifacts: Vec<String>,
    #[serde(skip)]
    pub tables: Vec<Table>,
}

impl ExperimentReport {
    pub fn new(name: &str, params: &impl Serialize) -> Self {
        Self {
            name: name.to_string(),
            params: serde_json::to_value(params).expect("parameters serialize"),
            metrics: BTreeMap::new(),
            assertions: Vec::new(),
            artifacts: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn assertion(&self, id: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.id == id)
    }

    pub fn metric(&mut self, key: impl Into<String>, value: f64) {
        self.metrics.insert(key.into(), value);
    }

    fn record(&mut self, id: String, measured: f64, tolerance: f64, pass: bool) {
        debug_assert!(self.assertion(&id).is_none(), "duplicate assertion {id}");
        self.assertions.push(Assertion {
            id,
            measured,
            tolerance,
            pass,
        });
    }

    /// Passes iff `measured <= tolerance` (NaN fails).
    pub fn check_le(&mut self, id: impl Into<String>, measured: f64, tolerance: f64) {
        self.record(id.into(), measured, tolerance, measured <= tolerance);
    }

    /// Passes iff `measured < tolerance`.
    pub fn check_lt(&mut self, id: impl Into<String>, measured: f64, tolerance: f64) {
        self.record(id.into(), measured, tolerance, measured < tolerance);
    }

    /// Passes iff `|measured - target| <= tolerance`; records the deviation.
    pub fn check_near(&mut self, id: impl Into<String>, measured: f64, target: f64, tolerance: f64) {
        let dev = (measured - target).abs();
        self.record(id.into(), dev, tolerance, dev <= tolerance);
    }

    /// Counts failures; passes iff there are none.
    pub fn check_count(&mut self, id: impl Into<String>, failures: usize) {
        self.record(id.into(), failures as f64, 0.0, failures == 0);
    }

    pub fn check_with(&mut self, id: impl Into<String>, measured: f64, tolerance: f64, pass: bool) {
        self.record(id.into(), measured, tolerance, pass);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Settings shared by all experiments of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Context {
    pub profiles: Vec<CutoffProfile>,
    /// Overrides every experiment's `seed` parameter.
    pub seed: Option<u64>,
    /// Overrides every experiment's grid size `M`.
    pub grid: Option<usize>,
}

impl Default for Context {
    fn default() -> Self {
        Self {
            profiles: default_profiles(),
            seed: None,
            grid: None,
        }
    }
}

impl Context {
    pub fn primary_profile(&self) -> CutoffProfile {
        self.profiles.first().copied().unwrap_or_default()
    }
}

/// Overlays `overrides` on the defaults of `P`. Unknown keys and ill-typed
/// values are rejected; a scalar given for a list parameter is promoted.
pub fn resolve_params<P: Default + Serialize + DeserializeOwned>(
    overrides: &Map<String, Value>,
    ctx: &Context,
) -> Result<P> {
    let mut base = match serde_json::to_value(P::default()).expect("defaults serialize") {
        Value::Object(m) => m,
        _ => unreachable!("parameter structs serialize to objects"),
    };
    let mut all = overrides.clone();
    if let Some(seed) = ctx.seed {
        if base.contains_key("seed") {
            all.entry("seed").or_insert(Value::from(seed));
        }
    }
    if let Some(grid) = ctx.grid {
        if base.contains_key("M") {
            all.entry("M").or_insert(Value::from(grid));
        }
    }
    for (k, v) in all {
        let key = k.replace('-', "_");
        let slot = match (base.contains_key(&key), base.contains_key(&k)) {
            (true, _) => key,
            (_, true) => k,
            _ => return Err(Error::InvalidParameter(format!("unknown parameter '{k}'"))),
        };
        let v = match (&base[&slot], v) {
            (Value::Array(_), Value::Array(a)) => Value::Array(a),
            (Value::Array(_), scalar) => Value::Array(vec![scalar]),
            (_, v) => v,
        };
        base.insert(slot, v);
    }
    serde_json::from_value(Value::Object(base)).map_err(|e| Error::InvalidParameter(e.to_string()))
}

/// Runs the named experiment with parameter overrides.
pub fn run_experiment(name: &str, overrides: &Map<String, Value>, ctx: &Context) -> Result<ExperimentReport> {
    match name {
        "partition-check" => partition::run(&resolve_params(overrides, ctx)?, ctx),
        "unclosable" => unclosable::run(&resolve_params(overrides, ctx)?, ctx),
        "flip" => flip::run(&resolve_params(overrides, ctx)?),
        "weierstrass" => weierstrass::run(&resolve_params(overrides, ctx)?, ctx),
        "support" => support::run(&resolve_params(overrides, ctx)?, ctx),
        "paradiff" => paradiff::run(&resolve_params(overrides, ctx)?, ctx),
        "composite" => composite::run(&resolve_params(overrides, ctx)?, ctx),
        "continuity" => continuity::run(&resolve_params(overrides, ctx)?),
        "algebra" => algebra::run(&resolve_params(overrides, ctx)?, ctx),
        "product" => product::run(&resolve_params(overrides, ctx)?, ctx),
        other => Err(Error::InvalidParameter(format!("unknown experiment '{other}'"))),
    }
}

/// Frequency from a parameter list such as `[1]` or `[0, 1]`.
fn direction(comps: &[i128]) -> Result<crate::spectral::Frequency> {
    let f = crate::spectral::Frequency::new(comps)?;
    if f.is_zero() {
        return Err(Error::ZeroDirection);
    }
    Ok(f)
}
