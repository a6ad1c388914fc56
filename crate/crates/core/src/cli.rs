//! Command-line front end: `run <name>`, `apply`, `suite` and
//! `partition-check`.
//!
//! Exit codes: 0 all assertions pass, 1 an assertion failed, 2 bad flags,
//! parameters or input files, 3 I/O or resource limits.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

use crate::cutoffs::{default_profiles, CutoffProfile};
use crate::error::{Error, Result};
use crate::experiments::{run_experiment, write_report, Context, ExperimentReport, EXPERIMENTS};
use crate::fsutil::write_atomic;
use crate::operator::{apply, apply_modulated, support_rule_xi};
use crate::spectral::SparseField;
use crate::symbols::SeparableSymbol;

/// Environment variable naming the default output root.
pub const OUT_ENV: &str = "PSIDO11_OUT";
const DEFAULT_OUT: &str = "psido11-out";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "psido11", version, about = "Type 1,1 operators by vanishing frequency modulation")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Default, Args)]
struct GlobalArgs {
    /// Flat TOML file with dotted keys, e.g. `flip.d = [0.5]`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output root (default: $PSIDO11_OUT, then `psido11-out`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Grid size M for experiments that sample on a grid.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Cutoff profile spec (`exp`, `poly7`, `exp:1.1:2`); repeatable.
    #[arg(long, global = true)]
    profile: Vec<String>,
    #[arg(long, global = true)]
    emit_plots: bool,
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one experiment; trailing `--key value` pairs override parameters.
    Run {
        name: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        overrides: Vec<String>,
    },
    /// Apply a symbol file to a field file.
    Apply {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long)]
        field: PathBuf,
        /// Use the modulated operator at this `m`.
        #[arg(long)]
        modulate: Option<i64>,
        /// Output file (default: `<out>/apply/output.json`).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run every experiment at its defaults and write `summary.json`.
    Suite,
    /// Check the Littlewood–Paley telescoping identity.
    PartitionCheck {
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        samples: Option<usize>,
    },
}

/// Everything resolved before any experiment starts.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub out: PathBuf,
    pub ctx: Context,
    pub emit_plots: bool,
    pub parallel: bool,
    /// Per-experiment overrides from the configuration file.
    pub overrides: BTreeMap<String, Map<String, Value>>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::BudgetExceeded { .. } | Error::WindowTooLarge(_) => CliError::Io(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

/// Scalars become numbers or booleans where they parse as such; commas make lists.
pub fn parse_value(raw: &str) -> Value {
    if raw.contains(',') {
        return Value::Array(raw.split(',').filter(|s| !s.is_empty()).map(parse_value).collect());
    }
    if let Ok(i) = raw.parse::<i64>() {
        return Value::from(i);
    }
    if let Ok(x) = raw.parse::<f64>() {
        if x.is_finite() {
            return Value::from(x);
        }
    }
    match raw {
        "true" => Value::Bool(true),
        "false" => Value::Bool(false),
        _ => Value::String(raw.to_string()),
    }
}

/// `--key value` / `--key=value` pairs.
pub fn parse_overrides(args: &[String]) -> Result<Map<String, Value>> {
    let mut out = Map::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let key = a
            .strip_prefix("--")
            .ok_or_else(|| Error::Parse(format!("expected --key, found '{a}'")))?;
        let (key, value) = match key.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it
                    .next()
                    .ok_or_else(|| Error::Parse(format!("missing value for --{key}")))?;
                (key.to_string(), v.clone())
            }
        };
        if key.is_empty() {
            return Err(Error::Parse("empty parameter name".into()));
        }
        out.insert(key, parse_value(&value));
    }
    Ok(out)
}

fn flatten(prefix: &str, v: &toml::Value, out: &mut BTreeMap<String, toml::Value>) {
    match v {
        toml::Value::Table(t) => {
            for (k, v) in t {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        other => {
            out.insert(prefix.to_string(), other.clone());
        }
    }
}

fn profiles_from(specs: &[String]) -> Result<Vec<CutoffProfile>> {
    if specs.is_empty() {
        return Ok(default_profiles());
    }
    specs.iter().map(|s| s.parse()).collect()
}

fn resolve(global: &GlobalArgs) -> Result<RunConfig> {
    let mut file = BTreeMap::new();
    if let Some(path) = &global.config {
        let text = std::fs::read_to_string(path)?;
        let doc: toml::Value = toml::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        flatten("", &doc, &mut file);
    }
    let mut out_dir = std::env::var_os(OUT_ENV).map(PathBuf::from);
    let (mut seed, mut grid, mut specs) = (None, None, Vec::new());
    let (mut emit_plots, mut parallel) = (false, false);
    let mut overrides: BTreeMap<String, Map<String, Value>> = BTreeMap::new();
    let bad = |k: &str| Error::Parse(format!("config key '{k}' has the wrong type"));
    for (key, v) in &file {
        match key.as_str() {
            "out" => out_dir = Some(PathBuf::from(v.as_str().ok_or_else(|| bad(key))?)),
            "seed" => seed = Some(v.as_integer().and_then(|i| u64::try_from(i).ok()).ok_or_else(|| bad(key))?),
            "grid" => grid = Some(v.as_integer().and_then(|i| usize::try_from(i).ok()).ok_or_else(|| bad(key))?),
            "emit_plots" | "emit-plots" => emit_plots = v.as_bool().ok_or_else(|| bad(key))?,
            "parallel" => parallel = v.as_bool().ok_or_else(|| bad(key))?,
            "profile" | "profiles" => {
                specs = match v {
                    toml::Value::String(s) => vec![s.clone()],
                    toml::Value::Array(a) => a
                        .iter()
                        .map(|x| x.as_str().map(String::from).ok_or_else(|| bad(key)))
                        .collect::<Result<_>>()?,
                    _ => return Err(bad(key)),
                }
            }
            _ => {
                let (exp, param) = key
                    .split_once('.')
                    .ok_or_else(|| Error::Parse(format!("unknown config key '{key}'")))?;
                if !EXPERIMENTS.contains(&exp) {
                    return Err(Error::Parse(format!("config key '{key}' names no experiment")));
                }
                let json = serde_json::to_value(v).map_err(|e| Error::Parse(e.to_string()))?;
                overrides.entry(exp.to_string()).or_default().insert(param.to_string(), json);
            }
        }
    }
    if !global.profile.is_empty() {
        specs = global.profile.clone();
    }
    Ok(RunConfig {
        out: global.out.clone().or(out_dir).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
        ctx: Context {
            profiles: profiles_from(&specs)?,
            seed: global.seed.or(seed),
            grid: global.grid.or(grid),
        },
        emit_plots: global.emit_plots || emit_plots,
        parallel: global.parallel || parallel,
        overrides,
    })
}

fn print_report(r: &ExperimentReport, dir: &Path) {
    for a in &r.assertions {
        let tag = if a.pass { "ok  " } else { "FAIL" };
        println!("  [{tag}] {:<40} measured {:e} (tolerance {:e})", a.id, a.measured, a.tolerance);
    }
    let verdict = if r.pass() { "PASS" } else { "FAIL" };
    println!("{verdict} {} -> {}", r.name, dir.display());
}

fn run_one(name: &str, extra: &Map<String, Value>, cfg: &RunConfig) -> std::result::Result<ExperimentReport, CliError> {
    let mut params = cfg.overrides.get(name).cloned().unwrap_or_default();
    params.extend(extra.clone());
    let mut report = run_experiment(name, &params, &cfg.ctx)?;
    let dir = cfg.out.join(name);
    write_report(&mut report, &dir, cfg.emit_plots)?;
    print_report(&report, &dir);
    Ok(report)
}

fn verdict(reports: &[ExperimentReport]) -> i32 {
    if reports.iter().all(|r| r.pass()) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Global flags may also trail the experiment name.
fn split_trailing_globals(args: &mut Map<String, Value>, cfg: &mut RunConfig) -> Result<()> {
    let take_str = |v: Value| match v {
        Value::String(s) => s,
        other => other.to_string(),
    };
    if let Some(v) = args.remove("out") {
        cfg.out = PathBuf::from(take_str(v));
    }
    if let Some(v) = args.remove("grid") {
        cfg.ctx.grid = Some(
            v.as_u64()
                .ok_or_else(|| Error::Parse("--grid expects an integer".into()))? as usize,
        );
    }
    if let Some(v) = args.remove("profile") {
        let specs: Vec<String> = match v {
            Value::Array(a) => a.into_iter().map(take_str).collect(),
            other => vec![take_str(other)],
        };
        cfg.ctx.profiles = profiles_from(&specs)?;
    }
    if let Some(v) = args.remove("emit-plots") {
        cfg.emit_plots = v.as_bool().ok_or_else(|| Error::Parse("--emit-plots expects true/false".into()))?;
    }
    Ok(())
}

fn cmd_apply(
    cfg: &RunConfig,
    symbol: &Path,
    field: &Path,
    modulate: Option<i64>,
    output: Option<PathBuf>,
) -> std::result::Result<i32, CliError> {
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())));
    let a = SeparableSymbol::from_json(&read(symbol)?)?;
    let u = SparseField::from_json(&read(field)?)?;
    let profile = cfg.ctx.primary_profile();
    let (out, xi) = match modulate {
        Some(m) => (
            apply_modulated(&a, &u, &profile, m)?,
            support_rule_xi(&a.modulate(m, &profile), &crate::cutoffs::modulate(&u, m, &profile))?,
        ),
        None => (apply(&a, &u)?, support_rule_xi(&a, &u)?),
    };
    let contained = out.spectrum().is_subset(&xi);
    let path = output.unwrap_or_else(|| cfg.out.join("apply").join("output.json"));
    write_atomic(&path, out.to_json().as_bytes())?;
    println!("Xi: {} frequencies; output spectrum: {} frequencies", xi.len(), out.len());
    println!("containment: {contained}");
    println!("output -> {}", path.display());
    Ok(EXIT_PASS)
}

fn cmd_suite(cfg: &RunConfig) -> std::result::Result<i32, CliError> {
    let run = |name: &str| -> std::result::Result<(ExperimentReport, f64), CliError> {
        let t = Instant::now();
        let r = run_one(name, &Map::new(), cfg)?;
        Ok((r, t.elapsed().as_secs_f64()))
    };
    let results: Vec<_> = if cfg.parallel {
        std::thread::scope(|s| {
            let handles: Vec<_> = EXPERIMENTS.iter().map(|n| s.spawn(move || run(n))).collect();
            handles.into_iter().map(|h| h.join().expect("experiment thread panicked")).collect()
        })
    } else {
        EXPERIMENTS.iter().map(|n| run(n)).collect()
    };
    let results = results.into_iter().collect::<std::result::Result<Vec<_>, _>>()?;
    let entries: Vec<Value> = results
        .iter()
        .map(|(r, _)| {
            let failed: Vec<&str> = r.assertions.iter().filter(|a| !a.pass).map(|a| a.id.as_str()).collect();
            serde_json::json!({
                "name": r.name,
                "pass": r.pass(),
                "assertions": r.assertions.len(),
                "failed": failed,
                "report": format!("{}/report.json", r.name),
            })
        })
        .collect();
    let reports: Vec<ExperimentReport> = results.iter().map(|(r, _)| r.clone()).collect();
    let summary = serde_json::json!({
        "pass": reports.iter().all(|r| r.pass()),
        "experiments": entries,
    });
    let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    write_atomic(&cfg.out.join("summary.json"), text.as_bytes())?;
    for (r, secs) in &results {
        println!("{:<16} {} ({secs:.2} s)", r.name, if r.pass() { "PASS" } else { "FAIL" });
    }
    Ok(verdict(&reports))
}

fn dispatch(cli: Cli) -> std::result::Result<i32, CliError> {
    let mut cfg = resolve(&cli.global)?;
    match cli.command {
        Command::Run { name, overrides } => {
            if !EXPERIMENTS.contains(&name.as_str()) {
                return Err(CliError::Usage(format!(
                    "unknown experiment '{name}' (known: {})",
                    EXPERIMENTS.join(", ")
                )));
            }
            let mut extra = parse_overrides(&overrides)?;
            split_trailing_globals(&mut extra, &mut cfg)?;
            Ok(verdict(&[run_one(&name, &extra, &cfg)?]))
        }
        Command::Apply {
            symbol,
            field,
            modulate,
            output,
        } => cmd_apply(&cfg, &symbol, &field, modulate, output),
        Command::Suite => cmd_suite(&cfg),
        Command::PartitionCheck { m, samples } => {
            let mut extra = Map::new();
            if let Some(m) = m {
                extra.insert("m".into(), Value::from(m));
            }
            if let Some(n) = samples {
                extra.insert("samples".into(), Value::from(n));
            }
            Ok(verdict(&[run_one("partition-check", &extra, &cfg)?]))
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            let (CliError::Usage(msg) | CliError::Io(msg)) = &e;
            eprintln!("error: {msg}");
            e.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn values_parse() {
        assert_eq!(parse_value("5"), json!(5));
        assert_eq!(parse_value("0.5"), json!(0.5));
        assert_eq!(parse_value("-1"), json!(-1));
        assert_eq!(parse_value("5,6,7"), json!([5, 6, 7]));
        assert_eq!(parse_value("true"), json!(true));
        assert_eq!(parse_value("sin,square"), json!(["sin", "square"]));
    }

    #[test]
    fn overrides_parse() {
        let args: Vec<String> = ["--d", "0.5", "--J=20", "--n-list", "5,6"].iter().map(|s| s.to_string()).collect();
        let o = parse_overrides(&args).unwrap();
        assert_eq!(o["d"], json!(0.5));
        assert_eq!(o["J"], json!(20));
        assert_eq!(o["n-list"], json!([5, 6]));
        assert!(parse_overrides(&["--d".to_string()]).is_err());
        assert!(parse_overrides(&["d".to_string()]).is_err());
    }

    #[test]
    fn config_is_flattened_and_flags_win() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.toml");
        std::fs::write(
            &path,
            "seed = 4\ngrid = 1024\nprofiles = [\"poly7\"]\nflip.d = [0.5]\n[unclosable]\nn_list = [5, 6]\n",
        )
        .unwrap();
        let global = GlobalArgs {
            config: Some(path),
            seed: Some(9),
            ..Default::default()
        };
        let cfg = resolve(&global).unwrap();
        assert_eq!(cfg.ctx.seed, Some(9));
        assert_eq!(cfg.ctx.grid, Some(1024));
        assert_eq!(cfg.ctx.profiles.len(), 1);
        assert_eq!(cfg.overrides["flip"]["d"], json!([0.5]));
        assert_eq!(cfg.overrides["unclosable"]["n_list"], json!([5, 6]));
    }

    #[test]
    fn broken_config_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.toml");
        std::fs::write(&path, "profiles = [\"exp:2:1\"]\n").unwrap();
        let global = GlobalArgs {
            config: Some(path.clone()),
            ..Default::default()
        };
        assert!(resolve(&global).is_err());
        std::fs::write(&path, "nonsense = 1\n").unwrap();
        assert!(resolve(&global).is_err());
    }

    #[test]
    fn unknown_experiment_is_usage_error() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap();
        assert_eq!(main_with_args(["psido11", "--out", out, "run", "unknown-name"]), EXIT_USAGE);
        assert_eq!(main_with_args(["psido11", "-o", out, "suite"]), EXIT_USAGE);
    }
}
