//! Telescoping identity of the Littlewood–Paley family on random points.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Context, ExperimentReport, Table};
use crate::cutoffs::telescope_check;
use crate::error::{Error, Result};
use crate::random::seeded;
use crate::row;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartitionParams {
    pub m: i64,
    pub samples: usize,
    pub dims: Vec<usize>,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for PartitionParams {
    fn default() -> Self {
        Self {
            m: 8,
            samples: 10_000,
            dims: vec![1, 2],
            tolerance: 1e-15,
            seed: 1,
        }
    }
}

/// Points spread uniformly in radius over `[0, 2 R 2^m]`, so every
/// transition region up to scale `m` is sampled.
fn sample_points(p: &PartitionParams, outer: f64) -> Result<Vec<Vec<f64>>> {
    let mut rng = seeded(p.seed);
    let reach = 2.0 * outer * 2f64.powi(p.m as i32);
    let mut pts = Vec::with_capacity(p.samples);
    for i in 0..p.samples {
        let dim = p.dims[i % p.dims.len()];
        let rho = rng.random_range(0.0..=reach);
        pts.push(match dim {
            1 => vec![if rng.random_bool(0.5) { rho } else { -rho }],
            2 => {
                let t = rng.random_range(0.0..std::f64::consts::TAU);
                vec![rho * t.cos(), rho * t.sin()]
            }
            d => return Err(Error::DimensionUnsupported(d)),
        });
    }
    Ok(pts)
}

pub(super) fn run(p: &PartitionParams, ctx: &Context) -> Result<ExperimentReport> {
    if p.m < 0 || p.m > 60 {
        return Err(Error::InvalidParameter(format!("m = {} outside [0, 60]", p.m)));
    }
    if p.dims.is_empty() || p.samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample and dimension".into()));
    }
    let mut rep = ExperimentReport::new("partition-check", p);
    let mut table = Table::new("telescope", &["profile", "m", "samples", "max_deviation"]);
    for profile in &ctx.profiles {
        let pts = sample_points(p, profile.outer())?;
        let dev = telescope_check(profile, p.m, &pts);
        table.push(row![profile.id(), p.m, pts.len(), dev]);
        rep.metric(format!("max_deviation.{}", profile.id()), dev);
        rep.check_le(format!("telescope.{}", profile.id()), dev, p.tolerance);
    }
    rep.tables.push(table);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let p = PartitionParams {
            samples: 500,
            ..Default::default()
        };
        let rep = run(&p, &Context::default()).unwrap();
        assert!(rep.pass(), "{:?}", rep.assertions);
        assert_eq!(rep.assertions.len(), 2);
    }
}
