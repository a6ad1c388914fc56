//! Empirical norm ratios `|Au|_{H^s_p} / |u|_{H^{s+d}_p}`.

use serde::Serialize;

use super::apply;
use crate::error::Result;
use crate::random::{log_uniform_field, seeded};
use crate::spectral::{DenseField, SparseField};
use crate::symbols::SeparableSymbol;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProbeConfig {
    pub s: f64,
    pub p: f64,
    pub trials: usize,
    /// Random inputs have `log2 |xi|` uniform in `[0, cap]`.
    pub cap: i64,
    pub modes: usize,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            s: 0.0,
            p: 2.0,
            trials: 32,
            cap: 20,
            modes: 8,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub input: String,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeTable {
    pub config: ProbeConfig,
    pub rows: Vec<RatioRow>,
    pub max_ratio: f64,
}

fn grid_for(radius: f64) -> usize {
    ((2.0 * radius + 2.0) as usize).next_power_of_two().max(8)
}

fn bessel(u: &SparseField, s: f64, p: f64) -> Result<f64> {
    if p == 2.0 {
        return Ok(u.sobolev_norm(s));
    }
    Ok(DenseField::from_sparse(u, grid_for(u.max_radius()))?.bessel_norm(s, p))
}

/// `|a(x,D) u|_{H^s_p} / |u|_{H^{s+d}_p}`; `p = 2` is computed on the
/// coefficients, other `p` on a grid that resolves both fields.
pub fn norm_ratio(a: &SeparableSymbol, u: &SparseField, s: f64, p: f64) -> Result<f64> {
    let au = apply(a, u)?;
    Ok(bessel(&au, s, p)? / bessel(u, s + a.order(), p)?)
}

/// Ratios on `trials` seeded random inputs followed by the given named
/// (adversarial) inputs.
pub fn norm_ratio_probe(
    a: &SeparableSymbol,
    cfg: &ProbeConfig,
    adversarial: &[(String, SparseField)],
) -> Result<ProbeTable> {
    let mut rng = seeded(cfg.seed);
    let mut rows = Vec::with_capacity(cfg.trials + adversarial.len());
    for t in 0..cfg.trials {
        let u = log_uniform_field(&mut rng, a.dim(), cfg.cap, cfg.modes);
        rows.push(RatioRow {
            input: format!("random-{t}"),
            ratio: norm_ratio(a, &u, cfg.s, cfg.p)?,
        });
    }
    for (name, u) in adversarial {
        rows.push(RatioRow {
            input: name.clone(),
            ratio: norm_ratio(a, u, cfg.s, cfg.p)?,
        });
    }
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(ProbeTable {
        config: *cfg,
        rows,
        max_ratio,
    })
}
