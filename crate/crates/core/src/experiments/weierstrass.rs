//! Truncated Weierstrass functions: every Littlewood–Paley block isolates a
//! single mode, so the `B^d_{inf,inf}` norm and the `F^d_{p,inf}` seminorms
//! are exactly one.

use serde::{Deserialize, Serialize};

use super::{Context, ExperimentReport, Table};
use crate::cutoffs::{lp_project, Localization, LpFamily};
use crate::error::{Error, Result};
use crate::families::weierstrass;
use crate::row;
use crate::spectral::{besov_norm, BlockAggregation, Frequency, SparseField};
use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeierstrassParams {
    pub d: Vec<f64>,
    #[serde(rename = "J")]
    pub top: i64,
    #[serde(rename = "M")]
    pub grid: usize,
    pub p: Vec<f64>,
    pub block_tolerance: f64,
    pub norm_tolerance: f64,
}

impl Default for WeierstrassParams {
    fn default() -> Self {
        Self {
            d: vec![0.5, 1.0],
            top: 12,
            grid: 1 << 15,
            p: vec![1.0, 2.0, 4.0],
            block_tolerance: 1e-15,
            norm_tolerance: 1e-10,
        }
    }
}

pub(super) fn run(p: &WeierstrassParams, ctx: &Context) -> Result<ExperimentReport> {
    if !p.grid.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("grid {} is not a power of two", p.grid)));
    }
    if p.top < 1 || p.top > 60 || (2u128 << p.top) >= (p.grid / 2) as u128 {
        return Err(Error::FrequencyOutOfRange {
            frequency: format!("2^{}", p.top + 1),
            grid: p.grid,
        });
    }
    let fam = LpFamily::new(ctx.primary_profile());
    let mut rep = ExperimentReport::new("weierstrass", p);
    let mut table = Table::new("weierstrass", &["d", "J", "M", "norm", "p", "value"]);
    for &d in &p.d {
        let f = weierstrass(d, p.top)?;
        let block_err = (0..=p.top + 2)
            .map(|k| {
                let block = lp_project(&f, k, &fam, Localization::Block);
                let expect = if (1..=p.top).contains(&k) {
                    let c = Complex64::new((-(k as f64) * d).exp2(), 0.0);
                    SparseField::mode(Frequency::d1(1i128 << k), c)
                } else {
                    SparseField::zero(1)
                };
                block.sub(&expect).map(|e| e.sup_coeff())
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        rep.check_le(format!("blocks.d={d}"), block_err, p.block_tolerance);

        let besov = besov_norm(&f, d, f64::INFINITY, &fam, p.grid, BlockAggregation::Besov { q: f64::INFINITY })?;
        rep.check_near(format!("besov.d={d}"), besov, 1.0, p.norm_tolerance);
        rep.metric(format!("besov.d={d}"), besov);
        table.push(row![d, p.top, p.grid, "B_inf_inf", "inf", besov]);
        for &q in &p.p {
            let tl = besov_norm(&f, d, q, &fam, p.grid, BlockAggregation::TriebelSup)?;
            rep.check_near(format!("triebel.d={d}.p={q}"), tl, 1.0, p.norm_tolerance);
            rep.metric(format!("triebel.d={d}.p={q}"), tl);
            table.push(row![d, p.top, p.grid, "F_p_inf", q, tl]);
        }
    }
    rep.tables.push(table);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_passes() {
        let p = WeierstrassParams {
            top: 8,
            grid: 1 << 11,
            ..Default::default()
        };
        let rep = run(&p, &Context::default()).unwrap();
        assert!(rep.pass(), "{:#?}", rep.assertions);
    }

    #[test]
    fn grid_too_small() {
        let p = WeierstrassParams {
            top: 12,
            grid: 1 << 13,
            ..Default::default()
        };
        assert!(matches!(run(&p, &Context::default()), Err(Error::FrequencyOutOfRange { .. })));
    }
}
