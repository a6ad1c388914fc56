//! Paradifferential reconstruction `T1 + T2 + T3 = a^m(x, D) u^m` and the
//! dyadic corona bounds for each summand, including the refined lower bound
//! for the diagonal group under the twisted diagonal condition.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Context, ExperimentReport, Table};
use crate::cutoffs::LpFamily;
use crate::error::{Error, Result};
use crate::operator::{apply_modulated, corona_check, paradiff_split};
use crate::random::{random_field, random_symbol, seeded};
use crate::row;
use crate::spectral::Frequency;
use crate::symbols::{ching_symbol, CoronaBump};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParadiffParams {
    pub instances: usize,
    pub m: i64,
    /// Every `ching_every`-th instance uses a doubled Ching symbol.
    pub ching_every: usize,
    pub tdc_constant: f64,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for ParadiffParams {
    fn default() -> Self {
        Self {
            instances: 100,
            m: 9,
            ching_every: 4,
            tdc_constant: 2.0,
            tolerance: 1e-12,
            seed: 3,
        }
    }
}

pub(super) fn run(p: &ParadiffParams, ctx: &Context) -> Result<ExperimentReport> {
    if p.m < 0 || p.m > 40 {
        return Err(Error::InvalidParameter(format!("m = {} outside [0, 40]", p.m)));
    }
    if p.instances == 0 || p.ching_every == 0 {
        return Err(Error::InvalidParameter("instances and ching_every must be positive".into()));
    }
    let fam = LpFamily::new(ctx.primary_profile());
    let mut rng = seeded(p.seed);
    let mut rep = ExperimentReport::new("paradiff", p);
    let mut table = Table::new(
        "paradiff",
        &["instance", "kind", "dim", "reconstruction_err", "summands", "corona_failures", "refined_checks"],
    );
    let reach = (fam.profile().outer() * 2f64.powi(p.m as i32)) as i128;
    let (mut worst, mut corona_failures, mut refined_checks, mut ching_count) = (0.0f64, 0, 0, 0);
    for i in 0..p.instances {
        let dim = 1 + i % 2;
        let doubled = i % p.ching_every == 0;
        let (a, tdc) = if doubled {
            ching_count += 1;
            let d = [0.0, 0.5, 1.0][rng.random_range(0..3)];
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            let theta = match dim {
                1 => Frequency::d1(2 * sign),
                _ => Frequency::unit(2, rng.random_range(0..2)).scale(2 * sign)?,
            };
            let sym = ching_symbol(d, theta, 1, p.m, CoronaBump::default())?;
            (sym, Some(p.tdc_constant))
        } else {
            let sym = random_symbol(&mut rng, dim, 4, reach / 4, 4, p.m, fam.profile());
            (sym, None)
        };
        let u = random_field(&mut rng, dim, reach, 40, false);
        let split = paradiff_split(&a, &u, &fam, p.m)?;
        let direct = apply_modulated(&a, &u, fam.profile(), p.m)?;
        let err = split.total().max_rel_diff(&direct);
        worst = worst.max(err);
        let (mut fails, mut refined) = (0, 0);
        for k in 0..=p.m {
            let c = corona_check(&a, &u, &fam, k, tdc)?;
            fails += usize::from(!c.pass);
            refined += usize::from(c.refined_lower.is_some());
        }
        corona_failures += fails;
        refined_checks += refined;
        let kind = if doubled { "doubled-ching" } else { "random" };
        table.push(row![i, kind, dim, err, split.nonzero_summands(), fails, refined]);
    }
    rep.check_le("reconstruction", worst, p.tolerance);
    rep.check_count("corona", corona_failures);
    // the refined bound must actually have been exercised
    rep.check_with(
        "refined_exercised",
        refined_checks as f64,
        1.0,
        ching_count == 0 || refined_checks > 0,
    );
    rep.metric("reconstruction_max_err", worst);
    rep.metric("refined_checks", refined_checks as f64);
    rep.tables.push(table);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_run_passes() {
        let p = ParadiffParams {
            instances: 8,
            m: 7,
            ..Default::default()
        };
        let rep = run(&p, &Context::default()).unwrap();
        assert!(rep.pass(), "{:#?}", rep.assertions);
        assert!(rep.metrics["refined_checks"] > 0.0);
    }
}
