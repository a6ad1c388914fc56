//! The Ching operator `a_theta` sends the far-out wave packets `v_N` back to
//! a fixed bump: `a_theta(x, D) v_N = r_N v` with `1 <= r_N` while
//! `|v_N|_{H^d} -> 0`, so `a_theta` has no bounded closure.

use serde::{Deserialize, Serialize};

use super::{direction, Context, ExperimentReport, Table};
use crate::error::{Error, Result};
use crate::families::{bump_field, harmonic_ratio, unclosable_bandwidth, v_sequence};
use crate::operator::{apply, vanishing_limit};
use crate::row;
use crate::symbols::{ching_symbol, CoronaBump};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UnclosableParams {
    pub d: f64,
    pub n_list: Vec<i64>,
    pub theta: Vec<i128>,
    pub tolerance: f64,
}

impl Default for UnclosableParams {
    fn default() -> Self {
        Self {
            d: 0.0,
            n_list: vec![5, 6, 7],
            theta: vec![1],
            tolerance: 1e-12,
        }
    }
}

/// `log(N^2 / (N - 1)) / log N`.
pub fn ratio_upper_bound(n: i64) -> f64 {
    let n = n as f64;
    (n * n / (n - 1.0)).ln() / n.ln()
}

pub(super) fn run(p: &UnclosableParams, ctx: &Context) -> Result<ExperimentReport> {
    let theta = direction(&p.theta)?;
    if p.n_list.is_empty() {
        return Err(Error::InvalidParameter("n_list is empty".into()));
    }
    if let Some(&n) = p.n_list.iter().find(|&&n| n < 5) {
        return Err(Error::InvalidParameter(format!("N = {n} is below 5")));
    }
    let mut rep = ExperimentReport::new("unclosable", p);
    let mut table = Table::new(
        "unclosable",
        &["N", "bandwidth", "r_N", "upper", "norm_vN", "identity_err", "limit_err", "m_star"],
    );
    let mut norms = Vec::new();
    for &n in &p.n_list {
        let top = n * n;
        let bandwidth = unclosable_bandwidth(n);
        let v = bump_field(theta.dim(), bandwidth)?;
        let vn = v_sequence(&v, &theta, n, p.d)?;
        let a = ching_symbol(p.d, theta, 1, top, CoronaBump::default())?;
        let r = harmonic_ratio(n);
        let expected = v.scale_real(r);

        let out = apply(&a, &vn)?;
        let identity_err = out.max_rel_diff(&expected);
        rep.check_le(format!("identity.N={n}"), identity_err, p.tolerance);

        let upper = ratio_upper_bound(n);
        rep.check_with(format!("bracket.N={n}"), r, upper, (1.0..=upper).contains(&r));

        let diag = vanishing_limit(&a, &vn, &ctx.profiles, (top - 2, top + 2), p.d)?;
        let limit_err = diag.limit.max_rel_diff(&expected);
        rep.check_with(
            format!("limit.N={n}"),
            limit_err,
            p.tolerance,
            diag.pass && limit_err <= p.tolerance,
        );

        let norm = vn.sobolev_norm(p.d);
        norms.push(norm);
        rep.metric(format!("r_N.N={n}"), r);
        rep.metric(format!("norm_vN.N={n}"), norm);
        rep.metric(format!("ratio.N={n}"), r / norm);
        table.push(row![
            n,
            bandwidth,
            r,
            upper,
            norm,
            identity_err,
            limit_err,
            diag.m_star.map_or("none".to_string(), |m| m.to_string())
        ]);
    }
    // strict decrease: the largest successive quotient must stay below 1
    let worst = norms.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
    rep.check_lt("norm_decreasing", worst, 1.0);
    rep.tables.push(table);
    Ok(rep)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes() {
        let rep = run(&UnclosableParams::default(), &Context::default()).unwrap();
        assert!(rep.pass(), "{:?}", rep.assertions);
    }

    #[test]
    fn rejects_small_and_huge_n() {
        let ctx = Context::default();
        let small = UnclosableParams {
            n_list: vec![3],
            ..Default::default()
        };
        assert!(run(&small, &ctx).is_err());
        let huge = UnclosableParams {
            n_list: vec![10],
            ..Default::default()
        };
        assert!(matches!(run(&huge, &ctx), Err(Error::RangeTooLarge(_))));
    }

    #[test]
    fn upper_bound_values() {
        assert!((ratio_upper_bound(5) - 1.1386468838532138987).abs() < 1e-15);
        assert!((ratio_upper_bound(8) - 1.0642150259807986309).abs() < 1e-15);
    }
}
