//! Norm-ratio sweeps `|Au|_{H^s} / |u|_{H^s}` for `a_theta` over `N` and for
//! `a_{2 theta}` over `J`: the first grows without bound on `v_N` at `s = 0`,
//! the second stays bounded at `s = -1`; both stay bounded at `s = +1`.

use serde::{Deserialize, Serialize};

use super::{direction, ExperimentReport, Table};
use crate::error::{Error, Result};
use crate::families::{bump_field, unclosable_bandwidth, v_sequence, w_field};
use crate::operator::{norm_ratio, norm_ratio_probe, ProbeConfig};
use crate::row;
use crate::spectral::SparseField;
use crate::symbols::{ching_symbol, CoronaBump, SeparableSymbol};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContinuityParams {
    pub n_list: Vec<i64>,
    pub j_list: Vec<i64>,
    pub theta: Vec<i128>,
    pub j0: i64,
    pub trials: usize,
    pub modes: usize,
    /// Bound on `max/min` (or `last/first`) of the per-scale maximal ratios.
    pub spread: f64,
    pub seed: u64,
}

impl Default for ContinuityParams {
    fn default() -> Self {
        Self {
            n_list: vec![5, 6, 7, 8],
            j_list: vec![10, 15, 20, 25, 30, 35, 40],
            theta: vec![1],
            j0: 5,
            trials: 32,
            modes: 8,
            spread: 2.0,
            seed: 5,
        }
    }
}

fn max_ratio(a: &SeparableSymbol, s: f64, cap: i64, p: &ContinuityParams, named: &[(String, SparseField)]) -> Result<f64> {
    let cfg = ProbeConfig {
        s,
        p: 2.0,
        trials: p.trials,
        cap,
        modes: p.modes,
        seed: p.seed,
    };
    Ok(norm_ratio_probe(a, &cfg, named)?.max_ratio)
}

fn spread(v: &[f64], last_over_first: bool) -> f64 {
    if v.is_empty() {
        return 1.0;
    }
    if last_over_first {
        return v[v.len() - 1] / v[0];
    }
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    hi / lo
}

pub(super) fn run(p: &ContinuityParams) -> Result<ExperimentReport> {
    let theta = direction(&p.theta)?;
    if p.n_list.len() < 2 || p.j_list.is_empty() {
        return Err(Error::InvalidParameter("need at least two N values and one J value".into()));
    }
    let mut rep = ExperimentReport::new("continuity", p);

    let mut single = Table::new(
        "a_theta",
        &["N", "ratio_vN_s0", "ratio_vN_s0_zero_order", "max_random_s0", "max_s1"],
    );
    let (mut growth, mut bounded) = (Vec::new(), Vec::new());
    for &n in &p.n_list {
        let v = bump_field(theta.dim(), unclosable_bandwidth(n))?;
        let vn = v_sequence(&v, &theta, n, 0.0)?;
        let a = ching_symbol(0.0, theta, 1, n * n, CoronaBump::default())?;
        let flat = ching_symbol(0.0, theta, 1, n * n, CoronaBump::with_zero(1))?;
        let r0 = norm_ratio(&a, &vn, 0.0, 2.0)?;
        let r0_flat = norm_ratio(&flat, &vn, 0.0, 2.0)?;
        let random0 = max_ratio(&a, 0.0, n * n, p, &[])?;
        let named = [(format!("v_{n}"), vn)];
        let r1 = max_ratio(&a, 1.0, n * n, p, &named)?;
        growth.push(r0);
        bounded.push(r1);
        rep.metric(format!("a_theta.ratio_vN.N={n}"), r0);
        single.push(row![n, r0, r0_flat, random0, r1]);
    }
    let not_increasing = growth.windows(2).filter(|w| w[1] <= w[0]).count();
    rep.check_count("a_theta.growth_s0", not_increasing);
    rep.check_le("a_theta.bounded_s1", spread(&bounded, true), p.spread);

    let mut doubled = Table::new("a_2theta", &["J", "ratio_w_sm1", "max_sm1", "max_s1"]);
    let (mut minus, mut plus) = (Vec::new(), Vec::new());
    let v = bump_field(theta.dim(), 1)?;
    for &top in &p.j_list {
        let a = ching_symbol(0.0, theta.scale(2)?, 1, top, CoronaBump::default())?;
        let w = w_field(&v, &theta, 0.0, p.j0, top)?;
        let rw = norm_ratio(&a, &w, -1.0, 2.0)?;
        let named = [(format!("w_{top}"), w)];
        let rm = max_ratio(&a, -1.0, top, p, &named)?;
        let rp = max_ratio(&a, 1.0, top, p, &named)?;
        minus.push(rm);
        plus.push(rp);
        rep.metric(format!("a_2theta.max_sm1.J={top}"), rm);
        doubled.push(row![top, rw, rm, rp]);
    }
    rep.check_le("a_2theta.bounded_sm1", spread(&minus, false), p.spread);
    rep.check_le("a_2theta.bounded_s1", spread(&plus, true), p.spread);
    rep.metric("a_2theta.sup_sm1", minus.iter().copied().fold(0.0, f64::max));
    rep.tables.extend([single, doubled]);
    Ok(rep)
}
