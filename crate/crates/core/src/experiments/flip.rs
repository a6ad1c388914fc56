//! The doubled Ching operator `a_{2 theta}` flips the lacunary cone:
//! `a_{2 theta}(x, D) w_J(theta, d) = w_J(-theta, 0)`, and in two dimensions
//! `a_{2 theta'}` rotates the cone from `theta` to `theta - 2 theta'`.

use serde::{Deserialize, Serialize};

use super::{direction, ExperimentReport, Table};
use crate::error::{Error, Result};
use crate::families::{bump_field, w_field};
use crate::operator::apply;
use crate::row;
use crate::spectral::{cone_report, Frequency, SparseField};
use crate::symbols::{ching_symbol, twisted_diagonal_check, CoronaBump};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlipParams {
    pub d: Vec<f64>,
    pub j0: i64,
    #[serde(rename = "J")]
    pub top: i64,
    pub theta: Vec<i128>,
    pub bandwidth: i128,
    /// Also run the rotation with `theta = e1`, `theta' = e2`.
    pub rotation: bool,
    pub tolerance: f64,
    pub slope_tolerance: f64,
}

impl Default for FlipParams {
    fn default() -> Self {
        Self {
            d: vec![0.0, 0.5, 1.0],
            j0: 5,
            top: 20,
            theta: vec![1],
            bandwidth: 1,
            rotation: true,
            tolerance: 1e-12,
            slope_tolerance: 0.05,
        }
    }
}

fn slope_toward(u: &SparseField, dir: &Frequency) -> Result<f64> {
    let rep = cone_report(u)?;
    Ok(rep
        .nearest(&dir.to_point())
        .and_then(|e| e.slope)
        .unwrap_or(f64::NAN))
}

struct Case<'a> {
    label: &'a str,
    d: f64,
    input_dir: Frequency,
    symbol_dir: Frequency,
    output_dir: Frequency,
}

fn run_case(p: &FlipParams, c: &Case, rep: &mut ExperimentReport, table: &mut Table) -> Result<()> {
    let v = bump_field(c.input_dir.dim(), p.bandwidth)?;
    let w = w_field(&v, &c.input_dir, c.d, p.j0, p.top)?;
    let a = ching_symbol(c.d, c.symbol_dir.scale(2)?, p.j0, p.top, CoronaBump::default())?;
    let out = apply(&a, &w)?;
    let expected = w_field(&v, &c.output_dir, 0.0, p.j0, p.top)?;
    let err = out.max_rel_diff(&expected);
    let tag = format!("{}.d={}", c.label, c.d);
    rep.check_le(format!("identity.{tag}"), err, p.tolerance);

    let in_slope = slope_toward(&w, &c.input_dir)?;
    let out_slope = slope_toward(&out, &c.output_dir)?;
    rep.check_near(format!("input_slope.{tag}"), in_slope, -c.d, p.slope_tolerance);
    rep.check_near(format!("output_slope.{tag}"), out_slope, 0.0, p.slope_tolerance);

    let tdc = twisted_diagonal_check(&a, 2.0, 10_000);
    rep.check_count(format!("tdc.{tag}"), usize::from(!tdc.holds));
    table.push(row![c.label, c.d, p.j0, p.top, err, in_slope, out_slope, tdc.holds]);
    Ok(())
}

pub(super) fn run(p: &FlipParams) -> Result<ExperimentReport> {
    let theta = direction(&p.theta)?;
    if p.d.is_empty() {
        return Err(Error::InvalidParameter("d list is empty".into()));
    }
    let mut rep = ExperimentReport::new("flip", p);
    let mut table = Table::new(
        "flip",
        &["case", "d", "j0", "J", "identity_err", "input_slope", "output_slope", "tdc"],
    );
    let neg = theta.scale(-1)?;
    for &d in &p.d {
        let flip = Case {
            label: "flip",
            d,
            input_dir: theta,
            symbol_dir: theta,
            output_dir: neg,
        };
        run_case(p, &flip, &mut rep, &mut table)?;
        if p.rotation {
            let (e1, e2) = (Frequency::d2(1, 0), Frequency::d2(0, 1));
            let rot = Case {
                label: "rotation",
                d,
                input_dir: e1,
                symbol_dir: e2,
                output_dir: e1.checked_sub(&e2.scale(2)?)?,
            };
            run_case(p, &rot, &mut rep, &mut table)?;
        }
    }
    rep.tables.push(table);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes() {
        let rep = run(&FlipParams::default()).unwrap();
        assert!(rep.pass(), "{:#?}", rep.assertions);
    }

    #[test]
    fn bandwidth_guard() {
        let p = FlipParams {
            bandwidth: 2,
            j0: 5,
            ..Default::default()
        };
        assert!(matches!(run(&p), Err(Error::BandwidthViolation { .. })));
    }
}
