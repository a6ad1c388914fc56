//! The product `pi(u, v) = lim_m u^m v^m`: exact stabilization to `uv` on
//! trigonometric polynomials and partial associativity `f pi(u, v) = pi(fu, v)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Context, ExperimentReport, Table};
use crate::error::{Error, Result};
use crate::operator::pi_product;
use crate::random::{random_field, seeded};
use crate::row;
use crate::spectral::{Frequency, SparseField};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProductParams {
    pub trials: usize,
    pub radius: i128,
    pub modes: usize,
    pub m_hi: i64,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for ProductParams {
    fn default() -> Self {
        Self {
            trials: 50,
            radius: 20,
            modes: 8,
            m_hi: 8,
            tolerance: 1e-12,
            seed: 6,
        }
    }
}

/// `pi(u, v)` together with whether its diagnostic passed.
pub(super) fn pi(u: &SparseField, v: &SparseField, ctx: &Context, m_hi: i64) -> Result<(SparseField, bool)> {
    let diag = pi_product(u, v, &ctx.profiles, (0, m_hi))?;
    Ok((diag.limit, diag.pass))
}

/// `|f pi(u,v) - pi(fu, v)|` and `|f pi(u,v) - pi(u, fv)|`, relative.
pub(super) fn associativity_defect(
    f: &SparseField,
    u: &SparseField,
    v: &SparseField,
    ctx: &Context,
    m_hi: i64,
) -> Result<(f64, bool)> {
    let (uv, ok0) = pi(u, v, ctx, m_hi)?;
    let lhs = f.pointwise_mul(&uv)?;
    let (left, ok1) = pi(&f.pointwise_mul(u)?, v, ctx, m_hi)?;
    let (right, ok2) = pi(u, &f.pointwise_mul(v)?, ctx, m_hi)?;
    Ok((lhs.max_rel_diff(&left).max(lhs.max_rel_diff(&right)), ok0 && ok1 && ok2))
}

pub(super) fn run(p: &ProductParams, ctx: &Context) -> Result<ExperimentReport> {
    if p.trials == 0 || p.radius < 1 {
        return Err(Error::InvalidParameter("trials and radius must be positive".into()));
    }
    let mut rng = seeded(p.seed);
    let mut rep = ExperimentReport::new("product", p);
    let mut table = Table::new("product", &["trial", "dim", "m_star", "limit_err", "assoc_err"]);
    // f u and f v reach radius 2r, their products 4r
    let m_hi = p.m_hi.max(((4 * p.radius) as f64).log2().ceil() as i64 + 1);
    let (mut stab_fail, mut worst_limit, mut worst_assoc) = (0, 0.0f64, 0.0f64);
    for t in 0..p.trials {
        let dim = 1 + t % 2;
        let u = random_field(&mut rng, dim, p.radius, p.modes, false);
        let v = random_field(&mut rng, dim, p.radius, p.modes, false);
        let f = random_field(&mut rng, dim, p.radius, p.modes, false);
        let diag = pi_product(&u, &v, &ctx.profiles, (0, m_hi))?;
        let limit_err = diag.limit.max_rel_diff(&u.pointwise_mul(&v)?);
        stab_fail += usize::from(!diag.pass);
        worst_limit = worst_limit.max(limit_err);
        let (assoc, ok) = associativity_defect(&f, &u, &v, ctx, m_hi)?;
        stab_fail += usize::from(!ok);
        worst_assoc = worst_assoc.max(assoc);
        let m_star = diag.m_star.map_or("none".to_string(), |m| m.to_string());
        table.push(row![t, dim, m_star, limit_err, assoc]);
    }
    rep.check_count("stabilization", stab_fail);
    rep.check_le("limit_is_pointwise", worst_limit, p.tolerance);
    rep.check_le("partial_associativity", worst_assoc, p.tolerance);

    // high modes: u^m v^m vanishes for small m and only later reaches uv
    let one = Complex64::new(1.0, 0.0);
    let hi = SparseField::mode(Frequency::d1(4 * p.radius), one);
    let diag = pi_product(&hi, &hi, &ctx.profiles, (0, m_hi))?;
    let late = diag.pass && diag.norms[0] == 0.0 && diag.m_star.is_some_and(|m| m > 0);
    rep.check_count("late_stabilization", usize::from(!late));
    rep.tables.push(table);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_run_passes() {
        let p = ProductParams {
            trials: 6,
            ..Default::default()
        };
        let rep = run(&p, &Context::default()).unwrap();
        assert!(rep.pass(), "{:#?}", rep.assertions);
    }
}
