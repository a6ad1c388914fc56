//! The support rule `spec(a(x, D) u) ⊆ {xi + eta}` on random pairs, plus an
//! engineered cancellation that makes the inclusion strict.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Context, ExperimentReport, Table};
use crate::error::{Error, Result};
use crate::operator::{apply, support_rule_xi};
use crate::random::{random_field, random_symbol, seeded};
use crate::row;
use crate::spectral::{Frequency, SparseField};
use crate::symbols::{Multiplier, SeparableSymbol, Term};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SupportParams {
    pub trials: usize,
    pub n_terms: usize,
    pub x_radius: i128,
    pub x_modes: usize,
    pub u_radius: i128,
    pub u_modes: usize,
    pub top: i64,
    pub seed: u64,
}

impl Default for SupportParams {
    fn default() -> Self {
        Self {
            trials: 500,
            n_terms: 4,
            x_radius: 12,
            x_modes: 4,
            u_radius: 40,
            u_modes: 12,
            top: 6,
            seed: 2,
        }
    }
}

/// `u = e^{i eta1 x} + e^{i eta2 x}` against `c(x) = 1 - e^{i (eta1 - eta2) x}`:
/// both terms hit `eta1` and cancel exactly there.
fn cancellation_witness() -> Result<(SeparableSymbol, SparseField, Frequency)> {
    let (eta1, eta2) = (Frequency::d1(5), Frequency::d1(9));
    let one = Complex64::new(1.0, 0.0);
    let u = SparseField::from_pairs(1, [(eta1, one), (eta2, one)])?;
    let a = SeparableSymbol::new(
        1,
        0.0,
        vec![
            Term::new(SparseField::mode(Frequency::zero(1), one), Multiplier::unit()),
            Term::new(SparseField::mode(eta1.checked_sub(&eta2)?, -one), Multiplier::unit()),
        ],
    )?;
    Ok((a, u, eta1))
}

pub(super) fn run(p: &SupportParams, ctx: &Context) -> Result<ExperimentReport> {
    if p.trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let profile = ctx.primary_profile();
    let mut rng = seeded(p.seed);
    let mut rep = ExperimentReport::new("support", p);
    let mut table = Table::new("support", &["trial", "dim", "spec_size", "xi_size", "contained", "strict"]);
    let (mut violations, mut strict) = (0, 0);
    for t in 0..p.trials {
        let dim = 1 + t % 2;
        let a = random_symbol(&mut rng, dim, p.n_terms, p.x_radius, p.x_modes, p.top, &profile);
        let u = random_field(&mut rng, dim, p.u_radius, p.u_modes, false);
        let xi = support_rule_xi(&a, &u)?;
        let spec = apply(&a, &u)?.spectrum();
        let contained = spec.is_subset(&xi);
        violations += usize::from(!contained);
        strict += usize::from(contained && spec.len() < xi.len());
        table.push(row![t, dim, spec.len(), xi.len(), contained, spec.len() < xi.len()]);
    }
    rep.check_count("containment", violations);
    rep.metric("strict_fraction", strict as f64 / p.trials as f64);

    let id = SeparableSymbol::identity(1);
    let u = random_field(&mut rng, 1, p.u_radius, p.u_modes, false);
    let equal = apply(&id, &u)?.spectrum() == support_rule_xi(&id, &u)?;
    rep.check_count("identity_equality", usize::from(!equal));

    let (a, u, eta1) = cancellation_witness()?;
    let spec = apply(&a, &u)?.spectrum();
    let xi = support_rule_xi(&a, &u)?;
    let witnessed = spec.is_subset(&xi) && xi.contains(&eta1) && !spec.contains(&eta1);
    rep.check_count("strict_witness", usize::from(!witnessed));
    rep.tables.push(table);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_run_passes() {
        let p = SupportParams {
            trials: 40,
            ..Default::default()
        };
        let rep = run(&p, &Context::default()).unwrap();
        assert!(rep.pass(), "{:#?}", rep.assertions);
    }

    #[test]
    fn witness_cancels() {
        let (a, u, eta1) = cancellation_witness().unwrap();
        let out = apply(&a, &u).unwrap();
        assert_eq!(out.get(&eta1), Complex64::default());
        assert_eq!(out.len(), 2);
    }
}
