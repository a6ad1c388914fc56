//! Operator application `a(x, D) u`, its frequency-modulated approximants and
//! the diagnostics built on them.
//!
//! With the series convention, a symbol acts by
//! `(Au)^(zeta) = sum_{xi + eta = zeta} a^(xi, eta) u(eta)`; for separable
//! symbols this is an exact finite sum over term coefficients.

mod adjoint;
mod kernel;
mod limit;
mod paradiff;
mod probe;

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::cutoffs::{modulate, CutoffProfile};
use crate::error::{Error, Result};
use crate::spectral::{Frequency, SparseField, DEFAULT_PAIR_BUDGET};
use crate::symbols::SeparableSymbol;

pub use adjoint::{adjoint_apply_ching, adjoint_sobolev_norm_sq};
pub use kernel::{
    frequency_window, kernel_pairing, spatial_kernel_1d, spectral_kernel, SpectralKernel,
    MAX_KERNEL_ENTRIES,
};
pub use limit::{pi_product, vanishing_limit, ModulationDiagnostic};
pub use paradiff::{corona_check, paradiff_split, CoronaReport, ParadiffSplit};
pub use probe::{norm_ratio, norm_ratio_probe, ProbeConfig, ProbeTable, RatioRow};

/// Number of coefficient products `sum_t |c_t| |u|` needed by [`apply`].
pub fn apply_cost(a: &SeparableSymbol, u: &SparseField) -> u128 {
    a.terms().iter().map(|t| t.xpart.len() as u128).sum::<u128>() * u.len() as u128
}

/// Exact `a(x, D) u`.
pub fn apply(a: &SeparableSymbol, u: &SparseField) -> Result<SparseField> {
    apply_with_budget(a, u, DEFAULT_PAIR_BUDGET)
}

pub fn apply_with_budget(a: &SeparableSymbol, u: &SparseField, budget: u128) -> Result<SparseField> {
    if a.dim() != u.dim() && !a.is_zero() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: u.dim(),
        });
    }
    let needed = apply_cost(a, u);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut out = SparseField::with_threshold(u.dim(), u.threshold());
    let zero = Complex64::default();
    for term in a.terms() {
        let weighted: Vec<(Frequency, Complex64)> = u
            .iter()
            .filter_map(|(eta, &c)| {
                let m = term.mult.eval(eta);
                (m != zero).then(|| (*eta, m * c))
            })
            .collect();
        for (xi, &cx) in term.xpart.iter() {
            for (eta, w) in &weighted {
                out.accumulate(xi.checked_add(eta)?, cx * w)?;
            }
        }
    }
    out.prune();
    Ok(out)
}

/// `a^m(x, D) u^m`: both the symbol (in x) and the input truncated by
/// `psi(2^{-m} .)`.
pub fn apply_modulated(
    a: &SeparableSymbol,
    u: &SparseField,
    profile: &CutoffProfile,
    m: i64,
) -> Result<SparseField> {
    apply(&a.modulate(m, profile), &modulate(u, m, profile))
}

/// The other computation order: the fully modulated symbol
/// `a^m(x, eta) psi(2^{-m} eta)` applied to the unmodulated `u`.
pub fn apply_fully_modulated(
    a: &SeparableSymbol,
    u: &SparseField,
    profile: &CutoffProfile,
    m: i64,
) -> Result<SparseField> {
    apply(&a.modulate(m, profile).damp_eta(m, profile), u)
}

/// `Xi = {xi + eta : c_t(xi) != 0, eta in spec u, m_t(eta) != 0}`.
pub fn support_rule_xi(a: &SeparableSymbol, u: &SparseField) -> Result<BTreeSet<Frequency>> {
    let mut out = BTreeSet::new();
    for term in a.terms() {
        let live: Vec<&Frequency> = u
            .frequencies()
            .filter(|eta| term.mult.eval(eta) != Complex64::default())
            .collect();
        for xi in term.xpart.frequencies() {
            for eta in &live {
                out.insert(xi.checked_add(eta)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutoffs::default_profiles;
    use crate::random::{random_field, random_symbol, seeded};
    use crate::symbols::{ching_symbol, CoronaBump};

    #[test]
    fn identity_operator() {
        let u = random_field(&mut seeded(1), 2, 20, 30, false);
        assert_eq!(apply(&SeparableSymbol::identity(2), &u).unwrap(), u);
    }

    #[test]
    fn multiplication_symbol_is_pointwise_product() {
        let mut rng = seeded(2);
        let f = random_field(&mut rng, 1, 10, 6, false);
        let u = random_field(&mut rng, 1, 40, 12, false);
        let au = apply(&SeparableSymbol::multiplication(&f), &u).unwrap();
        assert!(au.max_rel_diff(&f.pointwise_mul(&u).unwrap()) < 1e-15);
    }

    #[test]
    fn budget_is_enforced() {
        let a = ching_symbol(0.0, Frequency::d1(1), 1, 10, CoronaBump::default()).unwrap();
        let u = random_field(&mut seeded(3), 1, 100, 50, false);
        assert!(matches!(
            apply_with_budget(&a, &u, 10),
            Err(Error::BudgetExceeded { budget: 10, .. })
        ));
    }

    #[test]
    fn modulation_orders_agree() {
        let mut rng = seeded(4);
        for p in default_profiles() {
            for _ in 0..20 {
                let a = random_symbol(&mut rng, 1, 4, 30, 3, 6, &p);
                let u = random_field(&mut rng, 1, 60, 15, false);
                for m in 0..7 {
                    let x = apply_modulated(&a, &u, &p, m).unwrap();
                    let y = apply_fully_modulated(&a, &u, &p, m).unwrap();
                    assert!(x.max_rel_diff(&y) <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn high_frequencies_vanish_at_m0() {
        let p = CutoffProfile::default();
        let u = SparseField::mode(Frequency::d1(50), Complex64::new(1.0, 0.0));
        let out = apply_modulated(&SeparableSymbol::identity(1), &u, &p, 0).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn support_rule_contains_output() {
        let mut rng = seeded(5);
        let p = CutoffProfile::default();
        for _ in 0..50 {
            let a = random_symbol(&mut rng, 2, 3, 6, 3, 4, &p);
            let u = random_field(&mut rng, 2, 20, 10, false);
            let xi = support_rule_xi(&a, &u).unwrap();
            assert!(apply(&a, &u).unwrap().spectrum().is_subset(&xi));
        }
        let id = SeparableSymbol::identity(1);
        let u = random_field(&mut rng, 1, 20, 10, false);
        assert_eq!(support_rule_xi(&id, &u).unwrap(), u.spectrum());
    }
}
