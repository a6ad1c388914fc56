//! Sparse and grid representations of periodic fields, their conversions,
//! and the norms used throughout the toolkit.
//!
//! Fourier convention: `u(x) = sum_xi c(xi) e^{i<x,xi>}` on `(R/2piZ)^n` with
//! `c(xi) = (2pi)^{-n} int u(x) e^{-i<x,xi>} dx`. No stray `(2pi)^n` factors
//! appear anywhere else.

mod cone;
mod dense;
mod frequency;
mod io;
mod sparse;

pub use cone::{
    cone_report, cone_report_with_tolerance, least_squares_slope, ConeEntry, ConeReport,
    DEFAULT_DIRECTION_TOLERANCE,
};
pub use dense::{fits_grid, DenseField};
pub use frequency::{Frequency, FREQUENCY_BOUND, MAX_DYADIC_EXPONENT};
pub use io::SparseFieldJson;
pub use sparse::{japanese_bracket_pow, SparseField, DEFAULT_PAIR_BUDGET};

use crate::cutoffs::{lp_project, Localization, LpFamily};
use crate::error::Result;

pub fn sparse_to_dense(u: &SparseField, grid: usize) -> Result<DenseField> {
    DenseField::from_sparse(u, grid)
}

pub fn dense_to_sparse(g: &DenseField, tau: f64) -> SparseField {
    g.to_sparse(tau)
}

pub fn lp_norm(g: &DenseField, p: f64) -> f64 {
    g.lp_norm(p)
}

/// How the dyadic blocks are aggregated in [`besov_norm`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BlockAggregation {
    /// `(sum_j (2^{js} |Phi_j(D)u|_p)^q)^{1/q}`, `q = inf` meaning the sup.
    Besov { q: f64 },
    /// `| sup_j 2^{js} |Phi_j(D)u| |_p`.
    TriebelSup,
}

/// Besov `B^s_{p,q}` or Lizorkin–Triebel `F^s_{p,inf}` norm from the
/// Littlewood–Paley blocks of `u`, each evaluated on an `M`-point grid.
pub fn besov_norm(
    u: &SparseField,
    s: f64,
    p: f64,
    fam: &LpFamily,
    grid: usize,
    aggregation: BlockAggregation,
) -> Result<f64> {
    let top = fam.top_block(u.max_radius());
    let mut blocks = Vec::with_capacity(top as usize + 1);
    for j in 0..=top {
        let block = lp_project(u, j, fam, Localization::Block);
        let weight = 2f64.powf(j as f64 * s);
        blocks.push((weight, sparse_to_dense(&block, grid)?));
    }
    Ok(match aggregation {
        BlockAggregation::Besov { q } => {
            let norms = blocks.iter().map(|(w, g)| w * g.lp_norm(p));
            if q.is_infinite() {
                norms.fold(0.0, f64::max)
            } else {
                norms.map(|x| x.powf(q)).sum::<f64>().powf(1.0 / q)
            }
        }
        BlockAggregation::TriebelSup => {
            let n = blocks.first().map_or(0, |(_, g)| g.len());
            let envelope: Vec<_> = (0..n)
                .map(|i| {
                    let v = blocks
                        .iter()
                        .map(|(w, g)| w * g.samples()[i].norm())
                        .fold(0.0, f64::max);
                    num_complex::Complex64::new(v, 0.0)
                })
                .collect();
            DenseField::new(u.dim(), grid, envelope)?.lp_norm(p)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn single_mode_block_norm() {
        let fam = LpFamily::default();
        for j in 1..10 {
            let u = SparseField::mode(Frequency::d1(1 << j), Complex64::new(1.0, 0.0));
            let d = 0.7;
            let b = besov_norm(&u, d, f64::INFINITY, &fam, 2048, BlockAggregation::Besov { q: f64::INFINITY })
                .unwrap();
            let expected = 2f64.powf(j as f64 * d);
            assert!((b - expected).abs() < 1e-12 * expected);
        }
    }

    #[test]
    fn q_two_matches_hand_sum() {
        let fam = LpFamily::default();
        let u = SparseField::from_pairs(
            1,
            [(Frequency::d1(4), Complex64::new(1.0, 0.0)), (Frequency::d1(16), Complex64::new(3.0, 0.0))],
        )
        .unwrap();
        let b = besov_norm(&u, 1.0, 2.0, &fam, 64, BlockAggregation::Besov { q: 2.0 }).unwrap();
        let expected = ((4.0f64).powi(2) + (16.0f64 * 3.0).powi(2)).sqrt();
        assert!((b - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn out_of_range_is_reported() {
        let fam = LpFamily::default();
        let u = SparseField::mode(Frequency::d1(40), Complex64::new(1.0, 0.0));
        assert!(besov_norm(&u, 0.0, 2.0, &fam, 64, BlockAggregation::TriebelSup).is_err());
    }
}
