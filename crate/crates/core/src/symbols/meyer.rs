//! Meyer's paraproduct symbol `a_u(x, eta) = sum_k m_k(x) Phi_k(eta)` with
//! `m_k = int_0^1 F'(u^{k-1} + t u_k) dt`, so that `a_u(x, D) u = F(u) - F(0)`
//! whenever `u^K = u`.

use num_complex::Complex64;

use super::multiplier::Multiplier;
use super::{SeparableSymbol, Term};
use crate::cutoffs::LpFamily;
use crate::error::{Error, Result};
use crate::spectral::DenseField;

pub const DEFAULT_QUADRATURE_NODES: usize = 32;

/// Relative size of the imaginary part tolerated in a "real" grid field.
const REAL_TOLERANCE: f64 = 1e-12;

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(q: usize) -> Vec<(f64, f64)> {
    let n = q as f64;
    (0..q)
        .map(|i| {
            // Chebyshev initial guess, then Newton on P_q
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=q {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                let p = if q == 0 { 1.0 } else { p1 };
                dp = n * (x * p - p0) / (x * x - 1.0);
                let step = p / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            (0.5 * (1.0 - x), 0.5 * w)
        })
        .collect()
}

/// Dense multiplier-sum form: x-parts kept as grid functions.
#[derive(Clone, Debug)]
pub struct MeyerSymbol {
    fam: LpFamily,
    blocks: Vec<(i64, DenseField)>,
}

impl MeyerSymbol {
    pub fn family(&self) -> &LpFamily {
        &self.fam
    }

    /// `(k, m_k)` for `k = 0..=K`.
    pub fn blocks(&self) -> &[(i64, DenseField)] {
        &self.blocks
    }

    /// `a_u(x, D) v = sum_k m_k (Phi_k(D) v)`, evaluated on the grid.
    pub fn apply(&self, v: &DenseField) -> Result<DenseField> {
        let mut acc = DenseField::constant(v.dim(), v.grid(), Complex64::default())?;
        for (k, m) in &self.blocks {
            let vk = v.apply_multiplier(|xi| self.fam.block(*k, xi));
            let prod = m.zip_with(&vk, |a, b| a * b)?;
            acc = acc.zip_with(&prod, |a, b| a + b)?;
        }
        Ok(acc)
    }

    /// Term form with each `m_k` truncated to coefficients above `tau`.
    pub fn to_term_form(&self, tau: f64) -> SeparableSymbol {
        let dim = self.blocks.first().map_or(1, |(_, m)| m.dim());
        let terms = self
            .blocks
            .iter()
            .map(|(k, m)| Term::new(m.to_sparse(tau), Multiplier::block(*k, *self.fam.profile())))
            .collect();
        SeparableSymbol::new(dim, 0.0, terms).expect("dimension consistent")
    }
}

/// Builds the symbol for real `u` and derivative `fprime`, with `k = 0..=top`
/// and `q` Gauss–Legendre nodes per grid point.
pub fn meyer_symbol(
    u: &DenseField,
    fprime: impl Fn(f64) -> f64,
    fam: &LpFamily,
    top: i64,
    q: usize,
) -> Result<MeyerSymbol> {
    let scale = u.max_abs().max(1.0);
    let imag = u.max_imag();
    if imag > REAL_TOLERANCE * scale {
        return Err(Error::NonRealInput(imag));
    }
    if q < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 quadrature nodes, got {q}")));
    }
    let nodes = gauss_legendre(q);
    let mut blocks = Vec::with_capacity(top.max(0) as usize + 1);
    for k in 0..=top {
        let low = u.apply_multiplier(|xi| fam.ball(k - 1, xi));
        let uk = u.apply_multiplier(|xi| fam.block(k, xi));
        let m = low.zip_with(&uk, |a, b| {
            let s: f64 = nodes.iter().map(|&(t, w)| w * fprime(a.re + t * b.re)).sum();
            Complex64::new(s, 0.0)
        })?;
        blocks.push((k, m));
    }
    Ok(MeyerSymbol { fam: *fam, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutoffs::synthesis_l1;
    use crate::spectral::{Frequency, SparseField};

    #[test]
    fn quadrature_is_exact_on_polynomials() {
        for q in [2usize, 5, 32] {
            let nodes = gauss_legendre(q);
            assert_eq!(nodes.len(), q);
            let wsum: f64 = nodes.iter().map(|p| p.1).sum();
            assert!((wsum - 1.0).abs() < 1e-14);
            for deg in 0..(2 * q) as i32 {
                let s: f64 = nodes.iter().map(|&(t, w)| w * t.powi(deg)).sum();
                assert!((s - 1.0 / (deg + 1) as f64).abs() < 1e-13, "q={q} deg={deg}");
            }
            assert!(nodes.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    fn test_field() -> DenseField {
        let u = SparseField::from_pairs(
            1,
            [(1, 0.4), (3, -0.3), (7, 0.2), (12, 0.15)].into_iter().flat_map(|(k, c)| {
                [
                    (Frequency::d1(k), Complex64::new(c, 0.1 * c)),
                    (Frequency::d1(-k), Complex64::new(c, -0.1 * c)),
                ]
            }),
        )
        .unwrap();
        DenseField::from_sparse(&u, 64).unwrap()
    }

    #[test]
    fn identity_and_zero_functions() {
        let u = test_field();
        let fam = LpFamily::default();
        let id = meyer_symbol(&u, |_| 1.0, &fam, 4, 4).unwrap();
        for (_, m) in id.blocks() {
            assert!(m.samples().iter().all(|c| (*c - 1.0).norm() < 1e-14));
        }
        let back = id.apply(&u).unwrap();
        assert!(back.zip_with(&u, |a, b| a - b).unwrap().max_abs() < 1e-14);
        let zero = meyer_symbol(&u, |_| 0.0, &fam, 4, 4).unwrap();
        assert!(zero.blocks().iter().all(|(_, m)| m.max_abs() == 0.0));
    }

    #[test]
    fn squaring_is_reproduced() {
        let u = test_field();
        let fam = LpFamily::default();
        let a = meyer_symbol(&u, |t| 2.0 * t, &fam, fam.top_block(12.0), 2).unwrap();
        let out = a.apply(&u).unwrap();
        let sq = u.map(|c| Complex64::new(c.re * c.re, 0.0));
        assert!(out.zip_with(&sq, |a, b| a - b).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn multipliers_respect_sup_bound() {
        let u = test_field();
        let fam = LpFamily::default();
        let c_psi = (0..=4).map(|m| synthesis_l1(fam.profile(), m, 256).unwrap()).fold(0.0, f64::max);
        let bound = u.max_abs() * (1.0 + c_psi);
        let a = meyer_symbol(&u, |t| t.cos(), &fam, 4, 16).unwrap();
        let sup_fp = (0..=1000)
            .map(|i| (-bound + 2.0 * bound * i as f64 / 1000.0).cos().abs())
            .fold(0.0, f64::max);
        for (_, m) in a.blocks() {
            assert!(m.max_abs() <= sup_fp + 1e-12);
        }
    }

    #[test]
    fn complex_input_is_rejected() {
        let g = DenseField::constant(1, 8, Complex64::new(0.0, 1.0)).unwrap();
        assert!(matches!(
            meyer_symbol(&g, |t| t, &LpFamily::default(), 1, 4),
            Err(Error::NonRealInput(_))
        ));
    }
}
