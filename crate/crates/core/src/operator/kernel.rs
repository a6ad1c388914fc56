//! Kernels of `a(x, D)`: the spectral kernel `K(zeta, eta) = a^(zeta - eta, eta)`
//! on finite windows, and for `n = 1` the smooth kernel `K_m(x, y)` of the
//! fully modulated operator on a grid.

use num_complex::Complex64;

use crate::cutoffs::CutoffProfile;
use crate::error::{Error, Result};
use crate::spectral::{fits_grid, DenseField, Frequency, SparseField};
use crate::symbols::SeparableSymbol;

/// Largest number of matrix entries [`spectral_kernel`] will build.
pub const MAX_KERNEL_ENTRIES: usize = 4_000_000;

/// All lattice points of the box `[-radius, radius]^n`, in frequency order.
pub fn frequency_window(dim: usize, radius: i128) -> Vec<Frequency> {
    match dim {
        1 => (-radius..=radius).map(Frequency::d1).collect(),
        _ => (-radius..=radius)
            .flat_map(|i| (-radius..=radius).map(move |k| Frequency::d2(i, k)))
            .collect(),
    }
}

#[derive(Clone, Debug)]
pub struct SpectralKernel {
    zetas: Vec<Frequency>,
    etas: Vec<Frequency>,
    /// Row-major, one row per `zeta`.
    entries: Vec<Complex64>,
}

impl SpectralKernel {
    pub fn zetas(&self) -> &[Frequency] {
        &self.zetas
    }

    pub fn etas(&self) -> &[Frequency] {
        &self.etas
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.etas.len() + col]
    }

    /// Matrix-vector product; `u` must be supported in the eta-window, and the
    /// result is the restriction of `(Au)^` to the zeta-window.
    pub fn apply(&self, u: &SparseField) -> Result<SparseField> {
        let mut coeffs = Vec::with_capacity(self.etas.len());
        for eta in &self.etas {
            coeffs.push(u.get(eta));
        }
        if let Some(out) = u.frequencies().find(|f| self.etas.binary_search(f).is_err()) {
            return Err(Error::InvalidParameter(format!(
                "input frequency {out} lies outside the eta-window"
            )));
        }
        let mut out = SparseField::with_threshold(u.dim(), u.threshold());
        for (i, zeta) in self.zetas.iter().enumerate() {
            let row = &self.entries[i * self.etas.len()..(i + 1) * self.etas.len()];
            let v: Complex64 = row.iter().zip(&coeffs).map(|(k, c)| k * c).sum();
            out.accumulate(*zeta, v)?;
        }
        out.prune();
        Ok(out)
    }
}

/// `K(zeta, eta) = a^(zeta - eta, eta)` for `zeta` and `eta` in the given
/// windows (sorted and deduplicated internally).
pub fn spectral_kernel(a: &SeparableSymbol, zetas: &[Frequency], etas: &[Frequency]) -> Result<SpectralKernel> {
    let size = zetas.len().saturating_mul(etas.len());
    if size > MAX_KERNEL_ENTRIES {
        return Err(Error::WindowTooLarge(size));
    }
    let sorted = |w: &[Frequency]| {
        let mut v = w.to_vec();
        v.sort();
        v.dedup();
        v
    };
    let (zetas, etas) = (sorted(zetas), sorted(etas));
    let mut entries = Vec::with_capacity(zetas.len() * etas.len());
    for zeta in &zetas {
        for eta in &etas {
            entries.push(a.hat(&zeta.checked_sub(eta)?, eta));
        }
    }
    Ok(SpectralKernel { zetas, etas, entries })
}

/// `K_m(x, y) = sum_t X_t(x) k_t(x - y)` on the `M x M` grid, where
/// `X_t = psi(2^{-m} D) c_t` and `k_t(z) = sum_eta m_t(eta) psi(2^{-m} eta) e^{i eta z}`.
///
/// Axis 0 of the result is `x`, axis 1 is `y`. Requires `n = 1` and
/// `R 2^m < M/2`.
pub fn spatial_kernel_1d(a: &SeparableSymbol, m: i64, profile: &CutoffProfile, grid: usize) -> Result<DenseField> {
    if a.dim() != 1 {
        return Err(Error::DimensionUnsupported(a.dim()));
    }
    let reach = profile.outer() * 2f64.powi(m as i32);
    if reach >= (grid / 2) as f64 {
        return Err(Error::FrequencyOutOfRange {
            frequency: format!("radius {reach}"),
            grid,
        });
    }
    let am = a.modulate(m, profile);
    let half = (grid / 2) as i128;
    let mut samples = vec![Complex64::default(); grid * grid];
    for term in am.terms() {
        let x = DenseField::from_sparse(&term.xpart, grid)?;
        let k = SparseField::from_pairs(
            1,
            (-half..half).map(|e| {
                let eta = Frequency::d1(e);
                (eta, term.mult.eval(&eta) * profile.eval_dilated(&eta, m))
            }),
        )?;
        let k = DenseField::from_sparse(&k, grid)?;
        let (xs, ks) = (x.samples(), k.samples());
        for i in 0..grid {
            for l in 0..grid {
                samples[i * grid + l] += xs[i] * ks[(i + grid - l) % grid];
            }
        }
    }
    DenseField::new(2, grid, samples)
}

/// Discrete pairing `M^{-2} sum_{x,y} K(x, y) u(y) conj(v(x))`.
///
/// For a kernel from [`spatial_kernel_1d`] this equals `<a^m(x, D) u^m, v>`
/// exactly provided no frequency of `u` or `v` reaches `M/2` and
/// `2 R 2^m + max|v| < M` (no aliasing in the x-sum).
pub fn kernel_pairing(k: &DenseField, u: &SparseField, v: &SparseField) -> Result<Complex64> {
    if k.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: k.dim(),
        });
    }
    let grid = k.grid();
    for f in u.frequencies().chain(v.frequencies()) {
        if !fits_grid(f, grid) {
            return Err(Error::FrequencyOutOfRange {
                frequency: f.to_string(),
                grid,
            });
        }
    }
    let ug = DenseField::from_sparse(u, grid)?;
    let vg = DenseField::from_sparse(v, grid)?;
    let (ks, us, vs) = (k.samples(), ug.samples(), vg.samples());
    let mut acc = Complex64::default();
    for i in 0..grid {
        let row: Complex64 = (0..grid).map(|l| ks[i * grid + l] * us[l]).sum();
        acc += row * vs[i].conj();
    }
    Ok(acc / (grid * grid) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{apply, apply_modulated};
    use crate::random::{random_field, random_symbol, seeded};
    use crate::symbols::{ching_symbol, CoronaBump};

    #[test]
    fn identity_kernel_is_identity_matrix() {
        let w = frequency_window(1, 6);
        let k = spectral_kernel(&SeparableSymbol::identity(1), &w, &w).unwrap();
        for i in 0..w.len() {
            for j in 0..w.len() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_eq!(k.entry(i, j), Complex64::new(expect, 0.0));
            }
        }
    }

    #[test]
    fn ching_kernel_entries() {
        let a = ching_symbol(1.0, Frequency::d1(1), 3, 5, CoronaBump::default()).unwrap();
        let w = frequency_window(1, 40);
        let k = spectral_kernel(&a, &w, &w).unwrap();
        let chi = CoronaBump::default();
        for (i, zeta) in w.iter().enumerate() {
            for (l, eta) in w.iter().enumerate() {
                let diff = (*zeta - *eta).components()[0];
                let expect: f64 = (3..=5)
                    .filter(|&j| diff == -(1 << j))
                    .map(|j| 2f64.powi(j) * chi.eval_radius(eta.norm() / 2f64.powi(j)))
                    .sum();
                assert_eq!(k.entry(i, l).re, expect);
            }
        }
    }

    #[test]
    fn kernel_matches_apply() {
        let mut rng = seeded(21);
        let p = CutoffProfile::default();
        let w = frequency_window(2, 12);
        for _ in 0..5 {
            let a = random_symbol(&mut rng, 2, 5, 4, 3, 3, &p);
            let u = random_field(&mut rng, 2, 6, 12, false);
            let k = spectral_kernel(&a, &w, &w).unwrap();
            let direct = apply(&a, &u).unwrap();
            let via = k.apply(&u).unwrap();
            assert!(direct.max_rel_diff(&via) <= 1e-12);
        }
    }

    #[test]
    fn window_guard() {
        let w = frequency_window(2, 50);
        assert!(matches!(
            spectral_kernel(&SeparableSymbol::identity(2), &w, &w),
            Err(Error::WindowTooLarge(_))
        ));
    }

    #[test]
    fn spatial_pairing_matches_operator() {
        let mut rng = seeded(22);
        let p = CutoffProfile::default();
        let (m, grid) = (4, 256);
        for _ in 0..4 {
            let a = random_symbol(&mut rng, 1, 4, 20, 3, 4, &p);
            let u = random_field(&mut rng, 1, 40, 10, false);
            let v = random_field(&mut rng, 1, 40, 10, false);
            let k = spatial_kernel_1d(&a, m, &p, grid).unwrap();
            let lhs = apply_modulated(&a, &u, &p, m).unwrap().inner_product(&v);
            let rhs = kernel_pairing(&k, &u, &v).unwrap();
            assert!((lhs - rhs).norm() <= 1e-8 * (1.0 + lhs.norm()), "{lhs} {rhs}");
        }
        let k = spatial_kernel_1d(&SeparableSymbol::identity(1), 3, &p, 64).unwrap();
        assert_eq!(kernel_pairing(&k, &SparseField::zero(1), &SparseField::zero(1)).unwrap(), Complex64::default());
        assert!(matches!(
            spatial_kernel_1d(&SeparableSymbol::identity(2), 3, &p, 64),
            Err(Error::DimensionUnsupported(2))
        ));
    }
}
