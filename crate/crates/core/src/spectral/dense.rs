use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use super::frequency::Frequency;
use super::sparse::SparseField;
use crate::error::{Error, Result};

/// Samples of a periodic field on the uniform grid `x_k = 2 pi k / M`,
/// `k in {0..M-1}^n`, stored row-major (axis 0 slowest).
#[derive(Clone, Debug, PartialEq)]
pub struct DenseField {
    dim: usize,
    grid: usize,
    samples: Vec<Complex64>,
}

fn check_grid(grid: usize) -> Result<()> {
    if grid < 2 || !grid.is_power_of_two() {
        return Err(Error::BadGridSize(grid));
    }
    Ok(())
}

/// Whether every component of `xi` lies in `[-M/2, M/2)`.
pub fn fits_grid(xi: &Frequency, grid: usize) -> bool {
    let half = (grid / 2) as i128;
    xi.components().iter().all(|&c| -half <= c && c < half)
}

fn fft_axis(data: &mut [Complex64], dim: usize, grid: usize, fft: &dyn Fft<f64>) {
    match dim {
        1 => fft.process(data),
        _ => {
            // rows (axis 1), then columns (axis 0)
            for row in data.chunks_exact_mut(grid) {
                fft.process(row);
            }
            let mut col = vec![Complex64::default(); grid];
            for j in 0..grid {
                for i in 0..grid {
                    col[i] = data[i * grid + j];
                }
                fft.process(&mut col);
                for i in 0..grid {
                    data[i * grid + j] = col[i];
                }
            }
        }
    }
}

fn transform(data: &mut [Complex64], dim: usize, grid: usize, direction: FftDirection) {
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft(grid, direction);
    fft_axis(data, dim, grid, fft.as_ref());
}

impl DenseField {
    pub fn new(dim: usize, grid: usize, samples: Vec<Complex64>) -> Result<Self> {
        check_grid(grid)?;
        if !(1..=2).contains(&dim) {
            return Err(Error::DimensionUnsupported(dim));
        }
        let expected = grid.pow(dim as u32);
        if samples.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "expected {expected} samples, got {}",
                samples.len()
            )));
        }
        Ok(Self { dim, grid, samples })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(dim: usize, grid: usize, f: impl Fn(&[f64]) -> Complex64) -> Result<Self> {
        check_grid(grid)?;
        let h = std::f64::consts::TAU / grid as f64;
        let samples = match dim {
            1 => (0..grid).map(|k| f(&[h * k as f64])).collect(),
            2 => (0..grid * grid)
                .map(|idx| f(&[h * (idx / grid) as f64, h * (idx % grid) as f64]))
                .collect(),
            _ => return Err(Error::DimensionUnsupported(dim)),
        };
        Ok(Self { dim, grid, samples })
    }

    pub fn constant(dim: usize, grid: usize, c: Complex64) -> Result<Self> {
        Self::from_fn(dim, grid, |_| c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Grid coordinates of sample `idx`.
    pub fn point(&self, idx: usize) -> Vec<f64> {
        let h = std::f64::consts::TAU / self.grid as f64;
        match self.dim {
            1 => vec![h * idx as f64],
            _ => vec![h * (idx / self.grid) as f64, h * (idx % self.grid) as f64],
        }
    }

    /// Inverse FFT of the embedded coefficient array; exact synthesis of the
    /// trigonometric polynomial at the grid points.
    pub fn from_sparse(u: &SparseField, grid: usize) -> Result<Self> {
        check_grid(grid)?;
        let dim = u.dim();
        let mut data = vec![Complex64::default(); grid.pow(dim as u32)];
        for (xi, &c) in u.iter() {
            if !fits_grid(xi, grid) {
                return Err(Error::FrequencyOutOfRange {
                    frequency: xi.to_string(),
                    grid,
                });
            }
            data[Self::slot(xi, grid)] += c;
        }
        transform(&mut data, dim, grid, FftDirection::Inverse);
        Ok(Self {
            dim,
            grid,
            samples: data,
        })
    }

    /// Forward FFT normalized by `M^{-n}`, so band-limited fields recover their
    /// coefficients; entries with magnitude `<= tau` are dropped.
    pub fn to_sparse(&self, tau: f64) -> SparseField {
        let mut data = self.samples.clone();
        transform(&mut data, self.dim, self.grid, FftDirection::Forward);
        let norm = 1.0 / self.samples.len() as f64;
        let mut out = SparseField::with_threshold(self.dim, tau);
        for (idx, c) in data.into_iter().enumerate() {
            let xi = self.frequency_at(idx);
            out.insert(xi, c * norm).expect("dimension matches");
        }
        out
    }

    /// Applies a Fourier multiplier through the FFT, treating the samples as
    /// the band-limited interpolant on `[-M/2, M/2)^n`.
    pub fn apply_multiplier(&self, m: impl Fn(&Frequency) -> f64) -> Self {
        let mut data = self.samples.clone();
        transform(&mut data, self.dim, self.grid, FftDirection::Forward);
        let norm = 1.0 / self.samples.len() as f64;
        for (idx, c) in data.iter_mut().enumerate() {
            *c *= m(&self.frequency_at(idx)) * norm;
        }
        transform(&mut data, self.dim, self.grid, FftDirection::Inverse);
        Self {
            dim: self.dim,
            grid: self.grid,
            samples: data,
        }
    }

    fn slot(xi: &Frequency, grid: usize) -> usize {
        let wrap = |c: i128| c.rem_euclid(grid as i128) as usize;
        match xi.components() {
            [a] => wrap(*a),
            [a, b] => wrap(*a) * grid + wrap(*b),
            _ => unreachable!(),
        }
    }

    fn frequency_at(&self, idx: usize) -> Frequency {
        let m = self.grid;
        let signed = |k: usize| {
            if k < m / 2 {
                k as i128
            } else {
                k as i128 - m as i128
            }
        };
        match self.dim {
            1 => Frequency::d1(signed(idx)),
            _ => Frequency::d2(signed(idx / m), signed(idx % m)),
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            dim: self.dim,
            grid: self.grid,
            samples: self.samples.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.dim != other.dim || self.grid != other.grid {
            return Err(Error::DimensionMismatch {
                expected: self.samples.len(),
                found: other.samples.len(),
            });
        }
        Ok(Self {
            dim: self.dim,
            grid: self.grid,
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.samples.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Grid quadrature of the normalized L_p norm (weight `M^{-n}`, so the
    /// constant 1 has norm 1); `p = inf` is the max modulus over grid points.
    pub fn lp_norm(&self, p: f64) -> f64 {
        assert!(p >= 1.0, "p must lie in [1, inf]");
        if p.is_infinite() {
            return self.max_abs();
        }
        let w = 1.0 / self.samples.len() as f64;
        let sum: f64 = self.samples.iter().map(|z| z.norm().powf(p)).sum();
        (w * sum).powf(1.0 / p)
    }

    /// Bessel-potential norm `|(1 - Laplace)^{s/2} g|_p` of the grid
    /// interpolant.
    pub fn bessel_norm(&self, s: f64, p: f64) -> f64 {
        self.apply_multiplier(|xi| super::sparse::japanese_bracket_pow(xi, s))
            .lp_norm(p)
    }

    /// Raw little-endian interleaved `f64` (re, im) pairs, row-major.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.samples.len() * 16);
        for z in &self.samples {
            out.extend_from_slice(&z.re.to_le_bytes());
            out.extend_from_slice(&z.im.to_le_bytes());
        }
        out
    }

    pub fn from_le_bytes(dim: usize, grid: usize, bytes: &[u8]) -> Result<Self> {
        if !bytes.len().is_multiple_of(16) {
            return Err(Error::Parse("byte length is not a multiple of 16".into()));
        }
        let samples = bytes
            .chunks_exact(16)
            .map(|ch| {
                let re = f64::from_le_bytes(ch[..8].try_into().unwrap());
                let im = f64::from_le_bytes(ch[8..].try_into().unwrap());
                Complex64::new(re, im)
            })
            .collect();
        Self::new(dim, grid, samples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_field() {
        let u = SparseField::constant(1, c(1.0, 0.0));
        let g = DenseField::from_sparse(&u, 8).unwrap();
        assert!(g.samples().iter().all(|&z| z == c(1.0, 0.0)));
        let back = g.to_sparse(0.0);
        assert_eq!(back, u);
    }

    #[test]
    fn cosine_samples() {
        let u = SparseField::from_pairs(
            1,
            [(Frequency::d1(1), c(0.5, 0.0)), (Frequency::d1(-1), c(0.5, 0.0))],
        )
        .unwrap();
        let g = DenseField::from_sparse(&u, 8).unwrap();
        for (k, z) in g.samples().iter().enumerate() {
            let x = std::f64::consts::TAU * k as f64 / 8.0;
            assert!((z - c(x.cos(), 0.0)).norm() < 1e-15);
        }
        // exact-zero FFT bins are not guaranteed, so stray entries are bounded
        let raw = g.to_sparse(0.0);
        for (xi, z) in raw.iter() {
            if xi.max_norm() == 1 {
                assert!((z - c(0.5, 0.0)).norm() < 1e-15);
            } else {
                assert!(z.norm() < 1e-15);
            }
        }
        assert_eq!(g.to_sparse(1e-14).spectrum(), u.spectrum());
    }

    #[test]
    fn frequency_range_boundary() {
        let at_minus = SparseField::mode(Frequency::d1(-4), c(1.0, 0.0));
        assert!(DenseField::from_sparse(&at_minus, 8).is_ok());
        let at_plus = SparseField::mode(Frequency::d1(4), c(0.0, 1.0));
        assert!(matches!(
            DenseField::from_sparse(&at_plus, 8),
            Err(Error::FrequencyOutOfRange { .. })
        ));
        let five = SparseField::mode(Frequency::d1(5), c(0.0, 1.0));
        assert!(DenseField::from_sparse(&five, 8).is_err());
        assert!(matches!(DenseField::from_sparse(&five, 12), Err(Error::BadGridSize(12))));
    }

    #[test]
    fn lp_norms_of_cosine() {
        let g = DenseField::from_fn(1, 4096, |x| c(x[0].cos(), 0.0)).unwrap();
        // closed form: (1/2pi) int cos^2 = 1/2
        assert!((g.lp_norm(2.0) - 0.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(g.lp_norm(f64::INFINITY), 1.0);
        let one = DenseField::constant(2, 16, c(1.0, 0.0)).unwrap();
        for p in [1.0, 2.0, 3.5, f64::INFINITY] {
            assert!((one.lp_norm(p) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn two_dimensional_direct_evaluation() {
        let u = SparseField::from_pairs(
            2,
            [
                (Frequency::d2(1, -2), c(0.25, -1.0)),
                (Frequency::d2(-3, 0), c(2.0, 0.5)),
                (Frequency::d2(0, 7), c(-1.0, 0.0)),
            ],
        )
        .unwrap();
        let g = DenseField::from_sparse(&u, 16).unwrap();
        for idx in [0, 5, 17, 100, 255] {
            let x = g.point(idx);
            assert!((g.samples()[idx] - u.eval(&x)).norm() < 1e-13);
        }
        let back = g.to_sparse(1e-13);
        assert!(back.max_rel_diff(&u) < 1e-14);
    }

    #[test]
    fn multiplier_through_fft() {
        let u = SparseField::from_pairs(
            1,
            [(Frequency::d1(3), c(1.0, 0.0)), (Frequency::d1(-5), c(0.0, 2.0))],
        )
        .unwrap();
        let g = DenseField::from_sparse(&u, 32).unwrap();
        let h = g.apply_multiplier(|xi| xi.norm());
        let expected = u.multiply_symbol(|xi| xi.norm());
        assert!(h.to_sparse(1e-12).max_rel_diff(&expected) < 1e-14);
    }

    #[test]
    fn binary_round_trip() {
        let g = DenseField::from_fn(2, 8, |x| c(x[0], -x[1])).unwrap();
        let back = DenseField::from_le_bytes(2, 8, &g.to_le_bytes()).unwrap();
        assert_eq!(back, g);
        assert!(DenseField::from_le_bytes(2, 8, &[0u8; 15]).is_err());
    }
}
