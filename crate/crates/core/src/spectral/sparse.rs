use std::collections::btree_map::{self, BTreeMap};
use std::collections::BTreeSet;

use num_complex::Complex64;

use super::frequency::Frequency;
use crate::error::{Error, Result};

/// Default cap on coefficient pairs visited by [`SparseField::pointwise_mul`].
pub const DEFAULT_PAIR_BUDGET: u128 = 10_000_000;

/// An exact trigonometric polynomial `u(x) = sum_xi c(xi) e^{i<x,xi>}` on the
/// torus `(R/2piZ)^n`.
///
/// Coefficients with magnitude `<= threshold` are never stored. All
/// reductions walk the coefficients in [`Frequency`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseField {
    dim: usize,
    threshold: f64,
    coeffs: BTreeMap<Frequency, Complex64>,
}

impl SparseField {
    pub fn zero(dim: usize) -> Self {
        assert!((1..=2).contains(&dim), "dimension must be 1 or 2");
        Self {
            dim,
            threshold: 0.0,
            coeffs: BTreeMap::new(),
        }
    }

    /// Zero field with a pruning threshold `tau >= 0`.
    pub fn with_threshold(dim: usize, tau: f64) -> Self {
        assert!(tau >= 0.0, "threshold must be nonnegative");
        Self {
            threshold: tau,
            ..Self::zero(dim)
        }
    }

    pub fn from_pairs<I>(dim: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Frequency, Complex64)>,
    {
        let mut out = Self::zero(dim);
        for (xi, c) in pairs {
            out.accumulate(xi, c)?;
        }
        out.prune();
        Ok(out)
    }

    /// The single character `c e^{i<x,xi>}`.
    pub fn mode(xi: Frequency, c: Complex64) -> Self {
        let mut out = Self::zero(xi.dim());
        out.insert(xi, c).expect("dimension matches by construction");
        out
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        Self::mode(Frequency::zero(dim), c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Re-prunes with a new threshold.
    pub fn set_threshold(&mut self, tau: f64) {
        assert!(tau >= 0.0, "threshold must be nonnegative");
        self.threshold = tau;
        self.prune();
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, xi: &Frequency) -> Complex64 {
        self.coeffs.get(xi).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Frequency, Complex64> {
        self.coeffs.iter()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = &Frequency> {
        self.coeffs.keys()
    }

    /// Overwrites the coefficient at `xi` (removing it if it prunes away).
    pub fn insert(&mut self, xi: Frequency, c: Complex64) -> Result<()> {
        self.check_dim(xi.dim())?;
        if c.norm() > self.threshold {
            self.coeffs.insert(xi, c);
        } else {
            self.coeffs.remove(&xi);
        }
        Ok(())
    }

    /// Adds `c` at `xi` without pruning; call [`prune`](Self::prune) afterwards.
    pub(crate) fn accumulate(&mut self, xi: Frequency, c: Complex64) -> Result<()> {
        self.check_dim(xi.dim())?;
        *self.coeffs.entry(xi).or_default() += c;
        Ok(())
    }

    pub(crate) fn prune(&mut self) {
        let tau = self.threshold;
        self.coeffs.retain(|_, c| c.norm() > tau);
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    /// Exact set of frequencies carrying a coefficient above the threshold.
    pub fn spectrum(&self) -> BTreeSet<Frequency> {
        self.coeffs.keys().copied().collect()
    }

    /// Largest `|xi|_inf` over the spectrum (0 for the empty field).
    pub fn max_frequency(&self) -> i128 {
        self.coeffs.keys().map(|k| k.max_norm()).max().unwrap_or(0)
    }

    /// Largest Euclidean `|xi|` over the spectrum.
    pub fn max_radius(&self) -> f64 {
        self.coeffs.keys().map(|k| k.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        let mut out = self.clone();
        for (&xi, &c) in &other.coeffs {
            out.accumulate(xi, c)?;
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        let mut out = Self {
            dim: self.dim,
            threshold: self.threshold,
            coeffs: self.coeffs.iter().map(|(&k, &c)| (k, c * alpha)).collect(),
        };
        out.prune();
        out
    }

    pub fn scale_real(&self, alpha: f64) -> Self {
        self.scale(Complex64::new(alpha, 0.0))
    }

    /// Coefficientwise map `c(xi) -> f(xi) c(xi)`, pruned at the threshold.
    pub fn map_coeffs(&self, f: impl Fn(&Frequency, Complex64) -> Complex64) -> Self {
        let mut out = Self {
            dim: self.dim,
            threshold: self.threshold,
            coeffs: self.coeffs.iter().map(|(k, &c)| (*k, f(k, c))).collect(),
        };
        out.prune();
        out
    }

    /// Fourier multiplier with a real symbol.
    pub fn multiply_symbol(&self, m: impl Fn(&Frequency) -> f64) -> Self {
        self.map_coeffs(|k, c| c * m(k))
    }

    /// The complex conjugate function `conj(u(x))`, whose coefficient at `-xi`
    /// is `conj(c(xi))`.
    pub fn conjugate(&self) -> Self {
        Self {
            dim: self.dim,
            threshold: self.threshold,
            coeffs: self.coeffs.iter().map(|(&k, c)| (-k, c.conj())).collect(),
        }
    }

    /// Coefficient convolution `(uv)^(zeta) = sum_{xi+eta=zeta} u(xi) v(eta)`.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        self.pointwise_mul_with_budget(other, DEFAULT_PAIR_BUDGET)
    }

    pub fn pointwise_mul_with_budget(&self, other: &Self, budget: u128) -> Result<Self> {
        self.check_dim(other.dim)?;
        let needed = self.len() as u128 * other.len() as u128;
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let mut out = Self::with_threshold(self.dim, self.threshold.max(other.threshold));
        for (&xi, &a) in &self.coeffs {
            for (&eta, &b) in &other.coeffs {
                out.accumulate(xi.checked_add(&eta)?, a * b)?;
            }
        }
        out.prune();
        Ok(out)
    }

    /// Series inner product `sum_xi u(xi) conj(v(xi))`, i.e. the normalized
    /// torus integral of `u conj(v)`.
    pub fn inner_product(&self, other: &Self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (xi, &a) in &self.coeffs {
            if let Some(b) = other.coeffs.get(xi) {
                acc += a * b.conj();
            }
        }
        acc
    }

    /// Sum of squared coefficient magnitudes.
    pub fn energy(&self) -> f64 {
        // fold from +0.0: an empty float `sum` is -0.0
        self.coeffs.values().map(|c| c.norm_sqr()).fold(0.0, |a, b| a + b)
    }

    /// `(sum <xi>^{2s} |u(xi)|^2)^{1/2}` with `<xi> = (1+|xi|^2)^{1/2}`.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(k, c)| japanese_bracket_pow(k, 2.0 * s) * c.norm_sqr())
            .fold(0.0, |a, b| a + b)
            .sqrt()
    }

    /// Maximum coefficient magnitude difference against `other`, relative to
    /// the larger of the two sup-norms (absolute when both vanish).
    pub fn max_rel_diff(&self, other: &Self) -> f64 {
        let keys: BTreeSet<_> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        let diff = keys
            .iter()
            .map(|k| (self.get(k) - other.get(k)).norm())
            .fold(0.0, f64::max);
        let scale = self.sup_coeff().max(other.sup_coeff());
        if scale > 0.0 {
            diff / scale
        } else {
            diff
        }
    }

    pub fn sup_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Evaluates the polynomial at a point of the torus by direct summation.
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(k, &c)| c * Complex64::from_polar(1.0, k.dot(x)))
            .sum()
    }

    /// Max imaginary part of the function on the coefficient side, i.e. how
    /// far the field is from being Hermitian-symmetric.
    pub fn hermitian_defect(&self) -> f64 {
        let keys: BTreeSet<_> = self.coeffs.keys().collect();
        keys.iter()
            .map(|k| (self.get(k) - self.get(&-**k).conj()).norm())
            .fold(0.0, f64::max)
    }
}

/// `<xi>^p = (1 + |xi|^2)^{p/2}`.
pub fn japanese_bracket_pow(xi: &Frequency, p: f64) -> f64 {
    let [a, b] = xi.as_f64();
    (1.0 + a * a + b * b).powf(0.5 * p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_norms_are_positive_zero() {
        let z = SparseField::zero(2);
        assert!(z.energy().is_sign_positive());
        assert!(z.sobolev_norm(1.0).is_sign_positive());
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cosine() -> SparseField {
        SparseField::from_pairs(
            1,
            [(Frequency::d1(1), c(0.5, 0.0)), (Frequency::d1(-1), c(0.5, 0.0))],
        )
        .unwrap()
    }

    #[test]
    fn algebra_examples() {
        let u = cosine();
        assert_eq!(u.add(&SparseField::zero(1)).unwrap(), u);
        let one = SparseField::mode(Frequency::d1(1), c(1.0, 0.0));
        assert_eq!(one.scale_real(2.0).get(&Frequency::d1(1)), c(2.0, 0.0));
        assert!(u.add(&u.scale_real(-1.0)).unwrap().is_empty());
        assert!(u.sub(&u).unwrap().is_empty());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let u = cosine();
        let v = SparseField::constant(2, c(1.0, 0.0));
        assert!(matches!(u.add(&v), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(u.pointwise_mul(&v), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn products_of_characters() {
        let u = cosine();
        let one = SparseField::constant(1, c(1.0, 0.0));
        assert_eq!(u.pointwise_mul(&one).unwrap(), u);
        let p = SparseField::mode(Frequency::d1(1), c(1.0, 0.0))
            .pointwise_mul(&SparseField::mode(Frequency::d1(2), c(1.0, 0.0)))
            .unwrap();
        assert_eq!(p, SparseField::mode(Frequency::d1(3), c(1.0, 0.0)));
    }

    #[test]
    fn cosine_squared_matches_trig_identity() {
        // cos^2 x = 1/2 + cos(2x)/2, checked pointwise as the oracle
        let sq = cosine().pointwise_mul(&cosine()).unwrap();
        for k in 0..17 {
            let x = 0.37 * k as f64;
            let oracle = x.cos().powi(2);
            assert!((sq.eval(&[x]).re - oracle).abs() < 1e-15);
        }
        assert_eq!(sq.get(&Frequency::d1(0)), c(0.5, 0.0));
        assert_eq!(sq.get(&Frequency::d1(2)), c(0.25, 0.0));
        assert_eq!(sq.get(&Frequency::d1(-2)), c(0.25, 0.0));
        assert_eq!(sq.len(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let u = cosine();
        assert!(matches!(
            u.pointwise_mul_with_budget(&u, 3),
            Err(Error::BudgetExceeded { needed: 4, budget: 3 })
        ));
    }

    #[test]
    fn inner_products() {
        let one = SparseField::constant(1, c(1.0, 0.0));
        assert_eq!(one.inner_product(&one), c(1.0, 0.0));
        let e1 = SparseField::mode(Frequency::d1(1), c(1.0, 0.0));
        let e2 = SparseField::mode(Frequency::d1(2), c(1.0, 0.0));
        assert_eq!(e1.inner_product(&e2), c(0.0, 0.0));
        let u = cosine().add(&e2.scale(c(0.0, 3.0))).unwrap();
        assert_eq!(u.inner_product(&u).re, u.energy());
        assert_eq!(u.inner_product(&u).im, 0.0);
    }

    #[test]
    fn sobolev_norm_examples() {
        let one = SparseField::constant(1, c(1.0, 0.0));
        for s in [-3.0, 0.0, 0.5, 7.0] {
            assert_eq!(one.sobolev_norm(s), 1.0);
        }
        for j in 0..20 {
            let u = SparseField::mode(Frequency::d1(1 << j), c(1.0, 0.0));
            let s = 0.75;
            let expected = (1.0 + 4f64.powi(j)).powf(s / 2.0);
            assert!((u.sobolev_norm(s) - expected).abs() <= 1e-15 * expected);
        }
    }

    #[test]
    fn sobolev_norm_is_monotone_in_s() {
        let u = cosine();
        let mut prev = 0.0;
        for i in 0..20 {
            let n = u.sobolev_norm(-2.0 + 0.25 * i as f64);
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn threshold_prunes() {
        let mut u = SparseField::with_threshold(1, 1e-3);
        u.insert(Frequency::d1(1), c(1e-4, 0.0)).unwrap();
        assert!(u.is_empty());
        u.insert(Frequency::d1(1), c(1.0, 0.0)).unwrap();
        assert_eq!(u.len(), 1);
        u.set_threshold(2.0);
        assert!(u.is_empty());
    }

    #[test]
    fn conjugate_reflects_spectrum() {
        let u = SparseField::mode(Frequency::d1(3), c(1.0, 2.0));
        let v = u.conjugate();
        assert_eq!(v.get(&Frequency::d1(-3)), c(1.0, -2.0));
        let x = [0.3];
        assert!((v.eval(&x) - u.eval(&x).conj()).norm() < 1e-15);
        assert_eq!(cosine().hermitian_defect(), 0.0);
    }
}
