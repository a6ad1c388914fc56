//! Directional decay diagnostics for lacunary spectra.
//!
//! The spectrum is clustered by direction `xi/|xi|`, and inside each cluster
//! `log|u(xi)|` is least-squares fitted against `log|xi|`. A cluster whose
//! coefficients decay like `|xi|^{-d}` reports a slope near `-d`.

use serde::Serialize;

use super::sparse::SparseField;
use crate::error::{Error, Result};

/// Default angular tolerance (Euclidean distance between unit vectors).
pub const DEFAULT_DIRECTION_TOLERANCE: f64 = 0.05;

#[derive(Clone, Debug, Serialize)]
pub struct ConeEntry {
    /// Mean unit direction of the cluster.
    pub direction: Vec<f64>,
    /// Number of spectral points in the cluster.
    pub count: usize,
    /// Fitted exponent; `None` when the cluster spans a single radius.
    pub slope: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeReport {
    pub entries: Vec<ConeEntry>,
}

impl ConeReport {
    /// Cluster whose direction is closest to `dir` (normalized internally).
    pub fn nearest(&self, dir: &[f64]) -> Option<&ConeEntry> {
        let unit = normalize(dir);
        self.entries.iter().min_by(|a, b| {
            distance(&a.direction, &unit)
                .partial_cmp(&distance(&b.direction, &unit))
                .unwrap()
        })
    }
}

fn normalize(v: &[f64]) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

struct Cluster {
    anchor: Vec<f64>,
    dir_sum: Vec<f64>,
    points: Vec<(f64, f64)>,
}

pub fn cone_report(u: &SparseField) -> Result<ConeReport> {
    cone_report_with_tolerance(u, DEFAULT_DIRECTION_TOLERANCE)
}

pub fn cone_report_with_tolerance(u: &SparseField, tol: f64) -> Result<ConeReport> {
    let mut clusters: Vec<Cluster> = Vec::new();
    for (xi, c) in u.iter() {
        if xi.is_zero() {
            continue;
        }
        let dir = normalize(&xi.to_point());
        let point = (xi.norm().ln(), c.norm().ln());
        match clusters.iter_mut().find(|cl| distance(&cl.anchor, &dir) <= tol) {
            Some(cl) => {
                for (s, d) in cl.dir_sum.iter_mut().zip(&dir) {
                    *s += d;
                }
                cl.points.push(point);
            }
            None => clusters.push(Cluster {
                anchor: dir.clone(),
                dir_sum: dir,
                points: vec![point],
            }),
        }
    }
    if clusters.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let entries = clusters
        .into_iter()
        .map(|cl| ConeEntry {
            direction: normalize(&cl.dir_sum),
            count: cl.points.len(),
            slope: least_squares_slope(&cl.points),
        })
        .collect();
    Ok(ConeReport { entries })
}

/// Ordinary least-squares slope of `y` against `x`.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx <= 1e-300 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Frequency;
    use num_complex::Complex64;

    #[test]
    fn empty_spectrum_errors() {
        let one = SparseField::constant(1, Complex64::new(1.0, 0.0));
        assert!(matches!(cone_report(&one), Err(Error::EmptySpectrum)));
        assert!(matches!(cone_report(&SparseField::zero(2)), Err(Error::EmptySpectrum)));
    }

    #[test]
    fn lacunary_decay_slope() {
        // |u(2^j)| = 2^{-j/2} exactly, so the log-log slope is -1/2
        let u = SparseField::from_pairs(
            1,
            (5..=20).map(|j| (Frequency::d1(1 << j), Complex64::new(2f64.powf(-0.5 * j as f64), 0.0))),
        )
        .unwrap();
        let rep = cone_report(&u).unwrap();
        assert_eq!(rep.entries.len(), 1);
        let e = rep.nearest(&[1.0]).unwrap();
        assert!((e.slope.unwrap() + 0.5).abs() < 1e-12);
        assert_eq!(e.direction, vec![1.0]);
    }

    #[test]
    fn two_directions_are_separated() {
        let u = SparseField::from_pairs(
            2,
            (3..=10).flat_map(|j| {
                [
                    (Frequency::d2(1 << j, 0), Complex64::new(1.0, 0.0)),
                    (Frequency::d2(0, -(1 << j)), Complex64::new(2f64.powi(-j), 0.0)),
                ]
            }),
        )
        .unwrap();
        let rep = cone_report(&u).unwrap();
        assert_eq!(rep.entries.len(), 2);
        assert!(rep.nearest(&[1.0, 0.0]).unwrap().slope.unwrap().abs() < 1e-12);
        assert!((rep.nearest(&[0.0, -1.0]).unwrap().slope.unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_radius_has_no_slope() {
        let u = SparseField::mode(Frequency::d1(-7), Complex64::new(1.0, 0.0));
        let rep = cone_report(&u).unwrap();
        assert_eq!(rep.entries[0].slope, None);
    }
}
