//! Empirical checks of symbol estimates: the type 1,1 seminorms and the
//! twisted diagonal condition.

use num_complex::Complex64;
use serde::Serialize;

use super::SeparableSymbol;
use crate::spectral::{least_squares_slope, Frequency, SparseField};

/// Dyadic scale cap used when no term has a bounded eta-support.
const DEFAULT_TOP_SCALE: i64 = 20;

#[derive(Clone, Debug, Serialize)]
pub struct ScaleSample {
    /// Dyadic scale: samples have `|eta|` in `[0.7, 1.3] 2^j`.
    pub j: i64,
    /// Sup of `|D^alpha_eta D^beta_x a|` at this scale.
    pub value: f64,
    /// Sup of the same quantity times `<eta>^{-d+|alpha|-|beta|}`.
    pub normalized: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub order: f64,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub scales: Vec<ScaleSample>,
    /// Estimated seminorm constant `C_{alpha,beta}`.
    pub constant: f64,
    /// Log-log slope of the per-scale sup against `2^j` (scales with a
    /// nonzero value only).
    pub slope: Option<f64>,
    pub cap: f64,
    /// Number of samples whose normalized value exceeds `cap`.
    pub violations: usize,
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `D^alpha` (with `D = -i d`) of `f` at `eta` by tensorized central differences.
fn eta_derivative(f: &dyn Fn(&[f64]) -> Complex64, eta: &[f64], alpha: &[u32], h: f64) -> Complex64 {
    let order: u32 = alpha.iter().sum();
    if order == 0 {
        return f(eta);
    }
    // stencil offsets per axis
    let axes: Vec<Vec<(f64, f64)>> = alpha
        .iter()
        .map(|&k| {
            (0..=k)
                .map(|l| {
                    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                    (sign * binomial(k, l), (k as f64 / 2.0 - l as f64) * h)
                })
                .collect()
        })
        .collect();
    let mut acc = Complex64::default();
    let mut idx = vec![0usize; axes.len()];
    loop {
        let mut w = 1.0;
        let mut p = eta.to_vec();
        for (ax, &i) in idx.iter().enumerate() {
            let (c, off) = axes[ax][i];
            w *= c;
            p[ax] += off;
        }
        acc += f(&p) * w;
        let mut ax = 0;
        loop {
            if ax == idx.len() {
                let scale = h.powi(order as i32);
                return acc / scale * Complex64::new(0.0, -1.0).powu(order);
            }
            idx[ax] += 1;
            if idx[ax] < axes[ax].len() {
                break;
            }
            idx[ax] = 0;
            ax += 1;
        }
    }
}

fn sample_directions(dim: usize) -> Vec<Vec<f64>> {
    if dim == 1 {
        vec![vec![1.0], vec![-1.0]]
    } else {
        (0..8)
            .map(|k| {
                let t = k as f64 * std::f64::consts::FRAC_PI_4;
                vec![t.cos(), t.sin()]
            })
            .collect()
    }
}

/// Estimates `sup |D^alpha_eta D^beta_x a(x, eta)| <eta>^{-d+|alpha|-|beta|}`
/// over dyadic eta-shells and a fixed set of x points.
///
/// x-derivatives are exact (`xi^beta` on the coefficients); eta-derivatives use
/// central differences with step `1e-3 max(1, |eta|)`. `budget` bounds the
/// number of `(x, eta)` samples.
pub fn class_verify(
    a: &SeparableSymbol,
    alpha: &[u32],
    beta: &[u32],
    budget: usize,
    cap: f64,
) -> ClassReport {
    let dim = a.dim();
    let pad = |m: &[u32]| {
        let mut v = m.to_vec();
        v.resize(dim, 0);
        v
    };
    let (alpha, beta) = (pad(alpha), pad(beta));
    let weight_exp = -a.order() + alpha.iter().sum::<u32>() as f64 - beta.iter().sum::<u32>() as f64;

    // D^beta_x on every x-part
    let xparts: Vec<SparseField> = a
        .terms()
        .iter()
        .map(|t| {
            t.xpart.map_coeffs(|xi, c| {
                let f = xi.as_f64();
                c * beta.iter().enumerate().map(|(i, &b)| f[i].powi(b as i32)).product::<f64>()
            })
        })
        .collect();

    let top = a
        .terms()
        .iter()
        .map(|t| t.mult.support().outer_radius())
        .filter(|r| r.is_finite())
        .fold(None, |m: Option<f64>, r| Some(m.map_or(r, |m| m.max(r))))
        .map_or(DEFAULT_TOP_SCALE, |r| r.log2().ceil() as i64);
    let scales: Vec<i64> = (0..=top.max(0)).collect();

    let xs: Vec<Vec<f64>> = (0..3)
        .map(|k| vec![0.7 + 2.1 * k as f64; dim])
        .collect();
    let dirs = sample_directions(dim);
    let per_scale = (budget / (scales.len() * xs.len() * dirs.len()).max(1)).max(5);
    let radii: Vec<f64> = (0..per_scale)
        .map(|i| 0.7 + 0.6 * i as f64 / (per_scale - 1) as f64)
        .collect();

    let mut report = ClassReport {
        order: a.order(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        scales: Vec::with_capacity(scales.len()),
        constant: 0.0,
        slope: None,
        cap,
        violations: 0,
    };
    for &j in &scales {
        let s = 2f64.powi(j as i32);
        let mut sample = ScaleSample {
            j,
            value: 0.0,
            normalized: 0.0,
        };
        for x in &xs {
            let xvals: Vec<Complex64> = xparts.iter().map(|c| c.eval(x)).collect();
            let g = |eta: &[f64]| -> Complex64 {
                xvals
                    .iter()
                    .zip(a.terms())
                    .map(|(&c, t)| if c == Complex64::default() { c } else { c * t.mult.eval_point(eta) })
                    .sum()
            };
            for dir in &dirs {
                for &t in &radii {
                    let rho = t * s;
                    let eta: Vec<f64> = dir.iter().map(|d| d * rho).collect();
                    let h = 1e-3 * rho.max(1.0);
                    let v = eta_derivative(&g, &eta, &alpha, h).norm();
                    let nv = v * (1.0 + rho * rho).powf(0.5 * weight_exp);
                    sample.value = sample.value.max(v);
                    sample.normalized = sample.normalized.max(nv);
                    if nv > cap {
                        report.violations += 1;
                    }
                }
            }
        }
        report.constant = report.constant.max(sample.normalized);
        report.scales.push(sample);
    }
    let pts: Vec<(f64, f64)> = report
        .scales
        .iter()
        .filter(|s| s.value > 0.0)
        .map(|s| (s.j as f64 * std::f64::consts::LN_2, s.value.ln()))
        .collect();
    report.slope = least_squares_slope(&pts);
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct TdcWitness {
    pub xi: Frequency,
    pub eta: Frequency,
}

#[derive(Clone, Debug, Serialize)]
pub struct TdcReport {
    pub holds: bool,
    pub witness: Option<TdcWitness>,
    /// Number of lattice pairs examined.
    pub checked: usize,
}

/// Searches for `(xi, eta)` with `a^(xi, eta) != 0` and
/// `C (|xi + eta| + 1) < |eta|`.
///
/// For each term and each x-frequency `xi`, radii are taken at the support
/// extremes, at the kink `|eta| = |xi|` and at `budget`-many evenly spaced
/// points in between, along `-xi/|xi|` (where `|xi + eta|` is smallest) and
/// nearby directions; every candidate is rounded to the lattice together with
/// its unit neighbours.
pub fn twisted_diagonal_check(a: &SeparableSymbol, c: f64, budget: usize) -> TdcReport {
    let dim = a.dim();
    let mut checked = 0;
    let n_pairs: usize = a.terms().iter().map(|t| t.xpart.len()).sum();
    let per_pair = (budget / n_pairs.max(1)).max(3);
    for term in a.terms() {
        let sup = term.mult.support();
        if sup.is_empty() {
            continue;
        }
        for xi in term.xpart.frequencies() {
            let xnorm = xi.norm();
            let inner = sup.inner_radius();
            let outer = if sup.outer_radius().is_finite() {
                sup.outer_radius()
            } else if c > 1.0 {
                (c * (xnorm + 1.0) / (c - 1.0)).max(4.0) * 2.0
            } else {
                4.0 * (xnorm + 1.0)
            };
            let mut radii = vec![inner, outer, xnorm.clamp(inner, outer)];
            radii.extend((1..per_pair).map(|i| inner + (outer - inner) * i as f64 / per_pair as f64));
            let base = if xnorm > 0.0 {
                xi.to_point().iter().map(|v| -v / xnorm).collect()
            } else {
                let mut e = vec![0.0; dim];
                e[0] = 1.0;
                e
            };
            let dirs: Vec<Vec<f64>> = if dim == 1 {
                vec![base]
            } else {
                [0.0f64, 0.1, -0.1, 0.4, -0.4]
                    .iter()
                    .map(|t| vec![base[0] * t.cos() - base[1] * t.sin(), base[0] * t.sin() + base[1] * t.cos()])
                    .collect()
            };
            for dir in &dirs {
                for &rho in &radii {
                    let centre: Vec<i128> = dir.iter().map(|d| (d * rho).round() as i128).collect();
                    for eta in lattice_neighbourhood(&centre) {
                        checked += 1;
                        let Ok(sum) = xi.checked_add(&eta) else { continue };
                        if c * (sum.norm() + 1.0) < eta.norm() && a.hat(xi, &eta).norm() > 0.0 {
                            return TdcReport {
                                holds: false,
                                witness: Some(TdcWitness { xi: *xi, eta }),
                                checked,
                            };
                        }
                    }
                }
            }
        }
    }
    TdcReport {
        holds: true,
        witness: None,
        checked,
    }
}

fn lattice_neighbourhood(centre: &[i128]) -> Vec<Frequency> {
    let offsets: &[i128] = &[0, -1, 1];
    match centre.len() {
        1 => offsets
            .iter()
            .filter_map(|o| Frequency::new(&[centre[0] + o]).ok())
            .collect(),
        _ => offsets
            .iter()
            .flat_map(|a| offsets.iter().map(move |b| (*a, *b)))
            .filter_map(|(a, b)| Frequency::new(&[centre[0] + a, centre[1] + b]).ok())
            .collect(),
    }
}
