//! Deterministic lacunary fields: the band-limited bump `v`, the sequence
//! `v_N` that exhibits unclosability, the flip inputs `w_J(theta, d)` and
//! truncated Weierstrass functions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{Frequency, SparseField, MAX_DYADIC_EXPONENT};

/// Triangle spectrum `v(xi) ~ 1 - |xi|/(B+1)` on `|xi| <= B`, normalized to
/// unit `l^2` norm.
pub fn bump_field(dim: usize, bandwidth: i128) -> Result<SparseField> {
    if bandwidth < 0 {
        return Err(Error::InvalidParameter(format!("bandwidth {bandwidth} < 0")));
    }
    let b = bandwidth;
    let weight = |xi: &Frequency| 1.0 - xi.norm() / (b + 1) as f64;
    let pts: Vec<Frequency> = match dim {
        1 => (-b..=b).map(Frequency::d1).collect(),
        2 => (-b..=b)
            .flat_map(|i| (-b..=b).map(move |k| Frequency::d2(i, k)))
            .filter(|xi| xi.norm() <= b as f64)
            .collect(),
        n => return Err(Error::DimensionUnsupported(n)),
    };
    let norm = pts.iter().map(|xi| weight(xi).powi(2)).sum::<f64>().sqrt();
    SparseField::from_pairs(dim, pts.iter().map(|xi| (*xi, Complex64::new(weight(xi) / norm, 0.0))))
}

/// Bandwidth `max(1, floor(2^N / 20))` used with `v_N`.
pub fn unclosable_bandwidth(n: i64) -> i128 {
    ((1i128 << n.clamp(0, 100)) / 20).max(1)
}

/// `r_N = (sum_{j=N}^{N^2} 1/j) / ln N`.
pub fn harmonic_ratio(n: i64) -> f64 {
    (n..=n * n).map(|j| 1.0 / j as f64).sum::<f64>() / (n as f64).ln()
}

fn check_lacunary_range(lo: i64, hi: i64) -> Result<()> {
    if hi > MAX_DYADIC_EXPONENT {
        return Err(Error::RangeTooLarge(format!(
            "top exponent {hi} exceeds {MAX_DYADIC_EXPONENT}"
        )));
    }
    if lo < 0 || hi < lo {
        return Err(Error::BadRange {
            lo,
            hi,
            reason: "need 0 <= lo <= hi".into(),
        });
    }
    Ok(())
}

/// `v_N(xi) = (1/ln N) sum_{j=N}^{N^2} (2^{-jd}/j) v(xi - 2^j theta)`.
pub fn v_sequence(v: &SparseField, theta: &Frequency, n: i64, d: f64) -> Result<SparseField> {
    if n < 2 {
        return Err(Error::BadRange {
            lo: n,
            hi: n * n,
            reason: "need N >= 2".into(),
        });
    }
    check_lacunary_range(n, n * n)?;
    let scale = 1.0 / (n as f64).ln();
    let mut out = SparseField::zero(v.dim());
    for j in n..=n * n {
        let shift = theta.shl(j as u32)?;
        let c = scale * (-(j as f64) * d).exp2() / j as f64;
        for (zeta, &vz) in v.iter() {
            out.accumulate(zeta.checked_add(&shift)?, vz * c)?;
        }
    }
    out.prune();
    Ok(out)
}

/// `w_J(theta, d) = sum_{j=j0}^{J} 2^{-jd} v e^{i 2^j <theta, x>}`; requires
/// the bandwidth of `v` to be at most `2^{j0}/20`.
pub fn w_field(v: &SparseField, theta: &Frequency, d: f64, j0: i64, top: i64) -> Result<SparseField> {
    check_lacunary_range(j0, top)?;
    let bandwidth = v.frequencies().map(|f| f.max_norm()).max().unwrap_or(0);
    let limit = 2f64.powi(j0 as i32) / 20.0;
    if bandwidth as f64 > limit {
        return Err(Error::BandwidthViolation { bandwidth, limit });
    }
    let mut out = SparseField::zero(v.dim());
    for j in j0..=top {
        let shift = theta.shl(j as u32)?;
        let c = (-(j as f64) * d).exp2();
        for (zeta, &vz) in v.iter() {
            out.accumulate(zeta.checked_add(&shift)?, vz * c)?;
        }
    }
    out.prune();
    Ok(out)
}

/// `f_J(t) = sum_{j=1}^{J} 2^{-jd} e^{i 2^j t}`.
pub fn weierstrass(d: f64, top: i64) -> Result<SparseField> {
    check_lacunary_range(1, top)?;
    SparseField::from_pairs(
        1,
        (1..=top).map(|j| (Frequency::d1(1i128 << j), Complex64::new((-(j as f64) * d).exp2(), 0.0))),
    )
}
