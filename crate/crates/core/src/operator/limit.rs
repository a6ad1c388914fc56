//! The vanishing-modulation limit, rendered as exact stabilization in `m`
//! plus agreement across cutoff profiles.

use serde::Serialize;

use super::apply_modulated;
use crate::cutoffs::{modulate, CutoffProfile};
use crate::error::{Error, Result};
use crate::spectral::SparseField;
use crate::symbols::SeparableSymbol;

#[derive(Clone, Debug, Serialize)]
pub struct ModulationDiagnostic {
    pub profile_ids: Vec<String>,
    pub m_range: [i64; 2],
    /// `Delta_m = max_psi |s_{m+1} - s_m|_{H^s}` for `m` in `[lo, hi)`.
    pub delta: Vec<f64>,
    /// Smallest `m` from which every profile's output stays identical up to
    /// the end of the range.
    pub m_star: Option<i64>,
    /// `max_psi |s_hi(psi) - s_hi(psi_0)|_{H^s}`.
    pub cross_profile_max: f64,
    pub pass: bool,
    /// `|s_m|_{H^s}` for the first profile.
    #[serde(skip)]
    pub norms: Vec<f64>,
    /// Output at the top of the range for the first profile.
    #[serde(skip)]
    pub limit: SparseField,
}

impl ModulationDiagnostic {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

fn diagnose(
    profiles: &[CutoffProfile],
    m_range: (i64, i64),
    s: f64,
    step: impl Fn(&CutoffProfile, i64) -> Result<SparseField>,
) -> Result<ModulationDiagnostic> {
    let (lo, hi) = m_range;
    if profiles.is_empty() {
        return Err(Error::InvalidParameter("at least one profile is required".into()));
    }
    if hi < lo {
        return Err(Error::BadRange {
            lo,
            hi,
            reason: "empty modulation range".into(),
        });
    }
    let mut runs: Vec<Vec<SparseField>> = Vec::with_capacity(profiles.len());
    for p in profiles {
        runs.push((lo..=hi).map(|m| step(p, m)).collect::<Result<_>>()?);
    }
    let len = (hi - lo) as usize;
    let delta: Vec<f64> = (0..len)
        .map(|i| {
            runs.iter()
                .map(|r| r[i + 1].sub(&r[i]).expect("same dimension").sobolev_norm(s))
                .fold(0.0, f64::max)
        })
        .collect();
    let stable_from = delta.iter().rposition(|&d| d != 0.0).map_or(0, |i| i + 1);
    let m_star = (stable_from < len).then(|| lo + stable_from as i64);
    let cross = runs
        .iter()
        .map(|r| r[len].sub(&runs[0][len]).expect("same dimension").sobolev_norm(s))
        .fold(0.0, f64::max);
    Ok(ModulationDiagnostic {
        profile_ids: profiles.iter().map(|p| p.id()).collect(),
        m_range: [lo, hi],
        m_star,
        cross_profile_max: cross,
        pass: m_star.is_some() && cross == 0.0,
        norms: runs[0].iter().map(|f| f.sobolev_norm(s)).collect(),
        limit: runs[0][len].clone(),
        delta,
    })
}

/// Runs [`apply_modulated`] over `m_range` for every profile; passes iff the
/// outputs stabilize exactly and agree across profiles.
pub fn vanishing_limit(
    a: &SeparableSymbol,
    u: &SparseField,
    profiles: &[CutoffProfile],
    m_range: (i64, i64),
    s: f64,
) -> Result<ModulationDiagnostic> {
    diagnose(profiles, m_range, s, |p, m| apply_modulated(a, u, p, m))
}

/// `pi(u, v) = lim_m u^m v^m`, with the same diagnostics.
pub fn pi_product(
    u: &SparseField,
    v: &SparseField,
    profiles: &[CutoffProfile],
    m_range: (i64, i64),
) -> Result<ModulationDiagnostic> {
    diagnose(profiles, m_range, 0.0, |p, m| {
        modulate(u, m, p).pointwise_mul(&modulate(v, m, p))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutoffs::default_profiles;
    use crate::random::{random_field, seeded};
    use crate::spectral::Frequency;
    use crate::symbols::{ching_symbol, CoronaBump};
    use num_complex::Complex64;

    #[test]
    fn ching_limit_stabilizes() {
        let a = ching_symbol(0.0, Frequency::d1(1), 3, 6, CoronaBump::default()).unwrap();
        let u = random_field(&mut seeded(7), 1, 80, 30, false);
        let diag = vanishing_limit(&a, &u, &default_profiles(), (0, 12), 0.0).unwrap();
        assert!(diag.pass, "{diag:?}");
        // inputs up to 80 and symbol modes up to 64 sit on the plateau once 1.1 2^m >= 80
        assert!(diag.m_star.unwrap() <= 7);
        assert_eq!(diag.cross_profile_max, 0.0);
        let json = diag.to_json_value();
        let keys: Vec<_> = json.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys.len(), 6);
        assert!(json["m_star"].is_i64());
    }

    #[test]
    fn zero_input_is_trivially_stable() {
        let a = SeparableSymbol::identity(1);
        let diag = vanishing_limit(&a, &SparseField::zero(1), &default_profiles(), (0, 3), 0.0).unwrap();
        assert_eq!(diag.m_star, Some(0));
        assert!(diag.norms.iter().all(|&n| n == 0.0));
    }

    #[test]
    fn short_range_does_not_stabilize() {
        let u = SparseField::mode(Frequency::d1(1000), Complex64::new(1.0, 0.0));
        let diag = vanishing_limit(&SeparableSymbol::identity(1), &u, &default_profiles(), (0, 5), 0.0).unwrap();
        // all outputs are zero up to m = 5: formally stable but equal to 0, not u
        assert!(diag.limit.is_empty());
        let diag = vanishing_limit(&SeparableSymbol::identity(1), &u, &default_profiles(), (5, 9), 0.0).unwrap();
        assert!(!diag.pass);
        assert_eq!(diag.m_star, None);
    }

    #[test]
    fn product_limit_is_pointwise_product() {
        let mut rng = seeded(8);
        let u = random_field(&mut rng, 2, 12, 10, false);
        let v = random_field(&mut rng, 2, 12, 10, false);
        let diag = pi_product(&u, &v, &default_profiles(), (0, 8)).unwrap();
        assert!(diag.pass);
        assert!(diag.limit.max_rel_diff(&u.pointwise_mul(&v).unwrap()) == 0.0);
    }
}
