//! Smooth radial cutoffs `psi`, the annular bump `phi = psi - psi(2.)`, and the
//! dyadic Littlewood–Paley family built from them.
//!
//! Default radii are `r = 1.1`, `R = 2.0`: every dyadic frequency `2^j` then
//! sits on the plateau of exactly one block, `Phi_j(2^j) = psi(1) - psi(2) = 1`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{DenseField, Frequency, SparseField};

pub const DEFAULT_INNER_RADIUS: f64 = 1.1;
pub const DEFAULT_OUTER_RADIUS: f64 = 2.0;

/// Transition shape between the plateau and the support boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    /// `g(t) = h(1-t) / (h(t) + h(1-t))`, `h(t) = exp(-1/t)`; C-infinity.
    Exp,
    /// `1 - (35t^4 - 84t^5 + 70t^6 - 20t^7)`; C^3 at the seams.
    Poly7,
}

/// Decreasing transition `[0,1] -> [1,0]`.
pub fn smooth_transition(kind: ProfileKind, t: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    if t >= 1.0 {
        return 0.0;
    }
    match kind {
        ProfileKind::Exp => {
            let h = |s: f64| (-1.0 / s).exp();
            let a = h(1.0 - t);
            a / (h(t) + a)
        }
        ProfileKind::Poly7 => {
            let t4 = t.powi(4);
            1.0 - t4 * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)))
        }
    }
}

/// A radial plateau function: `psi = 1` on `|xi| <= r`, `psi = 0` on `|xi| >= R`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutoffProfile {
    r: f64,
    #[serde(rename = "R")]
    big_r: f64,
    kind: ProfileKind,
}

impl CutoffProfile {
    pub fn new(r: f64, big_r: f64, kind: ProfileKind) -> Result<Self> {
        if !(r > 0.0 && big_r > r && big_r.is_finite()) {
            return Err(Error::BadRadii { r, big_r });
        }
        Ok(Self { r, big_r, kind })
    }

    pub fn inner(&self) -> f64 {
        self.r
    }

    pub fn outer(&self) -> f64 {
        self.big_r
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// Short stable identifier used in diagnostics.
    pub fn id(&self) -> String {
        let k = match self.kind {
            ProfileKind::Exp => "exp",
            ProfileKind::Poly7 => "poly7",
        };
        format!("{k}(r={},R={})", self.r, self.big_r)
    }

    /// `psi` as a function of the radius `|xi|`.
    pub fn eval_radius(&self, rho: f64) -> f64 {
        if rho <= self.r {
            1.0
        } else if rho >= self.big_r {
            0.0
        } else {
            smooth_transition(self.kind, (rho - self.r) / (self.big_r - self.r))
        }
    }

    pub fn eval(&self, xi: &Frequency) -> f64 {
        self.eval_radius(xi.norm())
    }

    /// `psi(2^{-m} xi)`; negative `m` dilates outwards.
    pub fn eval_dilated(&self, xi: &Frequency, m: i64) -> f64 {
        self.eval_radius(scale_radius(xi.norm(), m))
    }

    /// `psi(2^{-m} eta)` at a real point.
    pub fn eval_point_dilated(&self, eta: &[f64], m: i64) -> f64 {
        let rho = eta.iter().map(|x| x * x).sum::<f64>().sqrt();
        self.eval_radius(scale_radius(rho, m))
    }
}

impl Default for CutoffProfile {
    fn default() -> Self {
        Self::new(DEFAULT_INNER_RADIUS, DEFAULT_OUTER_RADIUS, ProfileKind::Exp).unwrap()
    }
}

/// Parses `exp`, `poly7`, `exp:1.1:2` or the [`CutoffProfile::id`] form
/// `poly7(r=1.1,R=2)`.
impl std::str::FromStr for CutoffProfile {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid profile spec '{spec}'"));
        let spec = spec.trim();
        let (kind, rest) = match spec.split_once(['(', ':']) {
            Some((k, rest)) => (k, Some(rest.trim_end_matches(')'))),
            None => (spec, None),
        };
        let kind = match kind.trim().to_ascii_lowercase().as_str() {
            "exp" => ProfileKind::Exp,
            "poly7" => ProfileKind::Poly7,
            _ => return Err(bad()),
        };
        let (r, big_r) = match rest {
            None => (DEFAULT_INNER_RADIUS, DEFAULT_OUTER_RADIUS),
            Some(rest) => {
                let nums: Vec<f64> = rest
                    .split([',', ':'])
                    .map(|t| t.rsplit('=').next().unwrap_or("").trim().parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad())?;
                match nums[..] {
                    [r, big_r] => (r, big_r),
                    _ => return Err(bad()),
                }
            }
        };
        Self::new(r, big_r, kind)
    }
}

impl fmt::Display for CutoffProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// `rho * 2^{-m}`, exact in binary floating point.
fn scale_radius(rho: f64, m: i64) -> f64 {
    rho * 2f64.powi(-(m as i32))
}

/// The exponential and the polynomial profile with default radii.
pub fn default_profiles() -> Vec<CutoffProfile> {
    vec![
        CutoffProfile::default(),
        CutoffProfile::new(DEFAULT_INNER_RADIUS, DEFAULT_OUTER_RADIUS, ProfileKind::Poly7).unwrap(),
    ]
}

/// Constructor matching `make_cutoff(r, R)` with the default exponential blend.
pub fn make_cutoff(r: f64, big_r: f64) -> Result<CutoffProfile> {
    CutoffProfile::new(r, big_r, ProfileKind::Exp)
}

/// Block or ball localization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Localization {
    /// `Phi_j(D)`: the dyadic block `u_j`.
    Block,
    /// `psi(2^{-j} D)`: the ball `u^j`.
    Ball,
}

/// Dyadic family `Phi_0 = psi`, `Phi_j = phi(2^{-j}.)`, with the gap integer
/// `h` satisfying `R <= r 2^{h-2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LpFamily {
    profile: CutoffProfile,
    gap: u32,
}

impl LpFamily {
    /// Uses the smallest admissible gap `h`.
    pub fn new(profile: CutoffProfile) -> Self {
        let mut gap = 1;
        while profile.outer() > profile.inner() * 2f64.powi(gap as i32 - 2) {
            gap += 1;
        }
        Self { profile, gap }
    }

    pub fn with_gap(profile: CutoffProfile, gap: u32) -> Result<Self> {
        if profile.outer() > profile.inner() * 2f64.powi(gap as i32 - 2) {
            return Err(Error::InvalidParameter(format!(
                "gap h={gap} violates R <= r 2^(h-2) for {profile}"
            )));
        }
        Ok(Self { profile, gap })
    }

    pub fn profile(&self) -> &CutoffProfile {
        &self.profile
    }

    pub fn gap(&self) -> u32 {
        self.gap
    }

    /// `phi(xi) = psi(xi) - psi(2 xi)` as a function of the radius.
    pub fn phi_radius(&self, rho: f64) -> f64 {
        self.profile.eval_radius(rho) - self.profile.eval_radius(2.0 * rho)
    }

    /// `Phi_j` at radius `rho` (zero for `j < 0`).
    pub fn block_radius(&self, j: i64, rho: f64) -> f64 {
        match j {
            j if j < 0 => 0.0,
            0 => self.profile.eval_radius(rho),
            j => self.phi_radius(scale_radius(rho, j)),
        }
    }

    pub fn block(&self, j: i64, xi: &Frequency) -> f64 {
        self.block_radius(j, xi.norm())
    }

    /// `psi(2^{-j} xi)` (zero for `j < 0`).
    pub fn ball(&self, j: i64, xi: &Frequency) -> f64 {
        if j < 0 {
            0.0
        } else {
            self.profile.eval_dilated(xi, j)
        }
    }

    pub fn localize(&self, mode: Localization, j: i64, xi: &Frequency) -> f64 {
        match mode {
            Localization::Block => self.block(j, xi),
            Localization::Ball => self.ball(j, xi),
        }
    }

    /// Smallest `j` such that `Phi_k` vanishes on `|xi| <= rho` for all `k > j`.
    pub fn top_block(&self, rho: f64) -> i64 {
        // Phi_k vanishes below r 2^{k-1}
        let mut j = 0;
        while self.profile.inner() * 2f64.powi(j as i32) < rho {
            j += 1;
        }
        j
    }

    /// Radii `[r 2^{k-1}, R 2^k]` enclosing `supp Phi_k` for `k >= 1`.
    pub fn block_support(&self, k: i64) -> (f64, f64) {
        if k == 0 {
            return (0.0, self.profile.outer());
        }
        (
            self.profile.inner() * 2f64.powi(k as i32 - 1),
            self.profile.outer() * 2f64.powi(k as i32),
        )
    }
}

impl Default for LpFamily {
    fn default() -> Self {
        Self::new(CutoffProfile::default())
    }
}

/// Max over `samples` of `|psi(2^{-m} xi) - psi(xi) - sum_{k=1}^m phi(2^{-k} xi)|`.
pub fn telescope_check(profile: &CutoffProfile, m: i64, samples: &[Vec<f64>]) -> f64 {
    let fam = LpFamily::new(*profile);
    samples
        .iter()
        .map(|x| {
            let rho = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let lhs = profile.eval_radius(scale_radius(rho, m));
            let mut rhs = profile.eval_radius(rho);
            for k in 1..=m {
                rhs += fam.phi_radius(scale_radius(rho, k));
            }
            (lhs - rhs).abs()
        })
        .fold(0.0, f64::max)
}

/// `u_j = Phi_j(D) u` (block) or `u^j = psi(2^{-j} D) u` (ball); empty for `j < 0`.
pub fn lp_project(u: &SparseField, j: i64, fam: &LpFamily, mode: Localization) -> SparseField {
    u.multiply_symbol(|xi| fam.localize(mode, j, xi))
}

/// `u^m = psi(2^{-m} D) u`.
pub fn modulate(u: &SparseField, m: i64, profile: &CutoffProfile) -> SparseField {
    u.multiply_symbol(|xi| profile.eval_dilated(xi, m))
}

/// Normalized `L_1` norm on the torus of the kernel of `psi(2^{-m} D)`, i.e. the
/// constant in `|u^m|_inf <= c |u|_inf`. Requires `R 2^m < M/2`.
pub fn synthesis_l1(profile: &CutoffProfile, m: i64, grid: usize) -> Result<f64> {
    let reach = (profile.outer() * 2f64.powi(m as i32)).ceil() as i128;
    if reach >= (grid / 2) as i128 {
        return Err(Error::FrequencyOutOfRange {
            frequency: format!("radius {reach}"),
            grid,
        });
    }
    let kernel = SparseField::from_pairs(
        1,
        (-reach..=reach).map(|k| {
            let xi = Frequency::d1(k);
            (xi, Complex64::new(profile.eval_dilated(&xi, m), 0.0))
        }),
    )?;
    Ok(DenseField::from_sparse(&kernel, grid)?.lp_norm(1.0))
}
