use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cutoffs::{smooth_transition, CutoffProfile, LpFamily, ProfileKind};
use crate::spectral::Frequency;

/// Declared region outside which a multiplier vanishes identically.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EtaSupport {
    Everywhere,
    /// Closed ball `|eta| <= radius`.
    Ball { radius: f64 },
    /// Closed annulus `inner <= |eta| <= outer`.
    Annulus { inner: f64, outer: f64 },
}

impl EtaSupport {
    pub fn contains_radius(&self, rho: f64) -> bool {
        match *self {
            EtaSupport::Everywhere => true,
            EtaSupport::Ball { radius } => rho <= radius,
            EtaSupport::Annulus { inner, outer } => inner <= rho && rho <= outer,
        }
    }

    pub fn inner_radius(&self) -> f64 {
        match *self {
            EtaSupport::Annulus { inner, .. } => inner,
            _ => 0.0,
        }
    }

    pub fn outer_radius(&self) -> f64 {
        match *self {
            EtaSupport::Everywhere => f64::INFINITY,
            EtaSupport::Ball { radius } => radius,
            EtaSupport::Annulus { outer, .. } => outer,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.inner_radius() > self.outer_radius()
    }

    /// Intersection with the ball `|eta| <= radius`.
    pub fn clip(&self, radius: f64) -> EtaSupport {
        match *self {
            EtaSupport::Everywhere => EtaSupport::Ball { radius },
            EtaSupport::Ball { radius: r } => EtaSupport::Ball {
                radius: r.min(radius),
            },
            EtaSupport::Annulus { inner, outer } => EtaSupport::Annulus {
                inner,
                outer: outer.min(radius),
            },
        }
    }
}

/// Radial corona bump: supported in `3/4 <= |eta| <= 5/4`, equal to 1 on
/// `9/10 <= |eta| <= 11/10`; optionally multiplied by `(|eta| - 1)^r` to give
/// a zero of order `r` on the unit sphere.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoronaBump {
    #[serde(default)]
    pub zero_order: u32,
}

impl CoronaBump {
    pub const SUPPORT: (f64, f64) = (0.75, 1.25);
    pub const PLATEAU: (f64, f64) = (0.9, 1.1);

    pub fn with_zero(order: u32) -> Self {
        Self { zero_order: order }
    }

    pub fn eval_radius(&self, rho: f64) -> f64 {
        let (lo, hi) = Self::SUPPORT;
        let (plo, phi) = Self::PLATEAU;
        let base = if rho <= lo || rho >= hi {
            return 0.0;
        } else if rho < plo {
            smooth_transition(ProfileKind::Exp, (plo - rho) / (plo - lo))
        } else if rho <= phi {
            1.0
        } else {
            smooth_transition(ProfileKind::Exp, (rho - phi) / (hi - phi))
        };
        if self.zero_order == 0 {
            base
        } else {
            base * (rho - 1.0).powi(self.zero_order as i32)
        }
    }
}

pub type MultiplierFn = Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub enum MultiplierKind {
    /// Constant 1.
    Unit,
    /// `chi(2^{-j} eta)`.
    Corona { j: i64, chi: CoronaBump },
    /// Littlewood–Paley block `Phi_j(eta)`.
    Block { j: i64, profile: CutoffProfile },
    /// `psi(2^{-j} eta)`.
    Ball { j: i64, profile: CutoffProfile },
    /// `inner(eta) psi(2^{-m} eta)`.
    Damped {
        inner: Box<Multiplier>,
        m: i64,
        profile: CutoffProfile,
    },
    /// Arbitrary pure function of a real point.
    Func(MultiplierFn),
}

/// An eta-multiplier together with its declared support.
#[derive(Clone)]
pub struct Multiplier {
    kind: MultiplierKind,
    support: EtaSupport,
}

impl fmt::Debug for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            MultiplierKind::Unit => "unit".to_string(),
            MultiplierKind::Corona { j, chi } => format!("corona(j={j}, r={})", chi.zero_order),
            MultiplierKind::Block { j, profile } => format!("block(j={j}, {profile})"),
            MultiplierKind::Ball { j, profile } => format!("ball(j={j}, {profile})"),
            MultiplierKind::Damped { inner, m, profile } => {
                format!("damped({inner:?}, m={m}, {profile})")
            }
            MultiplierKind::Func(_) => "func".to_string(),
        };
        write!(f, "{kind} on {:?}", self.support)
    }
}

impl Multiplier {
    pub fn unit() -> Self {
        Self {
            kind: MultiplierKind::Unit,
            support: EtaSupport::Everywhere,
        }
    }

    pub fn corona(j: i64, chi: CoronaBump) -> Self {
        let s = 2f64.powi(j as i32);
        let (lo, hi) = CoronaBump::SUPPORT;
        Self {
            kind: MultiplierKind::Corona { j, chi },
            support: EtaSupport::Annulus {
                inner: lo * s,
                outer: hi * s,
            },
        }
    }

    pub fn block(j: i64, profile: CutoffProfile) -> Self {
        let (inner, outer) = LpFamily::new(profile).block_support(j);
        let support = if j == 0 {
            EtaSupport::Ball { radius: outer }
        } else {
            EtaSupport::Annulus { inner, outer }
        };
        Self {
            kind: MultiplierKind::Block { j, profile },
            support,
        }
    }

    pub fn ball(j: i64, profile: CutoffProfile) -> Self {
        Self {
            kind: MultiplierKind::Ball { j, profile },
            support: EtaSupport::Ball {
                radius: profile.outer() * 2f64.powi(j as i32),
            },
        }
    }

    /// A user function; it is forced to zero outside `support`.
    pub fn func(f: impl Fn(&[f64]) -> Complex64 + Send + Sync + 'static, support: EtaSupport) -> Self {
        Self {
            kind: MultiplierKind::Func(Arc::new(f)),
            support,
        }
    }

    /// `self(eta) psi(2^{-m} eta)`.
    pub fn damped(&self, m: i64, profile: CutoffProfile) -> Self {
        Self {
            support: self.support.clip(profile.outer() * 2f64.powi(m as i32)),
            kind: MultiplierKind::Damped {
                inner: Box::new(self.clone()),
                m,
                profile,
            },
        }
    }

    pub fn kind(&self) -> &MultiplierKind {
        &self.kind
    }

    pub fn support(&self) -> EtaSupport {
        self.support
    }

    pub fn eval_point(&self, eta: &[f64]) -> Complex64 {
        let rho = eta.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !self.support.contains_radius(rho) {
            return Complex64::default();
        }
        let real = |v: f64| Complex64::new(v, 0.0);
        match &self.kind {
            MultiplierKind::Unit => real(1.0),
            MultiplierKind::Corona { j, chi } => real(chi.eval_radius(rho * 2f64.powi(-(*j as i32)))),
            MultiplierKind::Block { j, profile } => real(LpFamily::new(*profile).block_radius(*j, rho)),
            MultiplierKind::Ball { j, profile } => real(profile.eval_point_dilated(eta, *j)),
            MultiplierKind::Damped { inner, m, profile } => {
                inner.eval_point(eta) * profile.eval_point_dilated(eta, *m)
            }
            MultiplierKind::Func(f) => f(eta),
        }
    }

    pub fn eval(&self, eta: &Frequency) -> Complex64 {
        self.eval_point(&eta.to_point())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub(crate) enum MultiplierJson {
    One,
    Corona { j: i64, chi: CoronaBump },
    Block { j: i64, profile: CutoffProfile },
    Ball { j: i64, profile: CutoffProfile },
    Damped {
        m: i64,
        profile: CutoffProfile,
        inner: Box<MultiplierJson>,
    },
}

impl TryFrom<&Multiplier> for MultiplierJson {
    type Error = crate::error::Error;

    fn try_from(m: &Multiplier) -> Result<Self, Self::Error> {
        Ok(match &m.kind {
            MultiplierKind::Unit => MultiplierJson::One,
            MultiplierKind::Corona { j, chi } => MultiplierJson::Corona { j: *j, chi: *chi },
            MultiplierKind::Block { j, profile } => MultiplierJson::Block {
                j: *j,
                profile: *profile,
            },
            MultiplierKind::Ball { j, profile } => MultiplierJson::Ball {
                j: *j,
                profile: *profile,
            },
            MultiplierKind::Damped { inner, m, profile } => MultiplierJson::Damped {
                m: *m,
                profile: *profile,
                inner: Box::new(inner.as_ref().try_into()?),
            },
            MultiplierKind::Func(_) => {
                return Err(crate::error::Error::NotSerializable(
                    "function-valued multiplier".into(),
                ))
            }
        })
    }
}

impl From<MultiplierJson> for Multiplier {
    fn from(j: MultiplierJson) -> Self {
        match j {
            MultiplierJson::One => Multiplier::unit(),
            MultiplierJson::Corona { j, chi } => Multiplier::corona(j, chi),
            MultiplierJson::Block { j, profile } => Multiplier::block(j, profile),
            MultiplierJson::Ball { j, profile } => Multiplier::ball(j, profile),
            MultiplierJson::Damped { m, profile, inner } => {
                Multiplier::from(*inner).damped(m, profile)
            }
        }
    }
}
