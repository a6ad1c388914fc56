//! Symbols `a(x, eta)` in separable term form
//! `a(x, eta) = sum_t c_t(x) m_t(eta)` with each `c_t` a sparse trigonometric
//! polynomial, plus the dense multiplier-sum form used for Meyer symbols.

mod ching;
mod meyer;
mod multiplier;
mod verify;

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cutoffs::{lp_project, modulate, CutoffProfile, Localization, LpFamily};
use crate::error::{Error, Result};
use crate::spectral::{Frequency, SparseField, SparseFieldJson};

pub use ching::{ching_symbol, ChingSymbol};
pub use meyer::{gauss_legendre, meyer_symbol, MeyerSymbol, DEFAULT_QUADRATURE_NODES};
pub use multiplier::{CoronaBump, EtaSupport, Multiplier, MultiplierFn, MultiplierKind};
pub use verify::{class_verify, twisted_diagonal_check, ClassReport, ScaleSample, TdcReport, TdcWitness};

use multiplier::MultiplierJson;

/// One separable piece `c(x) m(eta)`.
#[derive(Clone, Debug)]
pub struct Term {
    pub xpart: SparseField,
    pub mult: Multiplier,
}

impl Term {
    pub fn new(xpart: SparseField, mult: Multiplier) -> Self {
        Self { xpart, mult }
    }
}

#[derive(Clone, Debug)]
pub struct SeparableSymbol {
    dim: usize,
    order: f64,
    terms: Vec<Term>,
}

impl SeparableSymbol {
    /// Builds a symbol, dropping empty x-parts and sorting terms by
    /// (inner support radius, first x-frequency).
    pub fn new(dim: usize, order: f64, terms: Vec<Term>) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(Error::DimensionUnsupported(dim));
        }
        for t in &terms {
            if t.xpart.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: t.xpart.dim(),
                });
            }
        }
        let mut terms: Vec<Term> = terms.into_iter().filter(|t| !t.xpart.is_empty()).collect();
        terms.sort_by(|a, b| {
            a.mult
                .support()
                .inner_radius()
                .total_cmp(&b.mult.support().inner_radius())
                .then_with(|| a.xpart.frequencies().next().cmp(&b.xpart.frequencies().next()))
        });
        Ok(Self { dim, order, terms })
    }

    pub fn zero(dim: usize, order: f64) -> Self {
        Self {
            dim,
            order,
            terms: Vec::new(),
        }
    }

    /// `a = 1`.
    pub fn identity(dim: usize) -> Self {
        Self::multiplication(&SparseField::constant(dim, Complex64::new(1.0, 0.0)))
    }

    /// The eta-independent symbol `a(x, eta) = f(x)`.
    pub fn multiplication(f: &SparseField) -> Self {
        Self::new(f.dim(), 0.0, vec![Term::new(f.clone(), Multiplier::unit())])
            .expect("dimension checked by the field")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Partial transform `a^(xi, eta) = sum_t c_t(xi) m_t(eta)`.
    pub fn hat(&self, xi: &Frequency, eta: &Frequency) -> Complex64 {
        self.terms
            .iter()
            .map(|t| {
                let c = t.xpart.get(xi);
                if c == Complex64::default() {
                    c
                } else {
                    c * t.mult.eval(eta)
                }
            })
            .sum()
    }

    /// `a(x, eta)` at a point of the torus and a real frequency.
    pub fn eval(&self, x: &[f64], eta: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.xpart.eval(x) * t.mult.eval_point(eta))
            .sum()
    }

    /// Union of the x-spectra of all terms.
    pub fn x_spectrum(&self) -> BTreeSet<Frequency> {
        self.terms.iter().flat_map(|t| t.xpart.frequencies().copied()).collect()
    }

    pub fn max_x_radius(&self) -> f64 {
        self.terms.iter().map(|t| t.xpart.max_radius()).fold(0.0, f64::max)
    }

    fn map_xparts(&self, f: impl Fn(&SparseField) -> SparseField) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term::new(f(&t.xpart), t.mult.clone()))
            .collect();
        Self::new(self.dim, self.order, terms).expect("dimension preserved")
    }

    /// `a^m = psi(2^{-m} D_x) a`.
    pub fn modulate(&self, m: i64, profile: &CutoffProfile) -> Self {
        self.map_xparts(|c| modulate(c, m, profile))
    }

    /// `a_j = Phi_j(D_x) a` or `a^j = psi(2^{-j} D_x) a`.
    pub fn localize_x(&self, j: i64, fam: &LpFamily, mode: Localization) -> Self {
        self.map_xparts(|c| lp_project(c, j, fam, mode))
    }

    /// `m(D_x) a` for a real Fourier multiplier `m`.
    pub fn multiply_x(&self, m: impl Fn(&Frequency) -> f64) -> Self {
        self.map_xparts(|c| c.multiply_symbol(&m))
    }

    /// `a(x, eta) psi(2^{-m} eta)`.
    pub fn damp_eta(&self, m: i64, profile: &CutoffProfile) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term::new(t.xpart.clone(), t.mult.damped(m, *profile)))
            .collect();
        Self::new(self.dim, self.order, terms).expect("dimension preserved")
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        self.map_xparts(|c| c.scale(alpha))
    }

    /// Concatenation of the term lists.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        Self::new(self.dim, self.order.max(other.order), terms)
    }

    pub fn to_json_value(&self) -> Result<serde_json::Value> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(TermJson {
                    xpart: SparseFieldJson::from(&t.xpart),
                    mult: MultiplierJson::try_from(&t.mult)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(serde_json::to_value(SymbolJson {
            d: self.order,
            terms,
        })?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json_value()?)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: SymbolJson = serde_json::from_str(s)?;
        let mut dim = None;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let xpart = SparseField::try_from(t.xpart)?;
            match dim {
                None => dim = Some(xpart.dim()),
                Some(n) if n != xpart.dim() => {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: xpart.dim(),
                    })
                }
                _ => {}
            }
            terms.push(Term::new(xpart, Multiplier::from(t.mult)));
        }
        // An empty symbol carries no dimension; 1 is as good as any.
        Self::new(dim.unwrap_or(1), raw.d, terms)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    xpart: SparseFieldJson,
    mult: MultiplierJson,
}

#[derive(Serialize, Deserialize)]
struct SymbolJson {
    d: f64,
    terms: Vec<TermJson>,
}

/// Free-function form of [`SeparableSymbol::modulate`].
pub fn symbol_modulate(a: &SeparableSymbol, m: i64, profile: &CutoffProfile) -> SeparableSymbol {
    a.modulate(m, profile)
}
