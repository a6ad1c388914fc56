//! Type 1,1 pseudo-differential operators on the torus, defined by vanishing
//! frequency modulation.
//!
//! Fields are trigonometric polynomials with exact sparse spectra
//! ([`SparseField`]) or samples on a uniform grid ([`DenseField`]). A symbol
//! `a(x, eta)` acts by `a(x, D) u = lim_m a^m(x, D) u^m`, where both `a` and `u`
//! are smoothly truncated to frequencies below `~2^m`; for the finite objects
//! handled here the limit is reached exactly at a finite `m` and can be
//! certified, independently of the truncation profile.

pub mod cli;
pub mod cutoffs;
pub mod error;
pub mod experiments;
pub mod families;
mod fsutil;
pub mod operator;
pub mod random;
pub mod spectral;
pub mod symbols;

pub use cutoffs::{CutoffProfile, Localization, LpFamily, ProfileKind};
pub use error::{Error, Result};
pub use spectral::{DenseField, Frequency, SparseField};
pub use symbols::{ching_symbol, ChingSymbol, CoronaBump, Multiplier, SeparableSymbol, Term};
