//! Ching's lacunary symbols `a_theta(x, eta) = sum_j 2^{jd} e^{-i 2^j <theta, x>} chi(2^{-j} eta)`.

use num_complex::Complex64;

use super::multiplier::{CoronaBump, Multiplier};
use super::{SeparableSymbol, Term};
use crate::error::{Error, Result};
use crate::spectral::{Frequency, SparseField, MAX_DYADIC_EXPONENT};

/// Largest `|j d|` for which `2^{jd}` is computed; beyond it the coefficient
/// would under/overflow double precision.
const MAX_LOG2_COEFFICIENT: f64 = 900.0 * std::f64::consts::LOG2_E;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChingSymbol {
    pub d: f64,
    pub theta: Frequency,
    pub j_lo: i64,
    pub j_hi: i64,
    pub chi: CoronaBump,
}

impl ChingSymbol {
    pub fn new(d: f64, theta: Frequency, j_lo: i64, j_hi: i64, chi: CoronaBump) -> Result<Self> {
        if j_lo < 1 || j_hi < j_lo || j_hi > MAX_DYADIC_EXPONENT {
            return Err(Error::BadRange {
                lo: j_lo,
                hi: j_hi,
                reason: format!("need 1 <= j_lo <= j_hi <= {MAX_DYADIC_EXPONENT}"),
            });
        }
        if theta.is_zero() {
            return Err(Error::ZeroDirection);
        }
        for j in [j_lo, j_hi] {
            if (j as f64 * d).abs() > MAX_LOG2_COEFFICIENT || !d.is_finite() {
                return Err(Error::CoefficientRange { j, d });
            }
        }
        // 2^j theta must stay representable
        theta.shl(j_hi as u32)?;
        Ok(Self {
            d,
            theta,
            j_lo,
            j_hi,
            chi,
        })
    }

    pub fn dim(&self) -> usize {
        self.theta.dim()
    }

    /// `2^{jd}`.
    pub fn coefficient(&self, j: i64) -> f64 {
        (j as f64 * self.d).exp2()
    }

    /// `2^j theta`.
    pub fn shift(&self, j: i64) -> Frequency {
        self.theta.shl(j as u32).expect("range checked at construction")
    }

    pub fn symbol(&self) -> SeparableSymbol {
        let terms = (self.j_lo..=self.j_hi)
            .map(|j| {
                let xpart = SparseField::mode(-self.shift(j), Complex64::new(self.coefficient(j), 0.0));
                Term::new(xpart, Multiplier::corona(j, self.chi))
            })
            .collect();
        SeparableSymbol::new(self.dim(), self.d, terms).expect("dimension consistent")
    }
}

pub fn ching_symbol(
    d: f64,
    theta: Frequency,
    j_lo: i64,
    j_hi: i64,
    chi: CoronaBump,
) -> Result<SeparableSymbol> {
    Ok(ChingSymbol::new(d, theta, j_lo, j_hi, chi)?.symbol())
}
