use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// Components must stay strictly below this magnitude.
pub const FREQUENCY_BOUND: i128 = 1 << 100;

/// Largest dyadic exponent `j` accepted by the lacunary constructions; keeps
/// `2^(j+2) * |theta|` inside [`FREQUENCY_BOUND`].
pub const MAX_DYADIC_EXPONENT: i64 = 96;

/// A point of the integer lattice Z^n, n in {1, 2}.
///
/// Ordering is lexicographic on the components, which fixes the summation
/// order of every reduction over a spectrum.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frequency {
    comps: [i128; 2],
    dim: u8,
}

impl Frequency {
    pub fn new(components: &[i128]) -> Result<Self> {
        let dim = components.len();
        if !(1..=2).contains(&dim) {
            return Err(Error::DimensionUnsupported(dim));
        }
        let mut comps = [0i128; 2];
        for (slot, &c) in comps.iter_mut().zip(components) {
            if c.abs() >= FREQUENCY_BOUND {
                return Err(Error::FrequencyOverflow { component: c });
            }
            *slot = c;
        }
        Ok(Self {
            comps,
            dim: dim as u8,
        })
    }

    /// One-dimensional frequency. Panics outside the representable range.
    pub fn d1(k: i128) -> Self {
        Self::new(&[k]).expect("frequency out of range")
    }

    /// Two-dimensional frequency. Panics outside the representable range.
    pub fn d2(k0: i128, k1: i128) -> Self {
        Self::new(&[k0, k1]).expect("frequency out of range")
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            comps: [0; 2],
            dim: dim as u8,
        }
    }

    /// Unit vector along `axis`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut f = Self::zero(dim);
        f.comps[axis] = 1;
        f
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn components(&self) -> &[i128] {
        &self.comps[..self.dim()]
    }

    pub fn is_zero(&self) -> bool {
        self.comps == [0, 0]
    }

    /// Euclidean length.
    pub fn norm(&self) -> f64 {
        let [a, b] = self.as_f64();
        a.hypot(b)
    }

    pub fn max_norm(&self) -> i128 {
        self.comps[0].abs().max(self.comps[1].abs())
    }

    pub fn as_f64(&self) -> [f64; 2] {
        [self.comps[0] as f64, self.comps[1] as f64]
    }

    /// Coordinates as a slice-sized vector of floats.
    pub fn to_point(&self) -> Vec<f64> {
        self.components().iter().map(|&c| c as f64).collect()
    }

    /// Checked sum; fails when the result leaves the representable range.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    /// `2^j * self`.
    pub fn shl(&self, j: u32) -> Result<Self> {
        let mut out = *self;
        for c in &mut out.comps {
            let v = c
                .checked_shl(j)
                .filter(|v| (v >> j) == *c && v.abs() < FREQUENCY_BOUND)
                .ok_or(Error::FrequencyOverflow { component: *c })?;
            *c = v;
        }
        Ok(out)
    }

    /// `k * self`.
    pub fn scale(&self, k: i128) -> Result<Self> {
        let mut out = *self;
        for c in &mut out.comps {
            let v = c
                .checked_mul(k)
                .filter(|v| v.abs() < FREQUENCY_BOUND)
                .ok_or(Error::FrequencyOverflow { component: *c })?;
            *c = v;
        }
        Ok(out)
    }

    pub fn dot(&self, point: &[f64]) -> f64 {
        self.components()
            .iter()
            .zip(point)
            .map(|(&c, &x)| c as f64 * x)
            .sum()
    }

    fn combine(&self, other: &Self, f: impl Fn(i128, i128) -> i128) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let mut comps = [0i128; 2];
        for (c, (&a, &b)) in comps.iter_mut().zip(self.comps.iter().zip(&other.comps)) {
            let v = f(a, b);
            if v.abs() >= FREQUENCY_BOUND {
                return Err(Error::FrequencyOverflow { component: v });
            }
            *c = v;
        }
        Ok(Self {
            comps,
            dim: self.dim,
        })
    }
}

impl Add for Frequency {
    type Output = Frequency;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("frequency overflow in addition")
    }
}

impl Sub for Frequency {
    type Output = Frequency;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("frequency overflow in subtraction")
    }
}

impl Neg for Frequency {
    type Output = Frequency;
    fn neg(self) -> Self {
        Self {
            comps: [-self.comps[0], -self.comps[1]],
            dim: self.dim,
        }
    }
}

impl fmt::Debug for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dim {
            1 => write!(f, "({})", self.comps[0]),
            _ => write!(f, "({}, {})", self.comps[0], self.comps[1]),
        }
    }
}

/// Serializes as the list of components, e.g. `[3, -1]`.
impl serde::Serialize for Frequency {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.components().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Frequency {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let comps = Vec::<i128>::deserialize(d)?;
        Frequency::new(&comps).map_err(serde::de::Error::custom)
    }
}
