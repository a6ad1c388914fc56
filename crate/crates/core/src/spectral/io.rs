//! JSON form of [`SparseField`] and the raw-plus-sidecar form of
//! [`DenseField`].

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dense::DenseField;
use super::frequency::Frequency;
use super::sparse::SparseField;
use crate::error::{Error, Result};
use crate::fsutil::write_atomic;

#[derive(Serialize, Deserialize)]
struct CoeffRecord {
    xi: Vec<i128>,
    re: f64,
    im: f64,
}

/// `{"n": int, "coeffs": [{"xi": [ints], "re": float, "im": float}, ...]}`,
/// coefficients in frequency order.
#[derive(Serialize, Deserialize)]
pub struct SparseFieldJson {
    n: usize,
    coeffs: Vec<CoeffRecord>,
}

impl From<&SparseField> for SparseFieldJson {
    fn from(u: &SparseField) -> Self {
        Self {
            n: u.dim(),
            coeffs: u
                .iter()
                .map(|(xi, c)| CoeffRecord {
                    xi: xi.components().to_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<SparseFieldJson> for SparseField {
    type Error = Error;

    fn try_from(j: SparseFieldJson) -> Result<Self> {
        if !(1..=2).contains(&j.n) {
            return Err(Error::DimensionUnsupported(j.n));
        }
        let mut out = SparseField::zero(j.n);
        for rec in j.coeffs {
            let xi = Frequency::new(&rec.xi)?;
            out.check_dim(xi.dim())?;
            out.accumulate(xi, Complex64::new(rec.re, rec.im))?;
        }
        out.prune();
        Ok(out)
    }
}

impl SparseField {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(SparseFieldJson::from(self)).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SparseFieldJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: SparseFieldJson = serde_json::from_str(s)?;
        raw.try_into()
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let raw: SparseFieldJson = serde_json::from_value(v)?;
        raw.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct DenseSidecar {
    #[serde(rename = "M")]
    grid: usize,
    n: usize,
}

impl DenseField {
    /// Writes `path` (raw samples) and `path.json` (the `{"M", "n"}` sidecar).
    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.to_le_bytes())?;
        let side = serde_json::to_vec(&DenseSidecar {
            grid: self.grid(),
            n: self.dim(),
        })?;
        write_atomic(&sidecar_path(path), &side)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let side: DenseSidecar = serde_json::from_slice(&std::fs::read(sidecar_path(path))?)?;
        let bytes = std::fs::read(path)?;
        Self::from_le_bytes(side.n, side.grid, &bytes)
    }
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    s.into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_layout_is_sorted() {
        let u = SparseField::from_pairs(
            2,
            [
                (Frequency::d2(3, 1), Complex64::new(1.0, -2.0)),
                (Frequency::d2(-1, 4), Complex64::new(0.5, 0.0)),
            ],
        )
        .unwrap();
        let v = u.to_json_value();
        assert_eq!(v["n"], 2);
        assert_eq!(v["coeffs"][0]["xi"], serde_json::json!([-1, 4]));
        assert_eq!(v["coeffs"][1]["im"], -2.0);
        assert_eq!(SparseField::from_json(&u.to_json()).unwrap(), u);
    }

    #[test]
    fn huge_frequencies_survive_json() {
        let u = SparseField::mode(Frequency::d1(1i128 << 64), Complex64::new(1.0, 0.0));
        let s = u.to_json();
        assert!(s.contains("18446744073709551616"));
        assert_eq!(SparseField::from_json(&s).unwrap(), u);
    }

    #[test]
    fn malformed_json_is_rejected() {
        assert!(SparseField::from_json("{\"n\": 3, \"coeffs\": []}").is_err());
        assert!(SparseField::from_json("{\"n\": 1, \"coeffs\": [{\"xi\": [1, 2], \"re\": 1, \"im\": 0}]}").is_err());
        assert!(SparseField::from_json("not json").is_err());
    }

    #[test]
    fn dense_files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.bin");
        let g = DenseField::from_fn(1, 16, |x| Complex64::new(x[0].sin(), 1.0)).unwrap();
        g.save(&path).unwrap();
        let side: serde_json::Value =
            serde_json::from_slice(&std::fs::read(dir.path().join("g.bin.json")).unwrap()).unwrap();
        assert_eq!(side, serde_json::json!({"M": 16, "n": 1}));
        assert_eq!(DenseField::load(&path).unwrap(), g);
    }
}
