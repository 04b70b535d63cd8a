//! Serialization of [`VectorSystem`].
//!
//! JSON: `{"ambient_dim": d, "vectors": [[[re, im], ...], ...], "label": "..."}`.
//! CSV: one row per vector, header `re_0,im_0,re_1,im_1,...`.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};
use crate::frame::VectorSystem;
use crate::linalg::CVector;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VectorSystemJson {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    pub label: String,
}

impl From<&VectorSystem> for VectorSystemJson {
    fn from(sys: &VectorSystem) -> Self {
        Self {
            ambient_dim: sys.ambient_dim(),
            vectors: sys
                .vectors()
                .iter()
                .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            label: sys.label().to_string(),
        }
    }
}

impl TryFrom<VectorSystemJson> for VectorSystem {
    type Error = FrameError;

    fn try_from(j: VectorSystemJson) -> Result<Self> {
        let vectors = j
            .vectors
            .into_iter()
            .map(|v| CVector::from_iterator(v.len(), v.into_iter().map(|[re, im]| Complex64::new(re, im))))
            .collect();
        VectorSystem::new(j.ambient_dim, vectors, j.label)
    }
}

impl Serialize for VectorSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VectorSystemJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for VectorSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = VectorSystemJson::deserialize(d)?;
        VectorSystem::try_from(j).map_err(serde::de::Error::custom)
    }
}

pub fn to_json(sys: &VectorSystem) -> Result<String> {
    Ok(serde_json::to_string(sys)?)
}

pub fn from_json(s: &str) -> Result<VectorSystem> {
    Ok(serde_json::from_str(s)?)
}

pub fn write_csv<W: Write>(sys: &VectorSystem, w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    let header: Vec<String> = (0..sys.ambient_dim())
        .flat_map(|t| [format!("re_{t}"), format!("im_{t}")])
        .collect();
    wr.write_record(&header)?;
    for v in sys.vectors() {
        let row: Vec<String> = v
            .iter()
            .flat_map(|z| [format!("{:e}", z.re), format!("{:e}", z.im)])
            .collect();
        wr.write_record(&row)?;
    }
    wr.flush()?;
    Ok(())
}

/// Reads a system written by [`write_csv`]. The ambient dimension is taken
/// from the header, so an empty system round-trips.
pub fn read_csv<R: Read>(r: R, label: &str) -> Result<VectorSystem> {
    let mut rd = csv::Reader::from_reader(r);
    let width = rd.headers()?.len();
    if width == 0 || width % 2 != 0 {
        return Err(FrameError::Parse(format!(
            "expected an even, positive number of columns, got {width}"
        )));
    }
    let dim = width / 2;
    let mut vectors = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let nums: Vec<f64> = rec
            .iter()
            .map(|s| s.trim().parse::<f64>().map_err(|e| FrameError::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<_>>()?;
        if nums.len() != width {
            return Err(FrameError::Parse(format!(
                "row has {} fields, header has {width}",
                nums.len()
            )));
        }
        vectors.push(CVector::from_iterator(
            dim,
            nums.chunks(2).map(|p| Complex64::new(p[0], p[1])),
        ));
    }
    VectorSystem::new(dim, vectors, label)
}
