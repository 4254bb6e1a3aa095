//! Text format for pure states: a JSON document
//! `{"dims": [3, 3, 3], "amps": [[re, im], ...]}` with amplitudes in
//! canonical lexicographic order.
//!
//! Floats are written in shortest round-trip form, so a write followed by a
//! read reproduces the state bit for bit.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::PureState;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDocument {
    dims: Vec<usize>,
    amps: Vec<[f64; 2]>,
}

pub fn to_string(state: &PureState) -> String {
    let doc = StateDocument {
        dims: state.dims().to_vec(),
        amps: state.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

/// Parses a state document. The amplitudes must already be normalized.
pub fn from_str(text: &str) -> Result<PureState> {
    let doc: StateDocument =
        serde_json::from_str(text).map_err(|e| Error::StateFile(format!("malformed document: {e}")))?;
    let amps = doc.amps.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    PureState::new(doc.dims, amps, false)
}

pub fn read(path: impl AsRef<Path>) -> Result<PureState> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| Error::StateFile(format!("cannot read {}: {e}", path.display())))?;
    from_str(&text)
}

pub fn write(path: impl AsRef<Path>, state: &PureState) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_string(state))
        .map_err(|e| Error::StateFile(format!("cannot write {}: {e}", path.display())))
}
