//! JSON curvature files.
//!
//! ```json
//! {"n": 4, "entries": [{"i": 1, "j": 2, "k": 1, "l": 2, "value": 1.0}]}
//! ```
//!
//! Indices are one based. Components not listed are zero unless they follow
//! from a listed one by the symmetries of a curvature tensor.

use std::fs;
use std::path::Path;

use killform_core::CurvatureTensor;
use serde::{Deserialize, Serialize};

use crate::InputError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvatureFile {
    pub n: usize,
    #[serde(default)]
    pub entries: Vec<Entry>,
}

impl CurvatureFile {
    pub fn from_tensor(r: &CurvatureTensor) -> Self {
        CurvatureFile {
            n: r.n(),
            entries: r
                .to_components()
                .into_iter()
                .map(|(i, j, k, l, value)| Entry {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    l: l + 1,
                    value,
                })
                .collect(),
        }
    }

    pub fn to_tensor(&self, max_n: usize) -> Result<CurvatureTensor, InputError> {
        let n = self.n;
        if n < 2 {
            return Err(InputError(format!("n must be at least 2, got {n}")));
        }
        if n > max_n {
            return Err(InputError(format!("dimension {n} exceeds --max-n {max_n}")));
        }
        let mut components = Vec::with_capacity(self.entries.len());
        for (pos, e) in self.entries.iter().enumerate() {
            for index in [e.i, e.j, e.k, e.l] {
                if index == 0 || index > n {
                    return Err(InputError(format!(
                        "entry {pos}: index {index} outside 1..={n}"
                    )));
                }
            }
            if !e.value.is_finite() {
                return Err(InputError(format!("entry {pos}: value is not finite")));
            }
            components.push((e.i - 1, e.j - 1, e.k - 1, e.l - 1, e.value));
        }
        Ok(CurvatureTensor::from_components(n, &components)?)
    }
}

pub fn parse(text: &str, max_n: usize) -> Result<CurvatureTensor, InputError> {
    let file: CurvatureFile = serde_json::from_str(text)
        .map_err(|e| InputError(format!("malformed curvature file: {e}")))?;
    file.to_tensor(max_n)
}

pub fn read(path: &Path, max_n: usize) -> Result<CurvatureTensor, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    parse(&text, max_n).map_err(|InputError(msg)| InputError(format!("{}: {msg}", path.display())))
}
