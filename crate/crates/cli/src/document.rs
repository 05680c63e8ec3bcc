//! On-disk state documents: a 4×4 row-major matrix of `[re, im]` pairs in
//! the basis `|00⟩, |01⟩, |10⟩, |11⟩`.

use std::path::Path;

use geosteer::state::Complex64;
use geosteer::DensityMatrix4;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub matrix: [[[f64; 2]; 4]; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StateDocument {
    pub fn from_state(state: &DensityMatrix4, label: Option<String>) -> Self {
        let mut matrix = [[[0.0; 2]; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let z = state.entries()[i][j];
                matrix[i][j] = [z.re, z.im];
            }
        }
        Self { matrix, label }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("state document: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state document serializes")
    }

    /// Validated density matrix.
    pub fn to_state(&self) -> Result<DensityMatrix4, CliError> {
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let [re, im] = self.matrix[i][j];
                m[i][j] = Complex64::new(re, im);
            }
        }
        Ok(DensityMatrix4::new(m)?)
    }
}
