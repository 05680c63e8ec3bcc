//! Analysis reports for a single state.

use geosteer::criteria::{evaluate_all, Criterion, CriterionVerdict};
use geosteer::{pauli_expansion, svd3, DensityMatrix4, SchmidtForm};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub label: String,
    pub tensor: [[f64; 4]; 4],
    pub schmidt: SchmidtForm,
    pub norm_sq: f64,
    pub verdicts: [CriterionVerdict; 4],
    pub summary: String,
}

impl AnalysisReport {
    pub fn analyze(state: &DensityMatrix4, label: impl Into<String>) -> Result<Self, CliError> {
        let tensor = pauli_expansion(state)?;
        let schmidt = svd3(&tensor.block())?;
        let norm_sq = tensor.norm_sq();
        let verdicts = evaluate_all(&schmidt, norm_sq);
        Ok(Self { label: label.into(), tensor: *tensor.full(), schmidt, norm_sq, summary: summary(&verdicts), verdicts })
    }

    pub fn verdict(&self, criterion: Criterion) -> &CriterionVerdict {
        self.verdicts.iter().find(|v| v.criterion == criterion).expect("all criteria present")
    }

    /// Recomputes the verdicts from the stored tensor.
    pub fn is_consistent(&self) -> bool {
        let mut block = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                block[i][j] = self.tensor[i + 1][j + 1];
            }
        }
        let norm_sq: f64 = block.iter().flatten().map(|t| t * t).sum();
        match svd3(&block) {
            Ok(schmidt) => {
                schmidt == self.schmidt && norm_sq == self.norm_sq && evaluate_all(&schmidt, norm_sq) == self.verdicts
            }
            Err(_) => false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn summary(verdicts: &[CriterionVerdict; 4]) -> String {
    verdicts
        .iter()
        .map(|v| format!("{}: {} (value {:.6}, bound {:.6})", v.criterion, v.status(), v.lhs_value, v.rhs_bound))
        .collect::<Vec<_>>()
        .join("; ")
}
