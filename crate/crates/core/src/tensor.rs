//! Pauli expansion `ρ = ¼ Σ T_{μν} σ_μ ⊗ σ_ν` and the correlation function
//! `E(m, n) = Σ T_ij m_i n_j`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bloch::Direction;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Vec3};
use crate::state::{kron, DensityMatrix4, Matrix4, PAULI};

/// Largest imaginary part of `Tr[ρ σ_μ⊗σ_ν]` accepted before the state is
/// deemed inconsistent.
pub const MAX_IMAGINARY: f64 = 1e-8;

/// Extended correlation tensor `T_{μν}`, `μ, ν ∈ 0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTensor {
    full: [[f64; 4]; 4],
}

impl CorrelationTensor {
    /// Tensor with the given 3×3 block and vanishing local Bloch vectors.
    pub fn from_block(block: &Mat3) -> Self {
        let mut full = [[0.0; 4]; 4];
        full[0][0] = 1.0;
        for i in 0..3 {
            for j in 0..3 {
                full[i + 1][j + 1] = block[i][j];
            }
        }
        Self { full }
    }

    pub fn full(&self) -> &[[f64; 4]; 4] {
        &self.full
    }

    /// `T_ij`, `i, j ∈ 1..=3`.
    pub fn block(&self) -> Mat3 {
        let mut b = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                b[i][j] = self.full[i + 1][j + 1];
            }
        }
        b
    }

    /// Alice's Bloch vector `T_{i0}`.
    pub fn alice_marginal(&self) -> Vec3 {
        [self.full[1][0], self.full[2][0], self.full[3][0]]
    }

    /// Bob's Bloch vector `T_{0j}`.
    pub fn bob_marginal(&self) -> Vec3 {
        [self.full[0][1], self.full[0][2], self.full[0][3]]
    }

    /// `‖T‖² = Σ_{j,k=1..3} T_jk²`.
    pub fn norm_sq(&self) -> f64 {
        self.block().iter().flatten().map(|t| t * t).sum()
    }

    /// `E(m, n) = mᵀ T n`.
    pub fn correlation(&self, m: &Direction, n: &Direction) -> f64 {
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                acc += self.full[i + 1][j + 1] * m.as_array()[i] * n.as_array()[j];
            }
        }
        acc
    }

    /// `¼ Σ T_{μν} σ_μ ⊗ σ_ν`.
    pub fn reconstruct(&self) -> Matrix4 {
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                let coeff = self.full[mu][nu] / 4.0;
                if coeff == 0.0 {
                    continue;
                }
                let p = kron(&PAULI[mu], &PAULI[nu]);
                for i in 0..4 {
                    for j in 0..4 {
                        m[i][j] += p[i][j] * coeff;
                    }
                }
            }
        }
        m
    }
}

/// All sixteen coefficients `T_{μν} = Tr[ρ (σ_μ ⊗ σ_ν)]`.
pub fn pauli_expansion(state: &DensityMatrix4) -> Result<CorrelationTensor> {
    let mut full = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let t = state.trace_with(&kron(&PAULI[mu], &PAULI[nu]));
            if t.im.abs() > MAX_IMAGINARY {
                return Err(Error::NonRealComponent { mu, nu, imag: t.im });
            }
            full[mu][nu] = t.re;
        }
    }
    full[0][0] = 1.0;
    Ok(CorrelationTensor { full })
}

/// `E_Q(m, n) = Σ T_ij m_i n_j`.
pub fn correlation_function(tensor: &CorrelationTensor, m: &Direction, n: &Direction) -> f64 {
    tensor.correlation(m, n)
}

/// `mᵀ T n` on raw vectors, used where settings are quadrature nodes.
#[inline]
pub fn bilinear(block: &Mat3, m: &Vec3, n: &Vec3) -> f64 {
    linalg::bilinear(m, block, n)
}
