//! Deterministic Jacobi decompositions for small dense matrices.
//!
//! [`svd3`] is a one-sided (Hestenes) Jacobi SVD of a 3×3 real matrix with a
//! fixed rotation order and sign convention, so identical inputs always give
//! bit-identical factors. [`symmetric_eigenvalues`] is the two-sided cyclic
//! Jacobi eigenvalue iteration used for positivity checks.

use serde::{Deserialize, Serialize};

use crate::bloch::Direction;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Vec3};

pub const MAX_SWEEPS: usize = 100;
/// Columns `a_p`, `a_q` count as orthogonal once `|a_p·a_q| ≤ tol·‖a_p‖‖a_q‖`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-15;
/// Singular values below this fraction of `T1` get their left vector from
/// orthogonal completion instead of normalizing a noise-level column.
const RANK_TOL: f64 = 1e-14;

/// `T = Uᵀ · diag(σ) · V` with `σ₀ ≥ σ₁ ≥ σ₂ ≥ 0`.
///
/// Row `k` of `u` (resp. `v`) is the `k`-th left (resp. right) singular
/// vector, so `T1 = u[0]·T v[0]` is the maximal correlation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchmidtForm {
    pub u: Mat3,
    pub sigma: Vec3,
    pub v: Mat3,
}

impl SchmidtForm {
    pub fn t1(&self) -> f64 {
        self.sigma[0]
    }

    pub fn reconstruct(&self) -> Mat3 {
        let left = linalg::mat_mul(&linalg::transpose(&self.u), &linalg::diag(&self.sigma));
        linalg::mat_mul(&left, &self.v)
    }

    /// Alice's measurement direction attaining `T1`.
    pub fn top_left(&self) -> Direction {
        Direction::from_unit_unchecked(self.u[0])
    }

    /// Bob's direction attaining `T1`.
    pub fn top_right(&self) -> Direction {
        Direction::from_unit_unchecked(self.v[0])
    }

    pub fn sum_sq(&self) -> f64 {
        self.sigma.iter().map(|s| s * s).sum()
    }
}

/// Singular value decomposition of a real 3×3 matrix.
///
/// Singular values come out in descending order (stable for ties). Each
/// right singular vector has its largest-magnitude component positive, the
/// lowest index winning ties; the left vector flips along with it.
pub fn svd3(block: &Mat3) -> Result<SchmidtForm> {
    // Work on columns: a[j] is column j of the input.
    let mut a = linalg::transpose(block);
    // q[j] is column j of the accumulated right rotation Q, with T·Q = A.
    let mut q = linalg::IDENTITY3;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for (p, r) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let alpha = linalg::dot(&a[p], &a[p]);
            let beta = linalg::dot(&a[r], &a[r]);
            let gamma = linalg::dot(&a[p], &a[r]);
            if gamma == 0.0 || gamma.abs() <= OFF_DIAGONAL_TOL * (alpha * beta).sqrt() {
                continue;
            }
            rotated = true;
            let zeta = (beta - alpha) / (2.0 * gamma);
            let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = c * t;
            rotate_pair(&mut a, p, r, c, s);
            rotate_pair(&mut q, p, r, c, s);
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let norms = [linalg::norm(&a[0]), linalg::norm(&a[1]), linalg::norm(&a[2])];
    let mut order = [0usize, 1, 2];
    // Stable sort keeps index order among equal singular values.
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let sigma = [norms[order[0]], norms[order[1]], norms[order[2]]];
    let mut v = [q[order[0]], q[order[1]], q[order[2]]];
    let mut u = [[0.0; 3]; 3];
    let cutoff = sigma[0] * RANK_TOL;
    let mut rank = 0;
    for k in 0..3 {
        if sigma[k] > cutoff && sigma[k] > 0.0 {
            u[k] = linalg::scale(&a[order[k]], 1.0 / sigma[k]);
            rank += 1;
        } else {
            break;
        }
    }
    complete_basis(&mut u, rank);

    for k in 0..3 {
        let lead = v[k]
            .iter()
            .copied()
            .fold(0.0f64, |best, x| if x.abs() > best.abs() { x } else { best });
        if lead < 0.0 {
            v[k] = linalg::scale(&v[k], -1.0);
            u[k] = linalg::scale(&u[k], -1.0);
        }
    }

    Ok(SchmidtForm { u, sigma, v })
}

fn rotate_pair(cols: &mut Mat3, p: usize, r: usize, c: f64, s: f64) {
    for i in 0..3 {
        let xp = cols[p][i];
        let xr = cols[r][i];
        cols[p][i] = c * xp - s * xr;
        cols[r][i] = s * xp + c * xr;
    }
}

/// Fills rows `rank..3` of `u` so that the rows form an orthonormal basis.
fn complete_basis(u: &mut Mat3, rank: usize) {
    match rank {
        0 => *u = linalg::IDENTITY3,
        1 => {
            let (e1, e2) = Direction::from_unit_unchecked(u[0]).orthonormal_frame();
            u[1] = e1;
            u[2] = e2;
        }
        2 => u[2] = linalg::cross(&u[0], &u[1]),
        _ => {}
    }
}

/// Eigenvalues of a real symmetric `N×N` matrix in ascending order, by
/// cyclic two-sided Jacobi rotations.
pub fn symmetric_eigenvalues<const N: usize>(mut a: [[f64; N]; N]) -> Result<[f64; N]> {
    let frob = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = OFF_DIAGONAL_TOL * frob;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..N {
            for r in (p + 1)..N {
                let apr = a[p][r];
                if apr.abs() <= threshold || apr == 0.0 {
                    continue;
                }
                rotated = true;
                let theta = (a[r][r] - a[p][p]) / (2.0 * apr);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                a[p][p] -= t * apr;
                a[r][r] += t * apr;
                a[p][r] = 0.0;
                a[r][p] = 0.0;
                for k in 0..N {
                    if k == p || k == r {
                        continue;
                    }
                    let akp = a[k][p];
                    let akr = a[k][r];
                    a[k][p] = c * akp - s * akr;
                    a[p][k] = a[k][p];
                    a[k][r] = c * akr + s * akp;
                    a[r][k] = a[k][r];
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }
    let mut eig = [0.0; N];
    for i in 0..N {
        eig[i] = a[i][i];
    }
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}
