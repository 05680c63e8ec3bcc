//! Maximum of the two-setting CHSH expression over non-steering
//! correlations with a single pure hidden state:
//!
//! `I(a₁) (b₁ + b₂)·λ + I(a₂) (b₁ − b₂)·λ`, `I(aᵢ) ∈ {±1}`,
//!
//! maximized over unit `λ, b₁, b₂`. The optimum is 2.

use crate::bloch::Direction;
use crate::linalg::{self, Vec3};

use super::optimize::nelder_mead;

/// Angular spacing of the coarse search grid.
pub const COARSE_STEP_DEG: f64 = 15.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshMaximum {
    pub value: f64,
    pub lambda: Direction,
    pub b1: Direction,
    pub b2: Direction,
    pub responses: (f64, f64),
}

pub fn chsh_ns_value(lambda: &Direction, b1: &Direction, b2: &Direction, i1: f64, i2: f64) -> f64 {
    let plus: Vec3 = [0, 1, 2].map(|k| b1.as_array()[k] + b2.as_array()[k]);
    let minus: Vec3 = [0, 1, 2].map(|k| b1.as_array()[k] - b2.as_array()[k]);
    i1 * linalg::dot(&plus, lambda.as_array()) + i2 * linalg::dot(&minus, lambda.as_array())
}

fn coarse_directions() -> Vec<(f64, f64)> {
    let step = COARSE_STEP_DEG.to_radians();
    let n_theta = (180.0 / COARSE_STEP_DEG).round() as usize;
    let n_phi = (360.0 / COARSE_STEP_DEG).round() as usize;
    let mut out = vec![(0.0, 0.0)];
    for i in 1..n_theta {
        for j in 0..n_phi {
            out.push((i as f64 * step, j as f64 * step));
        }
    }
    out.push((std::f64::consts::PI, 0.0));
    out
}

/// Deterministic coarse grid over all three directions and the four sign
/// choices, then Nelder–Mead refinement of the best coarse point.
pub fn chsh_ns_max() -> ChshMaximum {
    let grid = coarse_directions();
    let dirs: Vec<Direction> = grid.iter().map(|&(t, p)| Direction::from_angles(t, p)).collect();

    // For fixed λ and signs the objective separates: b₁·(i₁+i₂)λ + b₂·(i₁−i₂)λ.
    let best_along = |c: &Vec3| -> (usize, f64) {
        dirs.iter()
            .enumerate()
            .map(|(k, d)| (k, linalg::dot(d.as_array(), c)))
            .fold((0, f64::NEG_INFINITY), |best, x| if x.1 > best.1 { x } else { best })
    };

    let signs = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];
    let mut best = (f64::NEG_INFINITY, 0usize, 0usize, 0usize, (1.0, 1.0));
    for (li, lambda) in dirs.iter().enumerate() {
        for &(i1, i2) in &signs {
            let c1 = linalg::scale(lambda.as_array(), i1 + i2);
            let c2 = linalg::scale(lambda.as_array(), i1 - i2);
            let (k1, v1) = best_along(&c1);
            let (k2, v2) = best_along(&c2);
            if v1 + v2 > best.0 {
                best = (v1 + v2, li, k1, k2, (i1, i2));
            }
        }
    }

    let (_, li, k1, k2, (i1, i2)) = best;
    let x0 = [grid[li].0, grid[li].1, grid[k1].0, grid[k1].1, grid[k2].0, grid[k2].1];
    let objective = |x: &[f64]| {
        let l = Direction::from_angles(x[0], x[1]);
        let b1 = Direction::from_angles(x[2], x[3]);
        let b2 = Direction::from_angles(x[4], x[5]);
        -chsh_ns_value(&l, &b1, &b2, i1, i2)
    };
    let (x, fx) = nelder_mead(objective, &x0, 5f64.to_radians(), 4000, 1e-16);
    let (x, value) = if -fx >= -objective(&x0) { (x, -fx) } else { (x0.to_vec(), -objective(&x0)) };

    ChshMaximum {
        value,
        lambda: Direction::from_angles(x[0], x[1]),
        b1: Direction::from_angles(x[2], x[3]),
        b2: Direction::from_angles(x[4], x[5]),
        responses: (i1, i2),
    }
}
