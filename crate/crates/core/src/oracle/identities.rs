//! Quadrature checks of the scalar-product identities on `L²(S² × S²)`
//! behind the steering bound, and the bound itself for finite models.

use std::f64::consts::PI;

use rand::Rng;

use crate::bloch::Direction;
use crate::linalg::{self, CompensatedSum, Mat3, Vec3};
use crate::random;
use crate::error::Result;
use crate::svd::{svd3, SchmidtForm};
use crate::tensor::CorrelationTensor;

use super::grid::SphereGrid;
use super::model::{eval_ns_correlation, HiddenStateModel};

/// Relative slack allowed on top of the steering bound.
pub const NS_RELATIVE_TOL: f64 = 1e-6;
const NS_ABSOLUTE_TOL: f64 = 1e-12;

/// `∫ n_k n_l dΩ = (4π/3) δ_kl`.
pub const ORTHOGONALITY_CONSTANT: f64 = 4.0 * PI / 3.0;

/// Largest deviation of `∫ n_k n_l dΩ` from `(4π/3) δ_kl` over `k, l`.
pub fn verify_orthogonality(grid: &SphereGrid) -> f64 {
    let mut defect: f64 = 0.0;
    for k in 0..3 {
        for l in 0..3 {
            let q = grid.integrate(|n| n.as_array()[k] * n.as_array()[l]);
            let want = if k == l { ORTHOGONALITY_CONSTANT } else { 0.0 };
            defect = defect.max((q - want).abs());
        }
    }
    defect
}

/// Same defect estimated by uniform Monte Carlo sampling.
pub fn monte_carlo_orthogonality<R: Rng + ?Sized>(samples: usize, rng: &mut R) -> f64 {
    let mut acc = [[CompensatedSum::new(); 3]; 3];
    for _ in 0..samples {
        let n = random::direction(rng);
        for k in 0..3 {
            for l in 0..3 {
                acc[k][l].add(n.as_array()[k] * n.as_array()[l]);
            }
        }
    }
    let scale = 4.0 * PI / samples as f64;
    let mut defect: f64 = 0.0;
    for k in 0..3 {
        for l in 0..3 {
            let want = if k == l { ORTHOGONALITY_CONSTANT } else { 0.0 };
            defect = defect.max((acc[k][l].value() * scale - want).abs());
        }
    }
    defect
}

/// `(f, g) = ∬ f(m, n) g(m, n) dΩ(m) dΩ(n)` by product quadrature.
pub fn inner_product<F, G>(f: F, g: G, grid: &SphereGrid) -> f64
where
    F: Fn(&Direction, &Direction) -> f64,
    G: Fn(&Direction, &Direction) -> f64,
{
    let mut acc = CompensatedSum::new();
    for (m, wm) in grid.nodes() {
        for (n, wn) in grid.nodes() {
            acc.add(wm * wn * f(m, n) * g(m, n));
        }
    }
    acc.value()
}

/// `(E_Q, E_Q)` evaluated numerically.
pub fn norm_eq_numeric(tensor: &CorrelationTensor, grid: &SphereGrid) -> f64 {
    let e = |m: &Direction, n: &Direction| tensor.correlation(m, n);
    inner_product(e, e, grid)
}

/// `(E_Q, E_Q) = (16π²/9) ‖T‖²`.
pub fn norm_eq_analytic(tensor: &CorrelationTensor) -> f64 {
    16.0 * PI * PI / 9.0 * tensor.norm_sq()
}

/// Steering bound `(8π²/3) T1` on `(E_Q, E_NS)`.
pub fn ns_bound(schmidt: &SchmidtForm) -> f64 {
    8.0 * PI * PI / 3.0 * schmidt.t1()
}

/// Local-causality bound `(2π)² T1` on `|(E_Q, E_LHV)|`.
pub fn lhv_bound(schmidt: &SchmidtForm) -> f64 {
    4.0 * PI * PI * schmidt.t1()
}

/// `∫ (m·T n)(n·λ) dΩ(n)` by quadrature; equals `(4π/3) m·Tλ`.
pub fn partial_integral(block: &Mat3, m: &Vec3, lambda: &Vec3, grid: &SphereGrid) -> f64 {
    grid.integrate(|n| linalg::bilinear(m, block, n.as_array()) * linalg::dot(n.as_array(), lambda))
}

/// `∫ (T n)(n·λ) dΩ(n)`, the vector that pairs with `m` in the partial
/// integral.
fn bob_moment(block: &Mat3, lambda: &Direction, grid: &SphereGrid) -> Vec3 {
    grid.integrate_vec(|n| linalg::scale(&linalg::mat_vec(block, n.as_array()), n.dot(lambda)))
}

/// `(E_Q, E_NS)` as an iterated integral: Bob's sphere on `grid`, Alice's
/// sphere per component on a copy of `grid` whose polar axis and panel
/// edges follow the response's kinks (the plain grid for opaque responses).
pub fn ns_inner_product(tensor: &CorrelationTensor, model: &HiddenStateModel, grid: &SphereGrid) -> f64 {
    let block = tensor.block();
    let mut total = CompensatedSum::new();
    for c in model.components() {
        let moment = bob_moment(&block, &c.hidden_state, grid);
        let alice_grid = match c.response.kinks() {
            Some((axis, cuts)) => SphereGrid::with_panels(grid.n_theta(), grid.n_phi(), &cuts).rotated_to(&axis),
            None => grid.clone(),
        };
        let inner = alice_grid.integrate(|m| c.response.value(m) * linalg::dot(m.as_array(), &moment));
        total.add(c.weight * inner);
    }
    total.value()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NsCheck {
    pub lhs: f64,
    pub bound: f64,
    pub holds: bool,
}

impl NsCheck {
    pub fn ratio(&self) -> f64 {
        self.lhs / self.bound
    }
}

/// Evaluates `(E_Q, E_NS) ≤ (8π²/3) T1` for one model.
pub fn verify_ns_inequality(tensor: &CorrelationTensor, model: &HiddenStateModel, grid: &SphereGrid) -> Result<NsCheck> {
    let lhs = ns_inner_product(tensor, model, grid);
    let bound = ns_bound(&svd3(&tensor.block())?);
    Ok(NsCheck { lhs, bound, holds: lhs <= bound + NS_RELATIVE_TOL * bound + NS_ABSOLUTE_TOL })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_err: f64,
}

/// Plain Monte Carlo estimate of `(E_Q, E_NS)` with independent uniform
/// `(m, n)` pairs.
pub fn monte_carlo_ns_inner_product<R: Rng + ?Sized>(
    tensor: &CorrelationTensor,
    model: &HiddenStateModel,
    samples: usize,
    rng: &mut R,
) -> McEstimate {
    let mut sum = CompensatedSum::new();
    let mut sum_sq = CompensatedSum::new();
    for _ in 0..samples {
        let m = random::direction(rng);
        let n = random::direction(rng);
        let x = tensor.correlation(&m, &n) * eval_ns_correlation(model, &m, &n);
        sum.add(x);
        sum_sq.add(x * x);
    }
    let k = samples as f64;
    let mean = sum.value() / k;
    let var = (sum_sq.value() / k - mean * mean).max(0.0) * k / (k - 1.0);
    let vol = (4.0 * PI) * (4.0 * PI);
    McEstimate { mean: vol * mean, std_err: vol * (var / k).sqrt() }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsCosIntegral {
    /// `∫ |cos θ| dΩ`, exactly `2π`.
    pub integral: f64,
    /// Largest norm of a response's projection onto `span{m₁, m₂, m₃}`:
    /// `√(3/4π) · ∫|cos θ| dΩ = √(3π)`.
    pub projection_norm: f64,
}

/// `∫ |cos θ| dΩ` about the grid's polar axis. Exact only on grids split
/// at the equator.
pub fn abs_cos_integral(grid: &SphereGrid) -> AbsCosIntegral {
    let axis = *grid.axis();
    let integral = grid.integrate(|m| m.dot(&axis).abs());
    AbsCosIntegral { integral, projection_norm: (3.0 / (4.0 * PI)).sqrt() * integral }
}
