//! Product quadrature on the unit sphere: Gauss–Legendre in `cos θ`
//! (optionally split into panels) times the trapezoid rule in `φ`.
//!
//! With `n_theta` nodes per panel and `n_phi ≥ 2·n_theta` azimuthal points
//! a single-panel grid integrates every polynomial in `(n₁, n₂, n₃)` of
//! total degree `≤ 2·n_theta − 1` exactly. Panels let integrands with a
//! kink along a latitude (like `|cos θ|` or `sign(m·w)` with the polar axis
//! along `w`) keep that order on each side of the kink.

use std::f64::consts::{PI, TAU};

use crate::bloch::Direction;
use crate::linalg::{self, CompensatedSum, Vec3};

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending nodes.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess, refined by Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Weighted nodes on the unit sphere; weights are solid angles summing to
/// `4π`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid {
    nodes: Vec<(Direction, f64)>,
    n_theta: usize,
    n_phi: usize,
    /// Panel edges in `cos θ`, relative to the polar axis.
    breakpoints: Vec<f64>,
    axis: Direction,
}

impl SphereGrid {
    /// Single Gauss–Legendre panel on `cos θ ∈ [-1, 1]`.
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        Self::with_panels(n_theta, n_phi, &[])
    }

    /// Two panels split at the equator.
    pub fn split(n_theta: usize, n_phi: usize) -> Self {
        Self::with_panels(n_theta, n_phi, &[0.0])
    }

    /// Panels on `cos θ` separated at `cuts` (each in `(-1, 1)`), with
    /// `n_theta` nodes per panel.
    pub fn with_panels(n_theta: usize, n_phi: usize, cuts: &[f64]) -> Self {
        assert!(n_theta >= 1 && n_phi >= 1);
        let mut edges = vec![-1.0];
        let mut inner: Vec<f64> = cuts.iter().copied().filter(|c| *c > -1.0 && *c < 1.0).collect();
        inner.sort_by(f64::total_cmp);
        inner.dedup();
        edges.extend(inner);
        edges.push(1.0);

        let (gx, gw) = gauss_legendre(n_theta);
        let dphi = TAU / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_theta * n_phi * (edges.len() - 1));
        for panel in edges.windows(2) {
            let (a, b) = (panel[0], panel[1]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (x, w) in gx.iter().zip(&gw) {
                let ct = mid + half * x;
                let st = (1.0 - ct * ct).max(0.0).sqrt();
                for k in 0..n_phi {
                    let (sp, cp) = (k as f64 * dphi).sin_cos();
                    let d = Direction::from_unit_unchecked([st * cp, st * sp, ct]);
                    nodes.push((d, w * half * dphi));
                }
            }
        }
        Self { nodes, n_theta, n_phi, breakpoints: edges, axis: Direction::Z }
    }

    /// The same grid with its polar axis carried onto `axis`.
    pub fn rotated_to(&self, axis: &Direction) -> Self {
        let (e1, e2) = axis.orthonormal_frame();
        let a = *axis.as_array();
        let nodes = self
            .nodes
            .iter()
            .map(|(d, w)| {
                let [x, y, z] = *d.as_array();
                let r: Vec3 = [0, 1, 2].map(|i| x * e1[i] + y * e2[i] + z * a[i]);
                (Direction::from_unit_unchecked(r), *w)
            })
            .collect();
        Self { nodes, axis: *axis, breakpoints: self.breakpoints.clone(), ..*self }
    }

    #[doc(hidden)]
    /// Fault-injection hook for negative controls: scales one weight.
    pub fn with_scaled_weight(mut self, index: usize, factor: f64) -> Self {
        self.nodes[index].1 *= factor;
        self
    }

    pub fn nodes(&self) -> &[(Direction, f64)] {
        &self.nodes
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn axis(&self) -> &Direction {
        &self.axis
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        linalg::compensated_sum(self.nodes.iter().map(|(_, w)| *w))
    }

    /// `∫ f dΩ`.
    pub fn integrate<F: Fn(&Direction) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().map(|(d, w)| w * f(d)).collect::<CompensatedSum>().value()
    }

    /// `∫ f dΩ` for a vector-valued integrand.
    pub fn integrate_vec<F: Fn(&Direction) -> Vec3>(&self, f: F) -> Vec3 {
        let mut acc = [CompensatedSum::new(); 3];
        for (d, w) in &self.nodes {
            let v = f(d);
            for i in 0..3 {
                acc[i].add(w * v[i]);
            }
        }
        acc.map(|a| a.value())
    }

    /// Same integral with the node list cut into `parts` contiguous chunks
    /// summed independently and then merged.
    pub fn integrate_partitioned<F: Fn(&Direction) -> f64>(&self, f: F, parts: usize) -> f64 {
        let chunk = self.nodes.len().div_ceil(parts.max(1)).max(1);
        let mut total = CompensatedSum::new();
        for part in self.nodes.chunks(chunk) {
            let s: CompensatedSum = part.iter().map(|(d, w)| w * f(d)).collect();
            total.merge(&s);
        }
        total.value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rules_integrate_monomials() {
        for n in 1..=12 {
            let (x, w) = gauss_legendre(n);
            for deg in 0..(2 * n) {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-14, "n={n} deg={deg} q={q}");
            }
        }
    }

    #[test]
    fn two_point_rule() {
        let (x, w) = gauss_legendre(2);
        let r = 1.0 / 3f64.sqrt();
        assert!((x[0] + r).abs() < 1e-15 && (x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn weights_sum_to_full_solid_angle() {
        for g in [SphereGrid::new(2, 4), SphereGrid::split(8, 16), SphereGrid::with_panels(5, 9, &[-0.3, 0.6])] {
            assert!((g.total_weight() - 4.0 * PI).abs() <= 1e-12);
        }
    }

    #[test]
    fn degree_exactness_on_sphere() {
        // ∫ z^4 dΩ = 4π/5, ∫ x²y² dΩ = 4π/15.
        let g = SphereGrid::new(3, 6);
        assert!((g.integrate(|d| d.z().powi(4)) - 4.0 * PI / 5.0).abs() < 1e-13);
        assert!((g.integrate(|d| d.x().powi(2) * d.y().powi(2)) - 4.0 * PI / 15.0).abs() < 1e-13);
        assert!(g.integrate(|d| d.x() * d.y() * d.z()).abs() < 1e-14);
    }

    #[test]
    fn rotation_preserves_weights_and_exactness() {
        let axis = Direction::from_angles(1.0, 0.4);
        let g = SphereGrid::split(4, 8).rotated_to(&axis);
        assert!((g.total_weight() - 4.0 * PI).abs() <= 1e-12);
        assert!((g.integrate(|d| d.dot(&axis).abs()) - 2.0 * PI).abs() < 1e-13);
        assert!((g.integrate(|d| d.x() * d.x()) - 4.0 * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn partitioned_sums_agree() {
        let g = SphereGrid::new(10, 20);
        let f = |d: &Direction| (3.0 * d.x() - d.z()).exp();
        let whole = g.integrate(f);
        for parts in [1, 2, 3, 7, 16] {
            let p = g.integrate_partitioned(f, parts);
            assert!((p - whole).abs() <= 1e-13 * whole.abs(), "parts={parts}");
        }
        assert_eq!(g.integrate_partitioned(f, 4), g.integrate_partitioned(f, 4));
    }
}
