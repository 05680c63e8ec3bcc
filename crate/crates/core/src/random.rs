//! Seedable generators for random test inputs: states, settings, local
//! rotations.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::bloch::Direction;
use crate::linalg::Mat3;
use crate::state::{su2_rotation, DensityMatrix4, Matrix2, Matrix4};

/// Uniform point on the unit sphere.
pub fn direction<R: Rng + ?Sized>(rng: &mut R) -> Direction {
    loop {
        let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
        if let Ok(d) = Direction::normalize(v) {
            return d;
        }
    }
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Random state `G G† / Tr(G G†)` with a Ginibre `4×k` factor; the rank `k`
/// is drawn uniformly from `1..=4`, so pure and full-rank states both occur.
pub fn state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix4 {
    let rank = rng.random_range(1..=4usize);
    let g: Vec<[Complex64; 4]> = (0..rank)
        .map(|_| [gaussian_complex(rng), gaussian_complex(rng), gaussian_complex(rng), gaussian_complex(rng)])
        .collect();
    let mut m: Matrix4 = [[Complex64::new(0.0, 0.0); 4]; 4];
    for col in &g {
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] += col[i] * col[j].conj();
            }
        }
    }
    let trace: f64 = (0..4).map(|i| m[i][i].re).sum();
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x /= trace;
        }
    }
    // Enforce exact Hermiticity lost to rounding.
    for i in 0..4 {
        m[i][i].im = 0.0;
        for j in (i + 1)..4 {
            m[j][i] = m[i][j].conj();
        }
    }
    DensityMatrix4::new(m).expect("Ginibre construction yields a valid state")
}

/// Haar-random SU(2) element.
pub fn local_unitary<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    let axis = direction(rng);
    // Haar measure on SU(2) has rotation-angle density ∝ sin²(θ/2).
    let angle = loop {
        let t = rng.random_range(0.0..std::f64::consts::TAU);
        if rng.random::<f64>() <= (t / 2.0).sin().powi(2) {
            break t;
        }
    };
    su2_rotation(&axis, angle)
}

/// 3×3 matrix with entries uniform on `[-1, 1]`.
pub fn matrix3<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    let mut m = [[0.0; 3]; 3];
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x = rng.random_range(-1.0..=1.0);
        }
    }
    m
}

/// Flat (Dirichlet(1,…,1)) sample from the probability simplex.
pub fn simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(rand_distr::Exp1)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}
