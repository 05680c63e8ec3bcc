//! Two-qubit density matrices, projective qubit measurements and the
//! conditional states they prepare on Bob's side.
//!
//! Basis order is `|00⟩, |01⟩, |10⟩, |11⟩` with Alice's qubit first.

pub use num_complex::Complex64;

use crate::bloch::{BlochVector, Direction};
use crate::error::{Error, Result, Violation};
use crate::svd::symmetric_eigenvalues;

pub type Matrix2 = [[Complex64; 2]; 2];
pub type Matrix4 = [[Complex64; 4]; 4];

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue still accepted; tomographic estimates are often
/// marginally non-positive.
pub const PSD_TOL: f64 = -1e-9;
/// Outcome probabilities below this have no conditional state.
pub const MIN_BRANCH_PROBABILITY: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `σ_0 = 1, σ_1 = X, σ_2 = Y, σ_3 = Z`.
pub const PAULI: [Matrix2; 4] = [
    [[ONE, ZERO], [ZERO, ONE]],
    [[ZERO, ONE], [ONE, ZERO]],
    [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]],
    [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]],
];

/// Measurement result of a `±1`-valued qubit observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }
}

/// Validated two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4 {
    entries: Matrix4,
}

impl DensityMatrix4 {
    /// Checks Hermiticity, unit trace and positivity, reporting every
    /// violated invariant.
    pub fn new(entries: Matrix4) -> Result<Self> {
        let mut violations = Vec::new();

        let mut herm_dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let d = (entries[i][j] - entries[j][i].conj()).norm();
                herm_dev = if d.is_nan() { f64::NAN } else { herm_dev.max(d) };
            }
        }
        if !(herm_dev <= HERMITIAN_TOL) {
            violations.push(Violation::NotHermitian(herm_dev));
        }

        let trace: Complex64 = (0..4).map(|i| entries[i][i]).sum();
        if !((trace - ONE).norm() <= TRACE_TOL) {
            violations.push(Violation::TraceNotOne(trace.re));
        }

        if herm_dev.is_finite() {
            let min_eig = min_eigenvalue(&entries)?;
            if !(min_eig >= PSD_TOL) {
                violations.push(Violation::NotPositive(min_eig));
            }
        }

        if violations.is_empty() {
            Ok(Self { entries })
        } else {
            Err(Error::InvalidState(violations))
        }
    }

    /// Callers guarantee validity (e.g. unitary conjugation of a valid state).
    pub(crate) fn from_entries_unchecked(entries: Matrix4) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &Matrix4 {
        &self.entries
    }

    pub fn maximally_mixed() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex64::new(0.25, 0.0);
        }
        Self { entries: m }
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) nonzero vector.
    pub fn pure(psi: [Complex64; 4]) -> Result<Self> {
        let norm_sq: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
        let mut m = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = psi[i] * psi[j].conj() / norm_sq;
            }
        }
        Self::new(m)
    }

    /// `weight·self + (1 − weight)·other`, `weight ∈ [0, 1]`.
    pub fn mix(&self, other: &DensityMatrix4, weight: f64) -> Result<Self> {
        let mut m = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = self.entries[i][j] * weight + other.entries[i][j] * (1.0 - weight);
            }
        }
        Self::new(m)
    }

    /// `(U_A ⊗ U_B) ρ (U_A ⊗ U_B)†` for unitary `U_A`, `U_B`.
    pub fn rotate_local(&self, ua: &Matrix2, ub: &Matrix2) -> Self {
        let u = kron(ua, ub);
        let m = mat_mul4(&mat_mul4(&u, &self.entries), &dagger4(&u));
        Self::from_entries_unchecked(m)
    }

    pub fn trace_with(&self, op: &Matrix4) -> Complex64 {
        let mut acc = ZERO;
        for i in 0..4 {
            for k in 0..4 {
                acc += self.entries[i][k] * op[k][i];
            }
        }
        acc
    }
}

fn min_eigenvalue(m: &Matrix4) -> Result<f64> {
    // H = A + iB  ↦  [[A, −B], [B, A]]; every eigenvalue of H appears twice.
    let mut real = [[0.0; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            let h = (m[i][j] + m[j][i].conj()) * 0.5;
            real[i][j] = h.re;
            real[i + 4][j + 4] = h.re;
            real[i][j + 4] = -h.im;
            real[i + 4][j] = h.im;
        }
    }
    Ok(symmetric_eigenvalues(real)?[0])
}

pub fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn mat_mul4(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut c = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

pub fn dagger4(a: &Matrix4) -> Matrix4 {
    let mut d = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            d[j][i] = a[i][j].conj();
        }
    }
    d
}

/// Partial trace over Alice's qubit.
pub fn trace_alice(m: &Matrix4) -> Matrix2 {
    let mut out = [[ZERO; 2]; 2];
    for k in 0..2 {
        for l in 0..2 {
            out[k][l] = m[k][l] + m[2 + k][2 + l];
        }
    }
    out
}

/// `n·σ`.
pub fn spin_observable(n: &Direction) -> Matrix2 {
    let [x, y, z] = *n.as_array();
    let mut m = [[ZERO; 2]; 2];
    for (c, p) in [x, y, z].into_iter().zip(&PAULI[1..]) {
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] += p[i][j] * c;
            }
        }
    }
    m
}

/// Spectral projector `(1 + r n·σ)/2` of `n·σ` for outcome `r`.
pub fn projector(n: &Direction, outcome: Outcome) -> Matrix2 {
    let obs = spin_observable(n);
    let r = outcome.sign();
    let mut p = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let id = if i == j { ONE } else { ZERO };
            p[i][j] = (id + obs[i][j] * r) * 0.5;
        }
    }
    p
}

/// `P(r1, r2 | a, b) = Tr[ρ Π(r1|a) ⊗ Π(r2|b)]`.
pub fn joint_probability(state: &DensityMatrix4, a: &Direction, b: &Direction, r1: Outcome, r2: Outcome) -> f64 {
    let op = kron(&projector(a, r1), &projector(b, r2));
    state.trace_with(&op).re
}

/// Probability of Alice's outcome `a` along `x` and Bob's normalized
/// conditional state `tr₁[ρ (M_{a|x} ⊗ 1)] / p`.
pub fn conditional_state(state: &DensityMatrix4, x: &Direction, a: Outcome) -> Result<(f64, BlochVector)> {
    let id2 = PAULI[0];
    let m = kron(&projector(x, a), &id2);
    let bob = trace_alice(&mat_mul4(state.entries(), &m));
    let p = (bob[0][0] + bob[1][1]).re;
    if !(p >= MIN_BRANCH_PROBABILITY) {
        return Err(Error::ZeroProbabilityBranch { probability: p });
    }
    let comp = |s: &Matrix2| -> f64 {
        let mut acc = ZERO;
        for i in 0..2 {
            for k in 0..2 {
                acc += bob[i][k] * s[k][i];
            }
        }
        acc.re / p
    };
    let r = [comp(&PAULI[1]), comp(&PAULI[2]), comp(&PAULI[3])];
    let norm = crate::linalg::norm(&r);
    // Rounding can push a pure conditional state a hair past the sphere.
    let r = if norm > 1.0 && norm <= 1.0 + 1e-12 { crate::linalg::scale(&r, 1.0 / norm) } else { r };
    Ok((p, BlochVector::new(r[0], r[1], r[2])?))
}

/// `exp(−i θ/2 n·σ)`.
pub fn su2_rotation(axis: &Direction, angle: f64) -> Matrix2 {
    let (s, c) = (angle / 2.0).sin_cos();
    let obs = spin_observable(axis);
    let mut u = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let id = if i == j { Complex64::new(c, 0.0) } else { ZERO };
            u[i][j] = id - I * obs[i][j] * s;
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn diag4(d: [f64; 4]) -> Matrix4 {
        let mut m = [[ZERO; 4]; 4];
        for i in 0..4 {
            m[i][i] = c(d[i]);
        }
        m
    }

    fn singlet() -> DensityMatrix4 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix4::pure([ZERO, c(s), c(-s), ZERO]).unwrap()
    }

    fn zero_zero() -> DensityMatrix4 {
        DensityMatrix4::new(diag4([1.0, 0.0, 0.0, 0.0])).unwrap()
    }

    #[test]
    fn accepts_valid_states() {
        assert!(DensityMatrix4::new(diag4([0.25; 4])).is_ok());
        let s = singlet();
        assert!((s.entries()[1][2].re + 0.5).abs() < 1e-15);
    }

    #[test]
    fn reports_each_violation() {
        match DensityMatrix4::new(diag4([2.0, -1.0, 0.0, 0.0])) {
            Err(Error::InvalidState(v)) => {
                assert_eq!(v.len(), 1);
                assert!(matches!(v[0], Violation::NotPositive(e) if (e + 1.0).abs() < 1e-12));
            }
            other => panic!("{other:?}"),
        }
        match DensityMatrix4::new(diag4([2.0, -1.0, 1.0, 0.0])) {
            Err(Error::InvalidState(v)) => {
                assert!(matches!(v[0], Violation::TraceNotOne(t) if t == 2.0));
                assert!(matches!(v[1], Violation::NotPositive(_)));
            }
            other => panic!("{other:?}"),
        }
        let mut m = diag4([0.25; 4]);
        m[0][1] = Complex64::new(0.0, 0.1);
        match DensityMatrix4::new(m) {
            Err(Error::InvalidState(v)) => assert!(matches!(v[0], Violation::NotHermitian(d) if (d - 0.1).abs() < 1e-15)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn psd_tolerance_admits_tiny_negative_eigenvalues() {
        assert!(DensityMatrix4::new(diag4([0.5 + 5e-10, 0.5, 0.0, -5e-10])).is_ok());
        assert!(DensityMatrix4::new(diag4([0.5 + 5e-9, 0.5, 0.0, -5e-9])).is_err());
    }

    #[test]
    fn nan_entries_are_rejected() {
        let mut m = diag4([0.25; 4]);
        m[2][3] = c(f64::NAN);
        assert!(DensityMatrix4::new(m).is_err());
    }

    #[test]
    fn singlet_probabilities() {
        let s = singlet();
        let z = Direction::Z;
        assert!(joint_probability(&s, &z, &z, Outcome::Plus, Outcome::Plus).abs() < 1e-15);
        assert!((joint_probability(&s, &z, &z, Outcome::Plus, Outcome::Minus) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn white_noise_is_uniform() {
        let mm = DensityMatrix4::maximally_mixed();
        let a = Direction::from_angles(0.3, 1.9);
        let b = Direction::from_angles(2.2, -0.4);
        for r1 in Outcome::BOTH {
            for r2 in Outcome::BOTH {
                assert!((joint_probability(&mm, &a, &b, r1, r2) - 0.25).abs() < 1e-15);
            }
        }
        let (p, bob) = conditional_state(&mm, &a, Outcome::Minus).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        assert!(bob.norm() < 1e-15);
    }

    #[test]
    fn singlet_steers_to_opposite_pole() {
        let (p, bob) = conditional_state(&singlet(), &Direction::Z, Outcome::Plus).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        assert!(bob.x.abs() < 1e-15 && bob.y.abs() < 1e-15 && (bob.z + 1.0).abs() < 1e-15);
    }

    #[test]
    fn impossible_outcome_has_no_conditional_state() {
        let err = conditional_state(&zero_zero(), &Direction::Z, Outcome::Minus).unwrap_err();
        assert!(matches!(err, Error::ZeroProbabilityBranch { .. }));
    }

    #[test]
    fn su2_rotation_is_unitary() {
        let u = su2_rotation(&Direction::from_angles(0.7, 2.0), 1.3);
        for i in 0..2 {
            for j in 0..2 {
                let e: Complex64 = (0..2).map(|k| u[i][k] * u[j][k].conj()).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((e - c(want)).norm() < 1e-15);
            }
        }
    }
}
