//! Bloch vectors: general (possibly mixed) qubit states and unit
//! measurement directions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Vec3};

const NORM_TOL: f64 = 1e-12;

/// Bloch vector of a (possibly mixed) qubit state, `‖r‖ ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ZERO: BlochVector = BlochVector { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !(norm <= 1.0 + NORM_TOL) {
            return Err(Error::InvalidBlochVector { x, y, z, norm, expected: "<= 1" });
        }
        Ok(Self { x, y, z })
    }

    pub fn to_array(self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.to_array())
    }
}

impl From<Direction> for BlochVector {
    fn from(d: Direction) -> Self {
        let [x, y, z] = d.0;
        BlochVector { x, y, z }
    }
}

/// Unit vector on the Bloch sphere: a projective measurement setting or a
/// pure hidden state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct Direction(Vec3);

impl Direction {
    pub const X: Direction = Direction([1.0, 0.0, 0.0]);
    pub const Y: Direction = Direction([0.0, 1.0, 0.0]);
    pub const Z: Direction = Direction([0.0, 0.0, 1.0]);

    /// Accepts vectors whose norm is 1 within `1e-12`.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !((norm - 1.0).abs() <= NORM_TOL) {
            return Err(Error::InvalidBlochVector { x, y, z, norm, expected: "= 1" });
        }
        Ok(Self([x, y, z]))
    }

    /// Rescales any nonzero finite vector onto the sphere.
    pub fn normalize(v: Vec3) -> Result<Self> {
        let norm = linalg::norm(&v);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidBlochVector { x: v[0], y: v[1], z: v[2], norm, expected: "nonzero" });
        }
        Ok(Self(linalg::scale(&v, 1.0 / norm)))
    }

    /// Polar angle `theta` from +z, azimuth `phi` from +x.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self([st * cp, st * sp, ct])
    }

    /// Caller guarantees `v` is unit length.
    pub(crate) fn from_unit_unchecked(v: Vec3) -> Self {
        debug_assert!((linalg::norm(&v) - 1.0).abs() <= 1e-10);
        Self(v)
    }

    pub fn as_array(&self) -> &Vec3 {
        &self.0
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }

    pub fn y(&self) -> f64 {
        self.0[1]
    }

    pub fn z(&self) -> f64 {
        self.0[2]
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        linalg::dot(&self.0, &other.0)
    }

    pub fn neg(&self) -> Self {
        Self([-self.0[0], -self.0[1], -self.0[2]])
    }

    /// Two unit vectors completing `self` to a right-handed orthonormal frame.
    pub fn orthonormal_frame(&self) -> (Vec3, Vec3) {
        let a = self.0;
        // Cross with the coordinate axis least aligned with `a`.
        let pick = if a[0].abs() <= a[1].abs() && a[0].abs() <= a[2].abs() {
            [1.0, 0.0, 0.0]
        } else if a[1].abs() <= a[2].abs() {
            [0.0, 1.0, 0.0]
        } else {
            [0.0, 0.0, 1.0]
        };
        let e1 = linalg::cross(&pick, &a);
        let e1 = linalg::scale(&e1, 1.0 / linalg::norm(&e1));
        let e2 = linalg::cross(&a, &e1);
        (e1, e2)
    }
}

impl TryFrom<[f64; 3]> for Direction {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        Direction::new(v[0], v[1], v[2])
    }
}

impl From<Direction> for [f64; 3] {
    fn from(d: Direction) -> Self {
        d.0
    }
}
