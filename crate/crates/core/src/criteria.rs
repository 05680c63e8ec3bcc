//! The criteria ladder and critical-noise search along state families.
//!
//! All geometric criteria compare `T1` with a multiple of `‖T‖²`:
//! entanglement `T1 < ‖T‖²`, steering `T1 < (2/3)‖T‖²`, Bell
//! `T1 < (4/9)‖T‖²`. They are sufficient conditions; a negative verdict is
//! inconclusive. Since only singular values enter, the steering verdict
//! cannot tell Alice→Bob from Bob→Alice steering.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::NoiseFamily;
use crate::svd::{svd3, SchmidtForm};
use crate::tensor::pauli_expansion;

/// Margins within this of zero are ties: reported as boundary, never as
/// detection.
pub const TIE_TOL: f64 = 1e-12;
/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_TOL: f64 = 1e-12;
/// Coarse scan resolution used to confirm the detection set is an interval.
const MONOTONICITY_PROBES: usize = 64;

pub const STEERING_COEFF: f64 = 2.0 / 3.0;
pub const BELL_COEFF: f64 = 4.0 / 9.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Criterion {
    GeometricEntanglement,
    GeometricSteering,
    GeometricBell,
    ChshHorodecki,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [
        Criterion::GeometricEntanglement,
        Criterion::GeometricSteering,
        Criterion::GeometricBell,
        Criterion::ChshHorodecki,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            Criterion::GeometricEntanglement => "entanglement",
            Criterion::GeometricSteering => "steering",
            Criterion::GeometricBell => "bell",
            Criterion::ChshHorodecki => "chsh",
        }
    }

    pub fn from_short_name(s: &str) -> Option<Self> {
        Criterion::ALL.into_iter().find(|c| c.short_name() == s)
    }

    pub fn evaluate(self, schmidt: &SchmidtForm, norm_sq: f64) -> CriterionVerdict {
        match self {
            Criterion::GeometricEntanglement => entanglement_criterion(schmidt, norm_sq),
            Criterion::GeometricSteering => steering_criterion(schmidt, norm_sq),
            Criterion::GeometricBell => bell_criterion(schmidt, norm_sq),
            Criterion::ChshHorodecki => chsh_criterion(schmidt),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// Outcome of one criterion on one state.
///
/// `margin` is oriented so that a positive value means detection: for the
/// geometric criteria it is `rhs_bound − lhs_value`, for CHSH it is
/// `lhs_value − rhs_bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub criterion: Criterion,
    pub lhs_value: f64,
    pub rhs_bound: f64,
    pub margin: f64,
    pub detected: bool,
    pub boundary: bool,
}

impl CriterionVerdict {
    fn from_margin(criterion: Criterion, lhs_value: f64, rhs_bound: f64, margin: f64) -> Self {
        Self {
            criterion,
            lhs_value,
            rhs_bound,
            margin,
            detected: margin > TIE_TOL,
            boundary: margin.abs() <= TIE_TOL,
        }
    }

    /// `"detected"`, `"boundary"` or `"inconclusive"`.
    pub fn status(&self) -> &'static str {
        if self.detected {
            "detected"
        } else if self.boundary {
            "boundary"
        } else {
            "inconclusive"
        }
    }
}

fn geometric(criterion: Criterion, schmidt: &SchmidtForm, bound: f64) -> CriterionVerdict {
    let t1 = schmidt.t1();
    CriterionVerdict::from_margin(criterion, t1, bound, bound - t1)
}

/// Steering is proven when `T1 < (2/3)‖T‖²`.
pub fn steering_criterion(schmidt: &SchmidtForm, norm_sq: f64) -> CriterionVerdict {
    geometric(Criterion::GeometricSteering, schmidt, STEERING_COEFF * norm_sq)
}

/// No local hidden variable model exists when `T1 < (4/9)‖T‖²`.
pub fn bell_criterion(schmidt: &SchmidtForm, norm_sq: f64) -> CriterionVerdict {
    geometric(Criterion::GeometricBell, schmidt, BELL_COEFF * norm_sq)
}

/// Entanglement is proven when `T1 < ‖T‖²`.
pub fn entanglement_criterion(schmidt: &SchmidtForm, norm_sq: f64) -> CriterionVerdict {
    geometric(Criterion::GeometricEntanglement, schmidt, norm_sq)
}

/// Two-setting CHSH violation: `T1² + T2² > 1`.
pub fn chsh_criterion(schmidt: &SchmidtForm) -> CriterionVerdict {
    let lhs = schmidt.sigma[0] * schmidt.sigma[0] + schmidt.sigma[1] * schmidt.sigma[1];
    CriterionVerdict::from_margin(Criterion::ChshHorodecki, lhs, 1.0, lhs - 1.0)
}

/// Verdicts for every criterion, in [`Criterion::ALL`] order.
pub fn evaluate_all(schmidt: &SchmidtForm, norm_sq: f64) -> [CriterionVerdict; 4] {
    Criterion::ALL.map(|c| c.evaluate(schmidt, norm_sq))
}

fn verdict_at(family: &dyn NoiseFamily, criterion: Criterion, v: f64) -> Result<CriterionVerdict> {
    let tensor = pauli_expansion(&family.state_at(v)?)?;
    let schmidt = svd3(&tensor.block())?;
    Ok(criterion.evaluate(&schmidt, tensor.norm_sq()))
}

/// Smallest noise parameter `v ∈ [0, 1]` at which `criterion` detects.
///
/// Detection is assumed to hold on an interval `(v*, 1]`; a coarse scan
/// checks this before bisecting. When the family only touches the bound
/// at `v = 1` (a tie, never a detection) the threshold is reported as `1`.
pub fn critical_noise(family: &dyn NoiseFamily, criterion: Criterion) -> Result<f64> {
    let top = verdict_at(family, criterion, 1.0)?;
    if !top.detected {
        if top.boundary {
            return Ok(1.0);
        }
        return Err(Error::NoDetection { criterion });
    }

    let mut seen_detection = false;
    for k in 0..=MONOTONICITY_PROBES {
        let v = k as f64 / MONOTONICITY_PROBES as f64;
        let detected = verdict_at(family, criterion, v)?.detected;
        if seen_detection && !detected {
            return Err(Error::NonMonotone {
                criterion,
                detail: format!("detection lost at v = {v} after an earlier detection"),
            });
        }
        seen_detection |= detected;
    }

    if verdict_at(family, criterion, 0.0)?.detected {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if verdict_at(family, criterion, mid)?.detected {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
