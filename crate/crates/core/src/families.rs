//! Built-in one-parameter noise families and grid sweeps over them.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::criteria::{evaluate_all, CriterionVerdict};
use crate::error::{Error, Result};
use crate::state::DensityMatrix4;
use crate::svd::svd3;
use crate::tensor::pauli_expansion;

/// A map `v ∈ [0, 1] ↦ ρ(v)` with any shape parameters held fixed.
pub trait NoiseFamily {
    fn name(&self) -> &str;
    fn description(&self) -> String;
    /// Fixed shape parameters, e.g. `alpha` for the noisy Schmidt family.
    fn shape_parameters(&self) -> Vec<(&'static str, f64)> {
        Vec::new()
    }
    fn state_at(&self, v: f64) -> Result<DensityMatrix4>;
}

fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<()> {
    if value >= min && value <= max {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { name, value, min, max })
    }
}

/// `v |ψ⟩⟨ψ| + (1 − v) 1/4`.
fn with_white_noise(psi: [Complex64; 4], v: f64) -> Result<DensityMatrix4> {
    check_range("v", v, 0.0, 1.0)?;
    DensityMatrix4::pure(psi)?.mix(&DensityMatrix4::maximally_mixed(), v)
}

/// Singlet `(|01⟩ − |10⟩)/√2` mixed with white noise.
pub fn werner(v: f64) -> Result<DensityMatrix4> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    with_white_noise([0.0.into(), s.into(), (-s).into(), 0.0.into()], v)
}

/// `sin(α/2)|01⟩ − cos(α/2)|10⟩` mixed with white noise; its correlation
/// block is `diag(−v sin α, −v sin α, −v)`.
pub fn noisy_schmidt(alpha: f64, v: f64) -> Result<DensityMatrix4> {
    check_range("alpha", alpha, 0.0, PI)?;
    let (s, c) = (alpha / 2.0).sin_cos();
    with_white_noise([0.0.into(), s.into(), (-c).into(), 0.0.into()], v)
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Werner;

impl NoiseFamily for Werner {
    fn name(&self) -> &str {
        "werner"
    }

    fn description(&self) -> String {
        "singlet mixed with white noise".to_string()
    }

    fn state_at(&self, v: f64) -> Result<DensityMatrix4> {
        werner(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisySchmidt {
    alpha: f64,
}

impl NoisySchmidt {
    pub fn new(alpha: f64) -> Result<Self> {
        check_range("alpha", alpha, 0.0, PI)?;
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Closed-form steering threshold `3 / (2(1 + 2 sin²α))`.
    pub fn analytic_steering_threshold(&self) -> f64 {
        let s = self.alpha.sin();
        3.0 / (2.0 * (1.0 + 2.0 * s * s))
    }
}

impl NoiseFamily for NoisySchmidt {
    fn name(&self) -> &str {
        "noisy-schmidt"
    }

    fn description(&self) -> String {
        format!("sin(a/2)|01> - cos(a/2)|10> with a = {} mixed with white noise", self.alpha)
    }

    fn shape_parameters(&self) -> Vec<(&'static str, f64)> {
        vec![("alpha", self.alpha)]
    }

    fn state_at(&self, v: f64) -> Result<DensityMatrix4> {
        noisy_schmidt(self.alpha, v)
    }
}

/// A family defined by an arbitrary closure.
pub struct CustomFamily<F> {
    pub name: String,
    pub description: String,
    pub state_at: F,
}

impl<F: Fn(f64) -> Result<DensityMatrix4>> NoiseFamily for CustomFamily<F> {
    fn name(&self) -> &str {
        &self.name
    }

    fn description(&self) -> String {
        self.description.clone()
    }

    fn state_at(&self, v: f64) -> Result<DensityMatrix4> {
        (self.state_at)(v)
    }
}

/// `count` evenly spaced values from `start` to `end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRange {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl ParamRange {
    pub fn new(start: f64, end: f64, count: usize) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && start <= end) {
            return Err(Error::InvalidGrid(format!("range {start}..{end} is empty or not finite")));
        }
        Ok(Self { start, end, count })
    }

    pub fn single(value: f64) -> Self {
        Self { start: value, end: value, count: 1 }
    }

    pub fn values(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.start],
            n => {
                let step = (self.end - self.start) / (n - 1) as f64;
                (0..n)
                    .map(|i| if i == n - 1 { self.end } else { self.start + i as f64 * step })
                    .collect()
            }
        }
    }
}

/// Built-in families addressable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    Werner,
    NoisySchmidt,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Werner => "werner",
            FamilyKind::NoisySchmidt => "noisy-schmidt",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "werner" => Some(FamilyKind::Werner),
            "noisy-schmidt" => Some(FamilyKind::NoisySchmidt),
            _ => None,
        }
    }

    /// The family at fixed shape; `alpha` is required for noisy Schmidt and
    /// ignored for Werner.
    pub fn family(self, alpha: Option<f64>) -> Result<Box<dyn NoiseFamily + Send + Sync>> {
        match self {
            FamilyKind::Werner => Ok(Box::new(Werner)),
            FamilyKind::NoisySchmidt => {
                let alpha = alpha.ok_or_else(|| Error::InvalidGrid("noisy-schmidt requires alpha".into()))?;
                Ok(Box::new(NoisySchmidt::new(alpha)?))
            }
        }
    }

    pub fn state(self, alpha: Option<f64>, v: f64) -> Result<DensityMatrix4> {
        self.family(alpha)?.state_at(v)
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub family_name: String,
    pub parameters: BTreeMap<String, f64>,
    pub t1: f64,
    pub norm_sq: f64,
    pub verdicts: [CriterionVerdict; 4],
}

impl SweepRecord {
    pub fn evaluate(family: &dyn NoiseFamily, v: f64) -> Result<Self> {
        let tensor = pauli_expansion(&family.state_at(v)?)?;
        let schmidt = svd3(&tensor.block())?;
        let norm_sq = tensor.norm_sq();
        let mut parameters: BTreeMap<String, f64> =
            family.shape_parameters().into_iter().map(|(k, x)| (k.to_string(), x)).collect();
        parameters.insert("v".to_string(), v);
        Ok(Self {
            family_name: family.name().to_string(),
            parameters,
            t1: schmidt.t1(),
            norm_sq,
            verdicts: evaluate_all(&schmidt, norm_sq),
        })
    }

    pub fn alpha(&self) -> Option<f64> {
        self.parameters.get("alpha").copied()
    }

    pub fn v(&self) -> f64 {
        self.parameters["v"]
    }

    /// Rebuilds the record from its stored parameters.
    pub fn recompute(&self) -> Result<Self> {
        let kind = FamilyKind::from_name(&self.family_name)
            .ok_or_else(|| Error::InvalidGrid(format!("unknown family {}", self.family_name)))?;
        let family = kind.family(self.alpha())?;
        Self::evaluate(family.as_ref(), self.v())
    }
}

/// Grid for [`sweep`]: `alpha` is used only by shape-parametrized families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub alpha: Option<ParamRange>,
    pub v: ParamRange,
}

/// One record per grid point, ordered lexicographically by `(alpha, v)`.
pub fn sweep(kind: FamilyKind, grid: &SweepGrid) -> Result<Vec<SweepRecord>> {
    let alphas: Vec<Option<f64>> = match (kind, grid.alpha) {
        (FamilyKind::Werner, _) => vec![None],
        (FamilyKind::NoisySchmidt, Some(range)) => range.values().into_iter().map(Some).collect(),
        (FamilyKind::NoisySchmidt, None) => {
            return Err(Error::InvalidGrid("noisy-schmidt sweep needs an alpha range".into()))
        }
    };
    let vs = grid.v.values();
    let mut out = Vec::with_capacity(alphas.len() * vs.len());
    for alpha in alphas {
        if vs.is_empty() {
            continue;
        }
        let family = kind.family(alpha)?;
        for &v in &vs {
            out.push(SweepRecord::evaluate(family.as_ref(), v)?);
        }
    }
    Ok(out)
}

/// Sweep of `v` alone over an arbitrary family.
pub fn sweep_family(family: &dyn NoiseFamily, vs: &ParamRange) -> Result<Vec<SweepRecord>> {
    vs.values().into_iter().map(|v| SweepRecord::evaluate(family, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::Criterion;
    use crate::linalg;

    #[test]
    fn werner_endpoints() {
        let singlet = werner(1.0).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let direct = DensityMatrix4::pure([0.0.into(), s.into(), (-s).into(), 0.0.into()]).unwrap();
        assert_eq!(singlet, direct);
        let mm = werner(0.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 0.25 } else { 0.0 };
                assert!((mm.entries()[i][j].re - want).abs() < 1e-16);
            }
        }
    }

    #[test]
    fn werner_half_block() {
        let t = pauli_expansion(&werner(0.5).unwrap()).unwrap();
        assert!(linalg::max_abs_diff(&t.block(), &linalg::diag(&[-0.5, -0.5, -0.5])) < 1e-15);
        assert_eq!(t.alice_marginal(), [0.0; 3]);
        assert_eq!(t.bob_marginal(), [0.0; 3]);
    }

    #[test]
    fn parameter_ranges_enforced() {
        assert!(matches!(werner(-0.1), Err(Error::ParameterOutOfRange { name: "v", .. })));
        assert!(matches!(werner(1.1), Err(Error::ParameterOutOfRange { .. })));
        assert!(matches!(noisy_schmidt(-0.1, 0.5), Err(Error::ParameterOutOfRange { name: "alpha", .. })));
        assert!(matches!(noisy_schmidt(4.0, 0.5), Err(Error::ParameterOutOfRange { .. })));
        assert!(werner(f64::NAN).is_err());
    }

    #[test]
    fn noisy_schmidt_block() {
        for alpha in [0.0, 0.3, 1.0, PI / 2.0, 2.5, PI] {
            let t = pauli_expansion(&noisy_schmidt(alpha, 1.0).unwrap()).unwrap();
            let s = alpha.sin();
            assert!(linalg::max_abs_diff(&t.block(), &linalg::diag(&[-s, -s, -1.0])) < 1e-15, "alpha {alpha}");
        }
        let singlet = noisy_schmidt(PI / 2.0, 1.0).unwrap();
        let w = werner(1.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((singlet.entries()[i][j] - w.entries()[i][j]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn unentangled_schmidt_never_steers() {
        for v in [0.1, 0.5, 0.9, 1.0] {
            let rec = SweepRecord::evaluate(&NoisySchmidt::new(0.0).unwrap(), v).unwrap();
            assert!((rec.t1 - v).abs() < 1e-15);
            assert!((rec.norm_sq - v * v).abs() < 1e-15);
            assert!(!rec.verdicts[1].detected);
        }
    }

    #[test]
    fn param_range_values() {
        assert!(ParamRange::new(0.0, 1.0, 0).unwrap().values().is_empty());
        assert_eq!(ParamRange::new(0.2, 0.2, 1).unwrap().values(), vec![0.2]);
        let vs = ParamRange::new(0.0, 1.0, 11).unwrap().values();
        assert_eq!(vs.len(), 11);
        assert_eq!(vs[10], 1.0);
        assert!((vs[3] - 0.3).abs() < 1e-15);
        assert!(ParamRange::new(1.0, 0.0, 3).is_err());
    }

    #[test]
    fn werner_sweep_detects_above_half() {
        let grid = SweepGrid { alpha: None, v: ParamRange::new(0.0, 1.0, 11).unwrap() };
        let recs = sweep(FamilyKind::Werner, &grid).unwrap();
        assert_eq!(recs.len(), 11);
        for rec in &recs {
            let steer = rec.verdicts.iter().find(|v| v.criterion == Criterion::GeometricSteering).unwrap();
            assert_eq!(steer.detected, rec.v() > 0.55, "v = {}", rec.v());
            assert_eq!(rec.recompute().unwrap(), *rec);
        }
    }

    #[test]
    fn boundary_family_only_ties_at_full_visibility() {
        let grid = SweepGrid {
            alpha: Some(ParamRange::single(PI / 6.0)),
            v: ParamRange::new(0.0, 1.0, 21).unwrap(),
        };
        let recs = sweep(FamilyKind::NoisySchmidt, &grid).unwrap();
        for rec in &recs {
            assert!(!rec.verdicts[1].detected);
        }
        assert!(recs.last().unwrap().verdicts[1].boundary);
    }

    #[test]
    fn empty_grid_gives_no_records() {
        let grid = SweepGrid { alpha: None, v: ParamRange::new(0.0, 1.0, 0).unwrap() };
        assert!(sweep(FamilyKind::Werner, &grid).unwrap().is_empty());
        assert!(sweep(FamilyKind::NoisySchmidt, &grid).is_err());
    }

    #[test]
    fn lexicographic_order() {
        let grid = SweepGrid {
            alpha: Some(ParamRange::new(0.5, 1.5, 3).unwrap()),
            v: ParamRange::new(0.0, 1.0, 4).unwrap(),
        };
        let recs = sweep(FamilyKind::NoisySchmidt, &grid).unwrap();
        let keys: Vec<(f64, f64)> = recs.iter().map(|r| (r.alpha().unwrap(), r.v())).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(keys, sorted);
        assert_eq!(recs.len(), 12);
    }
}
