//! Numerical verification suite behind `geosteer verify`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use geosteer::criteria::steering_criterion;
use geosteer::families::werner;
use geosteer::oracle::{
    abs_cos_integral, chsh_ns_max, lhv_bound, monte_carlo_ns_inner_product, norm_eq_analytic, norm_eq_numeric,
    ns_bound, ns_inner_product, partial_integral, random_model, random_model_near, saturating_model,
    verify_ns_inequality, verify_orthogonality, SphereGrid,
};
use geosteer::{linalg, pauli_expansion, random, svd3, CorrelationTensor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::table::format_significant;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparison {
    /// `|computed − target| ≤ tolerance`.
    Equal,
    /// `computed ≤ target + tolerance`.
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub target: f64,
    pub computed: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: impl Into<String>, target: f64, computed: f64, tolerance: f64, comparison: Comparison) -> Self {
        let passed = match comparison {
            Comparison::Equal => (computed - target).abs() <= tolerance,
            Comparison::AtMost => computed <= target + tolerance,
        };
        Self { name: name.into(), target, computed, tolerance, comparison, passed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub level: Level,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let op = match c.comparison {
                Comparison::Equal => "=",
                Comparison::AtMost => "<=",
            };
            let _ = writeln!(
                s,
                "{}  {:<52} computed {}  target {op} {}  tol {:.1e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                format_significant(c.computed, 12),
                format_significant(c.target, 12),
                c.tolerance
            );
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(s, "{} checks, {} failed (level {:?}, seed {})", self.checks.len(), failed, self.level, self.seed);
        s
    }
}

struct Budget {
    grid: (usize, usize),
    random_states: usize,
    partial_trials: usize,
    model_states: usize,
    models_per_state: usize,
    saturation_states: usize,
    equivalence_states: usize,
    mc_models: usize,
    mc_samples: usize,
}

impl Budget {
    fn for_level(level: Level) -> Self {
        match level {
            Level::Fast => Budget {
                grid: (2, 4),
                random_states: 10,
                partial_trials: 20,
                model_states: 20,
                models_per_state: 50,
                saturation_states: 5,
                equivalence_states: 100,
                mc_models: 2,
                mc_samples: 20_000,
            },
            Level::Full => Budget {
                grid: (4, 8),
                random_states: 100,
                partial_trials: 200,
                model_states: 20,
                models_per_state: 500,
                saturation_states: 20,
                equivalence_states: 1000,
                mc_models: 5,
                mc_samples: 200_000,
            },
        }
    }
}

/// Runs every identity check. `inject_fault` perturbs one quadrature weight
/// so that the suite must fail.
pub fn run_verification(level: Level, seed: u64, inject_fault: bool) -> Result<VerificationReport, CliError> {
    let budget = Budget::for_level(level);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grid = SphereGrid::new(budget.grid.0, budget.grid.1);
    if inject_fault {
        grid = grid.with_scaled_weight(0, 1.0 + 1e-6);
    }
    let mut checks = Vec::new();

    checks.push(CheckResult::new(
        "orthogonality: max |∫n_k n_l dΩ − (4π/3)δ_kl|",
        0.0,
        verify_orthogonality(&grid),
        1e-12,
        Comparison::Equal,
    ));

    let singlet = pauli_expansion(&werner(1.0)?)?;
    let target = 16.0 * PI * PI / 3.0;
    checks.push(CheckResult::new(
        "(E_Q,E_Q) Werner(1) = 16π²/3",
        target,
        norm_eq_numeric(&singlet, &grid),
        1e-10 * target,
        Comparison::Equal,
    ));

    let mut worst: f64 = 0.0;
    for _ in 0..budget.random_states {
        let t = pauli_expansion(&random::state(&mut rng))?;
        let analytic = norm_eq_analytic(&t);
        worst = worst.max(((norm_eq_numeric(&t, &grid) - analytic) / analytic).abs());
    }
    checks.push(CheckResult::new(
        format!("(E_Q,E_Q) = (16π²/9)‖T‖², {} random states (rel)", budget.random_states),
        0.0,
        worst,
        1e-10,
        Comparison::Equal,
    ));

    let mut worst: f64 = 0.0;
    for _ in 0..budget.partial_trials {
        let block = random::matrix3(&mut rng);
        let m = random::direction(&mut rng);
        let l = random::direction(&mut rng);
        let q = partial_integral(&block, m.as_array(), l.as_array(), &grid);
        worst = worst.max((q - 4.0 * PI / 3.0 * linalg::bilinear(m.as_array(), &block, l.as_array())).abs());
    }
    checks.push(CheckResult::new(
        format!("∫(m·Tn)(n·λ)dΩ(n) = (4π/3) m·Tλ, {} trials", budget.partial_trials),
        0.0,
        worst,
        1e-12,
        Comparison::Equal,
    ));

    let model_grid = SphereGrid::new(4, 8);
    let mut worst_ratio = f64::NEG_INFINITY;
    let mut states = Vec::with_capacity(budget.model_states);
    for _ in 0..budget.model_states {
        let t = pauli_expansion(&random::state(&mut rng))?;
        let f = svd3(&t.block())?;
        for k in 0..budget.models_per_state {
            let model = if k % 2 == 0 { random_model(&mut rng) } else { random_model_near(&f, 0.3, &mut rng) };
            let check = verify_ns_inequality(&t, &model, &model_grid)?;
            worst_ratio = worst_ratio.max(check.ratio());
        }
        states.push(t);
    }
    checks.push(CheckResult::new(
        format!("(E_Q,E_NS)/((8π²/3)T1), {} random models (max)", budget.model_states * budget.models_per_state),
        1.0,
        worst_ratio,
        1e-6,
        Comparison::AtMost,
    ));

    let mut worst: f64 = 0.0;
    for t in states.iter().take(budget.saturation_states) {
        let f = svd3(&t.block())?;
        let check = verify_ns_inequality(t, &saturating_model(&f)?, &model_grid)?;
        worst = worst.max(((check.lhs - check.bound) / check.bound).abs());
    }
    checks.push(CheckResult::new(
        format!("saturating model attains (8π²/3)T1, {} states (rel)", budget.saturation_states),
        0.0,
        worst,
        1e-6,
        Comparison::Equal,
    ));

    let mut worst_sigma: f64 = 0.0;
    for t in states.iter().take(budget.mc_models) {
        let model = random_model(&mut rng);
        let q = ns_inner_product(t, &model, &model_grid);
        let mc = monte_carlo_ns_inner_product(t, &model, budget.mc_samples, &mut rng);
        worst_sigma = worst_sigma.max((q - mc.mean).abs() / mc.std_err);
    }
    checks.push(CheckResult::new(
        format!("quadrature vs Monte Carlo (E_Q,E_NS), {} models (σ)", budget.mc_models),
        0.0,
        worst_sigma,
        4.0,
        Comparison::AtMost,
    ));

    checks.push(CheckResult::new("CHSH-NS max = 2", 2.0, chsh_ns_max().value, 1e-6, Comparison::Equal));

    let abs_cos = abs_cos_integral(&SphereGrid::split(8, 16));
    checks.push(CheckResult::new("∫|cosθ|dΩ = 2π", 2.0 * PI, abs_cos.integral, 1e-12, Comparison::Equal));
    checks.push(CheckResult::new("M = √(3π)", (3.0 * PI).sqrt(), abs_cos.projection_norm, 1e-12, Comparison::Equal));

    let f = svd3(&singlet.block())?;
    checks.push(CheckResult::new(
        "ns_bound / lhv_bound = 2/3",
        2.0 / 3.0,
        ns_bound(&f) / lhv_bound(&f),
        f64::EPSILON,
        Comparison::Equal,
    ));

    let mut mismatches = 0usize;
    for i in 0..budget.equivalence_states {
        let v = (i % 20) as f64 / 19.0;
        let state = werner(1.0)?.mix(&random::state(&mut rng), v)?;
        let t: CorrelationTensor = pauli_expansion(&state)?;
        let f = svd3(&t.block())?;
        let verdict = steering_criterion(&f, t.norm_sq());
        if verdict.boundary {
            continue;
        }
        let by_integrals = norm_eq_analytic(&t) > ns_bound(&f);
        mismatches += (by_integrals != verdict.detected) as usize;
    }
    checks.push(CheckResult::new(
        format!("‖E_Q‖² > (8π²/3)T1 ⇔ steering detected, {} states", budget.equivalence_states),
        0.0,
        mismatches as f64,
        0.0,
        Comparison::Equal,
    ));

    Ok(VerificationReport { level, seed, checks })
}
