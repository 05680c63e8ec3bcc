//! Finite local-hidden-state models `E_NS(m, n) = Σ p_λ I(m, λ) (n·λ)`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::bloch::Direction;
use crate::error::{Error, Result};
use crate::linalg::{self, Vec3};
use crate::random;
use crate::svd::SchmidtForm;

use super::grid::SphereGrid;

const WEIGHT_SUM_TOL: f64 = 1e-12;
const RESPONSE_TOL: f64 = 1e-12;

/// Alice's response `I(m) = P(+1|m, λ) − P(−1|m, λ) ∈ [−1, 1]`.
#[derive(Clone)]
pub enum Response {
    /// `sign(m·axis)`, zero on the equator.
    Sign { axis: Direction },
    /// `clamp(m·w, −1, 1)`; `w` need not be unit length.
    ClippedLinear { w: Vec3 },
    Constant(f64),
    Custom(Arc<dyn Fn(&Direction) -> f64 + Send + Sync>),
}

impl fmt::Debug for Response {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Response::Sign { axis } => f.debug_struct("Sign").field("axis", axis).finish(),
            Response::ClippedLinear { w } => f.debug_struct("ClippedLinear").field("w", w).finish(),
            Response::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            Response::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl Response {
    pub fn value(&self, m: &Direction) -> f64 {
        match self {
            Response::Sign { axis } => {
                let x = m.dot(axis);
                if x > 0.0 {
                    1.0
                } else if x < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
            Response::ClippedLinear { w } => linalg::dot(m.as_array(), w).clamp(-1.0, 1.0),
            Response::Constant(c) => *c,
            Response::Custom(f) => f(m),
        }
    }

    /// Polar axis and `cos θ` positions of the latitudes where the response
    /// is not smooth, if known.
    pub fn kinks(&self) -> Option<(Direction, Vec<f64>)> {
        match self {
            Response::Sign { axis } => Some((*axis, vec![0.0])),
            Response::ClippedLinear { w } => {
                let len = linalg::norm(w);
                let axis = Direction::normalize(*w).ok()?;
                let cuts = if len > 1.0 { vec![-1.0 / len, 1.0 / len] } else { Vec::new() };
                Some((axis, cuts))
            }
            Response::Constant(_) => Some((Direction::Z, Vec::new())),
            Response::Custom(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HiddenStateComponent {
    pub weight: f64,
    /// Bloch vector of the pure hidden state sent to Bob.
    pub hidden_state: Direction,
    pub response: Response,
}

#[derive(Debug, Clone)]
pub struct HiddenStateModel {
    components: Vec<HiddenStateComponent>,
}

impl HiddenStateModel {
    /// Validates weights (nonnegative, summing to 1) and response bounds,
    /// the latter sampled on a fixed sphere grid.
    pub fn new(components: Vec<HiddenStateComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidModel("no components".into()));
        }
        let mut total = 0.0;
        for (i, c) in components.iter().enumerate() {
            if !(c.weight >= 0.0 && c.weight.is_finite()) {
                return Err(Error::InvalidModel(format!("component {i} has weight {}", c.weight)));
            }
            total += c.weight;
        }
        if !((total - 1.0).abs() <= WEIGHT_SUM_TOL) {
            return Err(Error::InvalidModel(format!("weights sum to {total}")));
        }
        let probe = SphereGrid::new(8, 16);
        for (i, c) in components.iter().enumerate() {
            for (m, _) in probe.nodes() {
                let r = c.response.value(m);
                if !(r.abs() <= 1.0 + RESPONSE_TOL) {
                    return Err(Error::InvalidModel(format!("component {i} responds {r} at {:?}", m.as_array())));
                }
            }
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[HiddenStateComponent] {
        &self.components
    }

    /// A model that answers 0 to every setting.
    pub fn silent(hidden_state: Direction) -> Self {
        Self {
            components: vec![HiddenStateComponent { weight: 1.0, hidden_state, response: Response::Constant(0.0) }],
        }
    }
}

/// `E_NS(m, n) = Σ p_λ I(m, λ) (n·λ)`.
pub fn eval_ns_correlation(model: &HiddenStateModel, m: &Direction, n: &Direction) -> f64 {
    model
        .components
        .iter()
        .map(|c| c.weight * c.response.value(m) * n.dot(&c.hidden_state))
        .sum()
}

/// The one-component model attaining the steering bound: hidden state
/// along Bob's top singular vector, Alice answering the sign of her
/// projection on her top singular vector.
pub fn saturating_model(schmidt: &SchmidtForm) -> Result<HiddenStateModel> {
    if !(schmidt.t1() > 1e-14) {
        return Err(Error::DegenerateTensor { t1: schmidt.t1() });
    }
    Ok(HiddenStateModel {
        components: vec![HiddenStateComponent {
            weight: 1.0,
            hidden_state: schmidt.top_right(),
            response: Response::Sign { axis: schmidt.top_left() },
        }],
    })
}

fn random_response<R: Rng + ?Sized>(rng: &mut R) -> Response {
    match rng.random_range(0..3u8) {
        0 => Response::Sign { axis: random::direction(rng) },
        1 => {
            let len = rng.random_range(0.5..2.0);
            Response::ClippedLinear { w: linalg::scale(random::direction(rng).as_array(), len) }
        }
        _ => Response::Constant(if rng.random::<bool>() { 1.0 } else { -1.0 }),
    }
}

/// Random model: 1–8 components, flat simplex weights, uniform hidden
/// states, responses drawn from sign, clipped-linear and constant ±1.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R) -> HiddenStateModel {
    let count = rng.random_range(1..=8usize);
    let weights = random::simplex(rng, count);
    let components = weights
        .into_iter()
        .map(|weight| HiddenStateComponent { weight, hidden_state: random::direction(rng), response: random_response(rng) })
        .collect();
    HiddenStateModel::new(components).expect("random model is valid by construction")
}

/// Random model whose components are perturbations of the saturating model
/// by up to `spread` (in Euclidean distance before renormalizing), probing
/// the bound near its maximizer.
pub fn random_model_near<R: Rng + ?Sized>(schmidt: &SchmidtForm, spread: f64, rng: &mut R) -> HiddenStateModel {
    let jitter = |d: Direction, rng: &mut R| -> Direction {
        let e = random::direction(rng);
        let s = rng.random_range(0.0..=spread);
        let v = [0, 1, 2].map(|i| d.as_array()[i] + s * e.as_array()[i]);
        Direction::normalize(v).unwrap_or(d)
    };
    let count = rng.random_range(1..=4usize);
    let weights = random::simplex(rng, count);
    let components = weights
        .into_iter()
        .map(|weight| HiddenStateComponent {
            weight,
            hidden_state: jitter(schmidt.top_right(), rng),
            response: Response::Sign { axis: jitter(schmidt.top_left(), rng) },
        })
        .collect();
    HiddenStateModel::new(components).expect("perturbed model is valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligned_deterministic_model() {
        let model = HiddenStateModel::new(vec![HiddenStateComponent {
            weight: 1.0,
            hidden_state: Direction::Z,
            response: Response::Constant(1.0),
        }])
        .unwrap();
        let m = Direction::from_angles(0.7, 2.0);
        assert_eq!(eval_ns_correlation(&model, &m, &Direction::Z), 1.0);
    }

    #[test]
    fn silent_model_is_zero() {
        let model = HiddenStateModel::silent(Direction::X);
        let m = Direction::from_angles(0.7, 2.0);
        let n = Direction::from_angles(2.1, -1.0);
        assert_eq!(eval_ns_correlation(&model, &m, &n), 0.0);
    }

    #[test]
    fn two_pole_sign_model() {
        let comp = |d: Direction| HiddenStateComponent { weight: 0.5, hidden_state: d, response: Response::Sign { axis: d } };
        let model = HiddenStateModel::new(vec![comp(Direction::Z), comp(Direction::Z.neg())]).unwrap();
        // 0.5·(+1)(+1) + 0.5·(−1)(−1)
        assert_eq!(eval_ns_correlation(&model, &Direction::Z, &Direction::Z), 1.0);
    }

    #[test]
    fn invalid_models_rejected() {
        let bad_weight = vec![HiddenStateComponent { weight: 0.9, hidden_state: Direction::Z, response: Response::Constant(1.0) }];
        assert!(HiddenStateModel::new(bad_weight).is_err());
        let negative = vec![
            HiddenStateComponent { weight: 1.5, hidden_state: Direction::Z, response: Response::Constant(1.0) },
            HiddenStateComponent { weight: -0.5, hidden_state: Direction::Z, response: Response::Constant(1.0) },
        ];
        assert!(HiddenStateModel::new(negative).is_err());
        let loud = vec![HiddenStateComponent {
            weight: 1.0,
            hidden_state: Direction::Z,
            response: Response::Custom(Arc::new(|m: &Direction| 2.0 * m.x())),
        }];
        assert!(HiddenStateModel::new(loud).is_err());
        assert!(HiddenStateModel::new(Vec::new()).is_err());
    }

    #[test]
    fn clipped_linear_kinks() {
        let r = Response::ClippedLinear { w: [0.0, 0.0, 2.0] };
        let (axis, cuts) = r.kinks().unwrap();
        assert_eq!(axis, Direction::Z);
        assert_eq!(cuts, vec![-0.5, 0.5]);
        assert_eq!(r.value(&Direction::Z), 1.0);
        assert!(Response::ClippedLinear { w: [0.0, 0.6, 0.0] }.kinks().unwrap().1.is_empty());
    }
}
