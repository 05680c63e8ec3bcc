//! Numerical oracle for the steering bound: sphere quadrature, scalar
//! products of correlation functions, finite hidden-state models and the
//! CHSH maximum over non-steering correlations.

pub mod chsh;
pub mod grid;
pub mod identities;
pub mod model;
pub mod optimize;

pub use chsh::{chsh_ns_max, chsh_ns_value, ChshMaximum};
pub use grid::{gauss_legendre, SphereGrid};
pub use identities::{
    abs_cos_integral, inner_product, lhv_bound, monte_carlo_ns_inner_product, monte_carlo_orthogonality,
    norm_eq_analytic, norm_eq_numeric, ns_bound, ns_inner_product, partial_integral, verify_ns_inequality,
    verify_orthogonality, AbsCosIntegral, McEstimate, NsCheck,
};
pub use model::{
    eval_ns_correlation, random_model, random_model_near, saturating_model, HiddenStateComponent, HiddenStateModel,
    Response,
};
