use std::f64::consts::PI;

use geosteer::criteria::steering_criterion;
use geosteer::oracle::{
    norm_eq_analytic, norm_eq_numeric, ns_bound, partial_integral, random_model, random_model_near,
    saturating_model, verify_ns_inequality, SphereGrid,
};
use geosteer::{linalg, pauli_expansion, random, svd3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn norm_identity_on_random_states() {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    let grid = SphereGrid::new(4, 8);
    for _ in 0..100 {
        let t = pauli_expansion(&random::state(&mut r)).unwrap();
        let analytic = norm_eq_analytic(&t);
        let numeric = norm_eq_numeric(&t, &grid);
        assert!(((numeric - analytic) / analytic).abs() <= 1e-10);
    }
}

#[test]
fn partial_integration_identity() {
    let mut r = ChaCha8Rng::seed_from_u64(6);
    let grid = SphereGrid::new(2, 4);
    for _ in 0..200 {
        let block = random::matrix3(&mut r);
        let m = random::direction(&mut r);
        let lambda = random::direction(&mut r);
        let q = partial_integral(&block, m.as_array(), lambda.as_array(), &grid);
        let want = 4.0 * PI / 3.0 * linalg::bilinear(m.as_array(), &block, lambda.as_array());
        assert!((q - want).abs() <= 1e-12);
    }
}

#[test]
fn random_models_respect_the_bound() {
    let mut r = ChaCha8Rng::seed_from_u64(8);
    let grid = SphereGrid::new(4, 8);
    for _ in 0..20 {
        let t = pauli_expansion(&random::state(&mut r)).unwrap();
        let f = svd3(&t.block()).unwrap();
        for _ in 0..100 {
            let check = verify_ns_inequality(&t, &random_model(&mut r), &grid).unwrap();
            assert!(check.holds, "{check:?}");
            let near = verify_ns_inequality(&t, &random_model_near(&f, 0.3, &mut r), &grid).unwrap();
            assert!(near.holds, "{near:?}");
        }
    }
}

#[test]
fn saturating_model_is_tight() {
    let mut r = ChaCha8Rng::seed_from_u64(9);
    let grid = SphereGrid::new(4, 8);
    for _ in 0..20 {
        let t = pauli_expansion(&random::state(&mut r)).unwrap();
        let f = svd3(&t.block()).unwrap();
        let check = verify_ns_inequality(&t, &saturating_model(&f).unwrap(), &grid).unwrap();
        assert!(((check.lhs - check.bound) / check.bound).abs() <= 1e-6, "{check:?}");
    }
}

#[test]
fn norm_exceeding_bound_is_steering_detection() {
    let mut r = ChaCha8Rng::seed_from_u64(10);
    let mut detections = 0;
    for i in 0..400 {
        // Pull toward the singlet so both verdicts occur often.
        let v = (i % 20) as f64 / 19.0;
        let state = geosteer::families::werner(1.0).unwrap().mix(&random::state(&mut r), v).unwrap();
        let t = pauli_expansion(&state).unwrap();
        let f = svd3(&t.block()).unwrap();
        let verdict = steering_criterion(&f, t.norm_sq());
        // Compare in units of the common factor 8π²/3 to avoid spurious ties.
        let by_integrals = norm_eq_analytic(&t) > ns_bound(&f) * (1.0 + 1e-12) + 1e-11;
        if !verdict.boundary {
            assert_eq!(by_integrals, verdict.detected, "{verdict:?}");
        }
        detections += verdict.detected as usize;
    }
    assert!(detections > 0 && detections < 400);
}
