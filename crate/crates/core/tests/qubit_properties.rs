use geosteer::random;
use geosteer::state::{conditional_state, joint_probability, Outcome};
use geosteer::tensor::{correlation_function, pauli_expansion};
use geosteer::{linalg, svd3};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn joint_probabilities_are_complete(seed in any::<u64>()) {
        let mut r = rng(seed);
        let state = random::state(&mut r);
        let a = random::direction(&mut r);
        let b = random::direction(&mut r);
        let tensor = pauli_expansion(&state).unwrap();
        let mut total = 0.0;
        let mut corr = 0.0;
        for r1 in Outcome::BOTH {
            for r2 in Outcome::BOTH {
                let p = joint_probability(&state, &a, &b, r1, r2);
                prop_assert!((-1e-12..=1.0 + 1e-12).contains(&p));
                total += p;
                corr += r1.sign() * r2.sign() * p;
            }
        }
        prop_assert!((total - 1.0).abs() <= 1e-12);
        let e = correlation_function(&tensor, &a, &b);
        prop_assert!((corr - e).abs() <= 1e-12);
        prop_assert!(e.abs() <= 1.0 + 1e-10);
    }

    #[test]
    fn conditional_states_respect_no_signaling(seed in any::<u64>()) {
        let mut r = rng(seed);
        let state = random::state(&mut r);
        let x = random::direction(&mut r);
        let tensor = pauli_expansion(&state).unwrap();
        let (pp, bp) = conditional_state(&state, &x, Outcome::Plus).unwrap();
        let (pm, bm) = conditional_state(&state, &x, Outcome::Minus).unwrap();
        prop_assert!((pp + pm - 1.0).abs() <= 1e-12);
        let mix = [pp * bp.x + pm * bm.x, pp * bp.y + pm * bm.y, pp * bp.z + pm * bm.z];
        let bob = tensor.bob_marginal();
        for k in 0..3 {
            prop_assert!((mix[k] - bob[k]).abs() <= 1e-12);
        }
        // Second route: p_a b_a = (T_0 + a Tᵀx)/2 straight from the tensor.
        let steer = linalg::vec_mat(x.as_array(), &tensor.block());
        let alice = linalg::dot(x.as_array(), &tensor.alice_marginal());
        prop_assert!((pp - (1.0 + alice) / 2.0).abs() <= 1e-12);
        for k in 0..3 {
            prop_assert!((pp * bp.to_array()[k] - (bob[k] + steer[k]) / 2.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn pauli_expansion_round_trips(seed in any::<u64>()) {
        let state = random::state(&mut rng(seed));
        let tensor = pauli_expansion(&state).unwrap();
        prop_assert_eq!(tensor.full()[0][0], 1.0);
        for row in tensor.full() {
            for t in row {
                prop_assert!(t.abs() <= 1.0 + 1e-10);
            }
        }
        let back = tensor.reconstruct();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((back[i][j] - state.entries()[i][j]).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn t1_is_the_maximal_correlation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let tensor = pauli_expansion(&random::state(&mut r)).unwrap();
        let f = svd3(&tensor.block()).unwrap();
        for _ in 0..20 {
            let m = random::direction(&mut r);
            let n = random::direction(&mut r);
            prop_assert!(tensor.correlation(&m, &n) <= f.t1() + 1e-12);
        }
        prop_assert!((tensor.correlation(&f.top_left(), &f.top_right()) - f.t1()).abs() <= 1e-12);
    }
}

#[test]
fn svd_of_random_matrices() {
    let mut r = rng(2024);
    for _ in 0..1000 {
        let t = random::matrix3(&mut r);
        let f = svd3(&t).unwrap();
        assert!(linalg::max_abs_diff(&f.reconstruct(), &t) <= 1e-12);
        assert!(linalg::orthogonality_defect(&linalg::transpose(&f.u)) <= 1e-12);
        assert!(linalg::orthogonality_defect(&linalg::transpose(&f.v)) <= 1e-12);
        assert!(f.sigma[0] >= f.sigma[1] && f.sigma[1] >= f.sigma[2] && f.sigma[2] >= 0.0);
    }
}
