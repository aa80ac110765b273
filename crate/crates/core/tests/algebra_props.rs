//! Properties of the composition algebra over random operator trees
//! (depth ≤ 4, dimensions ≤ 16).

mod common;

use common::rel_err;
use opkit_core::random::{complex_normal, complex_normal_vector, random_expr, seeded};
use opkit_core::validate::dottest;
use opkit_core::{materialize, OperatorExpr, C64};
use proptest::prelude::*;

fn tree(seed: u64) -> OperatorExpr {
    random_expr(&mut seeded(seed), 4, 16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn forward_is_linear(seed in any::<u64>()) {
        let op = tree(seed);
        let mut rng = seeded(seed ^ 0xa5a5);
        let x1 = complex_normal_vector(&mut rng, op.ncols());
        let x2 = complex_normal_vector(&mut rng, op.ncols());
        let (a, b) = (complex_normal(&mut rng), complex_normal(&mut rng));
        let combo: Vec<C64> = x1.iter().zip(x2.iter()).map(|(u, v)| a * u + b * v).collect();
        let lhs = op.forward(&combo).unwrap();
        let f1 = op.forward(&x1).unwrap();
        let f2 = op.forward(&x2).unwrap();
        let rhs: Vec<C64> = f1.iter().zip(f2.iter()).map(|(u, v)| a * u + b * v).collect();
        prop_assert!(rel_err(&lhs, &rhs) <= 1e-12, "rel err {}", rel_err(&lhs, &rhs));
    }

    #[test]
    fn adjoint_materializes_to_conjugate_transpose(seed in any::<u64>()) {
        let op = tree(seed);
        let a = materialize(&op).unwrap().conj_transpose();
        let ah = materialize(&op.h()).unwrap();
        prop_assert_eq!((ah.nrows(), ah.ncols()), (a.nrows(), a.ncols()));
        for (x, y) in ah.data().iter().zip(a.data()) {
            prop_assert!((x - y).norm() <= 1e-12 * (1.0 + y.norm()), "{} vs {}", x, y);
        }
    }

    #[test]
    fn forward_matches_dense_oracle(seed in any::<u64>()) {
        let op = tree(seed);
        let x = complex_normal_vector(&mut seeded(seed.wrapping_add(1)), op.ncols());
        let dense = materialize(&op).unwrap();
        prop_assert!(rel_err(&op.forward(&x).unwrap(), &dense.matvec(&x)) <= 1e-12);
        let y = complex_normal_vector(&mut seeded(seed.wrapping_add(2)), op.nrows());
        let dense_h = dense.conj_transpose();
        prop_assert!(rel_err(&op.adjoint_apply(&y).unwrap(), &dense_h.matvec(&y)) <= 1e-12);
    }

    #[test]
    fn double_adjoint_is_identity(seed in any::<u64>()) {
        let op = tree(seed);
        let x = complex_normal_vector(&mut seeded(!seed), op.ncols());
        let twice = op.h().h();
        prop_assert_eq!(twice.shape(), op.shape());
        prop_assert!(rel_err(&twice.forward(&x).unwrap(), &op.forward(&x).unwrap()) <= 1e-13);
    }

    #[test]
    fn random_trees_pass_dottest(seed in any::<u64>()) {
        let op = tree(seed);
        let r = dottest(&op, 10, 1e-10, seed);
        prop_assert!(r.passed, "worst {}", r.worst_relative_error);
    }
}
