use num_complex::Complex64;
use proptest::array::{uniform32, uniform4, uniform8};
use proptest::prelude::*;

use crate::bellpair::DEFAULT_TOLERANCE;
use crate::states::seeded_rng;
use crate::{
    canonical_pair, classify, correlation_matrix, decompose, kron, lambda, paper_pair_ab,
    paper_pair_prime, random_pure, random_unitary, restrict, total_correlation, transported_pair,
    validate, w_vector, BellPair, Matrix2, Matrix4, PairCandidate, PureState, StateFunctional,
    Thresholds,
};

fn matrix4(x: [f64; 32]) -> Matrix4 {
    let re = std::array::from_fn(|i| std::array::from_fn(|j| x[4 * i + j]));
    let im = std::array::from_fn(|i| std::array::from_fn(|j| x[16 + 4 * i + j]));
    Matrix4::from_parts(re, im)
}

fn matrix2(x: [f64; 8]) -> Matrix2 {
    let c = |k: usize| Complex64::new(x[2 * k], x[2 * k + 1]);
    Matrix2([[c(0), c(1)], [c(2), c(3)]])
}

fn max_diff(a: &Matrix4, b: &Matrix4) -> f64 {
    (*a - *b).max_abs()
}

fn presets() -> [BellPair; 3] {
    [canonical_pair(), paper_pair_ab(), paper_pair_prime()]
}

fn with_phase(psi: &PureState, t: f64) -> PureState {
    let p = Complex64::from_polar(1.0, t);
    PureState::new(psi.amplitudes().map(|z| z * p)).unwrap()
}

#[test]
fn generators_are_orthogonal_hermitian_involutions() {
    for i in 1..=15 {
        let li = lambda(i).unwrap();
        assert!(li.hermiticity_violation() < 1e-12);
        assert!(li.involution_violation() < 1e-12);
        assert!(li.trace().norm() < 1e-12);
        for j in 1..=15 {
            let want = if i == j { 4.0 } else { 0.0 };
            let t = (li * lambda(j).unwrap()).trace();
            assert!((t - want).norm() < 1e-12, "({i}, {j})");
        }
    }
}

proptest! {
    #[test]
    fn decompose_then_reconstruct(x in uniform32(-1.0f64..1.0)) {
        let m = matrix4(x);
        prop_assert!(max_diff(&decompose(&m).reconstruct(), &m) <= 1e-12);
    }

    #[test]
    fn kron_is_bilinear_with_mixed_products(
        a in uniform8(-1.0f64..1.0),
        b in uniform8(-1.0f64..1.0),
        c in uniform8(-1.0f64..1.0),
        d in uniform8(-1.0f64..1.0),
        s in -2.0f64..2.0,
    ) {
        let (x, y, x2, y2) = (matrix2(a), matrix2(b), matrix2(c), matrix2(d));
        let mixed = kron(&x, &y) * kron(&x2, &y2);
        prop_assert!(max_diff(&mixed, &kron(&(x * x2), &(y * y2))) <= 1e-12);

        let k = Complex64::new(s, 0.0);
        let lhs = kron(&(x + k * x2), &y);
        let rhs = kron(&x, &y) + k * kron(&x2, &y);
        prop_assert!(max_diff(&lhs, &rhs) <= 1e-12);
    }

    #[test]
    fn w_components_are_bounded(seed in any::<u64>()) {
        let w = w_vector(&random_pure(seed));
        prop_assert!(w.0.iter().all(|x| x.abs() <= 1.0 + 1e-12));
    }

    #[test]
    fn expectation_is_linear(
        seed in any::<u64>(),
        x in uniform32(-1.0f64..1.0),
        y in uniform32(-1.0f64..1.0),
        s in -3.0f64..3.0,
    ) {
        let psi = random_pure(seed);
        let (a, b) = (matrix4(x), matrix4(y));
        let k = Complex64::new(0.5, s);
        let lhs = psi.expectation(&(a + k * b));
        let rhs = psi.expectation(&a) + k * psi.expectation(&b);
        prop_assert!((lhs - rhs).norm() <= 1e-12);
        prop_assert!((psi.expectation(&a.adjoint()) - psi.expectation(&a).conj()).norm() <= 1e-12);
    }

    #[test]
    fn downstream_quantities_ignore_global_phase(seed in any::<u64>(), t in 0.0f64..6.3) {
        let psi = random_pure(seed);
        let rotated = with_phase(&psi, t);
        for pair in presets() {
            let q = correlation_matrix(&psi, &pair);
            prop_assert!(q.max_diff(&correlation_matrix(&rotated, &pair)) <= 1e-12);
            let (b, b2) = (restrict(&psi, &pair), restrict(&rotated, &pair));
            for k in 0..3 {
                prop_assert!((b.r[k] - b2.r[k]).abs() <= 1e-12);
                prop_assert!((b.s[k] - b2.s[k]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn total_correlation_stays_in_unit_interval(seed in any::<u64>(), u_seed in any::<u64>()) {
        let psi = random_pure(seed);
        let moved = transported_pair(&random_unitary(&mut seeded_rng(u_seed)), &canonical_pair());
        for pair in presets().into_iter().chain([moved]) {
            let c = total_correlation(&psi, &pair);
            prop_assert!((0.0..=1.0 + 1e-10).contains(&c), "{c}");
        }
    }

    #[test]
    fn validation_ignores_generator_order_and_side_swap(p in 0usize..3, perm in 0usize..6, u_seed in any::<u64>()) {
        let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let pair = transported_pair(&random_unitary(&mut seeded_rng(u_seed)), &presets()[p]);
        let base = pair.to_candidate();
        let o = orders[perm];
        let permuted = PairCandidate {
            label: base.label.clone(),
            left: o.map(|k| base.left[k]),
            right: base.right,
        };
        let swapped = PairCandidate {
            label: base.label.clone(),
            left: base.right,
            right: base.left,
        };
        let r0 = validate(&base, DEFAULT_TOLERANCE);
        for r in [validate(&permuted, DEFAULT_TOLERANCE), validate(&swapped, DEFAULT_TOLERANCE)] {
            prop_assert!(r.passed());
            prop_assert_eq!(r.generation_rank, 16);
            prop_assert!((r.max_violation() - r0.max_violation()).abs() <= 1e-10);
        }
    }

    #[test]
    fn transport_preserves_validation_metrics(p in 0usize..3, u_seed in any::<u64>()) {
        let base = &presets()[p];
        let moved = transported_pair(&random_unitary(&mut seeded_rng(u_seed)), base);
        let (a, b) = (base.validate(DEFAULT_TOLERANCE), moved.validate(DEFAULT_TOLERANCE));
        prop_assert!(b.passed());
        prop_assert_eq!(a.generation_rank, b.generation_rank);
        for ((name, _, _), (_, _, ok)) in a.conditions().into_iter().zip(b.conditions()) {
            prop_assert!(ok, "{}", name);
        }
        prop_assert!((a.max_violation() - b.max_violation()).abs() <= 1e-10);
    }

    #[test]
    fn separable_iff_uncorrelated(
        u_seed in any::<u64>(),
        a in uniform4(-1.0f64..1.0),
        b in uniform4(-1.0f64..1.0),
        mix in 0.0f64..1.0,
    ) {
        // Product vectors moved by U are separable for the pair moved by U;
        // blending in an entangled vector breaks that.
        prop_assume!(a.iter().map(|x| x * x).sum::<f64>() > 1e-3);
        prop_assume!(b.iter().map(|x| x * x).sum::<f64>() > 1e-3);
        let u = random_unitary(&mut seeded_rng(u_seed));
        let pair = transported_pair(&u, &canonical_pair());
        let left = [Complex64::new(a[0], a[1]), Complex64::new(a[2], a[3])];
        let right = [Complex64::new(b[0], b[1]), Complex64::new(b[2], b[3])];
        let product: [Complex64; 4] = std::array::from_fn(|k| right[k / 2] * left[k % 2]);
        let bell = [0.0, 1.0, -1.0, 0.0].map(|x: f64| Complex64::new(x / 2f64.sqrt(), 0.0));
        for w in [0.0, mix] {
            let v: [Complex64; 4] = std::array::from_fn(|k| product[k] * (1.0 - w) + bell[k] * w);
            let Ok(psi) = PureState::normalized(u.apply(&v)) else { continue };
            let cls = classify(&psi, &pair, Thresholds::default());
            let min_norm = cls.restriction.r_norm().min(cls.restriction.s_norm());
            if w == 0.0 {
                prop_assert!(cls.total_correlation <= 1e-9, "{}", cls.total_correlation);
            }
            if cls.total_correlation <= 1e-9 {
                prop_assert!(min_norm >= 1.0 - 1e-6);
            }
            if min_norm >= 1.0 - 1e-9 {
                prop_assert!(cls.total_correlation <= 1e-6);
            }
        }
    }
}
