use proptest::prelude::*;

use schwinger_core::algebra::{root_of_unity, variance_unitary};
use schwinger_core::bounds::{
    bound_report, hierarchy_check, identity_suite, massar_spindel_check, slack_ok,
};
use schwinger_core::harper::ground_state;
use schwinger_core::phase_space::{
    reconstruct_trig_products, reconstruct_uv_moment, weyl_function, wigner_function,
};
use schwinger_core::sampling::{Ensemble, SamplerConfig};
use schwinger_core::{CMatrix, DensityMatrix, SchwingerPair, C64};

fn state_vector(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|v| v.into_iter().map(|(a, b)| C64::new(a, b)).collect())
}

fn pure_state() -> impl Strategy<Value = DensityMatrix> {
    (2usize..=7).prop_flat_map(|n| {
        state_vector(n).prop_map(|v| DensityMatrix::from_state_vector(&v).unwrap())
    })
}

fn mixed_state() -> impl Strategy<Value = DensityMatrix> {
    (2usize..=7).prop_flat_map(|n| {
        state_vector(n * n).prop_map(move |v| {
            DensityMatrix::from_gram(&CMatrix::from_vec(n, n, v).unwrap()).unwrap()
        })
    })
}

fn any_state() -> impl Strategy<Value = DensityMatrix> {
    prop_oneof![pure_state(), mixed_state()]
}

fn odd_state() -> impl Strategy<Value = DensityMatrix> {
    prop_oneof![Just(3usize), Just(5), Just(7)].prop_flat_map(|n| {
        state_vector(n * n).prop_map(move |v| {
            DensityMatrix::from_gram(&CMatrix::from_vec(n, n, v).unwrap()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutation_phase(n in 2usize..=9, eta in -12i64..12, xi in -12i64..12) {
        let p = SchwingerPair::new(n).unwrap();
        let lhs = p.v_pow(xi).mat_mul(&p.u_pow(eta)).unwrap();
        let rhs = p.u_pow(eta).mat_mul(&p.v_pow(xi)).unwrap().scale(root_of_unity(n, eta * xi));
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn variances_in_unit_interval(rho in any_state()) {
        let p = SchwingerPair::new(rho.dim()).unwrap();
        for op in [p.u(), p.v()] {
            let v = variance_unitary(&rho, op).unwrap();
            prop_assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn identities_hold(rho in any_state()) {
        let p = SchwingerPair::new(rho.dim()).unwrap();
        for c in identity_suite(&p, &rho).unwrap() {
            prop_assert!(c.passes(1e-9), "{} = {:e}", c.name, c.value);
        }
    }

    #[test]
    fn fh_inequality_and_zeroth_order_bound(rho in any_state()) {
        let p = SchwingerPair::new(rho.dim()).unwrap();
        let r = bound_report(&p, &rho).unwrap();
        prop_assert!(r.fh_slack >= -1e-9);
        prop_assert!(r.f >= -1e-15 && r.h >= -1e-15);
        let ms = massar_spindel_check(&p, &rho).unwrap();
        prop_assert!(ms.satisfied);
        if let Some(ok) = ms.product_satisfied {
            prop_assert!(ok);
        }
    }

    #[test]
    fn hierarchy_chain(rho in any_state()) {
        let n = rho.dim();
        let p = SchwingerPair::new(n).unwrap();
        let r1 = ground_state(n).unwrap().r1;
        if let Ok(h) = hierarchy_check(&p, &rho, r1) {
            prop_assert!(h.chain_ok, "slacks {:?}", h.slacks);
            prop_assert!(slack_ok(h.r4, 1.0));
        }
    }

    #[test]
    fn weyl_wigner_round_trip(rho in odd_state()) {
        let w = weyl_function(&rho).unwrap();
        let back = wigner_function(&rho).unwrap().to_weyl();
        for (a, b) in w.values.iter().zip(&back.values) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn weyl_moments_match_traces(rho in odd_state(), a in -6i64..6, b in -6i64..6) {
        let n = rho.dim();
        let p = SchwingerPair::new(n).unwrap();
        let w = weyl_function(&rho).unwrap();
        let got = reconstruct_uv_moment(&w, a, b).value;
        let want = rho.expect(&p.weyl_monomial(a, b)).unwrap();
        prop_assert!((got - want).norm() < 1e-10);
        let t = p.trig();
        let tp = reconstruct_trig_products(&w);
        let direct = rho.expect(&t.s_u.mat_mul(&t.s_v).unwrap()).unwrap();
        prop_assert!((tp.ss - direct).norm() < 1e-10);
    }

    #[test]
    fn sample_is_function_of_seed_and_index(
        n in 2usize..=6, seed in any::<u64>(), i in 0u64..50, mixed in any::<bool>()
    ) {
        let e = if mixed { Ensemble::MixedHs } else { Ensemble::PureHaar };
        let small = SamplerConfig::new(n, e, i + 1, seed).unwrap();
        let large = SamplerConfig::new(n, e, 1000, seed).unwrap();
        let a = small.sample_at(i).unwrap();
        let b = large.iter().nth(i as usize).unwrap().unwrap();
        prop_assert_eq!(a.matrix().as_slice(), b.matrix().as_slice());
    }
}
