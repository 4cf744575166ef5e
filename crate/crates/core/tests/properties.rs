//! Randomized invariants over the numerical kernels.

use proptest::prelude::*;

use subdiff::harness::{coarsen_restrict, norms};
use subdiff::mesh::{build_laplacian, eigenpairs, tridiag_solve};
use subdiff::stepper::{advance_with_data, scalar_reduce, DiscreteData, SolverConfig};
use subdiff::weights::{l1bar_weights, sbd_weights, TemporalScheme};
use subdiff::SpatialFlavor;

fn linf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shifted_solve_has_small_residual(
        n in 2usize..64,
        c in 0.0f64..1e4,
        s in 1e-3f64..1e2,
        seed in any::<u64>(),
    ) {
        let op = build_laplacian::<f64>(n).unwrap();
        let mut state = seed | 1;
        let rhs: Vec<f64> = (0..n - 1)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
            })
            .collect();
        let x = tridiag_solve(&op, c, s, &rhs).unwrap();
        let ax = op.apply(&x).unwrap();
        let resid: Vec<f64> = ax
            .iter()
            .zip(&x)
            .zip(&rhs)
            .map(|((axi, xi), ri)| c * xi + s * axi - ri)
            .collect();
        // relative to the system scale
        let scale = linf(&rhs).max(1.0);
        prop_assert!(linf(&resid) <= 1e-11 * scale * (1.0 + c + s * 4.0 * (n * n) as f64) / (1.0 + c));
    }

    #[test]
    fn l1bar_telescopes_for_random_alpha(alpha in 0.01f64..0.99, n in 1usize..200) {
        let w = l1bar_weights(alpha, 1.0, n).unwrap();
        let mut partial = 0.0;
        for m in 0..n {
            partial += w.values[m];
            let g = subdiff::special::gamma(3.0 - alpha);
            let bm = ((m as f64 + 1.0).powf(2.0 - alpha) - (m as f64).powf(2.0 - alpha)) / g;
            prop_assert!((partial - bm).abs() <= 1e-13 * bm);
        }
    }

    #[test]
    fn weights_scale_exactly_with_tau(
        alpha in 0.05f64..0.95,
        tau in 1e-4f64..1.0,
        sbd in any::<bool>(),
    ) {
        let (a, b) = if sbd {
            (sbd_weights(alpha, tau, 24).unwrap(), sbd_weights(alpha, 1.0, 24).unwrap())
        } else {
            (l1bar_weights(alpha, tau, 24).unwrap(), l1bar_weights(alpha, 1.0, 24).unwrap())
        };
        let f = tau.powf(1.0 - alpha);
        for (x, y) in a.values.iter().zip(&b.values) {
            prop_assert!((x - f * y).abs() <= 1e-14 * (f * y).abs().max(1e-300));
        }
    }

    #[test]
    fn norm_inequality_and_restriction(v in prop::collection::vec(-1e3f64..1e3, 3..64)) {
        let zero = vec![0.0; v.len()];
        let (l2, li) = norms(&v, &zero).unwrap();
        prop_assert!(li >= l2);
        prop_assert!(l2 >= li / (v.len() as f64).sqrt() - 1e-12);
        if v.len() % 2 == 1 {
            let coarse = coarsen_restrict(&v).unwrap();
            prop_assert_eq!(coarse.len(), (v.len() - 1) / 2);
            for (i, c) in coarse.iter().enumerate() {
                prop_assert_eq!(*c, v[2 * i + 1]);
            }
        }
    }

    #[test]
    fn advance_stays_on_eigenmodes(
        alpha in 0.1f64..0.9,
        mode in 0usize..7,
        sbd in any::<bool>(),
    ) {
        let n = 8;
        let steps = 16;
        let scheme = if sbd { TemporalScheme::SbdBar } else { TemporalScheme::L1Bar };
        let pair = &eigenpairs::<f64>(n).unwrap()[mode];
        let config = SolverConfig {
            temporal: scheme,
            spatial: SpatialFlavor::Central,
            space_intervals: n,
            time_steps: steps,
        };
        let data = DiscreteData { u0: pair.vector.clone(), source: None };
        let traj = advance_with_data(alpha, 1.0, &data, &config).unwrap();
        let scalars = scalar_reduce(scheme, alpha, 1.0 / steps as f64, pair.value, steps, 1.0, &[])
            .unwrap();
        for (state, c) in traj.states.iter().zip(&scalars) {
            for (u, p) in state.iter().zip(&pair.vector) {
                prop_assert!((u - c * p).abs() <= 1e-11);
            }
        }
    }
}
