mod common;

use num_traits::{One, Zero};
use proptest::prelude::*;
use sldkit::noise::*;
use sldkit::pauli::{graph_stabilizer_generators, group_weight_distribution};
use sldkit::sld::*;
use sldkit::{Graph, Limits};

use common::{integers, naive_sld};

fn arb_graph(max_n: usize, d: u32) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), 0.1f64..0.9).prop_map(move |(n, seed, q)| {
        common::random_graph(&mut common::rng(seed), n, d, q)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_naive(g in arb_graph(10, 2)) {
        let sld = brute_force_sld(&g, &Limits::default()).unwrap();
        prop_assert_eq!(integers(&sld), naive_sld(&g));
    }

    #[test]
    fn qudit_enumeration_matches_naive(g in arb_graph(5, 3)) {
        let sld = graph_sld(&g, &Limits::default()).unwrap();
        prop_assert_eq!(integers(&sld), naive_sld(&g));
    }

    #[test]
    fn local_complement_preserves_sld(g in arb_graph(12, 2), v in 0usize..12) {
        let v = v % g.n();
        let lim = Limits::default();
        let lc = g.local_complement(v).unwrap();
        prop_assert_eq!(graph_sld(&g, &lim).unwrap(), graph_sld(&lc, &lim).unwrap());
    }

    #[test]
    fn group_route_matches_graph_route(g in arb_graph(14, 2)) {
        let lim = Limits::default();
        let group = group_weight_distribution(&graph_stabilizer_generators(&g), &lim).unwrap();
        prop_assert_eq!(group.values().to_vec(), brute_force_sld(&g, &lim).unwrap().values().to_vec());
    }

    #[test]
    fn qudit_group_route(g in arb_graph(5, 5)) {
        let lim = Limits::default();
        let group = group_weight_distribution(&graph_stabilizer_generators(&g), &lim).unwrap();
        prop_assert_eq!(group.values().to_vec(), graph_sld(&g, &lim).unwrap().values().to_vec());
    }

    #[test]
    fn low_weight_sectors_agree(g in arb_graph(12, 2), k in 0usize..5) {
        let sld = brute_force_sld(&g, &Limits::default()).unwrap();
        let k = k.min(g.n());
        let low = low_weight_sectors(&g, k).unwrap();
        let full = integers(&sld);
        for (m, a) in low.iter().enumerate() {
            prop_assert_eq!(*a as u64, full[m]);
        }
    }

    #[test]
    fn purity_verdict_consistent_with_threshold(g in arb_graph(9, 2), t in 0u32..100) {
        let sld = graph_sld(&g, &Limits::default()).unwrap();
        let report = threshold_purity(&sld, &SolverOptions::default()).unwrap();
        let p = (t as f64 + 0.5) / 100.0;
        let noisy = apply_noise(&sld, &NoiseSpec::from_f64(NoiseKind::Local, p).unwrap()).unwrap();
        let verdict = purity_criterion(&noisy);
        if let Some(bound) = report.p_lower_bound {
            if p < bound - 1e-9 {
                prop_assert!(verdict.entangled, "p = {} below bound {}", p, bound);
            }
        }
    }

    #[test]
    fn nsl_positive_iff_full_weight_sector_exceeds_one(g in arb_graph(10, 2)) {
        prop_assume!((0..g.n()).all(|i| g.degree(i) > 0));
        let sld = graph_sld(&g, &Limits::default()).unwrap();
        let report = threshold_nsl(&sld);
        let an_big = *sld.get(g.n()) > num_rational::BigRational::one();
        prop_assert_eq!(report.p_lower_bound.is_some_and(|p| p > 0.0), an_big);
    }

    #[test]
    fn noise_at_zero_is_identity(g in arb_graph(8, 3)) {
        let sld = graph_sld(&g, &Limits::default()).unwrap();
        for kind in [NoiseKind::Local, NoiseKind::Global] {
            let spec = NoiseSpec::new(kind, num_rational::BigRational::zero()).unwrap();
            prop_assert_eq!(apply_noise(&sld, &spec).unwrap().values().to_vec(), sld.values().to_vec());
        }
    }
}

#[test]
fn dense_noise_oracle_matches() {
    let g = Graph::from_edges(3, 2, &[(0, 1, 1), (1, 2, 1)]).unwrap();
    let lim = Limits::default();
    let sld = graph_sld(&g, &lim).unwrap();
    let amps = graph_state_amplitudes(&g, &lim).unwrap();
    for (kind, local) in [(NoiseKind::Local, true), (NoiseKind::Global, false)] {
        let spec = NoiseSpec::from_f64(kind, 0.25).unwrap();
        let fast = apply_noise(&sld, &spec).unwrap().to_f64();
        let dense = common::noisy_sld_dense(&amps, 3, local, 0.25);
        for (a, b) in fast.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-12, "{fast:?} vs {dense:?}");
        }
    }
}
