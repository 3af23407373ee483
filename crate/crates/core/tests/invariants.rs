use hardcol::cover::{Cover, PartialColouring, Residual, Slot};
use hardcol::graph::{has_path_on, is_path_free, Graph};
use hardcol::hardcore::lambert_w;
use hardcol::oracle::{exact_list_colouring, oracle_path_copies};
use hardcol::resampler::{address_b, address_u, manual_params, run_phase1, Phase1Outcome};
use hardcol::verify::check_list_colouring;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn covered(max_n: usize) -> impl Strategy<Value = (Graph, Vec<Vec<u64>>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (
            Just(g),
            proptest::collection::vec(proptest::collection::btree_set(1u64..=5, 1..=3), n)
                .prop_map(|ls| ls.into_iter().map(|s| s.into_iter().collect()).collect()),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn erdos_gallai_bound((g, k) in (graph(7), 4usize..=6)) {
        if is_path_free(&g, k).unwrap() {
            prop_assert!(2 * g.m() <= g.n() * (k - 3));
        }
        prop_assert_eq!(has_path_on(&g, k - 1), !oracle_path_copies(&g, k).unwrap().is_empty());
    }

    #[test]
    fn address_b_keeps_states_valid((g, lists) in covered(7), seed in any::<u64>(), u_pick in any::<usize>()) {
        let cover = Cover::from_lists(g.clone(), &lists).unwrap();
        let n = g.n();
        let u = u_pick % n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // a few steps from all-blank give a varied starting state
        let mut sigma = PartialColouring::all_blank(n);
        for v in 0..n {
            if v != u && !sigma.is_coloured(v) {
                sigma = address_b(&cover, &sigma, v, 3, 1.0, &mut rng).unwrap().0;
            }
        }
        if sigma.is_coloured(u) {
            return Ok(());
        }
        let (tau, step) = address_b(&cover, &sigma, u, 3, 1.0, &mut rng).unwrap();
        prop_assert!(tau.validate(&cover).is_ok());
        prop_assert_eq!(tau.get(u), sigma.get(u));
        for v in 0..n {
            if v != u && !g.has_edge(u, v) {
                prop_assert_eq!(tau.get(v), sigma.get(v));
            }
        }
        prop_assert!(step.uncoloured.len() <= step.removed.len());
        for v in step.uncoloured {
            match tau.get(v) {
                Slot::Uncoloured(e) => prop_assert!(e.contains(v) && g.has_edge(e.lo(), e.hi())),
                other => prop_assert!(false, "{v} left as {other:?}"),
            }
        }
    }

    #[test]
    fn address_u_touches_one_vertex((g, lists) in covered(6), seed in any::<u64>()) {
        if g.m() == 0 {
            return Ok(());
        }
        let cover = Cover::from_lists(g.clone(), &lists).unwrap();
        let e = g.edges()[0];
        let mut slots = vec![Slot::Blank; g.n()];
        slots[e.lo()] = Slot::Uncoloured(e);
        let sigma = PartialColouring::from_slots(slots);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tau = address_u(&cover, &sigma, e.lo(), 0.5, &mut rng);
        prop_assert!(tau.validate(&cover).is_ok());
        prop_assert!(!matches!(tau.get(e.lo()), Slot::Uncoloured(_)));
        for v in 0..g.n() {
            if v != e.lo() {
                prop_assert_eq!(tau.get(v), sigma.get(v));
            }
        }
    }

    #[test]
    fn flawless_runs_are_flawless((g, lists) in covered(8), seed in any::<u64>()) {
        let cover = Cover::from_lists(g.clone(), &lists).unwrap();
        let p = manual_params(g.max_degree().max(2), 3, 0.0, 1.0, 1.0, 3).unwrap();
        let run = run_phase1(&cover, &p, &mut ChaCha8Rng::seed_from_u64(seed), 2_000).unwrap();
        if run.outcome == Phase1Outcome::Flawless {
            prop_assert!(run.sigma.uncoloured_vertices().is_empty());
            prop_assert_eq!(Residual::new(&cover, run.sigma.clone()).least_flaw(p.ell), None);
        }
    }

    #[test]
    fn exhaustive_colourings_verify((g, lists) in covered(9)) {
        if let Some(c) = exact_list_colouring(&g, &lists).unwrap() {
            prop_assert!(check_list_colouring(&g, &lists, &c).is_empty());
        }
    }

    #[test]
    fn lambert_inverts(x in -0.3678794411714423f64..1e6) {
        let w = lambert_w(x).unwrap();
        prop_assert!((w * w.exp() - x).abs() <= 1e-12 * x.abs().max(1.0));
    }
}
