mod common;

use hdel_core::adversary::{corrupt_advice, gadget_duel_with_advice, AdviceRule, ReinsertionMode};
use hdel_core::advice::{AdviceTape, CorruptionScheme, Provenance};
use hdel_core::exact::{lex_min_optimum, min_deletion_set, packing_lower_bound};
use hdel_core::graph::{OnlineGraph, VertexId};
use hdel_core::harness::instance::Instance;
use hdel_core::harness::verify_bounds;
use hdel_core::online::{check_counter_lemmas, run_strategy, OnlineRun};
use hdel_core::pattern::{find_copies, first_copy_in, is_h_free_in, PatternGraph};
use hdel_core::Rational;
use proptest::prelude::*;

const PATTERNS: [&str; 7] = ["K3", "K4", "C4", "C5", "P3", "P5", "S3"];

fn graph_from(n: usize, edges: &[bool], advice: &[bool]) -> OnlineGraph {
    let mut g = OnlineGraph::new();
    let mut it = edges.iter().copied().cycle();
    for v in 0..n {
        let nbrs: Vec<VertexId> = (0..v).filter(|_| it.next().unwrap_or(false)).map(VertexId).collect();
        g.add_vertex(&nbrs, advice.get(v).copied().unwrap_or(false)).unwrap();
    }
    g
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = OnlineGraph> {
    (1..=max_n, prop::collection::vec(any::<bool>(), 1..64), prop::collection::vec(any::<bool>(), 0..12))
        .prop_map(|(n, e, a)| graph_from(n, &e, &a))
}

fn arb_pattern() -> impl Strategy<Value = PatternGraph> {
    prop::sample::select(PATTERNS.to_vec()).prop_map(|n| PatternGraph::builtin(n).unwrap())
}

fn arb_p() -> impl Strategy<Value = Rational> {
    (0i64..10).prop_map(|n| Rational::new(n, 10))
}

fn arb_strategy() -> impl Strategy<Value = hdel_core::online::Strategy> {
    prop_oneof![
        arb_p().prop_map(hdel_core::online::Strategy::AlgP),
        Just(hdel_core::online::Strategy::Naive),
        Just(hdel_core::online::Strategy::AlgOne),
        Just(hdel_core::online::Strategy::GreedyOverlap),
    ]
}

fn instance_of(g: &OnlineGraph, h: &PatternGraph, provenance: Provenance) -> Instance {
    Instance::from_graph(g, h, provenance)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph_bookkeeping(g in arb_graph(12), picks in prop::collection::vec(any::<bool>(), 12)) {
        let mut g = g;
        let victims: Vec<VertexId> = g.vertices().filter(|v| picks[v.0]).collect();
        g.delete_vertices(&victims).unwrap();
        prop_assert_eq!(g.deleted_count() + g.alive().len(), g.len());
        prop_assert_eq!(g.deletion_log(), victims.as_slice());
        for v in g.vertices() {
            for &u in g.neighbors(v) {
                prop_assert!(g.has_edge(u, v) && g.has_edge(v, u));
                prop_assert!(u != v);
            }
        }
        if let Some(&v) = victims.first() {
            prop_assert!(g.delete_vertices(&[v]).is_err());
        }
        prop_assert_eq!(g.offline().deleted_count(), 0);
    }

    #[test]
    fn copies_match_brute_force(g in arb_graph(9), h in arb_pattern(), mask in prop::collection::vec(any::<bool>(), 9)) {
        let present: Vec<bool> = (0..g.len()).map(|v| mask[v] || v % 3 == 0).collect();
        let fast = hdel_core::pattern::find_copies_in(&g, &h, &present, None);
        let slow = common::copies(&g, &h, &present);
        let fast_sets: Vec<Vec<usize>> = fast.iter().map(|c| c.vertices.iter().map(|v| v.0).collect()).collect();
        prop_assert_eq!(&fast_sets, &slow);
        for c in &fast {
            for a in 0..h.k() {
                for b in a + 1..h.k() {
                    prop_assert_eq!(h.has_edge(a, b), g.has_edge(c.mapping[a], c.mapping[b]));
                }
            }
        }
        let first = first_copy_in(&g, &h, &present).map(|c| c.vertices.iter().map(|v| v.0).collect::<Vec<_>>());
        prop_assert_eq!(first, slow.first().cloned());
        prop_assert_eq!(is_h_free_in(&g, &h, &present), slow.is_empty());
    }

    #[test]
    fn exact_matches_brute_force(g in arb_graph(9), h in arb_pattern()) {
        let copies: Vec<common::Set> = common::all_copies(&g, &h).iter().map(|c| common::to_set(c)).collect();
        let best = common::min_hitting(g.len(), &copies);
        let r = min_deletion_set(&g, &h, None).unwrap();
        prop_assert_eq!(r.cost, best);
        prop_assert!(packing_lower_bound(&g, &h) <= best);
        let lex = lex_min_optimum(&g, &h);
        let smallest = common::hitting_sets_up_to(g.len(), &copies, best)
            .into_iter()
            .find(|s| s.len() == best)
            .unwrap();
        prop_assert_eq!(lex.solution.iter().map(|v| v.0).collect::<Vec<_>>(), smallest);
    }

    #[test]
    fn every_strategy_keeps_the_alive_graph_h_free(g in arb_graph(10), h in arb_pattern(), s in arb_strategy()) {
        let mut run = OnlineRun::new(&h, s.policy().unwrap());
        for v in g.vertices() {
            run.reveal(g.backward_neighbors(v), g.advice(v)).unwrap();
            prop_assert!(common::copies(run.graph(), &h, &run.graph().alive_mask()).is_empty());
        }
        prop_assert!(run.violations().is_empty());
    }

    #[test]
    fn algp_counters_and_bounds(g in arb_graph(10), h in arb_pattern(), p in arb_p(), correct in any::<bool>()) {
        let tape = if correct {
            hdel_core::exact::correct_advice(&g, &h)
        } else {
            AdviceTape::new(g.advice_bits().to_vec(), Provenance::Untrusted)
        };
        let inst = instance_of(&g, &h, tape.provenance.clone()).with_advice(tape);
        let report = run_strategy(&inst, hdel_core::online::Strategy::AlgP(p)).unwrap();
        prop_assert!(report.invariant_violations.is_empty(), "{:?}", report.invariant_violations);
        prop_assert!(check_counter_lemmas(&report, p).is_empty());
        prop_assert!(verify_bounds(&report, Some(&inst)).passed());
        if correct {
            prop_assert!(!report.case1_triggered);
        }
    }

    #[test]
    fn runs_are_deterministic(g in arb_graph(10), h in arb_pattern(), s in arb_strategy()) {
        let inst = instance_of(&g, &h, Provenance::Untrusted);
        prop_assert_eq!(run_strategy(&inst, s).unwrap(), run_strategy(&inst, s).unwrap());
    }

    #[test]
    fn instances_round_trip(g in arb_graph(12), h in arb_pattern()) {
        let inst = instance_of(&g, &h, Provenance::Untrusted);
        let text = inst.emit();
        let back = Instance::parse(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.emit(), text);
        prop_assert_eq!(back.to_graph().unwrap(), g.offline());
    }

    #[test]
    fn corruption_is_seeded_and_length_preserving(bits in prop::collection::vec(any::<bool>(), 0..40), seed in any::<u64>(), q in 0.0f64..=1.0) {
        let tape = AdviceTape::new(bits, Provenance::Correct);
        for scheme in [CorruptionScheme::FlipEach(q), CorruptionScheme::AllZeros, CorruptionScheme::AllOnes, CorruptionScheme::ShiftToClassLabel] {
            let a = corrupt_advice(&tape, &scheme, seed);
            prop_assert_eq!(a.len(), tape.len());
            prop_assert_eq!(&a, &corrupt_advice(&tape, &scheme, seed));
            prop_assert_eq!(a.provenance, Provenance::Corrupted(scheme));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gadgets_are_blow_ups(
        name in prop::sample::select(vec![("K3", ReinsertionMode::FalseTwin), ("K4", ReinsertionMode::FalseTwin), ("C4", ReinsertionMode::TrueTwin), ("C5", ReinsertionMode::TrueTwin), ("P5", ReinsertionMode::TrueTwin), ("S3", ReinsertionMode::TrueTwin)]),
        s in arb_strategy(),
        classwise in any::<bool>(),
    ) {
        let (pat, mode) = name;
        let h = PatternGraph::builtin(pat).unwrap();
        let rule = if classwise { AdviceRule::Class1GetsOne } else { AdviceRule::None };
        let out = gadget_duel_with_advice(&h, mode, s.policy().unwrap(), 60, rule).unwrap();
        let gadget = &out.gadget;
        prop_assert!(gadget.peak_alive_per_class <= 1);
        prop_assert_eq!(gadget.designated_class.is_some(), !gadget.unbounded);
        let g = &out.graph;
        // classes are independent sets (false twins) or cliques (true twins), and
        // across classes the edges follow H
        for v in g.vertices() {
            for u in g.vertices().filter(|&u| u < v) {
                let (cu, cv) = (gadget.class_of(u).unwrap(), gadget.class_of(v).unwrap());
                let expected = if cu == cv { mode == ReinsertionMode::TrueTwin } else { h.has_edge(cu, cv) };
                prop_assert_eq!(g.has_edge(u, v), expected);
            }
        }
        for c in find_copies(&g.offline(), &h, None) {
            let mut classes: Vec<usize> = c.vertices.iter().map(|&v| gadget.class_of(v).unwrap()).collect();
            classes.sort_unstable();
            prop_assert_eq!(classes, (0..h.k()).collect::<Vec<_>>());
        }
    }
}
