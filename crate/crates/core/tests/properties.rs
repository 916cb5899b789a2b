mod common;

use flowgame::game::{gamma, GameTable};
use flowgame::io::{gen_convex, parse, serialize, GenParams};
use flowgame::maxflow::{max_flow, min_cut};
use flowgame::recognition::{gamma_fast, shapley_fast, verify_certificate};
use flowgame::structure::{
    count_paths_through, enumerate_simple_paths, is_acyclic, reduce, PathCount,
};
use flowgame::{recognize, Capacity, Coalition, Decision, FlowNetwork, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

const NAMES: [&str; 5] = ["s", "v0", "v1", "v2", "t"];

fn build(arcs: &[(usize, usize, u64, u64)]) -> FlowNetwork {
    let mut b = FlowNetwork::builder().vertices(NAMES).source("s").sink("t");
    for (k, &(u, v, num, den)) in arcs.iter().enumerate() {
        b = b.arc(
            format!("a{k}"),
            NAMES[u],
            NAMES[v],
            Capacity::from_ratio(num, den),
        );
    }
    b.build().unwrap()
}

/// Any direction, no self-loops.
fn network(max_arcs: usize) -> impl Strategy<Value = FlowNetwork> {
    prop::collection::vec((0..5usize, 1..5usize, 0..=12u64, 1..=4u64), 0..=max_arcs).prop_map(
        |raw| {
            let arcs: Vec<_> = raw
                .into_iter()
                .map(|(u, off, num, den)| (u, (u + off) % 5, num, den))
                .collect();
            build(&arcs)
        },
    )
}

/// Arcs only go forward in the order `s, v0, v1, v2, t`.
fn dag(max_arcs: usize) -> impl Strategy<Value = FlowNetwork> {
    prop::collection::vec((0..4usize, 1..5usize, 1..=12u64, 1..=4u64), 0..=max_arcs).prop_map(
        |raw| {
            let arcs: Vec<_> = raw
                .into_iter()
                .map(|(u, off, num, den)| (u, (u + off).min(4).max(u + 1), num, den))
                .collect();
            build(&arcs)
        },
    )
}

fn coalition_of(mask: u64, n: usize) -> Coalition {
    Coalition::from_indices((0..n).filter(|&i| mask >> i & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parser_never_panics(text in "\\PC{0,200}") {
        if let Err(e) = parse(&text) {
            prop_assert!(e.line >= 1);
            prop_assert!(e.line <= text.lines().count().max(1));
        }
    }

    #[test]
    fn parser_never_panics_on_near_documents(
        lines in prop::collection::vec(
            prop::sample::select(vec![
                "flowgame 1", "node s", "node t", "node a", "source s", "sink t",
                "sink s", "arc x s t 1", "arc x s a 1/2", "arc y a t 0.5", "arc z t t 1",
                "arc w s b 1", "arc v s t -1", "arc u s t 1/0", "# c", "", "node",
            ]),
            0..12,
        )
    ) {
        let text = lines.join("\n");
        if let Err(e) = parse(&text) {
            prop_assert!(e.line >= 1 && e.line <= lines.len().max(1));
        }
    }

    #[test]
    fn serialize_round_trips(n in network(8)) {
        let text = serialize(&n);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &n);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn max_flow_equals_min_cut(n in network(8), mask in any::<u64>()) {
        let s = coalition_of(mask, n.arc_count());
        let flow = max_flow(&n, &s).unwrap();
        let cut = min_cut(&n, &s).unwrap();
        prop_assert_eq!(flow.value(), &cut.capacity);
        for a in 0..n.arc_count() {
            prop_assert!(flow.flow(a) <= n.capacity(a));
            if !s.contains(a) {
                prop_assert!(flow.flow(a).is_zero());
            }
        }
    }

    #[test]
    fn gamma_is_monotone(n in network(8), mask in any::<u64>(), extra in 0..8usize) {
        let s = coalition_of(mask, n.arc_count());
        prop_assume!(extra < n.arc_count());
        prop_assert!(gamma(&n, &s).unwrap() <= gamma(&n, &s.with(extra)).unwrap());
    }

    #[test]
    fn scaling_preserves_verdict(n in network(8), num in 1..=7u64, den in 1..=3u64) {
        let factor = Rational::new(BigInt::from(num), BigInt::from(den));
        let mut scaled = n.clone();
        for a in 0..n.arc_count() {
            scaled = scaled.with_capacity(a, n.capacity(a).scale(&factor).unwrap());
        }
        let (v, w) = (recognize(&n), recognize(&scaled));
        prop_assert_eq!(v.is_convex(), w.is_convex());
        prop_assert_eq!(&v.removed_dummies, &w.removed_dummies);
        let grand = n.grand_coalition();
        prop_assert_eq!(
            gamma(&scaled, &grand).unwrap(),
            gamma(&n, &grand).unwrap().scale(&factor).unwrap()
        );
    }

    #[test]
    fn reduce_is_idempotent(n in network(8)) {
        let once = reduce(&n);
        let twice = reduce(&once.network);
        prop_assert!(twice.removed.is_empty());
        prop_assert_eq!(twice.network, once.network);
    }

    #[test]
    fn path_counts_match_enumeration(n in dag(8)) {
        let n = reduce(&n).network;
        prop_assert!(is_acyclic(&n).is_acyclic());
        let counts = count_paths_through(&n).unwrap();
        let paths = enumerate_simple_paths(&n, 10_000).unwrap();
        for (a, count) in counts.iter().enumerate() {
            let k = paths.iter().filter(|p| p.contains(a)).count();
            let expected = match k { 0 => PathCount::Zero, 1 => PathCount::One, _ => PathCount::Many };
            prop_assert_eq!(*count, expected);
        }
    }

    #[test]
    fn dividends_invert(n in network(7)) {
        let table = GameTable::new(&n).unwrap();
        let div = table.dividends();
        for mask in 0..=table.grand_mask() {
            let mut sum = Rational::zero();
            let mut sub = mask;
            loop {
                sum += div.get_mask(sub);
                if sub == 0 { break; }
                sub = (sub - 1) & mask;
            }
            prop_assert_eq!(&sum, table.value(mask).value());
        }
    }

    #[test]
    fn removed_arcs_are_null_players(n in network(7)) {
        let table = GameTable::new(&n).unwrap();
        for &a in &recognize(&n).removed_dummies {
            prop_assert!(common::is_dummy(&table, a));
        }
    }

    #[test]
    fn evidence_checks_out(n in network(9)) {
        let v = recognize(&n);
        match &v.decision {
            Decision::Convex(c) => {
                prop_assert_eq!(verify_certificate(&n, c), Ok(()));
                let grand = n.grand_coalition();
                let value = gamma(&n, &grand).unwrap();
                prop_assert_eq!(&gamma_fast(c, &grand).unwrap(), &value);
                prop_assert_eq!(&shapley_fast(c).total(), value.value());
            }
            Decision::NotConvex(w) => prop_assert_eq!(w.validate(&n), Ok(())),
        }
    }

    #[test]
    fn recognition_is_deterministic(n in network(9)) {
        prop_assert_eq!(recognize(&n), recognize(&n.clone()));
    }

    #[test]
    fn generator_is_deterministic(seed in any::<u64>(), paths in 1..6usize, depth in 0..4usize) {
        let params = GenParams { paths, depth, cap_min: 1, cap_max: 6 };
        let n = gen_convex(seed, &params);
        prop_assert_eq!(&n, &gen_convex(seed, &params));
        prop_assert!(recognize(&n).is_convex());
    }
}
