//! Small reference networks used across the test suites, the CLI examples and
//! the documentation.

use crate::network::FlowNetwork;
use crate::rational::Capacity;

fn build(arcs: &[(&str, &str, &str, u64)]) -> FlowNetwork {
    FlowNetwork::from_arcs(
        "s",
        "t",
        arcs.iter()
            .map(|&(l, u, v, c)| (l, u, v, Capacity::from_integer(c))),
    )
    .expect("fixture networks are well formed")
}

/// Single path `s -> a -> t`.
pub fn n1() -> FlowNetwork {
    build(&[("sa", "s", "a", 2), ("at", "a", "t", 3)])
}

/// A shared arc feeding two parallel arcs; convex.
pub fn n2() -> FlowNetwork {
    build(&[
        ("sa", "s", "a", 5),
        ("e1", "a", "t", 2),
        ("e2", "a", "t", 3),
    ])
}

/// As [`n2`] with the shared arc one unit short; not convex.
pub fn n3() -> FlowNetwork {
    build(&[
        ("sa", "s", "a", 4),
        ("e1", "a", "t", 2),
        ("e2", "a", "t", 3),
    ])
}

/// Two arcs in, two arcs out of one internal vertex; not convex.
pub fn n4() -> FlowNetwork {
    build(&[
        ("f1", "s", "w", 1),
        ("f2", "s", "w", 1),
        ("g1", "w", "t", 1),
        ("g2", "w", "t", 1),
    ])
}

/// A two-cycle between `a` and `b`, both on s-t paths; not convex.
pub fn n5() -> FlowNetwork {
    build(&[
        ("sa", "s", "a", 1),
        ("sb", "s", "b", 1),
        ("ab", "a", "b", 1),
        ("ba", "b", "a", 1),
        ("at", "a", "t", 1),
        ("bt", "b", "t", 1),
    ])
}

/// One path with two bottleneck arcs plus a second path; convex.
pub fn n6() -> FlowNetwork {
    build(&[
        ("sa", "s", "a", 5),
        ("ab", "a", "b", 2),
        ("bt", "b", "t", 2),
        ("at", "a", "t", 3),
    ])
}

/// [`n1`] with a pendant two-cycle hanging off `a`.
pub fn pendant_cycle() -> FlowNetwork {
    build(&[
        ("sa", "s", "a", 2),
        ("at", "a", "t", 3),
        ("ab", "a", "b", 1),
        ("ba", "b", "a", 1),
    ])
}

/// All six named fixtures with their names.
pub fn all() -> Vec<(&'static str, FlowNetwork)> {
    vec![
        ("n1", n1()),
        ("n2", n2()),
        ("n3", n3()),
        ("n4", n4()),
        ("n5", n5()),
        ("n6", n6()),
    ]
}
