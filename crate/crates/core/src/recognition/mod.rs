//! Polynomial-time convexity recognition.
//!
//! A flow game is convex iff, after dropping dummy arcs, the network is
//! acyclic, every bottleneck arc lies on exactly one s-t path, and every other
//! arc can carry the combined capacity of all s-t paths through it. On convex
//! networks the game is the sum of unanimity games on its s-t paths, weighted
//! by path capacity, which gives closed forms for value, Shapley value and a
//! PMAS.

mod bottleneck;
mod certificate;
mod diagnostics;
mod witness;

use std::collections::HashMap;

pub use bottleneck::{bottleneck_set, BottleneckSet};
pub use certificate::{
    gamma_fast, pmas_construct, shapley_fast, verify_certificate, Certificate, CertificateError,
};
pub use diagnostics::{
    structural_diagnostics, structural_diagnostics_with_limit, Check, CheckKind, DiagnosticReport,
    Evidence, Outcome, DEFAULT_DIAGNOSTIC_PATH_LIMIT,
};
pub use witness::{Witness, WitnessError, WitnessKind};

use crate::network::{FlowNetwork, StPath};
use crate::rational::Capacity;
use crate::structure::{
    bfs_path, dag_paths_between, essential_arcs, is_acyclic, trace_with_counts, Acyclicity,
    PathCounts,
};

/// Outcome of [`recognize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub decision: Decision,
    /// Arcs on no simple s-t path of positive capacity, ascending. They do not
    /// affect any coalition value and are left out of the decision.
    pub removed_dummies: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Convex(Certificate),
    NotConvex(Witness),
}

impl Verdict {
    pub fn is_convex(&self) -> bool {
        matches!(self.decision, Decision::Convex(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.decision {
            Decision::Convex(c) => Some(c),
            Decision::NotConvex(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.decision {
            Decision::Convex(_) => None,
            Decision::NotConvex(w) => Some(w),
        }
    }
}

/// Decides convexity of the flow game on `network`.
///
/// Dummy arcs are classified exactly first (see
/// [`essential_arcs`](crate::structure::essential_arcs)); the three conditions
/// are then checked on the remaining subnetwork. Apart from the dummy
/// classification of arcs on directed cycles, everything runs in
/// `O(|E| (|V| + |E|))`.
pub fn recognize(network: &FlowNetwork) -> Verdict {
    let essential = essential_arcs(network);
    let kept: Vec<usize> = (0..network.arc_count()).filter(|&a| essential[a]).collect();
    let removed_dummies: Vec<usize> = (0..network.arc_count())
        .filter(|&a| !essential[a])
        .collect();
    let work = network.restrict_to(&kept);
    let decision = decide(&work, network.arc_count(), &kept);
    Verdict {
        decision,
        removed_dummies,
    }
}

/// Reports the first arc of `network` that lies on no simple s-t path of
/// positive capacity, for callers that require reduced input.
pub fn require_reduced(network: &FlowNetwork) -> Option<Witness> {
    essential_arcs(network)
        .iter()
        .position(|&e| !e)
        .map(|arc| Witness::DummyArcRetained { arc })
}

fn decide(work: &FlowNetwork, arc_count: usize, map: &[usize]) -> Decision {
    let order = match is_acyclic(work) {
        Acyclicity::Acyclic { order } => order,
        Acyclicity::Cyclic { cycle } => {
            return Decision::NotConvex(Witness::Cycle {
                arcs: cycle.iter().map(|&a| map[a]).collect(),
            })
        }
    };
    let counts = PathCounts::compute(work, &order, 2);
    let bottlenecks = bottleneck_set(work).expect("acyclic");

    for b in bottlenecks.iter() {
        if counts.through(work, b) != 1 {
            let (anchored, other) = two_paths_through(work, b);
            return Decision::NotConvex(Witness::SharedBottleneck {
                arc: map[b],
                anchored: anchored.remap(map),
                other: other.remap(map),
            });
        }
    }

    let mut paths: Vec<StPath> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut anchors = Vec::new();
    for b in bottlenecks.iter() {
        let path = trace_with_counts(work, b, &counts);
        let k = *index.entry(path.arcs().to_vec()).or_insert_with(|| {
            paths.push(path);
            paths.len() - 1
        });
        anchors.push((b, k));
    }

    let mut demand = vec![Capacity::zero(); work.arc_count()];
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); work.arc_count()];
    for (k, p) in paths.iter().enumerate() {
        for &a in p.arcs() {
            demand[a] += p.capacity();
            through[a].push(k);
        }
    }
    for e in (0..work.arc_count()).filter(|&e| !bottlenecks.contains(e)) {
        if work.capacity(e) < &demand[e] {
            return Decision::NotConvex(Witness::CapacityDeficit {
                arc: map[e],
                paths: through[e].iter().map(|&k| paths[k].remap(map)).collect(),
                capacity: work.capacity(e).clone(),
                demand: demand[e].clone(),
            });
        }
    }

    let mut members = vec![false; arc_count];
    for b in bottlenecks.iter() {
        members[map[b]] = true;
    }
    Decision::Convex(Certificate::new(
        arc_count,
        paths.iter().map(|p| p.remap(map)).collect(),
        BottleneckSet::from_members(members),
        anchors.into_iter().map(|(b, k)| (map[b], k)).collect(),
    ))
}

/// Two distinct s-t paths through a bottleneck arc `b` of an acyclic network
/// that has at least two; the first has `b` as a minimum-capacity arc.
fn two_paths_through(network: &FlowNetwork, b: usize) -> (StPath, StPath) {
    let arc = network.arc(b);
    let (s, t) = (network.source(), network.sink());
    let floor = network.capacity(b);
    let wide = |a: usize| network.capacity(a) >= floor;
    let mut anchored = bfs_path(network, s, arc.tail, wide).expect("bottleneck tail reachable");
    anchored.push(b);
    anchored.extend(bfs_path(network, arc.head, t, wide).expect("bottleneck head coreachable"));

    let prefixes = dag_paths_between(network, s, arc.tail, 2);
    let suffixes = dag_paths_between(network, arc.head, t, 2);
    let other = prefixes
        .iter()
        .flat_map(|p| {
            suffixes.iter().map(move |q| {
                let mut arcs = p.clone();
                arcs.push(b);
                arcs.extend_from_slice(q);
                arcs
            })
        })
        .find(|arcs| *arcs != anchored)
        .expect("at least two paths through the arc");
    (
        StPath::new(network, anchored).expect("simple in an acyclic network"),
        StPath::new(network, other).expect("simple in an acyclic network"),
    )
}
