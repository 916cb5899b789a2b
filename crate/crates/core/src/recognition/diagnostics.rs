//! Independent structural checks for reporting. Each one is a necessary
//! condition for convexity; none of them is used by [`super::recognize`].

use std::collections::HashMap;

use super::bottleneck_set;
use crate::error::Error;
use crate::maxflow::{max_flow, max_flow_value};
use crate::network::FlowNetwork;
use crate::rational::Capacity;
use crate::structure::{
    enumerate_simple_paths, essential_arcs, is_acyclic, trace_with_counts, Acyclicity, PathCount,
    PathCounts,
};

/// Path enumeration bound for the capacity-sufficiency check.
pub const DEFAULT_DIAGNOSTIC_PATH_LIMIT: usize = 10_000;
/// Above this many arcs the per-arc max-flow check is skipped.
const ESSENTIALITY_ARC_LIMIT: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    /// Every arc carries flow in a maximum flow and removing it lowers the value.
    ArcEssentiality,
    Acyclicity,
    /// Every internal vertex has in-degree 1 or out-degree 1.
    DegreeCondition,
    /// Every bottleneck arc lies on exactly one s-t path.
    BottleneckExclusivity,
    /// Every non-bottleneck arc can carry all s-t paths through it.
    NonBottleneckSufficiency,
    /// The paths through bottleneck arcs cover every arc and share no bottleneck.
    BottleneckDisjointCover,
}

impl CheckKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::ArcEssentiality => "arc_essentiality",
            CheckKind::Acyclicity => "acyclicity",
            CheckKind::DegreeCondition => "degree_condition",
            CheckKind::BottleneckExclusivity => "bottleneck_exclusivity",
            CheckKind::NonBottleneckSufficiency => "non_bottleneck_sufficiency",
            CheckKind::BottleneckDisjointCover => "bottleneck_disjoint_cover",
        }
    }
}

/// Arc and vertex indices refer to the network passed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    NoFlow {
        arc: usize,
    },
    NotCritical {
        arc: usize,
    },
    Cycle {
        arcs: Vec<usize>,
    },
    Degree {
        vertex: usize,
        in_degree: usize,
        out_degree: usize,
    },
    SharedBottleneck {
        arc: usize,
        count: PathCount,
    },
    CapacityDeficit {
        arc: usize,
        capacity: Capacity,
        demand: Capacity,
    },
    UncoveredArc {
        arc: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Evidence),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagnosticReport {
    pub checks: Vec<Check>,
}

impl DiagnosticReport {
    pub fn get(&self, kind: CheckKind) -> &Outcome {
        &self
            .checks
            .iter()
            .find(|c| c.kind == kind)
            .expect("every kind is reported")
            .outcome
    }

    /// True when no check failed (skipped checks count as passing).
    pub fn all_pass(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.outcome, Outcome::Fail(_)))
    }
}

pub fn structural_diagnostics(network: &FlowNetwork) -> DiagnosticReport {
    structural_diagnostics_with_limit(network, DEFAULT_DIAGNOSTIC_PATH_LIMIT)
}

/// Runs every check on the subnetwork of non-dummy arcs.
pub fn structural_diagnostics_with_limit(
    network: &FlowNetwork,
    path_limit: usize,
) -> DiagnosticReport {
    let essential = essential_arcs(network);
    let map: Vec<usize> = (0..network.arc_count()).filter(|&a| essential[a]).collect();
    let work = network.restrict_to(&map);
    let order = match is_acyclic(&work) {
        Acyclicity::Acyclic { order } => Ok(order),
        Acyclicity::Cyclic { cycle } => Err(cycle),
    };
    let mut checks = Vec::new();
    let mut push = |kind, outcome| checks.push(Check { kind, outcome });

    push(CheckKind::ArcEssentiality, essentiality(&work, &map));
    push(
        CheckKind::Acyclicity,
        match &order {
            Ok(_) => Outcome::Pass,
            Err(cycle) => Outcome::Fail(Evidence::Cycle {
                arcs: cycle.iter().map(|&a| map[a]).collect(),
            }),
        },
    );
    push(CheckKind::DegreeCondition, degree_condition(&work));

    match &order {
        Ok(order) => {
            let counts = PathCounts::compute(&work, order, 2);
            push(
                CheckKind::BottleneckExclusivity,
                exclusivity(&work, &counts, &map),
            );
            push(
                CheckKind::NonBottleneckSufficiency,
                sufficiency(&work, path_limit, &map),
            );
            push(
                CheckKind::BottleneckDisjointCover,
                disjoint_cover(&work, &counts, &map),
            );
        }
        Err(_) => {
            let skipped = || Outcome::Skipped("network has a directed cycle".to_owned());
            push(CheckKind::BottleneckExclusivity, skipped());
            push(
                CheckKind::NonBottleneckSufficiency,
                sufficiency(&work, path_limit, &map),
            );
            push(CheckKind::BottleneckDisjointCover, skipped());
        }
    }
    DiagnosticReport { checks }
}

fn essentiality(work: &FlowNetwork, map: &[usize]) -> Outcome {
    let m = work.arc_count();
    if m > ESSENTIALITY_ARC_LIMIT {
        return Outcome::Skipped(format!("more than {ESSENTIALITY_ARC_LIMIT} arcs"));
    }
    let flow = max_flow(work, &work.grand_coalition()).expect("grand coalition is valid");
    if let Some(arc) = (0..m).find(|&a| !flow.flow(a).is_positive()) {
        return Outcome::Fail(Evidence::NoFlow { arc: map[arc] });
    }
    let mut usable = vec![true; m];
    for a in 0..m {
        usable[a] = false;
        let without = max_flow_value(work, &usable);
        usable[a] = true;
        if &without >= flow.value() {
            return Outcome::Fail(Evidence::NotCritical { arc: map[a] });
        }
    }
    Outcome::Pass
}

fn degree_condition(work: &FlowNetwork) -> Outcome {
    (0..work.vertex_count())
        .filter(|&v| v != work.source() && v != work.sink())
        .find(|&v| work.in_degree(v) >= 2 && work.out_degree(v) >= 2)
        .map_or(Outcome::Pass, |v| {
            Outcome::Fail(Evidence::Degree {
                vertex: v,
                in_degree: work.in_degree(v),
                out_degree: work.out_degree(v),
            })
        })
}

fn exclusivity(work: &FlowNetwork, counts: &PathCounts, map: &[usize]) -> Outcome {
    let b = bottleneck_set(work).expect("acyclic");
    let shared = b.iter().find(|&a| counts.through(work, a) != 1);
    shared.map_or(Outcome::Pass, |a| {
        Outcome::Fail(Evidence::SharedBottleneck {
            arc: map[a],
            count: if counts.through(work, a) == 0 {
                PathCount::Zero
            } else {
                PathCount::Many
            },
        })
    })
}

/// Uses every simple s-t path, so it does not depend on the bottleneck paths
/// being unique.
fn sufficiency(work: &FlowNetwork, limit: usize, map: &[usize]) -> Outcome {
    let paths = match enumerate_simple_paths(work, limit) {
        Ok(paths) => paths,
        Err(Error::PathLimitExceeded { limit }) => {
            return Outcome::Skipped(format!("more than {limit} s-t paths"))
        }
        Err(e) => return Outcome::Skipped(e.to_string()),
    };
    let m = work.arc_count();
    let mut demand = vec![Capacity::zero(); m];
    let mut bottleneck = vec![false; m];
    for p in &paths {
        for &a in p.arcs() {
            demand[a] += p.capacity();
            bottleneck[a] |= work.capacity(a) == p.capacity();
        }
    }
    (0..m)
        .find(|&a| !bottleneck[a] && work.capacity(a) < &demand[a])
        .map_or(Outcome::Pass, |a| {
            Outcome::Fail(Evidence::CapacityDeficit {
                arc: map[a],
                capacity: work.capacity(a).clone(),
                demand: demand[a].clone(),
            })
        })
}

fn disjoint_cover(work: &FlowNetwork, counts: &PathCounts, map: &[usize]) -> Outcome {
    let b = bottleneck_set(work).expect("acyclic");
    if b.iter().any(|a| counts.through(work, a) != 1) {
        return Outcome::Skipped("a bottleneck arc lies on several paths".to_owned());
    }
    let mut owner: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut covered = vec![false; work.arc_count()];
    for a in b.iter() {
        let path = trace_with_counts(work, a, counts);
        for &x in path.arcs() {
            covered[x] = true;
            if b.contains(x) {
                let first = owner.entry(x).or_insert_with(|| path.arcs().to_vec());
                if first.as_slice() != path.arcs() {
                    return Outcome::Fail(Evidence::SharedBottleneck {
                        arc: map[x],
                        count: PathCount::Many,
                    });
                }
            }
        }
    }
    covered.iter().position(|&c| !c).map_or(Outcome::Pass, |a| {
        Outcome::Fail(Evidence::UncoveredArc { arc: map[a] })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn convex_fixture_passes_everything() {
        let r = structural_diagnostics(&fixtures::n2());
        assert!(r.all_pass(), "{r:?}");
        assert!(r.checks.iter().all(|c| c.outcome == Outcome::Pass));
    }

    #[test]
    fn crossing_fails_degree_at_w() {
        let n4 = fixtures::n4();
        match structural_diagnostics(&n4).get(CheckKind::DegreeCondition) {
            Outcome::Fail(Evidence::Degree { vertex, .. }) => {
                assert_eq!(n4.vertex_name(*vertex), "w")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn deficient_fails_sufficiency_at_sa() {
        let n3 = fixtures::n3();
        assert_eq!(
            structural_diagnostics(&n3).get(CheckKind::NonBottleneckSufficiency),
            &Outcome::Fail(Evidence::CapacityDeficit {
                arc: 0,
                capacity: Capacity::from_integer(4),
                demand: Capacity::from_integer(5),
            })
        );
    }

    #[test]
    fn cycle_skips_path_checks() {
        let r = structural_diagnostics(&fixtures::n5());
        assert!(matches!(r.get(CheckKind::Acyclicity), Outcome::Fail(_)));
        assert!(matches!(
            r.get(CheckKind::BottleneckExclusivity),
            Outcome::Skipped(_)
        ));
    }
}
