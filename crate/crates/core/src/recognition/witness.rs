//! Evidence of non-convexity, and its independent re-validation.

use thiserror::Error;

use crate::network::{FlowNetwork, StPath};
use crate::rational::Capacity;
use crate::structure::essential_arcs;

/// Concrete evidence that one of the three structural conditions fails.
/// Arc indices refer to the network passed to [`super::recognize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A directed cycle whose arcs all lie on simple s-t paths.
    Cycle { arcs: Vec<usize> },
    /// A bottleneck arc on two distinct s-t paths; it is the minimum arc of
    /// `anchored`.
    SharedBottleneck {
        arc: usize,
        anchored: StPath,
        other: StPath,
    },
    /// A non-bottleneck arc whose capacity is below the summed capacities of
    /// the s-t paths through it.
    CapacityDeficit {
        arc: usize,
        paths: Vec<StPath>,
        capacity: Capacity,
        demand: Capacity,
    },
    /// An arc on no simple s-t path left in a network that was expected to be
    /// reduced. Returned by [`super::require_reduced`].
    DummyArcRetained { arc: usize },
}

impl Witness {
    pub fn kind(&self) -> WitnessKind {
        match self {
            Witness::Cycle { .. } => WitnessKind::Cycle,
            Witness::SharedBottleneck { .. } => WitnessKind::SharedBottleneck,
            Witness::CapacityDeficit { .. } => WitnessKind::CapacityDeficit,
            Witness::DummyArcRetained { .. } => WitnessKind::DummyArcRetained,
        }
    }

    /// Re-checks the witness against `network` without running recognition.
    pub fn validate(&self, network: &FlowNetwork) -> Result<(), WitnessError> {
        match self {
            Witness::Cycle { arcs } => validate_cycle(network, arcs),
            Witness::SharedBottleneck {
                arc,
                anchored,
                other,
            } => {
                let anchored = recheck_path(network, anchored)?;
                let other = recheck_path(network, other)?;
                if anchored.arcs() == other.arcs() {
                    return Err(WitnessError::PathsNotDistinct);
                }
                if !anchored.contains(*arc) || !other.contains(*arc) {
                    return Err(WitnessError::ArcNotOnPath(*arc));
                }
                if network.capacity(*arc) != anchored.capacity() {
                    return Err(WitnessError::NotABottleneck(*arc));
                }
                Ok(())
            }
            Witness::CapacityDeficit {
                arc,
                paths,
                capacity,
                demand,
            } => {
                if *arc >= network.arc_count() {
                    return Err(WitnessError::UnknownArc(*arc));
                }
                if network.capacity(*arc) != capacity {
                    return Err(WitnessError::CapacityMismatch(*arc));
                }
                let mut total = Capacity::zero();
                for (k, p) in paths.iter().enumerate() {
                    let p = recheck_path(network, p)?;
                    if !p.contains(*arc) {
                        return Err(WitnessError::ArcNotOnPath(*arc));
                    }
                    if paths[..k].iter().any(|q| q.arcs() == p.arcs()) {
                        return Err(WitnessError::PathsNotDistinct);
                    }
                    if p.capacity() >= capacity {
                        return Err(WitnessError::IsABottleneck(*arc));
                    }
                    total += p.capacity();
                }
                if &total != demand {
                    return Err(WitnessError::DemandMismatch);
                }
                if total <= *capacity {
                    return Err(WitnessError::NoDeficit);
                }
                Ok(())
            }
            Witness::DummyArcRetained { arc } => {
                if *arc >= network.arc_count() {
                    return Err(WitnessError::UnknownArc(*arc));
                }
                if essential_arcs(network)[*arc] {
                    return Err(WitnessError::ArcIsEssential(*arc));
                }
                Ok(())
            }
        }
    }
}

fn recheck_path(network: &FlowNetwork, path: &StPath) -> Result<StPath, WitnessError> {
    let fresh = StPath::new(network, path.arcs().to_vec()).ok_or(WitnessError::NotASimplePath)?;
    if fresh.capacity() != path.capacity() {
        return Err(WitnessError::PathCapacityMismatch);
    }
    Ok(fresh)
}

fn validate_cycle(network: &FlowNetwork, arcs: &[usize]) -> Result<(), WitnessError> {
    if arcs.is_empty() {
        return Err(WitnessError::NotACycle);
    }
    if let Some(&a) = arcs.iter().find(|&&a| a >= network.arc_count()) {
        return Err(WitnessError::UnknownArc(a));
    }
    let mut visited = vec![false; network.vertex_count()];
    for (k, &a) in arcs.iter().enumerate() {
        let next = arcs[(k + 1) % arcs.len()];
        if network.arc(a).head != network.arc(next).tail {
            return Err(WitnessError::NotACycle);
        }
        let tail = network.arc(a).tail;
        if visited[tail] {
            return Err(WitnessError::NotACycle);
        }
        visited[tail] = true;
    }
    let essential = essential_arcs(network);
    if let Some(&a) = arcs.iter().find(|&&a| !essential[a]) {
        return Err(WitnessError::DummyOnCycle(a));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WitnessKind {
    Cycle,
    SharedBottleneck,
    CapacityDeficit,
    DummyArcRetained,
}

impl WitnessKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            WitnessKind::Cycle => "cycle",
            WitnessKind::SharedBottleneck => "shared_bottleneck",
            WitnessKind::CapacityDeficit => "capacity_deficit",
            WitnessKind::DummyArcRetained => "dummy_arc_retained",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("arc index {0} is out of range")]
    UnknownArc(usize),
    #[error("arcs do not form a simple directed cycle")]
    NotACycle,
    #[error("cycle arc {0} lies on no simple s-t path")]
    DummyOnCycle(usize),
    #[error("listed path is not a simple s-t path")]
    NotASimplePath,
    #[error("listed path capacity does not match the network")]
    PathCapacityMismatch,
    #[error("listed paths are not distinct")]
    PathsNotDistinct,
    #[error("arc {0} is not on every listed path")]
    ArcNotOnPath(usize),
    #[error("arc {0} is not the minimum of the anchored path")]
    NotABottleneck(usize),
    #[error("arc {0} is the minimum of a listed path")]
    IsABottleneck(usize),
    #[error("stated capacity of arc {0} does not match the network")]
    CapacityMismatch(usize),
    #[error("stated demand is not the sum of the listed path capacities")]
    DemandMismatch,
    #[error("listed paths fit within the arc's capacity")]
    NoDeficit,
    #[error("arc {0} lies on a simple s-t path")]
    ArcIsEssential(usize),
}
