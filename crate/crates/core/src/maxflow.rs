//! Maximum flow and minimum cut over exact rational capacities.
//!
//! Shortest augmenting paths (Edmonds-Karp): the number of augmentations is
//! bounded by `O(|V| |E|)` regardless of the capacity values, which matters
//! because rational capacities rule out scaling arguments.

use std::collections::VecDeque;

use crate::error::Result;
use crate::network::{Coalition, FlowNetwork};
use crate::rational::Capacity;

/// A feasible flow restricted to a coalition's arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowAssignment {
    flows: Vec<Capacity>,
    value: Capacity,
}

impl FlowAssignment {
    /// Flow on `arc`; zero for arcs outside the coalition.
    pub fn flow(&self, arc: usize) -> &Capacity {
        &self.flows[arc]
    }

    pub fn flows(&self) -> &[Capacity] {
        &self.flows
    }

    pub fn value(&self) -> &Capacity {
        &self.value
    }
}

/// An s-t cut of the sub-network spanned by a coalition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub arcs: Vec<usize>,
    pub capacity: Capacity,
}

pub fn max_flow(network: &FlowNetwork, coalition: &Coalition) -> Result<FlowAssignment> {
    network.check_coalition(coalition)?;
    let usable = coalition.indicator(network.arc_count());
    Ok(solve(network, &usable).0)
}

/// The source-side minimum cut left by [`max_flow`].
pub fn min_cut(network: &FlowNetwork, coalition: &Coalition) -> Result<Cut> {
    network.check_coalition(coalition)?;
    let usable = coalition.indicator(network.arc_count());
    let (_, source_side) = solve(network, &usable);
    let arcs: Vec<usize> = (0..network.arc_count())
        .filter(|&a| {
            let arc = network.arc(a);
            usable[a] && source_side[arc.tail] && !source_side[arc.head]
        })
        .collect();
    let capacity = arcs.iter().map(|&a| network.capacity(a)).sum();
    Ok(Cut { arcs, capacity })
}

/// Value of a maximum flow using only arcs with `usable[a]`.
pub(crate) fn max_flow_value(network: &FlowNetwork, usable: &[bool]) -> Capacity {
    solve(network, usable).0.value
}

#[derive(Clone, Copy)]
enum Step {
    Forward(usize),
    Backward(usize),
}

/// Runs Edmonds-Karp and returns the flow together with the set of vertices
/// reachable from `s` in the final residual graph.
fn solve(network: &FlowNetwork, usable: &[bool]) -> (FlowAssignment, Vec<bool>) {
    let n = network.vertex_count();
    let (s, t) = (network.source(), network.sink());
    let mut flows = vec![Capacity::zero(); network.arc_count()];
    let mut value = Capacity::zero();
    let mut parent: Vec<Option<Step>> = vec![None; n];
    let mut seen = vec![false; n];
    loop {
        parent.iter_mut().for_each(|p| *p = None);
        seen.iter_mut().for_each(|v| *v = false);
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(x) = queue.pop_front() {
            for &a in network.out_arcs(x) {
                let arc = network.arc(a);
                if usable[a] && !seen[arc.head] && flows[a] < arc.capacity {
                    seen[arc.head] = true;
                    parent[arc.head] = Some(Step::Forward(a));
                    if arc.head == t {
                        break 'bfs;
                    }
                    queue.push_back(arc.head);
                }
            }
            for &a in network.in_arcs(x) {
                let arc = network.arc(a);
                if usable[a] && !seen[arc.tail] && flows[a].is_positive() {
                    seen[arc.tail] = true;
                    parent[arc.tail] = Some(Step::Backward(a));
                    queue.push_back(arc.tail);
                }
            }
        }
        if !seen[t] {
            return (FlowAssignment { flows, value }, seen);
        }

        let mut path = Vec::new();
        let mut x = t;
        while x != s {
            let step = parent[x].expect("augmenting path is connected");
            path.push(step);
            x = match step {
                Step::Forward(a) => network.arc(a).tail,
                Step::Backward(a) => network.arc(a).head,
            };
        }
        let delta = path
            .iter()
            .map(|&step| match step {
                Step::Forward(a) => network.capacity(a).saturating_sub(&flows[a]),
                Step::Backward(a) => flows[a].clone(),
            })
            .min()
            .expect("augmenting path is non-empty");
        for step in path {
            match step {
                Step::Forward(a) => flows[a] += &delta,
                Step::Backward(a) => flows[a] = flows[a].saturating_sub(&delta),
            }
        }
        value += &delta;
    }
}
