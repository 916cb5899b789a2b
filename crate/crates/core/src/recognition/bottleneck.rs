use crate::error::Result;
use crate::network::FlowNetwork;
use crate::structure::{reach_mask, topological_order};

/// The arcs that are the minimum-capacity arc of at least one s-t path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottleneckSet {
    members: Vec<bool>,
}

impl BottleneckSet {
    pub fn contains(&self, arc: usize) -> bool {
        self.members[arc]
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(a, &b)| b.then_some(a))
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub(crate) fn from_members(members: Vec<bool>) -> Self {
        BottleneckSet { members }
    }
}

/// On an acyclic network, `e = (u, v)` is a bottleneck iff `u` is reachable
/// from `s` and `v` reaches `t` using only arcs of capacity at least `c(e)`.
///
/// Arcs with equal capacity share the same restricted subgraph, so one
/// forward and one backward traversal is run per distinct capacity value.
pub fn bottleneck_set(network: &FlowNetwork) -> Result<BottleneckSet> {
    topological_order(network)?;
    let m = network.arc_count();
    let mut by_capacity: Vec<usize> = (0..m).collect();
    by_capacity.sort_by(|&a, &b| network.capacity(a).cmp(network.capacity(b)));
    let mut rank = vec![0usize; m];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, &a) in by_capacity.iter().enumerate() {
        if k == 0 || network.capacity(a) != network.capacity(by_capacity[k - 1]) {
            classes.push(Vec::new());
        }
        rank[a] = classes.len() - 1;
        classes.last_mut().expect("class pushed").push(a);
    }

    let mut members = vec![false; m];
    for (r, class) in classes.iter().enumerate() {
        let from_s = reach_mask(network, network.source(), true, |a| rank[a] >= r);
        let to_t = reach_mask(network, network.sink(), false, |a| rank[a] >= r);
        for &a in class {
            let arc = network.arc(a);
            members[a] = from_s[arc.tail] && to_t[arc.head];
        }
    }
    Ok(BottleneckSet { members })
}
