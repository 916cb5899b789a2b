//! Structural queries on flow networks: reachability, dummy-arc reduction,
//! acyclicity, s-t path counting and simple-path enumeration.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::network::{FlowNetwork, StPath};

/// Forward (`true`) or backward reachability from `start`, using only arcs
/// accepted by `usable`.
pub(crate) fn reach_mask(
    network: &FlowNetwork,
    start: usize,
    forward: bool,
    usable: impl Fn(usize) -> bool,
) -> Vec<bool> {
    let mut seen = vec![false; network.vertex_count()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(x) = queue.pop_front() {
        let arcs = if forward {
            network.out_arcs(x)
        } else {
            network.in_arcs(x)
        };
        for &a in arcs {
            if !usable(a) {
                continue;
            }
            let arc = network.arc(a);
            let y = if forward { arc.head } else { arc.tail };
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

fn mask_to_set(mask: &[bool]) -> BTreeSet<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

/// Vertices reachable from the source.
pub fn reachable_from_source(network: &FlowNetwork) -> BTreeSet<usize> {
    mask_to_set(&reach_mask(network, network.source(), true, |_| true))
}

/// Vertices from which the sink is reachable.
pub fn coreaches_sink(network: &FlowNetwork) -> BTreeSet<usize> {
    mask_to_set(&reach_mask(network, network.sink(), false, |_| true))
}

/// Result of [`reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// The surviving network. Vertices, source and sink are unchanged.
    pub network: FlowNetwork,
    /// `kept[i]` is the index in the input network of reduced arc `i`.
    pub kept: Vec<usize>,
    /// Indices (in the input network) of removed arcs, ascending.
    pub removed: Vec<usize>,
}

/// Removes arcs that cannot carry s-t flow: zero-capacity arcs and arcs
/// `(u, v)` with `u` unreachable from `s` or `v` unable to reach `t`.
///
/// On an acyclic result every remaining arc lies on some simple s-t path. On
/// cyclic networks the reachability test can keep arcs that lie on no simple
/// path; see [`lies_on_simple_path`].
pub fn reduce(network: &FlowNetwork) -> Reduction {
    let mut alive: Vec<bool> = network
        .arcs()
        .iter()
        .map(|a| a.capacity.is_positive())
        .collect();
    loop {
        let from_s = reach_mask(network, network.source(), true, |a| alive[a]);
        let to_t = reach_mask(network, network.sink(), false, |a| alive[a]);
        let mut changed = false;
        for (i, arc) in network.arcs().iter().enumerate() {
            if alive[i] && !(from_s[arc.tail] && to_t[arc.head]) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let kept: Vec<usize> = (0..network.arc_count()).filter(|&i| alive[i]).collect();
    let removed = (0..network.arc_count()).filter(|&i| !alive[i]).collect();
    Reduction {
        network: network.restrict_to(&kept),
        kept,
        removed,
    }
}

/// Evidence returned by [`is_acyclic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acyclicity {
    /// A topological order of all vertices.
    Acyclic { order: Vec<usize> },
    /// The arcs of one directed cycle, in traversal order.
    Cyclic { cycle: Vec<usize> },
}

impl Acyclicity {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, Acyclicity::Acyclic { .. })
    }
}

pub fn is_acyclic(network: &FlowNetwork) -> Acyclicity {
    let n = network.vertex_count();
    let mut indeg: Vec<usize> = (0..n).map(|v| network.in_degree(v)).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &a in network.out_arcs(x) {
            let y = network.arc(a).head;
            indeg[y] -= 1;
            if indeg[y] == 0 {
                queue.push_back(y);
            }
        }
    }
    if order.len() == n {
        return Acyclicity::Acyclic { order };
    }

    // Every vertex left over has an incoming arc from another leftover vertex,
    // so walking backwards along such arcs must eventually repeat a vertex.
    let left: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
    let start = (0..n).find(|&v| left[v]).expect("some vertex left over");
    let mut position = vec![usize::MAX; n];
    let mut walk: Vec<usize> = Vec::new();
    let mut x = start;
    loop {
        position[x] = walk.len();
        let a = *network
            .in_arcs(x)
            .iter()
            .find(|&&a| left[network.arc(a).tail])
            .expect("leftover vertex has a leftover predecessor");
        walk.push(a);
        x = network.arc(a).tail;
        if position[x] != usize::MAX {
            let mut cycle: Vec<usize> = walk[position[x]..].to_vec();
            cycle.reverse();
            return Acyclicity::Cyclic { cycle };
        }
    }
}

pub(crate) fn topological_order(network: &FlowNetwork) -> Result<Vec<usize>> {
    match is_acyclic(network) {
        Acyclicity::Acyclic { order } => Ok(order),
        Acyclicity::Cyclic { .. } => Err(Error::NotAcyclic),
    }
}

/// Arcs whose endpoints share a strongly connected component, i.e. arcs that
/// lie on some directed cycle.
pub fn arcs_on_cycles(network: &FlowNetwork) -> Vec<usize> {
    let comp = strongly_connected_components(network);
    (0..network.arc_count())
        .filter(|&a| {
            let arc = network.arc(a);
            comp[arc.tail] == comp[arc.head]
        })
        .collect()
}

/// Kosaraju's algorithm; returns a component id per vertex.
fn strongly_connected_components(network: &FlowNetwork) -> Vec<usize> {
    let n = network.vertex_count();
    let mut visited = vec![false; n];
    let mut finish = Vec::with_capacity(n);
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (x, ref mut next)) = stack.last_mut() {
            if let Some(&a) = network.out_arcs(x).get(*next) {
                *next += 1;
                let y = network.arc(a).head;
                if !visited[y] {
                    visited[y] = true;
                    stack.push((y, 0));
                }
            } else {
                finish.push(x);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut next_id = 0;
    for &root in finish.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = next_id;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &a in network.in_arcs(x) {
                let y = network.arc(a).tail;
                if comp[y] == usize::MAX {
                    comp[y] = next_id;
                    stack.push(y);
                }
            }
        }
        next_id += 1;
    }
    comp
}

/// Number of s-t paths through an arc, saturated at two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathCount {
    Zero,
    One,
    Many,
}

impl PathCount {
    fn from_saturated(n: u64) -> PathCount {
        match n {
            0 => PathCount::Zero,
            1 => PathCount::One,
            _ => PathCount::Many,
        }
    }
}

impl fmt::Display for PathCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathCount::Zero => "0",
            PathCount::One => "1",
            PathCount::Many => "many",
        })
    }
}

/// Path counts `s -> x` and `x -> t` for every vertex, each saturated at `cap`.
#[derive(Clone, Debug)]
pub(crate) struct PathCounts {
    pub from_source: Vec<u64>,
    pub to_sink: Vec<u64>,
    cap: u64,
}

impl PathCounts {
    pub fn compute(network: &FlowNetwork, order: &[usize], cap: u64) -> PathCounts {
        let n = network.vertex_count();
        let mut from_source = vec![0u64; n];
        let mut to_sink = vec![0u64; n];
        from_source[network.source()] = 1;
        to_sink[network.sink()] = 1;
        for &x in order {
            if x == network.source() {
                continue;
            }
            from_source[x] = network.in_arcs(x).iter().fold(0u64, |acc, &a| {
                (acc + from_source[network.arc(a).tail]).min(cap)
            });
        }
        for &x in order.iter().rev() {
            if x == network.sink() {
                continue;
            }
            to_sink[x] = network.out_arcs(x).iter().fold(0u64, |acc, &a| {
                (acc + to_sink[network.arc(a).head]).min(cap)
            });
        }
        PathCounts {
            from_source,
            to_sink,
            cap,
        }
    }

    /// Saturated number of s-t paths through `arc`.
    pub fn through(&self, network: &FlowNetwork, arc: usize) -> u64 {
        let a = network.arc(arc);
        self.from_source[a.tail]
            .saturating_mul(self.to_sink[a.head])
            .min(self.cap)
    }

    /// Saturated number of s-t paths.
    pub fn total(&self, network: &FlowNetwork) -> u64 {
        self.to_sink[network.source()]
    }
}

/// For each arc, how many s-t paths pass through it (0, 1 or many).
pub fn count_paths_through(network: &FlowNetwork) -> Result<Vec<PathCount>> {
    let order = topological_order(network)?;
    let counts = PathCounts::compute(network, &order, 2);
    Ok((0..network.arc_count())
        .map(|a| PathCount::from_saturated(counts.through(network, a)))
        .collect())
}

/// The unique s-t path through `arc`.
pub fn trace_unique_path(network: &FlowNetwork, arc: usize) -> Result<StPath> {
    let order = topological_order(network)?;
    let counts = PathCounts::compute(network, &order, 2);
    let through = counts.through(network, arc);
    if through != 1 {
        return Err(Error::NotUnique {
            arc: network.label(arc).to_owned(),
            count: PathCount::from_saturated(through),
        });
    }
    Ok(trace_with_counts(network, arc, &counts))
}

/// Walks back from the tail and forward from the head of `arc`, always taking
/// the single neighbour arc with a nonzero count. Requires exactly one s-t
/// path through `arc`.
pub(crate) fn trace_with_counts(network: &FlowNetwork, arc: usize, counts: &PathCounts) -> StPath {
    let mut prefix = Vec::new();
    let mut x = network.arc(arc).tail;
    while x != network.source() {
        let a = *network
            .in_arcs(x)
            .iter()
            .find(|&&a| counts.from_source[network.arc(a).tail] > 0)
            .expect("unique path has a predecessor");
        prefix.push(a);
        x = network.arc(a).tail;
    }
    prefix.reverse();
    prefix.push(arc);
    let mut x = network.arc(arc).head;
    while x != network.sink() {
        let a = *network
            .out_arcs(x)
            .iter()
            .find(|&&a| counts.to_sink[network.arc(a).head] > 0)
            .expect("unique path has a successor");
        prefix.push(a);
        x = network.arc(a).head;
    }
    let capacity = prefix
        .iter()
        .map(|&a| network.capacity(a))
        .min()
        .cloned()
        .expect("path is non-empty");
    StPath::new_unchecked(prefix, capacity)
}

/// All simple s-t paths, sorted by their label sequences. Fails once more
/// than `limit` paths have been found. Works on cyclic networks too.
pub fn enumerate_simple_paths(network: &FlowNetwork, limit: usize) -> Result<Vec<StPath>> {
    let mut paths = Vec::new();
    let mut on_path = vec![false; network.vertex_count()];
    let mut arcs = Vec::new();
    on_path[network.source()] = true;
    let useful = reach_mask(network, network.sink(), false, |_| true);
    backtrack(
        network,
        network.source(),
        &useful,
        &mut on_path,
        &mut arcs,
        &mut paths,
        limit,
    )?;
    let mut paths: Vec<StPath> = paths
        .into_iter()
        .map(|p| StPath::new(network, p).expect("enumerated walk is a simple s-t path"))
        .collect();
    paths.sort_by(|p, q| p.labels(network).cmp(&q.labels(network)));
    Ok(paths)
}

fn backtrack(
    network: &FlowNetwork,
    x: usize,
    useful: &[bool],
    on_path: &mut [bool],
    arcs: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> Result<()> {
    if x == network.sink() {
        if out.len() == limit {
            return Err(Error::PathLimitExceeded { limit });
        }
        out.push(arcs.clone());
        return Ok(());
    }
    for &a in network.out_arcs(x) {
        let y = network.arc(a).head;
        if on_path[y] || !useful[y] {
            continue;
        }
        on_path[y] = true;
        arcs.push(a);
        let r = backtrack(network, y, useful, on_path, arcs, out, limit);
        arcs.pop();
        on_path[y] = false;
        r?;
    }
    Ok(())
}

/// Up to `limit` distinct paths `from -> to` in an acyclic network, in
/// depth-first order over insertion-ordered arcs.
pub(crate) fn dag_paths_between(
    network: &FlowNetwork,
    from: usize,
    to: usize,
    limit: usize,
) -> Vec<Vec<usize>> {
    let useful = reach_mask(network, to, false, |_| true);
    let mut out = Vec::new();
    if !useful[from] {
        return out;
    }
    let mut stack: Vec<(usize, usize)> = vec![(from, 0)];
    let mut arcs: Vec<usize> = Vec::new();
    while let Some(&mut (x, ref mut next)) = stack.last_mut() {
        if x == to {
            out.push(arcs.clone());
            if out.len() == limit {
                break;
            }
            stack.pop();
            arcs.pop();
            continue;
        }
        match network.out_arcs(x).get(*next) {
            Some(&a) => {
                *next += 1;
                let y = network.arc(a).head;
                if useful[y] {
                    arcs.push(a);
                    stack.push((y, 0));
                }
            }
            None => {
                stack.pop();
                arcs.pop();
            }
        }
    }
    out
}

/// Arcs lying on some simple s-t path made of positive-capacity arcs, i.e. the
/// arcs that are not dummy players. Exact on every network.
///
/// Applies the reachability criterion to the positive-capacity arcs first. A
/// surviving arc that lies on no directed cycle of the surviving subnetwork is
/// on a simple path (an `s -> tail` path meeting a `head -> t` path would
/// close a cycle through it); only the cycle arcs need the exact search.
pub fn essential_arcs(network: &FlowNetwork) -> Vec<bool> {
    let positive: Vec<usize> = (0..network.arc_count())
        .filter(|&a| network.capacity(a).is_positive())
        .collect();
    let positive_net = network.restrict_to(&positive);
    let reduction = reduce(&positive_net);
    let survivors = &reduction.network;
    let mut essential = vec![false; network.arc_count()];
    for &a in &reduction.kept {
        essential[positive[a]] = true;
    }
    for a in arcs_on_cycles(survivors) {
        if !lies_on_simple_path(survivors, a) {
            essential[positive[reduction.kept[a]]] = false;
        }
    }
    essential
}

/// Breadth-first path `from -> to` over arcs accepted by `usable`.
pub(crate) fn bfs_path(
    network: &FlowNetwork,
    from: usize,
    to: usize,
    usable: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut parent: Vec<Option<usize>> = vec![None; network.vertex_count()];
    let mut seen = vec![false; network.vertex_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &a in network.out_arcs(x) {
            let y = network.arc(a).head;
            if usable(a) && !seen[y] {
                seen[y] = true;
                parent[y] = Some(a);
                queue.push_back(y);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut arcs = Vec::new();
    let mut x = to;
    while x != from {
        let a = parent[x].expect("reached vertices have parents");
        arcs.push(a);
        x = network.arc(a).tail;
    }
    arcs.reverse();
    Some(arcs)
}

/// Exact test: does some simple s-t path use `arc`?
///
/// Backtracks over simple `s -> tail` paths avoiding the head and the sink,
/// then looks for a `head -> t` path avoiding that prefix. Exponential in the
/// worst case on cyclic networks; on acyclic ones it agrees with the
/// reachability criterion used by [`reduce`].
pub fn lies_on_simple_path(network: &FlowNetwork, arc: usize) -> bool {
    let (s, t) = (network.source(), network.sink());
    let a = network.arc(arc);
    let (u, v) = (a.tail, a.head);
    if v == s || u == t {
        return false;
    }
    let reaches_u = reach_mask(network, u, false, |_| true);
    if !reaches_u[s] {
        return false;
    }
    let mut on_path = vec![false; network.vertex_count()];
    on_path[s] = true;
    search_prefix(network, s, u, v, &reaches_u, &mut on_path)
}

fn search_prefix(
    network: &FlowNetwork,
    x: usize,
    u: usize,
    v: usize,
    reaches_u: &[bool],
    on_path: &mut [bool],
) -> bool {
    let t = network.sink();
    if x == u {
        if v == t {
            return true;
        }
        let to_t = reach_mask(network, v, true, |a| !on_path[network.arc(a).head]);
        return to_t[t];
    }
    for &a in network.out_arcs(x) {
        let y = network.arc(a).head;
        if on_path[y] || y == v || y == t || !reaches_u[y] {
            continue;
        }
        on_path[y] = true;
        let found = search_prefix(network, y, u, v, reaches_u, on_path);
        on_path[y] = false;
        if found {
            return true;
        }
    }
    false
}
