//! Capacitated directed multigraphs with a distinguished source and sink.
//!
//! Players of the flow game are arcs. Inside the crate an arc is addressed by
//! its index in [`FlowNetwork::arcs`]; the public label ([`ArcId`]) is what
//! users see in files and reports.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Capacity;

/// The label of an arc. Unique within a network; parallel arcs are distinct
/// players because they have distinct labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ArcId(pub String);

impl ArcId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ArcId {
    fn from(s: &str) -> Self {
        ArcId(s.to_owned())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arc {
    pub id: ArcId,
    pub tail: usize,
    pub head: usize,
    pub capacity: Capacity,
}

/// An immutable, validated flow network.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    arcs: Vec<Arc>,
    arc_index: HashMap<String, usize>,
    source: usize,
    sink: usize,
    out_arcs: Vec<Vec<usize>>,
    in_arcs: Vec<Vec<usize>>,
}

impl PartialEq for FlowNetwork {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.arcs == other.arcs
            && self.source == other.source
            && self.sink == other.sink
    }
}

impl Eq for FlowNetwork {}

/// Accumulates vertices and arcs by name; [`NetworkBuilder::build`] validates.
#[derive(Clone, Debug, Default)]
pub struct NetworkBuilder {
    vertices: Vec<String>,
    source: Option<String>,
    sink: Option<String>,
    arcs: Vec<(String, String, String, Capacity)>,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: impl Into<String>) -> Self {
        self.vertices.push(name.into());
        self
    }

    pub fn vertices<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn source(mut self, name: impl Into<String>) -> Self {
        self.source = Some(name.into());
        self
    }

    pub fn sink(mut self, name: impl Into<String>) -> Self {
        self.sink = Some(name.into());
        self
    }

    pub fn arc(
        mut self,
        label: impl Into<String>,
        tail: impl Into<String>,
        head: impl Into<String>,
        capacity: Capacity,
    ) -> Self {
        self.arcs
            .push((label.into(), tail.into(), head.into(), capacity));
        self
    }

    /// Checks every network invariant without building.
    pub fn validate(&self) -> Result<()> {
        self.clone().build().map(|_| ())
    }

    pub fn build(self) -> Result<FlowNetwork> {
        let mut vertex_index = HashMap::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let lookup = |name: &str| {
            vertex_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
        };
        let source_name = self
            .source
            .as_deref()
            .ok_or_else(|| Error::UnknownVertex("<source not declared>".into()))?;
        let sink_name = self
            .sink
            .as_deref()
            .ok_or_else(|| Error::UnknownVertex("<sink not declared>".into()))?;
        let source = lookup(source_name)?;
        let sink = lookup(sink_name)?;
        if source == sink {
            return Err(Error::SourceEqualsSink(source_name.to_owned()));
        }

        let mut arc_index = HashMap::with_capacity(self.arcs.len());
        let mut arcs = Vec::with_capacity(self.arcs.len());
        for (label, tail, head, capacity) in self.arcs {
            if arc_index.contains_key(&label) {
                return Err(Error::DuplicateArcLabel(label));
            }
            let tail = lookup(&tail)?;
            let head = lookup(&head)?;
            if tail == head {
                return Err(Error::SelfLoop(label));
            }
            arc_index.insert(label.clone(), arcs.len());
            arcs.push(Arc {
                id: ArcId(label),
                tail,
                head,
                capacity,
            });
        }
        Ok(FlowNetwork::assemble(
            self.vertices,
            vertex_index,
            arcs,
            arc_index,
            source,
            sink,
        ))
    }
}

impl FlowNetwork {
    pub fn builder() -> NetworkBuilder {
        NetworkBuilder::new()
    }

    /// Builds a network whose vertices are declared implicitly: the source
    /// first, then every other endpoint in order of first appearance, the sink
    /// last.
    pub fn from_arcs<'a, I>(source: &str, sink: &str, arcs: I) -> Result<FlowNetwork>
    where
        I: IntoIterator<Item = (&'a str, &'a str, &'a str, Capacity)>,
    {
        let arcs: Vec<_> = arcs.into_iter().collect();
        let mut names: Vec<String> = vec![source.to_owned()];
        for (_, tail, head, _) in &arcs {
            for v in [tail, head] {
                if *v != sink && !names.iter().any(|n| n == v) {
                    names.push((*v).to_owned());
                }
            }
        }
        if !names.iter().any(|n| n == sink) {
            names.push(sink.to_owned());
        }
        let mut builder = NetworkBuilder::new()
            .vertices(names)
            .source(source)
            .sink(sink);
        for (label, tail, head, cap) in arcs {
            builder = builder.arc(label, tail, head, cap);
        }
        builder.build()
    }

    fn assemble(
        vertices: Vec<String>,
        vertex_index: HashMap<String, usize>,
        arcs: Vec<Arc>,
        arc_index: HashMap<String, usize>,
        source: usize,
        sink: usize,
    ) -> FlowNetwork {
        let mut out_arcs = vec![Vec::new(); vertices.len()];
        let mut in_arcs = vec![Vec::new(); vertices.len()];
        for (i, arc) in arcs.iter().enumerate() {
            out_arcs[arc.tail].push(i);
            in_arcs[arc.head].push(i);
        }
        FlowNetwork {
            vertices,
            vertex_index,
            arcs,
            arc_index,
            source,
            sink,
            out_arcs,
            in_arcs,
        }
    }

    /// The same vertex set, source and sink, keeping only the listed arcs (in
    /// the given order).
    pub fn restrict_to(&self, keep: &[usize]) -> FlowNetwork {
        let arcs: Vec<Arc> = keep.iter().map(|&i| self.arcs[i].clone()).collect();
        let arc_index = arcs
            .iter()
            .enumerate()
            .map(|(i, a)| (a.id.0.clone(), i))
            .collect();
        FlowNetwork::assemble(
            self.vertices.clone(),
            self.vertex_index.clone(),
            arcs,
            arc_index,
            self.source,
            self.sink,
        )
    }

    /// A copy with arc `index` given a new capacity.
    pub fn with_capacity(&self, index: usize, capacity: Capacity) -> FlowNetwork {
        let mut copy = self.clone();
        copy.arcs[index].capacity = capacity;
        copy
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, index: usize) -> &Arc {
        &self.arcs[index]
    }

    pub fn arc_index(&self, label: &str) -> Option<usize> {
        self.arc_index.get(label).copied()
    }

    pub fn label(&self, index: usize) -> &str {
        self.arcs[index].id.as_str()
    }

    pub fn capacity(&self, index: usize) -> &Capacity {
        &self.arcs[index].capacity
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out_arcs[v]
    }

    pub fn in_arcs(&self, v: usize) -> &[usize] {
        &self.in_arcs[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_arcs[v].len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_arcs[v].len()
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::from_indices(0..self.arcs.len())
    }

    /// Resolves arc labels to a coalition.
    pub fn coalition<I, S>(&self, labels: I) -> Result<Coalition>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        labels
            .into_iter()
            .map(|l| {
                let l = l.as_ref();
                self.arc_index(l)
                    .ok_or_else(|| Error::UnknownArcId(l.to_owned()))
            })
            .collect::<Result<BTreeSet<_>>>()
            .map(|members| Coalition { members })
    }

    pub fn labels_of<'i>(&self, arcs: impl IntoIterator<Item = &'i usize>) -> Vec<&str> {
        arcs.into_iter().map(|&i| self.label(i)).collect()
    }

    pub(crate) fn check_coalition(&self, coalition: &Coalition) -> Result<()> {
        match coalition.members.iter().next_back() {
            Some(&last) if last >= self.arcs.len() => Err(Error::UnknownArcId(format!("#{last}"))),
            _ => Ok(()),
        }
    }
}

/// A set of players (arc indices of one network).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Coalition {
    members: BTreeSet<usize>,
}

impl Coalition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Coalition {
            members: indices.into_iter().collect(),
        }
    }

    /// Bit `k` of `mask` selects arc `k`.
    pub fn from_mask(mask: u64) -> Self {
        Coalition::from_indices((0..64).filter(|k| mask >> k & 1 == 1))
    }

    /// The bitmask of this coalition; `None` if some member is >= 64.
    pub fn to_mask(&self) -> Option<u64> {
        self.members
            .iter()
            .try_fold(0u64, |m, &k| (k < 64).then(|| m | 1 << k))
    }

    pub fn contains(&self, arc: usize) -> bool {
        self.members.contains(&arc)
    }

    pub fn insert(&mut self, arc: usize) -> bool {
        self.members.insert(arc)
    }

    pub fn remove(&mut self, arc: usize) -> bool {
        self.members.remove(&arc)
    }

    pub fn with(&self, arc: usize) -> Coalition {
        let mut c = self.clone();
        c.insert(arc);
        c
    }

    pub fn without(&self, arc: usize) -> Coalition {
        let mut c = self.clone();
        c.remove(arc);
        c
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset(&self, other: &Coalition) -> bool {
        self.members.is_subset(&other.members)
    }

    /// A dense membership table over `arc_count` arcs.
    pub fn indicator(&self, arc_count: usize) -> Vec<bool> {
        let mut mask = vec![false; arc_count];
        for &k in &self.members {
            if k < arc_count {
                mask[k] = true;
            }
        }
        mask
    }
}

impl FromIterator<usize> for Coalition {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Coalition::from_indices(iter)
    }
}

/// A simple s-t path, identified by its ordered arc sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StPath {
    arcs: Vec<usize>,
    capacity: Capacity,
}

impl StPath {
    /// Checks that `arcs` is a simple s-t path of `network` and caches its
    /// capacity. Returns `None` otherwise.
    pub fn new(network: &FlowNetwork, arcs: Vec<usize>) -> Option<StPath> {
        if arcs.is_empty() || arcs.iter().any(|&a| a >= network.arc_count()) {
            return None;
        }
        let mut at = network.source();
        let mut seen = vec![false; network.vertex_count()];
        seen[at] = true;
        for &a in &arcs {
            let arc = network.arc(a);
            if arc.tail != at || seen[arc.head] {
                return None;
            }
            at = arc.head;
            seen[at] = true;
        }
        if at != network.sink() {
            return None;
        }
        let capacity = arcs
            .iter()
            .map(|&a| network.capacity(a))
            .min()
            .cloned()
            .unwrap_or_default();
        Some(StPath { arcs, capacity })
    }

    pub(crate) fn new_unchecked(arcs: Vec<usize>, capacity: Capacity) -> StPath {
        StPath { arcs, capacity }
    }

    pub fn arcs(&self) -> &[usize] {
        &self.arcs
    }

    pub fn capacity(&self) -> &Capacity {
        &self.capacity
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, arc: usize) -> bool {
        self.arcs.contains(&arc)
    }

    /// Vertex sequence `s, ..., t`.
    pub fn vertices(&self, network: &FlowNetwork) -> Vec<usize> {
        let mut vs = vec![network.source()];
        vs.extend(self.arcs.iter().map(|&a| network.arc(a).head));
        vs
    }

    /// Re-indexes the arcs through `map` (e.g. from a reduced network back to
    /// the original one). Capacity is preserved.
    pub(crate) fn remap(&self, map: &[usize]) -> StPath {
        StPath {
            arcs: self.arcs.iter().map(|&a| map[a]).collect(),
            capacity: self.capacity.clone(),
        }
    }

    pub fn labels<'a>(&self, network: &'a FlowNetwork) -> Vec<&'a str> {
        network.labels_of(&self.arcs)
    }
}
