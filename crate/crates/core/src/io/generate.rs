//! Seeded instance generators. Every generator is a pure function of its
//! seed and parameters.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::network::FlowNetwork;
use crate::rational::Capacity;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    /// Number of s-t paths.
    pub paths: usize,
    /// Longest chain of shared arcs before a path leaves the shared tree.
    pub depth: usize,
    pub cap_min: u64,
    pub cap_max: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            paths: 4,
            depth: 2,
            cap_min: 1,
            cap_max: 5,
        }
    }
}

/// A generated convex network and the path each arc serves.
struct Layout {
    vertices: Vec<String>,
    arcs: Vec<(usize, usize, Capacity)>,
    /// Arc sequence of each path.
    paths: Vec<Vec<usize>>,
    path_caps: Vec<u64>,
    /// Vertices used by exactly one path, excluding s and t.
    private: Vec<Vec<usize>>,
}

const S: usize = 0;
const T: usize = 1;

impl Layout {
    fn vertex(&mut self) -> usize {
        self.vertices.push(format!("v{}", self.vertices.len() - 2));
        self.vertices.len() - 1
    }

    fn network(&self) -> FlowNetwork {
        let mut order: Vec<usize> = vec![S];
        order.extend(2..self.vertices.len());
        order.push(T);
        let mut b = FlowNetwork::builder()
            .vertices(order.iter().map(|&v| self.vertices[v].clone()))
            .source("s")
            .sink("t");
        for (k, (tail, head, cap)) in self.arcs.iter().enumerate() {
            b = b.arc(
                format!("e{k}"),
                self.vertices[*tail].clone(),
                self.vertices[*head].clone(),
                cap.clone(),
            );
        }
        b.build().expect("generated network is well formed")
    }
}

/// Builds a divergence tree of shared arcs out of `s`, a private chain of one
/// or two arcs per path, and optional collector vertices where several paths
/// merge before `t`. Shared and collector arcs get at least the sum of their
/// paths' capacities; each private chain holds its path's capacity.
fn layout(seed: u64, params: &GenParams) -> Layout {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = params.paths.max(1);
    let (lo, hi) = (
        params.cap_min.max(1),
        params.cap_max.max(params.cap_min.max(1)),
    );
    let mut l = Layout {
        vertices: vec!["s".into(), "t".into()],
        arcs: Vec::new(),
        paths: vec![Vec::new(); k],
        path_caps: (0..k).map(|_| rng.gen_range(lo..=hi)).collect(),
        private: vec![Vec::new(); k],
    };

    // Shared tree: (vertex, paths through it, depth).
    let mut stack = vec![(S, (0..k).collect::<Vec<_>>(), 0usize)];
    let mut leaves: Vec<(usize, usize)> = Vec::new();
    while let Some((x, mut group, depth)) = stack.pop() {
        if group.len() == 1 || depth >= params.depth {
            leaves.extend(group.iter().map(|&p| (p, x)));
            continue;
        }
        group.shuffle(&mut rng);
        let parts = rng.gen_range(1..=group.len().min(3));
        let mut cuts: Vec<usize> = (1..group.len()).collect();
        cuts.shuffle(&mut rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
        cuts.sort_unstable();
        let mut start = 0;
        for end in cuts.into_iter().chain([group.len()]) {
            let sub: Vec<usize> = group[start..end].to_vec();
            start = end;
            if sub.len() == 1 {
                leaves.push((sub[0], x));
                continue;
            }
            let y = l.vertex();
            let arc = l.arcs.len();
            l.arcs.push((x, y, Capacity::zero()));
            for &p in &sub {
                l.paths[p].push(arc);
            }
            stack.push((y, sub, depth + 1));
        }
    }
    leaves.sort_unstable();

    // Merge points before t; a collector vertex is only created once a path
    // is routed into it.
    let slots = rng.gen_range(0..=k / 2);
    let mut collectors: Vec<Option<usize>> = vec![None; slots];
    let mut merged: Vec<Vec<usize>> = vec![Vec::new(); slots];
    for (p, x) in leaves {
        let cap = l.path_caps[p];
        let end = if slots == 0 || rng.gen_bool(0.5) {
            None
        } else {
            Some(rng.gen_range(0..slots))
        };
        let target = match end {
            None => T,
            Some(c) => *collectors[c].get_or_insert_with(|| l.vertex()),
        };
        let chain = rng.gen_range(1..=2);
        let bottleneck = rng.gen_range(0..chain);
        let mut at = x;
        for step in 0..chain {
            let next = if step + 1 == chain {
                target
            } else {
                let v = l.vertex();
                l.private[p].push(v);
                v
            };
            let c = if step == bottleneck {
                cap
            } else {
                cap + rng.gen_range(0..=2)
            };
            l.paths[p].push(l.arcs.len());
            l.arcs.push((at, next, Capacity::from_integer(c)));
            at = next;
        }
        if let Some(c) = end {
            merged[c].push(p);
        }
    }
    for (c, v) in collectors.iter().enumerate() {
        let Some(v) = *v else { continue };
        let arc = l.arcs.len();
        l.arcs.push((v, T, Capacity::zero()));
        for &p in &merged[c] {
            l.paths[p].push(arc);
        }
    }
    let mut demand = vec![0u64; l.arcs.len()];
    for (p, cap) in l.paths.iter().zip(&l.path_caps) {
        for &a in p {
            demand[a] += cap;
        }
    }
    for (a, d) in demand.into_iter().enumerate() {
        if l.arcs[a].2.is_zero() {
            l.arcs[a].2 = Capacity::from_integer(d + rng.gen_range(0..=2));
        }
    }
    l
}

/// A network whose flow game is convex by construction.
pub fn gen_convex(seed: u64, params: &GenParams) -> FlowNetwork {
    layout(seed, params).network()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BrokenKind {
    Cycle,
    SharedBottleneck,
    CapacityDeficit,
}

impl BrokenKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BrokenKind::Cycle => "cycle",
            BrokenKind::SharedBottleneck => "shared_bottleneck",
            BrokenKind::CapacityDeficit => "capacity_deficit",
        }
    }

    pub fn parse(s: &str) -> Option<BrokenKind> {
        match s {
            "cycle" => Some(BrokenKind::Cycle),
            "shared_bottleneck" => Some(BrokenKind::SharedBottleneck),
            "capacity_deficit" => Some(BrokenKind::CapacityDeficit),
            _ => None,
        }
    }
}

pub fn gen_broken(seed: u64, which: BrokenKind) -> FlowNetwork {
    gen_broken_with(seed, which, &GenParams::default())
}

/// A `gen_convex` network with one perturbation that breaks exactly the
/// condition named by `which`. Seeds whose base network has no place for
/// the perturbation are skipped deterministically.
pub fn gen_broken_with(seed: u64, which: BrokenKind, params: &GenParams) -> FlowNetwork {
    let params = GenParams {
        paths: params.paths.max(2),
        ..*params
    };
    for attempt in 0u64.. {
        let derived = seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut l = layout(derived, &params);
        let mut rng = ChaCha8Rng::seed_from_u64(derived ^ 0x5eed);
        if perturb(&mut l, which, &mut rng) {
            return l.network();
        }
    }
    unreachable!("some seed admits every perturbation")
}

fn perturb(l: &mut Layout, which: BrokenKind, rng: &mut ChaCha8Rng) -> bool {
    match which {
        BrokenKind::CapacityDeficit => {
            // An arc shared by several paths, lowered strictly between the
            // largest of their capacities and their sum.
            let shared: Vec<usize> = (0..l.arcs.len())
                .filter(|&a| l.paths.iter().filter(|p| p.contains(&a)).count() >= 2)
                .collect();
            let Some(&a) = shared.choose(rng) else {
                return false;
            };
            let through: Vec<u64> = (0..l.paths.len())
                .filter(|&p| l.paths[p].contains(&a))
                .map(|p| l.path_caps[p])
                .collect();
            let (sum, max) = (
                through.iter().sum::<u64>(),
                *through.iter().max().expect("shared"),
            );
            l.arcs[a].2 = Capacity::from_ratio(sum + max, 2);
            true
        }
        BrokenKind::SharedBottleneck => {
            // A second way into the tail of some path's bottleneck arc.
            let candidates: Vec<(usize, usize)> = (0..l.paths.len())
                .flat_map(|p| l.paths[p].iter().map(move |&a| (p, a)))
                .filter(|&(p, a)| {
                    l.arcs[a].0 != S && l.arcs[a].2 == Capacity::from_integer(l.path_caps[p])
                })
                .collect();
            let Some(&(p, a)) = candidates.choose(rng) else {
                return false;
            };
            let tail = l.arcs[a].0;
            l.arcs
                .push((S, tail, Capacity::from_integer(l.path_caps[p])));
            true
        }
        BrokenKind::Cycle => {
            // Two-way arcs between private vertices of two different paths.
            let owners: Vec<usize> = (0..l.paths.len())
                .filter(|&p| !l.private[p].is_empty())
                .collect();
            if owners.len() < 2 {
                return false;
            }
            let chosen: Vec<usize> = owners.choose_multiple(rng, 2).copied().collect();
            let x = l.private[chosen[0]][0];
            let y = l.private[chosen[1]][0];
            l.arcs.push((x, y, Capacity::from_integer(1)));
            l.arcs.push((y, x, Capacity::from_integer(1)));
            true
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    /// Vertices besides s and t.
    pub inner_vertices: usize,
    pub max_arcs: usize,
    pub max_denominator: u64,
    /// Largest capacity numerator, as a multiple of the denominator.
    pub max_capacity: u64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            inner_vertices: 3,
            max_arcs: 10,
            max_denominator: 4,
            max_capacity: 3,
        }
    }
}

/// An arbitrary network: half of the seeds give a DAG over the vertex order
/// `s, v0, v1, ..., t`, the rest allow any direction. Some capacities are zero.
pub fn gen_random(seed: u64, params: &RandomParams) -> FlowNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.inner_vertices + 2;
    let mut names = vec!["s".to_owned()];
    names.extend((0..params.inner_vertices).map(|i| format!("v{i}")));
    names.push("t".to_owned());
    let acyclic = rng.gen_bool(0.5);
    let arcs = rng.gen_range(1..=params.max_arcs.max(1));
    let mut b = FlowNetwork::builder()
        .vertices(names.iter().cloned())
        .source("s")
        .sink("t");
    for k in 0..arcs {
        let (mut x, mut y) = (rng.gen_range(0..n), rng.gen_range(0..n - 1));
        if y >= x {
            y += 1;
        }
        if acyclic && x > y {
            std::mem::swap(&mut x, &mut y);
        }
        let den = rng.gen_range(1..=params.max_denominator.max(1));
        let num = rng.gen_range(0..=params.max_capacity * den);
        b = b.arc(
            format!("e{k}"),
            names[x].clone(),
            names[y].clone(),
            Capacity::from_ratio(num, den),
        );
    }
    b.build().expect("random network is well formed")
}
