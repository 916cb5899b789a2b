use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::BottleneckSet;
use crate::error::{Error, Result};
use crate::game::{Allocation, Pmas, DEFAULT_PLAYER_LIMIT};
use crate::network::{Coalition, FlowNetwork, StPath};
use crate::rational::{Capacity, Rational};
use crate::structure::{essential_arcs, is_acyclic, Acyclicity, PathCounts};

/// Proof of convexity: the full set of simple s-t paths of the essential
/// subnetwork, each anchored by at least one bottleneck arc. The game equals
/// `sum_P c(P) * u_P`, where `u_P` is the unanimity game on `P`'s arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    arc_count: usize,
    paths: Vec<StPath>,
    bottlenecks: BottleneckSet,
    anchors: BTreeMap<usize, usize>,
    paths_through: Vec<Vec<usize>>,
}

impl Certificate {
    pub(crate) fn new(
        arc_count: usize,
        paths: Vec<StPath>,
        bottlenecks: BottleneckSet,
        anchors: BTreeMap<usize, usize>,
    ) -> Certificate {
        let mut paths_through = vec![Vec::new(); arc_count];
        for (k, p) in paths.iter().enumerate() {
            for &a in p.arcs() {
                paths_through[a].push(k);
            }
        }
        Certificate {
            arc_count,
            paths,
            bottlenecks,
            anchors,
            paths_through,
        }
    }

    /// Builds a certificate from a claimed path list of `network`, deriving
    /// the bottleneck set and anchors from it. Use [`verify_certificate`]
    /// before trusting it.
    pub fn from_paths(network: &FlowNetwork, paths: Vec<StPath>) -> Result<Certificate> {
        let m = network.arc_count();
        if let Some(&a) = paths.iter().flat_map(|p| p.arcs()).find(|&&a| a >= m) {
            return Err(Error::UnknownArcId(format!("#{a}")));
        }
        let mut members = vec![false; m];
        let mut anchors = BTreeMap::new();
        for (k, p) in paths.iter().enumerate() {
            for &a in p.arcs() {
                if network.capacity(a) == p.capacity() {
                    members[a] = true;
                    anchors.entry(a).or_insert(k);
                }
            }
        }
        Ok(Certificate::new(
            m,
            paths,
            BottleneckSet::from_members(members),
            anchors,
        ))
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn paths(&self) -> &[StPath] {
        &self.paths
    }

    pub fn bottlenecks(&self) -> &BottleneckSet {
        &self.bottlenecks
    }

    /// Index into [`paths`](Self::paths) of the path through bottleneck `b`.
    pub fn anchor(&self, b: usize) -> Option<usize> {
        self.anchors.get(&b).copied()
    }

    /// Indices of the certificate paths containing `arc`.
    pub fn paths_through(&self, arc: usize) -> &[usize] {
        &self.paths_through[arc]
    }

    /// The unanimity decomposition: `(path coalition, weight)` pairs.
    pub fn decomposition(&self) -> impl Iterator<Item = (Coalition, &Capacity)> {
        self.paths
            .iter()
            .map(|p| (p.arcs().iter().copied().collect(), p.capacity()))
    }

    fn check_coalition(&self, coalition: &Coalition) -> Result<()> {
        match coalition.iter().find(|&a| a >= self.arc_count) {
            Some(a) => Err(Error::UnknownArcId(format!("#{a}"))),
            None => Ok(()),
        }
    }
}

/// `gamma(S)` as the total capacity of the certificate paths inside `S`.
pub fn gamma_fast(certificate: &Certificate, coalition: &Coalition) -> Result<Capacity> {
    certificate.check_coalition(coalition)?;
    let inside = coalition.indicator(certificate.arc_count);
    Ok(certificate
        .paths
        .iter()
        .filter(|p| p.arcs().iter().all(|&a| inside[a]))
        .map(StPath::capacity)
        .sum())
}

/// Shapley value over all arcs: each path's capacity split evenly among its
/// arcs. Dummy arcs get zero.
pub fn shapley_fast(certificate: &Certificate) -> Allocation {
    let mut payoffs = vec![Rational::zero(); certificate.arc_count];
    for p in &certificate.paths {
        let share = p.capacity().value() / Rational::from_integer(BigInt::from(p.len()));
        for &a in p.arcs() {
            payoffs[a] += &share;
        }
    }
    Allocation::from_vec(payoffs)
}

/// `y^S_i = sum over certificate paths P inside S with i in P of c(P)/|P|`,
/// for every non-empty coalition.
pub fn pmas_construct(certificate: &Certificate) -> Result<Pmas> {
    let n = certificate.arc_count;
    if n > DEFAULT_PLAYER_LIMIT {
        return Err(Error::TooManyPlayers {
            players: n,
            limit: DEFAULT_PLAYER_LIMIT,
        });
    }
    let path_masks: Vec<(u64, Rational)> = certificate
        .paths
        .iter()
        .map(|p| {
            let mask = p.arcs().iter().fold(0u64, |m, &a| m | 1 << a);
            let share = p.capacity().value() / Rational::from_integer(BigInt::from(p.len()));
            (mask, share)
        })
        .collect();
    let mut scheme = Pmas::new();
    for mask in 1u64..1 << n {
        let mut payoffs: BTreeMap<usize, Rational> = (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| (i, Rational::zero()))
            .collect();
        for (pm, share) in &path_masks {
            if pm & !mask == 0 {
                for i in (0..n).filter(|&i| pm >> i & 1 == 1) {
                    *payoffs.get_mut(&i).expect("member") += share;
                }
            }
        }
        scheme.insert(Coalition::from_mask(mask), Allocation::from_pairs(payoffs));
    }
    Ok(scheme)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate is for {certificate} arcs, network has {network}")]
    ArcCountMismatch { certificate: usize, network: usize },
    #[error("path {0} is not a simple s-t path of the network")]
    InvalidPath(usize),
    #[error("path {0} has a stale or zero capacity")]
    BadPathCapacity(usize),
    #[error("path {0} is listed twice")]
    DuplicatePath(usize),
    #[error("arc {0} lies on a simple s-t path but on no listed path")]
    UncoveredArc(usize),
    #[error("the arcs of the listed paths contain a directed cycle")]
    Cyclic,
    #[error("the listed paths are not all s-t paths of their arcs")]
    MissingPaths,
    #[error("bottleneck set does not match the listed paths at arc {0}")]
    BottleneckMismatch(usize),
    #[error("bottleneck arc {0} lies on more than one listed path")]
    SharedBottleneck(usize),
    #[error("arc {0} cannot carry the listed paths through it")]
    CapacityDeficit(usize),
}

/// Checks that `certificate` proves the game on `network` convex, without
/// running recognition: the listed paths are exactly the s-t paths of the
/// arcs they cover, those arcs include every non-dummy arc and form an
/// acyclic network, and both path conditions hold.
pub fn verify_certificate(
    network: &FlowNetwork,
    certificate: &Certificate,
) -> std::result::Result<(), CertificateError> {
    let m = network.arc_count();
    if certificate.arc_count != m {
        return Err(CertificateError::ArcCountMismatch {
            certificate: certificate.arc_count,
            network: m,
        });
    }
    let mut seen = HashSet::new();
    let mut covered = vec![false; m];
    for (k, p) in certificate.paths.iter().enumerate() {
        let fresh =
            StPath::new(network, p.arcs().to_vec()).ok_or(CertificateError::InvalidPath(k))?;
        if fresh.capacity() != p.capacity() || !p.capacity().is_positive() {
            return Err(CertificateError::BadPathCapacity(k));
        }
        if !seen.insert(p.arcs().to_vec()) {
            return Err(CertificateError::DuplicatePath(k));
        }
        for &a in p.arcs() {
            covered[a] = true;
        }
    }
    let essential = essential_arcs(network);
    if let Some(a) = (0..m).find(|&a| essential[a] && !covered[a]) {
        return Err(CertificateError::UncoveredArc(a));
    }

    let kept: Vec<usize> = (0..m).filter(|&a| covered[a]).collect();
    let sub = network.restrict_to(&kept);
    let order = match is_acyclic(&sub) {
        Acyclicity::Acyclic { order } => order,
        Acyclicity::Cyclic { .. } => return Err(CertificateError::Cyclic),
    };
    let listed = certificate.paths.len() as u64;
    if PathCounts::compute(&sub, &order, listed + 1).total(&sub) != listed {
        return Err(CertificateError::MissingPaths);
    }

    let mut demand = vec![Capacity::zero(); m];
    let mut count = vec![0usize; m];
    let mut bottleneck = vec![false; m];
    for p in &certificate.paths {
        for &a in p.arcs() {
            demand[a] += p.capacity();
            count[a] += 1;
            bottleneck[a] |= network.capacity(a) == p.capacity();
        }
    }
    for a in 0..m {
        if bottleneck[a] != certificate.bottlenecks.contains(a) {
            return Err(CertificateError::BottleneckMismatch(a));
        }
        if bottleneck[a] && count[a] > 1 {
            return Err(CertificateError::SharedBottleneck(a));
        }
        if !bottleneck[a] && network.capacity(a) < &demand[a] {
            return Err(CertificateError::CapacityDeficit(a));
        }
    }
    Ok(())
}
