//! The cooperative game induced by a flow network, and exhaustive reference
//! implementations of its solution concepts.
//!
//! Everything here enumerates the `2^|E|` coalitions (or `|E|!` orders), so it
//! is only usable on small networks. It is the ground truth the polynomial
//! recognizer in [`crate::recognition`] is tested against.
//!
//! Coalitions are bitmasks internally: bit `k` is arc `k`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::maxflow::{max_flow, max_flow_value};
use crate::network::{Coalition, FlowNetwork};
use crate::rational::{Capacity, Rational};

/// Default bound on players for the `2^|E|` tables.
pub const DEFAULT_PLAYER_LIMIT: usize = 16;
/// Default bound on players for the `|E|!` permutation sum.
pub const DEFAULT_PERMUTATION_LIMIT: usize = 10;

/// The characteristic function: maximum s-t flow using only the coalition's arcs.
pub fn gamma(network: &FlowNetwork, coalition: &Coalition) -> Result<Capacity> {
    Ok(max_flow(network, coalition)?.value().clone())
}

fn check_limit(network: &FlowNetwork, limit: usize) -> Result<()> {
    let players = network.arc_count();
    if players > limit || players >= 63 {
        Err(Error::TooManyPlayers { players, limit })
    } else {
        Ok(())
    }
}

/// `gamma` memoized over every coalition of a small game.
#[derive(Clone, Debug)]
pub struct GameTable {
    players: usize,
    values: Vec<Capacity>,
}

impl GameTable {
    pub fn new(network: &FlowNetwork) -> Result<GameTable> {
        GameTable::with_limit(network, DEFAULT_PLAYER_LIMIT)
    }

    pub fn with_limit(network: &FlowNetwork, limit: usize) -> Result<GameTable> {
        check_limit(network, limit)?;
        let players = network.arc_count();
        let mut usable = vec![false; players];
        let values = (0..1u64 << players)
            .map(|mask| {
                for (k, u) in usable.iter_mut().enumerate() {
                    *u = mask >> k & 1 == 1;
                }
                max_flow_value(network, &usable)
            })
            .collect();
        Ok(GameTable { players, values })
    }

    /// Tabulates an arbitrary set function; used by tests to compare games.
    pub fn from_fn(players: usize, mut f: impl FnMut(u64) -> Capacity) -> GameTable {
        GameTable {
            players,
            values: (0..1u64 << players).map(&mut f).collect(),
        }
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn value(&self, mask: u64) -> &Capacity {
        &self.values[mask as usize]
    }

    pub fn grand_mask(&self) -> u64 {
        (1u64 << self.players) - 1
    }

    /// First violation of `γ(S∪i) + γ(S∪j) <= γ(S∪{i,j}) + γ(S)`, scanning
    /// `S` in increasing mask order and then `i < j`. This local form is
    /// equivalent to supermodularity over all coalition pairs.
    pub fn convexity_violation(&self) -> Option<ConvexityViolation> {
        let grand = self.grand_mask();
        for s in 0..=grand {
            for i in (0..self.players).filter(|&i| s >> i & 1 == 0) {
                for j in (i + 1..self.players).filter(|&j| s >> j & 1 == 0) {
                    let (si, sj, sij) = (s | 1 << i, s | 1 << j, s | 1 << i | 1 << j);
                    let lhs = self.value(si) + self.value(sj);
                    let rhs = self.value(sij) + self.value(s);
                    if lhs > rhs {
                        return Some(ConvexityViolation {
                            player: i,
                            smaller: Coalition::from_mask(s),
                            larger: Coalition::from_mask(sj),
                            smaller_value: self.value(s).clone(),
                            smaller_with_player: self.value(si).clone(),
                            larger_value: self.value(sj).clone(),
                            larger_with_player: self.value(sij).clone(),
                        });
                    }
                }
            }
        }
        None
    }

    /// Möbius inversion over the subset lattice.
    pub fn dividends(&self) -> DividendTable {
        let mut values: Vec<Rational> = self.values.iter().map(|c| c.value().clone()).collect();
        for i in 0..self.players {
            let bit = 1usize << i;
            for mask in 0..values.len() {
                if mask & bit != 0 {
                    let lower = values[mask ^ bit].clone();
                    values[mask] -= lower;
                }
            }
        }
        DividendTable {
            players: self.players,
            values,
        }
    }
}

/// Evidence that `γ(T∪{i}) - γ(T) < γ(S∪{i}) - γ(S)` for some `S ⊆ T ⊆ E∖{i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityViolation {
    pub player: usize,
    pub smaller: Coalition,
    pub larger: Coalition,
    pub smaller_value: Capacity,
    pub smaller_with_player: Capacity,
    pub larger_value: Capacity,
    pub larger_with_player: Capacity,
}

impl ConvexityViolation {
    pub fn smaller_marginal(&self) -> Rational {
        &self.smaller_with_player - &self.smaller_value
    }

    pub fn larger_marginal(&self) -> Rational {
        &self.larger_with_player - &self.larger_value
    }
}

/// Brute-force convexity check. `None` means the game is convex.
pub fn is_convex_bruteforce(network: &FlowNetwork) -> Result<Option<ConvexityViolation>> {
    is_convex_bruteforce_with_limit(network, DEFAULT_PLAYER_LIMIT)
}

pub fn is_convex_bruteforce_with_limit(
    network: &FlowNetwork,
    limit: usize,
) -> Result<Option<ConvexityViolation>> {
    Ok(GameTable::with_limit(network, limit)?.convexity_violation())
}

/// Harsanyi dividends of every coalition of a small game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividendTable {
    players: usize,
    values: Vec<Rational>,
}

impl DividendTable {
    pub fn players(&self) -> usize {
        self.players
    }

    pub fn get_mask(&self, mask: u64) -> &Rational {
        &self.values[mask as usize]
    }

    pub fn get(&self, coalition: &Coalition) -> Option<&Rational> {
        let mask = coalition.to_mask()?;
        self.values.get(mask as usize)
    }

    /// Non-empty coalitions with a nonzero dividend, in mask order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Coalition, &Rational)> {
        self.values
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, v)| !v.is_zero())
            .map(|(m, v)| (Coalition::from_mask(m as u64), v))
    }

    /// Dividend-form Shapley value: `Σ_{T ∋ i} Δ(T) / |T|`.
    pub fn shapley(&self) -> Allocation {
        let mut payoffs: Vec<Rational> = vec![Rational::zero(); self.players];
        for (mask, d) in self.values.iter().enumerate().skip(1) {
            if d.is_zero() {
                continue;
            }
            let share = d / Rational::from_integer(BigInt::from(mask.count_ones()));
            for (i, p) in payoffs.iter_mut().enumerate() {
                if mask >> i & 1 == 1 {
                    *p += &share;
                }
            }
        }
        Allocation::from_vec(payoffs)
    }
}

pub fn dividends(network: &FlowNetwork) -> Result<DividendTable> {
    Ok(GameTable::new(network)?.dividends())
}

/// A payoff per player.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Allocation {
    payoffs: BTreeMap<usize, Rational>,
}

impl Allocation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Payoff `i` goes to arc `i`.
    pub fn from_vec(payoffs: Vec<Rational>) -> Self {
        Allocation {
            payoffs: payoffs.into_iter().enumerate().collect(),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        Allocation {
            payoffs: pairs.into_iter().collect(),
        }
    }

    pub fn set(&mut self, arc: usize, payoff: Rational) {
        self.payoffs.insert(arc, payoff);
    }

    pub fn get(&self, arc: usize) -> Option<&Rational> {
        self.payoffs.get(&arc)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.payoffs.iter().map(|(&k, v)| (k, v))
    }

    pub fn players(&self) -> Coalition {
        self.payoffs.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.payoffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payoffs.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.payoffs.values().sum()
    }

    /// `x(S)`; players without a payoff count as zero.
    pub fn sum_over(&self, coalition: &Coalition) -> Rational {
        coalition.iter().filter_map(|i| self.payoffs.get(&i)).sum()
    }
}

/// Shapley value as the average marginal contribution over all `|E|!` orders.
pub fn shapley_bruteforce(network: &FlowNetwork) -> Result<Allocation> {
    shapley_bruteforce_with_limit(network, DEFAULT_PERMUTATION_LIMIT)
}

pub fn shapley_bruteforce_with_limit(network: &FlowNetwork, limit: usize) -> Result<Allocation> {
    let table = GameTable::with_limit(network, limit)?;
    Ok(shapley_over_orders(&table))
}

/// Walks every order with Heap's algorithm, counting how often each player
/// joins each predecessor set, then averages the weighted marginals.
pub fn shapley_over_orders(table: &GameTable) -> Allocation {
    let n = table.players();
    if n == 0 {
        return Allocation::new();
    }
    let width = 1usize << n;
    let mut joins = vec![0u64; n * width];
    let mut order: Vec<usize> = (0..n).collect();
    let mut record = |order: &[usize]| {
        let mut mask = 0usize;
        for &p in order {
            joins[p * width + mask] += 1;
            mask |= 1 << p;
        }
    };
    record(&order);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            record(&order);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }

    let orders: BigInt = (1..=n as u64).map(BigInt::from).product();
    let payoffs = (0..n)
        .map(|p| {
            let mut total = Rational::zero();
            for mask in 0..width {
                let count = joins[p * width + mask];
                if count == 0 {
                    continue;
                }
                let gain = table.value((mask | 1 << p) as u64) - table.value(mask as u64);
                total += gain * Rational::from_integer(BigInt::from(count));
            }
            total / Rational::from_integer(orders.clone())
        })
        .collect();
    Allocation::from_vec(payoffs)
}

/// Payoffs when players join in `order`, each receiving its marginal
/// contribution. Uses one max-flow per prefix, so it has no size limit.
pub fn marginal_vector(network: &FlowNetwork, order: &[usize]) -> Result<Allocation> {
    let n = network.arc_count();
    let mut seen = vec![false; n];
    for &p in order {
        if p >= n || seen[p] {
            return Err(Error::NotAPermutation(format!("{order:?}")));
        }
        seen[p] = true;
    }
    if order.len() != n {
        return Err(Error::NotAPermutation(format!("{order:?}")));
    }
    let mut usable = vec![false; n];
    let mut previous = Capacity::zero();
    let mut allocation = Allocation::new();
    for &p in order {
        usable[p] = true;
        let current = max_flow_value(network, &usable);
        allocation.set(p, &current - &previous);
        previous = current;
    }
    Ok(allocation)
}

/// Outcome of [`core_membership`] for an efficient allocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoreCheck {
    InCore,
    Blocked {
        coalition: Coalition,
        payoff: Rational,
        value: Capacity,
    },
}

/// Checks efficiency and coalitional rationality exhaustively. A blocking
/// coalition is reported as the lexicographically smallest sorted member
/// list among all blocking coalitions.
pub fn core_membership(network: &FlowNetwork, allocation: &Allocation) -> Result<CoreCheck> {
    let table = GameTable::new(network)?;
    core_membership_in(&table, allocation)
}

pub fn core_membership_in(table: &GameTable, allocation: &Allocation) -> Result<CoreCheck> {
    let n = table.players();
    if allocation.players() != Coalition::from_indices(0..n) {
        return Err(Error::PlayerSetMismatch(format!(
            "expected payoffs for {n} players, got {}",
            allocation.len()
        )));
    }
    let total = allocation.total();
    let grand = table.value(table.grand_mask());
    if &total != grand.value() {
        return Err(Error::NotEfficient {
            allocated: crate::rational::format_rational(&total),
            value: grand.to_string(),
        });
    }
    let mut best: Option<(Vec<usize>, CoreCheck)> = None;
    for mask in 1..=table.grand_mask() {
        let coalition = Coalition::from_mask(mask);
        let payoff = allocation.sum_over(&coalition);
        if &payoff < table.value(mask).value() {
            let key: Vec<usize> = coalition.iter().collect();
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                let value = table.value(mask).clone();
                best = Some((
                    key,
                    CoreCheck::Blocked {
                        coalition,
                        payoff,
                        value,
                    },
                ));
            }
        }
    }
    Ok(best.map_or(CoreCheck::InCore, |(_, b)| b))
}

/// A population monotonic allocation scheme candidate: one allocation per
/// non-empty coalition, over that coalition's members.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Pmas {
    entries: BTreeMap<Coalition, Allocation>,
}

impl Pmas {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, coalition: Coalition, allocation: Allocation) {
        self.entries.insert(coalition, allocation);
    }

    pub fn get(&self, coalition: &Coalition) -> Option<&Allocation> {
        self.entries.get(coalition)
    }

    pub fn get_mut(&mut self, coalition: &Coalition) -> Option<&mut Allocation> {
        self.entries.get_mut(coalition)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Coalition, &Allocation)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PmasFailure {
    Efficiency {
        coalition: Coalition,
        allocated: Rational,
        value: Capacity,
    },
    Monotonicity {
        smaller: Coalition,
        larger: Coalition,
        player: usize,
        smaller_payoff: Rational,
        larger_payoff: Rational,
    },
}

/// Checks efficiency of every `y^S` and monotonicity `y^S_i <= y^T_i`.
/// Monotonicity is checked on covering pairs `T = S ∪ {j}`, which implies it
/// for all `S ⊆ T` by transitivity. `None` means the scheme is a PMAS.
pub fn verify_pmas(network: &FlowNetwork, scheme: &Pmas) -> Result<Option<PmasFailure>> {
    let table = GameTable::new(network)?;
    verify_pmas_in(&table, scheme)
}

pub fn verify_pmas_in(table: &GameTable, scheme: &Pmas) -> Result<Option<PmasFailure>> {
    let n = table.players();
    let grand = table.grand_mask();
    let mut by_mask: Vec<Option<&Allocation>> = vec![None; 1 << n];
    for (coalition, allocation) in scheme.iter() {
        let mask = coalition
            .to_mask()
            .filter(|m| m & !grand == 0)
            .ok_or_else(|| Error::UnknownArcId(format!("{coalition:?}")))?;
        if allocation.players() != *coalition {
            return Err(Error::IncompleteScheme(format!(
                "allocation for {coalition:?} is not defined exactly on its members"
            )));
        }
        by_mask[mask as usize] = Some(allocation);
    }
    if let Some(missing) = (1..=grand).find(|&m| by_mask[m as usize].is_none()) {
        return Err(Error::IncompleteScheme(format!(
            "no allocation for {:?}",
            Coalition::from_mask(missing)
        )));
    }
    let entry = |m: u64| by_mask[m as usize].expect("checked complete");

    for mask in 1..=grand {
        let allocated = entry(mask).total();
        if &allocated != table.value(mask).value() {
            return Ok(Some(PmasFailure::Efficiency {
                coalition: Coalition::from_mask(mask),
                allocated,
                value: table.value(mask).clone(),
            }));
        }
    }
    for mask in 1..=grand {
        for j in (0..n).filter(|&j| mask >> j & 1 == 0) {
            let larger = mask | 1 << j;
            for i in (0..n).filter(|&i| mask >> i & 1 == 1) {
                let small = entry(mask).get(i).expect("domain checked");
                let large = entry(larger).get(i).expect("domain checked");
                if small > large {
                    return Ok(Some(PmasFailure::Monotonicity {
                        smaller: Coalition::from_mask(mask),
                        larger: Coalition::from_mask(larger),
                        player: i,
                        smaller_payoff: small.clone(),
                        larger_payoff: large.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Shapley value of each subgame `(S, γ|S)`, as a scheme. Used as a reference
/// PMAS candidate; it is a PMAS for every convex game.
pub fn subgame_shapley_scheme(table: &GameTable) -> Pmas {
    let dividends = table.dividends();
    let mut scheme = Pmas::new();
    for mask in 1..=table.grand_mask() {
        let mut allocation = Allocation::new();
        for i in (0..table.players()).filter(|&i| mask >> i & 1 == 1) {
            allocation.set(i, Rational::zero());
        }
        // Δ of a sub-coalition is the same in the subgame.
        let mut sub = mask;
        loop {
            if sub != 0 {
                let d = dividends.get_mask(sub);
                if !d.is_zero() {
                    let share = d / Rational::from_integer(BigInt::from(sub.count_ones()));
                    for i in (0..table.players()).filter(|&i| sub >> i & 1 == 1) {
                        let p = allocation.payoffs.get_mut(&i).expect("member");
                        *p += &share;
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        scheme.insert(Coalition::from_mask(mask), allocation);
    }
    scheme
}
