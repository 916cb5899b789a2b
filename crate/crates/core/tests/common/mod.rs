#![allow(dead_code)]

use flowgame::game::GameTable;
use flowgame::{Capacity, FlowNetwork, StPath};

/// Every multiset of at most `max_arcs` arcs over the forward pairs of the
/// vertex order `s, x1, x2, t`, each with a capacity from `caps`.
pub fn forward_dags(max_arcs: usize, caps: &[u64]) -> Vec<FlowNetwork> {
    let order = ["s", "x1", "x2", "t"];
    let mut options = Vec::new();
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            for &c in caps {
                options.push((order[i], order[j], c));
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    multisets(&options, 0, max_arcs, &mut chosen, &mut |pick| {
        let mut b = FlowNetwork::builder().vertices(order).source("s").sink("t");
        for (k, &(x, y, c)) in pick.iter().enumerate() {
            b = b.arc(format!("a{k}"), x, y, Capacity::from_integer(c));
        }
        out.push(b.build().unwrap());
    });
    out
}

fn multisets<T: Copy>(
    options: &[T],
    from: usize,
    left: usize,
    chosen: &mut Vec<T>,
    emit: &mut impl FnMut(&[T]),
) {
    emit(chosen);
    if left == 0 {
        return;
    }
    for k in from..options.len() {
        chosen.push(options[k]);
        multisets(options, k, left - 1, chosen, emit);
        chosen.pop();
    }
}

/// `γ(S ∪ {arc}) = γ(S)` for every coalition `S`.
pub fn is_dummy(table: &GameTable, arc: usize) -> bool {
    let bit = 1u64 << arc;
    (0..=table.grand_mask())
        .filter(|m| m & bit == 0)
        .all(|m| table.value(m) == table.value(m | bit))
}

pub fn path_mask(p: &StPath) -> u64 {
    p.arcs().iter().fold(0, |m, &a| m | 1 << a)
}
