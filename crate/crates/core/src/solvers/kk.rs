//! Karmarkar–Karp largest differencing.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use num_bigint::BigUint;

use super::{SolverKind, SolverResult};
use crate::instance::Instance;
use crate::spinmodel::Configuration;
use crate::word::Word;

/// Side relation of a node to the node it was merged into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Side {
    Same,
    Opposite,
}

/// Two-colors the merge forest. Nodes `0..n` are the spins; each later node
/// was formed from earlier ones, so walking ids downwards visits every parent
/// before its children. Roots are placed up.
pub(super) fn color(n: usize, parent: &[Option<(usize, Side)>]) -> Configuration {
    let mut up = vec![true; parent.len()];
    for id in (0..parent.len()).rev() {
        if let Some((p, side)) = parent[id] {
            debug_assert!(p > id);
            up[id] = match side {
                Side::Same => up[p],
                Side::Opposite => !up[p],
            };
        }
    }
    Configuration::from_signs(&up[..n])
}

/// Repeatedly replaces the two largest numbers by their difference. The final
/// residue is the discrepancy; the merge tree gives the witness.
pub fn karmarkar_karp(inst: &Instance) -> SolverResult {
    let started = Instant::now();
    let (d, witness) = match inst.small_weights() {
        Some(w) => differencing(&w),
        None => differencing(inst.weights()),
    };
    let n = inst.n() as u64;
    SolverResult::new(
        SolverKind::KarmarkarKarp,
        d,
        witness,
        false,
        n - 1,
        n,
        started,
    )
}

fn differencing<W: Word>(weights: &[W]) -> (BigUint, Configuration) {
    let n = weights.len();
    let mut parent: Vec<Option<(usize, Side)>> = vec![None; n];
    let mut heap: BinaryHeap<(W, Reverse<usize>)> = weights
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, Reverse(i)))
        .collect();
    while heap.len() > 1 {
        let (a, Reverse(ia)) = heap.pop().expect("len > 1");
        let (b, Reverse(ib)) = heap.pop().expect("len > 1");
        let id = parent.len();
        parent.push(None);
        parent[ia] = Some((id, Side::Same));
        parent[ib] = Some((id, Side::Opposite));
        heap.push((a.sub(&b), Reverse(id)));
    }
    let (residue, _) = heap.pop().expect("instance is non-empty");
    (residue.to_big(), color(n, &parent))
}
