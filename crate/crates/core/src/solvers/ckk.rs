//! Complete Karmarkar–Karp: depth-first branch and bound over the two ways of
//! combining the two largest numbers (difference first, then sum). The first
//! leaf reached is the plain differencing result, so the search is anytime.

use std::time::Instant;

use num_bigint::BigUint;

use super::kk::{color, Side};
use super::{parity_bound, SolverKind, SolverResult};
use crate::instance::Instance;
use crate::spinmodel::Configuration;
use crate::word::Word;

/// Runs to completion, or until `node_budget` search nodes have been expanded,
/// in which case the best partition so far is returned with `exact = false`.
pub fn complete_kk(inst: &Instance, node_budget: Option<u64>) -> SolverResult {
    let started = Instant::now();
    let parity = parity_bound(inst);
    let out = match inst.small_weights() {
        Some(w) => Search::run(&w, parity, node_budget),
        None => Search::run(inst.weights(), parity, node_budget),
    };
    SolverResult::new(
        SolverKind::CompleteKk,
        out.discrepancy,
        out.witness,
        !out.exhausted,
        out.nodes,
        out.peak,
        started,
    )
}

struct Outcome {
    discrepancy: BigUint,
    witness: Configuration,
    exhausted: bool,
    nodes: u64,
    peak: u64,
}

struct Search<W> {
    n: usize,
    parity: W,
    budget: Option<u64>,
    /// Merge relations on the current path. Node `n + depth` is formed at that
    /// depth; node `2n - 1` is the root joining the final forced split.
    parent: Vec<Option<(usize, Side)>>,
    best: Option<W>,
    best_witness: Option<Configuration>,
    nodes: u64,
    stored: u64,
    peak: u64,
    exhausted: bool,
}

impl<W: Word> Search<W> {
    fn run(weights: &[W], parity: u8, budget: Option<u64>) -> Outcome {
        let n = weights.len();
        let mut list: Vec<(W, usize)> = weights.iter().cloned().zip(0..).collect();
        list.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let sum = weights.iter().fold(W::zero(), |acc, w| acc.add(w));
        let parity = if parity == 1 {
            W::from_big(&BigUint::from(1u32))
        } else {
            W::zero()
        };
        let mut search = Search {
            n,
            parity,
            budget,
            parent: vec![None; 2 * n],
            best: None,
            best_witness: None,
            nodes: 0,
            stored: 0,
            peak: 0,
            exhausted: false,
        };
        search.dfs(list, sum, 0);
        Outcome {
            discrepancy: search.best.expect("search reaches a leaf").to_big(),
            witness: search.best_witness.expect("search reaches a leaf"),
            exhausted: search.exhausted,
            nodes: search.nodes,
            peak: search.peak,
        }
    }

    fn finished(&self) -> bool {
        self.exhausted || self.best.as_ref() == Some(&self.parity)
    }

    fn dfs(&mut self, list: Vec<(W, usize)>, sum: W, depth: usize) {
        if let (Some(budget), Some(_)) = (self.budget, &self.best) {
            if self.nodes >= budget {
                self.exhausted = true;
                return;
            }
        }
        self.nodes += 1;
        self.stored += list.len() as u64;
        self.peak = self.peak.max(self.stored);

        let (largest, top) = list[0].clone();
        let rest = sum.sub(&largest);
        if largest >= rest {
            self.leaf(&list, largest.sub(&rest));
        } else {
            let (b, ib) = list[1].clone();
            let id = self.n + depth;
            self.parent[top] = Some((id, Side::Same));
            self.parent[ib] = Some((id, Side::Opposite));
            let diff = largest.sub(&b);
            let child = insert_sorted(&list[2..], (diff, id));
            self.dfs(child, sum.sub(&b.double()), depth + 1);

            if !self.finished() {
                self.parent[top] = Some((id, Side::Same));
                self.parent[ib] = Some((id, Side::Same));
                let child = insert_sorted(&list[2..], (largest.add(&b), id));
                self.dfs(child, sum, depth + 1);
            }
        }
        self.stored -= list.len() as u64;
    }

    /// The largest element outweighs the rest: put it alone against everything else.
    fn leaf(&mut self, list: &[(W, usize)], d: W) {
        if self.best.as_ref().is_some_and(|b| d >= *b) {
            return;
        }
        let root = 2 * self.n - 1;
        self.parent[root] = None;
        self.parent[list[0].1] = Some((root, Side::Same));
        for (_, id) in &list[1..] {
            self.parent[*id] = Some((root, Side::Opposite));
        }
        self.best_witness = Some(color(self.n, &self.parent));
        self.best = Some(d);
    }
}

fn insert_sorted<W: Word>(rest: &[(W, usize)], item: (W, usize)) -> Vec<(W, usize)> {
    let pos = rest.partition_point(|(v, _)| *v >= item.0);
    let mut out = Vec::with_capacity(rest.len() + 1);
    out.extend_from_slice(&rest[..pos]);
    out.push(item);
    out.extend_from_slice(&rest[pos..]);
    out
}
