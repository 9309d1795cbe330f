//! Schroeppel–Shamir: the meet-in-the-middle scan, but each half's subset sums
//! are streamed in sorted order from two quarter lists through a heap, so only
//! `O(2^(n/4))` sums are held at once.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use super::mitm::{self, subset_sums, Best};
use super::{config_from_mask, parity_bound, SolverKind, SolverResult, SS_CAP};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::word::Word;

pub fn schroeppel_shamir(inst: &Instance) -> Result<SolverResult> {
    if inst.n() > SS_CAP {
        return Err(Error::capacity("schroeppel_shamir", inst.n(), SS_CAP));
    }
    let started = Instant::now();
    let parity = parity_bound(inst);
    let out = match (inst.n() < 4, inst.small_weights()) {
        (true, Some(w)) => mitm::run(&w, parity),
        (true, None) => mitm::run(inst.weights(), parity),
        (false, Some(w)) => run(&w, parity),
        (false, None) => run(inst.weights(), parity),
    };
    Ok(SolverResult::new(
        SolverKind::SchroeppelShamir,
        out.discrepancy,
        config_from_mask(inst.n(), out.mask),
        true,
        out.work_nodes,
        out.peak_stored,
        started,
    ))
}

#[derive(Debug, PartialEq, Eq)]
struct HeapEntry<W> {
    sum: W,
    a: usize,
    b: usize,
    descending: bool,
}

impl<W: Word> Ord for HeapEntry<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = (&self.sum, self.a, self.b).cmp(&(&other.sum, other.a, other.b));
        if self.descending {
            key
        } else {
            key.reverse()
        }
    }
}

impl<W: Word> PartialOrd for HeapEntry<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sums `a_i + b_j` of two sorted lists, produced in ascending or descending order.
struct SortedPairSums<W> {
    a: Vec<(W, u64)>,
    b: Vec<(W, u64)>,
    heap: BinaryHeap<HeapEntry<W>>,
    descending: bool,
    produced: u64,
}

impl<W: Word> SortedPairSums<W> {
    fn new(a: Vec<(W, u64)>, b: Vec<(W, u64)>, descending: bool) -> Self {
        let start = if descending { b.len() - 1 } else { 0 };
        let heap = a
            .iter()
            .enumerate()
            .map(|(i, (s, _))| HeapEntry {
                sum: s.add(&b[start].0),
                a: i,
                b: start,
                descending,
            })
            .collect();
        SortedPairSums {
            a,
            b,
            heap,
            descending,
            produced: 0,
        }
    }

    fn stored(&self) -> usize {
        self.a.len() + self.b.len() + self.heap.len()
    }
}

impl<W: Word> Iterator for SortedPairSums<W> {
    type Item = (W, u64);

    fn next(&mut self) -> Option<(W, u64)> {
        let top = self.heap.pop()?;
        let next_b = if self.descending {
            top.b.checked_sub(1)
        } else {
            Some(top.b + 1).filter(|&j| j < self.b.len())
        };
        if let Some(j) = next_b {
            self.heap.push(HeapEntry {
                sum: self.a[top.a].0.add(&self.b[j].0),
                a: top.a,
                b: j,
                descending: self.descending,
            });
        }
        self.produced += 1;
        Some((top.sum, self.a[top.a].1 | self.b[top.b].1))
    }
}

fn run<W: Word>(weights: &[W], parity: u8) -> mitm::Outcome {
    let n = weights.len();
    let half = n.div_ceil(2);
    let (lq, rq) = (half.div_ceil(2), half + (n - half).div_ceil(2));
    let quarters = [
        subset_sums(&weights[..lq], 0),
        subset_sums(&weights[lq..half], lq),
        subset_sums(&weights[half..rq], half),
        subset_sums(&weights[rq..], rq),
    ];
    let quarter_sums: u64 = quarters.iter().map(|q| q.len() as u64).sum();
    let [l1, l2, r1, r2] = quarters;
    let mut left = SortedPairSums::new(l1, l2, false);
    let mut right = SortedPairSums::new(r1, r2, true);
    let mut peak = (left.stored() + right.stored()) as u64;

    let total = weights.iter().fold(W::zero(), |acc, w| acc.add(w));
    let mut best = Best::new(total, n, parity);
    let mut cur_l = left.next();
    let mut cur_r = right.next();
    while let (Some((sl, ml)), Some((sr, mr))) = (&cur_l, &cur_r) {
        let side = best.offer(&sl.add(sr), ml | mr);
        if best.at_parity_bound() {
            break;
        }
        match side {
            Ordering::Less => cur_l = left.next(),
            Ordering::Greater => cur_r = right.next(),
            Ordering::Equal => break,
        }
        peak = peak.max((left.stored() + right.stored()) as u64);
    }
    mitm::Outcome {
        discrepancy: best.discrepancy(),
        mask: best.mask,
        work_nodes: quarter_sums + left.produced + right.produced,
        peak_stored: peak,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::generate;
    use crate::solvers::meet_in_the_middle;
    use crate::spinmodel::energy;
    use num_bigint::BigUint;

    #[test]
    fn examples() {
        let inst = Instance::from_u64s(&[8, 7, 6, 5, 4]).unwrap();
        let r = schroeppel_shamir(&inst).unwrap();
        assert_eq!(r.discrepancy, BigUint::from(0u32));
        assert_eq!(energy(&inst, &r.witness).unwrap(), r.energy);

        let one = Instance::from_u64s(&[1]).unwrap();
        let ss = schroeppel_shamir(&one).unwrap();
        let mitm = meet_in_the_middle(&one).unwrap();
        assert_eq!(
            (&ss.discrepancy, &ss.witness, ss.work_nodes, ss.peak_stored),
            (
                &mitm.discrepancy,
                &mitm.witness,
                mitm.work_nodes,
                mitm.peak_stored
            )
        );
        assert_eq!(ss.solver, SolverKind::SchroeppelShamir);
    }

    #[test]
    fn streams_are_sorted_and_complete() {
        let a = subset_sums(&[5u128, 2], 0);
        let b = subset_sums(&[7u128, 1, 3], 2);
        let asc: Vec<_> = SortedPairSums::new(a.clone(), b.clone(), false).collect();
        let desc: Vec<_> = SortedPairSums::new(a, b, true).collect();
        assert_eq!(asc.len(), 32);
        assert!(asc.windows(2).all(|w| w[0].0 <= w[1].0));
        assert!(desc.windows(2).all(|w| w[0].0 >= w[1].0));
        let mut masks: Vec<u64> = asc.iter().map(|x| x.1).collect();
        masks.sort_unstable();
        assert_eq!(masks, (0..32).collect::<Vec<_>>());
    }

    #[test]
    fn stores_quarter_scale_sums() {
        let inst = generate(24, 40, 5).unwrap();
        let ss = schroeppel_shamir(&inst).unwrap();
        let mitm = meet_in_the_middle(&inst).unwrap();
        assert_eq!(ss.discrepancy, mitm.discrepancy);
        assert_eq!(mitm.peak_stored, 2 * 4096);
        assert_eq!(ss.peak_stored, 6 * 64);
        assert!(ss.peak_stored < 64 * 64);
    }
}
