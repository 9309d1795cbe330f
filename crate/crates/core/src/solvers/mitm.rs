//! Horowitz–Sahni meet-in-the-middle.

use std::time::Instant;

use num_bigint::BigUint;

use super::{
    canonical_mask, config_from_mask, parity_bound, SolverKind, SolverResult, DEFAULT_MITM_CAP,
};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::word::Word;

pub fn meet_in_the_middle(inst: &Instance) -> Result<SolverResult> {
    meet_in_the_middle_with_cap(inst, DEFAULT_MITM_CAP)
}

pub fn meet_in_the_middle_with_cap(inst: &Instance, cap: usize) -> Result<SolverResult> {
    let cap = cap.min(64);
    if inst.n() > cap {
        return Err(Error::capacity("meet_in_the_middle", inst.n(), cap));
    }
    let started = Instant::now();
    let out = match inst.small_weights() {
        Some(w) => run(&w, parity_bound(inst)),
        None => run(inst.weights(), parity_bound(inst)),
    };
    Ok(SolverResult::new(
        SolverKind::MeetInTheMiddle,
        out.discrepancy,
        config_from_mask(inst.n(), out.mask),
        true,
        out.work_nodes,
        out.peak_stored,
        started,
    ))
}

pub(super) struct Outcome {
    pub discrepancy: BigUint,
    pub mask: u64,
    pub work_nodes: u64,
    pub peak_stored: u64,
}

/// All `2^k` subset sums of `weights`, with masks shifted by `offset`, sorted by (sum, mask).
pub(super) fn subset_sums<W: Word>(weights: &[W], offset: usize) -> Vec<(W, u64)> {
    let mut sums = Vec::with_capacity(1 << weights.len());
    sums.push((W::zero(), 0u64));
    for (i, w) in weights.iter().enumerate() {
        let bit = 1u64 << (offset + i);
        for k in 0..sums.len() {
            let (s, m) = &sums[k];
            let next = (s.add(w), m | bit);
            sums.push(next);
        }
    }
    sums.sort_unstable();
    sums
}

/// Tracks the best discrepancy seen by a coordinated scan.
pub(super) struct Best<W> {
    total: W,
    n: usize,
    parity: W,
    pub d: Option<W>,
    pub mask: u64,
}

impl<W: Word> Best<W> {
    pub fn new(total: W, n: usize, parity: u8) -> Self {
        let parity = if parity == 1 {
            W::from_big(&BigUint::from(1u32))
        } else {
            W::zero()
        };
        Best {
            total,
            n,
            parity,
            d: None,
            mask: 0,
        }
    }

    /// Offers the pair sum `s` with mask `mask`; returns the comparison of `2s` with the total.
    pub fn offer(&mut self, s: &W, mask: u64) -> std::cmp::Ordering {
        let twice = s.double();
        let d = twice.abs_diff(&self.total);
        let mask = canonical_mask(self.n, mask);
        let better = match &self.d {
            None => true,
            Some(b) => d < *b || (d == *b && mask < self.mask),
        };
        if better {
            self.d = Some(d);
            self.mask = mask;
        }
        twice.cmp(&self.total)
    }

    pub fn at_parity_bound(&self) -> bool {
        self.d.as_ref() == Some(&self.parity)
    }

    pub fn discrepancy(&self) -> BigUint {
        self.d
            .as_ref()
            .expect("scan offered at least one pair")
            .to_big()
    }
}

pub(super) fn run<W: Word>(weights: &[W], parity: u8) -> Outcome {
    let n = weights.len();
    let split = n.div_ceil(2);
    let left = subset_sums(&weights[..split], 0);
    let right = subset_sums(&weights[split..], split);
    let total = weights.iter().fold(W::zero(), |acc, w| acc.add(w));
    let stored = (left.len() + right.len()) as u64;

    let mut best = Best::new(total, n, parity);
    let mut steps = 0u64;
    let (mut i, mut j) = (0usize, right.len());
    while i < left.len() && j > 0 {
        steps += 1;
        let (sl, ml) = &left[i];
        let (sr, mr) = &right[j - 1];
        let side = best.offer(&sl.add(sr), ml | mr);
        if best.at_parity_bound() {
            break;
        }
        match side {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j -= 1,
            std::cmp::Ordering::Equal => break,
        }
    }
    Outcome {
        discrepancy: best.discrepancy(),
        mask: best.mask,
        work_nodes: stored + steps,
        peak_stored: stored,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinmodel::energy;

    #[test]
    fn examples() {
        let inst = Instance::from_u64s(&[8, 7, 6, 5, 4]).unwrap();
        let r = meet_in_the_middle(&inst).unwrap();
        assert_eq!(r.discrepancy, BigUint::from(0u32));
        assert_eq!(energy(&inst, &r.witness).unwrap(), r.energy);
        assert!(r.witness.is_up(0));
        assert_eq!(r.peak_stored, 8 + 4);

        let r = meet_in_the_middle(&Instance::from_u64s(&[1, 1]).unwrap()).unwrap();
        assert_eq!(r.discrepancy, BigUint::from(0u32));
        assert_eq!(r.peak_stored, 4);
        // 4 sums enumerated; the first scan pair (0 + 1) already balances.
        assert_eq!(r.work_nodes, 4 + 1);
    }

    #[test]
    fn single_and_odd() {
        let r = meet_in_the_middle(&Instance::from_u64s(&[5]).unwrap()).unwrap();
        assert_eq!(r.discrepancy, BigUint::from(5u32));
        assert_eq!(r.witness.hex(), "1");
        let r = meet_in_the_middle(&Instance::from_u64s(&[3, 1, 1]).unwrap()).unwrap();
        assert_eq!(r.discrepancy, BigUint::from(1u32));
    }

    #[test]
    fn subset_sums_are_sorted_and_complete() {
        let sums = subset_sums(&[3u128, 1, 2], 4);
        assert_eq!(sums.len(), 8);
        assert!(sums.windows(2).all(|w| w[0] <= w[1]));
        assert!(sums.iter().all(|(_, m)| m & 0b1111 == 0));
        assert_eq!(sums.last().unwrap(), &(6, 0b111_0000));
    }

    #[test]
    fn cap() {
        let inst = crate::instance::generate(51, 8, 1).unwrap();
        assert!(meet_in_the_middle(&inst).unwrap_err().is_capacity());
    }
}
