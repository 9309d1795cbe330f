use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{config_from_mask, SolverKind, SolverResult, DEFAULT_BRUTE_CAP};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::spinmodel::MAX_ENUMERATION_CAP;
use crate::word::{chunking, for_each_canonical, Word};

pub fn brute_force(inst: &Instance) -> Result<SolverResult> {
    brute_force_with_cap(inst, DEFAULT_BRUTE_CAP)
}

/// Scans all `2^(n-1)` configurations with spin 0 up. There is no early
/// exit, so `work_nodes` is exactly `2^(n-1)`; ties go to the smallest mask.
pub fn brute_force_with_cap(inst: &Instance, cap: usize) -> Result<SolverResult> {
    let cap = cap.min(MAX_ENUMERATION_CAP);
    if inst.n() > cap {
        return Err(Error::capacity("brute_force", inst.n(), cap));
    }
    let started = Instant::now();
    let (d, mask) = match inst.small_weights() {
        Some(w) => scan(&w),
        None => scan(inst.weights()),
    };
    Ok(SolverResult::new(
        SolverKind::BruteForce,
        d,
        config_from_mask(inst.n(), mask),
        true,
        1u64 << (inst.n() - 1),
        1,
        started,
    ))
}

fn scan<W: Word>(weights: &[W]) -> (BigUint, u64) {
    let total = weights.iter().fold(W::zero(), |acc, w| acc.add(w));
    let (chunks, low) = chunking(weights.len());
    let (d, mask) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut best: Option<(W, u64)> = None;
            for_each_canonical(weights, c, low, |mask, up| {
                let d = up.double().abs_diff(&total);
                let better = match &best {
                    None => true,
                    Some((bd, bm)) => d < *bd || (d == *bd && mask < *bm),
                };
                if better {
                    best = Some((d, mask));
                }
            });
            best.expect("chunk is non-empty")
        })
        .min()
        .expect("at least one chunk");
    (d.to_big(), mask)
}
