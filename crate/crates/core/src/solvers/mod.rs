//! Exact and heuristic solvers for two-way number partitioning.
//!
//! Every solver minimizes the discrepancy `|2 s - total|` over up-set sums `s`
//! in exact integer arithmetic and reports work counters alongside the optimum:
//!
//! | solver | exact | `work_nodes` | `peak_stored` |
//! |---|---|---|---|
//! | [`brute_force`] | yes | `2^(n-1)` configurations | 1 |
//! | [`meet_in_the_middle`] | yes | `2^|L| + 2^|R|` sums + scan steps | `2^|L| + 2^|R|` |
//! | [`schroeppel_shamir`] | yes | quarter sums + half sums generated | quarter lists + heaps |
//! | [`karmarkar_karp`] | no | `n - 1` differencing steps | `n` |
//! | [`complete_kk`] | yes, unless the node budget runs out | search nodes | list entries on the stack |
//!
//! Witnesses are canonical: spin 0 is always up.

mod brute;
mod ckk;
mod kk;
mod mitm;
mod schroeppel_shamir;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::spinmodel::{Configuration, Energy};

pub use brute::brute_force;
pub use ckk::complete_kk;
pub use kk::karmarkar_karp;
pub use mitm::meet_in_the_middle;
pub use schroeppel_shamir::schroeppel_shamir;

pub const DEFAULT_BRUTE_CAP: usize = 28;
/// Each half list holds at most `2^25` sums at this size.
pub const DEFAULT_MITM_CAP: usize = 50;
/// Quarter masks are packed into a `u64`.
pub const SS_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolverKind {
    BruteForce,
    MeetInTheMiddle,
    SchroeppelShamir,
    KarmarkarKarp,
    CompleteKk,
}

impl SolverKind {
    pub const ALL: [SolverKind; 5] = [
        SolverKind::BruteForce,
        SolverKind::MeetInTheMiddle,
        SolverKind::SchroeppelShamir,
        SolverKind::KarmarkarKarp,
        SolverKind::CompleteKk,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::BruteForce => "brute_force",
            SolverKind::MeetInTheMiddle => "meet_in_the_middle",
            SolverKind::SchroeppelShamir => "schroeppel_shamir",
            SolverKind::KarmarkarKarp => "karmarkar_karp",
            SolverKind::CompleteKk => "complete_kk",
        }
    }

    /// Short command-line name.
    pub fn short_name(self) -> &'static str {
        match self {
            SolverKind::BruteForce => "brute",
            SolverKind::MeetInTheMiddle => "mitm",
            SolverKind::SchroeppelShamir => "ss",
            SolverKind::KarmarkarKarp => "kk",
            SolverKind::CompleteKk => "ckk",
        }
    }

    pub fn is_exact(self) -> bool {
        self != SolverKind::KarmarkarKarp
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolverKind::ALL
            .into_iter()
            .find(|k| k.short_name() == s || k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown solver {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    pub brute_cap: usize,
    pub mitm_cap: usize,
    /// Search-node limit for [`complete_kk`]; `None` runs to completion.
    pub node_budget: Option<u64>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            brute_cap: DEFAULT_BRUTE_CAP,
            mitm_cap: DEFAULT_MITM_CAP,
            node_budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverResult {
    pub solver: SolverKind,
    pub energy: Energy,
    pub discrepancy: BigUint,
    pub witness: Configuration,
    /// `true` when the result is a certified optimum.
    pub exact: bool,
    pub work_nodes: u64,
    pub peak_stored: u64,
    pub wall_time: Duration,
}

impl SolverResult {
    fn new(
        solver: SolverKind,
        discrepancy: BigUint,
        witness: Configuration,
        exact: bool,
        work_nodes: u64,
        peak_stored: u64,
        started: Instant,
    ) -> Self {
        SolverResult {
            solver,
            energy: Energy::from_discrepancy(&discrepancy),
            discrepancy,
            witness: witness.canonical(),
            exact,
            work_nodes,
            peak_stored,
            wall_time: started.elapsed(),
        }
    }

    /// One JSON-lines record. `wallTimeMs` is `null` unless `timing` is set.
    pub fn record(&self, inst: &Instance, timing: bool) -> SolverRecord {
        SolverRecord {
            solver: self.solver.name(),
            n: inst.n(),
            bits: inst.bits(),
            seed: inst.seed(),
            energy: self.energy.to_string(),
            discrepancy: self.discrepancy.to_string(),
            witness: self.witness.hex(),
            exact: self.exact,
            work_nodes: self.work_nodes,
            peak_stored: self.peak_stored,
            wall_time_ms: timing
                .then(|| crate::numeric::round_sig(self.wall_time.as_secs_f64() * 1e3)),
        }
    }
}

/// Serialized form of a [`SolverResult`]. Big integers are decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolverRecord {
    pub solver: &'static str,
    pub n: usize,
    pub bits: u32,
    pub seed: Option<u64>,
    pub energy: String,
    pub discrepancy: String,
    pub witness: String,
    pub exact: bool,
    pub work_nodes: u64,
    pub peak_stored: u64,
    pub wall_time_ms: Option<f64>,
}

pub fn solve(kind: SolverKind, inst: &Instance, opts: &SolverOptions) -> Result<SolverResult> {
    match kind {
        SolverKind::BruteForce => brute::brute_force_with_cap(inst, opts.brute_cap),
        SolverKind::MeetInTheMiddle => mitm::meet_in_the_middle_with_cap(inst, opts.mitm_cap),
        SolverKind::SchroeppelShamir => schroeppel_shamir(inst),
        SolverKind::KarmarkarKarp => Ok(karmarkar_karp(inst)),
        SolverKind::CompleteKk => Ok(complete_kk(inst, opts.node_budget)),
    }
}

/// Smallest achievable discrepancy: the parity of the total.
pub(crate) fn parity_bound(inst: &Instance) -> u8 {
    u8::from(inst.total().bit(0))
}

/// Configuration from a packed mask, for solvers restricted to `n <= 64`.
pub(crate) fn config_from_mask(n: usize, mask: u64) -> Configuration {
    Configuration::from_mask(n, mask)
}

/// Flips `mask` so that spin 0 is up.
pub(crate) fn canonical_mask(n: usize, mask: u64) -> u64 {
    if mask & 1 == 1 {
        mask
    } else {
        let full = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
        mask ^ full
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solver_names_round_trip() {
        for k in SolverKind::ALL {
            assert_eq!(k.short_name().parse::<SolverKind>().unwrap(), k);
            assert_eq!(k.name().parse::<SolverKind>().unwrap(), k);
        }
        assert!("nope".parse::<SolverKind>().is_err());
    }

    #[test]
    fn canonical_masks() {
        assert_eq!(canonical_mask(3, 0b110), 0b001);
        assert_eq!(canonical_mask(3, 0b011), 0b011);
        assert_eq!(canonical_mask(64, 0), u64::MAX);
    }

    #[test]
    fn record_fields() {
        let inst =
            Instance::new(vec![BigUint::from(3u32), BigUint::from(5u32)], 4, Some(9)).unwrap();
        let r = brute_force(&inst).unwrap();
        let json = serde_json::to_string(&r.record(&inst, false)).unwrap();
        assert_eq!(
            json,
            r#"{"solver":"brute_force","n":2,"bits":4,"seed":9,"energy":"4","discrepancy":"2","witness":"1","exact":true,"workNodes":2,"peakStored":1,"wallTimeMs":null}"#
        );
        assert!(r.record(&inst, true).wall_time_ms.is_some());
    }
}
