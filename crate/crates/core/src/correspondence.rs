//! Finite-N cross-checks between the quantum ground state, the classical
//! zero-temperature limit and the partitioning optimum, plus measurements of
//! how the cost of certifying that optimum grows with `n`.
//!
//! [`correspond`] maps the ground eigenspace of the diagonal Hamiltonian onto
//! the optimal partitions found by an exact solver and checks that both agree
//! with `-T ln Z` at the coldest scheduled temperature. [`scaling_study`] and
//! [`phase_sweep`] run seeded experiments over many instances; each trial's
//! instance seed is derived from `(seed, n, bits, trial)` by [`derive_seed`],
//! so results do not depend on scheduling.

use std::time::Duration;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::instance::{generate, Instance};
use crate::numeric::{fit_line, ratio_to_f64, round_sig, LinearFit};
use crate::solvers::{solve, SolverKind, SolverOptions, SolverResult};
use crate::spinmodel::{
    ground_eigenspace_with_cap, residual, spectrum_with_cap, Configuration, Energy,
    DEFAULT_ENUMERATION_CAP,
};
use crate::statmech::{ground_energy_via_limit, LimitEstimate, Scaling, Schedule};

const LN_2: f64 = std::f64::consts::LN_2;
/// Slack for floating-point bracket checks, relative to the ground energy.
const BRACKET_SLACK: f64 = 1e-9;

/// Instance seed for trial `trial` of the `(n, bits)` cell: the first output
/// word of ChaCha20 keyed with the little-endian bytes of `(seed, n, bits, trial)`.
pub fn derive_seed(seed: u64, n: usize, bits: u32, trial: usize) -> u64 {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(n as u64).to_le_bytes());
    key[16..24].copy_from_slice(&u64::from(bits).to_le_bytes());
    key[24..].copy_from_slice(&(trial as u64).to_le_bytes());
    ChaCha20Rng::from_seed(key).next_u64()
}

#[derive(Debug, Clone)]
pub struct CorrespondOptions {
    pub schedule: Schedule,
    pub tol: f64,
    pub enumeration_cap: usize,
    pub scaling: Scaling,
    pub solver: SolverOptions,
}

impl Default for CorrespondOptions {
    fn default() -> Self {
        CorrespondOptions {
            schedule: Schedule::default(),
            tol: 1e-6,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            scaling: Scaling::Auto,
            solver: SolverOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodCost {
    pub method: &'static str,
    pub work_nodes: u64,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrespondenceReport {
    pub n: usize,
    pub bits: u32,
    pub seed: Option<u64>,
    pub solver: SolverKind,
    pub e_ground_solver: Energy,
    pub solver_witness: Configuration,
    /// Absent when `n` exceeds the enumeration cap.
    pub e_ground_spectrum: Option<Energy>,
    pub degeneracy: Option<usize>,
    /// The solver witness is a member of the enumerated ground eigenspace.
    pub witness_in_eigenspace: Option<bool>,
    /// Every eigenspace member has residual 0 against the solver energy.
    pub eigenspace_certified: Option<bool>,
    pub limit: Option<LimitEstimate>,
    /// The limit estimate lies in `[E - T n ln 2, E]` for the solver energy `E`, in the limit's units.
    pub limit_in_bracket: Option<bool>,
    pub agree: bool,
    pub cost: Vec<MethodCost>,
}

/// Runs every feasible leg and checks that all present legs agree. Legs that
/// are infeasible at this `n` are reported absent, not skipped silently.
pub fn correspond(inst: &Instance, opts: &CorrespondOptions) -> Result<CorrespondenceReport> {
    let n = inst.n();
    let solver_kind = if n <= opts.solver.brute_cap {
        SolverKind::BruteForce
    } else if n <= opts.solver.mitm_cap {
        SolverKind::MeetInTheMiddle
    } else {
        SolverKind::CompleteKk
    };
    let solved = solve(solver_kind, inst, &opts.solver)?;
    let mut cost = vec![MethodCost {
        method: solver_kind.name(),
        work_nodes: solved.work_nodes,
        wall_time: solved.wall_time,
    }];
    let mut agree = solved.exact;

    let mut report = CorrespondenceReport {
        n,
        bits: inst.bits(),
        seed: inst.seed(),
        solver: solver_kind,
        e_ground_solver: solved.energy.clone(),
        solver_witness: solved.witness.clone(),
        e_ground_spectrum: None,
        degeneracy: None,
        witness_in_eigenspace: None,
        eigenspace_certified: None,
        limit: None,
        limit_in_bracket: None,
        agree,
        cost: Vec::new(),
    };

    if n <= opts
        .enumeration_cap
        .min(crate::spinmodel::MAX_ENUMERATION_CAP)
    {
        let started = std::time::Instant::now();
        let spec = spectrum_with_cap(inst, opts.enumeration_cap)?;
        let (e_ground, eigenspace) = ground_eigenspace_with_cap(inst, opts.enumeration_cap)?;
        cost.push(MethodCost {
            method: "spectrum",
            work_nodes: 1u64 << n,
            wall_time: started.elapsed(),
        });

        let in_space = eigenspace.binary_search(&solved.witness).is_ok();
        let mut certified = true;
        for cfg in &eigenspace {
            if residual(inst, &solved.energy, cfg)? != num_bigint::BigUint::ZERO {
                certified = false;
                break;
            }
        }
        agree &= e_ground == solved.energy
            && spec.min_energy() == &e_ground
            && in_space
            && certified
            && spec.ground_degeneracy() as usize == eigenspace.len();

        let started = std::time::Instant::now();
        let limit = ground_energy_via_limit(&spec, &opts.schedule, opts.tol, opts.scaling)?;
        cost.push(MethodCost {
            method: "zero_temperature_limit",
            work_nodes: (spec.entries().len() * opts.schedule.temperatures().len()) as u64,
            wall_time: started.elapsed(),
        });
        let e_solver = if limit.scale == 1.0 {
            ratio_to_f64(solved.energy.value(), &1u32.into())
        } else {
            let unit = inst.max_weight() * inst.max_weight();
            ratio_to_f64(solved.energy.value(), &unit)
        };
        let slack = BRACKET_SLACK * e_solver.abs().max(1.0);
        let in_bracket = limit.estimate <= e_solver + slack
            && limit.estimate >= e_solver - limit.t_final * n as f64 * LN_2 - slack
            && limit.within_bracket(slack);
        agree &= in_bracket;

        report.e_ground_spectrum = Some(e_ground);
        report.degeneracy = Some(eigenspace.len());
        report.witness_in_eigenspace = Some(in_space);
        report.eigenspace_certified = Some(certified);
        report.limit = Some(limit);
        report.limit_in_bracket = Some(in_bracket);
    }
    report.agree = agree;
    report.cost = cost;
    Ok(report)
}

impl CorrespondenceReport {
    pub fn record(&self, timing: bool) -> CorrespondenceRecord {
        CorrespondenceRecord {
            n: self.n,
            bits: self.bits,
            seed: self.seed,
            solver: self.solver.name(),
            e_ground_solver: self.e_ground_solver.to_string(),
            witness: self.solver_witness.hex(),
            e_ground_spectrum: self.e_ground_spectrum.as_ref().map(Energy::to_string),
            degeneracy: self.degeneracy,
            witness_in_eigenspace: self.witness_in_eigenspace,
            eigenspace_certified: self.eigenspace_certified,
            limit_estimate: self.limit.as_ref().map(|l| round_sig(l.estimate)),
            limit_lower: self.limit.as_ref().map(|l| round_sig(l.lower)),
            limit_upper: self.limit.as_ref().map(|l| round_sig(l.upper)),
            limit_t: self.limit.as_ref().map(|l| round_sig(l.t_final)),
            limit_converged: self.limit.as_ref().map(|l| l.converged),
            scale: self.limit.as_ref().map(|l| round_sig(l.scale)),
            limit_in_bracket: self.limit_in_bracket,
            agree: self.agree,
            cost: self
                .cost
                .iter()
                .map(|c| CostRecord {
                    method: c.method,
                    work_nodes: c.work_nodes,
                    wall_time_ms: timing.then(|| round_sig(c.wall_time.as_secs_f64() * 1e3)),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CostRecord {
    pub method: &'static str,
    pub work_nodes: u64,
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CorrespondenceRecord {
    pub n: usize,
    pub bits: u32,
    pub seed: Option<u64>,
    pub solver: &'static str,
    pub e_ground_solver: String,
    pub witness: String,
    pub e_ground_spectrum: Option<String>,
    pub degeneracy: Option<usize>,
    pub witness_in_eigenspace: Option<bool>,
    pub eigenspace_certified: Option<bool>,
    pub limit_estimate: Option<f64>,
    pub limit_lower: Option<f64>,
    pub limit_upper: Option<f64>,
    pub limit_t: Option<f64>,
    pub limit_converged: Option<bool>,
    pub scale: Option<f64>,
    pub limit_in_bracket: Option<bool>,
    pub agree: bool,
    pub cost: Vec<CostRecord>,
}

/// Aggregate counters of one solver over the trials of one `(n, bits)` cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScalingCell {
    pub solver: &'static str,
    /// Trials that completed without error.
    pub completed: usize,
    pub mean_work_nodes: Option<f64>,
    pub mean_peak_stored: Option<f64>,
    #[serde(skip)]
    pub mean_wall_time: Option<Duration>,
    /// First error message, e.g. a capacity error at this `n`.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub n: usize,
    pub bits: u32,
    pub trials: usize,
    pub cells: Vec<ScalingCell>,
}

/// Least-squares fit of `log2(metric)` against `n` for one solver.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub solver: SolverKind,
    pub metric: Metric,
    pub fit: LinearFit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    WorkNodes,
    PeakStored,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::WorkNodes => "workNodes",
            Metric::PeakStored => "peakStored",
        }
    }
}

/// Number of spins in a mole, the size used for the labelled extrapolation.
pub const AVOGADRO_N: f64 = 1e24;

impl ScalingFit {
    /// Fitted `log2(metric)` at `n`.
    pub fn log2_at(&self, n: f64) -> f64 {
        self.fit.slope * n + self.fit.intercept
    }

    /// Human-readable projection to `n = 10^24`; an extrapolation, not a measurement.
    pub fn avogadro_projection(&self) -> String {
        format!(
            "EXTRAPOLATION (not measured): {} {} at n = 1e24 ~ 2^{:.3e} (slope {:.4}/spin, intercept {:.4})",
            self.solver.name(),
            self.metric.name(),
            self.log2_at(AVOGADRO_N),
            self.fit.slope,
            self.fit.intercept
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingStudy {
    pub rows: Vec<ScalingRow>,
    pub fits: Vec<ScalingFit>,
}

impl ScalingStudy {
    pub fn fit(&self, solver: SolverKind, metric: Metric) -> Option<&ScalingFit> {
        self.fits
            .iter()
            .find(|f| f.solver == solver && f.metric == metric)
    }

    /// CSV with columns `n,bits,trials,solver,completed,meanWorkNodes,meanPeakStored,meanWallMs,error`.
    pub fn to_csv(&self, timing: bool) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "n",
            "bits",
            "trials",
            "solver",
            "completed",
            "meanWorkNodes",
            "meanPeakStored",
            "meanWallMs",
            "error",
        ])
        .expect("in-memory write");
        for row in &self.rows {
            for c in &row.cells {
                let opt = |v: Option<f64>| v.map(crate::numeric::fmt_real).unwrap_or_default();
                w.write_record([
                    row.n.to_string(),
                    row.bits.to_string(),
                    row.trials.to_string(),
                    c.solver.to_string(),
                    c.completed.to_string(),
                    opt(c.mean_work_nodes),
                    opt(c.mean_peak_stored),
                    if timing {
                        opt(c.mean_wall_time.map(|d| d.as_secs_f64() * 1e3))
                    } else {
                        String::new()
                    },
                    c.error.clone().unwrap_or_default(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }
}

#[derive(Debug, Clone)]
struct TrialOutcome {
    work_nodes: u64,
    peak_stored: u64,
    wall_time: Duration,
}

fn run_cell(
    n: usize,
    bits: u32,
    trials: usize,
    seed: u64,
    solver: SolverKind,
    opts: &SolverOptions,
) -> ScalingCell {
    let outcomes: Vec<std::result::Result<TrialOutcome, String>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let inst =
                generate(n, bits, derive_seed(seed, n, bits, t)).map_err(|e| e.to_string())?;
            let r: SolverResult = solve(solver, &inst, opts).map_err(|e| e.to_string())?;
            Ok(TrialOutcome {
                work_nodes: r.work_nodes,
                peak_stored: r.peak_stored,
                wall_time: r.wall_time,
            })
        })
        .collect();
    let ok: Vec<&TrialOutcome> = outcomes.iter().filter_map(|o| o.as_ref().ok()).collect();
    let error = outcomes.iter().find_map(|o| o.as_ref().err().cloned());
    let count = ok.len();
    let mean = |f: &dyn Fn(&TrialOutcome) -> u64| {
        (count > 0).then(|| ok.iter().map(|o| u128::from(f(o))).sum::<u128>() as f64 / count as f64)
    };
    ScalingCell {
        solver: solver.name(),
        completed: count,
        mean_work_nodes: mean(&|o| o.work_nodes),
        mean_peak_stored: mean(&|o| o.peak_stored),
        mean_wall_time: (count > 0)
            .then(|| ok.iter().map(|o| o.wall_time).sum::<Duration>() / count as u32),
        error,
    }
}

/// Runs each solver on `trials` seeded instances per `n` and fits `log2` of
/// the mean counters against `n`. Per-cell errors are recorded, not raised.
pub fn scaling_study(
    n_values: &[usize],
    bits: u32,
    trials: usize,
    seed: u64,
    solvers: &[SolverKind],
    opts: &SolverOptions,
) -> Result<ScalingStudy> {
    if trials == 0 {
        return Err(crate::Error::InvalidParameter(
            "trials must be at least 1".into(),
        ));
    }
    if n_values.is_empty() || n_values.windows(2).any(|w| w[1] <= w[0]) || n_values[0] == 0 {
        return Err(crate::Error::InvalidParameter(
            "n values must be positive and strictly ascending".into(),
        ));
    }
    let rows: Vec<ScalingRow> = n_values
        .iter()
        .map(|&n| ScalingRow {
            n,
            bits,
            trials,
            cells: solvers
                .iter()
                .map(|&s| run_cell(n, bits, trials, seed, s, opts))
                .collect(),
        })
        .collect();

    let mut fits = Vec::new();
    for (k, &solver) in solvers.iter().enumerate() {
        for metric in [Metric::WorkNodes, Metric::PeakStored] {
            let points: Vec<(f64, f64)> = rows
                .iter()
                .filter_map(|r| {
                    let c = &r.cells[k];
                    let v = match metric {
                        Metric::WorkNodes => c.mean_work_nodes,
                        Metric::PeakStored => c.mean_peak_stored,
                    }?;
                    (c.completed == r.trials && v > 0.0).then(|| (r.n as f64, v.log2()))
                })
                .collect();
            if let Some(fit) = fit_line(&points) {
                fits.push(ScalingFit {
                    solver,
                    metric,
                    fit,
                });
            }
        }
    }
    Ok(ScalingStudy { rows, fits })
}

/// Fraction of seeded instances at one `bits` value whose optimum is a perfect partition.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PhaseRow {
    pub n: usize,
    pub bits: u32,
    /// `bits / n`.
    pub alpha: f64,
    pub trials: usize,
    pub perfect: usize,
    pub fraction: f64,
    /// 95% Wilson score interval for the fraction.
    pub ci_low: f64,
    pub ci_high: f64,
    pub error: Option<String>,
}

/// 95% Wilson score interval.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    // The bounds are exactly 0 and 1 at the extremes; avoid rounding residue there.
    let low = if successes == 0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let high = if successes == trials {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    (low, high)
}

/// Perfect means discrepancy `<= 1`, which absorbs the odd-total parity floor.
pub fn phase_sweep(
    n: usize,
    bits_values: &[u32],
    trials: usize,
    seed: u64,
    solver: SolverKind,
    opts: &SolverOptions,
) -> Result<Vec<PhaseRow>> {
    if trials == 0 {
        return Err(crate::Error::InvalidParameter(
            "trials must be at least 1".into(),
        ));
    }
    if !solver.is_exact() {
        return Err(crate::Error::InvalidParameter(format!(
            "phase sweep needs an exact solver, got {solver}"
        )));
    }
    let mut bits_values = bits_values.to_vec();
    bits_values.sort_unstable();
    bits_values.dedup();
    let rows = bits_values
        .into_iter()
        .map(|bits| {
            let outcomes: Vec<std::result::Result<bool, String>> = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let inst = generate(n, bits, derive_seed(seed, n, bits, t))
                        .map_err(|e| e.to_string())?;
                    let r = solve(solver, &inst, opts).map_err(|e| e.to_string())?;
                    Ok(r.discrepancy <= num_bigint::BigUint::from(1u32))
                })
                .collect();
            let error = outcomes.iter().find_map(|o| o.as_ref().err().cloned());
            let done = outcomes.iter().filter(|o| o.is_ok()).count();
            let perfect = outcomes.iter().filter(|o| matches!(o, Ok(true))).count();
            let (lo, hi) = wilson_interval(perfect, done);
            PhaseRow {
                n,
                bits,
                alpha: round_sig(f64::from(bits) / n as f64),
                trials: done,
                perfect,
                fraction: if done == 0 {
                    0.0
                } else {
                    perfect as f64 / done as f64
                },
                ci_low: round_sig(lo),
                ci_high: round_sig(hi),
                error,
            }
        })
        .collect();
    Ok(rows)
}

/// `true` when no row's fraction rises above the previous row's beyond binomial
/// noise, i.e. each Wilson interval starts below the previous one's upper end.
pub fn phase_trend_non_increasing(rows: &[PhaseRow]) -> bool {
    rows.windows(2).all(|w| w[1].ci_low <= w[0].ci_high)
}

impl PhaseRow {
    pub const CSV_HEADER: &'static str = "n,bits,alpha,trials,perfect,fraction,ciLow,ciHigh,error";

    pub fn csv_line(&self) -> String {
        use crate::numeric::fmt_real;
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.bits,
            fmt_real(self.alpha),
            self.trials,
            self.perfect,
            fmt_real(self.fraction),
            fmt_real(self.ci_low),
            fmt_real(self.ci_high),
            self.error.as_deref().unwrap_or("")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(w: &[u64]) -> Instance {
        Instance::from_u64s(w).unwrap()
    }

    #[test]
    fn two_equal_spins() {
        let r = correspond(&inst(&[1, 1]), &CorrespondOptions::default()).unwrap();
        assert_eq!(r.e_ground_solver, Energy::from(0));
        assert_eq!(r.e_ground_spectrum, Some(Energy::from(0)));
        assert_eq!(r.degeneracy, Some(2));
        let l = r.limit.as_ref().unwrap();
        assert!(l.estimate <= 0.0 && l.estimate >= -2.0 * l.t_final * LN_2);
        assert!(r.agree);
    }

    #[test]
    fn small_examples_agree() {
        let r = correspond(&inst(&[3, 1, 1]), &CorrespondOptions::default()).unwrap();
        assert_eq!(r.e_ground_solver, Energy::from(1));
        assert_eq!(r.degeneracy, Some(2));
        assert!(r.agree);
        let r = correspond(&inst(&[8, 7, 6, 5, 4]), &CorrespondOptions::default()).unwrap();
        assert_eq!(r.e_ground_solver, Energy::from(0));
        assert!(r.agree);
        assert_eq!(r.cost.len(), 3);
    }

    #[test]
    fn spectrum_leg_absent_above_cap() {
        let opts = CorrespondOptions {
            enumeration_cap: 4,
            ..Default::default()
        };
        let r = correspond(&inst(&[8, 7, 6, 5, 4]), &opts).unwrap();
        assert!(r.e_ground_spectrum.is_none());
        assert!(r.limit.is_none());
        assert!(r.agree);
        let json = serde_json::to_string(&r.record(false)).unwrap();
        assert!(json.contains(r#""eGroundSpectrum":null"#), "{json}");
    }

    #[test]
    fn derived_seeds_are_distinct_and_stable() {
        assert_eq!(derive_seed(1, 20, 8, 0), derive_seed(1, 20, 8, 0));
        let seeds: std::collections::BTreeSet<u64> =
            (0..100).map(|t| derive_seed(1, 20, 8, t)).collect();
        assert_eq!(seeds.len(), 100);
        assert_ne!(derive_seed(1, 20, 8, 0), derive_seed(1, 20, 9, 0));
        assert_ne!(derive_seed(1, 20, 8, 0), derive_seed(1, 21, 8, 0));
    }

    #[test]
    fn brute_slope_is_one() {
        let study = scaling_study(
            &[6, 8, 10],
            8,
            3,
            1,
            &[SolverKind::BruteForce],
            &SolverOptions::default(),
        )
        .unwrap();
        let fit = study
            .fit(SolverKind::BruteForce, Metric::WorkNodes)
            .unwrap();
        assert_eq!(fit.fit.slope, 1.0);
        assert!(fit.avogadro_projection().starts_with("EXTRAPOLATION"));
        let csv = study.to_csv(false);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("6,8,3,brute_force,3,"));
    }

    #[test]
    fn capacity_errors_stay_in_their_cell() {
        let opts = SolverOptions {
            brute_cap: 7,
            ..Default::default()
        };
        let study = scaling_study(&[6, 8], 8, 2, 1, &[SolverKind::BruteForce], &opts).unwrap();
        assert_eq!(study.rows[0].cells[0].completed, 2);
        assert_eq!(study.rows[1].cells[0].completed, 0);
        assert!(study.rows[1].cells[0]
            .error
            .as_ref()
            .unwrap()
            .contains("capacity"));
    }

    #[test]
    fn scaling_rejects_bad_ranges() {
        let o = SolverOptions::default();
        assert!(scaling_study(&[8, 6], 8, 1, 1, &[SolverKind::BruteForce], &o).is_err());
        assert!(scaling_study(&[6], 8, 0, 1, &[SolverKind::BruteForce], &o).is_err());
    }

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && hi > 0.5);
        assert!(wilson_interval(0, 10).0 < 1e-12);
        assert!(wilson_interval(10, 10).1 > 1.0 - 1e-12);
        assert!(wilson_interval(10, 10).0 > 0.6);
    }

    #[test]
    fn phase_rows_sorted() {
        let rows = phase_sweep(
            10,
            &[30, 2],
            20,
            5,
            SolverKind::MeetInTheMiddle,
            &SolverOptions::default(),
        )
        .unwrap();
        assert_eq!(rows.iter().map(|r| r.bits).collect::<Vec<_>>(), vec![2, 30]);
        assert_eq!(rows[0].fraction, 1.0);
        assert!(phase_trend_non_increasing(&rows));
        assert!(phase_sweep(
            10,
            &[2],
            5,
            1,
            SolverKind::KarmarkarKarp,
            &SolverOptions::default()
        )
        .is_err());
    }
}
