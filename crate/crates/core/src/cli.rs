//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards `argv` and the exit code.
//!
//! Exit codes: 0 success, 1 `correspond` found a disagreement, 2 usage or
//! input error, 3 capacity exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::correspondence::{
    correspond, phase_sweep, scaling_study, CorrespondOptions, PhaseRow, ScalingStudy, AVOGADRO_N,
};
use crate::error::Error;
use crate::instance::{generate, parse, serialize, Instance};
use crate::numeric::round_sig;
use crate::solvers::{solve, SolverKind, SolverOptions, SolverRecord};
use crate::spinmodel::{spectrum_with_cap, DEFAULT_ENUMERATION_CAP};
use crate::statmech::{thermo_curve, Scaling, Schedule};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ising-npp",
    version,
    about = "Exact spin-glass spectra, thermodynamics and number-partitioning solvers",
    after_help = "Exit codes: 0 ok, 1 correspondence disagreement, 2 usage/input error, 3 capacity exceeded.\n\
                  Reals are printed with 12 significant digits; wall times are emitted only with --timing."
)]
struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a seeded instance file.
    Gen {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(short = 'b', long)]
        bits: u32,
        #[arg(short = 's', long)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Solve an instance; JSON-lines columns: solver,n,bits,seed,energy,discrepancy,witness,exact,workNodes,peakStored,wallTimeMs.
    Solve {
        #[command(flatten)]
        source: SourceArgs,
        /// Solver to run.
        #[arg(long, value_enum, default_value_t = SolverChoice::All)]
        solver: SolverChoice,
        /// Run every solver (same as --solver all).
        #[arg(long)]
        all: bool,
        /// Largest n for brute force.
        #[arg(long, default_value_t = crate::solvers::DEFAULT_BRUTE_CAP)]
        cap: usize,
        /// Node budget for complete_kk.
        #[arg(long)]
        node_budget: Option<u64>,
        /// Record wall-clock times (makes output non-reproducible).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact spectrum; CSV columns: energy,degeneracy.
    Spectrum {
        #[command(flatten)]
        source: SourceArgs,
        /// Largest n for enumeration.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Thermodynamic curve; CSV columns: T,beta,lnZ,meanE,freeE,scale.
    Thermo {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cross-check solver, spectrum and zero-temperature limit; exits 1 on disagreement.
    Correspond {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        schedule: ScheduleArgs,
        /// Convergence tolerance on the limit estimate.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Largest n for the spectrum leg.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Work-counter scaling; CSV columns: n,bits,trials,solver,completed,meanWorkNodes,meanPeakStored,meanWallMs,error.
    Scaling {
        #[arg(long)]
        nmin: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 2)]
        nstep: usize,
        #[arg(short = 'b', long)]
        bits: u32,
        #[arg(short = 's', long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Solvers, comma separated.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "mitm,ss")]
        solver: Vec<SolverChoice>,
        /// Largest n for brute force.
        #[arg(long, default_value_t = crate::solvers::DEFAULT_BRUTE_CAP)]
        cap: usize,
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Perfect-partition fraction against bits; CSV columns: n,bits,alpha,trials,perfect,fraction,ciLow,ciHigh,error.
    Phase {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(long)]
        bmin: u32,
        #[arg(long)]
        bmax: u32,
        #[arg(long, default_value_t = 4)]
        bstep: u32,
        #[arg(short = 's', long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Exact solver.
        #[arg(long, value_enum, default_value_t = SolverChoice::Mitm)]
        solver: SolverChoice,
        #[arg(long, default_value_t = crate::solvers::DEFAULT_BRUTE_CAP)]
        cap: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Instance file, or the generator triple `-n -b -s`.
#[derive(Debug, Args)]
struct SourceArgs {
    /// Instance file (`npp v1` format).
    instance: Option<PathBuf>,
    #[arg(short = 'n', long = "n")]
    n: Option<usize>,
    #[arg(short = 'b', long)]
    bits: Option<u32>,
    #[arg(short = 's', long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct ScheduleArgs {
    #[arg(long, default_value_t = 10.0)]
    tmax: f64,
    #[arg(long, default_value_t = 1e-3)]
    tmin: f64,
    #[arg(long, default_value_t = 40)]
    steps: usize,
    /// Energy unit for thermodynamics.
    #[arg(long, value_enum, default_value_t = ScalingChoice::Auto)]
    scaling: ScalingChoice,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file (default: standard output).
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverChoice {
    Brute,
    Mitm,
    Ss,
    Kk,
    Ckk,
    All,
}

impl SolverChoice {
    fn kinds(self) -> Vec<SolverKind> {
        match self {
            SolverChoice::Brute => vec![SolverKind::BruteForce],
            SolverChoice::Mitm => vec![SolverKind::MeetInTheMiddle],
            SolverChoice::Ss => vec![SolverKind::SchroeppelShamir],
            SolverChoice::Kk => vec![SolverKind::KarmarkarKarp],
            SolverChoice::Ckk => vec![SolverKind::CompleteKk],
            SolverChoice::All => SolverKind::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScalingChoice {
    Auto,
    Raw,
    Normalized,
}

impl From<ScalingChoice> for Scaling {
    fn from(s: ScalingChoice) -> Self {
        match s {
            ScalingChoice::Auto => Scaling::Auto,
            ScalingChoice::Raw => Scaling::Raw,
            ScalingChoice::Normalized => Scaling::Normalized,
        }
    }
}

/// Failure of a subcommand, mapped onto an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

impl SourceArgs {
    fn load(&self) -> CliResult<Instance> {
        match (&self.instance, self.n, self.bits, self.seed) {
            (Some(path), None, None, None) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
            }
            (None, Some(n), Some(bits), Some(seed)) => Ok(generate(n, bits, seed)?),
            (Some(_), ..) => Err(Failure::Usage(
                "give either an instance file or -n/-b/-s, not both".into(),
            )),
            _ => Err(Failure::Usage(
                "an instance file or all of -n, -b and -s is required".into(),
            )),
        }
    }
}

impl ScheduleArgs {
    fn schedule(&self) -> CliResult<Schedule> {
        Schedule::geometric(self.tmax, self.tmin, self.steps)
            .map_err(|e| Failure::Usage(e.to_string()))
    }
}

impl OutputArgs {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn emit(&self, data: &str, stdout: &mut dyn Write) -> CliResult<()> {
        match &self.output {
            Some(path) => fs::write(path, data)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
            None => stdout
                .write_all(data.as_bytes())
                .map_err(|e| Failure::Usage(format!("cannot write to stdout: {e}"))),
        }
    }
}

fn json_lines<T: Serialize>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|r| serde_json::to_string(&r).expect("records serialize") + "\n")
        .collect()
}

fn csv_records<T: Serialize>(items: impl IntoIterator<Item = T>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in items {
        w.serialize(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

/// Parses `args` (including the program name), runs one subcommand and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };
    let (mut out_buf, mut err_buf) = (Vec::new(), Vec::new());
    let result = pool.install(|| execute(cli.command, &mut out_buf, &mut err_buf));
    let _ = stdout.write_all(&out_buf);
    let _ = stdout.flush();
    let _ = stderr.write_all(&err_buf);
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_capacity() {
                EXIT_CAPACITY
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Gen { n, bits, seed, out } => {
            out.emit(&serialize(&generate(n, bits, seed)?), stdout)?;
        }
        Command::Solve {
            source,
            solver,
            all,
            cap,
            node_budget,
            timing,
            out,
        } => {
            let inst = source.load()?;
            let opts = SolverOptions {
                brute_cap: cap,
                node_budget,
                ..SolverOptions::default()
            };
            let kinds = if all {
                SolverKind::ALL.to_vec()
            } else {
                solver.kinds()
            };
            let mut records: Vec<SolverRecord> = Vec::new();
            for kind in kinds {
                records.push(solve(kind, &inst, &opts)?.record(&inst, timing));
            }
            let data = match out.format_or(Format::Jsonl) {
                Format::Jsonl => json_lines(records),
                Format::Csv => csv_records(records),
            };
            out.emit(&data, stdout)?;
        }
        Command::Spectrum { source, cap, out } => {
            let spec = spectrum_with_cap(&source.load()?, cap)?;
            let data =
                match out.format_or(Format::Csv) {
                    Format::Csv => spec.to_csv(),
                    Format::Jsonl => json_lines(spec.iter().map(
                        |(e, g)| serde_json::json!({ "energy": e.to_string(), "degeneracy": g }),
                    )),
                };
            out.emit(&data, stdout)?;
        }
        Command::Thermo {
            source,
            schedule,
            cap,
            out,
        } => {
            let spec = spectrum_with_cap(&source.load()?, cap)?;
            let curve = thermo_curve(&spec, &schedule.schedule()?, schedule.scaling.into())?;
            let data = match out.format_or(Format::Csv) {
                Format::Csv => curve.to_csv(),
                Format::Jsonl => json_lines(curve.rows.iter().map(|r| {
                    serde_json::json!({
                        "T": round_sig(r.t),
                        "beta": round_sig(r.beta),
                        "lnZ": round_sig(r.ln_z),
                        "meanE": round_sig(r.mean_energy),
                        "freeE": round_sig(r.free_energy),
                        "scale": round_sig(curve.scale),
                    })
                })),
            };
            out.emit(&data, stdout)?;
        }
        Command::Correspond {
            source,
            schedule,
            tol,
            cap,
            timing,
            out,
        } => {
            let inst = source.load()?;
            let opts = CorrespondOptions {
                schedule: schedule.schedule()?,
                tol,
                enumeration_cap: cap,
                scaling: schedule.scaling.into(),
                ..CorrespondOptions::default()
            };
            let report = correspond(&inst, &opts)?;
            let record = report.record(timing);
            let data = match out.format_or(Format::Jsonl) {
                Format::Jsonl => json_lines([&record]),
                Format::Csv => {
                    let mut flat = serde_json::to_value(&record).expect("record serializes");
                    flat.as_object_mut().expect("object").remove("cost");
                    let obj = flat.as_object().expect("object");
                    let header: Vec<&str> = obj.keys().map(String::as_str).collect();
                    let values: Vec<String> = obj
                        .values()
                        .map(|v| match v {
                            serde_json::Value::String(s) => s.clone(),
                            serde_json::Value::Null => String::new(),
                            other => other.to_string(),
                        })
                        .collect();
                    format!("{}\n{}\n", header.join(","), values.join(","))
                }
            };
            out.emit(&data, stdout)?;
            if !report.agree {
                let _ = writeln!(stderr, "correspondence check failed: legs disagree");
                return Ok(EXIT_DISAGREE);
            }
        }
        Command::Scaling {
            nmin,
            nmax,
            nstep,
            bits,
            seed,
            trials,
            solver,
            cap,
            timing,
            out,
        } => {
            if nstep == 0 || nmin == 0 || nmin > nmax {
                return Err(Failure::Usage(
                    "need 1 <= nmin <= nmax and nstep >= 1".into(),
                ));
            }
            let ns: Vec<usize> = (nmin..=nmax).step_by(nstep).collect();
            let mut kinds: Vec<SolverKind> = solver.iter().flat_map(|s| s.kinds()).collect();
            kinds.dedup();
            let opts = SolverOptions {
                brute_cap: cap,
                ..SolverOptions::default()
            };
            let study = scaling_study(&ns, bits, trials, seed, &kinds, &opts)?;
            let data = match out.format_or(Format::Csv) {
                Format::Csv => {
                    for fit in &study.fits {
                        let _ = writeln!(stderr, "{}", fit.avogadro_projection());
                    }
                    study.to_csv(timing)
                }
                Format::Jsonl => scaling_jsonl(&study, timing),
            };
            out.emit(&data, stdout)?;
        }
        Command::Phase {
            n,
            bmin,
            bmax,
            bstep,
            seed,
            trials,
            solver,
            cap,
            out,
        } => {
            if bstep == 0 || bmin == 0 || bmin > bmax {
                return Err(Failure::Usage(
                    "need 1 <= bmin <= bmax and bstep >= 1".into(),
                ));
            }
            let kind = match solver.kinds().as_slice() {
                [k] => *k,
                _ => {
                    return Err(Failure::Usage(
                        "phase needs exactly one exact solver".into(),
                    ))
                }
            };
            let bits: Vec<u32> = (bmin..=bmax).step_by(bstep as usize).collect();
            let opts = SolverOptions {
                brute_cap: cap,
                ..SolverOptions::default()
            };
            let rows = phase_sweep(n, &bits, trials, seed, kind, &opts)?;
            let data = match out.format_or(Format::Csv) {
                Format::Csv => {
                    let mut s = String::from(PhaseRow::CSV_HEADER);
                    s.push('\n');
                    for r in &rows {
                        s.push_str(&r.csv_line());
                        s.push('\n');
                    }
                    s
                }
                Format::Jsonl => json_lines(&rows),
            };
            out.emit(&data, stdout)?;
        }
    }
    Ok(EXIT_OK)
}

fn scaling_jsonl(study: &ScalingStudy, timing: bool) -> String {
    let mut out = String::new();
    for row in &study.rows {
        for cell in &row.cells {
            let mut v = serde_json::to_value(cell).expect("cell serializes");
            let obj = v.as_object_mut().expect("object");
            obj.insert("type".into(), "cell".into());
            obj.insert("n".into(), row.n.into());
            obj.insert("bits".into(), row.bits.into());
            obj.insert("trials".into(), row.trials.into());
            for key in ["meanWorkNodes", "meanPeakStored"] {
                if let Some(x) = obj[key].as_f64() {
                    obj.insert(key.into(), round_sig(x).into());
                }
            }
            let wall = cell
                .mean_wall_time
                .filter(|_| timing)
                .map(|d| round_sig(d.as_secs_f64() * 1e3));
            obj.insert(
                "meanWallMs".into(),
                serde_json::to_value(wall).expect("option"),
            );
            out.push_str(&v.to_string());
            out.push('\n');
        }
    }
    for fit in &study.fits {
        let v = serde_json::json!({
            "type": "fit",
            "solver": fit.solver.name(),
            "metric": fit.metric.name(),
            "slope": round_sig(fit.fit.slope),
            "intercept": round_sig(fit.fit.intercept),
            "rmsResidual": round_sig(fit.fit.rms_residual),
            "extrapolationN": AVOGADRO_N,
            "extrapolatedLog2": round_sig(fit.log2_at(AVOGADRO_N)),
            "label": "extrapolation, not measurement",
        });
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}
