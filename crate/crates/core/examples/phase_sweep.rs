//! Fraction of perfectly partitionable instances as the weight precision grows.

use ising_npp::correspondence::{phase_sweep, phase_trend_non_increasing, PhaseRow};
use ising_npp::solvers::{SolverKind, SolverOptions};

fn main() -> ising_npp::Result<()> {
    let bits: Vec<u32> = (4..=40).step_by(4).collect();
    let rows = phase_sweep(
        20,
        &bits,
        100,
        5,
        SolverKind::MeetInTheMiddle,
        &SolverOptions::default(),
    )?;
    println!("{}", PhaseRow::CSV_HEADER);
    for r in &rows {
        println!("{}", r.csv_line());
    }
    println!(
        "# non-increasing within noise: {}",
        phase_trend_non_increasing(&rows)
    );
    Ok(())
}
