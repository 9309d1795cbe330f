//! Exponential growth of the work counters, with fitted log2 slopes and a
//! clearly labelled extrapolation to a macroscopic number of spins.
//!
//! ```text
//! cargo run --release --example scaling
//! ```

use ising_npp::correspondence::{scaling_study, Metric};
use ising_npp::solvers::{SolverKind, SolverOptions};

fn main() -> ising_npp::Result<()> {
    let ns: Vec<usize> = (12..=24).step_by(2).collect();
    let solvers = [
        SolverKind::BruteForce,
        SolverKind::MeetInTheMiddle,
        SolverKind::SchroeppelShamir,
    ];
    let study = scaling_study(&ns, 40, 5, 11, &solvers, &SolverOptions::default())?;
    print!("{}", study.to_csv(false));

    for kind in solvers {
        for metric in [Metric::WorkNodes, Metric::PeakStored] {
            if let Some(fit) = study.fit(kind, metric) {
                println!(
                    "# {:<20} {:<10} slope {:.4}",
                    kind.name(),
                    metric.name(),
                    fit.fit.slope
                );
            }
        }
    }
    if let Some(fit) = study.fit(SolverKind::MeetInTheMiddle, Metric::WorkNodes) {
        println!("# {}", fit.avogadro_projection());
    }
    Ok(())
}
