//! Every solver on the same instance, with its work counters.
//!
//! ```text
//! cargo run --release --example solvers -- 24 32 1
//! ```

use ising_npp::instance::generate;
use ising_npp::solvers::{solve, SolverKind, SolverOptions};
use ising_npp::spinmodel::energy;

fn main() -> ising_npp::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (n, bits, seed) = match args[..] {
        [n, b, s] => (n as usize, b as u32, s),
        _ => (20, 24, 1),
    };
    let inst = generate(n, bits, seed)?;
    let opts = SolverOptions::default();

    println!(
        "{:<20} {:>14} {:>6} {:>12} {:>10}",
        "solver", "discrepancy", "exact", "workNodes", "peak"
    );
    for kind in SolverKind::ALL {
        let r = solve(kind, &inst, &opts)?;
        assert_eq!(energy(&inst, &r.witness)?, r.energy);
        println!(
            "{:<20} {:>14} {:>6} {:>12} {:>10}",
            kind.name(),
            r.discrepancy,
            r.exact,
            r.work_nodes,
            r.peak_stored
        );
    }

    // A tight node budget turns complete KK into an anytime heuristic.
    let budget = SolverOptions {
        node_budget: Some(50),
        ..opts
    };
    let r = solve(SolverKind::CompleteKk, &inst, &budget)?;
    println!(
        "complete_kk with 50-node budget: discrepancy {} exact {}",
        r.discrepancy, r.exact
    );
    Ok(())
}
