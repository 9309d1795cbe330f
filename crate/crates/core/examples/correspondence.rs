//! Three-way agreement check on a batch of seeded instances: solver optimum,
//! enumerated ground eigenspace and the low-temperature free energy (the
//! latter in normalized units, energies divided by the largest squared weight).

use ising_npp::correspondence::{correspond, derive_seed, CorrespondOptions};
use ising_npp::instance::generate;

fn main() -> ising_npp::Result<()> {
    let opts = CorrespondOptions::default();
    let mut agreed = 0;
    for trial in 0..10 {
        let inst = generate(14, 16, derive_seed(2024, 14, 16, trial))?;
        let report = correspond(&inst, &opts)?;
        let limit = report
            .limit
            .as_ref()
            .expect("n is under the enumeration cap");
        println!(
            "trial {trial}: E_solver {} E_spectrum {} g0 {} -T lnZ {:.3e} in [{:.3e}, {:.3e}] agree {}",
            report.e_ground_solver,
            report.e_ground_spectrum.as_ref().expect("enumerated"),
            report.degeneracy.unwrap_or(0),
            limit.estimate,
            limit.lower,
            limit.upper,
            report.agree
        );
        agreed += report.agree as usize;
    }
    println!("{agreed}/10 agree");

    // Above the enumeration cap only the solver leg runs.
    let big = correspond(&generate(40, 20, 1)?, &opts)?;
    println!(
        "n = 40: solver {} spectrum {:?} agree {}",
        big.solver.name(),
        big.e_ground_spectrum,
        big.agree
    );
    println!("{}", serde_json::to_string(&big.record(false)).unwrap());
    Ok(())
}
