//! Partition function, mean energy and free energy on a temperature schedule,
//! and the zero-temperature extraction of the ground energy.

use ising_npp::instance::generate;
use ising_npp::spinmodel::spectrum;
use ising_npp::statmech::{ground_energy_via_limit, thermo_curve, Scaling, Schedule, Thermo};

fn main() -> ising_npp::Result<()> {
    let inst = generate(12, 10, 7)?;
    let spec = spectrum(&inst)?;
    let schedule = Schedule::geometric(10.0, 1e-3, 12)?;

    let curve = thermo_curve(&spec, &schedule, Scaling::Auto)?;
    print!("{}", curve.to_csv());

    let limit = ground_energy_via_limit(&spec, &schedule, 1e-6, Scaling::Auto)?;
    println!(
        "# -T lnZ at T = {:e}: {:.9} in [{:.9}, {:.9}] (units x{})",
        limit.t_final, limit.estimate, limit.lower, limit.upper, limit.scale
    );
    println!("# exact ground energy (raw): {}", spec.min_energy());

    // Raw units: lnZ at beta = 0 is n ln 2.
    let raw = Thermo::raw(&spec);
    println!(
        "# lnZ(0) = {:.12}, 12 ln 2 = {:.12}",
        raw.log_partition(0.0)?,
        12.0 * std::f64::consts::LN_2
    );
    Ok(())
}
