//! Exact spectrum of the squared-sum spin glass: energy levels, degeneracies,
//! the ground eigenspace and the pairwise coupling form.

use ising_npp::instance::Instance;
use ising_npp::spinmodel::{
    coupling_energy, energy, expand_couplings, ground_eigenspace, residual, spectrum, Configuration,
};

fn main() -> ising_npp::Result<()> {
    let inst = Instance::from_u64s(&[8, 7, 6, 5, 4])?;

    let spec = spectrum(&inst)?;
    print!("{}", spec.to_csv());
    println!(
        "# {} configurations, ground degeneracy {}",
        spec.total(),
        spec.ground_degeneracy()
    );

    let (e0, ground) = ground_eigenspace(&inst)?;
    println!("# ground energy {e0}");
    for cfg in &ground {
        let up = cfg.up_indices();
        println!("#   up-set {up:?}  residual {}", residual(&inst, &e0, cfg)?);
    }

    // H = sum q_i^2 + sum_{i<j} 2 q_i q_j s_i s_j gives the same energies.
    let form = expand_couplings(&inst);
    println!(
        "# constant {}, {} couplings, J_01 = {}",
        form.constant,
        form.couplings.len(),
        form.coupling(0, 1).unwrap()
    );
    let cfg = Configuration::from_up_indices(5, &[0, 2])?;
    assert_eq!(coupling_energy(&form, &cfg)?, energy(&inst, &cfg)?);
    println!("# E({{0,2}}) = {}", energy(&inst, &cfg)?);
    Ok(())
}
