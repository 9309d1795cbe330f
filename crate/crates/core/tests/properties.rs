//! Property tests. The oracle is a direct signed sum over all 2^n sign
//! vectors in `i128`, independent of the library's Gray-code enumeration.

use std::collections::BTreeMap;

use ising_npp::instance::{parse, serialize, Instance};
use ising_npp::solvers::{solve, SolverKind, SolverOptions};
use ising_npp::spinmodel::{
    coupling_energy, discrepancy, energy, expand_couplings, ground_eigenspace, residual, spectrum,
    Configuration,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn naive_energies(w: &[u64]) -> Vec<u128> {
    let n = w.len();
    (0..1u64 << n)
        .map(|mask| {
            let s: i128 = w
                .iter()
                .enumerate()
                .map(|(i, &q)| {
                    if mask >> i & 1 == 1 {
                        q as i128
                    } else {
                        -(q as i128)
                    }
                })
                .sum();
            (s * s) as u128
        })
        .collect()
}

fn weights(max_n: usize, bits: u32) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..(1u64 << bits), 1..=max_n)
}

fn big(x: u128) -> BigUint {
    BigUint::from(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip(w in weights(30, 40)) {
        let inst = Instance::from_u64s(&w).unwrap();
        prop_assert_eq!(parse(&serialize(&inst)).unwrap(), inst);
    }

    #[test]
    fn flip_symmetry_and_parity(w in weights(16, 20), mask in any::<u64>()) {
        let inst = Instance::from_u64s(&w).unwrap();
        let cfg = Configuration::from_mask(w.len(), mask & ((1u64 << w.len()) - 1));
        let d = discrepancy(&inst, &cfg).unwrap();
        prop_assert_eq!(energy(&inst, &cfg).unwrap(), energy(&inst, &cfg.complement()).unwrap());
        prop_assert_eq!(d.bit(0), inst.total().bit(0));
    }

    #[test]
    fn coupling_form_matches_squared_sum(w in weights(10, 24)) {
        let inst = Instance::from_u64s(&w).unwrap();
        let form = expand_couplings(&inst);
        let naive = naive_energies(&w);
        for (mask, e) in naive.iter().enumerate() {
            let cfg = Configuration::from_mask(w.len(), mask as u64);
            prop_assert_eq!(coupling_energy(&form, &cfg).unwrap().value().clone(), big(*e));
        }
    }

    #[test]
    fn spectrum_matches_histogram(w in weights(12, 12)) {
        let inst = Instance::from_u64s(&w).unwrap();
        let mut hist: BTreeMap<u128, u64> = BTreeMap::new();
        for e in naive_energies(&w) {
            *hist.entry(e).or_default() += 1;
        }
        let spec = spectrum(&inst).unwrap();
        let got: Vec<(BigUint, u64)> = spec.iter().map(|(e, g)| (e.value().clone(), g)).collect();
        let want: Vec<(BigUint, u64)> = hist.into_iter().map(|(e, g)| (big(e), g)).collect();
        prop_assert_eq!(got, want);
        prop_assert!(spec.iter().all(|(_, g)| g % 2 == 0));
        prop_assert_eq!(spec.total(), 1u128 << w.len());
    }

    #[test]
    fn eigenspace_is_set_of_minimizers(w in weights(12, 8)) {
        let inst = Instance::from_u64s(&w).unwrap();
        let naive = naive_energies(&w);
        let min = *naive.iter().min().unwrap();
        let want: Vec<u64> = (0..naive.len() as u64).filter(|&m| naive[m as usize] == min).collect();
        let (e0, space) = ground_eigenspace(&inst).unwrap();
        prop_assert_eq!(e0.value(), &big(min));
        let got: Vec<u64> = space.iter().map(|c| u64::try_from(c.upset()).unwrap()).collect();
        prop_assert_eq!(got, want);
        for c in &space {
            prop_assert_eq!(residual(&inst, &e0, c).unwrap(), BigUint::from(0u32));
        }
    }

    #[test]
    fn solvers_agree_with_oracle(w in weights(14, 30)) {
        let inst = Instance::from_u64s(&w).unwrap();
        let min = big(*naive_energies(&w).iter().min().unwrap());
        let opts = SolverOptions::default();
        for kind in SolverKind::ALL {
            let r = solve(kind, &inst, &opts).unwrap();
            prop_assert_eq!(energy(&inst, &r.witness).unwrap(), r.energy.clone());
            prop_assert!(r.witness.is_up(0), "{} witness not canonical", kind);
            if kind.is_exact() {
                prop_assert_eq!(r.energy.value(), &min, "{}", kind);
            } else {
                prop_assert!(r.energy.value() >= &min);
            }
        }
    }
}

#[test]
fn wide_weights_use_exact_arithmetic() {
    // 2^100 + k: the u128 fast path is not taken for the total.
    let base = BigUint::from(1u32) << 100usize;
    let w: Vec<BigUint> = [5u32, 3, 4, 6, 2]
        .iter()
        .map(|&k| &base * 2u32 + k)
        .collect();
    let inst = Instance::new(w, 102, None).unwrap();
    let opts = SolverOptions::default();
    let exact: Vec<BigUint> = SolverKind::ALL
        .into_iter()
        .filter(|k| k.is_exact())
        .map(|k| solve(k, &inst, &opts).unwrap().discrepancy)
        .collect();
    // Odd count of terms: one side carries an extra 2^101.
    let brute = exact[0].clone();
    assert!(exact.iter().all(|d| *d == brute));
    assert_eq!(spectrum(&inst).unwrap().min_energy().discrepancy(), brute);
}
