//! The spin-glass Hamiltonian `H(S) = (sum_i q_i S_i)^2`.
//!
//! The quantum version replaces each `S_i` by `sigma^z_i`; it is diagonal in the
//! z-basis, so each basis state is labelled by the set of up spins (a bitmask)
//! and its eigenvalue is the classical energy of that configuration. Nothing
//! here builds a matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::numeric::abs_diff;
use crate::word::{chunking, for_each_canonical};

/// Default largest `n` accepted by [`spectrum`] and [`ground_eigenspace`].
pub const DEFAULT_ENUMERATION_CAP: usize = 24;
/// Configurations are enumerated as `u64` masks.
pub const MAX_ENUMERATION_CAP: usize = 62;

/// A spin configuration, stored as its up-set: bit `i` set iff spin `i` points up (`S_i = +1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    n: usize,
    upset: BigUint,
}

impl Configuration {
    pub fn new(n: usize, upset: BigUint) -> Result<Self> {
        if upset.bits() > n as u64 {
            return Err(Error::InvalidParameter(format!(
                "up-set mask has bits above spin count {n}"
            )));
        }
        Ok(Configuration { n, upset })
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self::new(n, BigUint::from(mask)).expect("mask fits in n bits")
    }

    /// Builds a configuration from 0-based indices of the up spins.
    pub fn from_up_indices(n: usize, up: &[usize]) -> Result<Self> {
        let mut upset = BigUint::zero();
        for &i in up {
            if i >= n {
                return Err(Error::InvalidParameter(format!(
                    "spin index {i} >= n = {n}"
                )));
            }
            upset.set_bit(i as u64, true);
        }
        Ok(Configuration { n, upset })
    }

    /// Builds a configuration from a sign sequence, `true` meaning `S_i = +1`.
    pub fn from_signs(signs: &[bool]) -> Self {
        let mut upset = BigUint::zero();
        for (i, &up) in signs.iter().enumerate() {
            if up {
                upset.set_bit(i as u64, true);
            }
        }
        Configuration {
            n: signs.len(),
            upset,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn upset(&self) -> &BigUint {
        &self.upset
    }

    pub fn is_up(&self, i: usize) -> bool {
        self.upset.bit(i as u64)
    }

    /// `S_i` as `+1` or `-1`.
    pub fn spin(&self, i: usize) -> i8 {
        if self.is_up(i) {
            1
        } else {
            -1
        }
    }

    pub fn up_indices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_up(i)).collect()
    }

    /// The globally flipped configuration.
    pub fn complement(&self) -> Self {
        let all = (BigUint::one() << self.n) - 1u32;
        Configuration {
            n: self.n,
            upset: &self.upset ^ all,
        }
    }

    /// The orientation with spin 0 up.
    pub fn canonical(&self) -> Self {
        if self.is_up(0) {
            self.clone()
        } else {
            self.complement()
        }
    }

    /// Lowercase hexadecimal up-set mask.
    pub fn hex(&self) -> String {
        self.upset.to_str_radix(16)
    }
}

/// An eigenvalue `E = D^2` where `D` is the signed discrepancy.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Energy(BigUint);

impl Energy {
    pub fn from_discrepancy(d: &BigUint) -> Self {
        Energy(d * d)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// `|D|`, the exact square root.
    pub fn discrepancy(&self) -> BigUint {
        self.0.sqrt()
    }
}

impl From<u64> for Energy {
    /// Wraps a raw energy value; it must be a perfect square.
    fn from(v: u64) -> Self {
        let e = Energy(BigUint::from(v));
        debug_assert_eq!(e.discrepancy().pow(2), e.0);
        e
    }
}

impl fmt::Display for Energy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_dims(inst: &Instance, cfg: &Configuration) -> Result<()> {
    if inst.n() != cfg.n() {
        return Err(Error::DimensionMismatch {
            expected: inst.n(),
            got: cfg.n(),
        });
    }
    Ok(())
}

/// `|sum_{i in A} q_i - sum_{i not in A} q_i|`.
pub fn discrepancy(inst: &Instance, cfg: &Configuration) -> Result<BigUint> {
    check_dims(inst, cfg)?;
    let up: BigUint = inst
        .weights()
        .iter()
        .enumerate()
        .filter(|(i, _)| cfg.is_up(*i))
        .map(|(_, w)| w)
        .sum();
    Ok(abs_diff(&(up << 1usize), &inst.total()))
}

pub fn energy(inst: &Instance, cfg: &Configuration) -> Result<Energy> {
    Ok(Energy::from_discrepancy(&discrepancy(inst, cfg)?))
}

/// Alias of [`energy`] phrased over the up-set: `E(A) = (sum_A q - sum_{I \ A} q)^2`.
pub fn energy_of_upset(inst: &Instance, up: &[usize]) -> Result<Energy> {
    energy(inst, &Configuration::from_up_indices(inst.n(), up)?)
}

/// The Hamiltonian expanded into a constant plus pairwise couplings:
/// `H(S) = sum_i q_i^2 + sum_{i<j} J_ij S_i S_j` with `J_ij = 2 q_i q_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingForm {
    n: usize,
    pub constant: BigUint,
    /// Row-major upper triangle: `(i, j, J_ij)` for every `i < j`.
    pub couplings: Vec<(usize, usize, BigUint)>,
}

impl CouplingForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coupling(&self, i: usize, j: usize) -> Option<&BigUint> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.couplings
            .iter()
            .find(|(a, b, _)| *a == i && *b == j)
            .map(|(_, _, v)| v)
    }
}

pub fn expand_couplings(inst: &Instance) -> CouplingForm {
    let q = inst.weights();
    let constant = q.iter().map(|w| w * w).sum();
    let mut couplings = Vec::with_capacity(q.len() * q.len().saturating_sub(1) / 2);
    for i in 0..q.len() {
        for j in i + 1..q.len() {
            couplings.push((i, j, (&q[i] * &q[j]) << 1usize));
        }
    }
    CouplingForm {
        n: q.len(),
        constant,
        couplings,
    }
}

/// Evaluates the pair-expanded Hamiltonian directly from its couplings.
pub fn coupling_energy(form: &CouplingForm, cfg: &Configuration) -> Result<Energy> {
    if form.n != cfg.n() {
        return Err(Error::DimensionMismatch {
            expected: form.n,
            got: cfg.n(),
        });
    }
    let mut acc = BigInt::from_biguint(Sign::Plus, form.constant.clone());
    for (i, j, jij) in &form.couplings {
        let term = BigInt::from_biguint(Sign::Plus, jij.clone());
        if cfg.spin(*i) == cfg.spin(*j) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let value = acc
        .to_biguint()
        .expect("pair expansion of a square is non-negative");
    Ok(Energy(value))
}

/// `|energy(cfg) - candidate|`; zero certifies `cfg` as an eigenstate with eigenvalue `candidate`.
pub fn residual(inst: &Instance, candidate: &Energy, cfg: &Configuration) -> Result<BigUint> {
    let e = energy(inst, cfg)?;
    Ok(abs_diff(&e.0, &candidate.0))
}

/// The exact energy spectrum: distinct eigenvalues and their degeneracies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    n: usize,
    max_weight: BigUint,
    entries: BTreeMap<Energy, u64>,
}

impl Spectrum {
    /// Builds a spectrum from explicit entries. `max_weight` fixes the normalized energy unit.
    pub fn from_entries(
        n: usize,
        max_weight: BigUint,
        entries: BTreeMap<Energy, u64>,
    ) -> Result<Self> {
        let mass: u128 = entries.values().map(|&g| u128::from(g)).sum();
        if n == 0 || n > 127 || mass != 1u128 << n {
            return Err(Error::InvalidParameter(format!(
                "degeneracies sum to {mass}, expected 2^{n}"
            )));
        }
        Ok(Spectrum {
            n,
            max_weight,
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `max_i q_i`, the unit of the normalized view.
    pub fn max_weight(&self) -> &BigUint {
        &self.max_weight
    }

    pub fn entries(&self) -> &BTreeMap<Energy, u64> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Energy, u64)> {
        self.entries.iter().map(|(e, &g)| (e, g))
    }

    /// `sum of degeneracies = 2^n`.
    pub fn total(&self) -> u128 {
        1u128 << self.n
    }

    pub fn min_energy(&self) -> &Energy {
        self.entries.keys().next().expect("spectrum is non-empty")
    }

    pub fn max_energy(&self) -> &Energy {
        self.entries
            .keys()
            .next_back()
            .expect("spectrum is non-empty")
    }

    pub fn ground_degeneracy(&self) -> u64 {
        self.entries[self.min_energy()]
    }

    /// CSV with header `energy,degeneracy`, ascending energy.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("energy,degeneracy\n");
        for (e, g) in &self.entries {
            out.push_str(&format!("{e},{g}\n"));
        }
        out
    }
}

fn check_cap(inst: &Instance, cap: usize, what: &'static str) -> Result<()> {
    let cap = cap.min(MAX_ENUMERATION_CAP);
    if inst.n() > cap {
        return Err(Error::Capacity {
            what,
            n: inst.n(),
            cap,
            hint: "; use the solvers module for larger instances",
        });
    }
    Ok(())
}

pub fn spectrum(inst: &Instance) -> Result<Spectrum> {
    spectrum_with_cap(inst, DEFAULT_ENUMERATION_CAP)
}

/// Enumerates all `2^n` eigenvalues. Only the spin-0-up half is visited; flip
/// symmetry doubles every count.
pub fn spectrum_with_cap(inst: &Instance, cap: usize) -> Result<Spectrum> {
    check_cap(inst, cap, "spectrum enumeration")?;
    let discrepancies = match inst.small_weights() {
        Some(w) => count_discrepancies(&w),
        None => {
            let w: Vec<BigUint> = inst.weights().to_vec();
            count_discrepancies(&w)
        }
    };
    let entries = discrepancies
        .into_iter()
        .map(|(d, g)| (Energy::from_discrepancy(&d), 2 * g))
        .collect();
    Ok(Spectrum {
        n: inst.n(),
        max_weight: inst.max_weight().clone(),
        entries,
    })
}

fn count_discrepancies<W: crate::word::Word>(weights: &[W]) -> Vec<(BigUint, u64)> {
    let total = weights.iter().fold(W::zero(), |acc, w| acc.add(w));
    let (chunks, low) = chunking(weights.len());
    let mut all: Vec<W> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut ds = Vec::with_capacity(1 << low);
            for_each_canonical(weights, c, low, |_, up| {
                ds.push(up.double().abs_diff(&total))
            });
            ds
        })
        .collect();
    all.par_sort_unstable();
    let mut out: Vec<(BigUint, u64)> = Vec::new();
    let mut iter = all.into_iter();
    if let Some(first) = iter.next() {
        let mut current = first;
        let mut count = 1u64;
        for d in iter {
            if d == current {
                count += 1;
            } else {
                out.push((current.to_big(), count));
                current = d;
                count = 1;
            }
        }
        out.push((current.to_big(), count));
    }
    out
}

pub fn ground_eigenspace(inst: &Instance) -> Result<(Energy, Vec<Configuration>)> {
    ground_eigenspace_with_cap(inst, DEFAULT_ENUMERATION_CAP)
}

/// The minimum eigenvalue and every configuration attaining it, sorted by
/// ascending up-set mask.
pub fn ground_eigenspace_with_cap(
    inst: &Instance,
    cap: usize,
) -> Result<(Energy, Vec<Configuration>)> {
    check_cap(inst, cap, "ground eigenspace enumeration")?;
    let (d, canonical) = match inst.small_weights() {
        Some(w) => minimizers(&w),
        None => minimizers(inst.weights()),
    };
    let n = inst.n();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut masks: Vec<u64> = canonical.iter().flat_map(|&m| [m, m ^ full]).collect();
    masks.sort_unstable();
    let configs = masks
        .into_iter()
        .map(|m| Configuration::from_mask(n, m))
        .collect();
    Ok((Energy::from_discrepancy(&d), configs))
}

/// Minimum discrepancy over the canonical half and every canonical mask attaining it.
pub(crate) fn minimizers<W: crate::word::Word>(weights: &[W]) -> (BigUint, Vec<u64>) {
    let total = weights.iter().fold(W::zero(), |acc, w| acc.add(w));
    let (chunks, low) = chunking(weights.len());
    let per_chunk: Vec<(W, Vec<u64>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut best: Option<W> = None;
            let mut masks = Vec::new();
            for_each_canonical(weights, c, low, |mask, up| {
                let d = up.double().abs_diff(&total);
                match &best {
                    Some(b) if d > *b => {}
                    Some(b) if d == *b => masks.push(mask),
                    _ => {
                        best = Some(d);
                        masks.clear();
                        masks.push(mask);
                    }
                }
            });
            (best.expect("every chunk is non-empty"), masks)
        })
        .collect();
    let best = per_chunk
        .iter()
        .map(|(d, _)| d)
        .min()
        .expect("at least one chunk")
        .clone();
    let mut masks: Vec<u64> = per_chunk
        .into_iter()
        .filter(|(d, _)| *d == best)
        .flat_map(|(_, m)| m)
        .collect();
    masks.sort_unstable();
    (best.to_big(), masks)
}
