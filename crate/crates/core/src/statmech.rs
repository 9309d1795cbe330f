//! Classical thermodynamics of the spectrum: `ln Z`, `<E>`, Boltzmann ratios
//! and the zero-temperature extraction `min <E> = -lim_{T->0} T ln Z`.
//!
//! Everything is evaluated from the value/degeneracy table, anchored at the
//! ground energy:
//!
//! ```text
//! ln Z(beta) = -beta * E_min + ln sum_k g_k exp(-beta * (E_k - E_min))
//! ```
//!
//! so no exponent is ever positive. Energies become `f64` only here. Large
//! raw energies can optionally be measured in units of `(max_i q_i)^2`; see
//! [`Scaling`].

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::numeric::{fmt_real, ratio_to_f64};
use crate::spinmodel::{energy, Configuration, Spectrum};

const LN_2: f64 = std::f64::consts::LN_2;
/// `beta * E_max` above which [`Scaling::Auto`] switches to normalized units.
pub const AUTO_SCALE_THRESHOLD: f64 = 700.0;

/// Energy unit used by a [`Thermo`] view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scaling {
    /// Raw integer energies.
    Raw,
    /// Energies divided by `(max_i q_i)^2`.
    Normalized,
    /// Normalized whenever `beta_max * E_max` would exceed 700, raw otherwise.
    #[default]
    Auto,
}

/// A strictly decreasing sequence of positive temperatures.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule(Vec<f64>);

impl Schedule {
    pub fn new(temps: Vec<f64>) -> Result<Self> {
        if temps.is_empty() {
            return Err(Error::InvalidParameter(
                "temperature schedule is empty".into(),
            ));
        }
        if temps.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::InvalidParameter(
                "temperatures must be finite and positive".into(),
            ));
        }
        if temps.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidParameter(
                "temperature schedule must be strictly decreasing".into(),
            ));
        }
        Ok(Schedule(temps))
    }

    /// `steps` temperatures spaced geometrically from `t_max` down to `t_min`.
    pub fn geometric(t_max: f64, t_min: f64, steps: usize) -> Result<Self> {
        if steps < 2 || !(t_max > t_min && t_min > 0.0) || !t_max.is_finite() {
            return Err(Error::InvalidParameter(
                "need t_max > t_min > 0 and at least 2 steps".into(),
            ));
        }
        let ratio = (t_min / t_max).ln() / (steps - 1) as f64;
        let mut temps: Vec<f64> = (0..steps)
            .map(|k| t_max * (ratio * k as f64).exp())
            .collect();
        temps[0] = t_max;
        temps[steps - 1] = t_min;
        Schedule::new(temps)
    }

    pub fn temperatures(&self) -> &[f64] {
        &self.0
    }

    pub fn last(&self) -> f64 {
        *self.0.last().expect("schedule is non-empty")
    }
}

impl Default for Schedule {
    /// Geometric, 10 down to 1e-3 in 40 steps.
    fn default() -> Self {
        Schedule::geometric(10.0, 1e-3, 40).expect("valid default schedule")
    }
}

/// A spectrum converted to floating point in a fixed energy unit.
#[derive(Debug, Clone)]
pub struct Thermo {
    n: usize,
    scale: f64,
    e_min: f64,
    /// `(E_k - E_min, ln g_k)` in scaled units, ascending.
    levels: Vec<(f64, f64)>,
    mean_gap_at_zero: f64,
}

impl Thermo {
    pub fn raw(spec: &Spectrum) -> Self {
        Self::build(spec, false)
    }

    pub fn normalized(spec: &Spectrum) -> Self {
        Self::build(spec, true)
    }

    /// Picks the unit for a computation whose largest inverse temperature is `beta_max`.
    pub fn with_scaling(spec: &Spectrum, scaling: Scaling, beta_max: f64) -> Self {
        match scaling {
            Scaling::Raw => Self::raw(spec),
            Scaling::Normalized => Self::normalized(spec),
            Scaling::Auto => {
                let e_max = spec.max_energy().value().to_f64().unwrap_or(f64::INFINITY);
                Self::build(spec, beta_max * e_max > AUTO_SCALE_THRESHOLD)
            }
        }
    }

    fn build(spec: &Spectrum, normalize: bool) -> Self {
        let e_min_raw = spec.min_energy().value();
        let unit = if normalize {
            spec.max_weight() * spec.max_weight()
        } else {
            num_bigint::BigUint::from(1u32)
        };
        let scale = if normalize {
            1.0 / unit.to_f64().unwrap_or(f64::INFINITY)
        } else {
            1.0
        };
        let levels: Vec<(f64, f64)> = spec
            .iter()
            .map(|(e, g)| {
                let gap = ratio_to_f64(&(e.value() - e_min_raw), &unit);
                (gap, (g as f64).ln())
            })
            .collect();
        let total = spec.total() as f64;
        let mean_gap_at_zero = spec
            .iter()
            .zip(&levels)
            .map(|((_, g), (gap, _))| g as f64 / total * gap)
            .sum();
        Thermo {
            n: spec.n(),
            scale,
            e_min: ratio_to_f64(e_min_raw, &unit),
            levels,
            mean_gap_at_zero,
        }
    }

    /// Multiplier from raw energies to the units used here (1 or `1/max_q^2`).
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ground energy in scaled units.
    pub fn e_min(&self) -> f64 {
        self.e_min
    }

    /// `ln sum_k g_k exp(-beta (E_k - E_min))`, between `ln g_0` and `n ln 2`.
    fn ln_excess(&self, beta: f64) -> f64 {
        let terms = self.levels.iter().map(|(gap, ln_g)| ln_g - beta * gap);
        let max = terms.clone().fold(f64::NEG_INFINITY, f64::max);
        max + terms.map(|t| (t - max).exp()).sum::<f64>().ln()
    }

    pub fn log_partition(&self, beta: f64) -> Result<f64> {
        check_beta(beta)?;
        if beta == 0.0 {
            return Ok(self.n as f64 * LN_2);
        }
        Ok(-beta * self.e_min + self.ln_excess(beta))
    }

    /// `<E> = sum_k g_k E_k e^{-beta E_k} / Z`.
    pub fn mean_energy(&self, beta: f64) -> Result<f64> {
        check_beta(beta)?;
        if beta == 0.0 {
            return Ok(self.e_min + self.mean_gap_at_zero);
        }
        let ln_s = self.ln_excess(beta);
        let gap: f64 = self
            .levels
            .iter()
            .map(|(gap, ln_g)| gap * (ln_g - beta * gap - ln_s).exp())
            .sum();
        Ok(self.e_min + gap)
    }

    /// `T ln sum_k g_k exp(-(E_k - E_min)/T)`, so that `-T ln Z = E_min - gap`.
    pub fn free_energy_gap(&self, t: f64) -> Result<f64> {
        check_temperature(t)?;
        Ok(t * self.ln_excess(1.0 / t))
    }

    /// `F = -T ln Z`, evaluated as `E_min - T ln sum_k g_k exp(-(E_k - E_min)/T)`.
    pub fn free_energy(&self, t: f64) -> Result<f64> {
        Ok(self.e_min - self.free_energy_gap(t)?)
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "inverse temperature must be finite and non-negative, got {beta}"
        )));
    }
    Ok(())
}

fn check_temperature(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "temperature must be finite and positive, got {t}"
        )));
    }
    Ok(())
}

/// `ln Z(beta)` in raw energy units; `beta = 0` gives `n ln 2`.
pub fn log_partition(spec: &Spectrum, beta: f64) -> Result<f64> {
    Thermo::raw(spec).log_partition(beta)
}

/// `<E>(beta)` in raw energy units; `beta = 0` gives the spectrum mean.
pub fn mean_energy(spec: &Spectrum, beta: f64) -> Result<f64> {
    Thermo::raw(spec).mean_energy(beta)
}

/// `W(S_k) / W(S_m) = exp(-beta (H(S_k) - H(S_m)))`.
pub fn boltzmann_ratio(
    inst: &Instance,
    k: &Configuration,
    m: &Configuration,
    beta: f64,
) -> Result<f64> {
    check_beta(beta)?;
    let ek = num_bigint::BigInt::from(energy(inst, k)?.value().clone());
    let em = num_bigint::BigInt::from(energy(inst, m)?.value().clone());
    let diff = (ek - em).to_f64().unwrap_or(f64::NAN);
    if diff == 0.0 || beta == 0.0 {
        return Ok(1.0);
    }
    Ok((-beta * diff).exp())
}

/// Outcome of the zero-temperature extraction.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitEstimate {
    /// `-T_m ln Z(T_m)` at the last scheduled temperature.
    pub estimate: f64,
    /// Guaranteed bracket `[E_min - T_m n ln 2, E_min]`.
    pub lower: f64,
    pub upper: f64,
    pub t_final: f64,
    /// The last two estimates differ by less than `tol`.
    pub converged: bool,
    /// Raw-to-reported energy multiplier.
    pub scale: f64,
}

impl LimitEstimate {
    pub fn within_bracket(&self, slack: f64) -> bool {
        self.estimate >= self.lower - slack && self.estimate <= self.upper + slack
    }
}

pub fn ground_energy_via_limit(
    spec: &Spectrum,
    schedule: &Schedule,
    tol: f64,
    scaling: Scaling,
) -> Result<LimitEstimate> {
    let t_final = schedule.last();
    let thermo = Thermo::with_scaling(spec, scaling, 1.0 / t_final);
    let temps = schedule.temperatures();
    let estimate = thermo.free_energy(t_final)?;
    let converged = match temps.len() {
        0 | 1 => false,
        m => (thermo.free_energy(temps[m - 2])? - estimate).abs() < tol,
    };
    Ok(LimitEstimate {
        estimate,
        lower: thermo.e_min() - t_final * thermo.n() as f64 * LN_2,
        upper: thermo.e_min(),
        t_final,
        converged,
        scale: thermo.scale(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThermoRow {
    pub t: f64,
    pub beta: f64,
    pub ln_z: f64,
    pub mean_energy: f64,
    pub free_energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThermoCurve {
    pub scale: f64,
    pub rows: Vec<ThermoRow>,
}

impl ThermoCurve {
    /// CSV with columns `T,beta,lnZ,meanE,freeE,scale`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("T,beta,lnZ,meanE,freeE,scale\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_real(r.t),
                fmt_real(r.beta),
                fmt_real(r.ln_z),
                fmt_real(r.mean_energy),
                fmt_real(r.free_energy),
                fmt_real(self.scale)
            ));
        }
        out
    }
}

/// Tabulates `ln Z`, `<E>` and `-T ln Z` on the schedule, highest temperature first.
pub fn thermo_curve(spec: &Spectrum, schedule: &Schedule, scaling: Scaling) -> Result<ThermoCurve> {
    let thermo = Thermo::with_scaling(spec, scaling, 1.0 / schedule.last());
    let rows = schedule
        .temperatures()
        .par_iter()
        .map(|&t| {
            let beta = 1.0 / t;
            Ok(ThermoRow {
                t,
                beta,
                ln_z: thermo.log_partition(beta)?,
                mean_energy: thermo.mean_energy(beta)?,
                free_energy: thermo.free_energy(t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ThermoCurve {
        scale: thermo.scale(),
        rows,
    })
}
