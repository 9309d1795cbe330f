//! Problem instances: the positive integer weights shared by the spin glass
//! and the number-partitioning problem.
//!
//! # Generator
//!
//! [`generate`] seeds a ChaCha20 stream cipher RNG (`rand_chacha::ChaCha20Rng`)
//! with `seed_from_u64(seed)`. Each weight is drawn by rejection sampling:
//! `ceil(bits / 64)` consecutive `next_u64` words are concatenated little-endian,
//! the bits above position `bits` are cleared, and a zero draw is rejected and
//! redrawn. The result is uniform on `[1, 2^bits - 1]`. ChaCha20 output is
//! specified independently of the host, so sequences agree across platforms;
//! a golden test pins the first values.
//!
//! # File format
//!
//! ```text
//! npp v1 n=<N> bits=<b> seed=<s|none>
//! <weight 1>
//! ...
//! <weight N>
//! ```
//!
//! UTF-8, LF line endings, one decimal weight per line.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};

/// A validated problem instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    weights: Vec<BigUint>,
    bits: u32,
    seed: Option<u64>,
}

impl Instance {
    /// Builds an instance, checking `1 <= q_i <= 2^bits - 1` for every weight.
    pub fn new(weights: Vec<BigUint>, bits: u32, seed: Option<u64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if bits == 0 {
            return Err(Error::InvalidParameter("bits must be at least 1".into()));
        }
        for (i, w) in weights.iter().enumerate() {
            if w.is_zero() {
                return Err(Error::InvalidParameter(format!(
                    "weight {} must be positive",
                    i + 1
                )));
            }
            if w.bits() > u64::from(bits) {
                return Err(Error::InvalidParameter(format!(
                    "weight {} exceeds 2^{bits} - 1",
                    i + 1
                )));
            }
        }
        Ok(Instance {
            weights,
            bits,
            seed,
        })
    }

    /// Builds an instance from small weights, using the smallest `bits` that fits.
    pub fn from_u64s(weights: &[u64]) -> Result<Self> {
        let bits = weights
            .iter()
            .map(|w| 64 - w.leading_zeros())
            .max()
            .unwrap_or(0)
            .max(1);
        Self::new(
            weights.iter().map(|&w| BigUint::from(w)).collect(),
            bits,
            None,
        )
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn total(&self) -> BigUint {
        self.weights.iter().sum()
    }

    pub fn max_weight(&self) -> &BigUint {
        self.weights.iter().max().expect("instance is non-empty")
    }

    /// Weights as `u128` when `2 * total` fits, which every solver fast path needs.
    pub(crate) fn small_weights(&self) -> Option<Vec<u128>> {
        if self.total().bits() > 126 {
            return None;
        }
        self.weights.iter().map(|w| w.to_u128()).collect()
    }
}

/// The weights divided by their maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedInstance {
    pub scale: BigUint,
    pub ratios: Vec<f64>,
}

/// Draws `n` weights uniformly from `[1, 2^bits - 1]`; see the module docs for the exact procedure.
pub fn generate(n: usize, bits: u32, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if bits == 0 {
        return Err(Error::InvalidParameter("bits must be at least 1".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let words = bits.div_ceil(64) as usize;
    let top_bits = bits - 64 * (words as u32 - 1);
    let top_mask = if top_bits == 64 {
        u64::MAX
    } else {
        (1u64 << top_bits) - 1
    };
    let mut weights = Vec::with_capacity(n);
    let mut limbs = vec![0u64; words];
    while weights.len() < n {
        for limb in limbs.iter_mut() {
            *limb = rng.next_u64();
        }
        limbs[words - 1] &= top_mask;
        if limbs.iter().all(|&l| l == 0) {
            continue;
        }
        let digits: Vec<u32> = limbs
            .iter()
            .flat_map(|&l| [l as u32, (l >> 32) as u32])
            .collect();
        weights.push(BigUint::new(digits));
    }
    Instance::new(weights, bits, Some(seed))
}

pub fn normalize(inst: &Instance) -> NormalizedInstance {
    let scale = inst.max_weight().clone();
    let ratios = inst
        .weights()
        .iter()
        .map(|w| {
            if w == &scale {
                1.0
            } else {
                crate::numeric::ratio_to_f64(w, &scale)
            }
        })
        .collect();
    NormalizedInstance { scale, ratios }
}

pub fn serialize(inst: &Instance) -> String {
    let seed = inst
        .seed
        .map_or_else(|| "none".to_string(), |s| s.to_string());
    let mut out = format!("npp v1 n={} bits={} seed={}\n", inst.n(), inst.bits, seed);
    for w in &inst.weights {
        out.push_str(&w.to_str_radix(10));
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> Result<Instance> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let (n, bits, seed) = parse_header(header)?;

    let mut weights = Vec::with_capacity(n);
    let mut last_line = 1;
    for (line, raw) in lines {
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() {
            continue;
        }
        last_line = line;
        if weights.len() == n {
            return Err(Error::Parse {
                line,
                message: format!("expected {n} weights, found more"),
            });
        }
        let w = raw.trim().parse::<BigUint>().map_err(|_| Error::Parse {
            line,
            message: if raw.trim().starts_with('-') {
                "weight must be positive".into()
            } else {
                format!("invalid weight {:?}", raw.trim())
            },
        })?;
        if w.is_zero() {
            return Err(Error::Parse {
                line,
                message: "weight must be positive".into(),
            });
        }
        if w.bits() > u64::from(bits) {
            return Err(Error::Parse {
                line,
                message: format!("weight exceeds 2^{bits} - 1"),
            });
        }
        weights.push(w);
    }
    if weights.len() != n {
        return Err(Error::Parse {
            line: last_line,
            message: format!("expected {n} weights, found {}", weights.len()),
        });
    }
    Instance::new(weights, bits, seed).map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })
}

fn parse_header(header: &str) -> Result<(usize, u32, Option<u64>)> {
    let bad = |message: String| Error::Parse { line: 1, message };
    let mut fields = header.split_whitespace();
    if fields.next() != Some("npp") || fields.next() != Some("v1") {
        return Err(bad("header must start with `npp v1`".into()));
    }
    let mut n = None;
    let mut bits = None;
    let mut seed = None;
    for field in fields {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| bad(format!("malformed header field {field:?}")))?;
        match key {
            "n" => {
                n = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| bad(format!("bad n {value:?}")))?,
                )
            }
            "bits" => {
                bits = Some(
                    value
                        .parse::<u32>()
                        .map_err(|_| bad(format!("bad bits {value:?}")))?,
                )
            }
            "seed" => {
                seed = Some(if value == "none" {
                    None
                } else {
                    Some(
                        value
                            .parse::<u64>()
                            .map_err(|_| bad(format!("bad seed {value:?}")))?,
                    )
                })
            }
            _ => return Err(bad(format!("unknown header field {key:?}"))),
        }
    }
    let n = n.ok_or_else(|| bad("header missing n".into()))?;
    let bits = bits.ok_or_else(|| bad("header missing bits".into()))?;
    let seed = seed.ok_or_else(|| bad("header missing seed".into()))?;
    if n == 0 {
        return Err(bad("n must be at least 1".into()));
    }
    if bits == 0 {
        return Err(bad("bits must be at least 1".into()));
    }
    Ok((n, bits, seed))
}
