//! Deterministic synthetic series for demos and tests.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Synthetic {
    /// `sin(3t) + sin(0.3t) + sin(0.03t)`, `t = 0..n`.
    Sinusoids { n: usize },
    /// Gaussian noise with standard deviation `sigma_before` on
    /// `0..change` and `sigma_after` on `change..n`.
    VarShift {
        n: usize,
        sigma_before: f64,
        sigma_after: f64,
        change: usize,
    },
    /// Zero before `position`, then `amplitude * exp(-(t - position) / decay)`,
    /// plus optional Gaussian noise.
    Discontinuity {
        n: usize,
        position: usize,
        amplitude: f64,
        decay: f64,
        noise: f64,
    },
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn nonnegative(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(invalid(format!(
            "{name} must be finite and nonnegative, got {v}"
        )))
    }
}

pub fn generate_synthetic(kind: &Synthetic, seed: u64) -> Result<TimeSeries> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gauss = move || -> f64 { StandardNormal.sample(&mut rng) };
    let values = match *kind {
        Synthetic::Sinusoids { n } => {
            if n == 0 {
                return Err(invalid("n must be positive"));
            }
            (0..n)
                .map(|t| {
                    let t = t as f64;
                    (3.0 * t).sin() + (0.3 * t).sin() + (0.03 * t).sin()
                })
                .collect()
        }
        Synthetic::VarShift {
            n,
            sigma_before,
            sigma_after,
            change,
        } => {
            if !n.is_power_of_two() {
                return Err(invalid(format!("n must be a power of two, got {n}")));
            }
            if change > n {
                return Err(invalid(format!("change point {change} exceeds length {n}")));
            }
            nonnegative("sigma_before", sigma_before)?;
            nonnegative("sigma_after", sigma_after)?;
            (0..n)
                .map(|t| {
                    let sigma = if t < change {
                        sigma_before
                    } else {
                        sigma_after
                    };
                    sigma * gauss()
                })
                .collect()
        }
        Synthetic::Discontinuity {
            n,
            position,
            amplitude,
            decay,
            noise,
        } => {
            if position >= n {
                return Err(invalid(format!(
                    "break {position} outside series of length {n}"
                )));
            }
            if !amplitude.is_finite() {
                return Err(invalid("amplitude must be finite"));
            }
            if !(decay.is_finite() && decay > 0.0) {
                return Err(invalid(format!("decay must be positive, got {decay}")));
            }
            nonnegative("noise", noise)?;
            (0..n)
                .map(|t| {
                    let base = if t < position {
                        0.0
                    } else {
                        amplitude * (-((t - position) as f64) / decay).exp()
                    };
                    if noise > 0.0 {
                        base + noise * gauss()
                    } else {
                        base
                    }
                })
                .collect()
        }
    };
    TimeSeries::new(values)
}
