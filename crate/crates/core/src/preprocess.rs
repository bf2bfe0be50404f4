//! Detrending and differencing ahead of wavelet analysis.

use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Smallest p-value reported; exact zeros are replaced by this floor.
pub const P_VALUE_FLOOR: f64 = 1e-300;

/// Ordinary least squares fit of `x_t = beta0 + beta1 t`, `t = 1..N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendFit {
    pub beta0: f64,
    pub beta1: f64,
    pub stderr0: f64,
    pub stderr1: f64,
    pub p0: f64,
    pub p1: f64,
    pub residuals: Vec<f64>,
}

impl TrendFit {
    pub fn fitted(&self, t: usize) -> f64 {
        self.beta0 + self.beta1 * t as f64
    }
}

/// Two-sided p-value of a t statistic with `dof` degrees of freedom,
/// `I_{dof/(dof+t^2)}(dof/2, 1/2)`.
pub fn t_test_p_value(t: f64, dof: f64) -> f64 {
    if !t.is_finite() {
        return P_VALUE_FLOOR;
    }
    let x = dof / (dof + t * t);
    beta_reg(dof / 2.0, 0.5, x).max(P_VALUE_FLOOR)
}

pub fn fit_linear_trend(x: &TimeSeries) -> Result<TrendFit> {
    let y = x.values();
    let n = y.len();
    if n < 3 {
        return Err(Error::TooShort { needed: 3, got: n });
    }
    let nf = n as f64;
    let t_mean = (nf + 1.0) / 2.0;
    let y_mean = y.iter().sum::<f64>() / nf;
    let (sxx, sxy) = y
        .iter()
        .enumerate()
        .fold((0.0, 0.0), |(sxx, sxy), (i, &v)| {
            let dt = (i + 1) as f64 - t_mean;
            (sxx + dt * dt, sxy + dt * (v - y_mean))
        });
    if sxx <= 0.0 {
        return Err(Error::DegenerateDesign);
    }
    let beta1 = sxy / sxx;
    let beta0 = y_mean - beta1 * t_mean;
    let residuals: Vec<f64> = y
        .iter()
        .enumerate()
        .map(|(i, &v)| v - (beta0 + beta1 * (i + 1) as f64))
        .collect();

    let dof = nf - 2.0;
    let sigma2 = residuals.iter().map(|r| r * r).sum::<f64>() / dof;
    let stderr1 = (sigma2 / sxx).sqrt();
    let stderr0 = (sigma2 * (1.0 / nf + t_mean * t_mean / sxx)).sqrt();
    let p = |beta: f64, se: f64| {
        if se > 0.0 {
            t_test_p_value(beta / se, dof)
        } else if beta == 0.0 {
            1.0
        } else {
            P_VALUE_FLOOR
        }
    };
    Ok(TrendFit {
        beta0,
        beta1,
        stderr0,
        stderr1,
        p0: p(beta0, stderr0),
        p1: p(beta1, stderr1),
        residuals,
    })
}

/// `r(t) = x(t) - x(t-1)`, optionally with the sample mean removed. The
/// result is labelled by the later month of each pair.
pub fn first_difference(x: &TimeSeries, demean: bool) -> Result<TimeSeries> {
    let v = x.values();
    if v.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: v.len(),
        });
    }
    let mut r: Vec<f64> = v.windows(2).map(|w| w[1] - w[0]).collect();
    if demean {
        subtract_mean(&mut r);
    }
    Ok(x.with_values(r, x.label(1)))
}

pub fn demean(x: &TimeSeries) -> TimeSeries {
    let mut v = x.values().to_vec();
    subtract_mean(&mut v);
    x.with_values(v, x.start())
}

fn subtract_mean(v: &mut [f64]) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter_mut().for_each(|r| *r -= mean);
}

/// Keeps the newest `target` samples, dropping the oldest.
pub fn truncate_to_dyadic(x: &TimeSeries, target: usize) -> Result<TimeSeries> {
    if !target.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(target));
    }
    let n = x.len();
    if target > n {
        return Err(Error::TargetTooLarge { target, len: n });
    }
    let drop = n - target;
    Ok(x.with_values(x.values()[drop..].to_vec(), x.label(drop)))
}

/// Largest power of two not exceeding `n`.
pub fn dyadic_floor(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        1 << (usize::BITS - 1 - n.leading_zeros())
    }
}
