//! Raw periodogram.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One-sided periodogram on `k / N`, `k = 0..=N/2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Periodogram {
    pub frequencies: Vec<f64>,
    pub power: Vec<f64>,
    /// Length of the analysed series.
    pub n: usize,
}

impl Periodogram {
    /// Weight of bin `k` when folding the two-sided spectrum onto
    /// `[0, 1/2]`: 1 at DC and Nyquist, 2 elsewhere.
    fn fold_weight(&self, k: usize) -> f64 {
        if k == 0 || (self.n.is_multiple_of(2) && k == self.n / 2) {
            1.0
        } else {
            2.0
        }
    }

    /// `(1/N) sum_k weight_k P_k`, which equals the mean of `x^2`.
    pub fn mean_power(&self) -> f64 {
        self.power
            .iter()
            .enumerate()
            .map(|(k, p)| self.fold_weight(k) * p)
            .sum::<f64>()
            / self.n as f64
    }

    /// Indices of the `count` largest local maxima, strongest first.
    pub fn peaks(&self, count: usize) -> Vec<usize> {
        let p = &self.power;
        let mut idx: Vec<usize> = (0..p.len())
            .filter(|&k| {
                let left = k == 0 || p[k] > p[k - 1];
                let right = k + 1 == p.len() || p[k] >= p[k + 1];
                left && right
            })
            .collect();
        idx.sort_by(|&a, &b| p[b].total_cmp(&p[a]).then(a.cmp(&b)));
        idx.truncate(count);
        idx
    }
}

/// `P_k = |X_k|^2 / N` with `X_k = sum_t x_t exp(-j 2 pi k t / N)`.
pub fn periodogram(x: &[f64]) -> Result<Periodogram> {
    let n = x.len();
    if n < 4 {
        return Err(Error::TooShort { needed: 4, got: n });
    }
    let mut buf: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let half = n / 2;
    let power = buf[..=half]
        .iter()
        .map(|c| c.norm_sqr() / n as f64)
        .collect();
    let frequencies = (0..=half).map(|k| k as f64 / n as f64).collect();
    Ok(Periodogram {
        frequencies,
        power,
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_signal_is_all_dc() {
        let p = periodogram(&[2.0; 16]).unwrap();
        assert!((p.power[0] - 64.0).abs() < 1e-12);
        assert!(p.power[1..].iter().all(|v| v.abs() < 1e-20));
    }

    #[test]
    fn too_short() {
        assert!(matches!(
            periodogram(&[1.0, 2.0, 3.0]),
            Err(Error::TooShort { .. })
        ));
    }

    #[test]
    fn odd_length_parseval() {
        let x = [0.3, -1.2, 2.5, 0.7, -0.4, 1.1, 0.0];
        let p = periodogram(&x).unwrap();
        assert_eq!(p.power.len(), 4);
        let mean_sq = x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64;
        assert!((p.mean_power() - mean_sq).abs() < 1e-12 * mean_sq);
    }
}
