//! Discretized continuous wavelet transform and numerical admissibility.
//!
//! The series is treated as piecewise constant, sample `x(t)` holding on
//! `[t, t + 1)`, so each coefficient is an exact integral of that step
//! function against the dilated, shifted wavelet:
//!
//! `W(s, tau) = sum_t x(t) sqrt(s) [C((t + 1 - tau) / s) - C((t - tau) / s)]`
//!
//! where `C` is the running integral of the sampled mother wavelet.
//! Outside the series the signal is zero.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveletKind {
    /// `chi[0, 1/2) - chi[1/2, 1)`.
    HaarAnalytic,
    /// `cos(w0 t) exp(-t^2/2)` minus its mean correction.
    MorletReal,
    /// Second derivative of a Gaussian, `(1 - t^2) exp(-t^2/2)`.
    MexicanHat,
    /// User-supplied samples.
    Custom,
}

/// Mother wavelet sampled at `t_start + i * dt`; sample `i` stands for the
/// interval `[t_i, t_i + dt)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledWavelet {
    pub samples: Vec<f64>,
    pub dt: f64,
    pub t_start: f64,
    pub kind: WaveletKind,
}

const MIN_SAMPLES: usize = 16;

impl SampledWavelet {
    pub fn from_samples(samples: Vec<f64>, dt: f64, t_start: f64) -> Result<Self> {
        let w = Self {
            samples,
            dt,
            t_start,
            kind: WaveletKind::Custom,
        };
        w.check_grid()?;
        Ok(w)
    }

    pub fn haar(dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt <= 1.0 / MIN_SAMPLES as f64) {
            return Err(Error::InvalidWavelet(format!(
                "dt must lie in (0, 1/16], got {dt}"
            )));
        }
        let n = (1.0 / dt).round() as usize;
        let samples = (0..n)
            .map(|i| if (i as f64) * dt < 0.5 { 1.0 } else { -1.0 })
            .collect();
        Ok(Self {
            samples,
            dt,
            t_start: 0.0,
            kind: WaveletKind::HaarAnalytic,
        })
    }

    /// Real Morlet with center frequency parameter `omega0`, sampled on
    /// `[-8, 8]` and scaled to unit energy.
    pub fn morlet(omega0: f64, dt: f64) -> Result<Self> {
        let correction = (-omega0 * omega0 / 2.0).exp();
        Self::symmetric(dt, WaveletKind::MorletReal, |t| {
            ((omega0 * t).cos() - correction) * (-t * t / 2.0).exp()
        })
    }

    pub fn mexican_hat(dt: f64) -> Result<Self> {
        Self::symmetric(dt, WaveletKind::MexicanHat, |t| {
            (1.0 - t * t) * (-t * t / 2.0).exp()
        })
    }

    fn symmetric(dt: f64, kind: WaveletKind, psi: impl Fn(f64) -> f64) -> Result<Self> {
        const HALF_WIDTH: f64 = 8.0;
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidWavelet(format!(
                "dt must be positive, got {dt}"
            )));
        }
        let n = (2.0 * HALF_WIDTH / dt).round() as usize;
        // midpoint sampling keeps the grid symmetric about zero
        let mut samples: Vec<f64> = (0..n)
            .map(|i| psi(-HALF_WIDTH + (i as f64 + 0.5) * dt))
            .collect();
        let energy: f64 = samples.iter().map(|v| v * v).sum::<f64>() * dt;
        let scale = energy.sqrt().recip();
        samples.iter_mut().for_each(|v| *v *= scale);
        let w = Self {
            samples,
            dt,
            t_start: -HALF_WIDTH,
            kind,
        };
        w.check_grid()?;
        Ok(w)
    }

    fn check_grid(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidWavelet(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if self.samples.len() < MIN_SAMPLES {
            return Err(Error::InvalidWavelet(format!(
                "need at least {MIN_SAMPLES} samples, got {}",
                self.samples.len()
            )));
        }
        Ok(())
    }

    pub fn t_end(&self) -> f64 {
        self.t_start + self.samples.len() as f64 * self.dt
    }

    pub fn integral(&self) -> f64 {
        self.samples.iter().sum::<f64>() * self.dt
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|v| v * v).sum::<f64>() * self.dt
    }

    fn running_integral(&self) -> Vec<f64> {
        let mut c = Vec::with_capacity(self.samples.len() + 1);
        let mut acc = 0.0;
        c.push(0.0);
        for v in &self.samples {
            acc += v * self.dt;
            c.push(acc);
        }
        c
    }
}

/// `int_{-inf}^{u} psi`, linear between grid points.
fn cumulative_at(cum: &[f64], w: &SampledWavelet, u: f64) -> f64 {
    let pos = (u - w.t_start) / w.dt;
    if pos <= 0.0 {
        return 0.0;
    }
    let last = cum.len() - 1;
    if pos >= last as f64 {
        return cum[last];
    }
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    cum[i] + frac * (cum[i + 1] - cum[i])
}

pub const ZERO_INTEGRAL_TOL: f64 = 1e-6;
pub const UNIT_ENERGY_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub zero_integral_residual: f64,
    pub energy_residual: f64,
    pub zero_integral_ok: bool,
    pub unit_energy_ok: bool,
    /// Quadrature estimate of `int_0^inf |Psi(nu)|^2 / nu dnu`.
    pub c_psi: f64,
    /// `c_psi` is finite and positive. The integrand only stays bounded
    /// near `nu = 0` when `Psi(0) = 0`, so a nonzero mean also clears this.
    pub c_psi_finite_positive: bool,
    pub admissible: bool,
}

pub fn check_admissibility(w: &SampledWavelet) -> Result<AdmissibilityReport> {
    w.check_grid()?;
    let energy = w.energy();
    if energy < 1e-12 {
        return Err(Error::DegenerateWavelet);
    }
    let zero_integral_residual = w.integral().abs();
    let energy_residual = (energy - 1.0).abs();
    let zero_integral_ok = zero_integral_residual < ZERO_INTEGRAL_TOL;
    let unit_energy_ok = energy_residual < UNIT_ENERGY_TOL;

    // Psi(nu_k) ~ dt * DFT of the zero-padded samples at nu_k = k / (M dt).
    let m = (w.samples.len() * 16).next_power_of_two();
    let mut buf: Vec<Complex<f64>> = w
        .samples
        .iter()
        .map(|&v| Complex::new(v, 0.0))
        .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
        .take(m)
        .collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let dnu = 1.0 / (m as f64 * w.dt);
    let c_psi: f64 = (1..=m / 2)
        .map(|k| {
            let mag2 = buf[k].norm_sqr() * w.dt * w.dt;
            mag2 / (k as f64 * dnu) * dnu
        })
        .sum();
    let c_psi_finite_positive = c_psi.is_finite() && c_psi > 0.0 && zero_integral_ok;
    Ok(AdmissibilityReport {
        zero_integral_residual,
        energy_residual,
        zero_integral_ok,
        unit_energy_ok,
        c_psi,
        c_psi_finite_positive,
        admissible: zero_integral_ok && unit_energy_ok && c_psi_finite_positive,
    })
}

/// Scalogram rows follow `scales`, columns follow `times`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scalogram {
    pub coefficients: Vec<Vec<f64>>,
    pub scales: Vec<f64>,
    pub times: Vec<usize>,
    /// Per row, the offsets `t - tau` with nonzero weight.
    pub extents: Vec<(isize, isize)>,
}

impl Scalogram {
    /// True when the dilated wavelet at `(row, col)` lies inside the data,
    /// i.e. outside the boundary-affected region.
    pub fn is_interior(&self, row: usize, col: usize) -> bool {
        let (lo, hi) = self.extents[row];
        let tau = self.times[col] as isize;
        tau + lo >= 0 && tau + hi < self.times.len() as isize
    }
}

/// `scales_per_octave` voices per octave from scale 2 up to `2^(octaves+1)`.
pub fn dyadic_scales(octaves: usize, voices: usize) -> Vec<f64> {
    let voices = voices.max(1);
    (0..=octaves * voices)
        .map(|v| 2f64.powf(1.0 + v as f64 / voices as f64))
        .collect()
}

fn row_kernel(w: &SampledWavelet, cum: &[f64], s: f64) -> (isize, Vec<f64>) {
    // weight(d) is nonzero only when [d, d + 1) meets [s a, s b)
    let lo = (s * w.t_start).floor() as isize - 1;
    let hi = (s * w.t_end()).ceil() as isize;
    let root = s.sqrt();
    let weights = (lo..=hi)
        .map(|d| {
            let d = d as f64;
            root * (cumulative_at(cum, w, (d + 1.0) / s) - cumulative_at(cum, w, d / s))
        })
        .collect();
    (lo, weights)
}

fn check_scales(scales: &[f64]) -> Result<()> {
    if scales.is_empty() {
        return Err(Error::InvalidScales("no scales given".into()));
    }
    if let Some(s) = scales.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
        return Err(Error::InvalidScales(format!("scale {s} is not positive")));
    }
    if scales.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::InvalidScales(
            "scales must be strictly ascending".into(),
        ));
    }
    Ok(())
}

pub fn cwt_transform(x: &[f64], scales: &[f64], w: &SampledWavelet) -> Result<Scalogram> {
    cwt_transform_with(x, scales, w, Execution::default())
}

/// As [`cwt_transform`], with explicit row scheduling. Rows are independent
/// so both schedules give identical output.
pub fn cwt_transform_with(
    x: &[f64],
    scales: &[f64],
    w: &SampledWavelet,
    exec: Execution,
) -> Result<Scalogram> {
    if x.len() < 4 {
        return Err(Error::TooShort {
            needed: 4,
            got: x.len(),
        });
    }
    check_scales(scales)?;
    w.check_grid()?;
    let cum = w.running_integral();
    let n = x.len() as isize;

    let rows = par::map_indexed(scales.len(), exec, |i| {
        let (lo, kernel) = row_kernel(w, &cum, scales[i]);
        let mut first = isize::MAX;
        let mut last = isize::MIN;
        for (k, v) in kernel.iter().enumerate() {
            if *v != 0.0 {
                first = first.min(lo + k as isize);
                last = last.max(lo + k as isize);
            }
        }
        let row = (0..n)
            .map(|tau| {
                let start = (tau + lo).max(0);
                let end = (tau + lo + kernel.len() as isize).min(n);
                (start..end)
                    .map(|t| x[t as usize] * kernel[(t - tau - lo) as usize])
                    .sum()
            })
            .collect();
        (row, (first.min(0), last.max(0)))
    });
    let (coefficients, extents) = rows.into_iter().unzip();
    Ok(Scalogram {
        coefficients,
        scales: scales.to_vec(),
        times: (0..x.len()).collect(),
        extents,
    })
}

/// Default real-Morlet center frequency.
pub const MORLET_OMEGA0: f64 = 6.0;
