//! Homogeneity-of-variance test on nonboundary DWT coefficients.
//!
//! The statistic is the rotated cumulative sum of squares. For coefficients
//! `v_1..v_M` let `P_k = sum_{i<=k} v_i^2 / sum_i v_i^2`. Then
//!
//! ```text
//! D+ = max_{1<=k<M} (k/(M-1) - P_k)
//! D- = max_{1<=k<M} (P_k - (k-1)/(M-1))
//! D  = max(D+, D-)
//! ```
//!
//! Critical values come from seeded Monte Carlo under iid Gaussian
//! coefficients, so the size is right for this exact statistic.
//!
//! Coefficient `n` of level `j` reads `x[2^j n .. 2^j n + L_j)` with
//! `L_j = (2^j - 1)(L - 1) + 1`, so the circularly wrapped coefficients are
//! the *last* `L'_j` of each level and the nonboundary ones are `0..N'_j`.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::dwt::{self, DwtCoefficients};
use crate::error::{Error, Result};
use crate::filters::FilterPair;
use crate::par::{self, Execution};
use crate::series::{TimeSeries, YearMonth};

/// A level whose tested coefficients carry at most this fraction of the
/// total energy is treated as having none.
pub const RELATIVE_ENERGY_FLOOR: f64 = 1e-24;

/// Fewest nonboundary coefficients a level needs to be tested.
pub const MIN_NONBOUNDARY: usize = 8;

/// Environment variable naming a directory for cached critical values.
pub const CACHE_DIR_ENV: &str = "WAVECP_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonboundaryRange {
    pub level: usize,
    /// `L'_j`, the number of coefficients touched by circular wraparound.
    pub boundary: usize,
    /// `N'_j = N_j - L'_j`.
    pub count: usize,
    /// `N_j = N / 2^j`.
    pub total: usize,
}

impl NonboundaryRange {
    /// Indices of the nonboundary coefficients within level `j`.
    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.count
    }
}

/// `L'_j = ceil((L - 2)(1 - 2^-j))`, `N'_j = N_j - L'_j`.
pub fn nonboundary_range(level: usize, f: &FilterPair, n: usize) -> Result<NonboundaryRange> {
    if level == 0 {
        return Err(Error::InvalidDepth);
    }
    if level >= usize::BITS as usize || !n.is_multiple_of(1usize << level) || n == 0 {
        return Err(Error::LengthNotDivisible {
            len: n,
            depth: level,
        });
    }
    let pow = 1usize << level;
    let total = n / pow;
    let boundary = ((f.len().saturating_sub(2)) * (pow - 1)).div_ceil(pow);
    let count = total.saturating_sub(boundary);
    if count < MIN_NONBOUNDARY {
        return Err(Error::InsufficientData {
            level,
            available: count,
            required: MIN_NONBOUNDARY,
        });
    }
    Ok(NonboundaryRange {
        level,
        boundary,
        count,
        total,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cusum {
    pub d: f64,
    pub d_plus: f64,
    pub d_minus: f64,
    /// Smallest `k` maximising `|P_k - k/M|`: the number of coefficients
    /// before the change.
    pub k_star: usize,
}

/// Statistic from squared coefficients. `energy` must be positive.
fn cusum_of_squares(sq: &[f64], energy: f64) -> Cusum {
    let m = sq.len();
    let mf = m as f64;
    let denom = (m - 1) as f64;
    let mut acc = 0.0;
    let mut d_plus = f64::NEG_INFINITY;
    let mut d_minus = f64::NEG_INFINITY;
    let mut best = f64::NEG_INFINITY;
    let mut k_star = 1;
    for (i, s) in sq[..m - 1].iter().enumerate() {
        let k = (i + 1) as f64;
        acc += s;
        let p = acc / energy;
        d_plus = d_plus.max(k / denom - p);
        d_minus = d_minus.max(p - (k - 1.0) / denom);
        let dev = (p - k / mf).abs();
        if dev > best {
            best = dev;
            k_star = i + 1;
        }
    }
    Cusum {
        d: d_plus.max(d_minus),
        d_plus,
        d_minus,
        k_star,
    }
}

pub fn cusum_statistic(v: &[f64]) -> Result<Cusum> {
    if v.len() < MIN_NONBOUNDARY {
        return Err(Error::TooShort {
            needed: MIN_NONBOUNDARY,
            got: v.len(),
        });
    }
    let sq: Vec<f64> = v.iter().map(|x| x * x).collect();
    let energy: f64 = sq.iter().sum();
    if energy.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::ZeroEnergy);
    }
    Ok(cusum_of_squares(&sq, energy))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub replicates: usize,
    pub seed: u64,
    #[serde(skip)]
    pub execution: Execution,
}

pub const MIN_REPLICATES: usize = 10_000;

impl Default for MonteCarloConfig {
    fn default() -> Self {
        Self {
            replicates: 100_000,
            seed: 42,
            execution: Execution::default(),
        }
    }
}

impl MonteCarloConfig {
    pub fn new(replicates: usize, seed: u64) -> Self {
        Self {
            replicates,
            seed,
            ..Self::default()
        }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

/// Draws of `D` for `replicates` samples of `m` iid standard Gaussians,
/// sorted ascending. Replicate `r` uses ChaCha stream `r` of the master
/// seed, so the pooled sample does not depend on scheduling.
pub fn simulate_null(m: usize, mc: &MonteCarloConfig) -> Vec<f64> {
    let mut out = vec![0.0; mc.replicates];
    par::fill_chunks(&mut out, 1024, mc.execution, |start, chunk| {
        let mut sq = vec![0.0; m];
        for (i, slot) in chunk.iter_mut().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(mc.seed);
            rng.set_stream((start + i) as u64);
            let mut energy = 0.0;
            for s in sq.iter_mut() {
                let z: f64 = StandardNormal.sample(&mut rng);
                *s = z * z;
                energy += *s;
            }
            *slot = cusum_of_squares(&sq, energy).d;
        }
    });
    out.sort_by(f64::total_cmp);
    out
}

/// Empirical `q`-quantile of sorted data (inverse ECDF).
fn upper_quantile(sorted: &[f64], q: f64) -> f64 {
    let idx = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len()) - 1;
    sorted[idx]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct CacheKey {
    m: usize,
    alpha_bits: u64,
    replicates: usize,
    seed: u64,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    m: usize,
    alpha: f64,
    replicates: usize,
    seed: u64,
    critical_value: f64,
}

fn memory_cache() -> &'static Mutex<HashMap<CacheKey, f64>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, f64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cache_file(key: &CacheKey) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_DIR_ENV)?;
    Some(PathBuf::from(dir).join(format!(
        "cusum-cv-m{}-a{:016x}-r{}-s{}.json",
        key.m, key.alpha_bits, key.replicates, key.seed
    )))
}

fn read_disk_cache(key: &CacheKey) -> Option<f64> {
    let text = fs::read_to_string(cache_file(key)?).ok()?;
    let e: CacheEntry = serde_json::from_str(&text).ok()?;
    (e.m == key.m
        && e.alpha.to_bits() == key.alpha_bits
        && e.replicates == key.replicates
        && e.seed == key.seed)
        .then_some(e.critical_value)
}

fn write_disk_cache(key: &CacheKey, value: f64) {
    let Some(path) = cache_file(key) else { return };
    let entry = CacheEntry {
        m: key.m,
        alpha: f64::from_bits(key.alpha_bits),
        replicates: key.replicates,
        seed: key.seed,
        critical_value: value,
    };
    // a failed write only costs a recomputation next time
    if let Some(dir) = path.parent() {
        let _ = fs::create_dir_all(dir);
    }
    if let Ok(text) = serde_json::to_string_pretty(&entry) {
        let _ = fs::write(path, text);
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::InvalidParams(format!(
            "alpha must lie in (0, 0.5), got {alpha}"
        )));
    }
    Ok(())
}

/// `(1 - alpha)` quantile of `D` under the null for `m` coefficients.
/// Results are cached in memory and, when `WAVECP_CACHE_DIR` is set, on
/// disk.
pub fn critical_value(m: usize, alpha: f64, mc: &MonteCarloConfig) -> Result<f64> {
    if m < MIN_NONBOUNDARY {
        return Err(Error::InvalidParams(format!(
            "need at least {MIN_NONBOUNDARY} coefficients, got {m}"
        )));
    }
    check_alpha(alpha)?;
    if mc.replicates < MIN_REPLICATES {
        return Err(Error::InvalidParams(format!(
            "need at least {MIN_REPLICATES} replicates, got {}",
            mc.replicates
        )));
    }
    let key = CacheKey {
        m,
        alpha_bits: alpha.to_bits(),
        replicates: mc.replicates,
        seed: mc.seed,
    };
    if let Some(v) = memory_cache().lock().unwrap().get(&key) {
        return Ok(*v);
    }
    let value = match read_disk_cache(&key) {
        Some(v) => v,
        None => {
            let v = upper_quantile(&simulate_null(m, mc), 1.0 - alpha);
            write_disk_cache(&key, v);
            v
        }
    };
    memory_cache().lock().unwrap().insert(key, value);
    Ok(value)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChangePointReport {
    pub level: usize,
    /// Number of nonboundary coefficients tested.
    pub coefficients: usize,
    pub d_statistic: f64,
    pub critical_value: f64,
    pub alpha: f64,
    pub reject: bool,
    /// First nonboundary coefficient after the change.
    pub coefficient_index: Option<usize>,
    /// Zero-based sample index of the change in the analysed series.
    pub location: Option<usize>,
    /// One-based time index, `location + 1`.
    pub location_t: Option<usize>,
    pub location_label: Option<YearMonth>,
}

/// Tests level `j` of `c` for a change in variance.
pub fn test_level(
    c: &DwtCoefficients,
    level: usize,
    f: &FilterPair,
    alpha: f64,
    mc: &MonteCarloConfig,
) -> Result<ChangePointReport> {
    if c.filter != f.id {
        return Err(Error::FilterMismatch {
            expected: c.filter.to_string(),
            found: f.id.to_string(),
        });
    }
    check_alpha(alpha)?;
    let w = if c.aligned {
        dwt::unalign(c, f).w
    } else {
        c.w.clone()
    };
    let coeffs = level
        .checked_sub(1)
        .and_then(|i| w.get(i))
        .ok_or(Error::InvalidDepth)?;
    let range = nonboundary_range(level, f, c.n)?;
    let slice = &coeffs[range.indices()];
    // Rounding noise from an exactly annihilated input is not a signal.
    let slice_energy: f64 = slice.iter().map(|v| v * v).sum();
    if slice_energy <= RELATIVE_ENERGY_FLOOR * c.energy() {
        return Err(Error::ZeroEnergy);
    }
    let cusum = cusum_statistic(slice)?;
    let cv = critical_value(range.count, alpha, mc)?;
    let reject = cusum.d > cv;
    let (coefficient_index, location) = if reject {
        let shift = dwt::alignment_shift(f, level, true);
        let loc = ((cusum.k_star + shift) << level) % c.n;
        (Some(cusum.k_star), Some(loc))
    } else {
        (None, None)
    };
    Ok(ChangePointReport {
        level,
        coefficients: range.count,
        d_statistic: cusum.d,
        critical_value: cv,
        alpha,
        reject,
        coefficient_index,
        location,
        location_t: location.map(|l| l + 1),
        location_label: None,
    })
}

/// Runs [`test_level`] on every level `1..=depth` with enough nonboundary
/// coefficients. Levels are reported separately, without multiplicity
/// correction.
pub fn detect_changepoints(
    x: &TimeSeries,
    f: &FilterPair,
    depth: usize,
    alpha: f64,
    mc: &MonteCarloConfig,
) -> Result<Vec<ChangePointReport>> {
    let c = dwt::dwt(x.values(), f, depth)?;
    detect_in_coefficients(&c, x, f, alpha, mc)
}

pub(crate) fn detect_in_coefficients(
    c: &DwtCoefficients,
    x: &TimeSeries,
    f: &FilterPair,
    alpha: f64,
    mc: &MonteCarloConfig,
) -> Result<Vec<ChangePointReport>> {
    let mut reports = Vec::new();
    let mut first_err = None;
    for level in 1..=c.depth {
        match test_level(c, level, f, alpha, mc) {
            Ok(mut r) => {
                r.location_label = r.location.and_then(|l| x.label(l));
                reports.push(r);
            }
            Err(e @ Error::InsufficientData { .. }) => {
                first_err.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    match (reports.is_empty(), first_err) {
        (true, Some(e)) => Err(e),
        _ => Ok(reports),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::FilterId;

    #[test]
    fn nonboundary_examples() {
        let haar = FilterId::HAAR.pair().unwrap();
        for j in 1..=3 {
            let r = nonboundary_range(j, &haar, 64).unwrap();
            assert_eq!(r.boundary, 0);
            assert_eq!(r.count, 64 >> j);
        }
        let la8 = FilterId::LA8.pair().unwrap();
        let r = nonboundary_range(1, &la8, 64).unwrap();
        assert_eq!((r.boundary, r.count, r.total), (3, 29, 32));
        assert!(matches!(
            nonboundary_range(5, &la8, 64),
            Err(Error::InsufficientData { level: 5, .. })
        ));
        assert!(matches!(
            nonboundary_range(3, &la8, 60),
            Err(Error::LengthNotDivisible { .. })
        ));
    }

    #[test]
    fn boundary_coefficients_are_the_wrapped_ones() {
        // perturbing x[N-1] and x[0] can only reach coefficients that wrap
        // (x[N-1] also reaches the last clean one, which ends at N-1)
        let f = FilterId::db(3).pair().unwrap();
        let n = 128;
        let base = vec![0.0; n];
        for j in 1..=3 {
            let r = nonboundary_range(j, &f, n).unwrap();
            let mut x = base.clone();
            x[0] = 1.0;
            let c = dwt::dwt(&x, &f, j).unwrap();
            let w = &c.w[j - 1];
            let touched: Vec<usize> = (0..w.len()).filter(|&k| w[k] != 0.0).collect();
            // x[0] enters coefficient 0 directly and the wrapped tail
            for k in touched {
                assert!(
                    k == 0 || k >= r.count,
                    "level {j}: coefficient {k} of {}",
                    r.count
                );
            }
        }
    }

    #[test]
    fn equal_magnitudes() {
        let c = cusum_statistic(&[1.0, -1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0]).unwrap();
        assert!((c.d - 0.125).abs() < 1e-15);
        assert_eq!(c.k_star, 1);
    }

    #[test]
    fn single_spike_at_end() {
        let mut v = [0.0; 8];
        v[7] = 1.0;
        let c = cusum_statistic(&v).unwrap();
        assert_eq!(c.d_plus, 1.0);
        assert_eq!(c.d, 1.0);
        assert_eq!(c.k_star, 7);
    }

    #[test]
    fn cusum_errors() {
        assert!(matches!(cusum_statistic(&[0.0; 8]), Err(Error::ZeroEnergy)));
        assert!(matches!(
            cusum_statistic(&[1.0; 7]),
            Err(Error::TooShort { .. })
        ));
    }

    #[test]
    fn critical_value_preconditions() {
        let mc = MonteCarloConfig::new(10_000, 1);
        assert!(critical_value(7, 0.05, &mc).is_err());
        assert!(critical_value(16, 0.5, &mc).is_err());
        assert!(critical_value(16, 0.0, &mc).is_err());
        assert!(critical_value(16, 0.05, &MonteCarloConfig::new(9_999, 1)).is_err());
    }

    #[test]
    fn quantile_indexing() {
        let v: Vec<f64> = (1..=100).map(f64::from).collect();
        assert_eq!(upper_quantile(&v, 0.95), 95.0);
        assert_eq!(upper_quantile(&v, 0.951), 96.0);
        assert_eq!(upper_quantile(&v, 1.0), 100.0);
    }

    #[test]
    fn scheduling_does_not_change_the_null_sample() {
        let seq = simulate_null(
            20,
            &MonteCarloConfig::new(3000, 9).with_execution(Execution::Sequential),
        );
        let par = simulate_null(
            20,
            &MonteCarloConfig::new(3000, 9).with_execution(Execution::Parallel),
        );
        assert_eq!(seq, par);
    }
}
