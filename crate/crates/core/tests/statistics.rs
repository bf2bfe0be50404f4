mod common;

use common::gaussian;
use wavecp::changepoint::{self, simulate_null};
use wavecp::{
    critical_value, detect_changepoints, fit_linear_trend, Error, Execution, FilterId,
    MonteCarloConfig, TimeSeries,
};

#[test]
fn critical_value_decreases_with_alpha() {
    let mc = MonteCarloConfig::new(20_000, 9);
    let mut last = f64::INFINITY;
    for alpha in [0.01, 0.025, 0.05, 0.1, 0.2] {
        let cv = critical_value(40, alpha, &mc).unwrap();
        assert!(cv <= last, "alpha {alpha}: {cv} > {last}");
        last = cv;
    }
}

#[test]
fn critical_value_near_brownian_bridge_limit() {
    // sup|B| has 95% point 1.358; the squares of standard Gaussians have
    // variance 2, so D scales as sup|B| * sqrt(2 / m).
    let m = 128;
    let cv = critical_value(m, 0.05, &MonteCarloConfig::default()).unwrap();
    let asymptotic = 1.358 / (m as f64 / 2.0).sqrt();
    let rel = (cv - asymptotic).abs() / asymptotic;
    assert!(rel < 0.05, "cv {cv}, asymptotic {asymptotic}, rel {rel}");
}

#[test]
fn critical_value_stable_when_doubling_replicates() {
    let a = critical_value(61, 0.05, &MonteCarloConfig::new(100_000, 42)).unwrap();
    let b = critical_value(61, 0.05, &MonteCarloConfig::new(200_000, 4242)).unwrap();
    assert!((a - b).abs() / a < 0.02, "{a} vs {b}");
}

#[test]
fn null_sample_independent_of_scheduling() {
    let seq = MonteCarloConfig::new(12_345, 3).with_execution(Execution::Sequential);
    let par = MonteCarloConfig::new(12_345, 3).with_execution(Execution::Parallel);
    assert_eq!(simulate_null(33, &seq), simulate_null(33, &par));
}

#[test]
fn critical_value_rejects_bad_inputs() {
    let mc = MonteCarloConfig::default();
    assert!(critical_value(7, 0.05, &mc).is_err());
    assert!(critical_value(32, 0.5, &mc).is_err());
    assert!(critical_value(32, 0.0, &mc).is_err());
    assert!(critical_value(32, 0.05, &MonteCarloConfig::new(9_999, 1)).is_err());
}

#[test]
fn critical_value_disk_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    // SAFETY: no other test in this binary reads the variable concurrently
    // with a different expectation; the cached value equals the fresh one.
    unsafe { std::env::set_var(changepoint::CACHE_DIR_ENV, dir.path()) };
    let mc = MonteCarloConfig::new(10_000, 777);
    let first = critical_value(20, 0.05, &mc).unwrap();
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(files >= 1);
    let second = critical_value(20, 0.05, &mc).unwrap();
    assert_eq!(first.to_bits(), second.to_bits());
}

#[test]
fn trend_on_white_noise_is_insignificant() {
    let ok = (0..100)
        .filter(|&seed| {
            let x = TimeSeries::new(gaussian(1000, 10_000 + seed)).unwrap();
            let fit = fit_linear_trend(&x).unwrap();
            fit.beta1.abs() < 0.01 && fit.p1 > 0.01
        })
        .count();
    assert!(ok >= 90, "{ok}/100");
}

#[test]
fn white_noise_rarely_rejects_per_level() {
    let f = FilterId::LA8.pair().unwrap();
    let mc = MonteCarloConfig::default();
    let mut quiet = [0usize; 3];
    for seed in 0..100 {
        let x = TimeSeries::new(gaussian(128, 20_000 + seed)).unwrap();
        let reports = detect_changepoints(&x, &f, 3, 0.05, &mc).unwrap();
        assert_eq!(reports.len(), 3);
        for r in reports {
            if !r.reject {
                quiet[r.level - 1] += 1;
            }
        }
    }
    assert!(quiet.iter().all(|&q| q >= 90), "{quiet:?}");
}

#[test]
fn constant_series_has_zero_energy() {
    let x = TimeSeries::new(vec![5.0; 64]).unwrap();
    let f = FilterId::LA8.pair().unwrap();
    let err = detect_changepoints(&x, &f, 2, 0.05, &MonteCarloConfig::default()).unwrap_err();
    assert!(matches!(err, Error::ZeroEnergy));
}

#[test]
fn rejection_consistent_with_threshold() {
    let f = FilterId::LA8.pair().unwrap();
    let mc = MonteCarloConfig::default();
    for seed in 0..10 {
        let mut x = gaussian(256, seed);
        for v in &mut x[100..] {
            *v *= 4.0;
        }
        let x = TimeSeries::new(x).unwrap();
        for r in detect_changepoints(&x, &f, 3, 0.05, &mc).unwrap() {
            assert_eq!(r.reject, r.d_statistic > r.critical_value);
            assert_eq!(r.location.is_some(), r.reject);
            if let Some(l) = r.location {
                assert!(l < 256);
                assert_eq!(r.location_t, Some(l + 1));
            }
        }
    }
}
