#![allow(dead_code)]

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub const FIXTURE_ENV: &str = "WAVECP_MORTALITY_CSV";

/// Monthly mortality fixture: `$WAVECP_MORTALITY_CSV`, else
/// `tests/fixtures/brazil_monthly_deaths.csv`.
pub fn mortality_fixture() -> Option<PathBuf> {
    let path = std::env::var_os(FIXTURE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR"))
                .join("tests/fixtures/brazil_monthly_deaths.csv")
        });
    path.is_file().then_some(path)
}

pub fn gaussian(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn energy(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Prints one acceptance line and records the outcome.
pub fn verdict(name: &str, pass: bool, detail: impl AsRef<str>) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {tag} {name}: {}", detail.as_ref());
    if !pass {
        FAILURES.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    }
}

pub static FAILURES: std::sync::atomic::AtomicUsize = std::sync::atomic::AtomicUsize::new(0);
