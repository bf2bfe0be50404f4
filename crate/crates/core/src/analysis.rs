//! End-to-end pipeline: CSV ingestion, preprocessing, DWT and the
//! per-level variance test, collected into a serializable report.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::changepoint::{self, ChangePointReport, MonteCarloConfig, MIN_REPLICATES};
use crate::dwt;
use crate::error::{Error, Result};
use crate::filters::FilterId;
use crate::preprocess::{self, dyadic_floor};
use crate::series::{TimeSeries, YearMonth};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PreprocessMode {
    /// First difference.
    #[default]
    Diff,
    /// Residuals of the linear trend fit.
    Detrend,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub input: PathBuf,
    pub filter: FilterId,
    pub depth: usize,
    pub alpha: f64,
    pub preprocess: PreprocessMode,
    pub demean: bool,
    pub mc_seed: u64,
    pub mc_replicates: usize,
    /// Divide alpha by the number of tested levels.
    #[serde(default)]
    pub bonferroni: bool,
}

impl AnalysisConfig {
    pub fn new(input: impl Into<PathBuf>) -> Self {
        let mc = MonteCarloConfig::default();
        Self {
            input: input.into(),
            filter: FilterId::LA8,
            depth: 4,
            alpha: 0.05,
            preprocess: PreprocessMode::Diff,
            demean: true,
            mc_seed: mc.seed,
            mc_replicates: mc.replicates,
            bonferroni: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 0.5) {
            return Err(Error::InvalidParams(format!(
                "alpha must lie in (0, 0.5), got {}",
                self.alpha
            )));
        }
        if self.depth == 0 {
            return Err(Error::InvalidDepth);
        }
        if self.mc_replicates < MIN_REPLICATES {
            return Err(Error::InvalidParams(format!(
                "mc replicates must be at least {MIN_REPLICATES}, got {}",
                self.mc_replicates
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendSummary {
    pub beta0: f64,
    pub beta1: f64,
    pub stderr0: f64,
    pub stderr1: f64,
    pub p0: f64,
    pub p1: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesSummary {
    pub first_month: YearMonth,
    pub last_month: YearMonth,
    pub raw_length: usize,
    /// Length after preprocessing and dyadic truncation.
    pub analysed_length: usize,
    pub analysed_first_month: YearMonth,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandEnergy {
    pub band: String,
    pub fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub input_digest: String,
    pub config: AnalysisConfig,
    pub series: SeriesSummary,
    pub trend: TrendSummary,
    pub effective_alpha: f64,
    pub levels: Vec<ChangePointReport>,
    pub energy_fractions: Vec<BandEnergy>,
}

impl AnalysisReport {
    pub fn level(&self, j: usize) -> Option<&ChangePointReport> {
        self.levels.iter().find(|r| r.level == j)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    let mut file = fs::File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::InputNotFound(path.to_path_buf()),
        _ => Error::Io(e),
    })?;
    let mut buf = Vec::new();
    file.read_to_end(&mut buf)?;
    Ok(buf)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn parse_error(row: usize, field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        row,
        field: field.to_string(),
        message: message.into(),
    }
}

fn parse_value(raw: &str, row: usize, field: &str) -> Result<f64> {
    let v: f64 = raw
        .trim()
        .parse()
        .map_err(|_| parse_error(row, field, format!("`{raw}` is not a number")))?;
    if !v.is_finite() {
        return Err(parse_error(row, field, format!("`{raw}` is not finite")));
    }
    Ok(v)
}

/// Parses `date,deaths` CSV with one row per consecutive month. Rows are
/// numbered as file lines, the header being line 1.
pub fn parse_monthly_csv(bytes: &[u8]) -> Result<TimeSeries> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let headers = rdr
        .headers()
        .map_err(|e| parse_error(1, "header", e.to_string()))?
        .clone();
    let names: Vec<String> = headers.iter().map(str::to_ascii_lowercase).collect();
    if names != ["date", "deaths"] {
        return Err(parse_error(
            1,
            "header",
            format!("expected `date,deaths`, got `{}`", names.join(",")),
        ));
    }
    let mut values = Vec::new();
    let mut start: Option<YearMonth> = None;
    let mut prev: Option<YearMonth> = None;
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| parse_error(row, "record", e.to_string()))?;
        let month: YearMonth = rec
            .get(0)
            .unwrap_or("")
            .parse()
            .map_err(|e: String| parse_error(row, "date", e))?;
        if let Some(p) = prev {
            if month != p.succ() {
                return Err(parse_error(
                    row,
                    "date",
                    format!("expected {} after {p}, got {month}", p.succ()),
                ));
            }
        }
        values.push(parse_value(rec.get(1).unwrap_or(""), row, "deaths")?);
        start.get_or_insert(month);
        prev = Some(month);
    }
    let start = start.ok_or_else(|| parse_error(2, "record", "no data rows"))?;
    TimeSeries::monthly(values, start)
}

pub fn load_monthly_csv(path: &Path) -> Result<TimeSeries> {
    parse_monthly_csv(&read_bytes(path)?)
}

/// Reads a series for the transform subcommands: `date,deaths` files are
/// parsed as monthly data, anything else takes the `value` column (or the
/// last column when there is none).
pub fn load_series(path: &Path) -> Result<TimeSeries> {
    let bytes = read_bytes(path)?;
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(bytes.as_slice());
    let headers = rdr
        .headers()
        .map_err(|e| parse_error(1, "header", e.to_string()))?
        .clone();
    let lower: Vec<String> = headers.iter().map(str::to_ascii_lowercase).collect();
    if lower.first().map(String::as_str) == Some("date") {
        return parse_monthly_csv(&bytes);
    }
    let col = lower
        .iter()
        .position(|h| h == "value")
        .unwrap_or(lower.len().saturating_sub(1));
    let field = headers.get(col).unwrap_or("value").to_string();
    let mut values = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| parse_error(row, "record", e.to_string()))?;
        values.push(parse_value(rec.get(col).unwrap_or(""), row, &field)?);
    }
    TimeSeries::new(values).map_err(|_| parse_error(2, "record", "no data rows"))
}

/// Runs the full pipeline on `cfg.input`.
pub fn run_analyze(cfg: &AnalysisConfig) -> Result<AnalysisReport> {
    cfg.validate()?;
    let bytes = read_bytes(&cfg.input)?;
    let raw = parse_monthly_csv(&bytes)?;
    analyze_series(cfg, &raw, sha256_hex(&bytes))
}

/// Pipeline body on an already parsed series.
pub fn analyze_series(
    cfg: &AnalysisConfig,
    raw: &TimeSeries,
    input_digest: String,
) -> Result<AnalysisReport> {
    cfg.validate()?;
    let fit = preprocess::fit_linear_trend(raw)?;
    let stationary = match cfg.preprocess {
        PreprocessMode::Diff => preprocess::first_difference(raw, false)?,
        PreprocessMode::Detrend => {
            let r = fit.residuals.clone();
            TimeSeries::monthly(r, raw.start().expect("monthly series"))?
        }
    };
    let target = dyadic_floor(stationary.len());
    let mut series = preprocess::truncate_to_dyadic(&stationary, target)?;
    if cfg.demean {
        series = preprocess::demean(&series);
    }
    if target < (1usize << cfg.depth.min(usize::BITS as usize - 1)) {
        return Err(Error::InsufficientData {
            level: cfg.depth,
            available: target,
            required: 1 << cfg.depth,
        });
    }

    let f = cfg.filter.pair()?;
    let coeffs = dwt::dwt(series.values(), &f, cfg.depth)?;
    let testable = (1..=cfg.depth)
        .filter(|&j| changepoint::nonboundary_range(j, &f, target).is_ok())
        .count();
    let effective_alpha = if cfg.bonferroni && testable > 0 {
        cfg.alpha / testable as f64
    } else {
        cfg.alpha
    };
    let mc = MonteCarloConfig::new(cfg.mc_replicates, cfg.mc_seed);
    let levels = changepoint::detect_in_coefficients(&coeffs, &series, &f, effective_alpha, &mc)?;

    let fractions = coeffs.energy_fractions();
    let energy_fractions = fractions
        .iter()
        .enumerate()
        .map(|(i, &fraction)| BandEnergy {
            band: if i < cfg.depth {
                format!("w{}", i + 1)
            } else {
                format!("u{}", cfg.depth)
            },
            fraction,
        })
        .collect();

    let first = raw.start().expect("monthly series");
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        input_digest: format!("sha256:{input_digest}"),
        config: cfg.clone(),
        series: SeriesSummary {
            first_month: first,
            last_month: raw.label(raw.len() - 1).expect("monthly series"),
            raw_length: raw.len(),
            analysed_length: series.len(),
            analysed_first_month: series.start().expect("monthly series"),
        },
        trend: TrendSummary {
            beta0: fit.beta0,
            beta1: fit.beta1,
            stderr0: fit.stderr0,
            stderr1: fit.stderr1,
            p0: fit.p0,
            p1: fit.p1,
        },
        effective_alpha,
        levels,
        energy_fractions,
    })
}
