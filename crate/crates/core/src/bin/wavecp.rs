use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wavecp::analysis::{self, AnalysisConfig, PreprocessMode};
use wavecp::changepoint::MonteCarloConfig;
use wavecp::cwt::{self, SampledWavelet};
use wavecp::{dwt, filters, spectral, synth, Error, FilterId, Synthetic};

#[derive(Parser)]
#[command(
    name = "wavecp",
    version,
    about = "Wavelet analysis and variance change points for monthly series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trend fit, preprocessing, DWT and per-level variance tests; writes a JSON report.
    Analyze(AnalyzeArgs),
    /// DWT coefficients in `[u_J | w_J | ... | w_1]` order as CSV.
    Dwt(TransformArgs),
    /// Details D_1..D_J and smooth S_J as CSV columns.
    Mra(TransformArgs),
    /// Scalogram as long-format CSV (scale, time, coefficient).
    Cwt(CwtArgs),
    /// One-sided periodogram as CSV.
    Periodogram(IoArgs),
    /// Generate a synthetic series as CSV.
    Synth(SynthArgs),
    /// Check every catalog filter; JSON report.
    ValidateFilters(OutputArg),
}

#[derive(Args)]
struct OutputArg {
    /// Output path; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct IoArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    out: OutputArg,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Catalog filter: haar, db2..db10, la8 (sym4), coif1..coif5.
    #[arg(long, default_value = "la8")]
    wavelet: String,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = Preprocess::Diff)]
    preprocess: Preprocess,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    demean: bool,
    #[arg(long, default_value_t = MonteCarloConfig::default().seed)]
    mc_seed: u64,
    #[arg(long, default_value_t = MonteCarloConfig::default().replicates)]
    mc_replicates: usize,
    /// Divide alpha by the number of tested levels.
    #[arg(long)]
    bonferroni: bool,
    #[command(flatten)]
    out: OutputArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preprocess {
    Diff,
    Detrend,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    io: IoArgs,
    #[arg(long, default_value = "la8")]
    wavelet: String,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Shift coefficients by the filter's group delay (dwt only).
    #[arg(long)]
    align: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum WaveletKind {
    Haar,
    Morlet,
    MexicanHat,
}

#[derive(Args)]
struct CwtArgs {
    #[command(flatten)]
    io: IoArgs,
    #[arg(long, value_enum, default_value_t = WaveletKind::Haar)]
    wavelet: WaveletKind,
    /// Octaves above the finest scale (2).
    #[arg(long, default_value_t = 5)]
    octaves: usize,
    #[arg(long, default_value_t = 4)]
    voices: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum SynthKind {
    Sinusoids,
    Varshift,
    Discontinuity,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, value_enum)]
    kind: SynthKind,
    #[arg(long, default_value_t = 1024)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    sigma_before: f64,
    #[arg(long, default_value_t = 3.0)]
    sigma_after: f64,
    /// Change point for `varshift`; defaults to n/2.
    #[arg(long)]
    change: Option<usize>,
    /// Break position for `discontinuity`; defaults to n/2.
    #[arg(long)]
    position: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    #[arg(long, default_value_t = 20.0)]
    decay: f64,
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[command(flatten)]
    out: OutputArg,
}

fn sink(out: &OutputArg) -> io::Result<Box<dyn Write>> {
    Ok(match &out.output {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_text(out: &OutputArg, text: &str) -> wavecp::Result<()> {
    let mut w = sink(out)?;
    w.write_all(text.as_bytes())?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn csv_writer(out: &OutputArg) -> wavecp::Result<csv::Writer<Box<dyn Write>>> {
    Ok(csv::Writer::from_writer(sink(out)?))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(io::Error::other(e))
}

fn fmt(v: f64) -> String {
    // shortest representation that round-trips
    format!("{v:?}")
}

fn run_analyze(a: AnalyzeArgs) -> wavecp::Result<()> {
    let cfg = AnalysisConfig {
        input: a.input,
        filter: a.wavelet.parse()?,
        depth: a.depth,
        alpha: a.alpha,
        preprocess: match a.preprocess {
            Preprocess::Diff => PreprocessMode::Diff,
            Preprocess::Detrend => PreprocessMode::Detrend,
        },
        demean: a.demean,
        mc_seed: a.mc_seed,
        mc_replicates: a.mc_replicates,
        bonferroni: a.bonferroni,
    };
    let report = analysis::run_analyze(&cfg)?;
    write_text(&a.out, &report.to_json()?)
}

fn run_dwt(a: TransformArgs) -> wavecp::Result<()> {
    let f = a.wavelet.parse::<FilterId>()?.pair()?;
    let x = analysis::load_series(&a.io.input)?;
    let mut c = dwt::dwt(x.values(), &f, a.depth)?;
    if a.align {
        c = dwt::align_coefficients(&c, &f);
    }
    let mut w = csv_writer(&a.io.out)?;
    w.write_record(["index", "band", "value"])
        .map_err(csv_err)?;
    for (i, (band, v)) in c
        .concatenated_bands()
        .iter()
        .zip(c.concatenated())
        .enumerate()
    {
        w.write_record([i.to_string(), band.clone(), fmt(v)])
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn run_mra(a: TransformArgs) -> wavecp::Result<()> {
    let f = a.wavelet.parse::<FilterId>()?.pair()?;
    let x = analysis::load_series(&a.io.input)?;
    let m = dwt::mra(x.values(), &f, a.depth)?;
    let mut w = csv_writer(&a.io.out)?;
    let mut header = vec!["t".to_string(), "label".to_string(), "x".to_string()];
    header.extend((1..=m.details.len()).map(|j| format!("D{j}")));
    header.push(format!("S{}", m.details.len()));
    w.write_record(&header).map_err(csv_err)?;
    for t in 0..x.len() {
        let mut row = vec![
            t.to_string(),
            x.label(t).map(|l| l.to_string()).unwrap_or_default(),
            fmt(x.values()[t]),
        ];
        row.extend(m.details.iter().map(|d| fmt(d[t])));
        row.push(fmt(m.smooth[t]));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn run_cwt(a: CwtArgs) -> wavecp::Result<()> {
    let x = analysis::load_series(&a.io.input)?;
    let wavelet = match a.wavelet {
        WaveletKind::Haar => SampledWavelet::haar(1.0 / 256.0)?,
        WaveletKind::Morlet => SampledWavelet::morlet(cwt::MORLET_OMEGA0, 1.0 / 32.0)?,
        WaveletKind::MexicanHat => SampledWavelet::mexican_hat(1.0 / 32.0)?,
    };
    let scales = cwt::dyadic_scales(a.octaves, a.voices);
    let s = cwt::cwt_transform(x.values(), &scales, &wavelet)?;
    let mut w = csv_writer(&a.io.out)?;
    w.write_record(["scale", "time", "coefficient", "interior"])
        .map_err(csv_err)?;
    for (i, row) in s.coefficients.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            w.write_record([
                fmt(s.scales[i]),
                s.times[k].to_string(),
                fmt(*v),
                s.is_interior(i, k).to_string(),
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run_periodogram(a: IoArgs) -> wavecp::Result<()> {
    let x = analysis::load_series(&a.input)?;
    let p = spectral::periodogram(x.values())?;
    let mut w = csv_writer(&a.out)?;
    w.write_record(["frequency", "power"]).map_err(csv_err)?;
    for (f, v) in p.frequencies.iter().zip(&p.power) {
        w.write_record([fmt(*f), fmt(*v)]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn run_synth(a: SynthArgs) -> wavecp::Result<()> {
    let kind = match a.kind {
        SynthKind::Sinusoids => Synthetic::Sinusoids { n: a.n },
        SynthKind::Varshift => Synthetic::VarShift {
            n: a.n,
            sigma_before: a.sigma_before,
            sigma_after: a.sigma_after,
            change: a.change.unwrap_or(a.n / 2),
        },
        SynthKind::Discontinuity => Synthetic::Discontinuity {
            n: a.n,
            position: a.position.unwrap_or(a.n / 2),
            amplitude: a.amplitude,
            decay: a.decay,
            noise: a.noise,
        },
    };
    let s = synth::generate_synthetic(&kind, a.seed)?;
    let mut w = csv_writer(&a.out)?;
    w.write_record(["t", "value"]).map_err(csv_err)?;
    for (t, v) in s.values().iter().enumerate() {
        w.write_record([t.to_string(), fmt(*v)]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn run_validate(out: OutputArg) -> wavecp::Result<bool> {
    let reports = FilterId::catalog()
        .into_iter()
        .map(|id| id.pair().map(|f| filters::validate_filter(&f)))
        .collect::<wavecp::Result<Vec<_>>>()?;
    let all = reports.iter().all(|r| r.pass);
    write_text(&out, &serde_json::to_string_pretty(&reports)?)?;
    Ok(all)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParams(_) | Error::UnsupportedFilter { .. } | Error::InvalidDepth => 2,
        Error::InputNotFound(_) | Error::Parse { .. } | Error::Io(_) => 3,
        Error::InsufficientData { .. }
        | Error::LengthNotDivisible { .. }
        | Error::TooShort { .. } => 4,
        _ => 1,
    }
}

fn ensure_parent(path: &Option<PathBuf>) {
    if let Some(dir) = path.as_deref().and_then(Path::parent) {
        if !dir.as_os_str().is_empty() {
            let _ = fs::create_dir_all(dir);
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => {
            ensure_parent(&a.out.output);
            run_analyze(a)
        }
        Command::Dwt(a) => run_dwt(a),
        Command::Mra(a) => run_mra(a),
        Command::Cwt(a) => run_cwt(a),
        Command::Periodogram(a) => run_periodogram(a),
        Command::Synth(a) => run_synth(a),
        Command::ValidateFilters(o) => match run_validate(o) {
            Ok(true) => Ok(()),
            Ok(false) => return ExitCode::from(1),
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
