//! Wavelet tools for monthly time series: orthonormal filter banks, the
//! pyramid DWT and its inverse, multiresolution analysis, a discretized
//! CWT, the periodogram, and a variance change-point test on nonboundary
//! wavelet coefficients.

pub mod analysis;
pub mod changepoint;
pub mod cwt;
pub mod dwt;
pub mod error;
pub mod filters;
pub mod par;
pub mod preprocess;
pub mod series;
pub mod spectral;
pub mod synth;

pub use analysis::{run_analyze, AnalysisConfig, AnalysisReport, PreprocessMode};
pub use changepoint::{
    critical_value, cusum_statistic, detect_changepoints, nonboundary_range, test_level,
    ChangePointReport, Cusum, MonteCarloConfig, NonboundaryRange,
};
pub use cwt::{check_admissibility, cwt_transform, AdmissibilityReport, SampledWavelet, Scalogram};
pub use dwt::{align_coefficients, dwt, idwt, mra, DwtCoefficients, MraDecomposition};
pub use error::{Error, Result};
pub use filters::{
    filter_catalog, frequency_response, qmf_from_scaling, validate_filter, Family, FilterId,
    FilterPair, ValidationReport,
};
pub use par::Execution;
pub use preprocess::{first_difference, fit_linear_trend, truncate_to_dyadic, TrendFit};
pub use series::{TimeSeries, YearMonth};
pub use spectral::{periodogram, Periodogram};
pub use synth::{generate_synthetic, Synthetic};
