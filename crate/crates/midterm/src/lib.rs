//! Simple linear regression of midterm congressional seat change on
//! presidential approval, with the inference machinery (Student-t utility
//! test, confidence and prediction intervals) needed to judge and use the
//! model.

pub mod dataset;
pub mod error;
pub mod inference;
pub mod regress;
pub mod report;
pub mod specfun;

pub use dataset::{
    filter_by_approval, parse_dataset, reference_csv, reference_dataset, render_csv, summarize,
    validate_strict, ApprovalGroup, ElectionDataset, ElectionRecord, SummaryStats, CSV_HEADER,
};
pub use error::{DegenerateCause, Error, Result};
pub use inference::{
    interval_caveats, mean_response_interval, prediction_interval, seats_interval,
    slope_utility_test, Caveat, IntervalKind, ResponseInterval, SlopeTest,
};
pub use regress::{fit_ols, predict_point, LinearFit};
pub use report::{
    analyze, analyze_with_kind, compare_models, fmt_sig, render_markdown, render_scatter_svg,
    render_scatter_svg_axes, seat_phrase, AnalysisReport, Forecast, GroupReport, ScatterAxes,
    DEFAULT_FORECAST_APPROVAL, DEFAULT_LEVEL,
};
pub use specfun::{ln_gamma, reg_inc_beta, t_cdf, t_quantile, DegreesOfFreedom};
