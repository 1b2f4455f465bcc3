//! Full analysis in one structure: summaries, fits, and utility tests for
//! the three approval groups, plus a seat forecast — rendered as Markdown
//! and as SVG scatter plots.

use std::fmt::Write as _;

use crate::dataset::{filter_by_approval, summarize, ApprovalGroup, ElectionDataset, SummaryStats};
use crate::error::{Error, Result};
use crate::inference::{
    interval_caveats, mean_response_interval, prediction_interval, seats_interval,
    slope_utility_test, IntervalKind, ResponseInterval, SlopeTest,
};
use crate::regress::{fit_ols, LinearFit};

/// Query approval used for the forecast when none is given.
pub const DEFAULT_FORECAST_APPROVAL: f64 = 44.0;
/// Confidence level used when none is given.
pub const DEFAULT_LEVEL: f64 = 0.95;

/// One approval group's slice of the analysis. Groups too small to model
/// keep their summaries and record count; `fit`/`slope_test` stay `None`
/// with an explanatory note on the report.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupReport {
    pub group: ApprovalGroup,
    pub n: usize,
    pub approval: Option<SummaryStats>,
    pub seats: Option<SummaryStats>,
    pub fit: Option<LinearFit>,
    pub slope_test: Option<SlopeTest>,
}

/// The response interval at the query approval, with its bounds rounded to
/// whole seats (ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct Forecast {
    pub interval: ResponseInterval,
    pub seats: (i64, i64),
}

/// Everything the analysis produces: the three groups, the forecast from the
/// all-data model, and any warnings generated along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub x0: f64,
    pub level: f64,
    pub all: GroupReport,
    pub above_50: GroupReport,
    pub below_50: GroupReport,
    pub forecast: Forecast,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    /// The three groups in reporting order.
    pub fn groups(&self) -> [&GroupReport; 3] {
        [&self.all, &self.above_50, &self.below_50]
    }
}

/// Runs the whole analysis with a mean-response forecast interval.
///
/// Fits all three approval groups, tests each slope, and forecasts the seat
/// change at approval `x0` from the all-data model. A group with fewer than
/// 3 records is reported without a model (with a note); a group whose x
/// values are all equal fails the analysis with the group named. An empty or
/// unfittable dataset is an error.
pub fn analyze(ds: &ElectionDataset, x0: f64, level: f64) -> Result<AnalysisReport> {
    analyze_with_kind(ds, x0, level, IntervalKind::MeanResponse)
}

/// As [`analyze`], choosing the forecast interval kind.
pub fn analyze_with_kind(
    ds: &ElectionDataset,
    x0: f64,
    level: f64,
    kind: IntervalKind,
) -> Result<AnalysisReport> {
    let mut notes = Vec::new();

    let all = build_group(ds, ApprovalGroup::All, &mut notes)?;
    let above_50 = build_group(ds, ApprovalGroup::Above50, &mut notes)?;
    let below_50 = build_group(ds, ApprovalGroup::Below50, &mut notes)?;

    if all.fit.is_none() && above_50.fit.is_none() && below_50.fit.is_none() {
        return Err(Error::NoFittableGroup);
    }
    // A fittable subgroup is a subset of the full data, so the full data has
    // enough records and x-spread to fit whenever any group does.
    let all_fit = all.fit.as_ref().expect("all-data fit exists");

    for caveat in interval_caveats(all_fit, x0, Some(ApprovalGroup::All)) {
        notes.push(caveat.to_string());
    }
    let boundary = all.n - above_50.n - below_50.n;
    if boundary > 0 {
        notes.push(format!(
            "{boundary} record(s) with approval exactly 50% belong to neither subgroup"
        ));
    }

    let interval = match kind {
        IntervalKind::MeanResponse => mean_response_interval(all_fit, x0, level)?,
        IntervalKind::IndividualPrediction => prediction_interval(all_fit, x0, level)?,
    };
    let seats = seats_interval(&interval);

    Ok(AnalysisReport {
        x0,
        level,
        all,
        above_50,
        below_50,
        forecast: Forecast { interval, seats },
        notes,
    })
}

fn build_group(
    ds: &ElectionDataset,
    group: ApprovalGroup,
    notes: &mut Vec<String>,
) -> Result<GroupReport> {
    let sub = filter_by_approval(ds, group);
    let n = sub.len();

    let approval = summarize(&sub.approvals()).ok();
    let seats = summarize(&sub.seat_changes()).ok();

    let fit = if n < 3 {
        notes.push(format!(
            "group {group}: insufficient data (n = {n}); no model fitted"
        ));
        None
    } else {
        match fit_ols(&sub.pairs()) {
            Ok(fit) => Some(fit),
            Err(err) => return Err(err.for_group(group)),
        }
    };

    let slope_test = match fit.as_ref().map(slope_utility_test) {
        Some(Ok(test)) => Some(test),
        Some(Err(err)) => {
            notes.push(format!("group {group}: {err}"));
            None
        }
        None => None,
    };

    Ok(GroupReport {
        group,
        n,
        approval,
        seats,
        fit,
        slope_test,
    })
}

/// Formats `v` with `sig` significant digits, in plain decimal notation.
/// Model statistics print with 6, summary statistics with 10.
pub fn fmt_sig(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

fn fmt_stat(v: f64) -> String {
    fmt_sig(v, 6)
}

fn fmt_summary(v: f64) -> String {
    fmt_sig(v, 10)
}

fn fmt_p(p: f64) -> String {
    format!("{p:.6}")
}

fn verdict(test: &SlopeTest) -> &'static str {
    if test.reject_at_005 {
        "useful at α=0.05"
    } else {
        "not useful at α=0.05"
    }
}

/// Phrases a whole-seat interval the way a forecast reads: "lose 27 to 48
/// seats", "gain 1 to 5 seats", or a signed range when the interval spans 0.
pub fn seat_phrase(lo: i64, hi: i64) -> String {
    if hi <= 0 {
        format!("lose {} to {} seats", -hi, -lo)
    } else if lo >= 0 {
        format!("gain {lo} to {hi} seats")
    } else {
        format!("change between {lo} and {hi} seats")
    }
}

/// Side-by-side comparison of the fitted models: r, r², t, p, and the
/// α = 0.05 verdict per group, then a recommendation for the query approval.
///
/// Groups without a model are left out of the table; when the query falls in
/// a subgroup whose model is missing or not useful, the all-data model is
/// recommended instead (the subgroup's own model otherwise).
pub fn compare_models(report: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str("| Group | r | r^2 | t | p | Verdict |\n");
    out.push_str("| --- | --- | --- | --- | --- | --- |\n");
    for group in report.groups() {
        let Some(fit) = &group.fit else { continue };
        let (t, p, v) = match &group.slope_test {
            Some(test) => (
                fmt_stat(test.t_stat),
                fmt_p(test.p_two_sided),
                verdict(test).to_string(),
            ),
            None => ("n/a".to_string(), "n/a".to_string(), "n/a".to_string()),
        };
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            group.group,
            fmt_stat(fit.r),
            fmt_stat(fit.r2),
            t,
            p,
            v
        );
    }

    out.push('\n');
    out.push_str(&recommendation(report));
    out.push('\n');
    out
}

fn recommendation(report: &AnalysisReport) -> String {
    let x0 = report.x0;
    let subgroup = if x0 > 50.0 {
        Some(&report.above_50)
    } else if x0 < 50.0 {
        Some(&report.below_50)
    } else {
        None
    };

    match subgroup {
        None => format!(
            "Query approval {x0} sits exactly on the 50% boundary, in neither \
             subgroup; the all-data model applies."
        ),
        Some(sub) => match (&sub.fit, &sub.slope_test) {
            (Some(_), Some(test)) if test.reject_at_005 => format!(
                "Query approval {x0} falls in group {}, whose model is {}.",
                sub.group,
                verdict(test)
            ),
            (Some(_), Some(test)) => format!(
                "Query approval {x0} falls in group {}, whose model is {}; \
                 the all-data model is recommended for this query.",
                sub.group,
                verdict(test)
            ),
            _ => format!(
                "Query approval {x0} falls in group {}, which has no usable \
                 model; the all-data model is recommended for this query.",
                sub.group
            ),
        },
    }
}

/// Renders the report as Markdown with fixed formatting: 6 significant
/// digits for model statistics, 10 for summary statistics, p-values to 6
/// decimal places, interval bounds to 2. Identical reports render to
/// identical bytes.
pub fn render_markdown(report: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str("# Midterm seat-change regression\n\n");
    out.push_str(
        "Ordinary least squares fit of the president's party's congressional seat\n\
         change (y, seats) on the president's pre-midterm approval rating (x,\n\
         percent), with a two-sided t test of model utility and an interval\n\
         estimate for the response at a query approval.\n\n",
    );

    out.push_str("## Summary statistics\n\n");
    out.push_str("| Group | n | Approval mean | Approval sd | Seats mean | Seats sd |\n");
    out.push_str("| --- | --- | --- | --- | --- | --- |\n");
    for group in report.groups() {
        let cell = |stats: &Option<SummaryStats>, f: fn(&SummaryStats) -> Option<f64>| {
            stats
                .as_ref()
                .and_then(f)
                .map_or("n/a".to_string(), fmt_summary)
        };
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            group.group,
            group.n,
            cell(&group.approval, |s| Some(s.mean)),
            cell(&group.approval, |s| s.sd),
            cell(&group.seats, |s| Some(s.mean)),
            cell(&group.seats, |s| s.sd),
        );
    }
    out.push('\n');

    out.push_str("## Fitted models\n\n");
    out.push_str("Model form: seats = a + b*approval.\n\n");
    out.push_str("| Group | n | a | b | r | r^2 | s | df | t | p | Verdict |\n");
    out.push_str("| --- | --- | --- | --- | --- | --- | --- | --- | --- | --- | --- |\n");
    for group in report.groups() {
        match &group.fit {
            Some(fit) => {
                let (t, p, v) = match &group.slope_test {
                    Some(test) => (
                        fmt_stat(test.t_stat),
                        fmt_p(test.p_two_sided),
                        verdict(test).to_string(),
                    ),
                    None => ("n/a".to_string(), "n/a".to_string(), "n/a".to_string()),
                };
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                    group.group,
                    group.n,
                    fmt_stat(fit.a),
                    fmt_stat(fit.b),
                    fmt_stat(fit.r),
                    fmt_stat(fit.r2),
                    fmt_stat(fit.s),
                    fit.df,
                    t,
                    p,
                    v
                );
            }
            None => {
                let _ = writeln!(
                    out,
                    "| {} | {} | n/a | n/a | n/a | n/a | n/a | n/a | n/a | n/a | n/a |",
                    group.group, group.n
                );
            }
        }
    }
    out.push('\n');

    out.push_str("## Model comparison\n\n");
    out.push_str(&compare_models(report));
    out.push('\n');

    out.push_str("## Forecast\n\n");
    let interval = &report.forecast.interval;
    let kind_name = match interval.kind {
        IntervalKind::MeanResponse => "Mean-response",
        IntervalKind::IndividualPrediction => "Individual-prediction",
    };
    let _ = writeln!(
        out,
        "{kind_name} interval at approval {}, level {}, from the all-data model:\n",
        interval.x0, interval.level
    );
    let (lo, hi) = report.forecast.seats;
    let _ = writeln!(out, "- center: {:.2} seats", interval.center);
    let _ = writeln!(out, "- margin: {:.2} seats", interval.margin);
    let _ = writeln!(
        out,
        "- interval: [{:.2}, {:.2}]",
        interval.lower, interval.upper
    );
    let _ = writeln!(out, "- whole seats: {lo} to {hi} ({})", seat_phrase(lo, hi));
    out.push('\n');

    out.push_str("## Notes\n\n");
    if report.notes.is_empty() {
        out.push_str("(none)\n");
    } else {
        for note in &report.notes {
            let _ = writeln!(out, "- {note}");
        }
    }

    out
}

/// Which columns a scatter plot draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScatterAxes {
    /// x = approval, y = seat change; the regression's own axes (default).
    ApprovalVsSeats,
    /// x = year, y = approval.
    YearVsApproval,
    /// x = year, y = seat change.
    YearVsSeats,
}

impl ScatterAxes {
    fn labels(self) -> (&'static str, &'static str) {
        match self {
            ScatterAxes::ApprovalVsSeats => ("approval (%)", "seat change"),
            ScatterAxes::YearVsApproval => ("year", "approval (%)"),
            ScatterAxes::YearVsSeats => ("year", "seat change"),
        }
    }

    fn point(self, rec: &crate::dataset::ElectionRecord) -> (f64, f64) {
        match self {
            ScatterAxes::ApprovalVsSeats => (rec.approval, f64::from(rec.seat_change)),
            ScatterAxes::YearVsApproval => (f64::from(rec.year), rec.approval),
            ScatterAxes::YearVsSeats => (f64::from(rec.year), f64::from(rec.seat_change)),
        }
    }
}

const SVG_WIDTH: f64 = 640.0;
const SVG_HEIGHT: f64 = 480.0;
// 10% margins on each side.
const MARGIN_X: f64 = 64.0;
const MARGIN_Y: f64 = 48.0;

/// Scatter plot of approval vs seat change with the fitted line drawn across
/// the data's x-range. See [`render_scatter_svg_axes`] for other axes.
pub fn render_scatter_svg(ds: &ElectionDataset, fit: Option<&LinearFit>) -> Result<String> {
    render_scatter_svg_axes(ds, ScatterAxes::ApprovalVsSeats, fit)
}

/// Standalone 640×480 SVG scatter plot: one 4-unit circle per record in
/// record order, tick-labeled axes, and — on the approval-vs-seats axes with
/// a fit supplied — the fitted line across the data's x-range. Output is a
/// pure function of the input, so identical calls give identical bytes.
pub fn render_scatter_svg_axes(
    ds: &ElectionDataset,
    axes: ScatterAxes,
    fit: Option<&LinearFit>,
) -> Result<String> {
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }

    let points: Vec<(f64, f64)> = ds.iter().map(|r| axes.point(r)).collect();
    let (mut x_min, mut x_max) = min_max(points.iter().map(|p| p.0));
    let (mut y_min, mut y_max) = min_max(points.iter().map(|p| p.1));
    if x_min == x_max {
        x_min -= 1.0;
        x_max += 1.0;
    }
    if y_min == y_max {
        y_min -= 1.0;
        y_max += 1.0;
    }

    let plot_w = SVG_WIDTH - 2.0 * MARGIN_X;
    let plot_h = SVG_HEIGHT - 2.0 * MARGIN_Y;
    let sx = |v: f64| MARGIN_X + (v - x_min) / (x_max - x_min) * plot_w;
    let sy = |v: f64| SVG_HEIGHT - MARGIN_Y - (v - y_min) / (y_max - y_min) * plot_h;

    let (x_label, y_label) = axes.labels();
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_WIDTH}\" \
         height=\"{SVG_HEIGHT}\" viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\">"
    );
    let _ = writeln!(
        out,
        "  <clipPath id=\"plot\"><rect x=\"{MARGIN_X}\" y=\"{MARGIN_Y}\" \
         width=\"{plot_w}\" height=\"{plot_h}\"/></clipPath>"
    );

    // Axes and ticks are paths so that the only <line> element is the fit.
    let _ = writeln!(
        out,
        "  <path d=\"M {x0:.2} {y1:.2} L {x1:.2} {y1:.2} M {x0:.2} {y0:.2} L {x0:.2} {y1:.2}\" \
         stroke=\"#333333\" fill=\"none\"/>",
        x0 = MARGIN_X,
        x1 = SVG_WIDTH - MARGIN_X,
        y0 = MARGIN_Y,
        y1 = SVG_HEIGHT - MARGIN_Y,
    );

    let mut ticks = String::new();
    let mut tick_labels = String::new();
    for i in 0..=5 {
        let fx = x_min + (x_max - x_min) * f64::from(i) / 5.0;
        let px = sx(fx);
        let _ = write!(
            ticks,
            "M {px:.2} {:.2} L {px:.2} {:.2} ",
            SVG_HEIGHT - MARGIN_Y,
            SVG_HEIGHT - MARGIN_Y + 6.0
        );
        let _ = writeln!(
            tick_labels,
            "  <text x=\"{px:.2}\" y=\"{:.2}\" font-size=\"12\" \
             text-anchor=\"middle\" font-family=\"monospace\">{fx:.1}</text>",
            SVG_HEIGHT - MARGIN_Y + 20.0
        );

        let fy = y_min + (y_max - y_min) * f64::from(i) / 5.0;
        let py = sy(fy);
        let _ = write!(
            ticks,
            "M {:.2} {py:.2} L {:.2} {py:.2} ",
            MARGIN_X - 6.0,
            MARGIN_X
        );
        let _ = writeln!(
            tick_labels,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" \
             text-anchor=\"end\" font-family=\"monospace\">{fy:.1}</text>",
            MARGIN_X - 10.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        out,
        "  <path d=\"{}\" stroke=\"#333333\" fill=\"none\"/>",
        ticks.trim_end()
    );
    out.push_str(&tick_labels);

    let _ = writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" \
         font-family=\"monospace\">{x_label}</text>",
        SVG_WIDTH / 2.0,
        SVG_HEIGHT - 10.0
    );
    let _ = writeln!(
        out,
        "  <text x=\"16\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" \
         font-family=\"monospace\" transform=\"rotate(-90 16 {:.2})\">{y_label}</text>",
        SVG_HEIGHT / 2.0,
        SVG_HEIGHT / 2.0
    );

    if let (Some(fit), ScatterAxes::ApprovalVsSeats) = (fit, axes) {
        let y_at = |x: f64| fit.a + fit.b * x;
        let _ = writeln!(
            out,
            "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
             stroke=\"#c0392b\" stroke-width=\"2\" clip-path=\"url(#plot)\"/>",
            sx(x_min),
            sy(y_at(x_min)),
            sx(x_max),
            sy(y_at(x_max))
        );
    }

    for &(x, y) in &points {
        let _ = writeln!(
            out,
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#2c5f8a\"/>",
            sx(x),
            sy(y)
        );
    }

    out.push_str("</svg>\n");
    Ok(out)
}

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}
