//! Command-line front end for the midterm regression library: fit a model,
//! summarize a group, predict seat change at an approval rating, or emit the
//! full Markdown report with optional SVG plots.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use midterm::report::fmt_sig;
use midterm::{
    analyze_with_kind, filter_by_approval, fit_ols, interval_caveats, mean_response_interval,
    parse_dataset, prediction_interval, reference_dataset, render_markdown, render_scatter_svg,
    seat_phrase, seats_interval, slope_utility_test, summarize, ApprovalGroup, ElectionDataset,
    Error, IntervalKind, LinearFit, SlopeTest, SummaryStats, DEFAULT_FORECAST_APPROVAL,
    DEFAULT_LEVEL,
};

/// Exit code for malformed invocations (unknown flags, missing arguments,
/// out-of-range --level).
pub const EXIT_USAGE: i32 = 1;
/// Exit code for unreadable or invalid input data.
pub const EXIT_DATA: i32 = 2;
/// Exit code for models that cannot be fit or tested (all x equal, zero
/// residual variance).
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "midterm",
    version,
    color = clap::ColorChoice::Never,
    about = "Regression of midterm seat change on presidential approval",
    long_about = "Fits ordinary least squares models relating a president's \
                  pre-midterm approval rating to his party's congressional \
                  seat change, tests model utility, and computes confidence \
                  and prediction intervals."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit the regression for one approval group and test its utility
    Fit(FitArgs),
    /// Mean and standard deviation of both columns for one approval group
    Summary(SummaryArgs),
    /// Interval estimate of the seat change at a given approval rating
    Predict(PredictArgs),
    /// Full Markdown report over all three groups, with optional SVG plots
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// CSV file with header year,president,party,approval,seat_change, or
    /// "builtin" for the embedded 1946-2010 reference data
    #[arg(long)]
    input: String,

    /// Write results here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[command(flatten)]
    io: InputArgs,

    /// Which approval slice to fit
    #[arg(long, value_enum, default_value_t = GroupArg::All)]
    group: GroupArg,
}

#[derive(Debug, Args)]
struct SummaryArgs {
    #[command(flatten)]
    io: InputArgs,

    /// Which approval slice to summarize
    #[arg(long, value_enum, default_value_t = GroupArg::All)]
    group: GroupArg,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[command(flatten)]
    io: InputArgs,

    /// Which group's model to predict with (subgroup mismatches warn)
    #[arg(long, value_enum, default_value_t = GroupArg::All)]
    group: GroupArg,

    /// Approval rating to predict at
    #[arg(long)]
    approval: f64,

    /// Confidence level, strictly between 0 and 1
    #[arg(long, default_value_t = DEFAULT_LEVEL, value_parser = parse_level)]
    level: f64,

    /// Interval for the mean response or for one new observation
    #[arg(long = "interval-kind", value_enum, default_value_t = KindArg::Mean)]
    interval_kind: KindArg,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[command(flatten)]
    io: InputArgs,

    /// Approval rating the forecast section predicts at
    #[arg(long, default_value_t = DEFAULT_FORECAST_APPROVAL)]
    approval: f64,

    /// Confidence level, strictly between 0 and 1
    #[arg(long, default_value_t = DEFAULT_LEVEL, value_parser = parse_level)]
    level: f64,

    /// Interval for the mean response or for one new observation
    #[arg(long = "interval-kind", value_enum, default_value_t = KindArg::Mean)]
    interval_kind: KindArg,

    /// Directory to write scatter_<group>.svg plots into
    #[arg(long)]
    plots: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    #[value(name = "all")]
    All,
    #[value(name = "above_50")]
    Above50,
    #[value(name = "below_50")]
    Below50,
}

impl From<GroupArg> for ApprovalGroup {
    fn from(arg: GroupArg) -> Self {
        match arg {
            GroupArg::All => ApprovalGroup::All,
            GroupArg::Above50 => ApprovalGroup::Above50,
            GroupArg::Below50 => ApprovalGroup::Below50,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    #[value(name = "mean")]
    Mean,
    #[value(name = "individual")]
    Individual,
}

impl From<KindArg> for IntervalKind {
    fn from(arg: KindArg) -> Self {
        match arg {
            KindArg::Mean => IntervalKind::MeanResponse,
            KindArg::Individual => IntervalKind::IndividualPrediction,
        }
    }
}

fn parse_level(s: &str) -> Result<f64, String> {
    let level: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if level > 0.0 && level < 1.0 {
        Ok(level)
    } else {
        Err(format!("must be strictly between 0 and 1, got {level}"))
    }
}

/// Parses `argv` and runs the selected command. Results go to `stdout` (or
/// the `--output` path), diagnostics to `stderr`. Returns the process exit
/// code: 0 success, 1 usage, 2 bad data, 3 degenerate model.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };

    let outcome = match &cli.command {
        Command::Fit(args) => cmd_fit(args, stderr),
        Command::Summary(args) => cmd_summary(args, stderr),
        Command::Predict(args) => cmd_predict(args, stderr),
        Command::Report(args) => cmd_report(args, stderr),
    };

    match outcome {
        Ok((text, output)) => match deliver(&text, output.as_deref(), stdout) {
            Ok(()) => 0,
            Err(err) => {
                let _ = writeln!(stderr, "error: {err}");
                EXIT_DATA
            }
        },
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            exit_code_for(&err)
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::DegenerateDesign | Error::DegenerateTest(_) => EXIT_DEGENERATE,
        Error::Group { source, .. } => exit_code_for(source),
        _ => EXIT_DATA,
    }
}

fn deliver(text: &str, output: Option<&Path>, stdout: &mut dyn Write) -> midterm::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|err| Error::Domain(format!("cannot write {}: {err}", path.display()))),
        None => {
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn load_dataset(input: &str) -> midterm::Result<ElectionDataset> {
    if input == "builtin" {
        return Ok(reference_dataset());
    }
    let text = std::fs::read_to_string(input)
        .map_err(|err| Error::Domain(format!("cannot read {input}: {err}")))?;
    parse_dataset(&text)
}

fn fit_group(
    ds: &ElectionDataset,
    group: ApprovalGroup,
) -> midterm::Result<(ElectionDataset, LinearFit)> {
    let sub = filter_by_approval(ds, group);
    let fit = fit_ols(&sub.pairs()).map_err(|err| err.for_group(group))?;
    Ok((sub, fit))
}

fn fmt_stat(v: f64) -> String {
    fmt_sig(v, 6)
}

fn fmt_summary(v: f64) -> String {
    fmt_sig(v, 10)
}

fn model_equation(fit: &LinearFit) -> String {
    let sign = if fit.b < 0.0 { "-" } else { "+" };
    format!(
        "seats = {} {} {} * approval",
        fmt_stat(fit.a),
        sign,
        fmt_stat(fit.b.abs())
    )
}

fn verdict(test: &SlopeTest) -> &'static str {
    if test.reject_at_005 {
        "useful at α=0.05"
    } else {
        "not useful at α=0.05"
    }
}

type CmdOutput = midterm::Result<(String, Option<PathBuf>)>;

fn cmd_fit(args: &FitArgs, _stderr: &mut dyn Write) -> CmdOutput {
    let ds = load_dataset(&args.io.input)?;
    let group = ApprovalGroup::from(args.group);
    let (_, fit) = fit_group(&ds, group)?;
    let test = slope_utility_test(&fit)?;

    let mut out = String::new();
    out.push_str(&format!("group: {group}\n"));
    out.push_str(&format!("n: {}\n", fit.n));
    out.push_str(&format!("model: {}\n", model_equation(&fit)));
    out.push_str(&format!("a = {}\n", fmt_stat(fit.a)));
    out.push_str(&format!("b = {}\n", fmt_stat(fit.b)));
    out.push_str(&format!("r = {}\n", fmt_stat(fit.r)));
    out.push_str(&format!("r^2 = {}\n", fmt_stat(fit.r2)));
    out.push_str(&format!("s = {}\n", fmt_stat(fit.s)));
    out.push_str(&format!("se_b = {}\n", fmt_stat(fit.se_b)));
    out.push_str(&format!("df = {}\n", fit.df));
    out.push_str(&format!("t = {}\n", fmt_stat(test.t_stat)));
    out.push_str(&format!("p = {:.6}\n", test.p_two_sided));
    out.push_str(&format!("verdict: {}\n", verdict(&test)));
    Ok((out, args.io.output.clone()))
}

fn cmd_summary(args: &SummaryArgs, _stderr: &mut dyn Write) -> CmdOutput {
    let ds = load_dataset(&args.io.input)?;
    let group = ApprovalGroup::from(args.group);
    let sub = filter_by_approval(&ds, group);
    if sub.is_empty() {
        return Err(Error::EmptyDataset.for_group(group));
    }
    let approval = summarize(&sub.approvals())?;
    let seats = summarize(&sub.seat_changes())?;

    let line = |name: &str, stats: &SummaryStats| {
        let sd = stats.sd.map_or_else(|| "n/a".to_string(), fmt_summary);
        format!("{name}: mean {}, sd {sd}\n", fmt_summary(stats.mean))
    };
    let mut out = String::new();
    out.push_str(&format!("group: {group}\n"));
    out.push_str(&format!("n: {}\n", sub.len()));
    out.push_str(&line("approval", &approval));
    out.push_str(&line("seat_change", &seats));
    Ok((out, args.io.output.clone()))
}

fn cmd_predict(args: &PredictArgs, stderr: &mut dyn Write) -> CmdOutput {
    let ds = load_dataset(&args.io.input)?;
    let group = ApprovalGroup::from(args.group);
    let (_, fit) = fit_group(&ds, group)?;
    let kind = IntervalKind::from(args.interval_kind);

    for caveat in interval_caveats(&fit, args.approval, Some(group)) {
        let _ = writeln!(stderr, "warning: {caveat}");
    }

    let interval = match kind {
        IntervalKind::MeanResponse => mean_response_interval(&fit, args.approval, args.level)?,
        IntervalKind::IndividualPrediction => prediction_interval(&fit, args.approval, args.level)?,
    };
    let (lo, hi) = seats_interval(&interval);

    let mut out = String::new();
    out.push_str(&format!("model: {group} ({})\n", model_equation(&fit)));
    out.push_str(&format!("kind: {}\n", interval.kind));
    out.push_str(&format!("level: {}\n", interval.level));
    out.push_str(&format!("approval: {}\n", interval.x0));
    out.push_str(&format!("center: {:.2} seats\n", interval.center));
    out.push_str(&format!("margin: {:.2} seats\n", interval.margin));
    out.push_str(&format!(
        "interval: [{:.2}, {:.2}]\n",
        interval.lower, interval.upper
    ));
    out.push_str(&format!("seats: {}\n", seat_phrase(lo, hi)));
    Ok((out, args.io.output.clone()))
}

fn cmd_report(args: &ReportArgs, stderr: &mut dyn Write) -> CmdOutput {
    let ds = load_dataset(&args.io.input)?;
    let report = analyze_with_kind(
        &ds,
        args.approval,
        args.level,
        IntervalKind::from(args.interval_kind),
    )?;
    let markdown = render_markdown(&report);

    if let Some(dir) = &args.plots {
        std::fs::create_dir_all(dir)
            .map_err(|err| Error::Domain(format!("cannot create {}: {err}", dir.display())))?;
        for group_report in report.groups() {
            let sub = filter_by_approval(&ds, group_report.group);
            if sub.is_empty() {
                continue;
            }
            let svg = render_scatter_svg(&sub, group_report.fit.as_ref())?;
            let path = dir.join(format!("scatter_{}.svg", group_report.group));
            std::fs::write(&path, svg)
                .map_err(|err| Error::Domain(format!("cannot write {}: {err}", path.display())))?;
            let _ = writeln!(stderr, "wrote {}", path.display());
        }
    }

    Ok((markdown, args.io.output.clone()))
}
