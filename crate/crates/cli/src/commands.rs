use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use fattail::market_data::{parse_ohlcv_csv, parse_returns, simple_returns, write_returns, PriceField, ReturnSeries};
use fattail::report::{analyze_returns, ecdf_csv, ecdf_svg, ecdf_table, histogram, render_markdown, AnalysisReport};
use fattail::{sample_laplace, sample_normal, ErrorKind, LaplaceParams, NormalParams, RngSeed};

/// Normality diagnostics and Normal vs Laplace fits for daily returns.
#[derive(Debug, Parser)]
#[command(name = "fattail", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Skew, kurtosis, Shapiro-Wilk and Normal/Laplace fit scores per input.
    Analyze(AnalyzeArgs),
    /// Draw a seeded Normal or Laplace sample, one value per line.
    Sample(SampleArgs),
    /// ECDF against both fitted CDFs, as CSV or SVG.
    Ecdf(EcdfArgs),
    /// Equal-width histogram of returns as JSON.
    Hist(HistArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Yahoo-format OHLCV CSV, or bare returns with --returns-only.
    #[arg(long, required = true)]
    pub input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = PriceColumn::AdjClose)]
    pub price_column: PriceColumn,
    /// Treat input as one return per line, without a header.
    #[arg(long)]
    pub returns_only: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PriceColumn {
    #[value(name = "adj_close")]
    AdjClose,
    Close,
}

impl From<PriceColumn> for PriceField {
    fn from(c: PriceColumn) -> Self {
        match c {
            PriceColumn::AdjClose => PriceField::AdjClose,
            PriceColumn::Close => PriceField::Close,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReportFormat {
    Json,
    Markdown,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Dist {
    Normal,
    Laplace,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub dist: Dist,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    /// Location: the mean for normal, the centre for laplace.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PlotFormat {
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct EcdfArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub format: PlotFormat,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct HistArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 100)]
    pub bins: usize,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io { path: PathBuf, source: std::io::Error },
    Compute { path: Option<PathBuf>, source: fattail::Error },
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Io { .. } => 2,
            Failure::Compute { source, .. } => match source.kind() {
                ErrorKind::Data => 2,
                ErrorKind::Computation => 3,
                ErrorKind::InvalidArgument => 1,
            },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "usage error: {msg}"),
            Failure::Io { path, source } => write!(f, "{}: {source}", path.display()),
            Failure::Compute { path: Some(path), source } => write!(f, "{}: {source}", path.display()),
            Failure::Compute { path: None, source } => write!(f, "{source}"),
        }
    }
}

fn in_file(path: &Path) -> impl Fn(fattail::Error) -> Failure + '_ {
    move |source| Failure::Compute { path: Some(path.to_owned()), source }
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Sample(args) => sample(args),
        Command::Ecdf(args) => ecdf(args),
        Command::Hist(args) => hist(args),
    }
}

fn symbol_for(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "input".into())
}

/// Reads one input file into a return series plus any skipped-row warnings.
pub fn load_returns(path: &Path, field: PriceField, returns_only: bool) -> Result<(ReturnSeries, Vec<String>), Failure> {
    let text = fs::read_to_string(path).map_err(|source| Failure::Io { path: path.to_owned(), source })?;
    let symbol = symbol_for(path);
    if returns_only {
        return Ok((parse_returns(&text, &symbol).map_err(in_file(path))?, Vec::new()));
    }
    let parsed = parse_ohlcv_csv(&text, &symbol).map_err(in_file(path))?;
    let returns = simple_returns(&parsed.series, field).map_err(in_file(path))?;
    Ok((returns, parsed.warnings.iter().map(ToString::to_string).collect()))
}

fn single_input(args: &InputArgs) -> Result<&Path, Failure> {
    match args.input.as_slice() {
        [one] => Ok(one),
        _ => Err(Failure::Usage("this command takes exactly one --input".into())),
    }
}

fn write_output(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|source| Failure::Io { path: path.to_owned(), source })
}

fn analyze_one(path: &Path, field: PriceField, returns_only: bool) -> Result<AnalysisReport, Failure> {
    let (returns, warnings) = load_returns(path, field, returns_only)?;
    analyze_returns(&returns, warnings).map_err(in_file(path))
}

fn analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let field = PriceField::from(args.input.price_column);
    let returns_only = args.input.returns_only;
    let paths = &args.input.input;

    let reports: Vec<AnalysisReport> = std::thread::scope(|scope| {
        let handles: Vec<_> =
            paths.iter().map(|p| scope.spawn(move || analyze_one(p, field, returns_only))).collect();
        handles.into_iter().map(|h| h.join().expect("analysis thread panicked")).collect::<Result<_, _>>()
    })?;

    let rendered = match args.format {
        ReportFormat::Markdown => render_markdown(&reports),
        ReportFormat::Json => {
            let mut json = if let [only] = reports.as_slice() {
                serde_json::to_string_pretty(only)
            } else {
                let mut keyed = BTreeMap::new();
                for r in &reports {
                    if keyed.insert(r.symbol.clone(), r).is_some() {
                        return Err(Failure::Usage(format!("two inputs share the symbol `{}`", r.symbol)));
                    }
                }
                serde_json::to_string_pretty(&keyed)
            }
            .expect("reports serialise");
            json.push('\n');
            json
        }
    };
    match &args.output {
        Some(path) => write_output(path, &rendered),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(rendered.as_bytes())
                .map_err(|source| Failure::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

fn sample(args: SampleArgs) -> Result<(), Failure> {
    if args.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let usage = |e: fattail::Error| Failure::Usage(e.to_string());
    let values = match args.dist {
        Dist::Normal => {
            if args.lambda.is_some() {
                return Err(Failure::Usage("--lambda applies to the laplace distribution".into()));
            }
            let p = NormalParams::new(args.mu, args.sigma.unwrap_or(1.0)).map_err(usage)?;
            sample_normal(args.n, &p, RngSeed(args.seed))
        }
        Dist::Laplace => {
            if args.sigma.is_some() {
                return Err(Failure::Usage("--sigma applies to the normal distribution".into()));
            }
            let p = LaplaceParams::new(args.mu, args.lambda.unwrap_or(1.0)).map_err(usage)?;
            sample_laplace(args.n, &p, RngSeed(args.seed))
        }
    };
    write_output(&args.output, &write_returns(&values))
}

fn ecdf(args: EcdfArgs) -> Result<(), Failure> {
    let path = single_input(&args.input)?;
    let (returns, _) = load_returns(path, args.input.price_column.into(), args.input.returns_only)?;
    let rendered = match args.format {
        PlotFormat::Csv => ecdf_table(&returns.values).map(|rows| ecdf_csv(&rows)),
        PlotFormat::Svg => ecdf_svg(&format!("{}: ECDF with fitted Normal and Laplace CDFs", returns.symbol), &returns.values),
    }
    .map_err(in_file(path))?;
    write_output(&args.output, &rendered)
}

fn hist(args: HistArgs) -> Result<(), Failure> {
    if args.bins == 0 {
        return Err(Failure::Usage("--bins must be at least 1".into()));
    }
    let path = single_input(&args.input)?;
    let (returns, _) = load_returns(path, args.input.price_column.into(), args.input.returns_only)?;
    let data = histogram(&returns.values, args.bins).map_err(in_file(path))?;
    let mut json = serde_json::to_string_pretty(&data).expect("histogram serialises");
    json.push('\n');
    write_output(&args.output, &json)
}
