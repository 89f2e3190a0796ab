//! Command-line front end: distribution dumps, averages, maxima, bad-case
//! probabilities, kernels, partition cost tables, enumeration oracles,
//! Monte-Carlo simulation, the adversary, benchmarks and file sorting,
//! with CSV (and simple SVG) output.

mod plot;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qsprob_core::analysis::{
    bad_case_probability, expected_time_to_event, iliopoulos_sigma, worst_case_bound_check,
    BadCaseQuery,
};
use qsprob_core::empirics::{
    benchmark, enumerate_partition_stats, enumerate_sort_histogram, expected_bin_masses,
    killer_adversary, model_sort_config, replay_comparisons, simulate_pivot_positions,
    DatasetKind, DatasetSpec, ElementKind, SorterKind,
};
use qsprob_core::numerics::WideScalar;
use qsprob_core::pivot_models::{
    pivot_kernel, pivot_kernel_exact_mom, pivot_kernel_forced_m, Model, ModelConfig,
};
use qsprob_core::recurrences::{
    average_table, max_table, DistributionTable, ScalarTable, SelectionCostMode,
};
use qsprob_core::sorters::{
    heapsort, insertion_sort, quicksort_with, HeapsortVariant, NaturalOrder, PartitionScheme,
};

#[derive(Parser)]
#[command(
    name = "qsprob",
    about = "Numerical analysis of Quicksort comparison counts",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Svg,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Pivot-selection model (1..5)
    #[arg(long, default_value_t = 1)]
    model: u8,
    /// Minimum value of n / sample-size for the adaptive models
    #[arg(long, default_value_t = 5)]
    qmin: u32,
    /// Largest subarray sorted by insertion in model 5
    #[arg(long, default_value_t = 9)]
    nbmax: u32,
    /// Output file (stdout when omitted); written atomically
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Significant digits for real-valued columns
    #[arg(long, default_value_t = 6)]
    digits: usize,
    /// Permit long computations (distribution tables beyond n = 200)
    #[arg(long)]
    allow_long: bool,
    /// Cap the worker-thread count
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Frequency distribution of comparisons at one n
    Dist {
        #[command(flatten)]
        common: CommonOpts,
        /// Number of elements
        #[arg(long)]
        n: u64,
    },
    /// Average comparisons over a range of n
    Avg {
        #[command(flatten)]
        common: CommonOpts,
        /// n values: "1000", "2..10" or "1000,2000,5000"
        #[arg(long)]
        n: String,
        /// Selection-cost convention in the recurrence
        #[arg(long, value_enum, default_value_t = SelectionMode::Shift)]
        selection_cost: SelectionMode,
    },
    /// Worst-case comparisons up to a bound
    Max {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        nmax: u64,
        /// Emit every k-th row only
        #[arg(long, default_value_t = 1)]
        stride: u64,
        /// Emit the growth summary instead of the table
        #[arg(long)]
        check: bool,
    },
    /// Probability of needing more than tau times the average
    Badprob {
        #[command(flatten)]
        common: CommonOpts,
        /// n values: "100", "2..100" or "100,250,500"
        #[arg(long)]
        n: String,
        /// Threshold factors, e.g. "1.1,1.25,1.5,2.0"
        #[arg(long)]
        tau: String,
        /// Append the expected-time column (trials every millisecond)
        #[arg(long)]
        expected_time: bool,
    },
    /// Standard deviations against the closed-form cross-check
    Sigma {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        nmax: u64,
    },
    /// Pivot-position kernel at one n
    Kernel {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        n: u64,
        /// Force a fixed sample size instead of the adaptive rule
        #[arg(long)]
        force_m: Option<u64>,
        /// Add the exact 9-element-sample kernel as a column
        #[arg(long)]
        durand: bool,
    },
    /// Partitioning cost tables from exact permutation counting
    Tables {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, value_enum)]
        which: TablesKind,
        /// n values (2..11 each)
        #[arg(long)]
        n: String,
    },
    /// Exact sorter comparison histogram over all n! permutations
    Oracle {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        n: u64,
    },
    /// Monte-Carlo pivot-position histogram
    Simulate {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        /// Bin width
        #[arg(long, default_value_t = 10)]
        bin: usize,
        #[arg(long, default_value_t = 20150715)]
        seed: u64,
        #[arg(long)]
        force_m: Option<u64>,
    },
    /// Comparison-count adversary with replay validation
    Adversary {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        n: u64,
        /// Also dump the constructed input (one value per line)
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Wall-clock benchmark over dataset generators
    Bench {
        #[command(flatten)]
        common: CommonOpts,
        /// Element counts, e.g. "100000,1000000"
        #[arg(long)]
        n: String,
        /// Comma list of sorters, or "all"
        #[arg(long, default_value = "all")]
        sorters: String,
        /// Comma list of generators, or "all"
        #[arg(long, default_value = "all")]
        generators: String,
        #[arg(long, value_enum, default_value_t = ElementArg::Int4)]
        element: ElementArg,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 20150715)]
        seed: u64,
    },
    /// Sort a file of integers
    Sort {
        #[command(flatten)]
        common: CommonOpts,
        /// Sorter: model1..model5, heap-classic, heap-bu, insertion
        #[arg(long)]
        alg: String,
        #[arg(long)]
        threeway: bool,
        /// Input file, one integer per line
        #[arg(long)]
        input: PathBuf,
        /// Print run statistics
        #[arg(long)]
        stats: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SelectionMode {
    /// Worst case as a fixed shift (the distribution engine's convention)
    Shift,
    /// Exact expected selection cost
    Mean,
}

#[derive(Clone, Copy, ValueEnum)]
enum TablesKind {
    /// Average comparisons and movements per scheme
    Partition,
    /// Comparison-count histograms per scheme
    Histogram,
}

#[derive(Clone, Copy, ValueEnum)]
enum ElementArg {
    Int4,
    Float8,
    Record32,
}

enum AppError {
    Usage(String),
    Io(std::io::Error),
    Internal(String),
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

impl From<qsprob_core::Error> for AppError {
    fn from(e: qsprob_core::Error) -> Self {
        AppError::Internal(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| run(cli.command));
    let code = match outcome {
        Ok(Ok(())) => 0,
        Ok(Err(AppError::Usage(msg))) => {
            eprintln!("error: {msg}");
            2
        }
        Ok(Err(AppError::Io(e))) => {
            eprintln!("error: --out not writable: {e}");
            2
        }
        Ok(Err(AppError::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            1
        }
        Err(_) => 1,
    };
    std::process::exit(code);
}

fn run(cmd: Command) -> Result<(), AppError> {
    match cmd {
        Command::Dist { common, n } => cmd_dist(&common, n),
        Command::Avg {
            common,
            n,
            selection_cost,
        } => cmd_avg(&common, &n, selection_cost),
        Command::Max {
            common,
            nmax,
            stride,
            check,
        } => cmd_max(&common, nmax, stride, check),
        Command::Badprob {
            common,
            n,
            tau,
            expected_time,
        } => cmd_badprob(&common, &n, &tau, expected_time),
        Command::Sigma { common, nmax } => cmd_sigma(&common, nmax),
        Command::Kernel {
            common,
            n,
            force_m,
            durand,
        } => cmd_kernel(&common, n, force_m, durand),
        Command::Tables { common, which, n } => cmd_tables(&common, which, &n),
        Command::Oracle { common, n } => cmd_oracle(&common, n),
        Command::Simulate {
            common,
            n,
            trials,
            bin,
            seed,
            force_m,
        } => cmd_simulate(&common, n, trials, bin, seed, force_m),
        Command::Adversary { common, n, dump } => cmd_adversary(&common, n, dump),
        Command::Bench {
            common,
            n,
            sorters,
            generators,
            element,
            repeats,
            seed,
        } => cmd_bench(&common, &n, &sorters, &generators, element, repeats, seed),
        Command::Sort {
            common,
            alg,
            threeway,
            input,
            stats,
        } => cmd_sort(&common, &alg, threeway, &input, stats),
    }
}

// ---------------------------------------------------------------- helpers

fn model_config(common: &CommonOpts) -> Result<ModelConfig, AppError> {
    let model = Model::from_id(common.model)
        .ok_or_else(|| AppError::Usage("--model must be 1..5".into()))?;
    if common.qmin < 1 {
        return Err(AppError::Usage("--qmin must be >= 1".into()));
    }
    if common.nbmax < 1 {
        return Err(AppError::Usage("--nbmax must be >= 1".into()));
    }
    if !(1..=17).contains(&common.digits) {
        return Err(AppError::Usage("--digits must be in 1..17".into()));
    }
    if let Some(t) = common.threads {
        if t == 0 {
            return Err(AppError::Usage("--threads must be >= 1".into()));
        }
        // Build errors mean the pool already exists; that is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    Ok(ModelConfig::new(model, common.qmin, common.nbmax))
}

fn parse_u64_list(spec: &str, flag: &str) -> Result<Vec<u64>, AppError> {
    let spec = spec.trim();
    if let Some((a, b)) = spec.split_once("..") {
        let lo: u64 = a
            .trim()
            .parse()
            .map_err(|_| AppError::Usage(format!("{flag}: bad range start `{a}`")))?;
        let hi: u64 = b
            .trim()
            .parse()
            .map_err(|_| AppError::Usage(format!("{flag}: bad range end `{b}`")))?;
        if lo > hi {
            return Err(AppError::Usage(format!("{flag}: empty range {lo}..{hi}")));
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| AppError::Usage(format!("{flag}: bad value `{p}`")))
        })
        .collect()
}

fn parse_f64_list(spec: &str, flag: &str) -> Result<Vec<f64>, AppError> {
    spec.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| AppError::Usage(format!("{flag}: bad value `{p}`")))
        })
        .collect()
}

/// Atomic file write: everything lands or nothing does.
fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), AppError> {
    match out {
        None => {
            print!("{content}");
            std::io::stdout().flush()?;
            Ok(())
        }
        Some(path) => {
            let tmp = path.with_extension("tmp");
            std::fs::write(&tmp, content)?;
            std::fs::rename(&tmp, path)?;
            Ok(())
        }
    }
}

fn fmt_ws(w: WideScalar, digits: usize) -> String {
    w.to_decimal(digits)
}

fn fmt_f64(x: f64, digits: usize) -> String {
    if x < 0.0 {
        format!("-{}", WideScalar::from_f64(-x).to_decimal(digits))
    } else {
        WideScalar::from_f64(x).to_decimal(digits)
    }
}

const LONG_RUN_N: u64 = 200;

fn guard_long(common: &CommonOpts, n: u64) -> Result<(), AppError> {
    if n > LONG_RUN_N && !common.allow_long {
        return Err(AppError::Usage(format!(
            "distribution tables beyond n = {LONG_RUN_N} take a long time; pass --allow-long \
             (requested n = {n})"
        )));
    }
    Ok(())
}

/// Table construction with progress and a crude remaining-time estimate on
/// stderr (cost grows roughly like n^6).
fn build_table_with_progress(cfg: ModelConfig, n_max: u64) -> DistributionTable {
    let start = Instant::now();
    let mut last = Instant::now();
    DistributionTable::build_with_progress(cfg, n_max, |n| {
        if n_max >= 100 && last.elapsed().as_secs_f64() > 2.0 && n > 0 {
            last = Instant::now();
            let done = (n as f64 / n_max as f64).powi(6).max(1e-9);
            let elapsed = start.elapsed().as_secs_f64();
            eprintln!(
                "n = {n}/{n_max}, elapsed {elapsed:.0}s, remaining about {:.0}s",
                elapsed * (1.0 - done) / done
            );
        }
    })
}

fn reject_svg(common: &CommonOpts) -> Result<(), AppError> {
    if matches!(common.format, OutputFormat::Svg) {
        return Err(AppError::Usage(
            "--format svg is not available for this subcommand".into(),
        ));
    }
    Ok(())
}

// ------------------------------------------------------------ subcommands

fn cmd_dist(common: &CommonOpts, n: u64) -> Result<(), AppError> {
    let cfg = model_config(common)?;
    guard_long(common, n)?;
    let table = build_table_with_progress(cfg, n);
    let f = table.frequency(n);
    let total = f.total();
    match common.format {
        OutputFormat::Csv => {
            let mut out = String::from("j,frequency,probability\n");
            for (j, w) in f.iter() {
                out.push_str(&format!(
                    "{j},{},{}\n",
                    fmt_ws(w, common.digits),
                    fmt_ws(w.div(total), common.digits)
                ));
            }
            write_output(&common.out, &out)
        }
        OutputFormat::Svg => {
            let points: Vec<(f64, f64)> = f
                .iter()
                .map(|(j, w)| (j as f64, w.div(total).to_f64()))
                .collect();
            let svg = plot::line_plot(
                &[plot::Series {
                    name: format!("model {} n = {n}", cfg.model.id()),
                    points,
                }],
                &plot::PlotOptions {
                    title: format!("Comparison-count distribution, model {}", cfg.model.id()),
                    x_label: "comparisons".into(),
                    y_label: "log10 probability".into(),
                    log_y: true,
                },
            );
            write_output(&common.out, &svg)
        }
    }
}

fn cmd_avg(common: &CommonOpts, n_spec: &str, mode: SelectionMode) -> Result<(), AppError> {
    let cfg = model_config(common)?;
    let ns = parse_u64_list(n_spec, "--n")?;
    let n_max = *ns.iter().max().unwrap_or(&0);
    let mode = match mode {
        SelectionMode::Shift => SelectionCostMode::FixedShift,
        SelectionMode::Mean => SelectionCostMode::ExactMean,
    };
    let avg = average_table(&cfg, n_max, mode);
    match common.format {
        OutputFormat::Csv => {
            let mut out = String::from("n,avg_comparisons\n");
            for &n in &ns {
                out.push_str(&format!("{n},{}\n", fmt_f64(avg[n as usize], common.digits)));
            }
            write_output(&common.out, &out)
        }
        OutputFormat::Svg => {
            let points: Vec<(f64, f64)> =
                ns.iter().map(|&n| (n as f64, avg[n as usize])).collect();
            let svg = plot::line_plot(
                &[plot::Series {
                    name: format!("model {}", cfg.model.id()),
                    points,
                }],
                &plot::PlotOptions {
                    title: "Average comparisons".into(),
                    x_label: "n".into(),
                    y_label: "comparisons".into(),
                    log_y: false,
                },
            );
            write_output(&common.out, &svg)
        }
    }
}

fn cmd_max(common: &CommonOpts, nmax: u64, stride: u64, check: bool) -> Result<(), AppError> {
    let cfg = model_config(common)?;
    if stride == 0 {
        return Err(AppError::Usage("--stride must be >= 1".into()));
    }
    let maxima = max_table(&cfg, nmax)?;
    if check {
        reject_svg(common)?;
        let st = ScalarTable {
            cfg,
            averages: Vec::new(),
            maxima,
        };
        let report = worst_case_bound_check(&st);
        let mut out = String::from(
            "model,n_max,power_law_max_ratio,power_law_arg_n,quadratic_coefficient\n",
        );
        out.push_str(&format!(
            "{},{nmax},{},{},{}\n",
            cfg.model.id(),
            fmt_f64(report.power_law_max_ratio, common.digits),
            report.power_law_arg_n,
            fmt_f64(report.quadratic_coefficient, common.digits)
        ));
        return write_output(&common.out, &out);
    }
    match common.format {
        OutputFormat::Csv => {
            let mut out = String::from("n,max_comparisons\n");
            let mut n = 0u64;
            while n <= nmax {
                out.push_str(&format!("{n},{}\n", maxima[n as usize]));
                n += stride;
            }
            write_output(&common.out, &out)
        }
        OutputFormat::Svg => {
            let points: Vec<(f64, f64)> = (0..=nmax)
                .step_by(stride as usize)
                .map(|n| (n as f64, maxima[n as usize] as f64))
                .collect();
            let svg = plot::line_plot(
                &[plot::Series {
                    name: format!("model {}", cfg.model.id()),
                    points,
                }],
                &plot::PlotOptions {
                    title: "Maximum comparisons".into(),
                    x_label: "n".into(),
                    y_label: "comparisons".into(),
                    log_y: false,
                },
            );
            write_output(&common.out, &svg)
        }
    }
}

fn cmd_badprob(
    common: &CommonOpts,
    n_spec: &str,
    tau_spec: &str,
    expected_time: bool,
) -> Result<(), AppError> {
    let cfg = model_config(common)?;
    let ns = parse_u64_list(n_spec, "--n")?;
    let taus = parse_f64_list(tau_spec, "--tau")?;
    for &t in &taus {
        if t <= 1.0 {
            return Err(AppError::Usage(format!("--tau must be > 1, got {t}")));
        }
    }
    let n_max = *ns.iter().max().unwrap_or(&0);
    guard_long(common, n_max)?;
    let table = build_table_with_progress(cfg, n_max);
    match common.format {
        OutputFormat::Csv => {
            let mut out = String::from(if expected_time {
                "n,tau,probability,expected_time\n"
            } else {
                "n,tau,probability\n"
            });
            for &n in &ns {
                for &tau in &taus {
                    let p = bad_case_probability(&table, &BadCaseQuery::new(n, tau));
                    out.push_str(&format!("{n},{tau},{}", fmt_ws(p, common.digits)));
                    if expected_time {
                        out.push_str(&format!(",{}", expected_time_to_event(p, 1.0)));
                    }
                    out.push('\n');
                }
            }
            write_output(&common.out, &out)
        }
        OutputFormat::Svg => {
            let series: Vec<plot::Series> = taus
                .iter()
                .map(|&tau| plot::Series {
                    name: format!("tau = {tau}"),
                    points: ns
                        .iter()
                        .map(|&n| {
                            let p = bad_case_probability(&table, &BadCaseQuery::new(n, tau));
                            (n as f64, if p.is_zero() { f64::NAN } else { p.to_f64() })
                        })
                        .collect(),
                })
                .collect();
            let svg = plot::line_plot(
                &series,
                &plot::PlotOptions {
                    title: format!("Bad-case probability, model {}", cfg.model.id()),
                    x_label: "n".into(),
                    y_label: "log10 p".into(),
                    log_y: true,
                },
            );
            write_output(&common.out, &svg)
        }
    }
}

fn cmd_sigma(common: &CommonOpts, nmax: u64) -> Result<(), AppError> {
    let cfg = model_config(common)?;
    guard_long(common, nmax)?;
    let table = build_table_with_progress(cfg, nmax);
    let mut rows: Vec<(u64, f64, f64, f64)> = Vec::new();
    for n in 2..=nmax {
        let sigma = table.frequency(n).stddev()?.to_f64();
        let reference = iliopoulos_sigma(n)?;
        let rel = if reference > 0.0 {
            (sigma - reference) / reference
        } else {
            0.0
        };
        rows.push((n, sigma, reference, rel));
    }
    match common.format {
        OutputFormat::Csv => {
            let mut out = String::from("n,sigma,iliopoulos,rel_diff\n");
            for (n, s, r, d) in rows {
                out.push_str(&format!(
                    "{n},{},{},{}\n",
                    fmt_f64(s, common.digits),
                    fmt_f64(r, common.digits),
                    fmt_f64(d, common.digits)
                ));
            }
            write_output(&common.out, &out)
        }
        OutputFormat::Svg => {
            let svg = plot::line_plot(
                &[
                    plot::Series {
                        name: format!("sigma, model {}", cfg.model.id()),
                        points: rows.iter().map(|&(n, s, _, _)| (n as f64, s)).collect(),
                    },
                    plot::Series {
                        name: "closed form".into(),
                        points: rows.iter().map(|&(n, _, r, _)| (n as f64, r)).collect(),
                    },
                ],
                &plot::PlotOptions {
                    title: "Standard deviation of comparisons".into(),
                    x_label: "n".into(),
                    y_label: "sigma".into(),
                    log_y: false,
                },
            );
            write_output(&common.out, &svg)
        }
    }
}

fn cmd_kernel(
    common: &CommonOpts,
    n: u64,
    force_m: Option<u64>,
    durand: bool,
) -> Result<(), AppError> {
    let cfg = model_config(common)?;
    if n < 2 {
        return Err(AppError::Usage("--n must be >= 2".into()));
    }
    let kernel = match force_m {
        Some(m) => pivot_kernel_forced_m(n, m),
        None => pivot_kernel(&cfg, n),
    };
    let exact = if durand {
        Some(pivot_kernel_exact_mom(n)?)
    } else {
        None
    };
    match common.format {
        OutputFormat::Csv => {
            let mut out = String::from(if durand { "i,p,p_exact\n" } else { "i,p\n" });
            for i in 0..n {
                out.push_str(&format!("{i},{}", fmt_ws(kernel.get(i), common.digits)));
                if let Some(e) = &exact {
                    out.push_str(&format!(",{}", fmt_ws(e.get(i), common.digits)));
                }
                out.push('\n');
            }
            write_output(&common.out, &out)
        }
        OutputFormat::Svg => {
            let mut series = vec![plot::Series {
                name: "kernel".into(),
                points: (0..n).map(|i| (i as f64, kernel.get(i).to_f64())).collect(),
            }];
            if let Some(e) = &exact {
                series.push(plot::Series {
                    name: "exact".into(),
                    points: (0..n).map(|i| (i as f64, e.get(i).to_f64())).collect(),
                });
            }
            let svg = plot::line_plot(
                &series,
                &plot::PlotOptions {
                    title: format!("Pivot-position kernel at n = {n}"),
                    x_label: "final pivot index".into(),
                    y_label: "p".into(),
                    log_y: false,
                },
            );
            write_output(&common.out, &svg)
        }
    }
}

const ALL_SCHEMES: [(PartitionScheme, &str); 5] = [
    (PartitionScheme::SweepSimple, "sweep-simple"),
    (PartitionScheme::SweepExtended, "sweep-extended"),
    (PartitionScheme::ClassicCollision, "classic-collision"),
    (
        PartitionScheme::ClassicCollisionExtended,
        "classic-collision-extended",
    ),
    (PartitionScheme::NewCollision, "collision-new"),
];

fn cmd_tables(common: &CommonOpts, which: TablesKind, n_spec: &str) -> Result<(), AppError> {
    reject_svg(common)?;
    let ns = parse_u64_list(n_spec, "--n")?;
    for &n in &ns {
        if !(2..=11).contains(&n) {
            return Err(AppError::Usage(format!(
                "--n: exact counting over n! permutations is capped at 2..11, got {n}"
            )));
        }
    }
    let mut out = String::new();
    match which {
        TablesKind::Partition => {
            out.push_str("algorithm,n,comparisons_avg,movements_avg\n");
            for (scheme, name) in ALL_SCHEMES {
                for &n in &ns {
                    let e = enumerate_partition_stats(scheme, n as usize);
                    out.push_str(&format!(
                        "{name},{n},{:.3},{:.3}\n",
                        e.comparison_avg(),
                        e.movement_avg()
                    ));
                }
            }
        }
        TablesKind::Histogram => {
            out.push_str("algorithm,n,comparisons,frequency\n");
            for (scheme, name) in ALL_SCHEMES {
                for &n in &ns {
                    let e = enumerate_partition_stats(scheme, n as usize);
                    for (c, f) in &e.histogram {
                        out.push_str(&format!("{name},{n},{c},{f}\n"));
                    }
                }
            }
        }
    }
    write_output(&common.out, &out)
}

fn cmd_oracle(common: &CommonOpts, n: u64) -> Result<(), AppError> {
    reject_svg(common)?;
    let cfg = model_config(common)?;
    if !(2..=10).contains(&n) {
        return Err(AppError::Usage(
            "--n: the oracle enumerates n! permutations, 2..10 only".into(),
        ));
    }
    let hist = enumerate_sort_histogram(&cfg, n as usize);
    // Cross-check against the recurrence while we have both in hand.
    let table = DistributionTable::build(cfg, n);
    let f = table.frequency(n);
    let mut exact_match = true;
    for j in f.lo()..=f.hi() {
        let fromtable = f.get(j).to_f64();
        let enumerated = hist.get(&j).copied().unwrap_or(0) as f64;
        if (fromtable - enumerated).abs() > 1e-6 * enumerated.max(1.0) {
            exact_match = false;
        }
    }
    let mut out = String::from("j,frequency,recurrence_frequency\n");
    for (&j, &c) in &hist {
        out.push_str(&format!("{j},{c},{}\n", fmt_ws(f.get(j), common.digits)));
    }
    write_output(&common.out, &out)?;
    if !exact_match {
        return Err(AppError::Internal(
            "enumerated histogram deviates from the recurrence".into(),
        ));
    }
    eprintln!("oracle, model {}, n = {n}: exact match with the recurrence", cfg.model.id());
    Ok(())
}

fn cmd_simulate(
    common: &CommonOpts,
    n: u64,
    trials: u64,
    bin: usize,
    seed: u64,
    force_m: Option<u64>,
) -> Result<(), AppError> {
    let cfg = model_config(common)?;
    if n < 2 {
        return Err(AppError::Usage("--n must be >= 2".into()));
    }
    if bin == 0 {
        return Err(AppError::Usage("--bin must be >= 1".into()));
    }
    if trials == 0 {
        return Err(AppError::Usage("--trials must be >= 1".into()));
    }
    let h = simulate_pivot_positions(&cfg, n as usize, trials, bin, seed, force_m.map(|m| m as usize));
    let kernel = match force_m {
        Some(m) => pivot_kernel_forced_m(n, m),
        None => pivot_kernel(&cfg, n),
    };
    let expected = expected_bin_masses(&kernel, bin);
    match common.format {
        OutputFormat::Csv => {
            let mut out = String::from("bin_lo,bin_hi,count,expected\n");
            for b in 0..h.bins() {
                let r = h.bin_range(b);
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.start,
                    r.end,
                    h.counts[b],
                    fmt_f64(expected[b] * trials as f64, common.digits)
                ));
            }
            write_output(&common.out, &out)
        }
        OutputFormat::Svg => {
            let svg = plot::line_plot(
                &[
                    plot::Series {
                        name: "simulated".into(),
                        points: (0..h.bins())
                            .map(|b| (h.bin_range(b).start as f64, h.counts[b] as f64))
                            .collect(),
                    },
                    plot::Series {
                        name: "kernel".into(),
                        points: (0..h.bins())
                            .map(|b| (h.bin_range(b).start as f64, expected[b] * trials as f64))
                            .collect(),
                    },
                ],
                &plot::PlotOptions {
                    title: format!("Pivot positions, model {}, n = {n}", cfg.model.id()),
                    x_label: "final pivot index".into(),
                    y_label: "count per bin".into(),
                    log_y: false,
                },
            );
            write_output(&common.out, &svg)
        }
    }
}

fn cmd_adversary(common: &CommonOpts, n: u64, dump: Option<PathBuf>) -> Result<(), AppError> {
    reject_svg(common)?;
    let cfg = model_config(common)?;
    if n < 2 {
        return Err(AppError::Usage("--n must be >= 2".into()));
    }
    let sort_cfg = model_sort_config(&cfg, false);
    let outcome = killer_adversary(&sort_cfg, n as usize);
    let replay = replay_comparisons(&sort_cfg, &outcome.input);
    if let Some(path) = dump {
        let mut content = String::with_capacity(outcome.input.len() * 8);
        for v in &outcome.input {
            content.push_str(&format!("{v}\n"));
        }
        write_output(&Some(path), &content)?;
    }
    let mut out = String::from("model,n,comparisons,replay_comparisons,replay_exact\n");
    out.push_str(&format!(
        "{},{n},{},{replay},{}\n",
        cfg.model.id(),
        outcome.comparisons,
        outcome.comparisons == replay
    ));
    write_output(&common.out, &out)?;
    if outcome.comparisons != replay {
        return Err(AppError::Internal(
            "adversary replay did not reproduce the comparison count".into(),
        ));
    }
    Ok(())
}

fn parse_sorters(spec: &str) -> Result<Vec<SorterKind>, AppError> {
    if spec == "all" {
        let mut v = Vec::new();
        for id in 1..=5u8 {
            for threeway in [false, true] {
                v.push(SorterKind::Quicksort {
                    model: Model::from_id(id).unwrap(),
                    threeway,
                });
            }
        }
        v.push(SorterKind::HeapsortClassic);
        v.push(SorterKind::HeapsortBottomUp);
        return Ok(v);
    }
    spec.split(',')
        .map(|name| {
            let name = name.trim();
            parse_one_sorter(name)
                .ok_or_else(|| AppError::Usage(format!("--sorters: unknown sorter `{name}`")))
        })
        .collect()
}

fn parse_one_sorter(name: &str) -> Option<SorterKind> {
    match name {
        "heapsort-classic" | "heap-classic" => Some(SorterKind::HeapsortClassic),
        "heapsort-bu" | "heap-bu" => Some(SorterKind::HeapsortBottomUp),
        "insertion" => Some(SorterKind::Insertion),
        _ => {
            let rest = name.strip_prefix("model")?;
            let (id, threeway) = match rest.split_once('-') {
                Some((id, "2way")) => (id, false),
                Some((id, "3way")) => (id, true),
                None => (rest, false),
                _ => return None,
            };
            Some(SorterKind::Quicksort {
                model: Model::from_id(id.parse().ok()?)?,
                threeway,
            })
        }
    }
}

fn cmd_bench(
    common: &CommonOpts,
    n_spec: &str,
    sorters_spec: &str,
    generators_spec: &str,
    element: ElementArg,
    repeats: usize,
    seed: u64,
) -> Result<(), AppError> {
    reject_svg(common)?;
    let _ = model_config(common)?;
    if repeats < 3 {
        return Err(AppError::Usage("--repeats must be >= 3".into()));
    }
    let ns = parse_u64_list(n_spec, "--n")?;
    let sorters = parse_sorters(sorters_spec)?;
    let generators: Vec<DatasetKind> = if generators_spec == "all" {
        DatasetKind::ALL.to_vec()
    } else {
        generators_spec
            .split(',')
            .map(|g| {
                DatasetKind::from_name(g.trim()).ok_or_else(|| {
                    AppError::Usage(format!("--generators: unknown generator `{g}`"))
                })
            })
            .collect::<Result<_, _>>()?
    };
    let element_kind = match element {
        ElementArg::Int4 => ElementKind::Int4,
        ElementArg::Float8 => ElementKind::Float8,
        ElementArg::Record32 => ElementKind::Record32,
    };
    let mut out = String::from("generator,n,sorter,median_ms,comparisons,movements\n");
    for &kind in &generators {
        for &n in &ns {
            for &sorter in &sorters {
                let spec = DatasetSpec {
                    kind,
                    n: n as usize,
                    seed,
                    element_kind,
                };
                let m = benchmark(sorter, &spec, repeats, common.qmin, common.nbmax);
                out.push_str(&format!(
                    "{},{n},{},{:.3},{},{}\n",
                    kind.name(),
                    sorter.name(),
                    m.median_ms,
                    m.comparisons,
                    m.movements
                ));
            }
        }
    }
    write_output(&common.out, &out)
}

fn cmd_sort(
    common: &CommonOpts,
    alg: &str,
    threeway: bool,
    input: &Path,
    stats: bool,
) -> Result<(), AppError> {
    reject_svg(common)?;
    let _ = model_config(common)?;
    let sorter = parse_one_sorter(alg)
        .ok_or_else(|| AppError::Usage(format!("--alg: unknown sorter `{alg}`")))?;
    let sorter = match sorter {
        SorterKind::Quicksort { model, .. } => SorterKind::Quicksort { model, threeway },
        other => other,
    };
    let text = std::fs::read_to_string(input)
        .map_err(|e| AppError::Usage(format!("--input: cannot read {}: {e}", input.display())))?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v: i64 = line.parse().map_err(|_| {
            AppError::Usage(format!("--input: line {} is not an integer", lineno + 1))
        })?;
        values.push(v);
    }
    let run_stats = match sorter {
        SorterKind::Quicksort { model, threeway } => {
            let cfg = ModelConfig::new(model, common.qmin, common.nbmax);
            quicksort_with(
                &mut values,
                &model_sort_config(&cfg, threeway),
                &mut NaturalOrder,
            )
        }
        SorterKind::HeapsortClassic => {
            heapsort(&mut values, HeapsortVariant::Classic, &mut NaturalOrder)
        }
        SorterKind::HeapsortBottomUp => {
            heapsort(&mut values, HeapsortVariant::BottomUp, &mut NaturalOrder)
        }
        SorterKind::Insertion => insertion_sort(&mut values, &mut NaturalOrder),
    };
    if !values.windows(2).all(|w| w[0] <= w[1]) {
        return Err(AppError::Internal("output is not sorted".into()));
    }
    let mut content = String::with_capacity(values.len() * 8);
    for v in &values {
        content.push_str(&format!("{v}\n"));
    }
    write_output(&common.out, &content)?;
    if stats {
        eprintln!(
            "comparisons={} movements={} max_stack_depth={}",
            run_stats.comparisons, run_stats.movements, run_stats.max_stack_depth
        );
    }
    Ok(())
}
