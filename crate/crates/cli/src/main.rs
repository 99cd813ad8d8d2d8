//! Command-line interface: exact censuses, randomized sampling, capture-
//! recapture estimates, Kazhdan-Lusztig bound reports, special-flat scans
//! and the exactness battery.
//!
//! Exit codes: 0 success, 2 usage error, 3 budget/feasibility error,
//! 4 I/O or data-format error.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use specht_flats::arrangement::{build_arrangement, DEFAULT_SUBSET_BUDGET};
use specht_flats::battery::run_battery;
use specht_flats::census::{
    kl_bound_report, kl_first_coefficient_of, line_census_of, render_rational,
    special_flat_census, CensusRow,
};
use specht_flats::error::Error;
use specht_flats::estimator::{estimate_report, EstimateReport};
use specht_flats::sampler::{classify_store, sample_lines, SampleConfig, SampleStore};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const BUDGET_ENV: &str = "SPECHT_FLATS_BUDGET";

#[derive(Parser)]
#[command(
    name = "specht-flats",
    version,
    about = "Exact and randomized computations in the intrinsic hyperplane arrangements of hook Specht modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Exact line census: all dimension-1 flats with sizes and stability
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cap on the number of subsets scanned (default from env or 10^7)
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Sample random hyperplane subsets and record the distinct lines found
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (0 = library default)
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Store file to write (JSON lines)
        #[arg(long)]
        out: PathBuf,
    },
    /// Capture-recapture estimates per line size from two stores
    Estimate {
        #[arg(long)]
        store_a: PathBuf,
        #[arg(long)]
        store_b: PathBuf,
        /// Append exact census counts (small n only)
        #[arg(long, default_value_t = false)]
        exact: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Lower-bound report for the first Kazhdan-Lusztig coefficient
    KlBound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        /// Include exact corank-1/rank-1 counts (small n only)
        #[arg(long, default_value_t = false)]
        exact: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Enumerate the special flats of surjections onto m parts
    SpecialFlats {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the exactness battery (matroid axioms, equivariance,
    /// contraction isomorphisms, censuses)
    Verify {
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_of(&e))
        }
    }
}

fn exit_code_of(e: &Error) -> u8 {
    match e {
        Error::ZeroModule { .. } | Error::InvalidArgument(_) | Error::HeaderMismatch(_) => 2,
        Error::BudgetExceeded { .. } => 3,
        Error::Io(_) | Error::StoreFormat(_) => 4,
    }
}

fn budget_or_default(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_SUBSET_BUDGET)
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => {
            std::fs::write(path, content)?;
            Ok(())
        }
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Census {
            n,
            l,
            format,
            out,
            budget,
        } => {
            let arr = build_arrangement(n, l)?;
            let row = line_census_of(&arr, budget_or_default(budget))?;
            println!("{} lines, {}% stable", row.total_lines, row.percent_stable());
            let content = match format {
                Format::Csv => census_csv(&row),
                Format::Json => census_json(&row).to_string(),
            };
            write_output(out.as_deref(), &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample {
            n,
            l,
            trials,
            seed,
            workers,
            out,
        } => {
            let arr = build_arrangement(n, l)?;
            let cfg = SampleConfig {
                n,
                l,
                trials,
                seed,
                workers,
                store_path: Some(out.clone()),
            };
            let store = if workers > 0 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?;
                pool.install(|| sample_lines(&cfg, &arr))?
            } else {
                sample_lines(&cfg, &arr)?
            };
            store.write_to_path(&out)?;
            let stats = classify_store(&store, &arr)?;
            println!(
                "{} distinct lines from {} trials (seed {seed})",
                store.len(),
                trials
            );
            print!("{}", classify_text(&stats));
            println!("store written to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Estimate {
            store_a,
            store_b,
            exact,
            format,
            out,
            budget,
        } => {
            let a = SampleStore::read_from_path(&store_a)?;
            let b = SampleStore::read_from_path(&store_b)?;
            let census = if exact {
                let arr = build_arrangement(a.header.n, a.header.l)?;
                Some(line_census_of(&arr, budget_or_default(budget))?)
            } else {
                None
            };
            let report = estimate_report(&a, &b, census.as_ref())?;
            if report.same_seed {
                eprintln!(
                    "warning: both stores use seed {}; the rounds are not independent and every estimate degenerates to the count",
                    report.seed_a
                );
            }
            let content = match format {
                Format::Csv => estimate_csv(&report, exact),
                Format::Json => estimate_json(&report, exact).to_string(),
            };
            write_output(out.as_deref(), &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::KlBound {
            n,
            l,
            exact,
            format,
            out,
            budget,
        } => {
            let exact_counts = if exact {
                let arr = build_arrangement(n, l)?;
                Some(kl_first_coefficient_of(&arr, budget_or_default(budget))?)
            } else {
                None
            };
            let report = kl_bound_report(n, l, exact_counts);
            println!(
                "S({n},{}) = {} ({}); normalized ratio: {}",
                l + 1,
                report.stirling_lower,
                report.f_def,
                render_rational(&report.ratio, 6)
            );
            if let Some(e) = &report.exact {
                println!(
                    "corank-1 flats: {}, rank-1 flats: {}, c1 = {}",
                    e.corank1, e.rank1, e.c1
                );
            }
            let content = match format {
                Format::Csv => kl_csv(&report),
                Format::Json => kl_json(&report).to_string(),
            };
            write_output(out.as_deref(), &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SpecialFlats {
            n,
            l,
            m,
            format,
            out,
        } => {
            if m > n || m < 1 {
                return Err(Error::invalid("need 1 <= m <= n"));
            }
            let arr = build_arrangement(n, l)?;
            let census = special_flat_census(&arr, m)?;
            println!(
                "{} distinct special flats for surjections {n} -> {m} (S({n},{m}) = {}), dimensions {:?}",
                census.count, census.expected, census.dimensions
            );
            let content = match format {
                Format::Csv => {
                    let dims: Vec<String> =
                        census.dimensions.iter().map(|d| d.to_string()).collect();
                    format!(
                        "n,l,m,count,expected,all_distinct,dimensions\n{},{},{},{},{},{},{}\n",
                        census.n,
                        census.l,
                        census.m,
                        census.count,
                        census.expected,
                        census.all_distinct,
                        dims.join(";")
                    )
                }
                Format::Json => json!({
                    "n": census.n,
                    "l": census.l,
                    "m": census.m,
                    "count": census.count,
                    "expected": census.expected.to_string(),
                    "all_distinct": census.all_distinct,
                    "dimensions": census.dimensions,
                })
                .to_string(),
            };
            write_output(out.as_deref(), &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { budget } => {
            let checks = run_battery(budget_or_default(budget));
            let mut all_ok = true;
            for c in &checks {
                println!(
                    "[{}] {} - {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
                all_ok &= c.passed;
            }
            if all_ok {
                println!("all {} checks passed", checks.len());
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn census_csv(row: &CensusRow) -> String {
    let mut s = String::from("n,l,size,stable,unstable\n");
    for sc in &row.sizes {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            row.n, row.l, sc.size, sc.stable, sc.unstable
        ));
    }
    s
}

fn census_json(row: &CensusRow) -> serde_json::Value {
    json!({
        "n": row.n,
        "l": row.l,
        "total_lines": row.total_lines,
        "percent_unstable": row.percent_unstable(),
        "sizes": row.sizes.iter().map(|sc| json!({
            "size": sc.size,
            "stable": sc.stable,
            "unstable": sc.unstable,
        })).collect::<Vec<_>>(),
    })
}

fn classify_text(stats: &CensusRow) -> String {
    let mut s = String::from("size  stable  unstable\n");
    for sc in &stats.sizes {
        s.push_str(&format!(
            "{:<5} {:<7} {:<8}\n",
            sc.size, sc.stable, sc.unstable
        ));
    }
    s.push_str(&format!("unstable fraction: {}%\n", stats.percent_unstable()));
    s
}

fn estimate_csv(report: &EstimateReport, with_exact: bool) -> String {
    let mut s = String::from("size,count_a,count_b,overlap,estimate,note");
    if with_exact {
        s.push_str(",exact,ratio");
    }
    s.push('\n');
    for r in &report.rows {
        let est = r
            .estimate_rounded()
            .map(|e| e.to_string())
            .unwrap_or_default();
        let note = if r.saturated { "saturated?" } else { "" };
        s.push_str(&format!(
            "{},{},{},{},{},{}",
            r.size, r.count_a, r.count_b, r.overlap, est, note
        ));
        if with_exact {
            let exact = r.exact.map(|t| t.to_string()).unwrap_or_default();
            let ratio = r
                .ratio_to_exact()
                .map(|q| render_rational(&q, 3))
                .unwrap_or_default();
            s.push_str(&format!(",{exact},{ratio}"));
        }
        s.push('\n');
    }
    s
}

fn estimate_json(report: &EstimateReport, with_exact: bool) -> serde_json::Value {
    json!({
        "n": report.n,
        "l": report.l,
        "seed_a": report.seed_a,
        "seed_b": report.seed_b,
        "same_seed": report.same_seed,
        "rows": report.rows.iter().map(|r| {
            let mut row = json!({
                "size": r.size,
                "count_a": r.count_a,
                "count_b": r.count_b,
                "overlap": r.overlap,
                "estimate": r.estimate.as_ref().map(|e| e.to_string()),
                "estimate_rounded": r.estimate_rounded().map(|e| e.to_string()),
                "saturated": r.saturated,
            });
            if with_exact {
                row["exact"] = json!(r.exact);
                row["ratio_to_exact"] = json!(r.ratio_to_exact().map(|q| render_rational(&q, 6)));
            }
            row
        }).collect::<Vec<_>>(),
    })
}

fn kl_csv(report: &specht_flats::census::KlBoundReport) -> String {
    let mut s = String::from("n,l,stirling_lower,f_l,ratio,corank1,rank1,c1\n");
    let (c1a, c1b, c1c) = match &report.exact {
        Some(e) => (e.corank1.to_string(), e.rank1.to_string(), e.c1.to_string()),
        None => (String::new(), String::new(), String::new()),
    };
    s.push_str(&format!(
        "{},{},{},{},{},{},{},{}\n",
        report.n,
        report.l,
        report.stirling_lower,
        report.f_l,
        render_rational(&report.ratio, 6),
        c1a,
        c1b,
        c1c
    ));
    s
}

fn kl_json(report: &specht_flats::census::KlBoundReport) -> serde_json::Value {
    json!({
        "n": report.n,
        "l": report.l,
        "stirling_lower": report.stirling_lower.to_string(),
        "f_def": report.f_def,
        "f_l": report.f_l.to_string(),
        "ratio": report.ratio.to_string(),
        "ratio_decimal": render_rational(&report.ratio, 6),
        "exact": report.exact.as_ref().map(|e| json!({
            "corank1": e.corank1,
            "rank1": e.rank1,
            "c1": e.c1,
        })),
    })
}
