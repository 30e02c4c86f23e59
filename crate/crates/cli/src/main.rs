use std::io::{self, IsTerminal, Write};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Parser, Subcommand};

use s4bell::classical::{
    bell_terms, classical_histogram_with_progress, optimal_classical_strategy,
};
use s4bell::context::S4Context;
use s4bell::fixtures::Vec3;
use s4bell::game::{game_values, WinningTable};
use s4bell::orbit::{Label, Orbit};
use s4bell::pairs::parse_pairs;
use s4bell::quantum::max_eigenvalue_sum;
use s4bell::scan::{scan, MAX_SCAN_ORBITS};
use s4bell::verify::{self, VerifyOptions};
use s4bell::Error;

mod report;

use report::{AnalyzeReport, GameReport};

#[derive(Parser, Debug)]
#[command(
    name = "s4bell",
    version,
    about = "Bell inequalities from orbits of the S4 standard representation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reproduce the reference results and report each check.
    Verify,
    /// Quantum and classical bounds for a list of orbit pairs.
    Analyze {
        /// Comma-separated pairs, e.g. "x01:x14,x01:x07,x01:x15".
        #[arg(long)]
        pairs: String,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Per-pair eigenvalue table as CSV (the histogram with --histogram).
        #[arg(long)]
        csv: bool,
        /// Count c(α) over all 3^16 deterministic strategies.
        #[arg(long)]
        histogram: bool,
    },
    /// Rank every multiset of Bob labels by quantum-classical gap.
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=MAX_SCAN_ORBITS as i64))]
        orbits: u8,
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// Alice's label in the reference orbit.
        #[arg(long, default_value = "x01")]
        phi: Label,
        #[arg(long)]
        json: bool,
    },
    /// Print the labeled orbit.
    Orbits {
        /// Unit seed vector "x,y,z"; defaults to the reference orbit.
        #[arg(long, value_parser = parse_seed, allow_hyphen_values = true)]
        seed: Option<Vec3>,
        #[arg(long)]
        json: bool,
    },
    /// Winning table and game values for a list of orbit pairs.
    Game {
        #[arg(long)]
        pairs: String,
        #[arg(long)]
        json: bool,
    },
}

fn parse_seed(input: &str) -> Result<Vec3, String> {
    let parts: Vec<f64> = input
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    <Vec3>::try_from(parts.as_slice())
        .map_err(|_| format!("expected 3 components, got {}", parts.len()))
}

/// A failure with its exit status.
enum Failure {
    Usage(String),
    Runtime(String),
    /// Stdout closed early, e.g. piped into `head`.
    ClosedOutput,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PairSpecParse { .. }
            | Error::InvalidLabel(_)
            | Error::DuplicateTerm(_)
            | Error::DegenerateOrbit { .. }
            | Error::NotUnitVector { .. }
            | Error::PartitionFailure(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::ClosedOutput
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        if e.io_error_kind() == Some(io::ErrorKind::BrokenPipe) {
            Failure::ClosedOutput
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(e) => e.into(),
            other => Failure::Runtime(format!("{other:?}")),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = S4Context::new()
        .map_err(Failure::from)
        .and_then(|ctx| dispatch(&ctx, cli.command));
    match result {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::ClosedOutput) => ExitCode::SUCCESS,
    }
}

fn dispatch(ctx: &S4Context, command: Command) -> Result<ExitCode, Failure> {
    let mut out = io::stdout().lock();
    match command {
        Command::Verify => cmd_verify(ctx, &mut out),
        Command::Analyze {
            pairs,
            json,
            csv,
            histogram,
        } => cmd_analyze(ctx, &pairs, json, csv, histogram, &mut out),
        Command::Scan {
            orbits,
            top,
            phi,
            json,
        } => cmd_scan(ctx, orbits as usize, top, phi, json, &mut out),
        Command::Orbits { seed, json } => cmd_orbits(ctx, seed, json, &mut out),
        Command::Game { pairs, json } => cmd_game(ctx, &pairs, json, &mut out),
    }
}

fn cmd_verify(ctx: &S4Context, out: &mut impl Write) -> Result<ExitCode, Failure> {
    let mut io_error = None;
    let report = verify::run_with(ctx, VerifyOptions::default(), |check| {
        if let Err(e) = writeln!(out, "{check}") {
            io_error.get_or_insert(e);
        }
    });
    if let Some(e) = io_error {
        return Err(e.into());
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    writeln!(out, "{passed}/{} checks passed", report.checks.len())?;
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_analyze(
    ctx: &S4Context,
    spec: &str,
    json: bool,
    csv: bool,
    histogram: bool,
    out: &mut impl Write,
) -> Result<ExitCode, Failure> {
    let pairs = parse_pairs(spec)?;
    let expr = bell_terms(&pairs, &ctx.orbit, &ctx.standard)?;
    let bound = max_eigenvalue_sum(&pairs, ctx)?;
    let histogram = histogram.then(|| {
        let interactive = io::stderr().is_terminal();
        let total = 3usize.pow(expr.settings as u32);
        let done = AtomicUsize::new(0);
        let shown = AtomicUsize::new(0);
        let result = classical_histogram_with_progress(&expr, |_| {
            let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
            let percent = finished * 100 / total;
            if interactive && shown.fetch_max(percent, Ordering::Relaxed) < percent {
                eprint!("\rhistogram: {percent:3}%");
            }
        });
        if interactive {
            eprintln!();
        }
        result
    });
    let report = AnalyzeReport::new(&pairs, &expr, &bound, histogram);

    if json {
        report::write_json(out, &report)?;
    } else if csv {
        if report.histogram.is_some() {
            report.write_histogram_csv(out)?;
        } else {
            report.write_pairs_csv(out)?;
        }
    } else {
        report.write_text(out)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan(
    ctx: &S4Context,
    orbits: usize,
    top: usize,
    phi: Label,
    json: bool,
    out: &mut impl Write,
) -> Result<ExitCode, Failure> {
    let mut result = scan(ctx, orbits, phi)?;
    let violations = result.violations().count();
    let evaluated = result.entries.len();
    result.entries.truncate(top);
    if json {
        let value = serde_json::json!({
            "orbits": result.orbits,
            "phi": result.phi,
            "candidates": result.candidates,
            "skipped_duplicates": result.skipped_duplicates,
            "evaluated": evaluated,
            "violations": violations,
            "entries": result.entries,
        });
        report::write_json(out, &value)?;
        return Ok(ExitCode::SUCCESS);
    }
    writeln!(
        out,
        "{} multisets of {orbits} Bob label(s) with Alice at {phi}: {evaluated} evaluated, {} skipped (repeated terms), {violations} violating",
        result.candidates, result.skipped_duplicates
    )?;
    writeln!(
        out,
        "{:>4}  {:<32} {:>8} {:>9} {:>7}",
        "rank", "pairs", "quantum", "classical", "gap"
    )?;
    for (rank, entry) in result.entries.iter().enumerate() {
        writeln!(
            out,
            "{:>4}  {:<32} {:>8.2} {:>9} {:>7.2}{}",
            rank + 1,
            s4bell::pairs::format_pairs(&entry.pairs),
            entry.lambda_max,
            entry.classical_max,
            entry.gap,
            if entry.is_violation() {
                "  violation"
            } else {
                ""
            }
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_orbits(
    ctx: &S4Context,
    seed: Option<Vec3>,
    json: bool,
    out: &mut impl Write,
) -> Result<ExitCode, Failure> {
    let generated;
    let orbit = match seed {
        Some(seed) => {
            generated = Orbit::generate(&ctx.standard, seed)?;
            &generated
        }
        None => &ctx.orbit,
    };
    let export = orbit.export(&ctx.group);
    if json {
        report::write_json(out, &export)?;
        return Ok(ExitCode::SUCCESS);
    }
    writeln!(
        out,
        "seed ({:.6}, {:.6}, {:.6}), {} partition(s) into orthonormal bases",
        export.seed[0], export.seed[1], export.seed[2], export.cover_count
    )?;
    writeln!(
        out,
        "{:<5} {:>10} {:>10} {:>10}  element",
        "label", "x", "y", "z"
    )?;
    for v in &export.vectors {
        writeln!(
            out,
            "{:<5} {:>10.6} {:>10.6} {:>10.6}  {}",
            v.label.to_string(),
            v.coords[0],
            v.coords[1],
            v.coords[2],
            v.element
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_game(
    ctx: &S4Context,
    spec: &str,
    json: bool,
    out: &mut impl Write,
) -> Result<ExitCode, Failure> {
    let pairs = parse_pairs(spec)?;
    let expr = bell_terms(&pairs, &ctx.orbit, &ctx.standard)?;
    let bound = max_eigenvalue_sum(&pairs, ctx)?;
    let table = WinningTable::from_expression(&expr);
    let value = game_values(&expr, &bound);
    let (strategy, _) = optimal_classical_strategy(&expr);
    let game = GameReport::new(&table, &value, &strategy);
    if json {
        report::write_json(out, &game)?;
        return Ok(ExitCode::SUCCESS);
    }
    write!(out, "{table}")?;
    writeln!(
        out,
        "each row a permutation of answers: {}",
        if table.is_permutation_structured() {
            "yes"
        } else {
            "no"
        }
    )?;
    game.write_values(out)?;
    Ok(ExitCode::SUCCESS)
}
