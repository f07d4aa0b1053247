//! Command-line front end: measure a real graph, generate a null-model
//! replica, predict realized distributions, and compare two graphs.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use frdgen::generate::{fd_generate, frd_generate, GenerationConfig, GenerationReport};
use frdgen::graph::{compute_stats, simplify, GraphStats};
use frdgen::hist::DegreeKind;
use frdgen::io::{
    export_stats, log_bin, read_edge_list, read_stats, write_edge_list, StatsDocument,
};

const EXIT_INPUT: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_TOLERANCE: u8 = 4;
const EXIT_DISJOINT: u8 = 5;

#[derive(Parser)]
#[command(name = "frdgen", version, about = "Directed null-model graph generator matching in-, out-, and reciprocal-degree distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    /// Fast directed: match total in-/out-degree distributions.
    Fd,
    /// Fast reciprocal directed: additionally match the reciprocal
    /// degree distribution.
    Frd,
}

#[derive(Subcommand)]
enum Command {
    /// Measure an edge list: degree distributions, reciprocity, log bins.
    Stats {
        /// Input edge list ('#' comments, "src dst" lines).
        input: PathBuf,
        /// Write the stats document here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate a random graph matching target degree distributions.
    Generate {
        #[arg(long, value_enum)]
        model: Model,
        /// Take targets from a real edge list (distributions extracted
        /// internally).
        #[arg(long, conflicts_with = "dists")]
        input: Option<PathBuf>,
        /// Take targets from a previously exported stats document.
        #[arg(long)]
        dists: Option<PathBuf>,
        /// Blowup factor for the degree-1 pools (all channels).
        #[arg(long, default_value_t = 10)]
        blowup: u32,
        /// Random seed; omitted means entropy-seeded (the effective seed
        /// is echoed either way).
        #[arg(long)]
        seed: Option<u64>,
        /// Override the target node count.
        #[arg(long)]
        nodes: Option<u32>,
        /// Write the generated edge list here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write a stats document for the generated graph,
        /// including the generation report.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Predict the realized degree counts for a target distribution.
    Expected {
        /// Stats document holding the target distributions.
        #[arg(long)]
        dists: PathBuf,
        /// Which distribution to analyze.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 10)]
        blowup: u32,
        /// Largest multiplicity to tabulate; mass beyond it is reported
        /// as tail.
        #[arg(long, default_value_t = 64)]
        xmax: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare two graphs' log-binned degree distributions.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Maximum allowed relative error on scored bins.
        #[arg(long, default_value_t = 0.15)]
        tolerance: f64,
        /// Bins where the reference count is below this are reported but
        /// not scored.
        #[arg(long, default_value_t = 50)]
        min_count: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum AppError {
    Input(String),
    Validation(String),
    Tolerance,
    Disjoint,
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Input(_) => EXIT_INPUT,
            AppError::Validation(_) => EXIT_VALIDATION,
            AppError::Tolerance => EXIT_TOLERANCE,
            AppError::Disjoint => EXIT_DISJOINT,
        }
    }
}

impl From<io::Error> for AppError {
    fn from(e: io::Error) -> Self {
        AppError::Input(e.to_string())
    }
}

impl From<frdgen::io::ReadError> for AppError {
    fn from(e: frdgen::io::ReadError) -> Self {
        AppError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                AppError::Input(msg) => eprintln!("frdgen: input error: {msg}"),
                AppError::Validation(msg) => eprintln!("frdgen: validation error: {msg}"),
                AppError::Tolerance => eprintln!("frdgen: comparison exceeded tolerance"),
                AppError::Disjoint => eprintln!("frdgen: degree supports are disjoint"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cmd: Command) -> Result<(), AppError> {
    match cmd {
        Command::Stats { input, output } => cmd_stats(&input, output.as_deref()),
        Command::Generate {
            model,
            input,
            dists,
            blowup,
            seed,
            nodes,
            output,
            report,
        } => cmd_generate(
            model,
            input.as_deref(),
            dists.as_deref(),
            blowup,
            seed,
            nodes,
            output.as_deref(),
            report.as_deref(),
        ),
        Command::Expected {
            dists,
            kind,
            blowup,
            xmax,
            output,
        } => cmd_expected(&dists, &kind, blowup, xmax, output.as_deref()),
        Command::Compare {
            a,
            b,
            tolerance,
            min_count,
            output,
        } => cmd_compare(&a, &b, tolerance, min_count, output.as_deref()),
    }
}

fn open_input(path: &Path) -> Result<BufReader<File>, AppError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| AppError::Input(format!("{}: {e}", path.display())))
}

fn with_output<F>(path: Option<&Path>, f: F) -> Result<(), AppError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(
                File::create(p).map_err(|e| AppError::Input(format!("{}: {e}", p.display())))?,
            );
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn load_graph_stats(path: &Path) -> Result<GraphStats, AppError> {
    let reader = open_input(path)?;
    let (pairs, map) = read_edge_list(reader)
        .map_err(|e| AppError::Input(format!("{}: {e}", path.display())))?;
    let g = simplify(pairs, map.len() as u32)
        .map_err(|e| AppError::Input(format!("{}: {e}", path.display())))?;
    Ok(compute_stats(&g))
}

fn cmd_stats(input: &Path, output: Option<&Path>) -> Result<(), AppError> {
    let stats = load_graph_stats(input)?;
    with_output(output, |w| export_stats(w, &stats, None))
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    model: Model,
    input: Option<&Path>,
    dists: Option<&Path>,
    blowup: u32,
    seed: Option<u64>,
    nodes: Option<u32>,
    output: Option<&Path>,
    report_path: Option<&Path>,
) -> Result<(), AppError> {
    let doc: StatsDocument = match (input, dists) {
        (Some(path), None) => StatsDocument::from_stats(&load_graph_stats(path)?),
        (None, Some(path)) => {
            let reader = open_input(path)?;
            read_stats(reader).map_err(|e| AppError::Input(format!("{}: {e}", path.display())))?
        }
        _ => {
            return Err(AppError::Input(
                "exactly one of --input or --dists is required".into(),
            ))
        }
    };

    let n = match nodes {
        Some(n) => n,
        None => u32::try_from(doc.n)
            .map_err(|_| AppError::Validation(format!("node count {} exceeds u32", doc.n)))?,
    };
    let seed = seed.unwrap_or_else(rand::random::<u64>);
    let cfg = GenerationConfig::new(n, seed).with_blowup(blowup);

    let result = match model {
        Model::Fd => fd_generate(&doc.total_in_hist, &doc.total_out_hist, &cfg),
        Model::Frd => frd_generate(&doc.rec_hist, &doc.in_hist, &doc.out_hist, &cfg),
    };
    let (graph, report) = result.map_err(|e| AppError::Validation(e.to_string()))?;

    with_output(output, |w| write_edge_list(w, &graph, None))?;

    let out_stats = compute_stats(&graph);
    if let Some(path) = report_path {
        with_output(Some(path), |w| export_stats(w, &out_stats, Some(&report)))?;
    }
    log_report(&report);
    Ok(())
}

fn log_report(report: &GenerationReport) {
    eprintln!(
        "frdgen: seed {} | requested {} emitted {} | removed: {} self-loops, {} duplicates, {} unpaired | {} rng draws | {:.3}s",
        report.seed,
        report.requested_edges,
        report.emitted_edges,
        report.removed_self_loops,
        report.removed_duplicates,
        report.removed_unpaired,
        report.rng_draws,
        report.elapsed.as_secs_f64(),
    );
}

fn cmd_expected(
    dists: &Path,
    kind: &str,
    blowup: u32,
    xmax: u32,
    output: Option<&Path>,
) -> Result<(), AppError> {
    let kind = DegreeKind::parse(kind).ok_or_else(|| {
        AppError::Input(format!(
            "unknown kind {kind:?} (expected one of: in, out, rec, total-in, total-out)"
        ))
    })?;
    let doc = read_stats(open_input(dists)?)
        .map_err(|e| AppError::Input(format!("{}: {e}", dists.display())))?;
    if blowup < 1 {
        return Err(AppError::Validation("blowup must be >= 1".into()));
    }
    let exp = frdgen::expectation::expected_realized_counts(doc.histogram(kind), blowup, xmax);
    with_output(output, |w| {
        writeln!(w, "# frdgen expected v1")?;
        writeln!(w, "kind\t{kind}")?;
        writeln!(w, "blowup\t{blowup}")?;
        writeln!(w, "xmax\t{xmax}")?;
        writeln!(w, "total_slots\t{}", exp.total_slots)?;
        writeln!(w, "tail_mass\t{:.6}", exp.tail_mass)?;
        writeln!(w, "[expected]")?;
        for (x, c) in exp.counts.iter().enumerate() {
            writeln!(w, "{x}\t{c:.6}")?;
        }
        Ok(())
    })
}

fn cmd_compare(
    a_path: &Path,
    b_path: &Path,
    tolerance: f64,
    min_count: u64,
    output: Option<&Path>,
) -> Result<(), AppError> {
    let a = load_graph_stats(a_path)?;
    let b = load_graph_stats(b_path)?;

    let mut any_fail = false;
    let mut any_disjoint = false;
    let mut doc = String::new();
    doc.push_str("# frdgen compare v1\n");
    doc.push_str(&format!("tolerance\t{tolerance}\n"));
    doc.push_str(&format!("min_count\t{min_count}\n"));

    for kind in DegreeKind::ALL {
        let la = log_bin(a.histogram(kind));
        let lb = log_bin(b.histogram(kind));
        let bins = la.bins.len().max(lb.bins.len());
        let count_at = |l: &frdgen::io::LogBinnedDistribution, i: usize| {
            l.bins.get(i).map(|b| b.count).unwrap_or(0)
        };

        doc.push_str(&format!("[compare {kind}]\n"));
        let mut max_err = 0.0f64;
        let mut overlap = false;
        let mut a_any = false;
        let mut b_any = false;
        for i in 0..bins {
            let lo = 1usize << i;
            let hi = lo * 2;
            let ca = count_at(&la, i);
            let cb = count_at(&lb, i);
            a_any |= ca > 0;
            b_any |= cb > 0;
            overlap |= ca > 0 && cb > 0;
            let err_text = if ca > 0 {
                let err = (cb as f64 - ca as f64).abs() / ca as f64;
                if ca >= min_count {
                    max_err = max_err.max(err);
                }
                format!("{err:.6}")
            } else if cb > 0 {
                "inf".to_string()
            } else {
                "0".to_string()
            };
            doc.push_str(&format!("{lo}\t{hi}\t{ca}\t{cb}\t{err_text}\n"));
        }
        doc.push_str(&format!("summary\t{kind}\t{max_err:.6}\n"));
        if a_any && b_any && !overlap {
            any_disjoint = true;
        }
        if max_err > tolerance {
            any_fail = true;
        }
    }

    let status = if any_disjoint {
        "disjoint"
    } else if any_fail {
        "fail"
    } else {
        "pass"
    };
    doc.push_str(&format!("status\t{status}\n"));
    with_output(output, |w| w.write_all(doc.as_bytes()))?;

    if any_disjoint {
        Err(AppError::Disjoint)
    } else if any_fail {
        Err(AppError::Tolerance)
    } else {
        Ok(())
    }
}
