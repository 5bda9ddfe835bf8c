//! Command-line front end: samplers and experiments with deterministic
//! seeded output.
//!
//! Exit codes: 0 on success, 2 when a statistical gate fails, 1 on any
//! other error (including bad usage).

use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use stablefrag::harness::config::ExperimentConfig;
use stablefrag::harness::convergence::run_convergence;
use stablefrag::harness::pipeline::replicate_masses;
use stablefrag::harness::rng::replicate_rng;
use stablefrag::harness::PipelineKind;
use stablefrag::intensity::StableDensity;
use stablefrag::offspring::OffspringLaw;
use stablefrag::{figure, gwtree};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "stablefrag",
    version,
    about = "Fragmentation of conditioned branching trees: samplers, coding walks, and convergence checks"
)]
struct Cli {
    /// Base seed for all RNG streams.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON experiment configuration file (used by `converge`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file, or directory for `reproduce-figure`; stdout if absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; falls back to FRAG_THREADS, then all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExcursionMode {
    Brownian,
    Lattice,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one conditioned tree; CSV of the depth-first walk and
    /// children counts, with a JSON header line.
    SampleTree {
        /// Offspring law tag: geometric-half | poisson-one |
        /// stable-tail:A | a JSON probability table.
        #[arg(long)]
        law: String,
        /// Number of vertices.
        #[arg(long)]
        n: usize,
    },
    /// Fragment conditioned trees by uniform edge thresholds over a time
    /// grid; JSONL records {rep, t, masses}.
    Fragment {
        #[arg(long)]
        law: String,
        #[arg(long)]
        n: usize,
        /// Comma-separated times, e.g. 0.5,1,2.
        #[arg(long, value_delimiter = ',')]
        times: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        reps: u64,
    },
    /// Ladder masses of drifted excursions built from bridges; JSONL
    /// records {rep, t, masses}.
    Excursion {
        #[arg(long, value_enum)]
        mode: ExcursionMode,
        /// Offspring law for lattice mode (ignored for brownian).
        #[arg(long, default_value = "geometric-half")]
        law: String,
        /// Grid resolution.
        #[arg(long)]
        m: usize,
        /// Comma-separated drift times.
        #[arg(long, value_delimiter = ',')]
        t: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        reps: u64,
    },
    /// Exponential edge cuts on conditioned trees; JSONL records
    /// {rep, t, masses}.
    CrtCut {
        #[arg(long)]
        law: String,
        #[arg(long)]
        n: usize,
        /// Comma-separated cut times.
        #[arg(long, value_delimiter = ',')]
        t: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        reps: u64,
    },
    /// Compare two pipelines per the JSON config; exits 2 if the KS gate
    /// fails.
    Converge,
    /// Stable density and cut-intensity values plus identity residuals,
    /// as JSON.
    Intensity {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Comma-separated evaluation points.
        #[arg(long, value_delimiter = ',')]
        z: Vec<f64>,
        /// Also report the first-moment identity residual.
        #[arg(long)]
        check_moment: bool,
    },
    /// Emit the worked-example CSV tables (tree, order, paths, components,
    /// masses) into the output directory.
    ReproduceFigure,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::FAILURE;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn configure_threads(requested: Option<usize>) -> anyhow::Result<()> {
    let from_env = std::env::var("FRAG_THREADS")
        .ok()
        .map(|v| v.parse::<usize>().context("FRAG_THREADS must be an integer"))
        .transpose()?;
    if let Some(k) = requested.or(from_env) {
        if k == 0 {
            bail!("thread count must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .context("thread pool already initialized")?;
    }
    Ok(())
}

/// Writer for --out, or stdout when absent.
fn open_sink(out: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    match out {
        Some(path) => {
            let file = fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            Ok(Box::new(std::io::BufWriter::new(file)))
        }
        None => Ok(Box::new(std::io::BufWriter::new(std::io::stdout()))),
    }
}

#[derive(Serialize)]
struct MassRecord<'a> {
    rep: u64,
    t: f64,
    masses: &'a [f64],
}

fn emit_pipeline_jsonl(
    sink: &mut dyn Write,
    kind: PipelineKind,
    law: &OffspringLaw,
    size: usize,
    times: &[f64],
    reps: u64,
    seed: u64,
) -> anyhow::Result<()> {
    if times.is_empty() {
        bail!("no times given");
    }
    // Replicates are independent streams, so they can run in parallel;
    // collecting in replicate order keeps the output bytes identical for
    // any thread count.
    let chunks: anyhow::Result<Vec<Vec<u8>>> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replicate_rng(seed, 0, rep);
            let masses = replicate_masses(kind, law, size, times, &mut rng)?;
            let mut buf = Vec::new();
            for (t, ranked) in times.iter().zip(&masses) {
                let record = MassRecord {
                    rep,
                    t: *t,
                    masses: ranked.masses(),
                };
                serde_json::to_writer(&mut buf, &record)?;
                buf.push(b'\n');
            }
            Ok(buf)
        })
        .collect();
    for chunk in chunks? {
        sink.write_all(&chunk)?;
    }
    sink.flush()?;
    Ok(())
}

fn run_sample_tree(
    sink: &mut dyn Write,
    law_tag: &str,
    n: usize,
    seed: u64,
) -> anyhow::Result<()> {
    let law = OffspringLaw::from_tag(law_tag)?;
    let mut rng = replicate_rng(seed, 0, 0);
    let tree = gwtree::sample_conditioned_gw(&law, n, &mut rng)?;
    let walk = tree.lukasiewicz();
    let header = serde_json::json!({ "law": law.tag(), "n": n, "bn": law.bn(n) });
    writeln!(sink, "# {header}")?;
    writeln!(sink, "k,w_lex,c")?;
    for (k, w) in walk.iter().enumerate() {
        if k < n {
            writeln!(sink, "{k},{w},{}", tree.count(k))?;
        } else {
            writeln!(sink, "{k},{w},")?;
        }
    }
    sink.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct IntensityPoint {
    z: f64,
    density_p1: f64,
    levy_intensity: f64,
}

#[derive(Serialize)]
struct IntensityReport {
    alpha: f64,
    t: f64,
    normalization_constant: &'static str,
    values: Vec<IntensityPoint>,
    normalization_residual: f64,
    left_mass_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    moment_residual: Option<f64>,
}

fn run_intensity(
    sink: &mut dyn Write,
    alpha: f64,
    t: f64,
    z: &[f64],
    check_moment: bool,
) -> anyhow::Result<()> {
    let d = StableDensity::new(alpha)?;
    let mut values = Vec::with_capacity(z.len());
    for &point in z {
        values.push(IntensityPoint {
            z: point,
            density_p1: d.density(1.0, point)?,
            levy_intensity: if point > 0.0 {
                d.levy_intensity(t, point)?
            } else {
                f64::NAN
            },
        });
    }
    let report = IntensityReport {
        alpha,
        t,
        normalization_constant: if alpha == 2.0 { "c=1/2 (gaussian)" } else { "c=1" },
        values,
        normalization_residual: d.normalization()? - 1.0,
        left_mass_residual: d.left_mass()? - 1.0 / alpha,
        moment_residual: if check_moment {
            Some(d.mass_moment(t)? - 1.0 / ((alpha - 1.0) * t))
        } else {
            None
        },
    };
    serde_json::to_writer_pretty(&mut *sink, &report)?;
    sink.write_all(b"\n")?;
    sink.flush()?;
    Ok(())
}

/// The five golden tables and their file names.
fn figure_tables() -> [(&'static str, String); 5] {
    [
        ("figure_tree.csv", figure::tree_csv()),
        ("figure_prim_order.csv", figure::prim_order_csv()),
        ("figure_paths.csv", figure::paths_csv()),
        ("figure_components.csv", figure::components_csv()),
        ("figure_masses.csv", figure::masses_csv()),
    ]
}

fn run_reproduce_figure(out: &Option<PathBuf>) -> anyhow::Result<()> {
    let dir = out.clone().unwrap_or_else(|| Path::new(".").to_path_buf());
    fs::create_dir_all(&dir)?;
    for (name, contents) in figure_tables() {
        fs::write(dir.join(name), contents)?;
    }
    println!("wrote 5 tables to {}", dir.display());
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    configure_threads(cli.threads)?;
    let seed = cli.seed.unwrap_or(0);
    match cli.command {
        Command::SampleTree { law, n } => {
            let mut sink = open_sink(&cli.out)?;
            run_sample_tree(sink.as_mut(), &law, n, seed)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fragment {
            law,
            n,
            times,
            reps,
        } => {
            let law = OffspringLaw::from_tag(&law)?;
            let mut sink = open_sink(&cli.out)?;
            emit_pipeline_jsonl(
                sink.as_mut(),
                PipelineKind::BernoulliFragment,
                &law,
                n,
                &times,
                reps,
                seed,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Excursion {
            mode,
            law,
            m,
            t,
            reps,
        } => {
            let kind = match mode {
                ExcursionMode::Brownian => PipelineKind::BrownianExcursion,
                ExcursionMode::Lattice => PipelineKind::DriftLadder,
            };
            let law = OffspringLaw::from_tag(&law)?;
            let mut sink = open_sink(&cli.out)?;
            emit_pipeline_jsonl(sink.as_mut(), kind, &law, m, &t, reps, seed)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CrtCut { law, n, t, reps } => {
            let law = OffspringLaw::from_tag(&law)?;
            let mut sink = open_sink(&cli.out)?;
            emit_pipeline_jsonl(
                sink.as_mut(),
                PipelineKind::PoissonCut,
                &law,
                n,
                &t,
                reps,
                seed,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Converge => {
            let path = cli
                .config
                .as_ref()
                .context("converge requires --config <json>")?;
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let mut config = ExperimentConfig::from_json(&text)?;
            if let Some(seed) = cli.seed {
                config.seed = seed;
            }
            let report = run_convergence(&config)?;
            let out = cli.out.clone().or(config.out.as_ref().map(PathBuf::from));
            let mut sink = open_sink(&out)?;
            serde_json::to_writer_pretty(&mut *sink, &report)?;
            sink.write_all(b"\n")?;
            sink.flush()?;
            if report.pass {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
        Command::Intensity {
            alpha,
            t,
            z,
            check_moment,
        } => {
            let mut sink = open_sink(&cli.out)?;
            run_intensity(sink.as_mut(), alpha, t, &z, check_moment)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ReproduceFigure => {
            run_reproduce_figure(&cli.out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
