use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pwsample_core::evolution::evolve;
use pwsample_core::generators::{
    generate, lemma_sharpness_report, random_pw_signal, GeneratorSpec,
};
use pwsample_core::io::{self, RunConfig};
use pwsample_core::sampling::certify;
use pwsample_core::spacetime::{take_spacetime_samples, SpaceTimeReconstructor};
use pwsample_core::{eigendecompose, Error, ErrorClass, Graph64, MeasureMode, Signal64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "pwsample",
    version,
    about = "Sampling and reconstruction of band-limited graph signals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and eigenvectors of the graph Laplacian.
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sampling certificate for a vertex set at a bandwidth.
    Certify {
        #[command(flatten)]
        graph: GraphArgs,
        /// Comma-separated vertex identifiers.
        #[arg(long)]
        set: String,
        #[arg(long, allow_negative_numbers = true)]
        omega: f64,
        /// Also write the dual frame, one signal CSV per sampled vertex.
        #[arg(long)]
        dual_dir: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Schrödinger evolution of a signal over a time grid.
    Evolve {
        #[command(flatten)]
        graph: GraphArgs,
        /// Signal file with lines `v re [im]`.
        #[arg(long)]
        signal: PathBuf,
        #[command(flatten)]
        times: TimeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Space-time reconstruction from samples on S at times kπ/omega.
    Reconstruct {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        set: String,
        #[arg(long)]
        omega: f64,
        /// Truncation: samples k = -K..=K.
        #[arg(long = "K")]
        k_trunc: usize,
        /// Sample file with lines `k v re [im]` and optionally `laplacian v re [im]`.
        #[arg(long)]
        samples: Option<PathBuf>,
        /// Ground-truth initial signal; samples are generated from it when no sample file is given.
        #[arg(long)]
        signal: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Switch::On)]
        derive_laplacian: Switch,
        /// Seed for the random band-limited signal used when neither samples nor signal are given.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        times: TimeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sharpness report for complete bipartite graphs K_{N,M}.
    DemoBipartite {
        n: usize,
        m: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Writes a generated graph as an edge list.
    Gen {
        /// e.g. `path:5`, `cycle:8`, `complete-bipartite:5:3`, `erdos-renyi:30:0.2:0.5:2:7`.
        #[arg(long)]
        generate: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Measure::Counting)]
        measure: Measure,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Edge-list file with lines `u v [w]`.
    #[arg(
        long,
        conflicts_with = "generate",
        required_unless_present = "generate"
    )]
    graph: Option<PathBuf>,
    /// Generator spec used instead of a graph file.
    #[arg(long)]
    generate: Option<String>,
    /// Overrides the seed of a random generator spec.
    #[arg(long = "graph-seed")]
    graph_seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Measure::Counting)]
    measure: Measure,
}

#[derive(Args)]
struct TimeArgs {
    /// Comma-separated time values.
    #[arg(long, conflicts_with = "t_grid", allow_hyphen_values = true)]
    t: Option<String>,
    /// `start:stop:step`.
    #[arg(long, allow_hyphen_values = true)]
    t_grid: Option<String>,
}

#[derive(Args)]
struct OutArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Measure {
    Counting,
    Degree,
}

impl From<Measure> for MeasureMode {
    fn from(m: Measure) -> Self {
        match m {
            Measure::Counting => MeasureMode::Counting,
            Measure::Degree => MeasureMode::Degree,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>().map(Error::class) {
        Some(ErrorClass::Precondition) => 3,
        Some(ErrorClass::Numerical) => 4,
        _ => 2,
    }
}

fn config(command: &str, measure: MeasureMode, out: &OutArgs) -> RunConfig {
    RunConfig {
        command: command.into(),
        measure,
        output: out.out.as_ref().map(|p| p.display().to_string()),
        ..RunConfig::default()
    }
}

fn load_graph(args: &GraphArgs, cfg: &mut RunConfig) -> anyhow::Result<Graph64> {
    let mode = MeasureMode::from(args.measure);
    if let Some(path) = &args.graph {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        cfg.inputs.push(path.display().to_string());
        return Ok(io::read_graph(&text, mode)?);
    }
    let spec = generator_spec(
        args.generate.as_deref().expect("clap enforces one source"),
        args.graph_seed,
    )?;
    cfg.generator = Some(spec.clone());
    Ok(generate(&spec, mode)?.graph)
}

fn generator_spec(text: &str, seed: Option<u64>) -> anyhow::Result<GeneratorSpec> {
    let spec: GeneratorSpec = text.parse()?;
    Ok(match seed {
        Some(s) => spec.with_seed(s),
        None => spec,
    })
}

fn times(args: &TimeArgs, cfg: &mut RunConfig) -> anyhow::Result<Vec<f64>> {
    if let Some(grid) = &args.t_grid {
        cfg.t_grid = Some(grid.clone());
        return Ok(io::parse_t_grid(grid)?);
    }
    let Some(list) = &args.t else {
        bail!("one of --t or --t-grid is required");
    };
    let t = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .with_context(|| format!("bad time value {s:?}"))
        })
        .collect::<anyhow::Result<Vec<_>>>()
        .map_err(|e| anyhow::Error::from(Error::InvalidArgument(format!("{e:#}"))))?;
    cfg.t = Some(t.clone());
    Ok(t)
}

fn set_ids(list: &str) -> Vec<String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Writes to a temporary file beside `path`, then renames it into place.
fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn emit(out: &OutArgs, contents: &str) -> anyhow::Result<()> {
    match &out.out {
        Some(path) => write_atomic(path, contents),
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

fn read_text(path: &Path, cfg: &mut RunConfig) -> anyhow::Result<String> {
    cfg.inputs.push(path.display().to_string());
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Spectrum { graph, out } => {
            let mut cfg = config("spectrum", graph.measure.into(), &out);
            let g = load_graph(&graph, &mut cfg)?;
            let spec = eigendecompose(&g)?;
            emit(&out, &io::spectrum_csv(&g, &spec, &cfg))
        }
        Command::Certify {
            graph,
            set,
            omega,
            dual_dir,
            out,
        } => {
            let mut cfg = config("certify", graph.measure.into(), &out);
            cfg.set = Some(set_ids(&set));
            cfg.omega = Some(omega);
            let g = load_graph(&graph, &mut cfg)?;
            let s = io::parse_vertex_list(&g, &set)?;
            let spec = eigendecompose(&g)?;
            let cert = certify(&g, &spec, &s, omega)?;
            if let Some(dir) = dual_dir {
                let Some(dual) = &cert.dual_frame else {
                    return Err(Error::NotSamplingSet {
                        c: cert.frame.lower,
                        threshold: cert.frame.threshold,
                    }
                    .into());
                };
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                for (name, body) in io::dual_frame_files(&g, dual, &cfg) {
                    write_atomic(&dir.join(name), &body)?;
                }
            }
            emit(
                &out,
                &io::certificate_csv(&g, std::slice::from_ref(&cert), &cfg),
            )
        }
        Command::Evolve {
            graph,
            signal,
            times: targs,
            out,
        } => {
            let mut cfg = config("evolve", graph.measure.into(), &out);
            let g = load_graph(&graph, &mut cfg)?;
            let f = io::read_signal(&g, &read_text(&signal, &mut cfg)?)?;
            let ts = times(&targs, &mut cfg)?;
            let spec = eigendecompose(&g)?;
            let series = ts
                .into_iter()
                .map(|t| Ok((t, evolve(&spec, &f, t)?)))
                .collect::<pwsample_core::Result<Vec<_>>>()?;
            emit(&out, &io::time_series_csv(&g, &series, &cfg)?)
        }
        Command::Reconstruct {
            graph,
            set,
            omega,
            k_trunc,
            samples,
            signal,
            derive_laplacian,
            seed,
            times: targs,
            out,
        } => {
            let mut cfg = config("reconstruct", graph.measure.into(), &out);
            cfg.set = Some(set_ids(&set));
            cfg.omega = Some(omega);
            cfg.k_trunc = Some(k_trunc);
            cfg.derive_laplacian = Some(derive_laplacian == Switch::On);
            let g = load_graph(&graph, &mut cfg)?;
            let s = io::parse_vertex_list(&g, &set)?;
            let spec = eigendecompose(&g)?;
            let truth: Option<Signal64> = match (&signal, &samples) {
                (Some(path), _) => Some(io::read_signal(&g, &read_text(path, &mut cfg)?)?),
                (None, Some(_)) => None,
                (None, None) => {
                    let seed = seed.unwrap_or(0);
                    cfg.seed = Some(seed);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    Some(random_pw_signal(&g, &spec, omega, &mut rng)?)
                }
            };
            let st = match &samples {
                Some(path) => {
                    let text = read_text(path, &mut cfg)?;
                    io::read_spacetime_samples(&g, &s, omega, k_trunc, &text)?
                }
                None => {
                    let f = truth
                        .as_ref()
                        .expect("ground truth present without a sample file");
                    take_spacetime_samples(&spec, f, &s, omega, k_trunc)?
                }
            };
            let ts = times(&targs, &mut cfg)?;
            let cert = certify(&g, &spec, &s, omega)?;
            let rec = SpaceTimeReconstructor::from_certificate(
                &g,
                st,
                &cert,
                derive_laplacian == Switch::On,
            )?;
            let rows = ts
                .into_iter()
                .map(|t| {
                    let exact = truth.as_ref().map(|f| evolve(&spec, f, t)).transpose()?;
                    Ok((t, rec.at(t)?, exact))
                })
                .collect::<pwsample_core::Result<Vec<_>>>()?;
            emit(&out, &io::reconstruction_csv(&g, &rows, &cfg))
        }
        Command::DemoBipartite { n, m, out } => {
            let mut cfg = config("demo-bipartite", MeasureMode::Counting, &out);
            cfg.generator = Some(GeneratorSpec::CompleteBipartite { n, m });
            let report = lemma_sharpness_report::<f64>(n, m)?;
            let text = io::lemma_report_text(&report);
            let csv = io::lemma_report_csv(&report, &cfg);
            if out.out.is_some() {
                print!("{text}");
            } else {
                eprint!("{text}");
            }
            emit(&out, &csv)?;
            if report.all_pass() {
                Ok(())
            } else {
                Err(Error::NumericalFailure("sharpness report has failing items".into()).into())
            }
        }
        Command::Gen {
            generate: text,
            seed,
            measure,
            out,
        } => {
            let mut cfg = config("gen", measure.into(), &out);
            let spec = generator_spec(&text, seed)?;
            cfg.generator = Some(spec.clone());
            let generated = generate::<f64>(&spec, measure.into())?;
            cfg.seed = generated.subseed;
            emit(&out, &io::write_edge_list(&generated.graph, &cfg))
        }
    }
}
