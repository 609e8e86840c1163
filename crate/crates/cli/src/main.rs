use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use triwalk::format::{format_f64, to_json_string, ComplexJson};
use triwalk::graph::{gen_complete, gen_cycle, gen_double_cone, parse_edge_list};
use triwalk::operators::{build_grover, build_t, OperatorSet};
use triwalk::oracles::{self, DEFAULT_MAX_DIM};
use triwalk::spectral::eigen::{eig_symmetric, eig_unitary, to_complex};
use triwalk::spectral::{birth_eigenvalue, verify_conventional, verify_operators};
use triwalk::triangulation::{find_partition, parse_partition};
use triwalk::walk::{evolve, initial_state, trajectory_csv, InitialSpec};
use triwalk::{Arc, Complex64, Error, Graph, Tolerances, TrianglePartition};

const EXIT_USAGE: u8 = 1;
const EXIT_NOT_TRIANGULABLE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

/// Grover walks with a moving shift on triangulable graphs.
#[derive(Debug, Parser)]
#[command(name = "triwalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, clap::Args)]
struct TolArgs {
    /// Allowed pairing error between predicted and computed eigenvalues.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Eigenvalues closer than this form one cluster.
    #[arg(long, default_value_t = 1e-7)]
    cluster_tol: f64,
    /// Relative singular-value threshold for ranks and kernels.
    #[arg(long, default_value_t = 1e-9)]
    rank_tol: f64,
    /// Bound on eigenpair residuals.
    #[arg(long, default_value_t = 1e-9)]
    residual_tol: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Result<Tolerances, CliError> {
        for (name, v) in [
            ("--tol", self.tol),
            ("--cluster-tol", self.cluster_tol),
            ("--rank-tol", self.rank_tol),
            ("--residual-tol", self.residual_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::usage(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Tolerances {
            tol: self.tol,
            cluster_tol: self.cluster_tol,
            rank_tol: self.rank_tol,
            residual_tol: self.residual_tol,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    T,
    U,
    Uc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Walk {
    U,
    Uc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleWhat {
    /// Closed-form spectrum of T, ascending.
    TSpectrum,
    /// Closed-form birth eigenvectors of U_c for one k.
    BirthVectors,
    /// Directly computed spectrum of U_c with the canonical partition.
    UcSpectrum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleFamily {
    DoubleCone,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the edge list of a named graph: k4, complete:N, cycle:N, double-cone:N.
    Gen {
        family: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search for a triangle partition of the graph.
    Triangulate {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Maximum number of search-node expansions.
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare the computed spectrum of U_c with its prediction from σ(T).
    /// Exits 0 iff they match.
    Verify {
        graph: PathBuf,
        /// Triangle partition file; searched for when omitted.
        partition: Option<PathBuf>,
        /// Check the Grover walk U instead (no partition needed).
        #[arg(long)]
        conventional: bool,
        #[command(flatten)]
        tols: TolArgs,
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the eigenvalues of T, U or U_c.
    Spectrum {
        #[arg(long, value_enum)]
        op: Op,
        graph: PathBuf,
        partition: Option<PathBuf>,
        #[command(flatten)]
        tols: TolArgs,
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve a state and write vertex distributions as CSV.
    Simulate {
        graph: PathBuf,
        partition: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Start on one arc, given as "u v".
        #[arg(long, conflicts_with = "start_vertex")]
        start_arc: Option<String>,
        /// Start uniformly on the arcs ending at this vertex.
        #[arg(long)]
        start_vertex: Option<usize>,
        /// Keep every s-th step.
        #[arg(long, default_value_t = 1)]
        stride: usize,
        #[arg(long, value_enum, default_value_t = Walk::Uc)]
        walk: Walk,
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form results for known families.
    Oracle {
        #[arg(value_enum)]
        family: OracleFamily,
        n: usize,
        #[arg(long, value_enum)]
        what: OracleWhat,
        /// Birth eigenvalue index: −ω^k.
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn partition(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::InvalidPartition(_) => e.into(),
            other => CliError {
                code: EXIT_VALIDATION,
                message: format!("invalid partition: {other}"),
            },
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotTriangulable(_) => EXIT_NOT_TRIANGULABLE,
            Error::InvalidPartition(_) => EXIT_VALIDATION,
            Error::NotSymmetric { .. }
            | Error::NotUnitary { .. }
            | Error::NotSquare { .. }
            | Error::Numerical(_)
            | Error::DimensionCap { .. }
            | Error::SearchBudgetExceeded { .. } => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::usage(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn max_dim() -> CliResult<usize> {
    match std::env::var("TRIWALK_MAX_DIM") {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::usage(format!(
                "TRIWALK_MAX_DIM must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

fn check_dim(dim: usize) -> CliResult<()> {
    let cap = max_dim()?;
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap }.into());
    }
    Ok(())
}

fn load_graph(path: &Path) -> CliResult<Graph> {
    Ok(parse_edge_list(&read_input(path)?)?)
}

fn load_partition(
    g: &Graph,
    path: Option<&Path>,
    limit: Option<u64>,
) -> CliResult<TrianglePartition> {
    match path {
        Some(p) => {
            let text = read_input(p)?;
            let tris = parse_partition(&text).map_err(CliError::partition)?;
            TrianglePartition::new(g, tris).map_err(CliError::partition)
        }
        None => Ok(find_partition(g, limit)?),
    }
}

fn parse_family(spec: &str) -> CliResult<Graph> {
    let (name, arg) = match spec.split_once(':') {
        Some((name, arg)) => (name, Some(arg)),
        None => (spec, None),
    };
    let size = |arg: Option<&str>| -> CliResult<usize> {
        arg.ok_or_else(|| CliError::usage(format!("family {name} needs a size, as in {name}:5")))?
            .parse()
            .map_err(|_| CliError::usage(format!("invalid size in {spec:?}")))
    };
    let g = match name {
        "k4" if arg.is_none() => gen_complete(4)?,
        "complete" => gen_complete(size(arg)?)?,
        "cycle" => gen_cycle(size(arg)?)?,
        "double-cone" => gen_double_cone(size(arg)?)?,
        _ => {
            return Err(CliError::usage(format!(
                "unknown family {spec:?}; expected k4, complete:N, cycle:N or double-cone:N"
            )))
        }
    };
    Ok(g)
}

fn parse_arc(s: &str) -> CliResult<Arc> {
    let parts: Vec<&str> = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|p| !p.is_empty())
        .collect();
    match parts.as_slice() {
        [u, v] => match (u.parse(), v.parse()) {
            (Ok(u), Ok(v)) => Ok(Arc::new(u, v)),
            _ => Err(CliError::usage(format!("invalid arc {s:?}"))),
        },
        _ => Err(CliError::usage(format!(
            "an arc is two vertex indices, got {s:?}"
        ))),
    }
}

fn reals_output(values: &[f64], format: Format) -> CliResult<String> {
    Ok(match format {
        Format::Json => to_json_string(values)? + "\n",
        Format::Csv | Format::Text => values.iter().map(|&x| format_f64(x) + "\n").collect(),
    })
}

fn complex_output(values: &[Complex64], format: Format) -> CliResult<String> {
    Ok(match format {
        Format::Json => {
            let js: Vec<ComplexJson> = values.iter().map(|&z| z.into()).collect();
            to_json_string(&js)? + "\n"
        }
        Format::Csv => std::iter::once("re,im\n".to_string())
            .chain(
                values
                    .iter()
                    .map(|z| format!("{},{}\n", format_f64(z.re), format_f64(z.im))),
            )
            .collect(),
        Format::Text => values
            .iter()
            .map(|z| format!("{} {}\n", format_f64(z.re), format_f64(z.im)))
            .collect(),
    })
}

#[derive(Serialize)]
struct BirthVectorsJson {
    n: usize,
    k: usize,
    eigenvalue: ComplexJson,
    arcs: Vec<[usize; 2]>,
    vectors: Vec<Vec<ComplexJson>>,
}

fn cmd_oracle(n: usize, what: OracleWhat, k: usize, format: Format) -> CliResult<String> {
    match what {
        OracleWhat::TSpectrum => reals_output(&oracles::double_cone_t_spectrum(n)?, format),
        OracleWhat::UcSpectrum => {
            let (g, pi) = triwalk::triangulation::canonical_double_cone_partition(n)?;
            check_dim(g.n_arcs())?;
            let eig = oracles::brute_force_spectrum(&g, &pi, usize::MAX)?;
            complex_output(&eig.values, format)
        }
        OracleWhat::BirthVectors => {
            let (g, _) = triwalk::triangulation::canonical_double_cone_partition(n)?;
            let vectors = oracles::double_cone_birth_vectors(n, k)?;
            let arcs = g.arcs();
            let body = BirthVectorsJson {
                n,
                k,
                eigenvalue: birth_eigenvalue(k).into(),
                arcs: arcs.arcs().iter().map(|a| [a.origin, a.terminus]).collect(),
                vectors: vectors
                    .iter()
                    .map(|v| v.iter().map(|&z| z.into()).collect())
                    .collect(),
            };
            Ok(match format {
                Format::Json => to_json_string(&body)? + "\n",
                Format::Csv | Format::Text => {
                    let mut s = String::from("vector,origin,terminus,re,im\n");
                    for (i, v) in vectors.iter().enumerate() {
                        for (a, z) in arcs.arcs().iter().zip(v.iter()) {
                            s += &format!(
                                "{i},{},{},{},{}\n",
                                a.origin,
                                a.terminus,
                                format_f64(z.re),
                                format_f64(z.im)
                            );
                        }
                    }
                    s
                }
            })
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Gen {
            family,
            out,
            format,
        } => {
            let g = parse_family(&family)?;
            let text = match format {
                Format::Json => to_json_string(&g.to_json())? + "\n",
                Format::Csv | Format::Text => g.to_edge_list(),
            };
            write_output(out.as_deref(), &text)
        }
        Command::Triangulate {
            graph,
            out,
            limit,
            format,
        } => {
            let g = load_graph(&graph)?;
            let pi = find_partition(&g, limit)?;
            let text = match format {
                Format::Json => to_json_string(&pi.to_json())? + "\n",
                Format::Csv | Format::Text => pi.to_text(),
            };
            write_output(out.as_deref(), &text)
        }
        Command::Verify {
            graph,
            partition,
            conventional,
            tols,
            limit,
            out,
        } => {
            let tols = tols.tolerances()?;
            let g = load_graph(&graph)?;
            check_dim(g.n_arcs())?;
            let report = if conventional {
                verify_conventional(&g, &tols)?
            } else {
                let pi = load_partition(&g, partition.as_deref(), limit)?;
                verify_operators(&OperatorSet::build(&g, &pi)?, &tols)?
            };
            write_output(out.as_deref(), &(to_json_string(&report)? + "\n"))?;
            if report.matched {
                Ok(())
            } else {
                Err(CliError {
                    code: EXIT_VALIDATION,
                    message: format!(
                        "spectra do not match (max pairing error {})",
                        format_f64(report.max_pairing_error)
                    ),
                })
            }
        }
        Command::Spectrum {
            op,
            graph,
            partition,
            tols,
            limit,
            format,
            out,
        } => {
            let tols = tols.tolerances()?;
            let g = load_graph(&graph)?;
            let text = match op {
                Op::T => reals_output(
                    &eig_symmetric(&build_t(&g), tols.residual_tol)?.values,
                    format,
                )?,
                Op::U => {
                    check_dim(g.n_arcs())?;
                    let eig = eig_unitary(&to_complex(&build_grover(&g)), tols.residual_tol)?;
                    complex_output(&eig.values, format)?
                }
                Op::Uc => {
                    check_dim(g.n_arcs())?;
                    let pi = load_partition(&g, partition.as_deref(), limit)?;
                    let ops = OperatorSet::build(&g, &pi)?;
                    let eig = eig_unitary(&to_complex(&ops.u_c), tols.residual_tol)?;
                    complex_output(&eig.values, format)?
                }
            };
            write_output(out.as_deref(), &text)
        }
        Command::Simulate {
            graph,
            partition,
            steps,
            start_arc,
            start_vertex,
            stride,
            walk,
            limit,
            out,
        } => {
            if stride == 0 {
                return Err(CliError::usage("--stride must be at least 1"));
            }
            let g = load_graph(&graph)?;
            check_dim(g.n_arcs())?;
            let arcs = g.arcs();
            let spec = match (start_arc, start_vertex) {
                (Some(a), _) => InitialSpec::Point(parse_arc(&a)?),
                (None, Some(x)) => InitialSpec::VertexUniform(x),
                (None, None) => InitialSpec::Uniform,
            };
            let psi = initial_state(&arcs, spec)?;
            let u = match walk {
                Walk::U => build_grover(&g),
                Walk::Uc => {
                    let pi = load_partition(&g, partition.as_deref(), limit)?;
                    OperatorSet::build(&g, &pi)?.u_c
                }
            };
            let trajectory = evolve(&u, &psi, steps, stride);
            write_output(out.as_deref(), &trajectory_csv(&arcs, &trajectory))
        }
        Command::Oracle {
            family: OracleFamily::DoubleCone,
            n,
            what,
            k,
            format,
            out,
        } => {
            let text = cmd_oracle(n, what, k, format)?;
            write_output(out.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.message);
            ExitCode::from(e.code)
        }
    }
}
