use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spiders::diagram::{Diagram, DiagramError};
use spiders::fibre::{evaluate, FibreContext, FibreError};
use spiders::hadamard::{hadamard_graph, HadamardError, HadamardMatrix, QuantumHadamard, MAX_AUT_SIZE};
use spiders::report::Report;
use spiders::rewrite::{normalize_traced, RewriteError};
use spiders::tensor::Tensor;
use spiders::verify::{self, VerifyError};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "spiders", version, about = "Complementary spider diagrams and Hadamard matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a Hadamard matrix file.
    #[command(subcommand)]
    Gen(Gen),
    /// Check a matrix file against the Hadamard-morphism identities.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Build the Hadamard graph of a matrix.
    Graph {
        file: PathBuf,
        /// Add a loop at every row vertex.
        #[arg(long)]
        looped: bool,
        /// Write the graph in DOT format to this file.
        #[arg(short = 'o', long = "output")]
        dot: Option<PathBuf>,
    },
    /// Automorphism group and its action on the Hadamard graph.
    Aut { file: PathBuf },
    /// Evaluate a diagram under a fibre functor.
    Eval {
        file: PathBuf,
        /// Classical Hadamard matrix file.
        #[arg(long, group = "functor")]
        matrix: Option<PathBuf>,
        /// Standard functor on C^N (black spiders only).
        #[arg(long, group = "functor")]
        standard: Option<usize>,
        /// M_n with the transposition as quantum Hadamard matrix.
        #[arg(long, group = "functor")]
        mn: Option<usize>,
    },
    /// Reduce a planar diagram with the rewrite rules.
    Normalize {
        file: PathBuf,
        #[arg(long = "N")]
        n: u64,
        /// List every rule application.
        #[arg(long)]
        trace: bool,
    },
    /// Saturated span ranks against squared Catalan numbers.
    Dims {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_legs: usize,
    },
    /// Gram determinant of the five (2,2) diagrams.
    Gram {
        #[arg(long = "N")]
        n: usize,
    },
    /// Size-four identities with the Fourier transform on Z2 x Z2.
    So4,
    /// Quantum Hadamard matrices.
    #[command(subcommand)]
    Qh(Qh),
    /// Closed-diagram values across all built-in matrices of one size.
    Invariance {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 12)]
        max_edges: usize,
        #[arg(long, default_value_t = 120)]
        count: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Sylvester construction of size 2^n.
    Walsh {
        #[arg(long)]
        n: u32,
        #[arg(short = 'o', long = "output")]
        out: Option<PathBuf>,
    },
    /// Paley construction of size q+1 for a prime q ≡ 3 mod 4.
    Paley {
        #[arg(long)]
        q: u64,
        #[arg(short = 'o', long = "output")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    Had { file: PathBuf },
}

#[derive(Subcommand)]
enum Qh {
    /// The transposition on M_n.
    Transpose {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}: {1}")]
    Io(PathBuf, io::Error),
    #[error(transparent)]
    Hadamard(#[from] HadamardError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Fibre(#[from] FibreError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load_matrix(path: &Path) -> CliResult<HadamardMatrix> {
    Ok(read(path)?.parse()?)
}

fn load_diagram(path: &Path) -> CliResult<Diagram> {
    Ok(read(path)?.parse()?)
}

fn name_of(path: &Path) -> String {
    path.display().to_string()
}

/// Non-zero entries as `i0,i1,..=value` with lower legs first.
fn tensor_data(r: &mut Report, t: &Tensor) {
    let (k, l) = t.slot();
    r.data("slot", format!("({k},{l})"));
    r.data("dimension", t.dim());
    let legs = k + l;
    for (flat, &e) in t.entries().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mut idx = Vec::with_capacity(legs);
        let mut rest = flat;
        for _ in 0..legs {
            idx.push(rest % t.dim());
            rest /= t.dim();
        }
        let key = idx.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        r.data(format!("[{key}]"), t.get(&idx));
    }
}

fn gen(cmd: Gen, command: String) -> CliResult<Report> {
    let (h, out) = match cmd {
        Gen::Walsh { n, out } => (HadamardMatrix::walsh(n)?, out),
        Gen::Paley { q, out } => (HadamardMatrix::paley_type1(q)?, out),
    };
    let mut r = Report::new(command);
    r.data("size", h.size());
    match out {
        Some(path) => {
            write(&path, &h.to_file_string())?;
            r.data("written", name_of(&path));
        }
        None => {
            for (i, line) in h.to_file_string().lines().skip(1).enumerate() {
                r.data(format!("row {i}"), line);
            }
        }
    }
    r.check_true("generated matrix is Hadamard", true);
    Ok(r)
}

fn graph(file: &Path, looped: bool, dot: Option<PathBuf>, command: String) -> CliResult<Report> {
    let h = load_matrix(file)?;
    let g = hadamard_graph(&h, looped);
    let mut r = Report::new(command);
    let m = g.adjacency();
    let n = h.size() as i64;
    let symmetric = (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == m[j][i]));
    r.check_true("symmetric", symmetric);
    let bipartite =
        (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == 0 || i == j || g.is_row_vertex(i) != g.is_row_vertex(j)));
    r.check_true("row and column vertices only meet each other", bipartite);
    let regular = (0..m.len()).all(|i| m[i].iter().sum::<i64>() == n + i64::from(looped && g.is_row_vertex(i)));
    r.check_true("degree N (plus the loop)", regular);
    for line in g.to_adjacency_list().lines() {
        if let Some((v, nbrs)) = line.split_once(": ") {
            r.data(v, nbrs);
        }
    }
    if let Some(path) = dot {
        write(&path, &g.to_dot())?;
        r.data("dot", name_of(&path));
    }
    Ok(r)
}

fn aut(file: &Path, command: String) -> CliResult<Report> {
    let h = load_matrix(file)?;
    if h.size() > MAX_AUT_SIZE {
        return Err(CliError::Usage(format!("automorphism search is bounded by N ≤ {MAX_AUT_SIZE}")));
    }
    let mut r = verify::graph_action(&name_of(file), &h)?;
    r.command = command;
    Ok(r)
}

fn eval(file: &Path, matrix: Option<PathBuf>, standard: Option<usize>, mn: Option<usize>, command: String) -> CliResult<Report> {
    let d = load_diagram(file)?;
    let ctx = match (matrix, standard, mn) {
        (Some(p), None, None) => FibreContext::Classical(load_matrix(&p)?),
        (None, Some(n), None) => FibreContext::Standard(n),
        (None, None, Some(n)) => QuantumHadamard::transpose(n)?.context(),
        _ => return Err(CliError::Usage("choose one of --matrix, --standard, --mn".into())),
    };
    let t = evaluate(&d, &ctx)?;
    let mut r = Report::new(command);
    r.data("functor", ctx.name());
    if d.is_closed() {
        r.data("value", t.get(&[]));
    } else {
        tensor_data(&mut r, &t);
    }
    Ok(r)
}

fn normalize(file: &Path, n: u64, trace: bool, command: String) -> CliResult<Report> {
    let d = load_diagram(file)?;
    let (res, scalar, steps) = normalize_traced(&d, n)?;
    let mut r = Report::new(command);
    r.data("scalar", &scalar);
    r.data("steps", steps.steps.len());
    if trace {
        for line in steps.to_string().lines() {
            r.data("step", line);
        }
    }
    let reduced = res.vertices().is_empty() && res.edges().is_empty() && res.loops() == 0;
    if d.is_closed() && reduced {
        r.data("value", &scalar * &res.prefactor().at(n));
    } else {
        for line in res.to_string().lines() {
            r.data("residual", line);
        }
    }
    if d.is_closed() && d.is_even() {
        r.check_true("closed even diagram reduces to a scalar", reduced);
    }
    Ok(r)
}

fn run(cli: Cli, command: String) -> CliResult<Report> {
    let rename = |mut r: Report| {
        r.command = command.clone();
        r
    };
    Ok(match cli.command {
        Command::Gen(g) => gen(g, command)?,
        Command::Verify(VerifyCmd::Had { file }) => {
            let h = load_matrix(&file)?;
            rename(verify::hadamard_morphism(&name_of(&file), &h)?)
        }
        Command::Graph { file, looped, dot } => graph(&file, looped, dot, command)?,
        Command::Aut { file } => aut(&file, command)?,
        Command::Eval { file, matrix, standard, mn } => eval(&file, matrix, standard, mn, command)?,
        Command::Normalize { file, n, trace } => normalize(&file, n, trace, command)?,
        Command::Dims { n, max_legs } => rename(verify::dims(n, max_legs)?),
        Command::Gram { n } => rename(verify::gram(n)?),
        Command::So4 => rename(spiders::hadamard::so4_check()?),
        Command::Qh(Qh::Transpose { n }) => rename(verify::quantum_transpose(n)?),
        Command::Invariance { size, max_edges, count, seed } => {
            rename(verify::invariance(size, max_edges, count, seed)?)
        }
    })
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let command = args[1..].join(" ");
    let cli = Cli::parse();
    match run(cli, command) {
        Ok(report) => {
            let mut out = io::stdout().lock();
            let _ = write!(out, "{report}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn arguments_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn functor_flags_exclude_each_other() {
        assert!(Cli::try_parse_from(["spiders", "eval", "d", "--standard", "2", "--mn", "2"]).is_err());
        assert!(Cli::try_parse_from(["spiders", "eval", "d", "--mn", "2"]).is_ok());
    }
}
