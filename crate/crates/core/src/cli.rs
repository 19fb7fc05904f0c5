//! The `dualsolve` command line: `solve`, `generate` and `verify`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use crate::gcj::{self, GcjError, Size};
use crate::problems::{self, Answer, Backend, Problem, ProblemError};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "dualsolve",
    version,
    about = "Solve Code Jam problems with CP, MIP or hand-written backends"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Solve every case of an input file and write the answers.
    Solve {
        #[arg(long)]
        problem: Problem,
        #[arg(long, default_value = "oracle")]
        backend: Backend,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
        /// Solve cases concurrently; output order is unchanged.
        #[arg(long)]
        parallel: bool,
    },
    /// Write a seeded instance file and its answer file.
    Generate {
        #[arg(long)]
        problem: Problem,
        #[arg(long, default_value = "small")]
        size: Size,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "out-dir")]
        out_dir: PathBuf,
    },
    /// Compare an output file against reference answers.
    Verify {
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        expected: PathBuf,
        #[arg(long)]
        actual: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Input file; lets triangle answers be checked against the cases.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: GcjError },
    #[error("case #{index}: {source}")]
    Solve { index: usize, source: ProblemError },
    #[error("backend `{backend}` is not available for {problem}")]
    Unsupported { problem: Problem, backend: Backend },
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Log(io::Error),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn format_err(path: &Path) -> impl Fn(GcjError) -> CliError + '_ {
    move |source| CliError::Format {
        path: path.to_path_buf(),
        source,
    }
}

/// Runs one command, writing progress and timings to `log`.
pub fn run(config: &RunConfig, log: &mut dyn Write) -> Result<(), CliError> {
    match &config.command {
        Command::Solve {
            problem,
            backend,
            input,
            output,
            parallel,
        } => solve(*problem, *backend, input, output, *parallel, log),
        Command::Generate {
            problem,
            size,
            count,
            seed,
            out_dir,
        } => {
            let (i, a) =
                gcj::write_instances(out_dir, *problem, *count, *size, *seed).map_err(|source| CliError::Io {
                    path: out_dir.clone(),
                    source,
                })?;
            writeln!(log, "wrote {} and {}", i.display(), a.display()).map_err(CliError::Log)
        }
        Command::Verify {
            problem,
            expected,
            actual,
            tol,
            input,
        } => verify(*problem, expected, actual, *tol, input.as_deref(), log),
    }
}

fn solve(
    problem: Problem,
    backend: Backend,
    input: &Path,
    output: &Path,
    parallel: bool,
    log: &mut dyn Write,
) -> Result<(), CliError> {
    if !problem.supports(backend) {
        return Err(CliError::Unsupported { problem, backend });
    }
    let start = Instant::now();
    let mut records = gcj::parse_input(problem, &read(input)?).map_err(format_err(input))?;
    let one = |r: &gcj::CaseRecord| -> (Result<Answer, ProblemError>, Duration) {
        let t = Instant::now();
        let a = problems::solve(&r.case, backend);
        (a, t.elapsed())
    };
    let results: Vec<_> = if parallel {
        records.par_iter().map(one).collect()
    } else {
        records.iter().map(one).collect()
    };
    for (r, (answer, elapsed)) in records.iter_mut().zip(results) {
        let answer = answer.map_err(|source| CliError::Solve { index: r.index, source })?;
        writeln!(log, "Case #{}: {:.6}s", r.index, elapsed.as_secs_f64()).map_err(CliError::Log)?;
        r.answer = Some(answer);
    }
    let text = gcj::format_output(&records).map_err(format_err(output))?;
    fs::write(output, text).map_err(|source| CliError::Io {
        path: output.to_path_buf(),
        source,
    })?;
    writeln!(log, "TOTAL {:.6}", start.elapsed().as_secs_f64()).map_err(CliError::Log)
}

fn verify(
    problem: Problem,
    expected: &Path,
    actual: &Path,
    tol: f64,
    input: Option<&Path>,
    log: &mut dyn Write,
) -> Result<(), CliError> {
    let want = gcj::parse_output(problem, &read(expected)?).map_err(format_err(expected))?;
    let got = gcj::parse_output(problem, &read(actual)?).map_err(format_err(actual))?;
    let cases = match input {
        Some(p) => Some(gcj::parse_input(problem, &read(p)?).map_err(format_err(p))?),
        None => None,
    };
    if let Some(cases) = &cases {
        if cases.len() != want.len() {
            return Err(CliError::Mismatch(format!(
                "input has {} cases, expected answers {}",
                cases.len(),
                want.len()
            )));
        }
    }
    for (i, (w, g)) in want.iter().zip(&got).enumerate() {
        let case = cases.as_ref().map(|c| &c[i].case);
        if !gcj::answers_match(w, g, tol, case) {
            return Err(CliError::Mismatch(format!(
                "case #{}: expected `{}`, got `{}`",
                i + 1,
                gcj::format_answer(w),
                gcj::format_answer(g)
            )));
        }
    }
    if want.len() != got.len() {
        return Err(CliError::Mismatch(format!(
            "expected {} cases, got {}",
            want.len(),
            got.len()
        )));
    }
    writeln!(log, "OK {} cases", want.len()).map_err(CliError::Log)
}
