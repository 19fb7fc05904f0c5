//! Four Code Jam problems, each with declarative models for the solver
//! backends and hand-written algorithms used as fast paths and oracles.
//!
//! | problem | `cp` | `mip` | `oracle` |
//! |---|---|---|---|
//! | triangle | labeling | n/a (nonlinear) | constructive |
//! | dancing | branch-and-bound | MIP | closed form |
//! | starwars | n/a (continuous) | LP | binary search |
//! | minelayer | branch-and-bound | MIP | block counting |

pub mod dancing;
pub mod minelayer;
pub mod starwars;
pub mod triangle;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fd::FdError;
use crate::lp::LpError;
use crate::model::ModelError;

pub use dancing::DancingCase;
pub use minelayer::MineLayerCase;
pub use starwars::{Ship, StarWarsCase};
pub use triangle::{TriangleAnswer, TriangleCase};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("no solution: {0}")]
    Infeasible(String),
    #[error("backend `{backend}` is not available for {problem}")]
    Unsupported { problem: Problem, backend: Backend },
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Fd(#[from] FdError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    Triangle,
    Dancing,
    StarWars,
    MineLayer,
}

impl Problem {
    pub const ALL: [Problem; 4] = [
        Problem::Triangle,
        Problem::Dancing,
        Problem::StarWars,
        Problem::MineLayer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::Triangle => "triangle",
            Problem::Dancing => "dancing",
            Problem::StarWars => "starwars",
            Problem::MineLayer => "minelayer",
        }
    }

    pub fn supports(self, backend: Backend) -> bool {
        !matches!(
            (self, backend),
            (Problem::Triangle, Backend::Mip) | (Problem::StarWars, Backend::Cp)
        )
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown problem `{s}` (expected triangle, dancing, starwars or minelayer)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Finite-domain propagation and search.
    Cp,
    /// Simplex, with branch-and-bound for integer variables.
    Mip,
    /// The problem-specific imperative algorithm.
    Oracle,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Cp, Backend::Mip, Backend::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Cp => "cp",
            Backend::Mip => "mip",
            Backend::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Backend::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| format!("unknown backend `{s}` (expected cp, mip or oracle)"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Case {
    Triangle(TriangleCase),
    Dancing(DancingCase),
    StarWars(StarWarsCase),
    MineLayer(MineLayerCase),
}

impl Case {
    pub fn problem(&self) -> Problem {
        match self {
            Case::Triangle(_) => Problem::Triangle,
            Case::Dancing(_) => Problem::Dancing,
            Case::StarWars(_) => Problem::StarWars,
            Case::MineLayer(_) => Problem::MineLayer,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Answer {
    Triangle(TriangleAnswer),
    /// Dancing and Mine Layer.
    Count(i64),
    /// Star Wars.
    Real(f64),
}

/// Bisection tolerance used by the Star Wars oracle.
pub const STARWARS_EPS: f64 = 1e-9;

pub fn solve(case: &Case, backend: Backend) -> Result<Answer, ProblemError> {
    let problem = case.problem();
    if !problem.supports(backend) {
        return Err(ProblemError::Unsupported { problem, backend });
    }
    Ok(match (case, backend) {
        (Case::Triangle(c), Backend::Cp) => Answer::Triangle(triangle::triangle_cp(c)?),
        (Case::Triangle(c), _) => Answer::Triangle(triangle::triangle_constructive(c)),
        (Case::Dancing(c), Backend::Cp) => Answer::Count(dancing::dancing_cp(c)?),
        (Case::Dancing(c), Backend::Mip) => Answer::Count(dancing::dancing_mip(c)?),
        (Case::Dancing(c), Backend::Oracle) => Answer::Count(dancing::dancing_formula(c)),
        (Case::StarWars(c), Backend::Mip) => Answer::Real(starwars::starwars_lp(c)?),
        (Case::StarWars(c), _) => Answer::Real(starwars::starwars_binary_search(c, STARWARS_EPS)),
        (Case::MineLayer(c), Backend::Cp) => Answer::Count(minelayer::minelayer_cp(c)?),
        (Case::MineLayer(c), Backend::Mip) => Answer::Count(minelayer::minelayer_mip(c)?),
        (Case::MineLayer(c), Backend::Oracle) => Answer::Count(minelayer::minelayer_block_count(c)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in Problem::ALL {
            assert_eq!(p.name().parse::<Problem>(), Ok(p));
        }
        for b in Backend::ALL {
            assert_eq!(b.name().parse::<Backend>(), Ok(b));
        }
        assert!("knapsack".parse::<Problem>().is_err());
    }

    #[test]
    fn unsupported_combinations() {
        let tri = Case::Triangle(TriangleCase::new(1, 1, 1).unwrap());
        assert!(matches!(
            solve(&tri, Backend::Mip),
            Err(ProblemError::Unsupported { .. })
        ));
        let sw = Case::StarWars(StarWarsCase::new(vec![Ship::new(0, 0, 0, 1)]).unwrap());
        assert!(matches!(solve(&sw, Backend::Cp), Err(ProblemError::Unsupported { .. })));
    }
}
