//! Triangle Areas: find a lattice triangle in `[0,N]×[0,M]` with doubled
//! area `A`, or report that none exists.

use super::ProblemError;
use crate::fd::{self, SearchOutcome};
use crate::model::{Expr, Model, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleCase {
    pub n: i64,
    pub m: i64,
    pub a: i64,
}

impl TriangleCase {
    pub fn new(n: i64, m: i64, a: i64) -> Result<Self, ProblemError> {
        if n < 1 || m < 1 || a < 1 {
            return Err(ProblemError::InvalidCase(format!(
                "triangle needs N, M, A >= 1, got {n} {m} {a}"
            )));
        }
        Ok(TriangleCase { n, m, a })
    }

    pub fn is_feasible(&self) -> bool {
        self.a as i128 <= self.n as i128 * self.m as i128
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleAnswer {
    Impossible,
    /// `x1 y1 x2 y2 x3 y3`.
    Points([i64; 6]),
}

impl TriangleAnswer {
    pub fn doubled_area(&self) -> Option<i64> {
        match *self {
            TriangleAnswer::Impossible => None,
            TriangleAnswer::Points([x1, y1, x2, y2, x3, y3]) => {
                Some(((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)).abs())
            }
        }
    }

    /// Whether this is a correct answer to `c`.
    pub fn is_valid_for(&self, c: &TriangleCase) -> bool {
        match self {
            TriangleAnswer::Impossible => !c.is_feasible(),
            TriangleAnswer::Points(p) => {
                let in_range = p
                    .chunks(2)
                    .all(|v| (0..=c.n).contains(&v[0]) && (0..=c.m).contains(&v[1]));
                in_range && self.doubled_area() == Some(c.a)
            }
        }
    }
}

/// CP model over `(x2, y2, x3, y3)`, with the first vertex at the origin.
#[derive(Debug, Clone)]
pub struct TriangleModel {
    pub model: Model,
    /// Labeling order: `x2, y2, x3, y3`.
    pub vars: [VarId; 4],
}

pub fn triangle_cp_model(c: &TriangleCase) -> TriangleModel {
    let mut model = Model::new();
    let mut var = |hi: i64, name: &str| {
        let v = model.add_int_var(0, hi).expect("positive bound");
        model.set_name(v, name);
        v
    };
    let x2 = var(c.n, "x2");
    let y2 = var(c.m, "y2");
    let x3 = var(c.n, "x3");
    let y3 = var(c.m, "y3");
    let area = (Expr::from(x2) * y3 - Expr::from(x3) * y2).abs();
    model.post(Expr::Const(c.a).equals(area)).expect("declared variables");
    TriangleModel {
        model,
        vars: [x2, y2, x3, y3],
    }
}

pub fn triangle_cp(c: &TriangleCase) -> Result<TriangleAnswer, ProblemError> {
    let tm = triangle_cp_model(c);
    Ok(match fd::label(&tm.model, &tm.vars)? {
        SearchOutcome::Infeasible => TriangleAnswer::Impossible,
        SearchOutcome::Solution(s) => {
            let [x2, y2, x3, y3] = tm.vars.map(|v| s[v]);
            TriangleAnswer::Points([0, 0, x2, y2, x3, y3])
        }
    })
}

/// Closed-form construction. With `A = qM + r`, the triangle
/// `(q,0), (q+1,M), (0,r)` has doubled area `r + qM`; when `r = 0` the
/// right triangle `(0,0), (q,0), (0,M)` is used instead so that no vertex
/// leaves the box.
pub fn triangle_constructive(c: &TriangleCase) -> TriangleAnswer {
    if !c.is_feasible() {
        return TriangleAnswer::Impossible;
    }
    let (q, r) = (c.a / c.m, c.a % c.m);
    if r == 0 {
        TriangleAnswer::Points([0, 0, q, 0, 0, c.m])
    } else {
        TriangleAnswer::Points([q, 0, q + 1, c.m, 0, r])
    }
}

/// Exhaustive search with the first vertex at the origin, in the same
/// lexicographic order as the CP labeling.
pub fn triangle_bruteforce(c: &TriangleCase) -> TriangleAnswer {
    for x2 in 0..=c.n {
        for y2 in 0..=c.m {
            for x3 in 0..=c.n {
                for y3 in 0..=c.m {
                    if (x2 * y3 - x3 * y2).abs() == c.a {
                        return TriangleAnswer::Points([0, 0, x2, y2, x3, y3]);
                    }
                }
            }
        }
    }
    TriangleAnswer::Impossible
}
