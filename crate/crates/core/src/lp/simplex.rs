use super::tableau::{Status, Tableau};
use super::{LpError, LpOptions, LpProblem, LpSolution};

pub fn simplex_solve(lp: &LpProblem) -> Result<LpSolution, LpError> {
    simplex_solve_with(lp, &LpOptions::default())
}

/// Solves the continuous relaxation of `lp` (integrality is ignored).
pub fn simplex_solve_with(lp: &LpProblem, opts: &LpOptions) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let mut t = Tableau::new(lp, opts);
    match t.solve(lp)? {
        Status::Infeasible => Ok(LpSolution::Infeasible),
        Status::Unbounded => Ok(LpSolution::Unbounded),
        Status::Optimal => {
            let x = t.point();
            check_point(lp, &x, opts)?;
            Ok(LpSolution::Optimal {
                objective: lp.objective_value(&x),
                x,
            })
        }
    }
}

pub(crate) fn check_point(lp: &LpProblem, x: &[f64], opts: &LpOptions) -> Result<(), LpError> {
    let v = lp.max_violation(x);
    if v > opts.feas_tol {
        return Err(LpError::Numerical(format!("optimal point violates a row by {v:e}")));
    }
    Ok(())
}
