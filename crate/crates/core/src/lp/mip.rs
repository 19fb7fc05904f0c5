//! Depth-first branch-and-bound over LP relaxations.
//!
//! All nodes share one tableau: a branch tightens one bound, the dual
//! simplex restores optimality, and backtracking puts the old bound back.

use super::simplex::check_point;
use super::tableau::{Status, Tableau};
use super::{LpError, LpOptions, LpProblem, LpSolution};
use crate::model::Sense;

const CUTS_PER_ROUND: usize = 1000;

enum Task {
    Bounds(usize, f64, f64),
    Node,
}

pub fn mip_solve(lp: &LpProblem) -> Result<LpSolution, LpError> {
    mip_solve_with(lp, &LpOptions::default())
}

/// Tightens the root relaxation with rounds of Gomory cuts, then branches on
/// the most fractional integral column, floor side first.
pub fn mip_solve_with(lp: &LpProblem, opts: &LpOptions) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let mut work = lp.clone();
    for j in 0..lp.n {
        if !lp.integer[j] {
            continue;
        }
        let (lo, hi) = (lp.lower[j], lp.upper[j]);
        if !lo.is_finite() || !hi.is_finite() {
            return Err(LpError::Unsupported(format!(
                "integral column {j} has bounds [{lo}, {hi}]"
            )));
        }
        let (lo, hi) = ((lo - opts.int_tol).ceil(), (hi + opts.int_tol).floor());
        if lo > hi {
            return Ok(LpSolution::Infeasible);
        }
        work.set_bounds(j, lo, hi);
    }

    let mut t = Tableau::new(&work, opts);
    match t.solve(&work)? {
        Status::Infeasible => return Ok(LpSolution::Infeasible),
        Status::Unbounded => return Ok(LpSolution::Unbounded),
        Status::Optimal => {}
    }

    for _ in 0..opts.cut_rounds {
        let before = t.objective();
        if t.add_gomory_cuts(CUTS_PER_ROUND) == 0 {
            break;
        }
        if !t.dual()? {
            return Ok(LpSolution::Infeasible);
        }
        if t.objective() - before <= 1e-6 * (1.0 + before.abs()) {
            break;
        }
    }

    let sign = match work.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let internal = |x: &[f64]| sign * (work.objective_value(x) - work.objective_offset);
    // Integral objective on integral points: bounds can be rounded up.
    let integral_objective = (0..work.n).all(|j| {
        let c = work.objective[j];
        c == 0.0 || (work.integer[j] && c == c.round())
    });

    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut stack = vec![Task::Node];
    let mut nodes = 0u64;
    while let Some(task) = stack.pop() {
        let Task::Node = task else {
            let Task::Bounds(j, lo, hi) = task else { unreachable!() };
            t.set_bounds(j, lo, hi);
            continue;
        };
        nodes += 1;
        if opts.max_nodes.is_some_and(|m| nodes > m) {
            return Err(LpError::NodeLimit(nodes - 1));
        }
        if !t.dual()? {
            continue;
        }
        let z = t.objective();
        if let Some((_, incumbent)) = &best {
            let prune = if integral_objective {
                (z - 1e-6).ceil() > incumbent - 0.5
            } else {
                z >= incumbent - 1e-9 * (1.0 + incumbent.abs())
            };
            if prune {
                continue;
            }
        }
        let x = t.point();
        let branch = (0..work.n)
            .filter(|&j| work.integer[j])
            .map(|j| (j, (x[j] - x[j].round()).abs()))
            .filter(|&(_, dist)| dist > opts.int_tol)
            .fold(None, |acc: Option<(usize, f64)>, c| match acc {
                Some(a) if a.1 >= c.1 => Some(a),
                _ => Some(c),
            });
        match branch {
            Some((j, _)) => {
                let (lo, hi) = t.bounds(j);
                let f = x[j].floor();
                stack.push(Task::Bounds(j, lo, hi));
                stack.push(Task::Node);
                stack.push(Task::Bounds(j, f + 1.0, hi));
                stack.push(Task::Bounds(j, lo, hi));
                stack.push(Task::Node);
                stack.push(Task::Bounds(j, lo, f));
            }
            None => {
                if let Some(point) = integral_point(&work, &x, opts)? {
                    let value = internal(&point);
                    if best.as_ref().is_none_or(|b| value < b.1) {
                        best = Some((point, value));
                    }
                }
            }
        }
    }

    Ok(match best {
        None => LpSolution::Infeasible,
        Some((x, _)) => LpSolution::Optimal {
            objective: lp.objective_value(&x),
            x,
        },
    })
}

/// Rounds the integral columns of an LP-integral point and checks it. If the
/// rounding drifted out of tolerance, the continuous part is re-solved from
/// scratch with the integral columns fixed.
fn integral_point(work: &LpProblem, x: &[f64], opts: &LpOptions) -> Result<Option<Vec<f64>>, LpError> {
    let round = |mut point: Vec<f64>| {
        for (v, _) in point.iter_mut().zip(&work.integer).filter(|(_, &int)| int) {
            *v = v.round();
        }
        point
    };
    let point = round(x.to_vec());
    if check_point(work, &point, opts).is_ok() {
        return Ok(Some(point));
    }
    let mut fixed = work.clone();
    for (j, &v) in point.iter().enumerate().filter(|&(j, _)| work.integer[j]) {
        fixed.set_bounds(j, v, v);
    }
    let mut t = Tableau::new(&fixed, opts);
    if t.solve(&fixed)? != Status::Optimal {
        return Ok(None);
    }
    let point = round(t.point());
    Ok(check_point(work, &point, opts).ok().map(|_| point))
}
