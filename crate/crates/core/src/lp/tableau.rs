//! Bounded-variable simplex tableau.
//!
//! Row `i` reads `Σ_j a_ij x_j = beta_i`, with the basic column of the row
//! having coefficient 1 there and 0 in every other row. Rows are stored
//! sparsely (sorted by column) because the larger generated instances have
//! thousands of rows with a handful of entries each. Nonbasic columns sit at
//! one of their bounds (or anywhere, if free or zero-cost); basic values are
//! carried in `x` and refreshed from `beta` periodically.

use super::{LpError, LpOptions, LpProblem};
use crate::model::{Relation, Sense};

const NONBASIC: usize = usize::MAX;
/// Entries smaller than this after elimination are dropped.
const DROP: f64 = 1e-12;
/// Steps shorter than this count as degenerate.
const DEGENERATE: f64 = 1e-12;
/// Under Bland's rule, tied pivots smaller than this fraction of the largest
/// tied one are passed over.
const BLAND_PIVOT: f64 = 1e-3;
/// Cuts whose largest coefficient exceeds the smallest by more than this
/// factor are discarded.
const CUT_DYNAMISM: f64 = 1e6;
/// Basics closer than this to an integer yield no cut.
const CUT_MIN_FRACTION: f64 = 1e-3;
/// Tableau entries this close to an integer are taken as that integer.
const CUT_NOISE: f64 = 1e-9;
const REFRESH_EVERY: u32 = 200;
/// Pivots between rebuilds from the original rows, at least.
const REINVERT_EVERY: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub(crate) struct Tableau {
    n: usize,
    rows: Vec<Vec<(usize, f64)>>,
    beta: Vec<f64>,
    basis: Vec<usize>,
    row_of: Vec<usize>,
    /// Superset of the rows holding each column; purged lazily.
    col_rows: Vec<Vec<u32>>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    x: Vec<f64>,
    cost: Vec<f64>,
    d: Vec<f64>,
    artificial: Vec<bool>,
    /// Columns that take integral values at every integral solution.
    integral: Vec<bool>,
    rhs_scale: f64,
    opts: LpOptions,
    since_refresh: u32,
    /// Rows and right-hand sides as built, for reinversion.
    orig_rows: Vec<Vec<(usize, f64)>>,
    orig_beta: Vec<f64>,
    since_reinvert: u32,
    /// Entries in `col_rows`, and the size that triggers a rebuild.
    index_len: usize,
    index_limit: usize,
}

fn resting_value(lo: f64, hi: f64) -> f64 {
    if lo.is_finite() {
        lo
    } else if hi.is_finite() {
        hi
    } else {
        0.0
    }
}

/// `dst + f * src`, skipping column `skip`. Returns the merged row and the
/// columns it gained.
fn axpy(dst: &[(usize, f64)], f: f64, src: &[(usize, f64)], skip: usize, gained: &mut Vec<usize>) -> Vec<(usize, f64)> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut k) = (0, 0);
    while i < dst.len() || k < src.len() {
        let (j, v, new) = match (dst.get(i), src.get(k)) {
            (Some(&(a, va)), Some(&(b, vb))) if a == b => {
                i += 1;
                k += 1;
                (a, va + f * vb, false)
            }
            (Some(&(a, va)), Some(&(b, _))) if a < b => {
                i += 1;
                (a, va, false)
            }
            (Some(&(a, va)), None) => {
                i += 1;
                (a, va, false)
            }
            (_, Some(&(b, vb))) => {
                k += 1;
                (b, f * vb, true)
            }
            (None, None) => unreachable!(),
        };
        if j == skip || v.abs() < DROP {
            continue;
        }
        if new {
            gained.push(j);
        }
        out.push((j, v));
    }
    out
}

impl Tableau {
    /// Slack-or-artificial starting basis for `lp`. Artificial columns carry
    /// unit phase-one cost; everything else costs zero.
    pub(crate) fn new(lp: &LpProblem, opts: &LpOptions) -> Self {
        let n = lp.n;
        let mut t = Tableau {
            n,
            rows: Vec::with_capacity(lp.rows.len()),
            beta: Vec::with_capacity(lp.rows.len()),
            basis: Vec::with_capacity(lp.rows.len()),
            row_of: vec![NONBASIC; n],
            col_rows: vec![Vec::new(); n],
            lo: lp.lower.clone(),
            hi: lp.upper.clone(),
            x: (0..n).map(|j| resting_value(lp.lower[j], lp.upper[j])).collect(),
            cost: vec![0.0; n],
            d: Vec::new(),
            artificial: vec![false; n],
            integral: (0..n)
                .map(|j| {
                    lp.integer[j]
                        && [lp.lower[j], lp.upper[j]]
                            .iter()
                            .all(|b| !b.is_finite() || b.fract() == 0.0)
                })
                .collect(),
            rhs_scale: lp.rows.iter().map(|r| r.rhs.abs()).fold(1.0, f64::max),
            opts: opts.clone(),
            since_refresh: 0,
            orig_rows: Vec::new(),
            orig_beta: Vec::new(),
            since_reinvert: 0,
            index_len: 0,
            index_limit: 0,
        };
        for r in &lp.rows {
            let mut coeffs = r.coeffs.clone();
            coeffs.sort_by_key(|e| e.0);
            let mut row: Vec<(usize, f64)> = Vec::with_capacity(coeffs.len() + 2);
            for (j, v) in coeffs {
                match row.last_mut() {
                    Some(last) if last.0 == j => last.1 += v,
                    _ => row.push((j, v)),
                }
            }
            row.retain(|e| e.1 != 0.0);
            let act: f64 = row.iter().map(|&(j, v)| v * t.x[j]).sum();
            let resid = r.rhs - act;
            let i = t.rows.len();
            let whole = r.rhs.fract() == 0.0 && row.iter().all(|&(j, v)| t.integral[j] && v.fract() == 0.0);
            let slack = match r.rel {
                Relation::Le => Some((0.0, f64::INFINITY, resid >= 0.0)),
                Relation::Ge => Some((f64::NEG_INFINITY, 0.0, resid <= 0.0)),
                Relation::Eq => None,
            };
            if let Some((slo, shi, feasible)) = slack {
                let s = t.push_column(slo, shi, if feasible { resid } else { 0.0 }, false);
                t.integral[s] = whole;
                row.push((s, 1.0));
                if feasible {
                    t.finish_row(i, row, r.rhs, s);
                    continue;
                }
            }
            let sigma = if resid >= 0.0 { 1.0 } else { -1.0 };
            let a = t.push_column(0.0, f64::INFINITY, resid.abs(), true);
            t.cost[a] = 1.0;
            row.push((a, sigma));
            if sigma < 0.0 {
                row.iter_mut().for_each(|e| e.1 = -e.1);
            }
            t.finish_row(i, row, sigma * r.rhs, a);
        }
        t.reset_duals();
        t.rebuild_index();
        t.orig_rows = t.rows.clone();
        t.orig_beta = t.beta.clone();
        t
    }

    fn rebuild_index(&mut self) {
        self.col_rows.iter_mut().for_each(Vec::clear);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, _) in row {
                self.col_rows[j].push(i as u32);
            }
        }
        self.index_len = self.rows.iter().map(Vec::len).sum();
        self.index_limit = 2 * self.index_len + 4096;
    }

    fn push_column(&mut self, lo: f64, hi: f64, x: f64, artificial: bool) -> usize {
        self.lo.push(lo);
        self.hi.push(hi);
        self.x.push(x);
        self.cost.push(0.0);
        self.row_of.push(NONBASIC);
        self.col_rows.push(Vec::new());
        self.artificial.push(artificial);
        self.integral.push(false);
        self.x.len() - 1
    }

    fn finish_row(&mut self, i: usize, row: Vec<(usize, f64)>, beta: f64, basic: usize) {
        for &(j, _) in &row {
            self.col_rows[j].push(i as u32);
        }
        self.rows.push(row);
        self.beta.push(beta);
        self.basis.push(basic);
        self.row_of[basic] = i;
    }

    fn num_cols(&self) -> usize {
        self.x.len()
    }

    fn coef(&self, i: usize, j: usize) -> Option<f64> {
        let row = &self.rows[i];
        row.binary_search_by_key(&j, |e| e.0).ok().map(|k| row[k].1)
    }

    /// Nonzero entries of column `q`, purging stale row references.
    fn column(&mut self, q: usize) -> Vec<(usize, f64)> {
        let mut list = std::mem::take(&mut self.col_rows[q]);
        list.sort_unstable();
        list.dedup();
        let mut out = Vec::with_capacity(list.len());
        list.retain(|&i| match self.coef(i as usize, q) {
            Some(v) => {
                out.push((i as usize, v));
                true
            }
            None => false,
        });
        self.col_rows[q] = list;
        out
    }

    fn reset_duals(&mut self) {
        self.d = self.cost.clone();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = self.cost[self.basis[i]];
            if cb != 0.0 {
                for &(j, v) in row {
                    self.d[j] -= cb * v;
                }
            }
        }
    }

    /// Recomputes basic values from `beta` and the nonbasic values.
    fn refresh(&mut self) {
        for (i, row) in self.rows.iter().enumerate() {
            let b = self.basis[i];
            let s: f64 = row.iter().filter(|e| e.0 != b).map(|&(j, v)| v * self.x[j]).sum();
            self.x[b] = self.beta[i] - s;
        }
        self.since_refresh = 0;
    }

    /// Scales row `r` to a unit entry in column `q` and clears `q` from
    /// every other row.
    fn eliminate(&mut self, r: usize, q: usize) {
        let inv = 1.0 / self.coef(r, q).expect("pivot entry present");
        let mut prow = std::mem::take(&mut self.rows[r]);
        for e in prow.iter_mut() {
            e.1 = if e.0 == q { 1.0 } else { e.1 * inv };
        }
        self.beta[r] *= inv;
        let brow = self.beta[r];
        let mut gained = Vec::new();
        for (i, f) in self.column(q) {
            if i == r {
                continue;
            }
            gained.clear();
            self.rows[i] = axpy(&self.rows[i], -f, &prow, q, &mut gained);
            self.beta[i] -= f * brow;
            for &j in &gained {
                self.col_rows[j].push(i as u32);
            }
            self.index_len += gained.len();
        }
        self.col_rows[q] = vec![r as u32];
        self.rows[r] = prow;
    }

    fn pivot(&mut self, r: usize, q: usize) {
        self.eliminate(r, q);
        let dq = self.d[q];
        if dq != 0.0 {
            for &(j, v) in &self.rows[r] {
                self.d[j] -= dq * v;
            }
        }
        self.d[q] = 0.0;
        let leaving = self.basis[r];
        self.row_of[leaving] = NONBASIC;
        self.basis[r] = q;
        self.row_of[q] = r;
        self.since_refresh += 1;
        self.since_reinvert += 1;
        if self.since_refresh >= REFRESH_EVERY {
            self.refresh();
        }
        if self.index_len > self.index_limit {
            self.rebuild_index();
        }
    }

    /// Rebuilds the rows for the current basis from the original ones,
    /// shedding accumulated rounding error. If the basis has become
    /// numerically singular the tableau is left as it was and `false`
    /// returned.
    fn reinvert(&mut self) -> bool {
        let saved = (self.rows.clone(), self.beta.clone());
        // phase-one columns that are out of the basis for good stay out
        let dead = |j: usize| self.artificial[j] && self.hi[j] == 0.0 && self.row_of[j] == NONBASIC;
        self.rows = self
            .orig_rows
            .iter()
            .map(|row| row.iter().copied().filter(|e| !dead(e.0)).collect())
            .collect();
        self.beta = self.orig_beta.clone();
        self.rebuild_index();
        let mut order = self.basis.clone();
        order.sort_by_key(|&q| (self.col_rows[q].len(), q));
        let mut basis = vec![NONBASIC; self.rows.len()];
        for q in order {
            let best = self
                .column(q)
                .into_iter()
                .filter(|&(i, _)| basis[i] == NONBASIC)
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()));
            match best {
                Some((r, a)) if a.abs() >= self.opts.pivot_tol => {
                    self.eliminate(r, q);
                    basis[r] = q;
                }
                _ => {
                    (self.rows, self.beta) = saved;
                    self.rebuild_index();
                    self.since_reinvert = 0;
                    return false;
                }
            }
        }
        for (i, &b) in basis.iter().enumerate() {
            self.row_of[b] = i;
        }
        self.basis = basis;
        self.refresh();
        self.reset_duals();
        self.since_reinvert = 0;
        true
    }

    fn reinvert_due(&self) -> bool {
        self.since_reinvert >= REINVERT_EVERY.max(self.rows.len() as u32)
    }

    /// Gomory mixed-integer cut from row `i`, whose basic column is integral
    /// with a fractional value, as `Σ c_j x_j >= rhs`. Only valid while the
    /// bounds are the global ones.
    fn gomory_cut(&self, i: usize) -> Option<(Vec<(usize, f64)>, f64)> {
        let b = self.basis[i];
        let f0 = self.x[b] - self.x[b].floor();
        // Σ pi_j y_j >= 1 over the distances y_j of nonbasics from their bounds
        let mut coeffs = Vec::with_capacity(self.rows[i].len());
        let mut rhs = 1.0;
        for &(j, a) in &self.rows[i] {
            if j == b || self.lo[j] == self.hi[j] {
                continue;
            }
            let (abar, sign, bound) = if self.x[j] == self.lo[j] {
                (a, 1.0, self.lo[j])
            } else if self.x[j] == self.hi[j] {
                (-a, -1.0, self.hi[j])
            } else {
                return None;
            };
            // rounding noise on an integral entry contributes nothing
            if self.integral[j] && (abar - abar.round()).abs() < CUT_NOISE {
                continue;
            }
            let pi = if self.integral[j] {
                let fj = abar - abar.floor();
                if fj <= f0 {
                    fj / f0
                } else {
                    (1.0 - fj) / (1.0 - f0)
                }
            } else if abar >= 0.0 {
                abar / f0
            } else {
                -abar / (1.0 - f0)
            };
            if pi != 0.0 {
                coeffs.push((j, sign * pi));
                rhs += sign * pi * bound;
            }
        }
        let (small, big) = coeffs.iter().fold((f64::INFINITY, 0.0f64), |(s, g), e| {
            (s.min(e.1.abs()), g.max(e.1.abs()))
        });
        if coeffs.is_empty() || big > CUT_DYNAMISM * small {
            return None;
        }
        Some((coeffs, rhs))
    }

    /// Appends Gomory cuts for up to `limit` fractional integral basics, most
    /// fractional first, and returns how many rows were added. The basis
    /// stays dual feasible; `dual` restores primal feasibility.
    pub(crate) fn add_gomory_cuts(&mut self, limit: usize) -> usize {
        let mut fractional: Vec<(usize, f64)> = (0..self.rows.len())
            .filter(|&i| self.integral[self.basis[i]])
            .map(|i| {
                let v = self.x[self.basis[i]];
                (i, (v - v.round()).abs())
            })
            .filter(|&(_, dist)| dist > CUT_MIN_FRACTION)
            .collect();
        fractional.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        let cuts: Vec<_> = fractional
            .iter()
            .filter_map(|&(i, _)| self.gomory_cut(i))
            .take(limit)
            .collect();
        for (mut row, rhs) in cuts.iter().cloned() {
            let s = self.push_column(f64::NEG_INFINITY, 0.0, 0.0, false);
            row.push((s, 1.0));
            let i = self.rows.len();
            self.orig_rows.push(row.clone());
            self.orig_beta.push(rhs);
            self.index_len += row.len();
            self.finish_row(i, row, rhs, s);
            self.d.push(0.0);
            let act: f64 = self.rows[i]
                .iter()
                .filter(|e| e.0 != s)
                .map(|&(j, v)| v * self.x[j])
                .sum();
            self.x[s] = rhs - act;
        }
        cuts.len()
    }

    fn iteration_limit(&self) -> usize {
        100_000 + 50 * (self.rows.len() + self.num_cols())
    }

    /// Primal simplex from a primal-feasible basis. Dantzig pricing, with
    /// Bland's rule while degenerate pivots keep piling up.
    /// With `phase_one` set, stops as soon as the artificials are cleared.
    fn primal(&mut self, phase_one: bool) -> Result<Status, LpError> {
        let (opt_tol, feas_tol, piv_tol) = (self.opts.opt_tol, self.opts.feas_tol, self.opts.pivot_tol);
        let mut streak = 0u32;
        for _ in 0..self.iteration_limit() {
            if self.reinvert_due() {
                self.reinvert();
            }
            if phase_one && self.phase_one_value() <= feas_tol {
                return Ok(Status::Optimal);
            }
            let bland = streak >= self.opts.degeneracy_streak;
            let mut enter: Option<(usize, f64)> = None;
            let mut best = 0.0;
            for j in 0..self.num_cols() {
                if self.row_of[j] != NONBASIC {
                    continue;
                }
                let dj = self.d[j];
                let dir = if dj < -opt_tol && self.x[j] < self.hi[j] {
                    1.0
                } else if dj > opt_tol && self.x[j] > self.lo[j] {
                    -1.0
                } else {
                    continue;
                };
                if bland {
                    enter = Some((j, dir));
                    break;
                }
                if dj.abs() > best {
                    best = dj.abs();
                    enter = Some((j, dir));
                }
            }
            let Some((q, dir)) = enter else {
                return Ok(Status::Optimal);
            };

            let col = self.column(q);
            let flip = if dir > 0.0 {
                self.hi[q] - self.x[q]
            } else {
                self.x[q] - self.lo[q]
            };
            // (row, ratio, |pivot|, target) for every row that limits the step
            let mut limits = Vec::new();
            for &(i, a) in &col {
                if a.abs() < piv_tol {
                    continue;
                }
                let b = self.basis[i];
                let rate = -a * dir;
                let (room, target) = if rate > 0.0 {
                    (self.hi[b] - self.x[b], self.hi[b])
                } else {
                    (self.x[b] - self.lo[b], self.lo[b])
                };
                if room.is_finite() {
                    limits.push((i, room.max(0.0) / rate.abs(), a.abs(), target));
                }
            }
            let tightest = limits.iter().map(|l| l.1).fold(f64::INFINITY, f64::min);
            let mut step = flip;
            let mut leave: Option<(usize, f64)> = None;
            if tightest < flip {
                let chosen = if bland {
                    let tied = || limits.iter().filter(|l| l.1 <= tightest + DEGENERATE);
                    let big = tied().map(|l| l.2).fold(0.0, f64::max);
                    tied()
                        .filter(|l| l.2 >= BLAND_PIVOT * big)
                        .min_by_key(|l| self.basis[l.0])
                } else {
                    // Harris: among rows blocking within tolerance, the largest pivot
                    let reach = limits
                        .iter()
                        .map(|l| l.1 + feas_tol / l.2)
                        .fold(f64::INFINITY, f64::min);
                    limits
                        .iter()
                        .filter(|l| l.1 <= reach)
                        .max_by(|a, b| a.2.total_cmp(&b.2))
                };
                let &(r, ti, _, target) = chosen.expect("a tightest row exists");
                step = ti;
                leave = Some((r, target));
            }
            if !step.is_finite() {
                return Ok(Status::Unbounded);
            }
            self.x[q] += dir * step;
            for &(i, a) in &col {
                self.x[self.basis[i]] -= a * dir * step;
            }
            match leave {
                None => self.x[q] = if dir > 0.0 { self.hi[q] } else { self.lo[q] },
                Some((r, target)) => {
                    self.x[self.basis[r]] = target;
                    self.pivot(r, q);
                }
            }
            streak = if step <= DEGENERATE { streak + 1 } else { 0 };
        }
        Err(LpError::Numerical("primal simplex iteration limit".into()))
    }

    /// Dual simplex from a dual-feasible basis. Returns `false` when the
    /// bounds admit no feasible point.
    pub(crate) fn dual(&mut self) -> Result<bool, LpError> {
        let (feas_tol, opt_tol, piv_tol) = (self.opts.feas_tol, self.opts.opt_tol, self.opts.pivot_tol);
        let mut streak = 0u32;
        for _ in 0..self.iteration_limit() {
            if self.reinvert_due() {
                self.reinvert();
            }
            let bland = streak >= self.opts.degeneracy_streak;
            let mut leave: Option<usize> = None;
            let mut worst = 0.0;
            for (i, &b) in self.basis.iter().enumerate() {
                let viol = (self.lo[b] - self.x[b]).max(self.x[b] - self.hi[b]);
                if viol <= feas_tol {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(r) if bland => b < self.basis[r],
                    Some(_) => viol > worst,
                };
                if better {
                    worst = viol;
                    leave = Some(i);
                }
            }
            let Some(r) = leave else {
                return Ok(true);
            };
            let b = self.basis[r];
            let (s, target) = if self.x[b] < self.lo[b] {
                (1.0, self.lo[b])
            } else {
                (-1.0, self.hi[b])
            };

            // (column, pivot, ratio) for every column that can enter
            let mut cands = Vec::new();
            for &(j, a) in &self.rows[r] {
                if j == b || a.abs() < piv_tol {
                    continue;
                }
                let dir = -s * a.signum();
                if (dir > 0.0 && self.x[j] >= self.hi[j]) || (dir < 0.0 && self.x[j] <= self.lo[j]) {
                    continue;
                }
                cands.push((j, a, (self.d[j] * dir).max(0.0) / a.abs()));
            }
            let tightest = cands.iter().map(|c| c.2).fold(f64::INFINITY, f64::min);
            let enter = if bland {
                let tied = || cands.iter().filter(|c| c.2 <= tightest + DEGENERATE);
                let big = tied().map(|c| c.1.abs()).fold(0.0, f64::max);
                tied().filter(|c| c.1.abs() >= BLAND_PIVOT * big).min_by_key(|c| c.0)
            } else {
                // Harris: among columns within tolerance, the largest pivot
                let reach = cands
                    .iter()
                    .map(|c| c.2 + 100.0 * opt_tol / c.1.abs())
                    .fold(f64::INFINITY, f64::min);
                cands
                    .iter()
                    .filter(|c| c.2 <= reach)
                    .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
            };
            let Some(&(q, a_rq, ratio)) = enter else {
                // a stale tableau can fake infeasibility; rebuild and look again
                if self.since_reinvert > 0 && self.reinvert() {
                    continue;
                }
                return Ok(false);
            };
            let delta = (self.x[b] - target) / a_rq;
            for (i, a) in self.column(q) {
                self.x[self.basis[i]] -= a * delta;
            }
            self.x[q] += delta;
            self.x[b] = target;
            self.pivot(r, q);
            streak = if ratio <= DEGENERATE { streak + 1 } else { 0 };
        }
        Err(LpError::Numerical("dual simplex iteration limit".into()))
    }

    fn phase_one_value(&self) -> f64 {
        (0..self.num_cols())
            .filter(|&j| self.artificial[j])
            .map(|j| self.x[j])
            .sum()
    }

    /// Fixes artificials at zero, drives basic ones out where possible and
    /// strips nonbasic ones from the rows.
    fn end_phase_one(&mut self) {
        let piv_tol = self.opts.pivot_tol;
        for a in 0..self.num_cols() {
            if !self.artificial[a] {
                continue;
            }
            self.lo[a] = 0.0;
            self.hi[a] = 0.0;
            if let Some(r) = Some(self.row_of[a]).filter(|&r| r != NONBASIC) {
                let q = self.rows[r]
                    .iter()
                    .filter(|&&(j, v)| j != a && !self.artificial[j] && v.abs() > piv_tol)
                    .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
                    .map(|e| e.0);
                match q {
                    Some(q) => self.pivot(r, q),
                    None => continue,
                }
            }
            self.x[a] = 0.0;
            for (i, _) in self.column(a) {
                self.rows[i].retain(|e| e.0 != a);
            }
            self.col_rows[a].clear();
        }
        self.refresh();
    }

    /// Two-phase solve with the objective of `lp`.
    pub(crate) fn solve(&mut self, lp: &LpProblem) -> Result<Status, LpError> {
        if self.artificial.iter().any(|&a| a) {
            self.primal(true)?;
            self.refresh();
            if self.phase_one_value() > self.opts.feas_tol * self.rhs_scale {
                return Ok(Status::Infeasible);
            }
            self.end_phase_one();
        }
        let sign = match lp.sense {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        };
        self.cost.iter_mut().for_each(|c| *c = 0.0);
        for j in 0..self.n {
            self.cost[j] = sign * lp.objective[j];
        }
        self.reset_duals();
        let status = self.primal(false)?;
        self.refresh();
        Ok(status)
    }

    /// Changes the bounds of structural column `j`. A nonbasic column moves
    /// to the bound its reduced cost favours, so the basis stays dual
    /// feasible; the basic values follow.
    pub(crate) fn set_bounds(&mut self, j: usize, lo: f64, hi: f64) {
        self.lo[j] = lo;
        self.hi[j] = hi;
        if self.row_of[j] != NONBASIC {
            return;
        }
        let tol = self.opts.opt_tol;
        let target = if self.d[j] > tol && lo.is_finite() {
            lo
        } else if self.d[j] < -tol && hi.is_finite() {
            hi
        } else {
            self.x[j].clamp(lo, hi)
        };
        let delta = target - self.x[j];
        if delta != 0.0 {
            for (i, a) in self.column(j) {
                self.x[self.basis[i]] -= a * delta;
            }
            self.x[j] = target;
        }
    }

    pub(crate) fn bounds(&self, j: usize) -> (f64, f64) {
        (self.lo[j], self.hi[j])
    }

    /// Current objective in the minimization sense used internally.
    pub(crate) fn objective(&self) -> f64 {
        (0..self.n).map(|j| self.cost[j] * self.x[j]).sum()
    }

    pub(crate) fn point(&self) -> Vec<f64> {
        self.x[..self.n].to_vec()
    }
}
