use super::compile::FdSolver;
use super::propagate::PropState;
use super::{to_assignment, FdError};
use crate::model::{Assignment, ModelError, VarId};

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    Solution(Assignment<i64>),
    Infeasible,
}

impl SearchOutcome {
    pub fn solution(&self) -> Option<&Assignment<i64>> {
        match self {
            SearchOutcome::Solution(a) => Some(a),
            SearchOutcome::Infeasible => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub failures: u64,
    pub solutions: u64,
    /// Number of complete searches run (1 for labeling, more for dichotomic
    /// branch-and-bound).
    pub restarts: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BnbStrategy {
    /// Keep searching the same tree with `cost < incumbent`.
    Continue,
    /// Bisect the bracket `[lower bound, incumbent]` and restart each time.
    #[default]
    Dichotomic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BnbOptions {
    pub strategy: BnbStrategy,
    pub cost_var: VarId,
    /// Labeling order; `None` labels the model variables in declaration order.
    pub order: Option<Vec<VarId>>,
}

impl BnbOptions {
    pub fn new(cost_var: VarId) -> Self {
        BnbOptions {
            strategy: BnbStrategy::default(),
            cost_var,
            order: None,
        }
    }

    pub fn strategy(mut self, s: BnbStrategy) -> Self {
        self.strategy = s;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BnbOutcome {
    Optimal { assignment: Assignment<i64>, cost: i64 },
    Infeasible,
}

impl BnbOutcome {
    pub fn cost(&self) -> Option<i64> {
        match self {
            BnbOutcome::Optimal { cost, .. } => Some(*cost),
            BnbOutcome::Infeasible => None,
        }
    }
}

enum Control {
    Stop,
    /// Keep going, requiring the cost variable to be at most this value.
    Below(i64),
}

impl FdSolver {
    /// Full variable order: `order`, then the rest of the model variables,
    /// then auxiliaries.
    fn full_order(&self, order: &[VarId]) -> Result<Vec<usize>, FdError> {
        let mut seen = vec![false; self.num_vars()];
        let mut out = Vec::with_capacity(self.num_vars());
        for &v in order {
            if v.index() >= self.num_model_vars {
                return Err(ModelError::UndeclaredVar(v).into());
            }
            if !seen[v.index()] {
                seen[v.index()] = true;
                out.push(v.index());
            }
        }
        out.extend((0..self.num_vars()).filter(|&v| !seen[v]));
        Ok(out)
    }

    /// Depth-first search from `root`, min value first, binary branching
    /// `x = lo` / `x >= lo + 1`.
    fn dfs(
        &self,
        root: PropState,
        order: &[usize],
        cost_var: Option<usize>,
        stats: &mut SearchStats,
        mut on_solution: impl FnMut(&PropState) -> Control,
    ) {
        stats.restarts += 1;
        let mut stack = vec![root];
        let mut bound: Option<i64> = None;
        while let Some(mut st) = stack.pop() {
            stats.nodes += 1;
            if let (Some(cv), Some(b)) = (cost_var, bound) {
                if !self.restrict(&mut st, cv, i64::MIN, b) {
                    stats.failures += 1;
                    continue;
                }
            }
            if !self.fixpoint(&mut st) {
                stats.failures += 1;
                continue;
            }
            match order.iter().copied().find(|&v| !st.is_fixed(v)) {
                None => {
                    stats.solutions += 1;
                    match on_solution(&st) {
                        Control::Stop => return,
                        Control::Below(b) => bound = Some(b),
                    }
                }
                Some(v) => {
                    let (lo, hi) = (st.lo(v), st.hi(v));
                    let mut right = st.clone();
                    self.restrict(&mut right, v, lo + 1, hi);
                    stack.push(right);
                    self.restrict(&mut st, v, lo, lo);
                    stack.push(st);
                }
            }
        }
    }

    fn first_solution(&self, root: PropState, order: &[usize], stats: &mut SearchStats) -> Option<PropState> {
        let mut found = None;
        self.dfs(root, order, None, stats, |st| {
            found = Some(st.clone());
            Control::Stop
        });
        found
    }

    pub fn label(&self, order: &[VarId]) -> Result<SearchOutcome, FdError> {
        Ok(self.label_with_stats(order)?.0)
    }

    pub fn label_with_stats(&self, order: &[VarId]) -> Result<(SearchOutcome, SearchStats), FdError> {
        let order = self.full_order(order)?;
        let mut stats = SearchStats::default();
        let out = match self.first_solution(self.root_state(), &order, &mut stats) {
            Some(st) => SearchOutcome::Solution(to_assignment(&st, self.num_model_vars)),
            None => SearchOutcome::Infeasible,
        };
        Ok((out, stats))
    }

    pub fn bb_minimize(&self, opts: &BnbOptions) -> Result<BnbOutcome, FdError> {
        Ok(self.bb_minimize_with_stats(opts)?.0)
    }

    pub fn bb_minimize_with_stats(&self, opts: &BnbOptions) -> Result<(BnbOutcome, SearchStats), FdError> {
        let cv = opts.cost_var.index();
        if cv >= self.num_model_vars {
            return Err(ModelError::UndeclaredVar(opts.cost_var).into());
        }
        let order = self.full_order(opts.order.as_deref().unwrap_or(&[]))?;
        let mut stats = SearchStats::default();
        let best = match opts.strategy {
            BnbStrategy::Continue => {
                let mut best = None;
                self.dfs(self.root_state(), &order, Some(cv), &mut stats, |st| {
                    let c = st.lo(cv);
                    best = Some(st.clone());
                    Control::Below(c - 1)
                });
                best
            }
            BnbStrategy::Dichotomic => self.dichotomic(cv, &order, &mut stats),
        };
        let out = match best {
            Some(st) => BnbOutcome::Optimal {
                cost: st.lo(cv),
                assignment: to_assignment(&st, self.num_model_vars),
            },
            None => BnbOutcome::Infeasible,
        };
        Ok((out, stats))
    }

    fn dichotomic(&self, cv: usize, order: &[usize], stats: &mut SearchStats) -> Option<PropState> {
        let mut root = self.root_state();
        if !self.fixpoint(&mut root) {
            stats.failures += 1;
            return None;
        }
        let mut lower = root.lo(cv);
        let mut best = self.first_solution(root.clone(), order, stats)?;
        let mut cost = best.lo(cv);
        while lower < cost {
            let mid = (lower + cost - 1).div_euclid(2);
            let mut st = root.clone();
            self.restrict(&mut st, cv, lower, mid);
            match self.first_solution(st, order, stats) {
                Some(sol) => {
                    cost = sol.lo(cv);
                    best = sol;
                }
                None => lower = mid + 1,
            }
        }
        Some(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::{self, PropOutcome};
    use crate::model::{Expr, Model};

    fn triangle(n: i64, m: i64, a: i64) -> (Model, Vec<VarId>) {
        let mut model = Model::new();
        let x2 = model.add_int_var(0, n).unwrap();
        let y2 = model.add_int_var(0, m).unwrap();
        let x3 = model.add_int_var(0, n).unwrap();
        let y3 = model.add_int_var(0, m).unwrap();
        let area = (Expr::from(x2) * y3 - Expr::from(x3) * y2).abs();
        model.post(Expr::Const(a).equals(area)).unwrap();
        (model, vec![x2, y2, x3, y3])
    }

    #[test]
    fn propagate_direct_bound() {
        let mut m = Model::new();
        let x = m.add_int_var(0, 10).unwrap();
        m.post(Expr::from(x).geq(4)).unwrap();
        match fd::propagate(&m).unwrap() {
            PropOutcome::Fixpoint(d) => assert_eq!((d[0].lo(), d[0].hi()), (4, 10)),
            PropOutcome::Infeasible => panic!("should be feasible"),
        }
    }

    #[test]
    fn propagate_abs_image() {
        let mut m = Model::new();
        let a = m.add_int_var(-100, 100).unwrap();
        let b = m.add_int_var(-5, 3).unwrap();
        m.post(Expr::from(a).equals(Expr::from(b).abs())).unwrap();
        match fd::propagate(&m).unwrap() {
            PropOutcome::Fixpoint(d) => assert_eq!((d[0].lo(), d[0].hi()), (0, 5)),
            PropOutcome::Infeasible => panic!("should be feasible"),
        }
    }

    #[test]
    fn propagate_detects_triangle_infeasibility() {
        let (m, _) = triangle(1, 1, 2);
        assert!(fd::propagate(&m).unwrap().is_infeasible());
    }

    #[test]
    fn label_triangle_min_first() {
        let (m, order) = triangle(1, 1, 1);
        let sol = fd::label(&m, &order).unwrap();
        let a = sol.solution().expect("satisfiable");
        let got: Vec<i64> = order.iter().map(|&v| a[v]).collect();
        assert_eq!(got, vec![0, 1, 1, 0]);
        assert_eq!(m.check_solution(a), Ok(true));
    }

    #[test]
    fn label_triangle_infeasible() {
        let (m, order) = triangle(1, 1, 2);
        assert_eq!(fd::label(&m, &order).unwrap(), SearchOutcome::Infeasible);
    }

    #[test]
    fn label_unconstrained_takes_minimum() {
        let mut m = Model::new();
        let x = m.add_int_var(3, 5).unwrap();
        let sol = fd::label(&m, &[]).unwrap();
        assert_eq!(sol.solution().unwrap()[x], 3);
    }

    #[test]
    fn label_rejects_unknown_order_variable() {
        let mut m = Model::new();
        m.add_int_var(3, 5).unwrap();
        assert!(fd::label(&m, &[VarId(4)]).is_err());
    }

    #[test]
    fn bb_direct_bound() {
        let mut m = Model::new();
        let x = m.add_int_var(0, 10).unwrap();
        m.post(Expr::from(x).geq(3)).unwrap();
        for s in [BnbStrategy::Continue, BnbStrategy::Dichotomic] {
            let out = fd::bb_minimize(&m, &BnbOptions::new(x).strategy(s)).unwrap();
            assert_eq!(out.cost(), Some(3));
        }
    }

    #[test]
    fn bb_unsatisfiable() {
        let mut m = Model::new();
        let x = m.add_int_var(0, 10).unwrap();
        m.post(Expr::from(x).geq(11)).unwrap();
        for s in [BnbStrategy::Continue, BnbStrategy::Dichotomic] {
            let out = fd::bb_minimize(&m, &BnbOptions::new(x).strategy(s)).unwrap();
            assert_eq!(out, BnbOutcome::Infeasible);
        }
    }

    #[test]
    fn bb_negative_costs_bisect_correctly() {
        // minimize c = -(x + y) with x + y <= 7, x, y in 0..5
        let mut m = Model::new();
        let x = m.add_int_var(0, 5).unwrap();
        let y = m.add_int_var(0, 5).unwrap();
        let c = m.add_int_var(-10, 0).unwrap();
        m.post((Expr::from(x) + y).leq(7)).unwrap();
        m.post(Expr::from(c).equals(-(Expr::from(x) + y))).unwrap();
        let (out, stats) = FdSolver::new(&m)
            .unwrap()
            .bb_minimize_with_stats(&BnbOptions::new(c))
            .unwrap();
        assert_eq!(out.cost(), Some(-7));
        assert!(stats.restarts > 1);
    }
}
