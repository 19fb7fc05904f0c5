//! Linear-programming backend.
//!
//! Linear models are lowered to an [`LpProblem`] (rows, variable bounds,
//! objective, integrality mask). [`simplex_solve`] solves the continuous
//! relaxation with a two-phase bounded primal simplex on a tableau;
//! [`mip_solve`] adds depth-first branch-and-bound for integral variables.

mod mip;
mod simplex;
mod tableau;

pub use mip::{mip_solve, mip_solve_with};
pub use simplex::{simplex_solve, simplex_solve_with};

use thiserror::Error;

use crate::model::{Bounds, Constraint, Expr, Model, Relation, Sense, VarId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("model is not linear: `{0}`")]
    NotLinear(String),
    #[error("coefficient overflow while lowering `{0}`")]
    Overflow(String),
    #[error("malformed problem: {0}")]
    Malformed(String),
    #[error("unsupported model: {0}")]
    Unsupported(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("node limit reached after {0} nodes")]
    NodeLimit(u64),
}

/// Tolerances and limits of the simplex and branch-and-bound solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct LpOptions {
    /// Maximum row or bound violation accepted in a returned point.
    pub feas_tol: f64,
    /// Reduced-cost tolerance for optimality.
    pub opt_tol: f64,
    /// Distance to the nearest integer below which a value counts as integral.
    pub int_tol: f64,
    /// Smallest magnitude accepted as a pivot element.
    pub pivot_tol: f64,
    /// Consecutive degenerate pivots after which Bland's rule takes over.
    pub degeneracy_streak: u32,
    /// Branch-and-bound node budget; `None` is unlimited.
    pub max_nodes: Option<u64>,
    /// Rounds of Gomory cuts added at the root before branching.
    pub cut_rounds: u32,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            feas_tol: 1e-7,
            opt_tol: 1e-9,
            int_tol: 1e-6,
            pivot_tol: 1e-9,
            degeneracy_streak: 20,
            max_nodes: None,
            cut_rounds: 20,
        }
    }
}

/// One constraint row `Σ coef·x  rel  rhs`, stored sparsely.
#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub coeffs: Vec<(usize, f64)>,
    pub rel: Relation,
    pub rhs: f64,
}

impl LpRow {
    pub fn new(coeffs: Vec<(usize, f64)>, rel: Relation, rhs: f64) -> Self {
        LpRow { coeffs, rel, rhs }
    }

    /// Row from a dense coefficient vector; zeros are dropped.
    pub fn dense(coeffs: &[f64], rel: Relation, rhs: f64) -> Self {
        let coeffs = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(j, c)| (j, *c))
            .collect();
        LpRow { coeffs, rel, rhs }
    }

    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, c)| c * x[j]).sum()
    }

    pub fn violation(&self, x: &[f64]) -> f64 {
        let d = self.activity(x) - self.rhs;
        match self.rel {
            Relation::Eq => d.abs(),
            Relation::Le => d.max(0.0),
            Relation::Ge => (-d).max(0.0),
        }
    }
}

/// A linear program over `n` columns.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub n: usize,
    pub rows: Vec<LpRow>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub objective_offset: f64,
    pub integer: Vec<bool>,
}

impl LpProblem {
    /// `n` continuous columns in `[0, ∞)`, no rows, zero objective to minimize.
    pub fn new(n: usize) -> Self {
        LpProblem {
            n,
            rows: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
            sense: Sense::Minimize,
            objective: vec![0.0; n],
            objective_offset: 0.0,
            integer: vec![false; n],
        }
    }

    pub fn add_row(&mut self, row: LpRow) -> &mut Self {
        self.rows.push(row);
        self
    }

    pub fn set_bounds(&mut self, j: usize, lo: f64, hi: f64) -> &mut Self {
        self.lower[j] = lo;
        self.upper[j] = hi;
        self
    }

    pub fn set_integer(&mut self, j: usize, integral: bool) -> &mut Self {
        self.integer[j] = integral;
        self
    }

    pub fn set_objective(&mut self, sense: Sense, coeffs: &[f64]) -> &mut Self {
        self.sense = sense;
        self.objective = coeffs.to_vec();
        self
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let bad = |m: String| Err(LpError::Malformed(m));
        if self.lower.len() != self.n
            || self.upper.len() != self.n
            || self.objective.len() != self.n
            || self.integer.len() != self.n
        {
            return bad("column vectors must have length n".into());
        }
        for j in 0..self.n {
            let (lo, hi) = (self.lower[j], self.upper[j]);
            if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
                return bad(format!("column {j} has bounds [{lo}, {hi}]"));
            }
            if !self.objective[j].is_finite() {
                return bad(format!("objective coefficient {j} is not finite"));
            }
        }
        for (i, r) in self.rows.iter().enumerate() {
            if !r.rhs.is_finite() {
                return bad(format!("row {i} has a non-finite right-hand side"));
            }
            if let Some(&(j, c)) = r.coeffs.iter().find(|(j, c)| *j >= self.n || !c.is_finite()) {
                return bad(format!("row {i} has entry ({j}, {c})"));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective_offset + self.objective.iter().zip(x).map(|(c, v)| c * v).sum::<f64>()
    }

    /// Largest row or bound violation of `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let rows = self.rows.iter().map(|r| r.violation(x));
        let bounds = (0..self.n).map(|j| (self.lower[j] - x[j]).max(x[j] - self.upper[j]).max(0.0));
        rows.chain(bounds).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpSolution {
    Optimal { x: Vec<f64>, objective: f64 },
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn objective(&self) -> Option<f64> {
        match self {
            LpSolution::Optimal { objective, .. } => Some(*objective),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[f64]> {
        match self {
            LpSolution::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }

    /// Value of a model variable in the optimal point.
    pub fn value(&self, v: VarId) -> Option<f64> {
        self.point().map(|x| x[v.index()])
    }
}

fn linear_terms(e: &Expr) -> Result<(Vec<(usize, f64)>, f64), LpError> {
    match e.linear_form() {
        Ok(lf) => Ok((
            lf.terms.iter().map(|(v, &c)| (v.index(), c as f64)).collect(),
            lf.constant as f64,
        )),
        Err(Some(node)) => Err(LpError::NotLinear(node.to_string())),
        Err(None) => Err(LpError::Overflow(e.to_string())),
    }
}

/// One row per constraint, bounds and integrality carried over from the
/// model. Fails on the first node that does not fold to a linear form.
pub fn lower_to_lp(model: &Model) -> Result<LpProblem, LpError> {
    let n = model.num_vars();
    let mut lp = LpProblem::new(n);
    for v in model.vars() {
        let j = v.index();
        let (lo, hi) = model.bounds(v).as_f64();
        lp.set_bounds(j, lo, hi);
        lp.set_integer(j, matches!(model.bounds(v), Bounds::Int(_)));
    }
    for c in model.constraints() {
        let diff = c.cmp.lhs.clone() - c.cmp.rhs.clone();
        let (coeffs, constant) = linear_terms(&diff)?;
        lp.add_row(LpRow::new(coeffs, c.cmp.rel, -constant));
    }
    if let Some(obj) = model.objective() {
        let (coeffs, constant) = linear_terms(&obj.expr)?;
        let mut dense = vec![0.0; n];
        for (j, c) in coeffs {
            dense[j] += c;
        }
        lp.set_objective(obj.sense, &dense);
        lp.objective_offset = constant;
    }
    Ok(lp)
}

/// `|inner| <= bound` as the pair `inner <= bound`, `-inner <= bound`.
pub fn linearize_abs_leq(inner: &Expr, bound: &Expr) -> Result<[Constraint; 2], LpError> {
    for e in [inner, bound] {
        linear_terms(e)?;
    }
    Ok([
        inner.clone().leq(bound.clone()).into(),
        (-inner.clone()).leq(bound.clone()).into(),
    ])
}

/// `Σ |terms_k| <= bound` expanded into its `2^k` sign patterns. Each axis
/// is peeled off by moving it to the right-hand side with both signs; the
/// last one goes through [`linearize_abs_leq`].
pub fn linearize_abs_sum_leq(terms: &[Expr], bound: &Expr) -> Result<Vec<Constraint>, LpError> {
    let Some((first, rest)) = terms.split_first() else {
        return Ok(vec![Expr::Const(0).leq(bound.clone()).into()]);
    };
    let mut bounds = vec![bound.clone()];
    for t in rest {
        bounds = bounds
            .into_iter()
            .flat_map(|b| [b.clone() - t.clone(), b + t.clone()])
            .collect();
    }
    let mut out = Vec::with_capacity(2 * bounds.len());
    for b in &bounds {
        out.extend(linearize_abs_leq(first, b)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Assignment;

    #[test]
    fn lower_bounds_only() {
        let mut m = Model::new();
        let x = m.add_int_var(0, 5).unwrap();
        m.maximize(x).unwrap();
        let lp = lower_to_lp(&m).unwrap();
        assert_eq!(lp.rows.len(), 0);
        assert_eq!(lp.upper[0], 5.0);
        assert!(lp.integer[0]);
        assert_eq!(lp.sense, Sense::Maximize);
    }

    #[test]
    fn lower_rejects_abs() {
        let mut m = Model::new();
        let x = m.add_int_var(-5, 5).unwrap();
        m.post(Expr::from(x).abs().leq(3)).unwrap();
        assert!(matches!(lower_to_lp(&m), Err(LpError::NotLinear(_))));
    }

    #[test]
    fn lower_folds_constant_products() {
        let mut m = Model::new();
        let x = m.add_int_var(0, 10).unwrap();
        let g = m.add_bool_var();
        // max >= g * p with p = 4 as data
        m.post(Expr::from(x).geq(Expr::from(g) * Expr::Const(4))).unwrap();
        let lp = lower_to_lp(&m).unwrap();
        assert_eq!(lp.rows[0].coeffs, vec![(0, 1.0), (1, -4.0)]);
        assert_eq!(lp.rows[0].rel, Relation::Ge);
        assert_eq!(lp.rows[0].rhs, 0.0);
    }

    #[test]
    fn abs_pair_shape() {
        let mut m = Model::new();
        let x = m.add_int_var(-10, 10).unwrap();
        let t = m.add_int_var(0, 10).unwrap();
        let [a, b] = linearize_abs_leq(&(Expr::from(x) - 3), &Expr::from(t)).unwrap();
        // x - 3 <= t and 3 - x <= t
        let at = |xv, tv| Assignment::from_values([xv, tv]);
        assert!(a.cmp.eval(&at(5, 2)).unwrap());
        assert!(!a.cmp.eval(&at(6, 2)).unwrap());
        assert!(b.cmp.eval(&at(1, 2)).unwrap());
        assert!(!b.cmp.eval(&at(0, 2)).unwrap());

        let [z1, z2] = linearize_abs_leq(&Expr::Const(0), &Expr::from(t)).unwrap();
        assert!(z1.cmp.eval(&at(0, 0)).unwrap() && z2.cmp.eval(&at(0, 0)).unwrap());
    }

    #[test]
    fn abs_pair_rejects_nonlinear() {
        let mut m = Model::new();
        let x = m.add_int_var(-10, 10).unwrap();
        assert!(linearize_abs_leq(&(Expr::from(x) * x), &Expr::Const(1)).is_err());
    }

    #[test]
    fn abs_pair_matches_abs_on_samples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut m = Model::new();
        let x = m.add_int_var(-50, 50).unwrap();
        let y = m.add_int_var(-50, 50).unwrap();
        let t = m.add_int_var(-50, 50).unwrap();
        let inner = Expr::from(x) * 2 - y + 1;
        let pair = linearize_abs_leq(&inner, &Expr::from(t)).unwrap();
        for _ in 0..100 {
            let a = Assignment::from_values([
                rng.gen_range(-50..=50),
                rng.gen_range(-50..=50),
                rng.gen_range(-50..=50),
            ]);
            let direct = inner.eval(&a).unwrap().abs() <= a[t];
            let both = pair.iter().all(|c| c.cmp.eval(&a).unwrap());
            assert_eq!(direct, both);
        }
    }

    #[test]
    fn abs_sum_has_all_sign_patterns() {
        let mut m = Model::new();
        let v: Vec<_> = (0..3).map(|_| m.add_int_var(-5, 5).unwrap()).collect();
        let b = m.add_int_var(0, 20).unwrap();
        let terms: Vec<Expr> = v.iter().map(|&x| Expr::from(x)).collect();
        let rows = linearize_abs_sum_leq(&terms, &Expr::from(b)).unwrap();
        assert_eq!(rows.len(), 8);
        for vals in [
            [1, -2, 3, 6],
            [1, -2, 3, 5],
            [0, 0, 0, 0],
            [-5, 5, -5, 15],
            [-5, 5, -5, 14],
        ] {
            let a = Assignment::from_values(vals);
            let direct = vals[..3].iter().map(|x: &i64| x.abs()).sum::<i64>() <= vals[3];
            assert_eq!(rows.iter().all(|c| c.cmp.eval(&a).unwrap()), direct, "{vals:?}");
        }
    }

    #[test]
    fn validate_catches_bad_rows() {
        let mut lp = LpProblem::new(2);
        lp.add_row(LpRow::new(vec![(2, 1.0)], Relation::Le, 1.0));
        assert!(lp.validate().is_err());
        let mut lp = LpProblem::new(1);
        lp.set_bounds(0, 2.0, 1.0);
        assert!(lp.validate().is_err());
    }
}
