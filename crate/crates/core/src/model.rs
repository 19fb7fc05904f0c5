//! Backend-neutral modeling layer.
//!
//! A [`Model`] owns its decision variables, a list of posted constraints and
//! an optional objective. Nothing is propagated or solved here: the same model
//! is handed to the finite-domain engine ([`crate::fd`]) or lowered to a linear
//! program ([`crate::lp`]).
//!
//! ```
//! use dualsolve::model::{Expr, Model};
//!
//! let mut m = Model::new();
//! let x = m.add_int_var(0, 10).unwrap();
//! let y = m.add_int_var(-5, 3).unwrap();
//! let a = m.add_int_var(0, 100).unwrap();
//! m.post(Expr::from(a).equals((Expr::from(x) * y).abs())).unwrap();
//! assert_eq!(m.num_constraints(), 1);
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Largest magnitude an exact integer quantity may take in the FD backend.
pub const INT_LIMIT: i64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid domain bounds: lo {lo} > hi {hi}")]
    DomainBounds { lo: i64, hi: i64 },
    #[error("invalid continuous bounds: lo {lo} > hi {hi}")]
    RealBounds { lo: f64, hi: f64 },
    #[error("domain bound {0} exceeds the supported magnitude 2^62")]
    DomainTooWide(i64),
    #[error("variable {0} is not declared in this model")]
    UndeclaredVar(VarId),
    #[error("reified comparison must be linear, found {0}")]
    NonlinearReification(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("variable {0} has no value in the assignment")]
    Unassigned(VarId),
    #[error("integer overflow while evaluating an expression")]
    Overflow,
}

/// Dense identifier of a variable inside one [`Model`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub(crate) usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Closed integer interval `[lo, hi]`; never empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Domain {
    lo: i64,
    hi: i64,
}

impl Domain {
    pub fn new(lo: i64, hi: i64) -> Result<Self, ModelError> {
        if lo > hi {
            return Err(ModelError::DomainBounds { lo, hi });
        }
        for b in [lo, hi] {
            if b.unsigned_abs() > INT_LIMIT as u64 {
                return Err(ModelError::DomainTooWide(b));
            }
        }
        Ok(Domain { lo, hi })
    }

    /// Unchecked constructor for engine-internal narrowing.
    pub(crate) fn raw(lo: i64, hi: i64) -> Self {
        debug_assert!(lo <= hi);
        Domain { lo, hi }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn is_fixed(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// Number of values, saturating.
    pub fn size(&self) -> u64 {
        (self.hi as i128 - self.lo as i128 + 1).min(u64::MAX as i128) as u64
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// Declared range of a variable: integral (FD and MIP) or continuous (LP only).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bounds {
    Int(Domain),
    Real { lo: f64, hi: f64 },
}

impl Bounds {
    pub fn is_integral(&self) -> bool {
        matches!(self, Bounds::Int(_))
    }

    pub fn as_f64(&self) -> (f64, f64) {
        match *self {
            Bounds::Int(d) => (d.lo as f64, d.hi as f64),
            Bounds::Real { lo, hi } => (lo, hi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

impl Relation {
    pub fn holds<T: PartialOrd>(self, lhs: T, rhs: T) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    /// The relation obtained by swapping both sides.
    pub fn flip(self) -> Relation {
        match self {
            Relation::Eq => Relation::Eq,
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        }
    }
}

/// Expression tree over model variables.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(i64),
    Var(VarId),
    /// Weighted sum `Σ coef * expr`.
    Sum(Vec<(i64, Expr)>),
    Product(Box<Expr>, Box<Expr>),
    Abs(Box<Expr>),
    /// Truth value of a comparison as 0 or 1.
    Reified(Box<Comparison>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub lhs: Expr,
    pub rel: Relation,
    pub rhs: Expr,
}

/// A posted constraint: the comparison must hold.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub cmp: Comparison,
}

impl From<Comparison> for Constraint {
    fn from(cmp: Comparison) -> Self {
        Constraint { cmp }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Objective {
    pub sense: Sense,
    pub expr: Expr,
}

impl Comparison {
    pub fn new(lhs: impl Into<Expr>, rel: Relation, rhs: impl Into<Expr>) -> Self {
        Comparison {
            lhs: lhs.into(),
            rel,
            rhs: rhs.into(),
        }
    }

    pub fn reify(self) -> Expr {
        Expr::Reified(Box::new(self))
    }

    pub fn eval<T: Number>(&self, a: &Assignment<T>) -> Result<bool, EvalError> {
        let l = self.lhs.eval(a)?;
        let r = self.rhs.eval(a)?;
        Ok(self.rel.holds(l, r))
    }

    fn eval_within(&self, a: &Assignment<f64>, tol: f64) -> Result<bool, EvalError> {
        let d = self.lhs.eval(a)? - self.rhs.eval(a)?;
        Ok(match self.rel {
            Relation::Eq => d.abs() <= tol,
            Relation::Le => d <= tol,
            Relation::Ge => d >= -tol,
        })
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.rel.symbol(), self.rhs)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Sum(terms) => {
                write!(f, "(")?;
                for (i, (c, e)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    if *c == 1 {
                        write!(f, "{e}")?;
                    } else {
                        write!(f, "{c}*{e}")?;
                    }
                }
                write!(f, ")")
            }
            Expr::Product(a, b) => write!(f, "{a} * {b}"),
            Expr::Abs(a) => write!(f, "abs({a})"),
            Expr::Reified(c) => write!(f, "[{c}]"),
        }
    }
}

/// Linear form `Σ coef·var + constant` produced by constant folding.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearForm {
    pub terms: BTreeMap<VarId, i64>,
    pub constant: i64,
}

impl LinearForm {
    pub fn constant(c: i64) -> Self {
        LinearForm {
            terms: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn as_constant(&self) -> Option<i64> {
        self.terms.is_empty().then_some(self.constant)
    }

    fn add_scaled(&mut self, other: &LinearForm, k: i64) -> Option<()> {
        for (&v, &c) in &other.terms {
            let e = self.terms.entry(v).or_insert(0);
            *e = e.checked_add(c.checked_mul(k)?)?;
            if *e == 0 {
                self.terms.remove(&v);
            }
        }
        self.constant = self.constant.checked_add(other.constant.checked_mul(k)?)?;
        Some(())
    }
}

impl Expr {
    pub fn var(v: VarId) -> Expr {
        Expr::Var(v)
    }

    pub fn abs(self) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(c.abs()),
            e => Expr::Abs(Box::new(e)),
        }
    }

    pub fn equals(self, rhs: impl Into<Expr>) -> Comparison {
        Comparison::new(self, Relation::Eq, rhs)
    }

    pub fn leq(self, rhs: impl Into<Expr>) -> Comparison {
        Comparison::new(self, Relation::Le, rhs)
    }

    pub fn geq(self, rhs: impl Into<Expr>) -> Comparison {
        Comparison::new(self, Relation::Ge, rhs)
    }

    /// Sum of unit-weighted expressions.
    pub fn sum<I, E>(items: I) -> Expr
    where
        I: IntoIterator<Item = E>,
        E: Into<Expr>,
    {
        Expr::Sum(items.into_iter().map(|e| (1, e.into())).collect())
    }

    /// Weighted sum.
    pub fn weighted<I, E>(items: I) -> Expr
    where
        I: IntoIterator<Item = (i64, E)>,
        E: Into<Expr>,
    {
        Expr::Sum(items.into_iter().map(|(c, e)| (c, e.into())).collect())
    }

    /// Calls `f` on every variable occurrence.
    pub fn for_each_var(&self, f: &mut impl FnMut(VarId)) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(v) => f(*v),
            Expr::Sum(terms) => terms.iter().for_each(|(_, e)| e.for_each_var(f)),
            Expr::Product(a, b) => {
                a.for_each_var(f);
                b.for_each_var(f);
            }
            Expr::Abs(a) => a.for_each_var(f),
            Expr::Reified(c) => {
                c.lhs.for_each_var(f);
                c.rhs.for_each_var(f);
            }
        }
    }

    /// Folds the expression into a linear form, or returns the first node
    /// that is not linear (a product of two non-constant factors, an `abs` or
    /// a reification over a non-constant argument). `Err(None)` signals
    /// coefficient overflow.
    pub fn linear_form(&self) -> Result<LinearForm, Option<&Expr>> {
        match self {
            Expr::Const(c) => Ok(LinearForm::constant(*c)),
            Expr::Var(v) => {
                let mut terms = BTreeMap::new();
                terms.insert(*v, 1);
                Ok(LinearForm { terms, constant: 0 })
            }
            Expr::Sum(items) => {
                let mut acc = LinearForm::default();
                for (c, e) in items {
                    acc.add_scaled(&e.linear_form()?, *c).ok_or(None)?;
                }
                Ok(acc)
            }
            Expr::Product(a, b) => {
                let la = a.linear_form()?;
                let lb = b.linear_form()?;
                let (k, other) = match (la.as_constant(), lb.as_constant()) {
                    (Some(k), _) => (k, lb),
                    (_, Some(k)) => (k, la),
                    _ => return Err(Some(self)),
                };
                let mut acc = LinearForm::default();
                acc.add_scaled(&other, k).ok_or(None)?;
                Ok(acc)
            }
            Expr::Abs(a) => match a.linear_form()?.as_constant() {
                Some(c) => Ok(LinearForm::constant(c.checked_abs().ok_or(None)?)),
                None => Err(Some(self)),
            },
            Expr::Reified(cmp) => {
                let l = cmp.lhs.linear_form()?;
                let r = cmp.rhs.linear_form()?;
                match (l.as_constant(), r.as_constant()) {
                    (Some(x), Some(y)) => Ok(LinearForm::constant(cmp.rel.holds(x, y) as i64)),
                    _ => Err(Some(self)),
                }
            }
        }
    }

    pub fn is_linear(&self) -> bool {
        self.linear_form().is_ok()
    }

    /// Recursive evaluation under an assignment.
    pub fn eval<T: Number>(&self, a: &Assignment<T>) -> Result<T, EvalError> {
        match self {
            Expr::Const(c) => Ok(T::from_i64(*c)),
            Expr::Var(v) => a.get(*v).ok_or(EvalError::Unassigned(*v)),
            Expr::Sum(terms) => {
                let mut acc = T::from_i64(0);
                for (c, e) in terms {
                    let t = T::from_i64(*c).mul(e.eval(a)?).ok_or(EvalError::Overflow)?;
                    acc = acc.add(t).ok_or(EvalError::Overflow)?;
                }
                Ok(acc)
            }
            Expr::Product(x, y) => x.eval(a)?.mul(y.eval(a)?).ok_or(EvalError::Overflow),
            Expr::Abs(x) => x.eval(a)?.abs().ok_or(EvalError::Overflow),
            Expr::Reified(c) => Ok(T::from_i64(c.eval(a)? as i64)),
        }
    }
}

impl From<VarId> for Expr {
    fn from(v: VarId) -> Self {
        Expr::Var(v)
    }
}

impl From<i64> for Expr {
    fn from(c: i64) -> Self {
        Expr::Const(c)
    }
}

impl From<Comparison> for Expr {
    fn from(c: Comparison) -> Self {
        c.reify()
    }
}

fn into_terms(e: Expr, k: i64, out: &mut Vec<(i64, Expr)>) {
    match e {
        Expr::Sum(terms) if k == 1 => out.extend(terms),
        e => out.push((k, e)),
    }
}

impl<R: Into<Expr>> Add<R> for Expr {
    type Output = Expr;
    fn add(self, rhs: R) -> Expr {
        let mut terms = Vec::new();
        into_terms(self, 1, &mut terms);
        into_terms(rhs.into(), 1, &mut terms);
        Expr::Sum(terms)
    }
}

impl<R: Into<Expr>> Sub<R> for Expr {
    type Output = Expr;
    fn sub(self, rhs: R) -> Expr {
        let mut terms = Vec::new();
        into_terms(self, 1, &mut terms);
        into_terms(rhs.into(), -1, &mut terms);
        Expr::Sum(terms)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(-c),
            e => Expr::Sum(vec![(-1, e)]),
        }
    }
}

impl<R: Into<Expr>> Mul<R> for Expr {
    type Output = Expr;
    fn mul(self, rhs: R) -> Expr {
        match (self, rhs.into()) {
            (Expr::Const(k), e) | (e, Expr::Const(k)) => Expr::Sum(vec![(k, e)]),
            (a, b) => Expr::Product(Box::new(a), Box::new(b)),
        }
    }
}

impl Mul<Expr> for i64 {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Sum(vec![(self, rhs)])
    }
}

impl Mul<VarId> for i64 {
    type Output = Expr;
    fn mul(self, rhs: VarId) -> Expr {
        Expr::Sum(vec![(self, Expr::Var(rhs))])
    }
}

/// Scalar type an expression can be evaluated in.
pub trait Number: Copy + PartialOrd + fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn add(self, o: Self) -> Option<Self>;
    fn mul(self, o: Self) -> Option<Self>;
    fn abs(self) -> Option<Self>;
}

impl Number for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn add(self, o: Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn mul(self, o: Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn abs(self) -> Option<Self> {
        self.checked_abs()
    }
}

impl Number for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn add(self, o: Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(self, o: Self) -> Option<Self> {
        Some(self * o)
    }
    fn abs(self) -> Option<Self> {
        Some(f64::abs(self))
    }
}

/// Values of (some of) a model's variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment<T = i64> {
    values: Vec<Option<T>>,
}

impl<T: Copy> Assignment<T> {
    pub fn empty(len: usize) -> Self {
        Assignment {
            values: vec![None; len],
        }
    }

    pub fn from_values(values: impl IntoIterator<Item = T>) -> Self {
        Assignment {
            values: values.into_iter().map(Some).collect(),
        }
    }

    pub fn set(&mut self, v: VarId, value: T) {
        if v.0 >= self.values.len() {
            self.values.resize(v.0 + 1, None);
        }
        self.values[v.0] = Some(value);
    }

    pub fn get(&self, v: VarId) -> Option<T> {
        self.values.get(v.0).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// Value of `v`; panics if unassigned.
    pub fn value(&self, v: VarId) -> T {
        self.get(v).unwrap_or_else(|| panic!("variable {v} is unassigned"))
    }
}

impl<T: Copy> std::ops::Index<VarId> for Assignment<T> {
    type Output = T;
    fn index(&self, v: VarId) -> &T {
        self.values[v.0]
            .as_ref()
            .unwrap_or_else(|| panic!("variable {v} is unassigned"))
    }
}

/// Decision variables, constraints and an optional objective.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Model {
    vars: Vec<Bounds>,
    names: Vec<Option<String>>,
    constraints: Vec<Constraint>,
    objective: Option<Objective>,
}

impl Model {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_int_var(&mut self, lo: i64, hi: i64) -> Result<VarId, ModelError> {
        let d = Domain::new(lo, hi)?;
        Ok(self.push_var(Bounds::Int(d)))
    }

    pub fn add_bool_var(&mut self) -> VarId {
        self.push_var(Bounds::Int(Domain { lo: 0, hi: 1 }))
    }

    /// Continuous variable; infinite bounds are allowed. Only the LP backend
    /// accepts models containing these.
    pub fn add_real_var(&mut self, lo: f64, hi: f64) -> Result<VarId, ModelError> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(ModelError::RealBounds { lo, hi });
        }
        Ok(self.push_var(Bounds::Real { lo, hi }))
    }

    fn push_var(&mut self, b: Bounds) -> VarId {
        self.vars.push(b);
        self.names.push(None);
        VarId(self.vars.len() - 1)
    }

    pub fn set_name(&mut self, v: VarId, name: impl Into<String>) {
        self.names[v.0] = Some(name.into());
    }

    pub fn name(&self, v: VarId) -> String {
        self.names.get(v.0).cloned().flatten().unwrap_or_else(|| v.to_string())
    }

    /// Appends a constraint. No propagation happens here.
    pub fn post(&mut self, c: impl Into<Constraint>) -> Result<(), ModelError> {
        let c = c.into();
        self.check_comparison(&c.cmp)?;
        self.constraints.push(c);
        Ok(())
    }

    pub fn set_objective(&mut self, sense: Sense, expr: impl Into<Expr>) -> Result<(), ModelError> {
        let expr = expr.into();
        self.check_expr(&expr)?;
        self.objective = Some(Objective { sense, expr });
        Ok(())
    }

    pub fn minimize(&mut self, expr: impl Into<Expr>) -> Result<(), ModelError> {
        self.set_objective(Sense::Minimize, expr)
    }

    pub fn maximize(&mut self, expr: impl Into<Expr>) -> Result<(), ModelError> {
        self.set_objective(Sense::Maximize, expr)
    }

    fn check_comparison(&self, c: &Comparison) -> Result<(), ModelError> {
        self.check_expr(&c.lhs)?;
        self.check_expr(&c.rhs)
    }

    fn check_expr(&self, e: &Expr) -> Result<(), ModelError> {
        let mut bad = None;
        e.for_each_var(&mut |v| {
            if v.0 >= self.vars.len() && bad.is_none() {
                bad = Some(v);
            }
        });
        if let Some(v) = bad {
            return Err(ModelError::UndeclaredVar(v));
        }
        check_reifications(e)
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn vars(&self) -> impl ExactSizeIterator<Item = VarId> {
        (0..self.vars.len()).map(VarId)
    }

    pub fn bounds(&self, v: VarId) -> Bounds {
        self.vars[v.0]
    }

    /// Integer domain of `v`, or `None` for continuous variables.
    pub fn domain(&self, v: VarId) -> Option<Domain> {
        match self.vars[v.0] {
            Bounds::Int(d) => Some(d),
            Bounds::Real { .. } => None,
        }
    }

    pub fn is_integral(&self, v: VarId) -> bool {
        self.vars[v.0].is_integral()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> Option<&Objective> {
        self.objective.as_ref()
    }

    /// True when every constraint holds exactly and every value is inside
    /// its declared domain.
    pub fn check_solution(&self, a: &Assignment<i64>) -> Result<bool, EvalError> {
        for v in self.vars() {
            let x = a.get(v).ok_or(EvalError::Unassigned(v))?;
            let (lo, hi) = self.vars[v.0].as_f64();
            if (x as f64) < lo || (x as f64) > hi {
                return Ok(false);
            }
        }
        for c in &self.constraints {
            if !c.cmp.eval(a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Floating-point variant of [`Model::check_solution`]: bounds and
    /// constraints are allowed a violation of `tol`, integral variables must be
    /// within `tol` of an integer.
    pub fn check_solution_within(&self, a: &Assignment<f64>, tol: f64) -> Result<bool, EvalError> {
        for v in self.vars() {
            let x = a.get(v).ok_or(EvalError::Unassigned(v))?;
            let b = self.vars[v.0];
            let (lo, hi) = b.as_f64();
            if x < lo - tol || x > hi + tol {
                return Ok(false);
            }
            if b.is_integral() && (x - x.round()).abs() > tol {
                return Ok(false);
            }
        }
        for c in &self.constraints {
            if !c.cmp.eval_within(a, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_reifications(e: &Expr) -> Result<(), ModelError> {
    match e {
        Expr::Const(_) | Expr::Var(_) => Ok(()),
        Expr::Sum(terms) => terms.iter().try_for_each(|(_, t)| check_reifications(t)),
        Expr::Product(a, b) => {
            check_reifications(a)?;
            check_reifications(b)
        }
        Expr::Abs(a) => check_reifications(a),
        Expr::Reified(c) => {
            for side in [&c.lhs, &c.rhs] {
                if let Err(Some(node)) = side.linear_form() {
                    return Err(ModelError::NonlinearReification(node.to_string()));
                }
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_int_var_records_domain() {
        let mut m = Model::new();
        let x = m.add_int_var(0, 10).unwrap();
        assert_eq!(x.index(), 0);
        assert_eq!(m.domain(x), Some(Domain::new(0, 10).unwrap()));
        assert!(m.is_integral(x));

        let s = m.add_int_var(5, 5).unwrap();
        assert!(m.domain(s).unwrap().is_fixed());
    }

    #[test]
    fn inverted_bounds_are_rejected() {
        let mut m = Model::new();
        assert_eq!(m.add_int_var(3, 1), Err(ModelError::DomainBounds { lo: 3, hi: 1 }));
        assert!(m.add_real_var(2.0, 1.0).is_err());
        assert!(m.add_int_var(0, i64::MAX).is_err());
    }

    #[test]
    fn post_stores_without_touching_domains() {
        let mut m = Model::new();
        let x = m.add_int_var(0, 10).unwrap();
        m.post(Expr::from(x).geq(4)).unwrap();
        assert_eq!(m.num_constraints(), 1);
        assert_eq!(m.domain(x).unwrap().lo(), 0);
    }

    #[test]
    fn post_accepts_nested_area_tree() {
        let mut m = Model::new();
        let v: Vec<_> = (0..5).map(|_| m.add_int_var(0, 4).unwrap()).collect();
        let area = (Expr::from(v[0]) * v[1] - Expr::from(v[2]) * v[3]).abs();
        m.post(area.equals(v[4])).unwrap();
        assert_eq!(m.num_constraints(), 1);
    }

    #[test]
    fn post_rejects_unknown_variable() {
        let mut m = Model::new();
        m.add_int_var(0, 1).unwrap();
        let err = m.post(Expr::from(VarId(99)).geq(0)).unwrap_err();
        assert_eq!(err, ModelError::UndeclaredVar(VarId(99)));
    }

    #[test]
    fn post_rejects_nonlinear_reification() {
        let mut m = Model::new();
        let x = m.add_int_var(0, 3).unwrap();
        let b = m.add_bool_var();
        let r = (Expr::from(x) * x).equals(4).reify();
        assert!(matches!(
            m.post(Expr::from(b).equals(r)),
            Err(ModelError::NonlinearReification(_))
        ));
    }

    #[test]
    fn eval_constant_arithmetic() {
        let a = Assignment::<i64>::empty(0);
        let e = (Expr::Const(2) * Expr::Const(3) - Expr::Const(1) * Expr::Const(4)).abs();
        assert_eq!(e.eval(&a), Ok(2));
        let p = Expr::Product(Box::new(Expr::Const(2)), Box::new(Expr::Const(3)));
        assert_eq!((p - 4).abs().eval(&a), Ok(2));
    }

    #[test]
    fn eval_reified() {
        let a = Assignment::<i64>::empty(0);
        let t = (Expr::Const(5) - 3).equals(2).reify();
        let f = (Expr::Const(4) - 3).equals(2).reify();
        assert_eq!(t.eval(&a), Ok(1));
        assert_eq!(f.eval(&a), Ok(0));
    }

    #[test]
    fn eval_missing_variable() {
        let mut m = Model::new();
        let x = m.add_int_var(0, 1).unwrap();
        let a = Assignment::<i64>::empty(1);
        assert_eq!(Expr::from(x).eval(&a), Err(EvalError::Unassigned(x)));
    }

    #[test]
    fn eval_overflow_is_reported() {
        let a = Assignment::<i64>::empty(0);
        let e = Expr::Const(i64::MAX) * Expr::Const(2);
        assert_eq!(e.eval(&a), Err(EvalError::Overflow));
    }

    #[test]
    fn linear_form_folds_constants() {
        let mut m = Model::new();
        let x = m.add_int_var(0, 5).unwrap();
        let y = m.add_int_var(0, 5).unwrap();
        let e = Expr::from(x) * 3 + Expr::Const(2) * y - x + Expr::Const(4).abs();
        let lf = e.linear_form().unwrap();
        assert_eq!(lf.terms.get(&x), Some(&2));
        assert_eq!(lf.terms.get(&y), Some(&2));
        assert_eq!(lf.constant, 4);
        assert!(!(Expr::from(x) * y).is_linear());
        assert!(!Expr::from(x).abs().is_linear());
    }

    #[test]
    fn check_solution_uses_domains_and_constraints() {
        let mut m = Model::new();
        let x = m.add_int_var(0, 10).unwrap();
        m.post(Expr::from(x).geq(4)).unwrap();
        assert_eq!(m.check_solution(&Assignment::from_values([5])), Ok(true));
        assert_eq!(m.check_solution(&Assignment::from_values([3])), Ok(false));
        assert_eq!(m.check_solution(&Assignment::from_values([11])), Ok(false));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cmp_strategy() -> impl Strategy<Value = (i64, i64, i64, u8)> {
            (-20i64..20, -20i64..20, -20i64..20, 0u8..3)
        }

        proptest! {
            #[test]
            fn reified_is_boolean_and_matches((x, y, k, r) in cmp_strategy()) {
                let mut m = Model::new();
                let vx = m.add_int_var(-20, 20).unwrap();
                let vy = m.add_int_var(-20, 20).unwrap();
                let rel = [Relation::Eq, Relation::Le, Relation::Ge][r as usize];
                let cmp = Comparison::new(Expr::from(vx) - vy, rel, k);
                let a = Assignment::from_values([x, y]);
                let val = cmp.clone().reify().eval(&a).unwrap();
                prop_assert!(val == 0 || val == 1);
                prop_assert_eq!(val == 1, rel.holds(x - y, k));
            }
        }
    }
}
