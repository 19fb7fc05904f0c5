use std::collections::BTreeMap;

use super::propagate::{LinearRel, Narrow, Prop, PropOutcome, PropState};
use super::FdError;
use crate::model::{Bounds, Domain, Expr, Model, Relation, INT_LIMIT};

/// A model flattened into primitive propagators, ready for search.
///
/// Variables `0..num_model_vars` are the model's own variables in declaration
/// order; the rest are auxiliaries standing for nested sub-expressions.
#[derive(Debug, Clone)]
pub struct FdSolver {
    pub(crate) num_model_vars: usize,
    pub(crate) domains: Vec<Domain>,
    pub(crate) props: Vec<Prop>,
    pub(crate) watchers: Vec<Vec<u32>>,
}

/// Linear form over solver variable indices.
#[derive(Debug, Clone, Default)]
struct Lin {
    terms: BTreeMap<usize, i64>,
    constant: i64,
}

impl Lin {
    fn constant(c: i64) -> Self {
        Lin {
            terms: BTreeMap::new(),
            constant: c,
        }
    }

    fn var(v: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(v, 1);
        Lin { terms, constant: 0 }
    }

    fn as_constant(&self) -> Option<i64> {
        self.terms.is_empty().then_some(self.constant)
    }

    /// `Some(v)` when the form is exactly `1·v + 0`.
    fn as_var(&self) -> Option<usize> {
        if self.constant != 0 || self.terms.len() != 1 {
            return None;
        }
        let (&v, &c) = self.terms.iter().next()?;
        (c == 1).then_some(v)
    }

    fn add_scaled(&mut self, other: &Lin, k: i64) -> Option<()> {
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

    fn into_rel(self, rel: Relation) -> LinearRel {
        LinearRel {
            terms: self.terms.into_iter().map(|(v, c)| (c, v)).collect(),
            constant: self.constant,
            rel,
        }
    }
}

struct Builder {
    domains: Vec<Domain>,
    props: Vec<Prop>,
}

fn within_limit(lo: i128, hi: i128) -> bool {
    let lim = INT_LIMIT as i128;
    lo >= -lim && hi <= lim
}

impl Builder {
    fn overflow(e: &Expr) -> FdError {
        FdError::Overflow(e.to_string())
    }

    fn new_aux(&mut self, lo: i128, hi: i128, e: &Expr) -> Result<usize, FdError> {
        if !within_limit(lo, hi) {
            return Err(Self::overflow(e));
        }
        self.domains.push(Domain::raw(lo as i64, hi as i64));
        Ok(self.domains.len() - 1)
    }

    fn bounds(&self, l: &Lin) -> (i128, i128) {
        let mut lo = l.constant as i128;
        let mut hi = lo;
        for (&v, &c) in &l.terms {
            let d = self.domains[v];
            let (a, b) = (c as i128 * d.lo() as i128, c as i128 * d.hi() as i128);
            lo += a.min(b);
            hi += a.max(b);
        }
        (lo, hi)
    }

    /// Variable equal to `l`, introducing an auxiliary when needed.
    fn var_of(&mut self, l: Lin, e: &Expr) -> Result<usize, FdError> {
        if let Some(v) = l.as_var() {
            return Ok(v);
        }
        let (lo, hi) = self.bounds(&l);
        let aux = self.new_aux(lo, hi, e)?;
        let mut rel = l;
        rel.add_scaled(&Lin::var(aux), -1).ok_or_else(|| Self::overflow(e))?;
        self.props.push(Prop::Linear(rel.into_rel(Relation::Eq)));
        Ok(aux)
    }

    fn flatten(&mut self, e: &Expr) -> Result<Lin, FdError> {
        match e {
            Expr::Const(c) => Ok(Lin::constant(*c)),
            Expr::Var(v) => Ok(Lin::var(v.index())),
            Expr::Sum(items) => {
                let mut acc = Lin::default();
                for (c, sub) in items {
                    let l = self.flatten(sub)?;
                    acc.add_scaled(&l, *c).ok_or_else(|| Self::overflow(e))?;
                }
                let (lo, hi) = self.bounds(&acc);
                if !within_limit(lo, hi) {
                    return Err(Self::overflow(e));
                }
                Ok(acc)
            }
            Expr::Product(a, b) => {
                let la = self.flatten(a)?;
                let lb = self.flatten(b)?;
                if let Some(k) = la.as_constant() {
                    let mut acc = Lin::default();
                    acc.add_scaled(&lb, k).ok_or_else(|| Self::overflow(e))?;
                    return Ok(acc);
                }
                if let Some(k) = lb.as_constant() {
                    let mut acc = Lin::default();
                    acc.add_scaled(&la, k).ok_or_else(|| Self::overflow(e))?;
                    return Ok(acc);
                }
                let x = self.var_of(la, a)?;
                let y = self.var_of(lb, b)?;
                let (dx, dy) = (self.domains[x], self.domains[y]);
                let c = [
                    dx.lo() as i128 * dy.lo() as i128,
                    dx.lo() as i128 * dy.hi() as i128,
                    dx.hi() as i128 * dy.lo() as i128,
                    dx.hi() as i128 * dy.hi() as i128,
                ];
                let z = self.new_aux(*c.iter().min().unwrap(), *c.iter().max().unwrap(), e)?;
                self.props.push(Prop::Times { x, y, z });
                Ok(Lin::var(z))
            }
            Expr::Abs(a) => {
                let la = self.flatten(a)?;
                if let Some(k) = la.as_constant() {
                    return Ok(Lin::constant(k.checked_abs().ok_or_else(|| Self::overflow(e))?));
                }
                let x = self.var_of(la, a)?;
                let d = self.domains[x];
                let hi = (d.lo() as i128).abs().max((d.hi() as i128).abs());
                let z = self.new_aux(0, hi, e)?;
                self.props.push(Prop::Abs { x, z });
                Ok(Lin::var(z))
            }
            Expr::Reified(cmp) => {
                let mut l = self.flatten(&cmp.lhs)?;
                let r = self.flatten(&cmp.rhs)?;
                l.add_scaled(&r, -1).ok_or_else(|| Self::overflow(e))?;
                if let Some(k) = l.as_constant() {
                    return Ok(Lin::constant(cmp.rel.holds(k, 0) as i64));
                }
                let b = self.new_aux(0, 1, e)?;
                self.props.push(Prop::Reif {
                    b,
                    lin: l.into_rel(cmp.rel),
                });
                Ok(Lin::var(b))
            }
        }
    }
}

impl FdSolver {
    /// Flattens `model`. Continuous variables are rejected.
    pub fn new(model: &Model) -> Result<Self, FdError> {
        let mut domains = Vec::with_capacity(model.num_vars());
        for v in model.vars() {
            match model.bounds(v) {
                Bounds::Int(d) => domains.push(d),
                Bounds::Real { .. } => {
                    return Err(FdError::Unsupported(format!(
                        "variable {} is continuous",
                        model.name(v)
                    )))
                }
            }
        }
        let mut b = Builder {
            domains,
            props: Vec::new(),
        };
        for c in model.constraints() {
            let mut l = b.flatten(&c.cmp.lhs)?;
            let r = b.flatten(&c.cmp.rhs)?;
            l.add_scaled(&r, -1)
                .ok_or_else(|| FdError::Overflow(c.cmp.to_string()))?;
            match l.as_constant() {
                Some(k) if c.cmp.rel.holds(k, 0) => {}
                Some(_) => b.props.push(Prop::False),
                None => b.props.push(Prop::Linear(l.into_rel(c.cmp.rel))),
            }
        }
        let mut watchers = vec![Vec::new(); b.domains.len()];
        for (i, p) in b.props.iter().enumerate() {
            let mut vars = p.vars();
            vars.sort_unstable();
            vars.dedup();
            for v in vars {
                watchers[v].push(i as u32);
            }
        }
        Ok(FdSolver {
            num_model_vars: model.num_vars(),
            domains: b.domains,
            props: b.props,
            watchers,
        })
    }

    pub fn num_model_vars(&self) -> usize {
        self.num_model_vars
    }

    /// Model plus auxiliary variables.
    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn num_propagators(&self) -> usize {
        self.props.len()
    }

    /// Initial state: declared domains, every propagator queued.
    pub fn root_state(&self) -> PropState {
        PropState::new(&self.domains, self.props.len())
    }

    /// Runs queued propagators until nothing changes. Returns `false` when a
    /// domain empties.
    pub(crate) fn fixpoint(&self, st: &mut PropState) -> bool {
        let mut changed = Vec::new();
        while let Some(p) = st.pop() {
            changed.clear();
            let res = {
                let mut n = Narrow {
                    st,
                    changed: &mut changed,
                };
                self.props[p as usize].propagate(&mut n)
            };
            if res.is_err() {
                st.clear_queue();
                return false;
            }
            for &v in &changed {
                for &w in &self.watchers[v] {
                    st.enqueue(w);
                }
            }
        }
        true
    }

    /// Propagates `state` to a fixpoint.
    pub fn propagate(&self, state: &mut PropState) -> PropOutcome {
        if self.fixpoint(state) {
            PropOutcome::Fixpoint((0..self.num_model_vars).map(|v| state.domain(v)).collect())
        } else {
            PropOutcome::Infeasible
        }
    }

    /// Intersects the domain of `v` with `[lo, hi]` and queues its watchers.
    /// Returns `false` if the result is empty.
    pub fn restrict(&self, st: &mut PropState, v: usize, lo: i64, hi: i64) -> bool {
        let mut changed = Vec::new();
        let ok = {
            let mut n = Narrow {
                st,
                changed: &mut changed,
            };
            n.set_lo(v, lo as i128).is_ok() && n.set_hi(v, hi as i128).is_ok()
        };
        for &v in &changed {
            for &w in &self.watchers[v] {
                st.enqueue(w);
            }
        }
        ok
    }
}
