use std::collections::VecDeque;

use crate::model::{Domain, Relation};

/// Raised by a propagator when some domain becomes empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Fail;

type PropResult = Result<(), Fail>;

/// Working copy of the domains of every (model and auxiliary) variable, plus
/// the FIFO of propagators waiting to run.
#[derive(Debug, Clone)]
pub struct PropState {
    lo: Vec<i64>,
    hi: Vec<i64>,
    queue: VecDeque<u32>,
    queued: Vec<bool>,
}

/// Result of running propagation to a fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropOutcome {
    /// Narrowed domains of the model variables.
    Fixpoint(Vec<Domain>),
    Infeasible,
}

impl PropOutcome {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, PropOutcome::Infeasible)
    }
}

impl PropState {
    pub(crate) fn new(domains: &[Domain], num_props: usize) -> Self {
        PropState {
            lo: domains.iter().map(Domain::lo).collect(),
            hi: domains.iter().map(Domain::hi).collect(),
            queue: (0..num_props as u32).collect(),
            queued: vec![true; num_props],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.lo.len()
    }

    pub fn domain(&self, v: usize) -> Domain {
        Domain::raw(self.lo[v], self.hi[v])
    }

    pub fn lo(&self, v: usize) -> i64 {
        self.lo[v]
    }

    pub fn hi(&self, v: usize) -> i64 {
        self.hi[v]
    }

    pub fn is_fixed(&self, v: usize) -> bool {
        self.lo[v] == self.hi[v]
    }

    pub(crate) fn enqueue(&mut self, p: u32) {
        if !self.queued[p as usize] {
            self.queued[p as usize] = true;
            self.queue.push_back(p);
        }
    }

    pub(crate) fn pop(&mut self) -> Option<u32> {
        let p = self.queue.pop_front()?;
        self.queued[p as usize] = false;
        Some(p)
    }

    pub(crate) fn clear_queue(&mut self) {
        while self.pop().is_some() {}
    }
}

/// Records narrowings made by one propagator run.
pub(crate) struct Narrow<'a> {
    pub st: &'a mut PropState,
    pub changed: &'a mut Vec<usize>,
}

impl Narrow<'_> {
    #[inline]
    fn lo(&self, v: usize) -> i128 {
        self.st.lo[v] as i128
    }

    #[inline]
    fn hi(&self, v: usize) -> i128 {
        self.st.hi[v] as i128
    }

    #[inline]
    fn fixed(&self, v: usize) -> bool {
        self.st.lo[v] == self.st.hi[v]
    }

    pub fn set_lo(&mut self, v: usize, val: i128) -> PropResult {
        if val > self.hi(v) {
            return Err(Fail);
        }
        if val > self.lo(v) {
            self.st.lo[v] = val as i64;
            self.changed.push(v);
        }
        Ok(())
    }

    pub fn set_hi(&mut self, v: usize, val: i128) -> PropResult {
        if val < self.lo(v) {
            return Err(Fail);
        }
        if val < self.hi(v) {
            self.st.hi[v] = val as i64;
            self.changed.push(v);
        }
        Ok(())
    }

    fn fix(&mut self, v: usize, val: i128) -> PropResult {
        self.set_lo(v, val)?;
        self.set_hi(v, val)
    }
}

pub(crate) fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

pub(crate) fn ceil_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && ((a < 0) == (b < 0)) {
        q + 1
    } else {
        q
    }
}

/// `Σ coef·var + constant  rel  0`.
#[derive(Debug, Clone)]
pub(crate) struct LinearRel {
    pub terms: Vec<(i64, usize)>,
    pub constant: i64,
    pub rel: Relation,
}

impl LinearRel {
    fn bounds(&self, n: &Narrow<'_>) -> (i128, i128) {
        let mut smin = self.constant as i128;
        let mut smax = smin;
        for &(a, v) in &self.terms {
            let a = a as i128;
            let (l, h) = (a * n.lo(v), a * n.hi(v));
            smin += l.min(h);
            smax += l.max(h);
        }
        (smin, smax)
    }

    fn propagate(&self, n: &mut Narrow<'_>) -> PropResult {
        propagate_linear(&self.terms, self.constant as i128, self.rel, n)
    }
}

fn propagate_linear(terms: &[(i64, usize)], constant: i128, rel: Relation, n: &mut Narrow<'_>) -> PropResult {
    let mut smin = constant;
    let mut smax = constant;
    for &(a, v) in terms {
        let a = a as i128;
        let (l, h) = (a * n.lo(v), a * n.hi(v));
        smin += l.min(h);
        smax += l.max(h);
    }
    if rel != Relation::Ge {
        if smin > 0 {
            return Err(Fail);
        }
        for &(a, v) in terms {
            let a = a as i128;
            let own = (a * n.lo(v)).min(a * n.hi(v));
            let room = -(smin - own);
            if a > 0 {
                n.set_hi(v, floor_div(room, a))?;
            } else {
                n.set_lo(v, ceil_div(room, a))?;
            }
        }
    }
    if rel != Relation::Le {
        if rel == Relation::Eq {
            // bounds may have moved above; recompute the upper sum
            smax = constant;
            for &(a, v) in terms {
                let a = a as i128;
                smax += (a * n.lo(v)).max(a * n.hi(v));
            }
        }
        if smax < 0 {
            return Err(Fail);
        }
        for &(a, v) in terms {
            let a = a as i128;
            let own = (a * n.lo(v)).max(a * n.hi(v));
            let room = -(smax - own);
            if a > 0 {
                n.set_lo(v, ceil_div(room, a))?;
            } else {
                n.set_hi(v, floor_div(room, a))?;
            }
        }
    }
    Ok(())
}

/// Primitive propagators produced by flattening a model.
#[derive(Debug, Clone)]
pub(crate) enum Prop {
    Linear(LinearRel),
    /// `z = x * y`
    Times {
        x: usize,
        y: usize,
        z: usize,
    },
    /// `z = |x|`
    Abs {
        x: usize,
        z: usize,
    },
    /// `b ⇔ lin`
    Reif {
        b: usize,
        lin: LinearRel,
    },
    /// Always fails; stands for a constraint that folded to false.
    False,
}

impl Prop {
    pub fn vars(&self) -> Vec<usize> {
        match self {
            Prop::Linear(l) => l.terms.iter().map(|&(_, v)| v).collect(),
            Prop::Times { x, y, z } => vec![*x, *y, *z],
            Prop::Abs { x, z } => vec![*x, *z],
            Prop::Reif { b, lin } => {
                let mut v: Vec<_> = lin.terms.iter().map(|&(_, v)| v).collect();
                v.push(*b);
                v
            }
            Prop::False => Vec::new(),
        }
    }

    pub fn propagate(&self, n: &mut Narrow<'_>) -> PropResult {
        match self {
            Prop::Linear(l) => l.propagate(n),
            Prop::Times { x, y, z } => propagate_times(*x, *y, *z, n),
            Prop::Abs { x, z } => propagate_abs(*x, *z, n),
            Prop::Reif { b, lin } => propagate_reif(*b, lin, n),
            Prop::False => Err(Fail),
        }
    }
}

fn corners(n: &Narrow<'_>, x: usize, y: usize) -> (i128, i128) {
    let (xl, xh, yl, yh) = (n.lo(x), n.hi(x), n.lo(y), n.hi(y));
    let c = [xl * yl, xl * yh, xh * yl, xh * yh];
    (*c.iter().min().unwrap(), *c.iter().max().unwrap())
}

/// Removes 0 from the interval ends of `v`.
fn exclude_zero(n: &mut Narrow<'_>, v: usize) -> PropResult {
    if n.lo(v) == 0 {
        n.set_lo(v, 1)?;
    }
    if n.hi(v) == 0 {
        n.set_hi(v, -1)?;
    }
    Ok(())
}

/// Narrows `x` to the hull of `z / y` when `y` does not contain 0.
fn divide_into(n: &mut Narrow<'_>, x: usize, y: usize, z: usize) -> PropResult {
    let (yl, yh) = (n.lo(y), n.hi(y));
    if yl <= 0 && yh >= 0 {
        return Ok(());
    }
    let (zl, zh) = (n.lo(z), n.hi(z));
    let mut lo = i128::MAX;
    let mut hi = i128::MIN;
    for zc in [zl, zh] {
        for yc in [yl, yh] {
            lo = lo.min(ceil_div(zc, yc));
            hi = hi.max(floor_div(zc, yc));
        }
    }
    n.set_lo(x, lo)?;
    n.set_hi(x, hi)
}

fn propagate_times(x: usize, y: usize, z: usize, n: &mut Narrow<'_>) -> PropResult {
    let (pl, ph) = corners(n, x, y);
    n.set_lo(z, pl)?;
    n.set_hi(z, ph)?;
    if n.lo(z) > 0 || n.hi(z) < 0 {
        exclude_zero(n, x)?;
        exclude_zero(n, y)?;
    }
    divide_into(n, x, y, z)?;
    divide_into(n, y, x, z)?;
    // products may tighten again after the factors moved
    let (pl, ph) = corners(n, x, y);
    n.set_lo(z, pl)?;
    n.set_hi(z, ph)
}

fn propagate_abs(x: usize, z: usize, n: &mut Narrow<'_>) -> PropResult {
    let (xl, xh) = (n.lo(x), n.hi(x));
    let (il, ih) = if xl >= 0 {
        (xl, xh)
    } else if xh <= 0 {
        (-xh, -xl)
    } else {
        (0, (-xl).max(xh))
    };
    n.set_lo(z, il)?;
    n.set_hi(z, ih)?;

    let (zl, zh) = (n.lo(z), n.hi(z));
    n.set_lo(x, -zh)?;
    n.set_hi(x, zh)?;
    // preimage is [-zh, -zl] ∪ [zl, zh]; keep the hull of what survives
    if n.lo(x) > -zl {
        n.set_lo(x, zl)?;
    }
    if n.hi(x) < zl {
        n.set_hi(x, -zl)?;
    }
    Ok(())
}

fn propagate_reif(b: usize, lin: &LinearRel, n: &mut Narrow<'_>) -> PropResult {
    let (smin, smax) = lin.bounds(n);
    let (entailed, disentailed) = match lin.rel {
        Relation::Eq => (smin == 0 && smax == 0, smin > 0 || smax < 0),
        Relation::Le => (smax <= 0, smin > 0),
        Relation::Ge => (smin >= 0, smax < 0),
    };
    if entailed {
        return n.fix(b, 1);
    }
    if disentailed {
        return n.fix(b, 0);
    }
    if !n.fixed(b) {
        return Ok(());
    }
    let c = lin.constant as i128;
    if n.lo(b) == 1 {
        return lin.propagate(n);
    }
    match lin.rel {
        // not (L <= 0)  <=>  L - 1 >= 0
        Relation::Le => propagate_linear(&lin.terms, c - 1, Relation::Ge, n),
        // not (L >= 0)  <=>  L + 1 <= 0
        Relation::Ge => propagate_linear(&lin.terms, c + 1, Relation::Le, n),
        Relation::Eq => {
            let mut free = None;
            let mut rest = c;
            for &(a, v) in &lin.terms {
                if n.fixed(v) {
                    rest += a as i128 * n.lo(v);
                } else if free.is_some() {
                    return Ok(());
                } else {
                    free = Some((a as i128, v));
                }
            }
            match free {
                None if rest == 0 => Err(Fail),
                None => Ok(()),
                Some((a, v)) => {
                    if (-rest) % a != 0 {
                        return Ok(());
                    }
                    let bad = -rest / a;
                    if n.lo(v) == bad {
                        n.set_lo(v, bad + 1)?;
                    }
                    if n.hi(v) == bad {
                        n.set_hi(v, bad - 1)?;
                    }
                    Ok(())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(doms: &[(i64, i64)]) -> PropState {
        let d: Vec<_> = doms.iter().map(|&(l, h)| Domain::new(l, h).unwrap()).collect();
        PropState::new(&d, 0)
    }

    fn run(p: &Prop, st: &mut PropState) -> PropResult {
        let mut changed = Vec::new();
        let mut n = Narrow {
            st,
            changed: &mut changed,
        };
        p.propagate(&mut n)
    }

    #[test]
    fn division_rounding() {
        assert_eq!(floor_div(7, 2), 3);
        assert_eq!(floor_div(-7, 2), -4);
        assert_eq!(floor_div(7, -2), -4);
        assert_eq!(floor_div(-7, -2), 3);
        assert_eq!(ceil_div(7, 2), 4);
        assert_eq!(ceil_div(-7, 2), -3);
        assert_eq!(ceil_div(7, -2), -3);
        assert_eq!(ceil_div(-6, 2), -3);
    }

    #[test]
    fn linear_lower_bound() {
        // x - 4 >= 0
        let p = Prop::Linear(LinearRel {
            terms: vec![(1, 0)],
            constant: -4,
            rel: Relation::Ge,
        });
        let mut st = state(&[(0, 10)]);
        run(&p, &mut st).unwrap();
        assert_eq!((st.lo(0), st.hi(0)), (4, 10));
    }

    #[test]
    fn linear_equality_both_directions() {
        // 2x + 3y - 12 = 0, x in 0..10, y in 0..10
        let p = Prop::Linear(LinearRel {
            terms: vec![(2, 0), (3, 1)],
            constant: -12,
            rel: Relation::Eq,
        });
        let mut st = state(&[(0, 10), (0, 10)]);
        run(&p, &mut st).unwrap();
        assert_eq!((st.lo(0), st.hi(0)), (0, 6));
        assert_eq!((st.lo(1), st.hi(1)), (0, 4));
    }

    #[test]
    fn abs_image_and_preimage() {
        let p = Prop::Abs { x: 0, z: 1 };
        let mut st = state(&[(-5, 3), (-100, 100)]);
        run(&p, &mut st).unwrap();
        assert_eq!((st.lo(1), st.hi(1)), (0, 5));

        let mut st = state(&[(-2, 9), (4, 6)]);
        run(&p, &mut st).unwrap();
        assert_eq!((st.lo(0), st.hi(0)), (4, 6));

        let mut st = state(&[(-9, 2), (4, 6)]);
        run(&p, &mut st).unwrap();
        assert_eq!((st.lo(0), st.hi(0)), (-6, -4));
    }

    #[test]
    fn times_corners_and_division() {
        let p = Prop::Times { x: 0, y: 1, z: 2 };
        let mut st = state(&[(-2, 3), (-4, 5), (-100, 100)]);
        run(&p, &mut st).unwrap();
        assert_eq!((st.lo(2), st.hi(2)), (-12, 15));

        // z = 12, y in 3..4 -> x in 3..4
        let mut st = state(&[(0, 100), (3, 4), (12, 12)]);
        run(&p, &mut st).unwrap();
        assert_eq!((st.lo(0), st.hi(0)), (3, 4));

        // z = 7, y in 2..3: x narrows to 3, then y to 7/3 which is empty
        let mut st = state(&[(0, 100), (2, 3), (7, 7)]);
        assert!(run(&p, &mut st).is_err());
    }

    #[test]
    fn reif_entailment_and_imposition() {
        // b <=> x - 2 = 0
        let lin = LinearRel {
            terms: vec![(1, 0)],
            constant: -2,
            rel: Relation::Eq,
        };
        let p = Prop::Reif { b: 1, lin };
        let mut st = state(&[(2, 2), (0, 1)]);
        run(&p, &mut st).unwrap();
        assert_eq!(st.lo(1), 1);

        let mut st = state(&[(3, 7), (0, 1)]);
        run(&p, &mut st).unwrap();
        assert_eq!(st.hi(1), 0);

        // b = 0 shaves the forbidden endpoint
        let mut st = state(&[(2, 7), (0, 0)]);
        run(&p, &mut st).unwrap();
        assert_eq!(st.lo(0), 3);

        // b = 1 imposes x = 2
        let mut st = state(&[(0, 7), (1, 1)]);
        run(&p, &mut st).unwrap();
        assert_eq!((st.lo(0), st.hi(0)), (2, 2));
    }
}
