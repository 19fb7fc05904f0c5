//! Dancing With the Googlers: each total is the sum of three judges' scores
//! in `0..=10` that differ by at most 2 (exactly 2 makes the triplet
//! surprising). With exactly `S` surprising triplets, maximize the number
//! of triplets whose best score is at least `p`.

use super::ProblemError;
use crate::fd::{self, BnbOptions, BnbOutcome};
use crate::lp::{self, LpSolution};
use crate::model::{Expr, Model, VarId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DancingCase {
    pub surprising: usize,
    pub p: i64,
    pub sums: Vec<i64>,
}

impl DancingCase {
    pub fn new(surprising: usize, p: i64, sums: Vec<i64>) -> Result<Self, ProblemError> {
        let bad = |m: String| Err(ProblemError::InvalidCase(m));
        if !(0..=10).contains(&p) {
            return bad(format!("p = {p} outside 0..=10"));
        }
        if surprising > sums.len() {
            return bad(format!("S = {surprising} exceeds {} totals", sums.len()));
        }
        if let Some(t) = sums.iter().find(|t| !(0..=30).contains(*t)) {
            return bad(format!("total {t} outside 0..=30"));
        }
        Ok(DancingCase { surprising, p, sums })
    }
}

/// Whether some triplet with this total is surprising.
fn surprising_possible(t: i64) -> bool {
    (2..=28).contains(&t)
}

/// CP model: per total a sorted triplet `[min, med, max]`, a reified count
/// of surprising triplets and of high ones, and `cost = -high`.
#[derive(Debug, Clone)]
pub struct DancingCpModel {
    pub model: Model,
    pub triplets: Vec<[VarId; 3]>,
    pub high: VarId,
    pub cost: VarId,
}

fn triplet(model: &mut Model, t: i64) -> [VarId; 3] {
    let v = [(); 3].map(|_| model.add_int_var(0, 10).expect("valid domain"));
    let [min, med, max] = v;
    let post = |m: &mut Model, c| m.post(c).expect("declared variables");
    post(model, Expr::from(min).leq(med));
    post(model, Expr::from(med).leq(max));
    post(model, Expr::sum([min, med, max]).equals(t));
    v
}

pub fn dancing_cp_model(c: &DancingCase) -> DancingCpModel {
    let mut model = Model::new();
    let n = c.sums.len() as i64;
    let mut triplets = Vec::with_capacity(c.sums.len());
    let mut surprising = Vec::new();
    let mut high = Vec::new();
    for &t in &c.sums {
        let v @ [min, _, max] = triplet(&mut model, t);
        model.post((Expr::from(max) - min).leq(2)).expect("declared variables");
        surprising.push((Expr::from(max) - min).equals(2).reify());
        high.push(Expr::from(max).geq(c.p).reify());
        triplets.push(v);
    }
    let high_var = model.add_int_var(0, n).expect("valid domain");
    let cost = model.add_int_var(-n, 0).expect("valid domain");
    model.set_name(high_var, "GtP");
    model.set_name(cost, "Cost");
    let post = |m: &mut Model, cmp| m.post(cmp).expect("declared variables");
    post(&mut model, Expr::sum(surprising).equals(c.surprising as i64));
    post(&mut model, Expr::from(high_var).equals(Expr::sum(high)));
    post(&mut model, Expr::from(cost).equals(-Expr::from(high_var)));
    DancingCpModel {
        model,
        triplets,
        high: high_var,
        cost,
    }
}

/// Dichotomic branch-and-bound over the flattened triplets.
pub fn dancing_cp(c: &DancingCase) -> Result<i64, ProblemError> {
    let m = dancing_cp_model(c);
    let mut opts = BnbOptions::new(m.cost);
    opts.order = Some(m.triplets.iter().flatten().copied().collect());
    match fd::bb_minimize(&m.model, &opts)? {
        BnbOutcome::Optimal { cost, .. } => Ok(-cost),
        BnbOutcome::Infeasible => Err(infeasible(c)),
    }
}

/// MIP model with 0/1 indicators: `max - min <= 1 + surprise`,
/// `max >= g * p`, `Σ surprise = S`, maximize `Σ g`.
#[derive(Debug, Clone)]
pub struct DancingMipModel {
    pub model: Model,
    pub triplets: Vec<[VarId; 3]>,
    pub surprise: Vec<VarId>,
    pub g: Vec<VarId>,
    pub high: VarId,
}

pub fn dancing_mip_model(c: &DancingCase) -> DancingMipModel {
    let mut model = Model::new();
    let mut triplets = Vec::with_capacity(c.sums.len());
    let (mut surprise, mut g) = (Vec::new(), Vec::new());
    for &t in &c.sums {
        let v @ [min, _, max] = triplet(&mut model, t);
        let s = model.add_bool_var();
        let gi = model.add_bool_var();
        model
            .post((Expr::from(max) - min).leq(Expr::from(s) + 1))
            .expect("declared variables");
        model
            .post(Expr::from(max).geq(Expr::from(gi) * c.p))
            .expect("declared variables");
        triplets.push(v);
        surprise.push(s);
        g.push(gi);
    }
    let high = model.add_int_var(0, c.sums.len() as i64).expect("valid domain");
    model.set_name(high, "GtP");
    model
        .post(Expr::sum(surprise.iter().copied()).equals(c.surprising as i64))
        .expect("declared variables");
    model
        .post(Expr::from(high).equals(Expr::sum(g.iter().copied())))
        .expect("declared variables");
    model.maximize(high).expect("declared variables");
    DancingMipModel {
        model,
        triplets,
        surprise,
        g,
        high,
    }
}

pub fn dancing_mip(c: &DancingCase) -> Result<i64, ProblemError> {
    let m = dancing_mip_model(c);
    let problem = lp::lower_to_lp(&m.model)?;
    match lp::mip_solve(&problem)? {
        LpSolution::Optimal { x, .. } => Ok(x[m.high.index()].round() as i64),
        _ => Err(infeasible(c)),
    }
}

fn infeasible(c: &DancingCase) -> ProblemError {
    ProblemError::Infeasible(format!("no way to have exactly {} surprising triplets", c.surprising))
}

/// Enumerates every score triplet for each total, then picks exactly `S`
/// surprising ones by dynamic programming.
pub fn dancing_bruteforce(c: &DancingCase) -> Result<i64, ProblemError> {
    const NONE: i64 = i64::MIN;
    // dp[k]: most high triplets with exactly k surprising so far
    let mut dp = vec![NONE; c.sums.len() + 1];
    dp[0] = 0;
    for &t in &c.sums {
        // best[surprising] = best high flag, or None if no such triplet
        let mut best: [Option<i64>; 2] = [None, None];
        for a in 0..=10i64 {
            for b in 0..=10i64 {
                let d = t - a - b;
                if !(0..=10).contains(&d) {
                    continue;
                }
                let (lo, hi) = (a.min(b).min(d), a.max(b).max(d));
                if hi - lo > 2 {
                    continue;
                }
                let slot = &mut best[(hi - lo == 2) as usize];
                *slot = Some(slot.unwrap_or(0).max((hi >= c.p) as i64));
            }
        }
        let mut next = vec![NONE; dp.len()];
        for k in 0..dp.len() {
            if dp[k] == NONE {
                continue;
            }
            for (s, h) in best.iter().enumerate() {
                if let Some(h) = h {
                    if k + s < next.len() {
                        next[k + s] = next[k + s].max(dp[k] + h);
                    }
                }
            }
        }
        dp = next;
    }
    match dp[c.surprising] {
        NONE => Err(infeasible(c)),
        v => Ok(v),
    }
}

/// Closed form: totals of at least `3p - 2` are high without a surprise;
/// totals in `[3p - 4, 3p - 3]` become high only if surprising.
pub fn dancing_formula(c: &DancingCase) -> i64 {
    let plain = 3 * c.p - 2;
    let with_surprise = 3 * c.p - 4;
    let high = c.sums.iter().filter(|&&t| t >= plain).count();
    let upgradable = c
        .sums
        .iter()
        .filter(|&&t| t < plain && t >= with_surprise && surprising_possible(t))
        .count();
    (high + upgradable.min(c.surprising)) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(s: usize, p: i64, sums: &[i64]) -> DancingCase {
        DancingCase::new(s, p, sums.to_vec()).unwrap()
    }

    #[test]
    fn sample_case_all_methods() {
        let c = case(1, 5, &[15, 13, 11]);
        assert_eq!(dancing_bruteforce(&c), Ok(3));
        assert_eq!(dancing_formula(&c), 3);
        assert_eq!(dancing_cp(&c), Ok(3));
        assert_eq!(dancing_mip(&c), Ok(3));
    }

    #[test]
    fn trivial_thresholds() {
        for (c, want) in [
            (case(0, 0, &[0]), 1),
            (case(0, 1, &[0]), 0),
            (case(0, 10, &[30]), 1),
            (case(1, 10, &[28]), 1),
            (case(0, 0, &[3, 0, 30]), 3),
        ] {
            assert_eq!(dancing_bruteforce(&c), Ok(want), "{c:?}");
            assert_eq!(dancing_formula(&c), want, "{c:?}");
            assert_eq!(dancing_cp(&c), Ok(want), "{c:?}");
            assert_eq!(dancing_mip(&c), Ok(want), "{c:?}");
        }
    }

    #[test]
    fn all_surprising_is_feasible() {
        let sums = [2, 5, 17, 28, 10];
        let c = case(5, 6, &sums);
        let want = dancing_bruteforce(&c).unwrap();
        assert_eq!(dancing_mip(&c), Ok(want));
        assert_eq!(dancing_cp(&c), Ok(want));
    }

    #[test]
    fn impossible_surprise_count() {
        let c = case(1, 3, &[0]);
        assert!(matches!(dancing_bruteforce(&c), Err(ProblemError::Infeasible(_))));
        assert!(matches!(dancing_cp(&c), Err(ProblemError::Infeasible(_))));
    }

    #[test]
    fn lowering_keeps_p_as_data() {
        let c = case(1, 5, &[15]);
        let m = dancing_mip_model(&c);
        let lp = crate::lp::lower_to_lp(&m.model).unwrap();
        // order (2), sum, surprise bound, high bound, Σ surprise, GtP
        assert_eq!(lp.rows.len(), 7);
        let g = m.g[0].index();
        assert!(lp.rows.iter().any(|r| r.coeffs.contains(&(g, -5.0))));
    }

    #[test]
    fn validation() {
        assert!(DancingCase::new(2, 5, vec![1]).is_err());
        assert!(DancingCase::new(0, 11, vec![1]).is_err());
        assert!(DancingCase::new(0, 1, vec![31]).is_err());
    }
}
