//! Random instance families and the exhaustive oracles they are checked
//! against.

#![allow(dead_code)]

use dualsolve::lp::{LpProblem, LpRow};
use dualsolve::model::{Assignment, Comparison, Expr, Model, Relation, Sense, VarId};
use rand::seq::SliceRandom;
use rand::Rng;

/// Upper limit on the number of points in a micro-model's search space.
const MICRO_POINTS: u64 = 40_000;

pub struct MicroModel {
    pub model: Model,
    pub vars: Vec<VarId>,
}

fn relation(rng: &mut impl Rng) -> Relation {
    *[Relation::Eq, Relation::Le, Relation::Ge].choose(rng).unwrap()
}

fn linear(rng: &mut impl Rng, vars: &[VarId], max_terms: usize) -> Expr {
    let k = rng.gen_range(1..=max_terms.min(vars.len()));
    let picked: Vec<VarId> = vars.choose_multiple(rng, k).copied().collect();
    let mut e = Expr::Const(rng.gen_range(-5..=5));
    for v in picked {
        let c = *[-3, -2, -1, 1, 2, 3].choose(rng).unwrap();
        e = e + c * v;
    }
    e
}

/// Up to six integer variables with domains inside `[-10, 10]` and up to four
/// constraints mixing linear relations, products, absolute values and
/// reified comparisons.
pub fn random_micro_model(rng: &mut impl Rng) -> MicroModel {
    let n = rng.gen_range(1..=6usize);
    let mut m = Model::new();
    let mut vars = Vec::with_capacity(n);
    let mut points = 1u64;
    for i in 0..n {
        let share = (MICRO_POINTS / points) as f64;
        let widest = (share.powf(1.0 / (n - i) as f64) as i64 - 1).clamp(0, 20);
        let w = rng.gen_range(0..=widest);
        let lo = rng.gen_range(-10..=10 - w);
        vars.push(m.add_int_var(lo, lo + w).unwrap());
        points *= w as u64 + 1;
    }
    for _ in 0..rng.gen_range(1..=4) {
        let c = match rng.gen_range(0..4) {
            0 => Comparison::new(linear(rng, &vars, 3), relation(rng), rng.gen_range(-10..=10)),
            1 => {
                let x = *vars.choose(rng).unwrap();
                let y = *vars.choose(rng).unwrap();
                let rhs = if rng.gen_bool(0.5) {
                    Expr::from(*vars.choose(rng).unwrap())
                } else {
                    Expr::Const(rng.gen_range(-20..=20))
                };
                Comparison::new(Expr::from(x) * y, relation(rng), rhs)
            }
            2 => Comparison::new(linear(rng, &vars, 2).abs(), relation(rng), rng.gen_range(0..=10)),
            _ => {
                let a = Comparison::new(linear(rng, &vars, 2), relation(rng), linear(rng, &vars, 1)).reify();
                let b = Comparison::new(linear(rng, &vars, 2), relation(rng), rng.gen_range(-5..=5)).reify();
                Comparison::new(a + b, relation(rng), rng.gen_range(0..=2))
            }
        };
        m.post(c).unwrap();
    }
    MicroModel { model: m, vars }
}

/// Every assignment of `vars` (all of the model's variables) satisfying the
/// model, in lexicographic order.
pub fn all_solutions(model: &Model, vars: &[VarId]) -> Vec<Vec<i64>> {
    let doms: Vec<_> = vars
        .iter()
        .map(|&v| model.domain(v).expect("integer variable"))
        .collect();
    let mut point: Vec<i64> = doms.iter().map(|d| d.lo()).collect();
    let mut out = Vec::new();
    'outer: loop {
        if model
            .check_solution(&Assignment::from_values(point.iter().copied()))
            .unwrap()
        {
            out.push(point.clone());
        }
        for k in (0..point.len()).rev() {
            if point[k] < doms[k].hi() {
                point[k] += 1;
                continue 'outer;
            }
            point[k] = doms[k].lo();
        }
        break;
    }
    out
}

/// Right-hand side for a row through `anchor`: mostly satisfied there (so
/// the family is mostly feasible), sometimes drawn at random.
fn rhs_near(rng: &mut impl Rng, coeffs: &[f64], anchor: &[f64], rel: Relation) -> f64 {
    if rng.gen_bool(0.1) {
        return rng.gen_range(-10..=20) as f64;
    }
    let at: f64 = coeffs.iter().zip(anchor).map(|(a, x)| a * x).sum();
    let slack = rng.gen_range(0..=6) as f64;
    match rel {
        Relation::Eq => at,
        Relation::Le => at + slack,
        Relation::Ge => at - slack,
    }
}

/// A 2–3 column LP with every column boxed and up to six rows with small
/// integer data.
pub fn random_lp(rng: &mut impl Rng) -> LpProblem {
    let n = rng.gen_range(2..=3);
    let mut p = LpProblem::new(n);
    let mut anchor = Vec::with_capacity(n);
    for j in 0..n {
        let lo = rng.gen_range(-5..=0);
        let hi = lo + rng.gen_range(1..=10);
        p.set_bounds(j, lo as f64, hi as f64);
        anchor.push(rng.gen_range(lo..=hi) as f64);
    }
    for _ in 0..rng.gen_range(1..=6) {
        let coeffs: Vec<f64> = (0..n).map(|_| rng.gen_range(-5..=5) as f64).collect();
        let rel = if rng.gen_bool(0.15) {
            Relation::Eq
        } else {
            relation(rng)
        };
        let rhs = rhs_near(rng, &coeffs, &anchor, rel);
        p.add_row(LpRow::dense(&coeffs, rel, rhs));
    }
    let obj: Vec<f64> = (0..n).map(|_| rng.gen_range(-5..=5) as f64).collect();
    let sense = if rng.gen_bool(0.5) {
        Sense::Maximize
    } else {
        Sense::Minimize
    };
    p.set_objective(sense, &obj);
    p
}

/// Up to four integral columns in `[0, 10]` and up to four rows.
pub fn random_mip(rng: &mut impl Rng) -> LpProblem {
    let n = rng.gen_range(1..=4);
    let mut p = LpProblem::new(n);
    let mut anchor = Vec::with_capacity(n);
    for j in 0..n {
        let lo = rng.gen_range(0..=5);
        let hi = rng.gen_range(lo..=10);
        p.set_bounds(j, lo as f64, hi as f64).set_integer(j, true);
        anchor.push(rng.gen_range(lo..=hi) as f64);
    }
    for _ in 0..rng.gen_range(1..=4) {
        let coeffs: Vec<f64> = (0..n).map(|_| rng.gen_range(-6..=6) as f64).collect();
        let rel = if rng.gen_bool(0.1) { Relation::Eq } else { relation(rng) };
        let rhs = rhs_near(rng, &coeffs, &anchor, rel);
        p.add_row(LpRow::dense(&coeffs, rel, rhs));
    }
    let obj: Vec<f64> = (0..n).map(|_| rng.gen_range(-5..=5) as f64).collect();
    let sense = if rng.gen_bool(0.5) {
        Sense::Maximize
    } else {
        Sense::Minimize
    };
    p.set_objective(sense, &obj);
    p
}

fn better(sense: Sense, a: f64, b: f64) -> bool {
    match sense {
        Sense::Maximize => a > b,
        Sense::Minimize => a < b,
    }
}

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting; `None` when (nearly) singular.
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &k| a[i][col].abs().total_cmp(&a[k][col].abs()))?;
        if a[piv][col].abs() < 1e-9 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= f * p;
                }
                b[r] -= f * b[col];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// Optimum of a fully boxed LP over the vertices of its feasible region, or
/// `None` if no vertex is feasible.
pub fn vertex_optimum(p: &LpProblem) -> Option<f64> {
    let n = p.n;
    // each hyperplane as (coefficients, right-hand side)
    let mut planes: Vec<(Vec<f64>, f64)> = p
        .rows
        .iter()
        .map(|r| {
            let mut a = vec![0.0; n];
            for &(j, v) in &r.coeffs {
                a[j] += v;
            }
            (a, r.rhs)
        })
        .collect();
    for j in 0..n {
        for b in [p.lower[j], p.upper[j]] {
            let mut a = vec![0.0; n];
            a[j] = 1.0;
            planes.push((a, b));
        }
    }
    let mut best: Option<f64> = None;
    let mut pick = vec![0usize; n];
    fn choose(
        k: usize,
        start: usize,
        pick: &mut Vec<usize>,
        planes: &[(Vec<f64>, f64)],
        p: &LpProblem,
        best: &mut Option<f64>,
    ) {
        if k == pick.len() {
            let a = pick.iter().map(|&i| planes[i].0.clone()).collect();
            let b = pick.iter().map(|&i| planes[i].1).collect();
            if let Some(x) = solve_square(a, b) {
                if p.max_violation(&x) <= 1e-9 {
                    let z = p.objective_value(&x);
                    if best.is_none_or(|b| better(p.sense, z, b)) {
                        *best = Some(z);
                    }
                }
            }
            return;
        }
        for i in start..planes.len() {
            pick[k] = i;
            choose(k + 1, i + 1, pick, planes, p, best);
        }
    }
    choose(0, 0, &mut pick, &planes, p, &mut best);
    best
}

/// Optimum of an all-integral, all-finite problem by visiting every point.
pub fn enumerate_optimum(p: &LpProblem) -> Option<f64> {
    let lo: Vec<i64> = p.lower.iter().map(|&b| b as i64).collect();
    let hi: Vec<i64> = p.upper.iter().map(|&b| b as i64).collect();
    let mut x = lo.clone();
    let mut best: Option<f64> = None;
    'outer: loop {
        let xf: Vec<f64> = x.iter().map(|&v| v as f64).collect();
        if p.max_violation(&xf) == 0.0 {
            let z = p.objective_value(&xf);
            if best.is_none_or(|b| better(p.sense, z, b)) {
                best = Some(z);
            }
        }
        for k in (0..x.len()).rev() {
            if x[k] < hi[k] {
                x[k] += 1;
                continue 'outer;
            }
            x[k] = lo[k];
        }
        break;
    }
    best
}
