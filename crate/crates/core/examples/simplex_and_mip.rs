//! The linear backend on its own: a two-phase simplex solve, the same
//! problem with integral columns, and an absolute value linearized into
//! a pair of rows.
//!
//! ```text
//! cargo run --example simplex_and_mip
//! ```

use dualsolve::lp::{self, LpProblem, LpRow};
use dualsolve::model::{Expr, Model, Relation, Sense};

fn main() {
    // maximize 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6,  x <= 3.5,  y <= 10
    let mut p = LpProblem::new(2);
    p.set_bounds(0, 0.0, 3.5).set_bounds(1, 0.0, 10.0);
    p.add_row(LpRow::dense(&[1.0, 1.0], Relation::Le, 4.0));
    p.add_row(LpRow::dense(&[1.0, 3.0], Relation::Le, 6.0));
    p.set_objective(Sense::Maximize, &[3.0, 2.0]);
    let relaxed = lp::simplex_solve(&p).unwrap();
    println!("relaxation: {:?} at {:?}", relaxed.objective(), relaxed.point());

    p.set_integer(0, true).set_integer(1, true);
    let integral = lp::mip_solve(&p).unwrap();
    println!("integral:   {:?} at {:?}", integral.objective(), integral.point());

    // minimize t subject to |x - 7| <= t, 2 <= x <= 5, through a model
    let mut m = Model::new();
    let x = m.add_real_var(2.0, 5.0).unwrap();
    let t = m.add_real_var(0.0, f64::INFINITY).unwrap();
    m.set_name(x, "x");
    m.set_name(t, "t");
    for row in lp::linearize_abs_leq(&(Expr::from(x) - 7), &Expr::from(t)).unwrap() {
        println!("row: {}", row.cmp);
        m.post(row).unwrap();
    }
    m.minimize(t).unwrap();
    let s = lp::simplex_solve(&lp::lower_to_lp(&m).unwrap()).unwrap();
    println!("min |x - 7| = {:?} at x = {:?}", s.objective(), s.value(x));
}
