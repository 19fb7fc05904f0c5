//! Bounds propagation, labeling and the two branch-and-bound strategies on a
//! small scheduling-flavoured model.
//!
//! ```text
//! cargo run --example fd_propagation
//! ```

use dualsolve::fd::{self, BnbOptions, BnbStrategy, PropOutcome};
use dualsolve::model::{Expr, Model};

fn main() {
    // three tasks with start times in 0..=10, each lasting 3, in sequence
    let mut m = Model::new();
    let starts: Vec<_> = (0..3).map(|_| m.add_int_var(0, 10).unwrap()).collect();
    for w in starts.windows(2) {
        m.post(Expr::from(w[0]).leq(Expr::from(w[1]) - 3)).unwrap();
    }
    // the last one may not start before 7, nor may the gap |s0 - 2| exceed 1
    m.post(Expr::from(starts[2]).geq(7)).unwrap();
    m.post((Expr::from(starts[0]) - 2).abs().leq(1)).unwrap();

    match fd::propagate(&m).unwrap() {
        PropOutcome::Fixpoint(domains) => {
            for (v, d) in starts.iter().zip(&domains) {
                println!("after propagation {} in {d}", m.name(*v));
            }
        }
        PropOutcome::Infeasible => println!("infeasible at the root"),
    }

    let first = fd::label(&m, &starts).unwrap();
    let a = first.solution().expect("the model has solutions");
    println!("first solution: {:?}", starts.iter().map(|&v| a[v]).collect::<Vec<_>>());

    // minimize the total slack s2 - s0 - 6
    let slack = m.add_int_var(0, 20).unwrap();
    m.post(Expr::from(slack).equals(Expr::from(starts[2]) - starts[0] - 6))
        .unwrap();
    for strategy in [BnbStrategy::Continue, BnbStrategy::Dichotomic] {
        let (outcome, stats) = fd::FdSolver::new(&m)
            .unwrap()
            .bb_minimize_with_stats(&BnbOptions::new(slack).strategy(strategy))
            .unwrap();
        println!(
            "{strategy:?}: minimum slack {:?} after {} nodes and {} restarts",
            outcome.cost(),
            stats.nodes,
            stats.restarts
        );
    }
}
