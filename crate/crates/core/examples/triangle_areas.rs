//! Triangle Areas: a lattice triangle inside the `N × M` box with doubled
//! area `A`. The search pins one corner to the origin; the construction
//! shifts a box-filling triangle into place.
//!
//! ```text
//! cargo run --example triangle_areas -- 4 3 7
//! ```

use dualsolve::problems::triangle::{triangle_constructive, triangle_cp};
use dualsolve::problems::TriangleCase;

fn main() {
    let args: Vec<i64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let cases = match args[..] {
        [n, m, a] => vec![(n, m, a)],
        _ => vec![(1, 1, 1), (1, 1, 2), (2, 3, 6), (4, 3, 7), (5, 5, 10)],
    };
    for (n, m, a) in cases {
        let c = TriangleCase::new(n, m, a).expect("valid case");
        let cp = triangle_cp(&c).expect("model solves");
        let direct = triangle_constructive(&c);
        println!("N={n} M={m} A={a}");
        println!("  search:       {cp:?} (valid: {})", cp.is_valid_for(&c));
        println!("  constructive: {direct:?} (valid: {})", direct.is_valid_for(&c));
    }
}
