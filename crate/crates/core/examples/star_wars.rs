//! Star Wars: the smallest power reaching every ship, as a linear program
//! and by bisection over box intersections.
//!
//! ```text
//! cargo run --example star_wars
//! ```

use dualsolve::gcj;
use dualsolve::lp;
use dualsolve::problems::starwars::{starwars_binary_search, starwars_lp, starwars_lp_model};
use dualsolve::problems::{Ship, StarWarsCase, STARWARS_EPS};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let c = StarWarsCase::new(vec![Ship::new(0, 0, 0, 1), Ship::new(6, 0, 0, 2)]).unwrap();
    let m = starwars_lp_model(&c);
    let sol = lp::simplex_solve(&lp::lower_to_lp(&m.model).unwrap()).unwrap();
    println!(
        "two ships: power {:?} at ({:?}, {:?}, {:?}); bisection {:.6}",
        sol.objective(),
        sol.value(m.x),
        sol.value(m.y),
        sol.value(m.z),
        starwars_binary_search(&c, STARWARS_EPS)
    );

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for ships in [3, 10, 100] {
        let c = gcj::random_starwars(&mut rng, ships, 1000, 100);
        println!(
            "{ships} ships: lp {:.6}  bisection {:.6}",
            starwars_lp(&c).unwrap(),
            starwars_binary_search(&c, STARWARS_EPS)
        );
    }
}
