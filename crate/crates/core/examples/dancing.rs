//! Dancing With the Googlers by constraint branch-and-bound, by the integer
//! program, and by the counting formula.
//!
//! ```text
//! cargo run --example dancing
//! ```

use dualsolve::gcj;
use dualsolve::problems::dancing::{dancing_bruteforce, dancing_cp, dancing_formula, dancing_mip};
use dualsolve::problems::DancingCase;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut cases = vec![DancingCase::new(1, 5, vec![15, 13, 11]).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    cases.extend((0..4).map(|_| gcj::random_dancing(&mut rng, 6)));
    for c in &cases {
        println!("S={} p={} sums={:?}", c.surprising, c.p, c.sums);
        println!(
            "  cp {:?}  mip {:?}  brute force {:?}  formula {}",
            dancing_cp(c),
            dancing_mip(c),
            dancing_bruteforce(c),
            dancing_formula(c)
        );
    }

    // the integer program copes with a full-size case
    let big = gcj::random_dancing(&mut rng, 1000);
    let t = std::time::Instant::now();
    let mip = dancing_mip(&big);
    println!(
        "N=1000: mip {mip:?} in {:.2}s, formula {}",
        t.elapsed().as_secs_f64(),
        dancing_formula(&big)
    );
}
