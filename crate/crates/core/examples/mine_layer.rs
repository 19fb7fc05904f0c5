//! Mine Layer: the number of mines in the middle row, from the integer
//! program and from block sums of clues, on grids with a known layout.
//!
//! ```text
//! cargo run --example mine_layer -- 15 20
//! ```

use dualsolve::gcj;
use dualsolve::problems::minelayer::{middle_row_count, minelayer_block_count, minelayer_mip};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let (rows, cols) = match args[..] {
        [r, c] if r % 2 == 1 => (r, c),
        _ => (7, 9),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (c, mines) = gcj::random_minelayer(&mut rng, rows, cols);
    for row in c.clues.iter().take(9) {
        println!("  {}", row.iter().map(i64::to_string).collect::<Vec<_>>().join(" "));
    }
    if rows > 9 {
        println!("  ...");
    }
    let t = std::time::Instant::now();
    let mip = minelayer_mip(&c);
    println!(
        "{rows}x{cols}: mip {mip:?} in {:.2}s, block sums {}, hidden layout {}",
        t.elapsed().as_secs_f64(),
        minelayer_block_count(&c),
        middle_row_count(&mines)
    );
}
