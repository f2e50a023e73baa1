//! The constructive upper bound on random graphs, with its branch trace.

use mopdom::construct::{dichotomy_bound, theorem1_construct_traced};
use mopdom::families::random_mop;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, k, seed) in [(40, 2, 1), (50, 3, 2), (60, 1, 3)] {
        let g = random_mop(n, seed);
        let (d, trace) = theorem1_construct_traced(&g, k)?;
        let (bound, exceptional) = dichotomy_bound(&g, k)?;
        println!("n={n} k={k}: size {} <= {bound} (exceptional: {exceptional}), valid: {}", d.len(), d.is_valid_for(&g));
        for step in trace.iter().take(6) {
            println!("  {step}");
        }
    }
    Ok(())
}
