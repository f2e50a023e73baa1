//! Exhaustive maxima of gamma_k by order, and the classes that attain them.

use mopdom::exact::gamma_table;
use mopdom::{ceil_bound, floor_bound};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = gamma_table(2, 5..=12)?;
    for (&(k, n), e) in &table.entries {
        println!("k={k} n={n:>2} gamma={} floor={} ceil={} extremal={}", e.gamma, floor_bound(k, n), ceil_bound(k, n), e.extremal.len());
    }
    for c in &table.entries[&(2, 12)].extremal {
        println!("extremal at 12: {}", c.id());
    }
    println!("monotonicity violations: {}", table.monotonicity_violations().len());
    Ok(())
}
