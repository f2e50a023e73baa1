//! Exact minimum k-component dominating sets, with and without constraints.

use mopdom::families::strip;
use mopdom::{min_kcds, Constraints, MopGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // One of the two order-12 graphs that need five vertices at k = 2.
    let h1 = MopGraph::new(12, &[(1, 11), (2, 5), (2, 6), (2, 10), (2, 11), (3, 5), (6, 10), (7, 9), (7, 10)])?;
    for k in 1..=3 {
        let d = min_kcds(&h1, k, &Constraints::none())?.expect("feasible");
        println!("k={k}: gamma={} set={:?}", d.len(), d.vertices());
    }

    let g = strip(3)?;
    println!("strip(3): {}", g.to_json());
    let free = min_kcds(&g, 2, &Constraints::none())?.expect("feasible");
    let pinned = min_kcds(&g, 2, &Constraints::none().containing(0).forbidding(2))?;
    println!("gamma_2 = {}, with 0 in and 2 out: {:?}", free.len(), pinned.map(|d| d.vertices().to_vec()));
    Ok(())
}
