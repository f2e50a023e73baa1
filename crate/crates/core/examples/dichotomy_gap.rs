//! A non-exceptional graph whose optimum exceeds the floor bound, and how the
//! constructor reports it.

use mopdom::construct::theorem1_construct;
use mopdom::hk::detect_hk;
use mopdom::{floor_bound, MopGraph, Solver};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = MopGraph::new(
        30,
        &[
            (0, 6), (0, 12), (0, 13), (0, 18), (0, 24), (0, 25), (1, 3), (1, 5), (1, 6), (3, 5),
            (6, 12), (7, 9), (7, 11), (7, 12), (9, 11), (13, 15), (13, 17), (13, 18), (15, 17),
            (18, 24), (19, 21), (19, 23), (19, 24), (21, 23), (25, 27), (25, 29), (27, 29),
        ],
    )?;
    let k = 3;
    println!("exceptional: {}", detect_hk(&g, k)?.is_some());
    println!("floor bound: {}", floor_bound(k, g.order()));
    println!("exact: {}", Solver::with_guard(30)?.gamma_k(&g, k)?);
    match theorem1_construct(&g, k) {
        Ok(d) => println!("constructed {}", d.len()),
        Err(e) => println!("constructor: {e}"),
    }
    Ok(())
}
