//! The named graph families and the domination numbers they force.

use mopdom::families::{fig5_graph, fig6_graph, fig6_graph_even, strip, strip_minus};
use mopdom::{floor_bound, gamma_k_exact, MopGraph};

fn show(name: &str, g: &MopGraph, k: usize) -> Result<(), Box<dyn std::error::Error>> {
    let n = g.order();
    println!("{name:<18} n={n:>2} k={k} gamma={} floor={}", gamma_k_exact(g, k)?, floor_bound(k, n));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for m in 2..=5 {
        show(&format!("strip({m})"), &strip(m)?, m.div_ceil(2))?;
        show(&format!("strip_minus({m})"), &strip_minus(m)?, m.div_ceil(2))?;
    }
    show("fig5(2,3)", &fig5_graph(2, 3)?, 2)?;
    show("fig6(2,2,2)", &fig6_graph(2, 2, 2)?, 2)?;
    show("fig6_even(2,2,2)", &fig6_graph_even(2, 2, 2)?, 2)?;
    show("fig5(3,2)", &fig5_graph(3, 2)?, 3)?;
    Ok(())
}
