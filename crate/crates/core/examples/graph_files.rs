//! Reading and writing the line-oriented graph file format.

use mopdom::families::random_mop;
use mopdom::io::{format_graphs, parse_graphs};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graphs: Vec<_> = (0..3).map(|s| random_mop(7, s)).collect();
    let text = format_graphs(&graphs);
    print!("{text}");
    assert_eq!(parse_graphs(&text)?, graphs);

    let broken = format!("{text}{{\"n\":5,\"chords\":[[0,2],[1,3]]}}\n");
    match parse_graphs(&broken) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
