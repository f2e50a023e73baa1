//! The random generator is uniform over labeled triangulations.

use std::collections::HashMap;

use mopdom::families::{catalan, random_mop};
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[test]
fn random_mop_is_uniform_on_seven_vertices() {
    let n = 7;
    let cells = catalan(n - 2) as usize;
    let draws = 400 * cells;
    let mut counts: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
    for seed in 0..draws as u64 {
        *counts.entry(random_mop(n, seed).chords().to_vec()).or_default() += 1;
    }
    assert_eq!(counts.len(), cells);
    let expected = draws as f64 / cells as f64;
    let stat: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let p = 1.0 - ChiSquared::new((cells - 1) as f64).unwrap().cdf(stat);
    assert!(p > 1e-4, "chi-square {stat:.1} on {} cells, p = {p:.2e}", cells - 1);
}
