//! Fixed-size sets on small orders: the building blocks of the construction.

use mopdom::construct::{lemma2_set, lemma4_i, lemma4_ii, lemma4_iii, small_case};
use mopdom::families::{fan, random_mop};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = random_mop(11, 4);
    let d = lemma2_set(&g)?;
    println!("odd order 11: size {} for k={}, valid {}", d.len(), d.k(), d.is_valid_for(&g));

    let k = 3;
    let g = random_mop(2 * k + 1, 9);
    for u in 0..g.order() {
        assert!(lemma4_i(&g, k, u)?.contains(u));
    }
    println!("order {}: a size-{k} set through every vertex", g.order());

    let g = fan(2 * k + 2)?;
    let d = lemma4_ii(&g, k, 3, 4)?;
    println!("fan(8) meeting edge 3-4: {:?}", d.vertices());

    let g = random_mop(2 * k + 1, 2);
    let n = g.order();
    if let Some(x) = (0..n).find(|&x| g.degree(x) >= 3 && g.degree((x + 1) % n) >= 3) {
        let y = (x + 1) % n;
        println!("order 7 through edge {x}-{y}: {:?}", lemma4_iii(&g, k, x, y)?.vertices());
    }

    let g = random_mop(4 * k + 3, 5);
    println!("order 15 small case: size {}", small_case(&g, k)?.len());
    Ok(())
}
