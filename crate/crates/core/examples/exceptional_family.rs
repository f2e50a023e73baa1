//! Building, recognizing and dominating members of the exceptional family.

use mopdom::hk::{build_hk, detect_hk, enum_gcal, hk_kcds, hk_semi};
use mopdom::{ceil_bound, gamma_k_exact};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for ell in [4, 6] {
        println!("marked pieces with ell={ell}: {}", enum_gcal(ell)?.len());
    }

    // Three copies of the unique 4-piece around a triangle.
    let piece = enum_gcal(4)?.remove(0);
    let (g, built) = build_hk(2, &[piece.clone(), piece.clone(), piece], &[])?;
    println!("built: {} cycle={:?}", g.to_json(), built.cycle);

    let dec = detect_hk(&g, 2)?.expect("a built member is recognized");
    println!("detected p={} pieces={:?}", dec.p, dec.piece_sizes());

    let d = hk_kcds(&g, &dec)?;
    println!("set {:?}: size {} = ceil {} = exact {}", d.vertices(), d.len(), ceil_bound(2, 12), gamma_k_exact(&g, 2)?);

    let off = (0..g.order()).find(|&v| !dec.on_cycle(v)).expect("pieces have interiors");
    let semi = hk_semi(&g, &dec, off)?;
    println!("semi set around {off}: small={:?} large={:?}", semi.d1, semi.d2);
    Ok(())
}
