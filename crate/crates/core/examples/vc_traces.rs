//! VC-dimension, traces and the Sauer–Shelah bound on a random family.
//!
//! cargo run --example vc_traces

use sunflower_vc::cli::format::show_set;
use sunflower_vc::gen::{random_family, GeneratorConfig, GeneratorKind};
use sunflower_vc::setsystem::trace;
use sunflower_vc::vc::{sauer_shelah_bound, shatters, vc_dimension};
use sunflower_vc::ElementSubset;

fn main() -> sunflower_vc::Result<()> {
    let h = random_family(&GeneratorConfig {
        n: 8,
        ell: 4,
        family_size: 30,
        seed: 3,
        kind: GeneratorKind::UniformRandom,
    })?;
    let rep = vc_dimension(&h)?;
    let d = rep.dimension;
    println!(
        "|H| = {}, VC = {d}, witness {} (shattered: {})",
        h.len(),
        show_set(&h, &rep.witness),
        shatters(&h, &rep.witness)
    );
    println!("Sauer–Shelah: |H| <= {}", sauer_shelah_bound(h.ground_size(), d)?);

    println!("\n{:<12} {:>6} {:>6} {:>4}", "U", "|H|U|", "bound", "vc");
    for u in [0b0000_0111u64, 0b0011_1100, 0b1111_0000, 0b1111_1111] {
        let u = ElementSubset::from_mask(u);
        let t = trace(&h, &u)?;
        let dt = vc_dimension(&t)?.dimension;
        println!(
            "{:<12} {:>6} {:>6} {:>4}",
            show_set(&h, &u),
            t.len(),
            sauer_shelah_bound(u.len(), d.min(u.len()))?,
            dt
        );
    }
    Ok(())
}
