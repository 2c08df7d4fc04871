//! The complete (r-1)-ary tree family: (r-1)^ell root-to-leaf edge paths,
//! VC-dimension one, and no r-sunflower. Adding one more set breaks it.
//!
//! cargo run --example tree_sharpness

use sunflower_vc::bounds::vc1_threshold;
use sunflower_vc::cli::format::{show_set, write_set_system, FileFormat};
use sunflower_vc::gen::tree_family;
use sunflower_vc::sunflower::find_sunflower_exact;
use sunflower_vc::vc::vc_dimension_limited;

fn main() -> sunflower_vc::Result<()> {
    let small = tree_family(3, 2)?;
    println!("tree(3, 2):\n{}", write_set_system(&small, FileFormat::Text)?);

    println!("{:>2} {:>4} {:>8} {:>8} {:>4} {:>10}", "r", "ell", "members", "bound", "vc", "sunflower");
    for r in 3..=5 {
        for ell in 1..=4 {
            let h = tree_family(r, ell)?;
            let vc = vc_dimension_limited(&h, usize::MAX)?;
            let found = find_sunflower_exact(&h, r)?;
            println!(
                "{r:>2} {ell:>4} {:>8} {:>8} {:>4} {:>10}",
                h.len(),
                vc1_threshold(r as u64, ell as u64)?,
                vc.dimension,
                if found.is_some() { "present" } else { "absent" }
            );
        }
    }

    // One extra root edge as a singleton gives a sunflower with that kernel.
    let root_edge = small.members()[0].first().expect("members are nonempty");
    let extended = small.with_members(
        small
            .members()
            .iter()
            .copied()
            .chain([sunflower_vc::ElementSubset::empty().with(root_edge)]),
    );
    let s = find_sunflower_exact(&extended, 3)?.expect("the extra set completes a sunflower");
    println!(
        "\nwith {{{}}} added: kernel {}",
        small.label(root_edge),
        show_set(&extended, &s.kernel)
    );
    Ok(())
}
