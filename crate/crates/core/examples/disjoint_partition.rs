//! Finding r pairwise disjoint members (a sunflower with empty kernel) by
//! random partitions of the ground set into 2r parts.
//!
//! cargo run --example disjoint_partition

use sunflower_vc::cli::format::show_set;
use sunflower_vc::gen::{random_family, GeneratorConfig, GeneratorKind};
use sunflower_vc::sunflower::{disjoint_via_partition, find_sunflower_exact};

fn main() -> sunflower_vc::Result<()> {
    let h = random_family(&GeneratorConfig {
        n: 30,
        ell: 3,
        family_size: 40,
        seed: 5,
        kind: GeneratorKind::UniformRandom,
    })?;
    for r in 2..=6 {
        let found = disjoint_via_partition(&h, r, 200, 17)?;
        let exact = find_sunflower_exact(&h, r)?;
        match found {
            Some(s) => {
                let sets: Vec<String> = s.members.iter().map(|&i| show_set(&h, h.member(i))).collect();
                println!("r = {r}: {}", sets.join(" "));
            }
            None => println!(
                "r = {r}: none in 200 partitions (exact search: {})",
                if exact.is_some() { "some sunflower exists" } else { "no sunflower" }
            ),
        }
    }
    Ok(())
}
