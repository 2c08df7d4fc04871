//! Sunflower extraction above the two thresholds: greedy Erdős–Rado on any
//! 3-bounded family with more than 48 members, and the sharp procedure on a
//! VC-dimension-one family with more than (r-1)^ell members.
//!
//! cargo run --example sunflower_extraction

use sunflower_vc::bounds::{er_bound, vc1_threshold};
use sunflower_vc::cli::format::show_set;
use sunflower_vc::gen::{random_family, GeneratorConfig, GeneratorKind};
use sunflower_vc::sunflower::{extract_er, extract_vc1, witness_or_sunflower, Sunflower, WitnessOutcome};
use sunflower_vc::SetSystem;

fn show(h: &SetSystem, s: &Sunflower) -> String {
    let sets: Vec<String> = s.members.iter().map(|&i| show_set(h, h.member(i))).collect();
    format!("kernel {}, members {}", show_set(h, &s.kernel), sets.join(" "))
}

fn main() -> sunflower_vc::Result<()> {
    let threshold = er_bound(3, 3)?;
    let h = random_family(&GeneratorConfig {
        n: 10,
        ell: 3,
        family_size: 49,
        seed: 1,
        kind: GeneratorKind::UniformRandom,
    })?;
    let s = extract_er(&h, 3)?.expect("more than (r-1)^ell ell! members");
    println!("Erdős–Rado, |H| = {} > {threshold}: {}", h.len(), show(&h, &s));

    for r in [3usize, 4] {
        let ell = 3;
        let size = (r - 1).pow(ell as u32) + 1;
        let h = random_family(&GeneratorConfig {
            n: 40,
            ell,
            family_size: size,
            seed: 7,
            kind: GeneratorKind::ForestPath,
        })?;
        let s = extract_vc1(&h, r)?;
        println!(
            "VC<=1, r = {r}, |H| = {} > {}: {}",
            h.len(),
            vc1_threshold(r as u64, ell as u64)?,
            show(&h, &s)
        );
    }

    // Without a 3-sunflower the procedure returns two elements x, y whose
    // traces {x}, {y}, {x, y} all occur.
    let h = SetSystem::from_sets([vec!["x"], vec!["y"], vec!["x", "y"]])?;
    match witness_or_sunflower(&h, 5)? {
        WitnessOutcome::Witness(w) => println!(
            "witness: x = {}, y = {} via members {}, {}, {}",
            h.label(w.x),
            h.label(w.y),
            show_set(&h, h.member(w.s_x)),
            show_set(&h, h.member(w.s_y)),
            show_set(&h, h.member(w.s_xy))
        ),
        other => println!("{other:?}"),
    }
    Ok(())
}
