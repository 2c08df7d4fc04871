//! The small/large split of a family relative to a random-looking W, and the
//! exact expected weight of the large part against its counting bound.
//!
//! cargo run --example spread_decomposition

use sunflower_vc::cli::format::show_set;
use sunflower_vc::gen::{random_family, GeneratorConfig, GeneratorKind};
use sunflower_vc::spread::{
    count_bound, decompose, large_weight_profile, reduced_family, ChooserRule,
};
use sunflower_vc::vc::vc_dimension;
use sunflower_vc::{ElementSubset, Rational};

fn main() -> sunflower_vc::Result<()> {
    let h = random_family(&GeneratorConfig {
        n: 10,
        ell: 3,
        family_size: 8,
        seed: 11,
        kind: GeneratorKind::UniformRandom,
    })?;
    let w = ElementSubset::from_indices([0, 3, 7]);
    let t = 2;
    println!("W = {}, t = {t}", show_set(&h, &w));
    let reduced = reduced_family(&h, &w)?;
    println!("H_W has {} minimal sets", reduced.len());

    let dec = decompose(&h, &w, t, ChooserRule::Lexicographic)?;
    for (i, s) in h.members().iter().enumerate() {
        println!(
            "S = {:<12} F = {:<10} F* = {}",
            show_set(&h, s),
            show_set(&h, &dec.chooser[i]),
            show_set(&h, &dec.f_star[i])
        );
    }
    println!("small: {} sets, large: {} sets", dec.small.len(), dec.large.len());

    let q = Rational::new(1.into(), 8.into());
    let p = Rational::new(1.into(), 2.into());
    let d = vc_dimension(&h)?.dimension;
    let ell = h.ell();
    let profile = large_weight_profile(&h, &p, &q, 0..=ell, ChooserRule::Lexicographic, 16)?;
    println!("\nE[large weight] for W ~ X_p, p = {p}, q = {q}, d = {d}:");
    for (t, e) in profile.iter().enumerate() {
        let bound = count_bound(ell, d, &q, &p, t)?;
        println!("  t = {t}: {:.6} <= {:.6}  (exact: {e})", f(e), f(&bound));
        assert!(e <= &bound);
    }
    Ok(())
}

fn f(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
