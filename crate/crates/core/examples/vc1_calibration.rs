//! The dimension-one dichotomy leaves its constant unspecified. This sweeps
//! the constant over 1..=64 on a corpus of VC<=1 families and reports the
//! least value that makes one branch hold everywhere.
//!
//! cargo run --release --example vc1_calibration

use sunflower_vc::gen::{corpus, GeneratorConfig, GeneratorKind};
use sunflower_vc::threshold::{kk_dichotomy, DichotomyVariant};
use sunflower_vc::Rational;

fn main() -> sunflower_vc::Result<()> {
    let mut families = Vec::new();
    for (kind, ell) in [(GeneratorKind::ForestPath, 3), (GeneratorKind::RejectionVc1, 2)] {
        let cfg = GeneratorConfig { n: 12, ell, family_size: 8, seed: 2024, kind };
        families.extend(corpus(&cfg, 30)?);
    }
    let qs: Vec<Rational> = [4i64, 16, 64].iter().map(|&d| Rational::new(1.into(), d.into())).collect();
    let eps: Vec<Rational> = [2i64, 4, 8].iter().map(|&d| Rational::new(1.into(), d.into())).collect();

    let mut worst = 0u64;
    for h in &families {
        for q in &qs {
            for e in &eps {
                let least = (1..=64u64).find(|&a| {
                    let c = Rational::from_integer(a.into());
                    kk_dichotomy(h, q, e, DichotomyVariant::Vc1, Some(&c))
                        .map(|r| r.holds())
                        .unwrap_or(false)
                });
                match least {
                    Some(a) => worst = worst.max(a),
                    None => println!("no constant up to 64 works for q = {q}, eps = {e}"),
                }
            }
        }
    }
    println!(
        "{} families x {} values of q x {} values of eps: least universal constant A = {worst}",
        families.len(),
        qs.len(),
        eps.len()
    );
    Ok(())
}
