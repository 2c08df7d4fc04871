//! Both branches of the dichotomy with constant 48, computed exactly: the
//! cheapest cover of the family and the probability that W ~ X_p contains a
//! member.
//!
//! cargo run --example kk_dichotomy

use sunflower_vc::cli::format::show_set;
use sunflower_vc::threshold::{kk_dichotomy, DichotomyVariant};
use sunflower_vc::{Rational, SetSystem};

fn main() -> sunflower_vc::Result<()> {
    let h = SetSystem::from_sets([
        vec!["a", "b"],
        vec!["a", "c"],
        vec!["a", "d"],
        vec!["b", "c", "d"],
        vec!["e", "f"],
    ])?;
    let eps = Rational::new(1.into(), 4.into());
    for denom in [2i64, 8, 32, 128, 512] {
        let q = Rational::new(1.into(), denom.into());
        let rep = kk_dichotomy(&h, &q, &eps, DichotomyVariant::KkBell, None)?;
        let cover: Vec<String> = rep
            .best_cover
            .pieces
            .members()
            .iter()
            .map(|s| show_set(&rep.best_cover.pieces, s))
            .collect();
        println!(
            "q = {q:<6} cover {} weight {} ({}), p = {}, Pr = {:.4} ({})",
            cover.join(" "),
            rep.min_cover_weight,
            if rep.branch1_holds { "small" } else { "large" },
            rep.p_evaluated,
            num_traits::ToPrimitive::to_f64(&rep.prob_upset).unwrap_or(f64::NAN),
            if rep.branch2_holds { "likely" } else { "unlikely" },
        );
        assert!(rep.holds());
    }
    Ok(())
}
