//! The smoothed iterated logarithm, the shift identity it satisfies, and the
//! piecewise functions built on it.
//!
//! cargo run --example log_star

use num_bigint::BigUint;
use sunflower_vc::bounds::{ell_zero, lambda_d, log_star, log_star_smoothed_pow2};
use sunflower_vc::Rational;

fn main() -> sunflower_vc::Result<()> {
    for x in [1u64, 2, 3, 4, 8, 16, 17, 100, 256, 257, 300, 65536, 65537] {
        println!("log*({x}) = {}", log_star(x)?);
    }
    for e in [16u32, 256, 65536, 1 << 20] {
        let v = log_star_smoothed_pow2(&BigUint::from(e))?;
        println!("log*(2^{e}) = {v} = log*({e}) + 1 = {} + 1", log_star(e.into())?);
    }
    println!();
    for ell in [20u64, 36, 37, 64, 65, 1000] {
        println!("lambda_2({ell}) = {}", lambda_d(2, ell)?);
    }
    let eps = Rational::new(1.into(), 2.into());
    println!("ell_0(d = 1, eps = 1/2) = {}", ell_zero(1, &eps)?);
    Ok(())
}
