//! Sunflowers, VC-dimension and exact Kahn–Kalai dichotomy checks for small
//! set systems.
//!
//! A [`SetSystem`] is a labelled ground set with a deduplicated list of member
//! subsets. Everything else is a function of set systems:
//!
//! * [`vc`]: shattering, exact VC-dimension and the Sauer–Shelah bound.
//! * [`sunflower`]: certificates, an exact search, the Erdős–Rado extractor
//!   and the sharp extractor for VC-dimension one.
//! * [`spread`]: reduced families, the small/large split and exact expected
//!   weights against the counting bounds.
//! * [`threshold`]: exact upset probabilities, exact minimum covers and the
//!   dichotomy checks.
//! * [`bounds`]: the smoothed iterated logarithm and related scalar bounds.
//! * [`gen`]: the extremal tree family, padding and seeded random corpora.
//!
//! Exact routines refuse inputs above configurable [`Limits`] instead of
//! running for an unbounded time.

pub mod bits;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod gen;
pub mod setsystem;
pub mod spread;
pub mod sunflower;
pub mod threshold;
pub mod vc;

pub use bits::{ElementSubset, MAX_GROUND};
pub use error::{Error, Result};
pub use setsystem::SetSystem;

/// Exact rational numbers used for every probability and weight.
pub type Rational = num_rational::BigRational;

/// Size caps for the exponential exact routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Limits {
    /// Ground size for exact VC-dimension.
    pub vc_max_ground: usize,
    /// Ground size for the exact expected large-family weight.
    pub expectation_max_ground: usize,
    /// Ground size for exact upset probabilities.
    pub prob_max_ground: usize,
    /// Family size for exact cover minimisation.
    pub cover_max_members: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            vc_max_ground: vc::DEFAULT_VC_MAX_GROUND,
            expectation_max_ground: spread::DEFAULT_EXPECTATION_MAX_GROUND,
            prob_max_ground: 22,
            cover_max_members: 14,
        }
    }
}

impl Limits {
    /// Defaults overridden by `SUNFLOWER_VC_MAX_GROUND`,
    /// `SUNFLOWER_EXPECTATION_MAX_GROUND`, `SUNFLOWER_PROB_MAX_GROUND` and
    /// `SUNFLOWER_COVER_MAX_MEMBERS`.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        for (var, slot) in [
            ("SUNFLOWER_VC_MAX_GROUND", &mut limits.vc_max_ground),
            ("SUNFLOWER_EXPECTATION_MAX_GROUND", &mut limits.expectation_max_ground),
            ("SUNFLOWER_PROB_MAX_GROUND", &mut limits.prob_max_ground),
            ("SUNFLOWER_COVER_MAX_MEMBERS", &mut limits.cover_max_members),
        ] {
            if let Ok(raw) = std::env::var(var) {
                *slot = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("{var} must be a natural number, got `{raw}`")))?;
            }
        }
        Ok(limits)
    }
}

/// Serde adapter writing rationals as `"a/b"` or `"a"` strings.
pub(crate) mod rational_string {
    use serde::Serializer;

    use crate::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }
}
