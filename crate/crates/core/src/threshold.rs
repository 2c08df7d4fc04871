//! Exact upset probabilities, exact minimum-weight covers and the
//! Kahn–Kalai style dichotomy checks built from them.

use std::collections::HashSet;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::ElementSubset;
use crate::bounds::{check_epsilon, log_star};
use crate::error::{Error, Result};
use crate::setsystem::{in_upset, SetSystem};
use crate::vc::vc_dimension_limited;
use crate::{rational_string, Limits, Rational};

/// `Pr[X_p ∈ ⟨H⟩]` computed exactly. `p > 1` is treated as `1`.
pub fn prob_upset_exact(h: &SetSystem, p: &Rational) -> Result<Rational> {
    prob_upset_limited(h, p, Limits::default().prob_max_ground)
}

pub fn prob_upset_limited(h: &SetSystem, p: &Rational, max_ground: usize) -> Result<Rational> {
    let p = clamp_probability(p)?;
    let n = h.ground_size();
    let limit = max_ground.min(30);
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "ground size for exact upset probability",
            actual: n,
            limit,
            hint: "; use the Monte Carlo estimate instead",
        });
    }
    let counts = upset_counts(&h.masks().expect("ground fits in 64 bits"), n);
    let complement = Rational::one() - &p;
    Ok(counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| {
            Rational::from_integer(BigInt::from(c)) * Pow::pow(&p, k) * Pow::pow(&complement, n - k)
        })
        .sum())
}

/// Number of sets of each size in the upset, by a superset-closure sweep.
fn upset_counts(masks: &[u64], n: usize) -> Vec<u64> {
    let mut up = vec![false; 1usize << n];
    for &m in masks {
        up[m as usize] = true;
    }
    for bit in 0..n {
        let step = 1usize << bit;
        for a in 0..up.len() {
            if a & step != 0 && up[a ^ step] {
                up[a] = true;
            }
        }
    }
    let mut counts = vec![0u64; n + 1];
    for (a, &inside) in up.iter().enumerate() {
        if inside {
            counts[a.count_ones() as usize] += 1;
        }
    }
    counts
}

fn clamp_probability(p: &Rational) -> Result<Rational> {
    if p < &Rational::zero() {
        return Err(Error::Precondition(format!("p must be non-negative, got {p}")));
    }
    Ok(if p > &Rational::one() { Rational::one() } else { p.clone() })
}

/// A Monte Carlo estimate with its two-sided 99% normal-approximation
/// half-width.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub half_width: f64,
    pub trials: u64,
}

impl McEstimate {
    pub fn contains(&self, value: f64) -> bool {
        (value - self.estimate).abs() <= self.half_width
    }
}

const Z_99: f64 = 2.5758;

/// Samples `X_p` `trials` times. Deterministic per seed.
pub fn prob_upset_mc(h: &SetSystem, p: &Rational, trials: u64, seed: u64) -> Result<McEstimate> {
    if trials < 100 {
        return Err(Error::Precondition(format!("need at least 100 trials, got {trials}")));
    }
    let p = clamp_probability(p)?.to_f64().unwrap_or(1.0);
    let n = h.ground_size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..trials {
        let w: ElementSubset = (0..n).filter(|_| rng.gen_bool(p)).collect();
        if in_upset(h.members(), w) {
            hits += 1;
        }
    }
    let estimate = hits as f64 / trials as f64;
    let half_width = Z_99 * (estimate * (1.0 - estimate) / trials as f64).sqrt();
    Ok(McEstimate { estimate, half_width, trials })
}

/// A family `F` with `H ⊆ ⟨F⟩` and its weight `Σ q^{|F|}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCertificate {
    pub pieces: SetSystem,
    #[serde(with = "rational_string")]
    pub q: Rational,
    #[serde(with = "rational_string")]
    pub weight: Rational,
}

impl CoverCertificate {
    /// Every member of `h` contains a piece, and the stored weight is exact.
    pub fn validate(&self, h: &SetSystem) -> bool {
        h.members()
            .iter()
            .all(|s| self.pieces.members().iter().any(|f| f.is_subset(s)))
            && self.weight == cover_weight(self.pieces.members(), &self.q)
    }
}

/// `Σ_{F} q^{|F|}`.
pub fn cover_weight(pieces: &[ElementSubset], q: &Rational) -> Rational {
    pieces.iter().map(|f| Pow::pow(q, f.len())).sum()
}

/// Exact minimum of `Σ q^{|F|}` over all families `F` with `H ⊆ ⟨F⟩`.
///
/// Replacing a piece by the intersection of the members containing it keeps
/// its coverage and cannot raise its weight, so only intersections of
/// nonempty subfamilies are candidates. The minimum over coverage patterns is
/// then a dynamic program on bitmasks of still-uncovered members.
pub fn min_cover_weight(h: &SetSystem, q: &Rational) -> Result<CoverCertificate> {
    min_cover_limited(h, q, Limits::default().cover_max_members)
}

pub fn min_cover_limited(h: &SetSystem, q: &Rational, max_members: usize) -> Result<CoverCertificate> {
    if q < &Rational::zero() || q > &Rational::one() {
        return Err(Error::Precondition(format!("q must lie in [0, 1], got {q}")));
    }
    let limit = max_members.min(24);
    let m = h.len();
    if m > limit {
        return Err(Error::LimitExceeded {
            what: "family size for exact cover minimisation",
            actual: m,
            limit,
            hint: "",
        });
    }
    let pieces = closed_pieces(h.members());
    let coverage: Vec<u32> = pieces
        .iter()
        .map(|p| {
            h.members()
                .iter()
                .enumerate()
                .filter(|(_, s)| p.is_subset(s))
                .fold(0u32, |acc, (i, _)| acc | 1 << i)
        })
        .collect();

    // Weights scaled by b^K for q = a/b and K the largest piece size.
    let (a, b) = (
        q.numer().to_biguint().expect("q >= 0"),
        q.denom().to_biguint().expect("denominator > 0"),
    );
    let top = pieces.iter().map(|p| p.len()).max().unwrap_or(0);
    let scaled: Vec<BigUint> = pieces
        .iter()
        .map(|p| Pow::pow(&a, p.len()) * Pow::pow(&b, top - p.len()))
        .collect();
    let scale = Pow::pow(&b, top);
    let chosen = if (BigUint::from(m.max(1)) * &scale).bits() <= 126 {
        let small: Vec<u128> = scaled.iter().map(|w| w.to_u128().expect("fits")).collect();
        cover_dp(m, &coverage, &small)
    } else {
        cover_dp(m, &coverage, &scaled)
    };

    let mut picked: Vec<ElementSubset> = chosen.into_iter().map(|i| pieces[i]).collect();
    picked.sort();
    let weight = cover_weight(&picked, q);
    Ok(CoverCertificate {
        pieces: h.with_members(picked),
        q: q.clone(),
        weight,
    })
}

/// Intersections of all nonempty subfamilies.
fn closed_pieces(members: &[ElementSubset]) -> Vec<ElementSubset> {
    let mut seen = HashSet::new();
    let mut closed: Vec<ElementSubset> = Vec::new();
    for s in members {
        let fresh: Vec<ElementSubset> = closed
            .iter()
            .map(|c| c.intersection(s))
            .chain(std::iter::once(*s))
            .collect();
        for c in fresh {
            if seen.insert(c) {
                closed.push(c);
            }
        }
    }
    closed
}

/// Indices of a minimum-weight set of pieces whose coverage masks cover all
/// `m` members. Ties resolve towards lower piece indices.
fn cover_dp<W>(m: usize, coverage: &[u32], weights: &[W]) -> Vec<usize>
where
    W: Clone + Ord + Zero + for<'a> Add<&'a W, Output = W>,
{
    let full = (1usize << m) - 1;
    let mut by_item: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (pi, &cov) in coverage.iter().enumerate() {
        for (item, list) in by_item.iter_mut().enumerate() {
            if cov >> item & 1 == 1 {
                list.push(pi);
            }
        }
    }
    let mut best: Vec<(W, usize)> = Vec::with_capacity(full + 1);
    best.push((W::zero(), usize::MAX));
    for mask in 1..=full {
        let item = mask.trailing_zeros() as usize;
        let entry = by_item[item]
            .iter()
            .map(|&pi| {
                let rest = mask & !(coverage[pi] as usize);
                (best[rest].0.clone() + &weights[pi], pi)
            })
            .min_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)))
            .expect("every member covers itself");
        best.push(entry);
    }
    let mut out = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let pi = best[mask].1;
        out.push(pi);
        mask &= !(coverage[pi] as usize);
    }
    out
}

/// Which dichotomy to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DichotomyVariant {
    /// `p = C q log(ℓ/ε)`, cover threshold 1/2, default `C = 48`.
    KkBell,
    /// `p = A q (log(d/ε) + log* ℓ)`, cover threshold 2/3.
    Vc,
    /// `p = A q log(1/ε)` for VC-dimension at most one, cover threshold 2/3.
    Vc1,
}

impl DichotomyVariant {
    pub fn cover_threshold(self) -> Rational {
        match self {
            DichotomyVariant::KkBell => Rational::new(1.into(), 2.into()),
            DichotomyVariant::Vc | DichotomyVariant::Vc1 => Rational::new(2.into(), 3.into()),
        }
    }

    pub fn default_constant(self) -> Option<Rational> {
        match self {
            DichotomyVariant::KkBell => Some(Rational::from_integer(48.into())),
            _ => None,
        }
    }
}

impl fmt::Display for DichotomyVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DichotomyVariant::KkBell => "kk-bell",
            DichotomyVariant::Vc => "vc",
            DichotomyVariant::Vc1 => "vc1",
        })
    }
}

impl FromStr for DichotomyVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kk-bell" => Ok(DichotomyVariant::KkBell),
            "vc" => Ok(DichotomyVariant::Vc),
            "vc1" => Ok(DichotomyVariant::Vc1),
            other => Err(Error::InvalidInput(format!(
                "unknown variant `{other}` (expected kk-bell, vc or vc1)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DichotomyReport {
    pub variant: DichotomyVariant,
    #[serde(with = "rational_string")]
    pub q: Rational,
    #[serde(with = "rational_string")]
    pub epsilon: Rational,
    #[serde(with = "rational_string")]
    pub constant_used: Rational,
    /// The formula value before clamping; an upper bound whenever it
    /// involves a binary logarithm of a non-power of two.
    #[serde(with = "rational_string")]
    pub p_formula: Rational,
    #[serde(with = "rational_string")]
    pub p_evaluated: Rational,
    #[serde(with = "rational_string")]
    pub cover_threshold: Rational,
    #[serde(with = "rational_string")]
    pub min_cover_weight: Rational,
    pub best_cover: CoverCertificate,
    #[serde(with = "rational_string")]
    pub prob_upset: Rational,
    pub branch1_holds: bool,
    pub branch2_holds: bool,
}

impl DichotomyReport {
    pub fn holds(&self) -> bool {
        self.branch1_holds || self.branch2_holds
    }
}

/// Evaluates both branches with the default exact limits.
pub fn kk_dichotomy(
    h: &SetSystem,
    q: &Rational,
    epsilon: &Rational,
    variant: DichotomyVariant,
    constant: Option<&Rational>,
) -> Result<DichotomyReport> {
    kk_dichotomy_with(h, q, epsilon, variant, constant, &Limits::default())
}

pub fn kk_dichotomy_with(
    h: &SetSystem,
    q: &Rational,
    epsilon: &Rational,
    variant: DichotomyVariant,
    constant: Option<&Rational>,
    limits: &Limits,
) -> Result<DichotomyReport> {
    check_epsilon(epsilon)?;
    let constant = match (constant, variant.default_constant()) {
        (Some(c), _) => c.clone(),
        (None, Some(c)) => c,
        (None, None) => {
            return Err(Error::Precondition(format!(
                "variant {variant} needs an explicit constant"
            )))
        }
    };
    if constant < Rational::zero() {
        return Err(Error::Precondition(format!("constant must be non-negative, got {constant}")));
    }
    let p_formula = &constant * q * dichotomy_log_factor(h, epsilon, variant, limits)?;
    let p_evaluated = clamp_probability(&p_formula)?;
    let best_cover = min_cover_limited(h, q, limits.cover_max_members)?;
    let prob_upset = prob_upset_limited(h, &p_evaluated, limits.prob_max_ground)?;
    let cover_threshold = variant.cover_threshold();
    let one_minus_eps = Rational::one() - epsilon;
    Ok(DichotomyReport {
        variant,
        q: q.clone(),
        epsilon: epsilon.clone(),
        constant_used: constant,
        p_evaluated,
        branch1_holds: best_cover.weight <= cover_threshold,
        branch2_holds: prob_upset > one_minus_eps,
        min_cover_weight: best_cover.weight.clone(),
        cover_threshold,
        best_cover,
        prob_upset,
        p_formula,
    })
}

/// The logarithmic factor multiplying `constant · q`, rounded up.
fn dichotomy_log_factor(
    h: &SetSystem,
    epsilon: &Rational,
    variant: DichotomyVariant,
    limits: &Limits,
) -> Result<Rational> {
    let ell = h.ell();
    match variant {
        DichotomyVariant::KkBell => {
            if ell == 0 {
                return Ok(Rational::zero());
            }
            log2_upper(&(Rational::from_integer(ell.into()) / epsilon))
        }
        DichotomyVariant::Vc => {
            let d = if h.is_empty() {
                1
            } else {
                vc_dimension_limited(h, limits.vc_max_ground)?.dimension.max(1)
            };
            let tail = log_star(ell.max(1) as u64)?.to_rational();
            Ok(log2_upper(&(Rational::from_integer(d.into()) / epsilon))? + tail)
        }
        DichotomyVariant::Vc1 => {
            if !h.is_empty() && vc_dimension_limited(h, limits.vc_max_ground)?.dimension > 1 {
                return Err(Error::Hypothesis("the vc1 variant needs VC-dimension at most 1".into()));
            }
            log2_upper(&(Rational::one() / epsilon))
        }
    }
}

const FRACTION_BITS: usize = 64;
const WORKING_BITS: usize = 128;

/// A dyadic upper bound on `log₂ x` for `x >= 1`, within `2^-63` of the true
/// value and exact when `x` is a power of two.
pub fn log2_upper(x: &Rational) -> Result<Rational> {
    if x < &Rational::one() {
        return Err(Error::Precondition(format!("log2_upper needs x >= 1, got {x}")));
    }
    let num = x.numer().to_biguint().expect("positive");
    let den = x.denom().to_biguint().expect("positive");
    let mut k = num.bits() - den.bits();
    if num < (&den << k) {
        k -= 1;
    }
    let one = BigUint::one() << WORKING_BITS;
    let two = BigUint::one() << (WORKING_BITS + 1);
    let scaled_den = &den << k;
    let mut y = ((&num << WORKING_BITS) + &scaled_den - 1u32) / &scaled_den;
    let mut fraction = BigUint::zero();
    for _ in 0..FRACTION_BITS {
        y = (&y * &y + &one - 1u32) >> WORKING_BITS;
        fraction <<= 1;
        if y >= two {
            fraction += 1u32;
            y = (y + 1u32) >> 1;
        }
    }
    if y > one {
        fraction += 1u32;
    }
    let denom = BigInt::one() << FRACTION_BITS;
    Ok(Rational::from_integer(BigInt::from(k)) + Rational::new(BigInt::from(fraction), denom))
}
