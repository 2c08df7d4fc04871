//! Reduced families `H_W`, the choice maps `F` and `F*`, the small/large split
//! of a family relative to `(W, t)`, and exact evaluation of the expected
//! large-family weight that the counting bounds control.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{Bits, ElementSubset};
use crate::error::{Error, Result};
use crate::setsystem::{core_of, minimal_members, SetSystem};
use crate::vc::vc_at_most;
use crate::Rational;

/// Default cap on the ground size for [`expectation_large_weight_exact`].
pub const DEFAULT_EXPECTATION_MAX_GROUND: usize = 16;

/// How `F(S)` is picked among the minimal reduced sets inside `S \ W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChooserRule {
    /// The lexicographically least candidate.
    Lexicographic,
    /// A uniformly random candidate, from a generator seeded afresh for
    /// every decomposition.
    SeededRandom(u64),
}

/// The decomposition of `H` relative to `(W, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadDecomposition {
    pub w: ElementSubset,
    pub t: usize,
    /// `F(S)` for each member `S`, by member index.
    pub chooser: Vec<ElementSubset>,
    /// `F*(S) = S ∩ core(W ∪ F(S))`, by member index.
    pub f_star: Vec<ElementSubset>,
    /// `{F(S) : |F(S)| < t}`.
    pub small: SetSystem,
    /// `{F*(S) : |F(S)| >= t}`.
    pub large: SetSystem,
}

/// `H_W`: the inclusion-minimal sets among `{S \ W : S ∈ H}`.
pub fn reduced_family(h: &SetSystem, w: &ElementSubset) -> Result<SetSystem> {
    h.check_within_ground(w, "W")?;
    Ok(h.with_members(reduced_members(h.members(), *w)))
}

pub(crate) fn reduced_members<B: Bits>(members: &[B], w: B) -> Vec<B> {
    let mut seen = HashSet::with_capacity(members.len());
    let residues: Vec<B> = members
        .iter()
        .map(|s| s.minus(w))
        .filter(|r| seen.insert(*r))
        .collect();
    minimal_members(&residues)
}

/// `F(S)` and `F*(S)` for every member, independent of `t`.
pub(crate) fn choose<B: Bits>(members: &[B], w: B, rule: ChooserRule) -> Vec<(B, B)> {
    let reduced = reduced_members(members, w);
    let mut rng = match rule {
        ChooserRule::Lexicographic => None,
        ChooserRule::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    members
        .iter()
        .map(|&s| {
            let rest = s.minus(w);
            let fits = reduced.iter().filter(|f| f.subset_of(rest));
            let f = match rng.as_mut() {
                None => *fits.min_by(|a, b| a.lex_cmp(b)).expect("some minimal set lies below S \\ W"),
                Some(rng) => {
                    let fits: Vec<&B> = fits.collect();
                    *fits[rng.gen_range(0..fits.len())]
                }
            };
            let core = core_of(members, w.or(f)).expect("W ∪ F(S) contains S");
            (f, s.and(core))
        })
        .collect()
}

/// Splits the choices at `t`, deduplicating each side.
pub(crate) fn split<B: Bits>(choices: &[(B, B)], t: usize) -> (Vec<B>, Vec<B>) {
    let mut small_seen = HashSet::new();
    let mut large_seen = HashSet::new();
    let mut small = Vec::new();
    let mut large = Vec::new();
    for &(f, f_star) in choices {
        if f.count() < t {
            if small_seen.insert(f) {
                small.push(f);
            }
        } else if large_seen.insert(f_star) {
            large.push(f_star);
        }
    }
    (small, large)
}

/// Builds the decomposition of a nonempty family.
pub fn decompose(
    h: &SetSystem,
    w: &ElementSubset,
    t: usize,
    rule: ChooserRule,
) -> Result<SpreadDecomposition> {
    h.check_within_ground(w, "W")?;
    if h.is_empty() {
        return Err(Error::Precondition("cannot decompose the empty family".into()));
    }
    let choices = choose(h.members(), *w, rule);
    let (small, large) = split(&choices, t);
    Ok(SpreadDecomposition {
        w: *w,
        t,
        chooser: choices.iter().map(|c| c.0).collect(),
        f_star: choices.iter().map(|c| c.1).collect(),
        small: h.with_members(small),
        large: h.with_members(large),
    })
}

fn check_probability(name: &str, x: &Rational) -> Result<()> {
    if x < &Rational::zero() || x > &Rational::one() {
        Err(Error::Precondition(format!("{name} must lie in [0, 1], got {x}")))
    } else {
        Ok(())
    }
}

/// Exact `E[Σ_{F ∈ large(W, t)} q^{|F|}]` for `W ~ X_p`, by enumerating all
/// `2^n` sets `W`.
pub fn expectation_large_weight_exact(
    h: &SetSystem,
    p: &Rational,
    q: &Rational,
    t: usize,
    rule: ChooserRule,
) -> Result<Rational> {
    expectation_large_weight_limited(h, p, q, t, rule, DEFAULT_EXPECTATION_MAX_GROUND)
}

pub fn expectation_large_weight_limited(
    h: &SetSystem,
    p: &Rational,
    q: &Rational,
    t: usize,
    rule: ChooserRule,
    max_ground: usize,
) -> Result<Rational> {
    let mut profile = large_weight_profile(h, p, q, t..=t, rule, max_ground)?;
    Ok(profile.pop().expect("one threshold requested"))
}

/// The expectation for every `t` in `ts`, sharing one enumeration of `W`.
pub fn large_weight_profile(
    h: &SetSystem,
    p: &Rational,
    q: &Rational,
    ts: std::ops::RangeInclusive<usize>,
    rule: ChooserRule,
    max_ground: usize,
) -> Result<Vec<Rational>> {
    check_probability("p", p)?;
    check_probability("q", q)?;
    let n = h.ground_size();
    if n > max_ground.min(63) {
        return Err(Error::LimitExceeded {
            what: "ground size for exact expectation",
            actual: n,
            limit: max_ground.min(63),
            hint: "; sample W instead",
        });
    }
    let masks = h.masks().expect("ground fits in 64 bits");
    let ts: Vec<usize> = ts.collect();
    let counts = large_counts(&masks, n, &ts, rule);

    let complement = Rational::one() - p;
    let p_pow: Vec<Rational> = (0..=n).map(|w| Pow::pow(p, w)).collect();
    let c_pow: Vec<Rational> = (0..=n).map(|w| Pow::pow(&complement, w)).collect();
    let q_pow: Vec<Rational> = (0..=n).map(|k| Pow::pow(q, k)).collect();
    Ok(counts
        .iter()
        .map(|table| {
            let mut total = Rational::zero();
            for (w, row) in table.iter().enumerate() {
                let inner: Rational = row
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(k, &c)| &q_pow[k] * Rational::from_integer(BigInt::from(c)))
                    .sum();
                if !inner.is_zero() {
                    total += inner * &p_pow[w] * &c_pow[n - w];
                }
            }
            total
        })
        .collect())
}

/// `counts[t][|W|][|F|]`: number of pairs `(W, F)` with `F` in the large family.
fn large_counts(masks: &[u64], n: usize, ts: &[usize], rule: ChooserRule) -> Vec<Vec<Vec<u64>>> {
    let empty = || vec![vec![vec![0u64; n + 1]; n + 1]; ts.len()];
    (0u64..1 << n)
        .into_par_iter()
        .fold(empty, |mut acc, w| {
            let choices = choose(masks, w, rule);
            let size = w.count_ones() as usize;
            for (slot, &t) in ts.iter().enumerate() {
                for f in split(&choices, t).1 {
                    acc[slot][size][f.count_ones() as usize] += 1;
                }
            }
            acc
        })
        .reduce(empty, |mut a, b| {
            for (x, y) in a.iter_mut().flatten().flatten().zip(b.iter().flatten().flatten()) {
                *x += y;
            }
            a
        })
}

/// Rational upper bound on Euler's number: 2.7182818285.
pub fn e_upper() -> Rational {
    Rational::new(BigInt::from(27_182_818_285u64), BigInt::from(10_000_000_000u64))
}

fn check_pq(q: &Rational, p: &Rational) -> Result<()> {
    check_probability("p", p)?;
    check_probability("q", q)?;
    if q <= &Rational::zero() {
        return Err(Error::Hypothesis(format!("q must be positive, got {q}")));
    }
    if p < &(q * Rational::from_integer(BigInt::from(2))) {
        return Err(Error::Hypothesis(format!("need p >= 2q, got p = {p}, q = {q}")));
    }
    Ok(())
}

/// `2 (eℓ/d)^d (q/p)^t`, with `e` replaced by [`e_upper`].
pub fn count_bound(ell: usize, d: usize, q: &Rational, p: &Rational, t: usize) -> Result<Rational> {
    check_pq(q, p)?;
    if d > ell {
        return Err(Error::Hypothesis(format!("need d <= ell, got d = {d}, ell = {ell}")));
    }
    let spread = if d == 0 {
        Rational::one()
    } else {
        let base = e_upper() * Rational::new(BigInt::from(ell), BigInt::from(d));
        Pow::pow(&base, d)
    };
    Ok(spread * count_bound_vc1(q, p, t)?)
}

/// `2 (q/p)^t`.
pub fn count_bound_vc1(q: &Rational, p: &Rational, t: usize) -> Result<Rational> {
    check_pq(q, p)?;
    Ok(Rational::from_integer(BigInt::from(2)) * Pow::pow(q / p, t))
}

/// Hypotheses of the dimension-one counting bound: VC-dimension at most one
/// and, for every pair of distinct elements, a member avoiding both.
pub fn vc1_count_hypothesis(h: &SetSystem) -> bool {
    if !vc_at_most(h, 1) {
        return false;
    }
    let n = h.ground_size();
    (0..n).all(|x| {
        (x + 1..n).all(|y| {
            h.members()
                .iter()
                .any(|s| !s.contains(x) && !s.contains(y))
        })
    })
}
