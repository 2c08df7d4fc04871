//! Shattering and exact VC-dimension.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bits::ElementSubset;
use crate::error::{Error, Result};
use crate::setsystem::SetSystem;

/// Default cap on the ground size accepted by [`vc_dimension`].
pub const DEFAULT_VC_MAX_GROUND: usize = 24;

/// A largest shattered set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShatterReport {
    /// Lexicographically least shattered set of maximum size.
    pub witness: ElementSubset,
    pub dimension: usize,
}

/// Whether every subset of `T` arises as `T ∩ S` for some member `S`.
pub fn shatters(h: &SetSystem, t: &ElementSubset) -> bool {
    shatters_members(h.members(), t)
}

fn shatters_members(members: &[ElementSubset], t: &ElementSubset) -> bool {
    let elems: Vec<usize> = t.iter().collect();
    let k = elems.len();
    if k >= usize::BITS as usize - 1 || members.len() < 1usize << k {
        return false;
    }
    let mut seen = vec![false; 1 << k];
    let mut missing = 1usize << k;
    for s in members {
        let pattern = elems
            .iter()
            .enumerate()
            .filter(|(_, &e)| s.contains(e))
            .fold(0usize, |acc, (bit, _)| acc | 1 << bit);
        if !seen[pattern] {
            seen[pattern] = true;
            missing -= 1;
            if missing == 0 {
                return true;
            }
        }
    }
    false
}

/// Exact VC-dimension with the default ground-size cap.
pub fn vc_dimension(h: &SetSystem) -> Result<ShatterReport> {
    vc_dimension_limited(h, DEFAULT_VC_MAX_GROUND)
}

/// Exact VC-dimension, refusing ground sets larger than `max_ground`.
///
/// The search ascends by size and only extends sets whose every
/// one-smaller subset is shattered, so the work is proportional to the
/// number of shattered sets rather than to `2^n`.
pub fn vc_dimension_limited(h: &SetSystem, max_ground: usize) -> Result<ShatterReport> {
    if h.ground_size() > max_ground {
        return Err(Error::LimitExceeded {
            what: "ground size for exact VC-dimension",
            actual: h.ground_size(),
            limit: max_ground,
            hint: "",
        });
    }
    if h.is_empty() {
        return Err(Error::Precondition(
            "VC-dimension of the empty family is undefined".into(),
        ));
    }
    let top = shattered_levels(h, usize::MAX);
    let dimension = top.len() - 1;
    let witness = top[dimension]
        .iter()
        .min()
        .copied()
        .expect("every level is nonempty");
    Ok(ShatterReport { witness, dimension })
}

/// Whether the VC-dimension is at most `d`, for any ground size. The empty
/// family counts as having dimension below every `d`.
pub fn vc_at_most(h: &SetSystem, d: usize) -> bool {
    h.is_empty() || shattered_levels(h, d + 1).len() <= d + 1
}

/// Shattered sets grouped by size, up to `max_level` or until a level is empty.
fn shattered_levels(h: &SetSystem, max_level: usize) -> Vec<Vec<ElementSubset>> {
    let members = h.members();
    let mut levels = vec![vec![ElementSubset::empty()]];
    if max_level == 0 {
        return levels;
    }
    let singles: Vec<usize> = (0..h.ground_size())
        .filter(|&x| {
            let t = ElementSubset::empty().with(x);
            shatters_members(members, &t)
        })
        .collect();
    if singles.is_empty() {
        return levels;
    }
    levels.push(
        singles
            .iter()
            .map(|&x| ElementSubset::empty().with(x))
            .collect(),
    );
    let ground = h.ground_size();
    let mut single = vec![false; ground];
    for &x in &singles {
        single[x] = true;
    }
    while levels.len() <= max_level {
        let current = levels.last().unwrap();
        let known: HashSet<ElementSubset> = current.iter().copied().collect();
        let mut next = Vec::new();
        let mut tried = HashSet::new();
        for t in current {
            let top = t.last().expect("levels past 0 are nonempty sets");
            // A shattered set lies inside some member, so only elements of
            // members containing `t` can extend it.
            for s in members.iter().filter(|s| t.is_subset(s)) {
                for x in s.iter().filter(|&x| x > top && single[x]) {
                    let cand = t.with(x);
                    if !tried.insert(cand) {
                        continue;
                    }
                    let closed = t.iter().all(|y| known.contains(&cand.without(y)));
                    if closed && shatters_members(members, &cand) {
                        next.push(cand);
                    }
                }
            }
        }
        next.sort_unstable();
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    levels
}

/// `Σ_{i=0}^{d} C(n, i)`.
pub fn sauer_shelah_bound(n: usize, d: usize) -> Result<BigUint> {
    if d > n {
        return Err(Error::Precondition(format!(
            "Sauer-Shelah bound needs d <= n, got d = {d}, n = {n}"
        )));
    }
    let mut total = BigUint::zero();
    let mut binom = BigUint::one();
    for i in 0..=d {
        total += &binom;
        binom = binom * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    Ok(total)
}
