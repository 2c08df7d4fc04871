//! Brute-force oracles written independently of the library algorithms.
//! Families are slices of `u64` masks over a ground of `n <= 16` elements.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sunflower_vc::{ElementSubset, SetSystem};

pub type Q = BigRational;

pub fn q(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

pub fn masks(h: &SetSystem) -> Vec<u64> {
    h.members().iter().map(|s| s.to_mask().expect("small ground")).collect()
}

pub fn system(n: usize, masks: &[u64]) -> SetSystem {
    SetSystem::from_masks(n, masks.iter().map(|&m| ElementSubset::from_mask(m)))
}

pub fn elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn is_sub(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// All pairwise intersections of the chosen sets coincide.
pub fn naive_is_sunflower(sets: &[u64]) -> bool {
    if sets.len() < 2 {
        return true;
    }
    let kernel = sets[0] & sets[1];
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i] & sets[j] != kernel {
                return false;
            }
        }
    }
    true
}

/// Whether some `r` distinct members form a sunflower, by trying every
/// `r`-subset of indices.
pub fn naive_has_sunflower(family: &[u64], r: usize) -> bool {
    fn go(family: &[u64], r: usize, start: usize, chosen: &mut Vec<u64>) -> bool {
        if chosen.len() == r {
            return naive_is_sunflower(chosen);
        }
        if family.len() - start < r - chosen.len() {
            return false;
        }
        for i in start..family.len() {
            chosen.push(family[i]);
            if go(family, r, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(family, r, 0, &mut Vec::new())
}

pub fn naive_shatters(family: &[u64], t: u64) -> bool {
    let mut patterns: Vec<u64> = family.iter().map(|s| s & t).collect();
    patterns.sort_unstable();
    patterns.dedup();
    patterns.len() == 1usize << t.count_ones()
}

/// Maximum size of a shattered subset; `None` for the empty family.
pub fn naive_vc(family: &[u64], n: usize) -> Option<usize> {
    if family.is_empty() {
        return None;
    }
    (0u64..1 << n)
        .filter(|&t| naive_shatters(family, t))
        .map(|t| t.count_ones() as usize)
        .max()
}

/// Distinct traces `S ∩ U`.
pub fn naive_trace(family: &[u64], u: u64) -> Vec<u64> {
    let mut out: Vec<u64> = family.iter().map(|s| s & u).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn binomial_sum(n: usize, d: usize) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for i in 0..=d.min(n) {
        total += c;
        c = c * (n - i) as u64 / (i as u64 + 1);
    }
    total
}

pub fn naive_minimal(family: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = family
        .iter()
        .copied()
        .filter(|&s| !family.iter().any(|&t| t != s && is_sub(t, s)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn naive_in_upset(family: &[u64], a: u64) -> bool {
    family.iter().any(|&s| is_sub(s, a))
}

pub fn naive_core(family: &[u64], a: u64) -> Option<u64> {
    let inside: Vec<u64> = family.iter().copied().filter(|&s| is_sub(s, a)).collect();
    if inside.is_empty() {
        None
    } else {
        Some(inside.iter().fold(u64::MAX, |acc, s| acc & s))
    }
}

/// `Pr[X_p ∈ ⟨H⟩]` as `Σ_W p^{|W|} (1-p)^{n-|W|}` over all `W` in the upset.
pub fn naive_upset_prob(family: &[u64], n: usize, p: &Q) -> Q {
    let one_minus = Q::one() - p;
    let mut total = Q::zero();
    for w in 0u64..1 << n {
        if naive_in_upset(family, w) {
            let k = w.count_ones() as usize;
            total += Pow::pow(p, k) * Pow::pow(&one_minus, n - k);
        }
    }
    total
}

/// Minimum cover weight by trying every set partition of the members: each
/// block is covered by its common intersection, the best piece that covers it.
pub fn partition_cover_oracle(family: &[u64], q: &Q) -> Q {
    fn go(family: &[u64], q: &Q, i: usize, blocks: &mut Vec<u64>, best: &mut Option<Q>) {
        if i == family.len() {
            let w: Q = blocks.iter().map(|b| Pow::pow(q, b.count_ones() as usize)).sum();
            if best.as_ref().map_or(true, |b| &w < b) {
                *best = Some(w);
            }
            return;
        }
        for k in 0..blocks.len() {
            let saved = blocks[k];
            blocks[k] &= family[i];
            go(family, q, i + 1, blocks, best);
            blocks[k] = saved;
        }
        blocks.push(family[i]);
        go(family, q, i + 1, blocks, best);
        blocks.pop();
    }
    let mut best = None;
    go(family, q, 0, &mut Vec::new(), &mut best);
    best.unwrap_or_else(Q::zero)
}

/// Lexicographic comparison of ascending element lists.
pub fn lex_less(a: u64, b: u64) -> bool {
    elements(a) < elements(b)
}

/// `F(S)` under the lexicographic rule, and `F*(S)`.
pub fn naive_choice(family: &[u64], w: u64, s: u64) -> (u64, u64) {
    let residues: Vec<u64> = family.iter().map(|x| x & !w).collect();
    let minimal = naive_minimal(&residues);
    let f = minimal
        .iter()
        .copied()
        .filter(|&f| is_sub(f, s & !w))
        .fold(None, |best: Option<u64>, f| match best {
            Some(b) if !lex_less(f, b) => Some(b),
            _ => Some(f),
        })
        .expect("a minimal residue lies below S \\ W");
    let core = naive_core(family, w | f).expect("W ∪ F is in the upset");
    (f, s & core)
}

/// Large family for `(W, t)` under the lexicographic rule, deduplicated.
pub fn naive_large(family: &[u64], w: u64, t: usize) -> Vec<u64> {
    let mut out: Vec<u64> = family
        .iter()
        .map(|&s| naive_choice(family, w, s))
        .filter(|(f, _)| f.count_ones() as usize >= t)
        .map(|(_, fs)| fs)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `E[Σ_{F ∈ large(W, t)} q^{|F|}]` by summing over every `W`.
pub fn naive_expectation(family: &[u64], n: usize, p: &Q, qq: &Q, t: usize) -> Q {
    let one_minus = Q::one() - p;
    let mut total = Q::zero();
    for w in 0u64..1 << n {
        let k = w.count_ones() as usize;
        let weight: Q = naive_large(family, w, t)
            .iter()
            .map(|f| Pow::pow(qq, f.count_ones() as usize))
            .sum();
        if !weight.is_zero() {
            total += weight * Pow::pow(p, k) * Pow::pow(&one_minus, n - k);
        }
    }
    total
}

/// Smoothed iterated logarithm straight from the interval definition, for
/// arguments up to `2^64 - 1`: towers 2, 4, 16, 65536, 2^65536 and split
/// points 3, 8, 256, 2^256; the split is continued downwards below 2.
pub fn oracle_log_star_twice(x: u128) -> u64 {
    assert!(x >= 1);
    match x {
        1 => 1,
        2 => 3,
        3 => 4,
        4 => 5,
        5..=8 => 6,
        9..=16 => 7,
        17..=256 => 8,
        257..=65536 => 9,
        // (2^16, 2^256]: t = 4 first half
        _ => 10,
    }
}

/// Deterministic random uniform family on `n` elements with members of size
/// at most `ell`.
pub fn random_masks(rng: &mut ChaCha8Rng, n: usize, ell: usize, size: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(size);
    let total = 1u64 << n;
    let cap = (0..total).filter(|m| m.count_ones() as usize <= ell).count();
    let size = size.min(cap);
    while out.len() < size {
        let m = rng.gen_range(0..total);
        if m.count_ones() as usize <= ell && !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
