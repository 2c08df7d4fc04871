//! Sunflower certificates and the extraction algorithms: an exact search used
//! as the oracle everywhere else, the Erdős–Rado greedy extractor, the
//! structural witness procedure for families above `(r-1)^ℓ`, its sharp
//! extractor for VC-dimension one, and the random `2r`-partition search for
//! pairwise disjoint members.

use std::collections::HashSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::ElementSubset;
use crate::bounds::vc1_threshold;
use crate::error::{Error, Result};
use crate::gen::pad_members;
use crate::setsystem::SetSystem;
use crate::vc::vc_at_most;

/// `r` distinct members whose pairwise intersections all equal `kernel`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sunflower {
    /// Indices into the members of the family the sunflower was taken from.
    pub members: Vec<usize>,
    pub kernel: ElementSubset,
}

impl Sunflower {
    pub fn r(&self) -> usize {
        self.members.len()
    }

    /// Re-checks the certificate against `h`.
    pub fn validate(&self, h: &SetSystem) -> bool {
        matches!(is_sunflower(h, &self.members), Ok(Some(s)) if s.kernel == self.kernel)
    }

    /// Petals `S_i \ kernel`, in member order.
    pub fn petals(&self, h: &SetSystem) -> Vec<ElementSubset> {
        self.members
            .iter()
            .map(|&i| h.member(i).difference(&self.kernel))
            .collect()
    }
}

/// Two elements and three members realising the traces `{x}`, `{y}` and
/// `{x, y}` on `{x, y}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructWitness {
    pub x: usize,
    pub y: usize,
    pub s_x: usize,
    pub s_y: usize,
    pub s_xy: usize,
}

impl StructWitness {
    /// Checks the three trace equalities against `h`.
    pub fn validate(&self, h: &SetSystem) -> bool {
        let in_range = |i: usize| i < h.len();
        if self.x == self.y || ![self.s_x, self.s_y, self.s_xy].into_iter().all(in_range) {
            return false;
        }
        let pair = ElementSubset::empty().with(self.x).with(self.y);
        h.member(self.s_x).intersection(&pair) == ElementSubset::empty().with(self.x)
            && h.member(self.s_y).intersection(&pair) == ElementSubset::empty().with(self.y)
            && h.member(self.s_xy).intersection(&pair) == pair
    }
}

/// Result of [`witness_or_sunflower`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessOutcome {
    Sunflower(Sunflower),
    Witness(StructWitness),
    /// Only possible when `|H| <= (r-1)^ℓ`.
    Inconclusive,
}

/// Checks whether the given members form a sunflower.
///
/// A single member is a sunflower whose kernel is the member itself.
pub fn is_sunflower(h: &SetSystem, members: &[usize]) -> Result<Option<Sunflower>> {
    if members.is_empty() {
        return Err(Error::Precondition("a sunflower needs at least one member".into()));
    }
    let mut seen = HashSet::with_capacity(members.len());
    for &i in members {
        if i >= h.len() {
            return Err(Error::Precondition(format!(
                "member index {i} out of range for a family of {}",
                h.len()
            )));
        }
        if !seen.insert(i) {
            return Err(Error::Precondition(format!("duplicate member index {i}")));
        }
    }
    if members.len() == 1 {
        return Ok(Some(Sunflower {
            members: members.to_vec(),
            kernel: *h.member(members[0]),
        }));
    }
    let kernel = h.member(members[0]).intersection(h.member(members[1]));
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a + 1..] {
            if h.member(i).intersection(h.member(j)) != kernel {
                return Ok(None);
            }
        }
    }
    Ok(Some(Sunflower {
        members: members.to_vec(),
        kernel,
    }))
}

fn check_r(r: usize, min: usize) -> Result<()> {
    if r < min {
        Err(Error::Precondition(format!("r must be at least {min}, got {r}")))
    } else {
        Ok(())
    }
}

/// For `r <= 2` any `r` distinct members form a sunflower.
fn trivial(h: &SetSystem, r: usize) -> Option<Sunflower> {
    if h.len() < r {
        return None;
    }
    let members: Vec<usize> = (0..r).collect();
    is_sunflower(h, &members).ok().flatten()
}

/// Exact search for an `r`-sunflower.
///
/// For `r >= 2` the kernel is a pairwise intersection of members, so the
/// candidates are `∅` followed by the distinct pairwise intersections. For each
/// candidate the members containing it are searched for `r` pairwise disjoint
/// petals by branch and bound. Kernel candidates are tried in parallel and the
/// first success in candidate order wins.
pub fn find_sunflower_exact(h: &SetSystem, r: usize) -> Result<Option<Sunflower>> {
    check_r(r, 1)?;
    if r <= 2 {
        return Ok(trivial(h, r));
    }
    if h.len() < r {
        return Ok(None);
    }
    let members = h.members();
    let mut kernels = vec![ElementSubset::empty()];
    let mut seen: HashSet<ElementSubset> = kernels.iter().copied().collect();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            let k = a.intersection(b);
            if seen.insert(k) {
                kernels.push(k);
            }
        }
    }
    let found = kernels.par_iter().find_map_first(|kernel| {
        let (ids, petals): (Vec<usize>, Vec<ElementSubset>) = members
            .iter()
            .enumerate()
            .filter(|(_, s)| kernel.is_subset(s))
            .map(|(i, s)| (i, s.difference(kernel)))
            .unzip();
        if ids.len() < r {
            return None;
        }
        let chosen = pack_disjoint(&petals, r)?;
        Some(Sunflower {
            members: chosen.into_iter().map(|p| ids[p]).collect(),
            kernel: *kernel,
        })
    });
    Ok(found)
}

/// Finds `need` pairwise disjoint sets among `petals`, returning positions.
pub(crate) fn pack_disjoint(petals: &[ElementSubset], need: usize) -> Option<Vec<usize>> {
    let cands: Vec<usize> = (0..petals.len()).collect();
    let mut chosen = Vec::with_capacity(need);
    pack_rec(petals, &cands, &mut chosen, need).then_some(chosen)
}

fn pack_rec(
    petals: &[ElementSubset],
    cands: &[usize],
    chosen: &mut Vec<usize>,
    need: usize,
) -> bool {
    if chosen.len() == need {
        return true;
    }
    if chosen.len() + cands.len() < need || chosen.len() + clique_bound(petals, cands) < need {
        return false;
    }
    for (pos, &c) in cands.iter().enumerate() {
        if chosen.len() + cands.len() - pos < need {
            break;
        }
        let next: Vec<usize> = cands[pos + 1..]
            .iter()
            .copied()
            .filter(|&d| petals[d].is_disjoint(&petals[c]))
            .collect();
        chosen.push(c);
        if pack_rec(petals, &next, chosen, need) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Upper bound on a disjoint packing: greedily group the candidates by a
/// shared element; a packing uses at most one set per group.
fn clique_bound(petals: &[ElementSubset], cands: &[usize]) -> usize {
    let mut groups = cands.iter().filter(|&&c| petals[c].is_empty()).count();
    let mut rest: Vec<usize> = cands
        .iter()
        .copied()
        .filter(|&c| !petals[c].is_empty())
        .collect();
    let mut counts = std::collections::HashMap::new();
    while !rest.is_empty() {
        counts.clear();
        for &c in &rest {
            for e in petals[c].iter() {
                *counts.entry(e).or_insert(0usize) += 1;
            }
        }
        let (&best, _) = counts
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .expect("nonempty petals have elements");
        rest.retain(|&c| !petals[c].contains(best));
        groups += 1;
    }
    groups
}

/// Positions of a maximal pairwise disjoint subfamily, built greedily in order.
fn greedy_disjoint(sets: &[ElementSubset]) -> Vec<usize> {
    let mut picked: Vec<usize> = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        if picked.iter().all(|&j| sets[j].is_disjoint(s)) {
            picked.push(i);
        }
    }
    picked
}

/// Erdős–Rado greedy extraction.
///
/// Takes a maximal disjoint subfamily; if it has `r` members they form a
/// sunflower with empty kernel, otherwise the most popular element joins the
/// kernel and the search continues in its link. Always succeeds when
/// `|H| > (r-1)^ℓ ℓ!`.
pub fn extract_er(h: &SetSystem, r: usize) -> Result<Option<Sunflower>> {
    check_r(r, 1)?;
    if r <= 2 {
        return Ok(trivial(h, r));
    }
    let mut ids: Vec<usize> = (0..h.len()).collect();
    let mut sets: Vec<ElementSubset> = h.members().to_vec();
    let mut kernel = ElementSubset::empty();
    while sets.len() >= r {
        let disjoint = greedy_disjoint(&sets);
        if disjoint.len() >= r {
            let members: Vec<usize> = disjoint[..r].iter().map(|&p| ids[p]).collect();
            let found = is_sunflower(h, &members)?;
            debug_assert!(found.as_ref().is_some_and(|s| s.kernel == kernel));
            return Ok(found);
        }
        let mut counts = vec![0usize; h.ground_size()];
        for s in &sets {
            for e in s.iter() {
                counts[e] += 1;
            }
        }
        let Some((popular, _)) = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        else {
            return Ok(None);
        };
        kernel.insert(popular);
        let (next_ids, next_sets) = ids
            .iter()
            .zip(&sets)
            .filter(|(_, s)| s.contains(popular))
            .map(|(&i, s)| (i, s.without(popular)))
            .unzip();
        ids = next_ids;
        sets = next_sets;
    }
    Ok(None)
}

/// Outcome of one structural search, positions relative to its input list.
enum Structure {
    Sunflower(Vec<usize>),
    Witness { x: usize, y: usize, sx: usize, sy: usize, sxy: usize },
    Inconclusive,
}

/// The structural search on an explicit list of distinct sets.
///
/// Sets are padded with private fresh elements to a common size first; the
/// padding never reaches a reported kernel or witness element.
fn structure(sets: &[ElementSubset], ground_size: usize, r: usize) -> Result<Structure> {
    let ell = sets.iter().map(ElementSubset::len).max().unwrap_or(0);
    let padded = pad_members(sets, ground_size, ell)?;
    let mut ids: Vec<usize> = (0..sets.len()).collect();
    let mut cur = padded;
    loop {
        if cur.is_empty() {
            return Ok(Structure::Inconclusive);
        }
        let disjoint = greedy_disjoint(&cur);
        if disjoint.len() >= r {
            return Ok(Structure::Sunflower(
                disjoint[..r].iter().map(|&p| ids[p]).collect(),
            ));
        }
        let meets = |f: &ElementSubset| cur.iter().filter(|s| !s.is_disjoint(f)).count();
        let mut star = disjoint[0];
        let mut best = meets(&cur[star]);
        for &p in &disjoint[1..] {
            let m = meets(&cur[p]);
            if m > best {
                best = m;
                star = p;
            }
        }
        let f_star = cur[star];
        let hit: Vec<usize> = (0..cur.len())
            .filter(|&p| !cur[p].is_disjoint(&f_star))
            .collect();
        if hit.is_empty() {
            return Ok(Structure::Inconclusive);
        }
        let traces: Vec<ElementSubset> = hit.iter().map(|&p| cur[p].intersection(&f_star)).collect();
        for a in 0..hit.len() {
            for b in a + 1..hit.len() {
                let (ea, eb) = (traces[a], traces[b]);
                if !ea.is_subset(&eb) && !eb.is_subset(&ea) {
                    return Ok(Structure::Witness {
                        x: ea.difference(&eb).first().unwrap(),
                        y: eb.difference(&ea).first().unwrap(),
                        sx: ids[hit[a]],
                        sy: ids[hit[b]],
                        sxy: ids[star],
                    });
                }
            }
        }
        let bottom = *traces.iter().min_by_key(|e| e.len()).unwrap();
        ids = hit.iter().map(|&p| ids[p]).collect();
        cur = hit.iter().map(|&p| cur[p].difference(&bottom)).collect();
    }
}

/// Finds an `r`-sunflower or a pair `x, y` with members tracing to `{x}`,
/// `{y}` and `{x, y}`.
///
/// When `|H| > (r-1)^ℓ` the recursive search always finds one of the two.
/// Otherwise, if it ends empty-handed, all pairs are scanned for a witness
/// before reporting [`WitnessOutcome::Inconclusive`].
pub fn witness_or_sunflower(h: &SetSystem, r: usize) -> Result<WitnessOutcome> {
    check_r(r, 2)?;
    Ok(match structure(h.members(), h.ground_size(), r)? {
        Structure::Sunflower(members) => match is_sunflower(h, &members)? {
            Some(s) => WitnessOutcome::Sunflower(s),
            None => unreachable!("disjoint residues always form a sunflower"),
        },
        Structure::Witness { x, y, sx, sy, sxy } => WitnessOutcome::Witness(StructWitness {
            x,
            y,
            s_x: sx,
            s_y: sy,
            s_xy: sxy,
        }),
        Structure::Inconclusive => match direct_witness(h) {
            Some(w) => WitnessOutcome::Witness(w),
            None => WitnessOutcome::Inconclusive,
        },
    })
}

/// Scans all pairs `x < y` for members tracing to `{x}`, `{y}` and `{x, y}`;
/// the least pair and least member indices win.
fn direct_witness(h: &SetSystem) -> Option<StructWitness> {
    let n = h.ground_size();
    let find = |pred: &dyn Fn(&ElementSubset) -> bool| h.members().iter().position(pred);
    (0..n).find_map(|x| {
        (x + 1..n).find_map(|y| {
            let s_xy = find(&|s| s.contains(x) && s.contains(y))?;
            let s_x = find(&|s| s.contains(x) && !s.contains(y))?;
            let s_y = find(&|s| !s.contains(x) && s.contains(y))?;
            Some(StructWitness { x, y, s_x, s_y, s_xy })
        })
    })
}

/// Sharp extraction for families of VC-dimension at most one with more than
/// `(r-1)^ℓ` members.
///
/// Each structural witness `x, y` forces every member to meet `{x, y}`; the
/// element covering at least half the family joins the kernel and the search
/// continues on its link.
pub fn extract_vc1(h: &SetSystem, r: usize) -> Result<Sunflower> {
    check_r(r, 1)?;
    if !vc_at_most(h, 1) {
        return Err(Error::Hypothesis("VC-dimension is at least 2".into()));
    }
    let threshold = vc1_threshold(r as u64, h.ell() as u64)?;
    if BigUint::from(h.len()) <= threshold {
        return Err(Error::Hypothesis(format!(
            "family has {} members, not more than (r-1)^ell = {threshold}",
            h.len()
        )));
    }
    if r <= 2 {
        return Ok(trivial(h, r).expect("family is larger than r - 1"));
    }
    let mut ids: Vec<usize> = (0..h.len()).collect();
    let mut sets: Vec<ElementSubset> = h.members().to_vec();
    loop {
        match structure(&sets, h.ground_size(), r)? {
            Structure::Sunflower(positions) => {
                let members: Vec<usize> = positions.into_iter().map(|p| ids[p]).collect();
                return is_sunflower(h, &members)?.ok_or_else(|| {
                    Error::Hypothesis("extracted members do not form a sunflower".into())
                });
            }
            Structure::Witness { x, y, .. } => {
                let pair = ElementSubset::empty().with(x).with(y);
                if let Some(p) = sets.iter().position(|s| s.is_disjoint(&pair)) {
                    return Err(Error::Hypothesis(format!(
                        "member {} avoids both witness elements, so the VC-dimension is at least 2",
                        ids[p]
                    )));
                }
                let with_x = sets.iter().filter(|s| s.contains(x)).count();
                let z = if 2 * with_x >= sets.len() { x } else { y };
                let (next_ids, next_sets) = ids
                    .iter()
                    .zip(&sets)
                    .filter(|(_, s)| s.contains(z))
                    .map(|(&i, s)| (i, s.without(z)))
                    .unzip();
                ids = next_ids;
                sets = next_sets;
            }
            Structure::Inconclusive => {
                return Err(Error::Hypothesis(
                    "structural search ran out of members; the family is below the threshold"
                        .into(),
                ))
            }
        }
    }
}

/// Looks for `r` pairwise disjoint members by partitioning the ground set into
/// `2r` random parts and keeping parts that contain a whole member.
/// Deterministic for a given seed.
pub fn disjoint_via_partition(
    h: &SetSystem,
    r: usize,
    trials: usize,
    seed: u64,
) -> Result<Option<Sunflower>> {
    check_r(r, 1)?;
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    if h.len() < r {
        return Ok(None);
    }
    let parts = 2 * r;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let empty_member = h.index_of(&ElementSubset::empty());
    for _ in 0..trials {
        let part: Vec<usize> = (0..h.ground_size()).map(|_| rng.gen_range(0..parts)).collect();
        let mut owner: Vec<Option<usize>> = vec![None; parts];
        for (i, s) in h.members().iter().enumerate() {
            let Some(first) = s.first() else { continue };
            let p = part[first];
            if owner[p].is_none() && s.iter().all(|e| part[e] == p) {
                owner[p] = Some(i);
            }
        }
        if let Some(e) = empty_member {
            if let Some(slot) = owner.iter_mut().find(|o| o.is_none()) {
                *slot = Some(e);
            }
        }
        let members: Vec<usize> = owner.into_iter().flatten().take(r).collect();
        if members.len() == r {
            let found = is_sunflower(h, &members)?;
            debug_assert!(r == 1 || found.as_ref().is_some_and(|s| s.kernel.is_empty()));
            return Ok(found);
        }
    }
    Ok(None)
}
