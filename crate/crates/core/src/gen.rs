//! Constructions and random generators: the extremal tree family, padding to
//! uniform size, and seeded corpora for property checks.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand::seq::index;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{ElementSubset, MAX_GROUND};
use crate::error::{Error, Result};
use crate::setsystem::SetSystem;
use crate::vc::{sauer_shelah_bound, vc_at_most};

/// The edge sets of the leaf-to-root paths of a complete `(r-1)`-ary tree of
/// depth `ell`.
///
/// The family has `(r-1)^ell` members of size `ell`, VC-dimension one when
/// `r >= 3`, and no `r`-sunflower. Edges are labelled `parent:child-index`,
/// where nodes are named by their path from `root`, and indexed level by level.
pub fn tree_family(r: usize, ell: usize) -> Result<SetSystem> {
    if r < 2 || ell < 1 {
        return Err(Error::Precondition(format!(
            "tree family needs r >= 2 and ell >= 1, got r = {r}, ell = {ell}"
        )));
    }
    let arity = r - 1;
    let mut level_sizes = Vec::with_capacity(ell);
    let mut edges = 0usize;
    let mut width = 1usize;
    for _ in 0..ell {
        width = width.checked_mul(arity).filter(|&w| w <= MAX_GROUND).ok_or(
            Error::LimitExceeded {
                what: "tree edge count",
                actual: usize::MAX,
                limit: MAX_GROUND,
                hint: "",
            },
        )?;
        level_sizes.push(width);
        edges += width;
    }
    if edges > MAX_GROUND {
        return Err(Error::LimitExceeded {
            what: "tree edge count",
            actual: edges,
            limit: MAX_GROUND,
            hint: "",
        });
    }

    let mut labels = Vec::with_capacity(edges);
    let mut parents = vec!["root".to_string()];
    for _ in 0..ell {
        let mut children = Vec::with_capacity(parents.len() * arity);
        for parent in &parents {
            for i in 0..arity {
                labels.push(format!("{parent}:{i}"));
                children.push(format!("{parent}.{i}"));
            }
        }
        parents = children;
    }

    let leaves = level_sizes[ell - 1];
    let members = (0..leaves).map(|leaf| {
        let mut path = ElementSubset::empty();
        let mut offset = 0;
        for (depth, &size) in level_sizes.iter().enumerate() {
            // Index of the depth-`depth` ancestor edge within its level.
            let within = leaf / arity.pow((ell - 1 - depth) as u32);
            path.insert(offset + within);
            offset += size;
        }
        path
    });
    Ok(SetSystem::from_parts(labels, members.collect()))
}

/// Pads every set to exactly `ell` elements with fresh elements private to
/// that set, numbered upwards from `ground_size`.
pub(crate) fn pad_members(
    sets: &[ElementSubset],
    ground_size: usize,
    ell: usize,
) -> Result<Vec<ElementSubset>> {
    let needed: usize = sets
        .iter()
        .map(|s| ell.checked_sub(s.len()))
        .sum::<Option<usize>>()
        .ok_or_else(|| Error::Precondition(format!("padding target {ell} is below a member size")))?;
    if ground_size + needed > MAX_GROUND {
        return Err(Error::LimitExceeded {
            what: "padded ground size",
            actual: ground_size + needed,
            limit: MAX_GROUND,
            hint: "",
        });
    }
    let mut next = ground_size;
    Ok(sets
        .iter()
        .map(|s| {
            let mut padded = *s;
            while padded.len() < ell {
                padded.insert(next);
                next += 1;
            }
            padded
        })
        .collect())
}

/// A padded family together with what is needed to undo the padding.
#[derive(Clone, Debug)]
pub struct Padded {
    pub system: SetSystem,
    /// Elements with index below this are original; the rest are padding.
    pub original_ground: usize,
}

impl Padded {
    pub fn strip(&self, set: &ElementSubset) -> ElementSubset {
        set.intersection(&ElementSubset::full(self.original_ground))
    }

    pub fn is_padding(&self, element: usize) -> bool {
        element >= self.original_ground
    }

    /// The original family; member `i` of the padded system maps to member `i`.
    pub fn back_map(&self) -> SetSystem {
        let labels = self.system.labels()[..self.original_ground].to_vec();
        let members = self.system.members().iter().map(|s| self.strip(s)).collect();
        SetSystem::from_parts(labels, members)
    }
}

/// Pads each member with fresh, member-private elements up to size `ell`.
pub fn pad_to_uniform(h: &SetSystem, ell: usize) -> Result<Padded> {
    let members = pad_members(h.members(), h.ground_size(), ell)?;
    let taken: HashSet<&str> = h.labels().iter().map(String::as_str).collect();
    let mut prefix = String::from("~pad");
    while taken.iter().any(|l| l.starts_with(prefix.as_str())) {
        prefix.push('~');
    }
    let extra = members.iter().map(|m| m.len()).sum::<usize>() - h.members().iter().map(|m| m.len()).sum::<usize>();
    let mut labels = h.labels().to_vec();
    labels.extend((0..extra).map(|k| format!("{prefix}{k}")));
    Ok(Padded {
        system: SetSystem::from_parts(labels, members),
        original_ground: h.ground_size(),
    })
}

/// Which random family to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Distinct uniformly random subsets of size at most `ell`.
    UniformRandom,
    /// Root paths of distinct nodes in a random forest of depth at most `ell`;
    /// always VC-dimension at most one.
    ForestPath,
    /// Uniformly random subsets of size at most `ell`, each kept only if the
    /// family stays at VC-dimension at most one.
    RejectionVc1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n: usize,
    pub ell: usize,
    pub family_size: usize,
    pub seed: u64,
    pub kind: GeneratorKind,
}

/// Draws a family on elements `"0" .. "n-1"`; a pure function of the config.
pub fn random_family(cfg: &GeneratorConfig) -> Result<SetSystem> {
    if cfg.n > MAX_GROUND {
        return Err(Error::LimitExceeded {
            what: "ground size",
            actual: cfg.n,
            limit: MAX_GROUND,
            hint: "",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let members = match cfg.kind {
        GeneratorKind::UniformRandom => uniform(cfg, &mut rng)?,
        GeneratorKind::ForestPath => forest_paths(cfg, &mut rng)?,
        GeneratorKind::RejectionVc1 => filtered_vc1(cfg, &mut rng)?,
    };
    Ok(SetSystem::from_masks(cfg.n, members))
}

/// `count` families with seeds `seed ^ i`, generated in parallel.
pub fn corpus(cfg: &GeneratorConfig, count: usize) -> Result<Vec<SetSystem>> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            random_family(&GeneratorConfig {
                seed: cfg.seed ^ i as u64,
                ..*cfg
            })
        })
        .collect()
}

/// Samples a uniform subset of size at most `ell`.
struct BoundedSubsets {
    n: usize,
    sizes: WeightedIndex<f64>,
}

impl BoundedSubsets {
    fn new(n: usize, ell: usize) -> Self {
        let ell = ell.min(n);
        let mut weights = Vec::with_capacity(ell + 1);
        let mut binom = 1f64;
        for k in 0..=ell {
            weights.push(binom);
            binom = binom * (n - k) as f64 / (k + 1) as f64;
        }
        BoundedSubsets {
            n,
            sizes: WeightedIndex::new(weights).expect("binomial weights are positive"),
        }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> ElementSubset {
        let k = self.sizes.sample(rng);
        index::sample(rng, self.n, k).into_iter().collect()
    }
}

fn uniform(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<Vec<ElementSubset>> {
    let ell = cfg.ell.min(cfg.n);
    let available = sauer_shelah_bound(cfg.n, ell)?;
    if BigUint::from(cfg.family_size) > available {
        return Err(Error::Precondition(format!(
            "cannot draw {} distinct sets of size <= {} from {} elements",
            cfg.family_size, ell, cfg.n
        )));
    }
    if cfg.family_size == 0 {
        return Ok(Vec::new());
    }
    let available = available.to_usize().unwrap_or(usize::MAX);
    if cfg.n <= 20 && 2 * cfg.family_size > available {
        // Dense request: enumerate everything and pick.
        let all: Vec<ElementSubset> = (0u64..1 << cfg.n)
            .filter(|m| m.count_ones() as usize <= ell)
            .map(ElementSubset::from_mask)
            .collect();
        return Ok(all.choose_multiple(rng, cfg.family_size).copied().collect());
    }
    let sampler = BoundedSubsets::new(cfg.n, ell);
    let mut seen = HashSet::with_capacity(cfg.family_size);
    let mut members = Vec::with_capacity(cfg.family_size);
    let mut budget = 1000 * cfg.family_size + 1000;
    while members.len() < cfg.family_size {
        if budget == 0 {
            return Err(Error::Generator("uniform sampling budget exhausted".into()));
        }
        budget -= 1;
        let s = sampler.sample(rng);
        if seen.insert(s) {
            members.push(s);
        }
    }
    Ok(members)
}

fn forest_paths(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<Vec<ElementSubset>> {
    if cfg.family_size > cfg.n + usize::from(cfg.ell == 0) || (cfg.ell == 0 && cfg.family_size > 1) {
        return Err(Error::Precondition(format!(
            "a forest on {} nodes of depth <= {} has too few root paths for {} sets",
            cfg.n, cfg.ell, cfg.family_size
        )));
    }
    if cfg.ell == 0 {
        return Ok(vec![ElementSubset::empty(); cfg.family_size]);
    }
    let mut paths: Vec<ElementSubset> = Vec::with_capacity(cfg.n);
    for node in 0..cfg.n {
        let open: Vec<usize> = (0..node).filter(|&p| paths[p].len() < cfg.ell).collect();
        let parent = if open.is_empty() || rng.gen_bool(0.2) {
            None
        } else {
            open.choose(rng).copied()
        };
        let path = match parent {
            Some(p) => paths[p].with(node),
            None => ElementSubset::empty().with(node),
        };
        paths.push(path);
    }
    let mut picked = index::sample(rng, cfg.n, cfg.family_size).into_vec();
    picked.sort_unstable();
    Ok(picked.into_iter().map(|i| paths[i]).collect())
}

fn filtered_vc1(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<Vec<ElementSubset>> {
    let sampler = BoundedSubsets::new(cfg.n, cfg.ell);
    let mut members: Vec<ElementSubset> = Vec::with_capacity(cfg.family_size);
    let mut budget = 200 * cfg.family_size + 200;
    while members.len() < cfg.family_size {
        if budget == 0 {
            return Err(Error::Generator(format!(
                "rejection sampling found only {} of {} sets with VC-dimension <= 1",
                members.len(),
                cfg.family_size
            )));
        }
        budget -= 1;
        let s = sampler.sample(rng);
        if members.contains(&s) {
            continue;
        }
        members.push(s);
        if !vc_at_most(&SetSystem::from_masks(cfg.n, members.iter().copied()), 1) {
            members.pop();
        }
    }
    Ok(members)
}
