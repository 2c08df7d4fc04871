//! Finite set systems over labelled ground sets, plus the order-theoretic
//! primitives the rest of the crate builds on: traces, upset membership,
//! inclusion-minimal members and cores.

use std::collections::{HashMap, HashSet};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bits::{Bits, ElementSubset, MAX_GROUND};
use crate::error::{Error, Result};

/// A ground set of labelled elements together with a family of distinct
/// subsets of it.
///
/// Elements are indexed in the order their labels were given. Members keep the
/// order of their first occurrence; indices into [`SetSystem::members`] are what
/// sunflower certificates refer to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    labels: Vec<String>,
    members: Vec<ElementSubset>,
}

impl Serialize for SetSystem {
    /// The structured document `{"ground": [labels], "sets": [[labels]]}`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let sets: Vec<Vec<&str>> = self.members.iter().map(|m| self.labels_of(m)).collect();
        let mut doc = s.serialize_struct("SetSystem", 2)?;
        doc.serialize_field("ground", &self.labels)?;
        doc.serialize_field("sets", &sets)?;
        doc.end()
    }
}

impl SetSystem {
    /// Builds a set system from labelled input.
    ///
    /// Repeated labels inside a set and repeated sets are collapsed.
    pub fn build<G, S, L>(ground: G, sets: S) -> Result<Self>
    where
        G: IntoIterator,
        G::Item: AsRef<str>,
        S: IntoIterator,
        S::Item: IntoIterator<Item = L>,
        L: AsRef<str>,
    {
        let labels: Vec<String> = ground.into_iter().map(|l| l.as_ref().to_owned()).collect();
        if labels.len() > MAX_GROUND {
            return Err(Error::LimitExceeded {
                what: "ground size",
                actual: labels.len(),
                limit: MAX_GROUND,
                hint: "",
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.as_str(), i).is_some() {
                return Err(Error::DuplicateGroundLabel(label.clone()));
            }
        }
        let mut members = Vec::new();
        for set in sets {
            let mut mask = ElementSubset::empty();
            for label in set {
                let label = label.as_ref();
                let &i = index
                    .get(label)
                    .ok_or_else(|| Error::UnknownLabel(label.to_owned()))?;
                mask.insert(i);
            }
            members.push(mask);
        }
        Ok(Self::from_parts(labels, members))
    }

    /// Builds a set system whose ground set is the union of the given sets, in
    /// order of first appearance.
    pub fn from_sets<S, L>(sets: S) -> Result<Self>
    where
        S: IntoIterator,
        S::Item: IntoIterator<Item = L>,
        L: AsRef<str>,
    {
        let sets: Vec<Vec<String>> = sets
            .into_iter()
            .map(|s| s.into_iter().map(|l| l.as_ref().to_owned()).collect())
            .collect();
        let mut ground: Vec<String> = Vec::new();
        let mut seen = HashSet::new();
        for label in sets.iter().flatten() {
            if seen.insert(label.clone()) {
                ground.push(label.clone());
            }
        }
        Self::build(ground, sets)
    }

    /// Builds a set system on elements labelled `"0"`, `"1"`, ... from index
    /// masks. Duplicate masks are collapsed.
    ///
    /// # Panics
    /// If `n > MAX_GROUND` or a mask reaches outside `0..n`.
    pub fn from_masks<I: IntoIterator<Item = ElementSubset>>(n: usize, masks: I) -> Self {
        assert!(n <= MAX_GROUND, "ground size {n} exceeds {MAX_GROUND}");
        let labels = (0..n).map(|i| i.to_string()).collect();
        let full = ElementSubset::full(n);
        let members: Vec<ElementSubset> = masks.into_iter().collect();
        assert!(members.iter().all(|m| m.is_subset(&full)), "mask outside ground");
        Self::from_parts(labels, members)
    }

    /// Same as [`SetSystem::from_masks`] from slices of element indices.
    pub fn from_index_sets(n: usize, sets: &[&[usize]]) -> Self {
        Self::from_masks(n, sets.iter().map(|s| s.iter().copied().collect()))
    }

    /// Reuses `labels` as the ground and deduplicates `members`.
    pub(crate) fn from_parts(labels: Vec<String>, members: Vec<ElementSubset>) -> Self {
        let mut seen = HashSet::with_capacity(members.len());
        let members = members.into_iter().filter(|m| seen.insert(*m)).collect();
        SetSystem { labels, members }
    }

    /// A system on the same ground with different members.
    pub fn with_members<I: IntoIterator<Item = ElementSubset>>(&self, members: I) -> Self {
        Self::from_parts(self.labels.clone(), members.into_iter().collect())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Number of ground elements.
    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    pub fn ground(&self) -> ElementSubset {
        ElementSubset::full(self.labels.len())
    }

    pub fn members(&self) -> &[ElementSubset] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &ElementSubset {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Largest member size (0 for the empty family).
    pub fn ell(&self) -> usize {
        self.members.iter().map(ElementSubset::len).max().unwrap_or(0)
    }

    pub fn contains_member(&self, set: &ElementSubset) -> bool {
        self.members.contains(set)
    }

    pub fn index_of(&self, set: &ElementSubset) -> Option<usize> {
        self.members.iter().position(|m| m == set)
    }

    /// Resolves labels into a subset of this ground.
    pub fn subset<I, L>(&self, labels: I) -> Result<ElementSubset>
    where
        I: IntoIterator<Item = L>,
        L: AsRef<str>,
    {
        let mut mask = ElementSubset::empty();
        for label in labels {
            let label = label.as_ref();
            let i = self
                .labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::UnknownLabel(label.to_owned()))?;
            mask.insert(i);
        }
        Ok(mask)
    }

    /// Labels of the elements of `set`, ascending by index.
    pub fn labels_of(&self, set: &ElementSubset) -> Vec<&str> {
        set.iter().map(|i| self.labels[i].as_str()).collect()
    }

    /// Members as `u64` masks when the ground fits in 64 elements.
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.ground_size() > 64 {
            return None;
        }
        self.members.iter().map(ElementSubset::to_mask).collect()
    }

    pub(crate) fn check_within_ground(&self, set: &ElementSubset, what: &str) -> Result<()> {
        if set.is_subset(&self.ground()) {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{what} is not a subset of the ground set")))
        }
    }
}

/// `{S ∩ U : S ∈ H}` as a set system on the ground `U`, with elements
/// re-indexed in ascending order of their original index.
pub fn trace(h: &SetSystem, u: &ElementSubset) -> Result<SetSystem> {
    h.check_within_ground(u, "trace set")?;
    let old: Vec<usize> = u.iter().collect();
    let labels = old.iter().map(|&i| h.labels[i].clone()).collect();
    let members = trace_members(h.members(), *u)
        .into_iter()
        .map(|s| {
            old.iter()
                .enumerate()
                .filter(|(_, &i)| s.contains(i))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    Ok(SetSystem::from_parts(labels, members))
}

/// Distinct traces `S ∩ U`, kept in the original indexing.
pub(crate) fn trace_members<B: Bits>(members: &[B], u: B) -> Vec<B> {
    let mut seen = HashSet::with_capacity(members.len());
    members
        .iter()
        .map(|s| s.and(u))
        .filter(|t| seen.insert(*t))
        .collect()
}

/// Whether `A` lies in the upset of `H`, i.e. some member is a subset of `A`.
pub fn upset_contains(h: &SetSystem, a: &ElementSubset) -> bool {
    in_upset(h.members(), *a)
}

pub(crate) fn in_upset<B: Bits>(members: &[B], a: B) -> bool {
    members.iter().any(|s| s.subset_of(a))
}

/// The inclusion-minimal members, in their original order.
pub fn minimal_sets(family: &SetSystem) -> SetSystem {
    family.with_members(minimal_members(family.members()))
}

/// Inclusion-minimal elements of a duplicate-free list, order preserved.
pub(crate) fn minimal_members<B: Bits>(members: &[B]) -> Vec<B> {
    members
        .iter()
        .filter(|s| !members.iter().any(|t| t != *s && t.subset_of(**s)))
        .copied()
        .collect()
}

/// The core of `A`: the intersection of all members contained in `A`.
pub fn core(h: &SetSystem, a: &ElementSubset) -> Result<ElementSubset> {
    core_of(h.members(), *a).ok_or_else(|| {
        Error::Precondition("core is only defined for sets in the upset of the family".into())
    })
}

pub(crate) fn core_of<B: Bits>(members: &[B], a: B) -> Option<B> {
    members
        .iter()
        .filter(|s| s.subset_of(a))
        .copied()
        .reduce(|x, y| x.and(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Vec<&'static str> {
        vec!["a", "b", "c"]
    }

    #[test]
    fn build_collapses_duplicates() {
        let h = SetSystem::build(["a", "b"], [vec!["a"], vec!["a"]]).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.labels_of(h.member(0)), vec!["a"]);

        let h = SetSystem::build(abc(), [vec!["a", "b"], vec!["c"]]).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.ell(), 2);

        let h = SetSystem::build(abc(), [vec!["a", "a", "b"], vec!["b", "a"]]).unwrap();
        assert_eq!(h.len(), 1);
    }

    #[test]
    fn build_rejects_bad_labels() {
        assert_eq!(
            SetSystem::build(["a"], [vec!["b"]]),
            Err(Error::UnknownLabel("b".into()))
        );
        assert_eq!(
            SetSystem::build(["a", "a"], Vec::<Vec<&str>>::new()),
            Err(Error::DuplicateGroundLabel("a".into()))
        );
    }

    #[test]
    fn empty_family_has_ell_zero() {
        let h = SetSystem::build(abc(), Vec::<Vec<&str>>::new()).unwrap();
        assert_eq!(h.ell(), 0);
        assert!(!upset_contains(&h, &h.ground()));
        assert!(core(&h, &h.ground()).is_err());
    }

    #[test]
    fn trace_examples() {
        let h = SetSystem::build(abc(), [vec!["a", "b"], vec!["b", "c"]]).unwrap();
        let t = trace(&h, &h.subset(["b"]).unwrap()).unwrap();
        assert_eq!(t.labels(), &["b".to_string()]);
        assert_eq!(t.members(), &[ElementSubset::from_indices([0])]);

        let h = SetSystem::build(abc(), [vec!["a", "b"], vec!["c"]]).unwrap();
        let t = trace(&h, &h.subset(["a", "c"]).unwrap()).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.labels_of(t.member(0)), vec!["a"]);
        assert_eq!(t.labels_of(t.member(1)), vec!["c"]);

        let t = trace(&h, &ElementSubset::empty()).unwrap();
        assert_eq!(t.ground_size(), 0);
        assert_eq!(t.members(), &[ElementSubset::empty()]);
    }

    #[test]
    fn trace_outside_ground_is_rejected() {
        let h = SetSystem::from_index_sets(2, &[&[0]]);
        assert!(trace(&h, &ElementSubset::from_indices([5])).is_err());
    }

    #[test]
    fn upset_examples() {
        let h = SetSystem::build(abc(), [vec!["a", "b"]]).unwrap();
        assert!(upset_contains(&h, &h.subset(["a", "b", "c"]).unwrap()));
        assert!(!upset_contains(&h, &h.subset(["a", "c"]).unwrap()));
        let h = SetSystem::build(abc(), [Vec::<&str>::new()]).unwrap();
        assert!(upset_contains(&h, &ElementSubset::empty()));
    }

    #[test]
    fn minimal_set_examples() {
        let h = SetSystem::build(abc(), [vec!["a"], vec!["a", "b"], vec!["c"]]).unwrap();
        let m = minimal_sets(&h);
        assert_eq!(m.members(), &[h.subset(["a"]).unwrap(), h.subset(["c"]).unwrap()]);

        let anti = SetSystem::build(abc(), [vec!["a", "b"], vec!["b", "c"]]).unwrap();
        assert_eq!(minimal_sets(&anti), anti);

        let h = SetSystem::build(abc(), [vec![], vec!["a"]]).unwrap();
        assert_eq!(minimal_sets(&h).members(), &[ElementSubset::empty()]);
    }

    #[test]
    fn core_examples() {
        let h = SetSystem::build(abc(), [vec!["a", "b"], vec!["a", "c"]]).unwrap();
        assert_eq!(core(&h, &h.ground()).unwrap(), h.subset(["a"]).unwrap());

        let h = SetSystem::build(abc(), [vec!["a", "b"]]).unwrap();
        let ab = h.subset(["a", "b"]).unwrap();
        assert_eq!(core(&h, &ab).unwrap(), ab);

        let h = SetSystem::build(abc(), [vec!["a"], vec!["b"]]).unwrap();
        let ab = h.subset(["a", "b"]).unwrap();
        assert_eq!(core(&h, &ab).unwrap(), ElementSubset::empty());
        assert!(matches!(
            core(&h, &h.subset(["c"]).unwrap()),
            Err(Error::Precondition(_))
        ));
    }
}
