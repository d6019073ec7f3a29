//! Finite posets stored as strict up-set and down-set bit vectors.

mod ideals;
mod iso;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use iso::CanonicalKey;

/// An element of the bounded extension `P̂`: the poset plus a new global
/// minimum and maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HatElement {
    Bottom,
    Element(usize),
    Top,
}

/// A finite partially ordered set on the indices `0..n`.
///
/// The full order is kept as strict up-sets and down-sets; covers are the
/// transitive reduction of that order and are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
}

/// Longest ascending chain lengths on `P̂`, with `value(Top) == 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthFunction {
    elements: Vec<usize>,
    bottom: usize,
}

impl DepthFunction {
    pub fn value(&self, at: HatElement) -> usize {
        match at {
            HatElement::Bottom => self.bottom,
            HatElement::Element(i) => self.elements[i],
            HatElement::Top => 0,
        }
    }

    /// Values on the elements of `P`, indexed like the poset.
    pub fn element_values(&self) -> &[usize] {
        &self.elements
    }
}

pub(crate) fn default_label(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("e{i}")
    }
}

impl Poset {
    /// Builds a poset from element names and any generating set of relations
    /// `(lower, upper)`.
    pub fn from_relations<S: AsRef<str>>(names: &[S], relations: &[(S, S)]) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.as_ref(), i).is_some() {
                return Err(Error::DuplicateElement(name.as_ref().to_string()));
            }
        }
        let lookup = |name: &S| {
            index
                .get(name.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownElement(name.as_ref().to_string()))
        };
        let pairs = relations
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let labels = names.iter().map(|s| s.as_ref().to_string()).collect();
        Self::from_index_relations(labels, &pairs)
    }

    /// Builds a poset on `0..n` with default labels `a, b, c, ...`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::UnknownElement(format!("index {}", a.max(b))));
        }
        Self::from_index_relations((0..n).map(default_label).collect(), pairs)
    }

    pub(crate) fn from_index_relations(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &(lo, hi) in pairs {
            if lo != hi {
                above[lo].insert(hi);
            }
        }
        // Warshall closure, one pivot at a time.
        for k in 0..n {
            let via = above[k].clone();
            for set in above.iter_mut() {
                if set.contains(k) {
                    set.union_with(&via);
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| above[i].contains(i)) {
            return Err(Error::Cycle(labels[i].clone()));
        }
        Ok(Self::from_closed(labels, above))
    }

    /// `above` must already be a strict, transitively closed order.
    pub(crate) fn from_closed(labels: Vec<String>, above: Vec<FixedBitSet>) -> Self {
        let n = labels.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (i, set) in above.iter().enumerate() {
            for j in set.ones() {
                below[j].insert(i);
            }
        }
        let mut covers = Vec::new();
        for (i, up) in above.iter().enumerate() {
            for j in up.ones() {
                if up.is_disjoint(&below[j]) {
                    covers.push((i, j));
                }
            }
        }
        Poset {
            labels,
            above,
            below,
            covers,
        }
    }

    pub fn empty() -> Self {
        Self::from_closed(Vec::new(), Vec::new())
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_pairs(n, &pairs).expect("a chain is acyclic")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_pairs(n, &[]).expect("no relations")
    }

    /// Disjoint union; the elements of `other` are shifted after those of `self`
    /// and relabeled with default labels.
    pub fn disjoint_union(&self, other: &Poset) -> Self {
        let shift = self.len();
        let pairs: Vec<_> = self
            .covers
            .iter()
            .copied()
            .chain(other.covers.iter().map(|&(a, b)| (a + shift, b + shift)))
            .collect();
        Self::from_pairs(shift + other.len(), &pairs).expect("union of posets is acyclic")
    }

    /// The subposet induced on `elements`, in the given order.
    pub fn induced(&self, elements: &[usize]) -> Self {
        let m = elements.len();
        let labels = elements.iter().map(|&e| self.labels[e].clone()).collect();
        let above = elements
            .iter()
            .map(|&e| {
                let mut set = FixedBitSet::with_capacity(m);
                for (k, &f) in elements.iter().enumerate() {
                    if self.above[e].contains(f) {
                        set.insert(k);
                    }
                }
                set
            })
            .collect();
        Self::from_closed(labels, above)
    }

    /// The poset with every element renamed; lengths must agree.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len(), "label count must match element count");
        self.labels = labels;
        self
    }

    pub fn dual(&self) -> Self {
        Self::from_closed(self.labels.clone(), self.below.clone())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Cover relations `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Strict up-set of `i`.
    pub fn above(&self, i: usize) -> &FixedBitSet {
        &self.above[i]
    }

    /// Strict down-set of `i`.
    pub fn below(&self, i: usize) -> &FixedBitSet {
        &self.below[i]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.lt(j, i)
    }

    /// Number of pairs `i < j`.
    pub fn relation_count(&self) -> usize {
        self.above.iter().map(|s| s.count_ones(..)).sum()
    }

    pub fn upper_covers(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.0 == i).map(|c| c.1)
    }

    pub fn lower_covers(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.1 == i).map(|c| c.0)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.below[i].is_clear()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.above[i].is_clear()).collect()
    }

    /// A linear extension: every element appears after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.below[i].count_ones(..), i));
        order
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut height = vec![0; self.len()];
        for i in self.linear_extension() {
            height[i] = self.lower_covers(i).map(|j| height[j] + 1).max().unwrap_or(0);
        }
        height
    }

    /// Length of the longest chain starting at each element.
    pub fn up_depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for i in self.linear_extension().into_iter().rev() {
            depth[i] = self.upper_covers(i).map(|j| depth[j] + 1).max().unwrap_or(0);
        }
        depth
    }

    fn nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyPoset)
        } else {
            Ok(())
        }
    }

    /// Maximum number of covering steps in a chain.
    pub fn rank(&self) -> Result<usize> {
        self.nonempty()?;
        Ok(self.heights().into_iter().max().unwrap_or(0))
    }

    /// True iff every maximal chain has length `rank`.
    pub fn is_pure(&self) -> Result<bool> {
        let rank = self.rank()?;
        let mut shortest = vec![0usize; self.len()];
        for i in self.linear_extension() {
            shortest[i] = self.lower_covers(i).map(|j| shortest[j] + 1).min().unwrap_or(0);
        }
        Ok(self.maximal_elements().into_iter().all(|m| shortest[m] == rank))
    }

    /// Elements comparable with every other element.
    pub fn universally_comparable(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&i| self.above[i].count_ones(..) + self.below[i].count_ones(..) == n - 1)
            .collect()
    }

    /// True iff no element is comparable with all others. A one-element poset
    /// is not simple.
    pub fn is_simple(&self) -> Result<bool> {
        self.nonempty()?;
        Ok(self.universally_comparable().is_empty())
    }

    /// Removes elements comparable with all others until none remain. The
    /// result is empty exactly when `self` is a chain.
    pub fn simplify(&self) -> Poset {
        let mut current = self.clone();
        loop {
            let drop = current.universally_comparable();
            if drop.is_empty() {
                return current;
            }
            let keep: Vec<usize> = (0..current.len()).filter(|i| !drop.contains(i)).collect();
            current = current.induced(&keep);
        }
    }

    pub fn is_chain(&self) -> bool {
        self.universally_comparable().len() == self.len()
    }

    /// A chain of maximum length, bottom first; ties go to the
    /// lexicographically smallest index sequence.
    pub fn max_chain(&self) -> Result<Vec<usize>> {
        let rank = self.rank()?;
        let depth = self.up_depths();
        let mut current = (0..self.len())
            .find(|&i| depth[i] == rank)
            .expect("some element starts a longest chain");
        let mut chain = vec![current];
        while depth[current] > 0 {
            current = self
                .upper_covers(current)
                .filter(|&j| depth[j] + 1 == depth[current])
                .min()
                .expect("longest chains continue through an upper cover");
            chain.push(current);
        }
        Ok(chain)
    }

    /// The depth function on `P̂`: each element's longest ascending chain to
    /// the added top.
    pub fn depth_function(&self) -> Result<DepthFunction> {
        let rank = self.rank()?;
        let elements = self.up_depths().into_iter().map(|d| d + 1).collect();
        Ok(DepthFunction {
            elements,
            bottom: rank + 2,
        })
    }

    /// Order relation on `P̂`.
    pub fn hat_lt(&self, a: HatElement, b: HatElement) -> bool {
        use HatElement::*;
        match (a, b) {
            (Bottom, Bottom) | (Top, _) | (_, Bottom) => false,
            (Bottom, _) | (_, Top) => true,
            (Element(i), Element(j)) => self.lt(i, j),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn v_poset() -> Poset {
        Poset::from_relations(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap()
    }

    /// Every maximal chain, by walking covers from minimal elements.
    fn maximal_chain_lengths(p: &Poset) -> Vec<usize> {
        fn walk(p: &Poset, at: usize, len: usize, out: &mut Vec<usize>) {
            let ups: Vec<_> = p.upper_covers(at).collect();
            if ups.is_empty() {
                out.push(len);
            }
            for u in ups {
                walk(p, u, len + 1, out);
            }
        }
        let mut out = Vec::new();
        for m in p.minimal_elements() {
            walk(p, m, 0, &mut out);
        }
        out
    }

    #[test]
    fn closure_and_reduction() {
        let anti = Poset::from_relations::<&str>(&["a", "b"], &[]).unwrap();
        assert_eq!(anti.len(), 2);
        assert!(anti.covers().is_empty());

        let chain =
            Poset::from_relations(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(chain.covers(), &[(0, 1), (1, 2)]);
        assert!(chain.lt(0, 2));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Poset::from_relations(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::Cycle("a".into()))
        );
        assert_eq!(
            Poset::from_relations(&["a", "b"], &[("a", "z")]),
            Err(Error::UnknownElement("z".into()))
        );
        assert_eq!(
            Poset::from_relations::<&str>(&["a", "a"], &[]),
            Err(Error::DuplicateElement("a".into()))
        );
        assert!(matches!(Poset::from_pairs(2, &[(0, 2)]), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Poset::chain(4).rank(), Ok(3));
        assert_eq!(Poset::antichain(3).rank(), Ok(0));
        assert_eq!(v_poset().rank(), Ok(1));
        assert_eq!(Poset::empty().rank(), Err(Error::EmptyPoset));
    }

    #[test]
    fn purity_examples() {
        assert_eq!(Poset::antichain(3).is_pure(), Ok(true));
        let c2_pt = Poset::chain(2).disjoint_union(&Poset::antichain(1));
        assert_eq!(c2_pt.is_pure(), Ok(false));
        let two_chains = Poset::chain(2).disjoint_union(&Poset::chain(2));
        assert_eq!(two_chains.is_pure(), Ok(true));
        assert_eq!(Poset::empty().is_pure(), Err(Error::EmptyPoset));
    }

    #[test]
    fn purity_matches_chain_walk() {
        let samples = [
            v_poset(),
            v_poset().dual(),
            Poset::from_pairs(5, &[(0, 1), (1, 2), (0, 3), (3, 4), (2, 4)]).unwrap(),
            Poset::from_pairs(4, &[(0, 2), (1, 2), (1, 3)]).unwrap(),
            Poset::from_pairs(4, &[(0, 1), (1, 2), (0, 3)]).unwrap(),
        ];
        for p in samples {
            let lengths = maximal_chain_lengths(&p);
            let rank = p.rank().unwrap();
            assert_eq!(p.is_pure().unwrap(), lengths.iter().all(|&l| l == rank), "{p:?}");
        }
    }

    #[test]
    fn simplicity_examples() {
        assert_eq!(Poset::antichain(2).is_simple(), Ok(true));
        assert_eq!(v_poset().is_simple(), Ok(false));
        let c3_pt = Poset::chain(3).disjoint_union(&Poset::antichain(1));
        assert_eq!(c3_pt.is_simple(), Ok(true));
        assert_eq!(Poset::antichain(1).is_simple(), Ok(false));
        assert_eq!(Poset::empty().is_simple(), Err(Error::EmptyPoset));
    }

    #[test]
    fn simplify_examples() {
        let s = v_poset().simplify();
        assert_eq!(s.labels(), &["a", "b"]);
        assert!(s.covers().is_empty());
        assert!(Poset::chain(4).simplify().is_empty());
        let simple = Poset::chain(3).disjoint_union(&Poset::antichain(1));
        assert_eq!(simple.simplify(), simple);
    }

    #[test]
    fn max_chain_examples() {
        assert_eq!(Poset::chain(3).max_chain(), Ok(vec![0, 1, 2]));
        assert_eq!(Poset::antichain(3).max_chain(), Ok(vec![0]));
        let p = Poset::antichain(1).disjoint_union(&Poset::chain(3));
        assert_eq!(p.max_chain(), Ok(vec![1, 2, 3]));
        // two longest chains 0<1<3 and 0<2<3; the smaller index wins
        let diamond = Poset::from_pairs(4, &[(0, 2), (0, 1), (1, 3), (2, 3)]).unwrap();
        assert_eq!(diamond.max_chain(), Ok(vec![0, 1, 3]));
    }

    #[test]
    fn depth_function_examples() {
        let d = Poset::antichain(2).depth_function().unwrap();
        assert_eq!(d.value(HatElement::Top), 0);
        assert_eq!(d.value(HatElement::Element(0)), 1);
        assert_eq!(d.value(HatElement::Element(1)), 1);
        assert_eq!(d.value(HatElement::Bottom), 2);

        let d = Poset::chain(2).depth_function().unwrap();
        assert_eq!(d.element_values(), &[2, 1]);
        assert_eq!(d.value(HatElement::Bottom), 3);
    }

    #[test]
    fn depth_function_is_strictly_order_reversing() {
        let p = Poset::from_pairs(5, &[(0, 1), (1, 2), (0, 3), (3, 4)]).unwrap();
        let d = p.depth_function().unwrap();
        let hat: Vec<HatElement> = std::iter::once(HatElement::Bottom)
            .chain((0..p.len()).map(HatElement::Element))
            .chain(std::iter::once(HatElement::Top))
            .collect();
        for &a in &hat {
            for &b in &hat {
                if p.hat_lt(a, b) {
                    assert!(d.value(b) < d.value(a));
                }
            }
        }
        assert_eq!(d.value(HatElement::Bottom), p.rank().unwrap() + 2);
    }
}
