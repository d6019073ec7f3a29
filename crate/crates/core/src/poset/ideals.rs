use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::Poset;
use crate::caps::Caps;
use crate::error::{Error, Result};

impl Poset {
    /// True iff `set` is closed downward.
    pub fn is_down_set(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|p| self.below(p).is_subset(set))
    }

    /// All down-sets, sorted by size and then lexicographically by their
    /// ascending element indices.
    pub fn order_ideals(&self, caps: &Caps) -> Result<Vec<FixedBitSet>> {
        if self.len() > caps.ideal_elements {
            return Err(Error::cap("ideals", self.len(), caps.ideal_elements));
        }
        let n = self.len();
        let empty = FixedBitSet::with_capacity(n);
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(empty.clone());
        queue.push_back(empty);
        // grow each ideal by one minimal element of its complement
        while let Some(ideal) = queue.pop_front() {
            for p in 0..n {
                if !ideal.contains(p) && self.below(p).is_subset(&ideal) {
                    let mut next = ideal.clone();
                    next.insert(p);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        let mut ideals: Vec<FixedBitSet> = seen.into_iter().collect();
        ideals.sort_by_cached_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        Ok(ideals)
    }
}
