//! Isomorphism testing and canonical forms.
//!
//! `is_isomorphic` is a direct backtracking search for an order-preserving
//! bijection. `canonical_form` is an individualization-refinement search
//! that keeps the lexicographically smallest relabeled order matrix. The two
//! are kept independent so each can check the other.

use super::Poset;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Isomorphism-invariant key of a finite order: element count plus the
/// strict order matrix under a canonical labeling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: usize,
    bits: Vec<u64>,
}

impl CanonicalKey {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

impl Poset {
    /// Per-element invariants preserved by every isomorphism.
    fn element_invariants(&self) -> Vec<(usize, usize, usize, usize)> {
        let heights = self.heights();
        let depths = self.up_depths();
        (0..self.len())
            .map(|i| {
                (
                    heights[i],
                    depths[i],
                    self.above(i).count_ones(..),
                    self.below(i).count_ones(..),
                )
            })
            .collect()
    }

    /// Brute-force isomorphism test with invariant pruning.
    pub fn is_isomorphic(&self, other: &Poset, caps: &Caps) -> Result<bool> {
        for p in [self, other] {
            if p.len() > caps.isomorphism {
                return Err(Error::cap("iso", p.len(), caps.isomorphism));
            }
        }
        if self.len() != other.len() || self.relation_count() != other.relation_count() {
            return Ok(false);
        }
        let mine = self.element_invariants();
        let theirs = other.element_invariants();
        let mut a = mine.clone();
        let mut b = theirs.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(false);
        }
        let mut image = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        Ok(self.extend_map(other, &mine, &theirs, 0, &mut image, &mut used))
    }

    fn extend_map(
        &self,
        other: &Poset,
        mine: &[(usize, usize, usize, usize)],
        theirs: &[(usize, usize, usize, usize)],
        next: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if next == self.len() {
            return true;
        }
        for cand in 0..other.len() {
            if used[cand] || mine[next] != theirs[cand] {
                continue;
            }
            let consistent = (0..next).all(|u| {
                self.lt(u, next) == other.lt(image[u], cand)
                    && self.lt(next, u) == other.lt(cand, image[u])
            });
            if !consistent {
                continue;
            }
            image[next] = cand;
            used[cand] = true;
            if self.extend_map(other, mine, theirs, next + 1, image, used) {
                return true;
            }
            used[cand] = false;
        }
        image[next] = usize::MAX;
        false
    }

    /// Canonical key; equal exactly for isomorphic posets.
    pub fn canonical_form(&self, caps: &Caps) -> Result<CanonicalKey> {
        if self.len() > caps.isomorphism {
            return Err(Error::cap("iso", self.len(), caps.isomorphism));
        }
        Ok(self.canonical_labeling().1)
    }

    /// The poset relabeled into canonical order, with default labels.
    pub fn canonical_poset(&self, caps: &Caps) -> Result<(Poset, CanonicalKey)> {
        if self.len() > caps.isomorphism {
            return Err(Error::cap("iso", self.len(), caps.isomorphism));
        }
        let (order, key) = self.canonical_labeling();
        let mut position = vec![0; order.len()];
        for (pos, &v) in order.iter().enumerate() {
            position[v] = pos;
        }
        let pairs: Vec<_> = self
            .covers()
            .iter()
            .map(|&(a, b)| (position[a], position[b]))
            .collect();
        let poset = Poset::from_pairs(self.len(), &pairs).expect("relabeling keeps acyclicity");
        Ok((poset, key))
    }

    /// Canonical element order (`order[pos] = element`) and its key. No cap.
    pub(crate) fn canonical_labeling(&self) -> (Vec<usize>, CanonicalKey) {
        let n = self.len();
        let search = Search {
            poset: self,
            ups: (0..n).map(|i| self.above(i).ones().collect()).collect(),
            downs: (0..n).map(|i| self.below(i).ones().collect()).collect(),
            twin: (0..n)
                .map(|i| {
                    (0..=i)
                        .find(|&j| self.above(j) == self.above(i) && self.below(j) == self.below(i))
                        .unwrap()
                })
                .collect(),
        };
        let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
        search.descend(vec![0; n], &mut best);
        let (bits, order) = best.unwrap_or_default();
        (order, CanonicalKey { n, bits })
    }
}

struct Search<'a> {
    poset: &'a Poset,
    ups: Vec<Vec<usize>>,
    downs: Vec<Vec<usize>>,
    /// Smallest element with the same strict up-set and down-set.
    twin: Vec<usize>,
}

impl Search<'_> {
    /// Splits color classes by the colors of their up- and down-sets until
    /// stable. Colors stay an ordered partition numbered `0..k`.
    fn refine(&self, colors: &mut [u32]) {
        let n = colors.len();
        let mut count = distinct(colors);
        loop {
            let sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n)
                .map(|v| {
                    let mut up: Vec<u32> = self.ups[v].iter().map(|&w| colors[w]).collect();
                    let mut down: Vec<u32> = self.downs[v].iter().map(|&w| colors[w]).collect();
                    up.sort_unstable();
                    down.sort_unstable();
                    (colors[v], up, down)
                })
                .collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut next = 0u32;
            for (k, &v) in order.iter().enumerate() {
                if k > 0 && sigs[v] != sigs[order[k - 1]] {
                    next += 1;
                }
                colors[v] = next;
            }
            let refined = if n == 0 { 0 } else { next as usize + 1 };
            if refined == count {
                return;
            }
            count = refined;
        }
    }

    fn descend(&self, mut colors: Vec<u32>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
        self.refine(&mut colors);
        let n = colors.len();
        let target = {
            let mut sizes = vec![0usize; n];
            for &c in &colors {
                sizes[c as usize] += 1;
            }
            sizes.iter().position(|&s| s > 1)
        };
        let Some(cell) = target else {
            let mut order = vec![0; n];
            for (v, &c) in colors.iter().enumerate() {
                order[c as usize] = v;
            }
            let bits = self.matrix(&order);
            if best.as_ref().is_none_or(|(b, _)| bits < *b) {
                *best = Some((bits, order));
            }
            return;
        };
        let cell = cell as u32;
        let mut tried = Vec::new();
        for v in 0..n {
            if colors[v] != cell || tried.contains(&self.twin[v]) {
                continue;
            }
            tried.push(self.twin[v]);
            let child = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| if c < cell || w == v { c } else { c + 1 })
                .collect();
            self.descend(child, best);
        }
    }

    fn matrix(&self, order: &[usize]) -> Vec<u64> {
        let n = order.len();
        let mut bits = vec![0u64; (n * n).div_ceil(64)];
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                if self.poset.lt(a, b) {
                    let k = i * n + j;
                    bits[k / 64] |= 1 << (k % 64);
                }
            }
        }
        bits
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}
