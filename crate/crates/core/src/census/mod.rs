//! Enumeration of unlabeled posets and filtered searches over them.

mod figure;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::invariants::{analyze, InvariantReport};
use crate::poset::{CanonicalKey, Poset};

pub use figure::{
    figure1_family, figure1_matches, figure1_templates, figure2_lattices, maximum_chains,
    off_chain_shapes,
    FamilyTemplate, OffChainShape,
};

/// All isomorphism classes of posets of each size `0..=n`, as canonical
/// representatives sorted by canonical key.
///
/// Every `n`-element poset has a maximal element, so each class arises from
/// an `(n-1)`-element class by adding a new element above one of its
/// down-sets.
pub fn enumerate_up_to(n: usize, caps: &Caps) -> Result<Vec<Vec<Poset>>> {
    if n > caps.census_elements {
        return Err(Error::cap("census", n, caps.census_elements));
    }
    let mut levels = vec![vec![Poset::empty()]];
    for size in 1..=n {
        let children = levels[size - 1]
            .par_iter()
            .map(|parent| {
                parent
                    .order_ideals(caps)?
                    .into_iter()
                    .map(|down| {
                        let pairs: Vec<(usize, usize)> =
                            down.ones().map(|p| (p, parent.len())).collect();
                        let mut covers = parent.covers().to_vec();
                        covers.extend(pairs);
                        let child = Poset::from_pairs(size, &covers)?;
                        let (canon, key) = child.canonical_poset(caps)?;
                        Ok((key, canon))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let unique: BTreeMap<CanonicalKey, Poset> = children.into_iter().flatten().collect();
        levels.push(unique.into_values().collect());
    }
    Ok(levels)
}

/// Isomorphism classes of `n`-element posets.
pub fn enumerate_posets(n: usize, caps: &Caps) -> Result<Vec<Poset>> {
    if n == 0 {
        return Err(Error::PreconditionViolated("census sizes start at 1".into()));
    }
    Ok(enumerate_up_to(n, caps)?.pop().unwrap_or_default())
}

/// One conjunct of a census query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    Simple,
    Pure,
    /// `reg I_L = k` with `I_L ≠ 0`.
    Reg(i64),
    LinearResolution,
    Gorenstein,
    ExtremalGorenstein,
    /// `|P| - rank P = k`, chains included.
    KValue(i64),
}

impl Filter {
    pub fn accepts(&self, report: &InvariantReport) -> bool {
        match *self {
            Filter::Simple => report.flags.simple,
            Filter::Pure => report.flags.pure,
            Filter::Reg(k) => !report.ideal_is_zero && report.regularity == k,
            Filter::LinearResolution => report.flags.linear_resolution,
            Filter::Gorenstein => report.flags.gorenstein,
            Filter::ExtremalGorenstein => report.flags.extremal_gorenstein,
            Filter::KValue(k) => report.k_value() == k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusQuery {
    pub n_min: usize,
    pub n_max: usize,
    pub filters: Vec<Filter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusEntry {
    pub poset: Poset,
    pub report: InvariantReport,
}

/// Classes with `n_min <= |P| <= n_max` passing every filter, ordered by size
/// and canonical key.
pub fn census(query: &CensusQuery, caps: &Caps) -> Result<Vec<CensusEntry>> {
    if query.n_min == 0 || query.n_min > query.n_max {
        return Err(Error::PreconditionViolated(format!(
            "size range {}..={} must satisfy 1 <= n_min <= n_max",
            query.n_min, query.n_max
        )));
    }
    let levels = enumerate_up_to(query.n_max, caps)?;
    let mut out = Vec::new();
    for level in &levels[query.n_min..] {
        let hits = level
            .par_iter()
            .map(|poset| {
                let report = analyze(poset, caps)?;
                Ok(query
                    .filters
                    .iter()
                    .all(|f| f.accepts(&report))
                    .then(|| CensusEntry {
                        poset: poset.clone(),
                        report,
                    }))
            })
            .collect::<Result<Vec<_>>>()?;
        out.extend(hits.into_iter().flatten());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    /// Every naturally labeled poset on `0..n` (relations only go from smaller
    /// to larger index), deduplicated by canonical form.
    fn labeled_class_count(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let caps = Caps::default();
        let mut keys = BTreeSet::new();
        for mask in 0u32..1 << pairs.len() {
            let chosen: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let transitive = chosen.iter().all(|&(a, b)| {
                chosen
                    .iter()
                    .filter(|&&(c, _)| c == b)
                    .all(|&(_, d)| chosen.contains(&(a, d)))
            });
            if transitive {
                let p = Poset::from_pairs(n, &chosen).unwrap();
                keys.insert(p.canonical_form(&caps).unwrap());
            }
        }
        keys.len()
    }

    #[test]
    fn class_counts() {
        let caps = Caps::default();
        let counts: Vec<usize> = enumerate_up_to(6, &caps)
            .unwrap()
            .iter()
            .map(Vec::len)
            .collect();
        assert_eq!(counts, [1, 1, 2, 5, 16, 63, 318]);
    }

    #[test]
    fn labeled_path_agrees() {
        let caps = Caps::default();
        for n in 1..=5 {
            assert_eq!(
                enumerate_posets(n, &caps).unwrap().len(),
                labeled_class_count(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn enumeration_is_sound_and_deterministic() {
        let caps = Caps::default();
        let first = enumerate_posets(5, &caps).unwrap();
        assert_eq!(first, enumerate_posets(5, &caps).unwrap());
        for p in &first {
            assert_eq!(p.len(), 5);
            assert_eq!(p.canonical_poset(&caps).unwrap().0, *p);
        }
    }

    #[test]
    fn enumeration_caps() {
        let caps = Caps::default();
        assert!(matches!(
            enumerate_posets(9, &caps),
            Err(Error::SizeCapExceeded { cap: "census", .. })
        ));
        assert!(enumerate_posets(0, &caps).is_err());
    }

    #[test]
    fn linear_resolution_census() {
        let caps = Caps::default();
        let q = CensusQuery {
            n_min: 1,
            n_max: 6,
            filters: vec![Filter::Simple, Filter::Reg(2)],
        };
        let hits = census(&q, &caps).unwrap();
        let sizes: Vec<usize> = hits.iter().map(|e| e.poset.len()).collect();
        assert_eq!(sizes, [2, 3, 4, 5, 6]);
        for e in hits {
            let expected = Poset::chain(e.poset.len() - 1).disjoint_union(&Poset::antichain(1));
            assert_eq!(e.poset.is_isomorphic(&expected, &caps), Ok(true));
        }
    }

    #[test]
    fn k3_census_has_two_off_chain_elements() {
        let caps = Caps::default();
        let q = CensusQuery {
            n_min: 4,
            n_max: 4,
            filters: vec![Filter::Simple, Filter::KValue(3)],
        };
        let hits = census(&q, &caps).unwrap();
        assert!(!hits.is_empty());
        for e in hits {
            let chain = e.poset.max_chain().unwrap();
            assert_eq!(e.poset.len() - chain.len(), 2);
        }
    }

    #[test]
    fn rejects_bad_range() {
        let q = CensusQuery {
            n_min: 4,
            n_max: 3,
            filters: vec![],
        };
        assert!(matches!(census(&q, &Caps::default()), Err(Error::PreconditionViolated(_))));
    }
}
