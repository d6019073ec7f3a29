//! Finite lattices and the Birkhoff correspondence between posets and
//! distributive lattices.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::poset::Poset;

/// A finite lattice with precomputed meet and join tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    order: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    /// For lattices of down-sets: the down-set behind each element.
    ideal_map: Option<Vec<FixedBitSet>>,
}

fn set_label(poset: &Poset, set: &FixedBitSet) -> String {
    let names: Vec<&str> = set.ones().map(|i| poset.label(i)).collect();
    format!("{{{}}}", names.join(","))
}

impl Lattice {
    /// Interprets a poset as a lattice, computing meets and joins from the
    /// order. Fails if some pair lacks a unique glb or lub.
    pub fn from_order(order: Poset) -> Result<Self> {
        let m = order.len();
        if m == 0 {
            return Err(Error::EmptyPoset);
        }
        let with_self = |set: &FixedBitSet, i: usize| {
            let mut s = set.clone();
            s.insert(i);
            s
        };
        let downs: Vec<FixedBitSet> = (0..m).map(|i| with_self(order.below(i), i)).collect();
        let ups: Vec<FixedBitSet> = (0..m).map(|i| with_self(order.above(i), i)).collect();
        // Among the common lower bounds of a and b, the meet is the one whose
        // own down-set contains all of them; dually for joins.
        let bound = |family: &[FixedBitSet], a: usize, b: usize| {
            let mut common = family[a].clone();
            common.intersect_with(&family[b]);
            common.ones().find(|&x| common.is_subset(&family[x]))
        };
        let mut meet = vec![0; m * m];
        let mut join = vec![0; m * m];
        for a in 0..m {
            for b in a..m {
                let lo = bound(&downs, a, b).ok_or_else(|| {
                    Error::NotALattice(order.label(a).into(), order.label(b).into(), "meet")
                })?;
                let hi = bound(&ups, a, b).ok_or_else(|| {
                    Error::NotALattice(order.label(a).into(), order.label(b).into(), "join")
                })?;
                meet[a * m + b] = lo;
                meet[b * m + a] = lo;
                join[a * m + b] = hi;
                join[b * m + a] = hi;
            }
        }
        let bottom = (0..m).find(|&i| order.below(i).is_clear()).expect("nonempty");
        let top = (0..m).find(|&i| order.above(i).is_clear()).expect("nonempty");
        if order.minimal_elements().len() != 1 || order.maximal_elements().len() != 1 {
            return Err(Error::NotALattice(
                order.label(bottom).into(),
                order.label(top).into(),
                "bound",
            ));
        }
        Ok(Lattice {
            order,
            meet,
            join,
            bottom,
            top,
            ideal_map: None,
        })
    }

    /// The lattice of down-sets of `poset` under inclusion, with union and
    /// intersection as join and meet.
    pub fn ideal_lattice(poset: &Poset, caps: &Caps) -> Result<Self> {
        let ideals = poset.order_ideals(caps)?;
        let m = ideals.len();
        if m > caps.lattice_elements {
            return Err(Error::cap("lattice", m, caps.lattice_elements));
        }
        let index: HashMap<&FixedBitSet, usize> =
            ideals.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let above = ideals
            .iter()
            .map(|a| {
                let mut set = FixedBitSet::with_capacity(m);
                for (j, b) in ideals.iter().enumerate() {
                    if a != b && a.is_subset(b) {
                        set.insert(j);
                    }
                }
                set
            })
            .collect();
        let labels = ideals.iter().map(|s| set_label(poset, s)).collect();
        let order = Poset::from_closed(labels, above);
        let mut meet = vec![0; m * m];
        let mut join = vec![0; m * m];
        for (a, sa) in ideals.iter().enumerate() {
            for (b, sb) in ideals.iter().enumerate().skip(a) {
                let mut down = sa.clone();
                down.intersect_with(sb);
                let lo = index[&down];
                let mut up = sa.clone();
                up.union_with(sb);
                let hi = index[&up];
                meet[a * m + b] = lo;
                meet[b * m + a] = lo;
                join[a * m + b] = hi;
                join[b * m + a] = hi;
            }
        }
        Ok(Lattice {
            order,
            meet,
            join,
            bottom: 0,
            top: m - 1,
            ideal_map: Some(ideals),
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The underlying partial order.
    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn ideal_map(&self) -> Option<&[FixedBitSet]> {
        self.ideal_map.as_deref()
    }

    /// Number of pairs `a < b`.
    pub fn comparable_pairs(&self) -> usize {
        self.order.relation_count()
    }

    /// Join-irreducible elements, found both from the definition and as the
    /// elements with exactly one lower cover; the two must agree.
    pub fn join_irreducible_elements(&self) -> Result<Vec<usize>> {
        let m = self.len();
        let mut reducible = vec![false; m];
        reducible[self.bottom] = true;
        for b in 0..m {
            for c in 0..m {
                let j = self.join(b, c);
                if j != b && j != c {
                    reducible[j] = true;
                }
            }
        }
        let by_definition: Vec<usize> = (0..m).filter(|&a| !reducible[a]).collect();
        let by_covers: Vec<usize> = (0..m)
            .filter(|&a| self.order.lower_covers(a).count() == 1)
            .collect();
        if by_definition != by_covers {
            return Err(Error::InternalInconsistency(format!(
                "join-irreducibles by definition {by_definition:?} differ from single-lower-cover elements {by_covers:?}"
            )));
        }
        Ok(by_definition)
    }

    /// The subposet of join-irreducible elements.
    pub fn join_irreducibles(&self) -> Result<Poset> {
        Ok(self.order.induced(&self.join_irreducible_elements()?))
    }

    /// For each element `a`, the join-irreducibles below it, indexed like
    /// `join_irreducibles()`.
    pub fn irreducible_downsets(&self) -> Result<Vec<FixedBitSet>> {
        let irreducibles = self.join_irreducible_elements()?;
        Ok((0..self.len())
            .map(|a| {
                let mut set = FixedBitSet::with_capacity(irreducibles.len());
                for (k, &j) in irreducibles.iter().enumerate() {
                    if self.leq(j, a) {
                        set.insert(k);
                    }
                }
                set
            })
            .collect())
    }

    /// Checks `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` on every triple.
    pub fn is_distributive(&self, caps: &Caps) -> Result<bool> {
        let m = self.len();
        if m > caps.distributive_check {
            return Err(Error::cap("distributive", m, caps.distributive_check));
        }
        Ok(self.distributivity_violation().is_none())
    }

    /// First triple violating distributivity, if any.
    pub fn distributivity_violation(&self) -> Option<(usize, usize, usize)> {
        let m = self.len();
        for a in 0..m {
            for b in 0..m {
                let ab = self.meet(a, b);
                for c in b + 1..m {
                    if self.meet(a, self.join(b, c)) != self.join(ab, self.meet(a, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Lattice isomorphism via canonical forms of the underlying orders.
    pub fn is_isomorphic(&self, other: &Lattice, caps: &Caps) -> Result<bool> {
        for l in [self, other] {
            if l.len() > caps.lattice_isomorphism {
                return Err(Error::cap("lattice-iso", l.len(), caps.lattice_isomorphism));
            }
        }
        if self.len() != other.len() || self.comparable_pairs() != other.comparable_pairs() {
            return Ok(false);
        }
        Ok(self.order.canonical_labeling().1 == other.order.canonical_labeling().1)
    }

    /// Whether `L ≅ I(J(L))`. Fails with `NotDistributive` on
    /// non-distributive input.
    pub fn birkhoff_roundtrip(&self, caps: &Caps) -> Result<bool> {
        if !self.is_distributive(caps)? {
            return Err(Error::NotDistributive);
        }
        let rebuilt = Lattice::ideal_lattice(&self.join_irreducibles()?, caps)?;
        self.is_isomorphic(&rebuilt, caps)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn lattice_from_pairs(n: usize, pairs: &[(usize, usize)]) -> Lattice {
        Lattice::from_order(Poset::from_pairs(n, pairs).unwrap()).unwrap()
    }

    pub(crate) fn m3() -> Lattice {
        lattice_from_pairs(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    }

    pub(crate) fn n5() -> Lattice {
        lattice_from_pairs(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
    }

    fn two_chains() -> Poset {
        Poset::chain(2).disjoint_union(&Poset::chain(2))
    }

    fn assert_lattice_laws(l: &Lattice) {
        let m = l.len();
        for a in 0..m {
            assert_eq!(l.meet(a, a), a);
            assert_eq!(l.join(a, a), a);
            for b in 0..m {
                assert_eq!(l.meet(a, b), l.meet(b, a));
                assert_eq!(l.join(a, b), l.join(b, a));
                assert_eq!(l.meet(a, l.join(a, b)), a, "absorption");
                assert_eq!(l.join(a, l.meet(a, b)), a, "absorption");
                assert_eq!(l.leq(a, b), l.meet(a, b) == a);
                for c in 0..m {
                    assert_eq!(l.meet(l.meet(a, b), c), l.meet(a, l.meet(b, c)));
                    assert_eq!(l.join(l.join(a, b), c), l.join(a, l.join(b, c)));
                }
            }
            assert!(l.leq(l.bottom(), a) && l.leq(a, l.top()));
        }
    }

    #[test]
    fn ideal_lattice_examples() {
        let caps = Caps::default();
        let b2 = Lattice::ideal_lattice(&Poset::antichain(2), &caps).unwrap();
        assert_eq!(b2.len(), 4);
        assert_eq!(b2.order().covers().len(), 4);
        let l = Lattice::ideal_lattice(&Poset::chain(2).disjoint_union(&Poset::antichain(1)), &caps)
            .unwrap();
        assert_eq!(l.len(), 6);
        let grid = Lattice::ideal_lattice(&two_chains(), &caps).unwrap();
        assert_eq!(grid.len(), 9);
        // the 3x3 grid has 12 covers
        assert_eq!(grid.order().covers().len(), 12);
        for lat in [&b2, &l, &grid] {
            assert_lattice_laws(lat);
        }
    }

    #[test]
    fn ideal_lattice_tables_are_union_and_intersection() {
        let p = Poset::from_pairs(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        let l = Lattice::ideal_lattice(&p, &Caps::default()).unwrap();
        let sets = l.ideal_map().unwrap();
        for a in 0..l.len() {
            for b in 0..l.len() {
                let mut u = sets[a].clone();
                u.union_with(&sets[b]);
                assert_eq!(sets[l.join(a, b)], u);
                let mut i = sets[a].clone();
                i.intersect_with(&sets[b]);
                assert_eq!(sets[l.meet(a, b)], i);
            }
        }
    }

    #[test]
    fn ideal_lattice_cap() {
        let caps = Caps {
            lattice_elements: 7,
            ..Caps::default()
        };
        assert!(matches!(
            Lattice::ideal_lattice(&Poset::antichain(3), &caps),
            Err(Error::SizeCapExceeded { cap: "lattice", .. })
        ));
    }

    #[test]
    fn from_order_rejects_non_lattices() {
        let bowtie = Poset::from_pairs(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(matches!(Lattice::from_order(bowtie), Err(Error::NotALattice(..))));
        assert!(matches!(
            Lattice::from_order(Poset::antichain(2)),
            Err(Error::NotALattice(..))
        ));
        let l = m3();
        assert_lattice_laws(&l);
        assert_eq!(l.join(1, 2), 4);
        assert_eq!(l.meet(1, 2), 0);
    }

    #[test]
    fn join_irreducible_examples() {
        let caps = Caps::default();
        let b2 = Lattice::ideal_lattice(&Poset::antichain(2), &caps).unwrap();
        let j = b2.join_irreducibles().unwrap();
        assert_eq!(j.len(), 2);
        assert!(j.covers().is_empty());

        let chain_lattice = Lattice::from_order(Poset::chain(5)).unwrap();
        let j = chain_lattice.join_irreducibles().unwrap();
        assert_eq!(j.len(), 4);
        assert!(j.is_chain());

        let p = Poset::from_pairs(4, &[(0, 1), (0, 2), (3, 2)]).unwrap();
        let l = Lattice::ideal_lattice(&p, &caps).unwrap();
        let j = l.join_irreducibles().unwrap();
        assert_eq!(j.is_isomorphic(&p, &caps), Ok(true));
    }

    #[test]
    fn irreducibles_of_ideal_lattice_are_principal() {
        let p = Poset::from_pairs(5, &[(0, 1), (1, 2), (0, 3), (4, 3)]).unwrap();
        let l = Lattice::ideal_lattice(&p, &Caps::default()).unwrap();
        let sets = l.ideal_map().unwrap();
        let mut principal: Vec<FixedBitSet> = (0..p.len())
            .map(|i| {
                let mut s = p.below(i).clone();
                s.insert(i);
                s
            })
            .collect();
        let mut found: Vec<FixedBitSet> = l
            .join_irreducible_elements()
            .unwrap()
            .into_iter()
            .map(|a| sets[a].clone())
            .collect();
        principal.sort_by_key(|s| s.ones().collect::<Vec<_>>());
        found.sort_by_key(|s| s.ones().collect::<Vec<_>>());
        assert_eq!(principal, found);
    }

    #[test]
    fn corrupted_join_table_is_detected() {
        let mut l = Lattice::ideal_lattice(&Poset::antichain(2), &Caps::default()).unwrap();
        // pretend the two atoms join to one of them
        let (x, y) = (1, 2);
        l.join[x * 4 + y] = y;
        l.join[y * 4 + x] = y;
        assert!(matches!(
            l.join_irreducible_elements(),
            Err(Error::InternalInconsistency(_))
        ));
    }

    #[test]
    fn distributivity_examples() {
        let caps = Caps::default();
        let grid = Lattice::ideal_lattice(&two_chains(), &caps).unwrap();
        assert_eq!(grid.is_distributive(&caps), Ok(true));
        // M3: 1 ∧ (2 ∨ 3) = 1 ∧ top = 1, but (1 ∧ 2) ∨ (1 ∧ 3) = bottom
        let l = m3();
        assert_eq!(l.meet(1, l.join(2, 3)), 1);
        assert_eq!(l.join(l.meet(1, 2), l.meet(1, 3)), 0);
        assert_eq!(l.is_distributive(&caps), Ok(false));
        // N5 with chain 0<1<2<4 and side 3: 2 ∧ (1 ∨ 3) = 2, (2 ∧ 1) ∨ (2 ∧ 3) = 1
        let l = n5();
        assert_eq!(l.meet(2, l.join(1, 3)), 2);
        assert_eq!(l.join(l.meet(2, 1), l.meet(2, 3)), 1);
        assert_eq!(l.is_distributive(&caps), Ok(false));
        let tight = Caps {
            distributive_check: 4,
            ..caps
        };
        assert!(grid.is_distributive(&tight).is_err());
    }

    #[test]
    fn roundtrip_examples() {
        let caps = Caps::default();
        let b2 = Lattice::ideal_lattice(&Poset::antichain(2), &caps).unwrap();
        assert_eq!(b2.birkhoff_roundtrip(&caps), Ok(true));
        // the grid given only as an order, without ideal bookkeeping
        let grid_order = Lattice::ideal_lattice(&two_chains(), &caps).unwrap().order().clone();
        let grid = Lattice::from_order(grid_order).unwrap();
        assert!(grid.ideal_map().is_none());
        assert_eq!(grid.birkhoff_roundtrip(&caps), Ok(true));
        assert!(grid
            .join_irreducibles()
            .unwrap()
            .is_isomorphic(&two_chains(), &caps)
            .unwrap());
        assert_eq!(m3().birkhoff_roundtrip(&caps), Err(Error::NotDistributive));
    }

    #[test]
    fn lattice_isomorphism_distinguishes_duals() {
        let caps = Caps::default();
        let p = Poset::from_pairs(3, &[(0, 2), (1, 2)]).unwrap();
        let a = Lattice::ideal_lattice(&p, &caps).unwrap();
        let b = Lattice::ideal_lattice(&p.dual(), &caps).unwrap();
        assert_eq!(a.is_isomorphic(&b, &caps), Ok(false));
        let c = Lattice::from_order(a.order().dual()).unwrap();
        assert_eq!(b.is_isomorphic(&c, &caps), Ok(true));
    }
}
