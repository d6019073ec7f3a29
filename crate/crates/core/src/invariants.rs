//! Closed-form invariants of the Hibi ring `K[L] = S / I_L`, computed from
//! the poset `P` of join-irreducibles.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::poset::Poset;

/// The binomial `x_a x_b - x_{a∧b} x_{a∨b}` stored as its two monomials,
/// each a sorted pair of variable indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub incomparable: (usize, usize),
    pub meet_join: (usize, usize),
}

/// Presentation of `K[L]`: one variable per lattice element, one quadratic
/// binomial per incomparable pair, and the exponent vector of each variable's
/// image `s · ∏_{p ∈ α} t_p` over the alphabet `s, t_0, ..., t_{|P|-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HibiPresentation {
    pub variables: Vec<String>,
    pub generators: Vec<Binomial>,
    pub torus_weights: Vec<Vec<u32>>,
}

impl HibiPresentation {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Exponent vector of the product of two variables.
    pub fn monomial_weight(&self, (a, b): (usize, usize)) -> Vec<u32> {
        self.torus_weights[a]
            .iter()
            .zip(&self.torus_weights[b])
            .map(|(x, y)| x + y)
            .collect()
    }

    pub fn is_balanced(&self, g: &Binomial) -> bool {
        self.monomial_weight(g.incomparable) == self.monomial_weight(g.meet_join)
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Generators of `I_L` for a distributive lattice. Every generator is
/// checked to lie in the kernel of the torus map before returning.
pub fn hibi_generators(lattice: &Lattice, caps: &Caps) -> Result<HibiPresentation> {
    if !lattice.is_distributive(caps)? {
        return Err(Error::NotDistributive);
    }
    let downsets: Vec<FixedBitSet> = match lattice.ideal_map() {
        Some(map) => map.to_vec(),
        None => lattice.irreducible_downsets()?,
    };
    let torus_weights = downsets
        .iter()
        .map(|set| {
            std::iter::once(1)
                .chain((0..set.len()).map(|p| u32::from(set.contains(p))))
                .collect()
        })
        .collect();
    let m = lattice.len();
    let mut generators = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if !lattice.order().comparable(a, b) {
                generators.push(Binomial {
                    incomparable: (a, b),
                    meet_join: ordered(lattice.meet(a, b), lattice.join(a, b)),
                });
            }
        }
    }
    let presentation = HibiPresentation {
        variables: lattice.order().labels().iter().map(|l| format!("x{l}")).collect(),
        generators,
        torus_weights,
    };
    if let Some(g) = presentation.generators.iter().find(|g| !presentation.is_balanced(g)) {
        return Err(Error::InternalInconsistency(format!(
            "binomial {g:?} is not homogeneous for the torus grading"
        )));
    }
    Ok(presentation)
}

/// Number of binomial generators: the incomparable pairs of `L`.
pub fn generator_count(lattice: &Lattice) -> usize {
    let m = lattice.len();
    m * (m - 1) / 2 - lattice.comparable_pairs()
}

/// `reg I_L = |P| - rank P`, together with whether `I_L = 0` (`P` a chain).
/// For chains the formula value 1 is still returned.
pub fn regularity(poset: &Poset) -> Result<(i64, bool)> {
    let rank = poset.rank()?;
    Ok(((poset.len() - rank) as i64, poset.is_chain()))
}

/// `a(K[L]) = -(rank P + 2)`.
pub fn a_invariant(poset: &Poset) -> Result<i64> {
    Ok(-(poset.rank()? as i64 + 2))
}

pub fn krull_dim(poset: &Poset) -> usize {
    poset.len() + 1
}

/// `pd I_L = |L| - |P| - 2`. For a chain `I_L = 0` and the value is -1.
pub fn proj_dim(poset: &Poset, lattice: &Lattice, caps: &Caps) -> Result<i64> {
    let map = lattice.ideal_map().ok_or(Error::MismatchedPair)?;
    let built_from_poset = map
        .iter()
        .all(|set| set.len() == poset.len() && poset.is_down_set(set))
        && map.len() == poset.order_ideals(caps)?.len();
    if !built_from_poset {
        return Err(Error::MismatchedPair);
    }
    let pd = lattice.len() as i64 - poset.len() as i64 - 2;
    if pd < 0 && !poset.is_chain() {
        return Err(Error::InternalInconsistency(format!(
            "negative projective dimension {pd} for a nonzero ideal"
        )));
    }
    Ok(pd)
}

/// Linear resolution of `I_L` for simple `P`: `P` is a chain plus one
/// isolated element.
pub fn has_linear_resolution(poset: &Poset) -> Result<bool> {
    if !poset.is_simple()? {
        return Err(Error::NotSimple);
    }
    let n = poset.len();
    let isolated = (0..n).find(|&i| poset.above(i).is_clear() && poset.below(i).is_clear());
    Ok(match isolated {
        Some(q) => {
            let rest: Vec<usize> = (0..n).filter(|&i| i != q).collect();
            poset.induced(&rest).is_chain()
        }
        None => false,
    })
}

/// Gorenstein iff `P` is pure.
pub fn is_gorenstein(poset: &Poset) -> Result<bool> {
    poset.is_pure()
}

/// Gorenstein with `reg I_L = 3`.
pub fn is_extremal_gorenstein(poset: &Poset) -> Result<bool> {
    Ok(is_gorenstein(poset)? && regularity(poset)?.0 == 3)
}

/// For simple `P`: take the maximum chain `C₁` from [`Poset::max_chain`]; if
/// the remaining elements form a chain `C₂`, returns `|C₂| + 1`.
pub fn two_chain_regularity(poset: &Poset) -> Result<Option<i64>> {
    if !poset.is_simple()? {
        return Err(Error::NotSimple);
    }
    let longest = poset.max_chain()?;
    let rest: Vec<usize> = (0..poset.len()).filter(|i| !longest.contains(i)).collect();
    let remainder = poset.induced(&rest);
    if !remainder.is_chain() {
        return Ok(None);
    }
    let value = rest.len() as i64 + 1;
    let (formula, _) = regularity(poset)?;
    if value != formula {
        return Err(Error::InternalInconsistency(format!(
            "|C2| + 1 = {value} but |P| - rank P = {formula}"
        )));
    }
    Ok(Some(value))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub simple: bool,
    pub pure: bool,
    pub linear_resolution: bool,
    pub gorenstein: bool,
    pub extremal_gorenstein: bool,
}

/// Everything the closed formulas say about `I_L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub p_size: usize,
    pub rank_p: usize,
    pub lattice_size: usize,
    pub regularity: i64,
    pub ideal_is_zero: bool,
    pub krull_dim: usize,
    pub proj_dim: i64,
    pub a_invariant: i64,
    pub flags: Flags,
}

impl InvariantReport {
    /// `|P| - rank P`, which is the regularity even when `I_L = 0`.
    pub fn k_value(&self) -> i64 {
        self.p_size as i64 - self.rank_p as i64
    }
}

/// Report for `P`, counting `|L|` by enumerating down-sets.
pub fn analyze(poset: &Poset, caps: &Caps) -> Result<InvariantReport> {
    let lattice_size = poset.order_ideals(caps)?.len();
    report_with_lattice_size(poset, lattice_size)
}

/// Report for a distributive lattice given directly.
pub fn analyze_lattice(lattice: &Lattice, caps: &Caps) -> Result<InvariantReport> {
    if !lattice.is_distributive(caps)? {
        return Err(Error::NotDistributive);
    }
    report_with_lattice_size(&lattice.join_irreducibles()?, lattice.len())
}

fn report_with_lattice_size(poset: &Poset, lattice_size: usize) -> Result<InvariantReport> {
    let rank_p = poset.rank()?;
    let (regularity, ideal_is_zero) = regularity(poset)?;
    let pure = poset.is_pure()?;
    let proj_dim = lattice_size as i64 - poset.len() as i64 - 2;
    Ok(InvariantReport {
        p_size: poset.len(),
        rank_p,
        lattice_size,
        regularity,
        ideal_is_zero,
        krull_dim: krull_dim(poset),
        proj_dim,
        a_invariant: a_invariant(poset)?,
        flags: Flags {
            simple: poset.is_simple()?,
            pure,
            linear_resolution: !ideal_is_zero && regularity == 2,
            gorenstein: pure,
            extremal_gorenstein: pure && regularity == 3,
        },
    })
}
