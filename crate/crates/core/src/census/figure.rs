//! Matching posets against the six families of simple posets with
//! `|P| - rank P = 3`, and the extremal Gorenstein lattices.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{census, CensusQuery, Filter};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::poset::Poset;

/// How the two elements off a maximum chain sit relative to each other and
/// to the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OffChainShape {
    /// `q ∥ q'`; `attached` of them are comparable with some chain element.
    Incomparable { attached: usize },
    /// `q < q'`.
    Chain {
        lower_attached: bool,
        upper_attached: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct FamilyTemplate {
    pub tag: String,
    pub picture: String,
    pub shape: OffChainShape,
}

#[derive(Deserialize)]
struct TemplateFile {
    templates: Vec<FamilyTemplate>,
}

/// The six templates, in family order.
pub fn figure1_templates() -> &'static [FamilyTemplate] {
    static TEMPLATES: OnceLock<Vec<FamilyTemplate>> = OnceLock::new();
    TEMPLATES.get_or_init(|| {
        let file: TemplateFile =
            serde_json::from_str(include_str!("../../resources/figure1_templates.json"))
                .expect("bundled template file is valid");
        file.templates
    })
}

/// Every chain of maximum length, bottom first.
pub fn maximum_chains(poset: &Poset) -> Result<Vec<Vec<usize>>> {
    let rank = poset.rank()?;
    let depth = poset.up_depths();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..poset.len())
        .filter(|&i| depth[i] == rank)
        .map(|i| vec![i])
        .collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        if depth[last] == 0 {
            out.push(chain);
            continue;
        }
        for next in poset.upper_covers(last).filter(|&j| depth[j] + 1 == depth[last]) {
            let mut longer = chain.clone();
            longer.push(next);
            stack.push(longer);
        }
    }
    out.sort();
    Ok(out)
}

fn shape_for(poset: &Poset, chain: &[usize]) -> Option<OffChainShape> {
    let off: Vec<usize> = (0..poset.len()).filter(|i| !chain.contains(i)).collect();
    let &[a, b] = off.as_slice() else {
        return None;
    };
    let attached = |x: usize| chain.iter().any(|&c| poset.comparable(x, c));
    Some(if poset.lt(a, b) || poset.lt(b, a) {
        let (lo, hi) = if poset.lt(a, b) { (a, b) } else { (b, a) };
        OffChainShape::Chain {
            lower_attached: attached(lo),
            upper_attached: attached(hi),
        }
    } else {
        OffChainShape::Incomparable {
            attached: usize::from(attached(a)) + usize::from(attached(b)),
        }
    })
}

fn check_family_precondition(poset: &Poset) -> Result<()> {
    let k = poset.len() as i64 - poset.rank()? as i64;
    if k != 3 {
        return Err(Error::PreconditionViolated(format!("|P| - rank P = {k}, expected 3")));
    }
    if !poset.is_simple()? {
        return Err(Error::PreconditionViolated("poset is not simple".into()));
    }
    Ok(())
}

/// Distinct off-chain shapes over all maximum chains.
pub fn off_chain_shapes(poset: &Poset) -> Result<Vec<OffChainShape>> {
    check_family_precondition(poset)?;
    let mut shapes: Vec<OffChainShape> = Vec::new();
    for chain in maximum_chains(poset)? {
        if let Some(shape) = shape_for(poset, &chain) {
            if !shapes.contains(&shape) {
                shapes.push(shape);
            }
        }
    }
    Ok(shapes)
}

/// Tags of every family `P` fits, over all choices of maximum chain.
pub fn figure1_matches(poset: &Poset) -> Result<Vec<&'static str>> {
    let shapes = off_chain_shapes(poset)?;
    Ok(figure1_templates()
        .iter()
        .filter(|t| shapes.contains(&t.shape))
        .map(|t| t.tag.as_str())
        .collect())
}

/// The lowest-numbered family `P` fits, if any.
pub fn figure1_family(poset: &Poset) -> Result<Option<&'static str>> {
    Ok(figure1_matches(poset)?.first().copied())
}

/// Ideal lattices of the simple pure posets with `|P| - rank P = 3`, sorted
/// by size.
pub fn figure2_lattices(caps: &Caps) -> Result<Vec<Lattice>> {
    let query = CensusQuery {
        n_min: 1,
        n_max: caps.census_elements.min(8),
        filters: vec![Filter::Simple, Filter::Pure, Filter::KValue(3)],
    };
    let mut lattices = census(&query, caps)?
        .iter()
        .map(|entry| Lattice::ideal_lattice(&entry.poset, caps))
        .collect::<Result<Vec<_>>>()?;
    lattices.sort_by_key(Lattice::len);
    Ok(lattices)
}
