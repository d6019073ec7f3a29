//! Hilbert-series oracle for Hibi rings.
//!
//! `K[L]` has a monomial basis indexed by order-reversing maps `v: P̂ → ℕ`
//! with `v(Top) = 0`, graded by `v(Bottom)`; the canonical module has the
//! basis of strictly order-reversing maps. Everything here is computed from
//! those bases alone, without reference to ranks or lattice sizes, so the
//! results can be held against the closed formulas in [`crate::invariants`].

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::poset::{HatElement, Poset};

/// A map `P̂ → ℕ` with `Top ↦ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderReversingMap {
    elements: Vec<usize>,
    bottom: usize,
}

impl OrderReversingMap {
    pub fn new(elements: Vec<usize>, bottom: usize) -> Self {
        OrderReversingMap { elements, bottom }
    }

    pub fn value(&self, at: HatElement) -> usize {
        match at {
            HatElement::Bottom => self.bottom,
            HatElement::Element(i) => self.elements[i],
            HatElement::Top => 0,
        }
    }

    /// Grading of the basis monomial: the value at the bottom.
    pub fn degree(&self) -> usize {
        self.bottom
    }

    fn hat(poset: &Poset) -> Vec<HatElement> {
        std::iter::once(HatElement::Bottom)
            .chain((0..poset.len()).map(HatElement::Element))
            .chain(std::iter::once(HatElement::Top))
            .collect()
    }

    /// `p > q` implies `v(p) <= v(q)`.
    pub fn is_weak_on(&self, poset: &Poset) -> bool {
        let hat = Self::hat(poset);
        hat.iter().all(|&q| {
            hat.iter()
                .all(|&p| !poset.hat_lt(q, p) || self.value(p) <= self.value(q))
        })
    }

    /// `p > q` implies `v(p) < v(q)`.
    pub fn is_strict_on(&self, poset: &Poset) -> bool {
        let hat = Self::hat(poset);
        hat.iter().all(|&q| {
            hat.iter()
                .all(|&p| !poset.hat_lt(q, p) || self.value(p) < self.value(q))
        })
    }
}

/// Hilbert function, h-polynomial and derived degrees of `K[L]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSummary {
    pub hf: Vec<i128>,
    #[serde(skip)]
    pub d: usize,
    #[serde(rename = "h")]
    pub h_coeffs: Vec<i128>,
    #[serde(rename = "deg_q")]
    pub q_degree: usize,
    #[serde(rename = "a")]
    pub a_invariant_oracle: i64,
    pub reg_oracle: i64,
    pub canonical_min_degree: usize,
    pub symmetric: bool,
}

fn check_caps(poset: &Poset, degree: usize, caps: &Caps) -> Result<()> {
    if poset.is_empty() {
        return Err(Error::EmptyPoset);
    }
    if poset.len() > caps.oracle_elements {
        return Err(Error::cap("oracle", poset.len(), caps.oracle_elements));
    }
    let limit = poset.len() + caps.oracle_degree_slack;
    if degree > limit {
        return Err(Error::cap("oracle-slack", degree, limit));
    }
    Ok(())
}

/// Counts order-reversing maps `P → {0..n}`, the dimension of the degree-`n`
/// part of `K[L]`.
///
/// Elements are assigned top-down along a linear extension; the count below
/// a partial assignment depends only on the values of assigned elements that
/// still have unassigned lower covers, which is the memo key.
pub fn hilbert_function(poset: &Poset, n: usize, caps: &Caps) -> Result<i128> {
    check_caps(poset, n, caps)?;
    HfCounter::new(poset, n).count()
}

struct HfCounter<'a> {
    poset: &'a Poset,
    order: Vec<usize>,
    active: Vec<Vec<usize>>,
    n: usize,
}

impl<'a> HfCounter<'a> {
    fn new(poset: &'a Poset, n: usize) -> Self {
        let mut order = poset.linear_extension();
        order.reverse();
        let mut position = vec![0; poset.len()];
        for (k, &e) in order.iter().enumerate() {
            position[e] = k;
        }
        let active = (0..=order.len())
            .map(|step| {
                order[..step]
                    .iter()
                    .copied()
                    .filter(|&e| poset.lower_covers(e).any(|f| position[f] >= step))
                    .collect()
            })
            .collect();
        HfCounter {
            poset,
            order,
            active,
            n,
        }
    }

    fn count(&self) -> Result<i128> {
        let mut values = vec![0usize; self.order.len()];
        let mut memo = HashMap::new();
        self.extend(0, &mut values, &mut memo)
    }

    fn extend(
        &self,
        step: usize,
        values: &mut [usize],
        memo: &mut HashMap<(usize, Vec<usize>), i128>,
    ) -> Result<i128> {
        if step == self.order.len() {
            return Ok(1);
        }
        let key = (step, self.active[step].iter().map(|&e| values[e]).collect::<Vec<_>>());
        if let Some(&hit) = memo.get(&key) {
            return Ok(hit);
        }
        let e = self.order[step];
        let floor = self.poset.upper_covers(e).map(|u| values[u]).max().unwrap_or(0);
        let mut total: i128 = 0;
        for v in floor..=self.n {
            values[e] = v;
            let below = self.extend(step + 1, values, memo)?;
            total = total.checked_add(below).ok_or(Error::ArithmeticOverflow)?;
        }
        memo.insert(key, total);
        Ok(total)
    }
}

fn binomial(n: usize, k: usize) -> Result<i128> {
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as i128)
            .ok_or(Error::ArithmeticOverflow)?
            / (i as i128 + 1);
    }
    Ok(acc)
}

/// Numerator `Q(t)` of the Hilbert series `Q(t)/(1-t)^d`, `d = |P| + 1`, and
/// everything read off from it.
///
/// Coefficients are computed for `k = 0..=|P|+3`; any nonzero coefficient
/// past `|P|` means the Hilbert function was wrong and is reported as a
/// stabilization failure.
pub fn h_polynomial(poset: &Poset, caps: &Caps) -> Result<HilbertSummary> {
    let top = poset.len() + 3;
    check_caps(poset, top, caps)?;
    let hf = (0..=top)
        .map(|n| HfCounter::new(poset, n).count())
        .collect::<Result<Vec<_>>>()?;
    let d = poset.len() + 1;
    let mut q = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut acc: i128 = 0;
        for j in 0..=k.min(d) {
            let term = binomial(d, j)?
                .checked_mul(hf[k - j])
                .ok_or(Error::ArithmeticOverflow)?;
            acc = if j % 2 == 0 {
                acc.checked_add(term)
            } else {
                acc.checked_sub(term)
            }
            .ok_or(Error::ArithmeticOverflow)?;
        }
        q.push(acc);
    }
    if let Some(index) = (poset.len() + 1..=top).find(|&k| q[k] != 0) {
        return Err(Error::StabilizationFailure {
            index,
            value: q[index],
        });
    }
    let q_degree = (0..=poset.len()).rev().find(|&k| q[k] != 0).unwrap_or(0);
    q.truncate(q_degree + 1);
    if q[0] != 1 || q.iter().any(|&c| c < 0) {
        return Err(Error::InternalInconsistency(format!(
            "h-vector {q:?} is not a nonnegative vector starting with 1"
        )));
    }
    let symmetric = q.iter().eq(q.iter().rev());
    Ok(HilbertSummary {
        hf,
        d,
        q_degree,
        a_invariant_oracle: q_degree as i64 - d as i64,
        reg_oracle: q_degree as i64 + 1,
        canonical_min_degree: canonical_min_degree(poset, caps)?,
        symmetric,
        h_coeffs: q,
    })
}

/// A strictly order-reversing map of least degree, found by trying degrees
/// `0, 1, 2, ...` and searching every assignment at each.
pub fn min_canonical_map(poset: &Poset, caps: &Caps) -> Result<OrderReversingMap> {
    check_caps(poset, 0, caps)?;
    let mut order = poset.linear_extension();
    order.reverse();
    // a linear extension numbered upward from the top is strict with
    // bottom value |P| + 1, so the search always terminates by then
    for degree in 0..=poset.len() + 1 {
        let mut values = vec![0; poset.len()];
        if strict_fill(poset, &order, 0, degree, &mut values) {
            return Ok(OrderReversingMap::new(values, degree));
        }
    }
    Err(Error::InternalInconsistency(
        "no strictly order-reversing map up to degree |P|+1".into(),
    ))
}

fn strict_fill(poset: &Poset, order: &[usize], step: usize, degree: usize, values: &mut [usize]) -> bool {
    if step == order.len() {
        return true;
    }
    let e = order[step];
    let floor = 1 + poset.upper_covers(e).map(|u| values[u]).max().unwrap_or(0);
    for v in floor..degree {
        values[e] = v;
        if strict_fill(poset, order, step + 1, degree, values) {
            return true;
        }
    }
    false
}

/// Least degree in which the canonical module is nonzero.
pub fn canonical_min_degree(poset: &Poset, caps: &Caps) -> Result<usize> {
    Ok(min_canonical_map(poset, caps)?.degree())
}

/// Hilbert polynomial through `HF(0..=|P|+2)` in exact rational arithmetic,
/// lowest coefficient first, trailing zeros removed.
pub fn hilbert_polynomial(poset: &Poset, caps: &Caps) -> Result<Vec<Ratio<i128>>> {
    let last = poset.len() + 2;
    check_caps(poset, last, caps)?;
    let ys = (0..=last)
        .map(|n| HfCounter::new(poset, n).count().map(Ratio::from_integer))
        .collect::<Result<Vec<_>>>()?;
    let mut coeffs = interpolate(&ys)?;
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Interpolates values at `x = 0, 1, ..., len-1` by Newton divided
/// differences, then expands into the monomial basis.
fn interpolate(ys: &[Ratio<i128>]) -> Result<Vec<Ratio<i128>>> {
    let overflow = || Error::ArithmeticOverflow;
    let n = ys.len();
    let mut table = ys.to_vec();
    let mut newton = Vec::with_capacity(n);
    for level in 0..n {
        newton.push(table[0]);
        for i in 0..n - level - 1 {
            let diff = table[i + 1].checked_sub(&table[i]).ok_or_else(overflow)?;
            table[i] = diff / Ratio::from_integer(level as i128 + 1);
        }
    }
    // Horner on the Newton form: p = c_k + (x - k) * p
    let mut poly: Vec<Ratio<i128>> = vec![Ratio::zero(); n];
    for k in (0..n).rev() {
        let shift = Ratio::from_integer(k as i128);
        let mut next = vec![Ratio::zero(); n];
        for (deg, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if deg + 1 < n {
                next[deg + 1] = next[deg + 1].checked_add(c).ok_or_else(overflow)?;
            }
            let scaled = c.checked_mul(&shift).ok_or_else(overflow)?;
            next[deg] = next[deg].checked_sub(&scaled).ok_or_else(overflow)?;
        }
        next[0] = next[0].checked_add(&newton[k]).ok_or_else(overflow)?;
        poly = next;
    }
    Ok(poly)
}

/// Krull dimension read from the degree of the Hilbert polynomial.
pub fn dim_oracle(poset: &Poset, caps: &Caps) -> Result<usize> {
    Ok(hilbert_polynomial(poset, caps)?.len())
}

/// Palindromic h-vector, the Gorenstein criterion for Cohen–Macaulay domains.
pub fn gorenstein_oracle(poset: &Poset, caps: &Caps) -> Result<bool> {
    Ok(h_polynomial(poset, caps)?.symmetric)
}
