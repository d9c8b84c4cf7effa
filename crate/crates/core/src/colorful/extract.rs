//! Polynomial extraction of a large intersecting subfamily.
//!
//! 1. Build `H_i`, the hypergraph of non-intersecting `(d+1)`-tuples of class `i`.
//! 2. Take a greedy maximal matching `M_i` in each `H_i`.
//! 3. Close `M_i`: while the uncovered vertices do not meet (possible only when
//!    at most `d` remain), add a minimal non-intersecting subset of them.
//! 4. Choose the class minimising `|M_i| / n_i` (smallest index on ties).
//! 5. Return the vertices left uncovered by that matching.
//!
//! Choosing one edge from every closed `M_i` gives `d + 1` non-intersecting
//! subfamilies, one per class, so some colorful tuple formed from them misses;
//! disjoint edges make those colorful tuples distinct. Hence
//! `prod |M_i| <= (1 - alpha) prod n_i`, the smallest ratio is at most
//! `(1 - alpha)^(1/(d+1))`, and since no edge has more than `d + 1` vertices
//! the uncovered set has at least `n_i (1 - (d+1)(1 - alpha)^(1/(d+1)))`
//! members. The closure makes that set intersect in every case.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::build_nonintersecting_hypergraphs;
use super::{BoundValue, ColorClasses, SubfamilyResult};
use crate::error::{Error, Result};
use crate::geometry::{intersect_sets, ConvexSet, FeasibilityResult};
use crate::hypergraph::{greedy_maximal_matching, uncovered_vertices, Hypergraph, Matching};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extraction {
    #[serde(skip)]
    pub hypergraphs: Vec<Hypergraph>,
    /// Greedy maximal matchings of the `H_i`.
    pub matchings: Vec<Matching>,
    /// Extra non-intersecting subfamilies (at most `d` members each) that
    /// close each matching.
    pub closures: Vec<Vec<Vec<usize>>>,
    pub chosen_class: usize,
    /// Vertices of the chosen class covered by neither its matching nor its
    /// closure.
    pub uncovered: Vec<usize>,
    pub subfamily: SubfamilyResult,
}

impl Extraction {
    /// Edges in the closed matching of `class`.
    pub fn closed_matching_len(&self, class: usize) -> usize {
        self.matchings[class].len() + self.closures[class].len()
    }

    pub fn matching_ratio(&self, class: usize) -> Scalar {
        Scalar::new(
            self.closed_matching_len(class).into(),
            self.hypergraphs[class].n().into(),
        )
    }

    /// `prod |M_i|` over closed matchings: a lower bound on the number of
    /// non-intersecting colorful tuples.
    pub fn certified_nonintersecting(&self) -> u128 {
        (0..self.matchings.len())
            .map(|i| self.closed_matching_len(i) as u128)
            .product()
    }

    /// `size >= n_i (1 - (d+1)(1-alpha)^(1/(d+1)))` for the chosen class.
    /// Vacuous when `alpha = 0`.
    pub fn guarantee_holds(&self, alpha: &Scalar, d: usize) -> Result<bool> {
        if !alpha.is_positive() {
            return Ok(true);
        }
        let bound = BoundValue::new(alpha.clone(), d)?;
        Ok(bound.root_term_at_most(&self.subfamily.beta_observed))
    }
}

pub fn extract_intersecting_subfamily(classes: &ColorClasses) -> Result<Extraction> {
    let hypergraphs = build_nonintersecting_hypergraphs(classes)?;
    extract_with_hypergraphs(classes, hypergraphs)
}

/// Deletion filter: shrinks a non-intersecting subfamily to a minimal one.
fn minimal_nonintersecting(class: &[ConvexSet], members: &[usize]) -> Result<Vec<usize>> {
    let mut kept = members.to_vec();
    let mut i = 0;
    while i < kept.len() {
        let without: Vec<usize> = kept.iter().copied().filter(|&v| v != kept[i]).collect();
        let still_empty = !without.is_empty()
            && !intersect_sets(without.iter().map(|&v| &class[v]))?.is_nonempty();
        if still_empty {
            kept = without;
        } else {
            i += 1;
        }
    }
    Ok(kept)
}

/// Closes a matching; returns the closure edges, the final uncovered set and
/// a witness for it (`None` when nothing is left uncovered).
#[allow(clippy::type_complexity)]
fn close_matching(
    class: &[ConvexSet],
    h: &Hypergraph,
    m: &Matching,
) -> Result<(Vec<Vec<usize>>, Vec<usize>, Option<Vec<Scalar>>)> {
    let mut uncovered = uncovered_vertices(h, m)?;
    let mut closure = Vec::new();
    while !uncovered.is_empty() {
        match intersect_sets(uncovered.iter().map(|&v| &class[v]))? {
            FeasibilityResult::Nonempty { witness } => {
                return Ok((closure, uncovered, Some(witness)));
            }
            FeasibilityResult::Empty => {
                if uncovered.len() > h.r() - 1 {
                    return Err(Error::malformed(
                        "uncovered set of a maximal matching does not intersect",
                    ));
                }
                let edge = minimal_nonintersecting(class, &uncovered)?;
                uncovered.retain(|v| !edge.contains(v));
                closure.push(edge);
            }
        }
    }
    Ok((closure, uncovered, None))
}

pub(crate) fn extract_with_hypergraphs(
    classes: &ColorClasses,
    hypergraphs: Vec<Hypergraph>,
) -> Result<Extraction> {
    let matchings: Vec<Matching> = hypergraphs.iter().map(greedy_maximal_matching).collect();
    let mut closures = Vec::with_capacity(matchings.len());
    let mut leftovers = Vec::with_capacity(matchings.len());
    for (i, (h, m)) in hypergraphs.iter().zip(&matchings).enumerate() {
        let (closure, uncovered, witness) = close_matching(classes.class(i), h, m)?;
        closures.push(closure);
        leftovers.push((uncovered, witness));
    }

    let ratio = |i: usize| {
        Scalar::new(
            (matchings[i].len() + closures[i].len()).into(),
            hypergraphs[i].n().into(),
        )
    };
    let mut chosen = 0;
    for i in 1..matchings.len() {
        if ratio(i) < ratio(chosen) {
            chosen = i;
        }
    }

    let n = classes.class(chosen).len();
    let (uncovered, witness) = leftovers.swap_remove(chosen);
    let subfamily = SubfamilyResult {
        class_index: chosen,
        members: uncovered.clone(),
        witness: witness.unwrap_or_else(|| vec![Scalar::zero(); classes.dim()]),
        beta_observed: Scalar::new(uncovered.len().into(), n.into()),
    };

    Ok(Extraction {
        hypergraphs,
        matchings,
        closures,
        chosen_class: chosen,
        uncovered,
        subfamily,
    })
}
