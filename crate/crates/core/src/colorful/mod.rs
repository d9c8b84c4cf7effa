//! Colorful and monochromatic tuple counting, the matching-based extraction,
//! exact subfamily maximization and the bound algebra.
//!
//! Colorful tuples are enumerated in mixed-radix order (class 0 most
//! significant), monochromatic tuples in lexicographic order. Tuples are
//! evaluated in parallel; results are collected in enumeration order so counts
//! never depend on scheduling.

mod bounds;
mod extract;
mod maximize;
mod verify;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{intersect_sets, ConvexSet};
use crate::hypergraph::Hypergraph;
use crate::scalar::{serde_ratio, Scalar};

pub use bounds::{beta_lower_bound_holds, beta_upper_bound_holds, BoundValue};
pub use extract::{extract_intersecting_subfamily, Extraction};
pub use maximize::{max_intersecting_subfamily_exact, DEFAULT_MAX_EXACT_N};
pub use verify::{
    colorful_helly_class, verify_theorem, write_sweep_csv, BoundReport, Report, SweepRow,
    VerifyOptions,
};

/// `d + 1` nonempty color classes of convex sets in `R^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClasses {
    dim: usize,
    classes: Vec<Vec<ConvexSet>>,
}

impl ColorClasses {
    pub fn new(dim: usize, classes: Vec<Vec<ConvexSet>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::malformed("dimension must be positive"));
        }
        if classes.len() != dim + 1 {
            return Err(Error::malformed(format!(
                "expected {} color classes in dimension {dim}, got {}",
                dim + 1,
                classes.len()
            )));
        }
        if let Some(i) = classes.iter().position(Vec::is_empty) {
            return Err(Error::malformed(format!("color class {i} is empty")));
        }
        if classes.iter().flatten().any(|s| s.dim() != dim) {
            return Err(Error::malformed("set dimension differs from class dimension"));
        }
        Ok(ColorClasses { dim, classes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn classes(&self) -> &[Vec<ConvexSet>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[ConvexSet] {
        &self.classes[i]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn into_classes(self) -> Vec<Vec<ConvexSet>> {
        self.classes
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionProfile {
    pub intersecting_count: u64,
    pub total_count: u64,
    #[serde(with = "serde_ratio")]
    pub alpha: Scalar,
}

impl IntersectionProfile {
    fn from_flags(flags: &[bool]) -> Self {
        let intersecting = flags.iter().filter(|&&b| b).count() as u64;
        let total = flags.len() as u64;
        IntersectionProfile {
            intersecting_count: intersecting,
            total_count: total,
            alpha: Scalar::new(intersecting.into(), total.max(1).into()),
        }
    }

    pub fn nonintersecting_count(&self) -> u64 {
        self.total_count - self.intersecting_count
    }
}

/// Intersection flags for each tuple of member indices, in input order.
fn tuple_flags(sets: &[&ConvexSet], tuples: &[Vec<usize>]) -> Result<Vec<bool>> {
    tuples
        .par_iter()
        .map(|t| Ok(intersect_sets(t.iter().map(|&i| sets[i]))?.is_nonempty()))
        .collect()
}

/// Counts the intersecting `(d + 1)`-tuples of a single family.
pub fn count_intersecting_monochromatic(
    family: &[ConvexSet],
    d: usize,
) -> Result<IntersectionProfile> {
    if family.len() < d + 1 {
        return Err(Error::HypothesisViolation(format!(
            "family of {} sets needs at least d + 1 = {} members",
            family.len(),
            d + 1
        )));
    }
    if family.iter().any(|s| s.dim() != d) {
        return Err(Error::malformed("set dimension differs from d"));
    }
    let refs: Vec<&ConvexSet> = family.iter().collect();
    let tuples: Vec<Vec<usize>> = (0..family.len()).combinations(d + 1).collect();
    Ok(IntersectionProfile::from_flags(&tuple_flags(&refs, &tuples)?))
}

/// Index tuples `(i_0, ..., i_d)`, one member per class, in mixed-radix order.
pub fn colorful_tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    sizes.iter().map(|&n| 0..n).multi_cartesian_product().collect()
}

fn colorful_flags(classes: &ColorClasses) -> Result<(Vec<Vec<usize>>, Vec<bool>)> {
    let sizes = classes.sizes();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &n| {
            let o = *acc;
            *acc += n;
            Some(o)
        })
        .collect();
    let flat: Vec<&ConvexSet> = classes.classes().iter().flatten().collect();
    let tuples = colorful_tuples(&sizes);
    let flat_tuples: Vec<Vec<usize>> = tuples
        .iter()
        .map(|t| t.iter().zip(&offsets).map(|(i, o)| i + o).collect())
        .collect();
    let flags = tuple_flags(&flat, &flat_tuples)?;
    Ok((tuples, flags))
}

/// Counts the intersecting colorful tuples; `alpha` is the exact fraction.
pub fn count_intersecting_colorful(classes: &ColorClasses) -> Result<IntersectionProfile> {
    let (_, flags) = colorful_flags(classes)?;
    Ok(IntersectionProfile::from_flags(&flags))
}

/// The non-intersecting colorful tuples as class-local index tuples.
pub fn nonintersecting_colorful_tuples(classes: &ColorClasses) -> Result<Vec<Vec<usize>>> {
    let (tuples, flags) = colorful_flags(classes)?;
    Ok(tuples
        .into_iter()
        .zip(flags)
        .filter_map(|(t, f)| (!f).then_some(t))
        .collect())
}

/// The `r`-uniform hypergraph whose edges are the non-intersecting `r`-tuples
/// of `family`.
pub fn nonintersecting_hypergraph(family: &[ConvexSet], r: usize) -> Result<Hypergraph> {
    let refs: Vec<&ConvexSet> = family.iter().collect();
    let tuples: Vec<Vec<usize>> = (0..family.len()).combinations(r).collect();
    let flags = tuple_flags(&refs, &tuples)?;
    let edges = tuples
        .into_iter()
        .zip(flags)
        .filter_map(|(t, f)| (!f).then_some(t));
    Hypergraph::new(family.len(), r, edges)
}

/// `H_i`: the `(d + 1)`-uniform hypergraph of non-intersecting tuples inside
/// class `i`. Classes with at most `d` members are edgeless.
pub fn build_nonintersecting_hypergraphs(classes: &ColorClasses) -> Result<Vec<Hypergraph>> {
    let r = classes.dim() + 1;
    classes
        .classes()
        .iter()
        .map(|class| nonintersecting_hypergraph(class, r))
        .collect()
}

/// Exact member-level result: a subfamily of class `class_index` together with
/// a point in the intersection of its members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubfamilyResult {
    pub class_index: usize,
    pub members: Vec<usize>,
    #[serde(with = "serde_ratio::vec")]
    pub witness: Vec<Scalar>,
    #[serde(with = "serde_ratio")]
    pub beta_observed: Scalar,
}

impl SubfamilyResult {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Re-checks the witness against every member's constraints.
    pub fn witness_valid(&self, family: &[ConvexSet]) -> bool {
        self.members
            .iter()
            .all(|&i| family.get(i).is_some_and(|s| s.contains(&self.witness)))
    }
}
