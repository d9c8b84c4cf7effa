//! Maximum intersecting subfamily (maximum feasible subsystem) by
//! branch-and-bound.
//!
//! Whole-space members are always taken and individually empty members never
//! are. The remaining candidates are searched with a pairwise-conflict table:
//! a candidate that misses an included member is dropped from the branch, and
//! a branch is cut once `included + remaining` cannot beat the incumbent.

use num_traits::Zero;

use super::SubfamilyResult;
use crate::error::{Error, Result};
use crate::geometry::{intersect_sets, ConvexSet};
use crate::scalar::Scalar;

/// Default family-size limit for the exact search.
pub const DEFAULT_MAX_EXACT_N: usize = 32;

struct Search<'a> {
    family: &'a [ConvexSet],
    conflict: Vec<Vec<bool>>,
    best: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, included: &mut Vec<usize>, candidates: &[usize]) -> Result<()> {
        if included.len() > self.best.len() {
            self.best = included.clone();
        }
        if included.len() + candidates.len() <= self.best.len() {
            return Ok(());
        }
        let Some((&c, rest)) = candidates.split_first() else {
            return Ok(());
        };

        included.push(c);
        // Pairs are already known to meet; larger sets need the LP.
        let joinable = included.len() <= 2
            || intersect_sets(included.iter().map(|&i| &self.family[i]))?.is_nonempty();
        if joinable {
            let narrowed: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|&o| !self.conflict[c][o])
                .collect();
            self.run(included, &narrowed)?;
        }
        included.pop();

        self.run(included, rest)
    }
}

/// Largest subfamily of `family` with a common point. `class_index` of the
/// result is 0; callers working on color classes overwrite it.
pub fn max_intersecting_subfamily_exact(
    family: &[ConvexSet],
    max_n: usize,
) -> Result<SubfamilyResult> {
    let Some(first) = family.first() else {
        return Err(Error::malformed("empty family"));
    };
    if family.len() > max_n {
        return Err(Error::ScaleLimit {
            what: "family for exact maximization",
            size: family.len(),
            limit: max_n,
        });
    }
    let dim = first.dim();
    if family.iter().any(|s| s.dim() != dim) {
        return Err(Error::malformed("sets of different dimensions"));
    }

    let mut whole = Vec::new();
    let mut others = Vec::new();
    for (i, s) in family.iter().enumerate() {
        if s.is_whole_space() {
            whole.push(i);
        } else if intersect_sets([s])?.is_nonempty() {
            others.push(i);
        }
    }

    let n = family.len();
    let mut conflict = vec![vec![false; n]; n];
    for (a, &i) in others.iter().enumerate() {
        for &j in &others[a + 1..] {
            let miss = !intersect_sets([&family[i], &family[j]])?.is_nonempty();
            conflict[i][j] = miss;
            conflict[j][i] = miss;
        }
    }
    // Fewest conflicts first finds a strong incumbent early.
    let degree = |i: usize| conflict[i].iter().filter(|&&b| b).count();
    others.sort_by_key(|&i| (degree(i), i));

    let mut search = Search {
        family,
        conflict,
        best: Vec::new(),
    };
    search.run(&mut Vec::new(), &others)?;

    let mut members = whole;
    members.extend(search.best);
    members.sort_unstable();

    let witness = if members.is_empty() {
        vec![Scalar::zero(); dim]
    } else {
        intersect_sets(members.iter().map(|&i| &family[i]))?
            .into_witness()
            .ok_or_else(|| Error::malformed("branch-and-bound produced an empty intersection"))?
    };
    let beta_observed = Scalar::new(members.len().into(), n.into());
    Ok(SubfamilyResult {
        class_index: 0,
        members,
        witness,
        beta_observed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorful::tests::interval;
    use crate::geometry::{make_hyperplane, make_whole_space, LinearConstraint, Relation};
    use crate::scalar::{int, ratio};

    #[test]
    fn picks_overlapping_pair() {
        let fam = [interval(0, 2), interval(1, 3), interval(5, 6)];
        let r = max_intersecting_subfamily_exact(&fam, 10).unwrap();
        assert_eq!(r.members, vec![0, 1]);
        assert_eq!(r.beta_observed, ratio(2, 3));
        assert!(r.witness_valid(&fam));
    }

    #[test]
    fn whole_space_copies() {
        let fam = vec![make_whole_space(2).unwrap(); 4];
        let r = max_intersecting_subfamily_exact(&fam, 10).unwrap();
        assert_eq!(r.size(), 4);
        assert_eq!(r.witness, vec![int(0), int(0)]);
    }

    #[test]
    fn empty_members_skipped() {
        let empty = ConvexSet::new(
            1,
            vec![
                LinearConstraint::new(vec![int(1)], Relation::LessEq, int(0)),
                LinearConstraint::new(vec![int(-1)], Relation::LessEq, int(-1)),
            ],
        )
        .unwrap();
        let r = max_intersecting_subfamily_exact(&[empty.clone(), empty], 10).unwrap();
        assert_eq!(r.size(), 0);
        assert_eq!(r.beta_observed, int(0));
    }

    #[test]
    fn generic_lines_plus_copies() {
        // Three lines in general position: any two meet, all three do not.
        let fam = [
            make_whole_space(2).unwrap(),
            make_hyperplane(vec![int(1), int(0)], int(0)).unwrap(),
            make_hyperplane(vec![int(0), int(1)], int(0)).unwrap(),
            make_hyperplane(vec![int(1), int(1)], int(1)).unwrap(),
        ];
        let r = max_intersecting_subfamily_exact(&fam, 10).unwrap();
        assert_eq!(r.size(), 3);
        assert!(r.members.contains(&0));
        assert!(r.witness_valid(&fam));
    }

    #[test]
    fn scale_limit() {
        let fam = vec![make_whole_space(1).unwrap(); 5];
        assert!(matches!(
            max_intersecting_subfamily_exact(&fam, 4),
            Err(Error::ScaleLimit { .. })
        ));
        assert!(max_intersecting_subfamily_exact(&[], 4).is_err());
    }
}
