use itertools::Itertools;
use num_traits::Zero;

use super::ConvexSet;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Rank of a rational matrix given as rows, by exact Gaussian elimination.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        let pivot: Vec<Scalar> = m[r].iter().map(|v| v * &inv).collect();
        for row in m.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let k = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot) {
                *v -= &k * p;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Hyperplanes are in general position when any `k <= d` of them have
/// independent normals (so every `d` meet in exactly one point) and no `d + 1`
/// of them share a point.
pub fn is_general_position(hyperplanes: &[ConvexSet]) -> Result<bool> {
    let Some(first) = hyperplanes.first() else {
        return Ok(true);
    };
    let d = first.dim();
    let mut normals = Vec::with_capacity(hyperplanes.len());
    let mut augmented = Vec::with_capacity(hyperplanes.len());
    for h in hyperplanes {
        let c = h
            .as_hyperplane()
            .ok_or_else(|| Error::malformed("general-position check on a non-hyperplane set"))?;
        if h.dim() != d {
            return Err(Error::malformed("hyperplanes of different dimensions"));
        }
        normals.push(c.coefficients.clone());
        let mut row = c.coefficients.clone();
        row.push(c.rhs.clone());
        augmented.push(row);
    }

    let k = d.min(hyperplanes.len());
    let independent = (0..hyperplanes.len()).combinations(k).all(|idx| {
        let sub: Vec<Vec<Scalar>> = idx.iter().map(|&i| normals[i].clone()).collect();
        rank(&sub) == k
    });
    if !independent {
        return Ok(false);
    }
    // Given independence, d + 1 hyperplanes share a point iff [A | b] has rank d.
    let separated = (0..hyperplanes.len()).combinations(d + 1).all(|idx| {
        let sub: Vec<Vec<Scalar>> = idx.iter().map(|&i| augmented[i].clone()).collect();
        rank(&sub) == d + 1
    });
    Ok(separated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_hyperplane, make_whole_space};
    use crate::scalar::int;

    fn hp(coeffs: &[i64], rhs: i64) -> ConvexSet {
        make_hyperplane(coeffs.iter().map(|&a| int(a)).collect(), int(rhs)).unwrap()
    }

    #[test]
    fn points_on_a_line() {
        assert!(is_general_position(&[hp(&[1], 1), hp(&[1], 2), hp(&[1], 3)]).unwrap());
        assert!(!is_general_position(&[hp(&[1], 1), hp(&[1], 1)]).unwrap());
        // 2x = 2 is the same point as x = 1
        assert!(!is_general_position(&[hp(&[1], 1), hp(&[2], 2)]).unwrap());
    }

    #[test]
    fn concurrent_lines() {
        assert!(!is_general_position(&[hp(&[1, 0], 0), hp(&[0, 1], 0), hp(&[1, 1], 0)]).unwrap());
        assert!(is_general_position(&[hp(&[1, 0], 0), hp(&[0, 1], 0), hp(&[1, 1], 1)]).unwrap());
    }

    #[test]
    fn parallel_lines_fail_rank() {
        assert!(!is_general_position(&[hp(&[1, 1], 0), hp(&[2, 2], 1)]).unwrap());
    }

    #[test]
    fn non_hyperplane_rejected() {
        let r = is_general_position(&[hp(&[1, 0], 0), make_whole_space(2).unwrap()]);
        assert!(matches!(r, Err(Error::MalformedInput(_))));
    }

    #[test]
    fn rank_basics() {
        let m = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), int(1)],
        ];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&[]), 0);
    }
}
