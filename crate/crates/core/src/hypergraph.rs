//! Uniform hypergraphs over dense vertex indices, with greedy maximal
//! matchings and brute-force matching/independence numbers.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest vertex count accepted by the exact searches.
pub const EXACT_MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    /// Strictly increasing vertex tuples, kept in lexicographic order.
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new<I>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        if r == 0 {
            return Err(Error::malformed("uniformity must be positive"));
        }
        let mut set = BTreeSet::new();
        for mut e in edges {
            e.sort_unstable();
            if e.len() != r {
                return Err(Error::malformed(format!("edge {e:?} is not {r}-uniform")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::malformed(format!("edge {e:?} repeats a vertex")));
            }
            if e.last().is_some_and(|&v| v >= n) {
                return Err(Error::malformed(format!("edge {e:?} leaves 0..{n}")));
            }
            if !set.insert(e.clone()) {
                return Err(Error::malformed(format!("duplicate edge {e:?}")));
            }
        }
        Ok(Hypergraph {
            n,
            r,
            edges: set.into_iter().collect(),
        })
    }

    pub fn edgeless(n: usize, r: usize) -> Result<Self> {
        Hypergraph::new(n, r, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        self.edges.binary_search_by(|e| e.as_slice().cmp(edge)).is_ok()
    }

    /// True when no edge lies entirely inside `vertices`.
    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &v in vertices {
            if v < self.n {
                inside[v] = true;
            }
        }
        !self.edges.iter().any(|e| e.iter().all(|&v| inside[v]))
    }

    fn masks(&self) -> Vec<u64> {
        self.edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }

    fn check_exact_scale(&self, what: &'static str) -> Result<()> {
        if self.n > EXACT_MAX_VERTICES {
            return Err(Error::ScaleLimit {
                what,
                size: self.n,
                limit: EXACT_MAX_VERTICES,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Matching {
    edges: Vec<Vec<usize>>,
}

impl Matching {
    pub fn new(edges: Vec<Vec<usize>>) -> Self {
        Matching { edges }
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks that every edge belongs to `h` and no vertex is used twice.
    pub fn is_matching_of(&self, h: &Hypergraph) -> bool {
        let mut used = vec![false; h.n()];
        for e in &self.edges {
            if !h.contains_edge(e) {
                return false;
            }
            for &v in e {
                if std::mem::replace(&mut used[v], true) {
                    return false;
                }
            }
        }
        true
    }

    /// No edge of `h` is disjoint from every chosen edge.
    pub fn is_maximal_in(&self, h: &Hypergraph) -> bool {
        let covered = self.covered(h.n());
        h.edges().iter().all(|e| e.iter().any(|&v| covered[v]))
    }

    fn covered(&self, n: usize) -> Vec<bool> {
        let mut covered = vec![false; n];
        for e in &self.edges {
            for &v in e {
                covered[v] = true;
            }
        }
        covered
    }
}

/// Greedy maximal matching scanning edges in lexicographic order.
pub fn greedy_maximal_matching(h: &Hypergraph) -> Matching {
    greedy_in_order(h, 0..h.edges().len())
}

/// Greedy maximal matching scanning edges in the order given as a
/// permutation of edge indices.
pub fn greedy_maximal_matching_with_order(h: &Hypergraph, order: &[usize]) -> Result<Matching> {
    let mut seen = vec![false; h.edges().len()];
    if order.len() != seen.len()
        || order
            .iter()
            .any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true))
    {
        return Err(Error::malformed("edge order is not a permutation"));
    }
    Ok(greedy_in_order(h, order.iter().copied()))
}

fn greedy_in_order(h: &Hypergraph, order: impl Iterator<Item = usize>) -> Matching {
    let mut used = vec![false; h.n()];
    let mut chosen = Vec::new();
    for i in order {
        let e = &h.edges()[i];
        if e.iter().all(|&v| !used[v]) {
            for &v in e {
                used[v] = true;
            }
            chosen.push(e.clone());
        }
    }
    Matching::new(chosen)
}

/// Vertices not covered by `m`. Independent in `h` whenever `m` is maximal.
pub fn uncovered_vertices(h: &Hypergraph, m: &Matching) -> Result<Vec<usize>> {
    if !m.is_matching_of(h) {
        return Err(Error::malformed("not a matching of this hypergraph"));
    }
    let covered = m.covered(h.n());
    Ok((0..h.n()).filter(|&v| !covered[v]).collect())
}

/// Exact matching number by branching on the lowest undecided vertex.
pub fn matching_number_exact(h: &Hypergraph) -> Result<usize> {
    h.check_exact_scale("hypergraph for exact matching number")?;
    let masks = h.masks();
    let mut by_vertex: Vec<Vec<u64>> = vec![Vec::new(); h.n()];
    for (e, &m) in h.edges().iter().zip(&masks) {
        by_vertex[e[0]].push(m);
    }
    let mut best = 0;
    matching_search(&by_vertex, h.r(), 0, 0, 0, &mut best);
    Ok(best)
}

fn matching_search(
    by_min_vertex: &[Vec<u64>],
    r: usize,
    v: usize,
    used: u64,
    size: usize,
    best: &mut usize,
) {
    *best = (*best).max(size);
    let n = by_min_vertex.len();
    if v >= n {
        return;
    }
    let free = (v..n).filter(|&u| used & (1 << u) == 0).count();
    if size + free / r <= *best {
        return;
    }
    if used & (1 << v) == 0 {
        for &m in &by_min_vertex[v] {
            if m & used == 0 {
                matching_search(by_min_vertex, r, v + 1, used | m, size + 1, best);
            }
        }
    }
    // v stays unmatched (or is already covered)
    matching_search(by_min_vertex, r, v + 1, used | (1 << v), size, best);
}

/// Exact independence number by include/exclude branching.
pub fn independence_number_exact(h: &Hypergraph) -> Result<usize> {
    h.check_exact_scale("hypergraph for exact independence number")?;
    let masks = h.masks();
    let mut by_max_vertex: Vec<Vec<u64>> = vec![Vec::new(); h.n()];
    for (e, &m) in h.edges().iter().zip(&masks) {
        by_max_vertex[*e.last().expect("r >= 1")].push(m);
    }
    let mut best = 0;
    independence_search(&by_max_vertex, 0, 0, 0, &mut best);
    Ok(best)
}

fn independence_search(
    by_max_vertex: &[Vec<u64>],
    v: usize,
    chosen: u64,
    size: usize,
    best: &mut usize,
) {
    *best = (*best).max(size);
    let n = by_max_vertex.len();
    if v >= n || size + (n - v) <= *best {
        return;
    }
    let with_v = chosen | (1 << v);
    if by_max_vertex[v].iter().all(|&m| m & with_v != m) {
        independence_search(by_max_vertex, v + 1, with_v, size + 1, best);
    }
    independence_search(by_max_vertex, v + 1, chosen, size, best);
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, 2, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap()
    }

    #[test]
    fn triangle_numbers() {
        let h = triangle();
        assert_eq!(greedy_maximal_matching(&h).len(), 1);
        assert_eq!(matching_number_exact(&h).unwrap(), 1);
        assert_eq!(independence_number_exact(&h).unwrap(), 1);
        let m = Matching::new(vec![vec![0, 1]]);
        let u = uncovered_vertices(&h, &m).unwrap();
        assert_eq!(u, vec![2]);
        assert!(h.is_independent(&u));
    }

    #[test]
    fn edgeless() {
        let h = Hypergraph::edgeless(5, 3).unwrap();
        assert!(greedy_maximal_matching(&h).is_empty());
        assert_eq!(matching_number_exact(&h).unwrap(), 0);
        assert_eq!(independence_number_exact(&h).unwrap(), 5);
        assert_eq!(
            uncovered_vertices(&h, &Matching::default()).unwrap(),
            vec![0, 1, 2, 3, 4]
        );
    }

    #[test]
    fn disjoint_triples() {
        let h = Hypergraph::new(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(greedy_maximal_matching(&h).len(), 2);
        let partial = Matching::new(vec![vec![0, 1, 2]]);
        assert!(!partial.is_maximal_in(&h));
        let u = uncovered_vertices(&h, &partial).unwrap();
        assert_eq!(u, vec![3, 4, 5]);
        assert!(!h.is_independent(&u));
        let full = greedy_maximal_matching(&h);
        assert!(uncovered_vertices(&h, &full).unwrap().is_empty());
    }

    #[test]
    fn complete_three_uniform_on_seven() {
        // Brute force over every vertex subset and every edge subset of size <= 3.
        let edges: Vec<Vec<usize>> = (0..7).combinations(3).collect();
        let h = Hypergraph::new(7, 3, edges.clone()).unwrap();
        let alpha_brute = (0u32..1 << 7)
            .filter(|s| {
                let vs: Vec<usize> = (0..7).filter(|v| s & (1 << v) != 0).collect();
                h.is_independent(&vs)
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap();
        let nu_brute = (1..=3)
            .rev()
            .find(|&k| {
                edges.iter().combinations(k).any(|es| {
                    let all: Vec<usize> = es.iter().flat_map(|e| e.iter().copied()).collect();
                    all.iter().unique().count() == all.len()
                })
            })
            .unwrap();
        assert_eq!((alpha_brute, nu_brute), (2, 2));
        assert_eq!(independence_number_exact(&h).unwrap(), 2);
        assert_eq!(matching_number_exact(&h).unwrap(), 2);
    }

    #[test]
    fn invalid_inputs() {
        assert!(Hypergraph::new(3, 2, vec![vec![0, 3]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![1, 1]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![0, 1, 2]]).is_err());
        let h = triangle();
        let bogus = Matching::new(vec![vec![0, 1], vec![1, 2]]);
        assert!(uncovered_vertices(&h, &bogus).is_err());
        assert!(greedy_maximal_matching_with_order(&h, &[0, 0, 1]).is_err());
        let big = Hypergraph::edgeless(EXACT_MAX_VERTICES + 1, 2).unwrap();
        assert!(matches!(
            independence_number_exact(&big),
            Err(Error::ScaleLimit { .. })
        ));
        assert!(matching_number_exact(&big).is_err());
    }

    #[test]
    fn ordering_is_respected() {
        let h = Hypergraph::new(4, 2, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(greedy_maximal_matching(&h).len(), 2);
        let m = greedy_maximal_matching_with_order(&h, &[1, 0, 2]).unwrap();
        assert_eq!(m.edges(), &[vec![1, 2]]);
        assert!(m.is_maximal_in(&h));
    }
}
