//! Seeded instance factories: the extremal constructions (whole-space copies
//! plus hyperplanes in general position), random classes for property tests,
//! and closed-form predictions of intersecting-tuple counts.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so equal
//! inputs give identical instances on every platform.

use std::str::FromStr;

use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::colorful::ColorClasses;
use crate::error::{Error, Result};
use crate::geometry::{
    is_general_position, make_hyperplane, make_whole_space, ConvexSet, LinearConstraint, Relation,
};
use crate::scalar::{floor_to_i64, int, serde_ratio, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionSpec {
    pub d: usize,
    pub n: usize,
    #[serde(with = "serde_ratio")]
    pub beta: Scalar,
    pub seed: u64,
}

impl ConstructionSpec {
    pub fn new(d: usize, n: usize, beta: Scalar, seed: u64) -> Self {
        ConstructionSpec { d, n, beta, seed }
    }

    /// `floor(beta * n)`, computed exactly.
    pub fn floor_beta_n(&self) -> i64 {
        floor_to_i64(&(&self.beta * Scalar::from_integer(self.n.into()))).unwrap_or(i64::MAX)
    }

    fn check_common(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::Spec("d must be positive".into()));
        }
        if self.n == 0 {
            return Err(Error::Spec("n must be positive".into()));
        }
        if !self.beta.is_positive() || self.beta > Scalar::one() {
            return Err(Error::Spec(format!("beta = {} outside (0, 1]", self.beta)));
        }
        Ok(())
    }

    /// Whole-space copies in the monochromatic construction: `floor(beta n) - (d + 1)`.
    pub fn mono_copies(&self) -> Result<usize> {
        self.check_common()?;
        let copies = self.floor_beta_n() - (self.d as i64 + 1);
        usize::try_from(copies).map_err(|_| {
            Error::Spec(format!(
                "floor(beta n) = {} is below d + 1 = {}",
                self.floor_beta_n(),
                self.d + 1
            ))
        })
    }

    /// Whole-space copies per class in the colorful construction: `floor(beta n) - d`.
    pub fn colorful_copies(&self) -> Result<usize> {
        self.check_common()?;
        let copies = self.floor_beta_n() - self.d as i64;
        usize::try_from(copies).map_err(|_| {
            Error::Spec(format!(
                "floor(beta n) = {} is below d = {}",
                self.floor_beta_n(),
                self.d
            ))
        })
    }
}

/// Rejection sampler for hyperplanes with integer data on `[-grid, grid]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HyperplaneSampler {
    pub grid: i64,
    pub retries: usize,
}

impl Default for HyperplaneSampler {
    fn default() -> Self {
        HyperplaneSampler {
            grid: 10_000,
            retries: 100,
        }
    }
}

impl HyperplaneSampler {
    fn draw_one(&self, rng: &mut ChaCha8Rng, d: usize) -> ConvexSet {
        loop {
            let coeffs: Vec<i64> = (0..d).map(|_| rng.gen_range(-self.grid..=self.grid)).collect();
            let rhs = rng.gen_range(-self.grid..=self.grid);
            let Some(&lead) = coeffs.iter().find(|&&a| a != 0) else {
                continue;
            };
            // Scale so the first nonzero coefficient is one.
            let lead = int(lead);
            let coeffs = coeffs.iter().map(|&a| int(a) / &lead).collect();
            return make_hyperplane(coeffs, int(rhs) / &lead).expect("nonzero normal");
        }
    }

    pub fn sample(&self, m: usize, d: usize, seed: u64) -> Result<Vec<ConvexSet>> {
        if m == 0 || d == 0 {
            return Err(Error::Spec("need m >= 1 hyperplanes in d >= 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..self.retries {
            let planes: Vec<ConvexSet> = (0..m).map(|_| self.draw_one(&mut rng, d)).collect();
            if is_general_position(&planes)? {
                return Ok(planes);
            }
        }
        Err(Error::Generation(format!(
            "no general-position draw of {m} hyperplanes in {} attempts",
            self.retries
        )))
    }
}

/// `m` hyperplanes in `R^d`, verified to be in general position.
pub fn gen_general_position_hyperplanes(m: usize, d: usize, seed: u64) -> Result<Vec<ConvexSet>> {
    HyperplaneSampler::default().sample(m, d, seed)
}

/// `floor(beta n) - (d+1)` copies of `R^d` followed by
/// `n - floor(beta n) + (d+1)` hyperplanes in general position.
pub fn gen_example_monochromatic(spec: &ConstructionSpec) -> Result<Vec<ConvexSet>> {
    let copies = spec.mono_copies()?;
    let planes = gen_general_position_hyperplanes(spec.n - copies, spec.d, spec.seed)?;
    let mut family = vec![make_whole_space(spec.d)?; copies];
    family.extend(planes);
    Ok(family)
}

/// `d + 1` classes, each `floor(beta n) - d` copies of `R^d` followed by
/// `n - floor(beta n) + d` hyperplanes; all hyperplanes jointly in general
/// position.
pub fn gen_construction_colorful(spec: &ConstructionSpec) -> Result<ColorClasses> {
    let copies = spec.colorful_copies()?;
    let per_class = spec.n - copies;
    let planes = gen_general_position_hyperplanes((spec.d + 1) * per_class, spec.d, spec.seed)?;
    let whole = make_whole_space(spec.d)?;
    let classes = planes
        .chunks(per_class)
        .map(|chunk| {
            let mut class = vec![whole.clone(); copies];
            class.extend_from_slice(chunk);
            class
        })
        .collect();
    ColorClasses::new(spec.d, classes)
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

fn overflow() -> Error {
    Error::Spec("predicted count overflows".into())
}

/// `C(n, d+1) - C(n - (floor(beta n) - (d+1)), d+1)`.
pub fn predicted_mono_count(n: usize, beta: &Scalar, d: usize) -> Result<u128> {
    let spec = ConstructionSpec::new(d, n, beta.clone(), 0);
    let copies = spec.mono_copies()? as u128;
    let (n, k) = (n as u128, d as u128 + 1);
    let all = binomial(n, k).ok_or_else(overflow)?;
    let missing = binomial(n - copies, k).ok_or_else(overflow)?;
    Ok(all - missing)
}

/// `n^(d+1) - (n - floor(beta n) + d)^(d+1)`.
pub fn predicted_colorful_count(n: usize, beta: &Scalar, d: usize) -> Result<u128> {
    let spec = ConstructionSpec::new(d, n, beta.clone(), 0);
    let copies = spec.colorful_copies()? as u128;
    let k = u32::try_from(d + 1).map_err(|_| overflow())?;
    let n = n as u128;
    let all = n.checked_pow(k).ok_or_else(overflow)?;
    let missing = (n - copies).checked_pow(k).ok_or_else(overflow)?;
    Ok(all - missing)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetModel {
    /// Axis-parallel boxes.
    Boxes,
    /// Intersections of one to four random halfspaces (possibly empty).
    Halfspaces,
    /// Boxes, halfspace systems, hyperplanes and whole-space copies.
    Mixed,
}

impl SetModel {
    pub const ALL: [SetModel; 3] = [SetModel::Boxes, SetModel::Halfspaces, SetModel::Mixed];

    pub fn name(self) -> &'static str {
        match self {
            SetModel::Boxes => "boxes",
            SetModel::Halfspaces => "halfspaces",
            SetModel::Mixed => "mixed",
        }
    }
}

impl FromStr for SetModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SetModel::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Spec(format!("unknown set model {s:?}")))
    }
}

fn le(coeffs: Vec<i64>, rhs: i64) -> LinearConstraint {
    LinearConstraint::new(coeffs.into_iter().map(int).collect(), Relation::LessEq, int(rhs))
}

fn unit(d: usize, k: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[k] = sign;
    v
}

fn box_set(d: usize, lo: &[i64], hi: &[i64]) -> ConvexSet {
    let mut cs = Vec::with_capacity(2 * d);
    for k in 0..d {
        cs.push(le(unit(d, k, 1), hi[k]));
        cs.push(le(unit(d, k, -1), -lo[k]));
    }
    ConvexSet::new(d, cs).expect("coordinates match dimension")
}

fn random_box(rng: &mut ChaCha8Rng, d: usize) -> ConvexSet {
    let lo: Vec<i64> = (0..d).map(|_| rng.gen_range(-8..=6)).collect();
    let hi: Vec<i64> = lo.iter().map(|l| l + rng.gen_range(0..=8)).collect();
    box_set(d, &lo, &hi)
}

fn nonzero_vector(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&a| a != 0) {
            return v;
        }
    }
}

fn random_halfspaces(rng: &mut ChaCha8Rng, d: usize) -> ConvexSet {
    let center: Vec<i64> = (0..d).map(|_| rng.gen_range(-4..=4)).collect();
    let count = rng.gen_range(1..=4);
    let cs = (0..count)
        .map(|_| {
            let a = nonzero_vector(rng, d, 3);
            let at_center: i64 = a.iter().zip(&center).map(|(x, c)| x * c).sum();
            le(a, at_center + rng.gen_range(-3..=6))
        })
        .collect();
    ConvexSet::new(d, cs).expect("coordinates match dimension")
}

fn random_hyperplane(rng: &mut ChaCha8Rng, d: usize) -> ConvexSet {
    let a = nonzero_vector(rng, d, 3);
    make_hyperplane(a.into_iter().map(int).collect(), int(rng.gen_range(-4..=4)))
        .expect("nonzero normal")
}

fn random_set(rng: &mut ChaCha8Rng, d: usize, model: SetModel) -> ConvexSet {
    match model {
        SetModel::Boxes => random_box(rng, d),
        SetModel::Halfspaces => random_halfspaces(rng, d),
        SetModel::Mixed => match rng.gen_range(0..20) {
            0..=2 => make_whole_space(d).expect("positive dimension"),
            3..=7 => random_hyperplane(rng, d),
            8..=13 => random_box(rng, d),
            _ => random_halfspaces(rng, d),
        },
    }
}

/// Seeded random color classes with small integer data.
pub fn gen_random_classes(
    d: usize,
    sizes: &[usize],
    model: SetModel,
    seed: u64,
) -> Result<ColorClasses> {
    if d == 0 || sizes.len() != d + 1 || sizes.contains(&0) {
        return Err(Error::Spec(format!(
            "need d + 1 positive class sizes in d = {d}, got {sizes:?}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes = sizes
        .iter()
        .map(|&n| (0..n).map(|_| random_set(&mut rng, d, model)).collect())
        .collect();
    ColorClasses::new(d, classes)
}

/// Random classes in which every colorful tuple intersects but, typically,
/// only some classes intersect as a whole.
///
/// A random box `K` is fixed; one class (chosen by the seed) holds sets that
/// meet `K`, every other class holds sets that contain `K`. Any colorful tuple
/// then contains `S ∩ K ≠ ∅` for its member `S` of the first kind.
pub fn gen_alpha_one_classes(d: usize, sizes: &[usize], seed: u64) -> Result<ColorClasses> {
    if d == 0 || sizes.len() != d + 1 || sizes.contains(&0) {
        return Err(Error::Spec(format!(
            "need d + 1 positive class sizes in d = {d}, got {sizes:?}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k_lo: Vec<i64> = (0..d).map(|_| rng.gen_range(-6..=0)).collect();
    let k_hi: Vec<i64> = k_lo.iter().map(|l| l + rng.gen_range(2..=8)).collect();
    let inner = rng.gen_range(0..=d);

    let meets_k = |rng: &mut ChaCha8Rng| -> ConvexSet {
        let p: Vec<i64> = (0..d).map(|k| rng.gen_range(k_lo[k]..=k_hi[k])).collect();
        if rng.gen_bool(0.5) {
            // A hyperplane through a point of K.
            let a = nonzero_vector(rng, d, 3);
            let b: i64 = a.iter().zip(&p).map(|(x, y)| x * y).sum();
            make_hyperplane(a.into_iter().map(int).collect(), int(b)).expect("nonzero normal")
        } else {
            let lo: Vec<i64> = p.iter().map(|x| x - rng.gen_range(0..=2)).collect();
            let hi: Vec<i64> = p.iter().map(|x| x + rng.gen_range(0..=2)).collect();
            box_set(d, &lo, &hi)
        }
    };
    let contains_k = |rng: &mut ChaCha8Rng| -> ConvexSet {
        match rng.gen_range(0..4) {
            0 => make_whole_space(d).expect("positive dimension"),
            1 => {
                // A halfspace whose boundary stays off K: a·x <= max over K + slack.
                let a = nonzero_vector(rng, d, 3);
                let max_on_k: i64 = a
                    .iter()
                    .enumerate()
                    .map(|(k, &x)| if x > 0 { x * k_hi[k] } else { x * k_lo[k] })
                    .sum();
                ConvexSet::new(d, vec![le(a, max_on_k + rng.gen_range(0..=3))])
                    .expect("coordinates match dimension")
            }
            _ => {
                let lo: Vec<i64> = k_lo.iter().map(|x| x - rng.gen_range(0..=4)).collect();
                let hi: Vec<i64> = k_hi.iter().map(|x| x + rng.gen_range(0..=4)).collect();
                box_set(d, &lo, &hi)
            }
        }
    };

    let classes = sizes
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            (0..n)
                .map(|_| if i == inner { meets_k(&mut rng) } else { contains_k(&mut rng) })
                .collect()
        })
        .collect();
    ColorClasses::new(d, classes)
}

/// A random linear system for differential testing: at most `max_constraints`
/// rows over `[-3, 3]`, with one of four flavours chosen by the seed (generic
/// inequalities, equality-heavy, rows tight at a common point, and degenerate
/// rows: duplicates, rescaled copies, zero rows and opposing pairs).
pub fn gen_random_system(d: usize, max_constraints: usize, seed: u64) -> Vec<LinearConstraint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(0..=max_constraints);
    let flavour = rng.gen_range(0..4);
    let point: Vec<i64> = (0..d).map(|_| rng.gen_range(-2..=2)).collect();
    let mut rows: Vec<LinearConstraint> = Vec::with_capacity(count);
    while rows.len() < count {
        let a: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        let at_point: i64 = a.iter().zip(&point).map(|(x, p)| x * p).sum();
        let row = match flavour {
            0 => le(a, rng.gen_range(-4..=4)),
            1 => {
                let rel = if rng.gen_bool(0.6) { Relation::Eq } else { Relation::LessEq };
                let rhs = if rng.gen_bool(0.7) { at_point } else { rng.gen_range(-4..=4) };
                LinearConstraint::new(a.into_iter().map(int).collect(), rel, int(rhs))
            }
            2 => le(a, at_point + rng.gen_range(-1..=0)),
            _ => match (rows.last().cloned(), rng.gen_range(0..5)) {
                (Some(prev), 0) => prev,
                (Some(prev), 1) => {
                    let k = int(rng.gen_range(1..=3));
                    LinearConstraint::new(
                        prev.coefficients.iter().map(|c| c * &k).collect(),
                        prev.relation,
                        &prev.rhs * &k,
                    )
                }
                (Some(prev), 2) => {
                    let shift = int(rng.gen_range(-1..=0));
                    LinearConstraint::new(
                        prev.coefficients.iter().map(|c| -c).collect(),
                        Relation::LessEq,
                        -&prev.rhs + shift,
                    )
                }
                (_, 3) => le(vec![0; d], rng.gen_range(-1..=2)),
                _ => le(a, at_point),
            },
        };
        rows.push(row);
    }
    rows
}

/// Shuffles members within each class, keeping the seed contract.
pub fn shuffle_classes(classes: &ColorClasses, seed: u64) -> ColorClasses {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shuffled = classes.clone().into_classes();
    for class in shuffled.iter_mut() {
        class.shuffle(&mut rng);
    }
    ColorClasses::new(classes.dim(), shuffled).expect("same shape as input")
}
