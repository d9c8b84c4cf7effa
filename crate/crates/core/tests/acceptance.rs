//! End-to-end acceptance checks. Run with `--nocapture` to see one line per
//! criterion.

use std::time::Instant;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use helly_core::colorful::colorful_helly_class;
use helly_core::generators::{gen_alpha_one_classes, gen_construction_colorful, gen_example_monochromatic, gen_random_classes};
use helly_core::geometry::differential_check;
use helly_core::hypergraph::{greedy_maximal_matching, greedy_maximal_matching_with_order, uncovered_vertices};
use helly_core::scalar::{int, ratio};
use helly_core::{
    count_intersecting_colorful, count_intersecting_monochromatic, extract_intersecting_subfamily,
    intersect_sets, max_intersecting_subfamily_exact, ColorClasses, ConstructionSpec, ConvexSet,
    Hypergraph, Scalar, SetModel,
};

const BETAS: [(i64, i64); 3] = [(1, 3), (1, 2), (2, 3)];
const RANDOM_INSTANCES: u64 = 200;

struct Outcome {
    checked: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checked: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn floor_beta_n(n: usize, beta: (i64, i64)) -> usize {
    (n as i64 * beta.0 / beta.1) as usize
}

fn valid_specs(max_n: usize, min_floor: usize) -> Vec<(usize, (i64, i64))> {
    (1..=max_n)
        .flat_map(|n| BETAS.iter().map(move |&b| (n, b)))
        .filter(|&(n, b)| floor_beta_n(n, b) >= min_floor)
        .collect()
}

fn pow(x: &Scalar, e: usize) -> Scalar {
    (0..e).fold(Scalar::one(), |acc, _| acc * x)
}

/// `beta >= max{alpha/(d+1), 1 - (d+1)(1-alpha)^(1/(d+1))}`, decided by
/// raising both sides of the root comparison to the power d+1.
fn lower_bound_oracle(beta: &Scalar, alpha: &Scalar, d: usize) -> bool {
    let k = d + 1;
    let linear = alpha / int(k as i64);
    let slack = (Scalar::one() - beta) / int(k as i64);
    *beta >= linear && (slack.is_negative() || pow(&slack, k) <= Scalar::one() - alpha)
}

/// `beta - (1 - (1-alpha)^(1/(d+1))) <= gap`.
fn upper_gap_oracle(beta: &Scalar, alpha: &Scalar, d: usize, gap: &Scalar) -> bool {
    let base = Scalar::one() - beta + gap;
    !base.is_negative() && pow(&base, d + 1) >= Scalar::one() - alpha
}

fn random_instance(seed: u64) -> (ColorClasses, SetModel) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(1..=2);
    let sizes: Vec<usize> = (0..=d).map(|_| rng.gen_range(d + 1..=9)).collect();
    let model = SetModel::ALL[seed as usize % SetModel::ALL.len()];
    (gen_random_classes(d, &sizes, model, seed).unwrap(), model)
}

fn construction_instances() -> Vec<(ConstructionSpec, ColorClasses)> {
    let mut out = Vec::new();
    for (d, max_n) in [(1, 30), (2, 10)] {
        for (n, b) in valid_specs(max_n, d + 1) {
            let spec = ConstructionSpec::new(d, n, ratio(b.0, b.1), 17);
            let classes = gen_construction_colorful(&spec).unwrap();
            out.push((spec, classes));
        }
    }
    out
}

fn exact_max(family: &[ConvexSet]) -> usize {
    let r = max_intersecting_subfamily_exact(family, 32).unwrap();
    assert!(r.witness_valid(family));
    r.size()
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    for (d, max_n) in [(1usize, 30usize), (2, 15)] {
        for (n, b) in valid_specs(max_n, d + 1) {
            let spec = ConstructionSpec::new(d, n, ratio(b.0, b.1), 3);
            let fam = gen_example_monochromatic(&spec).unwrap();
            let got = count_intersecting_monochromatic(&fam, d).unwrap().intersecting_count as u128;
            let f = floor_beta_n(n, b);
            let want = binomial(n as u64, d as u64 + 1) - binomial((n - f + d + 1) as u64, d as u64 + 1);
            out.check(got == want, || format!("d={d} n={n} beta={}/{}: {got} != {want}", b.0, b.1));
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    for (spec, classes) in construction_instances() {
        let (d, n) = (spec.d, spec.n);
        let got = count_intersecting_colorful(&classes).unwrap().intersecting_count as u128;
        let f = spec.floor_beta_n() as u128;
        let want = (n as u128).pow(d as u32 + 1) - (n as u128 - f + d as u128).pow(d as u32 + 1);
        out.check(got == want, || format!("d={d} n={n} beta={}: {got} != {want}", spec.beta));
    }
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    for seed in 0..RANDOM_INSTANCES {
        let (classes, model) = random_instance(seed);
        let d = classes.dim();
        let alpha = count_intersecting_colorful(&classes).unwrap().alpha;
        let beta = classes
            .classes()
            .iter()
            .map(|c| ratio(exact_max(c) as i64, c.len() as i64))
            .max()
            .unwrap();
        out.check(lower_bound_oracle(&beta, &alpha, d), || {
            format!("seed {seed} ({}): beta {beta} alpha {alpha}", model.name())
        });
    }
    out
}

fn check_extraction(out: &mut Outcome, label: &str, classes: &ColorClasses) {
    let d = classes.dim();
    let alpha = count_intersecting_colorful(classes).unwrap().alpha;
    let ex = extract_intersecting_subfamily(classes).unwrap();
    let family = classes.class(ex.chosen_class);
    let members: Vec<&ConvexSet> = ex.subfamily.members.iter().map(|&i| &family[i]).collect();
    let lp_ok = members.is_empty() || intersect_sets(members).unwrap().is_nonempty();
    let beta = ratio(ex.subfamily.size() as i64, family.len() as i64);
    let bound_ok = alpha.is_zero() || lower_bound_oracle_root(&beta, &alpha, d);
    let exact = exact_max(family);
    out.check(
        lp_ok && ex.subfamily.witness_valid(family) && bound_ok && ex.subfamily.size() <= exact,
        || format!("{label}: size {} exact {exact} lp {lp_ok} bound {bound_ok}", ex.subfamily.size()),
    );
}

/// Only the root term: `beta >= 1 - (d+1)(1-alpha)^(1/(d+1))`.
fn lower_bound_oracle_root(beta: &Scalar, alpha: &Scalar, d: usize) -> bool {
    let slack = (Scalar::one() - beta) / int(d as i64 + 1);
    slack.is_negative() || pow(&slack, d + 1) <= Scalar::one() - alpha
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    for seed in 0..RANDOM_INSTANCES {
        let (classes, _) = random_instance(seed);
        check_extraction(&mut out, &format!("random seed {seed}"), &classes);
    }
    for (spec, classes) in construction_instances() {
        check_extraction(&mut out, &format!("construction d={} n={} beta={}", spec.d, spec.n, spec.beta), &classes);
    }
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let mut specs: Vec<(usize, usize, (i64, i64))> = Vec::new();
    for n in [8, 16, 32] {
        specs.extend(BETAS.iter().map(|&b| (1, n, b)));
    }
    for (n, b) in valid_specs(10, 3) {
        specs.push((2, n, b));
    }
    for (d, n, b) in specs {
        let spec = ConstructionSpec::new(d, n, ratio(b.0, b.1), 29);
        let classes = gen_construction_colorful(&spec).unwrap();
        let alpha = count_intersecting_colorful(&classes).unwrap().alpha;
        let f = floor_beta_n(n, b);
        let maxima: Vec<usize> = classes.classes().iter().map(|c| exact_max(c)).collect();
        let beta = ratio(*maxima.iter().max().unwrap() as i64, n as i64);
        let gap = ratio(d as i64 + 1, n as i64);
        out.check(maxima.iter().all(|&m| m == f) && upper_gap_oracle(&beta, &alpha, d, &gap), || {
            format!("d={d} n={n} beta={}/{}: maxima {maxima:?} floor {f} alpha {alpha}", b.0, b.1)
        });
    }
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let d = 1 + (seed as usize % 2);
        let sizes: Vec<usize> = (0..=d).map(|_| rng.gen_range(1..=6)).collect();
        let classes = gen_alpha_one_classes(d, &sizes, seed).unwrap();
        let alpha = count_intersecting_colorful(&classes).unwrap().alpha;
        let found = colorful_helly_class(&classes).unwrap();
        let confirmed = found.is_some_and(|i| intersect_sets(classes.class(i)).unwrap().is_nonempty());
        out.check(alpha == Scalar::one() && confirmed, || {
            format!("seed {seed} d={d} sizes {sizes:?}: alpha {alpha} class {found:?}")
        });
    }
    out
}

/// Largest independent set by scanning every vertex subset.
fn brute_independence(n: usize, edges: &[Vec<usize>]) -> usize {
    let masks: Vec<u32> = edges.iter().map(|e| e.iter().map(|&v| 1u32 << v).sum()).collect();
    (0u32..1 << n)
        .filter(|s| masks.iter().all(|m| s & m != *m))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = 2 + (seed as usize % 2);
        let n = rng.gen_range(r..=12);
        let p: f64 = rng.gen_range(0.05..0.6);
        let edges: Vec<Vec<usize>> = (0..n).combinations(r).filter(|_| rng.gen_bool(p)).collect();
        let h = Hypergraph::new(n, r, edges.clone()).unwrap();
        let alpha = brute_independence(n, &edges);
        let mut matchings = vec![greedy_maximal_matching(&h)];
        for _ in 0..4 {
            let mut order: Vec<usize> = (0..edges.len()).collect();
            order.shuffle(&mut rng);
            matchings.push(greedy_maximal_matching_with_order(&h, &order).unwrap());
        }
        for m in matchings {
            let uncovered = uncovered_vertices(&h, &m).unwrap();
            let independent = edges.iter().all(|e| !e.iter().all(|v| uncovered.contains(v)));
            out.check(m.is_maximal_in(&h) && independent && n - r * m.len() <= alpha, || {
                format!("seed {seed} n={n} r={r}: |M|={} alpha={alpha} independent {independent}", m.len())
            });
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let per_dim = [167usize, 167, 166];
    for (k, &count) in per_dim.iter().enumerate() {
        let d = k + 1;
        let summary = differential_check(d, count, 40_000 * d as u64).unwrap();
        out.checked += summary.total as usize;
        let bad = summary.total - summary.agree;
        for _ in 0..bad {
            out.failures.push(format!("d={d}: {:?}", summary.first_disagreement.as_ref().map(|x| x.0)));
        }
    }
    out
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 monochromatic construction count", criterion_1),
        ("2 colorful construction count", criterion_2),
        ("3 lower bound on random instances", criterion_3),
        ("4 extraction guarantee", criterion_4),
        ("5 near-tightness of the upper bound", criterion_5),
        ("6 colorful Helly harness", criterion_6),
        ("7 matching observation", criterion_7),
        ("8 simplex vs Fourier-Motzkin", criterion_8),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let pass = outcome.checked > 0 && outcome.failures.is_empty();
        all &= pass;
        println!(
            "{} criterion {name}: {}/{} checks ({:.1?})",
            if pass { "PASS" } else { "FAIL" },
            outcome.checked - outcome.failures.len(),
            outcome.checked,
            start.elapsed()
        );
        for f in outcome.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    assert!(all, "acceptance criteria failed");
}

#[test]
fn oracles_agree_with_known_values() {
    // 1 - sqrt(1 - 3/4) = 1/2 so the root term is 0 and alpha/2 = 3/8 dominates
    assert!(lower_bound_oracle(&ratio(3, 8), &ratio(3, 4), 1));
    assert!(!lower_bound_oracle(&ratio(37, 100), &ratio(3, 4), 1));
    // alpha = 35/36: 1 - 2/6 = 2/3
    assert!(lower_bound_oracle(&ratio(2, 3), &ratio(35, 36), 1));
    assert!(!lower_bound_oracle(&ratio(65, 100), &ratio(35, 36), 1));
    assert_eq!(binomial(10, 3), 120);
    let edges = vec![vec![0, 1], vec![1, 2]];
    assert_eq!(brute_independence(3, &edges), 2);
}
