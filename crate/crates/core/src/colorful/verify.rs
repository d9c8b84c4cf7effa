//! End-to-end verification report and sweep rows.

use std::io::Write;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::extract::extract_with_hypergraphs;
use super::{
    build_nonintersecting_hypergraphs, count_intersecting_colorful,
    max_intersecting_subfamily_exact, BoundValue, ColorClasses, IntersectionProfile,
    SubfamilyResult, DEFAULT_MAX_EXACT_N,
};
use crate::error::Result;
use crate::geometry::intersect_sets;
use crate::scalar::{serde_ratio, to_ratio_string, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Classes larger than this skip exact maximization.
    pub max_exact_n: usize,
    /// Width `2^-bits` of rational enclosures for irrational bounds.
    pub enclosure_bits: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_exact_n: DEFAULT_MAX_EXACT_N,
            enclosure_bits: 48,
        }
    }
}

/// A bound value: exact when rational, otherwise a rational enclosure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(with = "serde_ratio::option")]
    pub exact: Option<Scalar>,
    #[serde(with = "serde_ratio::vec")]
    pub enclosure: Vec<Scalar>,
}

impl BoundReport {
    fn new(exact: Option<Scalar>, (lo, hi): (Scalar, Scalar)) -> Self {
        BoundReport {
            exact,
            enclosure: vec![lo, hi],
        }
    }

    /// The exact value, or the lower end of the enclosure.
    pub fn representative(&self) -> &Scalar {
        self.exact.as_ref().unwrap_or(&self.enclosure[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractionReport {
    pub chosen_class: usize,
    pub matchings: Vec<Vec<Vec<usize>>>,
    pub closures: Vec<Vec<Vec<usize>>>,
    pub subfamily: SubfamilyResult,
    pub witness_verified: bool,
    pub guarantee_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    /// Filled in by front ends for provenance.
    pub invocation: Vec<String>,
    pub dim: usize,
    pub class_sizes: Vec<usize>,
    pub colorful: IntersectionProfile,
    #[serde(with = "serde_ratio")]
    pub alpha: Scalar,
    /// Edge lists of the non-intersecting-tuple hypergraphs, per class.
    pub nonintersecting_edges: Vec<Vec<Vec<usize>>>,
    pub extraction: ExtractionReport,
    /// Exact maximum intersecting subfamily per class, `None` above scale.
    pub exact_maxima: Vec<Option<SubfamilyResult>>,
    pub scale_limited: bool,
    /// `"exact"` or `"extraction"`.
    pub beta_source: &'static str,
    pub best_class: usize,
    #[serde(with = "serde_ratio")]
    pub beta_observed: Scalar,
    /// `max{alpha/(d+1), 1-(d+1)(1-alpha)^(1/(d+1))}`; absent when `alpha = 0`.
    pub lower_bound: Option<BoundReport>,
    pub lower_bound_holds: bool,
    /// `1 - (1-alpha)^(1/(d+1))`; absent when `alpha = 0`.
    pub upper_bound: Option<BoundReport>,
    pub beta_within_upper_bound: Option<bool>,
    /// `(d+1) / n` for the best class.
    #[serde(with = "serde_ratio")]
    pub upper_gap_slack: Scalar,
    /// `beta_observed - upper_bound <= upper_gap_slack`.
    pub upper_gap_within_slack: Option<bool>,
    /// First class whose whole family intersects, if any.
    pub fully_intersecting_class: Option<usize>,
    pub verdict: &'static str,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }

    pub fn bound(&self) -> Option<BoundValue> {
        BoundValue::new(self.alpha.clone(), self.dim).ok()
    }
}

/// The first class that is intersecting as a whole.
pub fn colorful_helly_class(classes: &ColorClasses) -> Result<Option<usize>> {
    for (i, class) in classes.classes().iter().enumerate() {
        if intersect_sets(class)?.is_nonempty() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub fn verify_theorem(classes: &ColorClasses, options: &VerifyOptions) -> Result<Report> {
    let d = classes.dim();
    let sizes = classes.sizes();
    let colorful = count_intersecting_colorful(classes)?;
    let alpha = colorful.alpha.clone();

    let hypergraphs = build_nonintersecting_hypergraphs(classes)?;
    let nonintersecting_edges = hypergraphs.iter().map(|h| h.edges().to_vec()).collect();
    let extraction = extract_with_hypergraphs(classes, hypergraphs)?;
    let witness_verified = extraction
        .subfamily
        .witness_valid(classes.class(extraction.chosen_class));
    let guarantee_holds = extraction.guarantee_holds(&alpha, d)?;

    let mut exact_maxima = Vec::with_capacity(sizes.len());
    for (i, class) in classes.classes().iter().enumerate() {
        if class.len() > options.max_exact_n {
            exact_maxima.push(None);
            continue;
        }
        let mut r = max_intersecting_subfamily_exact(class, options.max_exact_n)?;
        r.class_index = i;
        exact_maxima.push(Some(r));
    }
    let scale_limited = exact_maxima.iter().any(Option::is_none);

    let (beta_source, best_class, beta_observed) = if scale_limited {
        let s = &extraction.subfamily;
        ("extraction", s.class_index, s.beta_observed.clone())
    } else {
        let mut best = 0;
        for (i, r) in exact_maxima.iter().enumerate() {
            let r = r.as_ref().expect("all classes in scale");
            let cur = exact_maxima[best].as_ref().expect("all classes in scale");
            if r.beta_observed > cur.beta_observed {
                best = i;
            }
        }
        let beta = exact_maxima[best].as_ref().unwrap().beta_observed.clone();
        ("exact", best, beta)
    };

    let upper_gap_slack = Scalar::new((d + 1).into(), sizes[best_class].into());
    let bound = alpha
        .is_positive()
        .then(|| BoundValue::new(alpha.clone(), d))
        .transpose()?;
    let (lower_bound, lower_bound_holds, upper_bound, within_upper, gap_ok) = match &bound {
        Some(b) => (
            Some(BoundReport::new(
                b.lower_bound_exact(),
                b.lower_bound_enclosure(options.enclosure_bits),
            )),
            b.lower_bound_holds(&beta_observed),
            Some(BoundReport::new(
                b.upper_bound_exact(),
                b.upper_bound_enclosure(options.enclosure_bits),
            )),
            Some(b.upper_bound_holds(&beta_observed)),
            Some(b.upper_gap_within(&beta_observed, &upper_gap_slack)),
        ),
        // alpha = 0: the lower bound is at most zero and holds vacuously.
        None => (None, true, None, None, None),
    };

    let fully_intersecting_class = colorful_helly_class(classes)?;
    let verdict = if lower_bound_holds && guarantee_holds && witness_verified {
        "PASS"
    } else {
        "FAIL"
    };

    Ok(Report {
        invocation: Vec::new(),
        dim: d,
        class_sizes: sizes,
        colorful,
        alpha,
        nonintersecting_edges,
        extraction: ExtractionReport {
            chosen_class: extraction.chosen_class,
            matchings: extraction
                .matchings
                .iter()
                .map(|m| m.edges().to_vec())
                .collect(),
            closures: extraction.closures.clone(),
            subfamily: extraction.subfamily.clone(),
            witness_verified,
            guarantee_holds,
        },
        exact_maxima,
        scale_limited,
        beta_source,
        best_class,
        beta_observed,
        lower_bound,
        lower_bound_holds,
        upper_bound,
        beta_within_upper_bound: within_upper,
        upper_gap_slack,
        upper_gap_within_slack: gap_ok,
        fully_intersecting_class,
        verdict,
    })
}

/// One `(alpha, beta_observed, lower_bound, upper_bound)` row of a sweep.
/// Irrational bounds are written as the lower end of their enclosure and
/// flagged in the `*_exact` columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub kind: String,
    pub param: String,
    pub d: usize,
    pub n: String,
    pub alpha: String,
    pub beta_observed: String,
    pub lower_bound: String,
    pub upper_bound: String,
    pub lower_bound_exact: bool,
    pub upper_bound_exact: bool,
    pub lower_bound_holds: bool,
    pub beta_within_upper_bound: String,
}

impl SweepRow {
    pub fn from_report(kind: &str, param: &str, report: &Report) -> Self {
        let cell = |b: &Option<BoundReport>| match b {
            Some(b) => (to_ratio_string(b.representative()), b.exact.is_some()),
            None => (to_ratio_string(&Scalar::zero()), true),
        };
        let (lower, lower_exact) = cell(&report.lower_bound);
        let (upper, upper_exact) = match &report.upper_bound {
            Some(_) => cell(&report.upper_bound),
            None => (to_ratio_string(&Scalar::zero()), true),
        };
        let sizes: Vec<String> = report.class_sizes.iter().map(usize::to_string).collect();
        SweepRow {
            kind: kind.to_string(),
            param: param.to_string(),
            d: report.dim,
            n: sizes.join(";"),
            alpha: to_ratio_string(&report.alpha),
            beta_observed: to_ratio_string(&report.beta_observed),
            lower_bound: lower,
            upper_bound: upper,
            lower_bound_exact: lower_exact,
            upper_bound_exact: upper_exact,
            lower_bound_holds: report.lower_bound_holds,
            beta_within_upper_bound: match report.beta_within_upper_bound {
                Some(b) => b.to_string(),
                None => String::new(),
            },
        }
    }
}

/// Writes rows as CSV, preceded by `# comment` lines when given.
pub fn write_sweep_csv<W: Write>(
    mut out: W,
    comments: &[String],
    rows: &[SweepRow],
) -> std::io::Result<()> {
    for c in comments {
        writeln!(out, "# {c}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(std::io::Error::other)?;
    }
    w.flush()
}
