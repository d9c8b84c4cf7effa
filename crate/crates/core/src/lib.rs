//! Exact machinery for the colorful fractional Helly theorem.
//!
//! Convex sets are H-representations (finite systems of linear equalities and
//! inequalities over the rationals). Every intersection decision goes through
//! an exact phase-I simplex, and every bound involving `(1 - alpha)^(1/(d+1))`
//! is decided by comparing integer powers of rationals.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: constraints, convex sets, exact feasibility, general position.
//! * [`hypergraph`]: uniform hypergraphs, maximal/maximum matchings, independence.
//! * [`colorful`]: tuple counting, matching-based extraction, exact maximization,
//!   bound algebra and end-to-end verification reports.
//! * [`generators`]: extremal constructions and seeded random instances.
//! * [`instance`]: the plain-text instance file format.

pub mod colorful;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod hypergraph;
pub mod instance;
pub mod scalar;

pub use colorful::{
    beta_lower_bound_holds, beta_upper_bound_holds, build_nonintersecting_hypergraphs,
    count_intersecting_colorful, count_intersecting_monochromatic, extract_intersecting_subfamily,
    max_intersecting_subfamily_exact, verify_theorem, BoundValue, ColorClasses, Extraction,
    IntersectionProfile, Report, SubfamilyResult, VerifyOptions,
};
pub use error::{Error, Result};
pub use generators::{ConstructionSpec, SetModel};
pub use geometry::{
    feasible, intersect_sets, is_general_position, make_hyperplane, make_whole_space, ConvexSet,
    FeasibilityResult, LinearConstraint, Relation,
};
pub use hypergraph::{Hypergraph, Matching};
pub use instance::{Instance, Member};
pub use scalar::Scalar;
