//! Exact censuses of distinct distances and distinct triangles determined
//! by finite point configurations in `R^d`.
//!
//! All arithmetic happens in a single real quadratic extension
//! `Q(sqrt(D))` with arbitrary-precision rational coefficients, so every
//! distance comparison, collinearity test and matrix pivot is decided
//! exactly — there is no floating point anywhere on a deciding path.
//!
//! The crate is organized as:
//!
//! * [`exactnum`] — the number type [`QuadExt`] with total ordering,
//!   exact signs and a textual format.
//! * [`geometry`] — validated point configurations, squared-distance
//!   matrices, embeddability ranks, circumcenters and equidistance loci.
//! * [`mod@census`] — congruence classes of triangles and
//!   distinct-distance multiplicities; the measurement everything else
//!   consumes.
//! * [`generators`] — exact constructions of the canonical extremal
//!   configurations (cross-polytopes, simplices, the square with center,
//!   the regular pentagon, and maximal planar few-distance sets).
//! * [`bounds`] — closed-form lower bounds on triangle counts plus an
//!   exact minimal triples-covering-pairs solver that certifies them.
//! * [`search`] — desk-scale exhaustive searches: vertex perturbation,
//!   point augmentation, structure checks and triangular-lattice
//!   subset enumeration.
//! * [`formats`] — JSON/CSV serialization for configurations and reports.

pub mod bounds;
pub mod census;
pub mod exactnum;
pub mod formats;
pub mod generators;
pub mod geometry;
pub mod search;

pub use census::{census, CensusReport, PointCensus, TriangleClass};
pub use exactnum::QuadExt;
pub use geometry::{Configuration, DistanceMatrix, Point, PointSet};
