//! Exact distances between 2-parameter interval persistence modules.
//!
//! Intervals are staircase polygons in the extended plane with rational
//! coordinates. The crate computes the interleaving distance between two
//! intervals, the bottleneck distance between direct sums of intervals and
//! the dimension distance between grid functions, all with exact arithmetic.
//! [`oracle`] holds slow brute-force counterparts used to cross-check the
//! fast algorithms.

pub mod bottleneck;
pub mod dimdist;
pub mod extreal;
pub mod interleaving;
pub mod intersection;
pub mod interval;
pub mod io;
pub mod oracle;
pub mod par;

pub use bottleneck::{bottleneck_distance, BottleneckResult, DistanceMatrix, Matching};
pub use dimdist::{dimension_distance, DimensionDistance, GridFunction};
pub use extreal::{dist_inf, ext_add, ExtendedScalar, Point, Rational};
pub use interleaving::interleaving_distance;
pub use interval::{IntervalError, IntervalModule, MonotoneChain, StaircaseInterval};
pub use par::Execution;
pub mod random;
