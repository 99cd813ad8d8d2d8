//! Exact computation in the intrinsic hyperplane arrangements of hook Specht
//! modules: explicit modules over the rationals, a matroid rank/closure
//! engine, exact line censuses, seeded randomized line sampling, and
//! capture-recapture estimates of line counts.

pub mod arrangement;
pub mod battery;
pub mod census;
pub mod combinat;
pub mod error;
pub mod estimator;
pub mod lattice;
pub mod linalg;
pub mod partition;
pub mod perm;
pub mod sampler;
pub mod setmap;
pub mod tabloid;
pub mod specht;

pub use error::{Error, Result};
