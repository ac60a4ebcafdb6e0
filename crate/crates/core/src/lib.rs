//! Paraunitary N-band filter banks, unitary polynomial loops, and the Cuntz
//! algebra representations they induce.

// `!(x <= tol)` is used on purpose so that NaN fails every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cascade;
pub mod cpoly;
pub mod cuntz;
pub mod error;
pub mod filters;
pub mod linalg;
pub mod polyloop;
pub mod sample;

pub use cascade::{SampledFunction, WaveletSet};
pub use cpoly::{LaurentMatPoly, MatPoly, ScalarPoly};
pub use error::{Error, Result};
pub use filters::{FilterBank, LowPassCandidate, RowData};
pub use polyloop::{certify_loop, ElementaryFactor, Factorization, PolyLoop};
