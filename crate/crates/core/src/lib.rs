//! Summing-type norms for vector families and multilinear maps on
//! finite-dimensional ℓ_p spaces.
//!
//! The crate computes, at desk scale and over real scalars:
//!
//! - strong / weak / mixed-(s,q) sequence norms on finite families, the mixed
//!   norm bracketed by a primal factorization descent (upper bound) and a
//!   Maurey-type search over discrete probability measures (lower bound);
//! - operator norms and summing-type norms (absolutely summing, (p;q;r)
//!   variants, multiple summing over multi-index boxes, multiple mixing) of
//!   dense multilinear maps, as certified lower bounds with stored witnesses;
//! - executable checks of the classical inequalities and structure theorems
//!   tying those norms together (Littlewood 4/3, the multilinear
//!   2n/(n+1)-exponent inequality, Maurey duality, mixing characterization,
//!   coherence/compatibility transports, and the quotient identity), each
//!   phrased so that only exact-vs-exact or lower-vs-upper comparisons decide
//!   a verdict.
//!
//! Multi-start searches fan out on rayon when the `parallel` feature
//! (default) is enabled and reduce deterministically, so results are
//! byte-reproducible from their seeds in either mode.

pub mod budget;
pub mod error;
pub mod estimate;
pub mod exp;
pub mod gen;
pub mod laws;
pub mod par;
pub mod rng;
pub mod seqnorms;
pub mod spaces;
pub mod summing;
pub mod tensors;

pub use budget::SearchBudget;
pub use error::{Error, Result};
pub use estimate::{EstimateKind, NormEstimate, Witness};
pub use exp::Exp;
pub use spaces::{Functional, SpaceSpec, Vector};
