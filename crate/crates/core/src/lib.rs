//! Exact computer algebra for pencils of plane curves and for the plane
//! endomorphisms that preserve them.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the kernel. The main layers are:
//!
//! - [`poly`]: sparse homogeneous polynomials in two or three variables,
//!   with composition, derivatives, determinant constructions and linear
//!   coordinate changes
//! - [`gcd`] / [`factor`]: exact multivariate gcd and complete irreducible
//!   factorization over the rationals
//! - [`resultant`]: Sylvester and Macaulay resultants via fraction-free
//!   elimination
//! - [`divisor`]: formal integer combinations of irreducible forms on the
//!   plane and on the line
//! - [`pencil`]: pencils of plane curves: base points, special members,
//!   the ramification divisor and the `e`-invariant, shape classification
//! - [`endo`]: validated endomorphisms of the plane and the line
//! - [`invariance`]: invariance certificates, the ramification ledger,
//!   classification of invariant pairs and the normal-form families
//! - [`diophantine`]: enumeration of the multiplicity equations
//! - [`parse`]: the expression grammar used by the CLI and reports

pub mod diophantine;
pub mod divisor;
pub mod endo;
pub mod error;
pub mod factor;
pub mod gcd;
pub mod invariance;
pub mod parse;
pub mod pencil;
pub mod poly;
pub mod report;
pub mod resultant;

pub use error::Error;
pub use poly::{CanonicalForm, MultiPoly, Scalar};

/// Default seed for all reproducible random choices (coordinate changes,
/// generic lines, sample parameters). Printed in every report.
pub const DEFAULT_SEED: u64 = 0x70656e63696c;

/// Default total-degree bound for factorization and derived operations.
pub const DEFAULT_DEGREE_BOUND: u32 = 24;

/// Runtime limits and reproducibility knobs shared by the higher layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Total-degree bound for factorization; exceeding it is an explicit error.
    pub degree_bound: u32,
    /// Seed for all pseudo-random choices.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            degree_bound: DEFAULT_DEGREE_BOUND,
            seed: DEFAULT_SEED,
        }
    }
}

impl Config {
    /// A config with the given degree bound (clamped below at 4) and seed.
    pub fn new(degree_bound: u32, seed: u64) -> Self {
        Config {
            degree_bound: degree_bound.max(4),
            seed,
        }
    }
}
