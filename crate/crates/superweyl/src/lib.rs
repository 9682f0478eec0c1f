//! Exact combinatorics of basic classical Lie superalgebras.
//!
//! The crate materializes root systems for the families gl(m,n), sl(m,n),
//! osp-type B(m,n)/D(m,n)/osp(2,2n) and the exceptionals D(2,1,α), F(4), G(3),
//! all over exact scalars (rationals, or rational functions in the formal
//! parameter of D(2,1,α)). On top of that sit the Weyl group with its dot
//! actions, odd-root subsets with the star action, typicality and Shapovalov
//! simplicity tests, odd reflections between Borels, truncated formal
//! characters, and the perfect-mate construction for strongly typical central
//! characters. Everything is small enough to verify by brute force, and the
//! test suite does exactly that.

pub mod scalar;
pub mod rootdata;
pub mod weyl;
pub mod gamma;
pub mod verma;
pub mod borels;
pub mod mates;
pub mod characters;
pub mod verify;
pub mod cli;

pub use rootdata::{AlgebraId, Family, RootSystem, Weight};
pub use scalar::Scalar;

/// Crate-wide error type. The CLI maps each variant to a distinct exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input text (algebra names, weights, scalars, flags).
    #[error("parse error: {0}")]
    Parse(String),
    /// A precondition of some operation does not hold for these inputs.
    #[error("{0}")]
    Domain(String),
    /// A brute-force verification that is supposed to succeed did not.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 1,
            Error::Domain(_) => 2,
            Error::Verification(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
