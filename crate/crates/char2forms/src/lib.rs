//! Bilinear forms over GF(2^m): canonical forms with certificates, the Lie
//! (super)algebras that preserve them, contact 1-forms, and exhaustive GF(2)
//! censuses used as ground truth.

pub mod canon;
pub mod cli;
pub mod contact;
pub mod error;
pub mod ff;
pub mod liealg;
pub mod mat;
pub mod oracle;
pub mod superalg;

pub use error::{Error, Result};
pub use ff::Field;
pub use mat::Matrix;

/// Worker count for exhaustive searches: `CHAR2FORMS_THREADS` when set to a
/// positive integer, otherwise the available parallelism.
pub fn worker_threads() -> usize {
    std::env::var("CHAR2FORMS_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields-and-matrices.md")]
    mod fields_and_matrices {}
    #[doc = include_str!("../../../book/src/symmetric-forms.md")]
    mod symmetric_forms {}
    #[doc = include_str!("../../../book/src/offsets.md")]
    mod offsets {}
    #[doc = include_str!("../../../book/src/lie-algebras.md")]
    mod lie_algebras {}
    #[doc = include_str!("../../../book/src/superalgebras.md")]
    mod superalgebras {}
    #[doc = include_str!("../../../book/src/contact.md")]
    mod contact {}
    #[doc = include_str!("../../../book/src/census.md")]
    mod census {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
