//! Finite-window homology over the exact scalar field: truncation of the
//! double complexes to sparse matrices, fraction-free elimination, two
//! independent homology routes, and window-stability certification.

pub mod build;
pub mod matrix;
pub mod report;
pub mod solve;

pub use build::{build, BuildOptions, FiniteComplex, SignRule};
pub use report::{BlockReport, HomologyReport};
pub use solve::{certify, certify_unchecked, homology, min_margin, CertifyOptions, Route};
