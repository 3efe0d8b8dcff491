//! Exact-arithmetic engine for the Hochschild homology of iterated skew
//! polynomial rings.
//!
//! The algebra under study is the extension `E = E(A, u, alpha, p)` of a base
//! algebra `A` (a multiparametric quantum affine space, a polynomial ring
//! `k[t]`, or a Laurent ring `k[t, 1/t]`) by two variables `x`, `y` subject to
//!
//! ```text
//!   x a = alpha(a) x,    y a = beta(a) y,    y x = p x y + u - p alpha(u),
//! ```
//!
//! where `beta = gamma . alpha^{-1}` and `u` is an element of `A` with
//! `u a = gamma(a) u` and `gamma(u) = u`.  All arithmetic is exact over the
//! field of rational functions in the formal parameters `q` and `p` with
//! rational coefficients.
//!
//! The crate builds the small two-row double complexes that compute
//! `HH_*(E)`, truncates them to finite windows, runs exact sparse linear
//! algebra over the scalar field, and certifies which window homology
//! dimensions are stable under window enlargement.  A CLI (`skewhh`) binds
//! every verification suite to a config file.

pub mod algebra;
pub mod complex;
pub mod homology;
pub mod scalar;
pub mod skew;
pub mod verifier;

pub use algebra::{AElement, Automorphism, AutomorphismSpec, BaseAlgebra};
pub use scalar::Scalar;
pub use skew::{EElement, ESpec};

