//! Rank-metric codes and the size of their decoding lists.
//!
//! The crate provides exact arithmetic over `F_q` and `F_{q^m}`
//! ([`ff`], [`matfq`]), linearized polynomials ([`linpoly`]), Gabidulin,
//! constant-dimension and constant-rank code constructions ([`codes`]),
//! closed-form list-size bound calculators ([`bounds`]), explicit
//! adversarial received words with checkable certificates ([`witness`]) and
//! brute-force list-size oracles ([`oracle`]). [`acceptance`] bundles the
//! end-to-end checks run by `rankmetric verify`.

pub mod acceptance;
pub mod bounds;
pub mod codes;
pub mod error;
pub mod ff;
pub mod linpoly;
pub mod matfq;
pub mod oracle;
pub mod witness;

pub use error::{Error, Result};
pub use ff::{make_field, Field, FieldElement, Fq};
pub use matfq::{MatrixFq, Subspace};
