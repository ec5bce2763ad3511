//! Exact constant-term engine for the Hilbert series of SL(2) tensor invariants.
//!
//! The crate computes the generating functions `G_k(q)` and `W_k(q)` whose coefficients
//! count Kronecker products of two-row characters and invariants of `SL(2)^{⊗k}`.
//! Several independent methods are provided and cross-checked against a brute-force
//! lattice-point counter.

pub mod ct;
pub mod divdiff;
pub mod ellrat;
pub mod error;
pub mod hyperoct;
pub mod laurent;
pub mod oracle;
pub mod pipeline;
pub mod rat;
pub mod sprime;
pub mod system;

pub use ellrat::{BinFactor, EllRational, SeriesOrder};
pub use error::{Error, Result};
pub use laurent::{LaurentPoly, Monomial, VarId, VarTable};
pub use rat::BigRat;
