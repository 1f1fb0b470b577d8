//! Exact counting polynomials for representations of quivers with nilpotent
//! cyclic relations over finite fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactalg`]: `Q[q]`, `Q(q)` and the standard arithmetic functions.
//! - [`partitions`]: partitions, their inner products and tuple enumeration.
//! - [`series`]: box-truncated power series in `X_1..X_n` over `Q(q)`.
//! - [`engine`]: the generating series `P`, its logarithm, and the polynomials
//!   `A`, `I`, `M` with their consistency checks.
//! - [`oracle`]: brute-force counts over small finite fields.

pub mod engine;
pub mod exactalg;
pub mod oracle;
pub mod partitions;
pub mod series;
