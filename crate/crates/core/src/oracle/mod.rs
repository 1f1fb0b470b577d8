//! Brute-force ground truth over small finite fields.
//!
//! Everything here is computed by enumeration or by linear algebra over
//! `F_q` and is independent of the series machinery in [`crate::engine`].

pub mod field;
pub mod jordan;
pub mod matrix;
pub mod reps;
pub mod stabilizer;
pub mod typeu;

pub use field::{Elem, FieldSpec, FqPoly};
pub use jordan::{companion, jordan_matrix, JordanSpec};
pub use matrix::MatrixFq;
pub use reps::{arrows, count_respecting_reps, interpolate_r, orbit_count, standard_relations, ArrowId, CyclicRelation};
pub use stabilizer::{stabilizer_formula, stabilizer_nilpotent_count, sylvester_count, sylvester_count_brute};
pub use typeu::{block_core, core, is_block_type_u, is_type_u, lemma_suite};

use crate::engine::{Computation, EngineError, Quiver, RProvider};
use crate::series::{DimVector, SeriesBound};
use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

/// Largest number of points enumerated in one representation space.
pub const REP_BUDGET: u128 = 1 << 24;
/// Largest `|GL(α, F_q)|` accepted by [`orbit_count`].
pub const GROUP_BUDGET: u128 = 1 << 20;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("{what} needs {needed}, over the budget of {limit}")]
    Budget { what: &'static str, needed: String, limit: String },
    #[error("interpolation needs {needed} distinct field sizes, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("reducible polynomial: {0}")]
    Reducible(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// One comparison between an expected and an observed value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>, pass: bool) -> Self {
        CheckRecord { name: name.into(), expected: expected.into(), actual: actual.into(), pass }
    }

    /// A record comparing two displayable values for equality.
    pub fn compare<T: PartialEq + std::fmt::Display>(name: impl Into<String>, expected: T, actual: T) -> Self {
        let pass = expected == actual;
        CheckRecord::new(name, expected.to_string(), actual.to_string(), pass)
    }
}

/// Checks engine predictions at `α` over `field` against enumeration: the
/// provider's `r(α, q)` against [`count_respecting_reps`] and `M(α, q)`
/// against [`orbit_count`].
pub fn compare_engine(
    quiver: &Quiver,
    relations: &[CyclicRelation],
    provider: &RProvider,
    alpha: &DimVector,
    field: &FieldSpec,
) -> Result<Vec<CheckRecord>, OracleError> {
    let computation = Computation::run(quiver, provider, &SeriesBound::new(alpha.clone()))?;
    compare_with(&computation, relations, provider, alpha, field)
}

/// [`compare_engine`] against an existing computation whose bound covers `α`.
pub fn compare_with(
    computation: &Computation,
    relations: &[CyclicRelation],
    provider: &RProvider,
    alpha: &DimVector,
    field: &FieldSpec,
) -> Result<Vec<CheckRecord>, OracleError> {
    let quiver = &computation.quiver;
    let q = field.size();
    let r = provider.r(quiver, alpha)?.eval_int(q as i64);
    let counted = count_respecting_reps(quiver, relations, alpha, field)?;
    let r_check = CheckRecord::new(
        format!("r{alpha} at q={q}"),
        r.to_string(),
        counted.to_string(),
        r == num_rational::BigRational::from_integer(BigInt::from(counted)),
    );
    let m = computation
        .m_burnside
        .get(alpha)
        .ok_or_else(|| EngineError::Missing { what: "M", alpha: alpha.clone() })?
        .eval_int(q as i64);
    let orbits = orbit_count(quiver, relations, alpha, field)?;
    let m_check = CheckRecord::new(
        format!("M{alpha} at q={q}"),
        m.to_string(),
        orbits.to_string(),
        m == num_rational::BigRational::from_integer(BigInt::from(orbits)),
    );
    Ok(vec![r_check, m_check])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector::new(v.to_vec())
    }

    fn run(quiver: Quiver, provider: RProvider, alpha: &[u32], q: u32) {
        let rels = standard_relations(&quiver, &provider).unwrap();
        let report = compare_engine(&quiver, &rels, &provider, &dv(alpha), &FieldSpec::with_size(q).unwrap()).unwrap();
        for r in report {
            assert!(r.pass, "{}: expected {}, got {}", r.name, r.expected, r.actual);
        }
    }

    #[test]
    fn compare_examples() {
        run(Quiver::jordan(1), RProvider::LoopNilpotent(1), &[2], 2);
        run(Quiver::jordan(1), RProvider::LoopNilpotent(1), &[3], 3);
        run(Quiver::kronecker(1), RProvider::KroneckerNilpotent(1), &[2, 1], 2);
    }

    #[test]
    fn compare_detects_wrong_provider() {
        let quiver = Quiver::jordan(1);
        let rels = standard_relations(&quiver, &RProvider::LoopNilpotent(1)).unwrap();
        let report =
            compare_engine(&quiver, &rels, &RProvider::NoRelations, &dv(&[2]), &FieldSpec::with_size(2).unwrap()).unwrap();
        assert!(report.iter().all(|r| !r.pass));
    }
}
