//! Companion matrices and Jordan block matrices `J_λ(f)`.

use super::field::{is_irreducible, Elem, FieldSpec, FqPoly};
use super::matrix::MatrixFq;
use super::OracleError;
use crate::partitions::Partition;

/// A partition and a monic irreducible polynomial, ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanSpec {
    pub lambda: Partition,
    pub f: FqPoly,
}

/// `c(f)`: ones on the superdiagonal, `-a_0, …, -a_{d-1}` in the last row.
pub fn companion(field: &FieldSpec, f: &[Elem]) -> MatrixFq {
    let d = f.len() - 1;
    let mut c = MatrixFq::zeros(d, d);
    for i in 0..d.saturating_sub(1) {
        c.set(i, i + 1, 1);
    }
    for (j, &a) in f[..d].iter().enumerate() {
        c.set(d - 1, j, field.neg(a));
    }
    c
}

/// `J_m(f)`: `c(f)` on the block diagonal and identities on the block superdiagonal.
pub fn jordan_block(field: &FieldSpec, m: usize, f: &[Elem]) -> MatrixFq {
    let d = f.len() - 1;
    let c = companion(field, f);
    let id = MatrixFq::identity(d);
    let mut out = MatrixFq::zeros(m * d, m * d);
    for b in 0..m {
        out.paste(b * d, b * d, &c);
        if b + 1 < m {
            out.paste(b * d, (b + 1) * d, &id);
        }
    }
    out
}

pub(crate) fn require_irreducible(field: &FieldSpec, f: &[Elem]) -> Result<(), OracleError> {
    if f.last() != Some(&1) || f.len() < 2 {
        return Err(OracleError::Reducible(format!("{f:?} is not monic of positive degree")));
    }
    if !is_irreducible(field, f) {
        return Err(OracleError::Reducible(format!("{f:?} over F_{}", field.size())));
    }
    Ok(())
}

/// `J_λ(f) = J_{λ_1}(f) ⊕ J_{λ_2}(f) ⊕ …`.
pub fn jordan_matrix(field: &FieldSpec, spec: &JordanSpec) -> Result<MatrixFq, OracleError> {
    require_irreducible(field, &spec.f)?;
    let blocks: Vec<MatrixFq> = spec.lambda.parts().iter().map(|&m| jordan_block(field, m as usize, &spec.f)).collect();
    Ok(MatrixFq::block_diag(&blocks))
}
