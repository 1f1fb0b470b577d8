//! Sylvester solution spaces `J_λ(f) U = U J_μ(f)` and the fixed points of
//! `g = (J_{π_1}(f), …, J_{π_n}(f))` on respecting representations.

use super::field::{Elem, FieldSpec};
use super::jordan::{jordan_matrix, require_irreducible, JordanSpec};
use super::matrix::MatrixFq;
use super::reps::{arrows, par_count, relation_blocks, ArrowId, CyclicRelation};
use super::{OracleError, REP_BUDGET};
use crate::engine::{Quiver, RProvider};
use crate::partitions::{bracket_product, Partition, PartitionTuple};
use num_bigint::BigInt;
use num_traits::Pow;
use std::collections::BTreeMap;

/// Largest `rows · cols` for which the Sylvester system is solved.
pub const SYLVESTER_MAX_UNKNOWNS: usize = 400;

/// Matrix of `vec(U) ↦ vec(AU − UB)` on row-major `vec`.
fn sylvester_system(field: &FieldSpec, a: &MatrixFq, b: &MatrixFq) -> MatrixFq {
    let (r, c) = (a.rows(), b.rows());
    let mut sys = MatrixFq::zeros(r * c, r * c);
    for i in 0..r {
        for j in 0..c {
            let row = i * c + j;
            for l in 0..r {
                let v = a.get(i, l);
                if v != 0 {
                    let at = l * c + j;
                    sys.set(row, at, field.add(sys.get(row, at), v));
                }
            }
            for l in 0..c {
                let v = b.get(l, j);
                if v != 0 {
                    let at = i * c + l;
                    sys.set(row, at, field.sub(sys.get(row, at), v));
                }
            }
        }
    }
    sys
}

/// A basis of `{U : AU = UB}` for square `A` and `B`.
pub fn sylvester_basis(field: &FieldSpec, a: &MatrixFq, b: &MatrixFq) -> Vec<MatrixFq> {
    let (r, c) = (a.rows(), b.rows());
    sylvester_system(field, a, b).kernel_basis(field).into_iter().map(|v| MatrixFq::from_data(r, c, v)).collect()
}

fn jordan_pair(field: &FieldSpec, lambda: &Partition, mu: &Partition, f: &[Elem]) -> Result<(MatrixFq, MatrixFq), OracleError> {
    let a = jordan_matrix(field, &JordanSpec { lambda: lambda.clone(), f: f.to_vec() })?;
    let b = jordan_matrix(field, &JordanSpec { lambda: mu.clone(), f: f.to_vec() })?;
    Ok((a, b))
}

fn power(q: u32, e: usize) -> Result<u128, OracleError> {
    u32::try_from(e).ok().and_then(|e| (q as u128).checked_pow(e)).ok_or(OracleError::Budget {
        what: "count",
        needed: format!("{q}^{e}"),
        limit: u128::MAX.to_string(),
    })
}

/// `|{U : J_λ(f) U = U J_μ(f)}|`, as `q` to the nullity of the linear system.
pub fn sylvester_count(lambda: &Partition, mu: &Partition, f: &[Elem], field: &FieldSpec) -> Result<u128, OracleError> {
    let d = f.len().saturating_sub(1);
    let unknowns = d * lambda.weight() as usize * d * mu.weight() as usize;
    if unknowns > SYLVESTER_MAX_UNKNOWNS {
        return Err(OracleError::Budget {
            what: "Sylvester unknowns",
            needed: unknowns.to_string(),
            limit: SYLVESTER_MAX_UNKNOWNS.to_string(),
        });
    }
    let (a, b) = jordan_pair(field, lambda, mu, f)?;
    let sys = sylvester_system(field, &a, &b);
    power(field.size(), unknowns - sys.rank(field))
}

/// The same count by enumerating every `U`.
pub fn sylvester_count_brute(lambda: &Partition, mu: &Partition, f: &[Elem], field: &FieldSpec) -> Result<u128, OracleError> {
    let (a, b) = jordan_pair(field, lambda, mu, f)?;
    let (r, c) = (a.rows(), b.rows());
    let total = power(field.size(), r * c).ok().filter(|&t| t <= REP_BUDGET).ok_or(OracleError::Budget {
        what: "Sylvester enumeration",
        needed: format!("{}^{}", field.size(), r * c),
        limit: REP_BUDGET.to_string(),
    })?;
    Ok(par_count(total, field.size(), r * c, |digits| {
        let u = MatrixFq::from_data(r, c, digits.to_vec());
        a.mul(field, &u).unwrap() == u.mul(field, &b).unwrap()
    }))
}

/// `|X_g ∩ Rep(α, F_q)_R|` for `g = (J_{π_1}(f), …, J_{π_n}(f))`, by
/// enumerating fixed representations. Each arrow ranges over its Sylvester
/// solution space; arrows linked by relations are enumerated together.
pub fn stabilizer_nilpotent_count(
    quiver: &Quiver,
    relations: &[CyclicRelation],
    pi: &PartitionTuple,
    f: &[Elem],
    field: &FieldSpec,
) -> Result<u128, OracleError> {
    require_irreducible(field, f)?;
    if pi.len() != quiver.vertex_count() {
        return Err(OracleError::Shape(format!("{} partitions for {} vertices", pi.len(), quiver.vertex_count())));
    }
    let q = field.size();
    let g: Vec<MatrixFq> = pi
        .entries()
        .iter()
        .map(|lam| jordan_matrix(field, &JordanSpec { lambda: lam.clone(), f: f.to_vec() }))
        .collect::<Result<_, _>>()?;
    let bases: BTreeMap<ArrowId, Vec<MatrixFq>> =
        arrows(quiver).into_iter().map(|a| (a, sylvester_basis(field, &g[a.from], &g[a.to]))).collect();

    let (blocks, free) = relation_blocks(&arrows(quiver), relations);
    let mut total = power(q, free.iter().map(|a| bases[a].len()).sum())?;
    for (block_arrows, rels) in blocks {
        let dims: Vec<usize> = block_arrows.iter().map(|a| bases[a].len()).collect();
        let len: usize = dims.iter().sum();
        let size = power(q, len).ok().filter(|&t| t <= REP_BUDGET).ok_or(OracleError::Budget {
            what: "stabilizer enumeration",
            needed: format!("{q}^{len}"),
            limit: REP_BUDGET.to_string(),
        })?;
        let position: BTreeMap<ArrowId, usize> = block_arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let n = par_count(size, q, len, |digits| {
            let mut offset = 0;
            let maps: Vec<MatrixFq> = block_arrows
                .iter()
                .zip(&dims)
                .map(|(a, &k)| {
                    let (r, c) = (g[a.from].rows(), g[a.to].rows());
                    let mut m = MatrixFq::zeros(r, c);
                    for (b, &x) in bases[a].iter().zip(&digits[offset..offset + k]) {
                        if x != 0 {
                            m = m.add(field, &b.scale(field, x)).unwrap();
                        }
                    }
                    offset += k;
                    m
                })
                .collect();
            rels.iter().all(|rel| {
                let dim = g[rel.base()].rows();
                rel.evaluate(field, dim, |a| &maps[position[&a]]).is_nilpotent(field).unwrap()
            })
        });
        total = total.checked_mul(n).ok_or(OracleError::Budget {
            what: "count",
            needed: "overflow".into(),
            limit: u128::MAX.to_string(),
        })?;
    }
    Ok(total)
}

/// `q^{d Σ a_ij (|π_i, π_j|)} ∏_s r(d_π^s, q^d)` with `r` from the provider.
pub fn stabilizer_formula(quiver: &Quiver, provider: &RProvider, pi: &PartitionTuple, q: u32, d: u32) -> Result<BigInt, OracleError> {
    let n = quiver.vertex_count();
    let mut exponent = 0u64;
    for i in 0..n {
        for j in 0..n {
            exponent += quiver.arrow_count(i, j) as u64 * bracket_product(&pi.entries()[i], &pi.entries()[j]);
        }
    }
    let qd = BigInt::from(q).pow(d);
    let mut value: BigInt = Pow::pow(&qd, exponent);
    let qd = i64::try_from(&qd).map_err(|_| OracleError::Shape("field size too large".into()))?;
    for (_, v) in pi.multiplicity_vectors() {
        let r = provider.r(quiver, &v)?.eval_int(qd);
        if !r.is_integer() {
            return Err(OracleError::Shape(format!("provider value at {v} is not an integer")));
        }
        value *= r.to_integer();
    }
    Ok(value)
}
