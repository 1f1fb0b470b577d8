//! Type-U matrices, their cores, and the product and nilpotency lemmas.

use super::field::{Elem, FieldSpec};
use super::jordan::{jordan_matrix, JordanSpec};
use super::matrix::MatrixFq;
use super::stabilizer::sylvester_basis;
use super::{CheckRecord, OracleError};
use crate::partitions::{enumerate_partitions, inner_product, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest matrix size `lemma_suite` accepts.
pub const LEMMA_MAX_SIZE: usize = 4;
/// Cases per shape enumerated exhaustively; larger shapes are sampled.
pub const LEMMA_EXHAUSTIVE: u128 = 1 << 12;
/// Samples per shape in sampled mode.
pub const LEMMA_SAMPLES: usize = 64;

/// Arm length of the zero-based index `(i, j)` in an `m × n` matrix; the top
/// right corner has arm length 1.
pub fn arm_length(i: usize, j: usize, n: usize) -> usize {
    i + n - j
}

/// Equal entries along equal arm lengths and no non-zero entry beyond arm
/// length `min(m, n)`.
pub fn is_type_u(m: &MatrixFq) -> bool {
    let (r, c) = (m.rows(), m.cols());
    let limit = r.min(c);
    let mut seen: Vec<Option<Elem>> = vec![None; r + c + 1];
    for i in 0..r {
        for j in 0..c {
            let al = arm_length(i, j, c);
            let v = m.get(i, j);
            if al > limit && v != 0 {
                return false;
            }
            match seen[al] {
                Some(w) if w != v => return false,
                _ => seen[al] = Some(v),
            }
        }
    }
    true
}

/// Zero for a non-square matrix, `u_11 · I` for a square one.
pub fn core(m: &MatrixFq) -> MatrixFq {
    if !m.is_square() || m.rows() == 0 {
        return MatrixFq::zeros(m.rows(), m.cols());
    }
    let mut out = MatrixFq::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        out.set(i, i, m.get(0, 0));
    }
    out
}

/// The `m × n` type-U matrix whose first row, read from the first non-zero
/// position, is `params` (length `min(m, n)`).
pub fn type_u(rows: usize, cols: usize, params: &[Elem]) -> MatrixFq {
    let limit = rows.min(cols);
    assert_eq!(params.len(), limit, "a type-U matrix has min(m, n) parameters");
    let mut m = MatrixFq::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let al = arm_length(i, j, cols);
            if al <= limit {
                m.set(i, j, params[limit - al]);
            }
        }
    }
    m
}

fn offsets(parts: &[usize]) -> Vec<usize> {
    parts
        .iter()
        .scan(0, |acc, &p| {
            let o = *acc;
            *acc += p;
            Some(o)
        })
        .collect()
}

fn check_blocks(m: &MatrixFq, rows: &[usize], cols: &[usize]) -> Result<(), OracleError> {
    if rows.iter().sum::<usize>() != m.rows() || cols.iter().sum::<usize>() != m.cols() {
        return Err(OracleError::Shape(format!("blocks {rows:?} x {cols:?} do not tile {}x{}", m.rows(), m.cols())));
    }
    Ok(())
}

/// Every block of the `rows × cols` subdivision is type-U.
pub fn is_block_type_u(m: &MatrixFq, rows: &[usize], cols: &[usize]) -> Result<bool, OracleError> {
    check_blocks(m, rows, cols)?;
    let (ro, co) = (offsets(rows), offsets(cols));
    Ok(rows.iter().zip(&ro).all(|(&r, &i)| cols.iter().zip(&co).all(|(&c, &j)| is_type_u(&m.submatrix(i, j, r, c)))))
}

/// The blockwise core.
pub fn block_core(m: &MatrixFq, rows: &[usize], cols: &[usize]) -> Result<MatrixFq, OracleError> {
    check_blocks(m, rows, cols)?;
    let (ro, co) = (offsets(rows), offsets(cols));
    let mut out = MatrixFq::zeros(m.rows(), m.cols());
    for (&r, &i) in rows.iter().zip(&ro) {
        for (&c, &j) in cols.iter().zip(&co) {
            out.paste(i, j, &core(&m.submatrix(i, j, r, c)));
        }
    }
    Ok(out)
}

/// A block matrix of type-U blocks, consuming parameters block by block.
fn block_type_u(rows: &[usize], cols: &[usize], params: &[Elem]) -> MatrixFq {
    let (ro, co) = (offsets(rows), offsets(cols));
    let mut out = MatrixFq::zeros(rows.iter().sum(), cols.iter().sum());
    let mut k = 0;
    for (&r, &i) in rows.iter().zip(&ro) {
        for (&c, &j) in cols.iter().zip(&co) {
            let n = r.min(c);
            out.paste(i, j, &type_u(r, c, &params[k..k + n]));
            k += n;
        }
    }
    out
}

fn block_param_count(rows: &[usize], cols: &[usize]) -> usize {
    rows.iter().map(|&r| cols.iter().map(|&c| r.min(c)).sum::<usize>()).sum()
}

/// Parameter vectors for one shape: all of them when `q^len` is within the
/// exhaustive limit and `exhaustive_allowed`, else a seeded sample.
fn parameter_vectors(q: u32, len: usize, exhaustive_allowed: bool, rng: &mut ChaCha8Rng) -> (Vec<Vec<Elem>>, bool) {
    let total = (q as u128).checked_pow(len as u32);
    match total {
        Some(t) if exhaustive_allowed && t <= LEMMA_EXHAUSTIVE => {
            let all = (0..t)
                .map(|mut code| {
                    (0..len)
                        .map(|_| {
                            let d = (code % q as u128) as Elem;
                            code /= q as u128;
                            d
                        })
                        .collect()
                })
                .collect();
            (all, true)
        }
        _ => {
            let sample = (0..LEMMA_SAMPLES).map(|_| (0..len).map(|_| rng.gen_range(0..q) as Elem).collect()).collect();
            (sample, false)
        }
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    exhaustive_shapes: u64,
    sampled_shapes: u64,
    counterexamples: Vec<String>,
}

impl Tally {
    fn shape(&mut self, exhaustive: bool) {
        if exhaustive {
            self.exhaustive_shapes += 1;
        } else {
            self.sampled_shapes += 1;
        }
    }

    fn record(self, name: &str) -> CheckRecord {
        let actual = format!(
            "{} counterexamples in {} cases ({} shapes exhaustive, {} sampled){}",
            self.counterexamples.len(),
            self.cases,
            self.exhaustive_shapes,
            self.sampled_shapes,
            self.counterexamples.first().map(|c| format!("; first: {c}")).unwrap_or_default()
        );
        CheckRecord::new(name, "0 counterexamples", actual, self.counterexamples.is_empty())
    }
}

fn partitions_up_to(w: usize) -> Vec<Vec<usize>> {
    (1..=w as u32).flat_map(enumerate_partitions).map(|p| p.parts().iter().map(|&x| x as usize).collect()).collect()
}

/// Checks the product law for type-U matrices, its blockwise version, the
/// Turnbull–Aitken shape of Sylvester solutions, and the nilpotency
/// equivalence `U` nilpotent iff `U_0` nilpotent. Shapes up to `3 × 3` are
/// exhaustive when small enough; everything else is sampled from `seed`.
pub fn lemma_suite(field: &FieldSpec, size_bound: usize, seed: u64) -> Result<Vec<CheckRecord>, OracleError> {
    if size_bound > LEMMA_MAX_SIZE {
        return Err(OracleError::Budget {
            what: "lemma suite size",
            needed: size_bound.to_string(),
            limit: LEMMA_MAX_SIZE.to_string(),
        });
    }
    let q = field.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut products = Tally::default();
    for m in 1..=size_bound {
        for n in 1..=size_bound {
            for k in 1..=size_bound {
                let (a, b) = (m.min(n), n.min(k));
                let (params, exhaustive) = parameter_vectors(q, a + b, m.max(n).max(k) <= 3, &mut rng);
                products.shape(exhaustive);
                for p in params {
                    let (mm, nn) = (type_u(m, n, &p[..a]), type_u(n, k, &p[a..]));
                    let prod = mm.mul(field, &nn)?;
                    products.cases += 1;
                    if !is_type_u(&prod) || core(&prod) != core(&mm).mul(field, &core(&nn))? {
                        products.counterexamples.push(format!("{m}x{n} by {n}x{k} with {p:?}"));
                    }
                }
            }
        }
    }
    out.push(products.record("type-U product law"));

    let shapes = partitions_up_to(size_bound);
    let mut blockwise = Tally::default();
    for rows in &shapes {
        for mid in &shapes {
            for cols in &shapes {
                let (a, b) = (block_param_count(rows, mid), block_param_count(mid, cols));
                let small = [rows, mid, cols].iter().all(|s| s.iter().sum::<usize>() <= 3);
                let (params, exhaustive) = parameter_vectors(q, a + b, small, &mut rng);
                blockwise.shape(exhaustive);
                for p in params {
                    let mm = block_type_u(rows, mid, &p[..a]);
                    let nn = block_type_u(mid, cols, &p[a..]);
                    let prod = mm.mul(field, &nn)?;
                    blockwise.cases += 1;
                    let lhs = block_core(&prod, rows, cols)?;
                    let rhs = block_core(&mm, rows, mid)?.mul(field, &block_core(&nn, mid, cols)?)?;
                    if !is_block_type_u(&prod, rows, cols)? || lhs != rhs {
                        blockwise.counterexamples.push(format!("{rows:?} x {mid:?} x {cols:?} with {p:?}"));
                    }
                }
            }
        }
    }
    out.push(blockwise.record("blockwise type-U product law"));

    let mut shape_check = Tally::default();
    let mut nilpotency = Tally::default();
    for lam in &shapes {
        let lam_p = Partition::new(lam.iter().map(|&x| x as u32).collect());
        for a0 in field.elements() {
            let f = vec![field.neg(a0), 1];
            let j_lam = jordan_matrix(field, &JordanSpec { lambda: lam_p.clone(), f: f.clone() })?;
            for mu in &shapes {
                let mu_p = Partition::new(mu.iter().map(|&x| x as u32).collect());
                let j_mu = jordan_matrix(field, &JordanSpec { lambda: mu_p.clone(), f: f.clone() })?;
                let basis = sylvester_basis(field, &j_lam, &j_mu);
                shape_check.cases += 1;
                let expected = inner_product(&lam_p, &mu_p) as usize;
                if basis.len() != expected {
                    shape_check.counterexamples.push(format!("{lam:?}, {mu:?}: dimension {} != {expected}", basis.len()));
                }
                for u in &basis {
                    if !is_block_type_u(u, lam, mu)? {
                        shape_check.counterexamples.push(format!("{lam:?}, {mu:?}: solution not block type-U"));
                    }
                }
            }
            shape_check.shape(true);

            let basis = sylvester_basis(field, &j_lam, &j_lam);
            let small = lam.iter().sum::<usize>() <= 3;
            let (coeffs, exhaustive) = parameter_vectors(q, basis.len(), small, &mut rng);
            nilpotency.shape(exhaustive);
            let n = j_lam.rows();
            for c in coeffs {
                let mut u = MatrixFq::zeros(n, n);
                for (b, &x) in basis.iter().zip(&c) {
                    u = u.add(field, &b.scale(field, x))?;
                }
                let u0 = block_core(&u, lam, lam)?;
                nilpotency.cases += 1;
                let ok = u.is_nilpotent(field)? == u0.is_nilpotent(field)? && u.sub(field, &u0)?.is_nilpotent(field)?;
                if !ok {
                    nilpotency.counterexamples.push(format!("{lam:?}, a0 = {a0}, U = {:?}", u.data()));
                }
            }
        }
    }
    out.push(shape_check.record("Sylvester solutions are block type-U of dimension <lambda,mu>"));
    out.push(nilpotency.record("U nilpotent iff its core is nilpotent"));
    Ok(out)
}
