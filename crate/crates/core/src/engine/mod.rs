//! The counting pipeline: `P` from a quiver and an r-provider, then `H`, `A`,
//! `I`, `M` and the consistency checks that tie them together.

mod providers;

pub use providers::{r_kronecker_nilpotent, r_loop_nilpotent, r_no_relations, RProvider};

use crate::exactalg::{divisors, irreducible_count, mobius, AlgError, QPolynomial, QRationalFunction};
use crate::partitions::{b_poly, bracket_product, enumerate_tuples, inner_product, PartitionTuple};
use crate::series::{DimVector, SeriesBound, SeriesError, TruncatedSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("provider has no value for {}", fmt_list(.0))]
    ProviderGap(Vec<DimVector>),
    #[error("{what} at {alpha} is not a polynomial: {value}")]
    NotPolynomial { what: &'static str, alpha: DimVector, value: String },
    #[error("{what} is missing at {alpha}")]
    Missing { what: &'static str, alpha: DimVector },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("provider does not match the quiver: {0}")]
    ProviderMismatch(String),
    #[error("expected {expected} components, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

fn fmt_list(v: &[DimVector]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// A quiver given by its arrow-count matrix `a_ij` (arrows `i → j`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    arrows: Vec<Vec<u32>>,
}

impl Quiver {
    pub fn new(arrows: Vec<Vec<u32>>) -> Result<Self, EngineError> {
        let n = arrows.len();
        if n == 0 {
            return Err(EngineError::InvalidQuiver("no vertices".into()));
        }
        if let Some(row) = arrows.iter().position(|r| r.len() != n) {
            return Err(EngineError::InvalidQuiver(format!("row {row} has length {}, expected {n}", arrows[row].len())));
        }
        Ok(Quiver { arrows })
    }

    /// One vertex with `g` loops.
    pub fn jordan(g: u32) -> Self {
        Quiver { arrows: vec![vec![g]] }
    }

    /// One arrow `1 → 2` and `g` arrows `2 → 1`.
    pub fn kronecker(g: u32) -> Self {
        Quiver { arrows: vec![vec![0, 1], vec![g, 0]] }
    }

    pub fn vertex_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_count(&self, i: usize, j: usize) -> u32 {
        self.arrows[i][j]
    }

    pub fn arrows(&self) -> &[Vec<u32>] {
        &self.arrows
    }

    fn check_len(&self, alpha: &DimVector) -> Result<(), EngineError> {
        if alpha.len() == self.vertex_count() {
            Ok(())
        } else {
            Err(EngineError::DimensionMismatch { expected: self.vertex_count(), found: alpha.len() })
        }
    }
}

/// `⟨α, β⟩ = Σ α_i β_i - Σ a_ij α_i β_j`, loops included.
pub fn euler_form(quiver: &Quiver, alpha: &DimVector, beta: &DimVector) -> i64 {
    let (a, b) = (alpha.components(), beta.components());
    let diag: i64 = a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum();
    let mut off = 0i64;
    for i in 0..quiver.vertex_count() {
        for j in 0..quiver.vertex_count() {
            off += quiver.arrow_count(i, j) as i64 * a[i] as i64 * b[j] as i64;
        }
    }
    diag - off
}

fn q_pow(e: u64) -> QPolynomial {
    QPolynomial::monomial(BigRational::one(), u32::try_from(e).expect("exponent fits in u32"))
}

/// `Π_i q^{⟨π_i, π_i⟩} b_{π_i}(q^{-1})`, assembled as one polynomial.
pub fn hua_denominator(pi: &PartitionTuple) -> QPolynomial {
    pi.entries().iter().fold(QPolynomial::one(), |acc, lambda| {
        let k = u32::try_from(inner_product(lambda, lambda)).expect("degree fits in u32");
        &acc * &b_poly(lambda).reversed(k)
    })
}

fn bracket_exponent(quiver: &Quiver, pi: &PartitionTuple) -> u64 {
    let e = pi.entries();
    let mut acc = 0;
    for i in 0..e.len() {
        for j in 0..e.len() {
            let a = quiver.arrow_count(i, j) as u64;
            if a > 0 {
                acc += a * bracket_product(&e[i], &e[j]);
            }
        }
    }
    acc
}

fn hua_term_with<F>(quiver: &Quiver, pi: &PartitionTuple, mut r: F) -> Result<QRationalFunction, EngineError>
where
    F: FnMut(&DimVector) -> Result<QPolynomial, EngineError>,
{
    let mut num = q_pow(bracket_exponent(quiver, pi));
    for (_, d) in pi.multiplicity_vectors() {
        num = &num * &r(&d)?;
    }
    Ok(QRationalFunction::new(num, hua_denominator(pi))?)
}

/// The summand of `P` indexed by the tuple `π`:
/// `q^{Σ a_ij (|π_i, π_j|)} Π_s r(d_π^s, q) / Π_i q^{⟨π_i,π_i⟩} b_{π_i}(q^{-1})`.
pub fn hua_term(quiver: &Quiver, provider: &RProvider, pi: &PartitionTuple) -> Result<QRationalFunction, EngineError> {
    hua_term_with(quiver, pi, |d| provider.r(quiver, d))
}

/// The same summand for the empty relation set, written directly as
/// `q^{Σ a_ij ⟨π_i, π_j⟩} / Π_i q^{⟨π_i,π_i⟩} b_{π_i}(q^{-1})`.
pub fn case1_term(quiver: &Quiver, pi: &PartitionTuple) -> QRationalFunction {
    let e = pi.entries();
    let mut exp = 0;
    for i in 0..e.len() {
        for j in 0..e.len() {
            exp += quiver.arrow_count(i, j) as u64 * inner_product(&e[i], &e[j]);
        }
    }
    QRationalFunction::new(q_pow(exp), hua_denominator(pi)).expect("denominator is non-zero")
}

fn assemble<F>(bound: &SeriesBound, term: F) -> Result<TruncatedSeries, EngineError>
where
    F: Fn(&PartitionTuple) -> Result<QRationalFunction, EngineError> + Sync,
{
    let alphas: Vec<DimVector> = bound.monomials().filter(|a| !a.is_zero()).collect();
    let coeffs = alphas
        .par_iter()
        .map(|alpha| {
            let terms = enumerate_tuples(alpha).map(|pi| term(&pi)).collect::<Result<Vec<_>, _>>()?;
            Ok((alpha.clone(), QRationalFunction::sum(&terms)))
        })
        .collect::<Result<Vec<_>, EngineError>>()?;
    let one = (DimVector::zero(bound.vertex_count()), QRationalFunction::one());
    Ok(TruncatedSeries::from_terms(bound.clone(), std::iter::once(one).chain(coeffs)))
}

/// `P(X, q)` truncated to the box. Provider values are gathered up front so
/// that a table gap is reported in full before any arithmetic starts.
pub fn build_p(quiver: &Quiver, provider: &RProvider, bound: &SeriesBound) -> Result<TruncatedSeries, EngineError> {
    quiver.check_len(bound.upper())?;
    provider.validate(quiver)?;
    let r_table = provider.table_for(quiver, bound)?;
    assemble(bound, |pi| {
        hua_term_with(quiver, pi, |d| r_table.get(d).cloned().ok_or_else(|| EngineError::ProviderGap(vec![d.clone()])))
    })
}

/// `P` for the empty relation set from the closed form of its summands.
pub fn build_p_case1(quiver: &Quiver, bound: &SeriesBound) -> Result<TruncatedSeries, EngineError> {
    quiver.check_len(bound.upper())?;
    assemble(bound, |pi| Ok(case1_term(quiver, pi)))
}

/// Coefficients `H(α, q)` of `log P` for `0 < α ≤ bound`.
pub fn compute_h(p: &TruncatedSeries) -> Result<BTreeMap<DimVector, QRationalFunction>, EngineError> {
    Ok(log_coefficients(&p.log()?))
}

fn log_coefficients(log: &TruncatedSeries) -> BTreeMap<DimVector, QRationalFunction> {
    log.bound()
        .monomials()
        .filter(|a| !a.is_zero())
        .map(|a| {
            let c = log.coefficient(&a).expect("inside bound");
            (a, c)
        })
        .collect()
}

fn require_poly(what: &'static str, alpha: &DimVector, f: QRationalFunction) -> Result<QPolynomial, EngineError> {
    f.into_polynomial().map_err(|f| EngineError::NotPolynomial { what, alpha: alpha.clone(), value: f.to_string() })
}

fn lookup<'a, V>(what: &'static str, map: &'a BTreeMap<DimVector, V>, alpha: &DimVector) -> Result<&'a V, EngineError> {
    map.get(alpha).ok_or_else(|| EngineError::Missing { what, alpha: alpha.clone() })
}

fn ratio(n: i64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `A(α, q) = (q - 1) Σ_{d | ᾱ} μ(d)/d · H(α/d, q^d)`, required to be a polynomial.
pub fn compute_a(h: &BTreeMap<DimVector, QRationalFunction>, alpha: &DimVector) -> Result<QPolynomial, EngineError> {
    assert!(!alpha.is_zero(), "A is defined for non-zero dimension vectors");
    let mut terms = Vec::new();
    for d in divisors(alpha.gcd() as u64) {
        let mu = mobius(d)?;
        if mu == 0 {
            continue;
        }
        let sub = alpha.divide(d as u32).expect("d divides every component");
        terms.push(lookup("H", h, &sub)?.dilate(d as u32).scale(&ratio(mu, d)));
    }
    let sum = QRationalFunction::sum(&terms);
    let q_minus_1 = QRationalFunction::from_poly(QPolynomial::from_ints(&[-1, 1]));
    require_poly("A", alpha, &sum * &q_minus_1)
}

/// `A` for every key of `h`.
pub fn compute_a_table(h: &BTreeMap<DimVector, QRationalFunction>) -> Result<BTreeMap<DimVector, QPolynomial>, EngineError> {
    let keys: Vec<&DimVector> = h.keys().collect();
    keys.par_iter().map(|&a| Ok((a.clone(), compute_a(h, a)?))).collect()
}

/// `I(α, q) = Σ_{d | ᾱ} (1/d) Σ_{r | d} μ(d/r) A(α/d, q^r)`.
pub fn compute_i(a_table: &BTreeMap<DimVector, QPolynomial>, alpha: &DimVector) -> Result<QPolynomial, EngineError> {
    let mut acc = QPolynomial::zero();
    for d in divisors(alpha.gcd() as u64) {
        let a = lookup("A", a_table, &alpha.divide(d as u32).expect("d divides every component"))?;
        let mut inner = QPolynomial::zero();
        for r in divisors(d) {
            let mu = mobius(d / r)?;
            if mu != 0 {
                inner = &inner + &a.dilate(r as u32).scale(&ratio(mu, 1));
            }
        }
        acc = &acc + &inner.scale(&ratio(1, d));
    }
    Ok(acc)
}

pub fn compute_i_table(a_table: &BTreeMap<DimVector, QPolynomial>) -> Result<BTreeMap<DimVector, QPolynomial>, EngineError> {
    a_table.keys().map(|a| Ok((a.clone(), compute_i(a_table, a)?))).collect()
}

/// Polynomial coefficients of a series with constant term 1, excluding `X^0`.
pub fn polynomial_coefficients(
    what: &'static str,
    s: &TruncatedSeries,
) -> Result<BTreeMap<DimVector, QPolynomial>, EngineError> {
    s.bound()
        .monomials()
        .filter(|a| !a.is_zero())
        .map(|a| {
            let c = s.coefficient(&a)?;
            Ok((a.clone(), require_poly(what, &a, c)?))
        })
        .collect()
}

/// `Σ M(α) X^α = Π_{d ≥ 1} P(X^d, q^d)^{ϕ_d(q)}` from a precomputed `P`.
pub fn m_burnside_from_p(p: &TruncatedSeries) -> Result<TruncatedSeries, EngineError> {
    m_burnside_from_log(&p.log()?)
}

/// The Burnside product from `log P`. Since `log P(X^d, q^d)` is the
/// dilation of `log P`, the product is `exp(Σ_d ϕ_d(q) · (log P)(X^d, q^d))`;
/// only `d ≤` the largest bound component reaches inside the box.
pub fn m_burnside_from_log(log_p: &TruncatedSeries) -> Result<TruncatedSeries, EngineError> {
    let bound = log_p.bound().clone();
    let mut acc = TruncatedSeries::zero(bound.clone());
    for d in 1..=bound.upper().max_component().max(1) {
        let phi = QRationalFunction::from_poly(irreducible_count(d as u64)?);
        acc = acc.add(&log_p.dilate(d).scale(&phi))?;
    }
    Ok(acc.exp()?)
}

pub fn compute_m_burnside(quiver: &Quiver, provider: &RProvider, bound: &SeriesBound) -> Result<TruncatedSeries, EngineError> {
    m_burnside_from_p(&build_p(quiver, provider, bound)?)
}

/// `Π_α (1 - X^α)^{-I(α, q)}` truncated to the box. The logarithm of each
/// factor is `I(α) Σ_k X^{kα}/k`, so the product is one exponential.
pub fn compute_m_krullschmidt(
    i_table: &BTreeMap<DimVector, QPolynomial>,
    bound: &SeriesBound,
) -> Result<TruncatedSeries, EngineError> {
    let mut log: BTreeMap<DimVector, QPolynomial> = BTreeMap::new();
    for alpha in bound.monomials().filter(|a| !a.is_zero()) {
        let i = lookup("I", i_table, &alpha)?;
        let mut k = 1;
        loop {
            let beta = alpha.scale(k);
            if !bound.contains(&beta) {
                break;
            }
            let slot = log.entry(beta).or_insert_with(QPolynomial::zero);
            *slot = &*slot + &i.scale(&ratio(1, k as u64));
            k += 1;
        }
    }
    let log = TruncatedSeries::from_terms(bound.clone(), log.into_iter().map(|(a, p)| (a, p.into())));
    Ok(log.exp()?)
}

/// `Σ_{d | β̄} (1/d) A(β/d, q^d) / (q^d - 1)`, the coefficient of `X^β` in
/// the logarithm of `Π_α Π_s Π_{i≥0} (1 - q^{s+i} X^α)^{t_{α,s}}`.
pub fn h_from_a<F>(beta: &DimVector, mut a: F) -> Option<QRationalFunction>
where
    F: FnMut(&DimVector) -> Option<QPolynomial>,
{
    let mut terms = Vec::new();
    for d in divisors(beta.gcd() as u64) {
        let d32 = d as u32;
        let num = a(&beta.divide(d32)?)?.dilate(d32).scale(&ratio(1, d));
        let mut den = vec![-1i64];
        den.resize(d as usize, 0);
        den.push(1);
        terms.push(QRationalFunction::new(num, QPolynomial::from_ints(&den)).ok()?);
    }
    Some(QRationalFunction::sum(&terms))
}

/// `Σ_s t_s q^s` keeping only `s ≤ 1 - ⟨α, α⟩`.
fn truncated_a(quiver: &Quiver, alpha: &DimVector, a: &QPolynomial) -> Option<QPolynomial> {
    let top = 1 - euler_form(quiver, alpha, alpha);
    let t = a.integer_coefficients()?;
    let terms = t
        .iter()
        .enumerate()
        .filter(|(s, _)| (*s as i64) <= top)
        .map(|(s, c)| (s as u32, BigRational::from_integer(c.clone())));
    Some(QPolynomial::from_terms(terms))
}

/// Checks the logarithmic form of the product identity for every
/// `0 < β ≤ bound`. Each `A` enters only through its integer coefficients
/// `t_{α,s}` with `s ≤ 1 - ⟨α, α⟩`, so a degree or integrality violation
/// shows up as a failure here as well.
pub fn verify_weyl_kac(
    quiver: &Quiver,
    h: &BTreeMap<DimVector, QRationalFunction>,
    a_table: &BTreeMap<DimVector, QPolynomial>,
    bound: &SeriesBound,
) -> BTreeMap<DimVector, bool> {
    bound
        .monomials()
        .filter(|b| !b.is_zero())
        .map(|beta| {
            let rhs = h_from_a(&beta, |alpha| truncated_a(quiver, alpha, a_table.get(alpha)?));
            let ok = matches!((rhs, h.get(&beta)), (Some(r), Some(l)) if r == *l);
            (beta, ok)
        })
        .collect()
}

/// `log Π_α Π_s Π_{i≥0} (1 - q^{s+i} X^α)^{t_{α,s}}` inside the box, for
/// integer exponents given per `α` in ascending `s`.
pub fn product_log_from_t(t: &BTreeMap<DimVector, Vec<BigInt>>, bound: &SeriesBound) -> TruncatedSeries {
    let terms = bound.monomials().filter(|b| !b.is_zero()).map(|beta| {
        let c = h_from_a(&beta, |alpha| {
            Some(match t.get(alpha) {
                Some(ts) => QPolynomial::from_parts(ts.clone(), BigInt::one()),
                None => QPolynomial::zero(),
            })
        })
        .expect("every lookup succeeds");
        (beta, c)
    });
    TruncatedSeries::from_terms(bound.clone(), terms)
}

/// The exponents of the closed product for the Kronecker-with-reverse quiver:
/// 2 on the diagonal `(n, n)`, 1 on `(n, n ± 1)`, 0 elsewhere.
pub fn affine_a1_t(bound: &SeriesBound) -> BTreeMap<DimVector, Vec<BigInt>> {
    bound
        .monomials()
        .filter_map(|a| {
            let [m, n] = a.components() else { panic!("two vertices expected") };
            let t = match m.abs_diff(*n) {
                _ if a.is_zero() => return None,
                0 => 2,
                1 => 1,
                _ => return None,
            };
            Some((a, vec![BigInt::from(t)]))
        })
        .collect()
}

/// Outcome for one dimension vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KacResult {
    pub alpha: DimVector,
    pub a: QPolynomial,
    pub i: QPolynomial,
    pub m: QPolynomial,
    /// Coefficients of `A` in ascending degree, when they are all integers.
    pub t_coeffs: Vec<BigInt>,
    pub degree_ok: bool,
    pub nonneg_ok: bool,
}

impl KacResult {
    pub fn new(alpha: DimVector, a: QPolynomial, i: QPolynomial, m: QPolynomial) -> Self {
        let t_coeffs = a.integer_coefficients().unwrap_or_default();
        KacResult { alpha, a, i, m, t_coeffs, degree_ok: false, nonneg_ok: false }
    }
}

/// Fills in the degree bound `deg A ≤ 1 - ⟨α, α⟩` and the check that every
/// coefficient of `A` is a non-negative integer.
pub fn check_result(mut res: KacResult, quiver: &Quiver) -> KacResult {
    let top = 1 - euler_form(quiver, &res.alpha, &res.alpha);
    res.degree_ok = res.a.degree().is_none_or(|d| d as i64 <= top);
    res.nonneg_ok = match res.a.integer_coefficients() {
        Some(c) => c.iter().all(|x| !x.is_negative()),
        None => false,
    };
    res
}

/// Everything the pipeline produces for one quiver, provider and bound.
#[derive(Clone, Debug)]
pub struct Computation {
    pub quiver: Quiver,
    pub bound: SeriesBound,
    pub p: TruncatedSeries,
    pub h: BTreeMap<DimVector, QRationalFunction>,
    pub a: BTreeMap<DimVector, QPolynomial>,
    pub i: BTreeMap<DimVector, QPolynomial>,
    pub m_burnside: BTreeMap<DimVector, QPolynomial>,
    pub m_krullschmidt: BTreeMap<DimVector, QPolynomial>,
    pub weyl_kac: BTreeMap<DimVector, bool>,
}

impl Computation {
    /// Runs the whole pipeline. Non-polynomial `A` or `M` is an error.
    pub fn run(quiver: &Quiver, provider: &RProvider, bound: &SeriesBound) -> Result<Self, EngineError> {
        let p = build_p(quiver, provider, bound)?;
        let log_p = p.log()?;
        let h = log_coefficients(&log_p);
        let a = compute_a_table(&h)?;
        let i = compute_i_table(&a)?;
        let m_burnside = polynomial_coefficients("M", &m_burnside_from_log(&log_p)?)?;
        let m_krullschmidt = polynomial_coefficients("M", &compute_m_krullschmidt(&i, bound)?)?;
        let weyl_kac = verify_weyl_kac(quiver, &h, &a, bound);
        Ok(Computation { quiver: quiver.clone(), bound: bound.clone(), p, h, a, i, m_burnside, m_krullschmidt, weyl_kac })
    }

    /// Per-α results in graded order (total degree, then lexicographic).
    pub fn results(&self) -> Vec<KacResult> {
        let mut keys: Vec<&DimVector> = self.a.keys().collect();
        keys.sort_by(|x, y| x.graded_cmp(y));
        keys.into_iter()
            .map(|alpha| {
                let res = KacResult::new(
                    alpha.clone(),
                    self.a[alpha].clone(),
                    self.i[alpha].clone(),
                    self.m_burnside[alpha].clone(),
                );
                check_result(res, &self.quiver)
            })
            .collect()
    }

    pub fn routes_agree(&self) -> bool {
        self.m_burnside == self.m_krullschmidt
    }

    pub fn weyl_kac_ok(&self) -> bool {
        self.weyl_kac.values().all(|&b| b)
    }

    /// Internal checks that must hold for a correct run.
    pub fn failed_checks(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.routes_agree() {
            let bad: Vec<String> = self
                .m_burnside
                .iter()
                .filter(|(k, v)| self.m_krullschmidt.get(*k) != Some(*v))
                .map(|(k, _)| k.to_string())
                .collect();
            out.push(format!("M routes differ at {}", bad.join(", ")));
        }
        for (beta, ok) in &self.weyl_kac {
            if !ok {
                out.push(format!("product identity fails at {beta}"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests;
