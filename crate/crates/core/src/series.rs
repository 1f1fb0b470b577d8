//! Power series in `X_1..X_n` over `Q(q)`, truncated to a box of dimension
//! vectors.
//!
//! Every monomial `X^α` with `α ≤ bound` (componentwise) is tracked exactly;
//! everything else is discarded. Because the box is closed under
//! componentwise `≤`, products, logarithms and exponentials computed inside
//! the box agree with the corresponding untruncated coefficients.

use crate::exactalg::{QPolynomial, QRationalFunction};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series bounds differ: {0} vs {1}")]
    BoundMismatch(DimVector, DimVector),
    #[error("constant term must be {expected}, found {found}")]
    ConstantTerm { expected: &'static str, found: String },
    #[error("dimension vector {0} lies outside the bound {1}")]
    OutsideBound(DimVector, DimVector),
    #[error("dimension vector {0} has the wrong length for bound {1}")]
    LengthMismatch(DimVector, DimVector),
}

/// A dimension vector `α ∈ N^n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(Vec<u32>);

impl DimVector {
    pub fn new(components: Vec<u32>) -> Self {
        DimVector(components)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// The `i`-th unit vector in `N^n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Total degree `Σ α_i`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn max_component(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// `gcd(α_1, …, α_n)`; zero for the zero vector.
    pub fn gcd(&self) -> u32 {
        self.0.iter().fold(0, |g, &c| g.gcd(&c))
    }

    /// Componentwise `≤`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(DimVector)
    }

    pub fn scale(&self, d: u32) -> DimVector {
        DimVector(self.0.iter().map(|c| c * d).collect())
    }

    /// `α / d` when `d` divides every component.
    pub fn divide(&self, d: u32) -> Option<DimVector> {
        (d > 0 && self.0.iter().all(|c| c % d == 0)).then(|| DimVector(self.0.iter().map(|c| c / d).collect()))
    }

    /// All vectors `β ≤ self` in lexicographic order.
    pub fn box_iter(&self) -> impl Iterator<Item = DimVector> {
        let bound = self.0.clone();
        let total: usize = bound.iter().map(|&b| b as usize + 1).product();
        (0..total).map(move |mut code| {
            let mut v = vec![0; bound.len()];
            for i in (0..bound.len()).rev() {
                let span = bound[i] as usize + 1;
                v[i] = (code % span) as u32;
                code /= span;
            }
            DimVector(v)
        })
    }

    /// Orders by total degree, then lexicographically.
    pub fn graded_cmp(&self, other: &DimVector) -> std::cmp::Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Vec<u32>> for DimVector {
    fn from(v: Vec<u32>) -> Self {
        DimVector(v)
    }
}

impl<const N: usize> From<[u32; N]> for DimVector {
    fn from(v: [u32; N]) -> Self {
        DimVector(v.to_vec())
    }
}

/// Componentwise truncation box.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeriesBound(DimVector);

impl SeriesBound {
    pub fn new(upper: DimVector) -> Self {
        SeriesBound(upper)
    }

    pub fn upper(&self) -> &DimVector {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, alpha: &DimVector) -> bool {
        alpha.le(&self.0)
    }

    /// Every tracked exponent, lexicographically.
    pub fn monomials(&self) -> impl Iterator<Item = DimVector> {
        self.0.box_iter()
    }
}

/// A power series truncated to a [`SeriesBound`]. Absent keys are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    bound: SeriesBound,
    coeffs: BTreeMap<DimVector, QRationalFunction>,
}

impl TruncatedSeries {
    pub fn zero(bound: SeriesBound) -> Self {
        TruncatedSeries { bound, coeffs: BTreeMap::new() }
    }

    pub fn one(bound: SeriesBound) -> Self {
        let mut s = Self::zero(bound);
        let z = DimVector::zero(s.bound.vertex_count());
        s.coeffs.insert(z, QRationalFunction::one());
        s
    }

    /// Builds a series from terms; terms outside the box are dropped and
    /// repeated exponents summed.
    pub fn from_terms<I: IntoIterator<Item = (DimVector, QRationalFunction)>>(bound: SeriesBound, terms: I) -> Self {
        let mut s = Self::zero(bound);
        for (alpha, c) in terms {
            s.add_term(alpha, &c);
        }
        s
    }

    fn add_term(&mut self, alpha: DimVector, c: &QRationalFunction) {
        if !self.bound.contains(&alpha) || c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(alpha);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn bound(&self) -> &SeriesBound {
        &self.bound
    }

    /// Stored (non-zero) terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&DimVector, &QRationalFunction)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, alpha: &DimVector) -> Result<QRationalFunction, SeriesError> {
        if alpha.len() != self.bound.vertex_count() {
            return Err(SeriesError::LengthMismatch(alpha.clone(), self.bound.upper().clone()));
        }
        if !self.bound.contains(alpha) {
            return Err(SeriesError::OutsideBound(alpha.clone(), self.bound.upper().clone()));
        }
        Ok(self.coeffs.get(alpha).cloned().unwrap_or_default())
    }

    pub fn constant_term(&self) -> QRationalFunction {
        let z = DimVector::zero(self.bound.vertex_count());
        self.coeffs.get(&z).cloned().unwrap_or_default()
    }

    fn check_bound(&self, other: &Self) -> Result<(), SeriesError> {
        if self.bound != other.bound {
            return Err(SeriesError::BoundMismatch(self.bound.upper().clone(), other.bound.upper().clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_bound(other)?;
        let mut out = self.clone();
        for (alpha, c) in &other.coeffs {
            out.add_term(alpha.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.scale(&QRationalFunction::from_int(-1)))
    }

    pub fn scale(&self, c: &QRationalFunction) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(a, x)| (a.clone(), x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        TruncatedSeries { bound: self.bound.clone(), coeffs }
    }

    /// Cauchy product truncated to the shared bound. Output coefficients are
    /// computed independently, so the parallel evaluation is deterministic.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_bound(other)?;
        let keys: Vec<DimVector> = self.bound.monomials().collect();
        let coeffs: BTreeMap<DimVector, QRationalFunction> = keys
            .into_par_iter()
            .filter_map(|alpha| {
                let parts: Vec<QRationalFunction> = self
                    .coeffs
                    .iter()
                    .filter_map(|(beta, x)| {
                        let rest = alpha.checked_sub(beta)?;
                        other.coeffs.get(&rest).map(|y| x * y)
                    })
                    .collect();
                let c = QRationalFunction::sum(&parts);
                (!c.is_zero()).then_some((alpha, c))
            })
            .collect();
        Ok(TruncatedSeries { bound: self.bound.clone(), coeffs })
    }

    /// Formal logarithm of a series with constant term 1.
    ///
    /// Uses the degree-operator identity `E(log s) · s = E(s)`, where `E`
    /// multiplies the coefficient of `X^α` by `|α|`; this is a single
    /// triangular pass over the box instead of a sum of powers of `s - 1`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(SeriesError::ConstantTerm { expected: "1", found: c0.to_string() });
        }
        let mut out: BTreeMap<DimVector, QRationalFunction> = BTreeMap::new();
        for alpha in self.bound.monomials() {
            if alpha.is_zero() {
                continue;
            }
            let w = alpha.total() as i64;
            let mut parts = Vec::new();
            if let Some(s) = self.coeffs.get(&alpha) {
                parts.push(s.scale(&BigRational::from_integer(BigInt::from(w))));
            }
            for (beta, l) in &out {
                let Some(rest) = alpha.checked_sub(beta) else { continue };
                if let Some(s) = self.coeffs.get(&rest) {
                    let wb = -(beta.total() as i64);
                    parts.push((l * s).scale(&BigRational::from_integer(BigInt::from(wb))));
                }
            }
            let c = QRationalFunction::sum(&parts).scale(&BigRational::new(1.into(), BigInt::from(w)));
            if !c.is_zero() {
                out.insert(alpha, c);
            }
        }
        Ok(TruncatedSeries { bound: self.bound.clone(), coeffs: out })
    }

    /// Formal exponential of a series with constant term 0, via
    /// `E(exp s) = exp(s) · E(s)`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        if !c0.is_zero() {
            return Err(SeriesError::ConstantTerm { expected: "0", found: c0.to_string() });
        }
        let n = self.bound.vertex_count();
        let mut out: BTreeMap<DimVector, QRationalFunction> = BTreeMap::new();
        out.insert(DimVector::zero(n), QRationalFunction::one());
        for alpha in self.bound.monomials() {
            if alpha.is_zero() {
                continue;
            }
            let w = alpha.total() as i64;
            let mut parts = Vec::new();
            for (beta, s) in &self.coeffs {
                let Some(rest) = alpha.checked_sub(beta) else { continue };
                if let Some(f) = out.get(&rest) {
                    let wb = beta.total() as i64;
                    parts.push((s * f).scale(&BigRational::from_integer(BigInt::from(wb))));
                }
            }
            let c = QRationalFunction::sum(&parts).scale(&BigRational::new(1.into(), BigInt::from(w)));
            if !c.is_zero() {
                out.insert(alpha, c);
            }
        }
        Ok(TruncatedSeries { bound: self.bound.clone(), coeffs: out })
    }

    /// `s^e = exp(e · log s)` for a polynomial exponent `e`.
    pub fn pow(&self, e: &QPolynomial) -> Result<Self, SeriesError> {
        let l = self.log()?;
        l.scale(&QRationalFunction::from_poly(e.clone())).exp()
    }

    /// `X^α ↦ X^{dα}` together with `q ↦ q^d`; terms leaving the box are dropped.
    pub fn dilate(&self, d: u32) -> Self {
        assert!(d >= 1, "dilation factor must be positive");
        if d == 1 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(a, c)| (a.scale(d), c))
            .filter(|(a, _)| self.bound.contains(a))
            .map(|(a, c)| (a, c.dilate(d)))
            .collect();
        TruncatedSeries { bound: self.bound.clone(), coeffs }
    }
}
