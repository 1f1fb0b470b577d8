//! Counting polynomials `r(α, q)` for the built-in relation sets.

use super::{EngineError, Quiver};
use crate::exactalg::{gl_order, QPolynomial};
use crate::series::{DimVector, SeriesBound};
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;

/// Source of `r(α, q) = |Rep(α, F_q)_R|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RProvider {
    /// Empty relation set: every representation counts.
    NoRelations,
    /// One vertex with `g` loops, each required to be nilpotent.
    LoopNilpotent(u32),
    /// Arrows `1 → 2` (one) and `2 → 1` (`g` of them) with relations
    /// `X_12 X_21^(i)` nilpotent.
    KroneckerNilpotent(u32),
    /// Explicit values; the zero vector defaults to 1.
    Table(BTreeMap<DimVector, QPolynomial>),
}

fn q_pow(e: u64) -> QPolynomial {
    let e = u32::try_from(e).expect("exponent fits in u32");
    QPolynomial::monomial(BigRational::one(), e)
}

/// `q^{Σ a_ij α_i α_j}`.
pub fn r_no_relations(quiver: &Quiver, alpha: &DimVector) -> QPolynomial {
    let a = alpha.components();
    let mut e = 0u64;
    for i in 0..quiver.vertex_count() {
        for j in 0..quiver.vertex_count() {
            e += quiver.arrow_count(i, j) as u64 * a[i] as u64 * a[j] as u64;
        }
    }
    q_pow(e)
}

/// `q^{g(n² - n)}`: `g`-tuples of nilpotent `n × n` matrices.
pub fn r_loop_nilpotent(g: u32, n: u32) -> QPolynomial {
    let n = n as u64;
    q_pow(g as u64 * (n * n - n))
}

/// Sum over the rank `r` of `X_12` of
/// `|GL_m||GL_n| q^{g(mn-r)} / (|GL_r||GL_{m-r}||GL_{n-r}| q^{r(m+n)-2r²})`.
pub fn r_kronecker_nilpotent(g: u32, alpha: &DimVector) -> Result<QPolynomial, EngineError> {
    let [m, n] = alpha.components() else {
        return Err(EngineError::DimensionMismatch { expected: 2, found: alpha.len() });
    };
    let (m, n) = (*m, *n);
    let top = &gl_order(m) * &gl_order(n);
    let mut acc = QPolynomial::zero();
    for r in 0..=m.min(n) {
        let (r64, m64, n64) = (r as u64, m as u64, n as u64);
        let num = &top * &q_pow(g as u64 * (m64 * n64 - r64));
        let den = &(&(&gl_order(r) * &gl_order(m - r)) * &gl_order(n - r)) * &q_pow(r64 * (m64 + n64) - 2 * r64 * r64);
        let term = num.exact_div(&den).ok_or_else(|| EngineError::NotPolynomial {
            what: "rank stratum count",
            alpha: alpha.clone(),
            value: format!("({num}) / ({den})"),
        })?;
        acc = &acc + &term;
    }
    Ok(acc)
}

impl RProvider {
    /// Checks that a built-in provider matches the arrows it describes.
    pub fn validate(&self, quiver: &Quiver) -> Result<(), EngineError> {
        match self {
            RProvider::LoopNilpotent(g) if *quiver != Quiver::jordan(*g) => Err(EngineError::ProviderMismatch(format!(
                "loop_nilpotent({g}) needs one vertex with {g} loops"
            ))),
            RProvider::KroneckerNilpotent(g) if *quiver != Quiver::kronecker(*g) => Err(EngineError::ProviderMismatch(
                format!("kronecker_nilpotent({g}) needs arrows [[0,1],[{g},0]]"),
            )),
            _ => Ok(()),
        }
    }

    pub fn r(&self, quiver: &Quiver, alpha: &DimVector) -> Result<QPolynomial, EngineError> {
        if alpha.len() != quiver.vertex_count() {
            return Err(EngineError::DimensionMismatch { expected: quiver.vertex_count(), found: alpha.len() });
        }
        match self {
            RProvider::NoRelations => Ok(r_no_relations(quiver, alpha)),
            RProvider::LoopNilpotent(g) => match alpha.components() {
                [n] => Ok(r_loop_nilpotent(*g, *n)),
                _ => Err(EngineError::DimensionMismatch { expected: 1, found: alpha.len() }),
            },
            RProvider::KroneckerNilpotent(g) => r_kronecker_nilpotent(*g, alpha),
            RProvider::Table(t) => match t.get(alpha) {
                Some(p) => Ok(p.clone()),
                None if alpha.is_zero() => Ok(QPolynomial::one()),
                None => Err(EngineError::ProviderGap(vec![alpha.clone()])),
            },
        }
    }

    /// Values at every non-zero vector of the box, which is exactly the set
    /// of multiplicity vectors a tuple inside the box can produce. Missing
    /// table entries are reported together.
    pub fn table_for(
        &self,
        quiver: &Quiver,
        bound: &SeriesBound,
    ) -> Result<BTreeMap<DimVector, QPolynomial>, EngineError> {
        let mut out = BTreeMap::new();
        let mut missing = Vec::new();
        for d in bound.monomials().filter(|d| !d.is_zero()) {
            match self.r(quiver, &d) {
                Ok(p) => {
                    out.insert(d, p);
                }
                Err(EngineError::ProviderGap(_)) => missing.push(d),
                Err(e) => return Err(e),
            }
        }
        if missing.is_empty() {
            Ok(out)
        } else {
            Err(EngineError::ProviderGap(missing))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_relations_examples() {
        let k = Quiver::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(r_no_relations(&k, &DimVector::from([1, 1])), QPolynomial::from_ints(&[0, 0, 1]));
        assert!(r_no_relations(&k, &DimVector::from([0, 0])).is_one());
        let j = Quiver::jordan(2);
        assert_eq!(r_no_relations(&j, &DimVector::from([2])), q_pow(8));
    }

    #[test]
    fn loop_examples() {
        assert!(r_loop_nilpotent(1, 1).is_one());
        assert_eq!(r_loop_nilpotent(1, 2), q_pow(2));
        assert_eq!(r_loop_nilpotent(2, 2), q_pow(4));
        assert!(r_loop_nilpotent(3, 0).is_one());
    }

    #[test]
    fn kronecker_examples() {
        let r = |g, m, n| r_kronecker_nilpotent(g, &DimVector::from([m, n])).unwrap();
        assert_eq!(r(1, 1, 1), QPolynomial::from_ints(&[-1, 2]));
        assert!(r(1, 1, 0).is_one());
        assert!(r(2, 0, 3).is_one());
        // pairs (a, b1, b2) over F_2 with a*b1 = a*b2 = 0: a = 0 gives 4, a = 1 gives 1
        assert_eq!(r(2, 1, 1).eval_int(2), BigRational::from_integer(5.into()));
        assert!(r_kronecker_nilpotent(1, &DimVector::from([1])).is_err());
    }

    #[test]
    fn table_gap_lists_all_missing() {
        let mut t = BTreeMap::new();
        t.insert(DimVector::from([1]), QPolynomial::one());
        let p = RProvider::Table(t);
        let err = p.table_for(&Quiver::jordan(1), &SeriesBound::new(DimVector::from([3]))).unwrap_err();
        match err {
            EngineError::ProviderGap(v) => assert_eq!(v, vec![DimVector::from([2]), DimVector::from([3])]),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn validate_rejects_wrong_quiver() {
        assert!(RProvider::LoopNilpotent(2).validate(&Quiver::jordan(1)).is_err());
        assert!(RProvider::KroneckerNilpotent(1).validate(&Quiver::kronecker(1)).is_ok());
        assert!(RProvider::KroneckerNilpotent(1).validate(&Quiver::jordan(1)).is_err());
    }
}
