//! Exact arithmetic in `Q[q]` and `Q(q)`, plus the arithmetic functions the
//! counting formulas are built from.

mod poly;
mod ratfunc;
mod zpoly;

pub use poly::QPolynomial;
pub use ratfunc::QRationalFunction;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("argument must be a positive integer")]
    NonPositive,
}

/// Reduced form of `num / den` with a monic denominator.
pub fn rf_normalize(num: QPolynomial, den: QPolynomial) -> Result<QRationalFunction, AlgError> {
    QRationalFunction::new(num, den)
}

/// The Möbius function.
pub fn mobius(n: u64) -> Result<i64, AlgError> {
    if n == 0 {
        return Err(AlgError::NonPositive);
    }
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `(1 - q)(1 - q^2)...(1 - q^r)`, with the empty product for `r = 0`.
pub fn pochhammer_phi(r: u32) -> QPolynomial {
    let mut acc = QPolynomial::one();
    for i in 1..=r {
        let factor = &QPolynomial::one() - &QPolynomial::monomial(BigRational::from_integer(1.into()), i);
        acc = &acc * &factor;
    }
    acc
}

/// Number of monic irreducible polynomials of degree `d` over `F_q` other
/// than `x`, as a polynomial in `q`: `(1/d) Σ_{e|d} μ(e) (q^{d/e} - 1)`.
pub fn irreducible_count(d: u64) -> Result<QPolynomial, AlgError> {
    if d == 0 {
        return Err(AlgError::NonPositive);
    }
    let mut acc = QPolynomial::zero();
    for e in divisors(d) {
        let mu = mobius(e)?;
        if mu == 0 {
            continue;
        }
        let term = &QPolynomial::monomial(BigRational::from_integer(BigInt::from(mu)), (d / e) as u32)
            - &QPolynomial::from_int(mu);
        acc = &acc + &term;
    }
    Ok(acc.scale(&BigRational::new(1.into(), BigInt::from(d))))
}

/// `|GL(n, F_q)| = Π_{i<n} (q^n - q^i)`.
pub fn gl_order(n: u32) -> QPolynomial {
    let one = BigRational::from_integer(1.into());
    let qn = QPolynomial::monomial(one.clone(), n);
    (0..n).fold(QPolynomial::one(), |acc, i| &acc * &(&qn - &QPolynomial::monomial(one.clone(), i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> QPolynomial {
        QPolynomial::from_ints(c)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn poly_arith_examples() {
        assert_eq!(QPolynomial::gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        let (quot, rem) = p(&[0, -1, 1]).div_rem(&p(&[0, 1])).unwrap();
        assert_eq!(quot, p(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(p(&[1]).div_rem(&QPolynomial::zero()), Err(AlgError::DivisionByZero));
    }

    #[test]
    fn gcd_is_monic() {
        let g = QPolynomial::gcd(&p(&[-2, 0, 2]), &p(&[-3, 3]));
        assert_eq!(g, p(&[-1, 1]));
        assert!(g.is_monic());
        let half = QPolynomial::from_terms([(0, rat(1, 2)), (1, rat(1, 3))]);
        assert!(QPolynomial::gcd(&half, &half).is_monic());
    }

    #[test]
    fn normalize_examples() {
        let r = rf_normalize(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(r.as_polynomial(), Some(&p(&[1, 1])));
        let r = rf_normalize(p(&[0, 1]), p(&[0, 1])).unwrap();
        assert!(r.is_one());
        let r = rf_normalize(p(&[1]), p(&[-1, 1])).unwrap();
        assert_eq!(r.numerator(), &p(&[1]));
        assert_eq!(r.denominator(), &p(&[-1, 1]));
        assert_eq!(rf_normalize(p(&[1]), QPolynomial::zero()), Err(AlgError::ZeroDenominator));
    }

    #[test]
    fn normalize_makes_denominator_monic() {
        let r = rf_normalize(p(&[3]), p(&[4, -2])).unwrap();
        assert!(r.denominator().is_monic());
        assert_eq!(r.numerator(), &QPolynomial::constant(rat(-3, 2)));
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), Ok(1));
        assert_eq!(mobius(4), Ok(0));
        assert_eq!(mobius(6), Ok(1));
        assert_eq!(mobius(30), Ok(-1));
        assert_eq!(mobius(0), Err(AlgError::NonPositive));
    }

    #[test]
    fn pochhammer_values() {
        assert!(pochhammer_phi(0).is_one());
        assert_eq!(pochhammer_phi(1), p(&[1, -1]));
        assert_eq!(pochhammer_phi(2), p(&[1, -1, -1, 1]));
    }

    #[test]
    fn irreducible_count_values() {
        assert_eq!(irreducible_count(1).unwrap(), p(&[-1, 1]));
        let half = rat(1, 2);
        assert_eq!(irreducible_count(2).unwrap(), p(&[0, -1, 1]).scale(&half));
        assert_eq!(irreducible_count(3).unwrap(), p(&[0, -1, 0, 1]).scale(&rat(1, 3)));
        assert!(irreducible_count(0).is_err());
    }

    #[test]
    fn gl_order_values() {
        assert!(gl_order(0).is_one());
        assert_eq!(gl_order(1), p(&[-1, 1]));
        assert_eq!(gl_order(2), &p(&[-1, 0, 1]) * &p(&[0, -1, 1]));
    }

    /// Counts monic irreducible polynomials of degree `d` over the prime field
    /// `F_p`, excluding `x`, by sieving out all products of lower-degree monics.
    fn brute_irreducible(p: u64, d: u32) -> u64 {
        let size = |deg: u32| p.pow(deg);
        // encode monic polynomials of degree k by their lower coefficients
        let decode = |k: u32, code: u64| -> Vec<u64> {
            let mut v = Vec::with_capacity(k as usize + 1);
            let mut c = code;
            for _ in 0..k {
                v.push(c % p);
                c /= p;
            }
            v.push(1);
            v
        };
        let mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
            let mut out = vec![0; a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] = (out[i + j] + x * y) % p;
                }
            }
            out
        };
        let encode = |v: &[u64]| -> u64 { v[..v.len() - 1].iter().rev().fold(0, |acc, c| acc * p + c) };
        let mut reducible = vec![false; size(d) as usize];
        for k in 1..d {
            for a in 0..size(k) {
                for b in 0..size(d - k) {
                    let prod = mul(&decode(k, a), &decode(d - k, b));
                    reducible[encode(&prod) as usize] = true;
                }
            }
        }
        let mut count = reducible.iter().filter(|r| !**r).count() as u64;
        if d == 1 {
            count -= 1; // x itself
        }
        count
    }

    #[test]
    fn irreducible_count_matches_sieve_over_prime_fields() {
        for q in [2u64, 3, 5] {
            for d in 1..=8u32 {
                if q.pow(d) > 400_000 {
                    continue;
                }
                let v = irreducible_count(d as u64).unwrap().eval_int(q as i64);
                assert!(v.is_integer());
                assert_eq!(v.to_integer().to_u64().unwrap(), brute_irreducible(q, d), "q={q} d={d}");
            }
        }
    }

    #[test]
    fn irreducible_count_integral_at_prime_powers() {
        for q in [2i64, 3, 4, 5, 8, 9] {
            for d in 1..=8 {
                let v = irreducible_count(d).unwrap().eval_int(q);
                assert!(v.is_integer() && v >= BigRational::from_integer(0.into()), "q={q} d={d}");
            }
        }
    }

    fn brute_gl(n: usize, q: u64) -> u64 {
        // count invertible n×n matrices over F_q (q prime) by row-reducing every matrix
        let total = q.pow((n * n) as u32);
        let mut count = 0;
        for code in 0..total {
            let mut m = vec![vec![0u64; n]; n];
            let mut c = code;
            for row in m.iter_mut() {
                for x in row.iter_mut() {
                    *x = c % q;
                    c /= q;
                }
            }
            let mut rank = 0;
            for col in 0..n {
                let Some(piv) = (rank..n).find(|&r| m[r][col] != 0) else { continue };
                m.swap(rank, piv);
                let inv = (1..q).find(|v| v * m[rank][col] % q == 1).unwrap();
                for r in 0..n {
                    if r != rank && m[r][col] != 0 {
                        let f = m[r][col] * inv % q;
                        for k in 0..n {
                            m[r][k] = (m[r][k] + q * q - f * m[rank][k] % q) % q;
                        }
                    }
                }
                rank += 1;
            }
            if rank == n {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn gl_order_matches_enumeration() {
        for q in [2u64, 3] {
            for n in 0..=3usize {
                let v = gl_order(n as u32).eval_int(q as i64);
                assert_eq!(v.to_integer().to_u64().unwrap(), brute_gl(n, q), "n={n} q={q}");
            }
        }
    }

    fn small_poly() -> impl Strategy<Value = QPolynomial> {
        prop::collection::vec((-5i64..=5, 1i64..=3), 0..5).prop_map(|cs| {
            QPolynomial::from_terms(cs.into_iter().enumerate().map(|(e, (n, d))| (e as u32, rat(n, d))))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn divrem_reconstructs(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (quot, rem) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&quot * &b) + &rem, a);
            prop_assert!(rem.degree() < b.degree() || rem.is_zero());
        }

        #[test]
        fn gcd_divides_and_absorbs(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
            let g = QPolynomial::gcd(&(&a * &c), &(&b * &c));
            prop_assert!((&a * &c).exact_div(&g).is_some());
            prop_assert!((&b * &c).exact_div(&g).is_some());
            prop_assert!(g.exact_div(&c.monic()).is_some());
        }

        #[test]
        fn normalize_idempotent(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let r = rf_normalize(a, b).unwrap();
            let again = rf_normalize(r.numerator().clone(), r.denominator().clone()).unwrap();
            prop_assert_eq!(again, r);
        }

        #[test]
        fn field_ops_agree_with_evaluation(a in small_poly(), b in small_poly(), c in small_poly(), d in small_poly()) {
            prop_assume!(!b.is_zero() && !d.is_zero());
            let x = rf_normalize(a, b).unwrap();
            let y = rf_normalize(c, d).unwrap();
            let s = &x + &y;
            let m = &x * &y;
            let t = rat(7, 3);
            if let (Some(xv), Some(yv)) = (x.eval(&t), y.eval(&t)) {
                prop_assert_eq!(s.eval(&t), Some(&xv + &yv));
                prop_assert_eq!(m.eval(&t), Some(xv * yv));
            }
            prop_assert_eq!(QRationalFunction::sum([&x, &y]), s);
        }
    }
}
