use super::zpoly::{self, ZPoly};
use super::AlgError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Univariate polynomial in `q` with exact rational coefficients.
///
/// Stored as an integer coefficient vector over one positive common
/// denominator. The representation is canonical: the content of the
/// coefficients is coprime to the denominator, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    num: ZPoly,
    den: BigInt,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { num: Vec::new(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_parts(vec![BigInt::from(c)], BigInt::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, exp: u32) -> Self {
        let mut num = vec![BigInt::zero(); exp as usize];
        num.push(c.numer().clone());
        Self::from_parts(num, c.denom().clone())
    }

    /// Builds `Σ c_i q^i` from ascending integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_parts(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::one())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, BigRational)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc = &acc + &Self::monomial(c, e);
        }
        acc
    }

    pub(crate) fn from_parts(mut num: ZPoly, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        zpoly::trim(&mut num);
        if num.is_empty() {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let g = zpoly::content(&num).gcd(&den);
        if !g.is_one() {
            for c in num.iter_mut() {
                *c /= &g;
            }
            den /= &g;
        }
        QPolynomial { num, den }
    }

    pub(crate) fn int_numerator(&self) -> &[BigInt] {
        &self.num
    }


    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        (!self.num.is_empty()).then(|| self.num.len() as u32 - 1)
    }

    pub fn coeff(&self, exp: u32) -> BigRational {
        match self.num.get(exp as usize) {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.degree().map(|d| self.coeff(d)).unwrap_or_else(BigRational::zero)
    }

    /// Non-zero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, BigRational)> + '_ {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u32, BigRational::new(c.clone(), self.den.clone())))
    }

    /// Sparse exponent → coefficient view.
    pub fn to_map(&self) -> BTreeMap<u32, BigRational> {
        self.terms().collect()
    }

    /// Dense ascending coefficients up to the degree.
    pub fn coefficients(&self) -> Vec<BigRational> {
        (0..self.num.len() as u32).map(|e| self.coeff(e)).collect()
    }

    /// Coefficients as integers, if all of them are integral.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn is_monic(&self) -> bool {
        self.num.last().is_some_and(|lc| *lc == self.den)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_parts(zpoly::scale(&self.num, k.numer()), &self.den * k.denom())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `q -> q^d`.
    pub fn dilate(&self, d: u32) -> Self {
        assert!(d >= 1, "dilation factor must be positive");
        if d == 1 || self.num.len() <= 1 {
            return self.clone();
        }
        let d = d as usize;
        let mut num = vec![BigInt::zero(); (self.num.len() - 1) * d + 1];
        for (e, c) in self.num.iter().enumerate() {
            num[e * d] = c.clone();
        }
        QPolynomial { num, den: self.den.clone() }
    }

    /// `q^k · p(1/q)`; requires `k ≥ deg p`.
    pub fn reversed(&self, k: u32) -> Self {
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        assert!(k >= deg, "reversal length below degree");
        let mut num = vec![BigInt::zero(); k as usize + 1];
        for (e, c) in self.num.iter().enumerate() {
            num[k as usize - e] = c.clone();
        }
        Self::from_parts(num, self.den.clone())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.num.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc / BigRational::from_integer(self.den.clone())
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    /// Euclidean division over `Q`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), AlgError> {
        if divisor.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        let dlc = divisor.leading_coeff();
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                break;
            }
            let t = Self::monomial(rem.leading_coeff() / &dlc, rdeg - ddeg);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Ok((quot, rem))
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "exact_div by zero polynomial");
        // Gauss: divisibility over Q reduces to divisibility by the
        // primitive part over Z
        let prim = zpoly::primitive(&divisor.num);
        let unit = divisor.num.last().unwrap() / prim.last().unwrap();
        let quot = zpoly::exact_div(&self.num, &prim)?;
        let quot = Self::from_parts(zpoly::scale(&quot, &divisor.den), &self.den * unit);
        Some(quot)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() && b.is_zero() {
            return Self::zero();
        }
        let g = zpoly::gcd(&a.num, &b.num);
        Self::from_parts(g, BigInt::one()).monic()
    }
}

impl Default for QPolynomial {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QPolynomial::from_parts(zpoly::add(&self.num, &rhs.num), self.den.clone());
        }
        let l = self.den.lcm(&rhs.den);
        let a = zpoly::scale(&self.num, &(&l / &self.den));
        let b = zpoly::scale(&rhs.num, &(&l / &rhs.den));
        QPolynomial::from_parts(zpoly::add(&a, &b), l)
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial { num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        QPolynomial::from_parts(zpoly::mul(&self.num, &rhs.num), &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPolynomial {
            type Output = QPolynomial;
            fn $m(self, rhs: QPolynomial) -> QPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        -&self
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical ascending-exponent text, e.g. `-1 + 2*q - 1/2*q^3`.
impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{}", fmt_rational(&abs))?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", fmt_rational(&abs))?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{}*q^{e}", fmt_rational(&abs))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}
