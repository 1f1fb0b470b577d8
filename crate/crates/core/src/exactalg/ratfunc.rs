use super::poly::QPolynomial;
use super::zpoly;
use super::AlgError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element of `Q(q)` in reduced form with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRationalFunction {
    num: QPolynomial,
    den: QPolynomial,
}

impl QRationalFunction {
    pub fn zero() -> Self {
        QRationalFunction { num: QPolynomial::zero(), den: QPolynomial::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(QPolynomial::one())
    }

    pub fn from_poly(p: QPolynomial) -> Self {
        QRationalFunction { num: p, den: QPolynomial::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(QPolynomial::from_int(c))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(QPolynomial::constant(c))
    }

    /// Canonical form of `num / den`.
    pub fn new(num: QPolynomial, den: QPolynomial) -> Result<Self, AlgError> {
        if den.is_zero() {
            return Err(AlgError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = zpoly::gcd(num.int_numerator(), den.int_numerator());
        let g = QPolynomial::from_parts(g, BigInt::one());
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides numerator"), den.exact_div(&g).expect("gcd divides denominator"))
        };
        let lc = d.leading_coeff();
        if lc.is_one() {
            return Ok(QRationalFunction { num: n, den: d });
        }
        let inv = lc.recip();
        Ok(QRationalFunction { num: n.scale(&inv), den: d.scale(&inv) })
    }

    /// Assumes `num` and `den` are already coprime; only fixes the leading coefficient.
    fn from_coprime(num: QPolynomial, den: QPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading_coeff();
        if lc.is_one() {
            return QRationalFunction { num, den };
        }
        let inv = lc.recip();
        QRationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn numerator(&self) -> &QPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &QPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(p)` when the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&QPolynomial> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn into_polynomial(self) -> Result<QPolynomial, Self> {
        if self.den.is_one() {
            Ok(self.num)
        } else {
            Err(self)
        }
    }

    pub fn recip(&self) -> Result<Self, AlgError> {
        if self.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, AlgError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        QRationalFunction { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn scale_poly(&self, p: &QPolynomial) -> Self {
        self * &Self::from_poly(p.clone())
    }

    /// Substitutes `q -> q^d`. Coprimality survives the substitution, so no
    /// gcd is needed.
    pub fn dilate(&self, d: u32) -> Self {
        QRationalFunction { num: self.num.dilate(d), den: self.den.dilate(d) }
    }

    /// Exact value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn eval_int(&self, x: i64) -> Option<BigRational> {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    /// Sum of many terms with a single reduction at the end: numerators are
    /// brought over the lcm of the denominators.
    pub fn sum<'a, I: IntoIterator<Item = &'a QRationalFunction>>(terms: I) -> Self {
        let terms: Vec<&QRationalFunction> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        match terms.len() {
            0 => return Self::zero(),
            1 => return terms[0].clone(),
            _ => {}
        }
        let mut lcm = QPolynomial::one();
        for t in &terms {
            if t.den.is_one() {
                continue;
            }
            let g = QPolynomial::gcd(&lcm, &t.den);
            lcm = &lcm * &t.den.exact_div(&g).expect("gcd divides");
        }
        let mut acc = QPolynomial::zero();
        for t in &terms {
            let cof = lcm.exact_div(&t.den).expect("lcm is a multiple");
            acc = &acc + &(&t.num * &cof);
        }
        Self::new(acc, lcm).expect("non-zero lcm")
    }
}

impl Default for QRationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<QPolynomial> for QRationalFunction {
    fn from(p: QPolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &QRationalFunction {
    type Output = QRationalFunction;
    fn add(self, rhs: &QRationalFunction) -> QRationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QRationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        // Henrici: a/b + c/d with g = gcd(b, d)
        let g = QPolynomial::gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return QRationalFunction::from_coprime(num, &self.den * &rhs.den);
        }
        let b1 = self.den.exact_div(&g).unwrap();
        let d1 = rhs.den.exact_div(&g).unwrap();
        let t = &(&self.num * &d1) + &(&rhs.num * &b1);
        if t.is_zero() {
            return QRationalFunction::zero();
        }
        let g2 = QPolynomial::gcd(&t, &g);
        let (t, g) = if g2.is_one() {
            (t, g)
        } else {
            (t.exact_div(&g2).unwrap(), g.exact_div(&g2).unwrap())
        };
        QRationalFunction::from_coprime(t, &(&b1 * &d1) * &g)
    }
}

impl Sub for &QRationalFunction {
    type Output = QRationalFunction;
    fn sub(self, rhs: &QRationalFunction) -> QRationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &QRationalFunction {
    type Output = QRationalFunction;
    fn neg(self) -> QRationalFunction {
        QRationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &QRationalFunction {
    type Output = QRationalFunction;
    fn mul(self, rhs: &QRationalFunction) -> QRationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return QRationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRationalFunction::from_poly(&self.num * &rhs.num);
        }
        // Henrici: cross-cancel before multiplying
        let g1 = QPolynomial::gcd(&self.num, &rhs.den);
        let g2 = QPolynomial::gcd(&rhs.num, &self.den);
        let cancel = |p: &QPolynomial, g: &QPolynomial| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g).unwrap()
            }
        };
        let num = &cancel(&self.num, &g1) * &cancel(&rhs.num, &g2);
        let den = &cancel(&self.den, &g2) * &cancel(&rhs.den, &g1);
        QRationalFunction::from_coprime(num, den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QRationalFunction {
            type Output = QRationalFunction;
            fn $m(self, rhs: QRationalFunction) -> QRationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QRationalFunction {
    type Output = QRationalFunction;
    fn neg(self) -> QRationalFunction {
        -&self
    }
}

impl fmt::Display for QRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRationalFunction({self})")
    }
}
