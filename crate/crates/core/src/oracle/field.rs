//! Small finite fields `F_{p^k}` with `p ≤ 5` and `p^k ≤ 9`, as lookup tables.

use super::OracleError;

/// An element, encoded as `Σ c_i p^i` for the polynomial-basis coordinates `c_i`.
pub type Elem = u8;

/// `F_p[x] / (modulus)` with precomputed addition and multiplication tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u8,
    k: u8,
    q: u8,
    modulus: Vec<u8>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

fn is_prime(p: u8) -> bool {
    p >= 2 && (2..p).all(|d| p % d != 0)
}

impl FieldSpec {
    /// Builds the field from a monic modulus given in ascending coefficients
    /// over `F_p`. The modulus is checked for irreducibility.
    pub fn new(p: u8, k: u8, modulus: Vec<u8>) -> Result<Self, OracleError> {
        if !is_prime(p) || p > 5 {
            return Err(OracleError::InvalidField(format!("characteristic {p} is not a prime ≤ 5")));
        }
        let q = (p as u32).checked_pow(k as u32).filter(|&q| k >= 1 && q <= 9);
        let Some(q) = q else {
            return Err(OracleError::InvalidField(format!("{p}^{k} is outside 2..=9")));
        };
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(OracleError::InvalidField(format!("modulus {modulus:?} is not monic of degree {k} over F_{p}")));
        }
        let q = q as u8;
        let mut f = FieldSpec {
            p,
            k,
            q,
            modulus: modulus.clone(),
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
        };
        f.build_tables();
        if k > 1 {
            let base = FieldSpec::new(p, 1, vec![0, 1])?;
            if !is_irreducible(&base, &modulus) {
                return Err(OracleError::Reducible(format!("{modulus:?} over F_{p}")));
            }
        }
        Ok(f)
    }

    /// The field of the given size, using `x² + x + 1`, `x³ + x + 1` and
    /// `x² + 2x + 2` for `F_4`, `F_8` and `F_9`.
    pub fn with_size(q: u32) -> Result<Self, OracleError> {
        match q {
            2 | 3 | 5 => FieldSpec::new(q as u8, 1, vec![0, 1]),
            4 => FieldSpec::new(2, 2, vec![1, 1, 1]),
            8 => FieldSpec::new(2, 3, vec![1, 1, 0, 1]),
            9 => FieldSpec::new(3, 2, vec![2, 2, 1]),
            _ => Err(OracleError::InvalidField(format!("no field of size {q} with characteristic ≤ 5 and size ≤ 9"))),
        }
    }

    fn digits(&self, a: Elem) -> Vec<u8> {
        let mut a = a;
        (0..self.k)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, d: &[u8]) -> Elem {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn build_tables(&mut self) {
        let (p, k, q) = (self.p as u32, self.k as usize, self.q as usize);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = self.digits(a as Elem);
            for b in 0..q {
                let db = self.digits(b as Elem);
                let s: Vec<u8> = da.iter().zip(&db).map(|(&x, &y)| ((x as u32 + y as u32) % p) as u8).collect();
                add[a * q + b] = self.encode(&s);
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0u32; 2 * k];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x as u32 * y as u32) % p;
                    }
                }
                for top in (k..2 * k).rev() {
                    let c = prod[top];
                    if c != 0 {
                        for (i, &m) in self.modulus[..k].iter().enumerate() {
                            let j = top - k + i;
                            prod[j] = (prod[j] + (p - c) * m as u32) % p;
                        }
                        prod[top] = 0;
                    }
                }
                let r: Vec<u8> = prod[..k].iter().map(|&c| c as u8).collect();
                mul[a * q + b] = self.encode(&r);
            }
        }
        self.add = add;
        self.mul = mul;
        self.neg = (0..q).map(|a| (0..q).find(|&b| self.add[a * q + b] == 0).unwrap() as Elem).collect();
        self.inv = (0..q).map(|a| (1..q).find(|&b| self.mul[a * q + b] == 1).unwrap_or(0) as Elem).collect();
    }

    pub fn size(&self) -> u32 {
        self.q as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    pub fn degree(&self) -> u32 {
        self.k as u32
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: Elem, e: u32) -> Elem {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u32)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> Elem {
        c.rem_euclid(self.p as i64) as Elem
    }

    /// The smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        let n = self.q as u32 - 1;
        (1..self.q)
            .find(|&a| (1..n).all(|e| self.pow(a, e) != 1))
            .expect("multiplicative group of a finite field is cyclic")
    }
}

/// Polynomials over a [`FieldSpec`], ascending coefficients, no trailing zeros
/// except for the zero polynomial `[]`.
pub type FqPoly = Vec<Elem>;

fn trim(mut a: FqPoly) -> FqPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo a non-zero `b`.
pub fn poly_rem(field: &FieldSpec, a: &[Elem], b: &[Elem]) -> FqPoly {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let inv_lc = field.inv(*b.last().unwrap()).unwrap();
    let mut r = trim(a.to_vec());
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = field.mul(*r.last().unwrap(), inv_lc);
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = field.sub(r[shift + i], field.mul(c, bi));
        }
        r = trim(r);
    }
    r
}

/// Exhaustive factor search: no monic divisor of degree `1..=deg/2`.
pub fn is_irreducible(field: &FieldSpec, f: &[Elem]) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    let q = field.size() as usize;
    for e in 1..=deg / 2 {
        for code in 0..q.pow(e as u32) {
            let mut g: FqPoly = (0..e).map(|i| ((code / q.pow(i as u32)) % q) as Elem).collect();
            g.push(1);
            if poly_rem(field, &f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_fields() -> Vec<FieldSpec> {
        [2, 3, 4, 5, 8, 9].iter().map(|&q| FieldSpec::with_size(q).unwrap()).collect()
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_fields() {
            let q = f.size() as Elem;
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
            let w = f.primitive_element();
            let powers: std::collections::BTreeSet<Elem> = (0..f.size() - 1).map(|e| f.pow(w, e)).collect();
            assert_eq!(powers.len() as u32, f.size() - 1);
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(FieldSpec::new(2, 2, vec![1, 0, 1]), Err(OracleError::Reducible(_))));
        assert!(FieldSpec::new(7, 1, vec![0, 1]).is_err());
        assert!(FieldSpec::new(3, 3, vec![1, 2, 0, 1]).is_err());
        assert!(FieldSpec::with_size(6).is_err());
    }

    #[test]
    fn irreducibility_counts_match_necklace_formula() {
        // monic irreducibles of degree d over F_q: 2 → 1, 3 → 2 over F_2; 2 → 3 over F_3
        let count = |f: &FieldSpec, d: u32| {
            let q = f.size() as usize;
            (0..q.pow(d))
                .filter(|&code| {
                    let mut g: FqPoly = (0..d).map(|i| ((code / q.pow(i)) % q) as Elem).collect();
                    g.push(1);
                    is_irreducible(f, &g)
                })
                .count()
        };
        let f2 = FieldSpec::with_size(2).unwrap();
        assert_eq!(count(&f2, 2), 1);
        assert_eq!(count(&f2, 3), 2);
        assert_eq!(count(&f2, 4), 3);
        assert_eq!(count(&FieldSpec::with_size(3).unwrap(), 2), 3);
        assert_eq!(count(&FieldSpec::with_size(4).unwrap(), 2), 6);
    }

    proptest! {
        #[test]
        fn frobenius_is_additive_and_multiplicative(fi in 0usize..6, a in 0u8..9, b in 0u8..9) {
            let f = &all_fields()[fi];
            let (a, b) = (a % f.size() as u8, b % f.size() as u8);
            prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        }

        #[test]
        fn nonzero_elements_invertible(fi in 0usize..6, a in 1u8..9) {
            let f = &all_fields()[fi];
            let a = 1 + (a - 1) % (f.size() as u8 - 1);
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }
}
