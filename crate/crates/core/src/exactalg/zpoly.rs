//! Dense integer polynomials and a modular GCD.
//!
//! These routines back [`QPolynomial`](super::QPolynomial): every rational
//! polynomial is stored as an integer coefficient vector over a common
//! denominator, so the heavy lifting (products, exact quotients, gcds) happens
//! in `Z[q]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[BigInt], k: &BigInt) -> ZPoly {
    if k.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c * k).collect()
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Exact quotient `a / b` in `Z[q]`, or `None` when `b` does not divide `a`.
pub(crate) fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    assert!(!b.is_empty(), "exact_div by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

/// Primitive part with a positive leading coefficient.
pub(crate) fn primitive(p: &[BigInt]) -> ZPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut c = content(p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(256);
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < 256 {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_p(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim_p(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `Z/p`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim_p(&mut a);
    trim_p(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let c = a.last().unwrap() * inv % p;
            if c != 0 {
                for (j, bj) in b.iter().enumerate() {
                    let t = c * bj % p;
                    a[shift + j] = (a[shift + j] + p - t) % p;
                }
            }
            a.pop();
            trim_p(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    if c > half {
        c - m
    } else {
        c.clone()
    }
}

/// Primitive gcd (positive leading coefficient) of two integer polynomials,
/// computed by reduction modulo word-sized primes and Chinese remaindering,
/// with trial division as the acceptance test.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    // pull out the common power of q first; it is free to detect
    let va = a.iter().position(|c| !c.is_zero()).unwrap();
    let vb = b.iter().position(|c| !c.is_zero()).unwrap();
    let v = va.min(vb);
    let a = primitive(&a[va..]);
    let b = primitive(&b[vb..]);
    let core = gcd_no_shift(&a, &b);
    let mut out = vec![BigInt::zero(); v];
    out.extend(core);
    out
}

fn gcd_no_shift(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    if a == b {
        return a.to_vec();
    }
    let lc_gcd = a.last().unwrap().gcd(b.last().unwrap());
    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut prev: Option<ZPoly> = None;
    for &p in primes() {
        let la = mod_p(a.last().unwrap(), p);
        let lb = mod_p(b.last().unwrap(), p);
        if la == 0 || lb == 0 {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| mod_p(c, p)).collect();
        let bp: Vec<u64> = b.iter().map(|c| mod_p(c, p)).collect();
        let g = gcd_mod(ap, bp, p);
        let deg = g.len() - 1;
        if deg == 0 {
            return vec![BigInt::one()];
        }
        if deg > best_deg {
            continue;
        }
        let scale = mod_p(&lc_gcd, p);
        let image: Vec<u64> = g.iter().map(|c| c * scale % p).collect();
        let pb = BigInt::from(p);
        if deg < best_deg {
            best_deg = deg;
            acc = image.iter().map(|&c| BigInt::from(c)).collect();
            modulus = pb;
            prev = None;
        } else {
            // CRT: x = acc (mod modulus), x = image (mod p)
            let m_mod_p = mod_p(&modulus, p);
            let inv = BigInt::from(inv_mod(m_mod_p, p));
            for (x, &r) in acc.iter_mut().zip(&image) {
                let diff = (BigInt::from(r) - mod_p(x, p) as i64).mod_floor(&pb);
                let t = (diff * &inv).mod_floor(&pb);
                *x += &modulus * t;
            }
            modulus *= &pb;
        }
        let half = &modulus / 2;
        let cand: ZPoly = acc.iter().map(|c| symmetric(c, &modulus, &half)).collect();
        if prev.as_ref() == Some(&cand) {
            let g = primitive(&cand);
            if exact_div(a, &g).is_some() && exact_div(b, &g).is_some() {
                return g;
            }
        }
        prev = Some(cand);
    }
    panic!("modular gcd exhausted its prime table");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        let mut p: ZPoly = v.iter().map(|&c| BigInt::from(c)).collect();
        trim(&mut p);
        p
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (q^6 - 1) and (q^4 - 1) share q^2 - 1
        let a = z(&[-1, 0, 0, 0, 0, 0, 1]);
        let b = z(&[-1, 0, 0, 0, 1]);
        assert_eq!(gcd(&a, &b), z(&[-1, 0, 1]));
    }

    #[test]
    fn gcd_with_large_coefficients() {
        let f = z(&[123456789, -987654321, 1000000007]);
        let g1 = z(&[5, 0, 3, 1]);
        let g2 = z(&[-7, 11]);
        let a = mul(&mul(&f, &g1), &f);
        let b = mul(&mul(&f, &g2), &z(&[1, 1]));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn gcd_keeps_common_power_of_q() {
        let a = z(&[0, 0, 1, 1]);
        let b = z(&[0, 0, 0, 2, 2, 0]);
        assert_eq!(gcd(&a, &b), z(&[0, 0, 1, 1]));
    }

    #[test]
    fn exact_div_detects_remainders() {
        let a = z(&[-1, 0, 1]);
        assert_eq!(exact_div(&a, &z(&[-1, 1])), Some(z(&[1, 1])));
        assert_eq!(exact_div(&a, &z(&[0, 1])), None);
        assert_eq!(exact_div(&z(&[1, 2]), &z(&[0, 2])), None);
    }
}
