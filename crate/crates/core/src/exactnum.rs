//! Exact arithmetic: big integers and rationals, prime-field elements, and
//! binomial / multinomial coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

/// Deterministic trial division; moduli in this crate are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A prime field `F_p`. Construction checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn elem(&self, v: i64) -> PrimeFieldElement {
        PrimeFieldElement {
            value: v.rem_euclid(self.p as i64) as u32,
            modulus: self.p,
        }
    }

    pub fn zero(&self) -> PrimeFieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> PrimeFieldElement {
        self.elem(1)
    }

    /// Reduce an arbitrary big integer into the field.
    pub fn from_integer(&self, v: &Integer) -> PrimeFieldElement {
        let m = BigInt::from(self.p);
        let r = ((v % &m) + &m) % &m;
        let r: u32 = r.try_into().expect("reduced value fits in u32");
        PrimeFieldElement {
            value: r,
            modulus: self.p,
        }
    }

    /// Image of a rational number, or `None` when the denominator vanishes mod p.
    pub fn from_rational(&self, v: &Rational) -> Option<PrimeFieldElement> {
        let den = self.from_integer(v.denom());
        if den.is_zero() {
            return None;
        }
        Some(self.from_integer(v.numer()) * den.inverse()?)
    }
}

/// An element of `F_p`; the value is always reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u32,
    modulus: u32,
}

impl PrimeFieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let m = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        PrimeFieldElement {
            value: acc as u32,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse via Fermat; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus as u64 - 2))
        }
    }

    /// Centered representative in `(-p/2, p/2]`.
    pub fn centered(&self) -> i64 {
        let v = self.value as i64;
        let m = self.modulus as i64;
        if 2 * v > m {
            v - m
        } else {
            v
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed prime-field moduli");
    }
}

impl Add for PrimeFieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        let s = (self.value as u64 + rhs.value as u64) % self.modulus as u64;
        PrimeFieldElement {
            value: s as u32,
            modulus: self.modulus,
        }
    }
}

impl Sub for PrimeFieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        let m = self.modulus as u64;
        let s = (self.value as u64 + m - rhs.value as u64) % m;
        PrimeFieldElement {
            value: s as u32,
            modulus: self.modulus,
        }
    }
}

impl Mul for PrimeFieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let s = self.value as u64 * rhs.value as u64 % self.modulus as u64;
        PrimeFieldElement {
            value: s as u32,
            modulus: self.modulus,
        }
    }
}

impl Neg for PrimeFieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        let v = if self.value == 0 { 0 } else { self.modulus - self.value };
        PrimeFieldElement {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Integer::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `n! / prod(parts_i!)`; the parts must sum to `n`.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<Integer> {
    let total: u64 = parts.iter().sum();
    if total != n {
        return Err(Error::PartsMismatch {
            expected: n,
            actual: total,
        });
    }
    // product of successive binomials avoids computing n! outright
    let mut acc = Integer::one();
    let mut used = 0u64;
    for &k in parts {
        used += k;
        acc *= binomial(used, k as i64);
    }
    Ok(acc)
}

pub fn factorial(n: u64) -> Integer {
    (1..=n).fold(Integer::one(), |acc, i| acc * i)
}

/// Pascal triangle of exact binomials, rows `0..=max_n`.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<Integer>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![Integer::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(Integer::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(Integer::one());
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Borrowed `C(n, k)`; `None` stands for an out-of-range zero.
    pub fn get(&self, n: usize, k: i64) -> Option<&Integer> {
        if k < 0 || k as usize > n {
            return None;
        }
        Some(&self.rows[n][k as usize])
    }

    pub fn value(&self, n: usize, k: i64) -> Integer {
        self.get(n, k).cloned().unwrap_or_else(Integer::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(4, 2), Integer::from(6));
        for n in 0..20 {
            assert_eq!(binomial(n, 0), Integer::one());
        }
        assert_eq!(binomial(3, 4), Integer::zero());
        assert_eq!(binomial(3, -1), Integer::zero());
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.from_integer(&binomial(6, 3)).value(), 6);
    }

    #[test]
    fn pascal_rule_up_to_64() {
        for n in 1..=64u64 {
            for k in 0..=n as i64 {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn binomial_p_minus_one_alternates() {
        for p in (2..=101u64).filter(|&p| is_prime(p)) {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p {
                let expected = if a % 2 == 0 { f.one() } else { -f.one() };
                assert_eq!(f.from_integer(&binomial(p - 1, a as i64)), expected);
            }
        }
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), Integer::from(12));
        assert_eq!(multinomial(9, &[9]).unwrap(), Integer::one());
        assert_eq!(multinomial(6, &[2, 2, 2]).unwrap(), Integer::from(90));
        assert_eq!(
            multinomial(6, &[2, 2, 2]).unwrap(),
            factorial(6) / (factorial(2) * factorial(2) * factorial(2))
        );
        assert!(matches!(multinomial(5, &[2, 2]), Err(Error::PartsMismatch { .. })));
    }

    #[test]
    fn field_inverses_exhaustive() {
        for p in (2..=31u64).filter(|&p| is_prime(p)) {
            let f = PrimeField::new(p).unwrap();
            assert!(f.zero().inverse().is_none());
            for v in 1..p as i64 {
                let a = f.elem(v);
                assert!((a * a.inverse().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert!(PrimeField::new(101).is_ok());
    }

    #[test]
    fn table_matches_direct() {
        let t = BinomialTable::new(40);
        for n in 0..=40usize {
            for k in -1..=(n as i64 + 1) {
                assert_eq!(t.value(n, k), binomial(n as u64, k));
            }
        }
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(5).unwrap();
        let half = Rational::new(Integer::from(1), Integer::from(2));
        assert_eq!(f.from_rational(&half).unwrap().value(), 3);
        let fifth = Rational::new(Integer::from(1), Integer::from(5));
        assert!(f.from_rational(&fifth).is_none());
    }
}
