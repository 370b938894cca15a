//! Sparse exact multivariate polynomials.
//!
//! Polynomials live in a [`Ring`]: a fixed variable table plus a coefficient
//! domain chosen at run time (a prime field or the rationals). Terms are stored
//! sorted by descending grevlex order with no zero coefficients, so structural
//! equality is ideal-free equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactnum::{Integer, PrimeField, PrimeFieldElement, Rational};

/// Coefficient domain tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Prime(PrimeField),
    Rational,
}

impl Domain {
    /// `0` selects the rationals, anything else must be a prime.
    pub fn from_characteristic(c: u64) -> Result<Self> {
        if c == 0 {
            Ok(Domain::Rational)
        } else {
            Ok(Domain::Prime(PrimeField::new(c)?))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Domain::Prime(f) => f.modulus() as u64,
            Domain::Rational => 0,
        }
    }

    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Domain::Prime(f) => Coeff::Fp(f.elem(v)),
            Domain::Rational => Coeff::Q(Rational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_integer(&self, v: &Integer) -> Coeff {
        match self {
            Domain::Prime(f) => Coeff::Fp(f.from_integer(v)),
            Domain::Rational => Coeff::Q(Rational::from_integer(v.clone())),
        }
    }

    pub fn from_rational(&self, v: &Rational) -> Option<Coeff> {
        match self {
            Domain::Prime(f) => f.from_rational(v).map(Coeff::Fp),
            Domain::Rational => Some(Coeff::Q(v.clone())),
        }
    }

    /// Map a coefficient of another domain into this one (rationals reduce mod p).
    pub fn convert(&self, c: &Coeff) -> Option<Coeff> {
        match (self, c) {
            (Domain::Prime(f), Coeff::Fp(e)) if f.modulus() == e.modulus() => Some(c.clone()),
            (_, Coeff::Q(q)) => self.from_rational(q),
            (Domain::Rational, Coeff::Fp(e)) => Some(self.from_i64(e.value() as i64)),
            _ => None,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Prime(p) => write!(f, "GF({})", p.modulus()),
            Domain::Rational => write!(f, "QQ"),
        }
    }
}

/// A coefficient: a prime-field element or an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Fp(PrimeFieldElement),
    Q(Rational),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Fp(e) => e.is_zero(),
            Coeff::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Fp(e) => e.is_one(),
            Coeff::Q(q) => q.is_one(),
        }
    }

    pub fn inverse(&self) -> Option<Coeff> {
        match self {
            Coeff::Fp(e) => e.inverse().map(Coeff::Fp),
            Coeff::Q(q) if q.is_zero() => None,
            Coeff::Q(q) => Some(Coeff::Q(q.recip())),
        }
    }

    /// Integer value when the coefficient is integral (centered for `F_p`).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coeff::Fp(e) => Some(e.centered()),
            Coeff::Q(q) if q.is_integer() => q.numer().to_i64(),
            Coeff::Q(_) => None,
        }
    }

    pub fn as_fp(&self) -> Option<PrimeFieldElement> {
        match self {
            Coeff::Fp(e) => Some(*e),
            Coeff::Q(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Coeff::Q(q) => Some(q),
            Coeff::Fp(_) => None,
        }
    }

    fn add_assign_ref(&mut self, rhs: &Coeff) {
        match (self, rhs) {
            (Coeff::Fp(a), Coeff::Fp(b)) => *a = *a + *b,
            (Coeff::Q(a), Coeff::Q(b)) => *a += b,
            _ => panic!("mixed coefficient domains"),
        }
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Fp(a), Coeff::Fp(b)) => Coeff::Fp(*a - *b),
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a - b),
            _ => panic!("mixed coefficient domains"),
        }
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Fp(a), Coeff::Fp(b)) => Coeff::Fp(*a * *b),
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a * b),
            _ => panic!("mixed coefficient domains"),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Fp(a) => Coeff::Fp(-*a),
            Coeff::Q(a) => Coeff::Q(-a),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Fp(e) => write!(f, "{}", e.centered()),
            Coeff::Q(q) => write!(f, "{}", q),
        }
    }
}

/// Ordered, duplicate-free variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VariableTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate variable {n}")));
            }
        }
        Ok(VariableTable { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// A copy with extra variables appended at the end.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Self> {
        VariableTable::new(
            self.names
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.as_ref().to_string())),
        )
    }
}

/// Variable table plus coefficient domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    vars: VariableTable,
    domain: Domain,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(vars: VariableTable, domain: Domain) -> RingRef {
        Arc::new(Ring { vars, domain })
    }

    pub fn vars(&self) -> &VariableTable {
        &self.vars
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .index_of(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown variable {name}")))
    }

    /// Same variables over another domain.
    pub fn with_domain(&self, domain: Domain) -> RingRef {
        Ring::new(self.vars.clone(), domain)
    }

    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<RingRef> {
        Ok(Ring::new(self.vars.extended(extra)?, self.domain))
    }
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector aligned to a variable table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 24]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = e;
        m
    }

    /// Build from `(name, exponent)` pairs against a table.
    pub fn from_named<S: AsRef<str>>(table: &VariableTable, pairs: &[(S, u16)]) -> Result<Self> {
        let mut m = Monomial::one(table.len());
        for (name, e) in pairs {
            let i = table
                .index_of(name.as_ref())
                .ok_or_else(|| Error::InvalidArgument(format!("unknown variable {}", name.as_ref())))?;
            m.exps[i] += *e;
        }
        Ok(m)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other` when `other | self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, e: u16) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|a| a * e).collect(),
        }
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    pub fn weight(&self, weights: &[i64]) -> i64 {
        self.exps.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum()
    }

    /// Graded reverse lexicographic comparison.
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().rev().zip(other.exps.iter().rev()) {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }

    pub(crate) fn exps_mut(&mut self) -> &mut SmallVec<[u16; 24]> {
        &mut self.exps
    }

    pub fn display(&self, table: &VariableTable) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    table.name(i).to_string()
                } else {
                    format!("{}^{}", table.name(i), e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in canonical form: descending grevlex, nonzero coefficients.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn constant(ring: &RingRef, c: i64) -> Self {
        Polynomial::from_coeff(ring, ring.domain().from_i64(c))
    }

    pub fn from_coeff(ring: &RingRef, c: Coeff) -> Self {
        Polynomial::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Coeff) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// The variable with index `i`.
    pub fn var(ring: &RingRef, i: usize) -> Self {
        Polynomial::monomial(ring, Monomial::var(ring.nvars(), i, 1), ring.domain().one())
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Self> {
        Ok(Polynomial::var(ring, ring.var_index(name)?))
    }

    /// Normalize an arbitrary term list (duplicates merged, zeros dropped).
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(slot) => slot.add_assign_ref(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Polynomial::from_map(ring, acc)
    }

    fn from_map(ring: &RingRef, acc: HashMap<Monomial, Coeff>) -> Self {
        let mut terms: Vec<(Monomial, Coeff)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Caller guarantees descending order and nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn parse(ring: &RingRef, text: &str) -> Result<Self> {
        Parser::new(ring, text).parse()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn domain(&self) -> Domain {
        self.ring.domain()
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant value, if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(self.domain().zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Coeff {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.domain().zero(),
        }
    }

    /// Indices of variables occurring in some term.
    pub fn variables(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        (0..n)
            .filter(|&i| self.terms.iter().any(|(m, _)| m.exp(i) > 0))
            .collect()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &Coeff| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial::from_sorted_terms(&self.ring, out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(slot) => slot.add_assign_ref(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Polynomial::from_map(&self.ring, acc))
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a * c))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    pub fn scale_i64(&self, c: i64) -> Polynomial {
        self.scale(&self.domain().from_i64(c))
    }

    /// Multiply by `c * m`; the order is preserved so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, a)| (t.mul(m), a * c))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
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

    /// Make the leading coefficient one (no-op on zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inverse().expect("nonzero lead")),
            _ => self.clone(),
        }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let dom = self.domain();
        let terms = self.terms.iter().filter(|(m, _)| m.exp(i) > 0).map(|(m, c)| {
            let e = m.exp(i);
            let mut d = m.clone();
            d.exps_mut()[i] -= 1;
            (d, c * &dom.from_i64(e as i64))
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Simultaneous substitution: `assignment[i] = Some(g)` replaces variable `i` by `g`.
    pub fn substitute(&self, assignment: &HashMap<usize, Polynomial>) -> Result<Polynomial> {
        for g in assignment.values() {
            self.check_ring(g)?;
        }
        let n = self.ring.nvars();
        // cache powers of substituted variables
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(&self.ring);
        let mut partial: Vec<(Monomial, Coeff)> = Vec::new();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one(n);
            let mut factor: Option<Polynomial> = None;
            for i in 0..n {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                match assignment.get(&i) {
                    None => kept.exps_mut()[i] = e,
                    Some(g) => {
                        let p = powers.entry((i, e)).or_insert_with(|| g.pow(e as u32)).clone();
                        factor = Some(match factor {
                            None => p,
                            Some(f) => &f * &p,
                        });
                    }
                }
            }
            match factor {
                None => partial.push((kept, c.clone())),
                Some(f) => acc = &acc + &f.mul_term(&kept, c),
            }
        }
        Ok(&acc + &Polynomial::from_terms(&self.ring, partial))
    }

    /// Exact quotient `self / g`, or `Ok(None)` when `g` does not divide `self`.
    pub fn exact_divide(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(g)?;
        let (lm, lc) = g.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inverse().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Coeff)> = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            let Some(qm) = m.div(lm) else {
                return Ok(None);
            };
            let qc = c * &lc_inv;
            rem = &rem - &g.mul_term(&qm, &qc);
            quot.push((qm, qc));
        }
        // quotient terms are produced in strictly decreasing order
        Ok(Some(Polynomial::from_sorted_terms(&self.ring, quot)))
    }

    /// Common weight of all terms under per-variable integer weights.
    pub fn weighted_degree(&self, weights: &[i64]) -> Result<i64> {
        if weights.len() != self.ring.nvars() {
            return Err(Error::InvalidArgument("weight vector length".into()));
        }
        let mut it = self.terms.iter().map(|(m, _)| m.weight(weights));
        let w = it.next().ok_or(Error::ZeroPolynomial)?;
        if it.all(|v| v == w) {
            Ok(w)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Re-express in another ring, matching variables by name.
    ///
    /// Every variable occurring here must exist in `target`; coefficients are
    /// converted into the target domain (rationals reduce mod p).
    pub fn embed_into(&self, target: &RingRef) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .names()
            .iter()
            .map(|n| target.vars().index_of(n))
            .collect();
        let dom = target.domain();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut t = Monomial::one(target.nvars());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "variable {} missing from target ring",
                        self.ring.vars().name(i)
                    ))
                })?;
                t.exps_mut()[j] += e;
            }
            let c = dom.convert(c).ok_or(Error::DomainMismatch)?;
            terms.push((t, c));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Coefficients of powers of variable `i`: entry `k` multiplies `x_i^k`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Polynomial> {
        let deg = self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut r = m.clone();
            let e = r.exps()[i] as usize;
            r.exps_mut()[i] = 0;
            buckets[e].push((r, c.clone()));
        }
        buckets
            .into_iter()
            .map(|b| Polynomial::from_terms(&self.ring, b))
            .collect()
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomials from different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let table = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", m.display(table))?;
            } else {
                write!(f, "{}*{}", mag, m.display(table))?;
            }
        }
        Ok(())
    }
}

/// Coefficient of `target` in the product of `factors`, expanding left to right
/// and discarding every partial monomial that cannot divide `target`.
///
/// A partial monomial is dropped when some exponent exceeds the target or when
/// the remaining factors cannot raise an exponent up to the target. Both rules
/// are exact because exponents only grow along the product.
pub fn pruned_product_coefficient(factors: &[Polynomial], target: &Monomial) -> Result<Coeff> {
    pruned_product_coefficient_with_budget(factors, target, None)
}

/// Exponents over the target's support, their mixed-radix code, coefficient.
type RestrictedTerm = (SmallVec<[u16; 32]>, u64, Coeff);

/// As [`pruned_product_coefficient`], aborting with [`Error::Budget`] once
/// more than `budget` term multiplications have been performed.
pub fn pruned_product_coefficient_with_budget(
    factors: &[Polynomial],
    target: &Monomial,
    budget: Option<u64>,
) -> Result<Coeff> {
    let Some(first) = factors.first() else {
        return Err(Error::InvalidArgument("empty factor list".into()));
    };
    let ring = first.ring().clone();
    for f in factors {
        first.check_ring(f)?;
    }
    if target.nvars() != ring.nvars() {
        return Err(Error::InvalidArgument("target not aligned to ring".into()));
    }
    let support = target.support();
    let bounds: Vec<u16> = support.iter().map(|&i| target.exp(i)).collect();
    let k = support.len();
    // mixed-radix encoding of monomials dividing the target
    let mut radix = Vec::with_capacity(k);
    let mut stride: u64 = 1;
    for &b in &bounds {
        radix.push(stride);
        stride = stride
            .checked_mul(b as u64 + 1)
            .ok_or_else(|| Error::InvalidArgument("target too large to encode".into()))?;
    }
    let dom = ring.domain();

    // restrict each factor to terms whose monomial divides the target
    let restricted: Vec<Vec<RestrictedTerm>> = factors
        .iter()
        .map(|f| {
            f.terms()
                .iter()
                .filter(|(m, _)| m.divides(target))
                .map(|(m, c)| {
                    let e: SmallVec<[u16; 32]> = support.iter().map(|&i| m.exp(i)).collect();
                    let code = e.iter().zip(&radix).map(|(&x, &r)| x as u64 * r).sum();
                    (e, code, c.clone())
                })
                .collect()
        })
        .collect();

    // capacity[s][v]: the most factors s.. can still add to variable v
    let nf = restricted.len();
    let mut capacity = vec![vec![0u32; k]; nf + 1];
    for s in (0..nf).rev() {
        for v in 0..k {
            let best = restricted[s].iter().map(|t| t.0[v] as u32).max().unwrap_or(0);
            capacity[s][v] = capacity[s + 1][v] + best;
        }
    }
    if (0..k).any(|v| capacity[0][v] < bounds[v] as u32) {
        return Ok(dom.zero());
    }

    let mut state: HashMap<u64, Coeff> = HashMap::new();
    state.insert(0, dom.one());
    let mut steps: u64 = 0;
    let mut digits = vec![0u16; k];
    for (s, terms) in restricted.iter().enumerate() {
        let cap = &capacity[s + 1];
        let mut next: HashMap<u64, Coeff> = HashMap::with_capacity(state.len() * 2);
        for (code, c) in &state {
            let mut rest = *code;
            for v in 0..k {
                let r = bounds[v] as u64 + 1;
                digits[v] = (rest % r) as u16;
                rest /= r;
            }
            for (e, tcode, tc) in terms {
                steps += 1;
                let ok = (0..k).all(|v| {
                    let x = digits[v] + e[v];
                    x <= bounds[v] && x as u32 + cap[v] >= bounds[v] as u32
                });
                if !ok {
                    continue;
                }
                let prod = c * tc;
                match next.get_mut(&(code + tcode)) {
                    Some(slot) => slot.add_assign_ref(&prod),
                    None => {
                        next.insert(code + tcode, prod);
                    }
                }
            }
        }
        if let Some(b) = budget {
            if steps > b {
                return Err(Error::Budget(b));
            }
        }
        next.retain(|_, c| !c.is_zero());
        state = next;
        if state.is_empty() {
            return Ok(dom.zero());
        }
    }
    let full: u64 = bounds.iter().zip(&radix).map(|(&b, &r)| b as u64 * r).sum();
    Ok(state.remove(&full).unwrap_or_else(|| dom.zero()))
}

/// Integer weights per variable, looked up by name; unknown names weigh zero.
pub fn weights_by_name(table: &VariableTable, weight: impl Fn(&str) -> i64) -> Vec<i64> {
    table.names().iter().map(|n| weight(n)).collect()
}

struct Parser<'a> {
    ring: &'a RingRef,
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a RingRef, src: &'a str) -> Self {
        Parser { ring, src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn parse(mut self) -> Result<Polynomial> {
        let p = self.expr()?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("trailing input");
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                let inv = d
                    .constant_value()
                    .and_then(|c| c.inverse())
                    .map_or_else(|| self.err("division by a non-constant or zero"), Ok)?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let e = self.uint()?;
            let e = e.to_u32().map_or_else(|| self.err("exponent too large"), Ok)?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some('-') => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.uint()?;
                let c = self.ring.domain().from_integer(&v);
                Ok(Polynomial::from_coeff(self.ring, c))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self.ident();
                match self.ring.vars().index_of(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => self.err(format!("unknown variable {name}")),
                }
            }
            _ => self.err("expected a term"),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_' || c == '\'') {
            self.pos += self.peek().unwrap().len_utf8();
        }
        // bracketed indices: x[1][2]
        while self.peek() == Some('[') {
            let save = self.pos;
            self.pos += 1;
            let digits_start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == digits_start || self.peek() != Some(']') {
                self.pos = save;
                break;
            }
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(names: &[&str], c: u64) -> RingRef {
        Ring::new(
            VariableTable::new(names.iter().copied()).unwrap(),
            Domain::from_characteristic(c).unwrap(),
        )
    }

    fn p(r: &RingRef, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn product_examples() {
        let r = ring(&["x", "y"], 0);
        assert_eq!(&p(&r, "x+y") * &p(&r, "x-y"), p(&r, "x^2-y^2"));
        let f = p(&r, "3*x^2*y - 7/2*y + 1");
        assert_eq!(&f * &Polynomial::one(&r), f);
        assert!(Polynomial::zero(&r).is_zero());
    }

    #[test]
    fn mismatched_rings_rejected() {
        let a = ring(&["x", "y"], 0);
        let b = ring(&["x", "y"], 5);
        assert_eq!(p(&a, "x").try_mul(&p(&b, "x")), Err(Error::DomainMismatch));
    }

    #[test]
    fn coefficient_lookup() {
        let r = ring(&["x", "y"], 0);
        let f = p(&r, "x^2-y^2");
        assert!(f.coefficient_of(&Monomial::from_exponents(&[2, 0])).is_one());
        assert!(f.coefficient_of(&Monomial::from_exponents(&[1, 1])).is_zero());
        assert_eq!(f.coefficient_of(&Monomial::from_exponents(&[0, 2])).to_i64(), Some(-1));
    }

    #[test]
    fn substitution_examples() {
        let r = ring(&["x", "y", "z"], 0);
        let mut a = HashMap::new();
        a.insert(0, p(&r, "y"));
        assert_eq!(p(&r, "x^2+x").substitute(&a).unwrap(), p(&r, "y^2+y"));
        let mut b = HashMap::new();
        b.insert(0, Polynomial::zero(&r));
        assert_eq!(p(&r, "x*y+z").substitute(&b).unwrap(), p(&r, "z"));
        // simultaneous, not sequential
        let mut swap = HashMap::new();
        swap.insert(0, p(&r, "y"));
        swap.insert(1, p(&r, "x"));
        assert_eq!(p(&r, "x^2*y").substitute(&swap).unwrap(), p(&r, "y^2*x"));
    }

    #[test]
    fn exact_division_examples() {
        let r = ring(&["x", "y"], 0);
        assert_eq!(
            p(&r, "x^2-y^2").exact_divide(&p(&r, "x-y")).unwrap(),
            Some(p(&r, "x+y"))
        );
        assert_eq!(p(&r, "x^2+y^2").exact_divide(&p(&r, "x-y")).unwrap(), None);
        assert_eq!(
            p(&r, "x").exact_divide(&Polynomial::zero(&r)),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            Polynomial::zero(&r).exact_divide(&p(&r, "x")).unwrap(),
            Some(Polynomial::zero(&r))
        );
    }

    #[test]
    fn weighted_degree_examples() {
        let r = ring(&["x[1][2]", "x[2][1]"], 0);
        let w = vec![-1, 1];
        assert_eq!(p(&r, "x[1][2]").weighted_degree(&w), Ok(-1));
        assert_eq!(p(&r, "x[1][2]*x[2][1] + 3").weighted_degree(&w), Ok(0));
        assert_eq!(
            p(&r, "x[1][2] + x[2][1]").weighted_degree(&w),
            Err(Error::NotHomogeneous)
        );
        assert_eq!(Polynomial::zero(&r).weighted_degree(&w), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn pruned_small() {
        let r = ring(&["x", "y"], 0);
        let f = p(&r, "x+y");
        let c = pruned_product_coefficient(&[f.clone(), f], &Monomial::from_exponents(&[1, 1])).unwrap();
        assert_eq!(c.to_i64(), Some(2));
    }

    #[test]
    fn pruned_budget_aborts() {
        let r = ring(&["x", "y", "z"], 0);
        let f = p(&r, "x+y+z");
        let factors = vec![f; 6];
        let target = Monomial::from_exponents(&[2, 2, 2]);
        assert_eq!(
            pruned_product_coefficient_with_budget(&factors, &target, Some(10)),
            Err(Error::Budget(10))
        );
        assert_eq!(
            pruned_product_coefficient(&factors, &target).unwrap().to_i64(),
            Some(90)
        );
    }

    #[test]
    fn display_parse_round_trip() {
        let r = ring(&["x[1][1]", "x[1][2]", "y[2][1]"], 0);
        let f = p(&r, "3*x[1][2]^2*y[2][1] - x[1][1] + 5/3 - (x[1][1]+y[2][1])^2");
        let printed = f.to_string();
        assert_eq!(Polynomial::parse(&r, &printed).unwrap(), f);
        let r7 = ring(&["x[1][1]", "x[1][2]", "y[2][1]"], 7);
        let g = p(&r7, "6*x[1][1] + 2*y[2][1]^3");
        assert_eq!(g.to_string(), "2*y[2][1]^3 - x[1][1]");
    }

    #[test]
    fn parse_errors() {
        let r = ring(&["x"], 0);
        assert!(matches!(Polynomial::parse(&r, "x +"), Err(Error::Parse { .. })));
        assert!(matches!(Polynomial::parse(&r, "w"), Err(Error::Parse { .. })));
        assert!(matches!(Polynomial::parse(&r, "x/x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn derivative_and_coefficients() {
        let r = ring(&["x", "t"], 0);
        let f = p(&r, "t^3 - 2*x*t + x^2");
        assert_eq!(f.derivative(1), p(&r, "3*t^2 - 2*x"));
        let cs = f.coefficients_in(1);
        assert_eq!(cs.len(), 4);
        assert_eq!(cs[0], p(&r, "x^2"));
        assert_eq!(cs[1], p(&r, "-2*x"));
        assert!(cs[2].is_zero());
        assert!(cs[3].is_one());
    }

    #[test]
    fn embed_by_name() {
        let small = ring(&["x", "y"], 0);
        let big = ring(&["y", "z", "x"], 5);
        let f = p(&small, "1/2*x*y + 3");
        let g = f.embed_into(&big).unwrap();
        assert_eq!(g, p(&big, "3*x*y + 3"));
        let back = p(&big, "z").embed_into(&small);
        assert!(back.is_err());
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
        prop::collection::vec((prop::collection::vec(0u16..=2, nvars), -5i64..=5), 0..6)
    }

    fn build(r: &RingRef, t: &[(Vec<u16>, i64)]) -> Polynomial {
        Polynomial::from_terms(
            r,
            t.iter()
                .map(|(e, c)| (Monomial::from_exponents(e), r.domain().from_i64(*c))),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn distributive(a in arb_poly(5), b in arb_poly(5), c in arb_poly(5)) {
            let r = ring(&["a", "b", "c", "d", "e"], 0);
            let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
            prop_assert_eq!(&f * &g, &g * &f);
        }

        #[test]
        fn division_round_trip(a in arb_poly(4), b in arb_poly(4)) {
            let r = ring(&["a", "b", "c", "d"], 7);
            let (f, g) = (build(&r, &a), build(&r, &b));
            prop_assume!(!g.is_zero());
            let prod = &f * &g;
            prop_assert_eq!(prod.exact_divide(&g).unwrap(), Some(f.clone()));
            if let Some(q) = f.exact_divide(&g).unwrap() {
                prop_assert_eq!(&q * &g, f);
            }
        }

        #[test]
        fn substitution_is_multiplicative(a in arb_poly(3), b in arb_poly(3), s in arb_poly(3)) {
            let r = ring(&["a", "b", "c"], 0);
            let (f, g) = (build(&r, &a), build(&r, &b));
            let mut asg = HashMap::new();
            asg.insert(1, build(&r, &s));
            asg.insert(2, p(&r, "a - 2"));
            let lhs = (&f * &g).substitute(&asg).unwrap();
            let rhs = &f.substitute(&asg).unwrap() * &g.substitute(&asg).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn print_parse_identity(a in arb_poly(3)) {
            let r = ring(&["x[1][1]", "y[1][2]", "t"], 0);
            let f = build(&r, &a);
            prop_assert_eq!(Polynomial::parse(&r, &f.to_string()).unwrap(), f);
        }
    }
}
