//! F-purity witnesses for the commutator ideal and the alternating binomial
//! identities that evaluate the 3x3 witness coefficient in closed form.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::commideal::{build_system, mu_monomial, shifted_n2, X11_SHIFTED, Y11_SHIFTED};
use crate::error::{Error, Result};
use crate::exactnum::{is_prime, multinomial, BinomialTable, Integer, PrimeField, PrimeFieldElement};
use crate::multipoly::{pruned_product_coefficient_with_budget, Domain, Monomial, Polynomial};

/// Alternating binomial sums `A(m,b,d)`, `B(m,b)` and `C(m)` over a shared
/// Pascal table.
#[derive(Debug, Clone)]
pub struct Identities {
    table: BinomialTable,
}

impl Identities {
    pub fn new(max_m: usize) -> Self {
        Identities {
            table: BinomialTable::new(max_m.max(1)),
        }
    }

    pub fn max_m(&self) -> usize {
        self.table.max_n()
    }

    fn check(&self, m: usize) -> Result<()> {
        if m > self.max_m() {
            return Err(Error::InvalidArgument(format!(
                "m = {m} beyond table size {}",
                self.max_m()
            )));
        }
        Ok(())
    }

    /// `Σ_{a=d}^{m-b} (-1)^a C(m-b, a) C(a+b-d, b)`.
    pub fn a(&self, m: usize, b: usize, d: usize) -> Result<Integer> {
        if d > b || b > m {
            return Err(Error::InvalidArgument(format!("A({m},{b},{d}) needs d <= b <= m")));
        }
        self.check(m)?;
        let t = &self.table;
        let mut acc = Integer::zero();
        for a in d..=m - b {
            let term = t.get(m - b, a as i64).expect("in range") * t.get(a + b - d, b as i64).expect("in range");
            if a % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        Ok(acc)
    }

    /// `Σ_{d=0}^{b} (-1)^d C(b, d) A(m, b, d)`.
    pub fn b(&self, m: usize, b: usize) -> Result<Integer> {
        if b > m {
            return Err(Error::InvalidArgument(format!("B({m},{b}) needs b <= m")));
        }
        let mut acc = Integer::zero();
        for d in 0..=b {
            let term = self.table.get(b, d as i64).expect("in range") * self.a(m, b, d)?;
            if d % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        Ok(acc)
    }

    /// The triple sum over `b`, `d`, `a`.
    pub fn c(&self, m: usize) -> Result<Integer> {
        if m < 1 {
            return Err(Error::InvalidArgument("C(m) needs m >= 1".into()));
        }
        let mut acc = Integer::zero();
        for b in 0..=m {
            acc += self.b(m, b)?;
        }
        Ok(acc)
    }
}

pub fn identity_a(m: usize, b: usize, d: usize) -> Result<Integer> {
    Identities::new(m).a(m, b, d)
}

pub fn identity_b(m: usize, b: usize) -> Result<Integer> {
    Identities::new(m).b(m, b)
}

pub fn identity_c(m: usize) -> Result<Integer> {
    Identities::new(m).c(m)
}

/// Exact values of the identities for `1 <= m <= max_m`.
#[derive(Debug, Clone)]
pub struct IdentityTable {
    /// `c[m - 1] = C(m)`.
    pub c: Vec<Integer>,
    /// `b[m - 1][b] = B(m, b)`.
    pub b: Vec<Vec<Integer>>,
}

impl IdentityTable {
    /// Fills the table by swapping the `a` and `d` sums:
    /// `B(m, b) = Σ_a (-1)^a C(m-b, a) S(a, b)` with
    /// `S(a, b) = Σ_{d <= min(a, b)} (-1)^d C(b, d) C(a+b-d, b)`.
    pub fn compute(max_m: usize) -> Result<Self> {
        let t = BinomialTable::new(2 * max_m.max(1));
        let signed = |k: usize, v: Integer| if k.is_multiple_of(2) { v } else { -v };
        let s: Vec<Vec<Integer>> = (0..=max_m)
            .map(|a| {
                (0..=max_m - a)
                    .map(|b| {
                        (0..=a.min(b))
                            .map(|d| signed(d, t.value(b, d as i64) * t.value(a + b - d, b as i64)))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let mut c = Vec::with_capacity(max_m);
        let mut bs = Vec::with_capacity(max_m);
        for m in 1..=max_m {
            let row: Vec<Integer> = (0..=m)
                .map(|b| {
                    (0..=m - b)
                        .map(|a| signed(a, t.value(m - b, a as i64) * &s[a][b]))
                        .sum()
                })
                .collect();
            c.push(row.iter().sum());
            bs.push(row);
        }
        Ok(IdentityTable { c, b: bs })
    }
}

/// Exponent triples `(a, b, d)` with `a, b >= d` and `a + b <= p - 1`.
pub fn parameter_triples(p: u64) -> impl Iterator<Item = (u64, u64, u64)> {
    let m = p - 1;
    (0..=m).flat_map(move |b| (0..=b).flat_map(move |d| (d..=m - b).map(move |a| (a, b, d))))
}

/// Reduced and unreduced parametric sums for the 3x3 witness coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricSum {
    /// `Σ (-1)^{a-d} C(p-1-b, a) C(a+b-d, b) C(b, d)`, exact.
    pub reduced: Integer,
    /// The same terms weighted by `C(p-1,a)^2 C(p-1,b)^2 C(p-1,a+b-d)^2`, exact.
    pub unreduced: Integer,
    pub value: PrimeFieldElement,
}

pub fn parametric_sums_n3(p: u64) -> Result<ParametricSum> {
    let field = PrimeField::new(p)?;
    let m = (p - 1) as usize;
    let t = BinomialTable::new(m);
    let mut reduced = Integer::zero();
    let mut unreduced = Integer::zero();
    for (a, b, d) in parameter_triples(p) {
        let (a, b, d) = (a as usize, b as usize, d as usize);
        let base = t.value(m - b, a as i64) * t.value(a + b - d, b as i64) * t.value(b, d as i64);
        let w = t.value(m, a as i64) * t.value(m, b as i64) * t.value(m, (a + b - d) as i64);
        let full = &base * &w * &w;
        if (a - d) % 2 == 0 {
            reduced += base;
            unreduced += full;
        } else {
            reduced -= base;
            unreduced -= full;
        }
    }
    let value = field.from_integer(&reduced);
    if value != field.from_integer(&unreduced) {
        return Err(Error::InvalidArgument(format!(
            "reduced and unreduced sums disagree mod {p}"
        )));
    }
    Ok(ParametricSum {
        reduced,
        unreduced,
        value,
    })
}

pub fn parametric_sum_n3(p: u64) -> Result<PrimeFieldElement> {
    Ok(parametric_sums_n3(p)?.value)
}

/// Exponents of one solution in the solved 3x3 family.
///
/// Factor `u12` picks `(-x12 y11)^α1 (x13 y32)^β1`, `u13` picks
/// `(-x23 y12)^α2 (x12 y23)^β2 (-x13 y11)^γ2 (x13 y33)^δ2`, `u21` picks
/// `(-x31 y23)^α3 (x21 y11)^β3 (x23 y31)^γ3`, `u23` picks
/// `(x23 y33)^α4 (-x33 y23)^β4`, `u31` picks
/// `(-x21 y32)^α5 (x33 y31)^β5 (-x31 y33)^γ5 (x31 y11)^δ5` and `u32` picks
/// `(x31 y12)^α6 (-x12 y31)^β6 (x33 y32)^γ6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyExponents {
    pub alpha: [i64; 6],
    pub beta: [i64; 6],
    /// `(γ2, γ3, γ5, γ6)`.
    pub gamma: [i64; 4],
    /// `(δ2, δ5)`.
    pub delta: [i64; 2],
}

impl FamilyExponents {
    pub fn new(p: u64, a: u64, b: u64, d: u64) -> Self {
        let (q, a, b, d) = (p as i64 - 1, a as i64, b as i64, d as i64);
        FamilyExponents {
            alpha: [a, b, d, q - b - a + d, a, q - b],
            beta: [q - a, q - a - b, q - a, a + b - d, q - a - b + d, b],
            gamma: [0, a - d, b - d, 0],
            delta: [a, 0],
        }
    }

    /// Unknowns in `α, β, γ, δ` order.
    pub fn from_vector(v: &[i64; 18]) -> Self {
        FamilyExponents {
            alpha: v[0..6].try_into().expect("6"),
            beta: v[6..12].try_into().expect("6"),
            gamma: v[12..16].try_into().expect("4"),
            delta: v[16..18].try_into().expect("2"),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.alpha
            .iter()
            .chain(&self.beta)
            .chain(&self.gamma)
            .chain(&self.delta)
            .all(|&e| e >= 0)
    }

    /// Left-hand sides of the 18 equations: six `x` exponents, six `y`
    /// exponents, then the six per-factor degrees.
    pub fn equations(&self) -> [i64; 18] {
        let [a1, a2, a3, a4, a5, a6] = self.alpha;
        let [b1, b2, b3, b4, b5, b6] = self.beta;
        let [g2, g3, g5, g6] = self.gamma;
        let [d2, d5] = self.delta;
        [
            a1 + b2 + b6,
            b1 + g2 + d2,
            b3 + a5,
            a2 + g3 + a4,
            a3 + g5 + d5 + a6,
            b4 + b5 + g6,
            a1 + g2 + b3 + d5,
            a2 + a6,
            b2 + a3 + b4,
            g3 + b5 + b6,
            b1 + a5 + g6,
            d2 + a4 + g5,
            a1 + b1,
            a2 + b2 + g2 + d2,
            a3 + b3 + g3,
            a4 + b4,
            a5 + b5 + g5 + d5,
            a6 + b6 + g6,
        ]
    }

    /// Parts of each factor's multinomial, in `u12, u13, u21, u23, u31, u32` order.
    pub fn factor_parts(&self) -> [Vec<i64>; 6] {
        let [a1, a2, a3, a4, a5, a6] = self.alpha;
        let [b1, b2, b3, b4, b5, b6] = self.beta;
        let [g2, g3, g5, g6] = self.gamma;
        let [d2, d5] = self.delta;
        [
            vec![a1, b1],
            vec![a2, b2, g2, d2],
            vec![a3, b3, g3],
            vec![a4, b4],
            vec![a5, b5, g5, d5],
            vec![a6, b6, g6],
        ]
    }

    pub fn sign_exponent(&self) -> i64 {
        let [a1, a2, a3, _, a5, _] = self.alpha;
        let [_, _, _, b4, _, b6] = self.beta;
        let [g2, _, g5, _] = self.gamma;
        a1 + a2 + g2 + a3 + b4 + a5 + g5 + b6
    }
}

/// Every member of the family is nonnegative and solves the 18 equations
/// with right-hand side `p - 1`.
pub fn family_is_sound(p: u64) -> bool {
    parameter_triples(p).all(|(a, b, d)| {
        let f = FamilyExponents::new(p, a, b, d);
        f.is_nonnegative() && f.equations().iter().all(|&e| e == p as i64 - 1)
    })
}

/// Coefficients of (sum of the 12 exponent equations) minus twice (sum of the
/// 6 degree equations) over the 18 unknowns. All zero means the system is
/// singular.
pub fn equation_dependency() -> [i64; 18] {
    let mut out = [0i64; 18];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut unit = [0i64; 18];
        unit[k] = 1;
        let e = FamilyExponents::from_vector(&unit).equations();
        *slot = e[..12].iter().sum::<i64>() - 2 * e[12..].iter().sum::<i64>();
    }
    out
}

/// Exact integer coefficient of `μ^{p-1}` summed over the family:
/// signed products of per-factor multinomials.
pub fn family_multinomial_sum(p: u64) -> Result<Integer> {
    let mut acc = Integer::zero();
    for (a, b, d) in parameter_triples(p) {
        let f = FamilyExponents::new(p, a, b, d);
        let mut term = Integer::one();
        for parts in f.factor_parts() {
            let parts: Vec<u64> = parts.iter().map(|&e| e as u64).collect();
            term *= multinomial(p - 1, &parts)?;
        }
        if f.sign_exponent() % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Parametric,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Parametric => "parametric",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "parametric" => Ok(Method::Parametric),
            _ => Err(Error::InvalidArgument(format!("unknown method {s}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FedderOutcome {
    pub n: usize,
    pub p: u64,
    /// The witness monomial `μ^{p-1}`, printed.
    pub witness: String,
    pub coefficient: PrimeFieldElement,
    pub method: Method,
    pub elapsed: Duration,
}

impl FedderOutcome {
    /// A nonzero coefficient certifies F-purity of `R/I`.
    pub fn certifies(&self) -> bool {
        !self.coefficient.is_zero()
    }
}

/// Coefficient of `μ^{p-1}` in `∏_{i≠j} u_ij^{p-1}` modulo `p`.
pub fn fedder_witness(n: usize, p: u64, method: Method, budget: Option<u64>) -> Result<FedderOutcome> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let start = Instant::now();
    let field = PrimeField::new(p)?;
    let (coefficient, witness) = match method {
        Method::Parametric => {
            if n != 3 {
                return Err(Error::InvalidArgument(
                    "the parametric sum exists for n = 3 only".into(),
                ));
            }
            let s = build_system(3, Domain::Rational)?;
            let mu = mu_monomial(3, p, s.ring().vars())?;
            (parametric_sum_n3(p)?, mu.display(s.ring().vars()))
        }
        Method::Direct => {
            let domain = Domain::from_characteristic(p)?;
            let (ring, gens) = if n == 2 {
                let sh = shifted_n2(domain)?;
                (sh.system.ring().clone(), vec![sh.u12, sh.u21])
            } else {
                let s = build_system(n, domain)?;
                (s.ring().clone(), s.generators())
            };
            let mu = mu_monomial(n, p, ring.vars())?;
            let factors: Vec<Polynomial> = gens
                .iter()
                .flat_map(|g| std::iter::repeat_n(g.clone(), (p - 1) as usize))
                .collect();
            let c = pruned_product_coefficient_with_budget(&factors, &mu, budget)?;
            let c = c.as_fp().unwrap_or_else(|| field.zero());
            (c, mu.display(ring.vars()))
        }
    };
    Ok(FedderOutcome {
        n,
        p,
        witness,
        coefficient,
        method,
        elapsed: start.elapsed(),
    })
}

pub fn fedder_witness_n2(p: u64) -> Result<FedderOutcome> {
    fedder_witness(2, p, Method::Direct, None)
}

/// The double sum
/// `Σ_{α,β} (-1)^{α+β} C(p-1,α) C(p-1,β) x'^{α+β} y'^{2(p-1)-α-β}
/// x12^{p-1-α} y12^α x21^{p-1-β} y21^β`
/// in the shifted 2x2 ring over the rationals.
pub fn n2_double_sum(p: u64) -> Result<Polynomial> {
    let sh = shifted_n2(Domain::Rational)?;
    let ring = sh.system.ring().clone();
    let vars = ring.vars();
    let q = (p - 1) as u16;
    let t = BinomialTable::new(q as usize);
    let mut terms = Vec::new();
    for al in 0..=q {
        for be in 0..=q {
            let m = Monomial::from_named(
                vars,
                &[
                    (X11_SHIFTED, al + be),
                    (Y11_SHIFTED, 2 * q - al - be),
                    ("x[1][2]", q - al),
                    ("y[1][2]", al),
                    ("x[2][1]", q - be),
                    ("y[2][1]", be),
                ],
            )?;
            let mut c = t.value(q as usize, al as i64) * t.value(q as usize, be as i64);
            if (al + be) % 2 == 1 {
                c = -c;
            }
            terms.push((m, ring.domain().from_integer(&c)));
        }
    }
    Ok(Polynomial::from_terms(&ring, terms))
}

/// Whether the double sum equals `(u12 · (-u21))^{p-1}` term by term.
pub fn n2_double_sum_matches(p: u64) -> Result<bool> {
    let sh = shifted_n2(Domain::Rational)?;
    let expanded = (&sh.u12 * &(-&sh.u21)).pow((p - 1) as u32);
    Ok(expanded == n2_double_sum(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::binomial;
    use proptest::prelude::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    /// Independent evaluation straight from the summation formula, no table.
    fn c_oracle(m: u64) -> Integer {
        let mut acc = Integer::zero();
        for a in 0..=m {
            for b in 0..=m - a {
                for d in 0..=a.min(b) {
                    let t = binomial(m - b, a as i64) * binomial(a + b - d, b as i64) * binomial(b, d as i64);
                    if (a - d) % 2 == 0 {
                        acc += t;
                    } else {
                        acc -= t;
                    }
                }
            }
        }
        acc
    }

    #[test]
    fn identity_examples() {
        assert_eq!(identity_a(1, 0, 0), Ok(int(0)));
        assert_eq!(identity_b(2, 1), Ok(int(0)));
        assert_eq!(identity_c(1), Ok(int(1)));
        assert!(identity_a(2, 1, 2).is_err());
        assert!(identity_b(1, 2).is_err());
        assert!(identity_c(0).is_err());
        let ids = Identities::new(10);
        assert_eq!(
            ids.a(3, 2, 0).unwrap() - ids.a(3, 2, 1).unwrap(),
            ids.a(2, 1, 0).unwrap()
        );
    }

    #[test]
    fn c_matches_unordered_triple_sum() {
        let ids = Identities::new(25);
        for m in 1..=25u64 {
            assert_eq!(ids.c(m as usize).unwrap(), c_oracle(m), "m={m}");
        }
    }

    #[test]
    fn b_values_and_recurrence() {
        let table = IdentityTable::compute(40).unwrap();
        let ids = Identities::new(40);
        for m in 1..=40usize {
            for b in 0..m {
                assert!(table.b[m - 1][b].is_zero(), "B({m},{b})");
            }
            assert!(table.b[m - 1][m].is_one());
            assert!(table.c[m - 1].is_one());
            for b in 1..m {
                assert_eq!(table.b[m - 2][b - 1], table.b[m - 1][b]);
                for d in 0..b {
                    if m > b {
                        assert_eq!(
                            ids.a(m, b, d).unwrap() - ids.a(m, b, d + 1).unwrap(),
                            ids.a(m - 1, b - 1, d).unwrap(),
                            "({m},{b},{d})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn table_agrees_with_literal_sums() {
        let table = IdentityTable::compute(30).unwrap();
        let ids = Identities::new(30);
        for m in 1..=30usize {
            for b in 0..=m {
                assert_eq!(table.b[m - 1][b], ids.b(m, b).unwrap(), "B({m},{b})");
            }
            assert_eq!(table.c[m - 1], ids.c(m).unwrap());
        }
    }

    #[test]
    fn parametric_sum_examples() {
        for p in [2u64, 3, 5, 7, 11, 97] {
            let s = parametric_sums_n3(p).unwrap();
            assert!(s.value.is_one(), "p={p}");
            assert!(s.reduced.is_one());
        }
        assert!(parametric_sum_n3(4).is_err());
    }

    #[test]
    fn parametric_sum_agrees_with_identity_c() {
        for p in [2u64, 3, 5, 7, 13, 31] {
            let field = PrimeField::new(p).unwrap();
            assert_eq!(
                parametric_sum_n3(p).unwrap(),
                field.from_integer(&identity_c((p - 1) as usize).unwrap())
            );
        }
    }

    #[test]
    fn family_exponents_are_sound() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            assert!(family_is_sound(p), "p={p}");
        }
        assert!(equation_dependency().iter().all(|&v| v == 0));
    }

    /// All nonnegative solutions of the 18 equations, by enumeration of every
    /// per-factor composition.
    fn brute_solutions(p: u64) -> Vec<FamilyExponents> {
        let q = p as i64 - 1;
        fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
            if parts == 1 {
                return vec![vec![total]];
            }
            (0..=total)
                .flat_map(|h| {
                    compositions(total - h, parts - 1).into_iter().map(move |mut r| {
                        r.insert(0, h);
                        r
                    })
                })
                .collect()
        }
        let mut out = Vec::new();
        for c13 in compositions(q, 4) {
            for c21 in compositions(q, 3) {
                for c31 in compositions(q, 4) {
                    for c32 in compositions(q, 3) {
                        for a1 in 0..=q {
                            for a4 in 0..=q {
                                let f = FamilyExponents {
                                    alpha: [a1, c13[0], c21[0], a4, c31[0], c32[0]],
                                    beta: [q - a1, c13[1], c21[1], q - a4, c31[1], c32[1]],
                                    gamma: [c13[2], c21[2], c31[2], c32[2]],
                                    delta: [c13[3], c31[3]],
                                };
                                if f.equations().iter().all(|&e| e == q) {
                                    out.push(f);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn family_is_complete_for_small_p() {
        for p in [2u64, 3, 5] {
            let mut brute = brute_solutions(p);
            let mut fam: Vec<FamilyExponents> = parameter_triples(p)
                .map(|(a, b, d)| FamilyExponents::new(p, a, b, d))
                .collect();
            let key = |f: &FamilyExponents| (f.alpha, f.beta, f.gamma, f.delta);
            brute.sort_by_key(key);
            fam.sort_by_key(key);
            assert_eq!(brute, fam, "p={p}");
        }
    }

    #[test]
    fn family_sum_matches_unreduced_form() {
        for p in [2u64, 3, 5, 7, 11] {
            let fam = family_multinomial_sum(p).unwrap();
            let s = parametric_sums_n3(p).unwrap();
            assert_eq!(fam, s.unreduced, "p={p}");
        }
    }

    #[test]
    fn direct_and_parametric_agree_n3() {
        for p in [2u64, 3, 5] {
            let d = fedder_witness(3, p, Method::Direct, None).unwrap();
            let q = fedder_witness(3, p, Method::Parametric, None).unwrap();
            assert_eq!(d.coefficient, q.coefficient, "p={p}");
            assert!(d.coefficient.is_one());
            let field = PrimeField::new(p).unwrap();
            assert_eq!(d.coefficient, field.from_integer(&family_multinomial_sum(p).unwrap()));
        }
    }

    #[test]
    fn n2_witness() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let o = fedder_witness_n2(p).unwrap();
            let expected = PrimeField::new(p).unwrap().elem(if (p - 1) % 2 == 0 { 1 } else { -1 });
            assert_eq!(o.coefficient, expected, "p={p}");
            assert!(o.certifies());
        }
        for p in [2u64, 3, 5] {
            assert!(n2_double_sum_matches(p).unwrap());
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(
            fedder_witness(3, 4, Method::Direct, None).unwrap_err(),
            Error::NotPrime(4)
        );
        assert!(fedder_witness(4, 2, Method::Parametric, None).is_err());
        assert_eq!(
            fedder_witness(3, 5, Method::Direct, Some(10)).unwrap_err(),
            Error::Budget(10)
        );
    }

    proptest! {
        #[test]
        fn identity_b_vanishes_below_diagonal(m in 1usize..30, b in 0usize..30) {
            prop_assume!(b < m);
            prop_assert!(identity_b(m, b).unwrap().is_zero());
        }
    }
}
