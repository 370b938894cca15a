//! Buchberger's algorithm with ideal operations built on top: membership,
//! equality, intersection, colon ideals and Krull dimension.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::multipoly::{same_ring, Coeff, Monomial, Polynomial, RingRef};

/// Default cap on reduction steps for a single computation.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Budget from `NEARLY_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("NEARLY_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    /// Block order: variables with index `>= from` are compared first
    /// (grevlex), ties broken by grevlex on the rest.
    Elimination {
        from: usize,
    },
}

fn grevlex_slice(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.grevlex_cmp(b),
            MonomialOrder::Elimination { from } => {
                let (a0, a1) = a.exps().split_at(from);
                let (b0, b1) = b.exps().split_at(from);
                grevlex_slice(a1, b1).then_with(|| grevlex_slice(a0, b0))
            }
        }
    }
}

type Term = (Monomial, Coeff);

/// Terms in ascending order, so the leading term is last.
#[derive(Debug, Clone)]
struct OPoly {
    terms: Vec<Term>,
}

impl OPoly {
    fn from_poly(f: &Polynomial, order: MonomialOrder) -> Self {
        let mut terms = f.terms().to_vec();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        OPoly { terms }
    }

    fn to_poly(&self, ring: &RingRef) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = c.inverse().expect("field coefficient");
                for t in self.terms.iter_mut() {
                    t.1 = &t.1 * &inv;
                }
            }
        }
    }
}

/// `f - c * m * g`, all ascending.
fn sub_mul(f: &[Term], c: &Coeff, m: &Monomial, g: &[Term], order: MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    while i < f.len() || j < g.len() {
        if j == g.len() {
            out.extend_from_slice(&f[i..]);
            break;
        }
        let gm = g[j].0.mul(m);
        if i == f.len() {
            out.push((gm, -&(c * &g[j].1)));
            j += 1;
            continue;
        }
        match order.cmp(&f[i].0, &gm) {
            Ordering::Less => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((gm, -&(c * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = &f[i].1 - &(c * &g[j].1);
                if !v.is_zero() {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

struct Steps {
    used: u64,
    limit: Option<u64>,
}

impl Steps {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        match self.limit {
            Some(l) if self.used > l => Err(Error::Budget(l)),
            _ => Ok(()),
        }
    }
}

/// Full reduction of `f` by monic `basis`.
fn reduce(f: Vec<Term>, basis: &[OPoly], order: MonomialOrder, steps: &mut Steps) -> Result<Vec<Term>> {
    let mut p = f;
    let mut rem: Vec<Term> = Vec::new();
    while let Some((m, c)) = p.last().cloned() {
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                steps.tick()?;
                let q = m.div(g.lm()).expect("divides");
                p = sub_mul(&p, &c, &q, &g.terms, order);
            }
            None => {
                p.pop();
                rem.push((m, c));
            }
        }
    }
    rem.reverse();
    Ok(rem)
}

fn s_poly(f: &OPoly, g: &OPoly, order: MonomialOrder) -> Vec<Term> {
    let l = f.lm().lcm(g.lm());
    let a = l.div(f.lm()).expect("lcm");
    let b = l.div(g.lm()).expect("lcm");
    let one = f.terms.last().expect("nonzero").1.clone();
    let fa = sub_mul(&[], &-&one, &a, &f.terms, order);
    sub_mul(&fa, &one, &b, &g.terms, order)
}

/// Reduced Gröbner basis of an ideal.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: RingRef,
    order: MonomialOrder,
    basis: Vec<OPoly>,
    steps: u64,
}

pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_budget(gens, order, Some(DEFAULT_BUDGET))
}

/// Buchberger with the coprime and chain criteria and the normal selection
/// strategy. `budget` caps the number of reduction steps.
pub fn buchberger_with_budget(gens: &[Polynomial], order: MonomialOrder, budget: Option<u64>) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidArgument("no generators given, ring unknown".into()));
    };
    let ring = first.ring().clone();
    if gens.iter().any(|g| !same_ring(g.ring(), &ring)) {
        return Err(Error::DomainMismatch);
    }
    let mut steps = Steps { used: 0, limit: budget };
    let mut g: Vec<OPoly> = Vec::new();
    for f in gens {
        let r = reduce(OPoly::from_poly(f, order).terms, &g, order, &mut steps)?;
        if !r.is_empty() {
            let mut p = OPoly { terms: r };
            p.make_monic();
            g.push(p);
        }
    }
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while !pairs.is_empty() {
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| {
                let la = g[a.0].lm().lcm(g[a.1].lm());
                let lb = g[b.0].lm().lcm(g[b.1].lm());
                la.degree()
                    .cmp(&lb.degree())
                    .then_with(|| order.cmp(&la, &lb))
                    .then_with(|| a.cmp(b))
            })
            .expect("nonempty");
        pairs.remove(&(i, j));
        let (li, lj) = (g[i].lm(), g[j].lm());
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..g.len()).any(|k| {
            k != i && k != j && g[k].lm().divides(&l) && !pairs.contains(&key(i, k)) && !pairs.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let r = reduce(s_poly(&g[i], &g[j], order), &g, order, &mut steps)?;
        if r.is_empty() {
            continue;
        }
        let mut p = OPoly { terms: r };
        p.make_monic();
        let k = g.len();
        g.push(p);
        for a in 0..k {
            pairs.insert((a, k));
        }
    }
    let basis = auto_reduce(g, order, &mut steps)?;
    let gb = GroebnerBasis {
        ring,
        order,
        basis,
        steps: steps.used,
    };
    assert!(gb.s_pairs_reduce_to_zero(), "Buchberger postcondition violated");
    Ok(gb)
}

fn auto_reduce(g: Vec<OPoly>, order: MonomialOrder, steps: &mut Steps) -> Result<Vec<OPoly>> {
    let mut g = g;
    g.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<OPoly> = Vec::new();
    for p in g {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<OPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != idx)
            .map(|(_, p)| p.clone())
            .collect();
        let mut terms = minimal[idx].terms.clone();
        let lead = terms.pop().expect("nonzero");
        let mut tail = reduce(terms, &others, order, steps)?;
        tail.push(lead);
        let mut p = OPoly { terms: tail };
        p.make_monic();
        out.push(p);
    }
    Ok(out)
}

/// Witness that a quotient ring is finite-dimensional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDimCertificate {
    /// `(variable, e)` with `x^e` a leading monomial, one per variable.
    pub pure_powers: Vec<(usize, u16)>,
    /// Number of standard monomials, the vector-space dimension of the quotient.
    pub standard_monomials: u64,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Reduction steps spent building the basis.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|p| p.lm().is_one())
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|p| p.to_poly(&self.ring)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|p| p.lm().clone()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::DomainMismatch);
        }
        let mut steps = Steps { used: 0, limit: None };
        let r = reduce(
            OPoly::from_poly(f, self.order).terms,
            &self.basis,
            self.order,
            &mut steps,
        )?;
        Ok(Polynomial::from_terms(&self.ring, r))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_all(&self, fs: &[Polynomial]) -> Result<bool> {
        for f in fs {
            if !self.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every S-polynomial of the basis reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let mut steps = Steps { used: 0, limit: None };
        for j in 0..self.basis.len() {
            for i in 0..j {
                let s = s_poly(&self.basis[i], &self.basis[j], self.order);
                match reduce(s, &self.basis, self.order, &mut steps) {
                    Ok(r) if r.is_empty() => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Krull dimension of the quotient: the largest set of variables containing
    /// the support of no leading monomial.
    pub fn dimension(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let nv = self.ring.nvars();
        if nv > 64 {
            return Err(Error::InvalidArgument("dimension supports at most 64 variables".into()));
        }
        let masks: Vec<u64> = self
            .basis
            .iter()
            .map(|p| p.lm().support().iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        fn search(v: usize, nv: usize, set: u64, size: usize, masks: &[u64], best: &mut usize) {
            if size + (nv - v) <= *best {
                return;
            }
            if v == nv {
                *best = size;
                return;
            }
            let with = set | 1 << v;
            if masks.iter().all(|&m| m & !with != 0) {
                search(v + 1, nv, with, size + 1, masks, best);
            }
            search(v + 1, nv, set, size, masks, best);
        }
        let mut best = 0;
        search(0, nv, 0, 0, &masks, &mut best);
        Ok(best)
    }

    /// Certificate of finite quotient dimension, or `None` when some variable
    /// has no pure power among the leading monomials. Counting stops at `limit`.
    pub fn zero_dim_certificate(&self, limit: u64) -> Result<Option<ZeroDimCertificate>> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let nv = self.ring.nvars();
        let lms = self.leading_monomials();
        let mut pure_powers = Vec::with_capacity(nv);
        for v in 0..nv {
            let e = lms.iter().filter(|m| m.support() == [v]).map(|m| m.exp(v)).min();
            match e {
                Some(e) => pure_powers.push((v, e)),
                None => return Ok(None),
            }
        }
        let mut count = 0u64;
        let mut cur = Monomial::one(nv);
        fn walk(v: usize, cur: &mut Monomial, bounds: &[(usize, u16)], lms: &[Monomial], count: &mut u64, limit: u64) {
            if *count >= limit {
                return;
            }
            if v == bounds.len() {
                *count += 1;
                return;
            }
            for e in 0..bounds[v].1 {
                cur.exps_mut()[v] = e;
                if lms.iter().any(|m| m.divides(cur)) {
                    break;
                }
                walk(v + 1, cur, bounds, lms, count, limit);
            }
            cur.exps_mut()[v] = 0;
        }
        walk(0, &mut cur, &pure_powers, &lms, &mut count, limit);
        if count >= limit {
            return Err(Error::Budget(limit));
        }
        Ok(Some(ZeroDimCertificate {
            pure_powers,
            standard_monomials: count,
        }))
    }
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

pub fn leading_term_dimension(gb: &GroebnerBasis) -> Result<usize> {
    gb.dimension()
}

fn nonzero(gens: &[Polynomial]) -> Vec<Polynomial> {
    gens.iter().filter(|g| !g.is_zero()).cloned().collect()
}

/// Ideal equality by mutual normal-form vanishing.
pub fn ideal_equal(a: &[Polynomial], b: &[Polynomial]) -> Result<bool> {
    let (a, b) = (nonzero(a), nonzero(b));
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return Ok(true),
        (true, false) | (false, true) => return Ok(false),
        _ => {}
    }
    let ga = buchberger(&a, MonomialOrder::Grevlex)?;
    let gb = buchberger(&b, MonomialOrder::Grevlex)?;
    Ok(ga.contains_all(&b)? && gb.contains_all(&a)?)
}

fn fresh_name(ring: &RingRef) -> String {
    (0..)
        .map(|k| format!("t{k}_"))
        .find(|n| ring.vars().index_of(n).is_none())
        .expect("unbounded")
}

/// Generators of `a ∩ b`: eliminate `t` from `t·a + (1 - t)·b`.
pub fn ideal_intersection(a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let (a, b) = (nonzero(a), nonzero(b));
    let Some(first) = a.first().or(b.first()) else {
        return Ok(Vec::new());
    };
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let ring = first.ring().clone();
    if a.iter().chain(&b).any(|g| !same_ring(g.ring(), &ring)) {
        return Err(Error::DomainMismatch);
    }
    let ext = ring.extended(&[fresh_name(&ring)])?;
    let nv = ring.nvars();
    let t = Polynomial::var(&ext, nv);
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for f in &a {
        gens.push(&t * &f.embed_into(&ext)?);
    }
    for f in &b {
        gens.push(&one_minus_t * &f.embed_into(&ext)?);
    }
    let gb = buchberger(&gens, MonomialOrder::Elimination { from: nv })?;
    gb.generators()
        .into_iter()
        .filter(|g| g.variables().iter().all(|&v| v < nv))
        .map(|g| g.embed_into(&ring))
        .collect()
}

/// Generators of `a : b`, intersecting `(a ∩ (f)) / f` over `f` in `b`.
pub fn ideal_colon(a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let b = nonzero(b);
    if b.is_empty() {
        return Err(Error::InvalidArgument("colon by the zero ideal".into()));
    }
    let a = nonzero(a);
    let ring = b[0].ring().clone();
    if a.is_empty() {
        return Ok(Vec::new());
    }
    let mut acc: Option<Vec<Polynomial>> = None;
    for f in &b {
        let inter = ideal_intersection(&a, std::slice::from_ref(f))?;
        let mut quot = Vec::with_capacity(inter.len());
        for g in &inter {
            quot.push(
                g.exact_divide(f)?
                    .ok_or_else(|| Error::InvalidArgument("intersection element not divisible".into()))?,
            );
        }
        acc = Some(match acc {
            None => quot,
            Some(prev) => ideal_intersection(&prev, &quot)?,
        });
    }
    let out = acc.unwrap_or_default();
    if out.is_empty() {
        return Ok(vec![Polynomial::zero(&ring)]);
    }
    Ok(out)
}
