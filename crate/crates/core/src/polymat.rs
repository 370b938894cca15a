//! Square matrices over a polynomial ring: commutators, powers, two
//! determinant algorithms, characteristic polynomials, discriminants, and the
//! diagonal-power determinant `P(X) = det D(X)`.

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::multipoly::{same_ring, Coeff, Domain, Polynomial, Ring, RingRef, VariableTable};
use crate::report::{Check, CheckReport};

#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    ring: RingRef,
    n: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_entries(ring: &RingRef, n: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::SizeMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !same_ring(e.ring(), ring)) {
            return Err(Error::DomainMismatch);
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            n,
            entries,
        })
    }

    pub fn from_fn(ring: &RingRef, n: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
            ring: ring.clone(),
            n,
            entries,
        }
    }

    pub fn zero(ring: &RingRef, n: usize) -> Self {
        PolyMatrix::from_fn(ring, n, |_, _| Polynomial::zero(ring))
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        PolyMatrix::from_fn(ring, n, |i, j| Polynomial::constant(ring, (i == j) as i64))
    }

    pub fn from_i64_rows(ring: &RingRef, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch("rows of unequal length".into()));
        }
        Ok(PolyMatrix::from_fn(ring, n, |i, j| {
            Polynomial::constant(ring, rows[i][j])
        }))
    }

    /// Matrix of variables `{prefix}[i][j]` (1-based), which must exist in the ring.
    pub fn generic(ring: &RingRef, n: usize, prefix: &str) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(Polynomial::var_named(ring, &format!("{prefix}[{i}][{j}]"))?);
            }
        }
        PolyMatrix::from_entries(ring, n, entries)
    }

    pub fn diagonal_matrix(ring: &RingRef, diag: Vec<Polynomial>) -> Self {
        let n = diag.len();
        PolyMatrix::from_fn(ring, n, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                Polynomial::zero(ring)
            }
        })
    }

    /// Parse rows separated by newlines, entries separated by `;`.
    pub fn parse(ring: &RingRef, text: &str) -> Result<Self> {
        let rows: Vec<Vec<Polynomial>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| {
                line.split(';')
                    .map(|e| Polynomial::parse(ring, e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch("matrix literal is not square".into()));
        }
        PolyMatrix::from_entries(ring, n, rows.into_iter().flatten().collect())
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Polynomial) {
        assert!(same_ring(v.ring(), &self.ring));
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn diagonal(&self) -> Vec<Polynomial> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    /// Last row, left to right.
    pub fn bottom_row(&self) -> Vec<Polynomial> {
        (0..self.n).map(|j| self.get(self.n - 1, j).clone()).collect()
    }

    fn check_same(&self, other: &PolyMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(format!("{} vs {}", self.n, other.n)));
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_same(other)?;
        Ok(PolyMatrix::from_fn(&self.ring, self.n, |i, j| {
            self.get(i, j) + other.get(i, j)
        }))
    }

    pub fn try_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_same(other)?;
        Ok(PolyMatrix::from_fn(&self.ring, self.n, |i, j| {
            self.get(i, j) - other.get(i, j)
        }))
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_same(other)?;
        let n = self.n;
        Ok(PolyMatrix::from_fn(&self.ring, n, |i, j| {
            let mut acc = Polynomial::zero(&self.ring);
            for k in 0..n {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    pub fn scale(&self, c: &Polynomial) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, self.n, |i, j| self.get(i, j) * c)
    }

    /// `self - c*I`.
    pub fn shift(&self, c: &Polynomial) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, self.n, |i, j| {
            if i == j {
                self.get(i, j) - c
            } else {
                self.get(i, j).clone()
            }
        })
    }

    pub fn pow(&self, k: u32) -> PolyMatrix {
        let mut acc = PolyMatrix::identity(&self.ring, self.n);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same shape");
        }
        acc
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, self.n, |i, j| self.get(j, i).clone())
    }

    /// Block diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::DomainMismatch);
        }
        let (a, b) = (self.n, other.n);
        Ok(PolyMatrix::from_fn(&self.ring, a + b, |i, j| {
            if i < a && j < a {
                self.get(i, j).clone()
            } else if i >= a && j >= a {
                other.get(i - a, j - a).clone()
            } else {
                Polynomial::zero(&self.ring)
            }
        }))
    }

    /// Top-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, k.min(self.n), |i, j| self.get(i, j).clone())
    }

    pub fn embed_into(&self, target: &RingRef) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed_into(target))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_entries(target, self.n, entries)
    }

    /// Inverse of a matrix whose entries are all constants.
    pub fn inverse_constant(&self) -> Result<PolyMatrix> {
        let n = self.n;
        let dom = self.ring.domain();
        let mut a: Vec<Vec<Coeff>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.get(i, j)
                            .constant_value()
                            .ok_or_else(|| Error::InvalidArgument("matrix entry is not constant".into()))
                    })
                    .chain((0..n).map(|j| Ok(dom.from_i64((i == j) as i64))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::InvalidArgument("singular matrix".into()))?;
            a.swap(col, piv);
            let inv = a[col][col].inverse().expect("nonzero pivot");
            for v in a[col].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * n {
                        let sub = &f * &a[col][c];
                        a[r][c] = &a[r][c] - &sub;
                    }
                }
            }
        }
        Ok(PolyMatrix::from_fn(&self.ring, n, |i, j| {
            Polynomial::from_coeff(&self.ring, a[i][n + j].clone())
        }))
    }

    /// Determinant by Laplace expansion along rows, memoized on the set of
    /// used columns. Zero entries are skipped, which suits sparse matrices.
    pub fn determinant(&self) -> Polynomial {
        assert!(self.n < 64, "cofactor expansion limited to n < 64");
        let mut memo: HashMap<u64, Polynomial> = HashMap::new();
        self.cofactor(0, 0, &mut memo)
    }

    fn cofactor(&self, row: usize, used: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
        if row == self.n {
            return Polynomial::one(&self.ring);
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = Polynomial::zero(&self.ring);
        let mut free_before = 0;
        for c in 0..self.n {
            if used & (1 << c) != 0 {
                continue;
            }
            let e = self.get(row, c);
            if !e.is_zero() {
                let minor = self.cofactor(row + 1, used | (1 << c), memo);
                if !minor.is_zero() {
                    let term = e * &minor;
                    acc = if free_before % 2 == 0 {
                        &acc + &term
                    } else {
                        &acc - &term
                    };
                }
            }
            free_before += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }

    /// Fraction-free Bareiss elimination with row pivoting.
    pub fn determinant_bareiss(&self) -> Polynomial {
        let n = self.n;
        if n == 0 {
            return Polynomial::one(&self.ring);
        }
        let mut m: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = Polynomial::one(&self.ring);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Polynomial::zero(&self.ring),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num
                        .exact_divide(&prev)
                        .expect("same ring")
                        .expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            -&d
        } else {
            d
        }
    }

    /// `XY - YX`.
    pub fn commutator(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join("; "))?;
        }
        Ok(())
    }
}

pub fn commutator(x: &PolyMatrix, y: &PolyMatrix) -> Result<PolyMatrix> {
    x.commutator(y)
}

/// Monic characteristic polynomial `det(tI - M)`, stored by coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    ring: RingRef,
    /// `coeffs[k]` multiplies `t^k`; the last entry is the constant one.
    coeffs: Vec<Polynomial>,
}

impl CharPoly {
    /// Build from explicit coefficients (lowest degree first); must be monic.
    pub fn from_coeffs(ring: &RingRef, coeffs: Vec<Polynomial>) -> Result<Self> {
        match coeffs.last() {
            Some(c) if c.is_one() => Ok(CharPoly {
                ring: ring.clone(),
                coeffs,
            }),
            _ => Err(Error::InvalidArgument("characteristic polynomial must be monic".into())),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Polynomial {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Whether every coefficient equals the given integers (lowest degree first).
    pub fn equals_integers(&self, expected: &[i64]) -> bool {
        self.coeffs.len() == expected.len()
            && self
                .coeffs
                .iter()
                .zip(expected)
                .all(|(c, &e)| *c == Polynomial::constant(&self.ring, e))
    }

    /// Evaluate at a square matrix by Horner's rule (Cayley–Hamilton checks).
    pub fn evaluate_at(&self, m: &PolyMatrix) -> Result<PolyMatrix> {
        let mut acc = PolyMatrix::zero(m.ring(), m.size());
        for c in self.coeffs.iter().rev() {
            let c = c.embed_into(m.ring())?;
            acc = acc
                .try_mul(m)?
                .try_add(&PolyMatrix::identity(m.ring(), m.size()).scale(&c))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let power = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let coeff = c.to_string();
            // constants print with their sign, other coefficients in parentheses
            let (negative, body) = match coeff.strip_prefix('-') {
                Some(rest) if c.is_constant() => (true, rest.to_string()),
                _ if c.is_constant() => (false, coeff),
                _ => (false, format!("({coeff})")),
            };
            let term = match (body.as_str(), power.is_empty()) {
                (_, true) => body,
                ("1", false) => power,
                _ => format!("{body}*{power}"),
            };
            match (out.is_empty(), negative) {
                (true, true) => out.push_str(&format!("-{term}")),
                (true, false) => out.push_str(&term),
                (false, true) => out.push_str(&format!(" - {term}")),
                (false, false) => out.push_str(&format!(" + {term}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

fn fresh_name(table: &VariableTable, base: &str) -> String {
    let mut name = base.to_string();
    while table.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// `det(tI - M)` with `t` adjoined as a fresh variable; no division is used,
/// so the result is valid in every characteristic.
pub fn char_poly(m: &PolyMatrix) -> CharPoly {
    let ring = m.ring();
    let t = fresh_name(ring.vars(), "t");
    let ext = ring.extended(&[t.as_str()]).expect("fresh name");
    let ti = ext.nvars() - 1;
    let me = m.embed_into(&ext).expect("embedding into an extension");
    let tvar = Polynomial::var(&ext, ti);
    let shifted = PolyMatrix::from_fn(&ext, m.size(), |i, j| {
        let e = -me.get(i, j);
        if i == j {
            &e + &tvar
        } else {
            e
        }
    });
    let det = shifted.determinant();
    let mut coeffs: Vec<Polynomial> = det
        .coefficients_in(ti)
        .iter()
        .map(|c| c.embed_into(ring).expect("t eliminated"))
        .collect();
    coeffs.resize(m.size() + 1, Polynomial::zero(ring));
    CharPoly {
        ring: ring.clone(),
        coeffs,
    }
}

/// Sylvester matrix of `f` (degree `m`) and `g` (formal degree `k`), both given
/// lowest degree first.
pub fn sylvester_matrix(ring: &RingRef, f: &[Polynomial], g: &[Polynomial]) -> PolyMatrix {
    let (m, k) = (f.len() - 1, g.len() - 1);
    let size = m + k;
    PolyMatrix::from_fn(ring, size, |i, j| {
        let (src, deg, shift) = if i < k { (f, m, i) } else { (g, k, i - k) };
        if j < shift || j > shift + deg {
            Polynomial::zero(ring)
        } else {
            src[deg - (j - shift)].clone()
        }
    })
}

/// `(-1)^{n(n-1)/2} Res(f, f')`, the discriminant of a monic polynomial.
///
/// The derivative keeps formal degree `n - 1` even when its leading
/// coefficient vanishes in the characteristic; for monic `f` the resultant
/// still equals the product of `f'` over the roots of `f`.
pub fn discriminant(f: &CharPoly) -> Result<Polynomial> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::InvalidArgument("discriminant needs degree >= 2".into()));
    }
    let deriv: Vec<Polynomial> = (1..=n).map(|k| f.coeffs[k].scale_i64(k as i64)).collect();
    let syl = sylvester_matrix(&f.ring, &f.coeffs, &deriv);
    let res = syl.determinant();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -&res } else { res })
}

/// The matrix whose column `i` is the main diagonal of `X^i` (0-based).
pub fn diagonal_power_matrix(x: &PolyMatrix) -> PolyMatrix {
    let n = x.size();
    let mut cols: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
    let mut power = PolyMatrix::identity(x.ring(), n);
    for c in 0..n {
        if c > 0 {
            power = power.try_mul(x).expect("same shape");
        }
        cols.push(power.diagonal());
    }
    PolyMatrix::from_fn(x.ring(), n, |i, j| cols[j][i].clone())
}

/// `P(X) = det D(X)`.
pub fn pcal(x: &PolyMatrix) -> Polynomial {
    diagonal_power_matrix(x).determinant()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// The cyclic permutation matrix `E_n`.
    Cyclic,
    /// `0 ⊕ E_{n-1}`, used when the characteristic divides `n`.
    Shifted,
}

pub fn witness_kind(n: usize, characteristic: u64) -> WitnessKind {
    if characteristic != 0 && (n as u64).is_multiple_of(characteristic) {
        WitnessKind::Shifted
    } else {
        WitnessKind::Cyclic
    }
}

/// `E_n` with ones on the superdiagonal and in the bottom-left corner.
pub fn cyclic_matrix(ring: &RingRef, n: usize) -> PolyMatrix {
    PolyMatrix::from_fn(ring, n, |i, j| {
        let one = (j == i + 1) || (i == n - 1 && j == 0);
        Polynomial::constant(ring, one as i64)
    })
}

/// A matrix with `P = 0` and nonzero discriminant, chosen by the ring's characteristic.
pub fn witness_matrix(ring: &RingRef, n: usize) -> Result<PolyMatrix> {
    if n < 3 {
        return Err(Error::InvalidArgument("witness matrices need n >= 3".into()));
    }
    Ok(match witness_kind(n, ring.domain().characteristic()) {
        WitnessKind::Cyclic => cyclic_matrix(ring, n),
        WitnessKind::Shifted => PolyMatrix::zero(ring, 1).direct_sum(&cyclic_matrix(ring, n - 1))?,
    })
}

/// The double-eigenvalue conjugation: returns the ring, `M0` and `M`.
pub struct Case2Data {
    pub ring: RingRef,
    pub u0_inverse: PolyMatrix,
    pub m0: PolyMatrix,
    pub m: PolyMatrix,
    /// `λ3 - λ`.
    pub gap: Polynomial,
}

fn lambda_name(i: usize) -> String {
    format!("lambda[{i}]")
}

/// Build `M = U^{-1}(J - λI)U` over the rationals with `λ, λ3..λn` symbolic.
pub fn case2_data(n: usize) -> Result<Case2Data> {
    if n < 3 {
        return Err(Error::InvalidArgument("needs n >= 3".into()));
    }
    let names: Vec<String> = std::iter::once("lambda".to_string())
        .chain((3..=n).map(lambda_name))
        .collect();
    let ring = Ring::new(VariableTable::new(names)?, Domain::Rational);
    let lam = Polynomial::var(&ring, 0);
    let eig = |i: usize| Polynomial::var(&ring, i - 2); // lambda[i] sits at index i-2
    let j = PolyMatrix::from_fn(&ring, n, |r, c| match (r, c) {
        (0, 0) | (1, 1) => lam.clone(),
        (0, 1) => Polynomial::one(&ring),
        _ if r == c => eig(r + 1),
        _ => Polynomial::zero(&ring),
    });
    let u0 = PolyMatrix::from_i64_rows(&ring, &[vec![0, 0, 1], vec![1, 1, 0], vec![0, 1, 1]])?;
    let u = u0.direct_sum(&PolyMatrix::identity(&ring, n - 3))?;
    let u_inv = u.inverse_constant()?;
    let m = u_inv.try_mul(&j.shift(&lam))?.try_mul(&u)?;
    let m0 = m.leading_block(3);
    Ok(Case2Data {
        gap: &eig(3) - &lam,
        u0_inverse: u_inv.leading_block(3),
        ring,
        m0,
        m,
    })
}

/// Symbolic verification of the double-eigenvalue case for size `n`.
pub fn case2_verify(n: usize) -> Result<CheckReport> {
    let started = Instant::now();
    let data = case2_data(n)?;
    let ring = &data.ring;
    let c = &data.gap;
    let mut report = CheckReport::new("case2").param("n", n);
    let tag = "P(U^-1 J U) != 0 for a double eigenvalue";

    let expected_inv = PolyMatrix::from_i64_rows(ring, &[vec![1, 1, -1], vec![-1, 0, 1], vec![1, 0, 0]])?;
    report.push(
        Check::verdict(
            format!("case2.n{n}.u0_inverse"),
            data.u0_inverse == expected_inv,
            "1; 1; -1 / -1; 0; 1 / 1; 0; 0",
            data.u0_inverse.to_string().trim().replace('\n', " / "),
            tag,
        )
        .timed(started),
    );

    let one = Polynomial::one(ring);
    let zero = Polynomial::zero(ring);
    let expected_m0 = PolyMatrix::from_entries(
        ring,
        3,
        vec![
            one.clone(),
            &one - c,
            -c,
            -&one,
            c - &one,
            c.clone(),
            one.clone(),
            one.clone(),
            zero.clone(),
        ],
    )?;
    report.push(
        Check::verdict(
            format!("case2.n{n}.m0_entries"),
            data.m0 == expected_m0,
            expected_m0.to_string().trim().replace('\n', " / "),
            data.m0.to_string().trim().replace('\n', " / "),
            tag,
        )
        .timed(started),
    );

    for i in 2..=5u32 {
        let diag = data.m0.pow(i).diagonal();
        let expected = vec![zero.clone(), c.pow(i), zero.clone()];
        let fmt = |v: &[Polynomial]| format!("({})", v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "));
        report.push(
            Check::verdict(
                format!("case2.n{n}.diag_m0_pow{i}"),
                diag == expected,
                fmt(&expected),
                fmt(&diag),
                tag,
            )
            .timed(started),
        );
    }

    let p0 = pcal(&data.m0);
    report.push(Check::equal(format!("case2.n{n}.pcal_m0"), c.pow(2), p0, tag).timed(started));

    let lam = Polynomial::var(ring, 0);
    let eig = |i: usize| Polynomial::var(ring, i - 2);
    let mut expected = Polynomial::one(ring);
    for i in 3..=n {
        expected = &expected * &(&eig(i) - &lam).pow(2);
    }
    for i in 3..=n {
        for j in i + 1..=n {
            expected = &expected * &(&eig(j) - &eig(i));
        }
    }
    let pm = pcal(&data.m);
    report.push(Check::equal(format!("case2.n{n}.pcal_m"), expected, pm.clone(), tag).timed(started));

    // shift invariance: conjugate of J itself has the same P
    let unshifted = data.m.shift(&-&lam);
    report.push(Check::equal(format!("case2.n{n}.pcal_shift_invariant"), pm, pcal(&unshifted), tag).timed(started));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::Domain;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring(names: &[&str], c: u64) -> RingRef {
        Ring::new(
            VariableTable::new(names.iter().copied()).unwrap(),
            Domain::from_characteristic(c).unwrap(),
        )
    }

    fn generic_ring(n: usize, c: u64) -> RingRef {
        let mut names = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                names.push(format!("x[{i}][{j}]"));
            }
        }
        Ring::new(
            VariableTable::new(names).unwrap(),
            Domain::from_characteristic(c).unwrap(),
        )
    }

    fn random_matrix(r: &RingRef, n: usize, q: i64, rng: &mut ChaCha8Rng) -> PolyMatrix {
        PolyMatrix::from_fn(r, n, |_, _| Polynomial::constant(r, rng.gen_range(0..q)))
    }

    #[test]
    fn commutator_trivial_cases() {
        let r = generic_ring(3, 0);
        let x = PolyMatrix::generic(&r, 3, "x").unwrap();
        assert!(x.commutator(&x).unwrap().is_zero());
        assert!(x.commutator(&PolyMatrix::identity(&r, 3)).unwrap().is_zero());
        let other = PolyMatrix::identity(&r, 2);
        assert!(matches!(x.commutator(&other), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn determinant_examples() {
        let r = ring(&["x[1][1]", "x[2][2]"], 0);
        assert!(PolyMatrix::identity(&r, 4).determinant().is_one());
        let d = PolyMatrix::parse(&r, "1; x[1][1]\n1; x[2][2]").unwrap();
        let expected = Polynomial::parse(&r, "x[2][2] - x[1][1]").unwrap();
        assert_eq!(d.determinant(), expected);
        assert_eq!(d.determinant_bareiss(), expected);
    }

    #[test]
    fn determinant_algorithms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for c in [0u64, 7, 101] {
            let r = generic_ring(3, c);
            let x = PolyMatrix::generic(&r, 3, "x").unwrap();
            assert_eq!(x.determinant(), x.determinant_bareiss());
            let d = diagonal_power_matrix(&x);
            assert_eq!(d.determinant(), d.determinant_bareiss());
            for n in 1..=6 {
                let m = random_matrix(&r, n, 7, &mut rng);
                assert_eq!(m.determinant(), m.determinant_bareiss());
            }
            // singular with a zero leading pivot
            let s = PolyMatrix::from_i64_rows(&r, &[vec![0, 1, 2], vec![0, 3, 4], vec![5, 6, 7]]).unwrap();
            assert_eq!(s.determinant(), s.determinant_bareiss());
        }
    }

    #[test]
    fn char_poly_examples() {
        let r = ring(&["a"], 0);
        let e3 = witness_matrix(&r, 3).unwrap();
        assert!(char_poly(&e3).equals_integers(&[-1, 0, 0, 1]));
        let r2 = ring(&["a"], 2);
        let e4 = witness_matrix(&r2, 4).unwrap();
        assert!(char_poly(&e4).equals_integers(&[0, -1, 0, 0, 1]));
        assert!(char_poly(&PolyMatrix::zero(&r, 2)).equals_integers(&[0, 0, 1]));
        assert_eq!(char_poly(&e3).to_string(), "t^3 - 1");
        assert_eq!(char_poly(&PolyMatrix::zero(&r, 2)).to_string(), "t^2");
        let m = PolyMatrix::diagonal_matrix(&r, vec![Polynomial::var(&r, 0), Polynomial::constant(&r, 2)]);
        assert_eq!(char_poly(&m).to_string(), "t^2 + (-a - 2)*t + (2*a)");
    }

    #[test]
    fn char_poly_with_variable_named_t() {
        let r = ring(&["t"], 0);
        let m = PolyMatrix::diagonal_matrix(&r, vec![Polynomial::var(&r, 0), Polynomial::one(&r)]);
        let cp = char_poly(&m);
        // (s - t)(s - 1) = s^2 - (t+1)s + t
        assert_eq!(*cp.coeff(0), Polynomial::var(&r, 0));
        assert_eq!(*cp.coeff(1), Polynomial::parse(&r, "-t-1").unwrap());
    }

    #[test]
    fn discriminant_examples() {
        let r = ring(&["a", "b"], 0);
        let m = PolyMatrix::diagonal_matrix(&r, vec![Polynomial::var(&r, 0), Polynomial::var(&r, 1)]);
        let d = discriminant(&char_poly(&m)).unwrap();
        assert_eq!(d, Polynomial::parse(&r, "(a-b)^2").unwrap());
        let e3 = witness_matrix(&r, 3).unwrap();
        assert_eq!(discriminant(&char_poly(&e3)).unwrap(), Polynomial::constant(&r, -27));
        let one = CharPoly::from_coeffs(&r, vec![Polynomial::zero(&r), Polynomial::one(&r)]).unwrap();
        assert!(discriminant(&one).is_err());
    }

    #[test]
    fn discriminant_is_product_of_squared_differences() {
        for n in 2..=4 {
            let names: Vec<String> = (1..=n).map(|i| format!("a[{i}]")).collect();
            let r = Ring::new(VariableTable::new(names).unwrap(), Domain::Rational);
            let vars: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&r, i)).collect();
            let m = PolyMatrix::diagonal_matrix(&r, vars.clone());
            let mut expected = Polynomial::one(&r);
            for i in 0..n {
                for j in i + 1..n {
                    expected = &expected * &(&vars[i] - &vars[j]).pow(2);
                }
            }
            assert_eq!(discriminant(&char_poly(&m)).unwrap(), expected, "n={n}");
        }
    }

    #[test]
    fn cayley_hamilton_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [7u64, 101] {
            let r = ring(&["a"], q);
            for n in 1..=4 {
                for _ in 0..5 {
                    let m = random_matrix(&r, n, q as i64, &mut rng);
                    assert!(char_poly(&m).evaluate_at(&m).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn pcal_examples() {
        let names: Vec<String> = (1..=4).map(|i| format!("a[{i}]")).collect();
        let r = Ring::new(VariableTable::new(names).unwrap(), Domain::Rational);
        let vars: Vec<Polynomial> = (0..4).map(|i| Polynomial::var(&r, i)).collect();
        let mut expected = Polynomial::one(&r);
        for i in 0..4 {
            for j in i + 1..4 {
                expected = &expected * &(&vars[j] - &vars[i]);
            }
        }
        assert_eq!(pcal(&PolyMatrix::diagonal_matrix(&r, vars)), expected);

        let e3 = witness_matrix(&r, 3).unwrap();
        assert!(pcal(&e3).is_zero());

        let g = generic_ring(3, 0);
        let x = PolyMatrix::generic(&g, 3, "x").unwrap();
        let p = pcal(&x);
        assert_eq!(p.total_degree(), Some(3));
        // every term has weight zero under deg x_ij = i - j
        let w: Vec<i64> = (0..9).map(|k| (k / 3) as i64 - (k % 3) as i64).collect();
        assert_eq!(p.weighted_degree(&w), Ok(0));
    }

    #[test]
    fn pcal_shift_invariance_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for q in [7i64, 101] {
            let r = ring(&["a"], q as u64);
            for n in [3usize, 4] {
                for _ in 0..50 {
                    let m = random_matrix(&r, n, q, &mut rng);
                    let a = Polynomial::constant(&r, rng.gen_range(0..q));
                    assert_eq!(pcal(&m), pcal(&m.shift(&a)));
                }
            }
        }
    }

    #[test]
    fn witness_selection() {
        let r5 = ring(&["a"], 5);
        let e3 = witness_matrix(&r5, 3).unwrap();
        let lit = PolyMatrix::parse(&r5, "0;1;0\n0;0;1\n1;0;0").unwrap();
        assert_eq!(e3, lit);
        let r3 = ring(&["a"], 3);
        let t3 = witness_matrix(&r3, 3).unwrap();
        let lit = PolyMatrix::parse(&r3, "0;0;0\n0;0;1\n0;1;0").unwrap();
        assert_eq!(t3, lit);
        assert!(witness_matrix(&r3, 2).is_err());
        // bottom rows of E_4^k are e_1, ..., e_4
        let r = ring(&["a"], 0);
        let e4 = cyclic_matrix(&r, 4);
        let mut seen = Vec::new();
        for k in 0..4 {
            let row = e4.pow(k).bottom_row();
            let pos: Vec<usize> = (0..4).filter(|&j| row[j].is_one()).collect();
            assert_eq!(pos.len(), 1);
            assert!(row.iter().filter(|e| !e.is_zero()).count() == 1);
            seen.push(pos[0]);
        }
        seen.sort();
        assert_eq!(seen, vec![0, 1, 2, 3]);
    }

    #[test]
    fn case2_reports_pass() {
        for n in [3, 4] {
            let rep = case2_verify(n).unwrap();
            for c in &rep.checks {
                assert!(c.passed(), "{}: expected {} got {}", c.name, c.expected, c.actual);
            }
        }
        assert!(case2_verify(2).is_err());
    }

    #[test]
    fn matrix_literal_round_trip() {
        let r = generic_ring(2, 0);
        let x = PolyMatrix::generic(&r, 2, "x").unwrap();
        let sq = x.pow(2);
        assert_eq!(PolyMatrix::parse(&r, &sq.to_string()).unwrap(), sq);
        assert!(PolyMatrix::parse(&r, "1;2\n3").is_err());
    }

    #[test]
    fn constant_inverse() {
        let r = ring(&["a"], 0);
        let u = PolyMatrix::from_i64_rows(&r, &[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = u.inverse_constant().unwrap();
        assert_eq!(u.try_mul(&inv).unwrap(), PolyMatrix::identity(&r, 2));
        let s = PolyMatrix::from_i64_rows(&r, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(s.inverse_constant().is_err());
    }
}
