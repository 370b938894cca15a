//! The commutator ideal of two generic matrices and the objects built from it:
//! off-diagonal generators `u_ij`, the coefficient matrix of the generators as
//! linear forms in `Y`, witness monomials, and the `θ` linear forms.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::multipoly::{Coeff, Domain, Monomial, Polynomial, Ring, RingRef, VariableTable};
use crate::polymat::PolyMatrix;

pub fn x_name(i: usize, j: usize) -> String {
    format!("x[{i}][{j}]")
}

pub fn y_name(i: usize, j: usize) -> String {
    format!("y[{i}][{j}]")
}

/// Shifted corner variables used for 2x2 matrices.
pub const X11_SHIFTED: &str = "x'[1][1]";
pub const Y11_SHIFTED: &str = "y'[1][1]";

/// Ring on `x[i][j]` (row-major) then `y[i][j]`, followed by `extra`.
pub fn commutator_ring(n: usize, domain: Domain, extra: &[&str]) -> Result<RingRef> {
    let mut names = Vec::with_capacity(2 * n * n + extra.len());
    for i in 1..=n {
        for j in 1..=n {
            names.push(x_name(i, j));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            names.push(y_name(i, j));
        }
    }
    names.extend(extra.iter().map(|s| s.to_string()));
    Ok(Ring::new(VariableTable::new(names)?, domain))
}

/// Generic matrices `X`, `Y` and their commutator.
#[derive(Debug, Clone)]
pub struct CommutatorSystem {
    n: usize,
    ring: RingRef,
    x: PolyMatrix,
    y: PolyMatrix,
    commutator: PolyMatrix,
}

pub fn build_system(n: usize, domain: Domain) -> Result<CommutatorSystem> {
    if n < 2 {
        return Err(Error::InvalidArgument("commutator systems need n >= 2".into()));
    }
    CommutatorSystem::in_ring(&commutator_ring(n, domain, &[])?, n)
}

impl CommutatorSystem {
    /// Build inside a ring that already contains the `x`/`y` variables.
    pub fn in_ring(ring: &RingRef, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("commutator systems need n >= 2".into()));
        }
        let x = PolyMatrix::generic(ring, n, "x")?;
        let y = PolyMatrix::generic(ring, n, "y")?;
        let commutator = x.commutator(&y)?;
        Ok(CommutatorSystem {
            n,
            ring: ring.clone(),
            x,
            y,
            commutator,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn x(&self) -> &PolyMatrix {
        &self.x
    }

    pub fn y(&self) -> &PolyMatrix {
        &self.y
    }

    pub fn commutator(&self) -> &PolyMatrix {
        &self.commutator
    }

    /// `u_ij`, 1-based.
    pub fn u(&self, i: usize, j: usize) -> &Polynomial {
        self.commutator.get(i - 1, j - 1)
    }

    /// Off-diagonal index pairs in lexicographic order.
    pub fn off_diagonal_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (1..=n)
            .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect()
    }

    /// The `n^2 - n` generators of the ideal, in [`Self::off_diagonal_pairs`] order.
    pub fn generators(&self) -> Vec<Polynomial> {
        self.off_diagonal_pairs()
            .into_iter()
            .map(|(i, j)| self.u(i, j).clone())
            .collect()
    }

    pub fn x_index(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.n + (j - 1)
    }

    pub fn y_index(&self, i: usize, j: usize) -> usize {
        self.n * self.n + (i - 1) * self.n + (j - 1)
    }

    pub fn xvar(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::var(&self.ring, self.x_index(i, j))
    }

    pub fn yvar(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::var(&self.ring, self.y_index(i, j))
    }

    /// Weights `deg x_ab = deg y_ab = a - b`; extra variables weigh zero.
    pub fn grading(&self) -> Vec<i64> {
        let mut w = vec![0i64; self.ring.nvars()];
        for a in 1..=self.n {
            for b in 1..=self.n {
                w[self.x_index(a, b)] = a as i64 - b as i64;
                w[self.y_index(a, b)] = a as i64 - b as i64;
            }
        }
        w
    }

    /// `deg x = (1,0)`, `deg y = (0,1)` bidegree of a polynomial, if homogeneous.
    pub fn bidegree(&self, f: &Polynomial) -> Option<(u32, u32)> {
        let nn = self.n * self.n;
        let mut out: Option<(u32, u32)> = None;
        for (m, _) in f.terms() {
            let dx: u32 = m.exps()[..nn].iter().map(|&e| e as u32).sum();
            let dy: u32 = m.exps()[nn..2 * nn].iter().map(|&e| e as u32).sum();
            match out {
                None => out = Some((dx, dy)),
                Some(d) if d != (dx, dy) => return None,
                _ => {}
            }
        }
        out
    }
}

/// Jacobian of the off-diagonal generators with respect to `Y`.
///
/// Rows follow [`CommutatorSystem::off_diagonal_pairs`]; columns are `y_hk`
/// in row-major order, so column `(h-1)n + k` holds `∂u/∂y_hk`.
#[derive(Debug, Clone)]
pub struct CoefficientMatrix {
    ring: RingRef,
    rows: Vec<(usize, usize)>,
    cols: Vec<(usize, usize)>,
    entries: Vec<Vec<Polynomial>>,
}

pub fn coefficient_matrix(sys: &CommutatorSystem) -> CoefficientMatrix {
    let n = sys.n();
    let rows = sys.off_diagonal_pairs();
    let cols: Vec<(usize, usize)> = (1..=n).flat_map(|h| (1..=n).map(move |k| (h, k))).collect();
    let entries = rows
        .iter()
        .map(|&(i, j)| {
            cols.iter()
                .map(|&(h, k)| sys.u(i, j).derivative(sys.y_index(h, k)))
                .collect()
        })
        .collect();
    CoefficientMatrix {
        ring: sys.ring().clone(),
        rows,
        cols,
        entries,
    }
}

impl CoefficientMatrix {
    pub fn rows(&self) -> &[(usize, usize)] {
        &self.rows
    }

    pub fn cols(&self) -> &[(usize, usize)] {
        &self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r][c]
    }

    /// Entry at row `(i, j)` and column `y_hk`, 1-based.
    pub fn at(&self, row: (usize, usize), col: (usize, usize)) -> Option<&Polynomial> {
        let r = self.rows.iter().position(|&p| p == row)?;
        let c = self.cols.iter().position(|&p| p == col)?;
        Some(&self.entries[r][c])
    }

    /// Square block made of the first `n^2 - n` columns.
    pub fn b0(&self) -> PolyMatrix {
        let k = self.rows.len();
        PolyMatrix::from_fn(&self.ring, k, |r, c| self.entries[r][c].clone())
    }

    /// Matrix-vector product with the given column vector.
    pub fn apply(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.cols.len() {
            return Err(Error::SizeMismatch("vector length".into()));
        }
        Ok(self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Polynomial::zero(&self.ring), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// `B · (y_11, ..., y_nn)^T`, which must reproduce the generators.
    pub fn apply_to_y(&self, sys: &CommutatorSystem) -> Vec<Polynomial> {
        let ys: Vec<Polynomial> = self.cols.iter().map(|&(h, k)| sys.yvar(h, k)).collect();
        self.apply(&ys).expect("column count matches")
    }
}

/// Exponents of the F-purity witness monomial `μ^{p-1}` by variable name.
///
/// For `n = 2` the witness uses the shifted variables
/// ([`X11_SHIFTED`], [`Y11_SHIFTED`]); for `n >= 3` it is the product of all
/// variables except `x_ii`, `y_{i,n-i+1}` (`i < n`), `x_{n,n-1}` and `y_{n-1,1}`.
pub fn mu_exponents(n: usize, p: u64) -> Result<Vec<(String, u16)>> {
    if n < 2 {
        return Err(Error::InvalidArgument("witness needs n >= 2".into()));
    }
    if p < 2 {
        return Err(Error::NotPrime(p));
    }
    let e = (p - 1) as u16;
    if n == 2 {
        return Ok(vec![
            (X11_SHIFTED.to_string(), e),
            (Y11_SHIFTED.to_string(), e),
            (x_name(1, 2), e),
            (y_name(2, 1), e),
        ]);
    }
    let mut removed_x = vec![(n, n - 1)];
    let mut removed_y = vec![(n - 1, 1)];
    for i in 1..n {
        removed_x.push((i, i));
        removed_y.push((i, n - i + 1));
    }
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if !removed_x.contains(&(i, j)) {
                out.push((x_name(i, j), e));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if !removed_y.contains(&(i, j)) {
                out.push((y_name(i, j), e));
            }
        }
    }
    Ok(out)
}

pub fn mu_monomial(n: usize, p: u64, table: &VariableTable) -> Result<Monomial> {
    Monomial::from_named(table, &mu_exponents(n, p)?)
}

/// The 2x2 system rewritten in `x'11 = x11 - x22`, `y'11 = y11 - y22`.
#[derive(Debug, Clone)]
pub struct ShiftedPair {
    pub system: CommutatorSystem,
    pub u12: Polynomial,
    pub u21: Polynomial,
    pub u11: Polynomial,
}

pub fn shifted_n2(domain: Domain) -> Result<ShiftedPair> {
    let ring = commutator_ring(2, domain, &[X11_SHIFTED, Y11_SHIFTED])?;
    let system = CommutatorSystem::in_ring(&ring, 2)?;
    let mut shift = HashMap::new();
    shift.insert(
        system.x_index(1, 1),
        &Polynomial::var_named(&ring, X11_SHIFTED)? + &system.xvar(2, 2),
    );
    shift.insert(
        system.y_index(1, 1),
        &Polynomial::var_named(&ring, Y11_SHIFTED)? + &system.yvar(2, 2),
    );
    Ok(ShiftedPair {
        u12: system.u(1, 2).substitute(&shift)?,
        u21: system.u(2, 1).substitute(&shift)?,
        u11: system.u(1, 1).substitute(&shift)?,
        system,
    })
}

/// Generators of the two components for 2x2 matrices: the commuting variety
/// (2-minors of the shifted 2x3 matrix) and the skew component.
pub fn n2_components(sys: &CommutatorSystem) -> Result<(Vec<Polynomial>, Vec<Polynomial>)> {
    if sys.n() != 2 {
        return Err(Error::InvalidArgument("components are only built for n = 2".into()));
    }
    let a = &sys.xvar(1, 1) - &sys.xvar(2, 2);
    let b = &sys.yvar(1, 1) - &sys.yvar(2, 2);
    let top = [a.clone(), sys.xvar(1, 2), sys.xvar(2, 1)];
    let bottom = [b.clone(), sys.yvar(1, 2), sys.yvar(2, 1)];
    let mut minors = Vec::new();
    for c1 in 0..3 {
        for c2 in c1 + 1..3 {
            minors.push(&(&top[c1] * &bottom[c2]) - &(&top[c2] * &bottom[c1]));
        }
    }
    Ok((minors, vec![a, b]))
}

/// Index map `θ(s, t)`: `(s + t) mod n`, with a zero residue read as `n`.
///
/// The case `s + t = n` is `n` by definition; `s = t = n` also lands on the
/// zero residue and is read as `n` the same way.
pub fn theta(s: usize, t: usize, n: usize) -> Result<usize> {
    if n == 0 || s == 0 || t == 0 || s > n || t > n {
        return Err(Error::InvalidArgument(format!("θ({s},{t}) out of range for n={n}")));
    }
    let r = (s + t) % n;
    Ok(if r == 0 { n } else { r })
}

/// The `n^2 + 3` linear forms `x_st - y_{t,θ(s,t)}`, `x_1n`, `x_nn`, `x_11 - y_2n`.
pub fn sop_forms(sys: &CommutatorSystem) -> Result<Vec<Polynomial>> {
    let n = sys.n();
    let mut forms = Vec::with_capacity(n * n + 3);
    for s in 1..=n {
        for t in 1..=n {
            forms.push(&sys.xvar(s, t) - &sys.yvar(t, theta(s, t, n)?));
        }
    }
    forms.push(sys.xvar(1, n));
    forms.push(sys.xvar(n, n));
    forms.push(&sys.xvar(1, 1) - &sys.yvar(2, n));
    Ok(forms)
}

/// The 3x3 identification as displayed entrywise: the first `n^2 + 2` forms of
/// [`sop_forms`], with `x_23 - x_22` in place of `x_11 - y_23`.
pub fn sop_forms_display_n3(sys: &CommutatorSystem) -> Result<Vec<Polynomial>> {
    if sys.n() != 3 {
        return Err(Error::InvalidArgument(
            "the displayed identification is for n = 3".into(),
        ));
    }
    let mut forms = sop_forms(sys)?;
    forms.pop();
    forms.push(&sys.xvar(2, 3) - &sys.xvar(2, 2));
    Ok(forms)
}

/// Solve homogeneous linear forms for pivot variables.
///
/// Pivots are chosen greedily along `preference`; the result maps each pivot
/// variable to an expression in the free variables, so applying it as a
/// substitution sends every form to zero.
pub fn solve_linear_forms(forms: &[Polynomial], preference: &[usize]) -> Result<HashMap<usize, Polynomial>> {
    let Some(first) = forms.first() else {
        return Ok(HashMap::new());
    };
    let ring = first.ring().clone();
    let nv = ring.nvars();
    let dom = ring.domain();
    let mut rows: Vec<Vec<Coeff>> = Vec::new();
    for f in forms {
        let mut row = vec![dom.zero(); nv];
        for (m, c) in f.terms() {
            match m.support().as_slice() {
                [v] if m.degree() == 1 => row[*v] = c.clone(),
                _ => return Err(Error::InvalidArgument(format!("{f} is not a linear form"))),
            }
        }
        rows.push(row);
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for &col in preference {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].inverse().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in 0..nv {
                    let s = &f * &rows[r][c];
                    rows[i][c] = &rows[i][c] - &s;
                }
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    if rows[r..].iter().any(|row| row.iter().any(|c| !c.is_zero())) {
        return Err(Error::InvalidArgument("preference does not cover the forms".into()));
    }
    let mut out = HashMap::new();
    for (row, col) in pivots {
        let expr = Polynomial::from_terms(
            &ring,
            (0..nv)
                .filter(|&c| c != col && !rows[row][c].is_zero())
                .map(|c| (Monomial::var(nv, c, 1), -&rows[row][c])),
        );
        out.insert(col, expr);
    }
    Ok(out)
}

/// Substitution eliminating the `θ` forms: all `y` first, then `x` in order.
pub fn sop_substitution(sys: &CommutatorSystem) -> Result<HashMap<usize, Polynomial>> {
    let n = sys.n();
    let mut pref: Vec<usize> = (0..n * n).map(|k| n * n + k).collect();
    pref.extend(0..n * n);
    solve_linear_forms(&sop_forms(sys)?, &pref)
}
