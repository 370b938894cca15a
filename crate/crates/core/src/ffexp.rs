//! Numerical experiments over small prime fields: diagonal-commutator
//! witnesses, sampling on the hypersurface `𝒫 = 0`, and exhaustive counts of
//! commuting pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Integer, PrimeField};
use crate::multipoly::{Domain, Polynomial, Ring, VariableTable};
use crate::polymat::PolyMatrix;

/// Dense square matrix over `F_q`, entries reduced into `0..q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FqMatrix {
    q: u32,
    n: usize,
    data: Vec<u32>,
}

impl FqMatrix {
    pub fn new(q: u32, n: usize, data: Vec<u32>) -> Result<Self> {
        PrimeField::new(q as u64)?;
        if data.len() != n * n {
            return Err(Error::SizeMismatch(format!("{} entries for n = {n}", data.len())));
        }
        Ok(FqMatrix {
            q,
            n,
            data: data.into_iter().map(|v| v % q).collect(),
        })
    }

    pub fn from_i64_rows(q: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch("matrix is not square".into()));
        }
        let data = rows.iter().flatten().map(|&v| v.rem_euclid(q as i64) as u32).collect();
        FqMatrix::new(q, n, data)
    }

    pub fn zero(q: u32, n: usize) -> Self {
        FqMatrix {
            q,
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(q: u32, n: usize) -> Self {
        let mut m = FqMatrix::zero(q, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % q;
        }
        m
    }

    pub fn random(q: u32, n: usize, rng: &mut impl Rng) -> Self {
        FqMatrix {
            q,
            n,
            data: (0..n * n).map(|_| rng.gen_range(0..q)).collect(),
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        let (n, q) = (self.n, self.q as u64);
        let mut data = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: u64 = (0..n).map(|k| self.get(i, k) as u64 * other.get(k, j) as u64).sum();
                data[i * n + j] = (s % q) as u32;
            }
        }
        FqMatrix { q: self.q, n, data }
    }

    pub fn commutator(&self, other: &FqMatrix) -> FqMatrix {
        let ab = self.mul(other);
        let ba = other.mul(self);
        let q = self.q;
        FqMatrix {
            q,
            n: self.n,
            data: ab.data.iter().zip(&ba.data).map(|(&x, &y)| (x + q - y) % q).collect(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn to_poly_matrix(&self) -> Result<PolyMatrix> {
        let ring = Ring::new(
            VariableTable::new(Vec::<String>::new())?,
            Domain::from_characteristic(self.q as u64)?,
        );
        Ok(PolyMatrix::from_fn(&ring, self.n, |i, j| {
            Polynomial::constant(&ring, self.get(i, j) as i64)
        }))
    }
}

fn inv_mod(a: u32, q: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % q as u64;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q as u64;
        }
        b = b * b % q as u64;
        e >>= 1;
    }
    r as u32
}

/// Row-reduce in place; returns pivot columns.
fn rref(rows: &mut [Vec<u32>], q: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], q) as u64;
        for v in rows[r].iter_mut() {
            *v = (*v as u64 * inv % q as u64) as u32;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c] as u64;
                for k in 0..ncols {
                    let s = f * rows[r][k] as u64 % q as u64;
                    rows[i][k] = ((rows[i][k] as u64 + q as u64 - s) % q as u64) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of the nullspace of `rows` (each of length `ncols`).
fn nullspace(rows: &[Vec<u32>], ncols: usize, q: u32) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, q);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (q - m[r][f]) % q;
            }
            v
        })
        .collect()
}

/// Determinant by elimination.
pub fn det_fq(m: &FqMatrix) -> u32 {
    let (n, q) = (m.n, m.q as u64);
    let mut a: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j) as u64).collect()).collect();
    let mut det = 1u64;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| a[i][c] != 0) else {
            return 0;
        };
        if pr != c {
            a.swap(pr, c);
            det = (q - det) % q;
        }
        det = det * a[c][c] % q;
        let inv = inv_mod(a[c][c] as u32, m.q) as u64;
        for i in c + 1..n {
            if a[i][c] != 0 {
                let f = a[i][c] * inv % q;
                for k in c..n {
                    a[i][k] = (a[i][k] + q - f * a[c][k] % q) % q;
                }
            }
        }
    }
    det as u32
}

/// `𝒫(A)`: determinant of the matrix whose column `i` is `diag(A^i)`.
pub fn pcal_fq(a: &FqMatrix) -> u32 {
    let n = a.n;
    let mut power = FqMatrix::identity(a.q, n);
    let mut d = FqMatrix::zero(a.q, n);
    for i in 0..n {
        for k in 0..n {
            d.data[k * n + i] = power.get(k, k);
        }
        power = power.mul(a);
    }
    det_fq(&d)
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessResult {
    pub a: FqMatrix,
    pub witness: Option<FqMatrix>,
    pub pcal: u32,
    /// Dimension of `{B : [A,B] is diagonal}`.
    pub nullity: usize,
}

impl WitnessResult {
    pub fn has_witness(&self) -> bool {
        self.witness.is_some()
    }
}

/// Decide whether some `B` makes `[A,B]` a nonzero diagonal matrix.
pub fn diagonal_witness(a: &FqMatrix) -> WitnessResult {
    let (n, q) = (a.n, a.q);
    // row (i,j) of the map B -> [A,B]: Σ_k a_ik b_kj - b_ik a_kj
    let row = |i: usize, j: usize| {
        let mut r = vec![0u32; n * n];
        for k in 0..n {
            r[k * n + j] = (r[k * n + j] + a.get(i, k)) % q;
            r[i * n + k] = (r[i * n + k] + q - a.get(k, j)) % q;
        }
        r
    };
    let off: Vec<Vec<u32>> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| row(i, j))
        .collect();
    let diag: Vec<Vec<u32>> = (0..n).map(|i| row(i, i)).collect();
    let basis = nullspace(&off, n * n, q);
    let witness = basis
        .iter()
        .find(|v| {
            diag.iter()
                .any(|d| d.iter().zip(v.iter()).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % q as u64 != 0)
        })
        .map(|v| FqMatrix { q, n, data: v.clone() });
    WitnessResult {
        a: a.clone(),
        witness,
        pcal: pcal_fq(a),
        nullity: basis.len(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub q: u32,
    pub trials: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn validate(&self) -> Result<()> {
        PrimeField::new(self.q as u64)?;
        if self.n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessTrialSummary {
    pub trials: u64,
    pub witnesses: u64,
    pub pcal_zero: u64,
    /// Matrices with a witness but `𝒫(A) ≠ 0`.
    pub violations: u64,
    /// Matrices whose witness space has nullity below `n`.
    pub low_nullity: u64,
}

/// Random trials of "diagonal witness exists implies `𝒫(A) = 0`".
pub fn witness_trials(config: &ExperimentConfig) -> Result<WitnessTrialSummary> {
    config.validate()?;
    let mut rng = config.rng();
    let mut s = WitnessTrialSummary {
        trials: config.trials,
        witnesses: 0,
        pcal_zero: 0,
        violations: 0,
        low_nullity: 0,
    };
    for _ in 0..config.trials {
        let a = FqMatrix::random(config.q, config.n, &mut rng);
        let w = diagonal_witness(&a);
        if w.pcal == 0 {
            s.pcal_zero += 1;
        }
        if w.has_witness() {
            s.witnesses += 1;
            if w.pcal != 0 {
                s.violations += 1;
            }
        }
        if w.nullity < config.n {
            s.low_nullity += 1;
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct HypersurfaceSample {
    pub accepted: Vec<FqMatrix>,
    pub trials: u64,
    pub acceptance_rate: f64,
    /// Fraction of accepted matrices with a diagonal witness.
    pub witness_fraction: f64,
    pub diagnostic: Option<String>,
}

/// Rejection sampling of matrices with `𝒫(A) = 0`.
pub fn sample_hypersurface(config: &ExperimentConfig) -> Result<HypersurfaceSample> {
    config.validate()?;
    if config.q < 3 {
        return Err(Error::InvalidArgument("sampling needs q >= 3".into()));
    }
    let mut rng = config.rng();
    let mut accepted = Vec::new();
    for _ in 0..config.trials {
        let a = FqMatrix::random(config.q, config.n, &mut rng);
        if pcal_fq(&a) == 0 {
            accepted.push(a);
        }
    }
    let rate = accepted.len() as f64 / config.trials.max(1) as f64;
    if rate < 1.0 / (10.0 * config.q as f64) {
        return Ok(HypersurfaceSample {
            accepted: Vec::new(),
            trials: config.trials,
            acceptance_rate: rate,
            witness_fraction: 0.0,
            diagnostic: Some(format!(
                "acceptance rate {rate:.5} below 1/(10q); the hypersurface should have codimension 1"
            )),
        });
    }
    let with = accepted.iter().filter(|a| diagonal_witness(a).has_witness()).count();
    Ok(HypersurfaceSample {
        witness_fraction: with as f64 / accepted.len().max(1) as f64,
        accepted,
        trials: config.trials,
        acceptance_rate: rate,
        diagnostic: None,
    })
}

/// Upper bound on `q^(2n^2)` for exhaustive enumeration.
pub const PAIR_ENUMERATION_LIMIT: u64 = 100_000_000;

/// Number of pairs `(A, B)` over `F_q` with `AB = BA`, by enumeration.
pub fn count_commuting_pairs(n: usize, q: u32) -> Result<Integer> {
    PrimeField::new(q as u64)?;
    let total = (q as u64)
        .checked_pow((2 * n * n) as u32)
        .filter(|&t| t <= PAIR_ENUMERATION_LIMIT)
        .ok_or_else(|| Error::InvalidArgument(format!("q^(2n^2) too large for n = {n}, q = {q}")))?;
    let per = (q as u64).pow((n * n) as u32);
    let decode = |mut code: u64| {
        let data = (0..n * n)
            .map(|_| {
                let d = (code % q as u64) as u32;
                code /= q as u64;
                d
            })
            .collect();
        FqMatrix { q, n, data }
    };
    let mats: Vec<FqMatrix> = (0..per).map(decode).collect();
    debug_assert_eq!(per * per, total);
    let mut count = 0u64;
    for a in &mats {
        for b in &mats {
            if a.mul(b) == b.mul(a) {
                count += 1;
            }
        }
    }
    Ok(Integer::from(count))
}

/// `floor(log_q(count))` for a positive count.
pub fn floor_log(count: &Integer, q: u32) -> u32 {
    let mut k = 0;
    let mut power = Integer::from(q);
    while &power <= count {
        power *= q;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::pcal;

    #[test]
    fn identity_and_diagonal_have_no_witness() {
        let w = diagonal_witness(&FqMatrix::identity(7, 3));
        assert!(!w.has_witness());
        assert_eq!(w.nullity, 9);
        let d = FqMatrix::from_i64_rows(7, &[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 3]]).unwrap();
        assert!(!diagonal_witness(&d).has_witness());
    }

    #[test]
    fn witness_has_nonzero_diagonal_commutator() {
        // a 2x2 nilpotent admits B with [A,B] = diag(1,-1)
        let a = FqMatrix::from_i64_rows(5, &[vec![0, 1], vec![0, 0]]).unwrap();
        let w = diagonal_witness(&a);
        let b = w.witness.clone().expect("witness");
        let c = a.commutator(&b);
        assert!(c.is_diagonal());
        assert!(c.entries().iter().any(|&v| v != 0));
        assert_eq!(w.pcal, 0);
    }

    #[test]
    fn numeric_pcal_matches_symbolic() {
        let cfg = ExperimentConfig {
            n: 3,
            q: 11,
            trials: 30,
            seed: 4,
        };
        let mut rng = cfg.rng();
        for _ in 0..cfg.trials {
            let a = FqMatrix::random(cfg.q, cfg.n, &mut rng);
            let sym = pcal(&a.to_poly_matrix().unwrap());
            let v = sym.constant_value().and_then(|c| c.as_fp()).map_or(0, |c| c.value());
            assert_eq!(pcal_fq(&a), v);
        }
    }

    #[test]
    fn det_matches_cofactor() {
        let cfg = ExperimentConfig {
            n: 4,
            q: 13,
            trials: 20,
            seed: 9,
        };
        let mut rng = cfg.rng();
        for _ in 0..cfg.trials {
            let a = FqMatrix::random(cfg.q, cfg.n, &mut rng);
            let sym = a.to_poly_matrix().unwrap().determinant();
            let v = sym.constant_value().and_then(|c| c.as_fp()).map_or(0, |c| c.value());
            assert_eq!(det_fq(&a), v);
        }
    }

    #[test]
    fn witness_implies_pcal_zero() {
        let cfg = ExperimentConfig {
            n: 3,
            q: 7,
            trials: 2000,
            seed: 1,
        };
        let s = witness_trials(&cfg).unwrap();
        assert_eq!(s.violations, 0);
        assert_eq!(s.low_nullity, 0);
        assert!(s.witnesses > 0);
        assert_eq!(s, witness_trials(&cfg).unwrap());
    }

    #[test]
    fn every_witness_certifies_in_random_trials() {
        let cfg = ExperimentConfig {
            n: 3,
            q: 5,
            trials: 500,
            seed: 3,
        };
        let mut rng = cfg.rng();
        for _ in 0..cfg.trials {
            let a = FqMatrix::random(cfg.q, cfg.n, &mut rng);
            let w = diagonal_witness(&a);
            if let Some(b) = &w.witness {
                let c = a.commutator(b);
                assert!(c.is_diagonal() && c.entries().iter().any(|&v| v != 0));
            }
        }
    }

    #[test]
    fn hypersurface_sampling() {
        let cfg = ExperimentConfig {
            n: 3,
            q: 7,
            trials: 20_000,
            seed: 2,
        };
        let s = sample_hypersurface(&cfg).unwrap();
        assert!(s.diagnostic.is_none());
        let q = cfg.q as f64;
        assert!(s.acceptance_rate >= 1.0 / (3.0 * q) && s.acceptance_rate <= 3.0 / q);
        assert!(s.accepted.iter().all(|a| pcal_fq(a) == 0));
        assert!(s.witness_fraction > 0.0);
        assert!(sample_hypersurface(&ExperimentConfig { q: 2, ..cfg }).is_err());
    }

    #[test]
    fn commuting_pair_counts() {
        assert_eq!(count_commuting_pairs(1, 2).unwrap(), Integer::from(4));
        // oracle: Σ_A |centralizer(A)| over all A, with centralizer sizes from nullity
        for q in [2u32, 3] {
            let count = count_commuting_pairs(2, q).unwrap();
            let mut oracle = 0u64;
            for code in 0..(q as u64).pow(4) {
                let mut c = code;
                let data: Vec<u32> = (0..4)
                    .map(|_| {
                        let d = (c % q as u64) as u32;
                        c /= q as u64;
                        d
                    })
                    .collect();
                let a = FqMatrix::new(q, 2, data).unwrap();
                let rows: Vec<Vec<u32>> = (0..2)
                    .flat_map(|i| (0..2).map(move |j| (i, j)))
                    .map(|(i, j)| {
                        let mut r = vec![0u32; 4];
                        for k in 0..2 {
                            r[k * 2 + j] = (r[k * 2 + j] + a.get(i, k)) % q;
                            r[i * 2 + k] = (r[i * 2 + k] + q - a.get(k, j)) % q;
                        }
                        r
                    })
                    .collect();
                oracle += (q as u64).pow(nullspace(&rows, 4, q).len() as u32);
            }
            assert_eq!(count, Integer::from(oracle));
            assert_eq!(floor_log(&count, q), 6);
        }
        assert!(count_commuting_pairs(3, 3).is_err());
    }
}
