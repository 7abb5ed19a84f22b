//! Extended exchange matrices, matrix and seed mutation, and the
//! permutation action.
//!
//! An extended exchange matrix is an `m×n` integer matrix (`m ≥ n`) whose
//! top `n×n` principal part is skew-symmetrizable. Mutation in direction
//! `k` negates row and column `k` and updates the rest by
//! `b_ij + (b_ik|b_kj| + |b_ik|b_kj)/2`; a permutation `σ` of the row set
//! that preserves the frozen indices acts by `b'_ij = b_{σ⁻¹(i)σ⁻¹(j)}`.
//!
//! Directions and permutation entries are 1-based throughout, matching the
//! usual mutation notation; [`ExchangeMatrix::standard`] is the 5×4 seed
//! matrix whose mutation classes generate the quintuple dynamics.

use std::fmt;

use num_rational::Ratio;
use num_traits::Signed;
use serde_json::Value;
use thiserror::Error;

use crate::scalar::{s, IntScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExchangeError {
    #[error("direction {k} out of range 1..={n}")]
    DirectionOutOfRange { k: usize, n: usize },
    #[error("matrix must have at least as many rows as columns (got {m}x{n})")]
    BadShape { m: usize, n: usize },
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("permutation must be a bijection on 1..={size}")]
    NotAPermutation { size: usize },
    #[error("permutation moves frozen index {index} into the mutable range")]
    MovesFrozenIndex { index: usize },
    #[error("permutation size {got} does not match row count {expected}")]
    PermutationSize { got: usize, expected: usize },
    #[error("cluster has {got} entries, expected {expected}")]
    ClusterLength { got: usize, expected: usize },
    #[error("cluster entries must be strictly positive")]
    NonPositiveCluster,
    #[error("principal part is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("bad matrix JSON: {0}")]
    Json(String),
}

/// A permutation of `{1, …, size}`, stored as the image map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>, // 0-based: image[i] = σ(i+1) − 1
}

impl Permutation {
    pub fn identity(size: usize) -> Permutation {
        Permutation {
            image: (0..size).collect(),
        }
    }

    /// Build from 1-based images: `images[i]` is `σ(i+1)`.
    pub fn from_images(images: &[usize]) -> Result<Permutation, ExchangeError> {
        let size = images.len();
        let mut seen = vec![false; size];
        for &v in images {
            if v < 1 || v > size || seen[v - 1] {
                return Err(ExchangeError::NotAPermutation { size });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            image: images.iter().map(|&v| v - 1).collect(),
        })
    }

    /// The cycle `(c₁ c₂ … c_r)` on `{1, …, size}`, fixing everything else.
    pub fn from_cycle(size: usize, cycle: &[usize]) -> Result<Permutation, ExchangeError> {
        let mut images: Vec<usize> = (1..=size).collect();
        for (i, &v) in cycle.iter().enumerate() {
            if v < 1 || v > size {
                return Err(ExchangeError::NotAPermutation { size });
            }
            images[v - 1] = cycle[(i + 1) % cycle.len()];
        }
        Permutation::from_images(&images)
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    /// 0-based image of a 0-based index.
    fn img(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }
}

/// An `m×n` extended exchange matrix with arbitrary-precision entries.
///
/// Construction is permissive (no skew-symmetrizability requirement) so
/// that [`ExchangeMatrix::principal_symmetrizer`] can act as the test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeMatrix<T> {
    m: usize,
    n: usize,
    entries: Vec<T>, // row-major
}

impl<T: IntScalar> ExchangeMatrix<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<ExchangeMatrix<T>, ExchangeError> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m < n {
            return Err(ExchangeError::BadShape { m, n });
        }
        let mut entries = Vec::with_capacity(m * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(ExchangeError::RaggedRow {
                    row: i + 1,
                    got: row.len(),
                    expected: n,
                });
            }
            entries.extend(row);
        }
        Ok(ExchangeMatrix { m, n, entries })
    }

    /// The 5×4 seed matrix of the quintuple dynamics.
    pub fn standard() -> ExchangeMatrix<T> {
        let rows: [[i64; 4]; 5] = [
            [0, -2, 1, 1],
            [2, 0, -1, -1],
            [-1, 1, 0, 1],
            [-1, 1, -1, 0],
            [0, 0, 1, -1],
        ];
        ExchangeMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| s(v)).collect())
                .collect(),
        )
        .expect("standard matrix is well-formed")
    }

    pub fn row_count(&self) -> usize {
        self.m
    }

    pub fn col_count(&self) -> usize {
        self.n
    }

    /// Entry `b_ij`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &T {
        assert!(i >= 1 && i <= self.m && j >= 1 && j <= self.n);
        &self.entries[(i - 1) * self.n + j - 1]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n).map(<[T]>::to_vec).collect()
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    /// Matrix mutation in direction `k ∈ 1..=n`. Involutive.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix<T>, ExchangeError> {
        if k < 1 || k > self.n {
            return Err(ExchangeError::DirectionOutOfRange { k, n: self.n });
        }
        let k = k - 1;
        let two: T = s(2);
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.m {
            for j in 0..self.n {
                let b = self.at(i, j).clone();
                if i == k || j == k {
                    entries.push(-b);
                } else {
                    let bik = self.at(i, k);
                    let bkj = self.at(k, j);
                    let half = (bik.clone() * bkj.abs() + bik.abs() * bkj.clone()).div_floor(&two);
                    entries.push(b + half);
                }
            }
        }
        Ok(ExchangeMatrix {
            m: self.m,
            n: self.n,
            entries,
        })
    }

    /// The permutation action `b'_ij = b_{σ⁻¹(i)σ⁻¹(j)}`. `σ` must map the
    /// frozen index set `{n+1, …, m}` into itself.
    pub fn apply_permutation(
        &self,
        sigma: &Permutation,
    ) -> Result<ExchangeMatrix<T>, ExchangeError> {
        if sigma.size() != self.m {
            return Err(ExchangeError::PermutationSize {
                got: sigma.size(),
                expected: self.m,
            });
        }
        for i in self.n..self.m {
            if sigma.img(i) < self.n {
                return Err(ExchangeError::MovesFrozenIndex { index: i + 1 });
            }
        }
        let inv = sigma.inverse();
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.m {
            for j in 0..self.n {
                entries.push(self.at(inv.img(i), inv.img(j)).clone());
            }
        }
        Ok(ExchangeMatrix {
            m: self.m,
            n: self.n,
            entries,
        })
    }

    /// A positive diagonal `D` with `D·B₀` skew-symmetric for the `n×n`
    /// principal part `B₀`, or `None` if there is none. Entries are
    /// normalized to coprime positive integers per comparability component.
    pub fn principal_symmetrizer(&self) -> Option<Vec<T>> {
        let n = self.n;
        // Sign pattern: zero diagonal, and b_ij, b_ji both zero or of
        // opposite signs.
        for i in 0..n {
            if !self.at(i, i).is_zero() {
                return None;
            }
            for j in (i + 1)..n {
                let bij = self.at(i, j);
                let bji = self.at(j, i);
                if bij.is_zero() != bji.is_zero() {
                    return None;
                }
                if !bij.is_zero() && !(bij.clone() * bji.clone()).is_negative() {
                    return None;
                }
            }
        }
        // Ratio propagation over the comparability graph: d_i·b_ij = −d_j·b_ji.
        let mut d: Vec<Option<Ratio<T>>> = vec![None; n];
        let mut component = vec![usize::MAX; n];
        let mut comp_count = 0;
        for root in 0..n {
            if d[root].is_some() {
                continue;
            }
            d[root] = Some(Ratio::from_integer(T::one()));
            component[root] = comp_count;
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if self.at(i, j).is_zero() || d[j].is_some() {
                        continue;
                    }
                    // d_j = −d_i·b_ij / b_ji, positive by the sign pattern.
                    let ratio = Ratio::new(-self.at(i, j).clone(), self.at(j, i).clone());
                    d[j] = Some(d[i].clone().unwrap() * ratio);
                    component[j] = comp_count;
                    stack.push(j);
                }
            }
            comp_count += 1;
        }
        let d: Vec<Ratio<T>> = d.into_iter().map(Option::unwrap).collect();
        // Consistency on every pair, including cross edges.
        for i in 0..n {
            for j in 0..n {
                let lhs = d[i].clone() * Ratio::from_integer(self.at(i, j).clone());
                let rhs = d[j].clone() * Ratio::from_integer(self.at(j, i).clone());
                if lhs != -rhs {
                    return None;
                }
            }
        }
        // Scale each component to coprime positive integers.
        let mut out: Vec<T> = vec![T::one(); n];
        for comp in 0..comp_count {
            let members: Vec<usize> = (0..n).filter(|&i| component[i] == comp).collect();
            let lcm = members
                .iter()
                .fold(T::one(), |acc, &i| acc.lcm(d[i].denom()));
            let scaled: Vec<T> = members
                .iter()
                .map(|&i| (d[i].clone() * Ratio::from_integer(lcm.clone())).to_integer())
                .collect();
            let gcd = scaled.iter().fold(T::zero(), |acc, v| acc.gcd(v));
            for (&i, v) in members.iter().zip(scaled) {
                out[i] = v / gcd.clone();
            }
        }
        debug_assert!(out.iter().all(|v| v.is_positive()));
        Some(out)
    }

    /// Matrices serialize as JSON arrays of arrays of decimal integer
    /// strings, row-major.
    pub fn to_json(&self) -> String
    where
        T: fmt::Display,
    {
        let rows: Vec<Value> = self
            .rows()
            .into_iter()
            .map(|row| {
                Value::Array(
                    row.into_iter()
                        .map(|v| Value::String(format_int(&v)))
                        .collect(),
                )
            })
            .collect();
        Value::Array(rows).to_string()
    }

    pub fn from_json(text: &str) -> Result<ExchangeMatrix<T>, ExchangeError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| ExchangeError::Json(e.to_string()))?;
        let Value::Array(rows) = value else {
            return Err(ExchangeError::Json("expected a top-level array".into()));
        };
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let Value::Array(cells) = row else {
                return Err(ExchangeError::Json("expected an array of arrays".into()));
            };
            let mut r = Vec::with_capacity(cells.len());
            for cell in cells {
                let Value::String(text) = cell else {
                    return Err(ExchangeError::Json(
                        "entries must be decimal strings".into(),
                    ));
                };
                let v = T::from_str_radix(&text, 10)
                    .map_err(|_| ExchangeError::Json(format!("bad integer {text:?}")))?;
                r.push(v);
            }
            out.push(r);
        }
        ExchangeMatrix::new(out)
    }
}

fn format_int<T: fmt::Display>(v: &T) -> String {
    v.to_string()
}

impl<T: IntScalar + fmt::Display> fmt::Display for ExchangeMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A seed: an extended cluster of positive rationals plus an exchange
/// matrix whose principal part is skew-symmetrizable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed<T: IntScalar> {
    pub cluster: Vec<Ratio<T>>,
    pub matrix: ExchangeMatrix<T>,
}

impl<T: IntScalar> Seed<T> {
    pub fn new(
        cluster: Vec<Ratio<T>>,
        matrix: ExchangeMatrix<T>,
    ) -> Result<Seed<T>, ExchangeError> {
        if cluster.len() != matrix.row_count() {
            return Err(ExchangeError::ClusterLength {
                got: cluster.len(),
                expected: matrix.row_count(),
            });
        }
        if !cluster.iter().all(Signed::is_positive) {
            return Err(ExchangeError::NonPositiveCluster);
        }
        if matrix.principal_symmetrizer().is_none() {
            return Err(ExchangeError::NotSkewSymmetrizable);
        }
        Ok(Seed { cluster, matrix })
    }

    /// Seed mutation: the exchange relation replaces entry `k` and the
    /// matrix mutates in direction `k`. Involutive.
    pub fn mutate(&self, k: usize) -> Result<Seed<T>, ExchangeError> {
        let n = self.matrix.col_count();
        if k < 1 || k > n {
            return Err(ExchangeError::DirectionOutOfRange { k, n });
        }
        let mut pos = Ratio::from_integer(T::one());
        let mut neg = Ratio::from_integer(T::one());
        for i in 1..=self.matrix.row_count() {
            let bik = self.matrix.entry(i, k);
            if bik.is_zero() {
                continue;
            }
            let exp = bik.abs().to_usize().expect("desk-scale exponent");
            let factor = ratio_pow(&self.cluster[i - 1], exp);
            if bik.is_positive() {
                pos = pos * factor;
            } else {
                neg = neg * factor;
            }
        }
        let mut cluster = self.cluster.clone();
        cluster[k - 1] = (pos + neg) / self.cluster[k - 1].clone();
        Ok(Seed {
            cluster,
            matrix: self.matrix.mutate(k)?,
        })
    }

    /// Relabel the cluster and matrix by `σ`: `x'_i = x_{σ⁻¹(i)}`.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<Seed<T>, ExchangeError> {
        let matrix = self.matrix.apply_permutation(sigma)?;
        let inv = sigma.inverse();
        let cluster = (0..self.cluster.len())
            .map(|i| self.cluster[inv.img(i)].clone())
            .collect();
        Ok(Seed { cluster, matrix })
    }
}

fn ratio_pow<T: IntScalar>(base: &Ratio<T>, exp: usize) -> Ratio<T> {
    let mut acc = Ratio::from_integer(T::one());
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

/// Pass/fail for the four invariance identities of the standard matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceReport {
    pub sigma12_mu1: bool,
    pub sigma12_mu2: bool,
    pub sigma1234_mu3: bool,
    pub sigma4321_mu4: bool,
}

impl InvarianceReport {
    pub fn all_pass(&self) -> bool {
        self.sigma12_mu1 && self.sigma12_mu2 && self.sigma1234_mu3 && self.sigma4321_mu4
    }

    pub fn checks(&self) -> [(&'static str, bool); 4] {
        [
            ("B == sigma(12) mu_1(B)", self.sigma12_mu1),
            ("B == sigma(12) mu_2(B)", self.sigma12_mu2),
            ("B == sigma(1234) mu_3(B)", self.sigma1234_mu3),
            ("B == sigma(4321) mu_4(B)", self.sigma4321_mu4),
        ]
    }
}

/// Check `B = σ₍₁₂₎μ₁(B) = σ₍₁₂₎μ₂(B) = σ₍₁₂₃₄₎μ₃(B) = σ₍₄₃₂₁₎μ₄(B)` for a
/// 5×4 matrix.
pub fn check_b_invariance<T: IntScalar>(
    b: &ExchangeMatrix<T>,
) -> Result<InvarianceReport, ExchangeError> {
    let m = b.row_count();
    let s12 = Permutation::from_cycle(m, &[1, 2])?;
    let s1234 = Permutation::from_cycle(m, &[1, 2, 3, 4])?;
    let s4321 = Permutation::from_cycle(m, &[4, 3, 2, 1])?;
    let check = |k: usize, sigma: &Permutation| -> Result<bool, ExchangeError> {
        Ok(b.mutate(k)?.apply_permutation(sigma)? == *b)
    };
    Ok(InvarianceReport {
        sigma12_mu1: check(1, &s12)?,
        sigma12_mu2: check(2, &s12)?,
        sigma1234_mu3: check(3, &s1234)?,
        sigma4321_mu4: check(4, &s4321)?,
    })
}

/// The four identities on the standard matrix.
pub fn verify_b_invariance<T: IntScalar>() -> InvarianceReport {
    check_b_invariance(&ExchangeMatrix::<T>::standard()).expect("standard matrix shape is valid")
}
