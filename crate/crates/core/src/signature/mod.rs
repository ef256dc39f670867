//! Coefficient matrices of Hermitian polynomials and their exact inertia.

mod numeric;

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::FiniteMatrixGroup;
use crate::invariant::{phi, HermitianPolynomial};
use crate::poly::MultiIndex;

pub use numeric::{inertia_numeric, DEFAULT_NUMERIC_PRECISION, DEFAULT_ZERO_THRESHOLD};

/// Hermitian matrix over a cyclotomic field, sparse, indexed by a monomial basis.
#[derive(Clone, Debug)]
pub struct HermitianMatrix {
    basis: Vec<MultiIndex>,
    entries: BTreeMap<(usize, usize), Cyclotomic>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }

    pub fn dimension(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn pair(&self) -> SignaturePair {
        SignaturePair {
            n_plus: self.n_plus,
            n_minus: self.n_minus,
        }
    }

    fn merge(&mut self, other: &Inertia) {
        self.n_plus += other.n_plus;
        self.n_minus += other.n_minus;
        self.n_zero += other.n_zero;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignaturePair {
    pub n_plus: usize,
    pub n_minus: usize,
}

impl SignaturePair {
    pub fn new(n_plus: usize, n_minus: usize) -> Self {
        SignaturePair { n_plus, n_minus }
    }

    pub fn total(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// N+ / (N+ + N-).
    pub fn ratio(&self) -> Result<BigRational> {
        if self.total() == 0 {
            return Err(Error::EmptySpectrum);
        }
        Ok(BigRational::new(self.n_plus.into(), self.total().into()))
    }
}

impl HermitianMatrix {
    /// Build from dense rows; the basis is a placeholder `z1^i`.
    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = BTreeMap::new();
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, c) in row.into_iter().enumerate() {
                if !c.is_zero() {
                    entries.insert((i, j), c);
                }
            }
        }
        let m = HermitianMatrix {
            basis: (0..n as u32).map(|i| MultiIndex::new(i, 0)).collect(),
            entries,
        };
        m.check_hermitian()?;
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Cyclotomic::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Cyclotomic> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> Cyclotomic {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Cyclotomic::from_i64(0))
    }

    pub fn check_hermitian(&self) -> Result<()> {
        for (&(i, j), c) in &self.entries {
            let other = self.entry(j, i);
            if other != c.conj() {
                return Err(Error::NotHermitian(i, j));
            }
        }
        Ok(())
    }

    /// Same matrix in a permuted basis: new index `k` is old index `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut inv = vec![0; perm.len()];
        for (k, &old) in perm.iter().enumerate() {
            inv[old] = k;
        }
        HermitianMatrix {
            basis: perm.iter().map(|&o| self.basis[o]).collect(),
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), c)| ((inv[i], inv[j]), c.clone()))
                .collect(),
        }
    }

    /// Connected components of the nonzero pattern, each sorted, ordered by
    /// smallest index. Isolated zero rows form singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.dimension();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(i, j) in self.entries.keys() {
            let a = find(&mut parent, i);
            let b = find(&mut parent, j);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    fn dense_block(&self, idx: &[usize]) -> Vec<Vec<Cyclotomic>> {
        idx.iter()
            .map(|&i| idx.iter().map(|&j| self.entry(i, j)).collect())
            .collect()
    }

    /// Dense copies of each component block.
    pub fn blocks(&self) -> Vec<Vec<Vec<Cyclotomic>>> {
        self.components()
            .iter()
            .map(|c| self.dense_block(c))
            .collect()
    }

    /// Real diagonal entries in basis order, when the matrix is diagonal.
    pub fn diagonal(&self) -> Option<Vec<Cyclotomic>> {
        if self.entries.keys().any(|(i, j)| i != j) {
            return None;
        }
        Some((0..self.dimension()).map(|i| self.entry(i, i)).collect())
    }
}

/// The underlying coefficient matrix in the basis `P.support()`.
pub fn coefficient_matrix(p: &HermitianPolynomial) -> HermitianMatrix {
    let basis = p.support();
    let index: BTreeMap<MultiIndex, usize> =
        basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let entries = p
        .terms()
        .iter()
        .map(|((a, b), c)| ((index[a], index[b]), c.clone()))
        .collect();
    HermitianMatrix { basis, entries }
}

/// Order of magnitude used for pivot choice only.
fn magnitude(c: &Cyclotomic) -> f64 {
    c.approx_log2_abs_real().unwrap_or(f64::NEG_INFINITY)
}

/// Inertia of a dense Hermitian block by congruence elimination.
fn inertia_block(mut a: Vec<Vec<Cyclotomic>>) -> Result<Inertia> {
    let mut result = Inertia::default();
    let mut active: Vec<usize> = (0..a.len()).collect();
    loop {
        if active.is_empty() {
            return Ok(result);
        }
        let pivot = active
            .iter()
            .copied()
            .filter(|&i| !a[i][i].is_zero())
            .map(|i| (i, magnitude(&a[i][i])))
            .fold(None, |best: Option<(usize, f64)>, (i, m)| match best {
                Some((_, bm)) if bm >= m => best,
                _ => Some((i, m)),
            });
        if let Some((i, _)) = pivot {
            let d = a[i][i].clone();
            match d.sign()? {
                1 => result.n_plus += 1,
                -1 => result.n_minus += 1,
                _ => unreachable!("pivot is nonzero"),
            }
            active.retain(|&k| k != i);
            let dinv = d.inv()?;
            let col: Vec<(usize, Cyclotomic)> = active
                .iter()
                .filter(|&&k| !a[k][i].is_zero())
                .map(|&k| (k, &a[k][i] * &dinv))
                .collect();
            for (k, f) in &col {
                for &l in &active {
                    if l < *k || a[i][l].is_zero() {
                        continue;
                    }
                    let upd = &a[*k][l] - &(f * &a[i][l]);
                    if l != *k {
                        a[l][*k] = upd.conj();
                    }
                    a[*k][l] = upd;
                }
            }
            continue;
        }
        let off = active.iter().enumerate().find_map(|(pos, &i)| {
            active[pos + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = off else {
            result.n_zero += active.len();
            return Ok(result);
        };
        // 2x2 pivot [[0, x], [conj x, 0]] has determinant -|x|^2 < 0
        result.n_plus += 1;
        result.n_minus += 1;
        active.retain(|&k| k != i && k != j);
        let x = a[i][j].clone();
        let x_inv = x.inv()?;
        let xc_inv = x.conj().inv()?;
        let fi: Vec<Cyclotomic> = active.iter().map(|&k| &a[k][i] * &xc_inv).collect();
        let fj: Vec<Cyclotomic> = active.iter().map(|&k| &a[k][j] * &x_inv).collect();
        for (pk, &k) in active.iter().enumerate() {
            for &l in &active {
                if l < k {
                    continue;
                }
                let t1 = &fi[pk] * &a[j][l];
                let t2 = &fj[pk] * &a[i][l];
                let upd = &(&a[k][l] - &t1) - &t2;
                if l != k {
                    a[l][k] = upd.conj();
                }
                a[k][l] = upd;
            }
        }
    }
}

/// Exact inertia (n+, n-, n0) under Hermitian congruence.
pub fn inertia_exact(m: &HermitianMatrix) -> Result<Inertia> {
    m.check_hermitian()?;
    let mut total = Inertia::default();
    for block in m.blocks() {
        total.merge(&inertia_block(block)?);
    }
    Ok(total)
}

/// Rank by ordinary Gaussian elimination, independent of the congruence code.
pub fn rank_exact(m: &HermitianMatrix) -> Result<usize> {
    let mut rank = 0;
    for mut a in m.blocks() {
        let rows = a.len();
        let cols = rows;
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].inv()?;
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] * &inv;
                for k in c..cols {
                    if !a[r][k].is_zero() {
                        let v = &a[i][k] - &(&f * &a[r][k]);
                        a[i][k] = v;
                    }
                }
            }
            r += 1;
        }
        rank += r;
    }
    Ok(rank)
}

pub fn signature_pair(g: &FiniteMatrixGroup) -> Result<SignaturePair> {
    Ok(inertia_exact(&coefficient_matrix(&phi(g)))?.pair())
}

pub fn positivity_ratio(g: &FiniteMatrixGroup) -> Result<BigRational> {
    signature_pair(g)?.ratio()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Numeric,
}

/// The JSON result record of one signature computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureRecord {
    pub group: String,
    pub order: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "N_plus")]
    pub n_plus: usize,
    #[serde(rename = "N_minus")]
    pub n_minus: usize,
    pub rank: usize,
    pub ratio: String,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

/// Run the full pipeline on a group and package the result.
pub fn signature_record(
    g: &FiniteMatrixGroup,
    method: Method,
    numeric_precision: usize,
    zero_threshold: f64,
) -> Result<SignatureRecord> {
    let start = Instant::now();
    let m = coefficient_matrix(&phi(g));
    let inertia = match method {
        Method::Exact => inertia_exact(&m)?,
        Method::Numeric => inertia_numeric(&m, numeric_precision, zero_threshold),
    };
    let pair = inertia.pair();
    let ratio = match pair.ratio() {
        Ok(r) => format!("{}/{}", r.numer(), r.denom()),
        Err(_) => "undefined".to_string(),
    };
    Ok(SignatureRecord {
        group: g.label().to_string(),
        order: g.order(),
        n: pair.total(),
        n_plus: pair.n_plus,
        n_minus: pair.n_minus,
        rank: inertia.rank(),
        ratio,
        method,
        elapsed_ms: Some(start.elapsed().as_millis()),
    })
}
