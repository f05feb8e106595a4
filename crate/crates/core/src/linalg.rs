//! Exact linear algebra over the complexified scalar field.
//!
//! [`LinearSystem`] keeps its equations in reduced row echelon form as they
//! arrive, so large sparse systems (Haar invariance, cotensor kernels) never
//! materialize a dense matrix. Pivots prefer coefficients of small
//! [`CScalar::complexity`]; monomials `c q^k` are the cheapest.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::scalars::CScalar;

pub type Matrix = Vec<Vec<CScalar>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { CScalar::one() } else { CScalar::zero() }).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m).map(|j| row.iter().zip(b).fold(CScalar::zero(), |acc, (x, brow)| &acc + &(x * &brow[j]))).collect()
        })
        .collect()
}

/// Entrywise conjugate of the transpose.
pub fn adjoint(a: &Matrix) -> Matrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j].conj()).collect()).collect()
}

/// Gauss-Jordan inverse of a square matrix.
pub fn mat_inv(a: &Matrix) -> Result<Matrix> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("matrix is not square".into()));
    }
    let mut m: Matrix = a.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].complexity())
            .ok_or(Error::SingularMatrix)?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].inv()?;
        for j in 0..n {
            m[col][j] = &m[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                m[r][j] = &m[r][j] - &(&f * &m[col][j]);
                inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
            }
        }
    }
    Ok(inv)
}

/// Reduced row echelon form of the span of `rows`, pivots taken at the
/// first nonzero column and normalized to 1. Zero rows are dropped.
pub fn rref(rows: &[Vec<CScalar>]) -> Matrix {
    let mut m: Matrix = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).filter(|&r| !m[r][col].is_zero()).min_by_key(|&r| m[r][col].complexity()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..cols {
                    let d = &f * &m[rank][j];
                    m[r][j] = &m[r][j] - &d;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

#[derive(Clone, Debug, Default)]
struct Row {
    coeffs: BTreeMap<usize, CScalar>,
    rhs: CScalar,
}

/// Incrementally reduced system of linear equations `sum a_i x_i = b`.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    nvars: usize,
    rows: BTreeMap<usize, Row>,
    /// For each non-pivot variable, the pivot rows mentioning it.
    occurs: Vec<BTreeSet<usize>>,
    inconsistent: bool,
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem { nvars, rows: BTreeMap::new(), occurs: vec![BTreeSet::new(); nvars], inconsistent: false }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn add_equation<I>(&mut self, coeffs: I, rhs: CScalar)
    where
        I: IntoIterator<Item = (usize, CScalar)>,
    {
        let mut row = Row { coeffs: BTreeMap::new(), rhs };
        for (v, c) in coeffs {
            assert!(v < self.nvars, "variable {v} out of range");
            add_into(&mut row.coeffs, v, &c);
        }
        // Substitute existing pivots; pivot rows mention no other pivot.
        let pivots: Vec<usize> = row.coeffs.keys().copied().filter(|v| self.rows.contains_key(v)).collect();
        for v in pivots {
            let Some(c) = row.coeffs.remove(&v) else { continue };
            let prow = &self.rows[&v];
            for (w, a) in &prow.coeffs {
                add_into(&mut row.coeffs, *w, &-&(&c * a));
            }
            row.rhs = &row.rhs - &(&c * &prow.rhs);
        }
        if row.coeffs.is_empty() {
            if !row.rhs.is_zero() {
                self.inconsistent = true;
            }
            return;
        }
        let (&pv, pc) = row.coeffs.iter().min_by_key(|(v, c)| (c.complexity(), **v)).expect("nonempty row");
        let inv = pc.inv().expect("nonzero pivot");
        row.coeffs.remove(&pv);
        for c in row.coeffs.values_mut() {
            *c = &*c * &inv;
        }
        row.rhs = &row.rhs * &inv;
        // Eliminate the new pivot from older rows.
        let users: Vec<usize> = std::mem::take(&mut self.occurs[pv]).into_iter().collect();
        for r in users {
            let old = self.rows.get_mut(&r).expect("indexed row");
            let f = old.coeffs.remove(&pv).expect("indexed entry");
            for (w, a) in &row.coeffs {
                let before = old.coeffs.contains_key(w);
                add_into(&mut old.coeffs, *w, &-&(&f * a));
                let after = old.coeffs.contains_key(w);
                if before && !after {
                    self.occurs[*w].remove(&r);
                } else if !before && after {
                    self.occurs[*w].insert(r);
                }
            }
            old.rhs = &old.rhs - &(&f * &row.rhs);
        }
        for w in row.coeffs.keys() {
            self.occurs[*w].insert(pv);
        }
        self.rows.insert(pv, row);
    }

    /// Variables that are not pivots.
    pub fn free_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|v| !self.rows.contains_key(v)).collect()
    }

    pub fn unique_solution(&self) -> Result<Vec<CScalar>> {
        if self.inconsistent {
            return Err(Error::InconsistentSystem);
        }
        let free = self.free_vars();
        if !free.is_empty() {
            return Err(Error::NonUniqueSolution(free.len()));
        }
        Ok((0..self.nvars).map(|v| self.rows[&v].rhs.clone()).collect())
    }

    /// Basis of the solution space of the homogeneous system, one vector
    /// per free variable.
    pub fn kernel_basis(&self) -> Vec<Vec<CScalar>> {
        self.free_vars()
            .into_iter()
            .map(|f| {
                let mut v = vec![CScalar::zero(); self.nvars];
                v[f] = CScalar::one();
                for &r in &self.occurs[f] {
                    v[r] = -self.rows[&r].coeffs[&f].clone();
                }
                v
            })
            .collect()
    }
}

fn add_into(map: &mut BTreeMap<usize, CScalar>, k: usize, c: &CScalar) {
    if c.is_zero() {
        return;
    }
    let s = match map.get(&k) {
        Some(x) => x + c,
        None => c.clone(),
    };
    if s.is_zero() {
        map.remove(&k);
    } else {
        map.insert(k, s);
    }
}

/// Rank by fraction-free (Bareiss) elimination. Dense and slow; kept as an
/// independent check on [`LinearSystem`].
pub fn bareiss_rank(a: &Matrix) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = CScalar::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for j in col + 1..cols {
                let num = &(&m[rank][col] * &m[r][j]) - &(&m[r][col] * &m[rank][j]);
                m[r][j] = num.div(&prev).expect("Bareiss divisor is a previous pivot");
            }
            m[r][col] = CScalar::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Solves a square nonsingular system by Bareiss elimination on the
/// augmented matrix followed by back substitution.
pub fn bareiss_solve(a: &Matrix, b: &[CScalar]) -> Result<Vec<CScalar>> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut prev = CScalar::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero()).ok_or(Error::SingularMatrix)?;
        m.swap(k, p);
        for r in k + 1..n {
            for j in k + 1..=n {
                let num = &(&m[k][k] * &m[r][j]) - &(&m[r][k] * &m[k][j]);
                m[r][j] = num.div(&prev)?;
            }
            m[r][k] = CScalar::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![CScalar::zero(); n];
    for k in (0..n).rev() {
        let mut s = m[k][n].clone();
        for j in k + 1..n {
            s = &s - &(&m[k][j] * &x[j]);
        }
        x[k] = s.div(&m[k][k])?;
    }
    Ok(x)
}
