//! Dense exact linear algebra over a [`ScalarTower`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactfield::{Scalar, ScalarTower};

/// Row-major dense matrix whose entries share one tower.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    tower: ScalarTower,
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(tower: &ScalarTower, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            tower: tower.clone(),
            entries: vec![Scalar::zero(tower); rows * cols],
        }
    }

    pub fn identity(tower: &ScalarTower, n: usize) -> Self {
        let mut m = Self::zeros(tower, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one(tower);
        }
        m
    }

    pub fn from_fn(
        tower: &ScalarTower,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                assert!(s.tower() == tower, "entry ({i},{j}) is over {}", s.tower());
                entries.push(s);
            }
        }
        Self {
            rows,
            cols,
            tower: tower.clone(),
            entries,
        }
    }

    pub fn from_rows(tower: &ScalarTower, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let mut entries = Vec::with_capacity(r * c);
        for s in rows.into_iter().flatten() {
            entries.push(s.embed(tower)?);
        }
        Ok(Self {
            rows: r,
            cols: c,
            tower: tower.clone(),
            entries,
        })
    }

    /// A single column built from `entries`.
    pub fn column_vector(tower: &ScalarTower, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        Self {
            rows: n,
            cols: 1,
            tower: tower.clone(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn tower(&self) -> &ScalarTower {
        &self.tower
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert!(s.tower() == &self.tower);
        self.entries[i * self.cols + j] = s;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(&self.tower, self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.tower, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            tower: self.tower.clone(),
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn column(&self, j: usize) -> Self {
        Self::from_fn(&self.tower, self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(&self.tower, self.rows, cols.len(), |i, j| {
            self.get(i, cols[j]).clone()
        })
    }

    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.tower, rows, cols, |i, j| {
            self.get(row0 + i, col0 + j).clone()
        })
    }

    /// Writes `block` with its top-left corner at `(row0, col0)`.
    pub fn set_block(&mut self, row0: usize, col0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(row0 + i, col0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn hstack(&self, other: &Mat) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Self::from_fn(
            &self.tower,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    other.get(i, j - self.cols).clone()
                }
            },
        ))
    }

    pub fn vstack(&self, other: &Mat) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        Ok(Self::from_fn(
            &self.tower,
            self.rows + other.rows,
            self.cols,
            |i, j| {
                if i < self.rows {
                    self.get(i, j).clone()
                } else {
                    other.get(i - self.rows, j).clone()
                }
            },
        ))
    }

    /// Horizontal concatenation of many matrices with a common row count.
    pub fn hcat(tower: &ScalarTower, rows: usize, parts: &[Mat]) -> Result<Self> {
        parts
            .iter()
            .try_fold(Mat::zeros(tower, rows, 0), |acc, m| acc.hstack(m))
    }

    pub fn block_diag(&self, other: &Mat) -> Self {
        let mut out = Mat::zeros(&self.tower, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn embed(&self, target: &ScalarTower) -> Result<Self> {
        let e = self.tower.embedding_into(target)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            tower: target.clone(),
            entries: self.entries.iter().map(|s| e.apply(s)).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Mat) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(&self.tower, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            tower: self.tower.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn checked_add(&self, other: &Mat) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Mat) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(&self.tower), |acc, i| &acc + self.get(i, i))
    }

    /// Reduced row echelon form and pivot columns.
    ///
    /// Forward elimination is fraction-free in the Bareiss sense: each update is
    /// `(pivot * a_ij - a_ic * a_rj) / previous_pivot`, so intermediate entries are
    /// minors of the input. Rows are normalised only in the final back-substitution.
    pub fn rref(&self) -> Echelon {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<Vec<Scalar>> = self.entries.chunks(cols.max(1)).map(<[_]>::to_vec).collect();
        if cols == 0 {
            a = vec![Vec::new(); rows];
        }
        let mut pivots = Vec::new();
        let mut prev_inv = Scalar::one(&self.tower);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let piv = a[r][c].clone();
            let (top, bottom) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            for row in bottom.iter_mut() {
                let lead = std::mem::replace(&mut row[c], Scalar::zero(&self.tower));
                for j in c + 1..cols {
                    let mut v = &piv * &row[j];
                    if !lead.is_zero() && !pivot_row[j].is_zero() {
                        v = &v - &(&lead * &pivot_row[j]);
                    }
                    row[j] = &v * &prev_inv;
                }
            }
            prev_inv = piv.inv().expect("pivot is nonzero");
            pivots.push(c);
            r += 1;
        }
        // back substitution
        for (k, &c) in pivots.iter().enumerate().rev() {
            let inv = a[k][c].inv().expect("pivot is nonzero");
            for x in &mut a[k][c..] {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            let (top, bottom) = a.split_at_mut(k);
            let pivot_row = &bottom[0];
            for row in top.iter_mut() {
                let f = row[c].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..cols {
                    if !pivot_row[j].is_zero() {
                        row[j] = &row[j] - &(&f * &pivot_row[j]);
                    }
                }
            }
        }
        Echelon {
            reduced: Mat {
                rows,
                cols,
                tower: self.tower.clone(),
                entries: a.into_iter().flatten().collect(),
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{v : self * v = 0}` as column vectors; empty when injective.
    pub fn kernel_basis(&self) -> Vec<Mat> {
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = Mat::zeros(&self.tower, self.cols, 1);
                v.set(f, 0, Scalar::one(&self.tower));
                for (k, &pc) in ech.pivots.iter().enumerate() {
                    v.set(pc, 0, -ech.reduced.get(k, f));
                }
                v
            })
            .collect()
    }

    /// Kernel basis assembled as the columns of one matrix.
    pub fn kernel_matrix(&self) -> Mat {
        let basis = self.kernel_basis();
        Mat::hcat(&self.tower, self.cols, &basis).expect("kernel vectors share a length")
    }

    /// Linearly independent columns spanning the column space.
    pub fn column_basis(&self) -> Mat {
        self.select_columns(&self.rref().pivots)
    }

    /// Orthogonal projector onto the column space: `C (C* C)^-1 C*` for a column
    /// basis `C`. The Hermitian form is anisotropic over every tower, so `C* C`
    /// is invertible.
    pub fn hermitian_projector(&self) -> Mat {
        let basis = self.column_basis();
        if basis.cols == 0 {
            return Mat::zeros(&self.tower, self.rows, self.rows);
        }
        let adj = basis.adjoint();
        let gram = adj.checked_mul(&basis).expect("shapes agree");
        let x = solve_right(&gram, &adj)
            .expect("shapes agree")
            .expect("Gram matrix of independent columns is invertible");
        basis.checked_mul(&x).expect("shapes agree")
    }

    /// True when every column of `other` lies in the column space of `self`.
    pub fn col_space_contains(&self, other: &Mat) -> bool {
        let joined = self.hstack(other).expect("same row count");
        joined.rank() == self.rank()
    }

    pub fn col_space_eq(&self, other: &Mat) -> bool {
        let r = self.rank();
        r == other.rank() && self.hstack(other).expect("same row count").rank() == r
    }

    /// Basis (as columns) of the intersection of two column spaces.
    pub fn col_space_intersection(&self, other: &Mat) -> Mat {
        let a = self.column_basis();
        if a.cols == 0 || other.cols == 0 {
            return Mat::zeros(&self.tower, self.rows, 0);
        }
        let b = other.column_basis();
        let joined = a
            .hstack(&b.scale(&-Scalar::one(&self.tower)))
            .expect("same row count");
        let parts: Vec<Mat> = joined
            .kernel_basis()
            .into_iter()
            .map(|v| {
                a.checked_mul(&v.submatrix(0, 0, a.cols, 1))
                    .expect("shapes agree")
            })
            .collect();
        Mat::hcat(&self.tower, self.rows, &parts)
            .expect("same row count")
            .column_basis()
    }
}

/// A subspace of `F^n`, stored by its canonical basis: the transposed nonzero
/// rows of the reduced row echelon form of any spanning set. Equal subspaces
/// therefore compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    basis: Mat,
}

impl Subspace {
    /// Span of the columns of `vectors`.
    pub fn span(vectors: &Mat) -> Self {
        let ech = vectors.transpose().rref();
        let r = ech.pivots.len();
        let basis = ech.reduced.submatrix(0, 0, r, vectors.rows()).transpose();
        Self { basis }
    }

    pub fn zero(tower: &ScalarTower, ambient: usize) -> Self {
        Self {
            basis: Mat::zeros(tower, ambient, 0),
        }
    }

    pub fn full(tower: &ScalarTower, ambient: usize) -> Self {
        Self::span(&Mat::identity(tower, ambient))
    }

    pub fn from_vectors(tower: &ScalarTower, ambient: usize, vectors: &[Mat]) -> Self {
        Self::span(&Mat::hcat(tower, ambient, vectors).expect("vectors share a length"))
    }

    /// Independent columns spanning the subspace.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Mat> {
        (0..self.dim()).map(|j| self.basis.column(j)).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn tower(&self) -> &ScalarTower {
        self.basis.tower()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    pub fn contains_vector(&self, v: &Mat) -> bool {
        self.basis.col_space_contains(v)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.basis.col_space_contains(&other.basis)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::span(&self.basis.hstack(&other.basis).expect("same ambient space"))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        Self::span(&self.basis.col_space_intersection(&other.basis))
    }
}

/// Output of [`Mat::rref`].
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

/// Some `X` with `A X = B`, or `None` when the system is inconsistent.
pub fn solve_right(a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    if a.rows != b.rows {
        return Err(Error::ShapeMismatch(format!(
            "solve with {} and {} rows",
            a.rows, b.rows
        )));
    }
    let ech = a.hstack(b)?.rref();
    if ech.pivots.iter().any(|&p| p >= a.cols) {
        return Ok(None);
    }
    let mut x = Mat::zeros(&a.tower, a.cols, b.cols);
    for (k, &pc) in ech.pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, ech.reduced.get(k, a.cols + j).clone());
        }
    }
    Ok(Some(x))
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn mul(self, rhs: &'a Mat) -> Mat {
        self.checked_mul(rhs).expect("matrix shapes")
    }
}

impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn add(self, rhs: &'a Mat) -> Mat {
        self.checked_add(rhs).expect("matrix shapes")
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn sub(self, rhs: &'a Mat) -> Mat {
        self.checked_sub(rhs).expect("matrix shapes")
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(&-Scalar::one(&self.tower))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.tower)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
