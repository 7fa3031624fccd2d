use super::{AlgElement, AlgebraDescriptor};
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// A rectangular array of algebra elements: a map `A^cols -> A^rows` acting on
/// columns from the left. Column vectors of `A^n` are `n x 1` arrays.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgArray {
    rows: usize,
    cols: usize,
    algebra: AlgebraDescriptor,
    entries: Vec<AlgElement>,
}

impl AlgArray {
    pub fn from_fn(
        algebra: &AlgebraDescriptor,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> AlgElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert!(x.algebra() == algebra, "array entry from another algebra");
                entries.push(x);
            }
        }
        Self {
            rows,
            cols,
            algebra: algebra.clone(),
            entries,
        }
    }

    pub fn from_rows(algebra: &AlgebraDescriptor, rows: Vec<Vec<AlgElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged array".into()));
        }
        for x in rows.iter().flatten() {
            algebra.check_same(x.algebra())?;
        }
        Ok(Self {
            rows: r,
            cols: c,
            algebra: algebra.clone(),
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(algebra: &AlgebraDescriptor, rows: usize, cols: usize) -> Self {
        Self::from_fn(algebra, rows, cols, |_, _| AlgElement::zero(algebra))
    }

    pub fn identity(algebra: &AlgebraDescriptor, n: usize) -> Self {
        Self::from_fn(algebra, n, n, |i, j| {
            if i == j {
                AlgElement::one(algebra)
            } else {
                AlgElement::zero(algebra)
            }
        })
    }

    pub fn column(algebra: &AlgebraDescriptor, entries: Vec<AlgElement>) -> Self {
        let n = entries.len();
        Self::from_fn(algebra, n, 1, |i, _| entries[i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: AlgElement) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn col(&self, j: usize) -> AlgArray {
        Self::from_fn(&self.algebra, self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn checked_mul(&self, other: &AlgArray) -> Result<AlgArray> {
        self.algebra.check_same(&other.algebra)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} array times {}x{} array",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(&self.algebra, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(AlgElement::zero(&self.algebra), |acc, k| {
                &acc + &(self.get(i, k) * other.get(k, j))
            })
        }))
    }

    /// Right scalar action of the algebra on every entry.
    pub fn mul_right(&self, a: &AlgElement) -> AlgArray {
        Self::from_fn(&self.algebra, self.rows, self.cols, |i, j| self.get(i, j) * a)
    }

    pub fn checked_add(&self, other: &AlgArray) -> Result<AlgArray> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("array sum".into()));
        }
        Ok(Self::from_fn(&self.algebra, self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        }))
    }

    /// `(X*)_{ij} = (X_{ji})*`.
    pub fn star(&self) -> AlgArray {
        Self::from_fn(&self.algebra, self.cols, self.rows, |i, j| self.get(j, i).star())
    }

    pub fn hstack(&self, other: &AlgArray) -> Result<AlgArray> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack of arrays".into()));
        }
        Ok(Self::from_fn(
            &self.algebra,
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

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgElement::is_zero)
    }

    pub fn entries(&self) -> &[AlgElement] {
        &self.entries
    }

    /// Per-block matrices: block `b` is `(rows n_b) x (cols n_b)` with the
    /// `(i, j)` sub-block equal to block `b` of entry `(i, j)`.
    pub fn to_blocks(&self) -> Vec<Mat> {
        let tower = self.algebra.tower();
        self.algebra
            .block_sizes()
            .iter()
            .enumerate()
            .map(|(b, &nb)| {
                let mut m = Mat::zeros(tower, self.rows * nb, self.cols * nb);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        m.set_block(i * nb, j * nb, self.get(i, j).block(b));
                    }
                }
                m
            })
            .collect()
    }

    pub fn from_blocks(
        algebra: &AlgebraDescriptor,
        rows: usize,
        cols: usize,
        blocks: &[Mat],
    ) -> Result<AlgArray> {
        if blocks.len() != algebra.num_blocks() {
            return Err(Error::ShapeMismatch("block count".into()));
        }
        for (m, &nb) in blocks.iter().zip(algebra.block_sizes()) {
            if m.rows() != rows * nb || m.cols() != cols * nb {
                return Err(Error::ShapeMismatch(format!(
                    "block of shape {}x{} for a {rows}x{cols} array with n_b = {nb}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self::from_fn(algebra, rows, cols, |i, j| {
            AlgElement::from_fn(algebra, |b, nb| blocks[b].submatrix(i * nb, j * nb, nb, nb))
        }))
    }
}

/// `M_n(A)`, realised again as a multi-matrix algebra with blocks `n * n_b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixRing {
    base: AlgebraDescriptor,
    n: usize,
    algebra: AlgebraDescriptor,
}

impl MatrixRing {
    pub fn new(base: &AlgebraDescriptor, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidStructure(
                "matrix ring size must be positive".into(),
            ));
        }
        let sizes = base.block_sizes().iter().map(|nb| n * nb).collect();
        Ok(Self {
            base: base.clone(),
            n,
            algebra: AlgebraDescriptor::new(sizes, base.tower().clone())?,
        })
    }

    pub fn base(&self) -> &AlgebraDescriptor {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The descriptor of `M_n(A)` itself.
    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    pub fn pack(&self, x: &AlgArray) -> Result<AlgElement> {
        self.base.check_same(x.algebra())?;
        if x.rows() != self.n || x.cols() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} array packed into M_{}",
                x.rows(),
                x.cols(),
                self.n
            )));
        }
        AlgElement::new(&self.algebra, x.to_blocks())
    }

    pub fn unpack(&self, x: &AlgElement) -> Result<AlgArray> {
        self.algebra.check_same(x.algebra())?;
        AlgArray::from_blocks(&self.base, self.n, self.n, x.blocks())
    }

    /// `diag(a, ..., a)`, the image of a central `a` in the center of `M_n(A)`.
    pub fn diag(&self, a: &AlgElement) -> Result<AlgElement> {
        let mut x = AlgArray::zeros(&self.base, self.n, self.n);
        for i in 0..self.n {
            x.set(i, i, a.clone());
        }
        self.pack(&x)
    }

    /// The standard corner inclusion `a -> diag(a, 0, ..., 0)`.
    pub fn corner(&self, a: &AlgElement) -> Result<AlgElement> {
        let mut x = AlgArray::zeros(&self.base, self.n, self.n);
        x.set(0, 0, a.clone());
        self.pack(&x)
    }
}
