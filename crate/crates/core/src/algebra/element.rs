use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactfield::{Scalar, ScalarTower};
use crate::linalg::Mat;

/// A multi-matrix *-algebra `M_{n_1}(F) + ... + M_{n_B}(F)` over a scalar tower.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    block_sizes: Vec<usize>,
    tower: ScalarTower,
}

impl AlgebraDescriptor {
    pub fn new(block_sizes: Vec<usize>, tower: ScalarTower) -> Result<Self> {
        if block_sizes.is_empty() {
            return Err(Error::InvalidStructure(
                "an algebra needs at least one block".into(),
            ));
        }
        if block_sizes.contains(&0) {
            return Err(Error::InvalidStructure("block sizes must be positive".into()));
        }
        Ok(Self { block_sizes, tower })
    }

    /// Named algebras over Q(i): `gauss`, `m2`, `m3`, `gauss_plus_m2`, `m2_plus_m3`.
    pub fn builtin(name: &str) -> Result<Self> {
        let blocks = match name {
            "gauss" => vec![1],
            "m2" => vec![2],
            "m3" => vec![3],
            "gauss_plus_m2" => vec![1, 2],
            "m2_plus_m3" => vec![2, 3],
            _ => return Err(Error::UnknownBuiltin(name.into())),
        };
        Self::new(blocks, ScalarTower::gaussian())
    }

    pub const BUILTIN_NAMES: [&'static str; 5] = ["gauss", "m2", "m3", "gauss_plus_m2", "m2_plus_m3"];

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn num_blocks(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn tower(&self) -> &ScalarTower {
        &self.tower
    }

    /// Dimension over the scalar field: the sum of `n_b^2`.
    pub fn field_dim(&self) -> usize {
        self.block_sizes.iter().map(|n| n * n).sum()
    }

    /// Same block structure over a larger tower.
    pub fn over_tower(&self, tower: &ScalarTower) -> Self {
        Self {
            block_sizes: self.block_sizes.clone(),
            tower: tower.clone(),
        }
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(format!("{self} vs {other}")))
        }
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .block_sizes
            .iter()
            .map(|n| {
                if *n == 1 {
                    "F".to_string()
                } else {
                    format!("M{n}(F)")
                }
            })
            .collect();
        write!(f, "{} over F = {}", parts.join(" + "), self.tower)
    }
}

impl fmt::Debug for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of a multi-matrix algebra, stored block by block.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgElement {
    algebra: AlgebraDescriptor,
    blocks: Vec<Mat>,
}

impl AlgElement {
    pub fn new(algebra: &AlgebraDescriptor, blocks: Vec<Mat>) -> Result<Self> {
        if blocks.len() != algebra.num_blocks() {
            return Err(Error::ShapeMismatch(format!(
                "{} blocks for an algebra with {}",
                blocks.len(),
                algebra.num_blocks()
            )));
        }
        let blocks = blocks
            .into_iter()
            .zip(&algebra.block_sizes)
            .map(|(m, &n)| {
                if m.rows() != n || m.cols() != n {
                    return Err(Error::ShapeMismatch(format!(
                        "block of shape {}x{} where {n}x{n} is expected",
                        m.rows(),
                        m.cols()
                    )));
                }
                m.embed(&algebra.tower)
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            algebra: algebra.clone(),
            blocks,
        })
    }

    pub fn from_fn(algebra: &AlgebraDescriptor, mut f: impl FnMut(usize, usize) -> Mat) -> Self {
        let blocks = algebra
            .block_sizes
            .iter()
            .enumerate()
            .map(|(b, &n)| f(b, n))
            .collect();
        Self::new(algebra, blocks).expect("block constructor produced the wrong shape")
    }

    pub fn zero(algebra: &AlgebraDescriptor) -> Self {
        Self::from_fn(algebra, |_, n| Mat::zeros(&algebra.tower, n, n))
    }

    pub fn one(algebra: &AlgebraDescriptor) -> Self {
        Self::from_fn(algebra, |_, n| Mat::identity(&algebra.tower, n))
    }

    /// Scalar multiple of the identity.
    pub fn scalar(algebra: &AlgebraDescriptor, s: &Scalar) -> Self {
        Self::one(algebra).scale(s)
    }

    /// The matrix unit `e_ij` inside block `b`.
    pub fn matrix_unit(algebra: &AlgebraDescriptor, b: usize, i: usize, j: usize) -> Self {
        let mut x = Self::zero(algebra);
        x.blocks[b].set(i, j, Scalar::one(&algebra.tower));
        x
    }

    /// All matrix units; they form a field basis in coordinate order.
    pub fn matrix_units(algebra: &AlgebraDescriptor) -> Vec<Self> {
        let mut out = Vec::with_capacity(algebra.field_dim());
        for (b, &n) in algebra.block_sizes.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    out.push(Self::matrix_unit(algebra, b, i, j));
                }
            }
        }
        out
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &Mat {
        &self.blocks[b]
    }

    pub fn tower(&self) -> &ScalarTower {
        &self.algebra.tower
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.blocks.iter().all(Mat::is_identity)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Mat, &Mat) -> Mat) -> Result<Self> {
        self.algebra.check_same(&other.algebra)?;
        Ok(Self {
            algebra: self.algebra.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    /// Blockwise conjugate transpose.
    pub fn star(&self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(Mat::adjoint).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|m| m.scale(s)).collect(),
        }
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self * other == other * self
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.star() == *self
    }

    /// `x^2 = x = x*`.
    pub fn is_projection(&self) -> bool {
        self.is_self_adjoint() && self * self == *self
    }

    /// Coordinates over the matrix-unit basis, block-major and row-major.
    pub fn to_coords(&self) -> Vec<Scalar> {
        self.blocks
            .iter()
            .flat_map(|m| m.entries().iter().cloned())
            .collect()
    }

    pub fn from_coords(algebra: &AlgebraDescriptor, coords: &[Scalar]) -> Result<Self> {
        if coords.len() != algebra.field_dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} coordinates for an algebra of dimension {}",
                coords.len(),
                algebra.field_dim()
            )));
        }
        let mut offset = 0;
        Ok(Self::from_fn(algebra, |_, n| {
            let m = Mat::from_fn(&algebra.tower, n, n, |i, j| coords[offset + i * n + j].clone());
            offset += n * n;
            m
        }))
    }

    pub fn embed(&self, tower: &ScalarTower) -> Result<Self> {
        let algebra = self.algebra.over_tower(tower);
        let blocks = self
            .blocks
            .iter()
            .map(|m| m.embed(tower))
            .collect::<Result<_>>()?;
        Ok(Self { algebra, blocks })
    }

    /// Ranks of the blocks.
    pub fn block_ranks(&self) -> Vec<usize> {
        self.blocks.iter().map(Mat::rank).collect()
    }
}

impl<'a> Add<&'a AlgElement> for &'a AlgElement {
    type Output = AlgElement;
    fn add(self, rhs: &'a AlgElement) -> AlgElement {
        self.checked_add(rhs).expect("algebra mismatch")
    }
}

impl<'a> Sub<&'a AlgElement> for &'a AlgElement {
    type Output = AlgElement;
    fn sub(self, rhs: &'a AlgElement) -> AlgElement {
        self.checked_sub(rhs).expect("algebra mismatch")
    }
}

impl<'a> Mul<&'a AlgElement> for &'a AlgElement {
    type Output = AlgElement;
    fn mul(self, rhs: &'a AlgElement) -> AlgElement {
        self.checked_mul(rhs).expect("algebra mismatch")
    }
}

impl Neg for &AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        self.scale(&-Scalar::one(self.tower()))
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "AlgElement in {}", self.algebra)?;
        for (b, m) in self.blocks.iter().enumerate() {
            write!(f, "block {b}: {m:?}")?;
        }
        Ok(())
    }
}

/// Matrix of an F-linear map `A^k -> F^m` (given on field coordinates) with
/// respect to the matrix-unit basis of `A^k`.
pub fn linearize(
    algebra: &AlgebraDescriptor,
    copies: usize,
    out_dim: usize,
    f: impl Fn(&[AlgElement]) -> Vec<Scalar>,
) -> Mat {
    let tower = algebra.tower();
    let units = AlgElement::matrix_units(algebra);
    let zero = AlgElement::zero(algebra);
    let mut columns = Vec::with_capacity(copies * units.len());
    for c in 0..copies {
        for u in &units {
            let mut args = vec![zero.clone(); copies];
            args[c] = u.clone();
            let image = f(&args);
            assert_eq!(image.len(), out_dim, "linear map produced the wrong length");
            columns.push(image);
        }
    }
    Mat::from_fn(tower, out_dim, columns.len(), |i, j| columns[j][i].clone())
}
