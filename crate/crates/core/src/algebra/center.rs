use std::cmp::Ordering;
use std::fmt;

use super::{AlgElement, AlgebraDescriptor};
use crate::error::{Error, Result};
use crate::exactfield::{Rational, Scalar, ScalarTower};
use crate::linalg::Mat;

/// A function on the finite set of blocks, i.e. an element of the center
/// written in the basis of minimal central projections. Dimension values live
/// here.
#[derive(Clone, PartialEq, Eq)]
pub struct CenterValue {
    coords: Vec<Scalar>,
}

impl CenterValue {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Self { coords }
    }

    pub fn zeros(tower: &ScalarTower, blocks: usize) -> Self {
        Self::new(vec![Scalar::zero(tower); blocks])
    }

    pub fn constant(tower: &ScalarTower, blocks: usize, value: &Rational) -> Self {
        Self::new(vec![Scalar::from_rational(tower, value.clone()); blocks])
    }

    pub fn from_rationals(tower: &ScalarTower, values: impl IntoIterator<Item = Rational>) -> Self {
        Self::new(
            values
                .into_iter()
                .map(|r| Scalar::from_rational(tower, r))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Coordinates as rationals, when they all are.
    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.coords.iter().map(|s| s.as_rational().cloned()).collect()
    }

    fn zip(&self, other: &Self, f: impl Fn(&Scalar, &Scalar) -> Result<Scalar>) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::ShapeMismatch(format!(
                "center values of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f(a, b))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, Scalar::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, Scalar::checked_sub)
    }

    /// Pointwise product; the center is commutative.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, Scalar::checked_mul)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coords.iter().map(|s| s.scale(r)).collect())
    }

    /// Pointwise `<=` on real coordinates.
    pub fn le(&self, other: &Self) -> Result<bool> {
        let diffs = other.sub(self)?;
        for d in diffs.coords() {
            if d.real_sign()? == Ordering::Less {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when every coordinate is real and non-negative.
    pub fn is_nonnegative(&self) -> Result<bool> {
        for s in &self.coords {
            if s.real_sign()? == Ordering::Less {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Pointwise maximum of real values.
    pub fn max(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| {
            Ok(if a.cmp_real(b)? == Ordering::Less {
                b.clone()
            } else {
                a.clone()
            })
        })
    }

    /// String form of each coordinate.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for CenterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl fmt::Debug for CenterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Block `b` of the result is `c_b` times the identity of size `n_b`.
pub fn center_embed(algebra: &AlgebraDescriptor, c: &CenterValue) -> Result<AlgElement> {
    if c.len() != algebra.num_blocks() {
        return Err(Error::ShapeMismatch(format!(
            "center value of length {} for {} blocks",
            c.len(),
            algebra.num_blocks()
        )));
    }
    let tower = algebra.tower();
    let blocks = algebra
        .block_sizes()
        .iter()
        .zip(c.coords())
        .map(|(&n, s)| Ok(Mat::identity(tower, n).scale(&s.embed(tower)?)))
        .collect::<Result<_>>()?;
    AlgElement::new(algebra, blocks)
}

/// Reads the center coordinates of a central element; `None` if it is not central.
pub fn center_coords(x: &AlgElement) -> Option<CenterValue> {
    let mut coords = Vec::new();
    for m in x.blocks() {
        let s = m.get(0, 0).clone();
        if m != &Mat::identity(m.tower(), m.rows()).scale(&s) {
            return None;
        }
        coords.push(s);
    }
    Some(CenterValue::new(coords))
}

/// All `2^B` central projections, indexed by the bitmask of their support.
pub fn central_projections(algebra: &AlgebraDescriptor) -> Vec<AlgElement> {
    let b = algebra.num_blocks();
    (0..1usize << b)
        .map(|mask| {
            let c = support_value(algebra.tower(), b, mask);
            center_embed(algebra, &c).expect("length matches")
        })
        .collect()
}

/// The 0/1 center value supported on the blocks selected by `mask`.
pub fn support_value(tower: &ScalarTower, blocks: usize, mask: usize) -> CenterValue {
    CenterValue::new(
        (0..blocks)
            .map(|b| {
                if mask >> b & 1 == 1 {
                    Scalar::one(tower)
                } else {
                    Scalar::zero(tower)
                }
            })
            .collect(),
    )
}
