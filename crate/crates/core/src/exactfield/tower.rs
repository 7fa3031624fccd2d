use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::{Rational, Scalar};
use crate::error::{Error, Result};

/// Square factors up to this bound are stripped from radicands when they are
/// normalised. Larger square factors are still detected by the subset test in
/// [`ScalarTower::sqrt`], they just do not get pulled out of the stored radicand.
const TRIAL_DIVISION_BOUND: u64 = 1 << 16;

#[derive(Debug)]
struct TowerInner {
    /// Positive integers, each a non-square in the tower below it.
    radicands: Vec<BigInt>,
    /// `subset_products[mask]` is the product of the radicands selected by `mask`.
    subset_products: Vec<Rational>,
}

/// The field Q(i)(sqrt r_1, ..., sqrt r_k).
///
/// Cloning is cheap. Two towers are equal when they adjoin the same radicands in
/// the same order, which makes scalar equality a coordinate comparison.
#[derive(Clone)]
pub struct ScalarTower {
    inner: Arc<TowerInner>,
}

impl ScalarTower {
    /// The Gaussian rationals Q(i).
    pub fn gaussian() -> Self {
        Self::from_integer_radicands(Vec::new())
    }

    /// Builds Q(i) and adjoins each radicand in turn, collapsing redundant ones.
    pub fn with_radicands(radicands: &[Rational]) -> Result<Self> {
        radicands
            .iter()
            .try_fold(Self::gaussian(), |tower, r| tower.adjoin_sqrt(r))
    }

    fn from_integer_radicands(radicands: Vec<BigInt>) -> Self {
        let k = radicands.len();
        let mut subset_products = Vec::with_capacity(1 << k);
        for mask in 0..(1usize << k) {
            let mut prod = BigInt::one();
            for (j, r) in radicands.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    prod *= r;
                }
            }
            subset_products.push(Rational::from_integer(prod));
        }
        Self {
            inner: Arc::new(TowerInner {
                radicands,
                subset_products,
            }),
        }
    }

    /// Number of adjoined square roots.
    pub fn depth(&self) -> usize {
        self.inner.radicands.len()
    }

    /// Degree over Q, i.e. the number of coordinates of a scalar.
    pub fn degree(&self) -> usize {
        2 << self.depth()
    }

    pub fn radicands(&self) -> Vec<Rational> {
        self.inner
            .radicands
            .iter()
            .map(|r| Rational::from_integer(r.clone()))
            .collect()
    }

    pub(crate) fn integer_radicands(&self) -> &[BigInt] {
        &self.inner.radicands
    }

    pub(crate) fn subset_product(&self, mask: usize) -> &Rational {
        &self.inner.subset_products[mask]
    }

    /// Returns the positive square root of `r` if it lies in this tower.
    ///
    /// A positive rational is a square in a multiquadratic extension exactly when
    /// it becomes a rational square after multiplying by some product of the
    /// adjoined radicands.
    pub fn sqrt(&self, r: &Rational) -> Option<Scalar> {
        if !r.is_positive() {
            return if r.is_zero() {
                Some(Scalar::zero(self))
            } else {
                None
            };
        }
        for mask in 0..(1usize << self.depth()) {
            let prod = self.subset_product(mask);
            if let Some(t) = rational_sqrt(&(r * prod)) {
                // sqrt(r) = t / prod(sqrt r_j) = t * prod(sqrt r_j) / prod(r_j)
                let mut s = Scalar::zero(self);
                s.coords[mask << 1] = t / prod;
                return Some(s);
            }
        }
        None
    }

    /// Extends the tower by sqrt(r), or returns it unchanged when r is already a
    /// square here.
    pub fn adjoin_sqrt(&self, r: &Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonPositiveRadicand(r.to_string()));
        }
        if self.sqrt(r).is_some() {
            return Ok(self.clone());
        }
        let mut radicands = self.inner.radicands.clone();
        radicands.push(squarefree_part(r));
        Ok(Self::from_integer_radicands(radicands))
    }

    /// Smallest tower (built from `self`) that contains every root of `other`.
    pub fn join(&self, other: &ScalarTower) -> Self {
        other.radicands().iter().fold(self.clone(), |t, r| {
            t.adjoin_sqrt(r).expect("radicands are positive")
        })
    }

    pub fn embeds_into(&self, other: &ScalarTower) -> bool {
        self == other || self.radicands().iter().all(|r| other.sqrt(r).is_some())
    }

    /// Canonical embedding of this tower into `target`.
    pub fn embedding_into(&self, target: &ScalarTower) -> Result<TowerEmbedding> {
        if self == target {
            return Ok(TowerEmbedding {
                source: self.clone(),
                target: target.clone(),
                images: None,
            });
        }
        let roots: Vec<Scalar> = self
            .radicands()
            .iter()
            .map(|r| {
                target
                    .sqrt(r)
                    .ok_or_else(|| Error::TowerMismatch(self.to_string(), target.to_string()))
            })
            .collect::<Result<_>>()?;
        let i = Scalar::i(target);
        let mut images = Vec::with_capacity(self.degree());
        for idx in 0..self.degree() {
            let mut img = if idx & 1 == 1 {
                i.clone()
            } else {
                Scalar::one(target)
            };
            for (j, root) in roots.iter().enumerate() {
                if idx >> (j + 1) & 1 == 1 {
                    img = &img * root;
                }
            }
            images.push(img);
        }
        Ok(TowerEmbedding {
            source: self.clone(),
            target: target.clone(),
            images: Some(images),
        })
    }
}

impl PartialEq for ScalarTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.radicands == other.inner.radicands
    }
}

impl Eq for ScalarTower {}

impl fmt::Display for ScalarTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(i)")?;
        for r in &self.inner.radicands {
            write!(f, "(sqrt({r}))")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ScalarTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Linear map sending each basis monomial of the source tower to its image.
#[derive(Clone, Debug)]
pub struct TowerEmbedding {
    source: ScalarTower,
    target: ScalarTower,
    images: Option<Vec<Scalar>>,
}

impl TowerEmbedding {
    pub fn target(&self) -> &ScalarTower {
        &self.target
    }

    pub fn apply(&self, a: &Scalar) -> Scalar {
        debug_assert!(a.tower() == &self.source);
        match &self.images {
            None => a.clone(),
            Some(images) => {
                let mut out = Scalar::zero(&self.target);
                for (c, img) in a.coords().iter().zip(images) {
                    if !c.is_zero() {
                        out = &out + &img.scale(c);
                    }
                }
                out
            }
        }
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = integer_sqrt_exact(r.numer())?;
    let d = integer_sqrt_exact(r.denom())?;
    Some(Rational::new(n, d))
}

fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Integer in the same square class as `r`, with small square factors removed.
fn squarefree_part(r: &Rational) -> BigInt {
    let mut n = r.numer() * r.denom();
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_BOUND {
        let sq = BigInt::from(p * p);
        if sq > n {
            break;
        }
        while (&n % &sq).is_zero() {
            n /= &sq;
        }
        p += 1;
    }
    if let Some(s) = integer_sqrt_exact(&n) {
        n /= &s * &s;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    #[test]
    fn adjoin_square_is_noop() {
        let q = ScalarTower::gaussian();
        assert_eq!(q.adjoin_sqrt(&rat(4, 1)).unwrap(), q);
        assert_eq!(q.adjoin_sqrt(&rat(9, 4)).unwrap(), q);
    }

    #[test]
    fn adjoin_nonsquare_doubles_degree() {
        let t = ScalarTower::gaussian().adjoin_sqrt(&rat(2, 1)).unwrap();
        assert_eq!(t.degree(), 4);
        assert_eq!(t.depth(), 1);
    }

    #[test]
    fn adjoin_redundant_radicand_collapses() {
        let t = ScalarTower::gaussian().adjoin_sqrt(&rat(2, 1)).unwrap();
        assert_eq!(t.adjoin_sqrt(&rat(8, 1)).unwrap(), t);
        assert_eq!(t.adjoin_sqrt(&rat(1, 2)).unwrap(), t);
        let t6 = t.adjoin_sqrt(&rat(3, 1)).unwrap();
        assert_eq!(t6.adjoin_sqrt(&rat(6, 1)).unwrap(), t6);
    }

    #[test]
    fn radicands_are_normalised() {
        let t = ScalarTower::gaussian().adjoin_sqrt(&rat(1, 3)).unwrap();
        assert_eq!(t.radicands(), vec![rat(3, 1)]);
        let t = ScalarTower::gaussian().adjoin_sqrt(&rat(12, 1)).unwrap();
        assert_eq!(t.radicands(), vec![rat(3, 1)]);
    }

    #[test]
    fn non_positive_radicand_rejected() {
        let q = ScalarTower::gaussian();
        assert!(matches!(
            q.adjoin_sqrt(&rat(-2, 1)),
            Err(Error::NonPositiveRadicand(_))
        ));
        assert!(q.adjoin_sqrt(&rat(0, 1)).is_err());
    }

    #[test]
    fn sqrt_of_one_third_in_q_sqrt3() {
        let t = ScalarTower::gaussian().adjoin_sqrt(&rat(3, 1)).unwrap();
        let s = t.sqrt(&rat(1, 3)).unwrap();
        assert_eq!(&s * &s, Scalar::from_rational(&t, rat(1, 3)));
        assert!(s.is_positive_real().unwrap());
    }

    #[test]
    fn embedding_respects_products() {
        let t2 = ScalarTower::gaussian().adjoin_sqrt(&rat(2, 1)).unwrap();
        let t23 = ScalarTower::gaussian()
            .adjoin_sqrt(&rat(3, 1))
            .unwrap()
            .adjoin_sqrt(&rat(2, 1))
            .unwrap();
        assert!(t2.embeds_into(&t23));
        assert!(!t23.embeds_into(&t2));
        let e = t2.embedding_into(&t23).unwrap();
        let r2 = t2.sqrt(&rat(2, 1)).unwrap();
        let a = &Scalar::i(&t2) + &r2;
        assert_eq!(e.apply(&(&a * &a)), &e.apply(&a) * &e.apply(&a));
    }
}
