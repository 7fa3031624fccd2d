//! The monoid of projection classes, `K_0(A)` and the correspondence between
//! summands of `A^n` and summands of their envelopes over `Q = A`.

use serde::Serialize;

use crate::algebra::{AlgElement, AlgebraDescriptor, CenterValue, MatrixRing};
use crate::dimension::dim_fgp;
use crate::error::{Error, Result};
use crate::exactfield::{Rational, Scalar};
use crate::linalg::Mat;
use crate::modules::SubmoduleBasis;
use crate::projections::Projection;

/// Class of `p(A^n)`, keyed by the block ranks `r_b` (so its dimension vector
/// is `r_b / n_b`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjClass {
    algebra: AlgebraDescriptor,
    ranks: Vec<usize>,
}

impl ProjClass {
    pub fn new(algebra: &AlgebraDescriptor, ranks: Vec<usize>) -> Result<Self> {
        if ranks.len() != algebra.num_blocks() {
            return Err(Error::ShapeMismatch(format!(
                "{} ranks for {} blocks",
                ranks.len(),
                algebra.num_blocks()
            )));
        }
        Ok(Self {
            algebra: algebra.clone(),
            ranks,
        })
    }

    pub fn of(ring: &MatrixRing, p: &Projection) -> Result<Self> {
        ring.algebra().check_same(p.algebra())?;
        Self::new(ring.base(), p.ranks())
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn dim_vector(&self) -> CenterValue {
        CenterValue::from_rationals(
            self.algebra.tower(),
            self.ranks
                .iter()
                .zip(self.algebra.block_sizes())
                .map(|(&r, &n)| Rational::new(r.into(), n.into())),
        )
    }

    /// Smallest `n >= 1` with a representative in `M_n(A)`.
    pub fn min_size(&self) -> usize {
        self.ranks
            .iter()
            .zip(self.algebra.block_sizes())
            .map(|(&r, &n)| r.div_ceil(n))
            .max()
            .unwrap_or(0)
            .max(1)
    }

    /// Diagonal representative in `M_n(A)` for the smallest possible `n`.
    pub fn representative(&self) -> Result<(MatrixRing, Projection)> {
        let ring = MatrixRing::new(&self.algebra, self.min_size())?;
        let tower = self.algebra.tower();
        let p = AlgElement::from_fn(ring.algebra(), |b, m| {
            Mat::from_fn(tower, m, m, |i, j| {
                if i == j && i < self.ranks[b] {
                    Scalar::one(tower)
                } else {
                    Scalar::zero(tower)
                }
            })
        });
        Ok((ring, Projection::new(p)?))
    }

    /// `[p] + [q] = [p ⊕ q]`, computed on block-diagonal representatives.
    pub fn add(&self, other: &ProjClass) -> Result<ProjClass> {
        self.algebra.check_same(&other.algebra)?;
        let (rp, p) = self.representative()?;
        let (rq, q) = other.representative()?;
        let (ring, s) = direct_sum(&rp, &p, &rq, &q)?;
        ProjClass::of(&ring, &s)
    }
}

/// `p ⊕ q` in `M_{m+n}(A)`.
pub fn direct_sum(
    ring_p: &MatrixRing,
    p: &Projection,
    ring_q: &MatrixRing,
    q: &Projection,
) -> Result<(MatrixRing, Projection)> {
    ring_p.base().check_same(ring_q.base())?;
    ring_p.algebra().check_same(p.algebra())?;
    ring_q.algebra().check_same(q.algebra())?;
    let base = ring_p.base();
    let ring = MatrixRing::new(base, ring_p.n() + ring_q.n())?;
    let (ap, aq) = (ring_p.unpack(p.element())?, ring_q.unpack(q.element())?);
    let (m, n) = (ring_p.n(), ring_q.n());
    let arr = crate::algebra::AlgArray::from_fn(base, m + n, m + n, |i, j| {
        if i < m && j < m {
            ap.get(i, j).clone()
        } else if i >= m && j >= m {
            aq.get(i - m, j - m).clone()
        } else {
            AlgElement::zero(base)
        }
    });
    let s = Projection::new(ring.pack(&arr)?)?;
    Ok((ring, s))
}

/// All classes with a representative in `M_n(A)` for some `n <= n_max`, in
/// lexicographic order of their ranks.
pub fn proj_monoid(algebra: &AlgebraDescriptor, n_max: usize) -> Result<Vec<ProjClass>> {
    if n_max == 0 {
        return Err(Error::InvalidStructure("n_max must be at least 1".into()));
    }
    let bounds: Vec<usize> = algebra.block_sizes().iter().map(|n| n * n_max).collect();
    let mut out = Vec::new();
    let mut ranks = vec![0; bounds.len()];
    loop {
        out.push(ProjClass::new(algebra, ranks.clone())?);
        let mut b = bounds.len();
        loop {
            if b == 0 {
                return Ok(out);
            }
            b -= 1;
            if ranks[b] < bounds[b] {
                ranks[b] += 1;
                break;
            }
            ranks[b] = 0;
        }
    }
}

/// Image of `[p]` over `Q = A` together with the recovered summand of `A^n`.
#[derive(Clone, Debug)]
pub struct MuResult {
    pub class_over_q: ProjClass,
    pub round_trip: Projection,
}

/// `[P] -> [P ⊗ Q] = [p(Q^n)]` and back via `L -> L ∩ A^n`; checks that the
/// round trip recovers `p(A^n)` and that the class is unchanged.
pub fn mu_and_inverse(ring: &MatrixRing, p: &Projection) -> Result<MuResult> {
    let q_ring = MatrixRing::new(ring.base(), ring.n())?;
    let envelope = SubmoduleBasis::from_projection(&q_ring, p)?;
    let class_over_q = ProjClass::new(ring.base(), envelope.spans().iter().map(|s| s.dim()).collect())?;
    let back = envelope.intersect(&SubmoduleBasis::full(ring.base(), ring.n()))?;
    if back != SubmoduleBasis::from_projection(ring, p)? {
        return Err(Error::InvariantViolation("L ∩ A^n differs from p(A^n)".into()));
    }
    let round_trip = back.projector(ring)?;
    if class_over_q.dim_vector() != dim_fgp(ring, p)? {
        return Err(Error::InvariantViolation(
            "mu changed the dimension vector".into(),
        ));
    }
    Ok(MuResult {
        class_over_q,
        round_trip,
    })
}

/// A formal difference of classes, in the normal form `r_b(p) - r_b(q)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct K0Element {
    pub numerators: Vec<i64>,
}

impl K0Element {
    pub fn difference(p: &ProjClass, q: &ProjClass) -> Result<Self> {
        p.algebra.check_same(&q.algebra)?;
        Ok(Self {
            numerators: p
                .ranks
                .iter()
                .zip(&q.ranks)
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect(),
        })
    }

    pub fn class(p: &ProjClass) -> Self {
        Self {
            numerators: p.ranks.iter().map(|&r| r as i64).collect(),
        }
    }

    pub fn add(&self, other: &K0Element) -> K0Element {
        Self {
            numerators: self
                .numerators
                .iter()
                .zip(&other.numerators)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> K0Element {
        Self {
            numerators: self.numerators.iter().map(|a| -a).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerators.iter().all(|&a| a == 0)
    }
}

/// `K_0(A) = Z^B` with the class of `1_A` and the block sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K0Group {
    pub rank: usize,
    pub block_sizes: Vec<usize>,
    pub unit_class: Vec<i64>,
}

pub fn k0_group(algebra: &AlgebraDescriptor) -> K0Group {
    K0Group {
        rank: algebra.num_blocks(),
        block_sizes: algebra.block_sizes().to_vec(),
        unit_class: algebra.block_sizes().iter().map(|&n| n as i64).collect(),
    }
}

/// Decides `[p] - [q] = [p'] - [q']` twice: in the normal form of `K_0`, and
/// as `p ⊕ q' ⊕ s ~ p' ⊕ q ⊕ s` on representatives with the stabiliser
/// `s = 1_A`. Errors if the two answers differ.
pub fn stably_equal(p: &ProjClass, q: &ProjClass, p2: &ProjClass, q2: &ProjClass) -> Result<bool> {
    let formal = K0Element::difference(p, q)? == K0Element::difference(p2, q2)?;
    let s = ProjClass::new(&p.algebra, p.algebra.block_sizes().to_vec())?;
    let lhs = p.add(q2)?.add(&s)?;
    let rhs = p2.add(q)?.add(&s)?;
    let stable = lhs.dim_vector() == rhs.dim_vector();
    if formal != stable {
        return Err(Error::InvariantViolation(
            "K_0 normal form disagrees with stable equivalence".into(),
        ));
    }
    Ok(formal)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::exactfield::rat;
    use crate::random;

    fn alg(name: &str) -> AlgebraDescriptor {
        AlgebraDescriptor::builtin(name).unwrap()
    }

    #[test]
    fn monoid_counts() {
        assert_eq!(proj_monoid(&alg("gauss"), 1).unwrap().len(), 2);
        assert_eq!(proj_monoid(&alg("gauss_plus_m2"), 1).unwrap().len(), 6);
        assert_eq!(proj_monoid(&alg("gauss_plus_m2"), 2).unwrap().len(), 3 * 5);
        assert!(proj_monoid(&alg("gauss"), 0).is_err());
    }

    #[test]
    fn monoid_addition() {
        let a = alg("gauss_plus_m2");
        let x = ProjClass::new(&a, vec![1, 1]).unwrap();
        let y = ProjClass::new(&a, vec![0, 1]).unwrap();
        let s = x.add(&y).unwrap();
        assert_eq!(
            s.dim_vector(),
            CenterValue::from_rationals(a.tower(), [rat(1, 1), rat(1, 1)])
        );
        for c in proj_monoid(&a, 2).unwrap() {
            let (ring, p) = c.representative().unwrap();
            assert_eq!(ProjClass::of(&ring, &p).unwrap(), c);
            assert_eq!(dim_fgp(&ring, &p).unwrap(), c.dim_vector());
        }
    }

    #[test]
    fn mu_examples() {
        let a = alg("gauss_plus_m2");
        let ring = MatrixRing::new(&a, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for p in [
            Projection::zero(ring.algebra()),
            Projection::one(ring.algebra()),
            random::projection(&mut rng, ring.algebra()),
        ] {
            let mu = mu_and_inverse(&ring, &p).unwrap();
            assert_eq!(mu.round_trip, p);
            assert_eq!(mu.class_over_q, ProjClass::of(&ring, &p).unwrap());
        }
    }

    #[test]
    fn group_examples() {
        assert_eq!(k0_group(&alg("gauss")).rank, 1);
        let g = k0_group(&alg("gauss_plus_m2"));
        assert_eq!((g.rank, g.unit_class.clone()), (2, vec![1, 2]));
        let a = alg("gauss_plus_m2");
        let c = |r: &[usize]| ProjClass::new(&a, r.to_vec()).unwrap();
        assert!(stably_equal(&c(&[1, 2]), &c(&[0, 1]), &c(&[1, 1]), &c(&[0, 0])).unwrap());
        assert!(!stably_equal(&c(&[1, 2]), &c(&[0, 1]), &c(&[1, 2]), &c(&[0, 0])).unwrap());
    }
}
