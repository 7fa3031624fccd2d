//! Center-valued dimension of projections and of finitely presented modules,
//! and the real-valued dimension attached to a faithful trace.

use std::cmp::Ordering;

use num_traits::{One, Signed};

use crate::algebra::{AlgElement, AlgebraDescriptor, CenterValue, MatrixRing};
use crate::error::{Error, Result};
use crate::exactfield::{Rational, Scalar};
use crate::modules::ModulePresentation;
use crate::projections::Projection;

/// Positive weights summing to one, one per block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceWeights {
    weights: Vec<Rational>,
}

impl TraceWeights {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no weights".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidWeights(format!("weight {w} is not positive")));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        Ok(Self { weights })
    }

    /// Equal weights `1/B`.
    pub fn uniform(blocks: usize) -> Self {
        Self {
            weights: vec![Rational::new(1.into(), blocks.into()); blocks],
        }
    }

    /// Parses `1/3,2/3`.
    pub fn parse(src: &str) -> Result<Self> {
        let weights = src
            .split(',')
            .map(|s| crate::exactfield::parse_rational(s.trim()))
            .collect::<Result<_>>()?;
        Self::new(weights)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

fn normalized_ranks(ranks: &[usize], sizes: &[usize], tower: &crate::exactfield::ScalarTower) -> CenterValue {
    CenterValue::from_rationals(
        tower,
        ranks
            .iter()
            .zip(sizes)
            .map(|(&r, &n)| Rational::new(r.into(), n.into())),
    )
}

/// `d(p)_b = rank(p_b) / n_b`.
pub fn d(p: &Projection) -> CenterValue {
    let a = p.algebra();
    normalized_ranks(&p.ranks(), a.block_sizes(), a.tower())
}

/// Dimension of `p(A^n)` for a projection `p` of `M_n(A)`, in units of `A`:
/// block `b` is `rank / n_b` where `n_b` is the block size of the base algebra.
pub fn dim_fgp(ring: &MatrixRing, p: &Projection) -> Result<CenterValue> {
    ring.algebra().check_same(p.algebra())?;
    let base = ring.base();
    Ok(normalized_ranks(&p.ranks(), base.block_sizes(), base.tower()))
}

/// `dim(coker F) = dim(A^n) - dim(closure of im F)`.
pub fn dim_fp(m: &ModulePresentation) -> Result<CenterValue> {
    let ring = MatrixRing::new(m.algebra(), m.ambient())?;
    let closure = m.image().projector(&ring)?;
    let a = m.algebra();
    let full = CenterValue::constant(
        a.tower(),
        a.num_blocks(),
        &Rational::from_integer(m.ambient().into()),
    );
    full.sub(&dim_fgp(&ring, &closure)?)
}

/// `sum_b w_b v_b` for a center value with real non-negative coordinates.
pub fn dim_real(v: &CenterValue, w: &TraceWeights) -> Result<Scalar> {
    if v.len() != w.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} coordinates against {} weights",
            v.len(),
            w.len()
        )));
    }
    let tower = v
        .coords()
        .first()
        .map(|s| s.tower().clone())
        .ok_or_else(|| Error::InvalidWeights("empty center value".into()))?;
    let mut total = Scalar::zero(&tower);
    for (s, wb) in v.coords().iter().zip(w.weights()) {
        if s.real_sign()? == Ordering::Less {
            return Err(Error::NegativeCoordinate(s.to_string()));
        }
        total = total.checked_add(&s.scale(wb))?;
    }
    Ok(total)
}

/// `p(A^m)` and `q(A^n)` are isomorphic iff their dimensions agree.
pub fn iso_classify(
    ring_p: &MatrixRing,
    p: &Projection,
    ring_q: &MatrixRing,
    q: &Projection,
) -> Result<bool> {
    ring_p.base().check_same(ring_q.base())?;
    Ok(dim_fgp(ring_p, p)? == dim_fgp(ring_q, q)?)
}

/// The center-valued trace: block `b` is `trace(x_b) / n_b`.
pub fn center_trace(x: &AlgElement) -> CenterValue {
    let a = x.algebra();
    CenterValue::new(
        x.blocks()
            .iter()
            .zip(a.block_sizes())
            .map(|(m, &n)| m.trace().scale(&Rational::new(1.into(), n.into())))
            .collect(),
    )
}

/// The scalar trace `sum_b w_b trace(x_b) / n_b`.
pub fn weighted_trace(x: &AlgElement, w: &TraceWeights) -> Result<Scalar> {
    let c = center_trace(x);
    if c.len() != w.len() {
        return Err(Error::ShapeMismatch("weights per block".into()));
    }
    Ok(c.coords()
        .iter()
        .zip(w.weights())
        .fold(Scalar::zero(x.tower()), |acc, (s, wb)| &acc + &s.scale(wb)))
}

/// The all-`n` center value, `dim(A^n)`.
pub fn free_dim(algebra: &AlgebraDescriptor, n: usize) -> CenterValue {
    CenterValue::constant(
        algebra.tower(),
        algebra.num_blocks(),
        &Rational::from_integer(n.into()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{central_projections, AlgArray};
    use crate::exactfield::rat;
    use crate::linalg::Mat;

    fn alg(name: &str) -> AlgebraDescriptor {
        AlgebraDescriptor::builtin(name).unwrap()
    }

    fn cv(a: &AlgebraDescriptor, xs: &[(i64, i64)]) -> CenterValue {
        CenterValue::from_rationals(a.tower(), xs.iter().map(|&(n, d)| rat(n, d)))
    }

    #[test]
    fn d_examples() {
        let a = alg("gauss_plus_m2");
        assert_eq!(d(&Projection::one(&a)), cv(&a, &[(1, 1), (1, 1)]));
        assert!(d(&Projection::zero(&a)).is_zero());
        for c in central_projections(&a) {
            let c = Projection::new(c).unwrap();
            assert_eq!(&crate::algebra::center_embed(&a, &d(&c)).unwrap(), c.element());
        }
        let p = Projection::new(AlgElement::matrix_unit(&a, 1, 0, 0)).unwrap();
        assert_eq!(d(&p), cv(&a, &[(0, 1), (1, 2)]));
    }

    #[test]
    fn dim_fgp_examples() {
        let m2 = alg("m2");
        let ring = MatrixRing::new(&m2, 2).unwrap();
        let one = Projection::one(ring.algebra());
        assert_eq!(dim_fgp(&ring, &one).unwrap(), cv(&m2, &[(2, 1)]));
        let t = m2.tower();
        let diag3 = Mat::from_fn(t, 4, 4, |i, j| {
            if i == j && i < 3 {
                Scalar::one(t)
            } else {
                Scalar::zero(t)
            }
        });
        let p = Projection::new(AlgElement::new(ring.algebra(), vec![diag3]).unwrap()).unwrap();
        assert_eq!(dim_fgp(&ring, &p).unwrap(), cv(&m2, &[(3, 2)]));
        let r1 = MatrixRing::new(&m2, 1).unwrap();
        let e11 = Projection::new(AlgElement::matrix_unit(r1.algebra(), 0, 0, 0)).unwrap();
        assert_eq!(dim_fgp(&r1, &e11).unwrap(), d(&e11));
    }

    #[test]
    fn dim_fp_examples() {
        let m2 = alg("m2");
        let zero = ModulePresentation::new(AlgArray::identity(&m2, 1)).unwrap();
        assert!(dim_fp(&zero).unwrap().is_zero());
        let e11 = AlgElement::matrix_unit(&m2, 0, 0, 0);
        let m = ModulePresentation::new(AlgArray::column(&m2, vec![e11])).unwrap();
        assert_eq!(dim_fp(&m).unwrap(), cv(&m2, &[(1, 2)]));
        let g = alg("gauss");
        let two = AlgElement::scalar(&g, &Scalar::from_int(g.tower(), 2));
        let m = ModulePresentation::new(AlgArray::column(&g, vec![two])).unwrap();
        assert!(dim_fp(&m).unwrap().is_zero());
        let free = ModulePresentation::free(&m2, 3);
        assert_eq!(dim_fp(&free).unwrap(), cv(&m2, &[(3, 1)]));
    }

    #[test]
    fn dim_real_examples() {
        let a = alg("gauss_plus_m2");
        let w = TraceWeights::new(vec![rat(1, 3), rat(2, 3)]).unwrap();
        let t = a.tower();
        assert!(dim_real(&cv(&a, &[(0, 1), (0, 1)]), &w).unwrap().is_zero());
        assert_eq!(dim_real(&cv(&a, &[(1, 1), (1, 1)]), &w).unwrap(), Scalar::one(t));
        let half = TraceWeights::uniform(2);
        assert_eq!(
            dim_real(&cv(&a, &[(0, 1), (1, 2)]), &half).unwrap(),
            Scalar::from_rational(t, rat(1, 4))
        );
        assert!(matches!(
            dim_real(&cv(&a, &[(-1, 1), (1, 1)]), &w),
            Err(Error::NegativeCoordinate(_))
        ));
        assert!(TraceWeights::new(vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(TraceWeights::new(vec![rat(0, 1), rat(1, 1)]).is_err());
        assert_eq!(TraceWeights::parse("1/3, 2/3").unwrap(), w);
    }

    #[test]
    fn iso_examples() {
        let m2 = alg("m2");
        let r1 = MatrixRing::new(&m2, 1).unwrap();
        let r2 = MatrixRing::new(&m2, 2).unwrap();
        let e11 = Projection::new(AlgElement::matrix_unit(r1.algebra(), 0, 0, 0)).unwrap();
        let f = Projection::new(AlgElement::matrix_unit(r2.algebra(), 0, 3, 3)).unwrap();
        assert!(iso_classify(&r1, &e11, &r1, &e11).unwrap());
        assert!(iso_classify(&r1, &e11, &r2, &f).unwrap());
        let a = alg("gauss_plus_m2");
        let ra = MatrixRing::new(&a, 1).unwrap();
        let p = Projection::new(AlgElement::matrix_unit(ra.algebra(), 0, 0, 0)).unwrap();
        let q = Projection::new(AlgElement::matrix_unit(ra.algebra(), 1, 0, 0)).unwrap();
        assert!(!iso_classify(&ra, &p, &ra, &q).unwrap());
    }

    #[test]
    fn trace_fixes_center() {
        let a = alg("m2_plus_m3");
        let c = cv(&a, &[(3, 1), (-1, 2)]);
        let x = crate::algebra::center_embed(&a, &c).unwrap();
        assert_eq!(center_trace(&x), c);
        let w = TraceWeights::uniform(2);
        assert_eq!(
            weighted_trace(&x, &w).unwrap(),
            Scalar::from_rational(a.tower(), rat(5, 4))
        );
    }
}
