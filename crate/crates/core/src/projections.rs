//! Rickart/Baer calculus on multi-matrix algebras: annihilators, left and right
//! projections, the projection lattice, equivalence, comparability and the
//! parallelogram law.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{center_embed, AlgElement, AlgebraDescriptor, CenterValue};
use crate::dimension;
use crate::error::{Error, Result};
use crate::exactfield::{rational_sqrt, Rational, Scalar, ScalarTower};
use crate::linalg::Mat;

/// Largest integer searched when writing a norm as a sum of two squares.
const TWO_SQUARES_SEARCH_LIMIT: u64 = 10_000_000;

/// A self-adjoint idempotent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Projection(AlgElement);

impl Projection {
    /// Checks `p^2 = p = p*`.
    pub fn new(p: AlgElement) -> Result<Self> {
        if p.is_projection() {
            Ok(Self(p))
        } else {
            Err(Error::NotAProjection(format!("{p:?}")))
        }
    }

    pub(crate) fn new_unchecked(p: AlgElement) -> Self {
        debug_assert!(p.is_projection());
        Self(p)
    }

    pub fn zero(algebra: &AlgebraDescriptor) -> Self {
        Self(AlgElement::zero(algebra))
    }

    pub fn one(algebra: &AlgebraDescriptor) -> Self {
        Self(AlgElement::one(algebra))
    }

    /// Orthogonal projection onto the column space of each block of `v`.
    pub fn onto_columns(algebra: &AlgebraDescriptor, columns: &[Mat]) -> Result<Self> {
        let blocks = columns.iter().map(Mat::hermitian_projector).collect();
        Ok(Self(AlgElement::new(algebra, blocks)?))
    }

    pub fn element(&self) -> &AlgElement {
        &self.0
    }

    pub fn into_element(self) -> AlgElement {
        self.0
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        self.0.algebra()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `1 - p`.
    pub fn complement(&self) -> Self {
        Self(&AlgElement::one(self.algebra()) - &self.0)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.0.block_ranks()
    }

    /// Lattice order `p <= q`, decided as `p = p q`.
    pub fn le(&self, q: &Projection) -> Result<bool> {
        Ok(self.0.checked_mul(&q.0)? == self.0)
    }

    /// `p <= q` decided as `p A` contained in `q A`, block by block.
    pub fn range_contained_in(&self, q: &Projection) -> Result<bool> {
        self.algebra().check_same(q.algebra())?;
        Ok(self
            .0
            .blocks()
            .iter()
            .zip(q.0.blocks())
            .all(|(pb, qb)| qb.col_space_contains(pb)))
    }

    /// Same ranges block by block, i.e. `p A = q A`.
    pub fn same_range(&self, q: &Projection) -> bool {
        self.0
            .blocks()
            .iter()
            .zip(q.0.blocks())
            .all(|(a, b)| a.col_space_eq(b))
    }

    pub fn orthogonal_to(&self, q: &Projection) -> Result<bool> {
        Ok(self.0.checked_mul(&q.0)?.is_zero())
    }

    pub fn embed(&self, tower: &ScalarTower) -> Result<Self> {
        Ok(Self(self.0.embed(tower)?))
    }
}

/// An element `w` with `w* w = initial` and `w w* = final`.
#[derive(Clone, Debug)]
pub struct PartialIsometry {
    element: AlgElement,
    initial: Projection,
    final_: Projection,
}

impl PartialIsometry {
    pub fn new(element: AlgElement, initial: Projection, final_: Projection) -> Result<Self> {
        if element.star().checked_mul(&element)? != *initial.element()
            || element.checked_mul(&element.star())? != *final_.element()
        {
            return Err(Error::InvariantViolation(
                "w*w and ww* do not match the given projections".into(),
            ));
        }
        Ok(Self {
            element,
            initial,
            final_,
        })
    }

    pub fn element(&self) -> &AlgElement {
        &self.element
    }

    pub fn initial(&self) -> &Projection {
        &self.initial
    }

    pub fn final_projection(&self) -> &Projection {
        &self.final_
    }

    /// The algebra the witness lives in, possibly over an extended tower.
    pub fn algebra(&self) -> &AlgebraDescriptor {
        self.element.algebra()
    }
}

fn nonempty<T>(xs: &[T]) -> Result<()> {
    if xs.is_empty() {
        Err(Error::InvalidStructure("empty list".into()))
    } else {
        Ok(())
    }
}

fn common_algebra(xs: &[AlgElement]) -> Result<AlgebraDescriptor> {
    nonempty(xs)?;
    let a = xs[0].algebra().clone();
    for x in &xs[1..] {
        a.check_same(x.algebra())?;
    }
    Ok(a)
}

/// The projection `p` with `{y : x y = 0 for all x in xs} = p A`.
pub fn ann_right(xs: &[AlgElement]) -> Result<Projection> {
    let a = common_algebra(xs)?;
    let tower = a.tower();
    let p = AlgElement::from_fn(&a, |b, n| {
        let adjoints: Vec<Mat> = xs.iter().map(|x| x.block(b).adjoint()).collect();
        let range = Mat::hcat(tower, n, &adjoints)
            .expect("square blocks")
            .hermitian_projector();
        &Mat::identity(tower, n) - &range
    });
    for x in xs {
        if !(x * &p).is_zero() {
            return Err(Error::InvariantViolation("x * ann_r(x) != 0".into()));
        }
    }
    Ok(Projection::new_unchecked(p))
}

/// The projection `q` with `{y : y x = 0 for all x in xs} = A q`.
pub fn ann_left(xs: &[AlgElement]) -> Result<Projection> {
    let stars: Vec<AlgElement> = xs.iter().map(AlgElement::star).collect();
    ann_right(&stars)
}

/// Right projection: the smallest `p` with `x p = x`.
pub fn rp(x: &AlgElement) -> Projection {
    Projection::new_unchecked(AlgElement::from_fn(x.algebra(), |b, _| {
        x.block(b).adjoint().hermitian_projector()
    }))
}

/// Left projection: the smallest `q` with `q x = x`.
pub fn lp(x: &AlgElement) -> Projection {
    Projection::new_unchecked(AlgElement::from_fn(x.algebra(), |b, _| {
        x.block(b).hermitian_projector()
    }))
}

/// Supremum: projection onto the sum of the ranges.
pub fn join(ps: &[Projection]) -> Result<Projection> {
    let elems: Vec<AlgElement> = ps.iter().map(|p| p.0.clone()).collect();
    let a = common_algebra(&elems)?;
    let tower = a.tower();
    Ok(Projection::new_unchecked(AlgElement::from_fn(&a, |b, n| {
        let parts: Vec<Mat> = elems.iter().map(|p| p.block(b).clone()).collect();
        Mat::hcat(tower, n, &parts)
            .expect("square blocks")
            .hermitian_projector()
    })))
}

/// Infimum: `1 - join(1 - p_i)`, whose range is the intersection of the ranges.
pub fn meet(ps: &[Projection]) -> Result<Projection> {
    let comps: Vec<Projection> = ps.iter().map(Projection::complement).collect();
    Ok(join(&comps)?.complement())
}

/// Murray-von Neumann equivalence, decided by equality of dimension vectors.
pub fn equivalent(p: &Projection, q: &Projection) -> Result<bool> {
    p.algebra().check_same(q.algebra())?;
    Ok(dimension::d(p) == dimension::d(q))
}

/// `p` is equivalent to a subprojection of `q`: `d(p) <= d(q)`.
pub fn subequivalent(p: &Projection, q: &Projection) -> Result<bool> {
    p.algebra().check_same(q.algebra())?;
    dimension::d(p).le(&dimension::d(q))
}

/// Orthogonal (not normalised) basis of the column space, with squared norms.
fn orthogonal_basis(m: &Mat) -> Vec<(Mat, Scalar)> {
    let basis = m.column_basis();
    let mut out: Vec<(Mat, Scalar)> = Vec::with_capacity(basis.cols());
    for k in 0..basis.cols() {
        let mut v = basis.column(k);
        for (u, norm) in &out {
            let coeff = &(&u.adjoint() * &v).get(0, 0).clone() / norm;
            v = &v - &u.scale(&coeff);
        }
        let norm = (&v.adjoint() * &v).get(0, 0).clone();
        out.push((v, norm));
    }
    out
}

/// Writes a positive rational as `a^2 + b^2` with rational `a, b` if a small search finds it.
fn two_squares(t: &Rational) -> Option<(Rational, Rational)> {
    let m = t.numer() * t.denom();
    if m > BigInt::from(TWO_SQUARES_SEARCH_LIMIT) {
        return None;
    }
    let m: u64 = m.try_into().ok()?;
    let mut x = 0u64;
    while x * x <= m {
        let rest = m - x * x;
        let y = rest.isqrt();
        if y * y == rest {
            let d = t.denom().clone();
            return Some((Rational::new(x.into(), d.clone()), Rational::new(y.into(), d)));
        }
        x += 1;
    }
    None
}

/// How to produce a scalar `c` with `c * conj(c) = t`.
enum NormFactor {
    Gaussian(Rational, Rational),
    Root(Rational),
}

fn norm_factor(t: &Rational, tower: &ScalarTower) -> NormFactor {
    if rational_sqrt(t).is_none() && tower.sqrt(t).is_none() {
        if let Some((a, b)) = two_squares(t) {
            return NormFactor::Gaussian(a, b);
        }
    }
    NormFactor::Root(t.clone())
}

/// Gram-Schmidt pairing of the ranges of `p` and `q`, block by block, without
/// checking that the ranks agree. The result satisfies `w*w = p`, `ww* = q`
/// exactly when the projections are equivalent.
pub fn pair_ranges(p: &Projection, q: &Projection) -> Result<AlgElement> {
    p.algebra().check_same(q.algebra())?;
    let a = p.algebra();
    let mut plans = Vec::new();
    let mut tower = a.tower().clone();
    for b in 0..a.num_blocks() {
        let us = orthogonal_basis(p.0.block(b));
        let gs = orthogonal_basis(q.0.block(b));
        let mut pairs = Vec::new();
        for ((u, nu), (g, ng)) in us.into_iter().zip(gs) {
            let t = (&nu * &ng).as_rational().cloned().ok_or_else(|| {
                Error::InvalidStructure(format!(
                    "witness construction needs rational range norms, got {}",
                    &nu * &ng
                ))
            })?;
            let factor = norm_factor(&t, &tower);
            if let NormFactor::Root(r) = &factor {
                tower = tower.adjoin_sqrt(r)?;
            }
            pairs.push((u, g, factor));
        }
        plans.push(pairs);
    }
    let ext = a.over_tower(&tower);
    let blocks = plans
        .into_iter()
        .zip(a.block_sizes())
        .map(|(pairs, &n)| {
            let mut w = Mat::zeros(&tower, n, n);
            for (u, g, factor) in pairs {
                let c = match factor {
                    NormFactor::Gaussian(re, im) => Scalar::gaussian(&tower, re, im),
                    NormFactor::Root(r) => tower.sqrt(&r).expect("root was adjoined"),
                };
                let (u, g) = (u.embed(&tower)?, g.embed(&tower)?);
                let term = &g * &u.adjoint();
                w = &w + &term.scale(&c.conj().inv()?);
            }
            Ok(w)
        })
        .collect::<Result<_>>()?;
    AlgElement::new(&ext, blocks)
}

/// A partial isometry from `p` to `q`, extending the scalar tower when a
/// normalising square root is missing.
pub fn partial_isometry_witness(p: &Projection, q: &Projection) -> Result<PartialIsometry> {
    if !equivalent(p, q)? {
        return Err(Error::NotEquivalent(
            dimension::d(p).to_string(),
            dimension::d(q).to_string(),
        ));
    }
    if p == q {
        return PartialIsometry::new(p.0.clone(), p.clone(), q.clone());
    }
    let w = pair_ranges(p, q)?;
    let tower = w.tower().clone();
    PartialIsometry::new(w, p.embed(&tower)?, q.embed(&tower)?)
}

/// The central projection supported on blocks where `rank p_b <= rank q_b`.
///
/// Ties go to `c`. Both `c p <= c q` and `(1 - c) q <= (1 - c) p` (in the
/// subequivalence order) are verified before returning.
pub fn generalized_comparability(p: &Projection, q: &Projection) -> Result<Projection> {
    let a = p.algebra();
    a.check_same(q.algebra())?;
    let tower = a.tower();
    let (rp_, rq) = (p.ranks(), q.ranks());
    let c = CenterValue::new(
        rp_.iter()
            .zip(&rq)
            .map(|(x, y)| {
                if x <= y {
                    Scalar::one(tower)
                } else {
                    Scalar::zero(tower)
                }
            })
            .collect(),
    );
    let c = Projection::new_unchecked(center_embed(a, &c)?);
    let cc = c.complement();
    let cut = |c: &Projection, x: &Projection| Projection::new_unchecked(c.element() * x.element());
    if !subequivalent(&cut(&c, p), &cut(&c, q))? || !subequivalent(&cut(&cc, q), &cut(&cc, p))? {
        return Err(Error::InvariantViolation(
            "generalized comparability certificate failed".into(),
        ));
    }
    Ok(c)
}

/// `(p - p∧q, p∨q - q, equivalent)`; the flag is true for every input pair.
pub fn parallelogram_defect(p: &Projection, q: &Projection) -> Result<(Projection, Projection, bool)> {
    let lower = Projection::new_unchecked(p.element() - meet(&[p.clone(), q.clone()])?.element());
    let upper = Projection::new_unchecked(join(&[p.clone(), q.clone()])?.element() - q.element());
    let eq = equivalent(&lower, &upper)?;
    Ok((lower, upper, eq))
}

/// Positive integer squared norms are the common case; exposed for tests.
#[doc(hidden)]
pub fn sum_of_two_squares(t: &Rational) -> Option<(Rational, Rational)> {
    if !t.is_positive() || t.is_zero() {
        return None;
    }
    two_squares(t)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::exactfield::{parse_scalar, rat};
    use crate::random;

    fn alg(name: &str) -> AlgebraDescriptor {
        AlgebraDescriptor::builtin(name).unwrap()
    }

    fn elem(a: &AlgebraDescriptor, blocks: &[&[&[&str]]]) -> AlgElement {
        let t = a.tower();
        let mats = blocks
            .iter()
            .map(|rows| {
                Mat::from_rows(
                    t,
                    rows.iter()
                        .map(|r| r.iter().map(|s| parse_scalar(s, t).unwrap()).collect())
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        AlgElement::new(a, mats).unwrap()
    }

    fn proj(a: &AlgebraDescriptor, blocks: &[&[&[&str]]]) -> Projection {
        Projection::new(elem(a, blocks)).unwrap()
    }

    #[test]
    fn projection_constructor_checks() {
        let m2 = alg("m2");
        assert!(Projection::new(elem(&m2, &[&[&["0", "1"], &["0", "0"]]])).is_err());
        assert!(Projection::new(elem(&m2, &[&[&["1", "1"], &["0", "0"]]])).is_err());
    }

    #[test]
    fn annihilator_examples() {
        let m2 = alg("m2");
        assert!(ann_right(&[AlgElement::one(&m2)]).unwrap().is_zero());
        assert_eq!(ann_right(&[AlgElement::zero(&m2)]).unwrap(), Projection::one(&m2));
        let e12 = AlgElement::matrix_unit(&m2, 0, 0, 1);
        let e11 = AlgElement::matrix_unit(&m2, 0, 0, 0);
        assert_eq!(ann_right(std::slice::from_ref(&e12)).unwrap().element(), &e11);
        // y e12 = 0 iff first column of y vanishes iff y in M2 e22
        let e22 = AlgElement::matrix_unit(&m2, 0, 1, 1);
        assert_eq!(ann_left(&[e12]).unwrap().element(), &e22);
        assert!(ann_right(&[]).is_err());
    }

    #[test]
    fn rp_lp_examples() {
        let m2 = alg("m2");
        let z = AlgElement::zero(&m2);
        assert!(rp(&z).is_zero() && lp(&z).is_zero());
        let e12 = AlgElement::matrix_unit(&m2, 0, 0, 1);
        assert_eq!(rp(&e12).element(), &AlgElement::matrix_unit(&m2, 0, 1, 1));
        assert_eq!(lp(&e12).element(), &AlgElement::matrix_unit(&m2, 0, 0, 0));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let p = random::projection(&mut rng, &alg("m2_plus_m3"));
            assert_eq!(rp(p.element()), p);
            assert_eq!(lp(p.element()), p);
        }
    }

    #[test]
    fn meet_join_examples() {
        let m2 = alg("m2");
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = random::projection(&mut rng, &m2);
        assert_eq!(meet(&[p.clone(), Projection::one(&m2)]).unwrap(), p);
        assert_eq!(join(&[p.clone(), Projection::zero(&m2)]).unwrap(), p);

        let d = proj(&m2, &[&[&["1", "0"], &["0", "0"]]]);
        let h = proj(&m2, &[&[&["1/2", "1/2"], &["1/2", "1/2"]]]);
        assert!(meet(&[d.clone(), h.clone()]).unwrap().is_zero());
        assert_eq!(join(&[d, h]).unwrap(), Projection::one(&m2));

        // commuting diagonal projections: entrywise min / max
        let m3 = alg("m3");
        let p = proj(&m3, &[&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "0"]]]);
        let q = proj(&m3, &[&[&["0", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]]);
        let inf = proj(&m3, &[&[&["0", "0", "0"], &["0", "1", "0"], &["0", "0", "0"]]]);
        assert_eq!(meet(&[p.clone(), q.clone()]).unwrap(), inf);
        assert_eq!(join(&[p, q]).unwrap(), Projection::one(&m3));
    }

    #[test]
    fn equivalence_examples() {
        let m2 = alg("m2");
        let d = proj(&m2, &[&[&["1", "0"], &["0", "0"]]]);
        let h = proj(&m2, &[&[&["1/2", "1/2"], &["1/2", "1/2"]]]);
        assert!(equivalent(&d, &d).unwrap());
        assert!(equivalent(&d, &h).unwrap());
        let a = alg("gauss_plus_m2");
        let p = proj(&a, &[&[&["1"]], &[&["0", "0"], &["0", "0"]]]);
        let q = proj(&a, &[&[&["0"]], &[&["1", "0"], &["0", "0"]]]);
        assert!(!equivalent(&p, &q).unwrap());
        assert!(equivalent(&p, &proj(&m2, &[&[&["1", "0"], &["0", "0"]]])).is_err());
    }

    #[test]
    fn witness_without_extension() {
        let m2 = alg("m2");
        let d = proj(&m2, &[&[&["1", "0"], &["0", "0"]]]);
        let h = proj(&m2, &[&[&["1/2", "1/2"], &["1/2", "1/2"]]]);
        let w = partial_isometry_witness(&d, &h).unwrap();
        assert_eq!(w.algebra().tower(), m2.tower());
        assert_eq!(
            w.element(),
            &elem(&m2, &[&[&["1/2 + 1/2*i", "0"], &["1/2 + 1/2*i", "0"]]])
        );
        let same = partial_isometry_witness(&d, &d).unwrap();
        assert_eq!(same.element(), d.element());
    }

    #[test]
    fn witness_needs_sqrt3() {
        let m3 = alg("m3");
        let p = proj(&m3, &[&[&["1", "0", "0"], &["0", "0", "0"], &["0", "0", "0"]]]);
        let third = "1/3";
        let q = proj(&m3, &[&[&[third; 3], &[third; 3], &[third; 3]]]);
        let w = partial_isometry_witness(&p, &q).unwrap();
        assert_eq!(w.algebra().tower().radicands(), vec![rat(3, 1)]);
        let e = w.element();
        assert_eq!(&e.star() * e, *p.embed(e.tower()).unwrap().element());
        assert_eq!(e * &e.star(), *q.embed(e.tower()).unwrap().element());
    }

    #[test]
    fn witness_rejects_inequivalent() {
        let m2 = alg("m2");
        assert!(matches!(
            partial_isometry_witness(&Projection::zero(&m2), &Projection::one(&m2)),
            Err(Error::NotEquivalent(..))
        ));
    }

    #[test]
    fn subequivalence_examples() {
        let m3 = alg("m3");
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = random::projection(&mut rng, &m3);
        assert!(subequivalent(&Projection::zero(&m3), &p).unwrap());
        assert!(subequivalent(&p, &Projection::one(&m3)).unwrap());
        let r1 = proj(&m3, &[&[&["1", "0", "0"], &["0", "0", "0"], &["0", "0", "0"]]]);
        let r2 = proj(&m3, &[&[&["0", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]]);
        assert!(subequivalent(&r1, &r2).unwrap());
        assert!(!subequivalent(&r2, &r1).unwrap());
        let a = alg("gauss_plus_m2");
        let c10 = proj(&a, &[&[&["1"]], &[&["0", "0"], &["0", "0"]]]);
        let c01 = proj(&a, &[&[&["0"]], &[&["1", "0"], &["0", "1"]]]);
        assert!(!subequivalent(&c10, &c01).unwrap());
        assert!(!subequivalent(&c01, &c10).unwrap());
    }

    #[test]
    fn comparability_examples() {
        let a = alg("gauss_plus_m2");
        let p = proj(&a, &[&[&["1"]], &[&["0", "0"], &["0", "0"]]]);
        let q = proj(&a, &[&[&["0"]], &[&["1", "0"], &["0", "0"]]]);
        let c = generalized_comparability(&p, &q).unwrap();
        assert_eq!(c, proj(&a, &[&[&["0"]], &[&["1", "0"], &["0", "1"]]]));
        assert_eq!(generalized_comparability(&p, &p).unwrap(), Projection::one(&a));
        let big = join(&[p.clone(), q.clone()]).unwrap();
        assert_eq!(generalized_comparability(&p, &big).unwrap(), Projection::one(&a));
    }

    #[test]
    fn parallelogram_examples() {
        let m2 = alg("m2");
        let d = proj(&m2, &[&[&["1", "0"], &["0", "0"]]]);
        let (l, u, ok) = parallelogram_defect(&d, &d).unwrap();
        assert!(l.is_zero() && u.is_zero() && ok);
        let h = proj(&m2, &[&[&["1/2", "1/2"], &["1/2", "1/2"]]]);
        let (l, u, ok) = parallelogram_defect(&d, &h).unwrap();
        assert_eq!((l.ranks(), u.ranks(), ok), (vec![1], vec![1], true));
        // commuting: p - pq and p v q - q
        let m3 = alg("m3");
        let p = proj(&m3, &[&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "0"]]]);
        let q = proj(&m3, &[&[&["0", "0", "0"], &["0", "1", "0"], &["0", "0", "0"]]]);
        let (l, u, ok) = parallelogram_defect(&p, &q).unwrap();
        assert_eq!(l.element(), &(p.element() - &(p.element() * q.element())));
        assert_eq!(l.ranks(), u.ranks());
        assert!(ok);
    }

    #[test]
    fn two_squares_search() {
        assert_eq!(sum_of_two_squares(&rat(1, 2)), Some((rat(1, 2), rat(1, 2))));
        assert!(sum_of_two_squares(&rat(1, 3)).is_none());
        assert!(sum_of_two_squares(&rat(5, 7)).is_none());
        assert_eq!(sum_of_two_squares(&rat(5, 4)), Some((rat(1, 2), rat(1, 1))));
        assert!(sum_of_two_squares(&rat(0, 1)).is_none());
    }
}
