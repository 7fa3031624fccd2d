//! Seeded generators for test instances over small Gaussian integers.

use rand::Rng;

use crate::algebra::{center_embed, support_value, AlgArray, AlgElement, AlgebraDescriptor, MatrixRing};
use crate::dimension::TraceWeights;
use crate::exactfield::{rat, Scalar, ScalarTower};
use crate::linalg::Mat;
use crate::modules::{ModulePresentation, SubmoduleBasis};
use crate::projections::Projection;
use crate::torsion_lab::{FDAlgebra, FDModule};

/// `a + b i` with `a, b` in `-2..=2`, zero about a third of the time.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R, tower: &ScalarTower) -> Scalar {
    if rng.random_bool(0.3) {
        return Scalar::zero(tower);
    }
    Scalar::gaussian(
        tower,
        rat(rng.random_range(-2..=2), 1),
        rat(rng.random_range(-2..=2), 1),
    )
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, tower: &ScalarTower, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(tower, rows, cols, |_, _| scalar(rng, tower))
}

/// A random block matrix whose rank is spread over `0..=n`.
fn block<R: Rng + ?Sized>(rng: &mut R, tower: &ScalarTower, n: usize) -> Mat {
    if rng.random_bool(0.5) {
        matrix(rng, tower, n, n)
    } else {
        let k = rng.random_range(0..=n);
        &matrix(rng, tower, n, k) * &matrix(rng, tower, k, n)
    }
}

pub fn element<R: Rng + ?Sized>(rng: &mut R, algebra: &AlgebraDescriptor) -> AlgElement {
    let tower = algebra.tower().clone();
    AlgElement::from_fn(algebra, |_, n| block(rng, &tower, n))
}

/// A nonzero element.
pub fn nonzero_element<R: Rng + ?Sized>(rng: &mut R, algebra: &AlgebraDescriptor) -> AlgElement {
    loop {
        let x = element(rng, algebra);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn array<R: Rng + ?Sized>(
    rng: &mut R,
    algebra: &AlgebraDescriptor,
    rows: usize,
    cols: usize,
) -> AlgArray {
    AlgArray::from_fn(algebra, rows, cols, |_, _| element(rng, algebra))
}

/// Projection onto the span of a few random vectors in each block.
pub fn projection<R: Rng + ?Sized>(rng: &mut R, algebra: &AlgebraDescriptor) -> Projection {
    let tower = algebra.tower().clone();
    let p = AlgElement::from_fn(algebra, |_, n| {
        let k = rng.random_range(0..=n);
        matrix(rng, &tower, n, k).hermitian_projector()
    });
    Projection::new(p).expect("hermitian projectors are projections")
}

/// A random projection dominated by `1 - p`, so orthogonal to `p`.
pub fn orthogonal_projection<R: Rng + ?Sized>(rng: &mut R, p: &Projection) -> Projection {
    let a = p.algebra().clone();
    let comp = p.complement();
    let tower = a.tower().clone();
    let q = AlgElement::from_fn(&a, |b, n| {
        let k = rng.random_range(0..=n);
        (&comp.element().block(b).clone() * &matrix(rng, &tower, n, k)).hermitian_projector()
    });
    Projection::new(q).expect("hermitian projectors are projections")
}

/// A unitary built from Householder reflections `1 - 2 v v* / (v* v)` and a
/// diagonal of fourth roots of unity, all with Gaussian rational entries.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, algebra: &AlgebraDescriptor) -> AlgElement {
    let tower = algebra.tower().clone();
    AlgElement::from_fn(algebra, |_, n| {
        let units = [
            Scalar::one(&tower),
            -Scalar::one(&tower),
            Scalar::i(&tower),
            -Scalar::i(&tower),
        ];
        let mut u = Mat::from_fn(&tower, n, n, |i, j| {
            if i == j {
                units[rng.random_range(0..4)].clone()
            } else {
                Scalar::zero(&tower)
            }
        });
        for _ in 0..rng.random_range(1..=2) {
            let v = loop {
                let v = matrix(rng, &tower, n, 1);
                if !v.is_zero() {
                    break v;
                }
            };
            let norm = (&v.adjoint() * &v).get(0, 0).clone();
            let two_over = &Scalar::from_int(&tower, 2) / &norm;
            let h = &Mat::identity(&tower, n) - &(&v * &v.adjoint()).scale(&two_over);
            u = &u * &h;
        }
        u
    })
}

/// A projection with the prescribed block ranks, from random spanning columns.
pub fn projection_with_ranks<R: Rng + ?Sized>(
    rng: &mut R,
    algebra: &AlgebraDescriptor,
    ranks: &[usize],
) -> Projection {
    let tower = algebra.tower().clone();
    let p = AlgElement::from_fn(algebra, |b, n| loop {
        let cols = matrix(rng, &tower, n, ranks[b]);
        if cols.rank() == ranks[b] {
            break cols.hermitian_projector();
        }
    });
    Projection::new(p).expect("hermitian projectors are projections")
}

/// One of the `2^B` central projections.
pub fn central_projection<R: Rng + ?Sized>(rng: &mut R, algebra: &AlgebraDescriptor) -> Projection {
    let mask = rng.random_range(0..1usize << algebra.num_blocks());
    let c = support_value(algebra.tower(), algebra.num_blocks(), mask);
    Projection::new(center_embed(algebra, &c).expect("length matches")).expect("central projection")
}

/// `coker F` for a random `n x m` array; about a third of the time `F` starts
/// with a unitary column block so that the module collapses.
pub fn presentation<R: Rng + ?Sized>(
    rng: &mut R,
    algebra: &AlgebraDescriptor,
    n: usize,
    m: usize,
) -> ModulePresentation {
    let mut f = array(rng, algebra, n, m);
    if rng.random_bool(1.0 / 3.0) {
        let ring = MatrixRing::new(algebra, n).expect("n > 0");
        let u = ring.unpack(&unitary(rng, ring.algebra())).expect("same ring");
        f = u.hstack(&f).expect("same rows");
    }
    ModulePresentation::new(f).expect("n > 0")
}

/// A submodule of `A^n` with up to `max_gens` random generators.
pub fn submodule<R: Rng + ?Sized>(
    rng: &mut R,
    algebra: &AlgebraDescriptor,
    n: usize,
    max_gens: usize,
) -> SubmoduleBasis {
    let k = rng.random_range(0..=max_gens);
    let gens = (0..k).map(|_| array(rng, algebra, n, 1)).collect();
    SubmoduleBasis::new(algebra, n, gens).expect("generators have the right shape")
}

/// Positive weights summing to one.
pub fn weights<R: Rng + ?Sized>(rng: &mut R, blocks: usize) -> TraceWeights {
    let raw: Vec<i64> = (0..blocks).map(|_| rng.random_range(1..=9)).collect();
    let total: i64 = raw.iter().sum();
    TraceWeights::new(raw.iter().map(|&w| rat(w, total)).collect()).expect("positive, sums to 1")
}

/// A random algebra of dimension at most six: truncated polynomial rings,
/// incidence algebras of posets on up to three points, `M_2`, or products of
/// two small ones, sometimes written on a scrambled basis.
pub fn lab_algebra<R: Rng + ?Sized>(rng: &mut R) -> FDAlgebra {
    let tower = ScalarTower::gaussian();
    let base = match rng.random_range(0..5) {
        0 => FDAlgebra::truncated_polynomial(&tower, rng.random_range(1..=4)),
        1 => random_incidence(rng, &tower),
        2 => FDAlgebra::from_multimatrix(&AlgebraDescriptor::builtin("m2").expect("builtin")),
        3 => {
            let a = FDAlgebra::truncated_polynomial(&tower, rng.random_range(1..=3));
            let b = FDAlgebra::truncated_polynomial(&tower, rng.random_range(1..=3));
            a.product(&b).expect("same tower")
        }
        _ => {
            let a = FDAlgebra::incidence(&tower, 2, &[(0, 1)]).expect("valid poset");
            let b = FDAlgebra::truncated_polynomial(&tower, rng.random_range(1..=3));
            a.product(&b).expect("same tower")
        }
    };
    if rng.random_bool(0.5) {
        base.change_basis(&unitriangular_mix(rng, &tower, base.dim()))
            .expect("invertible basis change")
    } else {
        base
    }
}

fn random_incidence<R: Rng + ?Sized>(rng: &mut R, tower: &ScalarTower) -> FDAlgebra {
    let points = rng.random_range(1..=3);
    let mut rel: Vec<(usize, usize)> = Vec::new();
    for a in 0..points {
        for b in a + 1..points {
            if rng.random_bool(0.5) {
                rel.push((a, b));
            }
        }
    }
    // transitive closure on at most three points
    if rel.contains(&(0, 1)) && rel.contains(&(1, 2)) && !rel.contains(&(0, 2)) {
        rel.push((0, 2));
    }
    FDAlgebra::incidence(tower, points, &rel).expect("transitively closed")
}

/// `L U` with unit lower and upper triangular factors of small integers.
fn unitriangular_mix<R: Rng + ?Sized>(rng: &mut R, tower: &ScalarTower, d: usize) -> Mat {
    let mut tri = |upper: bool| {
        Mat::from_fn(tower, d, d, |i, j| {
            if i == j {
                Scalar::one(tower)
            } else if (i < j) == upper {
                Scalar::from_int(tower, rng.random_range(-1..=1))
            } else {
                Scalar::zero(tower)
            }
        })
    };
    let l = tri(false);
    let u = tri(true);
    &l * &u
}

/// A random module over `r`: the regular module, a cyclic right ideal, a
/// cyclic quotient of `R`, or a direct sum of two of these.
pub fn lab_module<R: Rng + ?Sized>(rng: &mut R, r: &FDAlgebra) -> FDModule {
    let one = |rng: &mut R| -> FDModule {
        let reg = r.regular_module();
        let x: Vec<Scalar> = (0..r.dim()).map(|_| scalar(rng, r.tower())).collect();
        let ideal = r.right_ideal(&[x]);
        match rng.random_range(0..3) {
            0 => reg,
            1 if !ideal.is_zero() => reg.restrict(&ideal).expect("right ideals are submodules"),
            _ if !ideal.is_full() => reg.quotient(&ideal).expect("right ideals are submodules").module,
            _ => reg,
        }
    };
    let m = one(rng);
    if m.dim() <= 4 && rng.random_bool(0.3) {
        m.direct_sum(&one(rng))
    } else {
        m
    }
}
