//! Projection lattice and annihilator calculus. Ranges are compared as field
//! subspaces block by block, independently of the projector arithmetic.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::Case;
use crate::algebra::{center_coords, AlgElement, AlgebraDescriptor, MatrixRing};
use crate::dimension::center_trace;
use crate::error::Result;
use crate::io::element_to_json;
use crate::linalg::Subspace;
use crate::projections::{
    ann_left, ann_right, generalized_comparability, join, lp, meet, pair_ranges, parallelogram_defect, rp,
    Projection,
};
use crate::random;

const ALGEBRAS: [&str; 4] = ["gauss", "m2", "gauss_plus_m2", "m2_plus_m3"];

fn ranges(p: &Projection) -> Vec<Subspace> {
    p.element().blocks().iter().map(Subspace::span).collect()
}

fn kernels(x: &AlgElement) -> Vec<Subspace> {
    x.blocks()
        .iter()
        .map(|m| Subspace::from_vectors(m.tower(), m.cols(), &m.kernel_basis()))
        .collect()
}

fn is_witness(w: &AlgElement, p: &Projection, q: &Projection) -> Result<bool> {
    let t = w.tower().clone();
    let (p, q) = (p.embed(&t)?, q.embed(&t)?);
    Ok(&w.star() * w == *p.element() && w * &w.star() == *q.element())
}

fn ranks_le(p: &Projection, q: &Projection) -> bool {
    p.ranks().iter().zip(q.ranks()).all(|(x, y)| *x <= y)
}

pub(super) fn global(case: &mut Case) {
    for name in ALGEBRAS {
        let a = AlgebraDescriptor::builtin(name).expect("builtin");
        let zero = AlgElement::zero(&a);
        case.check_with("rp_lp_contract", || {
            Ok(rp(&zero).is_zero()
                && lp(&zero).is_zero()
                && ann_right(std::slice::from_ref(&zero))? == Projection::one(&a))
        });
    }
    case.fact("lattice_algebras", json!(ALGEBRAS));
}

pub(super) fn case(rng: &mut ChaCha8Rng, case: &mut Case) {
    let name = ALGEBRAS[rng.random_range(0..ALGEBRAS.len())];
    let a = AlgebraDescriptor::builtin(name).expect("builtin");
    case.record("algebra", json!(name));
    let p = random::projection(rng, &a);
    let q = if rng.random_bool(0.3) {
        let extra = random::orthogonal_projection(rng, &p);
        Projection::new(p.element() + extra.element()).expect("orthogonal sum")
    } else {
        random::projection(rng, &a)
    };
    let r = random::projection(rng, &a);
    let x = random::element(rng, &a);
    let y = random::element(rng, &a);
    case.record("p", element_to_json(p.element()));
    case.record("q", element_to_json(q.element()));
    case.record("x", element_to_json(&x));

    case.check_with("inf_sup", || {
        let family = [p.clone(), q.clone(), r.clone()];
        let m = meet(&family)?;
        let expected: Vec<Subspace> = (0..a.num_blocks())
            .map(|b| {
                family
                    .iter()
                    .map(|f| Subspace::span(f.element().block(b)))
                    .reduce(|s, t| s.intersect(&t))
                    .expect("nonempty family")
            })
            .collect();
        Ok(ranges(&m) == expected)
    });
    case.check_with("sup_sum", || {
        let j = join(&[p.clone(), q.clone()])?;
        let expected: Vec<Subspace> = ranges(&p)
            .iter()
            .zip(ranges(&q))
            .map(|(s, t)| s.sum(&t))
            .collect();
        Ok(ranges(&j) == expected)
    });
    case.check_with("rp_contract", || {
        let e = rp(&x);
        let ann = ann_right(std::slice::from_ref(&x))?;
        Ok(&x * e.element() == x
            && ann == ann_right(&[e.element().clone()])?
            && ann == e.complement()
            && ranges(&ann) == kernels(&x)
            && e.ranks() == x.block_ranks())
    });
    case.check_with("lp_contract", || {
        let f = lp(&x);
        let ann = ann_left(std::slice::from_ref(&x))?;
        Ok(f.element() * &x == x
            && ann == ann_left(&[f.element().clone()])?
            && ann == f.complement()
            && (ann.element() * &x).is_zero()
            && f.ranks() == x.block_ranks())
    });
    case.check_with("ann_of_set", || {
        let both = ann_right(&[x.clone(), y.clone()])?;
        let expected: Vec<Subspace> = kernels(&x)
            .iter()
            .zip(kernels(&y))
            .map(|(s, t)| s.intersect(&t))
            .collect();
        Ok(both
            == meet(&[
                ann_right(std::slice::from_ref(&x))?,
                ann_right(std::slice::from_ref(&y))?,
            ])?
            && ranges(&both) == expected)
    });
    case.check_with("order", || {
        let algebraic = p.le(&q)?;
        let commuting = q.element() * p.element() == *p.element();
        let by_range = ranges(&p).iter().zip(ranges(&q)).all(|(s, t)| t.contains(s));
        Ok(algebraic == commuting && algebraic == by_range && algebraic == p.range_contained_in(&q)?)
    });
    case.check_with("lattice_laws", || {
        let pq = [p.clone(), q.clone()];
        let qp = [q.clone(), p.clone()];
        Ok(meet(&[p.clone(), p.clone()])? == p
            && join(&[p.clone(), p.clone()])? == p
            && meet(&pq)? == meet(&qp)?
            && join(&pq)? == join(&qp)?
            && meet(&[p.clone(), join(&pq)?])? == p
            && join(&[p.clone(), meet(&pq)?])? == p)
    });
    case.check_with("parallelogram", || {
        let (lower, upper, eq) = parallelogram_defect(&p, &q)?;
        let w = pair_ranges(&lower, &upper)?;
        Ok(eq
            && is_witness(&w, &lower, &upper)?
            && center_trace(lower.element()) == center_trace(upper.element()))
    });
    case.check_with("generalized_comparability", || {
        let c = generalized_comparability(&p, &q)?;
        let central = center_coords(c.element()).is_some();
        let cut = |c: &Projection, x: &Projection| Projection::new(c.element() * x.element());
        let cc = c.complement();
        Ok(central && ranks_le(&cut(&c, &p)?, &cut(&c, &q)?) && ranks_le(&cut(&cc, &q)?, &cut(&cc, &p)?))
    });
    case.check_with("matrix_ring_parallelogram", || {
        let ring = MatrixRing::new(&AlgebraDescriptor::builtin("gauss_plus_m2")?, 2)?;
        let p2 = random::projection(rng, ring.algebra());
        let q2 = random::projection(rng, ring.algebra());
        let (lower, upper, eq) = parallelogram_defect(&p2, &q2)?;
        Ok(eq && is_witness(&pair_ranges(&lower, &upper)?, &lower, &upper)?)
    });
}
