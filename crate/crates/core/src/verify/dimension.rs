//! (D1)-(D11), additivity, cofinality, monotonicity, the zero law and the
//! trace axioms. The oracle for `d(p)` is `trace(p_b) / n_b`, which for a
//! projection equals its normalised rank without any elimination.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::Case;
use crate::algebra::{
    center_coords, center_embed, central_projections, AlgElement, AlgebraDescriptor, CenterValue, MatrixRing,
};
use crate::dimension::{center_trace, d, dim_fgp, dim_fp, free_dim, weighted_trace};
use crate::error::Result;
use crate::exactfield::{rat, Rational};
use crate::io::element_to_json;
use crate::linalg::Mat;
use crate::modules::SubmoduleBasis;
use crate::projections::{equivalent, join, pair_ranges, subequivalent, Projection};
use crate::random;

pub(super) const ALGEBRAS: [&str; 2] = ["gauss_plus_m2", "m2_plus_m3"];

fn alg(name: &str) -> AlgebraDescriptor {
    AlgebraDescriptor::builtin(name).expect("builtin")
}

fn trace_oracle(p: &Projection) -> CenterValue {
    center_trace(p.element())
}

fn is_witness(w: &AlgElement, p: &Projection, q: &Projection) -> Result<bool> {
    let t = w.tower().clone();
    let (p, q) = (p.embed(&t)?, q.embed(&t)?);
    Ok(&w.star() * w == *p.element() && w * &w.star() == *q.element())
}

/// `q' <= q` with the block ranks of `p`, from the leading range vectors of `q`.
fn subprojection_like(p: &Projection, q: &Projection) -> Result<Projection> {
    let ranks = p.ranks();
    let e = AlgElement::from_fn(q.algebra(), |b, _| {
        let basis = q.element().block(b).column_basis();
        let keep: Vec<usize> = (0..ranks[b]).collect();
        basis.select_columns(&keep).hermitian_projector()
    });
    Projection::new(e)
}

pub(super) fn global(case: &mut Case) {
    let mut count = 0usize;
    for name in ALGEBRAS {
        let a = alg(name);
        for c in central_projections(&a) {
            count += 1;
            let value = center_coords(&c);
            case.check_with("D3", || {
                let p = Projection::new(c.clone())?;
                Ok(Some(d(&p)) == value)
            });
            case.check("T3", Ok(Some(center_trace(&c)) == value));
        }
        let t = a.tower();
        let b = a.num_blocks();
        case.check(
            "D5",
            Ok(d(&Projection::one(&a)) == CenterValue::constant(t, b, &rat(1, 1))
                && d(&Projection::zero(&a)) == CenterValue::zeros(t, b)),
        );
    }
    case.fact("central_projections_checked", json!(count));
}

pub(super) fn case(rng: &mut ChaCha8Rng, case: &mut Case) {
    for name in ALGEBRAS {
        let a = alg(name);
        one_algebra(rng, case, name, &a);
    }
}

fn one_algebra(rng: &mut ChaCha8Rng, case: &mut Case, name: &str, a: &AlgebraDescriptor) {
    let p = random::projection(rng, a);
    let q = if rng.random_bool(0.5) {
        random::projection_with_ranks(rng, a, &p.ranks())
    } else {
        random::projection(rng, a)
    };
    let u = random::unitary(rng, a);
    let c = random::central_projection(rng, a);
    case.record(&format!("{name}.p"), element_to_json(p.element()));
    case.record(&format!("{name}.q"), element_to_json(q.element()));
    let dp = d(&p);
    let t = a.tower().clone();
    let blocks = a.num_blocks();
    let zero = CenterValue::zeros(&t, blocks);
    let one = CenterValue::constant(&t, blocks, &rat(1, 1));

    case.check("d_matches_trace", Ok(dp == trace_oracle(&p)));

    // u p is a partial isometry from p to u p u*
    case.check_with("D1", || {
        let w = u.checked_mul(p.element())?;
        let moved = Projection::new(&w * &w.star())?;
        Ok(is_witness(&w, &p, &moved)? && d(&moved) == dp)
    });
    case.check_with("D2", || dp.is_nonnegative());
    case.check_with("D3", || Ok(Some(d(&c)) == center_coords(c.element())));
    case.check_with("D4", || {
        let r = random::orthogonal_projection(rng, &p);
        if !(p.element() * r.element()).is_zero() {
            return Ok(false);
        }
        let s = Projection::new(p.element() + r.element())?;
        Ok(d(&s) == dp.add(&d(&r))? && d(&s) == trace_oracle(&s))
    });
    case.check_with("D5", || Ok(zero.le(&dp)? && dp.le(&one)?));
    case.check_with("D6", || {
        let cp = Projection::new(c.element() * p.element())?;
        let cv = center_coords(c.element()).expect("central");
        Ok(d(&cp) == cv.mul(&dp)?)
    });
    case.check("D7", Ok(dp.is_zero() == p.is_zero()));
    case.check_with("D8", || {
        let decided = equivalent(&p, &q)?;
        let w = pair_ranges(&p, &q)?;
        Ok(decided == is_witness(&w, &p, &q)? && decided == (trace_oracle(&p) == trace_oracle(&q)))
    });
    case.check_with("D9", || {
        let decided = subequivalent(&p, &q)?;
        let ranks_fit = p.ranks().iter().zip(q.ranks()).all(|(x, y)| *x <= y);
        if decided != ranks_fit {
            return Ok(false);
        }
        if !ranks_fit {
            return Ok(true);
        }
        let sub = subprojection_like(&p, &q)?;
        let below = q.element() * sub.element() == *sub.element();
        Ok(below && is_witness(&pair_ranges(&p, &sub)?, &p, &sub)?)
    });
    case.check_with("D10", || {
        // increasing chain p_1 <= p_2 <= ... with sup equal to the last member
        let mut chain = vec![Projection::zero(a)];
        for _ in 0..rng.random_range(1..=4) {
            let last = chain.last().expect("nonempty").clone();
            let extra = random::orthogonal_projection(rng, &last);
            chain.push(Projection::new(last.element() + extra.element())?);
        }
        let sup = join(&chain)?;
        let mut best = zero.clone();
        for x in &chain {
            best = best.max(&d(x))?;
        }
        Ok(d(&sup) == best && sup == *chain.last().expect("nonempty"))
    });
    case.check_with("D11", || {
        let k = rng.random_range(1..=5);
        let mut family: Vec<Projection> = Vec::new();
        let mut total = Projection::zero(a);
        for _ in 0..k {
            let next = random::orthogonal_projection(rng, &total);
            total = Projection::new(total.element() + next.element())?;
            family.push(next);
        }
        let sup = join(&family)?;
        let mut sum = zero.clone();
        for x in &family {
            sum = sum.add(&trace_oracle(x))?;
        }
        Ok(d(&sup) == sum)
    });

    let n = rng.random_range(1..=2);
    let ring = MatrixRing::new(a, n).expect("n > 0");
    case.check_with("additivity", || {
        let cols = rng.random_range(0..=2);
        let m = random::presentation(rng, a, n, cols);
        let closure = m.image().projector(&ring)?;
        Ok(dim_fp(&m)?.add(&dim_fgp(&ring, &closure)?)? == free_dim(a, n))
    });
    case.check_with("cofinality", || {
        let mut union = SubmoduleBasis::zero(a, n);
        let mut best = zero.clone();
        for _ in 0..rng.random_range(1..=3) {
            union = union.sum(&random::submodule(rng, a, n, 2))?;
            best = best.max(&union.dim())?;
        }
        let p = union.projector(&ring)?;
        Ok(dim_fgp(&ring, &p)? == best)
    });
    case.check_with("monotonicity", || {
        let s = random::submodule(rng, a, n, 3);
        let mut gens = Vec::new();
        for g in s.generators() {
            if rng.random_bool(0.5) {
                gens.push(g.mul_right(&random::element(rng, a)));
            }
        }
        let sub = SubmoduleBasis::new(a, n, gens)?;
        let (ps, pp) = (s.projector(&ring)?, sub.projector(&ring)?);
        Ok(s.contains(&sub) && dim_fgp(&ring, &pp)?.le(&dim_fgp(&ring, &ps)?)?)
    });
    case.check_with("zero_law", || {
        let p = random::projection(rng, ring.algebra());
        Ok(dim_fgp(&ring, &p)?.is_zero() == p.is_zero())
    });

    let w = random::weights(rng, blocks);
    case.check_with("T2", || {
        let x = random::element(rng, a);
        let y = random::element(rng, a);
        Ok(weighted_trace(&(&x * &y), &w)? == weighted_trace(&(&y * &x), &w)?
            && center_trace(&(&x * &y)) == center_trace(&(&y * &x)))
    });
    case.check_with("T3", || {
        let v = CenterValue::from_rationals(
            &t,
            (0..blocks)
                .map(|_| {
                    let num: i64 = rng.random_range(-5..=5);
                    let den: i64 = rng.random_range(1..=4);
                    Rational::new(num.into(), den.into())
                })
                .collect::<Vec<_>>(),
        );
        let z = center_embed(a, &v)?;
        Ok(center_trace(&z) == v)
    });
    // diagonal identity in each block as a sanity anchor for the trace oracle
    case.check(
        "trace_of_unit",
        Ok(center_trace(&AlgElement::from_fn(a, |_, m| Mat::identity(&t, m))) == one),
    );
}
