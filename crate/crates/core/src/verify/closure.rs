//! The four closures of a submodule of `A^n`, the double annihilator of a
//! right ideal, separation, complements versus summands and the
//! correspondence `K -> cl K`, `L -> L ∩ A^n`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::Case;
use crate::algebra::{AlgebraDescriptor, MatrixRing};
use crate::io::array_to_json;
use crate::linalg::Subspace;
use crate::modules::{
    closure_bnd, closure_goldie, closure_projinf, closure_summands, double_annihilator, johnson_round_trip,
    separating_functional, SubmoduleBasis,
};
use crate::projections::Projection;
use crate::random;

const ALGEBRAS: [&str; 4] = ["gauss", "m2", "gauss_plus_m2", "m2_plus_m3"];
const CERTIFICATES: usize = 3;

fn ranges(p: &Projection) -> Vec<Subspace> {
    p.element().blocks().iter().map(Subspace::span).collect()
}

/// Largest `n` drawn per algebra; the Goldie route runs in the lab on the
/// whole of `A^n`, so the biggest algebra stays at `n <= 2`.
fn max_ambient(name: &str) -> usize {
    if name == "m2_plus_m3" {
        2
    } else {
        3
    }
}

pub(super) fn global(case: &mut Case) {
    for name in ALGEBRAS {
        let a = AlgebraDescriptor::builtin(name).expect("builtin");
        case.check_with("four_way_agreement", || {
            let zero = SubmoduleBasis::zero(&a, 1);
            let full = SubmoduleBasis::full(&a, 1);
            Ok(closure_bnd(&zero)?.is_zero()
                && closure_goldie(&zero)?.is_zero()
                && closure_bnd(&full)? == Projection::one(MatrixRing::new(&a, 1)?.algebra()))
        });
    }
    case.fact("closure_algebras", json!(ALGEBRAS));
}

pub(super) fn case(rng: &mut ChaCha8Rng, case: &mut Case) {
    let name = ALGEBRAS[rng.random_range(0..ALGEBRAS.len())];
    let a = AlgebraDescriptor::builtin(name).expect("builtin");
    let n = rng.random_range(1..=max_ambient(name));
    let ring = MatrixRing::new(&a, n).expect("n > 0");
    let k = random::submodule(rng, &a, n, 3);
    case.record("algebra", json!(name));
    case.record("ambient", json!(n));
    case.record(
        "generators",
        json!(k.generators().iter().map(array_to_json).collect::<Vec<_>>()),
    );

    case.check_with("four_way_agreement", || {
        let bnd = closure_bnd(&k)?;
        let summands = closure_summands(&k, rng, CERTIFICATES)?;
        let projinf = closure_projinf(&k, rng, CERTIFICATES)?;
        let goldie = closure_goldie(&k)?;
        Ok(bnd == summands && bnd == projinf && bnd == goldie)
    });
    case.check_with("closure_is_range_of_k", || {
        // semisimple: every submodule is already a summand
        let p = closure_bnd(&k)?;
        Ok(ranges(&p) == k.spans())
    });

    case.check_with("double_annihilator", || {
        let x = random::array(rng, &a, 1, 1);
        let y = random::array(rng, &a, 1, 1);
        let ideal = SubmoduleBasis::new(&a, 1, vec![x, y])?;
        let expected = closure_bnd(&ideal)?;
        Ok(double_annihilator(&ideal)? == Some(expected))
    });

    case.check_with("separation", || {
        let s = random::projection(rng, ring.algebra());
        let p = random::projection(rng, ring.algebra());
        let v = ring
            .unpack(p.element())?
            .checked_mul(&random::array(rng, &a, n, 1))?;
        let summand = SubmoduleBasis::from_projection(&ring, &s)?;
        if summand.contains_vector(&v) {
            return Ok(true);
        }
        let f = separating_functional(&ring, &s, &v)?;
        let on_s = f.checked_mul(&ring.unpack(s.element())?)?;
        Ok(on_s.is_zero() && !f.checked_mul(&v)?.is_zero())
    });

    case.check_with("complement_is_summand", || {
        let closed = closure_goldie(&k)?;
        let cl = SubmoduleBasis::from_projection(&ring, &closed)?;
        let e = random::projection(rng, ring.algebra());
        let range = SubmoduleBasis::from_projection(&ring, &e)?;
        Ok(closed.element().is_self_adjoint()
            && cl.contains(&k)
            && closure_goldie(&cl)? == closed
            && closure_goldie(&range)? == e)
    });

    case.check_with("johnson_round_trip", || {
        let e = random::projection(rng, ring.algebra());
        johnson_round_trip(&ring, &e)
    });
}
