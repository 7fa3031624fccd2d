//! Partial isometries between equivalent projections, checked exactly in the
//! (possibly extended) scalar tower, against the decision by dimension.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::Case;
use crate::algebra::{AlgebraDescriptor, MatrixRing};
use crate::error::Error;
use crate::io::element_to_json;
use crate::projections::{equivalent, partial_isometry_witness, Projection};
use crate::random;

const ALGEBRAS: [&str; 4] = ["gauss", "m2", "gauss_plus_m2", "m2_plus_m3"];

pub(super) fn global(case: &mut Case) {
    let a = AlgebraDescriptor::builtin("m2").expect("builtin");
    case.check_with("witness_identity", || {
        let one = Projection::one(&a);
        let w = partial_isometry_witness(&one, &one)?;
        Ok(w.element().is_one())
    });
}

pub(super) fn case(rng: &mut ChaCha8Rng, case: &mut Case) {
    let name = ALGEBRAS[rng.random_range(0..ALGEBRAS.len())];
    let base = AlgebraDescriptor::builtin(name).expect("builtin");
    let n = if rng.random_bool(0.25) { 2 } else { 1 };
    let ring = MatrixRing::new(&base, n).expect("n > 0");
    let a = ring.algebra();
    let p = random::projection(rng, a);
    let q = random::projection_with_ranks(rng, a, &p.ranks());
    // an unrelated projection, usually not equivalent to p
    let other = random::projection(rng, a);
    case.record("algebra", json!(name));
    case.record("n", json!(n));
    case.record("p", element_to_json(p.element()));
    case.record("q", element_to_json(q.element()));
    case.record("other", element_to_json(other.element()));

    match partial_isometry_witness(&p, &q) {
        Ok(w) => {
            let x = w.element();
            let t = x.tower().clone();
            if t != *a.tower() {
                case.tally("witnesses_needing_extension");
            }
            case.check_with("witness_exact", || {
                let (pe, qe) = (p.embed(&t)?, q.embed(&t)?);
                Ok(&x.star() * x == *pe.element() && x * &x.star() == *qe.element())
            });
        }
        Err(e) => case.check("witness_exact", Err(e)),
    }
    case.tally("equivalent_pairs");

    case.check_with("decision_matches_existence", || {
        let decided = equivalent(&p, &other)?;
        let ranks_agree = p.ranks() == other.ranks();
        match partial_isometry_witness(&p, &other) {
            Ok(w) => {
                let x = w.element();
                let t = x.tower().clone();
                let exact =
                    &x.star() * x == *p.embed(&t)?.element() && x * &x.star() == *other.embed(&t)?.element();
                Ok(decided && ranks_agree && exact)
            }
            Err(Error::NotEquivalent(..)) => Ok(!decided && !ranks_agree),
            Err(e) => Err(e),
        }
    });
}
