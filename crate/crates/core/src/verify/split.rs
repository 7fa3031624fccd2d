//! Splitting `M = coker F` along the closure of `im F`, the dimension ledger,
//! the torsion filtration and presentation invariance. Dimensions of
//! projections are cross-checked with traces, field dimensions with ranks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::Case;
use crate::algebra::{AlgebraDescriptor, CenterValue, MatrixRing};
use crate::dimension::{dim_fp, free_dim};
use crate::exactfield::Rational;
use crate::io::module_to_json;
use crate::modules::{envelope_tensor_check, split, torsion_filtration, ModulePresentation, SubmoduleBasis};
use crate::projections::Projection;
use crate::random;
use crate::torsion_lab::{bounded_submodule, goldie_torsion};

const ALGEBRAS: [&str; 4] = ["gauss", "m2", "gauss_plus_m2", "m2_plus_m3"];

/// `trace(p_b) / n_b` in units of the base algebra.
fn traced_dim(ring: &MatrixRing, p: &Projection) -> CenterValue {
    let base = ring.base();
    CenterValue::new(
        p.element()
            .blocks()
            .iter()
            .zip(base.block_sizes())
            .map(|(m, &nb)| m.trace().scale(&Rational::new(1.into(), nb.into())))
            .collect(),
    )
}

pub(super) fn global(case: &mut Case) {
    for name in ALGEBRAS {
        let a = AlgebraDescriptor::builtin(name).expect("builtin");
        case.check_with("free_module_splits_trivially", || {
            let s = split(&ModulePresentation::free(&a, 2))?;
            Ok(s.closure_projection.is_zero() && s.bounded_part.is_zero())
        });
    }
}

pub(super) fn case(rng: &mut ChaCha8Rng, case: &mut Case) {
    let name = ALGEBRAS[rng.random_range(0..ALGEBRAS.len())];
    let a = AlgebraDescriptor::builtin(name).expect("builtin");
    let n = rng.random_range(1..=if name == "m2_plus_m3" { 2 } else { 3 });
    let cols = rng.random_range(0..=3);
    let m = random::presentation(rng, &a, n, cols);
    let ring = MatrixRing::new(&a, n).expect("n > 0");
    case.record("algebra", json!(name));
    case.record("module", module_to_json(&m));

    let s = match split(&m) {
        Ok(s) => s,
        Err(e) => {
            case.check("split_runs", Err(e));
            return;
        }
    };
    case.check_with("closure_is_summand", || {
        let cl = SubmoduleBasis::from_projection(&ring, &s.closure_projection)?;
        Ok(s.closure_projection.element().is_projection() && cl.contains(&m.image()) && cl == m.image())
    });
    case.check_with("projective_part", || {
        let range = SubmoduleBasis::from_projection(&ring, &s.projective_part)?;
        Ok(s.projective_part == s.closure_projection.complement()
            && range.field_dim() + s.bounded_part.field_dim() == m.field_dim())
    });
    case.check_with("dim_additivity", || {
        let closure = traced_dim(&ring, &s.closure_projection);
        let projective = traced_dim(&ring, &s.projective_part);
        Ok(closure.add(&projective)? == free_dim(&a, n)
            && projective == dim_fp(&m)?
            && s.dims.module == projective.to_strings())
    });
    case.check("bounded_part_zero", Ok(s.bounded_part.is_zero()));
    case.check_with("filtration", || {
        let report = torsion_filtration(&m)?;
        let zero = |part: &str| report.part(part).and_then(|p| p.dim) == Some(0);
        Ok(report.is_consistent() && zero("small_t") && zero("dim_zero") && zero("bounded"))
    });
    case.check_with("presentation_invariance", || {
        // coker [F | F X] = coker F, and coker (U F) ≅ coker F for a unitary U
        let x = random::array(rng, &a, m.relations().cols(), 2);
        let redundant = ModulePresentation::new(m.relations().hstack(&m.relations().checked_mul(&x)?)?)?;
        let u = ring.unpack(&random::unitary(rng, ring.algebra()))?;
        let moved = ModulePresentation::new(u.checked_mul(m.relations())?)?;
        let d = dim_fp(&m)?;
        Ok(dim_fp(&redundant)? == d && dim_fp(&moved)? == d && moved.field_dim() == m.field_dim())
    });
    case.check_with("envelope_tensor", || {
        let p = random::projection(rng, ring.algebra());
        envelope_tensor_check(&ring, &p)
    });
    if (name == "gauss" || name == "m2" || name == "gauss_plus_m2") && n <= 2 && rng.random_bool(0.25) {
        case.check_with("lab_cross_check", || {
            let (r, lab) = m.to_lab()?;
            Ok(lab.dim() == m.field_dim()
                && goldie_torsion(&lab, &r)?.is_zero()
                && bounded_submodule(&lab, &r)?.is_zero())
        });
    }
}
