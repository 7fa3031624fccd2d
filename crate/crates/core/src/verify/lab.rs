//! Torsion parts over random finite-dimensional algebras, and the ground
//! truth of the named examples.
//!
//! Hand computations used below:
//! - `R = F[x]/(x^2)` on the basis `1, x`: `J = (x)` and `x J = 0`, so
//!   `Soc(R_R) = (x)`. On `M = R/(x)`, `x` acts by zero, so `M Soc(R) = 0`
//!   and `Z(M) = Z_2(M) = M`. The map `1 -> x` is a nonzero morphism
//!   `M -> R`, so `bnd M = 0`.
//! - `R = T_2(F)` on the basis `e11, e12, e22`: `J = span{e12}` since it is
//!   a nilpotent ideal with semisimple quotient `F x F`. `Soc(R_R)` is
//!   `span{e11, e12}`, which has zero left annihilator in `R`, so `Z(R_R) = 0`.

use rand_chacha::ChaCha8Rng;

use super::Case;
use crate::algebra::AlgebraDescriptor;
use crate::error::Result;
use crate::exactfield::Scalar;
use crate::io::{lab_algebra_to_json, lab_module_to_json};
use crate::linalg::{Mat, Subspace};
use crate::random;
use crate::torsion_lab::{
    bounded_submodule, builtin_module, goldie_torsion, is_semisimple, radical, singular_submodule, socle,
    theory_report, FDAlgebra, FDModule,
};

fn span(r: &FDAlgebra, vs: &[&[i64]]) -> Subspace {
    let t = r.tower();
    let vectors: Vec<Mat> = vs
        .iter()
        .map(|v| Mat::column_vector(t, v.iter().map(|&x| Scalar::from_int(t, x)).collect()))
        .collect();
    Subspace::from_vectors(t, r.dim(), &vectors)
}

fn all_zero_parts(m: &FDModule, r: &FDAlgebra) -> Result<bool> {
    let report = theory_report(m, r)?;
    let zero = |name: &str| report.part(name).and_then(|p| p.is_zero) == Some(true);
    Ok(report.is_consistent()
        && report.ring_semisimple
        && ["singular", "goldie", "bounded", "lambek", "classical"]
            .iter()
            .all(|n| zero(n)))
}

pub(super) fn global(case: &mut Case) {
    case.check_with("dual_numbers", || {
        let r = FDAlgebra::builtin("dual_numbers")?;
        let reg = r.regular_module();
        let m = builtin_module(&r, "quotient_by_radical")?;
        Ok(socle(&reg, &r)? == span(&r, &[&[0, 1]])
            && radical(&r)? == span(&r, &[&[0, 1]])
            && m.dim() == 1
            && goldie_torsion(&m, &r)?.is_full()
            && bounded_submodule(&m, &r)?.is_zero())
    });
    case.check_with("upper_triangular_2", || {
        let r = FDAlgebra::builtin("upper_triangular_2")?;
        let reg = r.regular_module();
        let report = theory_report(&reg, &r)?;
        let zero = |name: &str| report.part(name).and_then(|p| p.is_zero) == Some(true);
        Ok(singular_submodule(&reg, &r)?.is_zero()
            && radical(&r)? == span(&r, &[&[0, 1, 0]])
            && !report.ring_semisimple
            && zero("singular")
            && zero("goldie")
            && zero("bounded"))
    });
    case.check_with("semisimple_builtins", || {
        let mut ok = true;
        let rings = [
            FDAlgebra::builtin("product_QQ")?,
            FDAlgebra::from_multimatrix(&AlgebraDescriptor::builtin("m2")?),
            FDAlgebra::from_multimatrix(&AlgebraDescriptor::builtin("gauss_plus_m2")?),
        ];
        for r in &rings {
            for name in ["regular", "quotient_by_radical", "socle"] {
                ok &= all_zero_parts(&builtin_module(r, name)?, r)?;
            }
        }
        Ok(ok)
    });
}

pub(super) fn case(rng: &mut ChaCha8Rng, case: &mut Case) {
    let r = random::lab_algebra(rng);
    let m = random::lab_module(rng, &r);
    case.record("algebra", lab_algebra_to_json(&r));
    case.record("module", lab_module_to_json(&m));

    let z2 = match goldie_torsion(&m, &r) {
        Ok(z2) => z2,
        Err(e) => {
            case.check("goldie_runs", Err(e));
            return;
        }
    };
    case.check_with("radical_nilpotent", || {
        let j = radical(&r)?;
        let mut ok = true;
        for v in j.basis_vectors() {
            let x: Vec<Scalar> = v.entries().to_vec();
            let mut power = x.clone();
            for _ in 1..r.dim().max(1) {
                power = r.mul(&power, &x);
            }
            ok &= power.iter().all(Scalar::is_zero);
        }
        Ok(ok && (j.is_zero() == is_semisimple(&r)?))
    });
    case.check_with("socle_killed_by_radical", || {
        let soc = socle(&m, &r)?;
        let j = radical(&r)?;
        let mut ok = true;
        for x in j.basis_vectors() {
            let act = m.action(x.entries());
            ok &= (&act * soc.basis()).is_zero();
        }
        Ok(ok && m.is_submodule(&soc))
    });
    case.check_with("goldie_idempotent", || {
        let q = m.quotient(&z2)?;
        Ok(goldie_torsion(&q.module, &r)?.is_zero())
    });
    case.check_with("singular_in_goldie", || {
        Ok(z2.contains(&singular_submodule(&m, &r)?))
    });
    case.check_with("singular_hereditary", || {
        let v = Mat::column_vector(
            m.tower(),
            (0..m.dim()).map(|_| random::scalar(rng, m.tower())).collect(),
        );
        let sub = m.generated(&Subspace::span(&v));
        let n = m.restrict(&sub)?;
        let zn = singular_submodule(&n, &r)?;
        let back = Subspace::span(&(sub.basis() * zn.basis()));
        Ok(back == sub.intersect(&singular_submodule(&m, &r)?))
    });
    case.check_with("bounded_quotient_torsion_free", || {
        let bnd = bounded_submodule(&m, &r)?;
        let q = m.quotient(&bnd)?;
        Ok(bounded_submodule(&q.module, &r)?.is_zero())
    });
    case.check_with("semisimple_zero", || {
        if !is_semisimple(&r)? {
            return Ok(true);
        }
        Ok(z2.is_zero() && bounded_submodule(&m, &r)?.is_zero())
    });
    case.check_with("report_consistent", || Ok(theory_report(&m, &r)?.is_consistent()));
}
