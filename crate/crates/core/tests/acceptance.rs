//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. All checks are exact.

use std::process::ExitCode;

use baerkit::algebra::AlgebraDescriptor;
use baerkit::exactfield::Scalar;
use baerkit::linalg::{Mat, Subspace};
use baerkit::torsion_lab::{
    bounded_submodule, builtin_module, goldie_torsion, radical, singular_submodule, socle, theory_report,
    FDAlgebra,
};
use baerkit::verify::{run_suite, SuiteReport, VerifyConfig};
use serde_json::json;

const SEED: u64 = 7;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn sweep(suite: &str, cases: usize) -> SuiteReport {
    let cfg = VerifyConfig {
        seed: SEED,
        cases,
        ..VerifyConfig::default()
    };
    run_suite(suite, &cfg).expect("known suite")
}

/// The suite passed and each named check ran at least `min` times.
fn require(report: &SuiteReport, checks: &[(&str, usize)]) -> Verdict {
    let mut problems = Vec::new();
    for (name, min) in checks {
        match report.check(name) {
            None => problems.push(format!("{name} never ran")),
            Some(c) if c.failed > 0 => problems.push(format!("{name} failed {}/{}", c.failed, c.checked)),
            Some(c) if c.checked < *min => problems.push(format!("{name} ran {} < {min}", c.checked)),
            Some(_) => {}
        }
    }
    if !report.passed {
        let failing: Vec<String> = report
            .checks
            .iter()
            .filter(|c| c.failed > 0)
            .map(|c| c.name.clone())
            .collect();
        problems.push(format!("failing checks: {}", failing.join(", ")));
        if let Some(f) = report.failures.first() {
            problems.push(format!("first failure: {}", json!(f)));
        }
    }
    let total: usize = checks
        .iter()
        .filter_map(|(n, _)| report.check(n).map(|c| c.checked))
        .sum();
    Verdict {
        passed: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} cases, {total} exact checks", report.cases)
        } else {
            problems.join("; ")
        },
    }
}

fn and(mut v: Verdict, ok: bool, what: &str) -> Verdict {
    if !ok {
        v.passed = false;
        v.detail = format!("{}; {what}", v.detail);
    }
    v
}

fn dimension_axioms() -> Verdict {
    let r = sweep("dimension", 300);
    // every case exercises both algebras
    let per_case = 2 * 300;
    let mut checks: Vec<(&str, usize)> = ["D1", "D2", "D4", "D5", "D6", "D7", "D8", "D9", "D11"]
        .iter()
        .map(|n| (*n, per_case))
        .collect();
    checks.push(("D3", per_case));
    checks.push(("D10", per_case));
    let v = require(&r, &checks);
    // 2^2 central projections in each of the two algebras
    let all_central = r.facts.get("central_projections_checked") == Some(&json!(4 + 4));
    and(v, all_central, "D3 did not cover all central projections")
}

fn lattice_calculus() -> Verdict {
    let r = sweep("lattice", 200);
    require(
        &r,
        &[
            ("inf_sup", 200),
            ("rp_contract", 200),
            ("lp_contract", 200),
            ("parallelogram", 200),
            ("matrix_ring_parallelogram", 200),
        ],
    )
}

fn closure_agreement() -> Verdict {
    let r = sweep("closure", 200);
    let v = require(&r, &[("four_way_agreement", 200), ("double_annihilator", 200)]);
    let algebras = r
        .facts
        .get("closure_algebras")
        .and_then(|a| a.as_array())
        .map_or(0, Vec::len);
    and(v, algebras >= 3, "fewer than three algebras")
}

fn splitting_ledger() -> Verdict {
    let r = sweep("split", 200);
    require(
        &r,
        &[
            ("closure_is_summand", 200),
            ("projective_part", 200),
            ("dim_additivity", 200),
            ("bounded_part_zero", 200),
            ("filtration", 200),
        ],
    )
}

fn k0_correspondence() -> Verdict {
    let r = sweep("k0", 100);
    let v = require(
        &r,
        &[
            ("monoid_count", 1),
            ("mu_homomorphism", 100),
            ("round_trip", 100),
            ("bijection", 100),
            ("cancellation", 100),
            ("stably_equal", 100),
            ("k0_group", 1),
        ],
    );
    // (r_1, r_2) in {0, 1} x {0, 1, 2}
    let six = r.facts.get("monoid_count_gauss_plus_m2_nmax_1") == Some(&json!(2 * 3));
    and(v, six, "monoid count for gauss_plus_m2 at n_max = 1 is not 6")
}

fn witnesses() -> Verdict {
    let r = sweep("witness", 100);
    require(&r, &[("witness_exact", 100), ("decision_matches_existence", 100)])
}

fn span(r: &FDAlgebra, vs: &[&[i64]]) -> Subspace {
    let t = r.tower();
    let vectors: Vec<Mat> = vs
        .iter()
        .map(|v| Mat::column_vector(t, v.iter().map(|&x| Scalar::from_int(t, x)).collect()))
        .collect();
    Subspace::from_vectors(t, r.dim(), &vectors)
}

/// Hand computations:
/// - `F[x]/(x^2)`, basis `1, x`: the radical `(x)` squares to zero, so it is
///   the socle of `R_R`. `R/(x)` is killed by `x`, so it is singular and
///   `Z_2 = R/(x)`; `1 -> x` embeds it in `R`, so `bnd = 0`.
/// - `T_2(F)`, basis `e11, e12, e22`: `J = span{e12}`; the socle
///   `span{e11, e12}` has zero left annihilator, so `Z(R_R) = 0`.
fn lab_ground_truth() -> Verdict {
    let mut problems = Vec::new();
    let mut ground = || -> baerkit::Result<()> {
        let dual = FDAlgebra::builtin("dual_numbers")?;
        let reg = dual.regular_module();
        let quotient = builtin_module(&dual, "quotient_by_radical")?;
        if socle(&reg, &dual)? != span(&dual, &[&[0, 1]]) {
            problems.push("Soc(R) != (x)".to_string());
        }
        if !goldie_torsion(&quotient, &dual)?.is_full() {
            problems.push("Z_2(R/(x)) != R/(x)".to_string());
        }
        if !bounded_submodule(&quotient, &dual)?.is_zero() {
            problems.push("bnd(R/(x)) != 0".to_string());
        }
        let t2 = FDAlgebra::builtin("upper_triangular_2")?;
        if !singular_submodule(&t2.regular_module(), &t2)?.is_zero() {
            problems.push("Z(T_2) != 0".to_string());
        }
        if radical(&t2)? != span(&t2, &[&[0, 1, 0]]) {
            problems.push("rad(T_2) != span{e12}".to_string());
        }
        let semisimple = [
            FDAlgebra::builtin("product_QQ")?,
            FDAlgebra::from_multimatrix(&AlgebraDescriptor::builtin("gauss_plus_m2")?),
        ];
        for r in &semisimple {
            let report = theory_report(&r.regular_module(), r)?;
            let nonzero: Vec<&str> = report
                .parts
                .iter()
                .filter(|p| p.name != "socle" && p.is_zero == Some(false))
                .map(|p| p.name.as_str())
                .collect();
            if !nonzero.is_empty() {
                problems.push(format!("semisimple ring with nonzero parts {nonzero:?}"));
            }
        }
        Ok(())
    };
    if let Err(e) = ground() {
        problems.push(e.to_string());
    }
    let r = sweep("lab", 100);
    let v = require(
        &r,
        &[
            ("dual_numbers", 1),
            ("upper_triangular_2", 1),
            ("semisimple_builtins", 1),
            ("goldie_idempotent", 100),
            ("bounded_quotient_torsion_free", 100),
        ],
    );
    and(v, problems.is_empty(), &problems.join("; "))
}

fn real_vs_central() -> Verdict {
    let r = sweep("realdim", 200);
    // three weight vectors per module
    require(
        &r,
        &[
            ("real_zero_iff_central_zero", 3 * 200),
            ("central_zero_iff_module_zero", 200),
        ],
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("dimension axioms", dimension_axioms),
        ("lattice and annihilator calculus", lattice_calculus),
        ("closure agreement", closure_agreement),
        ("splitting ledger", splitting_ledger),
        ("K0 correspondence", k0_correspondence),
        ("witnesses", witnesses),
        ("lab ground truth", lab_ground_truth),
        ("real versus central dimension", real_vs_central),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let v = f();
        all &= v.passed;
        let status = if v.passed { "PASS" } else { "FAIL" };
        println!("criterion {} {name}: {status} ({})", i + 1, v.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
