//! Torsion theories over general finite-dimensional algebras: radical, socle,
//! the Goldie singular submodules `Z` and `Z_2`, and the bounded submodule.
//!
//! Essentiality is decided with the socle criterion, which is valid because
//! every algebra here is artinian: a right ideal is essential iff it contains
//! `Soc(R_R)`.

mod algebra;
mod module;

pub use algebra::FDAlgebra;
pub use module::{FDModule, Quotient};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactfield::Scalar;
use crate::linalg::{Mat, Subspace};
use crate::report::{Inclusion, TorsionPart, TorsionReport};

fn check_pair(m: &FDModule, r: &FDAlgebra) -> Result<()> {
    if m.actions().len() != r.dim() || m.tower() != r.tower() {
        return Err(Error::AlgebraMismatch(format!(
            "module with {} actions over an algebra of dimension {}",
            m.actions().len(),
            r.dim()
        )));
    }
    Ok(())
}

fn vectors_of(s: &Subspace) -> Vec<Vec<Scalar>> {
    s.basis_vectors()
        .into_iter()
        .map(|v| v.entries().to_vec())
        .collect()
}

/// Jacobson radical as the kernel of the trace form `(x, y) -> tr(L_{xy})`,
/// followed by a certificate that the result is a nilpotent two-sided ideal.
pub fn radical(r: &FDAlgebra) -> Result<Subspace> {
    let d = r.dim();
    let tower = r.tower();
    let traces: Vec<Scalar> = (0..d).map(|k| r.left_mult(&r.basis_vector(k)).trace()).collect();
    let gram = Mat::from_fn(tower, d, d, |i, j| {
        r.basis_product(i, j)
            .iter()
            .zip(&traces)
            .fold(Scalar::zero(tower), |acc, (c, t)| &acc + &(c * t))
    });
    let j = Subspace::span(&gram.transpose().kernel_matrix());
    certify_radical(r, &j)?;
    Ok(j)
}

fn certify_radical(r: &FDAlgebra, j: &Subspace) -> Result<()> {
    let jv = vectors_of(j);
    for x in &jv {
        for k in 0..r.dim() {
            let e = r.basis_vector(k);
            let both = [r.mul(x, &e), r.mul(&e, x)];
            for y in both {
                if !j.contains_vector(&Mat::column_vector(r.tower(), y)) {
                    return Err(Error::InvariantViolation(
                        "trace-form kernel is not an ideal".into(),
                    ));
                }
            }
        }
    }
    let mut power = jv.clone();
    for _ in 0..=r.dim() {
        if power.iter().all(|v| v.iter().all(Scalar::is_zero)) {
            return Ok(());
        }
        let products: Vec<Mat> = power
            .iter()
            .flat_map(|a| jv.iter().map(|b| Mat::column_vector(r.tower(), r.mul(a, b))))
            .collect();
        power = vectors_of(&Subspace::from_vectors(r.tower(), r.dim(), &products));
    }
    Err(Error::InvariantViolation(
        "trace-form kernel is not nilpotent".into(),
    ))
}

pub fn is_semisimple(r: &FDAlgebra) -> Result<bool> {
    Ok(radical(r)?.is_zero())
}

/// `Soc(M) = {m : m J = 0}`.
pub fn socle(m: &FDModule, r: &FDAlgebra) -> Result<Subspace> {
    check_pair(m, r)?;
    Ok(m.annihilated_by(&vectors_of(&radical(r)?)))
}

/// `Z(M) = {m : m Soc(R_R) = 0}`.
pub fn singular_submodule(m: &FDModule, r: &FDAlgebra) -> Result<Subspace> {
    check_pair(m, r)?;
    let soc = socle(&r.regular_module(), r)?;
    Ok(m.annihilated_by(&vectors_of(&soc)))
}

/// `Z_2(M)`, the preimage of `Z(M/Z(M))`, checked to satisfy `Z(M/Z_2(M)) = 0`.
pub fn goldie_torsion(m: &FDModule, r: &FDAlgebra) -> Result<Subspace> {
    let z = singular_submodule(m, r)?;
    let q = m.quotient(&z)?;
    let z2 = q.preimage(&singular_submodule(&q.module, r)?);
    let rest = m.quotient(&z2)?;
    if !singular_submodule(&rest.module, r)?.is_zero() {
        return Err(Error::InvariantViolation("M/Z_2(M) is singular".into()));
    }
    Ok(z2)
}

/// A basis of `Hom_R(M, R_R)` as `dim R x dim M` matrices `F` with
/// `F rho_M(e_i) = rho_R(e_i) F`.
pub fn hom_to_regular(m: &FDModule, r: &FDAlgebra) -> Result<Vec<Mat>> {
    check_pair(m, r)?;
    let tower = r.tower();
    let (d, n) = (r.dim(), m.dim());
    let reg = r.regular_module();
    let unknowns = d * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (rho, act) in m.actions().iter().zip(reg.actions()) {
        for i in 0..d {
            for c in 0..n {
                let mut row = vec![Scalar::zero(tower); unknowns];
                for t in 0..n {
                    let v = rho.get(t, c);
                    if !v.is_zero() {
                        row[i * n + t] = &row[i * n + t] + v;
                    }
                }
                for s in 0..d {
                    let v = act.get(i, s);
                    if !v.is_zero() {
                        row[s * n + c] = &row[s * n + c] - v;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Mat::zeros(tower, 0, unknowns)
    } else {
        Mat::from_rows(tower, rows)?
    };
    Ok(system
        .kernel_basis()
        .into_iter()
        .map(|v| Mat::from_fn(tower, d, n, |i, j| v.get(i * n + j, 0).clone()))
        .collect())
}

/// `bnd M`, the intersection of the kernels of all maps `M -> R_R`.
pub fn bounded_submodule(m: &FDModule, r: &FDAlgebra) -> Result<Subspace> {
    let homs = hom_to_regular(m, r)?;
    match homs
        .into_iter()
        .reduce(|acc, f| acc.vstack(&f).expect("same width"))
    {
        None => Ok(m.full()),
        Some(stacked) => Ok(Subspace::span(&stacked.kernel_matrix())),
    }
}

/// A functional `lambda` whose form `(a, b) -> lambda(ab)` is nondegenerate,
/// certifying that `R` is Frobenius and hence self-injective. The search tries
/// coordinate functionals, the all-ones functional and a few seeded random ones.
pub fn frobenius_functional(r: &FDAlgebra) -> Option<Vec<Scalar>> {
    let d = r.dim();
    let tower = r.tower();
    let mut candidates: Vec<Vec<Scalar>> = (0..d).map(|k| r.basis_vector(k)).collect();
    candidates.push(vec![Scalar::one(tower); d]);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..8 {
        candidates.push(
            (0..d)
                .map(|_| Scalar::from_int(tower, rng.random_range(-5..=5)))
                .collect(),
        );
    }
    candidates.into_iter().find(|lambda| {
        let form = Mat::from_fn(tower, d, d, |i, j| {
            r.basis_product(i, j)
                .iter()
                .zip(lambda)
                .fold(Scalar::zero(tower), |acc, (c, l)| &acc + &(c * l))
        });
        form.rank() == d
    })
}

const CLASSICAL_NOTE: &str = "artinian ring: regular elements are units, so classical torsion is trivial";

/// All computable torsion parts of `M`, with the inclusions that always hold
/// marked as required and the others recorded as data.
pub fn theory_report(m: &FDModule, r: &FDAlgebra) -> Result<TorsionReport> {
    check_pair(m, r)?;
    let semisimple = is_semisimple(r)?;
    let soc = socle(m, r)?;
    let z = singular_submodule(m, r)?;
    let z2 = goldie_torsion(m, r)?;
    let bnd = bounded_submodule(m, r)?;
    let nonsingular_ring = singular_submodule(&r.regular_module(), r)?.is_zero();
    let mut notes = vec![CLASSICAL_NOTE.to_string()];
    let lambek = if nonsingular_ring {
        notes.push("R is nonsingular: Lambek torsion equals Goldie torsion".into());
        Some(z2.clone())
    } else if frobenius_functional(r).is_some() {
        notes.push("R is Frobenius, hence self-injective: Lambek torsion equals bnd".into());
        Some(bnd.clone())
    } else {
        notes.push("R is neither nonsingular nor certified self-injective".into());
        None
    };
    let mut parts = vec![
        TorsionPart::sized("classical", 0, m.dim()).with_note(CLASSICAL_NOTE),
        TorsionPart::computed("socle", &soc),
        TorsionPart::computed("singular", &z),
        TorsionPart::computed("goldie", &z2),
        TorsionPart::computed("bounded", &bnd),
    ];
    parts.push(match &lambek {
        Some(l) => TorsionPart::computed("lambek", l),
        None => TorsionPart::not_computed("lambek", "needs the injective envelope of R"),
    });
    let incl = |sub: &str, a: &Subspace, sup: &str, b: &Subspace, required: bool| Inclusion {
        sub: sub.into(),
        sup: sup.into(),
        holds: b.contains(a),
        required,
    };
    let mut inclusions = vec![
        incl("singular", &z, "goldie", &z2, true),
        incl("goldie", &z2, "bounded", &bnd, false),
        incl("bounded", &bnd, "goldie", &z2, false),
    ];
    if semisimple {
        inclusions.push(Inclusion {
            sub: "goldie".into(),
            sup: "zero".into(),
            holds: z2.is_zero(),
            required: true,
        });
        inclusions.push(Inclusion {
            sub: "bounded".into(),
            sup: "zero".into(),
            holds: bnd.is_zero(),
            required: true,
        });
    }
    Ok(TorsionReport {
        module_dim: m.dim(),
        ring_semisimple: semisimple,
        parts,
        inclusions,
        notes,
    })
}

/// Named modules over an algebra: `regular`, `quotient_by_radical`,
/// `radical` and `socle` (the last two as submodules of `R_R`).
pub fn builtin_module(r: &FDAlgebra, name: &str) -> Result<FDModule> {
    let reg = r.regular_module();
    match name {
        "regular" => Ok(reg),
        "quotient_by_radical" => Ok(reg.quotient(&radical(r)?)?.module),
        "radical" => reg.restrict(&radical(r)?),
        "socle" => reg.restrict(&socle(&reg, r)?),
        _ => Err(Error::UnknownBuiltin(name.into())),
    }
}

pub const BUILTIN_MODULES: [&str; 4] = ["regular", "quotient_by_radical", "radical", "socle"];
