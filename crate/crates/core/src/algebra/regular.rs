use super::{linearize, AlgElement, AlgebraDescriptor};
use crate::error::{Error, Result};
use crate::linalg::{solve_right, Mat};

/// Some `y` with `x y x = x`, found by solving the linear system `y -> x y x`.
pub fn regular_witness(x: &AlgElement) -> Result<AlgElement> {
    let algebra = x.algebra();
    let map = linearize(algebra, 1, algebra.field_dim(), |args| {
        (&(x * &args[0]) * x).to_coords()
    });
    let rhs = Mat::column_vector(algebra.tower(), x.to_coords());
    let fail = || Error::RegularityCertificateFailure(format!("{x:?}"));
    let sol = solve_right(&map, &rhs)?.ok_or_else(fail)?;
    let coords: Vec<_> = (0..sol.rows()).map(|i| sol.get(i, 0).clone()).collect();
    let y = AlgElement::from_coords(algebra, &coords)?;
    if &(x * &y) * x != *x {
        return Err(fail());
    }
    Ok(y)
}

/// Multi-matrix algebras are semisimple, hence regular, and their regular ring
/// is the algebra itself. The answer is certified on every matrix unit and on
/// `extra` elements.
pub fn is_regular_and_q(
    algebra: &AlgebraDescriptor,
    extra: &[AlgElement],
) -> Result<(bool, AlgebraDescriptor)> {
    for x in AlgElement::matrix_units(algebra).iter().chain(extra) {
        regular_witness(x)?;
    }
    Ok((true, algebra.clone()))
}
