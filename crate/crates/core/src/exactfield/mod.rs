//! Exact scalars: rationals, Gaussian rationals and quadratic towers
//! Q(i)(sqrt r_1, ..., sqrt r_k) with conjugation and the ordering that makes
//! every adjoined root positive.

mod parse;
mod scalar;
mod sign;
mod tower;

pub use parse::{parse_scalar, scan_radicands};
pub use scalar::Scalar;
pub use tower::{rational_sqrt, ScalarTower, TowerEmbedding};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// `n / d` as a [`Rational`]. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `p` or `p/q`.
pub fn parse_rational(src: &str) -> crate::Result<Rational> {
    let s = parse_scalar(src, &ScalarTower::gaussian())?;
    s.as_rational().cloned().ok_or(crate::Error::Parse {
        pos: 0,
        msg: format!("`{src}` is not a rational"),
    })
}
