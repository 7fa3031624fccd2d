use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{sign, Rational, ScalarTower};
use crate::error::{Error, Result};

/// An element of a [`ScalarTower`].
///
/// Coordinates are taken over the Q-basis `i^e * prod_{j in S} sqrt(r_j)`; the
/// coordinate index has bit 0 set for the factor `i` and bit `j + 1` set when
/// `sqrt(r_j)` is present.
#[derive(Clone)]
pub struct Scalar {
    pub(super) tower: ScalarTower,
    pub(super) coords: Vec<Rational>,
}

impl Scalar {
    pub fn zero(tower: &ScalarTower) -> Self {
        Self {
            tower: tower.clone(),
            coords: vec![Rational::zero(); tower.degree()],
        }
    }

    pub fn one(tower: &ScalarTower) -> Self {
        Self::from_rational(tower, Rational::one())
    }

    pub fn i(tower: &ScalarTower) -> Self {
        let mut s = Self::zero(tower);
        s.coords[1] = Rational::one();
        s
    }

    pub fn from_rational(tower: &ScalarTower, r: Rational) -> Self {
        let mut s = Self::zero(tower);
        s.coords[0] = r;
        s
    }

    pub fn from_int(tower: &ScalarTower, n: i64) -> Self {
        Self::from_rational(tower, Rational::from_integer(n.into()))
    }

    /// `re + im * i` with rational parts.
    pub fn gaussian(tower: &ScalarTower, re: Rational, im: Rational) -> Self {
        let mut s = Self::zero(tower);
        s.coords[0] = re;
        s.coords[1] = im;
        s
    }

    /// Builds a scalar from raw coordinates; the length must equal the tower degree.
    pub fn from_coords(tower: &ScalarTower, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != tower.degree() {
            return Err(Error::ShapeMismatch(format!(
                "{} coordinates for a tower of degree {}",
                coords.len(),
                tower.degree()
            )));
        }
        Ok(Self {
            tower: tower.clone(),
            coords,
        })
    }

    pub fn tower(&self) -> &ScalarTower {
        &self.tower
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// Returns the value when the scalar is a plain rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coords[0])
    }

    /// True when every coordinate carrying the factor `i` vanishes.
    pub fn is_real(&self) -> bool {
        self.coords.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn real_part(&self) -> Self {
        let mut s = self.clone();
        for c in s.coords.iter_mut().skip(1).step_by(2) {
            *c = Rational::zero();
        }
        s
    }

    pub fn imag_part(&self) -> Self {
        let mut s = Self::zero(&self.tower);
        for idx in (1..self.coords.len()).step_by(2) {
            s.coords[idx - 1] = self.coords[idx].clone();
        }
        s
    }

    /// Complex conjugation: `i -> -i`, every adjoined root fixed.
    pub fn conj(&self) -> Self {
        self.flip(1)
    }

    /// Applies the Galois automorphism negating the basis factor at `bit`.
    fn flip(&self, bit: usize) -> Self {
        let mut s = self.clone();
        for (idx, c) in s.coords.iter_mut().enumerate() {
            if idx & bit != 0 {
                *c = -c.clone();
            }
        }
        s
    }

    /// `|a|^2 = a * conj(a)`, an element of the real subfield.
    pub fn norm_sqr(&self) -> Self {
        self * &self.conj()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse, computed by multiplying through by Galois
    /// conjugates until the denominator is rational.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut acc = Self::one(&self.tower);
        let mut b = self.clone();
        for g in 0..=self.tower.depth() {
            let c = b.flip(1 << g);
            acc = &acc * &c;
            b = &b * &c;
        }
        let denom = b.as_rational().cloned().expect("norm down the tower is rational");
        Ok(acc.scale(&denom.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        Ok(&a * &b.inv()?)
    }

    /// Strict positivity on the real subfield under the ordering where every
    /// adjoined root is positive.
    pub fn is_positive_real(&self) -> Result<bool> {
        Ok(self.real_sign()? == Ordering::Greater)
    }

    /// Sign of a real scalar.
    pub fn real_sign(&self) -> Result<Ordering> {
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        Ok(sign::real_sign(self))
    }

    /// Total order on real scalars.
    pub fn cmp_real(&self, other: &Self) -> Result<Ordering> {
        let (a, b) = self.aligned(other)?;
        (&a - &b).real_sign()
    }

    /// Re-expresses the scalar in a larger tower.
    pub fn embed(&self, target: &ScalarTower) -> Result<Self> {
        Ok(self.tower.embedding_into(target)?.apply(self))
    }

    /// Brings both operands into a common tower when one embeds in the other.
    pub fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        if self.tower == other.tower {
            Ok((self.clone(), other.clone()))
        } else if self.tower.embeds_into(&other.tower) {
            Ok((self.embed(&other.tower)?, other.clone()))
        } else if other.tower.embeds_into(&self.tower) {
            Ok((self.clone(), other.embed(&self.tower)?))
        } else {
            Err(Error::TowerMismatch(
                self.tower.to_string(),
                other.tower.to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        Ok(&a + &b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        Ok(&a - &b)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        Ok(&a * &b)
    }

    fn same_tower(&self, other: &Self) {
        assert!(
            self.tower == other.tower,
            "scalar arithmetic across towers {} and {}; embed first",
            self.tower,
            other.tower
        );
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.tower == other.tower {
            return self.coords == other.coords;
        }
        match self.aligned(other) {
            Ok((a, b)) => a.coords == b.coords,
            Err(_) => false,
        }
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.same_tower(rhs);
        Scalar {
            tower: self.tower.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.same_tower(rhs);
        Scalar {
            tower: self.tower.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.same_tower(rhs);
        let tower = &self.tower;
        let mut coords = vec![Rational::zero(); tower.degree()];
        for (a_idx, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (b_idx, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut term = a * b;
                let common_roots = (a_idx & b_idx) >> 1;
                if common_roots != 0 {
                    term *= tower.subset_product(common_roots);
                }
                // i * i = -1
                if a_idx & b_idx & 1 == 1 {
                    coords[a_idx ^ b_idx] -= term;
                } else {
                    coords[a_idx ^ b_idx] += term;
                }
            }
        }
        Scalar {
            tower: tower.clone(),
            coords,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] for a `Result`.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.same_tower(rhs);
        self * &rhs.inv().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let radicands = self.tower.integer_radicands();
        let mut first = true;
        for (idx, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut factors: Vec<String> = Vec::new();
            if idx & 1 == 1 {
                factors.push("i".into());
            }
            for (j, r) in radicands.iter().enumerate() {
                if idx >> (j + 1) & 1 == 1 {
                    factors.push(format!("sqrt({r})"));
                }
            }
            let abs = c.abs();
            let body = if factors.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                factors.join("*")
            } else {
                format!("{abs}*{}", factors.join("*"))
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{parse_scalar, rat};

    fn q() -> ScalarTower {
        ScalarTower::gaussian()
    }

    fn q2() -> ScalarTower {
        q().adjoin_sqrt(&rat(2, 1)).unwrap()
    }

    #[test]
    fn imaginary_parts_cancel() {
        let a = parse_scalar("1/2 + i", &q()).unwrap();
        let b = parse_scalar("1/2 - i", &q()).unwrap();
        assert_eq!(&a + &b, Scalar::one(&q()));
    }

    #[test]
    fn half_one_plus_i_times_conjugate() {
        // (1+i)(1-i)/4 = 2/4
        let a = Scalar::gaussian(&q(), rat(1, 2), rat(1, 2));
        assert_eq!(&a * &a.conj(), Scalar::from_rational(&q(), rat(1, 2)));
    }

    #[test]
    fn sqrt2_squared() {
        let t = q2();
        let r = t.sqrt(&rat(2, 1)).unwrap();
        assert_eq!(&r * &r, Scalar::from_int(&t, 2));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(Scalar::i(&q()).conj(), -Scalar::i(&q()));
        let r = Scalar::from_rational(&q(), rat(3, 4));
        assert_eq!(r.conj(), r);
        let t = q2();
        let a = parse_scalar("1 + i*sqrt(2)", &t).unwrap();
        assert_eq!(a.conj(), parse_scalar("1 - i*sqrt(2)", &t).unwrap());
    }

    #[test]
    fn positivity_examples() {
        assert!(Scalar::from_rational(&q(), rat(5, 3)).is_positive_real().unwrap());
        assert!(parse_scalar("sqrt(2) - 1", &q2())
            .unwrap()
            .is_positive_real()
            .unwrap());
        assert!(!parse_scalar("1 - sqrt(2)", &q2())
            .unwrap()
            .is_positive_real()
            .unwrap());
        assert!(!Scalar::zero(&q()).is_positive_real().unwrap());
        assert!(matches!(
            Scalar::i(&q()).is_positive_real(),
            Err(Error::NotReal(_))
        ));
    }

    #[test]
    fn close_call_sign() {
        // 140/99 < sqrt(2) < 99/70, gaps below 1e-4
        let t = q2();
        assert!(parse_scalar("sqrt(2) - 140/99", &t)
            .unwrap()
            .is_positive_real()
            .unwrap());
        assert!(parse_scalar("99/70 - sqrt(2)", &t)
            .unwrap()
            .is_positive_real()
            .unwrap());
        assert!(!parse_scalar("665857/470832 - sqrt(2)", &t).unwrap().is_zero());
    }

    #[test]
    fn inverse_in_deep_tower() {
        let t = q2().adjoin_sqrt(&rat(3, 1)).unwrap();
        let a = parse_scalar("1 + sqrt(2) + 2*i*sqrt(3) - 1/5*sqrt(2)*sqrt(3)", &t).unwrap();
        assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn division_by_zero() {
        let one = Scalar::one(&q());
        assert_eq!(one.checked_div(&Scalar::zero(&q())), Err(Error::DivisionByZero));
    }

    #[test]
    fn tower_mismatch() {
        let a = q().adjoin_sqrt(&rat(2, 1)).unwrap().sqrt(&rat(2, 1)).unwrap();
        let b = q().adjoin_sqrt(&rat(3, 1)).unwrap().sqrt(&rat(3, 1)).unwrap();
        assert!(matches!(a.checked_add(&b), Err(Error::TowerMismatch(..))));
        // Q(i) embeds everywhere.
        assert!(a.checked_add(&Scalar::one(&q())).is_ok());
    }

    #[test]
    fn display_round_trips() {
        let t = q2();
        for s in ["0", "-3/4", "1/2 + 1/2*i", "sqrt(2) - i", "-2*i*sqrt(2) + 7"] {
            let a = parse_scalar(s, &t).unwrap();
            assert_eq!(parse_scalar(&a.to_string(), &t).unwrap(), a, "{s}");
        }
    }
}
