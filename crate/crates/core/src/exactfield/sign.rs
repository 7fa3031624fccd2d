use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Rational, Scalar};

const START_BITS: u32 = 16;
const MAX_BITS: u32 = 1 << 16;

/// Sign of a real scalar by interval evaluation with rational endpoints.
///
/// Each root is enclosed in `[floor(sqrt(r) 2^m) / 2^m, (floor(sqrt(r) 2^m) + 1) / 2^m]`
/// and the precision doubles until the enclosure of the value excludes zero.
/// A nonzero value always separates eventually.
pub(super) fn real_sign(a: &Scalar) -> Ordering {
    debug_assert!(a.is_real());
    if a.is_zero() {
        return Ordering::Equal;
    }
    if let Some(r) = a.as_rational() {
        return r.cmp(&Rational::zero());
    }
    let radicands = a.tower().integer_radicands();
    let mut bits = START_BITS;
    while bits <= MAX_BITS {
        let scale = BigInt::from(1) << bits;
        let scale_sq = &scale * &scale;
        let enclosures: Vec<(Rational, Rational)> = radicands
            .iter()
            .map(|r| {
                let lo = (r * &scale_sq).sqrt();
                let hi = &lo + 1;
                (Rational::new(lo, scale.clone()), Rational::new(hi, scale.clone()))
            })
            .collect();
        let mut lo_sum = Rational::zero();
        let mut hi_sum = Rational::zero();
        for (idx, c) in a.coords().iter().enumerate().step_by(2) {
            if c.is_zero() {
                continue;
            }
            let mut lo = c.clone();
            let mut hi = c.clone();
            // monomial enclosures are positive, so scaling by c orders them by sign(c)
            let mut mlo = Rational::from_integer(1.into());
            let mut mhi = mlo.clone();
            for (j, (l, h)) in enclosures.iter().enumerate() {
                if idx >> (j + 1) & 1 == 1 {
                    mlo *= l;
                    mhi *= h;
                }
            }
            if c.is_positive() {
                lo *= &mlo;
                hi *= &mhi;
            } else {
                lo *= &mhi;
                hi *= &mlo;
            }
            lo_sum += lo;
            hi_sum += hi;
        }
        if lo_sum.is_positive() {
            return Ordering::Greater;
        }
        if hi_sum.is_negative() {
            return Ordering::Less;
        }
        bits *= 2;
    }
    unreachable!("sign refinement did not separate a nonzero value from 0")
}
