//! The monoid of projection classes, the map to classes over `Q = A` and its
//! inverse `L -> L ∩ A^n`, and `K_0(A) = Z^B` with cancellation.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::Case;
use crate::algebra::{AlgebraDescriptor, MatrixRing};
use crate::dimension::{dim_fgp, iso_classify};
use crate::io::element_to_json;
use crate::k0::{direct_sum, k0_group, mu_and_inverse, proj_monoid, stably_equal, K0Element, ProjClass};
use crate::projections::Projection;
use crate::random;

const ALGEBRAS: [&str; 4] = ["gauss", "m2", "gauss_plus_m2", "m2_plus_m3"];

/// Block ranks read off traces: a projection's trace is its rank.
fn traced_ranks(p: &Projection) -> Vec<i64> {
    p.element()
        .blocks()
        .iter()
        .map(|m| {
            let t = m.trace();
            let r = t.as_rational().expect("trace of a projection is rational");
            i64::try_from(r.to_integer()).expect("small rank")
        })
        .collect()
}

pub(super) fn global(case: &mut Case) {
    let gm = AlgebraDescriptor::builtin("gauss_plus_m2").expect("builtin");
    match proj_monoid(&gm, 1) {
        Ok(classes) => {
            case.check("monoid_count", Ok(classes.len() == 6));
            case.fact("monoid_count_gauss_plus_m2_nmax_1", json!(classes.len()));
        }
        Err(e) => case.check("monoid_count", Err(e)),
    }
    for name in ALGEBRAS {
        let a = AlgebraDescriptor::builtin(name).expect("builtin");
        for n_max in 1..=2 {
            // (r_b) with 0 <= r_b <= n_max n_b
            let expected: usize = a.block_sizes().iter().map(|nb| n_max * nb + 1).product();
            case.check_with("monoid_count", || Ok(proj_monoid(&a, n_max)?.len() == expected));
        }
        let g = k0_group(&a);
        let one = Projection::one(&a);
        case.check(
            "k0_group",
            Ok(g.rank == a.num_blocks() && g.unit_class == traced_ranks(&one)),
        );
    }
    case.fact("k0_rank_gauss_plus_m2", json!(k0_group(&gm).rank));
}

pub(super) fn case(rng: &mut ChaCha8Rng, case: &mut Case) {
    let name = ALGEBRAS[rng.random_range(0..ALGEBRAS.len())];
    let a = AlgebraDescriptor::builtin(name).expect("builtin");
    let n = rng.random_range(1..=2);
    let ring = MatrixRing::new(&a, n).expect("n > 0");
    let p = random::projection(rng, ring.algebra());
    let q = if rng.random_bool(0.3) {
        random::projection_with_ranks(rng, ring.algebra(), &p.ranks())
    } else {
        random::projection(rng, ring.algebra())
    };
    let r = random::projection(rng, ring.algebra());
    case.record("algebra", json!(name));
    case.record("n", json!(n));
    case.record("p", element_to_json(p.element()));
    case.record("q", element_to_json(q.element()));

    case.check_with("class_dimension", || {
        let c = ProjClass::of(&ring, &p)?;
        Ok(c.dim_vector() == dim_fgp(&ring, &p)? && c.ranks().iter().map(|&x| x as i64).eq(traced_ranks(&p)))
    });
    case.check_with("mu_homomorphism", || {
        let (ring_s, s) = direct_sum(&ring, &p, &ring, &q)?;
        let lhs = mu_and_inverse(&ring_s, &s)?.class_over_q;
        let rhs = mu_and_inverse(&ring, &p)?
            .class_over_q
            .add(&mu_and_inverse(&ring, &q)?.class_over_q)?;
        Ok(lhs.ranks() == rhs.ranks())
    });
    case.check_with("round_trip", || {
        let mu = mu_and_inverse(&ring, &p)?;
        Ok(mu.round_trip == p && mu.class_over_q == ProjClass::of(&ring, &p)?)
    });
    case.check_with("bijection", || {
        let classes = proj_monoid(&a, 2)?;
        let c1 = &classes[rng.random_range(0..classes.len())];
        let c2 = &classes[rng.random_range(0..classes.len())];
        let image = |c: &ProjClass| -> crate::Result<ProjClass> {
            let (ring, rep) = c.representative()?;
            Ok(mu_and_inverse(&ring, &rep)?.class_over_q)
        };
        let (m1, m2) = (image(c1)?, image(c2)?);
        Ok(m1 == *c1 && m2 == *c2 && (m1 == m2) == (c1 == c2))
    });
    case.check_with("cancellation", || {
        let (ring_pr, pr) = direct_sum(&ring, &p, &ring, &r)?;
        let (ring_qr, qr) = direct_sum(&ring, &q, &ring, &r)?;
        let sums_equal = iso_classify(&ring_pr, &pr, &ring_qr, &qr)?;
        let equal = iso_classify(&ring, &p, &ring, &q)?;
        Ok(sums_equal == equal && equal == (traced_ranks(&p) == traced_ranks(&q)))
    });
    case.check_with("stably_equal", || {
        let classes = proj_monoid(&a, 1)?;
        let pick = |rng: &mut ChaCha8Rng| classes[rng.random_range(0..classes.len())].clone();
        let (c1, c2, c3) = (pick(rng), pick(rng), pick(rng));
        // a fourth class chosen to make the differences agree about half the time
        let c4 = if rng.random_bool(0.5) {
            let target: Vec<i64> = c3
                .ranks()
                .iter()
                .zip(c1.ranks())
                .zip(c2.ranks())
                .map(|((&x3, &x1), &x2)| x3 as i64 - x1 as i64 + x2 as i64)
                .collect();
            if target.iter().all(|&t| t >= 0) {
                ProjClass::new(&a, target.iter().map(|&t| t as usize).collect())?
            } else {
                pick(rng)
            }
        } else {
            pick(rng)
        };
        let expected = c1
            .ranks()
            .iter()
            .zip(c2.ranks())
            .map(|(&x, &y)| x as i64 - y as i64)
            .eq(c3
                .ranks()
                .iter()
                .zip(c4.ranks())
                .map(|(&x, &y)| x as i64 - y as i64));
        Ok(stably_equal(&c1, &c2, &c3, &c4)? == expected)
    });
    case.check_with("k0_normal_form", || {
        let x = K0Element::difference(&ProjClass::of(&ring, &p)?, &ProjClass::of(&ring, &q)?)?;
        let y = K0Element::class(&ProjClass::of(&ring, &r)?);
        Ok(x.add(&x.neg()).is_zero() && x.add(&y).add(&y.neg()) == x && x.numerators.len() == a.num_blocks())
    });
}
