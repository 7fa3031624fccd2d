//! Multi-matrix *-algebras, their centers and matrix rings over them.

mod center;
mod element;
mod matrix_ring;
mod regular;

pub use center::{center_coords, center_embed, central_projections, support_value, CenterValue};
pub use element::{linearize, AlgElement, AlgebraDescriptor};
pub use matrix_ring::{AlgArray, MatrixRing};
pub use regular::{is_regular_and_q, regular_witness};

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::exactfield::{rat, Scalar, ScalarTower};
    use crate::random;

    fn alg(name: &str) -> AlgebraDescriptor {
        AlgebraDescriptor::builtin(name).unwrap()
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(AlgebraDescriptor::new(vec![], ScalarTower::gaussian()).is_err());
        assert!(AlgebraDescriptor::new(vec![1, 0], ScalarTower::gaussian()).is_err());
        assert!(AlgebraDescriptor::builtin("nope").is_err());
    }

    #[test]
    fn unit_star_and_product_laws() {
        let a = alg("gauss_plus_m2");
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let one = AlgElement::one(&a);
        for _ in 0..50 {
            let x = random::element(&mut rng, &a);
            let y = random::element(&mut rng, &a);
            assert_eq!(&x * &one, x);
            assert_eq!(x.star().star(), x);
            // oracle: reversed product of adjoints computed blockwise by hand
            let lhs = (&x * &y).star();
            let rhs = AlgElement::from_fn(&a, |b, _| &y.block(b).adjoint() * &x.block(b).adjoint());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn mismatched_algebras_error() {
        let x = AlgElement::one(&alg("m2"));
        let y = AlgElement::one(&alg("gauss_plus_m2"));
        assert!(matches!(x.checked_mul(&y), Err(crate::Error::AlgebraMismatch(_))));
    }

    #[test]
    fn center_embedding() {
        let a = alg("gauss_plus_m2");
        let t = a.tower().clone();
        let ones = CenterValue::constant(&t, 2, &rat(1, 1));
        assert!(center_embed(&a, &ones).unwrap().is_one());

        let c = center_embed(&a, &support_value(&t, 2, 0b01)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let x = random::element(&mut rng, &a);
            assert!(c.commutes_with(&x));
        }
        assert!(c.block(1).is_zero() && c.block(0).is_identity());

        let i = Scalar::i(&t);
        let ci = center_embed(&a, &CenterValue::new(vec![i.clone(), i])).unwrap();
        assert_eq!(&ci * &ci, -&AlgElement::one(&a));
    }

    #[test]
    fn central_projection_counts_and_laws() {
        assert_eq!(central_projections(&alg("gauss")).len(), 2);
        let a = alg("gauss_plus_m2");
        let cs = central_projections(&a);
        assert_eq!(cs.len(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for c in &cs {
            assert!(c.is_projection());
            for _ in 0..10 {
                assert!(c.commutes_with(&random::element(&mut rng, &a)));
            }
        }
    }

    #[test]
    fn matrix_ring_sizes_and_round_trip() {
        let a = alg("gauss_plus_m2");
        let r1 = MatrixRing::new(&a, 1).unwrap();
        assert_eq!(r1.algebra().block_sizes(), a.block_sizes());
        let r2 = MatrixRing::new(&a, 2).unwrap();
        assert_eq!(r2.algebra().block_sizes(), &[2, 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let x = AlgArray::from_fn(&a, 2, 2, |_, _| random::element(&mut rng, &a));
            let y = AlgArray::from_fn(&a, 2, 2, |_, _| random::element(&mut rng, &a));
            let px = r2.pack(&x).unwrap();
            assert_eq!(r2.unpack(&px).unwrap(), x);
            let py = r2.pack(&y).unwrap();
            assert_eq!(r2.pack(&x.checked_mul(&y).unwrap()).unwrap(), &px * &py);
            assert_eq!(r2.pack(&x.star()).unwrap(), px.star());
        }
    }

    #[test]
    fn regularity_certificates() {
        let (ok, q) = is_regular_and_q(&alg("gauss"), &[]).unwrap();
        assert!(ok);
        assert_eq!(q, alg("gauss"));

        let m2 = alg("m2");
        let e12 = AlgElement::matrix_unit(&m2, 0, 0, 1);
        let e21 = AlgElement::matrix_unit(&m2, 0, 1, 0);
        assert_eq!(&(&e12 * &e21) * &e12, e12);
        let y = regular_witness(&e12).unwrap();
        assert_eq!(&(&e12 * &y) * &e12, e12);

        let big = AlgebraDescriptor::new(vec![1, 2, 3], ScalarTower::gaussian()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let extra: Vec<_> = (0..100).map(|_| random::element(&mut rng, &big)).collect();
        assert!(is_regular_and_q(&big, &extra).unwrap().0);
    }
}
