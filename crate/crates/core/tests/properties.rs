use baerkit::algebra::{AlgElement, AlgebraDescriptor};
use baerkit::dimension::{center_trace, d};
use baerkit::exactfield::{rat, Rational, Scalar, ScalarTower};
use baerkit::linalg::{Mat, Subspace};
use baerkit::projections::{join, lp, meet, rp, Projection};
use baerkit::random;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tower(radicands: &[i64]) -> ScalarTower {
    let rs: Vec<Rational> = radicands.iter().map(|&r| rat(r, 1)).collect();
    ScalarTower::with_radicands(&rs).unwrap()
}

fn towers() -> impl Strategy<Value = ScalarTower> {
    prop_oneof![
        Just(tower(&[])),
        Just(tower(&[2])),
        Just(tower(&[5])),
        Just(tower(&[2, 3])),
    ]
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn scalar_in(t: ScalarTower) -> impl Strategy<Value = Scalar> {
    proptest::collection::vec(small_rational(), t.degree())
        .prop_map(move |coords| Scalar::from_coords(&t, coords).unwrap())
}

fn scalar_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    towers().prop_flat_map(|t| (scalar_in(t.clone()), scalar_in(t.clone()), scalar_in(t)))
}

fn gaussian_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Mat> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        let t = ScalarTower::gaussian();
        proptest::collection::vec(scalar_in(t.clone()), r * c).prop_map(move |xs| {
            let rows = xs.chunks(c).map(<[Scalar]>::to_vec).collect();
            Mat::from_rows(&t, rows).unwrap()
        })
    })
}

fn algebra() -> impl Strategy<Value = AlgebraDescriptor> {
    prop_oneof![
        Just("gauss"),
        Just("m2"),
        Just("gauss_plus_m2"),
        Just("m2_plus_m3"),
    ]
    .prop_map(|name| AlgebraDescriptor::builtin(name).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((a, b, c) in scalar_triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation_is_a_field_involution((a, b, _c) in scalar_triple()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        let n = a.norm_sqr();
        prop_assert!(n.is_real());
        prop_assert_eq!(n.is_zero(), a.is_zero());
        if !a.is_zero() {
            prop_assert!(n.is_positive_real().unwrap());
        }
    }

    #[test]
    fn embedding_is_a_ring_map(
        (a, b) in (scalar_in(tower(&[6])), scalar_in(tower(&[6]))),
        order in prop_oneof![Just(vec![2, 3]), Just(vec![3, 2])],
    ) {
        let target = tower(&order);
        let e = a.tower().embedding_into(&target).unwrap();
        prop_assert_eq!(e.apply(&(&a + &b)), &e.apply(&a) + &e.apply(&b));
        prop_assert_eq!(e.apply(&(&a * &b)), &e.apply(&a) * &e.apply(&b));
        prop_assert_eq!(e.apply(&a.conj()), e.apply(&a).conj());
        prop_assert_eq!(a.embed(&target).unwrap(), e.apply(&a));
    }

    #[test]
    fn rank_nullity(m in gaussian_matrix(4, 5)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!((&m * v).is_zero());
        }
        prop_assert_eq!(m.rank(), m.adjoint().rank());
    }

    #[test]
    fn subspace_basis_is_canonical(m in gaussian_matrix(4, 4), (s, _b, _c) in scalar_triple()) {
        let t = m.tower().clone();
        let s = if s.tower() == &t && !s.is_zero() { s } else { Scalar::from_int(&t, 3) };
        // reversed, rescaled and duplicated columns span the same space
        let n = m.cols();
        let mut reordered = m.select_columns(&(0..n).rev().collect::<Vec<_>>()).scale(&s);
        reordered = reordered.hstack(&m.column(0)).unwrap();
        let (u, w) = (Subspace::span(&m), Subspace::span(&reordered));
        prop_assert_eq!(u.basis(), w.basis());
        prop_assert_eq!(u.dim(), m.rank());
    }

    #[test]
    fn subspace_dimension_formula(a in gaussian_matrix(4, 3), b in gaussian_matrix(4, 3)) {
        prop_assume!(a.rows() == b.rows());
        let (u, w) = (Subspace::span(&a), Subspace::span(&b));
        let (sum, cap) = (u.sum(&w), u.intersect(&w));
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + w.dim());
        prop_assert!(sum.contains(&u) && sum.contains(&w));
        prop_assert!(u.contains(&cap) && w.contains(&cap));
    }

    #[test]
    fn projection_lattice_laws(a in algebra(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random::projection(&mut rng, &a);
        let q = random::projection(&mut rng, &a);
        let pq = meet(&[p.clone(), q.clone()]).unwrap();
        let p_or_q = join(&[p.clone(), q.clone()]).unwrap();
        prop_assert_eq!(&pq, &meet(&[q.clone(), p.clone()]).unwrap());
        prop_assert_eq!(&p_or_q, &join(&[q.clone(), p.clone()]).unwrap());
        prop_assert_eq!(&join(&[p.clone(), pq.clone()]).unwrap(), &p);
        prop_assert_eq!(&meet(&[p.clone(), p_or_q.clone()]).unwrap(), &p);
        prop_assert!(pq.le(&p).unwrap() && p.le(&p_or_q).unwrap());
        // complements reverse the order
        let dual = meet(&[p.complement(), q.complement()]).unwrap();
        prop_assert_eq!(dual.complement(), p_or_q);
        prop_assert!(p.orthogonal_to(&p.complement()).unwrap());
    }

    #[test]
    fn support_projections(a in algebra(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random::element(&mut rng, &a);
        let (r, l) = (rp(&x), lp(&x));
        prop_assert_eq!(&(&x * r.element()), &x);
        prop_assert_eq!(&(l.element() * &x), &x);
        prop_assert_eq!(rp(&x.star()), l.clone());
        prop_assert_eq!(r.ranks(), l.ranks());
    }

    #[test]
    fn dimension_is_trace_over_block_size(a in algebra(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random::projection(&mut rng, &a);
        let expected: Vec<Rational> = p
            .ranks()
            .iter()
            .zip(a.block_sizes())
            .map(|(&r, &n)| rat(r as i64, n as i64))
            .collect();
        prop_assert_eq!(d(&p).as_rationals().unwrap(), expected);
        let total = d(&p).add(&d(&p.complement())).unwrap();
        prop_assert_eq!(total, d(&Projection::one(&a)));
        prop_assert_eq!(center_trace(&AlgElement::one(&a)), d(&Projection::one(&a)));
    }
}
