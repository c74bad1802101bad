use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spin7_core::clifford::{p_iso, volume_element, Blade, Multivector};
use spin7_core::linalg::{q, q_frac, QMatrix};
use spin7_core::spin::*;
use spin7_core::verify::{generator_relations_hold, random_multivector};
use spin7_core::Error;

#[test]
fn relations_in_every_dimension() {
    for n in 1..=8 {
        assert!(generator_relations_hold(n).unwrap(), "n = {n}");
    }
}

#[test]
fn volume_elements() {
    for n in 1..=8 {
        let w = volume_element(n).unwrap();
        let sq = w.try_mul(&w).unwrap();
        // w_n^2 = (-1)^{n(n+1)/2} in Cl(0,n)
        let sign = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
        assert_eq!(sq, Multivector::scalar(n, q(sign)).unwrap(), "n = {n}");
    }
}

#[test]
fn mixed_dimensions_are_rejected() {
    let a = Multivector::one(7).unwrap();
    let b = Multivector::one(8).unwrap();
    assert!(matches!(a.try_mul(&b), Err(Error::DimensionMismatch { .. })));
    assert!(Multivector::generator(8, 8).is_err());
}

#[test]
fn reflections_compose_to_rotations() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 2..=8 {
        let u = Multivector::vector(&random_unit_vector(n, &mut rng)).unwrap();
        let v = Multivector::vector(&random_unit_vector(n, &mut rng)).unwrap();
        let z = SpinElement::from_vectors(&[u, v]).unwrap();
        let r = adjoint_action(&z).unwrap();
        assert!(r.matrix().is_orthogonal());
        assert!(r.matrix().determinant().is_one());
        let lifted = lift_rotation(&r);
        assert!(lifted == z || lifted == -z.clone());
    }
}

#[test]
fn lifting_rejects_reflections() {
    let m = QMatrix::from_i64(4, 4, &[-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]);
    assert!(matches!(RotationMatrix::new(m), Err(Error::Orientation)));
    let m = QMatrix::from_i64(3, 3, &[1, 1, 0, 0, 1, 0, 0, 0, 1]);
    assert!(matches!(RotationMatrix::new(m), Err(Error::NotOrthogonal)));
}

#[test]
fn unit_vectors_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 1..=8 {
        let v = random_unit_vector(n, &mut rng);
        let norm: spin7_core::linalg::Q = v.iter().map(|x| x * x).sum();
        assert_eq!(norm, q(1));
    }
    assert!(SpinElement::new(Multivector::scalar(3, q(2)).unwrap()).is_err());
    let half = Multivector::vector(&[q_frac(1, 2), q(0), q(0)]).unwrap();
    assert!(matches!(reflect(&half, &half), Err(Error::NotUnit(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_multivector(n, 5, &mut rng), random_multivector(n, 5, &mut rng), random_multivector(n, 5, &mut rng));
        prop_assert_eq!(a.try_mul(&b).unwrap().try_mul(&c).unwrap(), a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn reverse_is_an_anti_automorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_multivector(8, 6, &mut rng), random_multivector(8, 6, &mut rng));
        prop_assert_eq!(a.try_mul(&b).unwrap().reverse(), b.reverse().try_mul(&a.reverse()).unwrap());
    }

    #[test]
    fn even_embedding_is_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_multivector(7, 4, &mut rng), random_multivector(7, 4, &mut rng));
        prop_assert_eq!(p_iso(&a.try_mul(&b).unwrap()).unwrap(), p_iso(&a).unwrap().try_mul(&p_iso(&b).unwrap()).unwrap());
    }

    #[test]
    fn adjoint_is_a_homomorphism(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_spin_with(n, 2, &mut rng).unwrap();
        let b = random_spin_with(n, 2, &mut rng).unwrap();
        prop_assert_eq!(adjoint_action(&(&a * &b)).unwrap(), &adjoint_action(&a).unwrap() * &adjoint_action(&b).unwrap());
    }

    #[test]
    fn lie_lift_inverts_the_differential(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_skew(n, &mut rng);
        let x = lie_lift(&a);
        prop_assert!(x.is_homogeneous(2));
        prop_assert_eq!(infinitesimal_adjoint(&x).unwrap(), a);
    }
}

#[test]
fn blade_products_track_signs() {
    let e1 = Blade::generator(1);
    let e2 = Blade::generator(2);
    assert_eq!(e1.product(e2), (Blade::from_indices(&[1, 2]), false));
    let (b, negative) = e2.product(e1);
    assert_eq!(b, Blade::from_indices(&[1, 2]));
    assert!(negative);
}
