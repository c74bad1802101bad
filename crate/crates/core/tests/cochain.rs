use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spin7_core::cochain::*;
use spin7_core::linalg::ZMatrix;
use spin7_core::Error;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn coboundary_squares_to_zero_on_random_complexes() {
    let mut r = rng(1);
    for _ in 0..40 {
        let top = r.gen_range(1..=8);
        let x = random_complex(200, top, &mut r);
        assert!(x.total_cells() <= 200);
        for k in 0..top.saturating_sub(1) {
            let c = random_relative_cochain(&x, k, &mut r);
            let dd = coboundary(&coboundary(&c, &x).unwrap(), &x).unwrap();
            assert!(dd.is_zero());
            assert!(coboundary(&c, &x).unwrap().is_relative(&x));
        }
    }
}

#[test]
fn zero_maps_to_zero() {
    let x = CWPairComplex::sphere(3).unwrap();
    let c = Cochain::zero(&x, 0, Coefficients::Integers);
    assert!(coboundary(&c, &x).unwrap().is_zero());
    let too_high = Cochain::zero(&x, 5, Coefficients::Integers);
    assert!(matches!(coboundary(&too_high, &x), Err(Error::DegreeOutOfRange { .. })));
}

#[test]
fn product_cell_counts_and_boundaries() {
    let mut r = rng(2);
    for _ in 0..20 {
        let x = random_complex(60, r.gen_range(1..=6), &mut r);
        let p = product_with_interval(&x).unwrap();
        for k in 0..=x.top_dim() + 1 {
            let below = if k == 0 { 0 } else { x.cell_count(k - 1) };
            assert_eq!(p.complex.cell_count(k), below + 2 * x.cell_count(k));
        }
        // Validation inside the constructor already checks d d = 0; restate it.
        for k in 2..=p.complex.top_dim() {
            assert!((p.complex.boundary(k - 1) * p.complex.boundary(k)).is_zero());
        }
    }
}

#[test]
fn cross_product_coboundary_formulas() {
    let mut r = rng(3);
    for _ in 0..20 {
        let x = random_complex(50, r.gen_range(2..=6), &mut r);
        let p = product_with_interval(&x).unwrap();
        for k in 0..x.top_dim() {
            let c = random_relative_cochain(&x, k, &mut r);
            let dc = coboundary(&c, &x).unwrap();
            let sign = if k % 2 == 0 { 1 } else { -1 };

            let lhs = coboundary(&cross_with_interval(&c, IntervalGenerator::Bar, &p).unwrap(), &p.complex).unwrap();
            assert_eq!(lhs, cross_with_interval(&dc, IntervalGenerator::Bar, &p).unwrap());

            let lhs = coboundary(&cross_with_interval(&c, IntervalGenerator::Zero, &p).unwrap(), &p.complex).unwrap();
            let rhs = cross_with_interval(&dc, IntervalGenerator::Zero, &p)
                .unwrap()
                .try_sub(&cross_with_interval(&c, IntervalGenerator::Bar, &p).unwrap().scale(sign))
                .unwrap();
            assert_eq!(lhs, rhs);

            let lhs = coboundary(&cross_with_interval(&c, IntervalGenerator::One, &p).unwrap(), &p.complex).unwrap();
            let rhs = cross_with_interval(&dc, IntervalGenerator::One, &p)
                .unwrap()
                .try_add(&cross_with_interval(&c, IntervalGenerator::Bar, &p).unwrap().scale(sign))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn zero_cross_bar_is_zero() {
    let x = CWPairComplex::sphere(2).unwrap();
    let p = product_with_interval(&x).unwrap();
    let c = Cochain::zero(&x, 2, Coefficients::Integers);
    assert!(cross_with_interval(&c, IntervalGenerator::Bar, &p).unwrap().is_zero());
}

#[test]
fn difference_cochain_identity() {
    let mut r = rng(4);
    for _ in 0..25 {
        let x = random_complex(80, r.gen_range(2..=7), &mut r);
        let p = product_with_interval(&x).unwrap();
        let side = p.side_pair();
        for k in 0..x.top_dim() {
            let o_hat = random_relative_cocycle(&side, k + 1, &mut r);
            let restrict = |generator| {
                let values = (0..x.cell_count(k + 1)).map(|s| o_hat.values[p.index(k + 1, s, generator)].clone()).collect();
                Cochain::new(k + 1, Coefficients::Integers, values).unwrap()
            };
            let o0 = restrict(IntervalGenerator::Zero);
            let o1 = restrict(IntervalGenerator::One);
            let d = difference_cochain(&o_hat, &o0, &o1, &p).unwrap();
            assert!(d.is_relative(&x));
            let expected = o0.try_sub(&o1).unwrap().scale(if k % 2 == 1 { 1 } else { -1 });
            assert_eq!(coboundary(&d, &x).unwrap(), expected);
        }
    }
}

#[test]
fn difference_cochain_of_zero_data() {
    let x = CWPairComplex::disk_rel_boundary(8).unwrap();
    let p = product_with_interval(&x).unwrap();
    let o_hat = Cochain::zero(&p.complex, 8, PI7_S7);
    let o = Cochain::zero(&x, 8, PI7_S7);
    let d = difference_cochain(&o_hat, &o, &o, &p).unwrap();
    assert!(d.is_zero());
    assert_eq!(d.degree, 7);
}

#[test]
fn difference_cochain_rejects_residue() {
    let x = CWPairComplex::sphere(2).unwrap();
    let p = product_with_interval(&x).unwrap();
    let o = Cochain::from_i64(2, Coefficients::Integers, &[1]).unwrap();
    let o_hat = cross_with_interval(&o, IntervalGenerator::Zero, &p).unwrap();
    let zero = Cochain::zero(&x, 2, Coefficients::Integers);
    assert!(matches!(difference_cochain(&o_hat, &zero, &zero, &p), Err(Error::Residue(_))));
    assert!(difference_cochain(&o_hat, &o, &zero, &p).unwrap().is_zero());
}

#[test]
fn smith_form_agrees_with_mod_p_ranks() {
    let mut r = rng(5);
    for _ in 0..150 {
        let x = random_complex(30, r.gen_range(1..=5), &mut r);
        for p in [2u64, 3] {
            for k in 0..=x.top_dim() {
                let snf = relative_cohomology(&x, k, Coefficients::Mod(p)).unwrap();
                assert!(snf.torsion.iter().all(|d| d == &BigInt::from(p)));
                assert_eq!(snf.summands(), cohomology_dim_mod_p(&x, k, p), "k={k} p={p}\n{}", x.to_text());
            }
        }
    }
}

#[test]
fn sphere_and_disk_cohomology() {
    let s7 = CWPairComplex::sphere(7).unwrap();
    for k in 0..=7 {
        let g = relative_cohomology(&s7, k, PI7_S7).unwrap();
        assert_eq!(g.free_rank, usize::from(k == 0 || k == 7));
    }
    let d8 = CWPairComplex::disk_rel_boundary(8).unwrap();
    assert_eq!(relative_cohomology(&d8, 8, PI7_S7).unwrap().to_string(), "Z");
    assert_eq!(relative_cohomology(&d8, 0, PI7_S7).unwrap().to_string(), "0");
}

#[test]
fn non_square_boundary_with_torsion() {
    // A 2-cell attached with degree 4 to a circle.
    let x = CWPairComplex::absolute(
        vec![1, 1, 1],
        vec![ZMatrix::zeros(0, 1), ZMatrix::zeros(1, 1), ZMatrix::from_i64(1, 1, &[4])],
    )
    .unwrap();
    assert_eq!(relative_cohomology(&x, 2, Coefficients::Integers).unwrap().to_string(), "Z/4");
    assert_eq!(relative_cohomology(&x, 2, Coefficients::Mod(6)).unwrap().to_string(), "Z/2");
    assert_eq!(relative_cohomology(&x, 1, Coefficients::Mod(6)).unwrap().to_string(), "Z/2");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cohomology_is_invariant_under_relabeling(seed in any::<u64>(), top in 1usize..6) {
        let mut r = rng(seed);
        let x = random_complex(40, top, &mut r);
        let y = shuffle_cells(&x, &mut r);
        for k in 0..=top {
            prop_assert_eq!(
                relative_cohomology(&x, k, Coefficients::Integers).unwrap(),
                relative_cohomology(&y, k, Coefficients::Integers).unwrap()
            );
        }
    }

    #[test]
    fn text_format_roundtrips(seed in any::<u64>(), top in 1usize..8) {
        let x = random_complex(50, top, &mut rng(seed));
        prop_assert_eq!(CWPairComplex::parse(&x.to_text()).unwrap(), x);
    }
}
