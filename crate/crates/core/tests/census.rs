use num_bigint::BigInt;

use spin7_core::census::*;
use spin7_core::linalg::{q, q_frac};
use spin7_core::Error;

fn closed(p1_sq: i64, p2: i64, euler: i64) -> ManifoldCharData {
    ManifoldCharData::closed("M", p1_sq, p2, euler)
}

#[test]
fn sphere_has_no_structure() {
    let s8 = ManifoldCharData::closed("S8", 0, 0, 2);
    assert_eq!(euler_positive_spinor(&s8).unwrap(), q(1));
    assert_eq!(euler_negative_spinor(&s8).unwrap(), q(-1));
    assert!(!spin7_exists(&s8).unwrap());
    assert!(matches!(count_spin7_structures(&s8, false), Err(Error::Precondition(_))));
    let report = census(&s8, false).unwrap();
    assert_eq!(report.count, StructureCount::Empty);
    assert_eq!(report.count.to_string(), "0");
}

#[test]
fn quaternionic_projective_plane() {
    let hp2 = ManifoldCharData::closed("HP2", 4, 7, 3);
    assert_eq!(euler_positive_spinor(&hp2).unwrap(), q(3));
    assert_eq!(BigInt::from(7) * &hp2.p2 - &hp2.p1_sq, BigInt::from(45));
    assert_eq!(a_hat(&hp2), q(0));
    assert!(!spin7_exists(&hp2).unwrap());
}

#[test]
fn zero_data_has_two_structures() {
    let z = closed(0, 0, 0);
    assert!(spin7_exists(&z).unwrap());
    let count = count_spin7_structures(&z, false).unwrap();
    assert_eq!(count, StructureCount::PowerOfTwo(1));
    assert_eq!(count.cardinality(), Some(BigInt::from(2)));
    assert!(count_matches_torsor(&count).unwrap());
}

#[test]
fn counting_is_gated() {
    let mut d = closed(0, 0, 0);
    d.h7_rel_rank = 3;
    assert_eq!(count_spin7_structures(&d, false).unwrap(), StructureCount::Undetermined);
    let mut d = closed(0, 0, 0);
    d.has_boundary = true;
    assert_eq!(count_spin7_structures(&d, false).unwrap(), StructureCount::Undetermined);
    assert_eq!(count_spin7_structures(&d, true).unwrap(), StructureCount::PowerOfTwo(1));
}

#[test]
fn non_spin_data_is_rejected() {
    let mut d = closed(0, 0, 0);
    d.spin = false;
    assert!(matches!(euler_positive_spinor(&d), Err(Error::Precondition(_))));
}

#[test]
fn gray_green_formula_is_linear() {
    for (p1_sq, p2, e) in [(0, 0, 2), (4, 7, 3), (768, -96, 144), (12, 5, -7)] {
        let d = closed(p1_sq, p2, e);
        let expected = q_frac(4 * p2 - p1_sq + 8 * e, 16);
        assert_eq!(euler_positive_spinor(&d).unwrap(), expected);
        assert_eq!(euler_negative_spinor(&d).unwrap(), expected - q(e));
    }
}

#[test]
fn holonomy_needs_closed_simply_connected_torsion_free() {
    let mut d = closed(768, -96, 144);
    assert!(matches!(holonomy_from_ahat(&d, false), Err(Error::Gate(_))));
    assert_eq!(holonomy_from_ahat(&d, true).unwrap(), Holonomy::Spin(7));
    d.simply_connected = false;
    assert!(matches!(holonomy_from_ahat(&d, true), Err(Error::Gate(_))));
}

#[test]
fn bundled_manifold_file_parses() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/manifolds.txt")).unwrap();
    let ms = parse_manifolds(&text).unwrap();
    let names: Vec<&str> = ms.iter().map(|m| m.name.as_str()).collect();
    assert_eq!(names, ["S8", "HP2", "T8", "joyce-type"]);
    let reports: Vec<CensusReport> = ms.iter().map(|m| census(m, false).unwrap()).collect();
    assert_eq!(reports[0].e_s_plus, q(1));
    assert_eq!(reports[1].e_s_plus, q(3));
    assert_eq!(reports[2].count, StructureCount::Undetermined);
    assert_eq!(reports[3].count.to_string(), "2");
}

#[test]
fn parse_errors_carry_line_numbers() {
    assert!(parse_manifolds("").unwrap().is_empty());
    assert!(parse_manifolds("# only a comment\n\n").unwrap().is_empty());
    match parse_manifolds("name = A\np1_sq = x\n") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    match parse_manifolds("\n\nname = A\nbogus = 1\n") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
        other => panic!("{other:?}"),
    }
}
