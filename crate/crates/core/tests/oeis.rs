mod common;

use std::collections::BTreeSet;

use riordan::families::chebyshev::{big_p_array, big_p_table, cheb_array, cheb_table, p_array, p_table};
use riordan::oeis::{builtin_fixtures, check_family_tags, oeis_check, oeis_check_triangle, parse_fixtures};
use riordan::fps::Series;

const TRIANGLES: [&str; 3] = ["A049310", "A111125", "A156308"];

#[test]
fn bundled_fixtures_are_well_formed() {
    let fx = builtin_fixtures();
    assert!(fx.warnings.is_empty());
    assert_eq!(fx.len(), 42);
    for f in fx.iter() {
        let min = if TRIANGLES.contains(&f.id.as_str()) { 78 } else { 8 };
        assert!(f.terms.len() >= min, "{}", f.id);
    }
}

#[test]
fn every_switched_on_tag_matches() {
    let fx = builtin_fixtures();
    let mut passed = BTreeSet::new();
    for inst in common::tagged_instances(24) {
        for check in check_family_tags(&inst, &fx) {
            let report = check.report.as_ref().unwrap_or_else(|| panic!("{} {}: missing", inst.name, check.tag.id));
            assert!(check.passed(), "{} {:?}: {report}", inst.name, inst.params);
            assert!(report.compared >= 8, "{} {}", inst.name, check.tag.id);
            passed.insert(check.tag.id.clone());
        }
    }
    assert_eq!(passed.len(), 39);
}

#[test]
fn coefficient_triangles_match() {
    let fx = builtin_fixtures();
    let tables = [cheb_table(12), big_p_table(12), p_table(12)];
    for (id, table) in TRIANGLES.iter().zip(&tables) {
        let report = oeis_check_triangle(table, fx.get(id).unwrap());
        assert!(report.passed(), "{report}");
        assert_eq!(report.compared, 78);
    }
    assert_eq!(cheb_array(12).build_matrix(12).unwrap(), tables[0]);
    assert_eq!(big_p_array(12).build_matrix(12).unwrap(), tables[1]);
    assert_eq!(p_array(12).build_matrix(12).unwrap(), tables[2]);
}

#[test]
fn shift_and_egf_flags() {
    let set = parse_fixtures("A000142 0 1,1,2,6,24,120\nA000012 0 1,1,1,1,1,1\n").unwrap();
    let e = Series::z(6).exp().unwrap();
    assert!(oeis_check(&e, set.get("A000012").unwrap(), 0, true).passed());
    assert!(oeis_check(&e, set.get("A000142").unwrap(), 0, true).first_mismatch.is_some());
    let geo = Series::from_ints(&[1, -1]).extend_with_zeros(6).recip().unwrap();
    assert!(oeis_check(&geo, set.get("A000142").unwrap(), 0, true).passed());
    let geo = Series::from_ints(&[0, 1, 1, 1, 1, 1, 1, 1]);
    let r = oeis_check(&geo, set.get("A000012").unwrap(), 1, false);
    assert!(r.passed());
    assert_eq!(r.compared, 6);
    let r = oeis_check(&geo, set.get("A000012").unwrap(), 0, false);
    assert_eq!(r.first_mismatch.unwrap().index, 0);
}

#[test]
fn no_overlap_is_not_a_pass() {
    let set = parse_fixtures("A000012 0 1,1,1").unwrap();
    let r = oeis_check(&Series::one(2), set.get("A000012").unwrap(), 10, false);
    assert_eq!(r.compared, 0);
    assert!(!r.passed());
}
