use super::*;

fn el(a: &AlgebraSpec, s: &str) -> LieElement {
    a.parse_element(s, 6).unwrap()
}

#[test]
fn mccool_actions() {
    let a = AlgebraSpec::mccool_plus(3).unwrap();
    assert!(a.bracket(&el(&a, "B[1,2]"), &el(&a, "B[1,3]"), 6).unwrap().is_zero());
    assert_eq!(a.bracket(&el(&a, "B[1,2]"), &el(&a, "B[2,3]"), 6).unwrap(), el(&a, "-[B[1,3],B[2,3]]"));
    assert_eq!(a.bracket(&el(&a, "B[1,3]"), &el(&a, "B[2,3]"), 6).unwrap(), el(&a, "[B[1,3],B[2,3]]"));
    let basis: Vec<String> = a.weight_basis(2).iter().map(|k| a.key_name(k)).collect();
    assert_eq!(basis, ["[B[1,3],B[2,3]]"]);
}

#[test]
fn weight_bases() {
    let a = AlgebraSpec::mccool_plus(3).unwrap();
    let names: Vec<String> = a.weight_basis(1).iter().map(|k| a.key_name(k)).collect();
    assert_eq!(names, ["B[1,2]", "B[1,3]", "B[2,3]"]);
    let m = AlgebraSpec::monomial_orbit(2, 2).unwrap();
    let names: Vec<String> = m.weight_basis(1).iter().map(|k| m.key_name(k)).collect();
    assert_eq!(names, ["Z[1]", "Z[2]", "B[1,2;1]", "B[1,2;2]"]);
}

#[test]
fn monomial_first_relation() {
    let m = AlgebraSpec::monomial_orbit(2, 2).unwrap();
    let got = m.bracket(&el(&m, "Z[1]"), &el(&m, "B[1,2;1]"), 6).unwrap();
    assert_eq!(got, el(&m, "-[Z[2],B[1,2;1]] - [B[1,2;2],B[1,2;1]]"));
    // [Z1 + Z2 + B1 + B2, Y] = 0 for every top generator Y
    let d = el(&m, "Z[1] + Z[2] + B[1,2;1] + B[1,2;2]");
    for y in ["Z[2]", "B[1,2;1]", "B[1,2;2]"] {
        assert!(m.bracket(&d, &el(&m, y), 6).unwrap().is_zero(), "{y}");
    }
}

#[test]
fn dk_delta_is_central() {
    for n in 2..=5 {
        let a = AlgebraSpec::drinfeld_kohno(n).unwrap();
        let d = a.sum_of(&braid_names(n), 4).unwrap();
        for g in a.generators() {
            assert!(a.bracket(&d, &a.generator(&g, 4).unwrap(), 4).unwrap().is_zero());
        }
    }
}

#[test]
fn surface_with_one_label_is_dk() {
    let s = AlgebraSpec::surface_orbit(1, 4).unwrap();
    let d = AlgebraSpec::drinfeld_kohno(4).unwrap();
    for (g, t, v) in d.action_entries() {
        let sg = d.gen_name(g).replace(']', ";0]");
        let st = d.gen_name(t).replace(']', ";0]");
        let (sl, _) = s.gen_ref(&st).unwrap();
        let gr = s.gen_ref(&sg).unwrap();
        let tr = s.gen_ref(&st).unwrap();
        assert_eq!(sl, t.0);
        let got = s.action_entries().find(|e| e.0 == gr && e.1 == tr).map(|e| e.2.clone()).unwrap();
        assert_eq!(&got, v);
    }
}

#[test]
fn consistency_of_small_families() {
    let specs = [
        AlgebraSpec::mccool_plus(4).unwrap(),
        AlgebraSpec::drinfeld_kohno(4).unwrap(),
        AlgebraSpec::monomial_orbit(2, 3).unwrap(),
        AlgebraSpec::surface_orbit(2, 3).unwrap(),
        AlgebraSpec::poison_model().unwrap(),
    ];
    for a in &specs {
        let r = a.validate_consistency(4).unwrap();
        assert!(r.passed(), "{}: {:?}", a.family(), r.jacobi_violations.first());
        assert!(r.exhaustive);
    }
}

#[test]
fn corrupted_action_is_detected() {
    let a = AlgebraSpec::mccool_plus(4).unwrap();
    let bad = a.with_action("B[1,2]", "B[2,3]", &a.zero(2)).unwrap();
    let r = bad.validate_consistency(4).unwrap();
    assert!(!r.passed());
    assert!(r
        .jacobi_violations
        .iter()
        .any(|v| v.triple == ["B[1,2]", "B[2,3]", "B[3,4]"].map(String::from)));
}

#[test]
fn domain_mismatch() {
    let a = AlgebraSpec::mccool_plus(3).unwrap();
    let b = AlgebraSpec::drinfeld_kohno(3).unwrap();
    let x = a.generator("B[1,2]", 3).unwrap();
    let y = b.generator("B[1,2]", 3).unwrap();
    assert_eq!(a.bracket(&x, &y, 3), Err(LieError::DomainMismatch));
}

#[test]
fn duplicate_names_rejected() {
    let f = AlgebraSpec::free(2).unwrap();
    assert!(matches!(AlgebraSpec::product(&f, &f), Err(LieError::DuplicateGenerator(_))));
    assert!(AlgebraSpec::mccool_plus(1).is_err());
    assert!(AlgebraSpec::surface_orbit(0, 3).is_err());
}

#[test]
fn truncation_drops_terms() {
    let a = AlgebraSpec::free(2).unwrap();
    let x = a.generator("x1", 1).unwrap();
    let y = a.generator("x2", 1).unwrap();
    assert!(a.bracket(&x, &y, 1).unwrap().is_zero());
    assert!(!a.bracket(&x, &y, 2).unwrap().is_zero());
}

#[test]
fn parse_errors() {
    let a = AlgebraSpec::mccool_plus(3).unwrap();
    assert!(a.parse_element("", 3).is_err());
    assert!(a.parse_element("B[1,2] +", 3).is_err());
    assert!(matches!(a.parse_element("Q", 3), Err(LieError::UnknownGenerator(_))));
    assert!(a.parse_element("0", 3).unwrap().is_zero());
    assert_eq!(a.parse_element("2*B[1,2] - B[1,2]", 3).unwrap(), a.generator("B[1,2]", 3).unwrap());
}

#[test]
fn graded_dimensions() {
    use crate::lyndon::witt_dimension;
    for n in 2..=5 {
        let a = AlgebraSpec::mccool_plus(n).unwrap();
        for q in 1..=5 {
            let expected: u128 = (2..=n).map(|k| witt_dimension(k - 1, q).unwrap()).sum();
            assert_eq!(a.weight_dimension(q).unwrap(), expected);
            assert_eq!(a.weight_basis(q).len() as u128, expected);
        }
    }
    for (r, n) in [(1, 3), (2, 3), (3, 2)] {
        let a = AlgebraSpec::monomial_orbit(r, n).unwrap();
        for q in 1..=4 {
            let expected: u128 = (0..n).map(|j| witt_dimension(r * j + 1, q).unwrap()).sum();
            assert_eq!(a.weight_dimension(q).unwrap(), expected);
        }
    }
}

#[test]
fn json_document() {
    let a = AlgebraSpec::mccool_plus(3).unwrap();
    let doc = a.to_json();
    assert_eq!(doc["family"], "mccool_plus");
    assert_eq!(doc["layers"][1]["generators"][0], "B[1,3]");
    assert_eq!(doc["action"][0]["actor"], "B[1,2]");
    assert_eq!(doc["action"][0]["value"][0][0], -1);
}
