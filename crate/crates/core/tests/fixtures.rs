use std::path::PathBuf;

use quiverkit::endo::EndoAlgebra as Endo;
use quiverkit::format::parse_algebra_file;
use quiverkit::scenario;
use quiverkit::{Error, Field};

fn fixture(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect()
}

#[test]
fn shipped_fixtures_parse() {
    let cases = [
        ("nakayama_566.qa", 17, 1),
        ("dual_numbers_a2.qa", 6, 2),
        ("a2_path.qa", 3, 2),
    ];
    for (name, dim, modules) in cases {
        let f = parse_algebra_file(fixture(name), None).unwrap();
        assert_eq!(f.algebra.dim(), dim, "{name}");
        assert_eq!(f.modules.len(), modules, "{name}");
    }
}

#[test]
fn claimed_presentations_match_endomorphism_dimension() {
    let alg = scenario::nakayama_566(Field::Rationals).unwrap();
    let gamma = Endo::from_summands(scenario::nakayama_generator(&alg).unwrap()).unwrap();
    let f = parse_algebra_file(fixture("nakayama_566_gamma.qa"), None).unwrap();
    assert_eq!(f.algebra.dim(), gamma.dim());

    let pair = scenario::a2_pair(Field::Rationals).unwrap();
    let gamma = Endo::from_summands(scenario::dual_generator(&pair).unwrap()).unwrap();
    let f = parse_algebra_file(fixture("dual_numbers_gamma.qa"), None).unwrap();
    assert_eq!(f.algebra.dim(), gamma.dim());
}

#[test]
fn malformed_fixtures_report_lines() {
    match parse_algebra_file(fixture("bad_unknown_arrow.qa"), None) {
        Err(Error::Syntax { line, msg }) => {
            assert_eq!(line, 6);
            assert!(msg.contains('y'), "{msg}");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_algebra_file(fixture("bad_characteristic.qa"), None), Err(Error::Syntax { line: 1, .. })));
    assert!(matches!(parse_algebra_file(fixture("missing.qa"), None), Err(Error::Parse(_))));
}

#[test]
fn field_override() {
    let f = parse_algebra_file(fixture("nakayama_566.qa"), Some(Field::Prime(101))).unwrap();
    assert_eq!(f.algebra.field(), Field::Prime(101));
    assert_eq!(f.algebra.dim(), 17);
}
