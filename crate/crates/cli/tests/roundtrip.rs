use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use icat_cli::corpus;
use icat_cli::doc::{load, to_text, to_value, validate_object, Object};
use icat_cli::CliError;
use icat_core::cells::{random_attachment, random_complex, random_sset};

fn round_trip(o: &Object) -> String {
    let text = to_text(&to_value(o));
    let back = load(&text).unwrap_or_else(|e| panic!("reload failed: {e}\n{text}"));
    assert_eq!(back.kind(), o.kind());
    let again = to_text(&to_value(&back));
    assert_eq!(text, again);
    again
}

#[test]
fn corpus_documents_round_trip_and_validate() {
    for (name, o) in corpus::documents(7, 4, 2).unwrap() {
        let rep = validate_object(&o);
        assert!(rep.is_valid(), "{name}: {:?}", rep.violations);
        let text = round_trip(&o);
        assert!(validate_object(&load(&text).unwrap()).is_valid(), "{name}");
    }
}

#[test]
fn generated_names_are_unique() {
    let docs = corpus::documents(1, 3, 2).unwrap();
    let mut names: Vec<&str> = docs.iter().map(|(n, _)| n.as_str()).collect();
    names.sort();
    let before = names.len();
    names.dedup();
    assert_eq!(before, names.len());
}

#[test]
fn malformed_documents_name_the_problem() {
    let cases = [
        ("{", "line"),
        (r#"{"trunc_dim": 1}"#, "kind"),
        (r#"{"kind": "sset", "trunc_dim": "x", "simplices": {}}"#, "trunc_dim"),
        (r#"{"kind": "sset", "trunc_dim": 1, "simplices": {"1": [{"id": "e", "faces": ["a", "b"]}]}}"#, "a"),
        (r#"{"kind": "fpcat", "levels": []}"#, "output only"),
        (r#"{"kind": "widget"}"#, "widget"),
    ];
    for (text, needle) in cases {
        match load(text) {
            Err(e @ CliError::Doc { .. }) => assert!(e.to_string().contains(needle), "{text}: {e}"),
            Err(e) => panic!("{text}: unexpected error kind {e}"),
            Ok(_) => panic!("{text}: accepted"),
        }
    }
}

#[test]
fn invalid_structure_is_reported_not_rejected() {
    // faces of a 2-simplex that do not agree on vertices
    let text = r#"{"kind": "sset", "trunc_dim": 2, "simplices": {
        "0": [{"id": "a", "faces": []}, {"id": "b", "faces": []}],
        "1": [{"id": "e", "faces": ["b", "a"]}],
        "2": [{"id": "t", "faces": ["e", "e", "e"]}]}}"#;
    let o = load(text).unwrap();
    assert!(!validate_object(&o).is_valid());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_ssets_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_sset(&mut rng, 2, 7);
        round_trip(&Object::SSet(std::sync::Arc::new(x)));
    }

    #[test]
    fn random_attachments_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cx = random_complex(&mut rng, 1, 1, 2, 5).unwrap();
        let spec = random_attachment(&mut rng, &cx.cat, 2, 5);
        let o = Object::Attachment { cat: cx.cat, spec };
        prop_assert!(validate_object(&o).is_valid());
        round_trip(&o);
    }
}
