mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::potawatomi::{self, GOLD_IRI};
use tierlink::{parse_profile, serialize_profile, Profile, ProfileError, UserTerm};

#[test]
fn figure_two_profile_parses() {
    let profile = parse_profile(&potawatomi::fixture("fig2.prf")).unwrap();
    assert_eq!(profile.author, "Artem");
    assert_eq!(profile.description, "Potawatomi Language");
    assert_eq!(profile.version, "1.0");
    assert_eq!(profile.source, GOLD_IRI);
    assert_eq!(profile.len(), 1);
    let ni = &profile.mappings()[0];
    assert_eq!(ni.term, UserTerm::new("NI"));
    assert_eq!(ni.targets, ["Noun", "Inanimate"]);
    assert_eq!(parse_profile(&serialize_profile(&profile)).unwrap(), profile);
    assert!(profile.validate(&potawatomi::gold()).is_empty());
}

#[test]
fn built_profile_equals_figure_two() {
    let mut built = Profile::new("Artem", "Potawatomi Language", "1.0", GOLD_IRI).unwrap();
    built
        .add_mapping(UserTerm::new("Inanimate"), ["Noun", "Inanimate"])
        .unwrap();
    built.rename_user_term("Inanimate", "NI").unwrap();
    assert_eq!(built, parse_profile(&potawatomi::fixture("fig2.prf")).unwrap());
}

#[test]
fn profile_rules() {
    let mut p = Profile::new("a", "d", "1", GOLD_IRI).unwrap();
    assert_eq!(Profile::new("a", "d", "1", "").unwrap_err(), ProfileError::EmptySource);
    p.add_mapping(UserTerm::new("PV"), ["Preverb"]).unwrap();
    assert_eq!(
        p.add_mapping(UserTerm::new("PV"), ["Noun"]).unwrap_err(),
        ProfileError::DuplicateUserTerm("PV".into())
    );
    assert_eq!(
        p.add_mapping(UserTerm::new("X"), Vec::<String>::new()).unwrap_err(),
        ProfileError::EmptyTargets("X".into())
    );
    assert!(matches!(
        p.add_mapping(UserTerm::new("Y"), ["Noun", "Noun"]),
        Err(ProfileError::DuplicateTarget { .. })
    ));
    assert_eq!(p.lookup("Z").unwrap_err(), ProfileError::NotFound("Z".into()));
    assert!(matches!(
        parse_profile(b"<PROFILE AUTHOR=\"a\" DESCRIPTION=\"\" VERSION=\"1\" SOURCE=\"s\"><USER_DEFINED_TERM"),
        Err(ProfileError::MalformedXml(_))
    ));
    assert!(matches!(
        parse_profile(b"<PROFILES/>"),
        Err(ProfileError::SchemaViolation(_))
    ));
}

fn text() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 &<>\"'.:/#_\\-ĉŝ]{0,12}"
}

fn name() -> impl Strategy<Value = String> {
    "[a-zA-Z][a-zA-Z0-9_\\- ]{0,8}"
}

fn profile() -> impl Strategy<Value = Profile> {
    let mappings = proptest::collection::vec((name(), text(), proptest::collection::btree_set(name(), 1..4)), 0..6);
    (text(), text(), text(), "[a-z]{1,8}:[a-z/.#]{1,12}", mappings).prop_map(
        |(author, description, version, source, mappings)| {
            let mut p = Profile::new(author, description, version, source).unwrap();
            for (name, description, targets) in mappings {
                let _ = p.add_mapping(UserTerm::new(name).with_description(description), targets);
            }
            p
        },
    )
}

proptest! {
    #[test]
    fn parse_inverts_serialize(p in profile()) {
        prop_assert_eq!(parse_profile(&serialize_profile(&p)).unwrap(), p);
    }

    #[test]
    fn unresolved_targets_are_the_set_difference(
        picks in proptest::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 1..12),
    ) {
        let ontology = potawatomi::gold();
        let names: Vec<String> = ontology.terms().values().map(|t| t.iri.local_name().to_string()).collect();
        let mut p = Profile::new("a", "d", "1", GOLD_IRI).unwrap();
        for (i, (pick, bogus)) in picks.iter().enumerate() {
            let target = if *bogus { format!("Bogus{i}") } else { pick.get(&names).clone() };
            p.add_mapping(UserTerm::new(format!("T{i}")), [target]).unwrap();
        }
        let known: BTreeSet<&String> = names.iter().collect();
        let expected: BTreeSet<(String, String)> = p
            .mappings()
            .iter()
            .flat_map(|m| m.targets.iter().map(move |t| (m.term.name.clone(), t.clone())))
            .filter(|(_, t)| !known.contains(t))
            .collect();
        let found: BTreeSet<(String, String)> = p
            .validate(&ontology)
            .unresolved
            .into_iter()
            .map(|u| (u.user_term, u.target))
            .collect();
        prop_assert_eq!(found, expected);
    }
}
