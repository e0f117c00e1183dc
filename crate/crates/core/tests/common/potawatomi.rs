// The Potawatomi sentence "Neko gi-wabmat." annotated on six tiers, with the
// Ontology tier bound to the wabo4 profile over the GOLD sample. Shared by
// the integration tests and the examples.

use std::path::PathBuf;

use tierlink::document::{instantiate, MediaDescriptor, Metadata};
use tierlink::{
    load_ontology, parse_profile, AnnotationDocument, LinguisticType, OntologicalRequest, Ontology, Profile,
    Stereotype, Vocabulary,
};

pub const GOLD_IRI: &str = "http://www.u.arizona.edu/~farrar/gold.owl";
pub const PROFILE_REF: &str = r"C:\wabo4.prf";
pub const DOCUMENT_IRI: &str = "file:///C:/wabo4.eaf";

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> Vec<u8> {
    std::fs::read(fixture_path(name)).unwrap_or_else(|e| panic!("reading fixture {name}: {e}"))
}

pub fn gold() -> Ontology {
    load_ontology(fixture("gold-sample.owl").as_slice()).expect("GOLD sample loads")
}

pub fn wabo4_profile() -> Profile {
    parse_profile(&fixture("wabo4.prf")).expect("wabo4 profile parses")
}

/// The wabo4 profile under its document reference, plus the GOLD sample.
pub fn vocabulary() -> Vocabulary {
    let mut vocabulary = Vocabulary::new();
    vocabulary.insert_profile(PROFILE_REF, wabo4_profile());
    vocabulary.insert_ontology(gold());
    vocabulary
}

/// (tier, linguistic type, stereotype, parent)
pub const TIERS: [(&str, &str, Stereotype, Option<&str>); 6] = [
    ("Orthographic", "orthographic", Stereotype::None, None),
    (
        "Translation",
        "translation",
        Stereotype::SymbolicAssociation,
        Some("Orthographic"),
    ),
    ("Words", "words", Stereotype::SymbolicSubdivision, Some("Orthographic")),
    ("Parse", "parse", Stereotype::SymbolicSubdivision, Some("Words")),
    ("Gloss", "gloss", Stereotype::SymbolicAssociation, Some("Parse")),
    ("Ontology", "ontology", Stereotype::SymbolicAssociation, Some("Gloss")),
];

/// Linguistic types and tiers, without annotations.
pub fn skeleton() -> AnnotationDocument {
    let mut doc = AnnotationDocument::new(
        Metadata {
            author: "Artem".into(),
            date: "2004-11-01".into(),
        },
        vec![MediaDescriptor::new("file:///C:/wabo4.wav", "audio/x-wav")],
    );
    for (tier, lt, stereotype, parent) in TIERS {
        let ontological = tier == "Ontology";
        let mut ty = LinguisticType::new(lt, stereotype);
        if ontological {
            ty = ty.ontological();
        }
        doc.add_linguistic_type(ty).unwrap();
        doc.add_tier(tier, lt, parent, ontological.then_some(PROFILE_REF))
            .unwrap();
    }
    doc
}

/// The fully annotated sentence. Annotation `a42` is the PV preverb on
/// the Ontology tier, referring to gloss `a31`.
pub fn document() -> AnnotationDocument {
    let vocabulary = vocabulary();
    let (profile, ontology) = vocabulary.binding(PROFILE_REF).unwrap();
    let mut doc = skeleton();
    let begin = doc.add_time_slot(Some(0)).unwrap();
    let end = doc.add_time_slot(Some(2000)).unwrap();
    let sentence = doc
        .add_alignable_annotation(Some("a1"), "Orthographic", &begin, &end, "Neko gi-wabmat.")
        .unwrap();
    doc.add_referring_annotation(Some("a2"), "Translation", &sentence, "He used to see him.", None)
        .unwrap();
    let neko = doc
        .add_referring_annotation(Some("a3"), "Words", &sentence, "neko", None)
        .unwrap();
    let verb = doc
        .add_referring_annotation(Some("a4"), "Words", &sentence, "gi-wabmat", None)
        .unwrap();
    let ptc = doc
        .add_referring_annotation(Some("a11"), "Parse", &neko, "PTC", None)
        .unwrap();
    let gi = doc
        .add_referring_annotation(Some("a12"), "Parse", &verb, "gi-", None)
        .unwrap();
    let stem = doc
        .add_referring_annotation(Some("a13"), "Parse", &verb, "wabmat", None)
        .unwrap();
    let used_to = doc
        .add_referring_annotation(Some("a21"), "Gloss", &ptc, "used to", None)
        .unwrap();
    let past = doc
        .add_referring_annotation(Some("a31"), "Gloss", &gi, "PST", None)
        .unwrap();
    doc.add_referring_annotation(Some("a32"), "Gloss", &stem, "see him", None)
        .unwrap();

    let pc = instantiate(
        profile,
        ontology,
        &OntologicalRequest::new("d", "PC").instance("Participle", "neko_pc1", &[]),
    )
    .unwrap();
    doc.add_referring_annotation(Some("a41"), "Ontology", &used_to, pc, None)
        .unwrap();
    let pv = instantiate(profile, ontology, &OntologicalRequest::new("e", "PV")).unwrap();
    doc.add_referring_annotation(Some("a42"), "Ontology", &past, pv, None)
        .unwrap();
    doc
}
