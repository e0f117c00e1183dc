//! Annotates with ontology terms through a language profile: the user picks a
//! user term, and each of its targets becomes either a reference to an
//! existing individual or a freshly minted instance of a class.
//!
//!     cargo run --example ontological_annotation

#[allow(dead_code)]
#[path = "../tests/common/potawatomi.rs"]
mod potawatomi;

use tierlink::{AnnotationValue, OntologicalRequest};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vocabulary = potawatomi::vocabulary();
    let mut doc = potawatomi::document();

    for id in ["a41", "a42"] {
        if let AnnotationValue::Ontological(v) = &doc.annotation(id).unwrap().value {
            let instances: Vec<&str> = v.instances.iter().map(|i| i.as_str()).collect();
            println!("{id}: {} -> {instances:?}", v.user_term);
        }
    }

    // VTA maps to a class with a property restriction, so the new instance
    // needs a fill for that property.
    let bare = OntologicalRequest::new("g", "VTA")
        .instance("TransitiveVerb", "wabmat1", &[])
        .instance("Animate", "him1", &[]);
    println!(
        "\nwithout fills: {}",
        doc.set_ontological_value("a42", &bare, &vocabulary).unwrap_err()
    );

    let filled = OntologicalRequest::new("g", "VTA")
        .with_description("transitive animate verb")
        .instance("TransitiveVerb", "wabmat1", &[("hasArgument", "him1")])
        .instance("Animate", "him1", &[]);
    doc.set_ontological_value("a42", &filled, &vocabulary)?;
    if let AnnotationValue::Ontological(v) = &doc.annotation("a42").unwrap().value {
        for minted in &v.minted {
            println!("minted {} as {}", minted.iri.local_name(), minted.class.local_name());
        }
    }
    Ok(())
}
