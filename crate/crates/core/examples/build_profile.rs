//! Builds a language profile mapping user terms onto ontology terms, checks
//! it against the ontology and prints the saved form.
//!
//!     cargo run --example build_profile

use tierlink::{load_ontology, parse_profile, Profile, UserTerm};

const GOLD: &str = "http://www.u.arizona.edu/~farrar/gold.owl";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let owl = std::fs::read(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/gold-sample.owl"))?;
    let ontology = load_ontology(owl.as_slice())?;

    let mut profile = Profile::new("Artem", "Potawatomi Language", "1.0", GOLD)?;
    profile.add_mapping(
        UserTerm::new("NI").with_description("inanimate noun"),
        ["Noun", "Inanimate"],
    )?;
    profile.add_mapping(UserTerm::new("preverb"), ["Preverb"])?;
    profile.rename_user_term("preverb", "PV")?;
    // A typo in a target is caught by the check below, not when adding.
    profile.add_mapping(UserTerm::new("VAI"), ["IntransitiveVerb", "Animat"])?;

    for problem in profile.validate(&ontology).unresolved {
        println!(
            "unresolved: {} -> {} ({})",
            problem.user_term, problem.target, problem.reason
        );
    }

    let xml = profile.to_xml();
    println!("{}", String::from_utf8_lossy(&xml));
    assert_eq!(parse_profile(&xml)?, profile);
    Ok(())
}
