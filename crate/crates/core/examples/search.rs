//! Text search and ontology-term search over an annotation document.
//!
//!     cargo run --example search

#[allow(dead_code)]
#[path = "../tests/common/potawatomi.rs"]
mod potawatomi;

use tierlink::cli::format_hits;
use tierlink::search::{search_term, search_text, TextQuery};

fn main() {
    let doc = potawatomi::document();
    let gold = potawatomi::gold();

    println!("text \"neko\", any case:");
    print!(
        "{}",
        format_hits(&search_text(&doc, "neko", &TextQuery::default()), false)
    );

    let preverb = format!("{}#Preverb", potawatomi::GOLD_IRI);
    println!("\nterm {preverb}:");
    print!("{}", format_hits(&search_term(&doc, &preverb, None), false));

    // With the ontology, a class also matches its subclasses and instances.
    let verbal = format!("{}#Verbal", potawatomi::GOLD_IRI);
    println!("\nterm {verbal} and everything below it:");
    print!("{}", format_hits(&search_term(&doc, &verbal, Some(&gold)), false));
}
