//! Loads an OWL ontology and prints its alphabetical index and its
//! class/instance tree.
//!
//!     cargo run --example ontology_views [path/to/ontology.owl]

use std::path::PathBuf;

use tierlink::load_ontology;
use tierlink::ontology::{NodeKind, TreeNode};

fn print_tree(nodes: &[TreeNode], depth: usize) {
    for node in nodes {
        let marker = match node.kind {
            NodeKind::Class => "",
            NodeKind::Individual => " (individual)",
            NodeKind::External => " (external)",
        };
        println!("{:indent$}{}{marker}", "", node.label, indent = depth * 2);
        print_tree(&node.children, depth + 1);
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/gold-sample.owl"));
    let ontology = load_ontology(std::fs::read(&path)?.as_slice())?;
    println!("{} terms from {}", ontology.terms().len(), ontology.source_iri());

    println!("\nIndex:");
    for term in ontology.list_terms().iter().take(15) {
        println!("  {:<24} {:?}", term.label, term.kind);
    }
    println!("  ...");

    println!("\nTree:");
    print_tree(&ontology.term_tree(), 1);

    let preverb = ontology.resolve_term("Preverb")?;
    println!(
        "\nPreverb is an {:?} of {:?}",
        preverb.kind,
        preverb.parents.iter().map(|p| p.local_name()).collect::<Vec<_>>()
    );
    Ok(())
}
