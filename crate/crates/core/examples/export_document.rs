//! Writes an annotation document as RDF/XML and reads it back.
//!
//!     cargo run --example export_document [out.eaf]

#[allow(dead_code)]
#[path = "../tests/common/potawatomi.rs"]
mod potawatomi;

use tierlink::persistence::{parse_document, serialize_document};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = potawatomi::document();
    let stored = serialize_document(&doc, potawatomi::DOCUMENT_IRI)?;
    match std::env::args_os().nth(1) {
        Some(path) => {
            std::fs::write(&path, &stored.bytes)?;
            println!("wrote {} bytes to {}", stored.bytes.len(), path.to_string_lossy());
        }
        None => println!("{}", stored.as_str()),
    }
    let parsed = parse_document(&stored.bytes)?;
    assert_eq!(parsed, doc);
    eprintln!(
        "read back: {} tiers, {} annotations",
        parsed.tiers().len(),
        parsed.annotations().len()
    );
    Ok(())
}
