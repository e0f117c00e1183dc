//! Builds the six-tier interlinear layout for one sentence, resolves the
//! time interval of a deeply nested annotation, moves a time slot, and
//! deletes a tier with everything below it.
//!
//!     cargo run --example tiers_and_cascade

#[allow(dead_code)]
#[path = "../tests/common/potawatomi.rs"]
mod potawatomi;

use tierlink::document::SlotId;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut doc = potawatomi::document();
    for (tier, lt, stereotype, parent) in potawatomi::TIERS {
        let stereotype = format!("{stereotype:?}");
        println!("{tier:<13} {lt:<13} {stereotype:<20} parent {}", parent.unwrap_or("-"));
    }

    println!("\na42 spans {:?}", doc.resolve_alignment("a42")?);
    doc.move_time_slot(&SlotId::from("ts2"), 2400)?;
    println!("after moving ts2: {:?}", doc.resolve_alignment("a42")?);

    let removal = doc.delete_tier("Words")?;
    println!("\ndeleting Words removed tiers {:?}", removal.tiers);
    println!("and annotations {:?}", removal.annotations);
    println!("remaining tiers: {:?}", doc.tiers().keys().collect::<Vec<_>>());

    // The Translation tier is an association of Orthographic: one child per parent.
    let refused = doc.add_referring_annotation(None, "Translation", "a1", "again", None);
    println!("\nsecond translation of a1: {}", refused.unwrap_err());
    Ok(())
}
