//! Starts the HTTP service with the sample ontology, profile and document
//! loaded. Listens on `PORT` (default 8470).
//!
//!     cargo run --example serve
//!     curl localhost:8470/docs/wabo4/search?term=PV

#[allow(dead_code)]
#[path = "../tests/common/potawatomi.rs"]
mod potawatomi;

use std::net::SocketAddr;
use std::sync::Arc;

use tierlink::service::{port_from_env, serve, AppState};

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let state = Arc::new(AppState::new());
    state.add_ontology("gold", potawatomi::gold());
    state.add_profile(potawatomi::PROFILE_REF, potawatomi::wabo4_profile());
    state
        .add_document("wabo4", potawatomi::document())
        .map_err(|e| format!("{e:?}"))?;
    let addr = SocketAddr::from(([127, 0, 0, 1], port_from_env()));
    println!("listening on http://{addr}");
    serve(addr, state).await?;
    Ok(())
}
