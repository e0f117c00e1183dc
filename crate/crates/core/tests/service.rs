mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};
use tower::ServiceExt;

use common::potawatomi::{self, DOCUMENT_IRI, GOLD_IRI, PROFILE_REF};
use tierlink::persistence::parse_document;
use tierlink::service::{router, AppState};
use tierlink::{parse_profile, validate_document};

struct Reply {
    status: StatusCode,
    bytes: Vec<u8>,
}

impl Reply {
    fn json(&self) -> Value {
        serde_json::from_slice(&self.bytes).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&self.bytes)))
    }
}

async fn send(app: &Router, request: Request<Body>) -> Reply {
    let response = app.clone().oneshot(request).await.unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes().to_vec();
    Reply { status, bytes }
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> Reply {
    let builder = Request::builder().method(method).uri(uri);
    let request = match body {
        Some(body) => builder
            .header(header::CONTENT_TYPE, "application/json")
            .body(Body::from(body.to_string())),
        None => builder.body(Body::empty()),
    };
    send(app, request.unwrap()).await
}

/// The sentence document as `wabo4`, with its profile and the sample ontology.
fn app() -> (Arc<AppState>, Router) {
    let state = Arc::new(AppState::new());
    state.add_ontology("gold", potawatomi::gold());
    state.add_profile(PROFILE_REF, potawatomi::wabo4_profile());
    state.add_document("wabo4", potawatomi::document()).unwrap();
    (state.clone(), router(state))
}

fn ids(value: &Value) -> Vec<&str> {
    value.as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect()
}

#[tokio::test]
async fn root_tier_must_be_alignable() {
    let (_, app) = app();
    let created = call(&app, Method::POST, "/docs", Some(json!({"id": "fresh"}))).await;
    assert_eq!(created.status, StatusCode::CREATED);
    assert_eq!(created.json(), json!({"id": "fresh", "revision": 0}));
    let ty = json!({"id": "translation", "stereotype": "SymbolicAssociation", "timeAlignable": false});
    let added = call(&app, Method::POST, "/docs/fresh/types", Some(ty)).await;
    assert_eq!(
        (added.status, added.json()["revision"].as_u64()),
        (StatusCode::OK, Some(1))
    );
    let tier = json!({"id": "Translation", "linguisticType": "translation"});
    let refused = call(&app, Method::POST, "/docs/fresh/tiers", Some(tier)).await;
    assert_eq!(refused.status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(refused.json()["error"], "RootMustBeAlignable");
    // A refused edit leaves the revision alone.
    assert_eq!(call(&app, Method::GET, "/docs/fresh", None).await.json()["revision"], 1);
}

#[tokio::test]
async fn deleting_words_cascades() {
    let (state, app) = app();
    let reply = call(&app, Method::DELETE, "/docs/wabo4/tiers/Words", None).await;
    assert_eq!(reply.status, StatusCode::OK);
    let body = reply.json();
    assert_eq!(ids(&body["deleted"]), ["Words", "Parse", "Gloss", "Ontology"]);
    assert_eq!(body["revision"], 1);
    let annotations: BTreeSet<&str> = ids(&body["annotations"]).into_iter().collect();
    assert_eq!(
        annotations,
        BTreeSet::from(["a3", "a4", "a11", "a12", "a13", "a21", "a31", "a32", "a41", "a42"])
    );
    let (doc, revision) = state.document("wabo4").unwrap();
    assert_eq!(revision, 1);
    assert_eq!(
        doc.tiers().keys().map(String::as_str).collect::<Vec<_>>(),
        ["Orthographic", "Translation"]
    );
}

#[tokio::test]
async fn stale_revisions_conflict() {
    let (_, app) = app();
    let edit = |revision: u64| Some(json!({"value": "Neko gi-wabmat!", "revision": revision}));
    let first = call(&app, Method::PATCH, "/docs/wabo4/annotations/a1", edit(0)).await;
    assert_eq!(
        (first.status, first.json()["revision"].as_u64()),
        (StatusCode::OK, Some(1))
    );
    let stale = call(&app, Method::PATCH, "/docs/wabo4/annotations/a1", edit(0)).await;
    assert_eq!(stale.status, StatusCode::CONFLICT);
    assert_eq!(stale.json(), json!({"error": "RevisionConflict", "revision": 1}));
    let stale_delete = call(&app, Method::DELETE, "/docs/wabo4/tiers/Words?revision=0", None).await;
    assert_eq!(stale_delete.status, StatusCode::CONFLICT);
    assert_eq!(
        call(&app, Method::DELETE, "/docs/wabo4/tiers/Words?revision=1", None)
            .await
            .status,
        StatusCode::OK
    );
}

#[tokio::test]
async fn export_round_trips() {
    let (_, app) = app();
    let reply = call(
        &app,
        Method::PUT,
        &format!("/docs/wabo4/export?base={DOCUMENT_IRI}"),
        None,
    )
    .await;
    assert_eq!(reply.status, StatusCode::OK);
    assert_eq!(reply.bytes, potawatomi::fixture("wabo4.eaf"));
    assert_eq!(parse_document(&reply.bytes).unwrap(), potawatomi::document());

    // Re-importing the export as a new document, then exporting it again.
    let import = call(
        &app,
        Method::POST,
        "/docs",
        Some(json!({"id": "copy", "rdfXml": String::from_utf8(reply.bytes.clone()).unwrap()})),
    )
    .await;
    assert_eq!(import.status, StatusCode::CREATED);
    let again = call(
        &app,
        Method::PUT,
        &format!("/docs/copy/export?base={DOCUMENT_IRI}"),
        None,
    )
    .await;
    assert_eq!(again.bytes, reply.bytes);

    let boundary = "XBOUNDARY";
    let mut multipart = format!(
        "--{boundary}\r\nContent-Disposition: form-data; name=\"id\"\r\n\r\nupload\r\n--{boundary}\r\nContent-Disposition: form-data; name=\"file\"; filename=\"wabo4.eaf\"\r\nContent-Type: application/rdf+xml\r\n\r\n"
    )
    .into_bytes();
    multipart.extend_from_slice(&reply.bytes);
    multipart.extend_from_slice(format!("\r\n--{boundary}--\r\n").as_bytes());
    let request = Request::post("/docs")
        .header(
            header::CONTENT_TYPE,
            format!("multipart/form-data; boundary={boundary}"),
        )
        .body(Body::from(multipart))
        .unwrap();
    let uploaded = send(&app, request).await;
    assert_eq!(
        (uploaded.status, uploaded.json()["id"].as_str()),
        (StatusCode::CREATED, Some("upload"))
    );

    let listed = call(&app, Method::GET, "/docs", None).await.json();
    let listed: Vec<&str> = listed
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["id"].as_str().unwrap())
        .collect();
    assert_eq!(listed, ["copy", "upload", "wabo4"]);

    let duplicate = call(&app, Method::POST, "/docs", Some(json!({"id": "copy"}))).await;
    assert_eq!(
        (duplicate.status, duplicate.json()["error"].as_str()),
        (StatusCode::UNPROCESSABLE_ENTITY, Some("DocumentExists"))
    );
    let dangling = String::from_utf8(reply.bytes)
        .unwrap()
        .replace("wabo4.eaf#a31\"", "wabo4.eaf#a99\"");
    let refused = call(&app, Method::POST, "/docs", Some(json!({"rdfXml": dangling}))).await;
    assert_eq!(refused.json()["error"], "DanglingReference");
}

#[tokio::test]
async fn document_view_carries_resolved_intervals() {
    let (_, app) = app();
    let doc = call(&app, Method::GET, "/docs/wabo4", None).await.json();
    assert_eq!(doc["revision"], 0);
    assert_eq!(doc["tiers"].as_array().unwrap().len(), 6);
    assert_eq!(doc["timeOrder"].as_array().unwrap().len(), 2);
    let a42 = doc["annotations"]
        .as_array()
        .unwrap()
        .iter()
        .find(|a| a["id"] == "a42")
        .unwrap();
    assert_eq!(a42["alignment"], json!({"state": "aligned", "begin": 0, "end": 2000}));
    assert_eq!(
        a42["anchor"],
        json!({"kind": "referring", "parent": "a31", "ordinal": 0})
    );
    assert_eq!(a42["value"]["ontological"]["userTerm"], "PV");
    let ontology = doc["linguisticTypes"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["id"] == "ontology")
        .unwrap();
    assert_eq!(ontology["stereotype"], "SymbolicAssociation");
    assert_eq!(ontology["ontological"], true);
}

#[tokio::test]
async fn unknown_ids_and_bad_bodies() {
    let (_, app) = app();
    let cases = [
        (Method::GET, "/docs/nope", "UnknownDocument"),
        (Method::PUT, "/docs/nope/export", "UnknownDocument"),
        (Method::DELETE, "/docs/wabo4/tiers/Nope", "UnknownTier"),
        (Method::DELETE, "/docs/wabo4/annotations/a99", "UnknownAnnotation"),
        (Method::GET, "/ontologies/nope/tree", "UnknownOntology"),
        (Method::GET, "/profiles/nope.prf", "UnknownProfile"),
    ];
    for (method, uri, error) in cases {
        let reply = call(&app, method, uri, None).await;
        assert_eq!(
            (reply.status, reply.json()["error"].as_str()),
            (StatusCode::NOT_FOUND, Some(error)),
            "{uri}"
        );
    }
    let moved = call(&app, Method::PATCH, "/docs/wabo4/slots/ts9", Some(json!({"time": 5}))).await;
    assert_eq!(moved.status, StatusCode::NOT_FOUND);

    let request = Request::post("/docs/wabo4/tiers")
        .header(header::CONTENT_TYPE, "application/json")
        .body(Body::from("{not json"))
        .unwrap();
    assert_eq!(send(&app, request).await.status, StatusCode::BAD_REQUEST);
    let missing_field = call(&app, Method::POST, "/docs/wabo4/tiers", Some(json!({"id": "X"}))).await;
    assert_eq!(missing_field.status, StatusCode::BAD_REQUEST);
    let both = call(&app, Method::GET, "/docs/wabo4/search?text=a&term=b", None).await;
    assert_eq!(both.status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn editing_a_sentence_through_the_api() {
    let (state, app) = app();
    let post = |uri: &'static str, body: Value| {
        let app = app.clone();
        async move { call(&app, Method::POST, uri, Some(body)).await }
    };
    assert_eq!(
        post("/docs/wabo4/slots", json!({"time": 2000})).await.status,
        StatusCode::OK
    );
    let slot = post("/docs/wabo4/slots", json!({"time": 3500})).await.json();
    assert_eq!(slot, json!({"revision": 2, "slot": "ts4"}));
    let a = post(
        "/docs/wabo4/annotations",
        json!({"tier": "Orthographic", "begin": "ts3", "end": "ts4", "value": "Ni je?"}),
    )
    .await;
    assert_eq!(a.status, StatusCode::OK, "{}", a.json());
    // Fresh ids continue past the highest numbered one in use.
    assert_eq!(a.json()["id"], "a14");
    let clash = post(
        "/docs/wabo4/annotations",
        json!({"tier": "Orthographic", "begin": "ts1", "end": "ts4"}),
    )
    .await;
    assert_eq!(clash.status, StatusCode::UNPROCESSABLE_ENTITY);
    let word = post(
        "/docs/wabo4/annotations",
        json!({"id": "w1", "tier": "Words", "parent": "a14", "value": "ni"}),
    )
    .await;
    assert_eq!(word.json()["id"], "w1");
    post(
        "/docs/wabo4/annotations",
        json!({"id": "p1", "tier": "Parse", "parent": "w1", "value": "ni"}),
    )
    .await;
    post(
        "/docs/wabo4/annotations",
        json!({"id": "g1", "tier": "Gloss", "parent": "p1", "value": "what"}),
    )
    .await;
    let onto = json!({
        "id": "o1", "tier": "Ontology", "parent": "g1",
        "ontological": {"ontAnnotationId": "f", "userTerm": "PC", "instances": {"Participle": {"name": "ni_pc1"}}}
    });
    let onto = post("/docs/wabo4/annotations", onto).await;
    assert_eq!(onto.status, StatusCode::OK, "{}", onto.json());
    let retag = json!({"ontAnnotationId": "f", "userTerm": "PV"});
    let reply = call(
        &app,
        Method::POST,
        "/docs/wabo4/annotations/o1/ontological",
        Some(retag),
    )
    .await;
    assert_eq!(reply.status, StatusCode::OK);
    let bad = json!({"ontAnnotationId": "f", "userTerm": "QQ"});
    let reply = call(&app, Method::POST, "/docs/wabo4/annotations/o1/ontological", Some(bad)).await;
    assert_eq!(reply.json()["error"], "UnknownUserTerm");
    let plain = call(
        &app,
        Method::PATCH,
        "/docs/wabo4/annotations/o1",
        Some(json!({"value": "x"})),
    )
    .await;
    assert_eq!(plain.json()["error"], "ValueKindMismatch");

    let moved = call(
        &app,
        Method::PATCH,
        "/docs/wabo4/slots/ts4",
        Some(json!({"time": 4000})),
    )
    .await;
    assert_eq!(moved.status, StatusCode::OK);
    let hits = call(&app, Method::GET, "/docs/wabo4/search?term=PV", None).await.json();
    let o1 = hits
        .as_array()
        .unwrap()
        .iter()
        .find(|h| h["annotationId"] == "o1")
        .unwrap();
    assert_eq!(o1["alignment"], json!({"state": "aligned", "begin": 2000, "end": 4000}));

    let removed = call(&app, Method::DELETE, "/docs/wabo4/annotations/a14", None)
        .await
        .json();
    assert_eq!(ids(&removed["deleted"]), ["a14", "w1", "p1", "g1", "o1"]);
    let (doc, revision) = state.document("wabo4").unwrap();
    assert_eq!(revision, removed["revision"].as_u64().unwrap());
    assert!(validate_document(&doc, None).is_valid());
}

#[tokio::test]
async fn search_endpoint() {
    let (_, app) = app();
    let get = |uri: String| {
        let app = app.clone();
        async move { call(&app, Method::GET, &uri, None).await.json() }
    };
    let annotation_ids = |hits: &Value| -> Vec<String> {
        hits.as_array()
            .unwrap()
            .iter()
            .map(|h| h["annotationId"].as_str().unwrap().to_string())
            .collect()
    };
    assert_eq!(
        annotation_ids(&get("/docs/wabo4/search?text=neko".into()).await),
        ["a1", "a3"]
    );
    assert_eq!(
        annotation_ids(&get("/docs/wabo4/search?text=neko&caseSensitive=true".into()).await),
        ["a3"]
    );
    assert_eq!(
        annotation_ids(&get("/docs/wabo4/search?text=s&tiers=Gloss".into()).await),
        ["a21", "a31", "a32"]
    );
    let preverb = get(format!("/docs/wabo4/search?term={GOLD_IRI}%23Preverb")).await;
    assert_eq!(annotation_ids(&preverb), ["a42"]);
    assert_eq!(preverb[0]["matchedText"], "PV");
    assert!(annotation_ids(&get(format!("/docs/wabo4/search?term={GOLD_IRI}%23Prefix")).await).is_empty());
    assert_eq!(
        annotation_ids(&get(format!("/docs/wabo4/search?term={GOLD_IRI}%23Prefix&expand=true")).await),
        ["a42"]
    );
}

#[tokio::test]
async fn ontology_views() {
    let (_, app) = app();
    let list = call(&app, Method::GET, "/ontologies", None).await.json();
    assert_eq!(list[0]["id"], "gold");
    assert_eq!(list[0]["sourceIri"], GOLD_IRI);
    let terms = list[0]["terms"].as_u64().unwrap() as usize;
    let index = call(&app, Method::GET, "/ontologies/gold/index", None).await.json();
    assert_eq!(index.as_array().unwrap().len(), terms);
    let tree = call(&app, Method::GET, "/ontologies/gold/tree", None).await.json();
    assert!(!tree.as_array().unwrap().is_empty());
    assert_eq!(tree, serde_json::to_value(potawatomi::gold().term_tree()).unwrap());

    let xml = r##"<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#" xmlns:owl="http://www.w3.org/2002/07/owl#" xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#">
  <owl:Class rdf:ID="A"/><owl:Class rdf:ID="B"><rdfs:subClassOf rdf:resource="#A"/></owl:Class>
</rdf:RDF>"##;
    let created = call(
        &app,
        Method::POST,
        "/ontologies",
        Some(json!({"id": "tiny", "rdfXml": xml, "base": "http://example.org/tiny"})),
    )
    .await;
    assert_eq!(created.status, StatusCode::CREATED);
    assert_eq!(
        created.json(),
        json!({"id": "tiny", "sourceIri": "http://example.org/tiny", "terms": 2})
    );
    let tree = call(&app, Method::GET, "/ontologies/tiny/tree", None).await.json();
    assert_eq!(tree[0]["children"][0]["iri"], "http://example.org/tiny#B");
    let broken = call(&app, Method::POST, "/ontologies", Some(json!({"rdfXml": "<rdf:RDF"}))).await;
    assert_eq!(
        (broken.status, broken.json()["error"].as_str()),
        (StatusCode::UNPROCESSABLE_ENTITY, Some("MalformedXml"))
    );
}

#[tokio::test]
async fn profile_endpoints() {
    let (_, app) = app();
    let spec = json!({
        "id": "new.prf", "author": "Artem", "description": "Potawatomi Language", "version": "1.0", "source": GOLD_IRI,
        "mappings": [{"name": "NI", "targets": ["Noun", "Inanimate"]}]
    });
    let created = call(&app, Method::POST, "/profiles", Some(spec)).await;
    assert_eq!(created.status, StatusCode::CREATED);
    let xml = call(&app, Method::GET, "/profiles/new.prf?format=prf", None).await;
    assert_eq!(
        parse_profile(&xml.bytes).unwrap(),
        parse_profile(&potawatomi::fixture("fig2.prf")).unwrap()
    );

    let fig2 = String::from_utf8(potawatomi::fixture("fig2.prf")).unwrap();
    let uploaded = call(&app, Method::POST, "/profiles", Some(json!({"prf": fig2})))
        .await
        .json();
    assert_eq!(uploaded["id"], "profile1.prf");

    let added = call(
        &app,
        Method::POST,
        "/profiles/new.prf/terms",
        Some(json!({"name": "PV", "targets": ["Preverb"]})),
    )
    .await;
    assert_eq!(added.status, StatusCode::OK);
    assert_eq!(added.json()["mappings"].as_array().unwrap().len(), 2);
    let dup = call(
        &app,
        Method::POST,
        "/profiles/new.prf/terms",
        Some(json!({"name": "PV", "targets": ["Noun"]})),
    )
    .await;
    assert_eq!(
        (dup.status, dup.json()["error"].as_str()),
        (StatusCode::UNPROCESSABLE_ENTITY, Some("DuplicateUserTerm"))
    );
    let listed = call(&app, Method::GET, "/profiles", None).await.json();
    let listed: BTreeSet<&str> = listed
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["id"].as_str().unwrap())
        .collect();
    assert_eq!(listed, BTreeSet::from([PROFILE_REF, "new.prf", "profile1.prf"]));
    let empty_source = call(&app, Method::POST, "/profiles", Some(json!({"author": "a"}))).await;
    assert_eq!(empty_source.json()["error"], "EmptySource");
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_mutations_get_gapless_revisions() {
    let (state, app) = app();
    let tasks: Vec<_> = (0..48)
        .map(|i| {
            let app = app.clone();
            tokio::spawn(async move {
                let body = json!({"value": format!("edit {i}")});
                let reply = call(&app, Method::PATCH, "/docs/wabo4/annotations/a2", Some(body)).await;
                assert_eq!(reply.status, StatusCode::OK);
                reply.json()["revision"].as_u64().unwrap()
            })
        })
        .collect();
    let mut revisions = Vec::new();
    for task in tasks {
        revisions.push(task.await.unwrap());
    }
    revisions.sort_unstable();
    assert_eq!(revisions, (1..=48).collect::<Vec<_>>());
    assert_eq!(state.document("wabo4").unwrap().1, 48);
}

/// One random request against the sentence document.
fn random_request(rng: &mut impl Rng, doc: &tierlink::AnnotationDocument) -> (Method, String, Option<Value>) {
    let tiers: Vec<&String> = doc.tiers().keys().collect();
    let annotations: Vec<&String> = doc.annotations().keys().collect();
    let mut slots: Vec<String> = doc.time_order().iter().map(|s| s.id.0.clone()).collect();
    if slots.is_empty() {
        slots.push("ts0".into());
    }
    let pick = |rng: &mut _, v: &[&String]| v.choose(rng).map(|s| s.to_string()).unwrap_or_else(|| "none".into());
    match rng.gen_range(0..7) {
        0 => (Method::DELETE, format!("/docs/d/tiers/{}", pick(rng, &tiers)), None),
        1 => (
            Method::DELETE,
            format!("/docs/d/annotations/{}", pick(rng, &annotations)),
            None,
        ),
        2 => {
            let slot = slots.choose(rng).cloned().unwrap_or_default();
            (
                Method::PATCH,
                format!("/docs/d/slots/{slot}"),
                Some(json!({"time": rng.gen_range(-100..6000)})),
            )
        }
        3 => {
            let time = rng.gen_bool(0.7).then(|| rng.gen_range(0..6000));
            (
                Method::POST,
                "/docs/d/slots".into(),
                Some(json!({"time": time, "position": rng.gen_range(0..=doc.time_order().len())})),
            )
        }
        4 => {
            let begin = slots.choose(rng).cloned().unwrap_or_default();
            let end = slots.choose(rng).cloned().unwrap_or_default();
            let tier = pick(rng, &tiers);
            (
                Method::POST,
                "/docs/d/annotations".into(),
                Some(json!({"tier": tier, "begin": begin, "end": end, "value": "x"})),
            )
        }
        5 => {
            let parent = pick(rng, &annotations);
            let body = if rng.gen_bool(0.5) {
                json!({"tier": pick(rng, &tiers), "parent": parent, "value": "y & <z>"})
            } else {
                let term = ["PV", "PC", "NI"].choose(rng).unwrap();
                let name = format!("i{}", rng.gen_range(0..5));
                json!({"tier": "Ontology", "parent": parent, "ontological": {
                    "ontAnnotationId": "r", "userTerm": term,
                    "instances": {"Participle": {"name": name}, "Noun": {"name": name}, "Inanimate": {"name": format!("{name}b")}}
                }})
            };
            (Method::POST, "/docs/d/annotations".into(), Some(body))
        }
        _ => (
            Method::PATCH,
            format!("/docs/d/annotations/{}", pick(rng, &annotations)),
            Some(json!({"value": "edited"})),
        ),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Whatever sequence of requests arrives, the stored document stays
    /// valid, exports cleanly, and the revision counts exactly the accepted
    /// mutations.
    #[test]
    fn any_request_sequence_keeps_the_document_exportable(seed in any::<u64>()) {
        let runtime = tokio::runtime::Builder::new_current_thread().build().unwrap();
        runtime.block_on(async {
            let state = Arc::new(AppState::new());
            state.add_ontology("gold", potawatomi::gold());
            state.add_profile(PROFILE_REF, potawatomi::wabo4_profile());
            state.add_document("d", potawatomi::document()).unwrap();
            let app = router(state.clone());
            let mut rng = common::rng(seed);
            let mut accepted = 0u64;
            for _ in 0..30 {
                let (doc, revision) = state.document("d").unwrap();
                prop_assert_eq!(revision, accepted);
                let (method, uri, body) = random_request(&mut rng, &doc);
                let reply = call(&app, method, &uri, body).await;
                match reply.status {
                    StatusCode::OK => {
                        accepted += 1;
                        prop_assert_eq!(reply.json()["revision"].as_u64(), Some(accepted));
                    }
                    StatusCode::NOT_FOUND | StatusCode::UNPROCESSABLE_ENTITY => {
                        prop_assert!(reply.json()["error"].is_string());
                        prop_assert_eq!(state.document("d").unwrap().0, doc);
                    }
                    other => prop_assert!(false, "{} {} -> {}", uri, other, String::from_utf8_lossy(&reply.bytes)),
                }
                let export = call(&app, Method::PUT, "/docs/d/export", None).await;
                prop_assert_eq!(export.status, StatusCode::OK);
                let parsed = parse_document(&export.bytes).unwrap();
                prop_assert_eq!(&parsed, &state.document("d").unwrap().0);
            }
            prop_assert!(accepted > 0);
            Ok(())
        })?;
    }
}
