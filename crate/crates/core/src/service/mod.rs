//! HTTP/JSON facade over documents, profiles and ontologies.
//!
//! Every mutation runs on a copy of the document under that document's lock,
//! is validated, and only then replaces the stored copy and bumps the
//! revision by one. A request may carry the revision it was based on; a stale
//! one is refused with 409.

mod error;

use std::collections::BTreeMap;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{FromRequest, Multipart, Path, Query, Request, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{delete, get, patch, post, put};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tower_http::cors::CorsLayer;

pub use error::ApiError;

use crate::document::{
    instantiate, validate_document, Alignment, Annotation, AnnotationDocument, AnnotationValue, EngineError,
    LinguisticType, MediaDescriptor, Metadata, OntologicalRequest, SlotId, TimeSlot,
};
use crate::ontology::{load_ontology_with_base, Ontology};
use crate::persistence::{parse_document, serialize_document};
use crate::profile::{parse_profile, Profile, UserTerm};
use crate::search::{search_term, search_text, TextQuery};
use crate::vocabulary::Vocabulary;

pub const DEFAULT_PORT: u16 = 8470;

/// Listen port from `PORT`, else [`DEFAULT_PORT`].
pub fn port_from_env() -> u16 {
    std::env::var("PORT")
        .ok()
        .and_then(|p| p.parse().ok())
        .unwrap_or(DEFAULT_PORT)
}

struct Entry {
    doc: AnnotationDocument,
    revision: u64,
}

/// Shared service state. Documents lock individually; profiles and
/// ontologies sit behind one reader-writer lock.
#[derive(Default)]
pub struct AppState {
    docs: RwLock<BTreeMap<String, Arc<Mutex<Entry>>>>,
    vocabulary: RwLock<Vocabulary>,
    ontologies: RwLock<BTreeMap<String, Arc<Ontology>>>,
}

impl AppState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a document at revision 0. Fails if the id is taken or the
    /// document is invalid.
    pub fn add_document(&self, id: &str, doc: AnnotationDocument) -> Result<(), ApiError> {
        let report = validate_document(&doc, Some(&self.vocabulary.read().unwrap()));
        if !report.is_valid() {
            return Err(ApiError::Invalid(report));
        }
        let mut docs = self.docs.write().unwrap();
        if docs.contains_key(id) {
            return Err(ApiError::domain(
                "DocumentExists",
                format!("document `{id}` already exists"),
            ));
        }
        docs.insert(id.to_string(), Arc::new(Mutex::new(Entry { doc, revision: 0 })));
        Ok(())
    }

    pub fn add_profile(&self, id: &str, profile: Profile) {
        self.vocabulary.write().unwrap().insert_profile(id, profile);
    }

    /// Registers an ontology under `id` and under its source IRI.
    pub fn add_ontology(&self, id: &str, ontology: Ontology) {
        let ontology = Arc::new(ontology);
        self.vocabulary.write().unwrap().insert_ontology(ontology.clone());
        self.ontologies.write().unwrap().insert(id.to_string(), ontology);
    }

    /// Snapshot of a document and its revision.
    pub fn document(&self, id: &str) -> Option<(AnnotationDocument, u64)> {
        let entry = self.docs.read().unwrap().get(id).cloned()?;
        let entry = entry.lock().unwrap();
        Some((entry.doc.clone(), entry.revision))
    }

    fn entry(&self, id: &str) -> Result<Arc<Mutex<Entry>>, ApiError> {
        self.docs
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found("UnknownDocument", id))
    }

    fn mutate<R>(
        &self,
        id: &str,
        revision: Option<u64>,
        edit: impl FnOnce(&mut AnnotationDocument, &Vocabulary) -> Result<R, ApiError>,
    ) -> Result<(u64, R), ApiError> {
        let entry = self.entry(id)?;
        let mut entry = entry.lock().unwrap();
        if revision.is_some_and(|r| r != entry.revision) {
            return Err(ApiError::Conflict {
                current: entry.revision,
            });
        }
        let vocabulary = self.vocabulary.read().unwrap();
        let mut doc = entry.doc.clone();
        let out = edit(&mut doc, &vocabulary)?;
        let report = validate_document(&doc, Some(&vocabulary));
        if !report.is_valid() {
            return Err(ApiError::Invalid(report));
        }
        entry.doc = doc;
        entry.revision += 1;
        Ok((entry.revision, out))
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/docs", get(list_docs).post(create_doc))
        .route("/docs/{id}", get(get_doc))
        .route("/docs/{id}/export", put(export_doc))
        .route("/docs/{id}/types", post(add_type))
        .route("/docs/{id}/tiers", post(add_tier))
        .route("/docs/{id}/tiers/{tier}", delete(delete_tier))
        .route("/docs/{id}/slots", post(add_slot))
        .route("/docs/{id}/slots/{sid}", patch(move_slot))
        .route("/docs/{id}/annotations", post(add_annotation))
        .route(
            "/docs/{id}/annotations/{aid}",
            delete(delete_annotation).patch(set_text),
        )
        .route("/docs/{id}/annotations/{aid}/ontological", post(set_ontological))
        .route("/docs/{id}/search", get(search))
        .route("/ontologies", get(list_ontologies).post(create_ontology))
        .route("/ontologies/{oid}/index", get(ontology_index))
        .route("/ontologies/{oid}/tree", get(ontology_tree))
        .route("/profiles", get(list_profiles).post(create_profile))
        .route("/profiles/{pid}", get(get_profile))
        .route("/profiles/{pid}/terms", post(add_profile_term))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

/// Serves until the process is stopped.
pub async fn serve(addr: SocketAddr, state: Arc<AppState>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(state)).await
}

type Shared = State<Arc<AppState>>;

/// JSON body whose rejections become 400 responses.
struct Body<T>(T);

impl<S: Send + Sync, T: DeserializeOwned> FromRequest<S> for Body<T> {
    type Rejection = ApiError;

    async fn from_request(req: Request, state: &S) -> Result<Self, ApiError> {
        match Json::<T>::from_request(req, state).await {
            Ok(Json(value)) => Ok(Body(value)),
            Err(rejection) => Err(ApiError::BadRequest(rejection.body_text())),
        }
    }
}

/// File upload: multipart with `file` and optional `id` fields, or JSON
/// carrying the file content as a string under `content_key`.
async fn upload(req: Request, content_key: &str) -> Result<(Option<String>, Vec<u8>, Value), ApiError> {
    let is_multipart = req
        .headers()
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .is_some_and(|v| v.starts_with("multipart/form-data"));
    if is_multipart {
        let mut multipart = Multipart::from_request(req, &())
            .await
            .map_err(|e| ApiError::BadRequest(e.body_text()))?;
        let (mut id, mut file) = (None, None);
        while let Some(field) = multipart
            .next_field()
            .await
            .map_err(|e| ApiError::BadRequest(e.body_text()))?
        {
            match field.name() {
                Some("id") => id = Some(field.text().await.map_err(|e| ApiError::BadRequest(e.body_text()))?),
                Some("file") => {
                    file = Some(
                        field
                            .bytes()
                            .await
                            .map_err(|e| ApiError::BadRequest(e.body_text()))?
                            .to_vec(),
                    )
                }
                _ => {}
            }
        }
        let file = file.ok_or_else(|| ApiError::BadRequest("missing `file` field".into()))?;
        return Ok((id, file, Value::Null));
    }
    let bytes = Bytes::from_request(req, &())
        .await
        .map_err(|e| ApiError::BadRequest(e.body_text()))?;
    let body: Value = serde_json::from_slice(&bytes).map_err(|e| ApiError::BadRequest(e.to_string()))?;
    let id = match body.get("id") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(ApiError::BadRequest("`id` must be a string".into())),
    };
    let content = match body.get(content_key) {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::String(s)) => s.clone().into_bytes(),
        Some(_) => return Err(ApiError::BadRequest(format!("`{content_key}` must be a string"))),
    };
    Ok((id, content, body))
}

fn from_value<T: DeserializeOwned>(value: Value) -> Result<T, ApiError> {
    serde_json::from_value(value).map_err(|e| ApiError::BadRequest(e.to_string()))
}

fn fresh_id<V>(map: &BTreeMap<String, V>, prefix: &str) -> String {
    (1..)
        .map(|n| format!("{prefix}{n}"))
        .find(|id| !map.contains_key(id))
        .expect("unbounded")
}

// ---- documents ----

#[derive(Deserialize, Default)]
#[serde(rename_all = "camelCase")]
struct NewDocument {
    #[serde(default)]
    metadata: Metadata,
    #[serde(default)]
    media: Vec<MediaDescriptor>,
    #[serde(default)]
    time_unit: Option<String>,
}

async fn create_doc(State(state): Shared, req: Request) -> Result<impl IntoResponse, ApiError> {
    let (id, content, body) = upload(req, "rdfXml").await?;
    let doc = if body.is_null() || !content.is_empty() {
        parse_document(&content)?
    } else {
        let spec: NewDocument = from_value(body)?;
        let mut doc = AnnotationDocument::new(spec.metadata, spec.media);
        if let Some(unit) = spec.time_unit {
            doc.time_unit = unit;
        }
        doc
    };
    let id = match id {
        Some(id) => id,
        None => fresh_id(&state.docs.read().unwrap(), "doc"),
    };
    state.add_document(&id, doc)?;
    Ok((StatusCode::CREATED, Json(json!({"id": id, "revision": 0}))))
}

async fn list_docs(State(state): Shared) -> Json<Value> {
    let entries: Vec<(String, Arc<Mutex<Entry>>)> = state
        .docs
        .read()
        .unwrap()
        .iter()
        .map(|(id, e)| (id.clone(), e.clone()))
        .collect();
    Json(Value::Array(
        entries
            .into_iter()
            .map(|(id, entry)| {
                let entry = entry.lock().unwrap();
                json!({"id": id, "revision": entry.revision, "tiers": entry.doc.tiers().len()})
            })
            .collect(),
    ))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnnotationView<'a> {
    #[serde(flatten)]
    annotation: &'a Annotation,
    alignment: Alignment,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DocumentView<'a> {
    id: &'a str,
    revision: u64,
    metadata: &'a Metadata,
    time_unit: &'a str,
    media: &'a [MediaDescriptor],
    time_order: &'a [TimeSlot],
    linguistic_types: Vec<&'a LinguisticType>,
    tiers: Vec<&'a crate::document::Tier>,
    annotations: Vec<AnnotationView<'a>>,
}

async fn get_doc(State(state): Shared, Path(id): Path<String>) -> Result<Response, ApiError> {
    let (doc, revision) = state
        .document(&id)
        .ok_or_else(|| ApiError::not_found("UnknownDocument", &id))?;
    let view = DocumentView {
        id: &id,
        revision,
        metadata: &doc.metadata,
        time_unit: &doc.time_unit,
        media: &doc.media,
        time_order: doc.time_order(),
        linguistic_types: doc.linguistic_types().values().collect(),
        tiers: doc.tiers().values().collect(),
        annotations: doc
            .annotations()
            .values()
            .map(|a| AnnotationView {
                annotation: a,
                alignment: doc.resolve_alignment(&a.id).unwrap_or(Alignment::Unaligned),
            })
            .collect(),
    };
    Ok(Json(view).into_response())
}

#[derive(Deserialize)]
struct ExportQuery {
    base: Option<String>,
}

async fn export_doc(
    State(state): Shared,
    Path(id): Path<String>,
    Query(query): Query<ExportQuery>,
) -> Result<Response, ApiError> {
    let (doc, _) = state
        .document(&id)
        .ok_or_else(|| ApiError::not_found("UnknownDocument", &id))?;
    let base = query.base.unwrap_or_else(|| format!("file:///{id}.eaf"));
    let stored = serialize_document(&doc, &base)?;
    Ok(([(header::CONTENT_TYPE, "application/rdf+xml")], stored.bytes).into_response())
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct Revised<T> {
    #[serde(default)]
    revision: Option<u64>,
    #[serde(flatten)]
    body: T,
}

async fn add_type(
    State(state): Shared,
    Path(id): Path<String>,
    Body(req): Body<Revised<LinguisticType>>,
) -> Result<Json<Value>, ApiError> {
    let (revision, ()) = state.mutate(&id, req.revision, |doc, _| Ok(doc.add_linguistic_type(req.body)?))?;
    Ok(Json(json!({"revision": revision})))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct NewTier {
    id: String,
    linguistic_type: String,
    #[serde(default)]
    parent: Option<String>,
    #[serde(default)]
    profile: Option<String>,
}

async fn add_tier(
    State(state): Shared,
    Path(id): Path<String>,
    Body(req): Body<Revised<NewTier>>,
) -> Result<Json<Value>, ApiError> {
    let t = req.body;
    let (revision, ()) = state.mutate(&id, req.revision, |doc, _| {
        Ok(doc.add_tier(&t.id, &t.linguistic_type, t.parent.as_deref(), t.profile.as_deref())?)
    })?;
    Ok(Json(json!({"revision": revision})))
}

#[derive(Deserialize)]
struct RevisionQuery {
    revision: Option<u64>,
}

async fn delete_tier(
    State(state): Shared,
    Path((id, tier)): Path<(String, String)>,
    Query(query): Query<RevisionQuery>,
) -> Result<Json<Value>, ApiError> {
    let (revision, removal) = state.mutate(&id, query.revision, |doc, _| Ok(doc.delete_tier(&tier)?))?;
    Ok(Json(json!({
        "revision": revision,
        "deleted": removal.tiers,
        "annotations": removal.annotations,
        "slots": removal.slots,
    })))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct NewSlot {
    #[serde(default)]
    id: Option<String>,
    #[serde(default)]
    time: Option<i64>,
    #[serde(default)]
    position: Option<usize>,
}

async fn add_slot(
    State(state): Shared,
    Path(id): Path<String>,
    Body(req): Body<Revised<NewSlot>>,
) -> Result<Json<Value>, ApiError> {
    let s = req.body;
    let (revision, slot) = state.mutate(&id, req.revision, |doc, _| {
        Ok(match (s.position, s.id.as_deref()) {
            (None, None) => doc.add_time_slot(s.time)?,
            (position, id) => {
                let position = position.unwrap_or(doc.time_order().len());
                doc.insert_time_slot(id, position, s.time)?
            }
        })
    })?;
    Ok(Json(json!({"revision": revision, "slot": slot})))
}

#[derive(Deserialize)]
struct MoveSlot {
    time: i64,
}

async fn move_slot(
    State(state): Shared,
    Path((id, sid)): Path<(String, String)>,
    Body(req): Body<Revised<MoveSlot>>,
) -> Result<Json<Value>, ApiError> {
    let (revision, ()) = state.mutate(&id, req.revision, |doc, _| {
        Ok(doc.move_time_slot(&SlotId(sid.clone()), req.body.time)?)
    })?;
    Ok(Json(json!({"revision": revision})))
}

/// Either `begin`/`end` (alignable) or `parent` (referring). The value is
/// `value` text, or `ontological` for ontological tiers.
#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct NewAnnotation {
    #[serde(default)]
    id: Option<String>,
    tier: String,
    #[serde(default)]
    begin: Option<String>,
    #[serde(default)]
    end: Option<String>,
    #[serde(default)]
    parent: Option<String>,
    #[serde(default)]
    ordinal: Option<u32>,
    #[serde(default)]
    value: Option<String>,
    #[serde(default)]
    ontological: Option<OntologicalRequest>,
}

fn requested_value(
    doc: &AnnotationDocument,
    vocabulary: &Vocabulary,
    tier: &str,
    text: Option<String>,
    ontological: Option<OntologicalRequest>,
) -> Result<AnnotationValue, ApiError> {
    match (text, ontological) {
        (Some(_), Some(_)) => Err(ApiError::BadRequest("give either `value` or `ontological`".into())),
        (text, None) => Ok(AnnotationValue::Text(text.unwrap_or_default())),
        (None, Some(request)) => {
            let tier_ref = doc
                .tier(tier)
                .ok_or_else(|| EngineError::UnknownTier(tier.to_string()))?;
            let profile = tier_ref
                .profile
                .as_deref()
                .ok_or_else(|| EngineError::NotOntologicalTier(tier.to_string()))?;
            let (profile, ontology) = vocabulary.binding(profile)?;
            Ok(AnnotationValue::Ontological(instantiate(profile, ontology, &request)?))
        }
    }
}

async fn add_annotation(
    State(state): Shared,
    Path(id): Path<String>,
    Body(req): Body<Revised<NewAnnotation>>,
) -> Result<Json<Value>, ApiError> {
    let a = req.body;
    let (revision, aid) = state.mutate(&id, req.revision, |doc, vocabulary| {
        let value = requested_value(doc, vocabulary, &a.tier, a.value, a.ontological)?;
        match (a.begin, a.end, a.parent) {
            (Some(begin), Some(end), None) => {
                Ok(doc.add_alignable_annotation(a.id.as_deref(), &a.tier, &SlotId(begin), &SlotId(end), value)?)
            }
            (None, None, Some(parent)) => {
                Ok(doc.add_referring_annotation(a.id.as_deref(), &a.tier, &parent, value, a.ordinal)?)
            }
            _ => Err(ApiError::BadRequest("give `begin` and `end`, or `parent`".into())),
        }
    })?;
    Ok(Json(json!({"revision": revision, "id": aid})))
}

async fn delete_annotation(
    State(state): Shared,
    Path((id, aid)): Path<(String, String)>,
    Query(query): Query<RevisionQuery>,
) -> Result<Json<Value>, ApiError> {
    let (revision, removal) = state.mutate(&id, query.revision, |doc, _| Ok(doc.delete_annotation(&aid)?))?;
    Ok(Json(json!({
        "revision": revision,
        "deleted": removal.annotations,
        "slots": removal.slots,
    })))
}

#[derive(Deserialize)]
struct SetText {
    value: String,
}

async fn set_text(
    State(state): Shared,
    Path((id, aid)): Path<(String, String)>,
    Body(req): Body<Revised<SetText>>,
) -> Result<Json<Value>, ApiError> {
    let (revision, ()) = state.mutate(&id, req.revision, |doc, _| Ok(doc.set_value(&aid, req.body.value)?))?;
    Ok(Json(json!({"revision": revision})))
}

async fn set_ontological(
    State(state): Shared,
    Path((id, aid)): Path<(String, String)>,
    Body(req): Body<Revised<OntologicalRequest>>,
) -> Result<Json<Value>, ApiError> {
    let (revision, ()) = state.mutate(&id, req.revision, |doc, vocabulary| {
        Ok(doc.set_ontological_value(&aid, &req.body, vocabulary)?)
    })?;
    Ok(Json(json!({"revision": revision})))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct SearchQuery {
    text: Option<String>,
    term: Option<String>,
    #[serde(default)]
    case_sensitive: bool,
    /// Comma-separated tier ids.
    tiers: Option<String>,
    #[serde(default)]
    expand: bool,
}

async fn search(
    State(state): Shared,
    Path(id): Path<String>,
    Query(query): Query<SearchQuery>,
) -> Result<Response, ApiError> {
    let (doc, _) = state
        .document(&id)
        .ok_or_else(|| ApiError::not_found("UnknownDocument", &id))?;
    let hits = match (query.text, query.term) {
        (Some(text), None) => {
            let tiers: Option<Vec<String>> = query.tiers.map(|t| t.split(',').map(str::to_string).collect());
            let options = TextQuery {
                case_sensitive: query.case_sensitive,
                tiers: tiers.as_deref(),
            };
            search_text(&doc, &text, &options)
        }
        (None, Some(term)) => {
            let ontologies = state.ontologies.read().unwrap();
            let ontology = query.expand.then(|| {
                let iri = crate::iri::TermIri::parse(term.as_str()).ok();
                ontologies
                    .values()
                    .find(|o| iri.as_ref().is_some_and(|i| o.get(i).is_some()))
                    .cloned()
            });
            search_term(&doc, &term, ontology.flatten().as_deref())
        }
        _ => return Err(ApiError::BadRequest("give exactly one of `text` and `term`".into())),
    };
    Ok(Json(hits).into_response())
}

// ---- ontologies ----

async fn create_ontology(State(state): Shared, req: Request) -> Result<impl IntoResponse, ApiError> {
    let (id, content, body) = upload(req, "rdfXml").await?;
    let base = body.get("base").and_then(Value::as_str);
    let ontology = load_ontology_with_base(content.as_slice(), base)?;
    let id = match id {
        Some(id) => id,
        None => fresh_id(&state.ontologies.read().unwrap(), "ontology"),
    };
    let summary = json!({
        "id": id,
        "sourceIri": ontology.source_iri(),
        "terms": ontology.terms().len(),
    });
    state.add_ontology(&id, ontology);
    Ok((StatusCode::CREATED, Json(summary)))
}

async fn list_ontologies(State(state): Shared) -> Json<Value> {
    let ontologies = state.ontologies.read().unwrap();
    Json(Value::Array(
        ontologies
            .iter()
            .map(|(id, o)| json!({"id": id, "sourceIri": o.source_iri(), "terms": o.terms().len()}))
            .collect(),
    ))
}

fn ontology(state: &AppState, oid: &str) -> Result<Arc<Ontology>, ApiError> {
    state
        .ontologies
        .read()
        .unwrap()
        .get(oid)
        .cloned()
        .ok_or_else(|| ApiError::not_found("UnknownOntology", oid))
}

async fn ontology_index(State(state): Shared, Path(oid): Path<String>) -> Result<Response, ApiError> {
    let ontology = ontology(&state, &oid)?;
    Ok(Json(ontology.list_terms()).into_response())
}

async fn ontology_tree(State(state): Shared, Path(oid): Path<String>) -> Result<Response, ApiError> {
    let ontology = ontology(&state, &oid)?;
    Ok(Json(ontology.term_tree()).into_response())
}

// ---- profiles ----

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct NewTerm {
    name: String,
    #[serde(default)]
    description: String,
    targets: Vec<String>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct NewProfile {
    #[serde(default)]
    author: String,
    #[serde(default)]
    description: String,
    #[serde(default)]
    version: String,
    #[serde(default)]
    source: String,
    #[serde(default)]
    mappings: Vec<NewTerm>,
}

async fn create_profile(State(state): Shared, req: Request) -> Result<impl IntoResponse, ApiError> {
    let (id, content, body) = upload(req, "prf").await?;
    let profile = if body.is_null() || !content.is_empty() {
        parse_profile(&content)?
    } else {
        let spec: NewProfile = from_value(body)?;
        let mut profile = Profile::new(spec.author, spec.description, spec.version, spec.source)?;
        for term in spec.mappings {
            profile.add_mapping(
                UserTerm::new(term.name).with_description(term.description),
                term.targets,
            )?;
        }
        profile
    };
    let id = match id {
        Some(id) => id,
        None => {
            let vocabulary = state.vocabulary.read().unwrap();
            (1..)
                .map(|n| format!("profile{n}.prf"))
                .find(|id| vocabulary.profile(id).is_none())
                .expect("unbounded")
        }
    };
    state.add_profile(&id, profile.clone());
    Ok((StatusCode::CREATED, Json(json!({"id": id, "profile": profile}))))
}

async fn list_profiles(State(state): Shared) -> Json<Value> {
    let vocabulary = state.vocabulary.read().unwrap();
    Json(Value::Array(
        vocabulary
            .profiles()
            .map(|(id, p)| json!({"id": id, "source": p.source, "terms": p.len()}))
            .collect(),
    ))
}

#[derive(Deserialize)]
struct ProfileQuery {
    format: Option<String>,
}

async fn get_profile(
    State(state): Shared,
    Path(pid): Path<String>,
    Query(query): Query<ProfileQuery>,
) -> Result<Response, ApiError> {
    let vocabulary = state.vocabulary.read().unwrap();
    let profile = vocabulary
        .profile(&pid)
        .ok_or_else(|| ApiError::not_found("UnknownProfile", &pid))?;
    Ok(match query.format.as_deref() {
        Some("prf") | Some("xml") => ([(header::CONTENT_TYPE, "application/xml")], profile.to_xml()).into_response(),
        None | Some("json") => Json(profile).into_response(),
        Some(other) => return Err(ApiError::BadRequest(format!("unknown format `{other}`"))),
    })
}

async fn add_profile_term(
    State(state): Shared,
    Path(pid): Path<String>,
    Body(term): Body<NewTerm>,
) -> Result<Response, ApiError> {
    let mut vocabulary = state.vocabulary.write().unwrap();
    let profile = vocabulary
        .profile_mut(&pid)
        .ok_or_else(|| ApiError::not_found("UnknownProfile", &pid))?;
    profile.add_mapping(
        UserTerm::new(term.name).with_description(term.description),
        term.targets,
    )?;
    Ok(Json(&*profile).into_response())
}
