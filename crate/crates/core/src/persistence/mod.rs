//! RDF/XML storage of annotation documents.
//!
//! A document is written as instances of the multimedia annotation
//! vocabulary (prefix `media`). Tiers, annotations, time slots and linguistic
//! types get `rdf:ID`s relative to the document IRI, so references look like
//! `file:///C:/wabo4.eaf#Gloss`. Ontological values point into the domain
//! ontology by IRI; instances minted for class-typed terms are written as
//! typed nodes in the same file.
//!
//! Round-tripping preserves the document structurally, and properties this
//! library does not understand are carried along and re-emitted.

mod read;
mod write;

use crate::document::{AnnotationDocument, ValidationReport};

/// Default IRI of the `media` namespace.
pub const MEDIA_NS: &str = "http://www.cs.wayne.edu/~yudeng/project/elan3/multimedia.owl#";

pub(crate) const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";

#[derive(Debug, thiserror::Error)]
pub enum PersistError {
    #[error("malformed RDF/XML: {0}")]
    MalformedXml(String),
    #[error("reference `{0}` has no matching node")]
    DanglingReference(String),
    #[error("linguistic type `{id}` is inconsistent: {reason}")]
    ConstraintMismatch { id: String, reason: String },
    #[error("node `{node}` lacks `{property}`")]
    MissingProperty { node: String, property: String },
    #[error("node `{node}` has an unusable `{property}`: {value}")]
    InvalidValue {
        node: String,
        property: String,
        value: String,
    },
    #[error("`{0}` is not a usable document IRI")]
    InvalidBase(String),
    #[error("document is invalid: {}", summarize(.0))]
    InvalidDocument(ValidationReport),
}

impl PersistError {
    /// Stable variant name, used on the wire.
    pub fn name(&self) -> &'static str {
        match self {
            PersistError::MalformedXml(_) => "MalformedXml",
            PersistError::DanglingReference(_) => "DanglingReference",
            PersistError::ConstraintMismatch { .. } => "ConstraintMismatch",
            PersistError::MissingProperty { .. } => "MissingProperty",
            PersistError::InvalidValue { .. } => "InvalidValue",
            PersistError::InvalidBase(_) => "InvalidBase",
            PersistError::InvalidDocument(_) => "InvalidDocument",
        }
    }
}

fn summarize(report: &ValidationReport) -> String {
    report
        .errors()
        .map(|i| format!("{} ({:?})", i.locus, i.kind))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Serialized form plus the IRI its intra-document references hang off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerializedDocument {
    pub bytes: Vec<u8>,
    pub base_iri: String,
}

impl SerializedDocument {
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("serializer writes UTF-8")
    }
}

/// Serializer and parser bound to one `media` namespace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codec {
    media_ns: String,
}

impl Default for Codec {
    fn default() -> Self {
        Codec::new(MEDIA_NS)
    }
}

impl Codec {
    pub fn new(media_ns: impl Into<String>) -> Self {
        Codec {
            media_ns: media_ns.into(),
        }
    }

    pub fn media_ns(&self) -> &str {
        &self.media_ns
    }

    /// Writes `doc` with intra-document references relative to `base_iri`.
    /// The document must pass [`validate_document`](crate::document::validate_document).
    pub fn serialize(&self, doc: &AnnotationDocument, base_iri: &str) -> Result<SerializedDocument, PersistError> {
        write::serialize(self, doc, base_iri)
    }

    pub fn parse(&self, bytes: &[u8]) -> Result<AnnotationDocument, PersistError> {
        read::parse(self, bytes)
    }
}

pub fn serialize_document(doc: &AnnotationDocument, base_iri: &str) -> Result<SerializedDocument, PersistError> {
    Codec::default().serialize(doc, base_iri)
}

pub fn parse_document(bytes: &[u8]) -> Result<AnnotationDocument, PersistError> {
    Codec::default().parse(bytes)
}

/// Splits an IRI into a namespace and the longest suffix usable as an XML
/// local name.
pub(crate) fn split_qname(iri: &str) -> Option<(&str, &str)> {
    iri.char_indices()
        .skip(1)
        .map(|(i, _)| i)
        .find(|&i| crate::iri::is_ncname(&iri[i..]))
        .map(|i| iri.split_at(i))
}
