//! Ontology-backed linguistic annotation.
//!
//! Load an OWL ontology, map user-defined terms onto its classes and
//! individuals with a [`Profile`], and build tiered, time-aligned
//! [`AnnotationDocument`]s whose ontological tiers carry instances of those
//! terms. Documents are stored as RDF/XML.

pub mod cli;
pub mod document;
pub mod iri;
pub mod ontology;
pub mod persistence;
pub mod profile;
pub mod search;
pub mod service;
pub mod vocabulary;

pub use document::{
    validate_document, AnnotationDocument, AnnotationValue, EngineError, LinguisticType, OntologicalRequest, Stereotype,
};
pub use iri::TermIri;
pub use ontology::{load_ontology, Ontology, OntologyError};
pub use profile::{parse_profile, serialize_profile, Profile, ProfileError, UserTerm};
pub use vocabulary::Vocabulary;
