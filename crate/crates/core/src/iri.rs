//! Absolute IRIs naming ontology terms.

use std::fmt;

use serde::{Deserialize, Serialize};

/// An absolute IRI with a non-empty local name.
///
/// The local name is whatever follows the last `#`, or the last `/` when the
/// IRI has no fragment separator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TermIri(String);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IriError {
    #[error("`{0}` is not an absolute IRI")]
    NotAbsolute(String),
    #[error("`{0}` has an empty local name")]
    EmptyLocalName(String),
}

impl TermIri {
    pub fn parse(value: impl Into<String>) -> Result<Self, IriError> {
        let value = value.into();
        if oxiri::Iri::parse(value.as_str()).is_err() {
            return Err(IriError::NotAbsolute(value));
        }
        if split_iri(&value).1.is_empty() {
            return Err(IriError::EmptyLocalName(value));
        }
        Ok(TermIri(value))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Namespace part, including the trailing `#` or `/`.
    pub fn namespace(&self) -> &str {
        split_iri(&self.0).0
    }

    pub fn local_name(&self) -> &str {
        split_iri(&self.0).1
    }
}

/// Splits an IRI into `(namespace, local_name)` at the last `#`, falling back
/// to the last `/`.
pub fn split_iri(iri: &str) -> (&str, &str) {
    let cut = iri.rfind('#').or_else(|| iri.rfind('/')).map(|i| i + 1).unwrap_or(0);
    iri.split_at(cut)
}

/// True when `s` is a valid XML NCName (usable as `rdf:ID` or element local name).
pub fn is_ncname(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c == '_' || c.is_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\u{B7}'))
}

impl fmt::Display for TermIri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for TermIri {
    type Error = IriError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        TermIri::parse(value)
    }
}

impl From<TermIri> for String {
    fn from(iri: TermIri) -> Self {
        iri.0
    }
}

impl AsRef<str> for TermIri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}
