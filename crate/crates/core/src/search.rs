//! Searching one document by text or by ontology term.

use serde::Serialize;

use crate::document::{Alignment, Anchor, Annotation, AnnotationDocument, AnnotationValue};
use crate::iri::TermIri;
use crate::ontology::Ontology;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Hit {
    pub annotation_id: String,
    pub tier_id: String,
    /// Text of a string annotation, or the user term of an ontological one.
    pub matched_text: String,
    pub alignment: Alignment,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordinal: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TextQuery<'a> {
    pub case_sensitive: bool,
    /// Only these tiers, when given.
    pub tiers: Option<&'a [String]>,
}

/// Text annotations containing `query`. Case-insensitive matching compares
/// the lowercase forms of both strings.
pub fn search_text(doc: &AnnotationDocument, query: &str, options: &TextQuery) -> Vec<Hit> {
    let needle = if options.case_sensitive {
        query.to_string()
    } else {
        query.to_lowercase()
    };
    let hits = doc.annotations().values().filter(|a| {
        let Some(text) = a.value.text() else { return false };
        if options.tiers.is_some_and(|tiers| !tiers.contains(&a.tier)) {
            return false;
        }
        if options.case_sensitive {
            text.contains(&needle)
        } else {
            text.to_lowercase().contains(&needle)
        }
    });
    collect(doc, hits)
}

/// Ontological annotations whose instances include `term` (as an IRI) or
/// whose user-defined term equals `term`.
///
/// With an ontology, an IRI query also matches instances of any class below
/// it: referenced individuals in the expanded set and minted instances whose
/// class is in it.
pub fn search_term(doc: &AnnotationDocument, term: &str, expand: Option<&Ontology>) -> Vec<Hit> {
    let iri = TermIri::parse(term).ok();
    let expanded = match (&iri, expand) {
        (Some(iri), Some(ontology)) => ontology.descendants_and_instances(iri),
        (Some(iri), None) => [iri.clone()].into(),
        (None, _) => Default::default(),
    };
    let hits = doc.annotations().values().filter(|a| {
        let AnnotationValue::Ontological(v) = &a.value else {
            return false;
        };
        v.user_term == term
            || v.instances.iter().any(|i| expanded.contains(i))
            || (expand.is_some() && v.minted.iter().any(|m| expanded.contains(&m.class)))
    });
    collect(doc, hits)
}

fn collect<'a>(doc: &AnnotationDocument, annotations: impl Iterator<Item = &'a Annotation>) -> Vec<Hit> {
    let mut hits: Vec<Hit> = annotations
        .map(|a| Hit {
            annotation_id: a.id.clone(),
            tier_id: a.tier.clone(),
            matched_text: a.value.display().to_string(),
            alignment: doc.resolve_alignment(&a.id).unwrap_or(Alignment::Unaligned),
            ordinal: match a.anchor {
                Anchor::Referring { ordinal, .. } => Some(ordinal),
                Anchor::Alignable { .. } => None,
            },
        })
        .collect();
    hits.sort_by(|x, y| sort_key(x).cmp(&sort_key(y)));
    hits
}

/// Tier, then time (unaligned last), then ordinal, then id.
fn sort_key(hit: &Hit) -> (&str, u64, u64, u32, &str) {
    let (begin, end) = match hit.alignment {
        Alignment::Aligned { begin, end } => (begin, end),
        Alignment::Unaligned => (u64::MAX, u64::MAX),
    };
    (&hit.tier_id, begin, end, hit.ordinal.unwrap_or(0), &hit.annotation_id)
}
