use std::fmt;

use serde::{Deserialize, Serialize};

use crate::iri::TermIri;

/// Tier constraint. `None` tiers are linked directly to the time axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Stereotype {
    None,
    TimeSubdivision,
    SymbolicSubdivision,
    SymbolicAssociation,
}

impl Stereotype {
    pub const ALL: [Stereotype; 4] = [
        Stereotype::None,
        Stereotype::TimeSubdivision,
        Stereotype::SymbolicSubdivision,
        Stereotype::SymbolicAssociation,
    ];

    /// Name of the constraint individual in the stored document, if any.
    pub fn constraint_name(self) -> Option<&'static str> {
        match self {
            Stereotype::None => None,
            Stereotype::TimeSubdivision => Some("Time_Subdivision"),
            Stereotype::SymbolicSubdivision => Some("Symbolic_Subdivision"),
            Stereotype::SymbolicAssociation => Some("Symbolic_Association"),
        }
    }

    pub fn from_constraint_name(name: &str) -> Option<Self> {
        Stereotype::ALL.into_iter().find(|s| s.constraint_name() == Some(name))
    }

    /// Referring tiers hold annotations that point at a parent annotation
    /// instead of time slots.
    pub fn is_symbolic(self) -> bool {
        matches!(self, Stereotype::SymbolicSubdivision | Stereotype::SymbolicAssociation)
    }
}

impl fmt::Display for Stereotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.constraint_name().unwrap_or("None"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LinguisticType {
    pub id: String,
    pub stereotype: Stereotype,
    #[serde(default)]
    pub ontological: bool,
    pub time_alignable: bool,
    #[serde(default)]
    pub graphic_ref: bool,
}

impl LinguisticType {
    /// A type with the usual alignability for `stereotype`.
    pub fn new(id: impl Into<String>, stereotype: Stereotype) -> Self {
        LinguisticType {
            id: id.into(),
            stereotype,
            ontological: false,
            time_alignable: !stereotype.is_symbolic(),
            graphic_ref: false,
        }
    }

    pub fn ontological(mut self) -> Self {
        self.ontological = true;
        self
    }

    /// First violated invariant, if any.
    pub fn check(&self) -> Result<(), &'static str> {
        if self.stereotype == Stereotype::None && !self.time_alignable {
            return Err("stereotype None requires time alignment");
        }
        if self.stereotype == Stereotype::None && self.ontological {
            return Err("the ontological type needs a referring stereotype");
        }
        if self.stereotype.is_symbolic() && self.time_alignable {
            return Err("symbolic stereotypes cannot be time-alignable");
        }
        if self.stereotype == Stereotype::TimeSubdivision && !self.time_alignable {
            return Err("time subdivision must be time-alignable");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SlotId(pub String);

impl SlotId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SlotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SlotId {
    fn from(s: &str) -> Self {
        SlotId(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeSlot {
    pub id: SlotId,
    /// In document time units; `None` for an unaligned slot.
    pub time: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<ExtraProperty>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Tier {
    pub id: String,
    pub linguistic_type: String,
    pub parent: Option<String>,
    /// Profile reference exactly as authored, e.g. `C:\wabo4.prf`.
    pub profile: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<ExtraProperty>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum Anchor {
    Alignable { begin: SlotId, end: SlotId },
    Referring { parent: String, ordinal: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Annotation {
    pub id: String,
    pub tier: String,
    pub anchor: Anchor,
    pub value: AnnotationValue,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<ExtraProperty>,
}

impl Annotation {
    pub fn parent(&self) -> Option<&str> {
        match &self.anchor {
            Anchor::Referring { parent, .. } => Some(parent),
            Anchor::Alignable { .. } => None,
        }
    }

    pub fn slots(&self) -> Option<(&SlotId, &SlotId)> {
        match &self.anchor {
            Anchor::Alignable { begin, end } => Some((begin, end)),
            Anchor::Referring { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum AnnotationValue {
    Text(String),
    Ontological(OntologicalValue),
}

impl AnnotationValue {
    pub fn is_ontological(&self) -> bool {
        matches!(self, AnnotationValue::Ontological(_))
    }

    pub fn text(&self) -> Option<&str> {
        match self {
            AnnotationValue::Text(t) => Some(t),
            AnnotationValue::Ontological(_) => None,
        }
    }

    /// Text, or the user term for ontological values.
    pub fn display(&self) -> &str {
        match self {
            AnnotationValue::Text(t) => t,
            AnnotationValue::Ontological(v) => &v.user_term,
        }
    }
}

impl From<&str> for AnnotationValue {
    fn from(s: &str) -> Self {
        AnnotationValue::Text(s.to_string())
    }
}

impl From<String> for AnnotationValue {
    fn from(s: String) -> Self {
        AnnotationValue::Text(s)
    }
}

impl From<OntologicalValue> for AnnotationValue {
    fn from(v: OntologicalValue) -> Self {
        AnnotationValue::Ontological(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OntologicalValue {
    pub ont_annotation_id: String,
    pub user_term: String,
    /// One IRI per ontology term the user term maps to.
    pub instances: Vec<TermIri>,
    pub description: String,
    /// Instances created for class-typed terms; each also appears in `instances`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub minted: Vec<MintedInstance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MintedInstance {
    pub iri: TermIri,
    pub class: TermIri,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fills: Vec<PropertyFill>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyFill {
    pub property: TermIri,
    pub value: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MediaDescriptor {
    pub url: String,
    pub mime_type: String,
    pub time_origin: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<ExtraProperty>,
}

impl MediaDescriptor {
    pub fn new(url: impl Into<String>, mime_type: impl Into<String>) -> Self {
        MediaDescriptor {
            url: url.into(),
            mime_type: mime_type.into(),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub author: String,
    pub date: String,
}

/// A stored property this library does not interpret, kept for re-emission.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraProperty {
    pub predicate: String,
    pub object: ExtraObject,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ExtraObject {
    Iri(String),
    Literal {
        value: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        language: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        datatype: Option<String>,
    },
}

/// Interval of an annotation in document time units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "state")]
pub enum Alignment {
    Aligned { begin: u64, end: u64 },
    Unaligned,
}
