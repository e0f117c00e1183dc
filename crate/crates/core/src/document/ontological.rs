use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AnnotationDocument, AnnotationValue, EngineError, MintedInstance, OntologicalValue, PropertyFill};
use crate::iri::{is_ncname, TermIri};
use crate::ontology::{Ontology, TermKind};
use crate::profile::Profile;
use crate::vocabulary::Vocabulary;

/// What the annotator picked for one user-defined term.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OntologicalRequest {
    pub ont_annotation_id: String,
    pub user_term: String,
    #[serde(default)]
    pub description: String,
    /// Keyed by mapping target as written in the profile. Targets that are
    /// individuals need no entry.
    #[serde(default)]
    pub instances: BTreeMap<String, InstanceInput>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceInput {
    /// Local name of the new instance, minted in the class's namespace.
    pub name: Option<String>,
    #[serde(default)]
    pub fills: Vec<FillInput>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillInput {
    /// Absolute IRI or a local name in the class's namespace.
    pub property: String,
    pub value: String,
}

impl OntologicalRequest {
    pub fn new(ont_annotation_id: impl Into<String>, user_term: impl Into<String>) -> Self {
        OntologicalRequest {
            ont_annotation_id: ont_annotation_id.into(),
            user_term: user_term.into(),
            ..Default::default()
        }
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    /// Supplies the instance for a class-typed target.
    pub fn instance(mut self, target: impl Into<String>, name: impl Into<String>, fills: &[(&str, &str)]) -> Self {
        self.instances.insert(
            target.into(),
            InstanceInput {
                name: Some(name.into()),
                fills: fills
                    .iter()
                    .map(|(p, v)| FillInput {
                        property: p.to_string(),
                        value: v.to_string(),
                    })
                    .collect(),
            },
        );
        self
    }
}

/// Turns a request into a stored value: individuals are referenced as they
/// are, classes get a fresh instance.
pub fn instantiate(
    profile: &Profile,
    ontology: &Ontology,
    request: &OntologicalRequest,
) -> Result<OntologicalValue, EngineError> {
    let targets = profile
        .lookup(&request.user_term)
        .map_err(|_| EngineError::UnknownUserTerm(request.user_term.clone()))?;
    let mut instances = Vec::with_capacity(targets.len());
    let mut minted = Vec::new();
    for target in targets {
        let term = ontology.resolve_term(target).map_err(|e| EngineError::UnresolvedTerm {
            term: target.clone(),
            reason: e.to_string(),
        })?;
        match term.kind {
            TermKind::Individual => instances.push(term.iri.clone()),
            TermKind::Class => {
                let input = request.instances.get(target);
                let name = input
                    .and_then(|i| i.name.as_deref())
                    .filter(|n| !n.is_empty())
                    .ok_or_else(|| EngineError::MissingInstanceName(target.clone()))?;
                if !is_ncname(name) {
                    return Err(EngineError::InvalidId(name.to_string()));
                }
                let namespace = term.iri.namespace();
                let iri = TermIri::parse(format!("{namespace}{name}"))
                    .map_err(|_| EngineError::InvalidId(name.to_string()))?;
                if ontology.get(&iri).is_some() || minted.iter().any(|m: &MintedInstance| m.iri == iri) {
                    return Err(EngineError::InstanceExists(iri));
                }
                let fills = input.map(|i| i.fills.as_slice()).unwrap_or_default();
                if term.has_restrictions && fills.is_empty() {
                    return Err(EngineError::MissingPropertyFills(target.clone()));
                }
                let fills = fills
                    .iter()
                    .map(|f| {
                        Ok(PropertyFill {
                            property: property_iri(namespace, &f.property)?,
                            value: f.value.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>, EngineError>>()?;
                instances.push(iri.clone());
                minted.push(MintedInstance {
                    iri,
                    class: term.iri.clone(),
                    fills,
                });
            }
        }
    }
    Ok(OntologicalValue {
        ont_annotation_id: request.ont_annotation_id.clone(),
        user_term: request.user_term.clone(),
        instances,
        description: request.description.clone(),
        minted,
    })
}

fn property_iri(namespace: &str, property: &str) -> Result<TermIri, EngineError> {
    if let Ok(iri) = TermIri::parse(property) {
        return Ok(iri);
    }
    if is_ncname(property) {
        if let Ok(iri) = TermIri::parse(format!("{namespace}{property}")) {
            return Ok(iri);
        }
    }
    Err(EngineError::InvalidProperty(property.to_string()))
}

impl AnnotationDocument {
    /// Sets the value of an annotation on an ontological tier, resolving the
    /// user term through the tier's profile.
    pub fn set_ontological_value(
        &mut self,
        annotation: &str,
        request: &OntologicalRequest,
        vocabulary: &Vocabulary,
    ) -> Result<(), EngineError> {
        let ann = self
            .annotation(annotation)
            .ok_or_else(|| EngineError::UnknownAnnotation(annotation.to_string()))?;
        let tier = self.tier(&ann.tier).expect("annotation tier exists");
        let profile_ref = match (&tier.profile, self.tier_type(&tier.id)) {
            (Some(p), Some(lt)) if lt.ontological => p.clone(),
            _ => return Err(EngineError::NotOntologicalTier(tier.id.clone())),
        };
        let (profile, ontology) = vocabulary.binding(&profile_ref)?;
        let value = instantiate(profile, ontology, request)?;
        self.set_value(annotation, AnnotationValue::Ontological(value))
    }
}
