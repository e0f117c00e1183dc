//! Profiles and ontologies available to a document.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::document::EngineError;
use crate::ontology::Ontology;
use crate::profile::Profile;

/// Registry used to resolve a tier's profile reference and the profile's
/// source ontology.
///
/// Profile lookup tries the exact reference first, then the file name, so a
/// tier pointing at `C:\wabo4.prf` finds a profile registered as `wabo4.prf`
/// (and vice versa).
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    profiles: BTreeMap<String, Profile>,
    ontologies: BTreeMap<String, Arc<Ontology>>,
}

/// Last path component, accepting both `/` and `\` separators.
pub fn file_name(reference: &str) -> &str {
    reference.rsplit(['/', '\\']).next().unwrap_or(reference)
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert_profile(&mut self, reference: impl Into<String>, profile: Profile) {
        self.profiles.insert(reference.into(), profile);
    }

    /// Registers an ontology under its own source IRI.
    pub fn insert_ontology(&mut self, ontology: impl Into<Arc<Ontology>>) {
        let ontology = ontology.into();
        self.ontologies.insert(ontology.source_iri().to_string(), ontology);
    }

    /// Registers an ontology under an explicit IRI, e.g. a profile's `SOURCE`.
    pub fn insert_ontology_as(&mut self, iri: impl Into<String>, ontology: impl Into<Arc<Ontology>>) {
        self.ontologies.insert(iri.into(), ontology.into());
    }

    pub fn profiles(&self) -> impl Iterator<Item = (&str, &Profile)> {
        self.profiles.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn profile(&self, reference: &str) -> Option<&Profile> {
        if let Some(p) = self.profiles.get(reference) {
            return Some(p);
        }
        let wanted = file_name(reference);
        self.profiles
            .iter()
            .find(|(k, _)| file_name(k) == wanted)
            .map(|(_, p)| p)
    }

    pub fn profile_mut(&mut self, reference: &str) -> Option<&mut Profile> {
        let key = if self.profiles.contains_key(reference) {
            reference.to_string()
        } else {
            let wanted = file_name(reference);
            self.profiles.keys().find(|k| file_name(k) == wanted)?.clone()
        };
        self.profiles.get_mut(&key)
    }

    pub fn ontology(&self, iri: &str) -> Option<&Arc<Ontology>> {
        self.ontologies.get(iri)
    }

    /// Profile bound by `reference` and the ontology it draws terms from.
    pub fn binding(&self, reference: &str) -> Result<(&Profile, &Ontology), EngineError> {
        let profile = self
            .profile(reference)
            .ok_or_else(|| EngineError::UnknownProfile(reference.to_string()))?;
        let ontology = self
            .ontology(&profile.source)
            .ok_or_else(|| EngineError::UnknownOntology(profile.source.clone()))?;
        Ok((profile, ontology))
    }
}
