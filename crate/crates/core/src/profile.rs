//! Language profiles: user-defined terms mapped onto ontology terms.
//!
//! A profile is bound to one source ontology and stored as a small XML file
//! (`.prf`):
//!
//! ```xml
//! <?xml version="1.0" encoding="UTF-8"?>
//! <PROFILE AUTHOR="Artem" DESCRIPTION="Potawatomi Language" VERSION="1.0"
//!   SOURCE="http://www.u.arizona.edu/~farrar/gold.owl">
//!   <USER_DEFINED_TERM DESCRIPTION="" NAME="NI">
//!     <ONTOLOGY_TERM NAME="Noun"/>
//!     <ONTOLOGY_TERM NAME="Inanimate"/>
//!   </USER_DEFINED_TERM>
//! </PROFILE>
//! ```

use std::io::Cursor;

use quick_xml::events::{BytesDecl, BytesEnd, BytesStart, Event};
use quick_xml::{Reader, Writer};
use serde::{Deserialize, Serialize};

use crate::ontology::{Ontology, OntologyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfileError {
    #[error("profile source ontology must not be empty")]
    EmptySource,
    #[error("user-defined term `{0}` already exists")]
    DuplicateUserTerm(String),
    #[error("user-defined term `{0}` must map to at least one ontology term")]
    EmptyTargets(String),
    #[error("user-defined term `{term}` lists `{target}` twice")]
    DuplicateTarget { term: String, target: String },
    #[error("user-defined term name must not be empty")]
    EmptyName,
    #[error("no user-defined term `{0}`")]
    NotFound(String),
    #[error("malformed XML: {0}")]
    MalformedXml(String),
    #[error("schema violation: {0}")]
    SchemaViolation(String),
}

impl ProfileError {
    /// Stable variant name, used on the wire.
    pub fn name(&self) -> &'static str {
        match self {
            ProfileError::EmptySource => "EmptySource",
            ProfileError::DuplicateUserTerm(_) => "DuplicateUserTerm",
            ProfileError::EmptyTargets(_) => "EmptyTargets",
            ProfileError::DuplicateTarget { .. } => "DuplicateTarget",
            ProfileError::EmptyName => "EmptyName",
            ProfileError::NotFound(_) => "NotFound",
            ProfileError::MalformedXml(_) => "MalformedXml",
            ProfileError::SchemaViolation(_) => "SchemaViolation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserTerm {
    pub name: String,
    #[serde(default)]
    pub description: String,
}

impl UserTerm {
    pub fn new(name: impl Into<String>) -> Self {
        UserTerm {
            name: name.into(),
            description: String::new(),
        }
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }
}

/// One row of the mapping: a user term and the ontology terms it stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermMapping {
    #[serde(flatten)]
    pub term: UserTerm,
    /// Ontology term names (bare local names or full IRIs), in display order.
    pub targets: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub author: String,
    pub description: String,
    pub version: String,
    pub source: String,
    mappings: Vec<TermMapping>,
}

impl Profile {
    pub fn new(
        author: impl Into<String>,
        description: impl Into<String>,
        version: impl Into<String>,
        source: impl Into<String>,
    ) -> Result<Self, ProfileError> {
        let source = source.into();
        if source.is_empty() {
            return Err(ProfileError::EmptySource);
        }
        Ok(Profile {
            author: author.into(),
            description: description.into(),
            version: version.into(),
            source,
            mappings: Vec::new(),
        })
    }

    pub fn mappings(&self) -> &[TermMapping] {
        &self.mappings
    }

    pub fn len(&self) -> usize {
        self.mappings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mappings.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.position(name).is_some()
    }

    fn position(&self, name: &str) -> Option<usize> {
        self.mappings.iter().position(|m| m.term.name == name)
    }

    pub fn add_mapping<S: Into<String>>(
        &mut self,
        term: UserTerm,
        targets: impl IntoIterator<Item = S>,
    ) -> Result<(), ProfileError> {
        let targets: Vec<String> = targets.into_iter().map(Into::into).collect();
        check_mapping(&term, &targets)?;
        if self.contains(&term.name) {
            return Err(ProfileError::DuplicateUserTerm(term.name));
        }
        self.mappings.push(TermMapping { term, targets });
        Ok(())
    }

    /// Renames a user term in place. Targets and position are unchanged.
    pub fn rename_user_term(&mut self, old: &str, new: &str) -> Result<(), ProfileError> {
        let index = self
            .position(old)
            .ok_or_else(|| ProfileError::NotFound(old.to_string()))?;
        if new.is_empty() {
            return Err(ProfileError::EmptyName);
        }
        if old != new && self.contains(new) {
            return Err(ProfileError::DuplicateUserTerm(new.to_string()));
        }
        self.mappings[index].term.name = new.to_string();
        Ok(())
    }

    pub fn lookup(&self, name: &str) -> Result<&[String], ProfileError> {
        self.position(name)
            .map(|i| self.mappings[i].targets.as_slice())
            .ok_or_else(|| ProfileError::NotFound(name.to_string()))
    }

    /// Every mapping target that does not resolve in `ontology`.
    pub fn validate(&self, ontology: &Ontology) -> ProfileReport {
        let mut unresolved = Vec::new();
        for mapping in &self.mappings {
            for target in &mapping.targets {
                if let Err(error) = ontology.resolve_term(target) {
                    unresolved.push(UnresolvedTarget {
                        user_term: mapping.term.name.clone(),
                        target: target.clone(),
                        reason: error.to_string(),
                        ambiguous: matches!(error, OntologyError::Ambiguous { .. }),
                    });
                }
            }
        }
        ProfileReport { unresolved }
    }

    pub fn to_xml(&self) -> Vec<u8> {
        serialize_profile(self)
    }

    pub fn from_xml(bytes: &[u8]) -> Result<Self, ProfileError> {
        parse_profile(bytes)
    }
}

fn check_mapping(term: &UserTerm, targets: &[String]) -> Result<(), ProfileError> {
    if term.name.is_empty() {
        return Err(ProfileError::EmptyName);
    }
    if targets.is_empty() {
        return Err(ProfileError::EmptyTargets(term.name.clone()));
    }
    for (i, target) in targets.iter().enumerate() {
        if targets[..i].contains(target) {
            return Err(ProfileError::DuplicateTarget {
                term: term.name.clone(),
                target: target.clone(),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnresolvedTarget {
    pub user_term: String,
    pub target: String,
    pub reason: String,
    pub ambiguous: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ProfileReport {
    pub unresolved: Vec<UnresolvedTarget>,
}

impl ProfileReport {
    pub fn is_empty(&self) -> bool {
        self.unresolved.is_empty()
    }
}

pub fn serialize_profile(profile: &Profile) -> Vec<u8> {
    let mut writer = Writer::new_with_indent(Cursor::new(Vec::new()), b' ', 2);
    let write = |writer: &mut Writer<Cursor<Vec<u8>>>| -> Result<(), quick_xml::Error> {
        writer.write_event(Event::Decl(BytesDecl::new("1.0", Some("UTF-8"), None)))?;
        let mut root = BytesStart::new("PROFILE");
        root.push_attribute(("AUTHOR", profile.author.as_str()));
        root.push_attribute(("DESCRIPTION", profile.description.as_str()));
        root.push_attribute(("VERSION", profile.version.as_str()));
        root.push_attribute(("SOURCE", profile.source.as_str()));
        if profile.mappings.is_empty() {
            return writer.write_event(Event::Empty(root));
        }
        writer.write_event(Event::Start(root))?;
        for mapping in &profile.mappings {
            let mut term = BytesStart::new("USER_DEFINED_TERM");
            term.push_attribute(("DESCRIPTION", mapping.term.description.as_str()));
            term.push_attribute(("NAME", mapping.term.name.as_str()));
            writer.write_event(Event::Start(term))?;
            for target in &mapping.targets {
                let mut el = BytesStart::new("ONTOLOGY_TERM");
                el.push_attribute(("NAME", target.as_str()));
                writer.write_event(Event::Empty(el))?;
            }
            writer.write_event(Event::End(BytesEnd::new("USER_DEFINED_TERM")))?;
        }
        writer.write_event(Event::End(BytesEnd::new("PROFILE")))
    };
    write(&mut writer).expect("writing to memory cannot fail");
    let mut bytes = writer.into_inner().into_inner();
    bytes.push(b'\n');
    bytes
}

fn attributes(element: &BytesStart<'_>, reader: &Reader<&[u8]>) -> Result<Vec<(String, String)>, ProfileError> {
    element
        .attributes()
        .map(|attr| {
            let attr = attr.map_err(|e| ProfileError::MalformedXml(e.to_string()))?;
            let key = String::from_utf8_lossy(attr.key.as_ref()).into_owned();
            let value = attr
                .decode_and_unescape_value(reader.decoder())
                .map_err(|e| ProfileError::MalformedXml(e.to_string()))?
                .into_owned();
            Ok((key, value))
        })
        .collect()
}

fn required(attrs: &[(String, String)], element: &str, name: &str) -> Result<String, ProfileError> {
    attrs
        .iter()
        .find(|(k, _)| k == name)
        .map(|(_, v)| v.clone())
        .ok_or_else(|| ProfileError::SchemaViolation(format!("{element} is missing {name}")))
}

pub fn parse_profile(bytes: &[u8]) -> Result<Profile, ProfileError> {
    let mut reader = Reader::from_reader(bytes);
    reader.config_mut().trim_text(true);
    let mut profile: Option<Profile> = None;
    let mut current: Option<(UserTerm, Vec<String>)> = None;
    let mut closed = false;
    loop {
        let event = reader
            .read_event()
            .map_err(|e| ProfileError::MalformedXml(e.to_string()))?;
        let (element, is_empty) = match &event {
            Event::Start(e) => (Some(e.clone()), false),
            Event::Empty(e) => (Some(e.clone()), true),
            Event::End(e) => {
                match e.name().as_ref() {
                    b"USER_DEFINED_TERM" => {
                        let (term, targets) = current.take().expect("matched start tag");
                        finish_term(profile.as_mut().expect("inside PROFILE"), term, targets)?;
                    }
                    b"PROFILE" => closed = true,
                    _ => {}
                }
                continue;
            }
            Event::Eof => break,
            Event::Text(t) if !t.is_empty() => {
                return Err(ProfileError::SchemaViolation("unexpected text content".to_string()))
            }
            _ => continue,
        };
        let element = element.expect("start or empty");
        let name = element.name().as_ref().to_vec();
        let attrs = attributes(&element, &reader)?;
        match (name.as_slice(), profile.is_some(), current.is_some()) {
            (b"PROFILE", false, _) => {
                let source = required(&attrs, "PROFILE", "SOURCE")?;
                if source.is_empty() {
                    return Err(ProfileError::SchemaViolation("SOURCE is empty".to_string()));
                }
                profile = Some(Profile {
                    author: required(&attrs, "PROFILE", "AUTHOR")?,
                    description: required(&attrs, "PROFILE", "DESCRIPTION")?,
                    version: required(&attrs, "PROFILE", "VERSION")?,
                    source,
                    mappings: Vec::new(),
                });
                closed = is_empty;
            }
            (b"USER_DEFINED_TERM", true, false) if !closed => {
                let term = UserTerm {
                    name: required(&attrs, "USER_DEFINED_TERM", "NAME")?,
                    description: required(&attrs, "USER_DEFINED_TERM", "DESCRIPTION")?,
                };
                if is_empty {
                    return Err(ProfileError::SchemaViolation(format!(
                        "USER_DEFINED_TERM {} has no ONTOLOGY_TERM",
                        term.name
                    )));
                }
                current = Some((term, Vec::new()));
            }
            (b"ONTOLOGY_TERM", true, true) => {
                let target = required(&attrs, "ONTOLOGY_TERM", "NAME")?;
                current.as_mut().expect("inside term").1.push(target);
                if !is_empty {
                    reader
                        .read_to_end(element.name())
                        .map_err(|e| ProfileError::MalformedXml(e.to_string()))?;
                }
            }
            (other, _, _) => {
                return Err(ProfileError::SchemaViolation(format!(
                    "unexpected element {}",
                    String::from_utf8_lossy(other)
                )))
            }
        }
    }
    match profile {
        Some(p) if closed => Ok(p),
        Some(_) => Err(ProfileError::MalformedXml("unclosed PROFILE".to_string())),
        None => Err(ProfileError::SchemaViolation(
            "root element must be PROFILE".to_string(),
        )),
    }
}

fn finish_term(profile: &mut Profile, term: UserTerm, targets: Vec<String>) -> Result<(), ProfileError> {
    if targets.is_empty() {
        return Err(ProfileError::SchemaViolation(format!(
            "USER_DEFINED_TERM {} has no ONTOLOGY_TERM",
            term.name
        )));
    }
    profile.add_mapping(term, targets).map_err(|e| match e {
        ProfileError::DuplicateUserTerm(_) | ProfileError::DuplicateTarget { .. } | ProfileError::EmptyName => {
            ProfileError::SchemaViolation(e.to_string())
        }
        other => other,
    })
}
