//! OWL ontologies read from RDF/XML.
//!
//! Only the parts an annotator needs are interpreted: class declarations,
//! `rdfs:subClassOf` edges between named classes, named individuals and their
//! types, `rdfs:label`, and whether a class definition carries any
//! `owl:Restriction`. Everything else in the document is skipped. Imports are
//! not followed.
//!
//! ```no_run
//! let bytes = std::fs::read("gold.owl").unwrap();
//! let ontology = tierlink::ontology::load_ontology(&bytes[..]).unwrap();
//! for term in ontology.list_terms() {
//!     println!("{}", term.label);
//! }
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::io::BufRead;

use rio_api::model::{Literal, Subject, Term};
use rio_api::parser::TriplesParser;
use serde::Serialize;

use crate::iri::TermIri;

const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
const OWL: &str = "http://www.w3.org/2002/07/owl#";
const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const RDF_FIRST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
const RDF_REST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
const RDFS_CLASS: &str = "http://www.w3.org/2000/01/rdf-schema#Class";
const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
const OWL_THING: &str = "http://www.w3.org/2002/07/owl#Thing";
const OWL_NAMED_INDIVIDUAL: &str = "http://www.w3.org/2002/07/owl#NamedIndividual";
const OWL_ONTOLOGY: &str = "http://www.w3.org/2002/07/owl#Ontology";
const OWL_RESTRICTION: &str = "http://www.w3.org/2002/07/owl#Restriction";
const OWL_EQUIVALENT_CLASS: &str = "http://www.w3.org/2002/07/owl#equivalentClass";
const OWL_INTERSECTION_OF: &str = "http://www.w3.org/2002/07/owl#intersectionOf";
const OWL_UNION_OF: &str = "http://www.w3.org/2002/07/owl#unionOf";
const OWL_COMPLEMENT_OF: &str = "http://www.w3.org/2002/07/owl#complementOf";

#[derive(Debug, thiserror::Error)]
pub enum OntologyError {
    #[error("malformed RDF/XML: {0}")]
    MalformedXml(String),
    #[error("subclass cycle through {}", join_iris(.0))]
    CyclicHierarchy(Vec<TermIri>),
    #[error("no term named `{0}`")]
    NotFound(String),
    #[error("`{name}` is ambiguous: {}", join_iris(.candidates))]
    Ambiguous { name: String, candidates: Vec<TermIri> },
}

impl OntologyError {
    /// Stable variant name, used on the wire.
    pub fn name(&self) -> &'static str {
        match self {
            OntologyError::MalformedXml(_) => "MalformedXml",
            OntologyError::CyclicHierarchy(_) => "CyclicHierarchy",
            OntologyError::NotFound(_) => "NotFound",
            OntologyError::Ambiguous { .. } => "Ambiguous",
        }
    }
}

fn join_iris(iris: &[TermIri]) -> String {
    iris.iter().map(TermIri::as_str).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Class,
    Individual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TermDescriptor {
    pub iri: TermIri,
    pub kind: TermKind,
    pub label: String,
    /// Always false for individuals.
    pub has_restrictions: bool,
    /// Superclasses for a class, types for an individual.
    pub parents: BTreeSet<TermIri>,
}

/// Immutable term graph. Share freely between readers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Ontology {
    source_iri: String,
    terms: BTreeMap<TermIri, TermDescriptor>,
    roots: BTreeSet<TermIri>,
    external: BTreeSet<TermIri>,
}

/// Kind of a node in [`Ontology::term_tree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Class,
    Individual,
    /// A parent IRI referenced but not declared in this document.
    External,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    pub iri: TermIri,
    pub label: String,
    pub kind: NodeKind,
    pub children: Vec<TreeNode>,
}

impl Ontology {
    /// IRI of the `owl:Ontology` header, else the document base, else empty.
    pub fn source_iri(&self) -> &str {
        &self.source_iri
    }

    pub fn terms(&self) -> &BTreeMap<TermIri, TermDescriptor> {
        &self.terms
    }

    pub fn roots(&self) -> &BTreeSet<TermIri> {
        &self.roots
    }

    /// Parent IRIs that are referenced but not declared.
    pub fn external_refs(&self) -> &BTreeSet<TermIri> {
        &self.external
    }

    pub fn get(&self, iri: &TermIri) -> Option<&TermDescriptor> {
        self.terms.get(iri)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All terms ordered by label (case-insensitive), then IRI.
    pub fn list_terms(&self) -> Vec<&TermDescriptor> {
        let mut terms: Vec<_> = self.terms.values().collect();
        terms.sort_by_cached_key(|t| (t.label.to_lowercase(), t.iri.clone()));
        terms
    }

    /// The hierarchical view. Terms with several parents appear under each
    /// parent, with their whole subtree. Undeclared parents become `External`
    /// roots so that every direct parent edge shows up.
    pub fn term_tree(&self) -> Vec<TreeNode> {
        let mut children: HashMap<&TermIri, Vec<&TermIri>> = HashMap::new();
        for term in self.terms.values() {
            for parent in &term.parents {
                children.entry(parent).or_default().push(&term.iri);
            }
        }
        let key = |iri: &TermIri| (self.label_of(iri).to_lowercase(), iri.clone());
        for list in children.values_mut() {
            list.sort_by_cached_key(|iri| key(iri));
        }
        let mut roots: Vec<&TermIri> = self.roots.iter().chain(self.external.iter()).collect();
        roots.sort_by_cached_key(|iri| key(iri));
        roots.into_iter().map(|iri| self.build_node(iri, &children)).collect()
    }

    fn build_node(&self, iri: &TermIri, children: &HashMap<&TermIri, Vec<&TermIri>>) -> TreeNode {
        let kind = match self.terms.get(iri) {
            Some(t) if t.kind == TermKind::Class => NodeKind::Class,
            Some(_) => NodeKind::Individual,
            None => NodeKind::External,
        };
        TreeNode {
            iri: iri.clone(),
            label: self.label_of(iri).to_string(),
            kind,
            children: children
                .get(iri)
                .map(|list| list.iter().map(|c| self.build_node(c, children)).collect())
                .unwrap_or_default(),
        }
    }

    fn label_of<'a>(&'a self, iri: &'a TermIri) -> &'a str {
        self.terms
            .get(iri)
            .map(|t| t.label.as_str())
            .unwrap_or_else(|| iri.local_name())
    }

    /// Exact IRI match first, then a unique local-name match.
    pub fn resolve_term(&self, name: &str) -> Result<&TermDescriptor, OntologyError> {
        if let Ok(iri) = TermIri::parse(name) {
            if let Some(term) = self.terms.get(&iri) {
                return Ok(term);
            }
        }
        let mut matches = self.terms.values().filter(|t| t.iri.local_name() == name);
        match (matches.next(), matches.next()) {
            (None, _) => Err(OntologyError::NotFound(name.to_string())),
            (Some(term), None) => Ok(term),
            (Some(a), Some(b)) => {
                let mut candidates = vec![a.iri.clone(), b.iri.clone()];
                candidates.extend(matches.map(|t| t.iri.clone()));
                Err(OntologyError::Ambiguous {
                    name: name.to_string(),
                    candidates,
                })
            }
        }
    }

    /// `iri` plus every class below it, plus every individual typed by any of those.
    pub fn descendants_and_instances(&self, iri: &TermIri) -> BTreeSet<TermIri> {
        let mut children: HashMap<&TermIri, Vec<&TermIri>> = HashMap::new();
        for term in self.terms.values() {
            for parent in &term.parents {
                children.entry(parent).or_default().push(&term.iri);
            }
        }
        let mut seen = BTreeSet::from([iri.clone()]);
        let mut queue = VecDeque::from([iri]);
        while let Some(next) = queue.pop_front() {
            for child in children.get(next).into_iter().flatten() {
                if seen.insert((*child).clone()) {
                    queue.push_back(child);
                }
            }
        }
        seen
    }
}

/// Parses an RDF/XML document. Relative IRIs resolve against `xml:base`.
pub fn load_ontology(reader: impl BufRead) -> Result<Ontology, OntologyError> {
    load_ontology_with_base(reader, None)
}

/// Like [`load_ontology`], with a base IRI for documents lacking `xml:base`.
pub fn load_ontology_with_base(reader: impl BufRead, base: Option<&str>) -> Result<Ontology, OntologyError> {
    let base = match base {
        Some(b) => Some(
            oxiri::Iri::parse(b.to_string()).map_err(|e| OntologyError::MalformedXml(format!("bad base IRI: {e}")))?,
        ),
        None => None,
    };
    let graph = Graph::read(reader, base)?;
    graph.into_ontology()
}

/// `xml:base` of the document element, without any fragment.
fn root_xml_base(bytes: &[u8]) -> Option<String> {
    let mut reader = quick_xml::Reader::from_reader(bytes);
    let mut buf = Vec::new();
    loop {
        match reader.read_event_into(&mut buf).ok()? {
            quick_xml::events::Event::Start(e) | quick_xml::events::Event::Empty(e) => {
                let attr = e.try_get_attribute("xml:base").ok()??;
                let value = attr.decode_and_unescape_value(reader.decoder()).ok()?;
                let base = value.split('#').next().unwrap_or_default();
                return (!base.is_empty()).then(|| base.to_string());
            }
            quick_xml::events::Event::Eof => return None,
            _ => buf.clear(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Iri(String),
    Blank(String),
}

#[derive(Debug, Clone)]
enum Object {
    Node(Node),
    Literal { value: String, lang: Option<String> },
}

#[derive(Default)]
struct Graph {
    // subject -> (predicate, object), document order
    edges: HashMap<Node, Vec<(String, Object)>>,
    subjects: Vec<Node>,
    base: Option<String>,
}

impl Graph {
    fn read(mut reader: impl BufRead, base: Option<oxiri::Iri<String>>) -> Result<Self, OntologyError> {
        let mut bytes = Vec::new();
        reader
            .read_to_end(&mut bytes)
            .map_err(|e| OntologyError::MalformedXml(e.to_string()))?;
        let mut graph = Graph {
            base: base
                .as_ref()
                .map(|b| b.as_str().to_string())
                .or_else(|| root_xml_base(&bytes)),
            ..Default::default()
        };
        let mut parser = rio_xml::RdfXmlParser::new(bytes.as_slice(), base);
        parser
            .parse_all(&mut |t| {
                let subject = match t.subject {
                    Subject::NamedNode(n) => Node::Iri(n.iri.to_string()),
                    Subject::BlankNode(b) => Node::Blank(b.id.to_string()),
                    Subject::Triple(_) => return Ok(()),
                };
                let object = match t.object {
                    Term::NamedNode(n) => Object::Node(Node::Iri(n.iri.to_string())),
                    Term::BlankNode(b) => Object::Node(Node::Blank(b.id.to_string())),
                    Term::Literal(Literal::Simple { value }) => Object::Literal {
                        value: value.to_string(),
                        lang: None,
                    },
                    Term::Literal(Literal::LanguageTaggedString { value, language }) => Object::Literal {
                        value: value.to_string(),
                        lang: Some(language.to_string()),
                    },
                    Term::Literal(Literal::Typed { value, .. }) => Object::Literal {
                        value: value.to_string(),
                        lang: None,
                    },
                    Term::Triple(_) => return Ok(()),
                };
                let entry = graph.edges.entry(subject.clone()).or_insert_with(|| {
                    graph.subjects.push(subject);
                    Vec::new()
                });
                entry.push((t.predicate.iri.to_string(), object));
                Ok(()) as Result<(), rio_xml::RdfXmlError>
            })
            .map_err(|e| OntologyError::MalformedXml(e.to_string()))?;
        Ok(graph)
    }

    fn objects<'a>(&'a self, subject: &Node, predicate: &'a str) -> impl Iterator<Item = &'a Object> + 'a {
        self.edges
            .get(subject)
            .into_iter()
            .flatten()
            .filter(move |(p, _)| p == predicate)
            .map(|(_, o)| o)
    }

    fn types<'a>(&'a self, subject: &Node) -> impl Iterator<Item = &'a str> + 'a {
        self.objects(subject, RDF_TYPE).filter_map(|o| match o {
            Object::Node(Node::Iri(iri)) => Some(iri.as_str()),
            _ => None,
        })
    }

    /// True when the class definition reaches an `owl:Restriction` through
    /// `subClassOf`/`equivalentClass` and anonymous boolean class expressions.
    fn mentions_restriction(&self, class: &Node) -> bool {
        let mut queue: VecDeque<Node> = VecDeque::new();
        for predicate in [RDFS_SUBCLASS_OF, OWL_EQUIVALENT_CLASS] {
            for object in self.objects(class, predicate) {
                if let Object::Node(n @ Node::Blank(_)) = object {
                    queue.push_back(n.clone());
                }
            }
        }
        let mut seen = BTreeSet::new();
        while let Some(node) = queue.pop_front() {
            let Node::Blank(id) = &node else { continue };
            if !seen.insert(id.clone()) {
                continue;
            }
            if self.types(&node).any(|t| t == OWL_RESTRICTION) {
                return true;
            }
            for predicate in [
                OWL_INTERSECTION_OF,
                OWL_UNION_OF,
                OWL_COMPLEMENT_OF,
                RDF_FIRST,
                RDF_REST,
            ] {
                for object in self.objects(&node, predicate) {
                    if let Object::Node(n @ Node::Blank(_)) = object {
                        queue.push_back(n.clone());
                    }
                }
            }
        }
        false
    }

    fn label(&self, subject: &Node) -> Option<String> {
        let mut fallback = None;
        for object in self.objects(subject, RDFS_LABEL) {
            if let Object::Literal { value, lang } = object {
                match lang.as_deref() {
                    None | Some("en") => return Some(value.clone()),
                    Some(_) if fallback.is_none() => fallback = Some(value.clone()),
                    Some(_) => {}
                }
            }
        }
        fallback
    }

    fn into_ontology(self) -> Result<Ontology, OntologyError> {
        let mut classes: Vec<&str> = Vec::new();
        let mut individuals: Vec<&str> = Vec::new();
        let mut source_iri = None;
        for subject in &self.subjects {
            let Node::Iri(iri) = subject else { continue };
            let types: Vec<&str> = self.types(subject).collect();
            if types.contains(&OWL_ONTOLOGY) && source_iri.is_none() {
                source_iri = Some(iri.clone());
            }
            let is_class = types.iter().any(|t| *t == OWL_CLASS || *t == RDFS_CLASS)
                || self.objects(subject, RDFS_SUBCLASS_OF).next().is_some();
            if is_class {
                classes.push(iri);
            } else if types
                .iter()
                .any(|t| !is_reserved(t) || *t == OWL_THING || *t == OWL_NAMED_INDIVIDUAL)
            {
                individuals.push(iri);
            }
        }

        let mut terms = BTreeMap::new();
        for (iri, kind) in classes
            .iter()
            .map(|i| (*i, TermKind::Class))
            .chain(individuals.iter().map(|i| (*i, TermKind::Individual)))
        {
            // Skip subjects whose IRI has no usable local name (e.g. the ontology header).
            let Ok(term_iri) = TermIri::parse(iri) else { continue };
            let node = Node::Iri(iri.to_string());
            let parent_iris: Vec<&str> = match kind {
                TermKind::Class => self
                    .objects(&node, RDFS_SUBCLASS_OF)
                    .filter_map(|o| match o {
                        Object::Node(Node::Iri(p)) => Some(p.as_str()),
                        _ => None,
                    })
                    .collect(),
                TermKind::Individual => self.types(&node).collect(),
            };
            let parents = parent_iris
                .into_iter()
                .filter(|p| *p != iri && !is_reserved(p))
                .filter_map(|p| TermIri::parse(p).ok())
                .collect();
            let label = self.label(&node).unwrap_or_else(|| term_iri.local_name().to_string());
            let has_restrictions = kind == TermKind::Class && self.mentions_restriction(&node);
            terms.insert(
                term_iri.clone(),
                TermDescriptor {
                    iri: term_iri,
                    kind,
                    label,
                    has_restrictions,
                    parents,
                },
            );
        }

        let external: BTreeSet<TermIri> = terms
            .values()
            .flat_map(|t: &TermDescriptor| t.parents.iter())
            .filter(|p| !terms.contains_key(*p))
            .cloned()
            .collect();
        let roots = terms
            .values()
            .filter(|t| t.parents.is_empty())
            .map(|t| t.iri.clone())
            .collect();
        check_acyclic(&terms)?;
        Ok(Ontology {
            source_iri: source_iri.or(self.base).unwrap_or_default(),
            terms,
            roots,
            external,
        })
    }
}

fn is_reserved(iri: &str) -> bool {
    [RDF, RDFS, OWL, XSD].iter().any(|ns| iri.starts_with(ns))
}

/// Kahn's algorithm over class-to-class edges; on failure reports one cycle.
fn check_acyclic(terms: &BTreeMap<TermIri, TermDescriptor>) -> Result<(), OntologyError> {
    let class_parents = |t: &TermDescriptor| -> Vec<TermIri> {
        t.parents
            .iter()
            .filter(|p| matches!(terms.get(*p), Some(d) if d.kind == TermKind::Class))
            .cloned()
            .collect()
    };
    let mut pending: HashMap<&TermIri, usize> = HashMap::new();
    let mut children: HashMap<TermIri, Vec<&TermIri>> = HashMap::new();
    for term in terms.values().filter(|t| t.kind == TermKind::Class) {
        let parents = class_parents(term);
        pending.insert(&term.iri, parents.len());
        for p in parents {
            children.entry(p).or_default().push(&term.iri);
        }
    }
    let mut ready: Vec<&TermIri> = pending.iter().filter(|(_, n)| **n == 0).map(|(i, _)| *i).collect();
    let mut done = 0;
    while let Some(iri) = ready.pop() {
        done += 1;
        for child in children.get(iri).into_iter().flatten() {
            let n = pending.get_mut(child).expect("child is a class");
            *n -= 1;
            if *n == 0 {
                ready.push(child);
            }
        }
    }
    if done == pending.len() {
        return Ok(());
    }
    // Walk parent links among the leftover nodes until one repeats.
    let leftover: BTreeSet<&TermIri> = pending.iter().filter(|(_, n)| **n > 0).map(|(i, _)| *i).collect();
    let mut path: Vec<TermIri> = Vec::new();
    let mut current = (*leftover.iter().next().expect("non-empty")).clone();
    loop {
        if let Some(pos) = path.iter().position(|i| *i == current) {
            return Err(OntologyError::CyclicHierarchy(path.split_off(pos)));
        }
        path.push(current.clone());
        current = class_parents(&terms[&current])
            .into_iter()
            .find(|p| leftover.contains(p))
            .expect("leftover node keeps a leftover parent");
    }
}
