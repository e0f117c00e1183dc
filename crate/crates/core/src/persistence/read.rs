use std::collections::HashMap;

use rio_api::model::{Literal, Subject, Term};
use rio_api::parser::TriplesParser;

use super::{Codec, PersistError, RDF_NS};
use crate::document::{
    Anchor, Annotation, AnnotationDocument, AnnotationValue, DocumentParts, ExtraObject, ExtraProperty, LinguisticType,
    MediaDescriptor, Metadata, MintedInstance, OntologicalValue, PropertyFill, SlotId, Stereotype, Tier, TimeSlot,
    DEFAULT_TIME_UNIT,
};
use crate::iri::TermIri;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Iri(String),
    Blank(String),
}

impl Node {
    fn iri(&self) -> Option<&str> {
        match self {
            Node::Iri(iri) => Some(iri),
            Node::Blank(_) => None,
        }
    }

    fn label(&self) -> &str {
        match self {
            Node::Iri(s) | Node::Blank(s) => s,
        }
    }
}

#[derive(Debug, Clone)]
enum Object {
    Node(Node),
    Literal {
        value: String,
        language: Option<String>,
        datatype: Option<String>,
    },
}

#[derive(Default)]
struct Graph {
    edges: HashMap<Node, Vec<(String, Object)>>,
    subjects: Vec<Node>,
}

impl Graph {
    fn read(bytes: &[u8]) -> Result<Self, PersistError> {
        let mut graph = Graph::default();
        let mut parser = rio_xml::RdfXmlParser::new(bytes, None);
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
                        language: None,
                        datatype: None,
                    },
                    Term::Literal(Literal::LanguageTaggedString { value, language }) => Object::Literal {
                        value: value.to_string(),
                        language: Some(language.to_string()),
                        datatype: None,
                    },
                    Term::Literal(Literal::Typed { value, datatype }) => Object::Literal {
                        value: value.to_string(),
                        language: None,
                        datatype: Some(datatype.iri.to_string()),
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
            .map_err(|e| PersistError::MalformedXml(e.to_string()))?;
        Ok(graph)
    }

    fn props(&self, node: &Node) -> &[(String, Object)] {
        self.edges.get(node).map(Vec::as_slice).unwrap_or_default()
    }

    fn objects<'a>(&'a self, node: &Node, predicate: &str) -> Vec<&'a Object> {
        self.props(node)
            .iter()
            .filter(|(p, _)| p == predicate)
            .map(|(_, o)| o)
            .collect()
    }

    fn literal(&self, node: &Node, predicate: &str) -> Option<&str> {
        self.objects(node, predicate).into_iter().find_map(|o| match o {
            Object::Literal { value, .. } => Some(value.as_str()),
            Object::Node(_) => None,
        })
    }

    fn resources<'a>(&'a self, node: &Node, predicate: &str) -> Vec<&'a Node> {
        self.objects(node, predicate)
            .into_iter()
            .filter_map(|o| match o {
                Object::Node(n) => Some(n),
                Object::Literal { .. } => None,
            })
            .collect()
    }

    fn resource(&self, node: &Node, predicate: &str) -> Option<&Node> {
        self.resources(node, predicate).into_iter().next()
    }

    fn has_type(&self, node: &Node, class: &str) -> bool {
        self.resources(node, &rdf("type"))
            .into_iter()
            .any(|t| t.iri() == Some(class))
    }

    fn of_type(&self, class: &str) -> Vec<&Node> {
        self.subjects.iter().filter(|s| self.has_type(s, class)).collect()
    }
}

fn rdf(local: &str) -> String {
    format!("{RDF_NS}{local}")
}

struct Reader<'a> {
    graph: Graph,
    ns: &'a str,
    /// `base#`, prefix of every same-document reference.
    prefix: String,
}

impl Reader<'_> {
    fn media(&self, local: &str) -> String {
        format!("{}{local}", self.ns)
    }

    fn lit(&self, node: &Node, local: &str) -> Option<&str> {
        self.graph.literal(node, &self.media(local))
    }

    fn res(&self, node: &Node, local: &str) -> Option<&Node> {
        self.graph.resource(node, &self.media(local))
    }

    fn fragment<'n>(&self, node: &'n Node) -> Option<&'n str> {
        node.iri()?.strip_prefix(self.prefix.as_str())
    }

    /// Explicit id property, else the node's own fragment.
    fn id(&self, node: &Node, local: &str) -> Result<String, PersistError> {
        self.lit(node, local)
            .or_else(|| self.fragment(node))
            .map(str::to_string)
            .ok_or_else(|| missing(node, local))
    }

    fn bool(&self, node: &Node, local: &str) -> Result<Option<bool>, PersistError> {
        self.lit(node, local)
            .map(|v| match v.trim() {
                "true" | "1" => Ok(true),
                "false" | "0" => Ok(false),
                _ => Err(invalid(node, local, v)),
            })
            .transpose()
    }

    fn number<T: std::str::FromStr>(&self, node: &Node, local: &str) -> Result<Option<T>, PersistError> {
        self.lit(node, local)
            .map(|v| v.trim().parse().map_err(|_| invalid(node, local, v)))
            .transpose()
    }

    /// Properties outside `known`, kept as opaque extras.
    fn extras(&self, node: &Node, known: &[&str]) -> Vec<ExtraProperty> {
        let known: Vec<String> = known.iter().map(|k| self.media(k)).collect();
        let rdf_type = rdf("type");
        self.graph
            .props(node)
            .iter()
            .filter(|(p, _)| *p != rdf_type && !known.contains(p))
            .filter_map(|(p, o)| {
                let object = match o {
                    Object::Node(Node::Iri(iri)) => ExtraObject::Iri(iri.clone()),
                    Object::Node(Node::Blank(_)) => return None,
                    Object::Literal {
                        value,
                        language,
                        datatype,
                    } => ExtraObject::Literal {
                        value: value.clone(),
                        language: language.clone(),
                        datatype: datatype.clone(),
                    },
                };
                Some(ExtraProperty {
                    predicate: p.clone(),
                    object,
                })
            })
            .collect()
    }

    fn check_references(&self) -> Result<(), PersistError> {
        for props in self.graph.edges.values() {
            for (_, object) in props {
                let Object::Node(node @ Node::Iri(iri)) = object else {
                    continue;
                };
                let Some(fragment) = iri.strip_prefix(self.prefix.as_str()) else {
                    continue;
                };
                let lenient = Stereotype::from_constraint_name(fragment).is_some();
                if !lenient && !self.graph.edges.contains_key(node) {
                    return Err(PersistError::DanglingReference(iri.clone()));
                }
            }
        }
        Ok(())
    }
}

fn missing(node: &Node, property: &str) -> PersistError {
    PersistError::MissingProperty {
        node: node.label().to_string(),
        property: property.to_string(),
    }
}

fn invalid(node: &Node, property: &str, value: &str) -> PersistError {
    PersistError::InvalidValue {
        node: node.label().to_string(),
        property: property.to_string(),
        value: value.to_string(),
    }
}

pub(super) fn parse(codec: &Codec, bytes: &[u8]) -> Result<AnnotationDocument, PersistError> {
    let graph = Graph::read(bytes)?;
    let ns = codec.media_ns();
    let doc_nodes = graph.of_type(&format!("{ns}AnnotationDocument"));
    let doc_node = match doc_nodes.as_slice() {
        [node @ Node::Iri(_)] => (*node).clone(),
        _ => {
            return Err(PersistError::MissingProperty {
                node: "document".into(),
                property: "a single AnnotationDocument node".into(),
            })
        }
    };
    let base = doc_node.iri().unwrap().split('#').next().unwrap_or_default();
    let reader = Reader {
        prefix: format!("{base}#"),
        graph,
        ns,
    };
    reader.check_references()?;
    let r = &reader;

    let mut parts = DocumentParts {
        metadata: Metadata {
            author: r.lit(&doc_node, "hasAuthor").unwrap_or_default().to_string(),
            date: r.lit(&doc_node, "hasDate").unwrap_or_default().to_string(),
        },
        time_unit: r.lit(&doc_node, "hasTimeUnit").unwrap_or(DEFAULT_TIME_UNIT).to_string(),
        extra: r.extras(
            &doc_node,
            &[
                "hasAuthor",
                "hasDate",
                "hasTimeUnit",
                "hasMediaDescriptor",
                "hasTimeSlot",
                "hasTier",
            ],
        ),
        ..Default::default()
    };

    let mut media = Vec::new();
    for node in r.graph.resources(&doc_node, &r.media("hasMediaDescriptor")) {
        let index: usize = r.number(node, "hasMediaIndex")?.unwrap_or(usize::MAX);
        media.push((
            index,
            MediaDescriptor {
                url: r.lit(node, "hasMediaURL").unwrap_or_default().to_string(),
                mime_type: r.lit(node, "hasMimeType").unwrap_or_default().to_string(),
                time_origin: r.number(node, "hasTimeOrigin")?,
                extra: r.extras(node, &["hasMediaURL", "hasMimeType", "hasTimeOrigin", "hasMediaIndex"]),
            },
        ));
    }
    media.sort_by_key(|(i, _)| *i);
    parts.media = media.into_iter().map(|(_, m)| m).collect();

    let mut types: HashMap<&Node, String> = HashMap::new();
    for node in r.graph.of_type(&r.media("LinguisticType")) {
        let id = r.id(node, "hasLinguisticTypeID")?;
        let mismatch = |reason: String| PersistError::ConstraintMismatch { id: id.clone(), reason };
        let stereotype = match r.res(node, "hasConstraint") {
            None => Stereotype::None,
            Some(c) => r
                .fragment(c)
                .and_then(Stereotype::from_constraint_name)
                .ok_or_else(|| mismatch(format!("unknown constraint `{}`", c.label())))?,
        };
        let lt =
            LinguisticType {
                id: id.clone(),
                stereotype,
                ontological: match r.bool(node, "hasOntologicalType")? {
                    Some(flag) => flag,
                    // Written only for unused types; otherwise a type is
                    // ontological when a tier using it is bound to a profile.
                    None => r.graph.of_type(&r.media("Tier")).into_iter().any(|tier| {
                        r.res(tier, "hasLinguisticType") == Some(node) && r.lit(tier, "hasProfile").is_some()
                    }),
                },
                time_alignable: r
                    .bool(node, "hasTimeAlignable")?
                    .ok_or_else(|| missing(node, "hasTimeAlignable"))?,
                graphic_ref: r.bool(node, "hasGraphicRef")?.unwrap_or(false),
            };
        lt.check().map_err(|reason| mismatch(reason.to_string()))?;
        types.insert(node, id.clone());
        parts.linguistic_types.insert(id, lt);
    }

    let mut slots: HashMap<&Node, SlotId> = HashMap::new();
    let mut ordered = Vec::new();
    for node in r.graph.of_type(&r.media("TimeSlot")) {
        let id = SlotId(r.id(node, "hasTimeSlotID")?);
        let index: usize = r.number(node, "hasTimeSlotIndex")?.unwrap_or(usize::MAX);
        slots.insert(node, id.clone());
        ordered.push((
            index,
            TimeSlot {
                id,
                time: r.number(node, "hasTimeValue")?,
                extra: r.extras(node, &["hasTimeSlotID", "hasTimeSlotIndex", "hasTimeValue"]),
            },
        ));
    }
    ordered.sort_by_key(|(i, _)| *i);
    parts.time_order = ordered.into_iter().map(|(_, s)| s).collect();

    let tier_nodes = r.graph.of_type(&r.media("Tier"));
    let mut tier_ids: HashMap<&Node, String> = HashMap::new();
    for node in &tier_nodes {
        tier_ids.insert(node, r.id(node, "hasTierID")?);
    }
    let mut annotation_tier: HashMap<&Node, String> = HashMap::new();
    for node in &tier_nodes {
        let id = tier_ids[node].clone();
        let parent = match r.res(node, "hasParent") {
            None => None,
            Some(p) => Some(
                tier_ids
                    .get(p)
                    .cloned()
                    .ok_or_else(|| PersistError::DanglingReference(p.label().to_string()))?,
            ),
        };
        let lt_node = r
            .res(node, "hasLinguisticType")
            .ok_or_else(|| missing(node, "hasLinguisticType"))?;
        let linguistic_type = types
            .get(lt_node)
            .cloned()
            .ok_or_else(|| PersistError::DanglingReference(lt_node.label().to_string()))?;
        for ann in r.graph.resources(node, &r.media("hasAnnotation")) {
            annotation_tier.insert(ann, id.clone());
        }
        parts.tiers.insert(
            id.clone(),
            Tier {
                id,
                linguistic_type,
                parent,
                profile: r.lit(node, "hasProfile").map(str::to_string),
                extra: r.extras(
                    node,
                    &[
                        "hasTierID",
                        "hasParent",
                        "hasProfile",
                        "hasLinguisticType",
                        "hasAnnotation",
                    ],
                ),
            },
        );
    }

    let alignable = r.media("AlignableAnnotation");
    let mut ann_nodes = r.graph.of_type(&alignable);
    ann_nodes.extend(r.graph.of_type(&r.media("RefAnnotation")));
    let mut ann_ids: HashMap<&Node, String> = HashMap::new();
    for node in &ann_nodes {
        ann_ids.insert(node, r.id(node, "hasAnnotationID")?);
    }
    for node in &ann_nodes {
        let id = ann_ids[node].clone();
        let tier = annotation_tier
            .get(node)
            .cloned()
            .ok_or_else(|| missing(node, "tier membership"))?;
        let slot = |local: &str| -> Result<SlotId, PersistError> {
            let target = r.res(node, local).ok_or_else(|| missing(node, local))?;
            slots
                .get(target)
                .cloned()
                .ok_or_else(|| PersistError::DanglingReference(target.label().to_string()))
        };
        let anchor = if r.graph.has_type(node, &alignable) {
            Anchor::Alignable {
                begin: slot("hasBeginTimeSlot")?,
                end: slot("hasEndTimeSlot")?,
            }
        } else {
            let target = r
                .res(node, "hasAnnotationRef")
                .ok_or_else(|| missing(node, "hasAnnotationRef"))?;
            Anchor::Referring {
                parent: ann_ids
                    .get(target)
                    .cloned()
                    .ok_or_else(|| PersistError::DanglingReference(target.label().to_string()))?,
                ordinal: r.number(node, "hasOrdinal")?.unwrap_or(0),
            }
        };
        let value_node = r
            .res(node, "hasAnnotationValue")
            .ok_or_else(|| missing(node, "hasAnnotationValue"))?;
        let value = read_value(r, value_node)?;
        parts.annotations.insert(
            id.clone(),
            Annotation {
                id,
                tier,
                anchor,
                value,
                extra: r.extras(
                    node,
                    &[
                        "hasAnnotationID",
                        "hasBeginTimeSlot",
                        "hasEndTimeSlot",
                        "hasAnnotationRef",
                        "hasOrdinal",
                        "hasAnnotationValue",
                    ],
                ),
            },
        );
    }

    Ok(AnnotationDocument::from_parts(parts))
}

fn read_value(r: &Reader, node: &Node) -> Result<AnnotationValue, PersistError> {
    if r.graph.has_type(node, &r.media("StringAnnotation")) {
        let text = r
            .lit(node, "hasStringValue")
            .ok_or_else(|| missing(node, "hasStringValue"))?;
        return Ok(AnnotationValue::Text(text.to_string()));
    }
    if !r.graph.has_type(node, &r.media("OntologyAnnotation")) {
        return Err(missing(node, "value type"));
    }
    let mut instances = Vec::new();
    let mut minted = Vec::new();
    for target in r.graph.resources(node, &r.media("hasInstances")) {
        let iri = target
            .iri()
            .and_then(|i| TermIri::parse(i).ok())
            .ok_or_else(|| invalid(node, "hasInstances", target.label()))?;
        if let Some(class) = r.graph.resource(target, &rdf("type")) {
            let class = class
                .iri()
                .and_then(|c| TermIri::parse(c).ok())
                .ok_or_else(|| invalid(target, "rdf:type", class.label()))?;
            let rdf_type = rdf("type");
            let fills = r
                .graph
                .props(target)
                .iter()
                .filter(|(p, _)| *p != rdf_type)
                .filter_map(|(p, o)| match o {
                    Object::Literal { value, .. } => Some((p, value)),
                    Object::Node(_) => None,
                })
                .map(|(p, value)| {
                    Ok(PropertyFill {
                        property: TermIri::parse(p.as_str()).map_err(|_| invalid(target, "property", p))?,
                        value: value.clone(),
                    })
                })
                .collect::<Result<_, PersistError>>()?;
            minted.push(MintedInstance {
                iri: iri.clone(),
                class,
                fills,
            });
        }
        instances.push(iri);
    }
    Ok(AnnotationValue::Ontological(OntologicalValue {
        ont_annotation_id: r.lit(node, "hasOntAnnotationId").unwrap_or_default().to_string(),
        user_term: r
            .lit(node, "hasUserDefinedTerm")
            .ok_or_else(|| missing(node, "hasUserDefinedTerm"))?
            .to_string(),
        instances,
        description: r
            .lit(node, "hasOntAnnotationDescription")
            .unwrap_or_default()
            .to_string(),
        minted,
    }))
}
