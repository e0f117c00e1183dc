use std::collections::BTreeSet;

use quick_xml::events::{BytesDecl, BytesEnd, BytesStart, BytesText, Event};
use quick_xml::Writer;

use super::{split_qname, Codec, PersistError, SerializedDocument, RDF_NS};
use crate::document::{
    media_node_id, validate_document, value_node_id, Anchor, AnnotationDocument, AnnotationValue, ExtraObject,
    ExtraProperty, LinguisticType, MintedInstance,
};

pub(super) fn serialize(
    codec: &Codec,
    doc: &AnnotationDocument,
    base: &str,
) -> Result<SerializedDocument, PersistError> {
    if base.contains('#') || oxiri::Iri::parse(base).is_err() {
        return Err(PersistError::InvalidBase(base.to_string()));
    }
    let report = validate_document(doc, None);
    if !report.is_valid() {
        return Err(PersistError::InvalidDocument(report));
    }
    let mut out = Out {
        w: Writer::new_with_indent(Vec::new(), b' ', 2),
        base,
        error: None,
    };
    out.emit(Event::Decl(BytesDecl::new("1.0", Some("UTF-8"), None)));
    let mut root = BytesStart::new("rdf:RDF");
    root.push_attribute(("xmlns:rdf", RDF_NS));
    root.push_attribute(("xmlns:media", codec.media_ns()));
    root.push_attribute(("xml:base", base));
    out.emit(Event::Start(root));

    write_document_node(&mut out, doc);
    for (index, slot) in doc.time_order().iter().enumerate() {
        out.open("media:TimeSlot", &[("rdf:ID", slot.id.as_str())]);
        out.literal("media:hasTimeSlotID", slot.id.as_str());
        out.literal("media:hasTimeSlotIndex", &index.to_string());
        if let Some(t) = slot.time {
            out.literal("media:hasTimeValue", &t.to_string());
        }
        out.extras(&slot.extra);
        out.close("media:TimeSlot");
    }

    let used: BTreeSet<_> = doc
        .linguistic_types()
        .values()
        .filter_map(|lt| lt.stereotype.constraint_name())
        .collect();
    for name in used {
        out.empty("media:Constraint", &[("rdf:ID", name)]);
    }

    let mut nested = BTreeSet::new();
    for tier in doc.tiers().values() {
        out.open("media:Tier", &[("rdf:ID", &tier.id)]);
        out.literal("media:hasTierID", &tier.id);
        if let Some(parent) = &tier.parent {
            out.reference("media:hasParent", parent);
        }
        if let Some(profile) = &tier.profile {
            out.literal("media:hasProfile", profile);
        }
        if nested.insert(tier.linguistic_type.as_str()) {
            out.open("media:hasLinguisticType", &[]);
            write_linguistic_type(&mut out, &doc.linguistic_types()[&tier.linguistic_type], false);
            out.close("media:hasLinguisticType");
        } else {
            out.reference("media:hasLinguisticType", &tier.linguistic_type);
        }
        for ann in doc.annotations_on(&tier.id) {
            out.reference("media:hasAnnotation", &ann.id);
        }
        out.extras(&tier.extra);
        out.close("media:Tier");
    }
    for lt in doc.linguistic_types().values() {
        if !nested.contains(lt.id.as_str()) {
            write_linguistic_type(&mut out, lt, true);
        }
    }

    let mut minted: Vec<&MintedInstance> = Vec::new();
    for ann in doc.annotations().values() {
        let element = match ann.anchor {
            Anchor::Alignable { .. } => "media:AlignableAnnotation",
            Anchor::Referring { .. } => "media:RefAnnotation",
        };
        out.open(element, &[("rdf:ID", &ann.id)]);
        out.literal("media:hasAnnotationID", &ann.id);
        match &ann.anchor {
            Anchor::Alignable { begin, end } => {
                out.reference("media:hasBeginTimeSlot", begin.as_str());
                out.reference("media:hasEndTimeSlot", end.as_str());
            }
            Anchor::Referring { parent, ordinal } => {
                out.reference("media:hasAnnotationRef", parent);
                if *ordinal != 0 {
                    out.literal("media:hasOrdinal", &ordinal.to_string());
                }
            }
        }
        out.open("media:hasAnnotationValue", &[]);
        let value_id = value_node_id(&ann.id);
        match &ann.value {
            AnnotationValue::Text(text) => {
                out.open("media:StringAnnotation", &[("rdf:ID", &value_id)]);
                out.literal("media:hasStringValue", text);
                out.close("media:StringAnnotation");
            }
            AnnotationValue::Ontological(v) => {
                out.open("media:OntologyAnnotation", &[("rdf:ID", &value_id)]);
                out.literal("media:hasUserDefinedTerm", &v.user_term);
                for iri in &v.instances {
                    out.empty("media:hasInstances", &[("rdf:resource", iri.as_str())]);
                }
                out.literal("media:hasOntAnnotationDescription", &v.description);
                out.literal("media:hasOntAnnotationId", &v.ont_annotation_id);
                out.close("media:OntologyAnnotation");
                minted.extend(&v.minted);
            }
        }
        out.close("media:hasAnnotationValue");
        out.extras(&ann.extra);
        out.close(element);
    }

    for instance in minted {
        out.open("rdf:Description", &[("rdf:about", instance.iri.as_str())]);
        out.empty("rdf:type", &[("rdf:resource", instance.class.as_str())]);
        for fill in &instance.fills {
            out.foreign_literal(fill.property.as_str(), &fill.value, None, None);
        }
        out.close("rdf:Description");
    }

    out.emit(Event::End(BytesEnd::new("rdf:RDF")));
    if let Some(error) = out.error {
        return Err(error);
    }
    let mut bytes = out.w.into_inner();
    bytes.push(b'\n');
    Ok(SerializedDocument {
        bytes,
        base_iri: base.to_string(),
    })
}

fn write_document_node(out: &mut Out, doc: &AnnotationDocument) {
    out.open("media:AnnotationDocument", &[("rdf:about", out.base)]);
    out.literal("media:hasAuthor", &doc.metadata.author);
    out.literal("media:hasDate", &doc.metadata.date);
    out.literal("media:hasTimeUnit", &doc.time_unit);
    for (i, media) in doc.media.iter().enumerate() {
        let id = media_node_id(i + 1);
        out.open("media:hasMediaDescriptor", &[]);
        out.open("media:MediaDescriptor", &[("rdf:ID", &id)]);
        out.literal("media:hasMediaURL", &media.url);
        out.literal("media:hasMimeType", &media.mime_type);
        if let Some(origin) = media.time_origin {
            out.literal("media:hasTimeOrigin", &origin.to_string());
        }
        out.literal("media:hasMediaIndex", &(i + 1).to_string());
        out.extras(&media.extra);
        out.close("media:MediaDescriptor");
        out.close("media:hasMediaDescriptor");
    }
    for slot in doc.time_order() {
        out.reference("media:hasTimeSlot", slot.id.as_str());
    }
    for tier in doc.tiers().keys() {
        out.reference("media:hasTier", tier);
    }
    out.extras(&doc.extra);
    out.close("media:AnnotationDocument");
}

/// The ontological flag of a type in use follows from its tiers carrying a
/// profile, so it is only written for unused types.
fn write_linguistic_type(out: &mut Out, lt: &LinguisticType, flag: bool) {
    out.open("media:LinguisticType", &[("rdf:ID", &lt.id)]);
    out.literal("media:hasTimeAlignable", bool_str(lt.time_alignable));
    out.literal("media:hasLinguisticTypeID", &lt.id);
    if let Some(name) = lt.stereotype.constraint_name() {
        out.reference("media:hasConstraint", name);
    }
    out.literal("media:hasGraphicRef", bool_str(lt.graphic_ref));
    if flag {
        out.literal("media:hasOntologicalType", bool_str(lt.ontological));
    }
    out.close("media:LinguisticType");
}

fn bool_str(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

struct Out<'a> {
    w: Writer<Vec<u8>>,
    base: &'a str,
    /// First value that cannot be represented in XML.
    error: Option<PersistError>,
}

impl Out<'_> {
    fn emit(&mut self, event: Event) {
        self.w.write_event(event).expect("writing to memory");
    }

    fn start(name: &str, attrs: &[(&str, &str)]) -> BytesStart<'static> {
        let mut start = BytesStart::new(name.to_string());
        for attr in attrs {
            start.push_attribute(*attr);
        }
        start
    }

    fn open(&mut self, name: &str, attrs: &[(&str, &str)]) {
        self.emit(Event::Start(Self::start(name, attrs)));
    }

    fn close(&mut self, name: &str) {
        self.emit(Event::End(BytesEnd::new(name.to_string())));
    }

    fn empty(&mut self, name: &str, attrs: &[(&str, &str)]) {
        self.emit(Event::Empty(Self::start(name, attrs)));
    }

    fn text_element(&mut self, start: BytesStart<'static>, value: &str) {
        if self.error.is_none() {
            if let Some(c) = value.chars().find(|&c| !is_xml_char(c)) {
                self.error = Some(PersistError::InvalidValue {
                    node: String::from_utf8_lossy(start.name().as_ref()).into_owned(),
                    property: "text".into(),
                    value: format!("{:?} contains U+{:04X}", value, c as u32),
                });
            }
        }
        let end = BytesEnd::new(String::from_utf8_lossy(start.name().as_ref()).into_owned());
        self.emit(Event::Start(start));
        self.emit(Event::Text(BytesText::from_escaped(escape_text(value))));
        self.emit(Event::End(end));
    }

    fn literal(&mut self, name: &str, value: &str) {
        self.text_element(Self::start(name, &[]), value);
    }

    /// Same-document reference by node id.
    fn reference(&mut self, name: &str, id: &str) {
        let iri = format!("{}#{id}", self.base);
        self.empty(name, &[("rdf:resource", &iri)]);
    }

    fn foreign(&mut self, predicate: &str) -> BytesStart<'static> {
        let Some((ns, local)) = split_qname(predicate) else {
            self.error.get_or_insert_with(|| PersistError::InvalidValue {
                node: predicate.to_string(),
                property: "predicate".into(),
                value: "no XML local name".into(),
            });
            return BytesStart::new("x:invalid");
        };
        let mut start = BytesStart::new(format!("x:{local}"));
        start.push_attribute(("xmlns:x", ns));
        start
    }

    fn foreign_literal(&mut self, predicate: &str, value: &str, language: Option<&str>, datatype: Option<&str>) {
        let mut start = self.foreign(predicate);
        if let Some(lang) = language {
            start.push_attribute(("xml:lang", lang));
        }
        if let Some(dt) = datatype {
            start.push_attribute(("rdf:datatype", dt));
        }
        self.text_element(start, value);
    }

    fn extras(&mut self, extras: &[ExtraProperty]) {
        for extra in extras {
            match &extra.object {
                ExtraObject::Iri(iri) => {
                    let mut start = self.foreign(&extra.predicate);
                    start.push_attribute(("rdf:resource", iri.as_str()));
                    self.emit(Event::Empty(start));
                }
                ExtraObject::Literal {
                    value,
                    language,
                    datatype,
                } => self.foreign_literal(&extra.predicate, value, language.as_deref(), datatype.as_deref()),
            }
        }
    }
}

/// Escapes character data so that parsing gives back exactly `value`,
/// carriage returns included.
fn escape_text(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '\r' => out.push_str("&#13;"),
            c => out.push(c),
        }
    }
    out
}

fn is_xml_char(c: char) -> bool {
    matches!(c, '\t' | '\n' | '\r' | '\u{20}'..='\u{D7FF}' | '\u{E000}'..='\u{FFFD}' | '\u{10000}'..)
}
