#![allow(dead_code)]

pub mod potawatomi;

use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use tierlink::document::{
    Alignment, Anchor, Annotation, ExtraObject, ExtraProperty, MediaDescriptor, Metadata, MintedInstance,
    OntologicalValue, PropertyFill, SlotId,
};
use tierlink::ontology::TermKind;
use tierlink::{AnnotationDocument, AnnotationValue, LinguisticType, Ontology, Stereotype, TermIri};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Type ids used by [`random_document`], one per stereotype plus two
/// ontological variants.
const TYPES: [(&str, Stereotype, bool); 6] = [
    ("none", Stereotype::None, false),
    ("timesub", Stereotype::TimeSubdivision, false),
    ("symsub", Stereotype::SymbolicSubdivision, false),
    ("assoc", Stereotype::SymbolicAssociation, false),
    ("ontassoc", Stereotype::SymbolicAssociation, true),
    ("ontsub", Stereotype::SymbolicSubdivision, true),
];

const TEXTS: [&str; 12] = [
    "neko",
    "gi-wabmat",
    "Used To",
    "see him",
    "PST",
    "a & b <c>",
    "  padded  ",
    "line\r\nbreak\ttab",
    "ĉapelo ŝanĝo",
    "\"quoted\" 'single'",
    "",
    "]]> end",
];

/// Individuals and classes used for random ontological values.
pub fn gold_terms(ontology: &Ontology) -> (Vec<TermIri>, Vec<TermIri>) {
    let mut individuals = Vec::new();
    let mut classes = Vec::new();
    for t in ontology.terms().values() {
        match t.kind {
            TermKind::Individual => individuals.push(t.iri.clone()),
            TermKind::Class => classes.push(t.iri.clone()),
        }
    }
    (individuals, classes)
}

pub struct Generator<'a> {
    pub individuals: &'a [TermIri],
    pub classes: &'a [TermIri],
    /// Adds unknown properties to nodes, for round-trip tests.
    pub extras: bool,
    minted: usize,
}

impl<'a> Generator<'a> {
    pub fn new(individuals: &'a [TermIri], classes: &'a [TermIri]) -> Self {
        Generator {
            individuals,
            classes,
            extras: false,
            minted: 0,
        }
    }

    fn text(&self, rng: &mut StdRng) -> String {
        let mut s = TEXTS.choose(rng).unwrap().to_string();
        if rng.gen_bool(0.3) {
            s.push_str(&rng.gen_range(0..1000).to_string());
        }
        s
    }

    fn ontological(&mut self, rng: &mut StdRng) -> OntologicalValue {
        let mut instances = Vec::new();
        let mut minted = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            if rng.gen_bool(0.6) || self.classes.is_empty() {
                if let Some(i) = self.individuals.choose(rng) {
                    if !instances.contains(i) {
                        instances.push(i.clone());
                    }
                }
            } else {
                let class = self.classes.choose(rng).unwrap().clone();
                self.minted += 1;
                let iri = TermIri::parse(format!("{}inst{}", class.namespace(), self.minted)).unwrap();
                let fills = (0..rng.gen_range(0..3))
                    .map(|k| PropertyFill {
                        property: TermIri::parse(format!("{}prop{k}", class.namespace())).unwrap(),
                        value: self.text(rng),
                    })
                    .collect();
                instances.push(iri.clone());
                minted.push(MintedInstance { iri, class, fills });
            }
        }
        OntologicalValue {
            ont_annotation_id: format!("o{}", rng.gen_range(0..100)),
            user_term: ["PV", "PC", "NI", "VTA"].choose(rng).unwrap().to_string(),
            instances,
            description: self.text(rng),
            minted,
        }
    }

    fn value(&mut self, rng: &mut StdRng, ontological: bool) -> AnnotationValue {
        if ontological {
            AnnotationValue::Ontological(self.ontological(rng))
        } else {
            AnnotationValue::Text(self.text(rng))
        }
    }

    /// A random valid document built through the public editing API.
    pub fn document(&mut self, rng: &mut StdRng) -> AnnotationDocument {
        let media = (0..rng.gen_range(0..3))
            .map(|i| MediaDescriptor {
                url: format!("file:///media/clip{i}.wav"),
                mime_type: "audio/x-wav".into(),
                time_origin: rng.gen_bool(0.5).then(|| rng.gen_range(0..5000)),
                extra: Vec::new(),
            })
            .collect();
        let mut doc = AnnotationDocument::new(
            Metadata {
                author: self.text(rng),
                date: "2005-01-01".into(),
            },
            media,
        );
        for (id, stereotype, ontological) in TYPES {
            let mut lt = LinguisticType::new(id, stereotype);
            lt.ontological = ontological;
            lt.graphic_ref = rng.gen_bool(0.2);
            doc.add_linguistic_type(lt).unwrap();
        }

        for _ in 0..rng.gen_range(2..10) {
            let time = rng.gen_bool(0.8).then(|| rng.gen_range(0..10_000));
            if time.is_none() && rng.gen_bool(0.5) {
                let position = rng.gen_range(0..=doc.time_order().len());
                doc.insert_time_slot(None, position, None).unwrap();
            } else {
                doc.add_time_slot(time).unwrap();
            }
        }

        let tier_count = rng.gen_range(1..9);
        let mut tiers: Vec<String> = Vec::new();
        for i in 0..tier_count {
            let id = format!("T{i}");
            if tiers.is_empty() || rng.gen_bool(0.2) {
                doc.add_tier(&id, "none", None, None).unwrap();
            } else {
                let parent = tiers.choose(rng).unwrap().clone();
                let (lt, _, ontological) = *TYPES[1..].choose(rng).unwrap();
                let profile = ontological.then(|| format!("p{i}.prf"));
                if doc.add_tier(&id, lt, Some(&parent), profile.as_deref()).is_err() {
                    continue;
                }
            }
            tiers.push(id);
        }

        let slots: Vec<SlotId> = doc.time_order().iter().map(|s| s.id.clone()).collect();
        for _ in 0..rng.gen_range(0..40) {
            let tier = tiers.choose(rng).unwrap().clone();
            let lt = doc.tier_type(&tier).unwrap().clone();
            let value = self.value(rng, lt.ontological);
            if lt.time_alignable {
                let a = rng.gen_range(0..slots.len());
                let b = rng.gen_range(0..slots.len());
                let _ = doc.add_alignable_annotation(None, &tier, &slots[a.min(b)], &slots[a.max(b)], value);
            } else {
                let parent_tier = doc.tier(&tier).unwrap().parent.clone().unwrap();
                let parents: Vec<String> = doc.annotations_on(&parent_tier).map(|a| a.id.clone()).collect();
                let Some(parent) = parents.choose(rng) else { continue };
                let ordinal = rng.gen_bool(0.3).then(|| rng.gen_range(0..3));
                let _ = doc.add_referring_annotation(None, &tier, parent, value, ordinal);
            }
        }

        if self.extras {
            add_extras(&mut doc, rng);
        }
        doc
    }
}

fn extra(rng: &mut StdRng) -> ExtraProperty {
    let object = match rng.gen_range(0..4) {
        0 => ExtraObject::Iri(format!("http://other.org/thing/{}", rng.gen_range(0..10))),
        1 => ExtraObject::Literal {
            value: "note & <more>".into(),
            language: Some("en".into()),
            datatype: None,
        },
        2 => ExtraObject::Literal {
            value: rng.gen_range(0..100).to_string(),
            language: None,
            datatype: Some("http://www.w3.org/2001/XMLSchema#integer".into()),
        },
        _ => ExtraObject::Literal {
            value: "plain".into(),
            language: None,
            datatype: None,
        },
    };
    ExtraProperty {
        predicate: format!("http://other.org/ns#p{}", rng.gen_range(0..3)),
        object,
    }
}

fn add_extras(doc: &mut AnnotationDocument, rng: &mut StdRng) {
    let mut parts = std::mem::take(doc).into_parts();
    if rng.gen_bool(0.5) {
        parts.extra.push(extra(rng));
    }
    for m in &mut parts.media {
        if rng.gen_bool(0.3) {
            m.extra.push(extra(rng));
        }
    }
    for s in &mut parts.time_order {
        if rng.gen_bool(0.2) {
            s.extra.push(extra(rng));
        }
    }
    for t in parts.tiers.values_mut() {
        if rng.gen_bool(0.3) {
            t.extra.push(extra(rng));
        }
    }
    for a in parts.annotations.values_mut() {
        if rng.gen_bool(0.2) {
            a.extra.push(extra(rng));
        }
    }
    *doc = AnnotationDocument::from_parts(parts);
}

// ---- oracles ----

/// Position of every slot in the time order.
pub fn positions(doc: &AnnotationDocument) -> BTreeMap<SlotId, usize> {
    doc.time_order()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.id.clone(), i))
        .collect()
}

/// Tiers removed with `tier`: fixpoint of "parent is removed".
pub fn tier_closure(doc: &AnnotationDocument, tier: &str) -> BTreeSet<String> {
    let mut removed = BTreeSet::from([tier.to_string()]);
    loop {
        let before = removed.len();
        for t in doc.tiers().values() {
            if t.parent.as_ref().is_some_and(|p| removed.contains(p)) {
                removed.insert(t.id.clone());
            }
        }
        if removed.len() == before {
            return removed;
        }
    }
}

/// Annotations removed with `id`: fixpoint over direct references and time
/// subdivision containment.
pub fn annotation_closure(doc: &AnnotationDocument, id: &str) -> BTreeSet<String> {
    let pos = positions(doc);
    let span = |a: &tierlink::document::Annotation| a.slots().map(|(b, e)| (pos[b], pos[e]));
    let mut removed = BTreeSet::from([id.to_string()]);
    loop {
        let before = removed.len();
        for a in doc.annotations().values() {
            if removed.contains(&a.id) {
                continue;
            }
            let depends = match &a.anchor {
                Anchor::Referring { parent, .. } => removed.contains(parent),
                Anchor::Alignable { .. } => {
                    let tier = doc.tier(&a.tier).unwrap();
                    let subdivision = doc.tier_type(&a.tier).unwrap().stereotype == Stereotype::TimeSubdivision;
                    let (cb, ce) = span(a).unwrap();
                    subdivision
                        && removed.iter().any(|r| {
                            let p = doc.annotation(r).unwrap();
                            Some(&p.tier) == tier.parent.as_ref()
                                && span(p).is_some_and(|(pb, pe)| pb <= cb && ce <= pe)
                        })
                }
            };
            if depends {
                removed.insert(a.id.clone());
            }
        }
        if removed.len() == before {
            return removed;
        }
    }
}

/// Slots used only by `removed` annotations. With `untimed_only`, only
/// those without a time value.
pub fn orphaned_slots(doc: &AnnotationDocument, removed: &BTreeSet<String>, untimed_only: bool) -> BTreeSet<SlotId> {
    let mut used_by_removed = BTreeSet::new();
    let mut used_by_kept = BTreeSet::new();
    for a in doc.annotations().values() {
        if let Some((b, e)) = a.slots() {
            let set = if removed.contains(&a.id) {
                &mut used_by_removed
            } else {
                &mut used_by_kept
            };
            set.insert(b.clone());
            set.insert(e.clone());
        }
    }
    used_by_removed
        .difference(&used_by_kept)
        .filter(|s| !untimed_only || doc.slot(s).unwrap().time.is_none())
        .cloned()
        .collect()
}

/// Follows parent links up to the alignable root and reads its slot times.
pub fn walk_alignment(doc: &AnnotationDocument, id: &str) -> Option<Alignment> {
    let mut seen = BTreeSet::new();
    let mut current = doc.annotation(id)?;
    loop {
        if !seen.insert(current.id.clone()) {
            return None;
        }
        match &current.anchor {
            Anchor::Referring { parent, .. } => current = doc.annotation(parent)?,
            Anchor::Alignable { begin, end } => {
                let b = doc.slot(begin)?.time;
                let e = doc.slot(end)?.time;
                return Some(match (b, e) {
                    (Some(begin), Some(end)) => Alignment::Aligned { begin, end },
                    _ => Alignment::Unaligned,
                });
            }
        }
    }
}

/// Root annotation of a reference chain.
pub fn chain_root<'a>(doc: &'a AnnotationDocument, id: &str) -> &'a str {
    let mut current = doc.annotation(id).unwrap();
    while let Some(parent) = current.parent() {
        current = doc.annotation(parent).unwrap();
    }
    &current.id
}

/// Everything reachable below `iri` through parent links, by repeated
/// scanning of the term table.
pub fn naive_descendants(ontology: &Ontology, iri: &TermIri) -> BTreeSet<TermIri> {
    let mut found = BTreeSet::from([iri.clone()]);
    loop {
        let before = found.len();
        for t in ontology.terms().values() {
            if t.parents.iter().any(|p| found.contains(p)) {
                found.insert(t.iri.clone());
            }
        }
        if found.len() == before {
            return found;
        }
    }
}

/// Ids of the annotations `keep` accepts, found by scanning every annotation
/// and sorted by (tier, begin, end, ordinal, id) with unaligned last.
pub fn scan_annotations(doc: &AnnotationDocument, keep: impl Fn(&Annotation) -> bool) -> Vec<String> {
    let key = |id: &String| {
        let a = doc.annotation(id).unwrap();
        let (begin, end) = match walk_alignment(doc, id).unwrap() {
            Alignment::Aligned { begin, end } => (begin, end),
            Alignment::Unaligned => (u64::MAX, u64::MAX),
        };
        let ordinal = match &a.anchor {
            Anchor::Referring { ordinal, .. } => *ordinal,
            Anchor::Alignable { .. } => 0,
        };
        (a.tier.clone(), begin, end, ordinal, a.id.clone())
    };
    let mut found: Vec<String> = doc
        .annotations()
        .values()
        .filter(|a| keep(a))
        .map(|a| a.id.clone())
        .collect();
    found.sort_by_key(key);
    found
}

/// Text search by scanning: substring match on text values only.
pub fn scan_text(
    doc: &AnnotationDocument,
    needle: &str,
    case_sensitive: bool,
    tiers: Option<&[String]>,
) -> Vec<String> {
    scan_annotations(doc, |a| {
        let AnnotationValue::Text(t) = &a.value else {
            return false;
        };
        let tier_ok = tiers.is_none_or(|ts| ts.contains(&a.tier));
        let text_ok = if case_sensitive {
            t.contains(needle)
        } else {
            t.to_lowercase().contains(&needle.to_lowercase())
        };
        tier_ok && text_ok
    })
}

/// Term search by scanning: an instance in `wanted`, or with `classes` also a
/// minted instance whose class is in `wanted`.
pub fn scan_terms(doc: &AnnotationDocument, wanted: &BTreeSet<TermIri>, classes: bool) -> Vec<String> {
    scan_annotations(doc, |a| {
        let AnnotationValue::Ontological(v) = &a.value else {
            return false;
        };
        v.instances.iter().any(|i| wanted.contains(i))
            || (classes && v.minted.iter().any(|m| wanted.contains(&m.class)))
    })
}
