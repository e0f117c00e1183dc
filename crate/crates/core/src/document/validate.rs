use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::{Anchor, AnnotationDocument, AnnotationValue, SlotId, Stereotype};
use crate::vocabulary::Vocabulary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Level {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum IssueKind {
    InvalidLinguisticType,
    UnknownLinguisticType,
    UnknownParent,
    RootMustBeAlignable,
    ParentForbidden,
    ParentNotTimeAlignable,
    TierCycle,
    ProfileRequired,
    ProfileForbidden,
    ProfileAlreadyBound,
    IdInUse,
    InvalidId,
    TimeOrderViolation,
    UnknownTier,
    UnknownSlot,
    AnchorMismatch,
    InvertedInterval,
    OutsideParentSlot,
    OverlapsSibling,
    UnknownParentAnnotation,
    ParentOnWrongTier,
    ChainRootNotAlignable,
    AssociationAlreadyFilled,
    InvalidOrdinal,
    DuplicateOrdinal,
    ValueKindMismatch,
    EmptyInstances,
    InstanceExists,
    UnknownProfile,
    UnknownOntology,
    UnknownUserTerm,
    UnresolvedInstance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub level: Level,
    /// Id of the offending tier, slot, type or annotation.
    pub locus: String,
    pub kind: IssueKind,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        !self.issues.iter().any(|i| i.level == Level::Error)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.level == Level::Error)
    }

    pub fn kinds(&self) -> BTreeSet<IssueKind> {
        self.issues.iter().map(|i| i.kind).collect()
    }

    fn error(&mut self, locus: &str, kind: IssueKind, message: impl Into<String>) {
        self.issues.push(Issue {
            level: Level::Error,
            locus: locus.to_string(),
            kind,
            message: message.into(),
        });
    }

    fn warning(&mut self, locus: &str, kind: IssueKind, message: impl Into<String>) {
        self.issues.push(Issue {
            level: Level::Warning,
            locus: locus.to_string(),
            kind,
            message: message.into(),
        });
    }
}

/// Checks every structural invariant. With a vocabulary, ontological values
/// are also checked against their tier's profile and ontology; a missing
/// profile or ontology is reported as a warning.
pub fn validate_document(doc: &AnnotationDocument, vocabulary: Option<&Vocabulary>) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_types(doc, &mut report);
    check_tiers(doc, &mut report);
    check_ids(doc, &mut report);
    check_time_order(doc, &mut report);
    check_annotations(doc, &mut report);
    if let Some(vocabulary) = vocabulary {
        check_vocabulary(doc, vocabulary, &mut report);
    }
    report
}

fn check_types(doc: &AnnotationDocument, report: &mut ValidationReport) {
    for lt in doc.linguistic_types().values() {
        if let Err(reason) = lt.check() {
            report.error(&lt.id, IssueKind::InvalidLinguisticType, reason);
        }
    }
}

fn check_tiers(doc: &AnnotationDocument, report: &mut ValidationReport) {
    let mut profiles: BTreeMap<&str, &str> = BTreeMap::new();
    for tier in doc.tiers().values() {
        let Some(lt) = doc.linguistic_types().get(&tier.linguistic_type) else {
            report.error(
                &tier.id,
                IssueKind::UnknownLinguisticType,
                format!("unknown linguistic type `{}`", tier.linguistic_type),
            );
            continue;
        };
        match (&tier.parent, lt.stereotype) {
            (None, Stereotype::None) => {}
            (None, _) => report.error(
                &tier.id,
                IssueKind::RootMustBeAlignable,
                "root tier must use stereotype None",
            ),
            (Some(_), Stereotype::None) => report.error(
                &tier.id,
                IssueKind::ParentForbidden,
                "stereotype None cannot have a parent",
            ),
            (Some(p), stereotype) => match doc.tier_type(p) {
                None if doc.tier(p).is_none() => {
                    report.error(&tier.id, IssueKind::UnknownParent, format!("unknown parent tier `{p}`"))
                }
                Some(pt) if stereotype == Stereotype::TimeSubdivision && !pt.time_alignable => report.error(
                    &tier.id,
                    IssueKind::ParentNotTimeAlignable,
                    format!("parent `{p}` is not time-alignable"),
                ),
                _ => {}
            },
        }
        match (&tier.profile, lt.ontological) {
            (None, true) => report.error(
                &tier.id,
                IssueKind::ProfileRequired,
                "ontological tier without a profile",
            ),
            (Some(_), false) => report.error(
                &tier.id,
                IssueKind::ProfileForbidden,
                "profile on a non-ontological tier",
            ),
            (Some(p), true) => {
                if let Some(other) = profiles.insert(p, &tier.id) {
                    report.error(
                        &tier.id,
                        IssueKind::ProfileAlreadyBound,
                        format!("profile `{p}` is already bound to `{other}`"),
                    );
                }
            }
            (None, false) => {}
        }
    }
    for tier in doc.tiers().values() {
        let mut seen = BTreeSet::from([tier.id.as_str()]);
        let mut current = tier.parent.as_deref();
        while let Some(p) = current {
            if !seen.insert(p) {
                report.error(&tier.id, IssueKind::TierCycle, "tier parents form a cycle");
                break;
            }
            current = doc.tier(p).and_then(|t| t.parent.as_deref());
        }
    }
}

fn check_ids(doc: &AnnotationDocument, report: &mut ValidationReport) {
    let mut seen = BTreeSet::new();
    for id in doc.node_ids() {
        if !crate::iri::is_ncname(&id) {
            report.error(&id, IssueKind::InvalidId, "not a valid identifier");
        }
        if !seen.insert(id.clone()) {
            report.error(&id, IssueKind::IdInUse, "identifier used more than once");
        }
    }
}

fn check_time_order(doc: &AnnotationDocument, report: &mut ValidationReport) {
    let mut last: Option<u64> = None;
    for slot in doc.time_order() {
        if let Some(t) = slot.time {
            if last.is_some_and(|l| t < l) {
                report.error(
                    slot.id.as_str(),
                    IssueKind::TimeOrderViolation,
                    "slot time precedes an earlier slot",
                );
            }
            last = Some(last.map_or(t, |l| l.max(t)));
        }
    }
}

fn check_annotations(doc: &AnnotationDocument, report: &mut ValidationReport) {
    let positions: HashMap<&SlotId, usize> = doc.slot_positions();
    let span = |id: &str| -> Option<(usize, usize)> {
        let (b, e) = doc.annotation(id)?.slots()?;
        Some((*positions.get(b)?, *positions.get(e)?))
    };
    let mut children: BTreeMap<&str, Vec<(&str, u32)>> = BTreeMap::new();

    for ann in doc.annotations().values() {
        let id = ann.id.as_str();
        let Some(tier) = doc.tier(&ann.tier) else {
            report.error(id, IssueKind::UnknownTier, format!("unknown tier `{}`", ann.tier));
            continue;
        };
        let lt = doc.tier_type(&tier.id);
        let stereotype = lt.map(|t| t.stereotype);
        match &ann.anchor {
            Anchor::Alignable { begin, end } => {
                if lt.is_some_and(|t| !t.time_alignable) {
                    report.error(id, IssueKind::AnchorMismatch, "alignable annotation on a symbolic tier");
                }
                let (Some(&b), Some(&e)) = (positions.get(begin), positions.get(end)) else {
                    report.error(id, IssueKind::UnknownSlot, "references an unknown slot");
                    continue;
                };
                if b >= e {
                    report.error(id, IssueKind::InvertedInterval, "begin slot does not precede end slot");
                }
                if stereotype == Some(Stereotype::TimeSubdivision) {
                    let parent_tier = tier.parent.as_deref().unwrap_or_default();
                    let contained = doc
                        .annotations_on(parent_tier)
                        .any(|p| span(&p.id).is_some_and(|(pb, pe)| pb <= b && e <= pe));
                    if !contained {
                        report.error(id, IssueKind::OutsideParentSlot, "not inside any parent annotation");
                    }
                }
                let overlap = doc
                    .annotations_on(&tier.id)
                    .find(|o| o.id < ann.id && span(&o.id).is_some_and(|(ob, oe)| b < oe && ob < e));
                if let Some(o) = overlap {
                    report.error(id, IssueKind::OverlapsSibling, format!("overlaps `{}`", o.id));
                }
            }
            Anchor::Referring { parent, ordinal } => {
                if stereotype.is_some_and(|s| !s.is_symbolic()) {
                    report.error(
                        id,
                        IssueKind::AnchorMismatch,
                        "referring annotation on an alignable tier",
                    );
                }
                match doc.annotation(parent) {
                    None => report.error(
                        id,
                        IssueKind::UnknownParentAnnotation,
                        format!("unknown parent annotation `{parent}`"),
                    ),
                    Some(p) if Some(&p.tier) != tier.parent.as_ref() => report.error(
                        id,
                        IssueKind::ParentOnWrongTier,
                        format!("parent `{parent}` is on tier `{}`", p.tier),
                    ),
                    Some(_) => {}
                }
                if stereotype == Some(Stereotype::SymbolicAssociation) && *ordinal != 0 {
                    report.error(id, IssueKind::InvalidOrdinal, "association ordinal must be 0");
                }
                if doc.resolve_alignment(id).is_err() {
                    report.error(
                        id,
                        IssueKind::ChainRootNotAlignable,
                        "reference chain has no alignable root",
                    );
                }
                children.entry(parent).or_default().push((id, *ordinal));
            }
        }
        check_value_kind(doc, ann, lt.is_some_and(|t| t.ontological), report);
    }

    for (parent, kids) in children {
        let mut by_tier: BTreeMap<&str, Vec<(&str, u32)>> = BTreeMap::new();
        for (id, ordinal) in kids {
            by_tier
                .entry(&doc.annotation(id).unwrap().tier)
                .or_default()
                .push((id, ordinal));
        }
        for (tier, kids) in by_tier {
            if doc.tier_type(tier).map(|t| t.stereotype) == Some(Stereotype::SymbolicAssociation) && kids.len() > 1 {
                for (id, _) in &kids[1..] {
                    report.error(
                        id,
                        IssueKind::AssociationAlreadyFilled,
                        format!("`{parent}` already has an association"),
                    );
                }
            }
            let mut ordinals = BTreeSet::new();
            for (id, ordinal) in kids {
                if !ordinals.insert(ordinal) {
                    report.error(
                        id,
                        IssueKind::DuplicateOrdinal,
                        format!("ordinal {ordinal} used twice under `{parent}`"),
                    );
                }
            }
        }
    }

    let mut minted = BTreeSet::new();
    for ann in doc.annotations().values() {
        if let AnnotationValue::Ontological(v) = &ann.value {
            for m in &v.minted {
                if !minted.insert(&m.iri) {
                    report.error(
                        &ann.id,
                        IssueKind::InstanceExists,
                        format!("instance `{}` minted twice", m.iri),
                    );
                }
            }
        }
    }
}

fn check_value_kind(
    doc: &AnnotationDocument,
    ann: &super::Annotation,
    ontological: bool,
    report: &mut ValidationReport,
) {
    if doc.tier_type(&ann.tier).is_none() {
        return;
    }
    if ontological != ann.value.is_ontological() {
        report.error(
            &ann.id,
            IssueKind::ValueKindMismatch,
            "value kind does not match the tier",
        );
    }
    if let AnnotationValue::Ontological(v) = &ann.value {
        if v.instances.is_empty() {
            report.error(
                &ann.id,
                IssueKind::EmptyInstances,
                "ontological value without instances",
            );
        }
    }
}

fn check_vocabulary(doc: &AnnotationDocument, vocabulary: &Vocabulary, report: &mut ValidationReport) {
    for tier in doc.tiers().values() {
        let Some(reference) = &tier.profile else { continue };
        let Some(profile) = vocabulary.profile(reference) else {
            report.warning(
                &tier.id,
                IssueKind::UnknownProfile,
                format!("profile `{reference}` is not loaded"),
            );
            continue;
        };
        let ontology = vocabulary.ontology(&profile.source);
        if ontology.is_none() {
            report.warning(
                &tier.id,
                IssueKind::UnknownOntology,
                format!("ontology `{}` is not loaded", profile.source),
            );
        }
        for ann in doc.annotations_on(&tier.id) {
            let AnnotationValue::Ontological(v) = &ann.value else {
                continue;
            };
            if !profile.contains(&v.user_term) {
                report.error(
                    &ann.id,
                    IssueKind::UnknownUserTerm,
                    format!("unknown user term `{}`", v.user_term),
                );
            }
            let Some(ontology) = ontology else { continue };
            for iri in &v.instances {
                let known = ontology.get(iri).is_some() || v.minted.iter().any(|m| &m.iri == iri);
                if !known {
                    report.error(
                        &ann.id,
                        IssueKind::UnresolvedInstance,
                        format!("`{iri}` is not in the ontology"),
                    );
                }
            }
        }
    }
}
