//! Tiered, time-aligned annotation documents.
//!
//! Tiers form a forest whose roots use the `None` stereotype. Alignable
//! annotations sit on time-alignable tiers and span two time slots; referring
//! annotations sit on symbolic tiers and point at an annotation on the parent
//! tier. Intervals of referring annotations are never stored, they are
//! resolved by walking up to the alignable root.
//!
//! All ordering questions (does begin precede end, is a child inside its
//! parent) are answered by slot position in the time order, so they remain
//! well defined for unaligned slots. Timed slots are kept in nondecreasing
//! time order.

mod error;
mod ontological;
mod types;
mod validate;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

pub use error::EngineError;
pub use ontological::{instantiate, InstanceInput, OntologicalRequest};
pub use types::*;
pub use validate::{validate_document, Issue, IssueKind, Level, ValidationReport};

use crate::iri::{is_ncname, TermIri};

pub const DEFAULT_TIME_UNIT: &str = "milliseconds";

/// Suffix of the stored value node id: annotation `a42` stores its value as `a42Value`.
pub const VALUE_ID_SUFFIX: &str = "Value";

type Result<T, E = EngineError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnnotationDocument {
    pub metadata: Metadata,
    pub time_unit: String,
    pub media: Vec<MediaDescriptor>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<ExtraProperty>,
    time_order: Vec<TimeSlot>,
    linguistic_types: BTreeMap<String, LinguisticType>,
    tiers: BTreeMap<String, Tier>,
    annotations: BTreeMap<String, Annotation>,
}

/// Raw document contents, assembled without any checking. Run
/// [`validate_document`] on the result before trusting it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DocumentParts {
    pub metadata: Metadata,
    pub time_unit: String,
    pub media: Vec<MediaDescriptor>,
    pub extra: Vec<ExtraProperty>,
    pub time_order: Vec<TimeSlot>,
    pub linguistic_types: BTreeMap<String, LinguisticType>,
    pub tiers: BTreeMap<String, Tier>,
    pub annotations: BTreeMap<String, Annotation>,
}

/// Everything a cascading delete removed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Removal {
    pub tiers: Vec<String>,
    pub annotations: Vec<String>,
    pub slots: Vec<SlotId>,
}

impl Default for AnnotationDocument {
    fn default() -> Self {
        AnnotationDocument::new(Metadata::default(), Vec::new())
    }
}

impl AnnotationDocument {
    pub fn new(metadata: Metadata, media: Vec<MediaDescriptor>) -> Self {
        AnnotationDocument {
            metadata,
            time_unit: DEFAULT_TIME_UNIT.to_string(),
            media,
            extra: Vec::new(),
            time_order: Vec::new(),
            linguistic_types: BTreeMap::new(),
            tiers: BTreeMap::new(),
            annotations: BTreeMap::new(),
        }
    }

    pub fn from_parts(parts: DocumentParts) -> Self {
        AnnotationDocument {
            metadata: parts.metadata,
            time_unit: parts.time_unit,
            media: parts.media,
            extra: parts.extra,
            time_order: parts.time_order,
            linguistic_types: parts.linguistic_types,
            tiers: parts.tiers,
            annotations: parts.annotations,
        }
    }

    pub fn into_parts(self) -> DocumentParts {
        DocumentParts {
            metadata: self.metadata,
            time_unit: self.time_unit,
            media: self.media,
            extra: self.extra,
            time_order: self.time_order,
            linguistic_types: self.linguistic_types,
            tiers: self.tiers,
            annotations: self.annotations,
        }
    }

    // ---- read access ----

    pub fn time_order(&self) -> &[TimeSlot] {
        &self.time_order
    }

    pub fn slot(&self, id: &SlotId) -> Option<&TimeSlot> {
        self.time_order.iter().find(|s| &s.id == id)
    }

    pub fn linguistic_types(&self) -> &BTreeMap<String, LinguisticType> {
        &self.linguistic_types
    }

    pub fn tiers(&self) -> &BTreeMap<String, Tier> {
        &self.tiers
    }

    pub fn tier(&self, id: &str) -> Option<&Tier> {
        self.tiers.get(id)
    }

    pub fn annotations(&self) -> &BTreeMap<String, Annotation> {
        &self.annotations
    }

    pub fn annotation(&self, id: &str) -> Option<&Annotation> {
        self.annotations.get(id)
    }

    pub fn tier_type(&self, tier: &str) -> Option<&LinguisticType> {
        self.tiers
            .get(tier)
            .and_then(|t| self.linguistic_types.get(&t.linguistic_type))
    }

    fn stereotype(&self, tier: &str) -> Option<Stereotype> {
        self.tier_type(tier).map(|t| t.stereotype)
    }

    /// Direct child tiers, by id.
    pub fn child_tiers(&self, tier: &str) -> Vec<&str> {
        self.tiers
            .values()
            .filter(|t| t.parent.as_deref() == Some(tier))
            .map(|t| t.id.as_str())
            .collect()
    }

    pub fn annotations_on<'a>(&'a self, tier: &'a str) -> impl Iterator<Item = &'a Annotation> + 'a {
        self.annotations.values().filter(move |a| a.tier == tier)
    }

    pub(crate) fn slot_positions(&self) -> HashMap<&SlotId, usize> {
        self.time_order.iter().enumerate().map(|(i, s)| (&s.id, i)).collect()
    }

    /// Every node id the stored form uses, in a fixed order. Duplicates in
    /// this list are id collisions.
    pub fn node_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = Vec::new();
        ids.extend((1..=self.media.len()).map(media_node_id));
        ids.extend(self.time_order.iter().map(|s| s.id.0.clone()));
        ids.extend(self.linguistic_types.keys().cloned());
        ids.extend(self.tiers.keys().cloned());
        for id in self.annotations.keys() {
            ids.push(id.clone());
            ids.push(value_node_id(id));
        }
        ids.extend(
            Stereotype::ALL
                .iter()
                .filter_map(|s| s.constraint_name())
                .map(str::to_string),
        );
        ids
    }

    fn id_taken(&self, id: &str) -> bool {
        self.tiers.contains_key(id)
            || self.linguistic_types.contains_key(id)
            || self.annotations.contains_key(id)
            || self.time_order.iter().any(|s| s.id.0 == id)
            || Stereotype::from_constraint_name(id).is_some()
            || (1..=self.media.len()).any(|i| media_node_id(i) == id)
            || id
                .strip_suffix(VALUE_ID_SUFFIX)
                .is_some_and(|base| self.annotations.contains_key(base))
    }

    fn check_new_id(&self, id: &str) -> Result<()> {
        if !is_ncname(id) {
            return Err(EngineError::InvalidId(id.to_string()));
        }
        if self.id_taken(id) {
            return Err(EngineError::IdInUse(id.to_string()));
        }
        Ok(())
    }

    fn check_new_annotation_id(&self, id: &str) -> Result<()> {
        self.check_new_id(id)?;
        let value_id = value_node_id(id);
        if self.id_taken(&value_id) {
            return Err(EngineError::IdInUse(value_id));
        }
        Ok(())
    }

    fn next_id(&self, prefix: &str, start: usize, annotation: bool) -> String {
        (start..)
            .map(|n| format!("{prefix}{n}"))
            .find(|id| {
                if annotation {
                    self.check_new_annotation_id(id).is_ok()
                } else {
                    !self.id_taken(id)
                }
            })
            .expect("unbounded search")
    }

    // ---- linguistic types and tiers ----

    pub fn add_linguistic_type(&mut self, lt: LinguisticType) -> Result<()> {
        if self.linguistic_types.contains_key(&lt.id) {
            return Err(EngineError::DuplicateLinguisticType(lt.id));
        }
        lt.check().map_err(|reason| EngineError::InvalidLinguisticType {
            id: lt.id.clone(),
            reason,
        })?;
        self.check_new_id(&lt.id)?;
        self.linguistic_types.insert(lt.id.clone(), lt);
        Ok(())
    }

    pub fn add_tier(
        &mut self,
        id: &str,
        linguistic_type: &str,
        parent: Option<&str>,
        profile: Option<&str>,
    ) -> Result<()> {
        if self.tiers.contains_key(id) {
            return Err(EngineError::DuplicateTier(id.to_string()));
        }
        let lt = self
            .linguistic_types
            .get(linguistic_type)
            .ok_or_else(|| EngineError::UnknownLinguisticType(linguistic_type.to_string()))?;
        match (parent, lt.stereotype) {
            (None, Stereotype::None) => {}
            (None, _) => return Err(EngineError::RootMustBeAlignable(id.to_string())),
            (Some(_), Stereotype::None) => return Err(EngineError::ParentForbidden(id.to_string())),
            (Some(p), stereotype) => {
                let parent_type = self
                    .tier_type(p)
                    .ok_or_else(|| EngineError::UnknownParent(p.to_string()))?;
                if stereotype == Stereotype::TimeSubdivision && !parent_type.time_alignable {
                    return Err(EngineError::ParentNotTimeAlignable {
                        tier: id.to_string(),
                        parent: p.to_string(),
                    });
                }
            }
        }
        match (profile, lt.ontological) {
            (None, true) => return Err(EngineError::ProfileRequired(id.to_string())),
            (Some(_), false) => return Err(EngineError::ProfileForbidden(id.to_string())),
            (Some(p), true) => {
                if let Some(bound) = self.tiers.values().find(|t| t.profile.as_deref() == Some(p)) {
                    return Err(EngineError::ProfileAlreadyBound {
                        profile: p.to_string(),
                        tier: bound.id.clone(),
                    });
                }
            }
            (None, false) => {}
        }
        self.check_new_id(id)?;
        self.tiers.insert(
            id.to_string(),
            Tier {
                id: id.to_string(),
                linguistic_type: linguistic_type.to_string(),
                parent: parent.map(str::to_string),
                profile: profile.map(str::to_string),
                extra: Vec::new(),
            },
        );
        Ok(())
    }

    /// Removes the tier, all descendant tiers, their annotations and the
    /// time slots no remaining annotation uses.
    pub fn delete_tier(&mut self, id: &str) -> Result<Removal> {
        if !self.tiers.contains_key(id) {
            return Err(EngineError::UnknownTier(id.to_string()));
        }
        let mut doomed = vec![id.to_string()];
        let mut queue = VecDeque::from([id.to_string()]);
        while let Some(tier) = queue.pop_front() {
            for child in self.child_tiers(&tier) {
                doomed.push(child.to_string());
                queue.push_back(child.to_string());
            }
        }
        let doomed_set: BTreeSet<&str> = doomed.iter().map(String::as_str).collect();
        let annotations: Vec<String> = self
            .annotations
            .values()
            .filter(|a| doomed_set.contains(a.tier.as_str()))
            .map(|a| a.id.clone())
            .collect();
        let slots = self.remove_annotations(&annotations, false);
        for tier in &doomed {
            self.tiers.remove(tier);
        }
        Ok(Removal {
            tiers: doomed,
            annotations,
            slots,
        })
    }

    /// Drops annotations and then the slots they alone used (only untimed
    /// ones when `untimed_only`). Returns the removed slots.
    fn remove_annotations(&mut self, ids: &[String], untimed_only: bool) -> Vec<SlotId> {
        let mut candidates = BTreeSet::new();
        for id in ids {
            if let Some(a) = self.annotations.remove(id) {
                if let Anchor::Alignable { begin, end } = a.anchor {
                    candidates.insert(begin);
                    candidates.insert(end);
                }
            }
        }
        let still_used: BTreeSet<&SlotId> = self
            .annotations
            .values()
            .filter_map(Annotation::slots)
            .flat_map(|(b, e)| [b, e])
            .collect();
        let orphaned: BTreeSet<SlotId> = candidates
            .into_iter()
            .filter(|s| !still_used.contains(s))
            .filter(|s| !untimed_only || self.slot(s).is_some_and(|slot| slot.time.is_none()))
            .collect();
        let removed = self
            .time_order
            .iter()
            .filter(|s| orphaned.contains(&s.id))
            .map(|s| s.id.clone())
            .collect();
        self.time_order.retain(|s| !orphaned.contains(&s.id));
        removed
    }

    // ---- time slots ----

    fn check_time(time: Option<i64>) -> Result<Option<u64>> {
        match time {
            Some(t) if t < 0 => Err(EngineError::NegativeTime(t)),
            Some(t) => Ok(Some(t as u64)),
            None => Ok(None),
        }
    }

    /// Adds a slot. A timed slot goes after every slot with time ≤ `time`
    /// and before the first later one; an untimed slot goes at the end.
    pub fn add_time_slot(&mut self, time: Option<i64>) -> Result<SlotId> {
        let time = Self::check_time(time)?;
        let position = match time {
            None => self.time_order.len(),
            Some(t) => insertion_range(&self.time_order, t).1,
        };
        let id = SlotId(self.next_id("ts", self.time_order.len() + 1, false));
        self.time_order.insert(
            position,
            TimeSlot {
                id: id.clone(),
                time,
                extra: Vec::new(),
            },
        );
        Ok(id)
    }

    /// Inserts a slot at an explicit position in the time order.
    pub fn insert_time_slot(&mut self, id: Option<&str>, position: usize, time: Option<i64>) -> Result<SlotId> {
        let time = Self::check_time(time)?;
        if position > self.time_order.len() {
            return Err(EngineError::InvalidPosition(position));
        }
        if let Some(t) = time {
            let (lo, hi) = insertion_range(&self.time_order, t);
            if position < lo || position > hi {
                return Err(EngineError::InvalidPosition(position));
            }
        }
        let id = match id {
            Some(id) => {
                self.check_new_id(id)?;
                id.to_string()
            }
            None => self.next_id("ts", self.time_order.len() + 1, false),
        };
        self.time_order.insert(
            position,
            TimeSlot {
                id: SlotId(id.clone()),
                time,
                extra: Vec::new(),
            },
        );
        Ok(SlotId(id))
    }

    /// Sets a slot's time, repositioning it in the time order if needed.
    /// Intervals of referring annotations follow automatically.
    pub fn move_time_slot(&mut self, slot: &SlotId, time: i64) -> Result<()> {
        let time = Self::check_time(Some(time))?.expect("timed");
        let index = self
            .time_order
            .iter()
            .position(|s| &s.id == slot)
            .ok_or_else(|| EngineError::UnknownSlot(slot.0.clone()))?;
        let mut order = self.time_order.clone();
        let mut moved = order.remove(index);
        moved.time = Some(time);
        let (lo, hi) = insertion_range(&order, time);
        order.insert(index.clamp(lo, hi), moved);

        let old_positions = self.slot_positions();
        let new_positions: HashMap<&SlotId, usize> = order.iter().enumerate().map(|(i, s)| (&s.id, i)).collect();
        for a in self.annotations.values() {
            if let Some((b, e)) = a.slots() {
                if new_positions[b] >= new_positions[e] {
                    return Err(EngineError::WouldInvertInterval(a.id.clone()));
                }
            }
        }
        for a in self.annotations.values() {
            let Some((b, e)) = a.slots() else { continue };
            if self.stereotype(&a.tier) == Some(Stereotype::TimeSubdivision) {
                let before = self
                    .containing_parent(&a.tier, old_positions[b], old_positions[e], &old_positions)
                    .map(|p| &p.id);
                let after = self
                    .containing_parent(&a.tier, new_positions[b], new_positions[e], &new_positions)
                    .map(|p| &p.id);
                if after.is_none() || before != after {
                    return Err(EngineError::WouldEscapeParent(a.id.clone()));
                }
            }
            if let Some(other) =
                self.overlapping(&a.tier, new_positions[b], new_positions[e], &new_positions, Some(&a.id))
            {
                return Err(EngineError::OverlapsSibling(other.to_string()));
            }
        }
        self.time_order = order;
        Ok(())
    }

    /// The annotation on `tier`'s parent tier whose slot span contains `[begin, end]`.
    fn containing_parent(
        &self,
        tier: &str,
        begin: usize,
        end: usize,
        positions: &HashMap<&SlotId, usize>,
    ) -> Option<&Annotation> {
        let parent_tier = self.tiers.get(tier)?.parent.as_deref()?;
        self.annotations_on(parent_tier).find(|p| match p.slots() {
            Some((pb, pe)) => positions[pb] <= begin && end <= positions[pe],
            None => false,
        })
    }

    fn overlapping<'a>(
        &'a self,
        tier: &'a str,
        begin: usize,
        end: usize,
        positions: &HashMap<&SlotId, usize>,
        skip: Option<&str>,
    ) -> Option<&'a str> {
        self.annotations_on(tier)
            .filter(|a| Some(a.id.as_str()) != skip)
            .find(|a| match a.slots() {
                Some((b, e)) => begin < positions[e] && positions[b] < end,
                None => false,
            })
            .map(|a| a.id.as_str())
    }

    // ---- annotations ----

    fn check_value(&self, tier: &Tier, value: &AnnotationValue, annotation: Option<&str>) -> Result<()> {
        let ontological = self
            .linguistic_types
            .get(&tier.linguistic_type)
            .is_some_and(|t| t.ontological);
        if ontological != value.is_ontological() {
            return Err(EngineError::ValueKindMismatch {
                tier: tier.id.clone(),
                expected: if ontological { "ontological" } else { "string" },
            });
        }
        if let AnnotationValue::Ontological(v) = value {
            let mut seen = BTreeSet::new();
            for minted in &v.minted {
                if !seen.insert(&minted.iri) || self.minted_elsewhere(&minted.iri, annotation) {
                    return Err(EngineError::InstanceExists(minted.iri.clone()));
                }
            }
        }
        Ok(())
    }

    fn minted_elsewhere(&self, iri: &TermIri, skip: Option<&str>) -> bool {
        self.annotations
            .values()
            .filter(|a| Some(a.id.as_str()) != skip)
            .any(|a| match &a.value {
                AnnotationValue::Ontological(v) => v.minted.iter().any(|m| &m.iri == iri),
                AnnotationValue::Text(_) => false,
            })
    }

    fn annotation_id(&self, id: Option<&str>) -> Result<String> {
        match id {
            Some(id) => {
                self.check_new_annotation_id(id)?;
                Ok(id.to_string())
            }
            None => Ok(self.next_id("a", self.annotations.len() + 1, true)),
        }
    }

    /// Adds an annotation spanning two slots. On a time subdivision tier the
    /// span must sit inside an annotation of the parent tier.
    pub fn add_alignable_annotation(
        &mut self,
        id: Option<&str>,
        tier: &str,
        begin: &SlotId,
        end: &SlotId,
        value: impl Into<AnnotationValue>,
    ) -> Result<String> {
        let value = value.into();
        let tier_ref = self
            .tiers
            .get(tier)
            .ok_or_else(|| EngineError::UnknownTier(tier.to_string()))?;
        let lt = &self.linguistic_types[&tier_ref.linguistic_type];
        if !lt.time_alignable {
            return Err(EngineError::NotAlignableTier(tier.to_string()));
        }
        let positions = self.slot_positions();
        let b = *positions
            .get(begin)
            .ok_or_else(|| EngineError::UnknownSlot(begin.0.clone()))?;
        let e = *positions
            .get(end)
            .ok_or_else(|| EngineError::UnknownSlot(end.0.clone()))?;
        if b >= e {
            return Err(EngineError::InvertedInterval);
        }
        if lt.stereotype == Stereotype::TimeSubdivision && self.containing_parent(tier, b, e, &positions).is_none() {
            return Err(EngineError::OutsideParentSlot);
        }
        if let Some(other) = self.overlapping(tier, b, e, &positions, None) {
            return Err(EngineError::OverlapsSibling(other.to_string()));
        }
        self.check_value(tier_ref, &value, None)?;
        let id = self.annotation_id(id)?;
        self.annotations.insert(
            id.clone(),
            Annotation {
                id: id.clone(),
                tier: tier.to_string(),
                anchor: Anchor::Alignable {
                    begin: begin.clone(),
                    end: end.clone(),
                },
                value,
                extra: Vec::new(),
            },
        );
        Ok(id)
    }

    /// Adds an annotation pointing at `parent` on the tier's parent tier.
    ///
    /// On symbolic subdivision tiers `ordinal` places the unit among its
    /// siblings (appended when `None`, later siblings shift up). On
    /// association tiers each parent gets at most one child and the ordinal
    /// must be absent or zero.
    pub fn add_referring_annotation(
        &mut self,
        id: Option<&str>,
        tier: &str,
        parent: &str,
        value: impl Into<AnnotationValue>,
        ordinal: Option<u32>,
    ) -> Result<String> {
        let value = value.into();
        let tier_ref = self
            .tiers
            .get(tier)
            .ok_or_else(|| EngineError::UnknownTier(tier.to_string()))?;
        let stereotype = self.linguistic_types[&tier_ref.linguistic_type].stereotype;
        if !stereotype.is_symbolic() {
            return Err(EngineError::NotReferringTier(tier.to_string()));
        }
        let parent_ann = self
            .annotations
            .get(parent)
            .ok_or_else(|| EngineError::UnknownParentAnnotation(parent.to_string()))?;
        let expected = tier_ref.parent.as_deref().unwrap_or_default();
        if parent_ann.tier != expected {
            return Err(EngineError::ParentOnWrongTier {
                annotation: parent.to_string(),
                expected: expected.to_string(),
                actual: parent_ann.tier.clone(),
            });
        }
        let siblings: Vec<(&String, u32)> = self
            .annotations_on(tier)
            .filter_map(|a| match &a.anchor {
                Anchor::Referring { parent: p, ordinal } if p == parent => Some((&a.id, *ordinal)),
                _ => None,
            })
            .collect();
        let ordinal = match stereotype {
            Stereotype::SymbolicAssociation => {
                if !siblings.is_empty() {
                    return Err(EngineError::AssociationAlreadyFilled(parent.to_string()));
                }
                match ordinal {
                    None | Some(0) => 0,
                    Some(k) => return Err(EngineError::InvalidOrdinal(k)),
                }
            }
            _ => match ordinal {
                None => siblings.iter().map(|(_, o)| o + 1).max().unwrap_or(0),
                Some(k) if k as usize > siblings.len() => return Err(EngineError::InvalidOrdinal(k)),
                Some(k) => k,
            },
        };
        self.check_value(tier_ref, &value, None)?;
        let id = self.annotation_id(id)?;
        let shift: Vec<String> = siblings
            .iter()
            .filter(|(_, o)| *o >= ordinal)
            .map(|(id, _)| (*id).clone())
            .collect();
        if siblings.iter().any(|(_, o)| *o == ordinal) {
            for sibling in shift {
                if let Some(Anchor::Referring { ordinal, .. }) =
                    self.annotations.get_mut(&sibling).map(|a| &mut a.anchor)
                {
                    *ordinal += 1;
                }
            }
        }
        self.annotations.insert(
            id.clone(),
            Annotation {
                id: id.clone(),
                tier: tier.to_string(),
                anchor: Anchor::Referring {
                    parent: parent.to_string(),
                    ordinal,
                },
                value,
                extra: Vec::new(),
            },
        );
        Ok(id)
    }

    /// Replaces an annotation's value, subject to the tier's value kind.
    pub fn set_value(&mut self, annotation: &str, value: impl Into<AnnotationValue>) -> Result<()> {
        let value = value.into();
        let ann = self
            .annotations
            .get(annotation)
            .ok_or_else(|| EngineError::UnknownAnnotation(annotation.to_string()))?;
        let tier = &self.tiers[&ann.tier];
        self.check_value(tier, &value, Some(annotation))?;
        self.annotations.get_mut(annotation).expect("checked above").value = value;
        Ok(())
    }

    /// Annotations that depend directly on `id`: referring annotations
    /// pointing at it, and time subdivision annotations inside its span.
    pub fn dependents(&self, id: &str) -> Vec<&str> {
        let Some(ann) = self.annotations.get(id) else {
            return Vec::new();
        };
        let positions = self.slot_positions();
        let span = ann.slots().map(|(b, e)| (positions[b], positions[e]));
        let child_tiers = self.child_tiers(&ann.tier);
        self.annotations
            .values()
            .filter(|a| child_tiers.contains(&a.tier.as_str()))
            .filter(|a| match (&a.anchor, span) {
                (Anchor::Referring { parent, .. }, _) => parent == id,
                (Anchor::Alignable { begin, end }, Some((pb, pe))) => {
                    self.stereotype(&a.tier) == Some(Stereotype::TimeSubdivision)
                        && pb <= positions[begin]
                        && positions[end] <= pe
                }
                (Anchor::Alignable { .. }, None) => false,
            })
            .map(|a| a.id.as_str())
            .collect()
    }

    /// Removes the annotation and everything that depends on it, directly or
    /// transitively. Untimed slots left unused are dropped too.
    pub fn delete_annotation(&mut self, id: &str) -> Result<Removal> {
        if !self.annotations.contains_key(id) {
            return Err(EngineError::UnknownAnnotation(id.to_string()));
        }
        let mut doomed = vec![id.to_string()];
        let mut seen = BTreeSet::from([id.to_string()]);
        let mut queue = VecDeque::from([id.to_string()]);
        while let Some(next) = queue.pop_front() {
            for dep in self.dependents(&next) {
                if seen.insert(dep.to_string()) {
                    doomed.push(dep.to_string());
                    queue.push_back(dep.to_string());
                }
            }
        }
        let slots = self.remove_annotations(&doomed, true);
        Ok(Removal {
            tiers: Vec::new(),
            annotations: doomed,
            slots,
        })
    }

    /// Time interval of an annotation. Referring annotations inherit the
    /// interval of the alignable annotation at the root of their chain.
    pub fn resolve_alignment(&self, id: &str) -> Result<Alignment> {
        let mut current = self
            .annotations
            .get(id)
            .ok_or_else(|| EngineError::UnknownAnnotation(id.to_string()))?;
        for _ in 0..=self.annotations.len() {
            match &current.anchor {
                Anchor::Alignable { begin, end } => {
                    let time = |s: &SlotId| self.slot(s).and_then(|slot| slot.time);
                    return Ok(match (time(begin), time(end)) {
                        (Some(begin), Some(end)) => Alignment::Aligned { begin, end },
                        _ => Alignment::Unaligned,
                    });
                }
                Anchor::Referring { parent, .. } => {
                    current = self
                        .annotations
                        .get(parent)
                        .ok_or_else(|| EngineError::BrokenChain(id.to_string()))?;
                }
            }
        }
        Err(EngineError::BrokenChain(id.to_string()))
    }
}

pub fn value_node_id(annotation: &str) -> String {
    format!("{annotation}{VALUE_ID_SUFFIX}")
}

pub fn media_node_id(index: usize) -> String {
    format!("media-{index}")
}

/// Positions where a slot timed `time` may go: after every earlier timed
/// slot, before every later one. Returned as an inclusive range.
fn insertion_range(order: &[TimeSlot], time: u64) -> (usize, usize) {
    let lo = order
        .iter()
        .rposition(|s| s.time.is_some_and(|t| t < time))
        .map_or(0, |i| i + 1);
    let hi = order
        .iter()
        .position(|s| s.time.is_some_and(|t| t > time))
        .unwrap_or(order.len());
    (lo, hi)
}
