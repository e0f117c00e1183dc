use crate::iri::TermIri;

/// Rejected edit. A failed edit leaves the document untouched.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("linguistic type `{0}` already exists")]
    DuplicateLinguisticType(String),
    #[error("linguistic type `{id}` is invalid: {reason}")]
    InvalidLinguisticType { id: String, reason: &'static str },
    #[error("unknown linguistic type `{0}`")]
    UnknownLinguisticType(String),

    #[error("tier `{0}` already exists")]
    DuplicateTier(String),
    #[error("unknown tier `{0}`")]
    UnknownTier(String),
    #[error("unknown parent tier `{0}`")]
    UnknownParent(String),
    #[error("tier `{0}` has no parent, so it must use stereotype None")]
    RootMustBeAlignable(String),
    #[error("tier `{0}` uses stereotype None and cannot have a parent")]
    ParentForbidden(String),
    #[error("time subdivision tier `{tier}` needs a time-alignable parent, `{parent}` is not")]
    ParentNotTimeAlignable { tier: String, parent: String },
    #[error("ontological tier `{0}` needs a profile")]
    ProfileRequired(String),
    #[error("tier `{0}` is not ontological and cannot have a profile")]
    ProfileForbidden(String),
    #[error("profile `{profile}` is already bound to tier `{tier}`")]
    ProfileAlreadyBound { profile: String, tier: String },

    #[error("identifier `{0}` is already in use")]
    IdInUse(String),
    #[error("`{0}` is not a valid identifier")]
    InvalidId(String),

    #[error("time {0} is negative")]
    NegativeTime(i64),
    #[error("unknown time slot `{0}`")]
    UnknownSlot(String),
    #[error("cannot place a slot at position {0} without breaking time order")]
    InvalidPosition(usize),

    #[error("tier `{0}` is not time-alignable")]
    NotAlignableTier(String),
    #[error("begin slot must precede end slot")]
    InvertedInterval,
    #[error("interval is not contained in any annotation of the parent tier")]
    OutsideParentSlot,
    #[error("interval overlaps annotation `{0}`")]
    OverlapsSibling(String),

    #[error("tier `{0}` does not hold referring annotations")]
    NotReferringTier(String),
    #[error("unknown parent annotation `{0}`")]
    UnknownParentAnnotation(String),
    #[error("annotation `{annotation}` is on tier `{actual}`, expected parent tier `{expected}`")]
    ParentOnWrongTier {
        annotation: String,
        expected: String,
        actual: String,
    },
    #[error("annotation `{0}` already has an associated annotation on this tier")]
    AssociationAlreadyFilled(String),
    #[error("ordinal {0} is out of range")]
    InvalidOrdinal(u32),
    #[error("tier `{tier}` takes {expected} values")]
    ValueKindMismatch { tier: String, expected: &'static str },

    #[error("unknown annotation `{0}`")]
    UnknownAnnotation(String),
    #[error("reference chain of `{0}` does not reach an alignable annotation")]
    BrokenChain(String),

    #[error("tier `{0}` is not ontological")]
    NotOntologicalTier(String),
    #[error("no profile registered for `{0}`")]
    UnknownProfile(String),
    #[error("no ontology registered for `{0}`")]
    UnknownOntology(String),
    #[error("profile has no user-defined term `{0}`")]
    UnknownUserTerm(String),
    #[error("ontology term `{term}` does not resolve: {reason}")]
    UnresolvedTerm { term: String, reason: String },
    #[error("an instance name is required for `{0}`")]
    MissingInstanceName(String),
    #[error("class `{0}` has restrictions; property fills are required")]
    MissingPropertyFills(String),
    #[error("instance `{0}` already exists")]
    InstanceExists(TermIri),
    #[error("`{0}` is not a valid property")]
    InvalidProperty(String),

    #[error("moving the slot would invert annotation `{0}`")]
    WouldInvertInterval(String),
    #[error("moving the slot would take annotation `{0}` outside its parent")]
    WouldEscapeParent(String),
}

impl EngineError {
    /// Stable variant name, used on the wire.
    pub fn name(&self) -> &'static str {
        use EngineError::*;
        match self {
            DuplicateLinguisticType(_) => "DuplicateLinguisticType",
            InvalidLinguisticType { .. } => "InvalidLinguisticType",
            UnknownLinguisticType(_) => "UnknownLinguisticType",
            DuplicateTier(_) => "DuplicateTier",
            UnknownTier(_) => "UnknownTier",
            UnknownParent(_) => "UnknownParent",
            RootMustBeAlignable(_) => "RootMustBeAlignable",
            ParentForbidden(_) => "ParentForbidden",
            ParentNotTimeAlignable { .. } => "ParentNotTimeAlignable",
            ProfileRequired(_) => "ProfileRequired",
            ProfileForbidden(_) => "ProfileForbidden",
            ProfileAlreadyBound { .. } => "ProfileAlreadyBound",
            IdInUse(_) => "IdInUse",
            InvalidId(_) => "InvalidId",
            NegativeTime(_) => "NegativeTime",
            UnknownSlot(_) => "UnknownSlot",
            InvalidPosition(_) => "InvalidPosition",
            NotAlignableTier(_) => "NotAlignableTier",
            InvertedInterval => "InvertedInterval",
            OutsideParentSlot => "OutsideParentSlot",
            OverlapsSibling(_) => "OverlapsSibling",
            NotReferringTier(_) => "NotReferringTier",
            UnknownParentAnnotation(_) => "UnknownParentAnnotation",
            ParentOnWrongTier { .. } => "ParentOnWrongTier",
            AssociationAlreadyFilled(_) => "AssociationAlreadyFilled",
            InvalidOrdinal(_) => "InvalidOrdinal",
            ValueKindMismatch { .. } => "ValueKindMismatch",
            UnknownAnnotation(_) => "UnknownAnnotation",
            BrokenChain(_) => "BrokenChain",
            NotOntologicalTier(_) => "NotOntologicalTier",
            UnknownProfile(_) => "UnknownProfile",
            UnknownOntology(_) => "UnknownOntology",
            UnknownUserTerm(_) => "UnknownUserTerm",
            UnresolvedTerm { .. } => "UnresolvedTerm",
            MissingInstanceName(_) => "MissingInstanceName",
            MissingPropertyFills(_) => "MissingPropertyFills",
            InstanceExists(_) => "InstanceExists",
            InvalidProperty(_) => "InvalidProperty",
            WouldInvertInterval(_) => "WouldInvertInterval",
            WouldEscapeParent(_) => "WouldEscapeParent",
        }
    }

    /// True for errors caused by an unknown id rather than a rule violation.
    pub fn is_not_found(&self) -> bool {
        matches!(
            self,
            EngineError::UnknownTier(_) | EngineError::UnknownSlot(_) | EngineError::UnknownAnnotation(_)
        )
    }
}
