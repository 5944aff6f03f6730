//! Generated output records and surface-text helpers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::annotation::NliLabel;
use crate::lifespan::LifespanMeta;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    Original,
    Passive,
    PassiveReversal,
    PersonReversal,
    Birthday,
}

impl Transform {
    pub fn as_str(self) -> &'static str {
        match self {
            Transform::Original => "original",
            Transform::Passive => "passive",
            Transform::PassiveReversal => "passive_reversal",
            Transform::PersonReversal => "person_reversal",
            Transform::Birthday => "birthday",
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One output record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedExample {
    #[serde(rename = "premise")]
    pub premise_text: String,
    #[serde(rename = "hypothesis")]
    pub hypothesis_text: String,
    pub label: NliLabel,
    pub transform: Transform,
    pub source_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<LifespanMeta>,
}

/// Why a source pair produced no output for a transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkipReason {
    NoFrame,
    AmbiguousFrame,
    MissingArg0,
    MissingArg1,
    WrongOrder,
    UnsupportedVerbGroup,
    NotEntailment,
    Filtered(FilterReason),
    NoTwoPersons,
    NoPersonEntity,
    NoNeutralCandidate,
}

impl SkipReason {
    /// Stable key used in stats sidecars.
    pub fn as_str(self) -> &'static str {
        match self {
            SkipReason::NoFrame => "no_frame",
            SkipReason::AmbiguousFrame => "ambiguous_frame",
            SkipReason::MissingArg0 => "missing_arg0",
            SkipReason::MissingArg1 => "missing_arg1",
            SkipReason::WrongOrder => "wrong_order",
            SkipReason::UnsupportedVerbGroup => "unsupported_verb_group",
            SkipReason::NotEntailment => "not_entailment",
            SkipReason::Filtered(FilterReason::ReciprocalVerb) => "filtered_reciprocal_verb",
            SkipReason::Filtered(FilterReason::WithPreposition) => "filtered_with_preposition",
            SkipReason::NoTwoPersons => "no_two_persons",
            SkipReason::NoPersonEntity => "no_person_entity",
            SkipReason::NoNeutralCandidate => "no_neutral_candidate",
        }
    }
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::error::Error for SkipReason {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterReason {
    ReciprocalVerb,
    WithPreposition,
}

const ATTACH_LEFT: &[&str] = &[
    ".", ",", ";", ":", "!", "?", "%", ")", "]", "}", "'s", "'S", "'", "n't", "'re", "'ve", "'ll", "'d", "'m",
];
const ATTACH_RIGHT: &[&str] = &["(", "[", "{"];

/// Joins tokens with single spaces, attaching punctuation and clitics to the
/// preceding token and opening brackets to the following one.
pub fn detokenize<S: AsRef<str>>(tokens: &[S]) -> String {
    let mut out = String::new();
    let mut glue_next = true;
    for tok in tokens {
        let tok = tok.as_ref();
        if !glue_next && !ATTACH_LEFT.contains(&tok) {
            out.push(' ');
        }
        out.push_str(tok);
        glue_next = ATTACH_RIGHT.contains(&tok);
    }
    out
}

pub(crate) fn capitalize_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

pub(crate) fn lowercase_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_lowercase().chain(chars).collect(),
        None => String::new(),
    }
}
