//! Annotated premise/hypothesis pairs.
//!
//! The on-disk format is one JSON object per line. Each sentence carries a
//! single shared tokenization with parallel arrays for POS tags, lemmas and
//! dependency arcs (`-1` marks the root), plus SRL frames and entity spans.
//! All indices are 0-based and spans are half-open.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnnotationError {
    #[error("malformed record: {0}")]
    MalformedRecord(String),
    #[error("missing field `{0}`")]
    MissingField(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("two frames share predicate index {0}")]
    AmbiguousFrame(usize),
}

/// The three NLI classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NliLabel {
    Entailment,
    Contradiction,
    Neutral,
}

impl NliLabel {
    pub const ALL: [NliLabel; 3] = [NliLabel::Entailment, NliLabel::Contradiction, NliLabel::Neutral];

    pub fn as_str(self) -> &'static str {
        match self {
            NliLabel::Entailment => "entailment",
            NliLabel::Contradiction => "contradiction",
            NliLabel::Neutral => "neutral",
        }
    }

    /// Position in [`NliLabel::ALL`].
    pub fn index(self) -> usize {
        match self {
            NliLabel::Entailment => 0,
            NliLabel::Contradiction => 1,
            NliLabel::Neutral => 2,
        }
    }
}

impl fmt::Display for NliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NliLabel {
    type Err = AnnotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "entailment" => Ok(NliLabel::Entailment),
            "contradiction" => Ok(NliLabel::Contradiction),
            "neutral" => Ok(NliLabel::Neutral),
            other => Err(AnnotationError::InvariantViolation(format!(
                "label: `{other}` is not an NLI class"
            ))),
        }
    }
}

/// Half-open token range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.start <= idx && idx < self.end
    }

    /// True when `other` lies entirely inside `self`.
    pub fn covers(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: Span) -> bool {
        self.start < other.end && other.start < self.end
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.end
    }

    fn check(&self, len: usize, what: &str) -> Result<(), AnnotationError> {
        if self.start < self.end && self.end <= len {
            Ok(())
        } else {
            Err(AnnotationError::InvariantViolation(format!(
                "{what}: span [{}, {}) out of bounds for length {len}",
                self.start, self.end
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DepHead {
    Root,
    Token(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenAnno {
    pub text: String,
    pub pos: String,
    pub lemma: String,
    pub dep_head: DepHead,
    pub dep_label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrlFrame {
    pub predicate: usize,
    pub args: BTreeMap<String, Span>,
}

impl SrlFrame {
    pub fn arg(&self, role: &str) -> Option<Span> {
        self.args.get(role).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityAnno {
    pub span: Span,
    pub kind: String,
}

/// A validated, immutable annotated sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceAnno {
    tokens: Vec<TokenAnno>,
    frames: Vec<SrlFrame>,
    entities: Vec<EntityAnno>,
    root: usize,
}

impl SentenceAnno {
    /// Builds a sentence, checking every structural invariant. `what` names
    /// the sentence in error messages ("premise", "hypothesis").
    pub fn new(
        tokens: Vec<TokenAnno>,
        frames: Vec<SrlFrame>,
        entities: Vec<EntityAnno>,
    ) -> Result<SentenceAnno, AnnotationError> {
        Self::validated("sentence", tokens, frames, entities)
    }

    fn validated(
        what: &str,
        tokens: Vec<TokenAnno>,
        frames: Vec<SrlFrame>,
        entities: Vec<EntityAnno>,
    ) -> Result<SentenceAnno, AnnotationError> {
        let n = tokens.len();
        let bad = |msg: String| AnnotationError::InvariantViolation(format!("{what}.{msg}"));
        if n == 0 {
            return Err(bad("tokens: sentence is empty".into()));
        }
        let mut root = None;
        for (i, t) in tokens.iter().enumerate() {
            if t.text.is_empty() {
                return Err(bad(format!("tokens[{i}]: empty token text")));
            }
            if t.pos.is_empty() {
                return Err(bad(format!("pos[{i}]: empty POS tag")));
            }
            match t.dep_head {
                DepHead::Root => {
                    if root.replace(i).is_some() {
                        return Err(bad("dep_heads: more than one ROOT token".into()));
                    }
                }
                DepHead::Token(h) if h >= n => {
                    return Err(bad(format!("dep_heads[{i}]: head {h} out of bounds")));
                }
                DepHead::Token(h) if h == i => {
                    return Err(bad(format!("dep_heads[{i}]: token is its own head")));
                }
                DepHead::Token(_) => {}
            }
        }
        let root = root.ok_or_else(|| bad("dep_heads: no ROOT token".into()))?;
        for (fi, frame) in frames.iter().enumerate() {
            if frame.predicate >= n {
                return Err(bad(format!("srl[{fi}].predicate: index {} out of bounds", frame.predicate)));
            }
            let spans: Vec<(&String, &Span)> = frame.args.iter().collect();
            for (role, span) in &spans {
                span.check(n, &format!("{what}.srl[{fi}].args.{role}"))?;
                if span.contains(frame.predicate) {
                    return Err(bad(format!("srl[{fi}].args.{role}: span contains the predicate")));
                }
            }
            for (a, (ra, sa)) in spans.iter().enumerate() {
                for (rb, sb) in spans.iter().skip(a + 1) {
                    if sa.overlaps(**sb) {
                        return Err(bad(format!("srl[{fi}].args: {ra} overlaps {rb}")));
                    }
                }
            }
        }
        for (ei, ent) in entities.iter().enumerate() {
            ent.span.check(n, &format!("{what}.entities[{ei}]"))?;
            if ent.kind.is_empty() {
                return Err(bad(format!("entities[{ei}].type: empty entity type")));
            }
        }
        Ok(SentenceAnno { tokens, frames, entities, root })
    }

    pub fn tokens(&self) -> &[TokenAnno] {
        &self.tokens
    }

    pub fn frames(&self) -> &[SrlFrame] {
        &self.frames
    }

    pub fn entities(&self) -> &[EntityAnno] {
        &self.entities
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn token(&self, idx: usize) -> &TokenAnno {
        &self.tokens[idx]
    }

    pub fn texts(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.text.as_str()).collect()
    }

    pub fn span_texts(&self, span: Span) -> Vec<&str> {
        self.tokens[span.range()].iter().map(|t| t.text.as_str()).collect()
    }

    /// Index of the unique dependency root.
    pub fn root_index(&self) -> usize {
        self.root
    }

    /// The SRL frame whose predicate is `predicate`, if any.
    pub fn frame_at(&self, predicate: usize) -> Result<Option<&SrlFrame>, AnnotationError> {
        let mut hits = self.frames.iter().filter(|f| f.predicate == predicate);
        let first = hits.next();
        if hits.next().is_some() {
            return Err(AnnotationError::AmbiguousFrame(predicate));
        }
        Ok(first)
    }

    /// Dependents of `head`, in token order.
    pub fn children(&self, head: usize) -> impl Iterator<Item = usize> + '_ {
        self.tokens
            .iter()
            .enumerate()
            .filter(move |(_, t)| t.dep_head == DepHead::Token(head))
            .map(|(i, _)| i)
    }

    /// Entities of the given type (e.g. `PERSON`), in file order.
    pub fn entities_of<'a>(&'a self, kind: &'a str) -> impl Iterator<Item = &'a EntityAnno> + 'a {
        self.entities.iter().filter(move |e| e.kind == kind)
    }
}

/// A premise/hypothesis pair with label and annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedPair {
    pub id: String,
    pub label: NliLabel,
    pub source: String,
    pub page_title: Option<String>,
    pub premise: SentenceAnno,
    pub hypothesis: SentenceAnno,
}

// Wire representation.

#[derive(Debug, Serialize, Deserialize)]
struct RawEntity {
    start: usize,
    end: usize,
    #[serde(rename = "type")]
    kind: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawFrame {
    predicate: usize,
    args: BTreeMap<String, [usize; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawSentence {
    tokens: Vec<String>,
    pos: Vec<String>,
    lemmas: Vec<String>,
    dep_heads: Vec<i64>,
    dep_labels: Vec<String>,
    srl: Vec<RawFrame>,
    entities: Vec<RawEntity>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawPair {
    id: String,
    label: String,
    source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    page_title: Option<String>,
    premise: RawSentence,
    hypothesis: RawSentence,
}

const PAIR_FIELDS: [&str; 5] = ["id", "label", "source", "premise", "hypothesis"];
const SENTENCE_FIELDS: [&str; 7] = ["tokens", "pos", "lemmas", "dep_heads", "dep_labels", "srl", "entities"];

fn require_fields(value: &Value) -> Result<(), AnnotationError> {
    let obj = value
        .as_object()
        .ok_or_else(|| AnnotationError::MalformedRecord("record is not a JSON object".into()))?;
    for field in PAIR_FIELDS {
        if !obj.contains_key(field) {
            return Err(AnnotationError::MissingField(field.to_string()));
        }
    }
    for side in ["premise", "hypothesis"] {
        let sent = obj[side]
            .as_object()
            .ok_or_else(|| AnnotationError::MalformedRecord(format!("`{side}` is not an object")))?;
        for field in SENTENCE_FIELDS {
            if !sent.contains_key(field) {
                return Err(AnnotationError::MissingField(format!("{side}.{field}")));
            }
        }
    }
    Ok(())
}

impl RawSentence {
    fn into_sentence(self, what: &str) -> Result<SentenceAnno, AnnotationError> {
        let n = self.tokens.len();
        for (name, len) in [
            ("pos", self.pos.len()),
            ("lemmas", self.lemmas.len()),
            ("dep_heads", self.dep_heads.len()),
            ("dep_labels", self.dep_labels.len()),
        ] {
            if len != n {
                return Err(AnnotationError::InvariantViolation(format!(
                    "{what}.{name}: length {len} differs from {n} tokens"
                )));
            }
        }
        let mut tokens = Vec::with_capacity(n);
        let parallel = self
            .tokens
            .into_iter()
            .zip(self.pos)
            .zip(self.lemmas)
            .zip(self.dep_heads)
            .zip(self.dep_labels);
        for (i, ((((text, pos), lemma), head), dep_label)) in parallel.enumerate() {
            let dep_head = match head {
                -1 => DepHead::Root,
                h if h >= 0 => DepHead::Token(h as usize),
                h => {
                    return Err(AnnotationError::InvariantViolation(format!(
                        "{what}.dep_heads[{i}]: invalid head {h}"
                    )))
                }
            };
            tokens.push(TokenAnno { text, pos, lemma, dep_head, dep_label });
        }
        let frames = self
            .srl
            .into_iter()
            .map(|f| SrlFrame {
                predicate: f.predicate,
                args: f.args.into_iter().map(|(k, [s, e])| (k, Span::new(s, e))).collect(),
            })
            .collect();
        let entities = self
            .entities
            .into_iter()
            .map(|e| EntityAnno { span: Span::new(e.start, e.end), kind: e.kind })
            .collect();
        SentenceAnno::validated(what, tokens, frames, entities)
    }

    fn from_sentence(s: &SentenceAnno) -> RawSentence {
        RawSentence {
            tokens: s.tokens.iter().map(|t| t.text.clone()).collect(),
            pos: s.tokens.iter().map(|t| t.pos.clone()).collect(),
            lemmas: s.tokens.iter().map(|t| t.lemma.clone()).collect(),
            dep_heads: s
                .tokens
                .iter()
                .map(|t| match t.dep_head {
                    DepHead::Root => -1,
                    DepHead::Token(h) => h as i64,
                })
                .collect(),
            dep_labels: s.tokens.iter().map(|t| t.dep_label.clone()).collect(),
            srl: s
                .frames
                .iter()
                .map(|f| RawFrame {
                    predicate: f.predicate,
                    args: f.args.iter().map(|(k, sp)| (k.clone(), [sp.start, sp.end])).collect(),
                })
                .collect(),
            entities: s
                .entities
                .iter()
                .map(|e| RawEntity { start: e.span.start, end: e.span.end, kind: e.kind.clone() })
                .collect(),
        }
    }
}

/// Parses one line of the annotated input format.
pub fn parse_annotated_pair(line: &str) -> Result<AnnotatedPair, AnnotationError> {
    let value: Value =
        serde_json::from_str(line).map_err(|e| AnnotationError::MalformedRecord(e.to_string()))?;
    require_fields(&value)?;
    let raw: RawPair =
        serde_json::from_value(value).map_err(|e| AnnotationError::MalformedRecord(e.to_string()))?;
    let label = raw.label.parse()?;
    Ok(AnnotatedPair {
        id: raw.id,
        label,
        source: raw.source,
        page_title: raw.page_title,
        premise: raw.premise.into_sentence("premise")?,
        hypothesis: raw.hypothesis.into_sentence("hypothesis")?,
    })
}

/// Serializes a pair as a single JSON line (no trailing newline).
pub fn serialize_annotated_pair(pair: &AnnotatedPair) -> String {
    let raw = RawPair {
        id: pair.id.clone(),
        label: pair.label.as_str().to_string(),
        source: pair.source.clone(),
        page_title: pair.page_title.clone(),
        premise: RawSentence::from_sentence(&pair.premise),
        hypothesis: RawSentence::from_sentence(&pair.hypothesis),
    };
    serde_json::to_string(&raw).expect("annotated pair serializes")
}

impl FromStr for AnnotatedPair {
    type Err = AnnotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_annotated_pair(s)
    }
}

/// Free-function form of [`SentenceAnno::root_index`].
pub fn root_index(sentence: &SentenceAnno) -> usize {
    sentence.root_index()
}

/// Free-function form of [`SentenceAnno::frame_at`].
pub fn frame_at(sentence: &SentenceAnno, predicate: usize) -> Result<Option<&SrlFrame>, AnnotationError> {
    sentence.frame_at(predicate)
}
