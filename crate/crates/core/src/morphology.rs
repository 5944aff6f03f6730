//! English verb morphology for passivization.
//!
//! [`analyze_verb_group`] recognizes a closed set of active verb-group shapes
//! around the root verb, and [`passive_verb_group`] produces the matching
//! passive group (`be` form + past participle) agreeing with the new subject.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::annotation::{DepHead, SentenceAnno, Span};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphologyError {
    #[error("unsupported verb group: {0}")]
    UnsupportedVerbGroup(String),
    #[error("span [{}, {}) has no head token", .0.start, .0.end)]
    HeadlessSpan(Span),
    #[error("irregular verb table line {line}: {msg}")]
    BadTable { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tense {
    Present,
    Past,
    ModalInfinitive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Aspect {
    Simple,
    Progressive,
    Perfect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrammaticalNumber {
    Singular,
    Plural,
}

impl fmt::Display for GrammaticalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrammaticalNumber::Singular => "singular",
            GrammaticalNumber::Plural => "plural",
        })
    }
}

/// Tense/aspect/modal decomposition of a root verb group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbGroupAnalysis {
    pub lemma: String,
    pub tense: Tense,
    pub aspect: Aspect,
    pub modal: Option<String>,
    /// Auxiliaries plus the root verb.
    pub group_span: Span,
}

const IRREGULAR_TSV: &str = include_str!("../data/irregular_verbs.tsv");

/// Past participles for verbs the suffix rules get wrong.
#[derive(Debug, Clone, Default)]
pub struct ParticipleTable {
    irregular: HashMap<String, String>,
}

impl ParticipleTable {
    /// Parses `lemma<TAB>participle` lines; blank lines and `#` comments are ignored.
    pub fn from_tsv(text: &str) -> Result<ParticipleTable, MorphologyError> {
        let mut irregular = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lemma, form) = line.split_once('\t').ok_or_else(|| MorphologyError::BadTable {
                line: i + 1,
                msg: "expected lemma<TAB>participle".into(),
            })?;
            let (lemma, form) = (lemma.trim(), form.trim());
            if lemma.is_empty() || form.is_empty() {
                return Err(MorphologyError::BadTable { line: i + 1, msg: "empty column".into() });
            }
            irregular.insert(lemma.to_string(), form.to_string());
        }
        Ok(ParticipleTable { irregular })
    }

    /// The table shipped in `data/irregular_verbs.tsv`.
    pub fn builtin() -> &'static ParticipleTable {
        static TABLE: OnceLock<ParticipleTable> = OnceLock::new();
        TABLE.get_or_init(|| ParticipleTable::from_tsv(IRREGULAR_TSV).expect("builtin irregular table parses"))
    }

    pub fn len(&self) -> usize {
        self.irregular.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irregular.is_empty()
    }

    pub fn irregular(&self, lemma: &str) -> Option<&str> {
        self.irregular.get(lemma).map(String::as_str)
    }

    pub fn past_participle(&self, lemma: &str) -> String {
        let lemma = lemma.to_lowercase();
        if let Some(form) = self.irregular(&lemma) {
            return form.to_string();
        }
        regular_participle(&lemma)
    }
}

// Stress falls on the final syllable, so the consonant doubles.
const KNOWN_DOUBLING: &[&str] = &[
    "admit", "commit", "compel", "control", "equip", "expel", "occur", "omit", "patrol", "permit",
    "prefer", "propel", "rebel", "recur", "refer", "regret", "submit", "transfer", "transmit",
];

const DOUBLING_CONSONANTS: &[u8] = b"bdglmnprt";

fn is_vowel(c: u8) -> bool {
    matches!(c, b'a' | b'e' | b'i' | b'o' | b'u')
}

fn vowel_groups(word: &[u8]) -> usize {
    let mut groups = 0;
    let mut prev = false;
    for &c in word {
        let v = is_vowel(c);
        if v && !prev {
            groups += 1;
        }
        prev = v;
    }
    groups
}

fn doubles_final_consonant(word: &str) -> bool {
    if KNOWN_DOUBLING.contains(&word) {
        return true;
    }
    let b = word.as_bytes();
    let n = b.len();
    n >= 3
        && vowel_groups(b) == 1
        && DOUBLING_CONSONANTS.contains(&b[n - 1])
        && is_vowel(b[n - 2])
        && !is_vowel(b[n - 3])
}

fn regular_participle(lemma: &str) -> String {
    let b = lemma.as_bytes();
    let n = b.len();
    if n == 0 {
        return "ed".into();
    }
    if b[n - 1] == b'e' {
        return format!("{lemma}d");
    }
    if n >= 2 && b[n - 1] == b'y' && !is_vowel(b[n - 2]) {
        return format!("{}ied", &lemma[..n - 1]);
    }
    if doubles_final_consonant(lemma) {
        return format!("{lemma}{}ed", b[n - 1] as char);
    }
    format!("{lemma}ed")
}

/// English past participle using the builtin irregular table.
pub fn past_participle(lemma: &str) -> String {
    ParticipleTable::builtin().past_participle(lemma)
}

fn unsupported(msg: impl Into<String>) -> MorphologyError {
    MorphologyError::UnsupportedVerbGroup(msg.into())
}

fn is_aux_label(label: &str) -> bool {
    matches!(label, "aux" | "auxpass" | "aux:pass")
}

fn is_negation(sentence: &SentenceAnno, idx: usize) -> bool {
    let t = sentence.token(idx);
    t.dep_label == "neg"
        || matches!(t.lemma.to_lowercase().as_str(), "not" | "n't" | "never")
        || matches!(t.text.to_lowercase().as_str(), "not" | "n't" | "never")
}

fn aux_lemma(sentence: &SentenceAnno, idx: usize) -> String {
    let t = sentence.token(idx);
    let text = t.text.to_lowercase();
    match text.as_str() {
        "am" | "is" | "are" | "was" | "were" | "'m" | "'re" => "be".into(),
        "has" | "have" | "had" | "'ve" | "'d" => "have".into(),
        _ if !t.lemma.is_empty() => t.lemma.to_lowercase(),
        _ => text,
    }
}

fn finite_tense(pos: &str) -> Option<Tense> {
    match pos {
        "VBZ" | "VBP" => Some(Tense::Present),
        "VBD" => Some(Tense::Past),
        _ => None,
    }
}

/// Decomposes the verb group headed by `root`.
///
/// Accepted shapes: VBZ/VBP, VBD, be+VBG, have+VBN, MD+VB. Anything else
/// (passives, negation, interrupted auxiliary chains, non-verb roots) is
/// rejected with [`MorphologyError::UnsupportedVerbGroup`].
pub fn analyze_verb_group(sentence: &SentenceAnno, root: usize) -> Result<VerbGroupAnalysis, MorphologyError> {
    let verb = sentence.token(root);
    if !verb.pos.starts_with("VB") {
        return Err(unsupported(format!("root `{}` is tagged {}", verb.text, verb.pos)));
    }
    let children: Vec<usize> = sentence.children(root).collect();
    if children.iter().any(|&c| is_negation(sentence, c)) {
        return Err(unsupported("negated verb group"));
    }
    let auxes: Vec<usize> = children
        .iter()
        .copied()
        .filter(|&c| is_aux_label(&sentence.token(c).dep_label) || sentence.token(c).pos == "MD")
        .collect();
    if auxes.iter().any(|&c| sentence.token(c).dep_label != "aux") {
        return Err(unsupported("already passive"));
    }
    if auxes.iter().any(|&c| c > root) {
        return Err(unsupported("auxiliary after the verb"));
    }
    // The auxiliaries must sit immediately before the verb, with nothing in between.
    let start = root - auxes.len();
    if auxes.iter().enumerate().any(|(i, &c)| c != start + i) {
        return Err(unsupported("interrupted auxiliary chain"));
    }
    let group_span = Span::new(start, root + 1);
    let lemma = if verb.lemma.is_empty() { verb.text.to_lowercase() } else { verb.lemma.to_lowercase() };
    let pos = verb.pos.as_str();

    let (tense, aspect, modal) = match auxes.as_slice() {
        [] => match finite_tense(pos) {
            Some(t) => (t, Aspect::Simple, None),
            None => return Err(unsupported(format!("bare {pos} without auxiliary"))),
        },
        [aux] => {
            let a = sentence.token(*aux);
            let alemma = aux_lemma(sentence, *aux);
            let atense = finite_tense(&a.pos).or_else(|| match a.text.to_lowercase().as_str() {
                "am" | "is" | "are" | "has" | "have" | "'m" | "'re" | "'ve" => Some(Tense::Present),
                "was" | "were" | "had" | "'d" => Some(Tense::Past),
                _ => None,
            });
            match (alemma.as_str(), pos, a.pos.as_str()) {
                ("be", "VBG", _) => match atense {
                    Some(t) => (t, Aspect::Progressive, None),
                    None => return Err(unsupported("non-finite progressive auxiliary")),
                },
                ("have", "VBN", _) => match atense {
                    Some(t) => (t, Aspect::Perfect, None),
                    None => return Err(unsupported("non-finite perfect auxiliary")),
                },
                (_, "VB", "MD") => (Tense::ModalInfinitive, Aspect::Simple, Some(a.text.to_lowercase())),
                _ => return Err(unsupported(format!("`{} {}` ({} {})", a.text, verb.text, a.pos, pos))),
            }
        }
        _ => return Err(unsupported("multi-auxiliary verb group")),
    };
    Ok(VerbGroupAnalysis { lemma, tense, aspect, modal, group_span })
}

fn be_form(tense: Tense, number: GrammaticalNumber) -> &'static str {
    match (tense, number) {
        (Tense::Past, GrammaticalNumber::Singular) => "was",
        (Tense::Past, GrammaticalNumber::Plural) => "were",
        (_, GrammaticalNumber::Singular) => "is",
        (_, GrammaticalNumber::Plural) => "are",
    }
}

/// Passive verb group for `analysis`, agreeing with a subject of `number`.
pub fn passive_verb_group(analysis: &VerbGroupAnalysis, number: GrammaticalNumber) -> Vec<String> {
    passive_verb_group_with(ParticipleTable::builtin(), analysis, number)
}

pub fn passive_verb_group_with(
    table: &ParticipleTable,
    analysis: &VerbGroupAnalysis,
    number: GrammaticalNumber,
) -> Vec<String> {
    let pp = table.past_participle(&analysis.lemma);
    let group: Vec<&str> = match (analysis.tense, analysis.aspect, &analysis.modal) {
        (Tense::ModalInfinitive, _, Some(modal)) => vec![modal, "be"],
        (Tense::ModalInfinitive, _, None) => vec!["be"],
        (t, Aspect::Simple, _) => vec![be_form(t, number)],
        (t, Aspect::Progressive, _) => vec![be_form(t, number), "being"],
        (Tense::Present, Aspect::Perfect, _) => match number {
            GrammaticalNumber::Singular => vec!["has", "been"],
            GrammaticalNumber::Plural => vec!["have", "been"],
        },
        (Tense::Past, Aspect::Perfect, _) => vec!["had", "been"],
    };
    group.into_iter().map(str::to_string).chain(std::iter::once(pp)).collect()
}

/// Grammatical number of the phrase `span`, read off its syntactic head.
///
/// The head is the first token whose dependency head lies outside the span.
/// Plural when the head is NNS/NNPS, one of `they`/`we`/`you`, or is
/// coordinated with `and` inside the span.
pub fn noun_number(sentence: &SentenceAnno, span: Span) -> Result<GrammaticalNumber, MorphologyError> {
    let head = span
        .range()
        .find(|&i| match sentence.token(i).dep_head {
            DepHead::Root => true,
            DepHead::Token(h) => !span.contains(h),
        })
        .ok_or(MorphologyError::HeadlessSpan(span))?;
    let t = sentence.token(head);
    let lower = t.text.to_lowercase();
    let plural_pronoun = ["they", "we", "you"].iter().any(|p| *p == lower || *p == t.lemma.to_lowercase());
    let coordinated = sentence.children(head).any(|c| {
        span.contains(c) && sentence.token(c).dep_label == "cc" && sentence.token(c).text.eq_ignore_ascii_case("and")
    }) && sentence.children(head).any(|c| span.contains(c) && sentence.token(c).dep_label == "conj");
    if matches!(t.pos.as_str(), "NNS" | "NNPS") || plural_pronoun || coordinated {
        Ok(GrammaticalNumber::Plural)
    } else {
        Ok(GrammaticalNumber::Singular)
    }
}
