//! Passive and passive-reversal hypotheses.
//!
//! Only the root verb of the hypothesis is transformed. The active layout
//! `prefix ARG0 <verb group> ARG1 suffix` becomes
//! `prefix ARG1 <passive group> by ARG0 suffix`; the reversal keeps ARG0 in
//! subject position and puts ARG1 in the `by` phrase, flipping an entailment
//! into a contradiction.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::annotation::{AnnotatedPair, DepHead, NliLabel, SentenceAnno, Span};
use crate::example::{capitalize_first, detokenize, lowercase_first, FilterReason, GeneratedExample, SkipReason, Transform};
use crate::morphology::{analyze_verb_group, noun_number, passive_verb_group_with, GrammaticalNumber, ParticipleTable, VerbGroupAnalysis};

const RECIPROCAL_TXT: &str = include_str!("../data/reciprocal_verbs.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterVerdict {
    pub blocked: bool,
    pub reason: Option<FilterReason>,
}

impl FilterVerdict {
    const PASS: FilterVerdict = FilterVerdict { blocked: false, reason: None };

    fn blocked(reason: FilterReason) -> FilterVerdict {
        FilterVerdict { blocked: true, reason: Some(reason) }
    }
}

/// Result of a successful eligibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassivePlan {
    pub root: usize,
    pub analysis: VerbGroupAnalysis,
    pub arg0: Span,
    pub arg1: Span,
}

/// Parses a one-lemma-per-line list with `#` comments.
pub fn parse_lemma_list(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

/// Passive generator with its verb tables.
#[derive(Debug, Clone)]
pub struct Passivizer {
    participles: ParticipleTable,
    reciprocal: HashSet<String>,
}

impl Default for Passivizer {
    fn default() -> Self {
        Passivizer {
            participles: ParticipleTable::builtin().clone(),
            reciprocal: parse_lemma_list(RECIPROCAL_TXT),
        }
    }
}

impl Passivizer {
    pub fn new(participles: ParticipleTable, reciprocal: HashSet<String>) -> Passivizer {
        Passivizer { participles, reciprocal }
    }

    pub fn builtin() -> &'static Passivizer {
        static P: OnceLock<Passivizer> = OnceLock::new();
        P.get_or_init(Passivizer::default)
    }

    pub fn is_reciprocal(&self, lemma: &str) -> bool {
        self.reciprocal.contains(&lemma.to_lowercase())
    }

    /// Checks whether the hypothesis root can be passivized.
    pub fn passive_eligible(&self, pair: &AnnotatedPair) -> Result<PassivePlan, SkipReason> {
        let hyp = &pair.hypothesis;
        let root = hyp.root_index();
        if !hyp.token(root).pos.starts_with("VB") {
            return Err(SkipReason::UnsupportedVerbGroup);
        }
        let frame = hyp
            .frame_at(root)
            .map_err(|_| SkipReason::AmbiguousFrame)?
            .ok_or(SkipReason::NoFrame)?;
        let arg0 = frame.arg("ARG0").ok_or(SkipReason::MissingArg0)?;
        let arg1 = frame.arg("ARG1").ok_or(SkipReason::MissingArg1)?;
        let analysis = analyze_verb_group(hyp, root).map_err(|_| SkipReason::UnsupportedVerbGroup)?;
        let group = analysis.group_span;
        // Interleaved material (adverbs, parentheticals) is not rearranged.
        if arg0.end != group.start || arg1.start != group.end {
            return Err(SkipReason::WrongOrder);
        }
        Ok(PassivePlan { root, analysis, arg0, arg1 })
    }

    /// Passive token sequence with `subject` fronted and `agent` after "by".
    fn rearrange(&self, sentence: &SentenceAnno, plan: &PassivePlan, subject: Span, agent: Span) -> Vec<String> {
        let texts = sentence.texts();
        // A headless span only arises from a cyclic parse.
        let number = noun_number(sentence, subject).unwrap_or(GrammaticalNumber::Singular);
        let group = passive_verb_group_with(&self.participles, &plan.analysis, number);
        let prefix_end = plan.arg0.start;
        let suffix_start = plan.arg1.end;

        let mut out: Vec<String> = Vec::with_capacity(texts.len() + 3);
        out.extend(texts[..prefix_end].iter().map(|s| s.to_string()));
        let subject_at = out.len();
        out.extend(texts[subject.range()].iter().map(|s| s.to_string()));
        out.extend(group);
        out.push("by".to_string());
        let agent_at = out.len();
        out.extend(texts[agent.range()].iter().map(|s| s.to_string()));
        out.extend(texts[suffix_start..].iter().map(|s| s.to_string()));

        if prefix_end == 0 {
            // Token 0 of the source moved; find where it landed.
            let moved_to = if subject.start == 0 { subject_at } else { agent_at };
            let src = sentence.token(0);
            if moved_to != 0 && !matches!(src.pos.as_str(), "NNP" | "NNPS") && src.text != "I" {
                out[moved_to] = lowercase_first(&out[moved_to]);
            }
            out[0] = capitalize_first(&out[0]);
        }
        out
    }

    /// Passive hypothesis tokens (before detokenization).
    pub fn passive_tokens(&self, pair: &AnnotatedPair) -> Result<Vec<String>, SkipReason> {
        let plan = self.passive_eligible(pair)?;
        Ok(self.rearrange(&pair.hypothesis, &plan, plan.arg1, plan.arg0))
    }

    /// Passive-reversal hypothesis tokens, ignoring label and filters.
    pub fn reversal_tokens(&self, pair: &AnnotatedPair) -> Result<Vec<String>, SkipReason> {
        let plan = self.passive_eligible(pair)?;
        Ok(self.rearrange(&pair.hypothesis, &plan, plan.arg0, plan.arg1))
    }

    pub fn to_passive(&self, pair: &AnnotatedPair) -> Result<GeneratedExample, SkipReason> {
        let tokens = self.passive_tokens(pair)?;
        Ok(GeneratedExample {
            premise_text: detokenize(&pair.premise.texts()),
            hypothesis_text: detokenize(&tokens),
            label: pair.label,
            transform: Transform::Passive,
            source_id: pair.id.clone(),
            meta: None,
        })
    }

    pub fn to_passive_reversal(&self, pair: &AnnotatedPair) -> Result<GeneratedExample, SkipReason> {
        if pair.label != NliLabel::Entailment {
            return Err(SkipReason::NotEntailment);
        }
        let plan = self.passive_eligible(pair)?;
        if let Some(reason) = self.blocked_by_filters(&pair.hypothesis, plan.root).reason {
            return Err(SkipReason::Filtered(reason));
        }
        let tokens = self.rearrange(&pair.hypothesis, &plan, plan.arg0, plan.arg1);
        Ok(GeneratedExample {
            premise_text: detokenize(&pair.premise.texts()),
            hypothesis_text: detokenize(&tokens),
            label: NliLabel::Contradiction,
            transform: Transform::PassiveReversal,
            source_id: pair.id.clone(),
            meta: None,
        })
    }

    /// Reciprocal-verb and "with"-attachment filter on the root verb.
    pub fn blocked_by_filters(&self, sentence: &SentenceAnno, root: usize) -> FilterVerdict {
        let verb = sentence.token(root);
        let lemma = if verb.lemma.is_empty() { verb.text.to_lowercase() } else { verb.lemma.to_lowercase() };
        if self.is_reciprocal(&lemma) {
            return FilterVerdict::blocked(FilterReason::ReciprocalVerb);
        }
        if has_root_with(sentence, root) {
            return FilterVerdict::blocked(FilterReason::WithPreposition);
        }
        FilterVerdict::PASS
    }
}

/// A "with" attached to the root, either directly (`prep`) or as the case
/// marker of one of the root's oblique dependents.
fn has_root_with(sentence: &SentenceAnno, root: usize) -> bool {
    sentence.tokens().iter().any(|t| {
        if !t.text.eq_ignore_ascii_case("with") {
            return false;
        }
        match t.dep_head {
            DepHead::Token(h) if h == root => true,
            DepHead::Token(h) if t.dep_label == "case" => sentence.token(h).dep_head == DepHead::Token(root),
            _ => false,
        }
    })
}

pub fn passive_eligible(pair: &AnnotatedPair) -> Result<PassivePlan, SkipReason> {
    Passivizer::builtin().passive_eligible(pair)
}

pub fn to_passive(pair: &AnnotatedPair) -> Result<GeneratedExample, SkipReason> {
    Passivizer::builtin().to_passive(pair)
}

pub fn to_passive_reversal(pair: &AnnotatedPair) -> Result<GeneratedExample, SkipReason> {
    Passivizer::builtin().to_passive_reversal(pair)
}

pub fn blocked_by_filters(sentence: &SentenceAnno, root: usize) -> FilterVerdict {
    Passivizer::builtin().blocked_by_filters(sentence, root)
}
