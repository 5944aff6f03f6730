//! FEVER-side pair construction and person reversal.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::annotation::{AnnotatedPair, NliLabel, Span};
use crate::example::{detokenize, GeneratedExample, SkipReason, Transform};
use crate::passive::Passivizer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClaimLabel {
    #[serde(rename = "SUPPORTS")]
    Supports,
    #[serde(rename = "REFUTES")]
    Refutes,
    #[serde(rename = "NOT ENOUGH INFO")]
    NotEnoughInfo,
}

impl fmt::Display for ClaimLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimLabel::Supports => "SUPPORTS",
            ClaimLabel::Refutes => "REFUTES",
            ClaimLabel::NotEnoughInfo => "NOT ENOUGH INFO",
        })
    }
}

/// A FEVER claim with its gold evidence locations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeverClaimRecord {
    pub claim_id: u64,
    pub claim_text: String,
    pub claim_label: ClaimLabel,
    pub gold_evidence: BTreeSet<(String, usize)>,
}

impl FeverClaimRecord {
    /// Checks that gold evidence is present exactly when the claim is verifiable.
    pub fn validate(&self) -> Result<(), String> {
        let nei = self.claim_label == ClaimLabel::NotEnoughInfo;
        match (nei, self.gold_evidence.is_empty()) {
            (true, false) => Err(format!("claim {}: NOT ENOUGH INFO claim carries gold evidence", self.claim_id)),
            (false, true) => Err(format!("claim {}: {} claim has no gold evidence", self.claim_id, self.claim_label)),
            _ => Ok(()),
        }
    }

    pub fn is_gold(&self, page_title: &str, sentence_index: usize) -> bool {
        self.gold_evidence.contains(&(page_title.to_string(), sentence_index))
    }
}

/// One retrieved evidence sentence for a claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetrievedEvidence {
    pub claim_id: u64,
    #[serde(rename = "page")]
    pub page_title: String,
    pub sentence_index: usize,
    #[serde(rename = "text")]
    pub sentence_text: String,
}

/// NLI label for a (claim, evidence sentence) pair.
pub fn label_fever_pair(claim_label: ClaimLabel, evidence_is_gold: bool) -> NliLabel {
    match (claim_label, evidence_is_gold) {
        (ClaimLabel::Supports, true) => NliLabel::Entailment,
        (ClaimLabel::Refutes, true) => NliLabel::Contradiction,
        _ => NliLabel::Neutral,
    }
}

/// `[Page Title] premise`, with underscores in the page id shown as spaces.
pub fn prefix_title(page_title: &str, premise_text: &str) -> String {
    format!("[{}] {}", page_title.replace('_', " "), premise_text)
}

/// Exchanges two disjoint spans of `tokens` as whole sequences.
///
/// Returns the new token list and the spans now occupied by the former `a`
/// and `b` contents, respectively.
pub fn exchange_spans<S: Clone>(tokens: &[S], a: Span, b: Span) -> (Vec<S>, Span, Span) {
    assert!(!a.overlaps(b), "spans must be disjoint");
    let (first, second, swapped) = if a.start < b.start { (a, b, false) } else { (b, a, true) };
    let mut out = Vec::with_capacity(tokens.len());
    out.extend_from_slice(&tokens[..first.start]);
    let second_at = out.len();
    out.extend_from_slice(&tokens[second.range()]);
    out.extend_from_slice(&tokens[first.end..second.start]);
    let first_at = out.len();
    out.extend_from_slice(&tokens[first.range()]);
    out.extend_from_slice(&tokens[second.end..]);
    let new_first = Span::new(first_at, first_at + first.len());
    let new_second = Span::new(second_at, second_at + second.len());
    if swapped {
        (out, new_second, new_first)
    } else {
        (out, new_first, new_second)
    }
}

const SWAP_ROLES: [&str; 3] = ["ARG0", "ARG1", "ARG2"];

/// The two PERSON spans to exchange, earliest by argument order then position.
pub fn reversal_candidates(pair: &AnnotatedPair) -> Result<(Span, Span), SkipReason> {
    let hyp = &pair.hypothesis;
    let frame = hyp
        .frame_at(hyp.root_index())
        .map_err(|_| SkipReason::AmbiguousFrame)?
        .ok_or(SkipReason::NoFrame)?;
    let mut persons: Vec<(usize, Span)> = Vec::new();
    for (rank, role) in SWAP_ROLES.iter().enumerate() {
        let Some(arg) = frame.arg(role) else { continue };
        let mut inside: Vec<Span> = hyp.entities_of("PERSON").map(|e| e.span).filter(|s| arg.covers(*s)).collect();
        inside.sort();
        persons.extend(inside.into_iter().map(|s| (rank, s)));
    }
    let texts = hyp.texts();
    for (i, &(ra, sa)) in persons.iter().enumerate() {
        for &(rb, sb) in &persons[i + 1..] {
            if ra != rb && texts[sa.range()] != texts[sb.range()] {
                return Ok((sa, sb));
            }
        }
    }
    Err(SkipReason::NoTwoPersons)
}

pub fn reverse_persons_with(passivizer: &Passivizer, pair: &AnnotatedPair) -> Result<GeneratedExample, SkipReason> {
    if pair.label != NliLabel::Entailment {
        return Err(SkipReason::NotEntailment);
    }
    let (a, b) = reversal_candidates(pair)?;
    let hyp = &pair.hypothesis;
    if let Some(reason) = passivizer.blocked_by_filters(hyp, hyp.root_index()).reason {
        return Err(SkipReason::Filtered(reason));
    }
    let (tokens, _, _) = exchange_spans(&hyp.texts(), a, b);
    Ok(GeneratedExample {
        premise_text: detokenize(&pair.premise.texts()),
        hypothesis_text: detokenize(&tokens),
        label: NliLabel::Contradiction,
        transform: Transform::PersonReversal,
        source_id: pair.id.clone(),
        meta: None,
    })
}

/// Swaps two person names across the root verb's arguments, producing a contradiction.
pub fn reverse_persons(pair: &AnnotatedPair) -> Result<GeneratedExample, SkipReason> {
    reverse_persons_with(Passivizer::builtin(), pair)
}
