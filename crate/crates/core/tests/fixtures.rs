mod common;

use common::{data, fixture};
use syntax_distract::annotation::{frame_at, root_index, Span};
use syntax_distract::example::{FilterReason, SkipReason};
use syntax_distract::io::{read_examples, read_fever, read_snli, write_examples, write_examples_to};
use syntax_distract::lifespan::{birthday_for, birthday_with_lifespan, example_rng, BirthdayConfig, Date, DateFormat, LifeSpan};
use syntax_distract::morphology::{analyze_verb_group, noun_number, Aspect, GrammaticalNumber, Tense};
use syntax_distract::passive::{blocked_by_filters, passive_eligible};
use syntax_distract::{reverse_persons, to_passive, to_passive_reversal, NliLabel, Transform};

#[test]
fn umbrella_structure() {
    let pair = fixture("snli_annotated.jsonl", "umbrella");
    let hyp = &pair.hypothesis;
    assert_eq!(root_index(hyp), 3);
    assert_eq!(hyp.token(3).text, "using");
    let frame = frame_at(hyp, 3).unwrap().unwrap();
    assert_eq!(frame.arg("ARG0"), Some(Span::new(0, 2)));
    assert_eq!(frame.arg("ARG1"), Some(Span::new(4, 7)));
    assert!(frame_at(hyp, 0).unwrap().is_none());

    let a = analyze_verb_group(hyp, 3).unwrap();
    assert_eq!((a.tense, a.aspect), (Tense::Present, Aspect::Progressive));
    assert_eq!(noun_number(hyp, Span::new(4, 7)).unwrap(), GrammaticalNumber::Singular);
    assert!(!blocked_by_filters(hyp, 3).blocked);
}

#[test]
fn two_dogs_plural() {
    let pair = fixture("snli_annotated.jsonl", "dogs");
    assert_eq!(noun_number(&pair.hypothesis, Span::new(0, 2)).unwrap(), GrammaticalNumber::Plural);
    let ex = to_passive(&pair).unwrap();
    assert_eq!(ex.hypothesis_text, "A cat is chased by two dogs.");
    assert_eq!(ex.label, NliLabel::Neutral);
}

#[test]
fn umbrella_passive_and_reversal() {
    let pair = fixture("snli_annotated.jsonl", "umbrella");
    let p = to_passive(&pair).unwrap();
    assert_eq!(p.hypothesis_text, "A large umbrella is being used by a woman");
    assert_eq!(p.label, NliLabel::Entailment);
    assert_eq!(p.premise_text, "A woman in a red coat holds a large umbrella on a rainy street.");
    let r = to_passive_reversal(&pair).unwrap();
    assert_eq!(r.hypothesis_text, "A woman is being used by a large umbrella");
    assert_eq!(r.label, NliLabel::Contradiction);
    assert_eq!(r.transform, Transform::PassiveReversal);

    let mut neutral = pair.clone();
    neutral.label = NliLabel::Neutral;
    assert_eq!(to_passive_reversal(&neutral).unwrap_err(), SkipReason::NotEntailment);
}

#[test]
fn boy_passive_keeps_location() {
    let pair = fixture("snli_annotated.jsonl", "boy");
    let ex = to_passive(&pair).unwrap();
    assert_eq!(ex.hypothesis_text, "The ball was kicked by the boy in the park");
    assert_eq!(ex.label, NliLabel::Contradiction);
}

#[test]
fn filters_on_fixtures() {
    let meet = fixture("snli_annotated.jsonl", "meet");
    assert_eq!(to_passive_reversal(&meet).unwrap_err(), SkipReason::Filtered(FilterReason::ReciprocalVerb));
    // Plain passive is not filtered.
    assert_eq!(to_passive(&meet).unwrap().hypothesis_text, "A woman is met by a man");

    let chess = fixture("snli_annotated.jsonl", "chess");
    let root = chess.hypothesis.root_index();
    assert_eq!(blocked_by_filters(&chess.hypothesis, root).reason, Some(FilterReason::WithPreposition));

    let slept = fixture("snli_annotated.jsonl", "slept");
    assert_eq!(passive_eligible(&slept).unwrap_err(), SkipReason::MissingArg1);
}

#[test]
fn lois_lola_swap() {
    let pair = fixture("fever_annotated.jsonl", "lois");
    let ex = reverse_persons(&pair).unwrap();
    assert_eq!(ex.hypothesis_text, "Lola Lane's name was taken from Lois Lane's name");
    assert_eq!(ex.label, NliLabel::Contradiction);
    assert_eq!(ex.premise_text, "[Lois Lane] The character's name was taken from actress Lola Lane.");
}

#[test]
fn person_reversal_skips() {
    assert_eq!(reverse_persons(&fixture("fever_annotated.jsonl", "lois-n")).unwrap_err(), SkipReason::NotEntailment);
    assert_eq!(reverse_persons(&fixture("fever_annotated.jsonl", "one-person")).unwrap_err(), SkipReason::NoTwoPersons);
    assert_eq!(
        reverse_persons(&fixture("fever_annotated.jsonl", "met")).unwrap_err(),
        SkipReason::Filtered(FilterReason::ReciprocalVerb)
    );
}

#[test]
fn daenerys_birthday() {
    let pair = fixture("fever_annotated.jsonl", "daenerys");
    let ls = LifeSpan { birth: Date::new(860, 4, 25), death: Some(Date::new(920, 11, 9)), format: DateFormat::A };
    let config = BirthdayConfig::default();

    let ex = birthday_with_lifespan(&pair, ls, &mut example_rng(205, &pair.id), &config).unwrap();
    assert!(ex.premise_text.ends_with("portrayed by Emilia Clarke (April 25, 860 -- November 9, 920)."), "{}", ex.premise_text);
    assert!(ex.premise_text.starts_with("[Daenerys Targaryen] Daenerys Targaryen is a fictional character"));
    assert_eq!(ex.hypothesis_text, "Emilia Clarke died in April");
    assert_eq!(ex.label, NliLabel::Contradiction);

    let ex = birthday_with_lifespan(&pair, ls, &mut example_rng(65, &pair.id), &config).unwrap();
    assert_eq!(ex.hypothesis_text, "Emilia Clarke was born in 860");
    assert_eq!(ex.label, NliLabel::Entailment);
}

#[test]
fn birthday_without_person() {
    let pair = fixture("snli_annotated.jsonl", "umbrella");
    assert_eq!(birthday_for(&pair, &BirthdayConfig::default()).unwrap_err(), SkipReason::NoPersonEntity);
}

#[test]
fn birthday_neutral_needs_second_name() {
    // Only one distinct PERSON name in this premise.
    let pair = fixture("fever_annotated.jsonl", "one-person");
    let mut premise_only = pair.clone();
    premise_only.premise = pair.hypothesis.clone();
    let config = BirthdayConfig::default();
    let mut saw_skip = false;
    for seed in 0..60 {
        match birthday_for(&premise_only, &BirthdayConfig { seed, ..config.clone() }) {
            Err(SkipReason::NoNeutralCandidate) => saw_skip = true,
            Ok(ex) => assert_ne!(ex.label, NliLabel::Neutral),
            Err(other) => panic!("{other}"),
        }
    }
    assert!(saw_skip);
}

#[test]
fn snli_reader_on_sample() {
    let mut r = read_snli(data("snli_sample.jsonl")).unwrap();
    let recs: Vec<_> = r.by_ref().map(Result::unwrap).collect();
    assert_eq!(recs.len(), 2);
    assert_eq!(r.skipped_no_consensus, 1);
    assert_eq!(recs[1].label, NliLabel::Contradiction);
}

#[test]
fn fever_join_and_labels() {
    let pairs = read_fever(data("fever_claims.jsonl"), data("fever_retrieved.jsonl")).unwrap();
    let labels: Vec<NliLabel> = pairs.iter().map(|p| p.label).collect();
    use NliLabel::*;
    assert_eq!(labels, [Entailment, Neutral, Contradiction, Contradiction, Neutral, Neutral]);
    assert_eq!(pairs[0].premise, "[Lois Lane] The character's name was taken from actress Lola Lane.");
    assert_eq!(pairs[3].premise, "[Game of Thrones] Emilia Clarke plays Daenerys Targaryen.");
    assert_eq!(pairs[0].hypothesis, "Lois Lane's name was taken from Lola Lane's name.");
}

#[test]
fn fever_unknown_claim() {
    let dir = tempfile::tempdir().unwrap();
    let retrieved = dir.path().join("r.jsonl");
    std::fs::write(&retrieved, "{\"claim_id\": 101, \"page\": \"P\", \"sentence_index\": 0, \"text\": \"t\"}\n{\"claim_id\": 999, \"page\": \"P\", \"sentence_index\": 0, \"text\": \"t\"}\n").unwrap();
    let err = read_fever(data("fever_claims.jsonl"), &retrieved).unwrap_err();
    assert!(matches!(err, syntax_distract::io::DatasetError::UnknownClaimId { claim_id: 999, line: 2, .. }), "{err}");
}

#[test]
fn writer_round_trip_and_determinism() {
    let pairs = syntax_distract::io::read_annotated(data("snli_annotated.jsonl")).unwrap();
    let examples: Vec<_> = pairs.iter().filter_map(|p| to_passive(p).ok()).collect();
    assert_eq!(examples.len(), 6);
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    assert_eq!(write_examples_to(&examples, &a).unwrap(), 6);
    write_examples_to(&examples, &b).unwrap();
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    assert_eq!(bytes.iter().filter(|&&c| c == b'\n').count(), 6);
    assert_eq!(read_examples(&a).unwrap(), examples);

    let mut buf = Vec::new();
    assert_eq!(write_examples(&examples[..3], &mut buf).unwrap(), 3);

    let bday = birthday_for(&fixture("fever_annotated.jsonl", "daenerys"), &BirthdayConfig::default()).unwrap();
    write_examples_to([&bday], &a).unwrap();
    assert_eq!(read_examples(&a).unwrap(), vec![bday]);
}
