//! Adversarial-distraction example generation for natural language inference.
//!
//! Starting from premise/hypothesis pairs with external linguistic
//! annotations (tokens, POS, dependencies, SRL frames, entities), this crate
//! produces syntax-sensitive distractions:
//!
//! - [`passive`]: passive rewrites of the hypothesis root verb (label kept) and
//!   passive reversals that swap agent and patient (entailment → contradiction).
//! - [`person`]: FEVER evidence/claim labeling and person-name reversal.
//! - [`lifespan`]: synthetic birth/death dates after a person's name with a
//!   balanced birth/death hypothesis.
//!
//! [`metrics`] holds the evaluation side (accuracy, Cohen's kappa, class
//! weights, OOV hashing), generic over the float type.

pub mod annotation;
pub mod cli;
pub mod example;
pub mod io;
pub mod lifespan;
pub mod metrics;
pub mod morphology;
pub mod passive;
pub mod person;

pub use annotation::{parse_annotated_pair, serialize_annotated_pair, AnnotatedPair, NliLabel, SentenceAnno, Span};
pub use example::{detokenize, GeneratedExample, SkipReason, Transform};
pub use lifespan::{birthday_for, make_birthday_example, BirthdayConfig, LifeSpan};
pub use metrics::{accuracy, cohen_kappa, oov_bucket, ConfusionCounts};
pub use morphology::{past_participle, GrammaticalNumber, VerbGroupAnalysis};
pub use passive::{to_passive, to_passive_reversal, Passivizer};
pub use person::{label_fever_pair, prefix_title, reverse_persons};

/// Class weights in double precision.
pub type ClassWeights = metrics::ClassWeights<f64>;
/// Class weights in single precision.
pub type ClassWeightsF32 = metrics::ClassWeights<f32>;
/// Scalar used by the CLI reports.
pub type Real = f64;
