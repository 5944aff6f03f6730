//! Birthday distraction: synthetic life spans inserted after a person's name,
//! with a templated hypothesis about the birth or death year or month.
//!
//! Randomness comes from ChaCha8 keyed by the run seed, with one stream per
//! source example selected by the FNV-1a 64 hash of its id (see
//! [`example_rng`]). Output therefore does not depend on processing order or
//! worker count.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::annotation::{AnnotatedPair, NliLabel, SentenceAnno, Span};
use crate::example::{detokenize, GeneratedExample, SkipReason, Transform};
use crate::metrics::fnv1a64;

pub const MONTHS: [&str; 12] = [
    "January", "February", "March", "April", "May", "June", "July", "August", "September", "October", "November",
    "December",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid birthday config: {0}")]
pub struct ConfigError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Date {
    pub year: i32,
    pub month: u8,
    pub day: u8,
}

impl Date {
    pub fn new(year: i32, month: u8, day: u8) -> Date {
        Date { year, month, day }
    }

    pub fn month_name(&self) -> &'static str {
        MONTHS[usize::from(self.month) - 1]
    }

    fn field(&self, field: DateField) -> u32 {
        match field {
            DateField::Year => self.year as u32,
            DateField::Month => u32::from(self.month),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DateFormat {
    /// `April 25, 860`
    A,
    /// `25 April 860`
    B,
}

impl DateFormat {
    fn render(self, d: Date) -> String {
        match self {
            DateFormat::A => format!("{} {}, {}", d.month_name(), d.day, d.year),
            DateFormat::B => format!("{} {} {}", d.day, d.month_name(), d.year),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LifeEvent {
    Born,
    Died,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DateField {
    Year,
    Month,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LifeSpan {
    pub birth: Date,
    pub death: Option<Date>,
    pub format: DateFormat,
}

impl LifeSpan {
    pub fn date(&self, event: LifeEvent) -> Option<Date> {
        match event {
            LifeEvent::Born => Some(self.birth),
            LifeEvent::Died => self.death,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirthdayConfig {
    pub seed: u64,
    /// Death years after this are treated as "in the future" and dropped.
    pub reference_year: i32,
    pub birth_years: (i32, i32),
    pub lifespan_years: (i32, i32),
}

impl Default for BirthdayConfig {
    fn default() -> Self {
        BirthdayConfig { seed: 0, reference_year: 2018, birth_years: (800, 2000), lifespan_years: (20, 100) }
    }
}

impl BirthdayConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let (b0, b1) = self.birth_years;
        let (l0, l1) = self.lifespan_years;
        if b0 > b1 {
            return Err(ConfigError(format!("empty birth year range [{b0}, {b1}]")));
        }
        if b0 < 1 {
            return Err(ConfigError(format!("birth years must be positive, got {b0}")));
        }
        if l0 > l1 {
            return Err(ConfigError(format!("empty lifespan range [{l0}, {l1}]")));
        }
        if l0 < 1 || l1 > 110 {
            return Err(ConfigError(format!("lifespan range [{l0}, {l1}] must lie within [1, 110]")));
        }
        if self.reference_year < b0 {
            return Err(ConfigError(format!("reference year {} precedes the earliest birth year {b0}", self.reference_year)));
        }
        Ok(())
    }
}

/// Per-example generator: ChaCha8 seeded with `seed`, stream = FNV-1a 64 of `source_id`.
pub fn example_rng(seed: u64, source_id: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a64(source_id.as_bytes()));
    rng
}

/// Draws a life span. Draw order: birth year, birth month, birth day,
/// lifespan, death month, death day, format.
pub fn sample_lifespan<R: Rng + ?Sized>(rng: &mut R, config: &BirthdayConfig) -> LifeSpan {
    let birth = Date::new(
        rng.gen_range(config.birth_years.0..=config.birth_years.1),
        rng.gen_range(1..=12),
        rng.gen_range(1..=28),
    );
    let years = rng.gen_range(config.lifespan_years.0..=config.lifespan_years.1);
    let death = Date::new(birth.year + years, rng.gen_range(1..=12), rng.gen_range(1..=28));
    let format = if rng.gen_bool(0.5) { DateFormat::A } else { DateFormat::B };
    LifeSpan { birth, death: (death.year <= config.reference_year).then_some(death), format }
}

/// Parenthetical such as `(April 25, 860 -- November 9, 920)` or `(born 5 January 1990)`.
pub fn render_lifespan(span: &LifeSpan) -> String {
    match span.death {
        Some(death) => format!("({} -- {})", span.format.render(span.birth), span.format.render(death)),
        None => format!("(born {})", span.format.render(span.birth)),
    }
}

/// Audit record attached to each birthday example.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LifespanMeta {
    /// The name the dates were inserted after.
    pub entity: String,
    pub birth: Date,
    pub death: Option<Date>,
    pub format: DateFormat,
    pub queried_event: LifeEvent,
    pub queried_field: DateField,
}

fn render_value(field: DateField, value: u32) -> String {
    match field {
        DateField::Year => value.to_string(),
        DateField::Month => MONTHS[value as usize - 1].to_string(),
    }
}

/// `<Name> was born in <value>` / `<Name> died in <value>`.
pub fn birthday_hypothesis(name: &str, event: LifeEvent, field: DateField, value: u32) -> String {
    let verb = match event {
        LifeEvent::Born => "was born in",
        LifeEvent::Died => "died in",
    };
    format!("{name} {verb} {}", render_value(field, value))
}

/// Index of the sentence containing each token, splitting after `.`-tagged tokens.
fn sentence_ids(sentence: &SentenceAnno) -> Vec<usize> {
    let mut id = 0;
    sentence
        .tokens()
        .iter()
        .map(|t| {
            let here = id;
            if t.pos == "." {
                id += 1;
            }
            here
        })
        .collect()
}

fn redraw<R: Rng + ?Sized>(rng: &mut R, field: DateField, truth: u32, config: &BirthdayConfig) -> u32 {
    let (lo, hi) = match field {
        DateField::Year => {
            let lo = config.birth_years.0 as u32;
            (lo, (config.reference_year.max(config.birth_years.1) as u32).max(lo + 1))
        }
        DateField::Month => (1, 12),
    };
    loop {
        let v = rng.gen_range(lo..=hi);
        if v != truth {
            return v;
        }
    }
}

/// Builds a birthday example for a given life span.
///
/// Draw order after the life span: person mention, label, event, field,
/// then either the contradiction mode (and re-drawn value) or the neutral
/// subject.
pub fn birthday_with_lifespan<R: Rng + ?Sized>(
    pair: &AnnotatedPair,
    lifespan: LifeSpan,
    rng: &mut R,
    config: &BirthdayConfig,
) -> Result<GeneratedExample, SkipReason> {
    let premise = &pair.premise;
    let persons: Vec<Span> = premise.entities_of("PERSON").map(|e| e.span).collect();
    if persons.is_empty() {
        return Err(SkipReason::NoPersonEntity);
    }
    let chosen = persons[rng.gen_range(0..persons.len())];
    let name = detokenize(&premise.span_texts(chosen));

    let label = NliLabel::ALL[rng.gen_range(0..3)];
    let event = if lifespan.death.is_some() && rng.gen_bool(0.5) { LifeEvent::Died } else { LifeEvent::Born };
    let field = if rng.gen_bool(0.5) { DateField::Year } else { DateField::Month };
    let truth = lifespan.date(event).expect("queried event has a date").field(field);

    let (subject, value) = match label {
        NliLabel::Entailment => (name.clone(), truth),
        NliLabel::Contradiction => {
            let other = match event {
                LifeEvent::Born => LifeEvent::Died,
                LifeEvent::Died => LifeEvent::Born,
            };
            let reversed = lifespan.date(other).map(|d| d.field(field));
            let value = match (rng.gen_bool(0.5), reversed) {
                (true, Some(v)) if v != truth => v,
                _ => redraw(rng, field, truth, config),
            };
            (name.clone(), value)
        }
        NliLabel::Neutral => {
            let texts = premise.texts();
            let others: Vec<Span> = persons
                .iter()
                .copied()
                .filter(|s| texts[s.range()] != texts[chosen.range()])
                .collect();
            if others.is_empty() {
                return Err(SkipReason::NoNeutralCandidate);
            }
            let sid = sentence_ids(premise);
            let same: Vec<Span> = others.iter().copied().filter(|s| sid[s.start] == sid[chosen.start]).collect();
            let pool = if same.is_empty() { &others } else { &same };
            let pick = pool[rng.gen_range(0..pool.len())];
            (detokenize(&premise.span_texts(pick)), truth)
        }
    };

    let mut tokens: Vec<String> = premise.texts().into_iter().map(str::to_string).collect();
    tokens.insert(chosen.end, render_lifespan(&lifespan));
    Ok(GeneratedExample {
        premise_text: detokenize(&tokens),
        hypothesis_text: birthday_hypothesis(&subject, event, field, value),
        label,
        transform: Transform::Birthday,
        source_id: pair.id.clone(),
        meta: Some(LifespanMeta {
            entity: name,
            birth: lifespan.birth,
            death: lifespan.death,
            format: lifespan.format,
            queried_event: event,
            queried_field: field,
        }),
    })
}

/// Samples a life span from `rng` and builds the example.
pub fn make_birthday_example<R: Rng + ?Sized>(
    pair: &AnnotatedPair,
    rng: &mut R,
    config: &BirthdayConfig,
) -> Result<GeneratedExample, SkipReason> {
    if pair.premise.entities_of("PERSON").next().is_none() {
        return Err(SkipReason::NoPersonEntity);
    }
    let lifespan = sample_lifespan(rng, config);
    birthday_with_lifespan(pair, lifespan, rng, config)
}

/// [`make_birthday_example`] on the example's own stream from [`example_rng`].
pub fn birthday_for(pair: &AnnotatedPair, config: &BirthdayConfig) -> Result<GeneratedExample, SkipReason> {
    let mut rng = example_rng(config.seed, &pair.id);
    make_birthday_example(pair, &mut rng, config)
}

impl fmt::Display for LifeEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LifeEvent::Born => "born",
            LifeEvent::Died => "died",
        })
    }
}
