//! Evaluation utilities: accuracy, Cohen's kappa, inverse-frequency class
//! weights, and hashed out-of-vocabulary embedding buckets.
//!
//! Real-valued results are generic over `num_traits::Float`; the crate root
//! re-exports `f64` aliases.

use std::collections::BTreeMap;

use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::annotation::NliLabel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("no items to score")]
    EmptyInput,
    #[error("class `{0}` has no examples")]
    ZeroClassCount(NliLabel),
    #[error("gold has {gold} labels but predictions have {pred}")]
    LengthMismatch { gold: usize, pred: usize },
}

/// 3×3 counts indexed `[gold][predicted]` in [`NliLabel::ALL`] order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub counts: [[u64; 3]; 3],
}

impl ConfusionCounts {
    pub fn from_labels(gold: &[NliLabel], pred: &[NliLabel]) -> Result<ConfusionCounts, MetricsError> {
        if gold.len() != pred.len() {
            return Err(MetricsError::LengthMismatch { gold: gold.len(), pred: pred.len() });
        }
        let mut conf = ConfusionCounts::default();
        for (g, p) in gold.iter().zip(pred) {
            conf.add(*g, *p);
        }
        Ok(conf)
    }

    pub fn add(&mut self, gold: NliLabel, pred: NliLabel) {
        self.counts[gold.index()][pred.index()] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn diagonal(&self) -> u64 {
        (0..3).map(|i| self.counts[i][i]).sum()
    }

    pub fn gold_marginal(&self, class: usize) -> u64 {
        self.counts[class].iter().sum()
    }

    pub fn pred_marginal(&self, class: usize) -> u64 {
        self.counts.iter().map(|row| row[class]).sum()
    }
}

fn from_u64<F: Float>(x: u64) -> F {
    F::from(x).expect("count fits the float type")
}

pub fn accuracy<F: Float>(conf: &ConfusionCounts) -> Result<F, MetricsError> {
    let total = conf.total();
    if total == 0 {
        return Err(MetricsError::EmptyInput);
    }
    Ok(from_u64::<F>(conf.diagonal()) / from_u64(total))
}

/// Cohen's kappa, `(p_o - p_e) / (1 - p_e)`; zero when chance agreement is total.
pub fn cohen_kappa<F: Float>(conf: &ConfusionCounts) -> Result<F, MetricsError> {
    let total = conf.total();
    if total == 0 {
        return Err(MetricsError::EmptyInput);
    }
    let n: F = from_u64(total);
    let observed = from_u64::<F>(conf.diagonal()) / n;
    let expected = (0..3).fold(F::zero(), |acc, c| {
        acc + (from_u64::<F>(conf.gold_marginal(c)) / n) * (from_u64::<F>(conf.pred_marginal(c)) / n)
    });
    if expected == F::one() {
        return Ok(F::zero());
    }
    Ok((observed - expected) / (F::one() - expected))
}

/// Per-class loss weights, mean 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassWeights<F> {
    pub weights: BTreeMap<NliLabel, F>,
}

impl<F: Float> ClassWeights<F> {
    pub fn get(&self, label: NliLabel) -> F {
        self.weights[&label]
    }
}

/// Weights inversely proportional to class frequency, rescaled to mean 1.
///
/// `counts` may be raw counts or proportions; scaling them by a positive
/// constant does not change the result.
pub fn class_weights<F: Float>(counts: &BTreeMap<NliLabel, F>) -> Result<ClassWeights<F>, MetricsError> {
    for label in NliLabel::ALL {
        match counts.get(&label) {
            Some(c) if *c > F::zero() => {}
            _ => return Err(MetricsError::ZeroClassCount(label)),
        }
    }
    let total = NliLabel::ALL.iter().fold(F::zero(), |acc, l| acc + counts[l]);
    let raw: Vec<F> = NliLabel::ALL.iter().map(|l| total / counts[l]).collect();
    let k = F::from(raw.len()).unwrap();
    let mean = raw.iter().fold(F::zero(), |acc, w| acc + *w) / k;
    Ok(ClassWeights { weights: NliLabel::ALL.iter().zip(raw).map(|(l, w)| (*l, w / mean)).collect() })
}

/// [`class_weights`] from integer counts.
pub fn class_weights_from_counts<F: Float>(counts: &BTreeMap<NliLabel, u64>) -> Result<ClassWeights<F>, MetricsError> {
    let as_float: BTreeMap<NliLabel, F> = counts.iter().map(|(l, c)| (*l, from_u64(*c))).collect();
    class_weights(&as_float)
}

pub const FNV_OFFSET_BASIS: u64 = 0xcbf2_9ce4_8422_2325;
pub const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// 64-bit FNV-1a over raw bytes.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET_BASIS, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

pub const DEFAULT_OOV_BUCKETS: u64 = 10_000;

/// Bucket for an out-of-vocabulary word: FNV-1a 64 of its UTF-8 bytes mod `n_buckets`.
pub fn oov_bucket(word: &str, n_buckets: u64) -> u64 {
    assert!(n_buckets > 0, "n_buckets must be positive");
    fnv1a64(word.as_bytes()) % n_buckets
}

/// Standard-normal vector for `bucket`, drawn from ChaCha8 seeded with `seed`
/// on stream `bucket`.
pub fn oov_vector<F>(bucket: u64, dim: usize, seed: u64) -> Vec<F>
where
    F: Float,
    StandardNormal: Distribution<F>,
{
    assert!(dim > 0, "dim must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(bucket);
    (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect()
}
