//! Dataset readers and the generated-example writer.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::annotation::{parse_annotated_pair, AnnotatedPair, AnnotationError, NliLabel};
use crate::example::{GeneratedExample, SkipReason, Transform};
use crate::person::{label_fever_pair, prefix_title, ClaimLabel, FeverClaimRecord, RetrievedEvidence};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    MalformedRecord { path: PathBuf, line: usize, msg: String },
    #[error("{path}:{line}: retrieved evidence references unknown claim {claim_id}")]
    UnknownClaimId { path: PathBuf, line: usize, claim_id: u64 },
}

impl DatasetError {
    fn io(path: &Path, source: std::io::Error) -> DatasetError {
        DatasetError::Io { path: path.to_path_buf(), source }
    }

    fn malformed(path: &Path, line: usize, msg: impl ToString) -> DatasetError {
        DatasetError::MalformedRecord { path: path.to_path_buf(), line, msg: msg.to_string() }
    }

    /// 1-based line of the offending record, when there is one.
    pub fn line(&self) -> Option<usize> {
        match self {
            DatasetError::Io { .. } => None,
            DatasetError::MalformedRecord { line, .. } | DatasetError::UnknownClaimId { line, .. } => Some(*line),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitTag {
    Train,
    Validation,
    Test,
}

impl std::str::FromStr for SplitTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "train" => Ok(SplitTag::Train),
            "validation" | "dev" => Ok(SplitTag::Validation),
            "test" => Ok(SplitTag::Test),
            _ => Err(format!("unknown split `{s}`")),
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>, DatasetError> {
    File::open(path).map(BufReader::new).map_err(|e| DatasetError::io(path, e))
}

/// Non-blank lines with their 1-based line numbers.
fn numbered_lines(path: &Path) -> Result<impl Iterator<Item = Result<(usize, String), DatasetError>>, DatasetError> {
    let reader = open(path)?;
    let path = path.to_path_buf();
    Ok(reader.lines().enumerate().filter_map(move |(i, line)| match line {
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => Some(Ok((i + 1, l))),
        Err(e) => Some(Err(DatasetError::io(&path, e))),
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnliRecord {
    pub id: String,
    pub premise: String,
    pub hypothesis: String,
    pub label: NliLabel,
}

#[derive(Deserialize)]
struct RawSnli {
    sentence1: String,
    sentence2: String,
    gold_label: String,
    #[serde(rename = "pairID")]
    pair_id: Option<String>,
}

/// Streaming SNLI reader. Records without annotator consensus (`gold_label`
/// of `-`) are skipped and counted.
pub struct SnliReader {
    path: PathBuf,
    lines: Box<dyn Iterator<Item = Result<(usize, String), DatasetError>>>,
    pub skipped_no_consensus: usize,
}

impl Iterator for SnliReader {
    type Item = Result<SnliRecord, DatasetError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let (n, line) = match self.lines.next()? {
                Ok(x) => x,
                Err(e) => return Some(Err(e)),
            };
            let raw: RawSnli = match serde_json::from_str(&line) {
                Ok(r) => r,
                Err(e) => return Some(Err(DatasetError::malformed(&self.path, n, e))),
            };
            if raw.gold_label == "-" {
                self.skipped_no_consensus += 1;
                continue;
            }
            let label = match raw.gold_label.parse() {
                Ok(l) => l,
                Err(e) => return Some(Err(DatasetError::malformed(&self.path, n, e))),
            };
            return Some(Ok(SnliRecord {
                id: raw.pair_id.unwrap_or_else(|| format!("line-{n}")),
                premise: raw.sentence1,
                hypothesis: raw.sentence2,
                label,
            }));
        }
    }
}

pub fn read_snli(path: impl AsRef<Path>) -> Result<SnliReader, DatasetError> {
    let path = path.as_ref();
    Ok(SnliReader { path: path.to_path_buf(), lines: Box::new(numbered_lines(path)?), skipped_no_consensus: 0 })
}

/// Collects `(page, sentence)` locations from FEVER's nested evidence arrays.
/// Each annotation is `[annotation_id, evidence_id, page, sentence]`; NEI
/// annotations carry nulls there and contribute nothing.
fn collect_evidence(value: &Value, out: &mut BTreeSet<(String, usize)>) {
    if let Value::Array(items) = value {
        if let [_, _, Value::String(page), Value::Number(idx)] = items.as_slice() {
            if let Some(idx) = idx.as_u64() {
                out.insert((page.clone(), idx as usize));
            }
            return;
        }
        for item in items {
            collect_evidence(item, out);
        }
    }
}

#[derive(Deserialize)]
struct RawClaim {
    id: u64,
    claim: String,
    label: ClaimLabel,
    #[serde(default)]
    evidence: Value,
}

pub fn read_fever_claims(path: impl AsRef<Path>) -> Result<Vec<FeverClaimRecord>, DatasetError> {
    let path = path.as_ref();
    let mut out = Vec::new();
    for item in numbered_lines(path)? {
        let (n, line) = item?;
        let raw: RawClaim = serde_json::from_str(&line).map_err(|e| DatasetError::malformed(path, n, e))?;
        let mut gold_evidence = BTreeSet::new();
        collect_evidence(&raw.evidence, &mut gold_evidence);
        let record = FeverClaimRecord { claim_id: raw.id, claim_text: raw.claim, claim_label: raw.label, gold_evidence };
        record.validate().map_err(|e| DatasetError::malformed(path, n, e))?;
        out.push(record);
    }
    Ok(out)
}

pub fn read_retrieved(path: impl AsRef<Path>) -> Result<Vec<(usize, RetrievedEvidence)>, DatasetError> {
    let path = path.as_ref();
    numbered_lines(path)?
        .map(|item| {
            let (n, line) = item?;
            serde_json::from_str(&line).map(|r| (n, r)).map_err(|e| DatasetError::malformed(path, n, e))
        })
        .collect()
}

/// A labeled evidence/claim pair with its page-title-prefixed premise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeverPair {
    pub id: String,
    pub claim_id: u64,
    pub page_title: String,
    pub sentence_index: usize,
    pub premise: String,
    pub hypothesis: String,
    pub label: NliLabel,
}

impl FeverPair {
    pub fn to_example(&self) -> GeneratedExample {
        GeneratedExample {
            premise_text: self.premise.clone(),
            hypothesis_text: self.hypothesis.clone(),
            label: self.label,
            transform: Transform::Original,
            source_id: self.id.clone(),
            meta: None,
        }
    }
}

/// Joins retrieved evidence to claims, labeling and title-prefixing each pair.
/// Pairs come out in retrieved-file order.
pub fn read_fever(claims_path: impl AsRef<Path>, retrieved_path: impl AsRef<Path>) -> Result<Vec<FeverPair>, DatasetError> {
    let claims: HashMap<u64, FeverClaimRecord> =
        read_fever_claims(claims_path)?.into_iter().map(|c| (c.claim_id, c)).collect();
    let retrieved_path = retrieved_path.as_ref();
    read_retrieved(retrieved_path)?
        .into_iter()
        .map(|(n, ev)| {
            let claim = claims.get(&ev.claim_id).ok_or_else(|| DatasetError::UnknownClaimId {
                path: retrieved_path.to_path_buf(),
                line: n,
                claim_id: ev.claim_id,
            })?;
            let gold = claim.is_gold(&ev.page_title, ev.sentence_index);
            Ok(FeverPair {
                id: format!("{}:{}:{}", ev.claim_id, ev.page_title, ev.sentence_index),
                claim_id: ev.claim_id,
                premise: prefix_title(&ev.page_title, &ev.sentence_text),
                hypothesis: claim.claim_text.clone(),
                label: label_fever_pair(claim.claim_label, gold),
                page_title: ev.page_title,
                sentence_index: ev.sentence_index,
            })
        })
        .collect()
}

/// Reads annotated pairs, failing on the first bad record.
pub fn read_annotated(path: impl AsRef<Path>) -> Result<Vec<AnnotatedPair>, DatasetError> {
    let path = path.as_ref();
    numbered_lines(path)?
        .map(|item| {
            let (n, line) = item?;
            parse_annotated_pair(&line).map_err(|e: AnnotationError| DatasetError::malformed(path, n, e))
        })
        .collect()
}

/// Writes one JSON line per example in iteration order; returns the count.
pub fn write_examples<'a, W, I>(examples: I, mut out: W) -> std::io::Result<usize>
where
    W: Write,
    I: IntoIterator<Item = &'a GeneratedExample>,
{
    let mut n = 0;
    for ex in examples {
        serde_json::to_writer(&mut out, ex)?;
        out.write_all(b"\n")?;
        n += 1;
    }
    out.flush()?;
    Ok(n)
}

pub fn write_examples_to<'a, I>(examples: I, path: impl AsRef<Path>) -> Result<usize, DatasetError>
where
    I: IntoIterator<Item = &'a GeneratedExample>,
{
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| DatasetError::io(path, e))?;
    write_examples(examples, BufWriter::new(file)).map_err(|e| DatasetError::io(path, e))
}

pub fn read_examples(path: impl AsRef<Path>) -> Result<Vec<GeneratedExample>, DatasetError> {
    let path = path.as_ref();
    numbered_lines(path)?
        .map(|item| {
            let (n, line) = item?;
            serde_json::from_str(&line).map_err(|e| DatasetError::malformed(path, n, e))
        })
        .collect()
}

/// Yield bookkeeping for one transform.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformStats {
    pub inputs: u64,
    pub outputs: u64,
    pub skipped: BTreeMap<String, u64>,
}

impl TransformStats {
    pub fn record(&mut self, outcome: Result<(), SkipReason>) {
        self.inputs += 1;
        match outcome {
            Ok(()) => self.outputs += 1,
            Err(reason) => *self.skipped.entry(reason.as_str().to_string()).or_default() += 1,
        }
    }

    pub fn skipped_total(&self) -> u64 {
        self.skipped.values().sum()
    }
}

/// Stats sidecar contents, keyed by transform name.
pub type RunStats = BTreeMap<String, TransformStats>;

/// Sidecar location for an output file: `<output>.stats.json`.
pub fn stats_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_os_string();
    s.push(".stats.json");
    PathBuf::from(s)
}

pub fn write_stats(stats: &RunStats, path: impl AsRef<Path>) -> Result<(), DatasetError> {
    let path = path.as_ref();
    let mut body = serde_json::to_string_pretty(stats).expect("stats serialize");
    body.push('\n');
    std::fs::write(path, body).map_err(|e| DatasetError::io(path, e))
}
