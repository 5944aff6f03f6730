#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use syntax_distract::annotation::{DepHead, EntityAnno, SrlFrame, TokenAnno};
use syntax_distract::io::read_annotated;
use syntax_distract::{AnnotatedPair, NliLabel, SentenceAnno, Span};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn fixture(file: &str, id: &str) -> AnnotatedPair {
    read_annotated(data(file))
        .unwrap()
        .into_iter()
        .find(|p| p.id == id)
        .unwrap_or_else(|| panic!("no fixture {id} in {file}"))
}

/// Active inflections: (lemma, 3sg present, plain present, past, gerund, past participle).
pub const VERBS: &[(&str, &str, &str, &str, &str, &str)] = &[
    ("use", "uses", "use", "used", "using", "used"),
    ("take", "takes", "take", "took", "taking", "taken"),
    ("kick", "kicks", "kick", "kicked", "kicking", "kicked"),
    ("carry", "carries", "carry", "carried", "carrying", "carried"),
    ("hold", "holds", "hold", "held", "holding", "held"),
    ("wear", "wears", "wear", "wore", "wearing", "worn"),
    ("eat", "eats", "eat", "ate", "eating", "eaten"),
    ("push", "pushes", "push", "pushed", "pushing", "pushed"),
    ("paint", "paints", "paint", "painted", "painting", "painted"),
    ("watch", "watches", "watch", "watched", "watching", "watched"),
    ("build", "builds", "build", "built", "building", "built"),
    ("drive", "drives", "drive", "drove", "driving", "driven"),
    ("stop", "stops", "stop", "stopped", "stopping", "stopped"),
    ("throw", "throws", "throw", "threw", "throwing", "thrown"),
    ("see", "sees", "see", "saw", "seeing", "seen"),
];

/// Noun phrases: tokens as (text, POS, lemma); the last token is the head.
pub const NPS: &[&[(&str, &str, &str)]] = &[
    &[("a", "DT", "a"), ("woman", "NN", "woman")],
    &[("a", "DT", "a"), ("large", "JJ", "large"), ("umbrella", "NN", "umbrella")],
    &[("the", "DT", "the"), ("boy", "NN", "boy")],
    &[("the", "DT", "the"), ("red", "JJ", "red"), ("ball", "NN", "ball")],
    &[("two", "CD", "two"), ("dogs", "NNS", "dog")],
    &[("some", "DT", "some"), ("old", "JJ", "old"), ("men", "NNS", "man")],
    &[("children", "NNS", "child")],
    &[("John", "NNP", "john")],
    &[("Mary", "NNP", "mary"), ("Smith", "NNP", "smith")],
    &[("the", "DT", "the"), ("Beatles", "NNPS", "beatles")],
    &[("a", "DT", "a"), ("small", "JJ", "small"), ("brown", "JJ", "brown"), ("cat", "NN", "cat")],
    &[("several", "JJ", "several"), ("tall", "JJ", "tall"), ("trees", "NNS", "tree")],
];

pub const PREFIXES: &[&[(&str, &str, &str, &str)]] = &[
    &[],
    &[("Today", "NN", "today", "npadvmod"), (",", ",", ",", "punct")],
    &[("Outside", "RB", "outside", "advmod")],
];

pub const SUFFIXES: &[&[(&str, &str, &str)]] = &[
    &[],
    &[(".", ".", ".")],
    &[("in", "IN", "in"), ("the", "DT", "the"), ("park", "NN", "park")],
    &[("at", "IN", "at"), ("night", "NN", "night"), (".", ".", ".")],
];

/// The seven supported active shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    PresentSimple,
    PastSimple,
    PresentProgressive,
    PastProgressive,
    PresentPerfect,
    PastPerfect,
    Modal,
}

pub const SHAPES: [Shape; 7] = [
    Shape::PresentSimple,
    Shape::PastSimple,
    Shape::PresentProgressive,
    Shape::PastProgressive,
    Shape::PresentPerfect,
    Shape::PastPerfect,
    Shape::Modal,
];

fn np_plural(np: &[(&str, &str, &str)]) -> bool {
    matches!(np.last().unwrap().1, "NNS" | "NNPS")
}

/// Active verb group tokens (text, POS, lemma) with the root verb last.
fn active_group(shape: Shape, verb: usize, plural: bool) -> Vec<(&'static str, &'static str, &'static str)> {
    let (lemma, s3, plain, past, ger, pp) = VERBS[verb];
    match shape {
        Shape::PresentSimple if plural => vec![(plain, "VBP", lemma)],
        Shape::PresentSimple => vec![(s3, "VBZ", lemma)],
        Shape::PastSimple => vec![(past, "VBD", lemma)],
        Shape::PresentProgressive if plural => vec![("are", "VBP", "be"), (ger, "VBG", lemma)],
        Shape::PresentProgressive => vec![("is", "VBZ", "be"), (ger, "VBG", lemma)],
        Shape::PastProgressive if plural => vec![("were", "VBD", "be"), (ger, "VBG", lemma)],
        Shape::PastProgressive => vec![("was", "VBD", "be"), (ger, "VBG", lemma)],
        Shape::PresentPerfect if plural => vec![("have", "VBP", "have"), (pp, "VBN", lemma)],
        Shape::PresentPerfect => vec![("has", "VBZ", "have"), (pp, "VBN", lemma)],
        Shape::PastPerfect => vec![("had", "VBD", "have"), (pp, "VBN", lemma)],
        Shape::Modal => vec![("will", "MD", "will"), (plain, "VB", lemma)],
    }
}

/// Components of a generated active sentence.
#[derive(Debug, Clone, Copy)]
pub struct ActiveSpec {
    pub prefix: usize,
    pub subject: usize,
    pub shape: Shape,
    pub verb: usize,
    pub object: usize,
    pub suffix: usize,
}

impl ActiveSpec {
    pub fn swapped(self) -> ActiveSpec {
        ActiveSpec { subject: self.object, object: self.subject, ..self }
    }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

/// Builds an annotated active hypothesis `prefix SUBJ VERB-GROUP OBJ suffix`
/// with a root frame ARG0 = subject, ARG1 = object.
pub fn build_active(spec: ActiveSpec) -> (SentenceAnno, Span, Span) {
    let subj = NPS[spec.subject];
    let obj = NPS[spec.object];
    let group = active_group(spec.shape, spec.verb, np_plural(subj));

    let prefix = PREFIXES[spec.prefix];
    let subj_start = prefix.len();
    let group_start = subj_start + subj.len();
    let root = group_start + group.len() - 1;
    let obj_start = root + 1;
    let suffix_start = obj_start + obj.len();

    let mut toks: Vec<TokenAnno> = Vec::new();
    let tok = |text: &str, pos: &str, lemma: &str, head: Option<usize>, label: &str| TokenAnno {
        text: text.to_string(),
        pos: pos.to_string(),
        lemma: lemma.to_string(),
        dep_head: head.map_or(DepHead::Root, DepHead::Token),
        dep_label: label.to_string(),
    };
    for (t, p, l, lab) in prefix {
        toks.push(tok(t, p, l, Some(root), lab));
    }
    let np = |toks: &mut Vec<TokenAnno>, np: &[(&str, &str, &str)], start: usize, role: &str| {
        let head = start + np.len() - 1;
        for (i, (t, p, l)) in np.iter().enumerate() {
            if start + i == head {
                toks.push(tok(t, p, l, Some(root), role));
            } else {
                let label = if *p == "DT" { "det" } else if *p == "CD" { "nummod" } else { "amod" };
                let label = if p.starts_with("NNP") { "compound" } else { label };
                toks.push(tok(t, p, l, Some(head), label));
            }
        }
    };
    np(&mut toks, subj, subj_start, "nsubj");
    for (i, (t, p, l)) in group.iter().enumerate() {
        if group_start + i == root {
            toks.push(tok(t, p, l, None, "ROOT"));
        } else {
            toks.push(tok(t, p, l, Some(root), "aux"));
        }
    }
    np(&mut toks, obj, obj_start, "dobj");
    let suffix = SUFFIXES[spec.suffix];
    let mut prep = None;
    for (i, (t, p, l)) in suffix.iter().enumerate() {
        let idx = suffix_start + i;
        let (head, label) = match *p {
            "." => (root, "punct"),
            "IN" => {
                prep = Some(idx);
                (root, "prep")
            }
            "DT" => (idx + 1, "det"),
            _ => (prep.unwrap(), "pobj"),
        };
        toks.push(tok(t, p, l, Some(head), label));
    }
    if !toks[0].pos.starts_with("NNP") {
        toks[0].text = capitalize(&toks[0].text);
    }
    let arg0 = Span::new(subj_start, group_start);
    let arg1 = Span::new(obj_start, suffix_start);
    let mut args: BTreeMap<String, Span> = [("ARG0".to_string(), arg0), ("ARG1".to_string(), arg1)].into();
    if spec.suffix >= 2 {
        let end = suffix_start + suffix.iter().filter(|t| t.1 != ".").count();
        args.insert("ARGM-LOC".to_string(), Span::new(suffix_start, end));
    }
    let frame = SrlFrame { predicate: root, args };
    (SentenceAnno::new(toks, vec![frame], Vec::<EntityAnno>::new()).unwrap(), arg0, arg1)
}

pub fn premise_stub() -> SentenceAnno {
    SentenceAnno::new(
        vec![TokenAnno {
            text: "Something".into(),
            pos: "NN".into(),
            lemma: "something".into(),
            dep_head: DepHead::Root,
            dep_label: "ROOT".into(),
        }],
        vec![],
        vec![],
    )
    .unwrap()
}

pub fn active_pair(spec: ActiveSpec, label: NliLabel) -> AnnotatedPair {
    AnnotatedPair {
        id: format!("{spec:?}"),
        label,
        source: "generated".into(),
        page_title: None,
        premise: premise_stub(),
        hypothesis: build_active(spec).0,
    }
}

const FIRST: &[&str] = &["Anna", "Bruno", "Chloe", "Dmitri", "Elena", "Farid", "Grace", "Hiro", "Ines", "Jonas", "Keiko", "Luca"];
const LAST: &[&str] = &["Alvarez", "Berg", "Costa", "Dubois", "Eriksen", "Fischer", "Garcia", "Haas", "Ito", "Jensen"];

/// A FEVER-style premise: `[ A B ] A B worked with C D on the film E F .`
/// with PERSON entities on every name.
pub fn birthday_pair(i: usize) -> AnnotatedPair {
    let a = (FIRST[i % FIRST.len()], LAST[(i / FIRST.len()) % LAST.len()]);
    let c = (FIRST[(i + 5) % FIRST.len()], LAST[(i + 3) % LAST.len()]);
    let spec: Vec<(&str, &str, &str, i64, &str)> = vec![
        ("[", "-LRB-", "[", 2, "punct"),
        (a.0, "NNP", "x", 2, "compound"),
        (a.1, "NNP", "x", 6, "dep"),
        ("]", "-RRB-", "]", 2, "punct"),
        (a.0, "NNP", "x", 5, "compound"),
        (a.1, "NNP", "x", 6, "nsubj"),
        ("worked", "VBD", "work", -1, "ROOT"),
        ("with", "IN", "with", 6, "prep"),
        (c.0, "NNP", "x", 9, "compound"),
        (c.1, "NNP", "x", 7, "pobj"),
        (".", ".", ".", 6, "punct"),
    ];
    let toks = spec
        .into_iter()
        .map(|(t, p, l, h, lab)| TokenAnno {
            text: t.into(),
            pos: p.into(),
            lemma: if l == "x" { t.to_lowercase() } else { l.into() },
            dep_head: if h < 0 { DepHead::Root } else { DepHead::Token(h as usize) },
            dep_label: lab.into(),
        })
        .collect();
    let persons = [(1, 3), (4, 6), (8, 10)];
    let ents = persons.iter().map(|&(s, e)| EntityAnno { span: Span::new(s, e), kind: "PERSON".into() }).collect();
    let premise = SentenceAnno::new(toks, vec![], ents).unwrap();
    AnnotatedPair {
        id: format!("bday-{i:05}"),
        label: NliLabel::Neutral,
        source: "fever".into(),
        page_title: Some(format!("{}_{}", a.0, a.1)),
        premise,
        hypothesis: premise_stub(),
    }
}
