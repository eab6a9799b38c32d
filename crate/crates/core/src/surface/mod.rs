//! Length counts, part-of-speech ratios, style measures and readability.

pub mod concreteness;
pub mod readability;

use std::collections::{HashMap, HashSet};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::annotate::{count_syllables, AnnotateError, TaggedDoc, Upos};
pub use concreteness::{concreteness, ConcretenessLexicon};
pub use readability::{
    is_easy_word, readability, readability_counts, scores_from_counts, ReadabilityCounts,
    ReadabilityScores, SCORE_NAMES,
};

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("text has no words")]
    NoWords,
    #[error("text has no sentences")]
    NoSentences,
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("concreteness lexicon line {line}: {message}")]
    Lexicon { line: usize, message: String },
    #[error(transparent)]
    Annotate(#[from] AnnotateError),
}

/// Words of each sentence. Punctuation tokens are dropped and contraction
/// clitics are rejoined to the word they were split from.
pub fn word_units(doc: &TaggedDoc) -> Vec<Vec<String>> {
    doc.sentences
        .iter()
        .map(|sent| {
            let mut words: Vec<String> = Vec::new();
            let mut prev_attached = false;
            for (i, t) in sent.iter().enumerate() {
                if t.is_punct() {
                    prev_attached = false;
                    continue;
                }
                let joins = t.is_clitic() && i > 0 && prev_attached && !sent[i - 1].space_after;
                match words.last_mut() {
                    Some(last) if joins => last.push_str(&t.form),
                    _ => words.push(t.form.clone()),
                }
                prev_attached = true;
            }
            words
        })
        .collect()
}

pub const LENGTH_NAMES: [&str; 8] = [
    "words",
    "syllables",
    "lexicon",
    "sentences",
    "characters",
    "letters",
    "polysyllables",
    "monosyllables",
];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthProfile {
    pub words: usize,
    pub syllables: usize,
    /// Distinct lowercased words.
    pub lexicon: usize,
    pub sentences: usize,
    /// Non-whitespace characters.
    pub characters: usize,
    /// Alphabetic characters.
    pub letters: usize,
    /// Words of three or more syllables.
    pub polysyllables: usize,
    pub monosyllables: usize,
}

impl LengthProfile {
    pub fn values(&self) -> [usize; 8] {
        [
            self.words,
            self.syllables,
            self.lexicon,
            self.sentences,
            self.characters,
            self.letters,
            self.polysyllables,
            self.monosyllables,
        ]
    }
}

pub fn length_profile(doc: &TaggedDoc) -> LengthProfile {
    let words: Vec<String> = word_units(doc).into_iter().flatten().collect();
    let syllables: Vec<usize> = words.iter().map(|w| count_syllables(w)).collect();
    LengthProfile {
        words: words.len(),
        syllables: syllables.iter().sum(),
        lexicon: words
            .iter()
            .map(|w| w.to_lowercase())
            .collect::<HashSet<_>>()
            .len(),
        sentences: doc.sentences.iter().filter(|s| !s.is_empty()).count(),
        characters: doc
            .tokens()
            .map(|t| t.form.chars().filter(|c| !c.is_whitespace()).count())
            .sum(),
        letters: doc
            .tokens()
            .map(|t| t.form.chars().filter(|c| c.is_alphabetic()).count())
            .sum(),
        polysyllables: syllables.iter().filter(|&&s| s >= 3).count(),
        monosyllables: syllables.iter().filter(|&&s| s == 1).count(),
    }
}

/// The tags given a ratio column; PUNCT, SYM and X are left out.
pub const POS_TAGS: [Upos; 14] = [
    Upos::ADJ,
    Upos::ADP,
    Upos::ADV,
    Upos::AUX,
    Upos::CCONJ,
    Upos::DET,
    Upos::INTJ,
    Upos::NOUN,
    Upos::NUM,
    Upos::PART,
    Upos::PRON,
    Upos::PROPN,
    Upos::SCONJ,
    Upos::VERB,
];

pub const POS_NAMES: [&str; 14] = [
    "adj", "adp", "adv", "aux", "cconj", "det", "intj", "noun", "num", "part", "pron", "propn",
    "sconj", "verb",
];

/// Share of all tokens carrying each of [`POS_TAGS`].
pub fn pos_ratios(doc: &TaggedDoc) -> [f64; 14] {
    let n = doc.token_count();
    let mut counts = [0usize; 14];
    for t in doc.tokens() {
        if let Some(i) = POS_TAGS.iter().position(|u| *u == t.upos) {
            counts[i] += 1;
        }
    }
    if n == 0 {
        return [0.0; 14];
    }
    counts.map(|c| c as f64 / n as f64)
}

fn lowered_counts(doc: &TaggedDoc) -> HashMap<&str, usize> {
    let mut counts = HashMap::new();
    for t in doc.tokens() {
        *counts.entry(t.lower.as_str()).or_insert(0) += 1;
    }
    counts
}

/// Shannon entropy in bits of the lowered-token distribution.
pub fn entropy(doc: &TaggedDoc) -> f64 {
    let n = doc.token_count() as f64;
    let mut counts: Vec<usize> = lowered_counts(doc).into_values().collect();
    counts.sort_unstable();
    let h: f64 = counts
        .into_iter()
        .map(|c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum();
    h.max(0.0)
}

/// Lowered forms occurring exactly once, over all tokens.
pub fn hapax_ratio(doc: &TaggedDoc) -> f64 {
    let n = doc.token_count();
    if n == 0 {
        return 0.0;
    }
    lowered_counts(doc).values().filter(|&&c| c == 1).count() as f64 / n as f64
}

/// Entity-flagged tokens over all tokens; missing without entity annotation.
pub fn ne_ratio(doc: &TaggedDoc) -> Option<f64> {
    if !doc.has_entities() {
        return None;
    }
    let flagged = doc.tokens().filter(|t| t.entity_flag == Some(true)).count();
    Some(flagged as f64 / doc.token_count() as f64)
}

/// Deepest root-to-token path over all sentences, the root being depth 0.
/// Missing when any token lacks a head.
pub fn max_dep_depth(doc: &TaggedDoc) -> Result<Option<usize>, AnnotateError> {
    if !doc.has_heads() {
        return Ok(None);
    }
    let mut deepest = 0;
    for (s, sent) in doc.sentences.iter().enumerate() {
        let n = sent.len();
        let cycle = || AnnotateError::HeadCycle {
            instance_id: doc.instance_id.clone(),
            sentence: s + 1,
        };
        let mut depth: Vec<Option<usize>> = vec![None; n];
        for start in 0..n {
            let mut path = Vec::new();
            let mut cur = start;
            let base = loop {
                if let Some(d) = depth[cur] {
                    break d;
                }
                if path.len() > n {
                    return Err(cycle());
                }
                path.push(cur);
                match sent[cur].head {
                    Some(0) => break usize::MAX,
                    Some(h) if h <= n => cur = h - 1,
                    _ => return Err(cycle()),
                }
            };
            // usize::MAX marks "the last token on the path is a root"
            let start = if base == usize::MAX { 0 } else { base + 1 };
            for (d, &k) in (start..).zip(path.iter().rev()) {
                depth[k] = Some(d);
            }
        }
        deepest = deepest.max(depth.into_iter().flatten().max().unwrap_or(0));
    }
    Ok(Some(deepest))
}

pub const STYLE_NAMES: [&str; 5] = [
    "concreteness",
    "entropy",
    "max_dep_depth",
    "ne_ratio",
    "hapax_ratio",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StyleProfile {
    pub concreteness: Option<f64>,
    pub entropy: f64,
    pub max_dep_depth: Option<usize>,
    pub ne_ratio: Option<f64>,
    pub hapax_ratio: f64,
}

impl StyleProfile {
    pub fn values(&self) -> [Option<f64>; 5] {
        [
            self.concreteness,
            Some(self.entropy),
            self.max_dep_depth.map(|d| d as f64),
            self.ne_ratio,
            Some(self.hapax_ratio),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceProfile {
    pub length: LengthProfile,
    pub pos: [f64; 14],
    pub style: StyleProfile,
}

pub fn surface_profile(
    doc: &TaggedDoc,
    lexicon: &ConcretenessLexicon,
) -> Result<SurfaceProfile, SurfaceError> {
    Ok(SurfaceProfile {
        length: length_profile(doc),
        pos: pos_ratios(doc),
        style: StyleProfile {
            concreteness: concreteness(doc, lexicon),
            entropy: entropy(doc),
            max_dep_depth: max_dep_depth(doc)?,
            ne_ratio: ne_ratio(doc),
            hapax_ratio: hapax_ratio(doc),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::{annotate_text, tag, Provenance, Token};

    fn words(text: &str) -> TaggedDoc {
        tag("s", &[text.split_whitespace().collect::<Vec<_>>()])
    }

    fn with_heads(heads: &[&[usize]]) -> TaggedDoc {
        let sentences = heads
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&h| {
                        let mut t = Token::new("w", Upos::NOUN);
                        t.head = Some(h);
                        t
                    })
                    .collect()
            })
            .collect();
        TaggedDoc {
            instance_id: "h".into(),
            sentences,
            provenance: Provenance::Ingested,
        }
    }

    #[test]
    fn cat_sat() {
        let p = length_profile(&annotate_text("s", "The cat sat."));
        assert_eq!(
            (
                p.words,
                p.sentences,
                p.syllables,
                p.monosyllables,
                p.polysyllables
            ),
            (3, 1, 3, 3, 0)
        );
        assert_eq!(length_profile(&words("a b a")).lexicon, 2);
    }

    #[test]
    fn letters_and_characters() {
        let p = length_profile(&annotate_text("s", "it's ok!"));
        assert_eq!((p.characters, p.letters, p.words), (7, 5, 2));
    }

    #[test]
    fn clitics_rejoin() {
        let doc = annotate_text("s", "I can't go, you're late.");
        assert_eq!(
            word_units(&doc),
            vec![vec!["I", "can't", "go", "you're", "late"]]
        );
    }

    #[test]
    fn pos_counts() {
        let mut doc = words("a b c d e");
        for (i, t) in doc.sentences[0].iter_mut().enumerate() {
            t.upos = if i < 2 { Upos::NOUN } else { Upos::VERB };
        }
        assert_eq!(pos_ratios(&doc)[7], 0.4);
        let punct = annotate_text("s", "?! ... ,");
        assert_eq!(pos_ratios(&punct), [0.0; 14]);
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&words("a a a a")), 0.0);
        assert_eq!(entropy(&words("a b c d")), 2.0);
        assert_eq!(entropy(&words("a a b b")), 1.0);
    }

    #[test]
    fn hapax_examples() {
        assert_eq!(hapax_ratio(&words("a b c")), 1.0);
        assert_eq!(hapax_ratio(&words("a a b")), 1.0 / 3.0);
        assert_eq!(hapax_ratio(&words("a a b b")), 0.0);
    }

    #[test]
    fn entity_ratio() {
        assert_eq!(ne_ratio(&words("a b c d")), None);
        let mut doc = words("a b c d");
        for (i, t) in doc.sentences[0].iter_mut().enumerate() {
            t.entity_flag = Some(i == 0);
        }
        assert_eq!(ne_ratio(&doc), Some(0.25));
        for t in &mut doc.sentences[0] {
            t.entity_flag = Some(true);
        }
        assert_eq!(ne_ratio(&doc), Some(1.0));
    }

    #[test]
    fn dependency_depth() {
        assert_eq!(max_dep_depth(&with_heads(&[&[0]])).unwrap(), Some(0));
        assert_eq!(max_dep_depth(&with_heads(&[&[0, 1, 2]])).unwrap(), Some(2));
        assert_eq!(
            max_dep_depth(&with_heads(&[&[0], &[2, 0, 2, 3]])).unwrap(),
            Some(2)
        );
        assert_eq!(max_dep_depth(&words("a b")).unwrap(), None);
        match max_dep_depth(&with_heads(&[&[0], &[2, 1]])) {
            Err(AnnotateError::HeadCycle { sentence, .. }) => assert_eq!(sentence, 2),
            other => panic!("expected cycle, got {other:?}"),
        }
    }
}
