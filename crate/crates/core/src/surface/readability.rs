use std::collections::HashSet;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use super::{word_units, SurfaceError};
use crate::annotate::{count_syllables, TaggedDoc};

const EASY_WORDS: &str = include_str!("../../data/readability/easy_words.txt");

static EASY: LazyLock<HashSet<&'static str>> = LazyLock::new(|| {
    EASY_WORDS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect()
});

/// True when `word` (any case) is on the bundled Dale-Chall easy-word list.
pub fn is_easy_word(word: &str) -> bool {
    EASY.contains(word.to_lowercase().as_str())
}

pub const SCORE_NAMES: [&str; 7] = [
    "ari",
    "coleman_liau",
    "dale_chall",
    "flesch_kincaid",
    "flesch_reading_ease",
    "gunning_fog",
    "linsear",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReadabilityScores {
    pub ari: f64,
    pub coleman_liau: f64,
    pub dale_chall: f64,
    pub flesch_kincaid: f64,
    pub flesch_reading_ease: f64,
    pub gunning_fog: f64,
    pub linsear: f64,
}

impl ReadabilityScores {
    /// Scores in [`SCORE_NAMES`] order.
    pub fn values(&self) -> [f64; 7] {
        [
            self.ari,
            self.coleman_liau,
            self.dale_chall,
            self.flesch_kincaid,
            self.flesch_reading_ease,
            self.gunning_fog,
            self.linsear,
        ]
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        SCORE_NAMES
            .iter()
            .position(|n| *n == name)
            .map(|i| self.values()[i])
    }
}

/// Counts the formulas consume.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadabilityCounts {
    pub words: usize,
    pub sentences: usize,
    pub syllables: usize,
    /// Non-whitespace characters, punctuation included.
    pub characters: usize,
    pub letters: usize,
    /// Words not on the easy-word list.
    pub dale_chall_difficult: usize,
    /// Words not on the easy-word list with three or more syllables.
    pub fog_complex: usize,
    /// Words of at most two syllables among the first 100.
    pub linsear_easy: usize,
    /// Words of three or more syllables among the first 100.
    pub linsear_hard: usize,
    /// Sentences spanned by the first 100 words.
    pub linsear_sentences: usize,
}

/// Sentences of one or two words do not count, but every text has at least one.
fn scored_sentences(word_counts: impl Iterator<Item = usize>) -> usize {
    word_counts.filter(|&n| n > 2).count().max(1)
}

fn strip_word(word: &str) -> String {
    word.chars()
        .filter(|c| c.is_alphanumeric() || *c == '\'' || *c == '_')
        .collect()
}

pub fn readability_counts(doc: &TaggedDoc) -> ReadabilityCounts {
    let sentences = word_units(doc);
    let words: Vec<String> = sentences.iter().flatten().map(|w| strip_word(w)).collect();
    let syllables: Vec<usize> = words.iter().map(|w| count_syllables(w)).collect();

    let mut sample_sentences = Vec::new();
    let mut taken = 0;
    for s in &sentences {
        if taken >= 100 {
            break;
        }
        let k = s.len().min(100 - taken);
        if k > 0 {
            sample_sentences.push(k);
        }
        taken += k;
    }
    let sample = if words.len() > 100 {
        &syllables[..100]
    } else {
        &syllables[..]
    };

    ReadabilityCounts {
        words: words.len(),
        sentences: scored_sentences(sentences.iter().map(Vec::len)),
        syllables: syllables.iter().sum(),
        characters: doc
            .tokens()
            .map(|t| t.form.chars().filter(|c| !c.is_whitespace()).count())
            .sum(),
        letters: doc
            .tokens()
            .map(|t| t.form.chars().filter(|c| c.is_alphabetic()).count())
            .sum(),
        dale_chall_difficult: words.iter().filter(|w| !is_easy_word(w)).count(),
        fog_complex: words
            .iter()
            .zip(&syllables)
            .filter(|(w, &s)| s >= 3 && !is_easy_word(w))
            .count(),
        linsear_easy: sample.iter().filter(|&&s| s <= 2).count(),
        linsear_hard: sample.iter().filter(|&&s| s >= 3).count(),
        linsear_sentences: scored_sentences(sample_sentences.into_iter()),
    }
}

/// Applies the seven formulas to precomputed counts.
pub fn scores_from_counts(c: &ReadabilityCounts) -> Result<ReadabilityScores, SurfaceError> {
    if c.words == 0 {
        return Err(SurfaceError::NoWords);
    }
    if c.sentences == 0 {
        return Err(SurfaceError::NoSentences);
    }
    let words = c.words as f64;
    let wps = words / c.sentences as f64;
    let spw = c.syllables as f64 / words;
    let pct_difficult = 100.0 * c.dale_chall_difficult as f64 / words;
    let pct_complex = 100.0 * c.fog_complex as f64 / words;

    let mut dale_chall = 0.1579 * pct_difficult + 0.0496 * wps;
    if pct_difficult > 5.0 {
        dale_chall += 3.6365;
    }
    let linsear = if c.linsear_sentences == 0 {
        0.0
    } else {
        let mut r =
            (c.linsear_easy as f64 + 3.0 * c.linsear_hard as f64) / c.linsear_sentences as f64;
        if r <= 20.0 {
            r -= 2.0;
        }
        r / 2.0
    };
    Ok(ReadabilityScores {
        ari: 4.71 * (c.characters as f64 / words) + 0.5 * wps - 21.43,
        coleman_liau: 0.058 * (100.0 * c.letters as f64 / words)
            - 0.296 * (100.0 * c.sentences as f64 / words)
            - 15.8,
        dale_chall,
        flesch_kincaid: 0.39 * wps + 11.8 * spw - 15.59,
        flesch_reading_ease: 206.835 - 1.015 * wps - 84.6 * spw,
        gunning_fog: 0.4 * (wps + pct_complex),
        linsear,
    })
}

pub fn readability(doc: &TaggedDoc) -> Result<ReadabilityScores, SurfaceError> {
    scores_from_counts(&readability_counts(doc))
}
