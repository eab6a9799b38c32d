//! Seeded synthetic corpora for pipeline tests and benchmarks.
//!
//! Documents are drawn from a fixed pool of everyday sentences. Some sentences
//! carry an adverb slot that holds either an amplifier or a non-amplifier
//! twin. Twins match their amplifier in length, syllables and part of speech,
//! so the amplifier share is the only thing that separates two groups whose
//! shares mirror each other (p and 1 - p).

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Author, Corpus, Instance, Platform, Ses};

/// Amplifiers paired with twins of equal length and syllable count.
pub const AMPLIFIER_TWINS: [(&str, &str); 3] = [
    ("totally", "happily"),
    ("greatly", "quickly"),
    ("highly", "deeply"),
];

const SLOTTED: &[&str] = &[
    "We {} enjoyed the long walk by the river.",
    "She {} liked the new place near her old school.",
    "They {} wanted to finish the work before dinner.",
    "I {} agreed with what my brother said about it.",
    "He {} loved the music they played at the party.",
    "Our neighbors {} helped us when the car broke down.",
];

const PLAIN: &[&str] = &[
    "I went to the store and bought some bread.",
    "My sister works at a small shop downtown.",
    "It was raining when we left the house this morning.",
    "You should call your mother more often.",
    "The kids were playing outside until it got dark.",
    "Did you see the game last night?",
    "He said that he would come back later.",
    "We have been saving money for a new couch.",
    "The letter was written by my grandfather.",
    "If it rains tomorrow, we will stay home.",
    "Honestly, I don't know what to do about my job.",
    "There are three dogs living on our street.",
    "She can't believe how fast the year went by.",
    "They might move to another city next spring.",
    "Because the bus was late, I missed the meeting.",
    "What do you think about the new rules?",
    "The man who lives next door is a teacher.",
    "I think it's going to be a long winter.",
    "Our team won the first match of the season.",
    "You know, it was not as bad as I expected.",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub seed: u64,
    pub per_group: usize,
    pub platform: Platform,
    /// Inclusive range of sentences per document.
    pub sentences: (usize, usize),
    /// Probability that a sentence has an adverb slot.
    pub slot_rate: f64,
    /// Probability that a slot holds an amplifier, for lower and upper SES.
    pub amplifier_share: (f64, f64),
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            per_group: 100,
            platform: Platform::Reddit,
            sentences: (8, 14),
            slot_rate: 0.3,
            amplifier_share: (0.5, 0.5),
        }
    }
}

fn document(rng: &mut ChaCha8Rng, cfg: &SyntheticConfig, share: f64) -> String {
    let n = rng.random_range(cfg.sentences.0..=cfg.sentences.1);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        if rng.random_bool(cfg.slot_rate) {
            let template = SLOTTED.choose(rng).expect("non-empty pool");
            let (amp, twin) = *AMPLIFIER_TWINS.choose(rng).expect("non-empty pool");
            let word = if rng.random_bool(share) { amp } else { twin };
            out.push(template.replacen("{}", word, 1));
        } else {
            out.push(PLAIN.choose(rng).expect("non-empty pool").to_string());
        }
    }
    out.join(" ")
}

/// Human-authored corpus with `per_group` instances per SES group, ids
/// `syn-{ses}-{index}`.
pub fn synthetic_corpus(cfg: &SyntheticConfig) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut instances = Vec::with_capacity(2 * cfg.per_group);
    for (ses, share) in [
        (Ses::Lower, cfg.amplifier_share.0),
        (Ses::Upper, cfg.amplifier_share.1),
    ] {
        for i in 0..cfg.per_group {
            instances.push(Instance {
                id: format!("syn-{ses}-{i:05}"),
                platform: cfg.platform,
                ses,
                author: Author::Human,
                prompt_variant: None,
                text: document(&mut rng, cfg, share),
            });
        }
    }
    Corpus::new(instances)
}
