//! Shared inputs for the benchmarks in `benches/`.

use stylemeter::annotate::{annotate_text, TaggedDoc};
use stylemeter::corpus::Corpus;
use stylemeter::synth::{synthetic_corpus, SyntheticConfig};

pub fn corpus(per_group: usize) -> Corpus {
    synthetic_corpus(&SyntheticConfig {
        seed: 1,
        per_group,
        ..Default::default()
    })
}

pub fn tagged(corpus: &Corpus) -> Vec<TaggedDoc> {
    corpus
        .iter()
        .map(|i| annotate_text(&i.id, &i.text))
        .collect()
}
