//! Tokenization, sentence splitting, syllable estimates and part-of-speech tagging.

mod conllu;
mod sentences;
mod syllables;
mod tagger;
mod tokenize;
mod upos;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use conllu::{check_instance_ids, load_conllu, parse_conllu, write_conllu};
pub use sentences::segment_sentences;
pub use syllables::{count_syllables, estimate_syllables};
pub use tagger::BrillTagger;
pub use tokenize::{abbreviation_kind, token_spans, tokenize, AbbrevKind};
pub use upos::{penn_to_upos, Upos};

#[derive(Debug, Error)]
pub enum AnnotateError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("CoNLL-U line {line}: {message}")]
    Conllu { line: usize, message: String },
    #[error("CoNLL-U document {0:?} has no matching corpus instance")]
    UnknownInstance(String),
    #[error("dependency cycle in sentence {sentence} of {instance_id}")]
    HeadCycle {
        instance_id: String,
        sentence: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Token {
    pub form: String,
    /// Lowercased form with typographic apostrophes folded to `'`.
    pub lower: String,
    pub upos: Upos,
    pub xpos: Option<String>,
    pub lemma: Option<String>,
    /// 1-based index of the governing token within the sentence; 0 is the root.
    pub head: Option<usize>,
    pub deprel: Option<String>,
    pub entity_flag: Option<bool>,
    pub space_after: bool,
}

impl Token {
    /// A token carrying only a form and a universal tag.
    pub fn new(form: &str, upos: Upos) -> Self {
        Token {
            form: form.to_string(),
            lower: fold_lower(form),
            upos,
            xpos: None,
            lemma: None,
            head: None,
            deprel: None,
            entity_flag: None,
            space_after: true,
        }
    }

    pub fn with_xpos(mut self, xpos: &str) -> Self {
        self.xpos = Some(xpos.to_string());
        self
    }

    /// Tagged PUNCT, or made of neither letters nor digits.
    pub fn is_punct(&self) -> bool {
        self.upos == Upos::PUNCT || !self.form.chars().any(char::is_alphanumeric)
    }

    /// A contraction clitic such as `'s` or `n't`.
    pub fn is_clitic(&self) -> bool {
        self.lower == "n't"
            || (self.lower.starts_with('\'') && self.lower.len() > 1 && !self.is_punct())
    }
}

pub fn fold_lower(form: &str) -> String {
    form.to_lowercase().replace('\u{2019}', "'")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    BuiltinTagger,
    Ingested,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedDoc {
    pub instance_id: String,
    pub sentences: Vec<Vec<Token>>,
    pub provenance: Provenance,
}

impl TaggedDoc {
    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flatten()
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.token_count() == 0
    }

    /// True when every token carries a head.
    pub fn has_heads(&self) -> bool {
        !self.is_empty() && self.tokens().all(|t| t.head.is_some())
    }

    /// True when every token carries an entity flag.
    pub fn has_entities(&self) -> bool {
        !self.is_empty() && self.tokens().all(|t| t.entity_flag.is_some())
    }

    /// Original text approximated from forms and spacing.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for t in self.tokens() {
            out.push_str(&t.form);
            if t.space_after {
                out.push(' ');
            }
        }
        out.truncate(out.trim_end().len());
        out
    }
}

/// Tags pre-segmented sentences with the bundled tagger.
pub fn tag<S: AsRef<str>>(instance_id: &str, sentences: &[Vec<S>]) -> TaggedDoc {
    let tagger = BrillTagger::bundled();
    let sentences = sentences
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| {
            let forms: Vec<&str> = s.iter().map(AsRef::as_ref).collect();
            tag_forms(tagger, &forms, &vec![true; forms.len()])
        })
        .collect();
    TaggedDoc {
        instance_id: instance_id.to_string(),
        sentences,
        provenance: Provenance::BuiltinTagger,
    }
}

fn tag_forms(tagger: &BrillTagger, forms: &[&str], space_after: &[bool]) -> Vec<Token> {
    let normalized: Vec<String> = forms.iter().map(|f| f.replace('\u{2019}', "'")).collect();
    let xpos = tagger.tag(&normalized);
    let lower: Vec<String> = forms.iter().map(|f| fold_lower(f)).collect();
    let lower_refs: Vec<&str> = lower.iter().map(String::as_str).collect();
    (0..forms.len())
        .map(|i| Token {
            form: forms[i].to_string(),
            lower: lower[i].clone(),
            upos: penn_to_upos(&lower_refs, &xpos, i),
            xpos: Some(xpos[i].to_string()),
            lemma: None,
            head: None,
            deprel: None,
            entity_flag: None,
            space_after: space_after[i],
        })
        .collect()
}

/// Tokenizes, segments and tags raw text with the bundled models.
pub fn annotate_text(instance_id: &str, text: &str) -> TaggedDoc {
    let tagger = BrillTagger::bundled();
    let spans = token_spans(text);
    let sentences = segment_sentences(text, &spans)
        .into_iter()
        .map(|r| {
            let forms: Vec<&str> = spans[r.clone()].iter().map(|s| &text[s.clone()]).collect();
            let space: Vec<bool> = (r.start..r.end)
                .map(|i| {
                    spans
                        .get(i + 1)
                        .is_none_or(|next| next.start > spans[i].end)
                })
                .collect();
            tag_forms(tagger, &forms, &space)
        })
        .collect();
    TaggedDoc {
        instance_id: instance_id.to_string(),
        sentences,
        provenance: Provenance::BuiltinTagger,
    }
}
