//! Register features computed by token-window pattern rules.
//!
//! Every feature is a raw count divided by the document's token count, except
//! `type_token` and `mean_word_length`, which are computed directly.

pub mod lexicon;
pub mod pattern;
pub mod rules;

use std::collections::{BTreeSet, HashSet};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::annotate::TaggedDoc;
pub use lexicon::{Lexicons, WordList};
pub use pattern::{Pattern, PatternError, Sentence};
pub use rules::{audit, rule_table_audit, AuditReport, FeatureRule, Measure, RuleTable};

pub const FEATURE_COUNT: usize = 67;

/// Feature names in canonical order.
pub const FEATURE_NAMES: [&str; FEATURE_COUNT] = [
    "past_tense",
    "perfect_aspect",
    "present_tense",
    "place_adverbials",
    "time_adverbials",
    "first_person_pronouns",
    "second_person_pronouns",
    "third_person_pronouns",
    "pronoun_it",
    "demonstrative_pronoun",
    "indefinite_pronoun",
    "proverb_do",
    "wh_question",
    "nominalization",
    "gerunds",
    "other_nouns",
    "agentless_passives",
    "by_passives",
    "be_main_verb",
    "existential_there",
    "that_verb_comp",
    "that_adj_comp",
    "wh_clause",
    "infinitives",
    "present_participle",
    "past_participle",
    "past_participle_whiz",
    "present_participle_whiz",
    "that_subj",
    "that_obj",
    "wh_subj",
    "wh_obj",
    "pied_piping",
    "sentence_relatives",
    "because",
    "though",
    "if",
    "other_adv_sub",
    "prepositions",
    "adj_attr",
    "adj_pred",
    "adverbs",
    "type_token",
    "mean_word_length",
    "conjuncts",
    "downtoners",
    "hedges",
    "amplifiers",
    "emphatics",
    "discourse_particles",
    "demonstratives",
    "modal_possibility",
    "modal_necessity",
    "modal_predictive",
    "verb_public",
    "verb_private",
    "verb_suasive",
    "verb_seem",
    "contractions",
    "that_deletion",
    "stranded_preposition",
    "split_infinitive",
    "split_auxiliary",
    "phrasal_coordination",
    "clausal_coordination",
    "neg_synthetic",
    "neg_analytic",
];

#[derive(Debug, Error)]
pub enum BiberError {
    #[error("document `{0}` has no tokens")]
    EmptyDoc(String),
    #[error("unknown feature `{name}`; valid names: {}", FEATURE_NAMES.join(", "))]
    UnknownFeature { name: String },
    #[error("rule file line {line}: {message}")]
    RuleSyntax { line: usize, message: String },
}

pub fn feature_index(name: &str) -> Option<usize> {
    FEATURE_NAMES.iter().position(|n| *n == name)
}

/// One value per feature, in [`FEATURE_NAMES`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct BiberProfile {
    values: [f64; FEATURE_COUNT],
}

impl BiberProfile {
    pub fn get(&self, name: &str) -> Option<f64> {
        feature_index(name).map(|i| self.values[i])
    }

    pub fn values(&self) -> &[f64; FEATURE_COUNT] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, f64)> + '_ {
        FEATURE_NAMES
            .iter()
            .copied()
            .zip(self.values.iter().copied())
    }
}

impl Serialize for BiberProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(FEATURE_COUNT))?;
        for (name, value) in self.iter() {
            map.serialize_entry(name, &value)?;
        }
        map.end()
    }
}

fn has_xpos(doc: &TaggedDoc) -> bool {
    doc.tokens().all(|t| t.xpos.is_some())
}

fn measure_numerator(doc: &TaggedDoc, measure: Measure) -> usize {
    match measure {
        Measure::TypeToken => doc
            .tokens()
            .map(|t| t.lower.as_str())
            .collect::<HashSet<_>>()
            .len(),
        Measure::MeanWordLength => doc
            .tokens()
            .filter(|t| !t.is_punct())
            .map(|t| t.form.chars().count())
            .sum(),
    }
}

fn measure_value(doc: &TaggedDoc, measure: Measure) -> f64 {
    let num = measure_numerator(doc, measure) as f64;
    let den = match measure {
        Measure::TypeToken => doc.token_count(),
        Measure::MeanWordLength => doc.tokens().filter(|t| !t.is_punct()).count(),
    };
    if den == 0 {
        0.0
    } else {
        num / den as f64
    }
}

fn rule_count(rule: &FeatureRule, sentences: &[Sentence<'_>], xpos: bool, lex: &Lexicons) -> usize {
    let patterns = rule.patterns(xpos);
    let mut anchors = BTreeSet::new();
    let mut total = 0;
    for s in sentences {
        anchors.clear();
        for p in patterns {
            p.collect_anchors(s, lex, &mut anchors);
        }
        total += anchors.len();
    }
    total
}

/// Per-token rates for every feature, using the given rule table.
pub fn profile_with(
    doc: &TaggedDoc,
    table: &RuleTable,
    lex: &Lexicons,
) -> Result<BiberProfile, BiberError> {
    let n = doc.token_count();
    if n == 0 {
        return Err(BiberError::EmptyDoc(doc.instance_id.clone()));
    }
    let xpos = has_xpos(doc);
    let sentences: Vec<Sentence<'_>> = doc.sentences.iter().map(|s| Sentence::new(s)).collect();
    let mut values = [0.0; FEATURE_COUNT];
    for rule in table.rules() {
        let Some(i) = feature_index(&rule.name) else {
            continue;
        };
        values[i] = match rule.measure {
            Some(m) => measure_value(doc, m),
            None => rule_count(rule, &sentences, xpos, lex) as f64 / n as f64,
        };
    }
    Ok(BiberProfile { values })
}

pub fn biber_profile(doc: &TaggedDoc) -> Result<BiberProfile, BiberError> {
    profile_with(doc, RuleTable::bundled(), Lexicons::bundled())
}

/// Raw count behind one feature. For the two measures this is the numerator:
/// distinct lowered forms, or total characters over non-punctuation tokens.
pub fn match_feature(doc: &TaggedDoc, feature: &str) -> Result<usize, BiberError> {
    let unknown = || BiberError::UnknownFeature {
        name: feature.to_string(),
    };
    feature_index(feature).ok_or_else(unknown)?;
    let rule = RuleTable::bundled().get(feature).ok_or_else(unknown)?;
    if let Some(m) = rule.measure {
        return Ok(measure_numerator(doc, m));
    }
    let sentences: Vec<Sentence<'_>> = doc.sentences.iter().map(|s| Sentence::new(s)).collect();
    Ok(rule_count(
        rule,
        &sentences,
        has_xpos(doc),
        Lexicons::bundled(),
    ))
}
