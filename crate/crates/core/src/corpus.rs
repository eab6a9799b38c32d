//! Corpus loading, validation, length filtering and cue/reference splitting.
//!
//! A corpus is a JSONL file with one instance per line:
//!
//! ```text
//! {"id": "r1", "platform": "reddit", "ses": "lower", "author": "human", "prompt_variant": null, "text": "..."}
//! ```
//!
//! A "word" everywhere in this module is a maximal run of non-whitespace characters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Platform {
    Reddit,
    Youtube,
}

impl Platform {
    pub fn as_str(self) -> &'static str {
        match self {
            Platform::Reddit => "reddit",
            Platform::Youtube => "youtube",
        }
    }
}

impl FromStr for Platform {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reddit" => Ok(Platform::Reddit),
            "youtube" => Ok(Platform::Youtube),
            other => Err(format!(
                "unknown platform {other:?} (expected reddit|youtube)"
            )),
        }
    }
}

impl fmt::Display for Platform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Socioeconomic status stratum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ses {
    Lower,
    Upper,
}

impl Ses {
    pub fn as_str(self) -> &'static str {
        match self {
            Ses::Lower => "lower",
            Ses::Upper => "upper",
        }
    }
}

impl FromStr for Ses {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lower" => Ok(Ses::Lower),
            "upper" => Ok(Ses::Upper),
            other => Err(format!("unknown ses {other:?} (expected lower|upper)")),
        }
    }
}

impl fmt::Display for Ses {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PromptVariant {
    Imp,
    Els,
    ElsSes,
}

impl PromptVariant {
    pub const ALL: [PromptVariant; 3] = [
        PromptVariant::Imp,
        PromptVariant::Els,
        PromptVariant::ElsSes,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PromptVariant::Imp => "imp",
            PromptVariant::Els => "els",
            PromptVariant::ElsSes => "els_ses",
        }
    }
}

impl FromStr for PromptVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "imp" => Ok(PromptVariant::Imp),
            "els" => Ok(PromptVariant::Els),
            "els_ses" => Ok(PromptVariant::ElsSes),
            other => Err(format!(
                "unknown prompt variant {other:?} (expected imp|els|els_ses)"
            )),
        }
    }
}

impl fmt::Display for PromptVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Who wrote an instance: a human, or a model identified by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Author {
    Human,
    Model(String),
}

impl Author {
    pub fn as_str(&self) -> &str {
        match self {
            Author::Human => "human",
            Author::Model(name) => name,
        }
    }

    pub fn is_human(&self) -> bool {
        matches!(self, Author::Human)
    }
}

impl From<&str> for Author {
    fn from(s: &str) -> Self {
        if s == "human" {
            Author::Human
        } else {
            Author::Model(s.to_string())
        }
    }
}

impl fmt::Display for Author {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Author {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Author {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(Author::from(s.as_str()))
    }
}

/// One corpus unit: a Reddit post or a YouTube caption, human- or model-written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub id: String,
    pub platform: Platform,
    pub ses: Ses,
    pub author: Author,
    pub prompt_variant: Option<PromptVariant>,
    pub text: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    pub instances: Vec<Instance>,
}

impl Corpus {
    pub fn new(instances: Vec<Instance>) -> Self {
        Self { instances }
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Instance> {
        self.instances.iter()
    }

    pub fn get(&self, id: &str) -> Option<&Instance> {
        self.instances.iter().find(|i| i.id == id)
    }

    /// Writes the corpus back out in the JSONL interchange format.
    pub fn write_jsonl(&self, path: &Path) -> std::io::Result<()> {
        let mut out = std::io::BufWriter::new(fs::File::create(path)?);
        for inst in &self.instances {
            serde_json::to_writer(&mut out, inst)?;
            out.write_all(b"\n")?;
        }
        out.flush()
    }
}

impl<'a> IntoIterator for &'a Corpus {
    type Item = &'a Instance;
    type IntoIter = std::slice::Iter<'a, Instance>;

    fn into_iter(self) -> Self::IntoIter {
        self.instances.iter()
    }
}

/// A validation problem on one line of a corpus file (1-based line numbers).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            Some(field) => write!(
                f,
                "line {}: field \"{}\": {}",
                self.line, field, self.message
            ),
            None => write!(f, "line {}: {}", self.line, self.message),
        }
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read corpus {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("corpus failed validation with {} error(s):\n{}", .0.len(), join_lines(.0))]
    Validation(Vec<LineError>),
    #[error("instance {id} has {words} words; splitting at {cue_words} needs strictly more")]
    TooShort {
        id: String,
        words: usize,
        cue_words: usize,
    },
    #[error("invalid split configuration: {0}")]
    Config(String),
}

fn join_lines(errors: &[LineError]) -> String {
    errors
        .iter()
        .map(|e| format!("  {e}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Input format for [`load_corpus`]. JSONL is the only supported layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CorpusFormat {
    #[default]
    Jsonl,
}

pub fn load_corpus(path: &Path, format: CorpusFormat) -> Result<Corpus, CorpusError> {
    let content = fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    match format {
        CorpusFormat::Jsonl => parse_corpus_jsonl(&content),
    }
}

/// Parses and validates JSONL corpus content. All line errors are collected before failing.
pub fn parse_corpus_jsonl(content: &str) -> Result<Corpus, CorpusError> {
    let mut instances = Vec::new();
    let mut errors = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();

    for (idx, raw) in content.split('\n').enumerate() {
        let line_no = idx + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if raw.trim().is_empty() {
            continue;
        }
        match parse_instance_line(raw, line_no) {
            Ok(inst) => {
                if let Some(first) = seen.get(&inst.id) {
                    errors.push(LineError {
                        line: line_no,
                        field: Some("id".into()),
                        message: format!("duplicate id {:?} (first seen on line {first})", inst.id),
                    });
                } else {
                    seen.insert(inst.id.clone(), line_no);
                    instances.push(inst);
                }
            }
            Err(mut errs) => errors.append(&mut errs),
        }
    }

    if errors.is_empty() {
        Ok(Corpus { instances })
    } else {
        Err(CorpusError::Validation(errors))
    }
}

fn parse_instance_line(raw: &str, line: usize) -> Result<Instance, Vec<LineError>> {
    let err = |field: Option<&str>, message: String| LineError {
        line,
        field: field.map(str::to_string),
        message,
    };
    let value: Value =
        serde_json::from_str(raw).map_err(|e| vec![err(None, format!("malformed JSON: {e}"))])?;
    let Value::Object(obj) = value else {
        return Err(vec![err(None, "expected a JSON object".into())]);
    };

    let mut errors = Vec::new();
    let mut string_field = |name: &str| -> Option<String> {
        match obj.get(name) {
            None | Some(Value::Null) => {
                errors.push(err(Some(name), "missing required field".into()));
                None
            }
            Some(Value::String(s)) => Some(s.clone()),
            Some(other) => {
                errors.push(err(Some(name), format!("expected a string, got {other}")));
                None
            }
        }
    };
    let id = string_field("id");
    let platform = string_field("platform");
    let ses = string_field("ses");
    let author = string_field("author");
    let text = string_field("text");

    let platform = platform.and_then(|p| {
        p.parse::<Platform>()
            .map_err(|m| errors.push(err(Some("platform"), m)))
            .ok()
    });
    let ses = ses.and_then(|s| {
        s.parse::<Ses>()
            .map_err(|m| errors.push(err(Some("ses"), m)))
            .ok()
    });
    let prompt_variant = match obj.get("prompt_variant") {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => s
            .parse::<PromptVariant>()
            .map(Some)
            .map_err(|m| err(Some("prompt_variant"), m)),
        Some(other) => Err(err(
            Some("prompt_variant"),
            format!("expected null or a string, got {other}"),
        )),
    };
    let variant_malformed = prompt_variant.is_err();
    let prompt_variant = prompt_variant.map_err(|e| errors.push(e)).ok().flatten();

    if let Some(id) = &id {
        if id.is_empty() {
            errors.push(err(Some("id"), "must be non-empty".into()));
        }
    }
    if let Some(text) = &text {
        if text.trim().is_empty() {
            errors.push(err(
                Some("text"),
                "must be non-empty after trimming whitespace".into(),
            ));
        }
    }
    let author = author.map(|a| Author::from(a.as_str()));
    if let Some(author) = &author {
        if author.is_human() && prompt_variant.is_some() {
            errors.push(err(
                Some("prompt_variant"),
                "must be null for human-authored instances".into(),
            ));
        }
        if !author.is_human() && prompt_variant.is_none() && !variant_malformed {
            errors.push(err(
                Some("prompt_variant"),
                "required for model-authored instances".into(),
            ));
        }
    }

    match (id, platform, ses, author, text) {
        (Some(id), Some(platform), Some(ses), Some(author), Some(text)) if errors.is_empty() => {
            Ok(Instance {
                id,
                platform,
                ses,
                author,
                prompt_variant,
                text,
            })
        }
        _ => Err(errors),
    }
}

/// Number of maximal non-whitespace runs in `text`.
pub fn word_count(text: &str) -> usize {
    text.split_whitespace().count()
}

/// Keeps instances with at least `min_words` words, preserving order.
pub fn filter_min_words(corpus: &Corpus, min_words: usize) -> Corpus {
    Corpus {
        instances: corpus
            .instances
            .iter()
            .filter(|i| word_count(&i.text) >= min_words)
            .cloned()
            .collect(),
    }
}

/// An instance divided into a prompt cue and the held-out continuation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitInstance {
    pub instance_id: String,
    /// Exact prefix of the original text, ending at the last cue word.
    pub cue_text: String,
    /// Whitespace between the cue and the reference in the original text.
    pub separator: String,
    /// Remainder of the original text with leading whitespace removed.
    pub reference_text: String,
    pub cue_words: usize,
}

impl SplitInstance {
    /// Rebuilds the original text byte-for-byte.
    pub fn reconstruct(&self) -> String {
        let mut s = String::with_capacity(
            self.cue_text.len() + self.separator.len() + self.reference_text.len(),
        );
        s.push_str(&self.cue_text);
        s.push_str(&self.separator);
        s.push_str(&self.reference_text);
        s
    }
}

pub fn split_for_prompting(
    instance: &Instance,
    cue_words: usize,
) -> Result<SplitInstance, CorpusError> {
    let too_short = || CorpusError::TooShort {
        id: instance.id.clone(),
        words: word_count(&instance.text),
        cue_words,
    };
    if cue_words == 0 {
        return Err(CorpusError::Config("cue_words must be at least 1".into()));
    }
    let text = instance.text.as_str();
    let mut seen = 0;
    let mut cue_end = None;
    let mut in_word = false;
    for (pos, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if in_word {
                in_word = false;
                if seen == cue_words {
                    cue_end = Some(pos);
                    break;
                }
            }
        } else if !in_word {
            in_word = true;
            seen += 1;
        }
    }
    let cue_end = cue_end.ok_or_else(too_short)?;
    let rest = &text[cue_end..];
    let reference = rest.trim_start();
    if reference.is_empty() {
        return Err(too_short());
    }
    Ok(SplitInstance {
        instance_id: instance.id.clone(),
        cue_text: text[..cue_end].to_string(),
        separator: rest[..rest.len() - reference.len()].to_string(),
        reference_text: reference.to_string(),
        cue_words,
    })
}

pub const DEFAULT_ABLATION_CUE_LENGTHS: [usize; 4] = [20, 40, 60, 80];
pub const DEFAULT_ABLATION_MIN_WORDS: usize = 100;

/// Filters once at `min_words`, then splits every surviving instance at each cue length.
pub fn ablation_splits(
    corpus: &Corpus,
    cue_lengths: &[usize],
    min_words: usize,
) -> Result<BTreeMap<usize, Vec<SplitInstance>>, CorpusError> {
    if let Some(bad) = cue_lengths.iter().find(|&&c| c >= min_words) {
        return Err(CorpusError::Config(format!(
            "cue length {bad} must be smaller than min_words {min_words}"
        )));
    }
    let kept = filter_min_words(corpus, min_words);
    let mut out = BTreeMap::new();
    for &cue in cue_lengths {
        let splits = kept
            .iter()
            .map(|inst| split_for_prompting(inst, cue))
            .collect::<Result<Vec<_>, _>>()?;
        out.insert(cue, splits);
    }
    Ok(out)
}
