//! The per-instance feature matrix: 94 features plus 7 readability scores.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;
use std::sync::LazyLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::annotate::{annotate_text, AnnotateError, TaggedDoc};
use crate::biber::{self, BiberError};
use crate::corpus::{Author, Corpus, Instance, Platform, PromptVariant, Ses};
use crate::surface::{self, ConcretenessLexicon, SurfaceError};

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error(transparent)]
    Biber(#[from] BiberError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Annotate(#[from] AnnotateError),
    #[error("no annotation for instance {0}")]
    MissingAnnotation(String),
    #[error("feature matrix CSV: {0}")]
    Csv(String),
    #[error("unknown column {0}")]
    UnknownColumn(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureFamily {
    Biber,
    Length,
    Pos,
    Style,
    Readability,
}

impl FeatureFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            FeatureFamily::Biber => "biber",
            FeatureFamily::Length => "length",
            FeatureFamily::Pos => "pos",
            FeatureFamily::Style => "style",
            FeatureFamily::Readability => "readability",
        }
    }
}

impl fmt::Display for FeatureFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Feature columns in matrix order: register features, length counts, part-of-speech
/// ratios, style measures, then readability scores.
pub static COLUMNS: LazyLock<Vec<(&'static str, FeatureFamily)>> = LazyLock::new(|| {
    let mut cols = Vec::with_capacity(101);
    cols.extend(
        biber::FEATURE_NAMES
            .iter()
            .map(|n| (*n, FeatureFamily::Biber)),
    );
    cols.extend(
        surface::LENGTH_NAMES
            .iter()
            .map(|n| (*n, FeatureFamily::Length)),
    );
    cols.extend(surface::POS_NAMES.iter().map(|n| (*n, FeatureFamily::Pos)));
    cols.extend(
        surface::STYLE_NAMES
            .iter()
            .map(|n| (*n, FeatureFamily::Style)),
    );
    cols.extend(
        surface::SCORE_NAMES
            .iter()
            .map(|n| (*n, FeatureFamily::Readability)),
    );
    cols
});

/// Number of feature columns excluding readability.
pub const FEATURE_COUNT: usize = 94;
pub const COLUMN_COUNT: usize = 101;

pub fn column_names() -> impl Iterator<Item = &'static str> {
    COLUMNS.iter().map(|(n, _)| *n)
}

/// The 94 features compared between groups.
pub fn feature_names() -> impl Iterator<Item = &'static str> {
    COLUMNS
        .iter()
        .filter(|(_, f)| *f != FeatureFamily::Readability)
        .map(|(n, _)| *n)
}

pub fn family(name: &str) -> Option<FeatureFamily> {
    COLUMNS.iter().find(|(n, _)| *n == name).map(|(_, f)| *f)
}

/// Length features are left out of the cue-length aggregate.
pub fn is_length_feature(name: &str) -> bool {
    family(name) == Some(FeatureFamily::Length)
}

/// Who wrote a row, under which prompt, for which platform and SES group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupKey {
    pub platform: Platform,
    pub ses: Ses,
    pub author: Author,
    pub prompt_variant: Option<PromptVariant>,
}

impl GroupKey {
    pub fn of(instance: &Instance) -> Self {
        GroupKey {
            platform: instance.platform,
            ses: instance.ses,
            author: instance.author.clone(),
            prompt_variant: instance.prompt_variant,
        }
    }

    /// `ses/author` or `ses/author/variant`; the platform is not part of the label.
    pub fn label(&self) -> String {
        match self.prompt_variant {
            Some(v) => format!("{}/{}/{}", self.ses, self.author, v),
            None => format!("{}/{}", self.ses, self.author),
        }
    }
}

/// A group label as written on the command line: `ses/author[/variant]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupLabel {
    pub ses: Ses,
    pub author: Author,
    pub prompt_variant: Option<PromptVariant>,
}

impl GroupLabel {
    pub fn human(ses: Ses) -> Self {
        GroupLabel {
            ses,
            author: Author::Human,
            prompt_variant: None,
        }
    }

    pub fn matches(&self, key: &GroupKey) -> bool {
        self.ses == key.ses
            && self.author == key.author
            && self.prompt_variant == key.prompt_variant
    }
}

impl FromStr for GroupLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        // model names may themselves contain '/', so only the ends are split off
        let (ses, rest) = s
            .split_once('/')
            .ok_or_else(|| format!("group {s:?} is not ses/author[/variant]"))?;
        let (author, prompt_variant) = match rest.rsplit_once('/') {
            Some((a, v)) if v.parse::<PromptVariant>().is_ok() => (a, Some(v.parse()?)),
            _ => (rest, None),
        };
        if author.is_empty() {
            return Err(format!("group {s:?} has no author"));
        }
        Ok(GroupLabel {
            ses: ses.parse()?,
            author: Author::from(author),
            prompt_variant,
        })
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.prompt_variant {
            Some(v) => write!(f, "{}/{}/{}", self.ses, self.author, v),
            None => write!(f, "{}/{}", self.ses, self.author),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRow {
    pub instance_id: String,
    pub key: GroupKey,
    /// One cell per column of [`COLUMNS`]; `None` is a missing value.
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FeatureMatrix {
    pub rows: Vec<FeatureRow>,
}

const KEY_COLUMNS: [&str; 5] = ["id", "platform", "ses", "author", "prompt_variant"];

static COLUMN_INDEX: LazyLock<HashMap<&'static str, usize>> = LazyLock::new(|| {
    COLUMNS
        .iter()
        .enumerate()
        .map(|(i, (n, _))| (*n, i))
        .collect()
});

pub fn column_index(name: &str) -> Option<usize> {
    COLUMN_INDEX.get(name).copied()
}

fn format_cell(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x}"),
        None => String::new(),
    }
}

impl FeatureMatrix {
    pub fn new(rows: Vec<FeatureRow>) -> Self {
        FeatureMatrix { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Distinct group keys, sorted.
    pub fn groups(&self) -> Vec<GroupKey> {
        self.rows
            .iter()
            .map(|r| r.key.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn platforms(&self) -> Vec<Platform> {
        self.rows
            .iter()
            .map(|r| r.key.platform)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Rows of one platform only.
    pub fn for_platform(&self, platform: Platform) -> FeatureMatrix {
        FeatureMatrix {
            rows: self
                .rows
                .iter()
                .filter(|r| r.key.platform == platform)
                .cloned()
                .collect(),
        }
    }

    /// Present values of one column within the rows `select` accepts.
    pub fn column_values(&self, column: usize, select: impl Fn(&GroupKey) -> bool) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| select(&r.key))
            .filter_map(|r| r.values[column])
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), FeatureError> {
        let csv_err = |e: csv::Error| FeatureError::Csv(e.to_string());
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(KEY_COLUMNS.iter().copied().chain(column_names()))
            .map_err(csv_err)?;
        for row in &self.rows {
            let key = [
                row.instance_id.clone(),
                row.key.platform.to_string(),
                row.key.ses.to_string(),
                row.key.author.to_string(),
                row.key
                    .prompt_variant
                    .map(|v| v.to_string())
                    .unwrap_or_default(),
            ];
            w.write_record(
                key.into_iter()
                    .chain(row.values.iter().map(|v| format_cell(*v))),
            )
            .map_err(csv_err)?;
        }
        w.flush().map_err(|e| FeatureError::Csv(e.to_string()))
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("matrix CSV is UTF-8")
    }

    /// Reads a matrix written by [`FeatureMatrix::write_csv`]. Columns are matched
    /// by name, so their order may differ; every feature column must be present.
    pub fn read_csv<R: Read>(input: R) -> Result<FeatureMatrix, FeatureError> {
        let mut r = csv::Reader::from_reader(input);
        let headers = r
            .headers()
            .map_err(|e| FeatureError::Csv(e.to_string()))?
            .clone();
        let find = |name: &str| {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| FeatureError::Csv(format!("missing column {name:?}")))
        };
        let key_at: Vec<usize> = KEY_COLUMNS
            .iter()
            .map(|k| find(k))
            .collect::<Result<_, _>>()?;
        let value_at: Vec<usize> = column_names().map(find).collect::<Result<_, _>>()?;
        let mut rows = Vec::new();
        for (i, record) in r.records().enumerate() {
            let line = i + 2;
            let record = record.map_err(|e| FeatureError::Csv(e.to_string()))?;
            let field = |k: usize| record.get(k).unwrap_or("");
            let bad = |what: String| FeatureError::Csv(format!("line {line}: {what}"));
            let variant = match field(key_at[4]) {
                "" => None,
                v => Some(v.parse().map_err(bad)?),
            };
            let key = GroupKey {
                platform: field(key_at[1]).parse().map_err(bad)?,
                ses: field(key_at[2]).parse().map_err(bad)?,
                author: Author::from(field(key_at[3])),
                prompt_variant: variant,
            };
            let values = value_at
                .iter()
                .map(|&k| match field(k) {
                    "" => Ok(None),
                    v => v
                        .parse::<f64>()
                        .map(Some)
                        .map_err(|_| bad(format!("bad number {v:?}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(FeatureRow {
                instance_id: field(key_at[0]).to_string(),
                key,
                values,
            });
        }
        Ok(FeatureMatrix { rows })
    }
}

/// Computes feature rows for documents.
#[derive(Debug, Clone, Copy)]
pub struct Profiler<'a> {
    pub concreteness: &'a ConcretenessLexicon,
}

impl Default for Profiler<'static> {
    fn default() -> Self {
        Profiler {
            concreteness: ConcretenessLexicon::bundled(),
        }
    }
}

impl<'a> Profiler<'a> {
    pub fn new(concreteness: &'a ConcretenessLexicon) -> Self {
        Profiler { concreteness }
    }

    /// All 101 cells for one document. Readability cells are missing when the
    /// document has no words.
    pub fn profile_doc(&self, doc: &TaggedDoc) -> Result<Vec<Option<f64>>, FeatureError> {
        let mut values = Vec::with_capacity(COLUMN_COUNT);
        values.extend(biber::biber_profile(doc)?.values().iter().map(|v| Some(*v)));
        let s = surface::surface_profile(doc, self.concreteness)?;
        values.extend(s.length.values().iter().map(|v| Some(*v as f64)));
        values.extend(s.pos.iter().map(|v| Some(*v)));
        values.extend(s.style.values());
        match surface::readability(doc) {
            Ok(r) => values.extend(r.values().iter().map(|v| Some(*v))),
            Err(SurfaceError::NoWords | SurfaceError::NoSentences) => values.extend([None; 7]),
            Err(e) => return Err(e.into()),
        }
        debug_assert_eq!(values.len(), COLUMN_COUNT);
        Ok(values)
    }

    /// Profiles every instance in parallel, tagging with the built-in tagger
    /// unless `docs` supplies an annotation per instance. Rows keep corpus order.
    pub fn profile_corpus(
        &self,
        corpus: &Corpus,
        docs: Option<&[TaggedDoc]>,
    ) -> Result<FeatureMatrix, FeatureError> {
        let by_id: Option<HashMap<&str, &TaggedDoc>> = docs.map(|d| {
            d.iter()
                .map(|doc| (doc.instance_id.as_str(), doc))
                .collect()
        });
        let rows = corpus
            .instances
            .par_iter()
            .map(|inst| {
                let values = match &by_id {
                    Some(map) => {
                        let doc = map
                            .get(inst.id.as_str())
                            .ok_or_else(|| FeatureError::MissingAnnotation(inst.id.clone()))?;
                        self.profile_doc(doc)?
                    }
                    None => self.profile_doc(&annotate_text(&inst.id, &inst.text))?,
                };
                Ok(FeatureRow {
                    instance_id: inst.id.clone(),
                    key: GroupKey::of(inst),
                    values,
                })
            })
            .collect::<Result<Vec<_>, FeatureError>>()?;
        Ok(FeatureMatrix { rows })
    }

    /// Profiles pre-tagged documents in parallel, in input order.
    pub fn profile_docs(&self, docs: &[TaggedDoc]) -> Result<Vec<Vec<Option<f64>>>, FeatureError> {
        docs.par_iter().map(|d| self.profile_doc(d)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_corpus_jsonl;

    #[test]
    fn schema() {
        assert_eq!(COLUMNS.len(), COLUMN_COUNT);
        assert_eq!(feature_names().count(), FEATURE_COUNT);
        let unique: BTreeSet<_> = column_names().collect();
        assert_eq!(unique.len(), COLUMN_COUNT);
        assert_eq!(family("hedges"), Some(FeatureFamily::Biber));
        assert_eq!(family("noun"), Some(FeatureFamily::Pos));
        assert_eq!(family("ari"), Some(FeatureFamily::Readability));
        assert!(is_length_feature("letters"));
    }

    #[test]
    fn labels_round_trip() {
        for s in [
            "lower/human",
            "upper/gpt-4o/els_ses",
            "lower/org/model-7b/imp",
            "upper/org/model",
        ] {
            assert_eq!(s.parse::<GroupLabel>().unwrap().to_string(), s);
        }
        assert!("human".parse::<GroupLabel>().is_err());
        assert!("middle/human".parse::<GroupLabel>().is_err());
    }

    #[test]
    fn csv_round_trip() {
        let corpus = parse_corpus_jsonl(concat!(
            r#"{"id":"a","platform":"reddit","ses":"lower","author":"human","prompt_variant":null,"text":"I can't pay the rent this month, honestly."}"#,
            "\n",
            r#"{"id":"b","platform":"reddit","ses":"upper","author":"m1","prompt_variant":"els","text":"The regatta, however, was postponed."}"#,
            "\n",
        ))
        .unwrap();
        let m = Profiler::default().profile_corpus(&corpus, None).unwrap();
        assert_eq!(m.len(), 2);
        let text = m.to_csv_string();
        assert_eq!(text.lines().count(), 3);
        let back = FeatureMatrix::read_csv(text.as_bytes()).unwrap();
        assert_eq!(back, m);
        // built-in tagging carries neither heads nor entities
        let depth = column_index("max_dep_depth").unwrap();
        assert_eq!(m.rows[0].values[depth], None);
        assert!(text.lines().nth(1).unwrap().contains(",,"));
    }
}
