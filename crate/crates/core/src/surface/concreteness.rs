use std::collections::HashMap;
use std::path::Path;
use std::sync::LazyLock;

use super::SurfaceError;
use crate::annotate::TaggedDoc;

const BUNDLED: &str = include_str!("../../data/concreteness.tsv");

static SEED: LazyLock<ConcretenessLexicon> = LazyLock::new(|| {
    ConcretenessLexicon::parse(BUNDLED).expect("bundled concreteness table parses")
});

/// Word ratings on a 1 (abstract) to 5 (concrete) scale.
#[derive(Debug, Clone, Default)]
pub struct ConcretenessLexicon {
    ratings: HashMap<String, f64>,
}

impl ConcretenessLexicon {
    /// The small seed table shipped with the crate.
    pub fn bundled() -> &'static ConcretenessLexicon {
        &SEED
    }

    /// Parses `word<TAB>rating` lines. A header row whose rating column is not
    /// numeric is skipped, as are `#` comments; extra columns are ignored.
    pub fn parse(text: &str) -> Result<Self, SurfaceError> {
        let mut ratings = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let (Some(word), Some(value)) = (cols.next(), cols.next()) else {
                return Err(SurfaceError::Lexicon {
                    line: i + 1,
                    message: "expected word<TAB>rating".into(),
                });
            };
            let Ok(rating) = value.trim().parse::<f64>() else {
                if i == 0 {
                    continue;
                }
                return Err(SurfaceError::Lexicon {
                    line: i + 1,
                    message: format!("bad rating {value:?}"),
                });
            };
            if !(1.0..=5.0).contains(&rating) {
                return Err(SurfaceError::Lexicon {
                    line: i + 1,
                    message: format!("rating {rating} outside [1, 5]"),
                });
            }
            ratings.insert(word.trim().to_lowercase(), rating);
        }
        Ok(ConcretenessLexicon { ratings })
    }

    pub fn load(path: &Path) -> Result<Self, SurfaceError> {
        let text = std::fs::read_to_string(path).map_err(|source| SurfaceError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn get(&self, word: &str) -> Option<f64> {
        self.ratings.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.ratings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ratings.is_empty()
    }
}

/// Mean rating over tokens found in the lexicon, by lowered form and then by lemma.
pub fn concreteness(doc: &TaggedDoc, lexicon: &ConcretenessLexicon) -> Option<f64> {
    let mut hits: Vec<f64> = doc
        .tokens()
        .filter_map(|t| {
            lexicon.get(&t.lower).or_else(|| {
                t.lemma
                    .as_deref()
                    .and_then(|l| lexicon.get(&l.to_lowercase()))
            })
        })
        .collect();
    if hits.is_empty() {
        return None;
    }
    hits.sort_by(f64::total_cmp);
    Some(hits.iter().sum::<f64>() / hits.len() as f64)
}
