//! Transformation-based (Brill) part-of-speech tagger over the Penn Treebank tagset.
//!
//! Known words take their lexicon tag; unknown words are guessed from capitalization,
//! digits and suffix rules; contextual rules then rewrite tags left to right.

use std::collections::HashMap;
use std::sync::LazyLock;

const LEXICON: &str = include_str!("../../data/tagger/lexicon.txt");
const MORPHOLOGY: &str = include_str!("../../data/tagger/morphology.txt");
const CONTEXT: &str = include_str!("../../data/tagger/context.txt");

const PAD: &str = "STAART";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MorphCmd {
    Word,
    Char,
    HasPref,
    HasSuf,
    AddPref,
    AddSuf,
    DeletePref,
    DeleteSuf,
    GoodLeft,
    GoodRight,
}

impl MorphCmd {
    fn parse(s: &str) -> Option<Self> {
        let s = s.to_ascii_lowercase();
        Self::base(&s).or_else(|| s.strip_prefix('f').and_then(Self::base))
    }

    fn base(s: &str) -> Option<Self> {
        Some(match s {
            "word" => MorphCmd::Word,
            "char" => MorphCmd::Char,
            "haspref" => MorphCmd::HasPref,
            "hassuf" => MorphCmd::HasSuf,
            "addpref" => MorphCmd::AddPref,
            "addsuf" => MorphCmd::AddSuf,
            "deletepref" => MorphCmd::DeletePref,
            "deletesuf" => MorphCmd::DeleteSuf,
            "goodleft" => MorphCmd::GoodLeft,
            "goodright" => MorphCmd::GoodRight,
            _ => return None,
        })
    }
}

#[derive(Debug)]
struct MorphRule {
    /// Only applies when the current tag equals this.
    from: Option<&'static str>,
    x: &'static str,
    cmd: MorphCmd,
    to: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CtxCmd {
    PrevTag,
    NextTag,
    Prev2Tag,
    Next2Tag,
    Prev1Or2Tag,
    Next1Or2Tag,
    Prev1Or2Or3Tag,
    Next1Or2Or3Tag,
    SurroundTag,
    CurWd,
    PrevWd,
    NextWd,
    Prev1Or2Wd,
    Next1Or2Wd,
    PrevWdTag,
    NextWdTag,
    WdPrevTag,
    WdNextTag,
    WdAnd2Aft,
    WdAnd2TagBfr,
    WdAnd2TagAft,
    LBigram,
    RBigram,
    PrevBigram,
    NextBigram,
}

impl CtxCmd {
    fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().as_str() {
            "prevtag" => CtxCmd::PrevTag,
            "nexttag" => CtxCmd::NextTag,
            "prev2tag" => CtxCmd::Prev2Tag,
            "next2tag" => CtxCmd::Next2Tag,
            "prev1or2tag" => CtxCmd::Prev1Or2Tag,
            "next1or2tag" => CtxCmd::Next1Or2Tag,
            "prev1or2or3tag" => CtxCmd::Prev1Or2Or3Tag,
            "next1or2or3tag" => CtxCmd::Next1Or2Or3Tag,
            "surroundtag" => CtxCmd::SurroundTag,
            "curwd" => CtxCmd::CurWd,
            "prevwd" => CtxCmd::PrevWd,
            "nextwd" => CtxCmd::NextWd,
            "prev1or2wd" => CtxCmd::Prev1Or2Wd,
            "next1or2wd" => CtxCmd::Next1Or2Wd,
            "prevwdtag" => CtxCmd::PrevWdTag,
            "nextwdtag" => CtxCmd::NextWdTag,
            "wdprevtag" => CtxCmd::WdPrevTag,
            "wdnexttag" => CtxCmd::WdNextTag,
            "wdand2aft" => CtxCmd::WdAnd2Aft,
            "wdand2tagbfr" => CtxCmd::WdAnd2TagBfr,
            "wdand2tagaft" => CtxCmd::WdAnd2TagAft,
            "lbigram" => CtxCmd::LBigram,
            "rbigram" => CtxCmd::RBigram,
            "prevbigram" => CtxCmd::PrevBigram,
            "nextbigram" => CtxCmd::NextBigram,
            _ => return None,
        })
    }
}

#[derive(Debug)]
struct CtxRule {
    /// `None` matches any tag.
    from: Option<&'static str>,
    to: &'static str,
    cmd: CtxCmd,
    x: &'static str,
    y: &'static str,
}

/// Rule-based tagger with its lexicon and rule lists; immutable once built.
#[derive(Debug)]
pub struct BrillTagger {
    lexicon: HashMap<&'static str, &'static str>,
    morphology: Vec<MorphRule>,
    context: Vec<CtxRule>,
}

fn data_lines(data: &'static str) -> impl Iterator<Item = Vec<&'static str>> {
    data.lines()
        .filter(|l| !l.starts_with(";;;"))
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .filter(|parts| !parts.is_empty())
}

static DEFAULT: LazyLock<BrillTagger> = LazyLock::new(BrillTagger::from_bundled);

fn pinned_tag(word: &str) -> Option<&'static str> {
    Some(match word.to_lowercase().as_str() {
        "of" => "IN",
        "which" | "whichever" => "WDT",
        "who" | "whom" | "whoever" => "WP",
        "whose" => "WP$",
        _ => return None,
    })
}

impl BrillTagger {
    /// The bundled model, loaded once per process.
    pub fn bundled() -> &'static BrillTagger {
        &DEFAULT
    }

    fn from_bundled() -> Self {
        let lexicon = data_lines(LEXICON)
            .filter(|p| p.len() >= 2)
            .map(|p| (p[0], p[1]))
            .collect();
        let morphology = data_lines(MORPHOLOGY)
            .filter_map(|r| {
                let to = *r.get(r.len().checked_sub(2)?)?;
                if let Some(cmd) = r.get(2).and_then(|c| MorphCmd::parse(c)) {
                    Some(MorphRule {
                        from: Some(r[0]),
                        x: r[1],
                        cmd,
                        to,
                    })
                } else {
                    let cmd = MorphCmd::parse(r.get(1)?)?;
                    Some(MorphRule {
                        from: None,
                        x: r[0],
                        cmd,
                        to,
                    })
                }
            })
            .collect();
        let context = data_lines(CONTEXT)
            .filter_map(|r| {
                if r.len() < 4 {
                    return None;
                }
                Some(CtxRule {
                    from: (r[0] != "*").then_some(r[0]),
                    to: r[1],
                    cmd: CtxCmd::parse(r[2])?,
                    x: r[3],
                    y: r.get(4).copied().unwrap_or(""),
                })
            })
            .collect();
        BrillTagger {
            lexicon,
            morphology,
            context,
        }
    }

    pub fn lexicon_size(&self) -> usize {
        self.lexicon.len()
    }

    fn known(&self, w: &str) -> bool {
        self.lexicon.contains_key(w)
    }

    fn apply_morphology(&self, word: &str, prev: Option<&str>, next: Option<&str>) -> &'static str {
        let mut tag: &'static str = "NN";
        for r in &self.morphology {
            if r.from.is_some_and(|f| f != tag) {
                continue;
            }
            let x = r.x;
            let hit = match r.cmd {
                MorphCmd::Word => x == word,
                MorphCmd::Char => word.contains(x),
                MorphCmd::HasPref => word.starts_with(x),
                MorphCmd::HasSuf => word.ends_with(x),
                MorphCmd::AddPref => self.known(&format!("{x}{word}")),
                MorphCmd::AddSuf => self.known(&format!("{word}{x}")),
                MorphCmd::DeletePref => word.strip_prefix(x).is_some_and(|rest| self.known(rest)),
                MorphCmd::DeleteSuf => word.strip_suffix(x).is_some_and(|rest| self.known(rest)),
                MorphCmd::GoodLeft => next == Some(x),
                MorphCmd::GoodRight => prev == Some(x),
            };
            if hit {
                tag = r.to;
            }
        }
        tag
    }

    /// Penn Treebank tags for one sentence of token forms.
    /// Tags one sentence. Context rules can retag a few unambiguous function
    /// words (e.g. `of` before a full stop); those keep a fixed tag instead.
    pub fn tag<S: AsRef<str>>(&self, words: &[S]) -> Vec<&'static str> {
        let words: Vec<&str> = words.iter().map(AsRef::as_ref).collect();
        let mut tags: Vec<Option<&'static str>> = words
            .iter()
            .enumerate()
            .map(|(i, w)| {
                self.lexicon.get(w).copied().or_else(|| {
                    if i == 0 {
                        self.lexicon.get(w.to_lowercase().as_str()).copied()
                    } else {
                        None
                    }
                })
            })
            .collect();

        for i in 0..words.len() {
            if tags[i].is_some() {
                continue;
            }
            let w = words[i];
            tags[i] = Some(if is_title(w) {
                "NNP"
            } else if is_cardinal(w) {
                "CD"
            } else {
                let prev = i.checked_sub(1).map(|p| words[p]);
                let next = words.get(i + 1).copied();
                self.apply_morphology(w, prev, next)
            });
        }

        let mut t: Vec<(&str, &'static str)> = Vec::with_capacity(words.len() + 6);
        t.extend([(PAD, PAD); 3]);
        t.extend(
            words
                .iter()
                .zip(&tags)
                .map(|(w, tag)| (*w, tag.unwrap_or("NN"))),
        );
        t.extend([(PAD, PAD); 3]);
        for i in 3..t.len() - 3 {
            let own = t[i].1;
            for r in &self.context {
                if r.from.is_some_and(|f| f != own) {
                    continue;
                }
                if self.context_hit(r, &t, i) {
                    t[i].1 = r.to;
                }
            }
        }
        t[3..t.len() - 3]
            .iter()
            .map(|&(w, tag)| pinned_tag(w).unwrap_or(tag))
            .collect()
    }

    fn context_hit(&self, r: &CtxRule, t: &[(&str, &'static str)], i: usize) -> bool {
        let (x, y) = (r.x, r.y);
        let tag = |k: usize| t[k].1;
        let wd = |k: usize| t[k].0;
        match r.cmd {
            CtxCmd::PrevTag => x == tag(i - 1),
            CtxCmd::NextTag => x == tag(i + 1),
            CtxCmd::Prev2Tag => x == tag(i - 2),
            CtxCmd::Next2Tag => x == tag(i + 2),
            CtxCmd::Prev1Or2Tag => x == tag(i - 1) || x == tag(i - 2),
            CtxCmd::Next1Or2Tag => x == tag(i + 1) || x == tag(i + 2),
            CtxCmd::Prev1Or2Or3Tag => x == tag(i - 1) || x == tag(i - 2) || x == tag(i - 3),
            CtxCmd::Next1Or2Or3Tag => x == tag(i + 1) || x == tag(i + 2) || x == tag(i + 3),
            CtxCmd::SurroundTag => x == tag(i - 1) && y == tag(i + 1),
            CtxCmd::CurWd => x == wd(i),
            CtxCmd::PrevWd => x == wd(i - 1),
            CtxCmd::NextWd => x == wd(i + 1),
            CtxCmd::Prev1Or2Wd => x == wd(i - 1) || x == wd(i - 2),
            CtxCmd::Next1Or2Wd => x == wd(i + 1) || x == wd(i + 2),
            CtxCmd::PrevWdTag => x == wd(i - 1) && y == tag(i - 1),
            CtxCmd::NextWdTag => x == wd(i + 1) && y == tag(i + 1),
            CtxCmd::WdPrevTag => x == tag(i - 1) && y == wd(i),
            CtxCmd::WdNextTag => x == wd(i) && y == tag(i + 1),
            CtxCmd::WdAnd2Aft => x == wd(i) && y == wd(i + 2),
            CtxCmd::WdAnd2TagBfr => x == tag(i - 2) && y == wd(i),
            CtxCmd::WdAnd2TagAft => x == wd(i) && y == tag(i + 2),
            CtxCmd::LBigram => x == wd(i - 1) && y == wd(i),
            CtxCmd::RBigram => x == wd(i) && y == wd(i + 1),
            CtxCmd::PrevBigram => x == tag(i - 2) && y == tag(i - 1),
            CtxCmd::NextBigram => x == tag(i + 1) && y == tag(i + 2),
        }
    }
}

/// Python's `str.istitle`: cased runs start uppercase and continue lowercase.
fn is_title(w: &str) -> bool {
    let mut prev_cased = false;
    let mut any = false;
    for c in w.chars() {
        if c.is_uppercase() {
            if prev_cased {
                return false;
            }
            prev_cased = true;
            any = true;
        } else if c.is_lowercase() {
            if !prev_cased {
                return false;
            }
            prev_cased = true;
            any = true;
        } else {
            prev_cased = false;
        }
    }
    any
}

fn is_cardinal(w: &str) -> bool {
    !w.is_empty()
        && w.chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '-' | ',' | '.' | ':' | '/' | '%' | '$'))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tag(s: &str) -> Vec<&'static str> {
        BrillTagger::bundled().tag(&s.split_whitespace().collect::<Vec<_>>())
    }

    #[test]
    fn loads_model() {
        let t = BrillTagger::bundled();
        assert!(t.lexicon_size() > 50_000);
        assert!(t.morphology.len() > 50);
        assert!(t.context.len() > 100);
    }

    #[test]
    fn simple_sentence() {
        assert_eq!(tag("the dog barks loudly"), vec!["DT", "NN", "VBZ", "RB"]);
    }

    #[test]
    fn unknown_words() {
        let tags = tag("the glorbish snarfed quickly");
        assert_eq!(tags[0], "DT");
        assert_eq!(tag("Zyxwv")[0], "NNP");
        assert_eq!(tag("12,500")[0], "CD");
    }

    #[test]
    fn title_case() {
        assert!(is_title("Hello"));
        assert!(is_title("Hello-World"));
        assert!(!is_title("McDonald"));
        assert!(!is_title("hello"));
        assert!(!is_title("123"));
    }
}
