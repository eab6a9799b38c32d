//! Closed word-class lists used by the pattern rules.
//!
//! Line format: one entry per line, `#` starts a comment. A first line of `#! verbs`
//! marks a verb list whose entries are lemmas; their inflected forms are generated
//! (irregular forms come from `irregular_verbs.txt` or extra words after the lemma).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::LazyLock;

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../data/wordlists/", $name, ".txt")))),*]
    };
}

/// Every bundled list, by name.
pub const BUNDLED_LISTS: &[(&str, &str)] = bundled!(
    "adv_subordinators",
    "amplifiers",
    "be",
    "conjuncts",
    "demonstratives",
    "discourse_particles",
    "do",
    "downtoners",
    "emphatics",
    "first_person",
    "have",
    "hedges",
    "indefinite_pronouns",
    "modal_necessity",
    "modal_possibility",
    "modal_predictive",
    "non_gerund_ing",
    "place_adverbs",
    "second_person",
    "subject_pronouns",
    "third_person",
    "time_adverbs",
    "verb_private",
    "verb_public",
    "verb_seem",
    "verb_suasive",
    "wh_words",
);

const IRREGULAR: &str = include_str!("../../data/wordlists/irregular_verbs.txt");
const DOUBLING: &str = include_str!("../../data/wordlists/doubling_verbs.txt");

#[derive(Debug, Clone, Default)]
pub struct WordList {
    words: HashSet<String>,
    /// Multi-word entries as lowercased token sequences.
    phrases: Vec<Vec<String>>,
}

impl WordList {
    pub fn contains(&self, lower: &str) -> bool {
        self.words.contains(lower)
    }

    pub fn len(&self) -> usize {
        self.words.len() + self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Token lengths of every entry matching at the start of `lowers`.
    pub fn match_lengths<'a>(&'a self, lowers: &'a [&'a str]) -> impl Iterator<Item = usize> + 'a {
        let single = lowers
            .first()
            .is_some_and(|w| self.words.contains(*w))
            .then_some(1);
        let multi = self.phrases.iter().filter_map(move |p| {
            (p.len() <= lowers.len() && p.iter().zip(lowers).all(|(a, b)| a == b))
                .then_some(p.len())
        });
        single.into_iter().chain(multi)
    }
}

fn entries(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

struct Irregular {
    forms: HashMap<String, Vec<String>>,
    doubling: HashSet<String>,
}

static IRREGULAR_VERBS: LazyLock<Irregular> = LazyLock::new(|| {
    let mut forms = HashMap::new();
    for line in entries(IRREGULAR) {
        let mut cols = line.split_whitespace();
        let Some(base) = cols.next() else { continue };
        let rest: Vec<String> = cols
            .flat_map(|c| c.split(','))
            .map(str::to_string)
            .collect();
        forms.insert(base.to_string(), rest);
    }
    let doubling = entries(DOUBLING).map(str::to_string).collect();
    Irregular { forms, doubling }
});

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

/// Lemma plus its -s, -ed and -ing forms and any irregular forms.
pub fn inflect(lemma: &str) -> Vec<String> {
    let irr = &*IRREGULAR_VERBS;
    let mut out = vec![lemma.to_string()];
    let chars: Vec<char> = lemma.chars().collect();
    let n = chars.len();
    let last = chars.last().copied().unwrap_or(' ');
    let penult = if n > 1 { chars[n - 2] } else { ' ' };
    let consonant_y = last == 'y' && !is_vowel(penult);

    let third = if ["s", "x", "z", "ch", "sh"]
        .iter()
        .any(|s| lemma.ends_with(s))
        || lemma.ends_with('o')
    {
        format!("{lemma}es")
    } else if consonant_y {
        format!("{}ies", &lemma[..lemma.len() - 1])
    } else {
        format!("{lemma}s")
    };
    out.push(third);

    let stem = if irr.doubling.contains(lemma) {
        format!("{lemma}{last}")
    } else {
        lemma.to_string()
    };
    let past = if last == 'e' {
        format!("{lemma}d")
    } else if consonant_y {
        format!("{}ied", &lemma[..lemma.len() - 1])
    } else {
        format!("{stem}ed")
    };
    let ing = if let Some(base) = lemma.strip_suffix("ie") {
        format!("{base}ying")
    } else if last == 'e' && !matches!(penult, 'e' | 'y' | 'o') {
        format!("{}ing", &lemma[..lemma.len() - 1])
    } else {
        format!("{stem}ing")
    };
    match irr.forms.get(lemma) {
        Some(forms) => out.extend(forms.iter().cloned()),
        None => out.push(past),
    }
    out.push(ing);
    out.sort();
    out.dedup();
    out
}

pub fn parse_list(text: &str) -> WordList {
    let verbs = text.lines().next().is_some_and(|l| l.trim() == "#! verbs");
    let mut list = WordList::default();
    for entry in entries(text) {
        let entry = entry.to_lowercase();
        if verbs {
            let mut parts = entry.split_whitespace();
            if let Some(lemma) = parts.next() {
                list.words.extend(inflect(lemma));
            }
            list.words.extend(parts.map(str::to_string));
        } else if entry.contains(' ') {
            list.phrases
                .push(entry.split_whitespace().map(str::to_string).collect());
        } else {
            list.words.insert(entry);
        }
    }
    list
}

/// Named word lists available to the rules.
#[derive(Debug, Clone)]
pub struct Lexicons {
    lists: BTreeMap<String, WordList>,
}

static BUNDLED: LazyLock<Lexicons> = LazyLock::new(|| {
    let mut lists: BTreeMap<String, WordList> = BUNDLED_LISTS
        .iter()
        .map(|(name, text)| (name.to_string(), parse_list(text)))
        .collect();
    let irr = &*IRREGULAR_VERBS;
    let mut past = WordList::default();
    let mut participle = WordList::default();
    for line in entries(IRREGULAR) {
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.len() == 3 {
            past.words.extend(cols[1].split(',').map(str::to_string));
            participle
                .words
                .extend(cols[2].split(',').map(str::to_string));
        }
    }
    debug_assert!(!irr.forms.is_empty());
    lists.insert("irregular_past".into(), past);
    lists.insert("irregular_participle".into(), participle);
    Lexicons { lists }
});

impl Lexicons {
    pub fn bundled() -> &'static Lexicons {
        &BUNDLED
    }

    pub fn get(&self, name: &str) -> Option<&WordList> {
        self.lists.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.lists.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inflections() {
        assert_eq!(inflect("say"), vec!["said", "say", "saying", "says"]);
        assert!(inflect("deny").contains(&"denied".to_string()));
        assert!(inflect("deny").contains(&"denies".to_string()));
        assert!(inflect("argue").contains(&"arguing".to_string()));
        assert!(inflect("agree").contains(&"agreeing".to_string()));
        assert!(inflect("admit").contains(&"admitted".to_string()));
        assert!(inflect("think").contains(&"thought".to_string()));
        assert!(inflect("guess").contains(&"guesses".to_string()));
    }

    #[test]
    fn phrases_and_words() {
        let list = parse_list("# c\nalmost\nmore or less\n");
        assert!(list.contains("almost"));
        let toks = ["more", "or", "less", "x"];
        assert_eq!(list.match_lengths(&toks).collect::<Vec<_>>(), vec![3]);
        assert_eq!(list.match_lengths(&["almost"]).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn bundled_lists_load() {
        let lex = Lexicons::bundled();
        for (name, _) in BUNDLED_LISTS {
            assert!(!lex.get(name).unwrap().is_empty(), "{name} is empty");
        }
        assert!(lex.get("verb_private").unwrap().contains("thinks"));
        assert!(lex.get("irregular_participle").unwrap().contains("built"));
    }
}
