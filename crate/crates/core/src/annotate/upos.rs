use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The 17-tag Universal Dependencies part-of-speech inventory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Upos {
    ADJ,
    ADP,
    ADV,
    AUX,
    CCONJ,
    DET,
    INTJ,
    NOUN,
    NUM,
    PART,
    PRON,
    PROPN,
    PUNCT,
    SCONJ,
    SYM,
    VERB,
    X,
}

impl Upos {
    pub const ALL: [Upos; 17] = [
        Upos::ADJ,
        Upos::ADP,
        Upos::ADV,
        Upos::AUX,
        Upos::CCONJ,
        Upos::DET,
        Upos::INTJ,
        Upos::NOUN,
        Upos::NUM,
        Upos::PART,
        Upos::PRON,
        Upos::PROPN,
        Upos::PUNCT,
        Upos::SCONJ,
        Upos::SYM,
        Upos::VERB,
        Upos::X,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Upos::ADJ => "ADJ",
            Upos::ADP => "ADP",
            Upos::ADV => "ADV",
            Upos::AUX => "AUX",
            Upos::CCONJ => "CCONJ",
            Upos::DET => "DET",
            Upos::INTJ => "INTJ",
            Upos::NOUN => "NOUN",
            Upos::NUM => "NUM",
            Upos::PART => "PART",
            Upos::PRON => "PRON",
            Upos::PROPN => "PROPN",
            Upos::PUNCT => "PUNCT",
            Upos::SCONJ => "SCONJ",
            Upos::SYM => "SYM",
            Upos::VERB => "VERB",
            Upos::X => "X",
        }
    }
}

impl fmt::Display for Upos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Upos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Upos::ALL
            .iter()
            .copied()
            .find(|u| u.as_str() == s)
            .ok_or_else(|| format!("unknown UPOS tag {s:?}"))
    }
}

const BE: &[&str] = &[
    "be", "am", "is", "are", "was", "were", "been", "being", "'m", "'re", "ai",
];
const HAVE: &[&str] = &["have", "has", "had", "having", "'ve"];
const DO: &[&str] = &["do", "does", "did", "doing"];
const SCONJ: &[&str] = &[
    "although", "because", "if", "though", "unless", "whereas", "whether", "while", "that", "cos",
    "cuz",
];

/// Maps the Penn Treebank tag at `i` to a universal tag. Auxiliary `have`/`do` are
/// told apart from main-verb uses by looking up to three tags ahead.
pub fn penn_to_upos(lower: &[&str], tags: &[&str], i: usize) -> Upos {
    let tag = tags[i];
    let low = lower[i];
    let ahead = &tags[i + 1..tags.len().min(i + 4)];
    if tag == "MD" {
        return Upos::AUX;
    }
    if tag.starts_with("VB") {
        if BE.contains(&low) || (low == "'s" && tag == "VBZ") {
            return Upos::AUX;
        }
        if HAVE.contains(&low) || (low == "'d" && tag == "VBD") {
            return if ahead.contains(&"VBN") {
                Upos::AUX
            } else {
                Upos::VERB
            };
        }
        if DO.contains(&low) {
            return if ahead.contains(&"VB") {
                Upos::AUX
            } else {
                Upos::VERB
            };
        }
        return Upos::VERB;
    }
    match tag {
        "IN" if SCONJ.contains(&low) => Upos::SCONJ,
        "IN" => Upos::ADP,
        "RB" if low == "not" || low == "n't" => Upos::PART,
        "RB" | "RBR" | "RBS" | "WRB" => Upos::ADV,
        "RP" => Upos::ADP,
        "TO" | "POS" => Upos::PART,
        "DT" | "PDT" => Upos::DET,
        "WDT" | "PRP" | "PRP$" | "WP" | "WP$" | "EX" => Upos::PRON,
        "CC" => Upos::CCONJ,
        "CD" => Upos::NUM,
        "UH" => Upos::INTJ,
        "JJ" | "JJR" | "JJS" => Upos::ADJ,
        "NN" | "NNS" => Upos::NOUN,
        "NNP" | "NNPS" => Upos::PROPN,
        "FW" | "LS" => Upos::X,
        "SYM" | "$" | "#" => Upos::SYM,
        _ => Upos::PUNCT,
    }
}
