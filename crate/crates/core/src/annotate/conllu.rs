use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use super::{fold_lower, AnnotateError, Provenance, TaggedDoc, Token, Upos};
use crate::corpus::Corpus;

fn conllu_err(line: usize, message: impl Into<String>) -> AnnotateError {
    AnnotateError::Conllu {
        line,
        message: message.into(),
    }
}

fn opt(field: &str) -> Option<String> {
    (field != "_").then(|| field.to_string())
}

fn parse_entity(value: &str) -> bool {
    match value {
        "Yes" | "yes" | "True" | "true" => true,
        v => v.starts_with("B-") || v.starts_with("I-"),
    }
}

/// Parses CoNLL-U text. Each sentence is bound to a document by the most recent
/// `# instance_id = ...` comment; multiword-token and empty-node lines are skipped.
pub fn parse_conllu(input: &str) -> Result<Vec<TaggedDoc>, AnnotateError> {
    let mut docs: Vec<TaggedDoc> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut entity_seen: Vec<bool> = Vec::new();
    let mut current: Option<usize> = None;
    let mut sentence: Vec<Token> = Vec::new();
    let mut sentence_start = 0;

    let flush = |sentence: &mut Vec<Token>,
                 current: Option<usize>,
                 docs: &mut Vec<TaggedDoc>,
                 start: usize| {
        if sentence.is_empty() {
            return Ok(());
        }
        let n = sentence.len();
        if let Some(t) = sentence.iter().find(|t| t.head.is_some_and(|h| h > n)) {
            return Err(conllu_err(
                start,
                format!(
                    "head {} outside sentence of {n} tokens",
                    t.head.unwrap_or(0)
                ),
            ));
        }
        let doc = current
            .ok_or_else(|| conllu_err(start, "sentence before any `# instance_id =` comment"))?;
        docs[doc].sentences.push(std::mem::take(sentence));
        Ok(())
    };

    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            flush(&mut sentence, current, &mut docs, sentence_start)?;
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                if key.trim() == "instance_id" {
                    flush(&mut sentence, current, &mut docs, sentence_start)?;
                    let id = value.trim().to_string();
                    let next = docs.len();
                    let slot = *index.entry(id.clone()).or_insert(next);
                    if slot == next {
                        docs.push(TaggedDoc {
                            instance_id: id,
                            sentences: Vec::new(),
                            provenance: Provenance::Ingested,
                        });
                        entity_seen.push(false);
                    }
                    current = Some(slot);
                }
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(conllu_err(
                line_no,
                format!("expected 10 tab-separated columns, found {}", cols.len()),
            ));
        }
        if cols[0].contains('-') || cols[0].contains('.') {
            continue;
        }
        if sentence.is_empty() {
            sentence_start = line_no;
        }
        let id: usize = cols[0]
            .parse()
            .map_err(|_| conllu_err(line_no, format!("bad token id {:?}", cols[0])))?;
        if id != sentence.len() + 1 {
            return Err(conllu_err(
                line_no,
                format!("token id {id} out of sequence"),
            ));
        }
        let upos: Upos = cols[3]
            .parse()
            .map_err(|e: String| conllu_err(line_no, e))?;
        let head = match cols[6] {
            "_" => None,
            h => Some(
                h.parse::<usize>()
                    .map_err(|_| conllu_err(line_no, format!("bad head {h:?}")))?,
            ),
        };
        let mut space_after = true;
        let mut entity_flag = None;
        for item in cols[9].split('|') {
            match item.split_once('=') {
                Some(("SpaceAfter", "No")) => space_after = false,
                Some(("Entity", v)) => entity_flag = Some(parse_entity(v)),
                _ => {}
            }
        }
        if entity_flag.is_some() {
            if let Some(doc) = current {
                entity_seen[doc] = true;
            }
        }
        sentence.push(Token {
            form: cols[1].to_string(),
            lower: fold_lower(cols[1]),
            upos,
            xpos: opt(cols[4]),
            lemma: opt(cols[2]),
            head,
            deprel: opt(cols[7]),
            entity_flag,
            space_after,
        });
    }
    flush(&mut sentence, current, &mut docs, sentence_start)?;

    // a document with any entity annotation treats unmarked tokens as non-entities
    for (doc, seen) in docs.iter_mut().zip(entity_seen) {
        if seen {
            for sent in &mut doc.sentences {
                for t in sent {
                    t.entity_flag.get_or_insert(false);
                }
            }
        }
    }
    docs.retain(|d| !d.sentences.is_empty());
    Ok(docs)
}

pub fn load_conllu(path: &Path) -> Result<Vec<TaggedDoc>, AnnotateError> {
    let text = std::fs::read_to_string(path).map_err(|source| AnnotateError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_conllu(&text)
}

/// Fails on the first document whose id is not an instance of `corpus`.
pub fn check_instance_ids(docs: &[TaggedDoc], corpus: &Corpus) -> Result<(), AnnotateError> {
    match docs.iter().find(|d| corpus.get(&d.instance_id).is_none()) {
        Some(d) => Err(AnnotateError::UnknownInstance(d.instance_id.clone())),
        None => Ok(()),
    }
}

/// Serializes documents to CoNLL-U, one `# instance_id` comment per sentence.
pub fn write_conllu(docs: &[TaggedDoc]) -> String {
    let mut out = String::new();
    let field = |v: &Option<String>| v.clone().unwrap_or_else(|| "_".to_string());
    for doc in docs {
        for sent in &doc.sentences {
            let _ = writeln!(out, "# instance_id = {}", doc.instance_id);
            for (i, t) in sent.iter().enumerate() {
                let mut misc = Vec::new();
                if !t.space_after {
                    misc.push("SpaceAfter=No".to_string());
                }
                if let Some(e) = t.entity_flag {
                    misc.push(format!("Entity={}", if e { "Yes" } else { "No" }));
                }
                let misc = if misc.is_empty() {
                    "_".to_string()
                } else {
                    misc.join("|")
                };
                let head = t.head.map_or_else(|| "_".to_string(), |h| h.to_string());
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t_\t{}\t{}\t_\t{}",
                    i + 1,
                    t.form,
                    field(&t.lemma),
                    t.upos,
                    field(&t.xpos),
                    head,
                    field(&t.deprel),
                    misc
                );
            }
            out.push('\n');
        }
    }
    out
}
