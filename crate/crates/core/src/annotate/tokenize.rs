use std::collections::HashMap;
use std::ops::Range;
use std::sync::LazyLock;

const ABBREVIATIONS_DATA: &str = include_str!("../../data/abbreviations.txt");

/// Whether an abbreviation can end a sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbbrevKind {
    /// Precedes a name ("Mr.", "St."); never a sentence end.
    Title,
    /// May end a sentence when a capitalized word follows.
    Plain,
}

static ABBREVIATIONS: LazyLock<HashMap<&'static str, AbbrevKind>> = LazyLock::new(|| {
    ABBREVIATIONS_DATA
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.split_whitespace();
            let word = parts.next().unwrap_or_default();
            let kind = match parts.next() {
                Some("title") => AbbrevKind::Title,
                _ => AbbrevKind::Plain,
            };
            (word, kind)
        })
        .collect()
});

/// Classifies `form` (including its final period) as an abbreviation, if it is one.
pub fn abbreviation_kind(form: &str) -> Option<AbbrevKind> {
    let core = form.strip_suffix('.')?;
    if core.is_empty() {
        return None;
    }
    let mut chars = core.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        return (c.is_uppercase() && c != 'I').then_some(AbbrevKind::Title);
    }
    let lower = core.to_lowercase();
    if let Some(kind) = ABBREVIATIONS.get(lower.as_str()) {
        return Some(*kind);
    }
    dotted_initialism(core).then_some(AbbrevKind::Plain)
}

/// "U.S", "e.g", "Ph.D": short letter groups joined by periods.
fn dotted_initialism(core: &str) -> bool {
    core.contains('.')
        && core.split('.').all(|seg| {
            (1..=3).contains(&seg.chars().count()) && seg.chars().all(char::is_alphabetic)
        })
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Byte offset where a clitic suffix starts, or `None`.
fn clitic_split(core: &str) -> Option<usize> {
    let chars: Vec<(usize, char)> = core.char_indices().collect();
    let n = chars.len();
    let lower_at = |i: usize| chars[i].1.to_ascii_lowercase();
    if n >= 4 && lower_at(n - 1) == 't' && is_apostrophe(chars[n - 2].1) && lower_at(n - 3) == 'n' {
        return Some(chars[n - 3].0);
    }
    for suffix in ["s", "re", "ve", "ll", "d", "m"] {
        let k = suffix.len();
        if n > k + 1 && is_apostrophe(chars[n - k - 1].1) {
            let tail: String = chars[n - k..]
                .iter()
                .map(|&(_, c)| c.to_ascii_lowercase())
                .collect();
            if tail == suffix && chars[n - k - 2].1.is_alphabetic() {
                return Some(chars[n - k - 1].0);
            }
        }
    }
    None
}

fn split_core(core: Range<usize>, text: &str, out: &mut Vec<Range<usize>>) {
    let s = &text[core.clone()];
    if s.eq_ignore_ascii_case("cannot") {
        out.push(core.start..core.start + 3);
        out.push(core.start + 3..core.end);
        return;
    }
    let mut tail = Vec::new();
    let mut end = core.end;
    for _ in 0..2 {
        match clitic_split(&text[core.start..end]) {
            Some(at) => {
                tail.push(core.start + at..end);
                end = core.start + at;
            }
            None => break,
        }
    }
    out.push(core.start..end);
    out.extend(tail.into_iter().rev());
}

fn tokenize_chunk(chunk: Range<usize>, text: &str, out: &mut Vec<Range<usize>>) {
    let s = &text[chunk.clone()];
    let is_edge = |c: char| !c.is_alphanumeric();

    let mut lead = Vec::new();
    let mut start = 0;
    while let Some(c) = s[start..].chars().next() {
        if !is_edge(c) {
            break;
        }
        let run = s[start..]
            .chars()
            .take_while(|&d| d == c)
            .map(char::len_utf8)
            .sum::<usize>();
        lead.push(chunk.start + start..chunk.start + start + run);
        start += run;
    }
    if start == s.len() {
        out.extend(lead);
        return;
    }

    let mut trail = Vec::new();
    let mut end = s.len();
    while let Some(c) = s[start..end].chars().next_back() {
        if !is_edge(c) {
            break;
        }
        if c == '.'
            && abbreviation_kind(&s[start..end]).is_some()
            && !s[start..end - 1].ends_with('.')
        {
            break;
        }
        let run = s[start..end]
            .chars()
            .rev()
            .take_while(|&d| d == c)
            .map(char::len_utf8)
            .sum::<usize>();
        trail.push(chunk.start + end - run..chunk.start + end);
        end -= run;
    }

    out.extend(lead);
    split_core(chunk.start + start..chunk.start + end, text, out);
    out.extend(trail.into_iter().rev());
}

/// Byte spans of each token in `text`. Spans are ordered, disjoint, and only the gaps
/// between them contain whitespace, so the text is recoverable from spans plus gaps.
pub fn token_spans(text: &str) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut chunk_start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), chunk_start) {
            (true, Some(s)) => {
                tokenize_chunk(s..i, text, &mut out);
                chunk_start = None;
            }
            (false, None) => chunk_start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = chunk_start {
        tokenize_chunk(s..text.len(), text, &mut out);
    }
    out
}

/// Token forms of `text`; clitics are split off ("can't" becomes "ca" + "n't").
pub fn tokenize(text: &str) -> Vec<&str> {
    token_spans(text).into_iter().map(|r| &text[r]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spec_examples() {
        assert_eq!(tokenize("I can't."), vec!["I", "ca", "n't", "."]);
        assert!(tokenize("").is_empty());
        assert_eq!(tokenize("hello"), vec!["hello"]);
    }

    #[test]
    fn clitics() {
        assert_eq!(
            tokenize("I'm sure it's they're"),
            vec!["I", "'m", "sure", "it", "'s", "they", "'re"]
        );
        assert_eq!(tokenize("We'll've"), vec!["We", "'ll", "'ve"]);
        assert_eq!(tokenize("wouldn't've"), vec!["would", "n't", "'ve"]);
        assert_eq!(tokenize("I cannot"), vec!["I", "can", "not"]);
        assert_eq!(tokenize("won\u{2019}t"), vec!["wo", "n\u{2019}t"]);
        assert_eq!(tokenize("DON'T"), vec!["DO", "N'T"]);
    }

    #[test]
    fn punctuation() {
        assert_eq!(
            tokenize("(hello, world)..."),
            vec!["(", "hello", ",", "world", ")", "..."]
        );
        assert_eq!(
            tokenize("\"Stop it.\""),
            vec!["\"", "Stop", "it", ".", "\""]
        );
        assert_eq!(tokenize("$5.50."), vec!["$", "5.50", "."]);
        assert_eq!(tokenize("what?!"), vec!["what", "?", "!"]);
        assert_eq!(tokenize("well-known"), vec!["well-known"]);
    }

    #[test]
    fn abbreviations_keep_period() {
        assert_eq!(tokenize("Mr. Smith"), vec!["Mr.", "Smith"]);
        assert_eq!(tokenize("the U.S. economy"), vec!["the", "U.S.", "economy"]);
        assert_eq!(
            tokenize("J. R. R. Tolkien"),
            vec!["J.", "R.", "R.", "Tolkien"]
        );
        assert_eq!(tokenize("etc.)"), vec!["etc.", ")"]);
        assert_eq!(tokenize("e.g.,"), vec!["e.g.", ","]);
        assert_eq!(tokenize("no."), vec!["no", "."]);
        assert_eq!(tokenize("than I."), vec!["than", "I", "."]);
        assert_eq!(abbreviation_kind("Dr."), Some(AbbrevKind::Title));
        assert_eq!(abbreviation_kind("Inc."), Some(AbbrevKind::Plain));
        assert_eq!(abbreviation_kind("dog."), None);
    }

    proptest! {
        #[test]
        fn spans_are_lossless(text in "[ a-zA-Z0-9'.,!?\"()\u{2019}\n-]{0,60}") {
            let spans = token_spans(&text);
            let mut pos = 0;
            for r in &spans {
                prop_assert!(r.start >= pos && r.end > r.start);
                prop_assert!(text[pos..r.start].chars().all(char::is_whitespace));
                pos = r.end;
            }
            prop_assert!(text[pos..].chars().all(char::is_whitespace));
            let joined: String = spans.iter().map(|r| &text[r.clone()]).collect();
            let stripped: String = text.chars().filter(|c| !c.is_whitespace()).collect();
            prop_assert_eq!(joined, stripped);
        }
    }
}
