use std::ops::Range;

use super::tokenize::{abbreviation_kind, AbbrevKind};

fn is_terminal(form: &str) -> bool {
    !form.is_empty()
        && form
            .chars()
            .all(|c| matches!(c, '.' | '!' | '?' | '\u{2026}'))
}

fn is_ellipsis(form: &str) -> bool {
    form.contains('\u{2026}') || (form.len() > 1 && form.chars().all(|c| c == '.'))
}

fn is_closer(form: &str) -> bool {
    form.chars().all(|c| {
        matches!(
            c,
            '"' | '\'' | ')' | ']' | '}' | '\u{201D}' | '\u{2019}' | '\u{BB}'
        )
    })
}

fn starts_upper(form: &str) -> bool {
    form.chars().next().is_some_and(char::is_uppercase)
}

/// Splits tokens (given as byte spans into `text`) into sentences, returned as token
/// index ranges. A boundary follows `.`, `!` or `?`, together with any closing quotes
/// or brackets attached to it. Ellipses and plain abbreviations end a sentence only
/// before a capitalized word; titles and initials never do. A blank line is also a
/// boundary.
pub fn segment_sentences(text: &str, spans: &[Range<usize>]) -> Vec<Range<usize>> {
    let n = spans.len();
    let form = |i: usize| &text[spans[i].clone()];
    let attached = |i: usize| spans[i].start == spans[i - 1].end;
    let mut out = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < n {
        let f = form(i);
        let mut cut = None;
        if is_terminal(f) {
            let mut j = i + 1;
            while j < n && attached(j) && (is_terminal(form(j)) || is_closer(form(j))) {
                j += 1;
            }
            let next_upper = j < n && starts_upper(form(j));
            if !is_ellipsis(f) || next_upper || j == n {
                cut = Some(j);
            } else {
                i = j;
                continue;
            }
        } else if f.ends_with('.') && f.len() > 1 {
            if let Some(AbbrevKind::Plain) = abbreviation_kind(f) {
                if i + 1 < n && starts_upper(form(i + 1)) {
                    cut = Some(i + 1);
                }
            }
        }
        if cut.is_none()
            && i + 1 < n
            && text[spans[i].end..spans[i + 1].start].matches('\n').count() >= 2
        {
            cut = Some(i + 1);
        }
        match cut {
            Some(j) => {
                if j > start {
                    out.push(start..j);
                }
                start = j;
                i = j;
            }
            None => i += 1,
        }
    }
    if start < n {
        out.push(start..n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::tokenize::token_spans;

    fn split(text: &str) -> Vec<String> {
        let spans = token_spans(text);
        segment_sentences(text, &spans)
            .into_iter()
            .map(|r| text[spans[r.start].start..spans[r.end - 1].end].to_string())
            .collect()
    }

    #[test]
    fn three_terminators() {
        assert_eq!(split("One. Two! Three?").len(), 3);
    }

    #[test]
    fn no_terminator_is_one_sentence() {
        assert_eq!(
            split("just some words with no end"),
            vec!["just some words with no end"]
        );
        assert!(split("").is_empty());
    }

    #[test]
    fn abbreviations_and_quotes() {
        assert_eq!(split("Mr. Smith left."), vec!["Mr. Smith left."]);
        assert_eq!(
            split("He said \"stop it.\" Then he left."),
            vec!["He said \"stop it.\"", "Then he left."]
        );
        assert_eq!(split("Wait... what? Yes."), vec!["Wait... what?", "Yes."]);
        assert_eq!(split("Really?! Yes."), vec!["Really?!", "Yes."]);
        assert_eq!(
            split("It was Acme Inc. They paid."),
            vec!["It was Acme Inc.", "They paid."]
        );
    }

    #[test]
    fn blank_line_breaks() {
        assert_eq!(
            split("first part\n\nsecond part"),
            vec!["first part", "second part"]
        );
        assert_eq!(split("one line\ncontinues"), vec!["one line\ncontinues"]);
    }
}
