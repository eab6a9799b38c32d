//! Token-window patterns.
//!
//! ```text
//! [lower=to & upos=PART]   one token satisfying every condition
//! [xpos!=RP|IN]            negated condition; values are alternatives
//! [lower=*ing]             `*` as a leading or trailing wildcard
//! [lower=@be]              single-word membership in a word list
//! @conjuncts               any (possibly multi-word) entry of a word list
//! _                        any token
//! <s> </s>                 clause edge: only punctuation before / after
//! ( a b | c )              alternatives
//! !( ... )                 negative lookahead
//! !<( ... )                negative lookbehind
//! ? * + {m,n} {m}          quantifiers
//! ^                        the next element's position is the counted anchor
//! ```
//!
//! Without `^`, the match start is the anchor.

use std::collections::BTreeSet;
use std::fmt;

use super::lexicon::Lexicons;
use crate::annotate::{Token, Upos};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Key {
    Form,
    Lower,
    Upos,
    Xpos,
}

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Exact(String),
    Prefix(String),
    Suffix(String),
    List(String),
}

#[derive(Debug, Clone, PartialEq)]
struct Cond {
    key: Key,
    negate: bool,
    values: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Test(Vec<Cond>),
    Phrase(String),
    Any,
    ClauseStart,
    ClauseEnd,
    Anchor,
    Alt(Vec<Vec<Node>>),
    Repeat(Box<Node>, usize, usize),
    NotAhead(Vec<Vec<Node>>),
    NotBehind(Vec<Vec<Node>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternError {
    pub pattern: String,
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at offset {} in `{}`",
            self.message, self.offset, self.pattern
        )
    }
}

impl std::error::Error for PatternError {}

/// A compiled pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    source: String,
    nodes: Vec<Node>,
    anchored: bool,
    uses_xpos: bool,
    lists: Vec<String>,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    lists: Vec<String>,
    uses_xpos: bool,
    anchors: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> PatternError {
        PatternError {
            pattern: self.src.to_string(),
            offset: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn alts(&mut self) -> Result<Vec<Vec<Node>>, PatternError> {
        let mut alts = vec![self.seq()?];
        while self.eat("|") {
            alts.push(self.seq()?);
        }
        Ok(alts)
    }

    fn seq(&mut self) -> Result<Vec<Node>, PatternError> {
        let mut nodes = Vec::new();
        loop {
            self.skip_ws();
            if self.rest().is_empty() || self.rest().starts_with(['|', ')']) {
                return Ok(nodes);
            }
            if self.eat("^") {
                self.anchors += 1;
                nodes.push(Node::Anchor);
            }
            let atom = self.atom()?;
            nodes.push(self.quantified(atom)?);
        }
    }

    fn group(&mut self) -> Result<Vec<Vec<Node>>, PatternError> {
        let alts = self.alts()?;
        if !self.eat(")") {
            return Err(self.err("expected `)`"));
        }
        Ok(alts)
    }

    fn atom(&mut self) -> Result<Node, PatternError> {
        self.skip_ws();
        if self.eat("!<(") {
            return Ok(Node::NotBehind(self.group()?));
        }
        if self.eat("!(") {
            return Ok(Node::NotAhead(self.group()?));
        }
        if self.eat("(") {
            return Ok(Node::Alt(self.group()?));
        }
        if self.eat("</s>") {
            return Ok(Node::ClauseEnd);
        }
        if self.eat("<s>") {
            return Ok(Node::ClauseStart);
        }
        if self.eat("_") {
            return Ok(Node::Any);
        }
        if self.eat("@") {
            let name = self.name();
            if name.is_empty() {
                return Err(self.err("expected list name after `@`"));
            }
            self.lists.push(name.clone());
            return Ok(Node::Phrase(name));
        }
        if self.eat("[") {
            let end = self
                .rest()
                .find(']')
                .ok_or_else(|| self.err("unclosed `[`"))?;
            let body = &self.rest()[..end];
            let start = self.pos;
            let conds = body
                .split('&')
                .map(|c| self.cond(c.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|mut e| {
                    e.offset = start;
                    e
                })?;
            self.pos += end + 1;
            return Ok(Node::Test(conds));
        }
        Err(self.err("expected a pattern element"))
    }

    fn name(&mut self) -> String {
        let len = self
            .rest()
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        let name = self.rest()[..len].to_string();
        self.pos += len;
        name
    }

    fn cond(&mut self, text: &str) -> Result<Cond, PatternError> {
        let (key, negate, values) = if let Some((k, v)) = text.split_once("!=") {
            (k, true, v)
        } else if let Some((k, v)) = text.split_once('=') {
            (k, false, v)
        } else {
            return Err(self.err(format!("condition `{text}` lacks `=`")));
        };
        let key = match key.trim() {
            "form" => Key::Form,
            "lower" => Key::Lower,
            "upos" => Key::Upos,
            "xpos" => {
                self.uses_xpos = true;
                Key::Xpos
            }
            other => return Err(self.err(format!("unknown key `{other}`"))),
        };
        let values = values
            .split('|')
            .map(str::trim)
            .map(|v| {
                if let Some(name) = v.strip_prefix('@') {
                    self.lists.push(name.to_string());
                    Ok(Value::List(name.to_string()))
                } else if v.len() > 1 && v.starts_with('*') {
                    Ok(Value::Suffix(v[1..].to_string()))
                } else if v.len() > 1 && v.ends_with('*') {
                    Ok(Value::Prefix(v[..v.len() - 1].to_string()))
                } else if v.is_empty() {
                    Err(self.err("empty value"))
                } else {
                    Ok(Value::Exact(v.to_string()))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        if key == Key::Upos {
            for v in &values {
                if let Value::Exact(tag) = v {
                    tag.parse::<Upos>().map_err(|e| self.err(e))?;
                }
            }
        }
        Ok(Cond {
            key,
            negate,
            values,
        })
    }

    fn quantified(&mut self, atom: Node) -> Result<Node, PatternError> {
        if self.rest().starts_with('?') {
            self.pos += 1;
            return Ok(Node::Repeat(Box::new(atom), 0, 1));
        }
        if self.rest().starts_with('*') {
            self.pos += 1;
            return Ok(Node::Repeat(Box::new(atom), 0, usize::MAX));
        }
        if self.rest().starts_with('+') {
            self.pos += 1;
            return Ok(Node::Repeat(Box::new(atom), 1, usize::MAX));
        }
        if self.rest().starts_with('{') {
            let end = self
                .rest()
                .find('}')
                .ok_or_else(|| self.err("unclosed `{`"))?;
            let body = &self.rest()[1..end];
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| self.err(format!("bad repeat count `{s}`")))
            };
            let (lo, hi) = match body.split_once(',') {
                Some((a, b)) => (parse(a)?, parse(b)?),
                None => {
                    let k = parse(body)?;
                    (k, k)
                }
            };
            if lo > hi {
                return Err(self.err("repeat minimum exceeds maximum"));
            }
            self.pos += end + 1;
            return Ok(Node::Repeat(Box::new(atom), lo, hi));
        }
        Ok(atom)
    }
}

impl Pattern {
    pub fn parse(source: &str) -> Result<Pattern, PatternError> {
        let mut p = Parser {
            src: source,
            pos: 0,
            lists: Vec::new(),
            uses_xpos: false,
            anchors: 0,
        };
        let alts = p.alts()?;
        p.skip_ws();
        if !p.rest().is_empty() {
            return Err(p.err("unexpected input"));
        }
        if p.anchors > 1 {
            return Err(p.err("more than one `^` anchor"));
        }
        let nodes = if alts.len() == 1 {
            alts.into_iter().next().unwrap_or_default()
        } else {
            vec![Node::Alt(alts)]
        };
        if nodes.is_empty() {
            return Err(p.err("empty pattern"));
        }
        let mut lists = p.lists;
        lists.sort();
        lists.dedup();
        Ok(Pattern {
            source: source.to_string(),
            nodes,
            anchored: p.anchors == 1,
            uses_xpos: p.uses_xpos,
            lists,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn uses_xpos(&self) -> bool {
        self.uses_xpos
    }

    /// Word lists the pattern refers to.
    pub fn lists(&self) -> &[String] {
        &self.lists
    }

    /// Adds the anchor positions of every match within `sentence` to `out`.
    pub fn collect_anchors(
        &self,
        sentence: &Sentence<'_>,
        lex: &Lexicons,
        out: &mut BTreeSet<usize>,
    ) {
        let m = Matcher { s: sentence, lex };
        for start in 0..sentence.len() {
            let mut record = |_end: usize, anchor: Option<usize>| {
                let a = anchor.unwrap_or(start);
                if a < sentence.len() {
                    out.insert(a);
                }
                !self.anchored
            };
            m.run(&self.nodes, start, None, &mut record);
        }
    }

    /// Number of distinct anchor positions matched in `sentence`.
    pub fn count(&self, sentence: &Sentence<'_>, lex: &Lexicons) -> usize {
        let mut set = BTreeSet::new();
        self.collect_anchors(sentence, lex, &mut set);
        set.len()
    }
}

/// A sentence prepared for matching.
pub struct Sentence<'a> {
    tokens: &'a [Token],
    lowers: Vec<&'a str>,
}

impl<'a> Sentence<'a> {
    pub fn new(tokens: &'a [Token]) -> Self {
        Sentence {
            tokens,
            lowers: tokens.iter().map(|t| t.lower.as_str()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

struct Matcher<'s, 'a> {
    s: &'s Sentence<'a>,
    lex: &'s Lexicons,
}

type Cont<'c> = dyn FnMut(usize, Option<usize>) -> bool + 'c;

fn value_matches(v: &Value, text: &str, lex: &Lexicons) -> bool {
    match v {
        Value::Exact(x) => x == text,
        Value::Prefix(x) => text.len() > x.len() && text.starts_with(x.as_str()),
        Value::Suffix(x) => text.len() > x.len() && text.ends_with(x.as_str()),
        Value::List(name) => lex.get(name).is_some_and(|l| l.contains(text)),
    }
}

fn test_token(conds: &[Cond], t: &Token, lex: &Lexicons) -> bool {
    conds.iter().all(|c| {
        let text = match c.key {
            Key::Form => Some(t.form.as_str()),
            Key::Lower => Some(t.lower.as_str()),
            Key::Upos => Some(t.upos.as_str()),
            Key::Xpos => t.xpos.as_deref(),
        };
        let hit = text.is_some_and(|text| c.values.iter().any(|v| value_matches(v, text, lex)));
        hit != c.negate
    })
}

impl Matcher<'_, '_> {
    fn n(&self) -> usize {
        self.s.len()
    }

    fn is_punct(&self, i: usize) -> bool {
        self.s.tokens[i].upos == Upos::PUNCT
    }

    /// Calls `k` with (end, anchor) for every way `nodes` matches from `pos`;
    /// stops early and returns true once `k` returns true.
    fn run(&self, nodes: &[Node], pos: usize, anchor: Option<usize>, k: &mut Cont<'_>) -> bool {
        let Some((first, rest)) = nodes.split_first() else {
            return k(pos, anchor);
        };
        match first {
            Node::Test(conds) => {
                pos < self.n()
                    && test_token(conds, &self.s.tokens[pos], self.lex)
                    && self.run(rest, pos + 1, anchor, k)
            }
            Node::Any => pos < self.n() && self.run(rest, pos + 1, anchor, k),
            Node::Phrase(name) => {
                let Some(list) = self.lex.get(name) else {
                    return false;
                };
                let lens: Vec<usize> = list
                    .match_lengths(&self.s.lowers[pos.min(self.n())..])
                    .collect();
                lens.into_iter()
                    .any(|len| self.run(rest, pos + len, anchor, k))
            }
            Node::ClauseStart => {
                (0..pos).all(|i| self.is_punct(i)) && self.run(rest, pos, anchor, k)
            }
            Node::ClauseEnd => {
                (pos..self.n()).all(|i| self.is_punct(i)) && self.run(rest, pos, anchor, k)
            }
            Node::Anchor => self.run(rest, pos, Some(pos), k),
            Node::Alt(alts) => alts
                .iter()
                .any(|alt| self.run(alt, pos, anchor, &mut |p, a| self.run(rest, p, a, k))),
            Node::Repeat(node, lo, hi) => self.repeat(node, *lo, *hi, 0, rest, pos, anchor, k),
            Node::NotAhead(alts) => !self.matches_at(alts, pos) && self.run(rest, pos, anchor, k),
            Node::NotBehind(alts) => !self.ends_at(alts, pos) && self.run(rest, pos, anchor, k),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn repeat(
        &self,
        node: &Node,
        lo: usize,
        hi: usize,
        done: usize,
        rest: &[Node],
        pos: usize,
        anchor: Option<usize>,
        k: &mut Cont<'_>,
    ) -> bool {
        if done < hi {
            let one = std::slice::from_ref(node);
            let stop = self.run(one, pos, anchor, &mut |p, a| {
                // a zero-width iteration cannot make progress
                p > pos && self.repeat(node, lo, hi, done + 1, rest, p, a, k)
            });
            if stop {
                return true;
            }
        }
        done >= lo && self.run(rest, pos, anchor, k)
    }

    fn matches_at(&self, alts: &[Vec<Node>], pos: usize) -> bool {
        alts.iter()
            .any(|alt| self.run(alt, pos, None, &mut |_, _| true))
    }

    fn ends_at(&self, alts: &[Vec<Node>], pos: usize) -> bool {
        (0..=pos).rev().any(|start| {
            alts.iter()
                .any(|alt| self.run(alt, start, None, &mut |end, _| end == pos))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::tag;

    fn count(pattern: &str, text: &str) -> usize {
        let forms: Vec<&str> = text.split_whitespace().collect();
        let doc = tag("t", &[forms]);
        let p = Pattern::parse(pattern).unwrap();
        p.count(&Sentence::new(&doc.sentences[0]), Lexicons::bundled())
    }

    #[test]
    fn token_tests() {
        assert_eq!(count("[lower=the]", "The dog saw the cat"), 2);
        assert_eq!(count("[upos=NOUN]", "The dog saw the cat"), 2);
        assert_eq!(count("[lower=*at]", "The cat sat on a mat"), 3);
        assert_eq!(count("[lower!=the & upos=DET]", "The dog saw a cat"), 1);
        assert_eq!(count("[lower=@first_person]", "I told my mother"), 2);
    }

    #[test]
    fn anchors_and_context() {
        assert_eq!(count("[upos=DET] ^[upos=NOUN]", "the dog saw the cat"), 2);
        assert_eq!(
            count(
                "[upos=ADJ] ^[lower=that] [upos=PRON]",
                "I 'm glad that you like it"
            ),
            1
        );
    }

    #[test]
    fn quantifiers() {
        assert_eq!(
            count(
                "^[lower=to] [upos=ADV]* [upos=VERB]",
                "He wants to convincingly prove that"
            ),
            1
        );
        assert_eq!(
            count(
                "^[lower=to] [upos=ADV]+ [upos=VERB]",
                "He wants to prove that"
            ),
            0
        );
        assert_eq!(count("[lower=a]{2}", "a a a"), 2);
        assert_eq!(count("[lower=a]{2,3} [lower=b]", "a a a b"), 2);
    }

    #[test]
    fn phrases_and_edges() {
        assert_eq!(count("@hedges", "it is more or less done"), 1);
        assert_eq!(count("<s> ^[lower=well]", "Well , I went"), 1);
        assert_eq!(count("<s> ^[lower=well]", "I did well"), 0);
        assert_eq!(count("^[upos=ADP] </s>", "the one I was thinking of ."), 1);
    }

    #[test]
    fn lookaround() {
        assert_eq!(count("^[lower=because] !([lower=of])", "because of it"), 0);
        assert_eq!(
            count("^[lower=because] !([lower=of])", "because it rained"),
            1
        );
        assert_eq!(
            count(
                "!<([upos=DET]) ^[lower=kind] [lower=of]",
                "it was kind of fun"
            ),
            1
        );
        assert_eq!(
            count("!<([upos=DET]) ^[lower=kind] [lower=of]", "a kind of fish"),
            0
        );
    }

    #[test]
    fn alternatives() {
        assert_eq!(
            count("(<s> | [upos=PUNCT]) ^[upos=NOUN]", "Dogs bark , cats meow"),
            2
        );
    }

    #[test]
    fn parse_errors() {
        assert!(Pattern::parse("[lower=a").is_err());
        assert!(Pattern::parse("[upos=NOPE]").is_err());
        assert!(Pattern::parse("^[lower=a] ^[lower=b]").is_err());
        assert!(Pattern::parse("(a").is_err());
        assert!(Pattern::parse("").is_err());
        assert!(Pattern::parse("[bogus=x]").is_err());
    }

    #[test]
    fn reports_metadata() {
        let p = Pattern::parse("[xpos=VBD] @hedges [lower=@be]").unwrap();
        assert!(p.uses_xpos());
        assert_eq!(p.lists(), ["be".to_string(), "hedges".to_string()]);
    }
}
