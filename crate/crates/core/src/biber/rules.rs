use std::collections::BTreeSet;
use std::sync::LazyLock;

use serde::Serialize;

use super::lexicon::Lexicons;
use super::pattern::Pattern;
use super::{BiberError, FEATURE_NAMES};

const BUNDLED_RULES: &str = include_str!("../../data/biber_rules.txt");

/// Features computed directly rather than by pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    TypeToken,
    MeanWordLength,
}

#[derive(Debug, Clone)]
pub struct FeatureRule {
    pub name: String,
    pub gloss: String,
    pub example: String,
    pub needs_xpos: bool,
    pub matches: Vec<Pattern>,
    pub approx: Vec<Pattern>,
    pub measure: Option<Measure>,
}

impl FeatureRule {
    fn new(name: &str) -> Self {
        FeatureRule {
            name: name.to_string(),
            gloss: String::new(),
            example: String::new(),
            needs_xpos: false,
            matches: Vec::new(),
            approx: Vec::new(),
            measure: None,
        }
    }

    /// Patterns to run on a document with or without fine-grained tags.
    pub fn patterns(&self, has_xpos: bool) -> &[Pattern] {
        if self.needs_xpos && !has_xpos && !self.approx.is_empty() {
            &self.approx
        } else {
            &self.matches
        }
    }
}

#[derive(Debug, Clone)]
pub struct RuleTable {
    rules: Vec<FeatureRule>,
}

static BUNDLED: LazyLock<RuleTable> =
    LazyLock::new(|| RuleTable::parse(BUNDLED_RULES).expect("bundled rule table parses"));

impl RuleTable {
    pub fn bundled() -> &'static RuleTable {
        &BUNDLED
    }

    /// Parses a rule file. Syntax errors fail; missing or extra features do not
    /// (see [`audit`]).
    pub fn parse(text: &str) -> Result<RuleTable, BiberError> {
        let mut rules: Vec<FeatureRule> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| BiberError::RuleSyntax {
                line: line_no,
                message,
            };
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                rules.push(FeatureRule::new(name.trim()));
                continue;
            }
            let rule = rules
                .last_mut()
                .ok_or_else(|| err("entry before any [feature] header".into()))?;
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| err(format!("expected `key: value`, got `{line}`")))?;
            let value = value.trim();
            match key.trim() {
                "gloss" => rule.gloss = value.to_string(),
                "example" => rule.example = value.to_string(),
                "needs" => match value {
                    "xpos" => rule.needs_xpos = true,
                    other => return Err(err(format!("unknown requirement `{other}`"))),
                },
                "match" => rule
                    .matches
                    .push(Pattern::parse(value).map_err(|e| err(e.to_string()))?),
                "approx" => rule
                    .approx
                    .push(Pattern::parse(value).map_err(|e| err(e.to_string()))?),
                "measure" => {
                    rule.measure = Some(match value {
                        "type_token" => Measure::TypeToken,
                        "mean_word_length" => Measure::MeanWordLength,
                        other => return Err(err(format!("unknown measure `{other}`"))),
                    })
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        Ok(RuleTable { rules })
    }

    pub fn rules(&self) -> &[FeatureRule] {
        &self.rules
    }

    pub fn get(&self, name: &str) -> Option<&FeatureRule> {
        self.rules.iter().find(|r| r.name == name)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub rule_count: usize,
    /// Expected features with no rule entry.
    pub missing: Vec<String>,
    /// Features with more than one entry.
    pub duplicates: Vec<String>,
    /// Entries that name no known feature.
    pub unknown: Vec<String>,
    /// Entries with neither a pattern nor a measure.
    pub empty: Vec<String>,
    /// Word lists referenced by a rule that do not exist or are empty.
    pub bad_lists: Vec<String>,
    /// Features whose faithful rule reads fine-grained tags.
    pub needs_xpos: Vec<String>,
    /// Features needing dependency columns; none of the bundled rules do.
    pub needs_deps: Vec<String>,
}

impl AuditReport {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
            && self.duplicates.is_empty()
            && self.unknown.is_empty()
            && self.empty.is_empty()
            && self.bad_lists.is_empty()
    }
}

pub fn audit(table: &RuleTable, lex: &Lexicons) -> AuditReport {
    let mut report = AuditReport {
        rule_count: table.rules.len(),
        ..Default::default()
    };
    let mut seen = BTreeSet::new();
    let mut bad_lists = BTreeSet::new();
    for rule in &table.rules {
        if !seen.insert(rule.name.as_str()) {
            report.duplicates.push(rule.name.clone());
        }
        if !FEATURE_NAMES.contains(&rule.name.as_str()) {
            report.unknown.push(rule.name.clone());
        }
        if rule.matches.is_empty() && rule.measure.is_none() {
            report.empty.push(rule.name.clone());
        }
        if rule.needs_xpos {
            report.needs_xpos.push(rule.name.clone());
        }
        for p in rule.matches.iter().chain(&rule.approx) {
            for list in p.lists() {
                if lex.get(list).is_none_or(|l| l.is_empty()) {
                    bad_lists.insert(list.clone());
                }
            }
        }
    }
    report.missing = FEATURE_NAMES
        .iter()
        .filter(|n| !seen.contains(*n))
        .map(|n| n.to_string())
        .collect();
    report.bad_lists = bad_lists.into_iter().collect();
    report
}

/// Audits the bundled rule table against the bundled word lists.
pub fn rule_table_audit() -> AuditReport {
    audit(RuleTable::bundled(), Lexicons::bundled())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_is_complete() {
        let report = rule_table_audit();
        assert_eq!(report.rule_count, 67);
        assert!(report.is_complete(), "{report:?}");
        assert!(report.needs_xpos.contains(&"gerunds".to_string()));
        assert!(report.needs_deps.is_empty());
    }

    #[test]
    fn rules_in_canonical_order() {
        let names: Vec<&str> = RuleTable::bundled()
            .rules()
            .iter()
            .map(|r| r.name.as_str())
            .collect();
        assert_eq!(names, FEATURE_NAMES);
    }

    #[test]
    fn xpos_rules_have_approximations() {
        for rule in RuleTable::bundled().rules() {
            if rule.needs_xpos {
                assert!(!rule.approx.is_empty(), "{} lacks approx", rule.name);
            }
            for p in &rule.approx {
                assert!(!p.uses_xpos(), "{} approx reads xpos", rule.name);
            }
        }
    }

    #[test]
    fn deleted_entry_is_reported() {
        let text: String = BUNDLED_RULES
            .split("\n[")
            .filter(|block| !block.starts_with("hedges]"))
            .collect::<Vec<_>>()
            .join("\n[");
        let table = RuleTable::parse(&text).unwrap();
        let report = audit(&table, Lexicons::bundled());
        assert_eq!(report.rule_count, 66);
        assert_eq!(report.missing, vec!["hedges".to_string()]);
        assert!(!report.is_complete());
    }

    #[test]
    fn syntax_errors_carry_line() {
        match RuleTable::parse("[a]\nmatch: [lower=x\n") {
            Err(BiberError::RuleSyntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(RuleTable::parse("match: [lower=x]\n").is_err());
    }

    #[test]
    fn missing_list_is_reported() {
        let table = RuleTable::parse("[neg_analytic]\nmatch: ^[lower=@nonexistent]\n").unwrap();
        let report = audit(&table, Lexicons::bundled());
        assert_eq!(report.bad_lists, vec!["nonexistent".to_string()]);
    }
}
