//! Comparison, readability and cue-length tables, with CSV and SVG output.

pub mod svg;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::corpus::{Platform, PromptVariant, Ses};
use crate::features::{
    column_index, family, feature_names, is_length_feature, FeatureFamily, FeatureMatrix, GroupKey,
    GroupLabel,
};
use crate::stats::{
    aggregate_log_ratio, check_alpha, compare_groups, frequency_ratios, group_means,
    mann_whitney_u, mean, MwuResult, StatsError,
};
use crate::surface::SCORE_NAMES;

pub use svg::{ablation_svg, forest_plot_spec, forest_svg, ForestPlotSpec, OmittedPoint};

/// Significance level for the human-vs-human feature comparison.
pub const COMPARISON_ALPHA: f64 = 0.01;
/// Significance level for readability stars, uncorrected.
pub const READABILITY_ALPHA: f64 = 0.05;

fn cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x}")).unwrap_or_default()
}

fn csv_line(fields: &[String]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(fields).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("fields are UTF-8")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub feature: String,
    pub family: FeatureFamily,
    pub n_lower: usize,
    pub n_upper: usize,
    pub mean_lower: Option<f64>,
    pub mean_upper: Option<f64>,
    pub u: Option<f64>,
    pub p: Option<f64>,
    pub significant: bool,
    /// One per entry of [`ComparisonReport::ratio_groups`].
    pub ratios: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub platform: Platform,
    pub anchor: String,
    pub alpha: f64,
    /// Anchor first, then every other group.
    pub ratio_groups: Vec<String>,
    /// Sorted by feature name.
    pub rows: Vec<ComparisonRow>,
    /// Features whose anchor mean is zero or absent.
    pub undefined: Vec<String>,
}

/// Tests every feature between lower- and upper-SES human text with Holm
/// correction, and computes each group's mean ratio to the anchor. `matrix`
/// should hold one platform.
pub fn build_comparison(
    matrix: &FeatureMatrix,
    platform: Platform,
    anchor: &GroupLabel,
    alpha: f64,
) -> Result<ComparisonReport, StatsError> {
    let features: Vec<&str> = feature_names().collect();
    let tests = compare_groups(
        matrix,
        &GroupLabel::human(Ses::Lower),
        &GroupLabel::human(Ses::Upper),
        &features,
        alpha,
    )?;
    let ratios = frequency_ratios(matrix, anchor, &features)?;
    let mut rows: Vec<ComparisonRow> = tests
        .into_iter()
        .enumerate()
        .map(|(f, t)| ComparisonRow {
            family: family(&t.feature).expect("known feature"),
            feature: t.feature,
            n_lower: t.n1,
            n_upper: t.n2,
            mean_lower: t.mean1,
            mean_upper: t.mean2,
            u: t.u,
            p: t.p,
            significant: t.significant_corrected,
            ratios: ratios.ratios.iter().map(|g| g[f]).collect(),
        })
        .collect();
    rows.sort_by(|a, b| a.feature.cmp(&b.feature));
    let mut undefined = ratios.undefined;
    undefined.sort();
    Ok(ComparisonReport {
        platform,
        anchor: ratios.anchor,
        alpha,
        ratio_groups: ratios.groups,
        rows,
        undefined,
    })
}

impl ComparisonReport {
    pub fn significant(&self) -> Vec<&str> {
        self.rows
            .iter()
            .filter(|r| r.significant)
            .map(|r| r.feature.as_str())
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut header: Vec<String> = [
            "feature",
            "n_lower",
            "n_upper",
            "mean_lower",
            "mean_upper",
            "U",
            "p",
            "significant",
        ]
        .map(String::from)
        .into();
        header.extend(self.ratio_groups.iter().map(|g| format!("ratio:{g}")));
        let mut out = csv_line(&header);
        for r in &self.rows {
            let mut fields = vec![
                r.feature.clone(),
                r.n_lower.to_string(),
                r.n_upper.to_string(),
                cell(r.mean_lower),
                cell(r.mean_upper),
                cell(r.u),
                cell(r.p),
                r.significant.to_string(),
            ];
            fields.extend(r.ratios.iter().map(|v| cell(*v)));
            out.push_str(&csv_line(&fields));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReadabilityTable {
    pub platform: Platform,
    pub groups: Vec<String>,
    /// `means[g][s]` for group `g` and score `s` in [`SCORE_NAMES`] order.
    pub means: Vec<Vec<Option<f64>>>,
    /// Lower vs upper human test per score; absent unless both groups exist.
    pub tests: Option<Vec<Option<MwuResult>>>,
    pub alpha: f64,
}

fn human_label(ses: Ses) -> String {
    GroupLabel::human(ses).to_string()
}

/// Per-group means of the seven readability scores. When both human groups
/// are present each score is also tested between them, uncorrected.
pub fn build_readability(
    matrix: &FeatureMatrix,
    platform: Platform,
    alpha: f64,
) -> Result<ReadabilityTable, StatsError> {
    check_alpha(alpha)?;
    let mut groups: Vec<String> = matrix.groups().iter().map(GroupKey::label).collect();
    groups.dedup();
    groups.sort_by_key(|g| (!g.ends_with("/human"), g.clone()));
    let columns: Vec<usize> = SCORE_NAMES
        .iter()
        .map(|s| column_index(s).expect("score column"))
        .collect();
    let means = groups
        .iter()
        .map(|g| {
            let label: GroupLabel = g.parse().expect("labels come from group keys");
            columns
                .iter()
                .map(|&c| mean(&matrix.column_values(c, |k| label.matches(k))))
                .collect()
        })
        .collect();
    let (lo, hi) = (human_label(Ses::Lower), human_label(Ses::Upper));
    let tests = (groups.contains(&lo) && groups.contains(&hi)).then(|| {
        columns
            .iter()
            .map(|&c| {
                let x = matrix.column_values(c, |k| GroupLabel::human(Ses::Lower).matches(k));
                let y = matrix.column_values(c, |k| GroupLabel::human(Ses::Upper).matches(k));
                mann_whitney_u(&x, &y).ok()
            })
            .collect()
    });
    Ok(ReadabilityTable {
        platform,
        groups,
        means,
        tests,
        alpha,
    })
}

impl ReadabilityTable {
    pub fn starred(&self, score: usize) -> bool {
        self.tests
            .as_ref()
            .and_then(|t| t[score])
            .is_some_and(|t| t.p < self.alpha)
    }

    pub fn mean(&self, group: &str, score: &str) -> Option<f64> {
        let g = self.groups.iter().position(|x| x == group)?;
        let s = SCORE_NAMES.iter().position(|x| *x == score)?;
        self.means[g][s]
    }

    fn is_tested_group(&self, group: &str) -> bool {
        self.tests.is_some()
            && (group == human_label(Ses::Lower) || group == human_label(Ses::Upper))
    }

    pub fn to_csv(&self) -> String {
        let mut header = vec!["metric".to_string()];
        header.extend(self.groups.iter().map(|g| format!("mean:{g}")));
        header.extend(["p", "significant"].map(String::from));
        let mut out = csv_line(&header);
        for (s, name) in SCORE_NAMES.iter().enumerate() {
            let mut fields = vec![name.to_string()];
            fields.extend(self.means.iter().map(|m| cell(m[s])));
            let test = self.tests.as_ref().and_then(|t| t[s]);
            fields.push(cell(test.map(|t| t.p)));
            fields.push(if self.tests.is_some() {
                self.starred(s).to_string()
            } else {
                String::new()
            });
            out.push_str(&csv_line(&fields));
        }
        out
    }

    /// Fixed-width table with two decimals; `*` marks p below alpha.
    pub fn to_text(&self) -> String {
        let width = self
            .groups
            .iter()
            .map(|g| g.len())
            .max()
            .unwrap_or(0)
            .max(8)
            + 2;
        let mut out = format!("{:<22}", "metric");
        for g in &self.groups {
            let _ = write!(out, "{g:>width$}");
        }
        out.push('\n');
        for (s, name) in SCORE_NAMES.iter().enumerate() {
            let _ = write!(out, "{name:<22}");
            for (g, group) in self.groups.iter().enumerate() {
                let star = if self.starred(s) && self.is_tested_group(group) {
                    "*"
                } else {
                    " "
                };
                let v = self.means[g][s]
                    .map(|v| format!("{v:.2}{star}"))
                    .unwrap_or_else(|| "-".into());
                let _ = write!(out, "{v:>width$}");
            }
            out.push('\n');
        }
        if self.tests.is_some() {
            let _ = writeln!(
                out,
                "* lower vs upper human, Mann-Whitney U p < {}",
                self.alpha
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AblationRow {
    pub cue_words: usize,
    pub ses: Ses,
    pub variant: PromptVariant,
    pub log_ratio: f64,
    pub features_used: usize,
    /// Features skipped for a missing or non-positive mean.
    pub excluded: Vec<String>,
}

/// Average absolute log ratio between completions and the held-out human
/// text, per cue length, SES group and prompt variant. Length features are
/// left out.
pub fn build_ablation(
    references: &BTreeMap<usize, FeatureMatrix>,
    completions: &BTreeMap<usize, FeatureMatrix>,
    model: &str,
    variants: &[PromptVariant],
) -> Result<Vec<AblationRow>, StatsError> {
    let features: Vec<&str> = feature_names().filter(|f| !is_length_feature(f)).collect();
    let mut rows = Vec::new();
    for (&cue, reference) in references {
        let completed = completions
            .get(&cue)
            .ok_or_else(|| StatsError::MissingGroup(format!("completions for cue length {cue}")))?;
        for &variant in variants {
            for ses in [Ses::Lower, Ses::Upper] {
                let human = GroupLabel::human(ses);
                let label = GroupLabel {
                    ses,
                    author: model.into(),
                    prompt_variant: Some(variant),
                };
                for (g, m) in [(&human, reference), (&label, completed)] {
                    if !m.rows.iter().any(|r| g.matches(&r.key)) {
                        return Err(StatsError::MissingGroup(format!("{g} at cue length {cue}")));
                    }
                }
                let hm = group_means(reference, &features, |k| human.matches(k));
                let mm = group_means(completed, &features, |k| label.matches(k));
                let agg = aggregate_log_ratio(&mm, &hm, &features)?;
                rows.push(AblationRow {
                    cue_words: cue,
                    ses,
                    variant,
                    log_ratio: agg.value,
                    features_used: agg.used.len(),
                    excluded: agg.excluded,
                });
            }
        }
    }
    Ok(rows)
}

pub fn ablation_csv(rows: &[AblationRow]) -> String {
    let header = [
        "cue_words",
        "ses",
        "variant",
        "log_ratio",
        "features_used",
        "features_excluded",
    ]
    .map(String::from);
    let mut out = csv_line(&header);
    for r in rows {
        out.push_str(&csv_line(&[
            r.cue_words.to_string(),
            r.ses.to_string(),
            r.variant.to_string(),
            format!("{}", r.log_ratio),
            r.features_used.to_string(),
            r.excluded.len().to_string(),
        ]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Author;
    use crate::features::{FeatureRow, COLUMN_COUNT};

    fn row(i: usize, ses: Ses, author: &str, variant: Option<PromptVariant>, v: f64) -> FeatureRow {
        FeatureRow {
            instance_id: format!("r{i}"),
            key: GroupKey {
                platform: Platform::Reddit,
                ses,
                author: Author::from(author),
                prompt_variant: variant,
            },
            values: (0..COLUMN_COUNT)
                .map(|c| Some(v + c as f64 + (i % 3) as f64))
                .collect(),
        }
    }

    fn matrix() -> FeatureMatrix {
        let mut rows = Vec::new();
        for i in 0..6 {
            rows.push(row(i, Ses::Lower, "human", None, 1.0));
            rows.push(row(i, Ses::Upper, "human", None, 1.0));
            rows.push(row(i, Ses::Lower, "m", Some(PromptVariant::Imp), 2.0));
        }
        FeatureMatrix::new(rows)
    }

    #[test]
    fn comparison_csv_shape() {
        let r = build_comparison(
            &matrix(),
            Platform::Reddit,
            &GroupLabel::human(Ses::Lower),
            0.01,
        )
        .unwrap();
        assert_eq!(r.rows.len(), 94);
        assert!(r.significant().is_empty());
        assert_eq!(
            r.ratio_groups,
            vec!["lower/human", "lower/m/imp", "upper/human"]
        );
        let csv = r.to_csv();
        let header = csv.lines().next().unwrap();
        assert_eq!(
            header,
            "feature,n_lower,n_upper,mean_lower,mean_upper,U,p,significant,ratio:lower/human,ratio:lower/m/imp,ratio:upper/human"
        );
        assert_eq!(csv.lines().count(), 95);
        assert!(r.rows.iter().all(|row| row.ratios[0] == Some(1.0)));
    }

    #[test]
    fn readability_single_group_has_no_stars() {
        let m = FeatureMatrix::new(
            (0..4)
                .map(|i| row(i, Ses::Lower, "human", None, 1.0))
                .collect(),
        );
        let t = build_readability(&m, Platform::Reddit, 0.05).unwrap();
        assert_eq!(t.groups, vec!["lower/human"]);
        assert!(t.tests.is_none());
        assert!(!t.to_text().contains('*'));
        assert_eq!(
            t.to_csv().lines().next().unwrap(),
            "metric,mean:lower/human,p,significant"
        );
    }

    #[test]
    fn ablation_rows() {
        let m = matrix();
        let refs: BTreeMap<usize, FeatureMatrix> = [(20, m.clone()), (40, m.clone())].into();
        let comp = refs.clone();
        assert!(build_ablation(&refs, &comp, "m", &[PromptVariant::Imp]).is_err());
        let mut m2 = m.clone();
        m2.rows
            .extend((0..3).map(|i| row(i, Ses::Upper, "m", Some(PromptVariant::Imp), 1.0)));
        let comp: BTreeMap<usize, FeatureMatrix> = [(20, m2.clone()), (40, m2)].into();
        let rows = build_ablation(&refs, &comp, "m", &[PromptVariant::Imp]).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.features_used == 86));
        let upper = rows.iter().find(|r| r.ses == Ses::Upper).unwrap();
        assert!(upper.log_ratio.abs() < 1e-12);
        assert!(rows.iter().find(|r| r.ses == Ses::Lower).unwrap().log_ratio > 0.0);
        assert_eq!(ablation_csv(&rows).lines().count(), 5);
    }
}
