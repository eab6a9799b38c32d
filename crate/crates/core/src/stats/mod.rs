//! Group comparisons over a feature matrix.

pub mod mwu;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::corpus::Ses;
use crate::features::{column_index, FeatureMatrix, GroupKey, GroupLabel};
pub use mwu::{mann_whitney_u, u_distribution, MwuResult, EXACT_MAX_N};

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("cannot test an empty sample")]
    EmptySample,
    #[error("group {0} has no rows")]
    MissingGroup(String),
    #[error("alpha must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),
    #[error("unknown feature {0}")]
    UnknownFeature(String),
    #[error("no feature has positive means in both groups")]
    NoUsableFeatures,
}

pub fn check_alpha(alpha: f64) -> Result<(), StatsError> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(StatsError::InvalidAlpha(alpha))
    }
}

/// Holm's step-down procedure. Flags come back in input order.
pub fn holm_bonferroni(pvals: &[f64], alpha: f64) -> Vec<bool> {
    let m = pvals.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| pvals[a].total_cmp(&pvals[b]).then(a.cmp(&b)));
    let mut reject = vec![false; m];
    for (k, &i) in order.iter().enumerate() {
        if pvals[i] <= alpha / (m - k) as f64 {
            reject[i] = true;
        } else {
            break;
        }
    }
    reject
}

/// Mean with the values summed in sorted order, so equal multisets give
/// bit-identical means.
pub fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Some(v.iter().sum::<f64>() / v.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestResult {
    pub feature: String,
    pub n1: usize,
    pub n2: usize,
    pub mean1: Option<f64>,
    pub mean2: Option<f64>,
    /// Missing when either group has no values for the feature.
    pub u: Option<f64>,
    pub p: Option<f64>,
    pub significant_corrected: bool,
}

/// Tests every named feature between groups `a` and `b`, then applies Holm's
/// correction at `alpha` over the features that could be tested.
pub fn compare_groups(
    matrix: &FeatureMatrix,
    a: &GroupLabel,
    b: &GroupLabel,
    features: &[&str],
    alpha: f64,
) -> Result<Vec<TestResult>, StatsError> {
    check_alpha(alpha)?;
    for g in [a, b] {
        if !matrix.rows.iter().any(|r| g.matches(&r.key)) {
            return Err(StatsError::MissingGroup(g.to_string()));
        }
    }
    let columns: Vec<usize> = features
        .iter()
        .map(|f| column_index(f).ok_or_else(|| StatsError::UnknownFeature(f.to_string())))
        .collect::<Result<_, _>>()?;
    let mut results: Vec<TestResult> = features
        .par_iter()
        .zip(columns.par_iter())
        .map(|(name, &col)| {
            let x = matrix.column_values(col, |k| a.matches(k));
            let y = matrix.column_values(col, |k| b.matches(k));
            let test = mann_whitney_u(&x, &y).ok();
            TestResult {
                feature: name.to_string(),
                n1: x.len(),
                n2: y.len(),
                mean1: mean(&x),
                mean2: mean(&y),
                u: test.map(|t| t.u),
                p: test.map(|t| t.p),
                significant_corrected: false,
            }
        })
        .collect();
    let tested: Vec<usize> = (0..results.len())
        .filter(|&i| results[i].p.is_some())
        .collect();
    let pvals: Vec<f64> = tested.iter().filter_map(|&i| results[i].p).collect();
    for (&i, flag) in tested.iter().zip(holm_bonferroni(&pvals, alpha)) {
        results[i].significant_corrected = flag;
    }
    Ok(results)
}

/// Features that differ between lower- and upper-SES human text at `alpha`
/// after correction, in the order given.
pub fn significant_feature_set(
    matrix: &FeatureMatrix,
    features: &[&str],
    alpha: f64,
) -> Result<Vec<String>, StatsError> {
    let results = compare_groups(
        matrix,
        &GroupLabel::human(Ses::Lower),
        &GroupLabel::human(Ses::Upper),
        features,
        alpha,
    )?;
    Ok(results
        .into_iter()
        .filter(|r| r.significant_corrected)
        .map(|r| r.feature)
        .collect())
}

/// Ratio of group means to the anchor's means, per group and feature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioTable {
    pub anchor: String,
    /// Group labels, anchor first, then the rest sorted.
    pub groups: Vec<String>,
    pub features: Vec<String>,
    /// `ratios[g][f]`; missing where the anchor mean is zero or absent, or the
    /// group has no values.
    pub ratios: Vec<Vec<Option<f64>>>,
    /// Features whose anchor mean is zero or absent.
    pub undefined: Vec<String>,
}

impl RatioTable {
    pub fn ratio(&self, group: &str, feature: &str) -> Option<f64> {
        let g = self.groups.iter().position(|x| x == group)?;
        let f = self.features.iter().position(|x| x == feature)?;
        self.ratios[g][f]
    }
}

pub fn frequency_ratios(
    matrix: &FeatureMatrix,
    anchor: &GroupLabel,
    features: &[&str],
) -> Result<RatioTable, StatsError> {
    if !matrix.rows.iter().any(|r| anchor.matches(&r.key)) {
        return Err(StatsError::MissingGroup(anchor.to_string()));
    }
    let columns: Vec<usize> = features
        .iter()
        .map(|f| column_index(f).ok_or_else(|| StatsError::UnknownFeature(f.to_string())))
        .collect::<Result<_, _>>()?;
    let mut labels: Vec<String> = matrix.groups().iter().map(GroupKey::label).collect();
    labels.sort();
    labels.dedup();
    let anchor_label = anchor.to_string();
    labels.retain(|l| *l != anchor_label);
    labels.insert(0, anchor_label.clone());

    let anchor_means: Vec<Option<f64>> = columns
        .iter()
        .map(|&c| mean(&matrix.column_values(c, |k| anchor.matches(k))).filter(|m| *m != 0.0))
        .collect();
    let ratios = labels
        .iter()
        .map(|label| {
            let group: GroupLabel = label.parse().expect("labels come from group keys");
            columns
                .iter()
                .zip(&anchor_means)
                .map(|(&c, am)| {
                    let am = (*am)?;
                    if group == *anchor {
                        return Some(1.0);
                    }
                    Some(mean(&matrix.column_values(c, |k| group.matches(k)))? / am)
                })
                .collect()
        })
        .collect();
    let undefined = features
        .iter()
        .zip(&anchor_means)
        .filter(|(_, m)| m.is_none())
        .map(|(f, _)| f.to_string())
        .collect();
    Ok(RatioTable {
        anchor: anchor_label,
        groups: labels,
        features: features.iter().map(|f| f.to_string()).collect(),
        ratios,
        undefined,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogRatio {
    /// Mean of |ln(model / human)| over the used features.
    pub value: f64,
    pub used: Vec<String>,
    /// Features skipped because a mean was missing or not positive.
    pub excluded: Vec<String>,
}

/// Average absolute log ratio between two sets of feature means.
pub fn aggregate_log_ratio(
    model_means: &BTreeMap<String, f64>,
    human_means: &BTreeMap<String, f64>,
    features: &[&str],
) -> Result<LogRatio, StatsError> {
    let mut used = Vec::new();
    let mut excluded = Vec::new();
    let mut terms = Vec::new();
    for f in features {
        match (model_means.get(*f), human_means.get(*f)) {
            (Some(&m), Some(&h)) if m > 0.0 && h > 0.0 => {
                terms.push((m / h).ln().abs());
                used.push(f.to_string());
            }
            _ => excluded.push(f.to_string()),
        }
    }
    if terms.is_empty() {
        return Err(StatsError::NoUsableFeatures);
    }
    Ok(LogRatio {
        value: mean(&terms).unwrap_or(0.0),
        used,
        excluded,
    })
}

/// Per-feature means of the rows `select` accepts; features with no values are omitted.
pub fn group_means(
    matrix: &FeatureMatrix,
    features: &[&str],
    select: impl Fn(&GroupKey) -> bool,
) -> BTreeMap<String, f64> {
    features
        .iter()
        .filter_map(|f| {
            let col = column_index(f)?;
            Some((f.to_string(), mean(&matrix.column_values(col, &select))?))
        })
        .collect()
}
