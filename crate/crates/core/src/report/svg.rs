//! Hand-written SVG 1.1 plots.

use std::fmt::Write as _;

use serde::Serialize;

use super::{csv_line, AblationRow, ComparisonReport};
use crate::features::FeatureFamily;

const FAMILIES: [FeatureFamily; 4] = [
    FeatureFamily::Biber,
    FeatureFamily::Length,
    FeatureFamily::Pos,
    FeatureFamily::Style,
];

fn family_color(f: FeatureFamily) -> &'static str {
    match f {
        FeatureFamily::Biber => "#1f77b4",
        FeatureFamily::Length => "#ff7f0e",
        FeatureFamily::Pos => "#2ca02c",
        FeatureFamily::Style => "#9467bd",
        FeatureFamily::Readability => "#7f7f7f",
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn open_svg(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#
    );
}

/// Marker `k` centred on (x, y).
fn marker(out: &mut String, k: usize, x: f64, y: f64, fill: &str) {
    let r = 3.5;
    let _ = match k % 4 {
        0 => writeln!(
            out,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{fill}"/>"#
        ),
        1 => writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.1}" height="{:.1}" fill="{fill}"/>"#,
            x - r,
            y - r,
            2.0 * r,
            2.0 * r
        ),
        2 => writeln!(
            out,
            r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{fill}"/>"#,
            x,
            y - r - 0.5,
            x - r - 0.5,
            y + r,
            x + r + 0.5,
            y + r
        ),
        _ => writeln!(
            out,
            r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{fill}"/>"#,
            x,
            y - r - 1.0,
            x + r + 1.0,
            y,
            x,
            y + r + 1.0,
            x - r - 1.0,
            y
        ),
    };
}

/// A ratio that could not be drawn on the log axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmittedPoint {
    pub feature: String,
    pub group: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForestPlotSpec {
    pub title: String,
    /// Non-anchor groups, one marker shape each.
    pub groups: Vec<String>,
    /// Significant features by family, then name.
    pub features: Vec<(String, FeatureFamily)>,
    /// `points[f][g]`; `None` where the ratio is undefined or not positive.
    pub points: Vec<Vec<Option<f64>>>,
    pub omitted: Vec<OmittedPoint>,
}

impl ForestPlotSpec {
    pub fn omitted_csv(&self) -> String {
        let mut out = csv_line(&["feature", "group", "reason"].map(String::from));
        for o in &self.omitted {
            out.push_str(&csv_line(&[
                o.feature.clone(),
                o.group.clone(),
                o.reason.clone(),
            ]));
        }
        out
    }
}

/// Significant features of a comparison, with every non-anchor group's ratio.
/// Undefined or non-positive ratios are left out and listed in `omitted`.
pub fn forest_plot_spec(report: &ComparisonReport) -> ForestPlotSpec {
    let groups: Vec<String> = report.ratio_groups.iter().skip(1).cloned().collect();
    let mut sig: Vec<_> = report.rows.iter().filter(|r| r.significant).collect();
    sig.sort_by(|a, b| (a.family, &a.feature).cmp(&(b.family, &b.feature)));
    let mut features = Vec::new();
    let mut points = Vec::new();
    let mut omitted = Vec::new();
    for row in sig {
        let mut row_points = Vec::with_capacity(groups.len());
        for (g, group) in groups.iter().enumerate() {
            let r = row.ratios[g + 1];
            let reason = match r {
                None if report.undefined.contains(&row.feature) => Some("anchor mean is zero"),
                None => Some("group has no values"),
                Some(v) if v <= 0.0 => Some("ratio is zero"),
                Some(_) => None,
            };
            if let Some(reason) = reason {
                omitted.push(OmittedPoint {
                    feature: row.feature.clone(),
                    group: group.clone(),
                    reason: reason.into(),
                });
                row_points.push(None);
            } else {
                row_points.push(r);
            }
        }
        if row_points.iter().any(Option::is_some) {
            features.push((row.feature.clone(), row.family));
            points.push(row_points);
        }
    }
    ForestPlotSpec {
        title: format!(
            "{} ratios to {} (alpha {})",
            report.platform, report.anchor, report.alpha
        ),
        groups,
        features,
        points,
        omitted,
    }
}

fn log_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let mut ticks = Vec::new();
    for k in lo.log10().floor() as i32 - 1..=hi.log10().ceil() as i32 + 1 {
        for m in [1.0, 2.0, 5.0] {
            let t = m * 10f64.powi(k);
            if t >= lo * 0.999 && t <= hi * 1.001 {
                ticks.push(t);
            }
        }
    }
    ticks
}

fn tick_label(t: f64) -> String {
    let s = format!("{t:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Forest plot: one row per feature, ratios on a log axis, reference line at 1.
pub fn forest_svg(spec: &ForestPlotSpec) -> String {
    let (label_w, plot_w, row_h, top) = (230.0, 460.0, 20.0, 50.0);
    let left = label_w + 10.0;
    let rows = spec.features.len().max(1) as f64;
    let plot_h = rows * row_h;
    let legend_h = 20.0 * (FAMILIES.len() + spec.groups.len()) as f64;
    let width = left + plot_w + 30.0;
    let height = top + plot_h + 40.0 + legend_h + 10.0;

    let values: Vec<f64> = spec.points.iter().flatten().flatten().copied().collect();
    let lo = values.iter().copied().fold(1.0f64, f64::min);
    let hi = values.iter().copied().fold(1.0f64, f64::max);
    let (mut llo, mut lhi) = (lo.log10(), hi.log10());
    let pad = ((lhi - llo) * 0.08).max(0.05);
    llo -= pad;
    lhi += pad;
    let x = |v: f64| left + (v.log10() - llo) / (lhi - llo) * plot_w;

    let mut out = String::new();
    open_svg(&mut out, width, height);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="20" font-size="13" font-weight="bold">{}</text>"#,
        10.0,
        escape(&spec.title)
    );
    let _ = writeln!(out, r#"<g id="axis">"#);
    let axis_y = top + plot_h;
    let _ = writeln!(
        out,
        r#"<line x1="{left:.2}" y1="{axis_y:.2}" x2="{:.2}" y2="{axis_y:.2}" stroke="black"/>"#,
        left + plot_w
    );
    for t in log_ticks(10f64.powf(llo), 10f64.powf(lhi)) {
        let tx = x(t);
        let _ = writeln!(
            out,
            r##"<line x1="{tx:.2}" y1="{top:.2}" x2="{tx:.2}" y2="{:.2}" stroke="#e5e5e5"/>"##,
            axis_y + 4.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{tx:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            axis_y + 16.0,
            tick_label(t)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">ratio to anchor (log scale)</text>"#,
        left + plot_w / 2.0,
        axis_y + 32.0
    );
    let rx = x(1.0);
    let _ = writeln!(
        out,
        r#"<line id="reference" x1="{rx:.2}" y1="{:.2}" x2="{rx:.2}" y2="{axis_y:.2}" stroke="black" stroke-dasharray="4,3"/>"#,
        top - 6.0
    );
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="features">"#);
    if spec.features.is_empty() {
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" fill="#555555">no significant features</text>"##,
            left + 10.0,
            top + 14.0
        );
    }
    let g = spec.groups.len().max(1) as f64;
    let step = (row_h - 6.0) / g;
    for (i, ((name, fam), pts)) in spec.features.iter().zip(&spec.points).enumerate() {
        let cy = top + (i as f64 + 0.5) * row_h;
        let color = family_color(*fam);
        let _ = writeln!(
            out,
            r#"<g class="feature" data-feature="{}">"#,
            escape(name)
        );
        let _ = writeln!(
            out,
            r#"<text x="{label_w:.2}" y="{:.2}" text-anchor="end" fill="{color}">{}</text>"#,
            cy + 4.0,
            escape(name)
        );
        for (j, p) in pts.iter().enumerate() {
            if let Some(v) = p {
                let dy = (j as f64 - (g - 1.0) / 2.0) * step;
                marker(&mut out, j, x(*v), cy + dy, color);
            }
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="legend">"#);
    let mut ly = axis_y + 52.0;
    for fam in FAMILIES {
        let _ = writeln!(
            out,
            r#"<rect x="{left:.2}" y="{:.2}" width="10" height="10" fill="{}"/>"#,
            ly - 9.0,
            family_color(fam)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{ly:.2}">{}</text>"#,
            left + 16.0,
            fam
        );
        ly += 20.0;
    }
    for (j, group) in spec.groups.iter().enumerate() {
        marker(&mut out, j, left + 5.0, ly - 4.0, "#333333");
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{ly:.2}">{}</text>"#,
            left + 16.0,
            escape(group)
        );
        ly += 20.0;
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

fn series_color(label: &str) -> &'static str {
    if label.starts_with("lower") {
        "#d62728"
    } else {
        "#1f77b4"
    }
}

/// Line plot of the aggregate log ratio over cue length, one line per SES
/// group and prompt variant.
pub fn ablation_svg(rows: &[AblationRow], title: &str) -> String {
    let (left, top, plot_w, plot_h) = (70.0, 40.0, 480.0, 260.0);
    let mut series: Vec<String> = rows
        .iter()
        .map(|r| format!("{}/{}", r.ses, r.variant))
        .collect();
    series.sort();
    series.dedup();
    let width = left + plot_w + 40.0;
    let height = top + plot_h + 60.0 + 20.0 * series.len() as f64;

    let mut cues: Vec<usize> = rows.iter().map(|r| r.cue_words).collect();
    cues.sort_unstable();
    cues.dedup();
    let (cmin, cmax) = (
        *cues.first().unwrap_or(&0) as f64,
        *cues.last().unwrap_or(&1) as f64,
    );
    let span = if cmax > cmin { cmax - cmin } else { 1.0 };
    let ymax = rows.iter().map(|r| r.log_ratio).fold(0.0f64, f64::max);
    let ytop = if ymax > 0.0 { ymax * 1.1 } else { 1.0 };
    let x = |c: f64| {
        left + if cmax > cmin {
            (c - cmin) / span * plot_w
        } else {
            plot_w / 2.0
        }
    };
    let y = |v: f64| top + plot_h - v / ytop * plot_h;

    let mut out = String::new();
    open_svg(&mut out, width, height);
    let _ = writeln!(
        out,
        r#"<text x="10" y="20" font-size="13" font-weight="bold">{}</text>"#,
        escape(title)
    );
    let _ = writeln!(out, r#"<g id="axis">"#);
    let base = top + plot_h;
    let _ = writeln!(
        out,
        r#"<line x1="{left:.2}" y1="{base:.2}" x2="{:.2}" y2="{base:.2}" stroke="black"/>"#,
        left + plot_w
    );
    let _ = writeln!(
        out,
        r#"<line x1="{left:.2}" y1="{top:.2}" x2="{left:.2}" y2="{base:.2}" stroke="black"/>"#
    );
    for &c in &cues {
        let cx = x(c as f64);
        let _ = writeln!(
            out,
            r#"<text x="{cx:.2}" y="{:.2}" text-anchor="middle">{c}</text>"#,
            base + 16.0
        );
    }
    for k in 0..=4 {
        let v = ytop * k as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.3}</text>"#,
            left - 6.0,
            y(v) + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">cue length (words)</text>"#,
        left + plot_w / 2.0,
        base + 34.0
    );
    let _ = writeln!(
        out,
        r#"<text x="14" y="{:.2}" transform="rotate(-90 14 {:.2})" text-anchor="middle">mean |ln ratio|</text>"#,
        top + plot_h / 2.0,
        top + plot_h / 2.0
    );
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="series">"#);
    for (k, s) in series.iter().enumerate() {
        let mut pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| format!("{}/{}", r.ses, r.variant) == *s)
            .map(|r| (x(r.cue_words as f64), y(r.log_ratio)))
            .collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let color = series_color(s);
        let dash = if k / 2 % 2 == 1 {
            r#" stroke-dasharray="6,3""#
        } else {
            ""
        };
        let path: Vec<String> = pts
            .iter()
            .map(|(px, py)| format!("{px:.2},{py:.2}"))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="line" data-series="{}" points="{}" fill="none" stroke="{color}" stroke-width="2"{dash}/>"#,
            escape(s),
            path.join(" ")
        );
        for (px, py) in pts {
            let _ = writeln!(
                out,
                r#"<circle cx="{px:.2}" cy="{py:.2}" r="3" fill="{color}"/>"#
            );
        }
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g id="legend">"#);
    let mut ly = base + 56.0;
    for s in &series {
        let _ = writeln!(
            out,
            r#"<line x1="{left:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="2"/>"#,
            ly - 4.0,
            left + 20.0,
            ly - 4.0,
            series_color(s)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{ly:.2}">{}</text>"#,
            left + 26.0,
            escape(s)
        );
        ly += 20.0;
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
