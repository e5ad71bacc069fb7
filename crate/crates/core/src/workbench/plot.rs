//! CSV tables and static SVG charts from metric reports.

use std::fmt::Write as _;

use crate::metrics::{MetricReport, Score};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 48.0;

/// `metric,kind,name,value` with one row per score, stat and count.
pub fn reports_csv(reports: &[MetricReport]) -> String {
    let mut out = String::from("report,metric,kind,name,value\n");
    for (i, r) in reports.iter().enumerate() {
        for s in &r.scores {
            let _ = writeln!(out, "{i},{},score,{},{}", csv_field(&r.metric), csv_field(&s.name), s.value);
        }
        for s in &r.stats {
            let _ = writeln!(out, "{i},{},stat,{},{}", csv_field(&r.metric), csv_field(&s.name), s.value);
        }
        for (k, v) in &r.counts {
            let _ = writeln!(out, "{i},{},count,{},{v}", csv_field(&r.metric), csv_field(k));
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Chart for one report: a line over checkpoint transitions for evolution
/// reports, per-bucket bars for minimal-pair reports, otherwise a bar per
/// score.
pub fn report_svg(r: &MetricReport) -> String {
    let title = match r.sources.first() {
        Some(p) => format!("{} ({} step {})", r.metric, p.model, p.step),
        None => r.metric.clone(),
    };
    if r.metric == "evolution" {
        let points: Vec<&Score> = r.scores.iter().filter(|s| s.name.contains("->")).collect();
        return line_chart(&title, &points);
    }
    let distance: Vec<&Score> = r
        .scores
        .iter()
        .filter(|s| s.name.starts_with("distance/"))
        .collect();
    if r.metric == "minimal_pairs" && !distance.is_empty() {
        return bar_chart(&title, &distance);
    }
    bar_chart(&title, &r.scores.iter().collect::<Vec<_>>())
}

fn frame(title: &str) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        xml_escape(title)
    );
    // y axis, 0 to 100
    let bottom = HEIGHT - MARGIN;
    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{bottom}" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN}" y1="{bottom}" x2="{}" y2="{bottom}" stroke="black"/>"#,
        WIDTH - MARGIN
    );
    for tick in [0, 25, 50, 75, 100] {
        let y = y_of(tick as f64);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.1}" text-anchor="end">{tick}</text>"#,
            MARGIN - 4.0,
            y + 4.0
        );
    }
    svg
}

fn y_of(value: f64) -> f64 {
    let bottom = HEIGHT - MARGIN;
    bottom - (value.clamp(0.0, 100.0) / 100.0) * (bottom - MARGIN)
}

fn bar_chart(title: &str, scores: &[&Score]) -> String {
    let mut svg = frame(title);
    let n = scores.len().max(1) as f64;
    let slot = (WIDTH - 2.0 * MARGIN) / n;
    for (i, s) in scores.iter().enumerate() {
        let x = MARGIN + slot * i as f64 + slot * 0.15;
        let y = y_of(s.value);
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.1}" y="{y:.1}" width="{:.1}" height="{:.1}" fill="steelblue"><title>{}: {:.2}</title></rect>"#,
            slot * 0.7,
            HEIGHT - MARGIN - y,
            xml_escape(&s.name),
            s.value
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            x + slot * 0.35,
            HEIGHT - MARGIN + 14.0,
            xml_escape(&s.name)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn line_chart(title: &str, scores: &[&Score]) -> String {
    let mut svg = frame(title);
    let n = scores.len();
    let step = if n > 1 { (WIDTH - 2.0 * MARGIN) / (n - 1) as f64 } else { 0.0 };
    let points: Vec<String> = scores
        .iter()
        .enumerate()
        .map(|(i, s)| format!("{:.1},{:.1}", MARGIN + step * i as f64, y_of(s.value)))
        .collect();
    if !points.is_empty() {
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#,
            points.join(" ")
        );
    }
    for (i, s) in scores.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="steelblue"><title>{}: {:.2}</title></circle>"#,
            MARGIN + step * i as f64,
            y_of(s.value),
            xml_escape(&s.name),
            s.value
        );
    }
    svg.push_str("</svg>\n");
    svg
}
