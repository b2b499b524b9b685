//! Grouped bar chart of summary medians as a standalone SVG.

use std::fmt::Write;

use super::SummaryRow;

const PALETTE: [&str; 6] = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#af7aa1"];
const PANEL_W: f64 = 560.0;
const PANEL_H: f64 = 260.0;
const MARGIN: f64 = 60.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Two panels: median Error in percent (linear) and median Ratio (log10).
pub fn render_svg(summary: &[SummaryRow]) -> String {
    let mut instances: Vec<&str> = Vec::new();
    let mut algorithms: Vec<&str> = Vec::new();
    for s in summary {
        if !instances.contains(&s.instance.as_str()) {
            instances.push(&s.instance);
        }
        if !algorithms.contains(&s.algorithm.as_str()) {
            algorithms.push(&s.algorithm);
        }
    }
    let lookup = |inst: &str, alg: &str| summary.iter().find(|s| s.instance == inst && s.algorithm == alg);

    let width = MARGIN * 2.0 + PANEL_W;
    let height = MARGIN * 3.0 + PANEL_H * 2.0 + 20.0 * algorithms.len() as f64;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let panels: [(&str, Box<dyn Fn(&SummaryRow) -> Option<f64>>, bool); 2] = [
        ("median Error (%)", Box::new(|s: &SummaryRow| s.error_median.map(|e| e * 100.0)), false),
        ("median Ratio (log scale)", Box::new(|s: &SummaryRow| s.ratio_median), true),
    ];
    for (p, (title, value, log)) in panels.iter().enumerate() {
        let top = MARGIN + p as f64 * (PANEL_H + MARGIN);
        let bottom = top + PANEL_H;
        let transform = |v: f64| if *log { v.max(1e-12).log10() } else { v };
        let values: Vec<f64> = summary.iter().filter_map(value).map(transform).collect();
        let mut lo = values.iter().copied().fold(0.0_f64, f64::min);
        let mut hi = values.iter().copied().fold(0.0_f64, f64::max);
        if *log {
            lo = lo.floor();
            hi = hi.ceil().max(lo + 1.0);
        } else if hi <= lo {
            hi = lo + 1.0;
        }
        let y = |v: f64| bottom - (v - lo) / (hi - lo) * PANEL_H;

        let _ = writeln!(svg, r#"<text x="{MARGIN}" y="{}" font-size="13">{}</text>"#, top - 10.0, escape(title));
        let _ = writeln!(
            svg,
            r#"<line x1="{MARGIN}" y1="{top}" x2="{MARGIN}" y2="{bottom}" stroke="black"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{MARGIN}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"#,
            y(lo.max(0.0).min(hi)),
            MARGIN + PANEL_W
        );
        let ticks = 5;
        for t in 0..=ticks {
            let v = lo + (hi - lo) * t as f64 / ticks as f64;
            let label = if *log { format!("{:.3}", 10f64.powf(v)) } else { format!("{v:.2}") };
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}" text-anchor="end">{label}</text>"#,
                MARGIN - 4.0,
                y(v) + 4.0
            );
        }

        let group_w = PANEL_W / instances.len().max(1) as f64;
        let bar_w = group_w * 0.8 / algorithms.len().max(1) as f64;
        for (i, inst) in instances.iter().enumerate() {
            let gx = MARGIN + i as f64 * group_w + group_w * 0.1;
            for (a, alg) in algorithms.iter().enumerate() {
                let Some(v) = lookup(inst, alg).and_then(value).map(transform) else {
                    continue;
                };
                let base = y(lo.max(0.0).min(hi));
                let (y0, y1) = if y(v) < base { (y(v), base) } else { (base, y(v)) };
                let _ = writeln!(
                    svg,
                    r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                    gx + a as f64 * bar_w,
                    y0,
                    bar_w,
                    (y1 - y0).max(0.5),
                    PALETTE[a % PALETTE.len()]
                );
            }
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
                gx + group_w * 0.4,
                bottom + 16.0,
                escape(inst)
            );
        }
    }

    let legend_top = MARGIN * 2.0 + PANEL_H * 2.0 + 10.0;
    for (a, alg) in algorithms.iter().enumerate() {
        let ly = legend_top + a as f64 * 20.0;
        let _ = writeln!(
            svg,
            r#"<rect x="{MARGIN}" y="{ly}" width="12" height="12" fill="{}"/><text x="{}" y="{}">{}</text>"#,
            PALETTE[a % PALETTE.len()],
            MARGIN + 18.0,
            ly + 10.0,
            escape(alg)
        );
    }
    svg.push_str("</svg>\n");
    svg
}
