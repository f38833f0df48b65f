//! Text renderings of surfaces: CSV, JSON and an SVG heatmap. All output is
//! a pure function of the surface, so identical inputs give identical bytes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use shockpath::{critical_xi, Surface};

/// Formats a measure value with 12 significant digits, trailing zeros
/// trimmed. Exact 0 and 1 print as `0` and `1`.
pub fn format_mu(value: f64) -> String {
    if value == 0.0 {
        return "0".into();
    }
    if value == 1.0 {
        return "1".into();
    }
    let sci = format!("{value:.11e}");
    let exponent: i32 = sci
        .split_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    let decimals = (11 - exponent).max(0) as usize;
    let fixed = format!("{value:.decimals$}");
    if fixed.contains('.') {
        fixed.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        fixed
    }
}

pub fn surface_csv(surface: &Surface) -> String {
    let mut out = String::from("delta,xi,mu\n");
    for (delta, xi, mu) in surface.cells() {
        let _ = writeln!(out, "{delta},{xi},{}", format_mu(mu));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalShock {
    pub delta: f64,
    pub xi: Option<f64>,
}

/// The JSON document written by `sweep --json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_preset: Option<String>,
    pub critical_xi: Vec<CriticalShock>,
    pub surface: Surface,
}

impl SweepReport {
    pub fn new(surface: Surface, gamma_preset: Option<String>, theta_preset: Option<String>) -> Self {
        let critical_xi = critical_xi(&surface)
            .into_iter()
            .map(|(delta, xi)| CriticalShock { delta, xi })
            .collect();
        SweepReport {
            gamma_preset,
            theta_preset,
            critical_xi,
            surface,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

const CELL_W: f64 = 44.0;
const CELL_H: f64 = 36.0;
const LEFT: f64 = 72.0;
const TOP: f64 = 56.0;
const BOTTOM: f64 = 64.0;
const RIGHT: f64 = 96.0;
const LOW: [f64; 3] = [235.0, 235.0, 235.0];
const HIGH: [f64; 3] = [178.0, 24.0, 43.0];

fn ramp(value: f64) -> String {
    let t = value.clamp(0.0, 1.0);
    let c: Vec<u8> = LOW
        .iter()
        .zip(HIGH)
        .map(|(lo, hi)| (lo + (hi - lo) * t).round() as u8)
        .collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Heatmap with δ along the horizontal axis and ξ increasing upward.
pub fn surface_svg(surface: &Surface) -> String {
    let nd = surface.delta_grid.len();
    let nx = surface.xi_grid.len();
    let plot_w = CELL_W * nd as f64;
    let plot_h = CELL_H * nx as f64;
    let width = LEFT + plot_w + RIGHT;
    let height = TOP + plot_h + BOTTOM;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        svg,
        r##"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="#ffffff"/>"##
    );
    let name = surface.network.name.as_deref().unwrap_or("network");
    let _ = writeln!(
        svg,
        r#"<text x="{LEFT:.0}" y="24" font-size="13">{} (n={}, m={}, kbar={}), {}</text>"#,
        escape(name),
        surface.network.nodes,
        surface.network.arcs,
        surface.network.k_bar,
        surface.strategy
    );

    for (d, row) in surface.mu.iter().enumerate() {
        for (x, &value) in row.iter().enumerate() {
            let px = LEFT + CELL_W * d as f64;
            let py = TOP + CELL_H * (nx - 1 - x) as f64;
            let _ = writeln!(
                svg,
                r#"<rect x="{px:.2}" y="{py:.2}" width="{CELL_W:.2}" height="{CELL_H:.2}" fill="{}"/>"#,
                ramp(value)
            );
        }
    }
    let _ = writeln!(
        svg,
        r##"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="#333333"/>"##
    );

    for (d, delta) in surface.delta_grid.iter().enumerate() {
        let cx = LEFT + CELL_W * (d as f64 + 0.5);
        let _ = writeln!(
            svg,
            r#"<text x="{cx:.2}" y="{:.2}" text-anchor="middle">{delta}</text>"#,
            TOP + plot_h + 16.0
        );
    }
    for (x, xi) in surface.xi_grid.iter().enumerate() {
        let cy = TOP + CELL_H * ((nx - 1 - x) as f64 + 0.5) + 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{cy:.2}" text-anchor="end">{xi}</text>"#,
            LEFT - 8.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">delta</text>"#,
        LEFT + plot_w / 2.0,
        TOP + plot_h + 40.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{:.2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 {:.2})">xi</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    // Legend: ramp from 0 (bottom) to 1 (top).
    let lx = LEFT + plot_w + 24.0;
    let steps = 10;
    let step_h = plot_h / steps as f64;
    for i in 0..steps {
        let value = (i as f64 + 0.5) / steps as f64;
        let ly = TOP + plot_h - step_h * (i + 1) as f64;
        let _ = writeln!(
            svg,
            r#"<rect x="{lx:.2}" y="{ly:.2}" width="16.00" height="{step_h:.2}" fill="{}"/>"#,
            ramp(value)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}">1</text>"#,
        lx + 22.0,
        TOP + 8.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}">0</text>"#,
        lx + 22.0,
        TOP + plot_h
    );
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use shockpath::{parse_edge_list, sweep, PcStrategy, PcVector, ThetaVector};

    fn g3_surface() -> Surface {
        let (net, _) = parse_edge_list("a,b,2\nb,c,1\na,c,3").unwrap();
        sweep(
            &net,
            &PcVector::new(vec![1.0, 2.0]).unwrap(),
            &ThetaVector::new(vec![0.5, 0.5]).unwrap(),
            &shockpath::default_xi_grid(),
            &shockpath::default_delta_grid(),
            PcStrategy::PreTraversal,
        )
        .unwrap()
    }

    #[test]
    fn mu_formatting() {
        assert_eq!(format_mu(0.0), "0");
        assert_eq!(format_mu(1.0), "1");
        assert_eq!(format_mu(0.5), "0.5");
        assert_eq!(format_mu(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_mu(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_mu(0.125), "0.125");
        assert_eq!(format_mu(1.0 / 7000.0), "0.000142857142857");
    }

    #[test]
    fn csv_layout() {
        let csv = surface_csv(&g3_surface());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 122);
        assert_eq!(lines[0], "delta,xi,mu");
        assert_eq!(lines[1], "0,0,0");
        assert_eq!(lines[12], "0.1,0,0");
        assert_eq!(lines[34], "0.3,0,0");
        assert_eq!(lines[121], "1,10,1");
    }

    #[test]
    fn json_round_trip() {
        let surface = g3_surface();
        let report = SweepReport::new(surface.clone(), None, None);
        let back: SweepReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back.surface, surface);
        assert_eq!(back, report);
        assert_eq!(back.critical_xi[10], CriticalShock { delta: 1.0, xi: Some(1.0) });
        assert_eq!(back.critical_xi[0], CriticalShock { delta: 0.0, xi: None });
    }

    #[test]
    fn svg_is_stable_and_well_formed() {
        let surface = g3_surface();
        let a = surface_svg(&surface);
        assert_eq!(a, surface_svg(&surface));
        assert!(a.starts_with("<svg "));
        assert!(a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<rect").count(), 1 + 121 + 1 + 10);
        assert_eq!(ramp(0.0), "#ebebeb");
        assert_eq!(ramp(1.0), "#b2182b");
    }
}
