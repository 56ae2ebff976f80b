//! Half-plane picture of class axes and intersection points.

use std::fmt::Write as _;
use std::path::Path;

use angle_spectrum_core::{detect_rational_pi, ClosedGeodesicClass, GeodesicShape, SpectrumReport};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SvgError {
    #[error("cannot write svg: {0}")]
    Io(#[from] std::io::Error),
    #[error("nothing to draw: no classes")]
    EmptyInput,
}

/// Visible window `x ∈ [x_min, x_max]`, `y ∈ (0, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_max: f64,
    /// Pixels per unit.
    pub scale: f64,
}

impl Default for Viewport {
    fn default() -> Self {
        Viewport {
            x_min: -5.0,
            x_max: 5.0,
            y_max: 5.0,
            scale: 80.0,
        }
    }
}

impl Viewport {
    fn px(&self, x: f64) -> f64 {
        (x - self.x_min) * self.scale
    }

    fn py(&self, y: f64) -> f64 {
        (self.y_max - y) * self.scale
    }
}

/// `π/q`, `pπ/q` or `π`.
pub fn pi_label(p: u64, q: u64) -> String {
    match (p, q) {
        (1, 1) => "π".into(),
        (p, 1) => format!("{p}π"),
        (1, q) => format!("π/{q}"),
        (p, q) => format!("{p}π/{q}"),
    }
}

fn theta_label(theta: f64, report: &SpectrumReport) -> String {
    let b = &report.bounds;
    let hit = detect_rational_pi(theta, b.qmax, b.eps_rat)
        .filter(|r| report.rational_hits.iter().any(|h| (h.p, h.q) == (r.p, r.q)));
    match hit {
        Some(r) => pi_label(r.p, r.q),
        None => format!("{theta:.4}"),
    }
}

pub fn svg_string(
    report: &SpectrumReport,
    classes: &[ClosedGeodesicClass],
    view: &Viewport,
) -> Result<String, SvgError> {
    if classes.is_empty() {
        return Err(SvgError::EmptyInput);
    }
    let w = (view.x_max - view.x_min) * view.scale;
    let h = view.y_max * view.scale;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<defs><clipPath id="view"><rect x="0" y="0" width="{w:.1}" height="{h:.1}"/></clipPath></defs>"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    let y0 = view.py(0.0);
    writeln!(
        s,
        r#"<line class="real-axis" x1="0" y1="{y0:.3}" x2="{w:.3}" y2="{y0:.3}" stroke="black" stroke-width="1"/>"#
    )
    .unwrap();
    writeln!(s, r#"<g clip-path="url(#view)" fill="none" stroke-width="1.5">"#).unwrap();
    for (i, c) in classes.iter().enumerate() {
        let d = match c.axis.shape() {
            GeodesicShape::Semicircle { center, radius } => {
                let r = radius * view.scale;
                format!(
                    "M {:.3} {y0:.3} A {r:.3} {r:.3} 0 0 1 {:.3} {y0:.3}",
                    view.px(center - radius),
                    view.px(center + radius)
                )
            }
            GeodesicShape::Vertical { x } => {
                let px = view.px(x);
                format!("M {px:.3} {y0:.3} L {px:.3} 0")
            }
        };
        let hue = (i * 137) % 360;
        writeln!(
            s,
            r#"<path class="geodesic" data-class="{i}" d="{d}" stroke="hsl({hue},70%,40%)"/>"#
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(
        s,
        r#"<g clip-path="url(#view)" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    for r in &report.records {
        let (x, y) = (view.px(r.point.x), view.py(r.point.y));
        writeln!(
            s,
            r#"<g class="marker" data-pair="{},{}"><circle cx="{x:.3}" cy="{y:.3}" r="3" fill="black"/><text x="{:.3}" y="{:.3}">{}</text></g>"#,
            r.class_i,
            r.class_j,
            x + 4.0,
            y - 4.0,
            theta_label(r.theta, report)
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

pub fn render_svg(
    report: &SpectrumReport,
    classes: &[ClosedGeodesicClass],
    path: &Path,
    view: &Viewport,
) -> Result<(), SvgError> {
    let s = svg_string(report, classes, view)?;
    std::fs::write(path, s)?;
    Ok(())
}
