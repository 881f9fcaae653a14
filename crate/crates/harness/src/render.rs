//! SVG drawings of planar scenes, families and traces.

use std::fmt::Write as _;

use convertor_core::{Family, Scene, VertexSet};

use crate::error::{HarnessError, Result};

const PANEL: f64 = 240.0;
const MARGIN: f64 = 24.0;
const TITLE: f64 = 18.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f",
];

struct Frame {
    min: [f64; 2],
    scale: f64,
}

impl Frame {
    fn new(scene: &Scene) -> Frame {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in scene.points() {
            for k in 0..2 {
                let x = p[k].to_f64();
                min[k] = min[k].min(x);
                max[k] = max[k].max(x);
            }
        }
        let span = (max[0] - min[0]).max(max[1] - min[1]).max(1e-9);
        Frame {
            min,
            scale: (PANEL - 2.0 * MARGIN) / span,
        }
    }

    fn map(&self, scene: &Scene, v: usize) -> (f64, f64) {
        let p = scene.point(v);
        (
            MARGIN + (p[0].to_f64() - self.min[0]) * self.scale,
            PANEL - MARGIN - (p[1].to_f64() - self.min[1]) * self.scale,
        )
    }
}

/// Vertices of `set` in counter-clockwise order around their centroid.
fn outline(scene: &Scene, frame: &Frame, set: VertexSet) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = set.iter().map(|v| frame.map(scene, v)).collect();
    let n = pts.len() as f64;
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / n;
    pts.sort_by(|a, b| {
        let ta = (a.1 - cy).atan2(a.0 - cx);
        let tb = (b.1 - cy).atan2(b.0 - cx);
        ta.total_cmp(&tb)
    });
    pts
}

fn panel(out: &mut String, scene: &Scene, family: &Family, title: &str, dx: f64) {
    let frame = Frame::new(scene);
    let _ = writeln!(out, r#"<g transform="translate({dx:.1},{TITLE:.1})">"#);
    let _ = writeln!(
        out,
        r##"<rect width="{PANEL}" height="{PANEL}" fill="white" stroke="#cccccc"/>"##
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="-4" font-size="12" text-anchor="middle">{}</text>"#,
        PANEL / 2.0,
        escape(title)
    );
    for (i, member) in family.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts = outline(scene, &frame, member);
        match pts.len() {
            1 => {
                let (x, y) = pts[0];
                let _ = writeln!(
                    out,
                    r#"<circle cx="{x:.1}" cy="{y:.1}" r="{:.1}" fill="none" stroke="{color}" stroke-width="2"/>"#,
                    7.0 + 2.0 * (i % 4) as f64
                );
            }
            2 => {
                let ((x1, y1), (x2, y2)) = (pts[0], pts[1]);
                let _ = writeln!(
                    out,
                    r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="{color}" stroke-width="2"/>"#
                );
            }
            _ => {
                let coords: Vec<String> =
                    pts.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
                let _ = writeln!(
                    out,
                    r#"<polygon points="{}" fill="{color}" fill-opacity="0.12" stroke="{color}" stroke-width="2"/>"#,
                    coords.join(" ")
                );
            }
        }
    }
    for v in 0..scene.len() {
        let (x, y) = frame.map(scene, v);
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.1}" cy="{y:.1}" r="3" fill="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="11">{}</text>"#,
            x + 5.0,
            y - 5.0,
            escape(scene.label(v))
        );
    }
    out.push_str("</g>\n");
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// One panel per family, left to right, titled by `titles`.
pub fn render_panels(scene: &Scene, families: &[Family], titles: &[String]) -> Result<String> {
    if scene.dim() != 2 {
        return Err(HarnessError::InvalidConfig(format!(
            "rendering needs dim = 2, scene has dim = {}",
            scene.dim()
        )));
    }
    let count = families.len().max(1);
    let width = count as f64 * (PANEL + 8.0);
    let height = PANEL + TITLE + 4.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif">"#
    );
    for (i, family) in families.iter().enumerate() {
        let title = titles.get(i).map(String::as_str).unwrap_or("");
        panel(&mut out, scene, family, title, i as f64 * (PANEL + 8.0));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// A single family.
pub fn render_family(scene: &Scene, family: &Family) -> Result<String> {
    render_panels(scene, std::slice::from_ref(family), &[String::new()])
}

/// Every state of a trace, each titled with its step.
pub fn render_trace(scene: &Scene, states: &[Family]) -> Result<String> {
    let titles: Vec<String> = (0..states.len()).map(|i| format!("step {i}")).collect();
    render_panels(scene, states, &titles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Scene {
        Scene::from_integers(2, [("A", vec![0, 0]), ("B", vec![2, 0]), ("C", vec![1, 2])]).unwrap()
    }

    #[test]
    fn draws_every_vertex_and_member() {
        let s = triangle();
        let f = Family::new([
            VertexSet::from_bits(0b111),
            VertexSet::from_bits(0b011),
            VertexSet::from_bits(0b100),
        ])
        .unwrap();
        let svg = render_family(&s, &f).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<line").count(), 1);
        assert_eq!(svg.matches(r#"fill="black""#).count(), 3);
        for label in ["A", "B", "C"] {
            assert!(svg.contains(&format!(">{label}</text>")));
        }
    }

    #[test]
    fn traces_get_one_panel_per_state() {
        let s = triangle();
        let a = Family::new([VertexSet::from_bits(0b001)]).unwrap();
        let svg = render_trace(&s, &[a.clone(), a]).unwrap();
        assert_eq!(svg.matches("<g ").count(), 2);
        assert!(svg.contains("step 1"));
    }

    #[test]
    fn non_planar_scenes_are_rejected() {
        let s = Scene::from_integers(1, [("A", vec![0]), ("B", vec![1])]).unwrap();
        let f = Family::new([s.universe()]).unwrap();
        assert_eq!(render_family(&s, &f).unwrap_err().exit_code(), 2);
    }
}
