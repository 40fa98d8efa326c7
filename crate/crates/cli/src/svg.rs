//! Deterministic SVG pictures of planar polyhedra on the integer lattice.

use std::fmt::Write as _;

use laumut::exactlat::{rational, LatticeVector, QVector, Rational};
use laumut::polyhedra::{Halfspace, Polyhedron};
use laumut::{Error, Result};
use num_traits::ToPrimitive;

const UNIT: f64 = 32.0;
const MARGIN: f64 = 24.0;
const LABEL_HEIGHT: f64 = 20.0;
const GAP: f64 = 24.0;
/// How far past the vertices unbounded regions are drawn.
const RAY_REACH: i64 = 2;

const COLORS: [&str; 4] = ["#1f6fb4", "#c4501b", "#2c8c3c", "#7a3fa0"];

pub struct Panel {
    pub label: String,
    pub polyhedron: Polyhedron,
}

impl Panel {
    pub fn new(label: impl Into<String>, polyhedron: Polyhedron) -> Self {
        Panel {
            label: label.into(),
            polyhedron,
        }
    }
}

/// Lattice bounding box `[lo, hi]` of everything drawn for one panel.
fn extent(p: &Polyhedron) -> ([i64; 2], [i64; 2]) {
    let mut lo = [i64::MAX; 2];
    let mut hi = [i64::MIN; 2];
    let mut see = |v: &QVector, reach: i64| {
        for i in 0..2 {
            let f = v[i].floor().to_integer().to_i64().unwrap_or(0);
            let c = v[i].ceil().to_integer().to_i64().unwrap_or(0);
            lo[i] = lo[i].min(f - reach);
            hi[i] = hi[i].max(c + reach);
        }
    };
    for v in p.vertices() {
        see(v, 0);
    }
    if !p.rays().is_empty() {
        for v in p.vertices() {
            for r in p.rays() {
                let step = r.to_qvector().scale(&rational(RAY_REACH, 1));
                see(&(v + &step), 0);
            }
        }
    }
    // always show the origin
    see(&QVector::zero(2), 0);
    (lo, hi)
}

/// The part of `P` inside the box, as a bounded polygon.
fn clip(p: &Polyhedron, lo: [i64; 2], hi: [i64; 2]) -> Result<Polyhedron> {
    if p.is_bounded() {
        return Ok(p.clone());
    }
    let mut hs = p.halfspaces().to_vec();
    for i in 0..2 {
        let e = LatticeVector::unit(2, i);
        hs.push(Halfspace::new(e.clone(), rational(lo[i], 1)));
        hs.push(Halfspace::new(-&e, rational(-hi[i], 1)));
    }
    Polyhedron::from_inequalities(2, &hs, p.equations())
}

fn num(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Panels side by side, each on its own lattice grid with a shared scale.
pub fn render_panels(panels: &[Panel]) -> Result<String> {
    if panels.is_empty() {
        return Err(Error::Precondition("nothing to draw".into()));
    }
    for p in panels {
        if p.polyhedron.rank() != 2 {
            return Err(Error::RankMismatch {
                expected: 2,
                found: p.polyhedron.rank(),
            });
        }
    }
    let boxes: Vec<_> = panels.iter().map(|p| extent(&p.polyhedron)).collect();
    let height_units = boxes.iter().map(|(lo, hi)| hi[1] - lo[1]).max().unwrap_or(0);
    let widths: Vec<f64> = boxes.iter().map(|(lo, hi)| (hi[0] - lo[0]) as f64 * UNIT).collect();
    let total_w = 2.0 * MARGIN + widths.iter().sum::<f64>() + GAP * (panels.len() - 1) as f64;
    let total_h = 2.0 * MARGIN + LABEL_HEIGHT + height_units as f64 * UNIT;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_w:.0}" height="{total_h:.0}" viewBox="0 0 {total_w:.0} {total_h:.0}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let mut x0 = MARGIN;
    for (k, (panel, (lo, hi))) in panels.iter().zip(&boxes).enumerate() {
        let color = COLORS[k % COLORS.len()];
        let top = MARGIN + LABEL_HEIGHT;
        let px = |v: &QVector| -> (f64, f64) {
            (
                x0 + (num(&v[0]) - lo[0] as f64) * UNIT,
                top + (hi[1] as f64 - num(&v[1])) * UNIT,
            )
        };
        let _ = writeln!(s, r#"<g id="panel{k}">"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14">{}</text>"#,
            x0,
            MARGIN + 12.0,
            escape(&panel.label)
        );
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                let (cx, cy) = px(&QVector::from_i64(&[x, y]));
                let (r, fill) = if x == 0 && y == 0 { (2.5, "#000") } else { (1.2, "#999") };
                let _ = writeln!(s, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r}" fill="{fill}"/>"#);
            }
        }
        let shape = clip(&panel.polyhedron, *lo, *hi)?;
        let cycle = shape.polygon_cycle()?;
        match cycle.len() {
            1 => {}
            2 => {
                let (a, b) = (px(&cycle[0]), px(&cycle[1]));
                let _ = writeln!(
                    s,
                    r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#,
                    a.0, a.1, b.0, b.1
                );
            }
            _ => {
                let pts: Vec<String> = cycle
                    .iter()
                    .map(|v| {
                        let (x, y) = px(v);
                        format!("{x:.2},{y:.2}")
                    })
                    .collect();
                let _ = writeln!(
                    s,
                    r#"<polygon points="{}" fill="{color}" fill-opacity="0.15" stroke="{color}" stroke-width="2"/>"#,
                    pts.join(" ")
                );
            }
        }
        for v in panel.polyhedron.vertices() {
            let (cx, cy) = px(v);
            let _ = writeln!(s, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="4" fill="{color}"/>"#);
        }
        let _ = writeln!(s, "</g>");
        x0 += widths[k] + GAP;
    }
    s.push_str("</svg>\n");
    Ok(s)
}
