//! Deterministic SVG drawings of curves.
//!
//! Two layouts: `DiskPair` draws each hemisphere as a disk whose rim is the
//! equator (north left, south right) with chords as hyperbolic geodesics;
//! `Flat` cuts the equator open at `∞` into a horizontal line with northern
//! chords as arcs above it and southern chords below.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::equator::EquatorModel;
use crate::oracle::realize_words;
use crate::order::ChordDiagram;
use crate::word::{CrossingWord, Hemisphere};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Layout {
    DiskPair,
    Flat,
}

pub const DEFAULT_PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub model: EquatorModel,
    pub curves: Vec<CrossingWord>,
    pub labels: Vec<String>,
    pub width: u32,
    pub height: u32,
    pub layout: Layout,
    pub palette: Vec<String>,
    pub highlight_intersections: bool,
}

impl RenderSpec {
    pub fn new(model: EquatorModel, curves: Vec<CrossingWord>) -> Self {
        RenderSpec {
            model,
            curves,
            labels: Vec::new(),
            width: 800,
            height: 420,
            layout: Layout::DiskPair,
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
            highlight_intersections: false,
        }
    }
}

/// Where each crossing event was drawn, as a fraction of the circle. Used
/// to check that events land inside their gap.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedEvent {
    pub curve: usize,
    pub index: usize,
    pub gap: u32,
    pub turn: f64,
}

fn color(spec: &RenderSpec, i: usize) -> &str {
    if spec.palette.is_empty() {
        "#000000"
    } else {
        &spec.palette[i % spec.palette.len()]
    }
}

/// Events of every curve at their diagram coordinates.
pub fn placed_events(spec: &RenderSpec) -> Vec<PlacedEvent> {
    if spec.curves.is_empty() {
        return Vec::new();
    }
    let words: Vec<&CrossingWord> = spec.curves.iter().collect();
    let d = ChordDiagram::build(&words);
    let circle = d.circle() as f64;
    let mut out = Vec::new();
    for (c, w) in spec.curves.iter().enumerate() {
        for (i, &g) in w.gaps.iter().enumerate() {
            out.push(PlacedEvent {
                curve: c,
                index: i,
                gap: g,
                turn: d.coords[c][i] as f64 / circle,
            });
        }
    }
    out
}

/// Fraction of the circle covered by gap `g`.
pub fn gap_span(model: EquatorModel, g: u32) -> (f64, f64) {
    let len = model.circle_len() as f64;
    let p = model.gap_pos(g) as f64;
    (p / len, (p + 1.0) / len)
}

pub fn render_svg(spec: &RenderSpec) -> String {
    let mut s = String::new();
    let (w, h) = (spec.width, spec.height);
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(s, "<rect width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>");
    match spec.layout {
        Layout::DiskPair => disk_pair(spec, &mut s),
        Layout::Flat => flat(spec, &mut s),
    }
    if !spec.labels.is_empty() {
        for (i, label) in spec.labels.iter().enumerate() {
            let _ = writeln!(
                s,
                "<text x=\"10\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" fill=\"{}\">{}</text>",
                16 + 14 * i,
                color(spec, i),
                escape(label)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Disk {
    cx: f64,
    cy: f64,
    r: f64,
    mirror: bool,
}

impl Disk {
    /// The south disk is mirrored so that both rims read the equator in the
    /// same direction when the sphere is opened like a book.
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let x = if self.mirror { -x } else { x };
        (self.cx + self.r * x, self.cy - self.r * y)
    }

    fn at_turn(&self, t: f64) -> (f64, f64) {
        let a = 2.0 * std::f64::consts::PI * t;
        self.map(a.cos(), a.sin())
    }
}

fn scaffold_disk(spec: &RenderSpec, disk: &Disk, title: &str, s: &mut String) {
    let m = spec.model;
    let _ = writeln!(
        s,
        "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>",
        disk.cx, disk.cy, disk.r
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.3}\" y=\"{:.3}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{title}</text>",
        disk.cx,
        disk.cy + disk.r + 32.0
    );
    let len = m.circle_len() as f64;
    let (x, y) = disk.at_turn(0.0);
    let _ = writeln!(s, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"5\" fill=\"#000000\"/>");
    let (lx, ly) = disk.at_turn(0.0);
    let _ = writeln!(
        s,
        "<text x=\"{:.3}\" y=\"{:.3}\" font-family=\"serif\" font-size=\"14\">∞</text>",
        lx + if disk.mirror { -18.0 } else { 8.0 },
        ly + 5.0
    );
    for b in 0..m.block_count() {
        let t = m.block_pos(b) as f64 / len;
        let (x, y) = disk.at_turn(t);
        let _ = writeln!(s, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"#444444\"/>");
    }
    if m.gap_count() <= 17 {
        for g in 0..m.gap_count() {
            let (a, b) = gap_span(m, g);
            let (x, y) = disk.at_turn((a + b) / 2.0);
            let (dx, dy) = (x - disk.cx, y - disk.cy);
            let n = (dx * dx + dy * dy).sqrt().max(1e-9);
            let _ = writeln!(
                s,
                "<text x=\"{:.3}\" y=\"{:.3}\" font-family=\"monospace\" font-size=\"10\" fill=\"#666666\" text-anchor=\"middle\">g{g}</text>",
                x + 14.0 * dx / n,
                y + 14.0 * dy / n + 3.0
            );
        }
    }
}

fn disk_pair(spec: &RenderSpec, s: &mut String) {
    let (w, h) = (spec.width as f64, spec.height as f64);
    let r = (w / 4.0).min(h / 2.0) - 40.0;
    let north = Disk {
        cx: w / 4.0,
        cy: h / 2.0,
        r,
        mirror: false,
    };
    let south = Disk {
        cx: 3.0 * w / 4.0,
        cy: h / 2.0,
        r,
        mirror: true,
    };
    scaffold_disk(spec, &north, "north", s);
    scaffold_disk(spec, &south, "south", s);
    if spec.curves.is_empty() {
        return;
    }
    let words: Vec<&CrossingWord> = spec.curves.iter().collect();
    let real = realize_words(&words);
    for (c, chords) in real.curves.iter().enumerate() {
        let col = color(spec, c);
        for ch in chords {
            let disk = if ch.hemisphere == Hemisphere::North {
                &north
            } else {
                &south
            };
            let mut d = String::new();
            for (i, &(x, y)) in ch.points.iter().enumerate() {
                let (px, py) = disk.map(x, y);
                let _ = write!(d, "{}{px:.3},{py:.3}", if i == 0 { "M" } else { " L" });
            }
            let _ = writeln!(
                s,
                "<path d=\"{d}\" fill=\"none\" stroke=\"{col}\" stroke-width=\"1.6\"/>"
            );
        }
    }
    if spec.highlight_intersections {
        for c1 in 0..real.curves.len() {
            for c2 in c1..real.curves.len() {
                for (i, x) in real.curves[c1].iter().enumerate() {
                    let rest = if c1 == c2 {
                        &real.curves[c2][i + 1..]
                    } else {
                        &real.curves[c2][..]
                    };
                    for y in rest {
                        if x.hemisphere != y.hemisphere {
                            continue;
                        }
                        let shared = [x.from_angle, x.to_angle]
                            .iter()
                            .any(|t| *t == y.from_angle || *t == y.to_angle);
                        if shared {
                            continue;
                        }
                        let disk = if x.hemisphere == Hemisphere::North {
                            &north
                        } else {
                            &south
                        };
                        for (px, py) in x.geodesic.meet(&y.geodesic) {
                            let (qx, qy) = disk.map(px, py);
                            let _ = writeln!(
                                s,
                                "<circle cx=\"{qx:.3}\" cy=\"{qy:.3}\" r=\"4\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.2\"/>"
                            );
                        }
                    }
                }
            }
        }
    }
}

fn flat(spec: &RenderSpec, s: &mut String) {
    let m = spec.model;
    let (w, h) = (spec.width as f64, spec.height as f64);
    let (x0, x1, y) = (30.0, w - 30.0, h / 2.0);
    let to_x = |t: f64| x0 + (x1 - x0) * t;
    // Arcs are flattened vertically so the widest one fits the image.
    let squash = ((h / 2.0 - 30.0) / ((x1 - x0) / 2.0)).min(1.0);
    let _ = writeln!(
        s,
        "<line x1=\"{x0:.3}\" y1=\"{y:.3}\" x2=\"{x1:.3}\" y2=\"{y:.3}\" stroke=\"#888888\" stroke-width=\"1\"/>"
    );
    for x in [x0, x1] {
        let _ = writeln!(s, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"5\" fill=\"#000000\"/>");
    }
    let len = m.circle_len() as f64;
    for b in 0..m.block_count() {
        let x = to_x(m.block_pos(b) as f64 / len);
        let _ = writeln!(s, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"#444444\"/>");
    }
    if spec.curves.is_empty() {
        return;
    }
    let words: Vec<&CrossingWord> = spec.curves.iter().collect();
    let d = ChordDiagram::build(&words);
    let circle = d.circle() as f64;
    for (c, chords) in d.chords.iter().enumerate() {
        let col = color(spec, c);
        for ch in chords {
            // A chord ending at ∞ attaches to whichever end of the line is
            // nearer its other endpoint.
            let (mut a, mut b) = (ch.from as f64 / circle, ch.to as f64 / circle);
            if ch.from == 0 {
                a = if b > 0.5 { 1.0 } else { 0.0 };
            }
            if ch.to == 0 {
                b = if a > 0.5 { 1.0 } else { 0.0 };
            }
            let (xa, xb) = (to_x(a), to_x(b));
            let r = (xb - xa).abs() / 2.0;
            let ry = r * squash;
            let sweep = match (ch.hemisphere, xa < xb) {
                (Hemisphere::North, true) | (Hemisphere::South, false) => 1,
                _ => 0,
            };
            let _ = writeln!(
                s,
                "<path d=\"M{xa:.3},{y:.3} A{r:.3},{ry:.3} 0 0 {sweep} {xb:.3},{y:.3}\" fill=\"none\" stroke=\"{col}\" stroke-width=\"1.6\"/>"
            );
        }
    }
}
