//! Geometric realization used as an independent check on the chord
//! combinatorics.
//!
//! Each hemisphere is a unit disk whose boundary is the equator. A boundary
//! coordinate `u` sits at angle `2πu / circle`. Every chord is drawn as the
//! hyperbolic geodesic between its endpoints (a circular arc orthogonal to the
//! boundary, or a diameter). Crossings are found by intersecting the circles
//! analytically and keeping points strictly inside the disk.

use std::f64::consts::PI;

use crate::order::ChordDiagram;
use crate::word::{CrossingWord, Curve, Hemisphere};

/// Points closer than this (in `1 - |p|^2`) to the equator are treated as
/// boundary contacts, not crossings.
const BOUNDARY_EPS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geodesic {
    /// Circle orthogonal to the unit circle.
    Arc { cx: f64, cy: f64, r: f64 },
    /// Line through the origin with unit direction `(dx, dy)`.
    Diameter { dx: f64, dy: f64 },
}

impl Geodesic {
    pub fn between(t1: f64, t2: f64) -> Geodesic {
        let half = (t2 - t1) / 2.0;
        let mid = (t1 + t2) / 2.0;
        let c = half.cos();
        if c.abs() < 1e-12 {
            return Geodesic::Diameter {
                dx: t1.cos(),
                dy: t1.sin(),
            };
        }
        Geodesic::Arc {
            cx: mid.cos() / c,
            cy: mid.sin() / c,
            r: half.tan().abs(),
        }
    }

    /// Intersection points with `other` strictly inside the unit disk.
    pub fn meet(&self, other: &Geodesic) -> Vec<(f64, f64)> {
        let raw = match (*self, *other) {
            (Geodesic::Diameter { dx, dy }, Geodesic::Diameter { dx: ex, dy: ey }) => {
                if (dx * ey - dy * ex).abs() < 1e-15 {
                    vec![]
                } else {
                    vec![(0.0, 0.0)]
                }
            }
            (Geodesic::Diameter { dx, dy }, Geodesic::Arc { cx, cy, r })
            | (Geodesic::Arc { cx, cy, r }, Geodesic::Diameter { dx, dy }) => {
                let b = dx * cx + dy * cy;
                let disc = b * b - (cx * cx + cy * cy - r * r);
                if disc < 0.0 {
                    vec![]
                } else {
                    let s = disc.sqrt();
                    vec![((b - s) * dx, (b - s) * dy), ((b + s) * dx, (b + s) * dy)]
                }
            }
            (Geodesic::Arc { cx, cy, r }, Geodesic::Arc { cx: ex, cy: ey, r: s }) => {
                let (vx, vy) = (ex - cx, ey - cy);
                let d2 = vx * vx + vy * vy;
                let d = d2.sqrt();
                if d == 0.0 || d > r + s || d < (r - s).abs() {
                    vec![]
                } else {
                    let a = (r * r - s * s + d2) / (2.0 * d);
                    let h = (r * r - a * a).max(0.0).sqrt();
                    let (ux, uy) = (vx / d, vy / d);
                    let (px, py) = (cx + a * ux, cy + a * uy);
                    vec![(px - h * uy, py + h * ux), (px + h * uy, py - h * ux)]
                }
            }
        };
        let mut out: Vec<(f64, f64)> = raw
            .into_iter()
            .filter(|&(x, y)| 1.0 - (x * x + y * y) > BOUNDARY_EPS)
            .collect();
        out.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-12 && (p.1 - q.1).abs() < 1e-12);
        out
    }
}

/// One chord drawn in its hemisphere disk.
#[derive(Debug, Clone, PartialEq)]
pub struct RealChord {
    pub hemisphere: Hemisphere,
    pub from_angle: f64,
    pub to_angle: f64,
    pub geodesic: Geodesic,
    /// Sampled points along the arc, clustered towards the endpoints.
    pub points: Vec<(f64, f64)>,
}

/// Polyline realization of one or more curves drawn together.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    /// `curves[c]` holds the chords of curve `c` in traversal order.
    pub curves: Vec<Vec<RealChord>>,
}

/// Samples per chord in the polyline output.
pub const SAMPLES: usize = 24;

fn sample(t1: f64, t2: f64, g: &Geodesic) -> Vec<(f64, f64)> {
    let p = (t1.cos(), t1.sin());
    let q = (t2.cos(), t2.sin());
    match *g {
        Geodesic::Diameter { .. } => (0..=SAMPLES)
            .map(|k| {
                let s = (1.0 - (PI * k as f64 / SAMPLES as f64).cos()) / 2.0;
                (p.0 + s * (q.0 - p.0), p.1 + s * (q.1 - p.1))
            })
            .collect(),
        Geodesic::Arc { cx, cy, r } => {
            let a1 = (p.1 - cy).atan2(p.0 - cx);
            let mut a2 = (q.1 - cy).atan2(q.0 - cx);
            // The part inside the disk is the minor arc.
            if a2 - a1 > PI {
                a2 -= 2.0 * PI;
            } else if a1 - a2 > PI {
                a2 += 2.0 * PI;
            }
            (0..=SAMPLES)
                .map(|k| {
                    let s = (1.0 - (PI * k as f64 / SAMPLES as f64).cos()) / 2.0;
                    let a = a1 + s * (a2 - a1);
                    (cx + r * a.cos(), cy + r * a.sin())
                })
                .collect()
        }
    }
}

fn realize_diagram(d: &ChordDiagram) -> Realization {
    let circle = d.circle() as f64;
    let angle = |u: u64| 2.0 * PI * u as f64 / circle;
    let curves = d
        .chords
        .iter()
        .map(|chords| {
            chords
                .iter()
                .map(|c| {
                    let (t1, t2) = (angle(c.from), angle(c.to));
                    let geodesic = Geodesic::between(t1, t2);
                    RealChord {
                        hemisphere: c.hemisphere,
                        from_angle: t1,
                        to_angle: t2,
                        geodesic,
                        points: sample(t1, t2, &geodesic),
                    }
                })
                .collect()
        })
        .collect();
    Realization { curves }
}

pub fn realize_words(words: &[&CrossingWord]) -> Realization {
    if words.is_empty() {
        return Realization { curves: vec![] };
    }
    realize_diagram(&ChordDiagram::build(words))
}

pub fn realize_polyline(curve: &Curve) -> Realization {
    realize_words(&[curve.word()])
}

fn count_between(x: &[RealChord], y: &[RealChord], same: bool) -> usize {
    let mut n = 0;
    for (i, c) in x.iter().enumerate() {
        let rest = if same { &y[i + 1..] } else { y };
        for e in rest {
            if c.hemisphere == e.hemisphere && !degenerate(c) && !degenerate(e) && !shares_endpoint(c, e) {
                n += c.geodesic.meet(&e.geodesic).len();
            }
        }
    }
    n
}

/// Geodesics with a common ideal endpoint are tangent there and meet nowhere
/// else; numerically their circles may still report a near-boundary point.
fn shares_endpoint(c: &RealChord, e: &RealChord) -> bool {
    [c.from_angle, c.to_angle]
        .iter()
        .any(|t| *t == e.from_angle || *t == e.to_angle)
}

/// A chord whose endpoints coincide (both at one anchor) has no interior.
fn degenerate(c: &RealChord) -> bool {
    (c.from_angle - c.to_angle).abs() < 1e-15
}

impl Realization {
    pub fn self_crossings(&self, c: usize) -> usize {
        count_between(&self.curves[c], &self.curves[c], true)
    }

    pub fn crossings(&self, c1: usize, c2: usize) -> usize {
        count_between(&self.curves[c1], &self.curves[c2], false)
    }

    pub fn is_embedded(&self, c: usize) -> bool {
        self.self_crossings(c) == 0
    }
}

/// Geometric crossing count of two words drawn together.
pub fn geometric_intersections(a: &CrossingWord, b: &CrossingWord) -> usize {
    realize_words(&[a, b]).crossings(0, 1)
}
