//! Deterministic SVG rendering of planar figures.
//!
//! Polytope regions are traced from a membership raster (marching squares,
//! crossings refined by bisection, then simplified with corners recovered);
//! geodesics are drawn from their exact breakpoints.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geodesic::{self, GeodesicSpan};
use crate::hull::{self, Polytope};
use crate::riesz::{Point, SpaceCtx};

pub const DEFAULT_RESOLUTION: f64 = 64.0;

/// Minimum number of `γ̂` samples in a rendered geodesic path.
pub const GEODESIC_SAMPLES: usize = 128;

pub type Xy = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Viewport {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        let ok = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) && xmin < xmax && ymin < ymax;
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "bad viewport [{xmin}, {xmax}] x [{ymin}, {ymax}]"
            )));
        }
        Ok(Viewport {
            xmin,
            xmax,
            ymin,
            ymax,
        })
    }

    /// Integer-aligned box around `pts`, padded by `margin`.
    pub fn around(pts: &[Xy], margin: f64) -> Result<Self> {
        if pts.is_empty() {
            return Err(Error::InvalidArgument("nothing to frame".into()));
        }
        let fold = |k: usize, init: f64, f: fn(f64, f64) -> f64| pts.iter().map(|p| p[k]).fold(init, f);
        Viewport::new(
            (fold(0, f64::INFINITY, f64::min) - margin).floor(),
            (fold(0, f64::NEG_INFINITY, f64::max) + margin).ceil(),
            (fold(1, f64::INFINITY, f64::min) - margin).floor(),
            (fold(1, f64::NEG_INFINITY, f64::max) + margin).ceil(),
        )
    }
}

/// A drawable element. Coordinates are in model space (y up).
#[derive(Debug, Clone, PartialEq)]
pub enum Layer {
    PolytopeFill { outlines: Vec<Vec<Xy>> },
    SegmentPath { points: Vec<Xy> },
    PointMarker { at: Xy },
    BallOutline { outlines: Vec<Vec<Xy>> },
    Axis,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    ctx: SpaceCtx,
    viewport: Viewport,
    resolution: f64,
    layers: Vec<Layer>,
}

fn xy(p: &Point) -> Xy {
    [p.coords()[0], p.coords()[1]]
}

impl Scene {
    pub fn new(ctx: SpaceCtx, viewport: Viewport, resolution: f64) -> Result<Self> {
        if ctx.dim() != 2 {
            return Err(Error::NotPlanar(ctx.dim()));
        }
        if !(resolution.is_finite() && resolution > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "resolution {resolution} must be positive"
            )));
        }
        Ok(Scene {
            ctx,
            viewport,
            resolution,
            layers: Vec::new(),
        })
    }

    /// A scene framing `pts` with a one-unit margin at the default resolution.
    pub fn framing(ctx: SpaceCtx, pts: &[Point]) -> Result<Self> {
        if ctx.dim() != 2 {
            return Err(Error::NotPlanar(ctx.dim()));
        }
        let v = Viewport::around(&pts.iter().map(xy).collect::<Vec<_>>(), 1.0)?;
        Scene::new(ctx, v, DEFAULT_RESOLUTION)
    }

    pub fn ctx(&self) -> &SpaceCtx {
        &self.ctx
    }

    pub fn viewport(&self) -> Viewport {
        self.viewport
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn push(&mut self, layer: Layer) {
        self.layers.push(layer);
    }

    pub fn extend(&mut self, layers: impl IntoIterator<Item = Layer>) {
        self.layers.extend(layers);
    }

    fn px(&self, p: Xy) -> (f64, f64) {
        let v = &self.viewport;
        ((p[0] - v.xmin) * self.resolution, (v.ymax - p[1]) * self.resolution)
    }

    fn path_data(&self, pts: &[Xy], closed: bool) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.px(*p);
            let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, num(x), num(y));
        }
        if closed {
            d.push_str(" Z");
        }
        d
    }

    /// SVG 1.1 document. Identical scenes give identical bytes.
    pub fn to_svg(&self) -> String {
        let v = &self.viewport;
        let w = (v.xmax - v.xmin) * self.resolution;
        let h = (v.ymax - v.ymin) * self.resolution;
        let stroke = num(self.resolution / 32.0);
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">",
            num(w),
            num(h)
        );
        let _ = writeln!(s, "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>", num(w), num(h));
        for layer in &self.layers {
            match layer {
                Layer::Axis => {
                    let _ = writeln!(s, "<g class=\"axis\" stroke=\"#999999\" stroke-width=\"{stroke}\">");
                    if v.ymin <= 0.0 && 0.0 <= v.ymax {
                        let (x0, y0) = self.px([v.xmin, 0.0]);
                        let (x1, _) = self.px([v.xmax, 0.0]);
                        let _ = writeln!(
                            s,
                            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                            num(x0),
                            num(y0),
                            num(x1),
                            num(y0)
                        );
                    }
                    if v.xmin <= 0.0 && 0.0 <= v.xmax {
                        let (x0, y0) = self.px([0.0, v.ymax]);
                        let (_, y1) = self.px([0.0, v.ymin]);
                        let _ = writeln!(
                            s,
                            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                            num(x0),
                            num(y0),
                            num(x0),
                            num(y1)
                        );
                    }
                    s.push_str("</g>\n");
                }
                Layer::PolytopeFill { outlines } | Layer::BallOutline { outlines } => {
                    let (class, fill) = match layer {
                        Layer::PolytopeFill { .. } => ("polytope", "#9ecae1"),
                        _ => ("ball", "none"),
                    };
                    let d: Vec<String> = outlines.iter().map(|o| self.path_data(o, true)).collect();
                    let _ = writeln!(
                        s,
                        "<path class=\"{class}\" d=\"{}\" fill=\"{fill}\" fill-rule=\"evenodd\" stroke=\"#08519c\" stroke-width=\"{stroke}\"/>",
                        d.join(" ")
                    );
                }
                Layer::SegmentPath { points } => {
                    let _ = writeln!(
                        s,
                        "<path class=\"segment\" d=\"{}\" fill=\"none\" stroke=\"#d94801\" stroke-width=\"{stroke}\"/>",
                        self.path_data(points, false)
                    );
                }
                Layer::PointMarker { at } => {
                    let (x, y) = self.px(*at);
                    let _ = writeln!(
                        s,
                        "<circle class=\"marker\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>",
                        num(x),
                        num(y),
                        num(self.resolution / 16.0)
                    );
                }
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Fixed-precision number formatting without trailing zeros or `-0`.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Traces the boundary of the region `{z : inside(z)}` inside `viewport`.
///
/// Returns closed outlines (first vertex not repeated). Components smaller
/// than two square pixels are dropped, so lower-dimensional pieces of a
/// region leave no outline.
pub fn trace_region<F: Fn(Xy) -> bool>(inside: F, viewport: Viewport, resolution: f64) -> Vec<Vec<Xy>> {
    let h = 1.0 / resolution;
    let w = ((viewport.xmax - viewport.xmin) * resolution).round() as usize;
    let ht = ((viewport.ymax - viewport.ymin) * resolution).round() as usize;
    let node = |i: usize, j: usize| [viewport.xmin + i as f64 * h, viewport.ymin + j as f64 * h];
    // nodes on the frame count as outside so every outline closes
    let raster: Vec<Vec<bool>> = (0..=ht)
        .map(|j| {
            (0..=w)
                .map(|i| i > 0 && j > 0 && i < w && j < ht && inside(node(i, j)))
                .collect()
        })
        .collect();
    let at = |i: usize, j: usize| raster[j][i];

    // edge key: (vertical?, i, j) for the edge leaving node (i, j) right or up
    type Key = (bool, usize, usize);
    let mut adj: BTreeMap<Key, Vec<Key>> = BTreeMap::new();
    let mut link = |a: Key, b: Key| {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    };
    for j in 0..ht {
        for i in 0..w {
            let (bl, br, tr, tl) = (at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
            let bottom = (false, i, j);
            let right = (true, i + 1, j);
            let top = (false, i, j + 1);
            let left = (true, i, j);
            let mut cut = Vec::with_capacity(4);
            if bl != br {
                cut.push(bottom);
            }
            if br != tr {
                cut.push(right);
            }
            if tr != tl {
                cut.push(top);
            }
            if tl != bl {
                cut.push(left);
            }
            match cut.len() {
                2 => link(cut[0], cut[1]),
                4 => {
                    let c = node(i, j);
                    let center = inside([c[0] + 0.5 * h, c[1] + 0.5 * h]);
                    // bl and tr share a value; decide which pair of corners to isolate
                    if (bl && center) || (!bl && !center) {
                        link(bottom, right);
                        link(top, left);
                    } else {
                        link(left, bottom);
                        link(right, top);
                    }
                }
                _ => {}
            }
        }
    }

    let crossing = |k: Key| -> Xy {
        let (vertical, i, j) = k;
        let a = node(i, j);
        let b = if vertical { node(i, j + 1) } else { node(i + 1, j) };
        let a_in = at(i, j);
        let (mut lo, mut hi) = if a_in { (a, b) } else { (b, a) };
        for _ in 0..40 {
            let mid = [(lo[0] + hi[0]) * 0.5, (lo[1] + hi[1]) * 0.5];
            if inside(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };

    let mut seen: BTreeMap<Key, bool> = BTreeMap::new();
    let mut outlines = Vec::new();
    let keys: Vec<Key> = adj.keys().copied().collect();
    for start in keys {
        if seen.contains_key(&start) {
            continue;
        }
        let mut ring = vec![start];
        seen.insert(start, true);
        let mut prev = start;
        let mut cur = adj[&start][0];
        while cur != start {
            if seen.insert(cur, true).is_some() {
                break;
            }
            ring.push(cur);
            let next = adj[&cur].iter().copied().find(|k| *k != prev).unwrap_or(prev);
            prev = cur;
            cur = next;
        }
        let pts: Vec<Xy> = ring.into_iter().map(crossing).collect();
        if area(&pts).abs() < 2.0 * h * h {
            continue;
        }
        outlines.push(clean_outline(pts, h));
    }
    outlines
}

fn area(pts: &[Xy]) -> f64 {
    let n = pts.len();
    (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            a[0] * b[1] - b[0] * a[1]
        })
        .sum::<f64>()
        * 0.5
}

fn dist(a: Xy, b: Xy) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn seg_dist(p: Xy, a: Xy, b: Xy) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0);
    dist(p, [a[0] + t * dx, a[1] + t * dy])
}

fn rdp(pts: &[Xy], tol: f64, out: &mut Vec<Xy>) {
    let (a, b) = (pts[0], pts[pts.len() - 1]);
    let mut far = (0.0, 0);
    for (i, p) in pts.iter().enumerate().take(pts.len() - 1).skip(1) {
        let d = seg_dist(*p, a, b);
        if d > far.0 {
            far = (d, i);
        }
    }
    if far.0 > tol {
        rdp(&pts[..=far.1], tol, out);
        out.pop();
        rdp(&pts[far.1..], tol, out);
    } else {
        out.push(a);
        out.push(b);
    }
}

fn line_intersection(a1: Xy, a2: Xy, b1: Xy, b2: Xy) -> Option<Xy> {
    let (dx1, dy1) = (a2[0] - a1[0], a2[1] - a1[1]);
    let (dx2, dy2) = (b2[0] - b1[0], b2[1] - b1[1]);
    let den = dx1 * dy2 - dy1 * dx2;
    if den.abs() < 1e-12 * (dx1.hypot(dy1) * dx2.hypot(dy2)).max(1e-300) {
        return None;
    }
    let t = ((b1[0] - a1[0]) * dy2 - (b1[1] - a1[1]) * dx2) / den;
    Some([a1[0] + t * dx1, a1[1] + t * dy1])
}

/// Simplifies a traced ring and snaps corners: edges shorter than 1.5 px
/// are replaced by the intersection of the neighbouring edge lines.
fn clean_outline(ring: Vec<Xy>, h: f64) -> Vec<Xy> {
    // split the ring at its farthest pair so RDP sees two open chains
    let far = (1..ring.len())
        .max_by(|&i, &j| dist(ring[0], ring[i]).total_cmp(&dist(ring[0], ring[j])))
        .unwrap_or(0);
    let mut pts = Vec::new();
    if far == 0 {
        return ring;
    }
    let mut closed = ring.clone();
    closed.push(ring[0]);
    rdp(&closed[..=far], 0.2 * h, &mut pts);
    pts.pop();
    rdp(&closed[far..], 0.2 * h, &mut pts);
    pts.pop();

    loop {
        let n = pts.len();
        if n <= 3 {
            break;
        }
        let short = (0..n)
            .filter(|&i| dist(pts[i], pts[(i + 1) % n]) < 1.5 * h)
            .min_by(|&i, &j| {
                dist(pts[i], pts[(i + 1) % n]).total_cmp(&dist(pts[j], pts[(j + 1) % n]))
            });
        let Some(i) = short else { break };
        let (p0, a, b, p3) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n], pts[(i + 2) % n]);
        let mid = [(a[0] + b[0]) * 0.5, (a[1] + b[1]) * 0.5];
        let corner = match line_intersection(p0, a, b, p3) {
            Some(c) if dist(c, mid) < 2.0 * h => c,
            _ => mid,
        };
        pts[i] = corner;
        pts.remove((i + 1) % n);
    }
    // drop vertices where the outline goes straight on
    let mut i = 0;
    while pts.len() > 3 && i < pts.len() {
        let n = pts.len();
        let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
        if seg_dist(b, a, c) < 0.05 * h {
            pts.remove(i);
        } else {
            i += 1;
        }
    }
    // canonical start: lexicographically smallest vertex
    if let Some(k) = (0..pts.len()).min_by(|&i, &j| {
        pts[i][0]
            .total_cmp(&pts[j][0])
            .then(pts[i][1].total_cmp(&pts[j][1]))
    }) {
        pts.rotate_left(k);
    }
    pts
}

/// Outlines of a planar polytope at the scene's resolution.
pub fn trace_polytope(scene: &Scene, p: &Polytope) -> Result<Vec<Vec<Xy>>> {
    if p.ctx().dim() != 2 {
        return Err(Error::NotPlanar(p.ctx().dim()));
    }
    let inside = |z: Xy| p.member_raw(&z).inside;
    Ok(trace_region(inside, scene.viewport, scene.resolution))
}

/// Filled region, every pairwise-generator geodesic and the generators.
pub fn render_polytope(scene: &Scene, p: &Polytope) -> Result<Vec<Layer>> {
    let mut layers = vec![Layer::PolytopeFill {
        outlines: trace_polytope(scene, p)?,
    }];
    let ctx = p.ctx();
    for (i, a) in p.gens().iter().enumerate() {
        for b in &p.gens()[i + 1..] {
            let line = GeodesicSpan::new(ctx, a, b)?.polyline(ctx);
            if line.len() > 1 {
                layers.push(Layer::SegmentPath {
                    points: line.iter().map(xy).collect(),
                });
            }
        }
    }
    layers.extend(p.gens().iter().map(|g| Layer::PointMarker { at: xy(g) }));
    Ok(layers)
}

/// `γ̂` sampled at [`GEODESIC_SAMPLES`] + 1 evenly spaced parameters merged
/// with the exact breakpoints; a single marker when `x1 = x2`.
pub fn render_geodesic(scene: &Scene, x1: &Point, x2: &Point) -> Result<Layer> {
    let ctx = &scene.ctx;
    let sp = GeodesicSpan::new(ctx, x1, x2)?;
    if sp.length() <= ctx.eps() {
        return Ok(Layer::PointMarker { at: xy(x1) });
    }
    Ok(Layer::SegmentPath {
        points: geodesic_samples(ctx, &sp).iter().map(xy).collect(),
    })
}

/// Points of `γ̂` at evenly spaced parameters and at every breakpoint, in
/// parameter order.
pub fn geodesic_samples(ctx: &SpaceCtx, sp: &GeodesicSpan) -> Vec<Point> {
    let (a, b) = (sp.alpha(), sp.beta());
    let mut ts: Vec<f64> = (0..=GEODESIC_SAMPLES)
        .map(|k| a + (b - a) * k as f64 / GEODESIC_SAMPLES as f64)
        .collect();
    ts.extend(sp.breakpoints(ctx));
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * (1.0 + y.abs()));
    ts.iter()
        .map(|&t| {
            Point::from_raw(geodesic::eta_raw(
                ctx.unit(),
                sp.x1().coords(),
                sp.x2().coords(),
                t,
            ))
        })
        .collect()
}

/// Outline of the `D_hu` ball about `center`, with a centre marker.
pub fn render_ball(scene: &Scene, center: &Point, r: f64) -> Result<Vec<Layer>> {
    let ball = hull::ball_polytope_2d(&scene.ctx, center, r)?;
    Ok(vec![
        Layer::BallOutline {
            outlines: trace_polytope(scene, &ball)?,
        },
        Layer::PointMarker { at: xy(center) },
    ])
}

fn pts(ctx: &SpaceCtx, raw: &[Xy]) -> Result<Vec<Point>> {
    raw.iter().map(|p| ctx.point(p.to_vec())).collect()
}

/// The ball of radius `r` about `center` drawn as its generating polytope.
pub fn ball_figure(ctx: &SpaceCtx, center: &Point, r: f64) -> Result<Scene> {
    let ball = hull::ball_polytope_2d(ctx, center, r)?;
    let mut scene = Scene::framing(ctx.clone(), ball.feature_points().as_slice())?;
    scene.push(Layer::Axis);
    scene.extend(render_ball(&scene, center, r)?);
    scene.extend(render_polytope(&scene, &ball)?);
    Ok(scene)
}

/// A polytope with its pairwise geodesics and generators.
pub fn polytope_figure(p: &Polytope) -> Result<Scene> {
    let mut scene = Scene::framing(p.ctx().clone(), &p.feature_points())?;
    scene.push(Layer::Axis);
    scene.extend(render_polytope(&scene, p)?);
    Ok(scene)
}

/// The one-dimensional polytope with generators (−8,0), (−2,3), (−5,−4).
pub fn degenerate_figure() -> Result<Scene> {
    let ctx = SpaceCtx::ones(2)?;
    let p = Polytope::new(ctx.clone(), pts(&ctx, &[[-8.0, 0.0], [-2.0, 3.0], [-5.0, -4.0]])?)?;
    polytope_figure(&p)
}

/// Geodesics from `x1 = (−9,3)` to three endpoints, all sharing `⟦x1, x2⟧`
/// with `x2 = (−4,3)`.
pub fn extension_figure() -> Result<Scene> {
    let ctx = SpaceCtx::ones(2)?;
    let all = pts(&ctx, &[[-9.0, 3.0], [-4.0, 3.0], [0.0, 3.0], [-1.0, 6.0], [-4.0, -2.0]])?;
    let mut scene = Scene::framing(ctx.clone(), &all)?;
    scene.push(Layer::Axis);
    for end in &all[2..] {
        scene.push(render_geodesic(&scene, &all[0], end)?);
    }
    scene.extend(all.iter().map(|p| Layer::PointMarker { at: xy(p) }));
    Ok(scene)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    #[test]
    fn hexagon_trace() {
        let ctx = SpaceCtx::ones(2).unwrap();
        let scene = ball_figure(&ctx, &pt(&[0.0, 0.0]), 2.0).unwrap();
        let Layer::BallOutline { outlines } = &scene.layers()[1] else {
            panic!("unexpected layer order");
        };
        assert_eq!(outlines.len(), 1);
        let got = &outlines[0];
        let want = [[0.0, 2.0], [2.0, 2.0], [2.0, 0.0], [0.0, -2.0], [-2.0, -2.0], [-2.0, 0.0]];
        assert_eq!(got.len(), 6, "{got:?}");
        for w in want {
            assert!(got.iter().any(|g| dist(*g, w) <= 1.0 / 64.0), "{w:?} missing in {got:?}");
        }
    }

    #[test]
    fn degenerate_polytope_has_no_area() {
        let scene = degenerate_figure().unwrap();
        let fills: Vec<_> = scene
            .layers()
            .iter()
            .filter_map(|l| match l {
                Layer::PolytopeFill { outlines } => Some(outlines.len()),
                _ => None,
            })
            .collect();
        assert_eq!(fills, vec![0]);
    }

    #[test]
    fn geodesic_layers() {
        let ctx = SpaceCtx::ones(2).unwrap();
        let scene = Scene::new(ctx, Viewport::new(-1.0, 3.0, -1.0, 3.0).unwrap(), 64.0).unwrap();
        let Layer::SegmentPath { points } = render_geodesic(&scene, &pt(&[0.0, 2.0]), &pt(&[2.0, 0.0])).unwrap()
        else {
            panic!("expected a path");
        };
        assert!(points.len() > GEODESIC_SAMPLES);
        assert!(points.contains(&[2.0, 2.0]));
        assert_eq!(points[0], [0.0, 2.0]);
        assert_eq!(*points.last().unwrap(), [2.0, 0.0]);
        let single = render_geodesic(&scene, &pt(&[1.0, 1.0]), &pt(&[1.0, 1.0])).unwrap();
        assert_eq!(single, Layer::PointMarker { at: [1.0, 1.0] });
    }

    #[test]
    fn svg_is_deterministic() {
        let a = degenerate_figure().unwrap().to_svg();
        let b = degenerate_figure().unwrap().to_svg();
        assert_eq!(a, b);
        assert!(a.starts_with("<?xml"));
        assert!(a.contains("version=\"1.1\""));
    }

    #[test]
    fn higher_dimensions_rejected() {
        let ctx = SpaceCtx::ones(3).unwrap();
        let v = Viewport::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(Scene::new(ctx, v, 64.0), Err(Error::NotPlanar(3)));
    }

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-0.0001), "0");
        assert_eq!(num(2.5), "2.5");
    }
}
