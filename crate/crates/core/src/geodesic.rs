//! The parametrized geodesics of `(E, D_hu)`.
//!
//! For a pair `(x1, x2)` the parameter interval is `[α, β]` with
//! `α = min{0, q_u(x1 − x2)}` and `β = max{0, p_u(x1 − x2)}`, and
//!
//! ```text
//! γ(t) = x1 ∨ (x2 + t·u)     for α ≤ t ≤ 0
//! γ(t) = (x1 − t·u) ∨ x2     for 0 ≤ t ≤ β
//! ```
//!
//! is an isometry from `[α, β]` onto the max-plus segment `⟦x1, x2⟧`.

use crate::error::{Error, Result};
use crate::riesz::{self, Point, SpaceCtx};

/// Largest `k` accepted by [`dyadic_chain`]; `2^k + 1` points are materialized.
pub const MAX_DYADIC_LEVEL: u32 = 24;

/// Endpoints of a geodesic together with its parameter interval `[alpha, beta]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicSpan {
    x1: Point,
    x2: Point,
    alpha: f64,
    beta: f64,
}

impl GeodesicSpan {
    pub fn new(ctx: &SpaceCtx, x1: &Point, x2: &Point) -> Result<Self> {
        ctx.check(x1)?;
        ctx.check(x2)?;
        let u = ctx.unit();
        let alpha = riesz::q_u_diff(u, x1.coords(), x2.coords()).min(0.0);
        let beta = riesz::p_u_diff(u, x1.coords(), x2.coords()).max(0.0);
        Ok(GeodesicSpan {
            x1: x1.clone(),
            x2: x2.clone(),
            alpha,
            beta,
        })
    }

    pub fn x1(&self) -> &Point {
        &self.x1
    }

    pub fn x2(&self) -> &Point {
        &self.x2
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `β − α`, which equals `D_hu(x1, x2)`.
    pub fn length(&self) -> f64 {
        self.beta - self.alpha
    }

    /// `γ(t)`; `t` must lie in `[α − eps, β + eps]`.
    pub fn gamma(&self, ctx: &SpaceCtx, t: f64) -> Result<Point> {
        ctx.check(&self.x1)?;
        let eps = ctx.eps();
        if !(t >= self.alpha - eps && t <= self.beta + eps) {
            return Err(Error::OutOfDomain {
                t,
                lo: self.alpha,
                hi: self.beta,
            });
        }
        let t = t.clamp(self.alpha, self.beta);
        // the ends are the endpoints themselves; skip the rounding of x ∓ t·u
        if t == self.alpha {
            return Ok(self.x1.clone());
        }
        if t == self.beta {
            return Ok(self.x2.clone());
        }
        Ok(Point::from_raw(eta_raw(
            ctx.unit(),
            self.x1.coords(),
            self.x2.coords(),
            t,
        )))
    }

    /// `γ̂(s) = γ((1 − s)·α + s·β)` for `s ∈ [0, 1]`.
    pub fn gamma_hat(&self, ctx: &SpaceCtx, s: f64) -> Result<Point> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::OutOfDomain { t: s, lo: 0.0, hi: 1.0 });
        }
        self.gamma(ctx, self.affine_param(s))
    }

    fn affine_param(&self, s: f64) -> f64 {
        (1.0 - s) * self.alpha + s * self.beta
    }

    /// Parameter values in `[α, β]` where the active coordinate branch of
    /// `γ` changes, including both ends. Sorted and deduplicated.
    pub fn breakpoints(&self, ctx: &SpaceCtx) -> Vec<f64> {
        let eps = ctx.eps();
        let mut ts = vec![self.alpha, 0.0, self.beta];
        for ((a, b), w) in self.x1.coords().iter().zip(self.x2.coords()).zip(ctx.unit()) {
            let t = (a - b) / w;
            if t > self.alpha && t < self.beta {
                ts.push(t);
            }
        }
        ts.sort_by(|a, b| a.total_cmp(b));
        ts.dedup_by(|a, b| (*a - *b).abs() <= eps);
        ts
    }

    /// The geodesic as a polyline: its images at the breakpoints with
    /// collinear interior vertices removed. A degenerate span gives one point.
    pub fn polyline(&self, ctx: &SpaceCtx) -> Vec<Point> {
        let u = ctx.unit();
        let eps = ctx.eps();
        let params = self.breakpoints(ctx);
        let mut kept: Vec<(f64, Vec<f64>)> = Vec::with_capacity(params.len());
        for t in params {
            let p = eta_raw(u, self.x1.coords(), self.x2.coords(), t);
            if let Some((_, last)) = kept.last() {
                if riesz::approx_eq(last, &p, eps) {
                    continue;
                }
            }
            // drop the previous vertex if it lies on the chord from its predecessor to p
            if kept.len() >= 2 {
                let (ta, a) = &kept[kept.len() - 2];
                let (tm, m) = &kept[kept.len() - 1];
                let w = (tm - ta) / (t - ta);
                let on_chord = a
                    .iter()
                    .zip(&p)
                    .zip(m)
                    .all(|((a, b), m)| (a + w * (b - a) - m).abs() <= eps * (1.0 + a.abs()));
                if on_chord {
                    kept.pop();
                }
            }
            kept.push((t, p));
        }
        kept.into_iter().map(|(_, p)| Point::from_raw(p)).collect()
    }
}

pub fn span(ctx: &SpaceCtx, x1: &Point, x2: &Point) -> Result<GeodesicSpan> {
    GeodesicSpan::new(ctx, x1, x2)
}

/// The extended map `η`: defined for every real `t`, constant `x1` below
/// `α` and constant `x2` above `β`.
pub fn eta(ctx: &SpaceCtx, x1: &Point, x2: &Point, t: f64) -> Result<Point> {
    ctx.check(x1)?;
    ctx.check(x2)?;
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("parameter {t} is not finite")));
    }
    Ok(Point::from_raw(eta_raw(ctx.unit(), x1.coords(), x2.coords(), t)))
}

pub(crate) fn eta_raw(u: &[f64], x1: &[f64], x2: &[f64], t: f64) -> Vec<f64> {
    if t <= 0.0 {
        x1.iter()
            .zip(x2)
            .zip(u)
            .map(|((a, b), w)| a.max(b + t * w))
            .collect()
    } else {
        x1.iter()
            .zip(x2)
            .zip(u)
            .map(|((a, b), w)| (a - t * w).max(*b))
            .collect()
    }
}

/// `γ̂(x1, x2, s)` for `s ∈ [0, 1]`.
pub fn gamma_hat(ctx: &SpaceCtx, x1: &Point, x2: &Point, s: f64) -> Result<Point> {
    GeodesicSpan::new(ctx, x1, x2)?.gamma_hat(ctx, s)
}

/// The max-plus midpoint `μ(x1, x2) = γ̂(x1, x2, 1/2)`. Symmetric in its
/// arguments.
pub fn midpoint(ctx: &SpaceCtx, x1: &Point, x2: &Point) -> Result<Point> {
    ctx.check(x1)?;
    ctx.check(x2)?;
    Ok(Point::from_raw(midpoint_raw(ctx.unit(), x1.coords(), x2.coords())))
}

pub(crate) fn midpoint_raw(u: &[f64], x1: &[f64], x2: &[f64]) -> Vec<f64> {
    let alpha = riesz::q_u_diff(u, x1, x2).min(0.0);
    let beta = riesz::p_u_diff(u, x1, x2).max(0.0);
    eta_raw(u, x1, x2, 0.5 * alpha + 0.5 * beta)
}

/// Dyadic samples `γ̂(j / 2^k)`, `j = 0..=2^k`, together with the largest
/// coordinate gap between them and the chain built by repeated midpoints.
#[derive(Debug, Clone)]
pub struct DyadicChain {
    pub points: Vec<Point>,
    /// `max_j ‖direct_j − recursive_j‖_u` over the chain.
    pub midpoint_deviation: f64,
}

/// Builds the dyadic chain both directly from `γ̂` and by repeated midpoint
/// insertion, and reports how far the two routes disagree.
pub fn dyadic_chain(ctx: &SpaceCtx, x1: &Point, x2: &Point, k: u32) -> Result<DyadicChain> {
    let direct = dyadic_chain_direct(ctx, x1, x2, k)?;
    let recursive = dyadic_chain_recursive(ctx, x1, x2, k)?;
    let u = ctx.unit();
    let midpoint_deviation = direct
        .iter()
        .zip(&recursive)
        .map(|(a, b)| riesz::dist_u(u, a.coords(), b.coords()))
        .fold(0.0, f64::max);
    Ok(DyadicChain {
        points: direct,
        midpoint_deviation,
    })
}

fn check_level(k: u32) -> Result<()> {
    if k > MAX_DYADIC_LEVEL {
        return Err(Error::InvalidArgument(format!(
            "dyadic level {k} exceeds {MAX_DYADIC_LEVEL}"
        )));
    }
    Ok(())
}

pub fn dyadic_chain_direct(ctx: &SpaceCtx, x1: &Point, x2: &Point, k: u32) -> Result<Vec<Point>> {
    check_level(k)?;
    let sp = GeodesicSpan::new(ctx, x1, x2)?;
    let m = 1usize << k;
    (0..=m)
        .map(|j| sp.gamma_hat(ctx, j as f64 / m as f64))
        .collect()
}

/// Level-by-level refinement: every new point is the midpoint of its two
/// neighbours from the previous level.
pub fn dyadic_chain_recursive(
    ctx: &SpaceCtx,
    x1: &Point,
    x2: &Point,
    k: u32,
) -> Result<Vec<Point>> {
    check_level(k)?;
    ctx.check(x1)?;
    ctx.check(x2)?;
    let u = ctx.unit();
    let mut level: Vec<Vec<f64>> = vec![x1.coords().to_vec(), x2.coords().to_vec()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(2 * level.len() - 1);
        for pair in level.windows(2) {
            next.push(pair[0].clone());
            next.push(midpoint_raw(u, &pair[0], &pair[1]));
        }
        next.push(level.pop().expect("chain is never empty"));
        level = next;
    }
    Ok(level.into_iter().map(Point::from_raw).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx2() -> SpaceCtx {
        SpaceCtx::ones(2).unwrap()
    }

    fn pt(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    #[test]
    fn span_examples() {
        let c = ctx2();
        let sp = span(&c, &pt(&[0.0, 2.0]), &pt(&[2.0, 0.0])).unwrap();
        assert_eq!((sp.alpha(), sp.beta()), (-2.0, 2.0));
        assert_eq!(sp.length(), 4.0);
        let x = pt(&[1.5, -3.0]);
        let deg = span(&c, &x, &x).unwrap();
        assert_eq!((deg.alpha(), deg.beta()), (0.0, 0.0));
    }

    #[test]
    fn eta_clamps() {
        let c = ctx2();
        let (a, b) = (pt(&[0.0, 2.0]), pt(&[2.0, 0.0]));
        assert_eq!(eta(&c, &a, &b, -5.0).unwrap(), a);
        assert_eq!(eta(&c, &a, &b, 5.0).unwrap(), b);
        assert_eq!(eta(&c, &a, &b, 0.0).unwrap(), pt(&[2.0, 2.0]));
        assert!(eta(&c, &a, &b, f64::NAN).is_err());
    }

    #[test]
    fn gamma_examples() {
        let c = ctx2();
        let sp = span(&c, &pt(&[0.0, 2.0]), &pt(&[2.0, 0.0])).unwrap();
        assert_eq!(sp.gamma(&c, -2.0).unwrap(), pt(&[0.0, 2.0]));
        assert_eq!(sp.gamma(&c, 0.0).unwrap(), pt(&[2.0, 2.0]));
        assert_eq!(sp.gamma(&c, 2.0).unwrap(), pt(&[2.0, 0.0]));
        let g = sp.gamma(&c, -1.0).unwrap();
        assert_eq!(g, pt(&[1.0, 2.0]));
        assert_eq!(c.dist_hu(&sp.gamma(&c, -2.0).unwrap(), &g).unwrap(), 1.0);
        assert!(matches!(sp.gamma(&c, 2.5), Err(Error::OutOfDomain { .. })));
        assert!(sp.gamma(&c, -2.0 - 1e-12).is_ok());
    }

    #[test]
    fn degenerate_gamma() {
        let c = ctx2();
        let x = pt(&[3.0, 1.0]);
        let sp = span(&c, &x, &x).unwrap();
        assert_eq!(sp.gamma(&c, 0.0).unwrap(), x);
        assert!(sp.gamma(&c, 0.1).is_err());
        assert_eq!(sp.gamma_hat(&c, 0.7).unwrap(), x);
        assert_eq!(sp.polyline(&c), vec![x]);
    }

    #[test]
    fn gamma_hat_examples() {
        let c = ctx2();
        let (a, b) = (pt(&[0.0, 2.0]), pt(&[2.0, 0.0]));
        assert_eq!(gamma_hat(&c, &a, &b, 0.5).unwrap(), pt(&[2.0, 2.0]));
        assert_eq!(gamma_hat(&c, &a, &b, 0.0).unwrap(), a);
        assert_eq!(gamma_hat(&c, &a, &b, 1.0).unwrap(), b);
        assert!(gamma_hat(&c, &a, &b, 1.5).is_err());
        assert!(gamma_hat(&c, &a, &b, -0.1).is_err());
    }

    #[test]
    fn midpoint_examples() {
        let c = ctx2();
        let (a, b) = (pt(&[0.0, 2.0]), pt(&[2.0, 0.0]));
        assert_eq!(midpoint(&c, &a, &b).unwrap(), pt(&[2.0, 2.0]));
        assert_eq!(midpoint(&c, &b, &a).unwrap(), pt(&[2.0, 2.0]));
        assert_eq!(midpoint(&c, &a, &a).unwrap(), a);
        assert_eq!(
            midpoint(&c, &pt(&[0.0, 0.0]), &pt(&[2.0, 2.0])).unwrap(),
            pt(&[1.0, 1.0])
        );
    }

    #[test]
    fn dyadic_examples() {
        let c = ctx2();
        let (a, b) = (pt(&[0.0, 2.0]), pt(&[2.0, 0.0]));
        let k1 = dyadic_chain(&c, &a, &b, 1).unwrap();
        assert_eq!(k1.points, vec![a.clone(), midpoint(&c, &a, &b).unwrap(), b.clone()]);
        let k2 = dyadic_chain(&c, &a, &b, 2).unwrap();
        let expected: Vec<Point> = [[0.0, 2.0], [1.0, 2.0], [2.0, 2.0], [2.0, 1.0], [2.0, 0.0]]
            .iter()
            .map(|p| pt(p))
            .collect();
        assert_eq!(k2.points, expected);
        assert_eq!(k2.midpoint_deviation, 0.0);
        let k0 = dyadic_chain(&c, &a, &b, 0).unwrap();
        assert_eq!(k0.points, vec![a.clone(), b.clone()]);
        assert!(dyadic_chain(&c, &a, &b, MAX_DYADIC_LEVEL + 1).is_err());
        for w in k2.points.windows(2) {
            assert_eq!(c.dist_hu(&w[0], &w[1]).unwrap(), 1.0);
        }
    }

    #[test]
    fn polyline_breakpoints() {
        let c = ctx2();
        let sp = span(&c, &pt(&[0.0, 2.0]), &pt(&[2.0, 0.0])).unwrap();
        assert_eq!(
            sp.polyline(&c),
            vec![pt(&[0.0, 2.0]), pt(&[2.0, 2.0]), pt(&[2.0, 0.0])]
        );
        // comparable pair: a single straight piece
        let sp = span(&c, &pt(&[-9.0, 3.0]), &pt(&[0.0, 3.0])).unwrap();
        assert_eq!(sp.polyline(&c), vec![pt(&[-9.0, 3.0]), pt(&[0.0, 3.0])]);
        let sp = span(&c, &pt(&[-9.0, 3.0]), &pt(&[-1.0, 6.0])).unwrap();
        assert_eq!(
            sp.polyline(&c),
            vec![pt(&[-9.0, 3.0]), pt(&[-4.0, 3.0]), pt(&[-1.0, 6.0])]
        );
    }

    #[test]
    fn weighted_unit() {
        let c = SpaceCtx::new(vec![1.0, 2.0]).unwrap();
        let (a, b) = (pt(&[0.0, 4.0]), pt(&[2.0, 0.0]));
        let sp = span(&c, &a, &b).unwrap();
        // q_u(a − b) = min(-2, 2) = -2, p_u(a − b) = max(-2, 2) = 2
        assert_eq!((sp.alpha(), sp.beta()), (-2.0, 2.0));
        assert_eq!(sp.gamma(&c, 0.0).unwrap(), pt(&[2.0, 4.0]));
        assert_eq!(c.dist_hu(&a, &b).unwrap(), sp.length());
    }
}
