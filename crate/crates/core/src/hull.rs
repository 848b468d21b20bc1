//! Max-plus polytopes `⟦x_1, …, x_m⟧`: the points
//! `(x_1 + t_1·u) ∨ ⋯ ∨ (x_m + t_m·u)` with every `t_i ≤ 0` and `max t_i = 0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geodesic::GeodesicSpan;
use crate::riesz::{self, Metric, Point, SpaceCtx};

/// A nonempty generator list and the context it lives in.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    ctx: SpaceCtx,
    gens: Vec<Point>,
}

/// Outcome of a membership query.
#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub inside: bool,
    /// Coefficients `t̄_i ≤ 0` with `max t̄_i = 0` whose combination
    /// reproduces the query point; present only when `inside`.
    pub witness: Option<Vec<f64>>,
}

/// A hull member closest to a query point, and its distance.
#[derive(Debug, Clone, PartialEq)]
pub struct Nearest {
    pub point: Point,
    pub distance: f64,
}

impl Polytope {
    pub fn new(ctx: SpaceCtx, gens: Vec<Point>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        for g in &gens {
            ctx.check(g)?;
        }
        Ok(Polytope { ctx, gens })
    }

    pub fn ctx(&self) -> &SpaceCtx {
        &self.ctx
    }

    pub fn gens(&self) -> &[Point] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Canonical-witness membership test.
    ///
    /// With `t_i = q_u(z − x_i)` and `t̄_i = min{t_i, 0}`, `z` is a member
    /// iff `max t_i ≥ 0` and `⋁ (x_i + t̄_i·u) = z`, both up to `eps`. Any
    /// representation of `z` has coefficients bounded by `t̄`, and raising
    /// them to `t̄` never overshoots `z`.
    pub fn member(&self, z: &Point) -> Result<Membership> {
        self.ctx.check(z)?;
        Ok(self.member_raw(z.coords()))
    }

    pub fn contains(&self, z: &Point) -> Result<bool> {
        Ok(self.member(z)?.inside)
    }

    pub(crate) fn member_raw(&self, z: &[f64]) -> Membership {
        let u = self.ctx.unit();
        let eps = self.ctx.eps();
        let t: Vec<f64> = self
            .gens
            .iter()
            .map(|g| riesz::q_u_diff(u, z, g.coords()))
            .collect();
        let tmax = t.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if tmax < -eps {
            return Membership {
                inside: false,
                witness: None,
            };
        }
        let tbar: Vec<f64> = t.iter().map(|v| v.min(0.0)).collect();
        let w = self.combine_raw(&tbar);
        if !riesz::approx_eq(&w, z, eps) {
            return Membership {
                inside: false,
                witness: None,
            };
        }
        let top = tbar.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Membership {
            inside: true,
            witness: Some(tbar.into_iter().map(|v| v - top).collect()),
        }
    }

    /// `⋁ (x_i + t_i·u)` after shifting the coefficients so their maximum is
    /// 0; the result is always a member.
    pub fn combine(&self, coeffs: &[f64]) -> Result<Point> {
        if coeffs.len() != self.gens.len() {
            return Err(Error::DimensionMismatch {
                expected: self.gens.len(),
                found: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        let top = coeffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let normalized: Vec<f64> = coeffs.iter().map(|c| c - top).collect();
        Ok(Point::from_raw(self.combine_raw(&normalized)))
    }

    /// `⋁ (x_i + t_i·u)` exactly as given.
    pub(crate) fn combine_raw(&self, coeffs: &[f64]) -> Vec<f64> {
        let u = self.ctx.unit();
        let mut out = vec![f64::NEG_INFINITY; u.len()];
        for (g, t) in self.gens.iter().zip(coeffs) {
            for ((o, x), w) in out.iter_mut().zip(g.coords()).zip(u) {
                *o = o.max(x + t * w);
            }
        }
        out
    }

    /// The coordinatewise maximum of the generators, which is the largest
    /// element of the hull.
    pub fn join_all(&self) -> Point {
        let mut out = self.gens[0].coords().to_vec();
        for g in &self.gens[1..] {
            for (o, x) in out.iter_mut().zip(g.coords()) {
                *o = o.max(*x);
            }
        }
        Point::from_raw(out)
    }

    /// Largest pairwise `D_hu` between generators; by quasiconvexity of the
    /// metric this is also the diameter of the whole hull.
    pub fn diameter(&self) -> f64 {
        let u = self.ctx.unit();
        let mut best: f64 = 0.0;
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                best = best.max(riesz::dist_hu(u, a.coords(), b.coords()));
            }
        }
        best
    }

    /// Seeded sample of `count` members.
    ///
    /// Coefficients are negative exponentials scaled by the diameter, with
    /// roughly a quarter of them pushed far below the others so samples also
    /// land on lower-dimensional faces, then shifted to have maximum 0.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng, count)
    }

    pub(crate) fn sample_with<R: Rng>(&self, rng: &mut R, count: usize) -> Vec<Point> {
        let scale = self.diameter().max(1e-12);
        let m = self.gens.len();
        (0..count)
            .map(|_| {
                let mut coeffs: Vec<f64> = (0..m)
                    .map(|_| {
                        let e = -(1.0 - rng.gen::<f64>()).ln();
                        if rng.gen_bool(0.25) {
                            -scale * (2.0 + e)
                        } else {
                            -0.5 * scale * e
                        }
                    })
                    .collect();
                let top = coeffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                coeffs.iter_mut().for_each(|c| *c -= top);
                Point::from_raw(self.combine_raw(&coeffs))
            })
            .collect()
    }

    /// Drops generators lying in the hull of the others, scanning in index
    /// order and restarting after each removal until nothing changes.
    /// Exact duplicates (within `eps`) are removed first.
    pub fn remove_redundant(&self) -> Polytope {
        let eps = self.ctx.eps();
        let mut gens: Vec<Point> = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            if !gens
                .iter()
                .any(|h| riesz::approx_eq(h.coords(), g.coords(), eps))
            {
                gens.push(g.clone());
            }
        }
        'scan: loop {
            if gens.len() <= 1 {
                break;
            }
            for i in 0..gens.len() {
                let others: Vec<Point> = gens
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                let rest = Polytope {
                    ctx: self.ctx.clone(),
                    gens: others,
                };
                if rest.member_raw(gens[i].coords()).inside {
                    gens = rest.gens;
                    continue 'scan;
                }
            }
            break;
        }
        Polytope {
            ctx: self.ctx.clone(),
            gens,
        }
    }

    /// The largest hull element below `y`, if any: `⋁ (x_i + min{q_u(y − x_i), 0}·u)`
    /// provided some `q_u(y − x_i) ≥ 0`.
    pub fn lower_projection(&self, y: &Point) -> Result<Option<Point>> {
        self.ctx.check(y)?;
        let u = self.ctx.unit();
        let q: Vec<f64> = self
            .gens
            .iter()
            .map(|g| riesz::q_u_diff(u, y.coords(), g.coords()))
            .collect();
        if q.iter().all(|v| *v < 0.0) {
            return Ok(None);
        }
        Ok(Some(Point::from_raw(self.lifted_projection(&q, 0.0))))
    }

    /// `M(z + a·u)` given `q_i = q_u(z − x_i)`.
    fn lifted_projection(&self, q: &[f64], a: f64) -> Vec<f64> {
        let coeffs: Vec<f64> = q.iter().map(|qi| (qi + a).min(0.0)).collect();
        self.combine_raw(&coeffs)
    }

    /// Exact nearest member of the hull to `z` in either metric.
    ///
    /// Every member `c` with `c ≤ z + a·u` lies below `M(z + a·u)`, the
    /// largest member below that bound. For `D_hu` the cost
    /// `a + max{0, p_u(z − M(z + a·u))}` is nondecreasing in `a`, so the
    /// optimum is at the smallest admissible `a = max{0, −max_i q_u(z − x_i)}`.
    /// For `D_u` the smallest `δ` with `M(z + δ·u) ≥ z − δ·u` has a closed
    /// form per coordinate.
    pub fn nearest(&self, z: &Point, metric: Metric) -> Result<Nearest> {
        self.ctx.check(z)?;
        Ok(self.nearest_raw(z.coords(), metric))
    }

    pub(crate) fn nearest_raw(&self, z: &[f64], metric: Metric) -> Nearest {
        let u = self.ctx.unit();
        let q: Vec<f64> = self
            .gens
            .iter()
            .map(|g| riesz::q_u_diff(u, z, g.coords()))
            .collect();
        let qmax = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lift = match metric {
            Metric::Hu => (-qmax).max(0.0),
            Metric::U => {
                let mut delta = (-qmax).max(0.0);
                for j in 0..u.len() {
                    let mut best = f64::INFINITY;
                    for (g, qi) in self.gens.iter().zip(&q) {
                        let e = (z[j] - g.coords()[j]) / u[j];
                        best = best.min(e.max(0.5 * (e - qi)));
                    }
                    delta = delta.max(best);
                }
                delta
            }
        };
        let c = self.lifted_projection(&q, lift);
        let distance = riesz::dist(u, z, &c, metric);
        Nearest {
            point: Point::from_raw(c),
            distance,
        }
    }

    /// Generators, their overall join, pairwise joins and the vertices of
    /// every pairwise geodesic. Used to seed sampled sup/inf estimates.
    pub fn feature_points(&self) -> Vec<Point> {
        let mut out: Vec<Point> = self.gens.clone();
        out.push(self.join_all());
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                if let Ok(sp) = GeodesicSpan::new(&self.ctx, a, b) {
                    out.extend(sp.polyline(&self.ctx));
                }
            }
        }
        let eps = self.ctx.eps();
        let mut uniq: Vec<Point> = Vec::with_capacity(out.len());
        for p in out {
            if !uniq
                .iter()
                .any(|h| riesz::approx_eq(h.coords(), p.coords(), eps))
            {
                uniq.push(p);
            }
        }
        uniq
    }
}

/// Membership in the segment `⟦x1, x2⟧`.
pub fn segment_member(ctx: &SpaceCtx, x1: &Point, x2: &Point, z: &Point) -> Result<bool> {
    let seg = Polytope::new(ctx.clone(), vec![x1.clone(), x2.clone()])?;
    seg.contains(z)
}

/// The closed `D_hu`-ball of radius `r` about `center` in the plane, as the
/// three-generator polytope `⟦c + (0, r·u_2), c + (r·u_1, 0), c − r·u⟧`.
pub fn ball_polytope_2d(ctx: &SpaceCtx, center: &Point, r: f64) -> Result<Polytope> {
    if ctx.dim() != 2 {
        return Err(Error::NotPlanar(ctx.dim()));
    }
    ctx.check(center)?;
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidArgument(format!("radius {r} must be positive")));
    }
    let (c, u) = (center.coords(), ctx.unit());
    let gens = vec![
        Point::from_raw(vec![c[0], c[1] + r * u[1]]),
        Point::from_raw(vec![c[0] + r * u[0], c[1]]),
        Point::from_raw(vec![c[0] - r * u[0], c[1] - r * u[1]]),
    ];
    Polytope::new(ctx.clone(), gens)
}
