//! Point-to-set distances, Hausdorff metrics and neighbourhoods for compact
//! subsets of `E` (finite clouds and max-plus polytopes).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geodesic;
use crate::hull::Polytope;
use crate::riesz::{self, Metric, Point, SpaceCtx};

/// Relative tolerance for sampled Hausdorff estimates: `tol_set = 1e-3 · diam`.
pub const TOL_SET_REL: f64 = 1e-3;

/// A nonempty compact subset of `E`.
#[derive(Debug, Clone, PartialEq)]
pub enum CompactSet {
    Cloud { ctx: SpaceCtx, points: Vec<Point> },
    Hull(Polytope),
}

impl CompactSet {
    pub fn cloud(ctx: SpaceCtx, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("a cloud needs at least one point".into()));
        }
        for p in &points {
            ctx.check(p)?;
        }
        Ok(CompactSet::Cloud { ctx, points })
    }

    pub fn ctx(&self) -> &SpaceCtx {
        match self {
            CompactSet::Cloud { ctx, .. } => ctx,
            CompactSet::Hull(p) => p.ctx(),
        }
    }

    /// `D_hu`-diameter. Exact for both variants.
    pub fn diameter(&self) -> f64 {
        match self {
            CompactSet::Cloud { ctx, points } => {
                let u = ctx.unit();
                let mut best: f64 = 0.0;
                for (i, a) in points.iter().enumerate() {
                    for b in &points[i + 1..] {
                        best = best.max(riesz::dist_hu(u, a.coords(), b.coords()));
                    }
                }
                best
            }
            CompactSet::Hull(p) => p.diameter(),
        }
    }

    /// Points standing in for the set in sup-type estimates: the cloud
    /// itself, or a polytope's feature points plus `samples` seeded members.
    pub fn probe_points(&self, samples: usize, seed: u64) -> Vec<Point> {
        match self {
            CompactSet::Cloud { points, .. } => points.clone(),
            CompactSet::Hull(p) => {
                let mut out = p.feature_points();
                out.extend(p.sample(samples, seed));
                out
            }
        }
    }

    fn check_ctx(&self, ctx: &SpaceCtx) -> Result<()> {
        if self.ctx().unit() != ctx.unit() {
            return Err(Error::InvalidArgument(
                "set belongs to a different space (unit mismatch)".into(),
            ));
        }
        Ok(())
    }
}

/// Sampling parameters for estimates involving polytope operands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            samples: 256,
            seed: 0x5eed,
        }
    }
}

/// `inf_{y ∈ K} D(z, y)`. Exact for clouds (minimum over points) and for
/// polytopes (closed-form nearest member, see [`Polytope::nearest`]).
pub fn dist_point_set(ctx: &SpaceCtx, z: &Point, set: &CompactSet, metric: Metric) -> Result<f64> {
    ctx.check(z)?;
    set.check_ctx(ctx)?;
    Ok(dist_point_set_raw(z.coords(), set, metric))
}

fn dist_point_set_raw(z: &[f64], set: &CompactSet, metric: Metric) -> f64 {
    match set {
        CompactSet::Cloud { ctx, points } => points
            .iter()
            .map(|p| riesz::dist(ctx.unit(), z, p.coords(), metric))
            .fold(f64::INFINITY, f64::min),
        CompactSet::Hull(p) => p.nearest_raw(z, metric).distance,
    }
}

/// Result of cross-checking a point-to-polytope distance against sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceCertificate {
    pub value: f64,
    /// Minimum distance over the sampled members and feature points.
    pub sampled_min: f64,
    /// `value` is attained by a member and never exceeds `sampled_min + tol`.
    pub certified: bool,
}

/// Certifies [`dist_point_set`] for a polytope operand: the returned value
/// must be attained by an actual hull member and must not exceed the best
/// sampled member by more than `1e-3 · diam`.
pub fn certify_point_set_distance(
    ctx: &SpaceCtx,
    z: &Point,
    set: &CompactSet,
    metric: Metric,
    cfg: SamplingConfig,
) -> Result<DistanceCertificate> {
    ctx.check(z)?;
    set.check_ctx(ctx)?;
    let u = ctx.unit();
    let (value, attained) = match set {
        CompactSet::Cloud { .. } => (dist_point_set_raw(z.coords(), set, metric), true),
        CompactSet::Hull(p) => {
            let near = p.nearest_raw(z.coords(), metric);
            let attained = p.member_raw(near.point.coords()).inside
                && (riesz::dist(u, z.coords(), near.point.coords(), metric) - near.distance).abs()
                    <= ctx.eps();
            (near.distance, attained)
        }
    };
    let sampled_min = set
        .probe_points(cfg.samples, cfg.seed)
        .iter()
        .map(|p| riesz::dist(u, z.coords(), p.coords(), metric))
        .fold(f64::INFINITY, f64::min);
    let tol = TOL_SET_REL * set.diameter() + ctx.eps();
    Ok(DistanceCertificate {
        value,
        sampled_min,
        certified: attained && value <= sampled_min + tol,
    })
}

/// `sup_{x ∈ A} D(x, B)`.
///
/// Exact when `A` is a cloud. For a polytope `A` under `D_u` it is also
/// exact: the `D_u`-neighbourhoods of a max-plus convex set are max-plus
/// convex, so the supremum over `⟦S⟧` is reached on `S`. Under `D_hu` it is
/// the maximum over `A`'s probe points, a lower bound on the true value.
pub fn directed_hausdorff(
    ctx: &SpaceCtx,
    from: &CompactSet,
    to: &CompactSet,
    metric: Metric,
    cfg: SamplingConfig,
) -> Result<f64> {
    from.check_ctx(ctx)?;
    to.check_ctx(ctx)?;
    let probes: Vec<Point> = match (from, metric) {
        (CompactSet::Cloud { points, .. }, _) => points.clone(),
        (CompactSet::Hull(p), Metric::U) => p.gens().to_vec(),
        (CompactSet::Hull(_), Metric::Hu) => from.probe_points(cfg.samples, cfg.seed),
    };
    Ok(probes
        .iter()
        .map(|x| dist_point_set_raw(x.coords(), to, metric))
        .fold(0.0, f64::max))
}

/// The Hausdorff distance `max{sup_A D(·, B), sup_B D(·, A)}` with default
/// sampling.
pub fn hausdorff(ctx: &SpaceCtx, a: &CompactSet, b: &CompactSet, metric: Metric) -> Result<f64> {
    hausdorff_with(ctx, a, b, metric, SamplingConfig::default())
}

pub fn hausdorff_with(
    ctx: &SpaceCtx,
    a: &CompactSet,
    b: &CompactSet,
    metric: Metric,
    cfg: SamplingConfig,
) -> Result<f64> {
    let ab = directed_hausdorff(ctx, a, b, metric, cfg)?;
    let ba = directed_hausdorff(ctx, b, a, metric, cfg)?;
    Ok(ab.max(ba))
}

/// A Hausdorff distance with a bracket `value ≤ true ≤ upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HausdorffEstimate {
    pub value: f64,
    pub upper: f64,
    pub exact: bool,
}

/// [`hausdorff_with`] plus an upper bound. The only inexact case is `D_hu`
/// with a polytope operand, bounded above by `2·𝓗_u`, which is exact.
pub fn hausdorff_estimate(
    ctx: &SpaceCtx,
    a: &CompactSet,
    b: &CompactSet,
    metric: Metric,
    cfg: SamplingConfig,
) -> Result<HausdorffEstimate> {
    let value = hausdorff_with(ctx, a, b, metric, cfg)?;
    let both_clouds = matches!(
        (a, b),
        (CompactSet::Cloud { .. }, CompactSet::Cloud { .. })
    );
    if metric == Metric::U || both_clouds {
        return Ok(HausdorffEstimate {
            value,
            upper: value,
            exact: true,
        });
    }
    let upper = 2.0 * hausdorff_with(ctx, a, b, Metric::U, cfg)?;
    Ok(HausdorffEstimate {
        value,
        upper: upper.max(value),
        exact: false,
    })
}

/// `tol_set` for a pair of operands.
pub fn set_tolerance(a: &CompactSet, b: &CompactSet) -> f64 {
    TOL_SET_REL * a.diameter().max(b.diameter())
}

/// Membership in the open neighbourhood `U_δ(S)` (metric `u`) or `V_δ(S)`
/// (metric `hu`).
pub fn neighborhood_member(
    ctx: &SpaceCtx,
    set: &CompactSet,
    delta: f64,
    z: &Point,
    metric: Metric,
) -> Result<bool> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidArgument(format!("delta {delta} must be positive")));
    }
    Ok(dist_point_set(ctx, z, set, metric)? < delta)
}

/// The hull operator. Clouds become polytopes; polytopes are returned
/// unchanged.
pub fn hull_of(set: &CompactSet) -> Result<CompactSet> {
    match set {
        CompactSet::Cloud { ctx, points } => Ok(CompactSet::Hull(Polytope::new(
            ctx.clone(),
            points.clone(),
        )?)),
        CompactSet::Hull(_) => Ok(set.clone()),
    }
}

/// Outcome of [`ball_join_check`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BallJoinReport {
    pub trials: usize,
    /// `y1 ∨ y2` escaped `B_u(x1 ∨ x2, δ)`.
    pub subset_failures: usize,
    /// The decomposition `y = y1 ∨ y2` with `y_i ∈ B_u(x_i, δ)` failed.
    pub superset_failures: usize,
    pub counterexamples: Vec<String>,
}

impl BallJoinReport {
    pub fn passed(&self) -> bool {
        self.subset_failures == 0 && self.superset_failures == 0
    }
}

fn sample_open_ball<R: Rng>(rng: &mut R, u: &[f64], center: &[f64], delta: f64) -> Vec<f64> {
    center
        .iter()
        .zip(u)
        .map(|(c, w)| c + delta * w * (1.0 - 1e-9) * rng.gen_range(-1.0..1.0))
        .collect()
}

/// Randomized check of `B_u(x1, δ) ∨ B_u(x2, δ) = B_u(x1 ∨ x2, δ)` for open
/// balls.
///
/// The `⊇` direction rebuilds `y1, y2` from `y` the constructive way: on the
/// coordinates where `x_i` is the larger of the two centres, `z_i` copies
/// `y`; elsewhere `z_i − x_i` is `y − x_i` clamped into `(−δ, δ)·u`. Then
/// `y_i = y ∧ z_i`.
pub fn ball_join_check(
    ctx: &SpaceCtx,
    x1: &Point,
    x2: &Point,
    delta: f64,
    trials: usize,
    seed: u64,
) -> Result<BallJoinReport> {
    ctx.check(x1)?;
    ctx.check(x2)?;
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidArgument(format!("delta {delta} must be positive")));
    }
    let u = ctx.unit();
    let eps = ctx.eps();
    let (a, b) = (x1.coords(), x2.coords());
    let top = riesz::join(a, b);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = BallJoinReport {
        trials,
        ..Default::default()
    };
    let inner = delta * (1.0 - 1e-9);

    for _ in 0..trials {
        let y1 = sample_open_ball(&mut rng, u, a, delta);
        let y2 = sample_open_ball(&mut rng, u, b, delta);
        let joined = riesz::join(&y1, &y2);
        if riesz::dist_u(u, &joined, &top) >= delta {
            report.subset_failures += 1;
            if report.counterexamples.len() < 5 {
                report
                    .counterexamples
                    .push(format!("subset: y1={y1:?} y2={y2:?}"));
            }
        }

        let y = sample_open_ball(&mut rng, u, &top, delta);
        let rebuild = |x: &[f64], other: &[f64]| -> Vec<f64> {
            (0..u.len())
                .map(|j| {
                    let z = if other[j] <= x[j] {
                        y[j]
                    } else {
                        x[j] + u[j] * ((y[j] - x[j]) / u[j]).clamp(-inner, inner)
                    };
                    y[j].min(z)
                })
                .collect()
        };
        let r1 = rebuild(a, b);
        let r2 = rebuild(b, a);
        let ok = riesz::dist_u(u, &r1, a) < delta
            && riesz::dist_u(u, &r2, b) < delta
            && riesz::approx_eq(&riesz::join(&r1, &r2), &y, eps);
        if !ok {
            report.superset_failures += 1;
            if report.counterexamples.len() < 5 {
                report.counterexamples.push(format!("superset: y={y:?}"));
            }
        }
    }
    Ok(report)
}

/// Draws `pairs` random pairs inside the open ball of radius `delta` about
/// `center` and counts dyadic-chain points (level `k`) that leave the ball.
pub fn ball_convexity_escapes(
    ctx: &SpaceCtx,
    center: &Point,
    delta: f64,
    metric: Metric,
    pairs: usize,
    k: u32,
    seed: u64,
) -> Result<usize> {
    ctx.check(center)?;
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidArgument(format!("delta {delta} must be positive")));
    }
    let u = ctx.unit();
    let c = center.coords();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| loop {
        // rejection from the enclosing u-box; the hu-ball sits inside it
        let y = sample_open_ball(rng, u, c, delta);
        if riesz::dist(u, &y, c, metric) < delta {
            return y;
        }
    };
    let mut escapes = 0;
    for _ in 0..pairs {
        let (p, q) = (draw(&mut rng), draw(&mut rng));
        let chain = geodesic::dyadic_chain_direct(
            ctx,
            &Point::from_raw(p),
            &Point::from_raw(q),
            k,
        )?;
        escapes += chain
            .iter()
            .filter(|z| riesz::dist(u, z.coords(), c, metric) >= delta + ctx.eps())
            .count();
    }
    Ok(escapes)
}
