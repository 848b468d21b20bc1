//! Randomized self-checks of the kernel's structural properties, keyed by
//! name. Each check draws its own seeded inputs and reports how many trials
//! violated the property and the largest residual seen.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::{self, SelfMap};
use crate::geodesic::{self, GeodesicSpan};
use crate::hull::{self, Polytope};
use crate::hyperspace::{self, CompactSet, SamplingConfig};
use crate::render;
use crate::riesz::{self, Metric, Point, SpaceCtx};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: &'static str,
    pub module: &'static str,
    pub trials: usize,
    pub failures: usize,
    /// Largest residual observed (0 for pass/fail-only checks).
    pub worst: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Default)]
struct Tally {
    trials: usize,
    failures: usize,
    worst: f64,
}

impl Tally {
    /// One trial whose residual must not exceed `tol`.
    fn residual(&mut self, r: f64, tol: f64) {
        self.trials += 1;
        if r.is_nan() || r > tol {
            self.failures += 1;
        }
        if r > self.worst {
            self.worst = r;
        }
    }

    fn holds(&mut self, ok: bool) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
        }
    }
}

type CheckFn = fn(&mut ChaCha8Rng, usize, &mut Tally);

struct Check {
    name: &'static str,
    module: &'static str,
    run: CheckFn,
    /// Relative cost; the trial count is divided by it.
    cost: usize,
}

const CHECKS: &[Check] = &[
    Check { name: "box-bounds", module: "riesz", run: box_bounds, cost: 1 },
    Check { name: "p-of-join", module: "riesz", run: p_of_join, cost: 1 },
    Check { name: "p-sublinear", module: "riesz", run: p_sublinear, cost: 1 },
    Check { name: "hu-norm-axioms", module: "riesz", run: hu_norm_axioms, cost: 1 },
    Check { name: "norm-sandwich", module: "riesz", run: norm_sandwich, cost: 1 },
    Check { name: "abs-contraction", module: "riesz", run: abs_contraction, cost: 1 },
    Check { name: "split-identity", module: "riesz", run: split_identity, cost: 1 },
    Check { name: "gauge-invariance", module: "riesz", run: gauge_invariance, cost: 1 },
    Check { name: "lattice-continuity", module: "riesz", run: lattice_continuity, cost: 1 },
    Check { name: "geodesic-isometry", module: "geodesic", run: geodesic_isometry, cost: 1 },
    Check { name: "geodesic-additivity", module: "geodesic", run: geodesic_additivity, cost: 1 },
    Check { name: "segment-decomposition", module: "geodesic", run: segment_decomposition, cost: 1 },
    Check { name: "comparable-recovery", module: "geodesic", run: comparable_recovery, cost: 1 },
    Check { name: "comparable-injectivity", module: "geodesic", run: comparable_injectivity, cost: 1 },
    Check { name: "comparable-chain-monotone", module: "geodesic", run: comparable_chain_monotone, cost: 1 },
    Check { name: "midpoint-equidistance", module: "geodesic", run: midpoint_equidistance, cost: 1 },
    Check { name: "dyadic-recursion", module: "geodesic", run: dyadic_recursion, cost: 4 },
    Check { name: "hull-monotone", module: "hull", run: hull_monotone, cost: 1 },
    Check { name: "hull-idempotent", module: "hull", run: hull_idempotent, cost: 1 },
    Check { name: "segment-recursion", module: "hull", run: segment_recursion, cost: 1 },
    Check { name: "quasiconvexity", module: "hull", run: quasiconvexity, cost: 1 },
    Check { name: "ball-convexity", module: "hull", run: ball_convexity, cost: 2 },
    Check { name: "closed-under-join-midpoint", module: "hull", run: closed_under_join_midpoint, cost: 1 },
    Check { name: "membership-oracle", module: "hull", run: membership_oracle, cost: 4 },
    Check { name: "nearest-point", module: "hull", run: nearest_point, cost: 2 },
    Check { name: "hausdorff-metric-axioms", module: "hyperspace", run: hausdorff_axioms, cost: 1 },
    Check { name: "hull-lipschitz", module: "hyperspace", run: hull_lipschitz, cost: 4 },
    Check { name: "neighbourhood-sandwich", module: "hyperspace", run: neighbourhood_sandwich, cost: 2 },
    Check { name: "interior-convexity", module: "hyperspace", run: interior_convexity, cost: 2 },
    Check { name: "diameter-preserved", module: "hyperspace", run: diameter_preserved, cost: 2 },
    Check { name: "ball-join", module: "hyperspace", run: ball_join, cost: 4 },
    Check { name: "ball-polytope-grid", module: "hull", run: ball_polytope_grid, cost: 20 },
    Check { name: "best-approx-member", module: "approx", run: best_approx_member, cost: 4 },
    Check { name: "best-approx-monotone", module: "approx", run: best_approx_monotone, cost: 8 },
    Check { name: "best-approx-inside", module: "approx", run: best_approx_inside, cost: 4 },
    Check { name: "fixpoint-budget-monotone", module: "approx", run: fixpoint_budget_monotone, cost: 8 },
    Check { name: "fixpoint-contraction", module: "approx", run: fixpoint_contraction, cost: 2 },
    Check { name: "svg-determinism", module: "render", run: svg_determinism, cost: 100 },
    Check { name: "hexagon-trace", module: "render", run: hexagon_trace, cost: 100 },
];

/// Names of all checks, in run order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

/// Runs every check with roughly `trials` trials each (fewer for the
/// expensive ones, always at least one).
pub fn run_all(trials: usize, seed: u64) -> Vec<CheckReport> {
    CHECKS.iter().map(|c| run_check(c, trials, seed)).collect()
}

/// Runs a single check by name.
pub fn run_named(name: &str, trials: usize, seed: u64) -> Option<CheckReport> {
    CHECKS
        .iter()
        .find(|c| c.name == name)
        .map(|c| run_check(c, trials, seed))
}

fn run_check(c: &Check, trials: usize, seed: u64) -> CheckReport {
    let salt = c.name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
    let mut t = Tally::default();
    (c.run)(&mut rng, (trials / c.cost).max(1), &mut t);
    CheckReport {
        name: c.name,
        module: c.module,
        trials: t.trials,
        failures: t.failures,
        worst: t.worst,
    }
}

// ---- input generators ----

fn unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.25..4.0)).collect()
}

fn vector(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-r..r)).collect()
}

fn ctx(rng: &mut ChaCha8Rng, n: usize) -> SpaceCtx {
    SpaceCtx::new(unit(rng, n)).expect("positive unit")
}

fn space(rng: &mut ChaCha8Rng, max_n: usize) -> (SpaceCtx, usize) {
    let n = rng.gen_range(1..=max_n);
    (ctx(rng, n), n)
}

fn point(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Point {
    Point::from_raw(vector(rng, n, r))
}

fn polytope(rng: &mut ChaCha8Rng, c: &SpaceCtx, m: usize, r: f64) -> Polytope {
    let gens = (0..m).map(|_| point(rng, c.dim(), r)).collect();
    Polytope::new(c.clone(), gens).expect("nonempty")
}

fn scale(x: &[f64]) -> f64 {
    1.0 + x.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

// ---- riesz ----

fn box_bounds(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, n) = space(rng, 8);
        let x = vector(rng, n, 10.0);
        let u = c.unit();
        let (p, q) = (riesz::p_u(u, &x), riesz::q_u(u, &x));
        let r = (0..n)
            .map(|j| (q * u[j] - x[j]).max(x[j] - p * u[j]))
            .fold(0.0, f64::max);
        t.residual(r, 1e-12 * scale(&x));
    }
}

fn p_of_join(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, n) = space(rng, 8);
        let (x, y) = (vector(rng, n, 10.0), vector(rng, n, 10.0));
        let u = c.unit();
        let r1 = (riesz::p_u(u, &riesz::join(&x, &y)) - riesz::p_u(u, &x).max(riesz::p_u(u, &y))).abs();
        let r2 = (riesz::q_u(u, &riesz::meet(&x, &y)) - riesz::q_u(u, &x).min(riesz::q_u(u, &y))).abs();
        t.residual(r1.max(r2), 0.0);
    }
}

fn p_sublinear(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, n) = space(rng, 8);
        let (x, y) = (vector(rng, n, 10.0), vector(rng, n, 10.0));
        let u = c.unit();
        let s: f64 = rng.gen_range(-3.0..3.0);
        let sub = riesz::p_u(u, &riesz::add(&x, &y)) - riesz::p_u(u, &x) - riesz::p_u(u, &y);
        let sx: Vec<f64> = x.iter().map(|v| s * v).collect();
        let want = if s >= 0.0 { s * riesz::p_u(u, &x) } else { s * riesz::q_u(u, &x) };
        let hom = (riesz::p_u(u, &sx) - want).abs();
        t.residual(sub.max(hom), 1e-12 * scale(&x) * 4.0);
    }
}

fn hu_norm_axioms(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, n) = space(rng, 8);
        let u = c.unit();
        let (x, y) = (vector(rng, n, 10.0), vector(rng, n, 10.0));
        let s: f64 = rng.gen_range(-3.0..3.0);
        let nx = riesz::norm_hu(u, &x);
        let ny = riesz::norm_hu(u, &y);
        let tol = 1e-12 * 4.0 * (scale(&x) + scale(&y)) * 8.0;
        let tri = riesz::norm_hu(u, &riesz::add(&x, &y)) - nx - ny;
        let sx: Vec<f64> = x.iter().map(|v| s * v).collect();
        let hom = (riesz::norm_hu(u, &sx) - s.abs() * nx).abs();
        let join = riesz::norm_hu(u, &riesz::join(&x, &y)) - nx.max(ny);
        let (xp, yp): (Vec<f64>, Vec<f64>) = (x.iter().map(|v| v.abs()).collect(), y.iter().map(|v| v.abs()).collect());
        let eq = (riesz::norm_hu(u, &riesz::join(&xp, &yp))
            - riesz::norm_hu(u, &xp).max(riesz::norm_hu(u, &yp)))
        .abs();
        let definite = nx > 0.0 && riesz::norm_hu(u, &vec![0.0; n]) == 0.0;
        let r = tri.max(hom).max(join).max(eq);
        t.residual(if definite { r } else { f64::INFINITY }, tol);
    }
}

fn norm_sandwich(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, n) = space(rng, 8);
        let x = vector(rng, n, 10.0);
        let (a, b) = (riesz::norm_u(c.unit(), &x), riesz::norm_hu(c.unit(), &x));
        t.residual((a - b).max(b - 2.0 * a) / a.max(1e-300), 1e-12);
    }
}

fn abs_contraction(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, n) = space(rng, 8);
        let x = vector(rng, n, 10.0);
        let ax: Vec<f64> = x.iter().map(|v| v.abs()).collect();
        t.residual(riesz::norm_hu(c.unit(), &ax) - riesz::norm_hu(c.unit(), &x), 1e-12 * scale(&x));
    }
}

fn split_identity(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, n) = space(rng, 8);
        let (x, y) = (vector(rng, n, 10.0), vector(rng, n, 10.0));
        let u = c.unit();
        let j = riesz::join(&x, &y);
        let r = (riesz::dist_hu(u, &x, &y) - riesz::dist_hu(u, &x, &j) - riesz::dist_hu(u, &y, &j)).abs();
        t.residual(r, 1e-9);
    }
}

fn gauge_invariance(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, n) = space(rng, 6);
        let g = c.gauged();
        let one = g.unit();
        let u = c.unit();
        let (x, y) = (vector(rng, n, 10.0), vector(rng, n, 10.0));
        let (gx, gy) = (riesz::to_gauge(u, &x), riesz::to_gauge(u, &y));
        let mut r: f64 = 0.0;
        r = r.max((riesz::p_u(u, &x) - riesz::p_u(one, &gx)).abs());
        r = r.max((riesz::q_u(u, &x) - riesz::q_u(one, &gx)).abs());
        r = r.max((riesz::norm_u(u, &x) - riesz::norm_u(one, &gx)).abs());
        r = r.max((riesz::norm_hu(u, &x) - riesz::norm_hu(one, &gx)).abs());
        r = r.max((riesz::dist_hu(u, &x, &y) - riesz::dist_hu(one, &gx, &gy)).abs());
        r = r.max((riesz::dist_u(u, &x, &y) - riesz::dist_u(one, &gx, &gy)).abs());
        let j = riesz::to_gauge(u, &riesz::join(&x, &y));
        r = r.max(riesz::dist_u(one, &j, &riesz::join(&gx, &gy)));
        let m = riesz::to_gauge(u, &riesz::meet(&x, &y));
        r = r.max(riesz::dist_u(one, &m, &riesz::meet(&gx, &gy)));
        let mid = riesz::to_gauge(u, &geodesic::midpoint_raw(u, &x, &y));
        r = r.max(riesz::dist_u(one, &mid, &geodesic::midpoint_raw(one, &gx, &gy)));
        let back = riesz::from_gauge(u, &gx);
        r = r.max(riesz::dist_u(u, &back, &x));
        t.residual(r, 1e-9);
    }
}

fn lattice_continuity(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, n) = space(rng, 8);
        let u = c.unit();
        let x = vector(rng, n, 5.0);
        let y = vector(rng, n, 5.0);
        let x2: Vec<f64> = x.iter().map(|v| v + rng.gen_range(-1.0..1.0)).collect();
        let y2: Vec<f64> = y.iter().map(|v| v + rng.gen_range(-1.0..1.0)).collect();
        let lhs = riesz::dist_hu(u, &riesz::join(&x, &y), &riesz::join(&x2, &y2));
        let rhs = riesz::dist_hu(u, &x, &x2) + riesz::dist_hu(u, &y, &y2);
        t.residual(lhs - rhs, 1e-9);
    }
}

// ---- geodesic ----

fn span(rng: &mut ChaCha8Rng, max_n: usize) -> (SpaceCtx, GeodesicSpan) {
    let (c, n) = space(rng, max_n);
    let (a, b) = (point(rng, n, 5.0), point(rng, n, 5.0));
    let sp = GeodesicSpan::new(&c, &a, &b).expect("same dimension");
    (c, sp)
}

fn param(rng: &mut ChaCha8Rng, sp: &GeodesicSpan) -> f64 {
    if sp.length() == 0.0 {
        0.0
    } else {
        rng.gen_range(sp.alpha()..=sp.beta())
    }
}

fn geodesic_isometry(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, sp) = span(rng, 8);
        let (t1, t2) = (param(rng, &sp), param(rng, &sp));
        let (a, b) = (sp.gamma(&c, t1).unwrap(), sp.gamma(&c, t2).unwrap());
        let r = (riesz::dist_hu(c.unit(), a.coords(), b.coords()) - (t1 - t2).abs()).abs();
        t.residual(r, 1e-9 * (1.0 + sp.length()));
    }
}

fn geodesic_additivity(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, sp) = span(rng, 8);
        let z = sp.gamma(&c, param(rng, &sp)).unwrap();
        let u = c.unit();
        let (a, b) = (sp.x1().coords(), sp.x2().coords());
        let r = (riesz::dist_hu(u, a, z.coords()) + riesz::dist_hu(u, z.coords(), b) - riesz::dist_hu(u, a, b)).abs();
        t.residual(r, 1e-9 * (1.0 + sp.length()));
    }
}

fn segment_decomposition(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, sp) = span(rng, 6);
        let tt = param(rng, &sp);
        let z = sp.gamma(&c, tt).unwrap();
        let top = riesz::join(sp.x1().coords(), sp.x2().coords());
        let low = if tt <= 0.0 { sp.x1() } else { sp.x2() };
        let eps = 1e-12 * scale(&top);
        let ordered = riesz::leq(low.coords(), z.coords(), eps) && riesz::leq(z.coords(), &top, eps);
        let on = hull::segment_member(&c, low, &Point::from_raw(top), &z).unwrap();
        t.holds(ordered && on);
    }
}

fn comparable_pair(rng: &mut ChaCha8Rng, max_n: usize) -> (SpaceCtx, Point, Point) {
    let (c, n) = space(rng, max_n);
    let a = vector(rng, n, 5.0);
    let b: Vec<f64> = a.iter().map(|v| v + rng.gen_range(0.0..4.0)).collect();
    (c, Point::from_raw(a), Point::from_raw(b))
}

fn comparable_recovery(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, a, b) = comparable_pair(rng, 8);
        let sp = GeodesicSpan::new(&c, &a, &b).unwrap();
        let z = sp.gamma(&c, param(rng, &sp)).unwrap();
        let u = c.unit();
        let p = riesz::p_u(u, &riesz::sub(b.coords(), z.coords()));
        let rebuilt = riesz::join(a.coords(), &riesz::shift(u, b.coords(), -p));
        t.residual(riesz::dist_u(u, &rebuilt, z.coords()), 1e-9);
    }
}

fn comparable_injectivity(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, a, b) = comparable_pair(rng, 8);
        let u = c.unit();
        let lo = riesz::q_u(u, &riesz::sub(a.coords(), b.coords()));
        let sp = GeodesicSpan::new(&c, &a, &b).unwrap();
        let (t1, t2) = (rng.gen_range(lo..=0.0), rng.gen_range(lo..=0.0));
        let d = riesz::dist_hu(u, sp.gamma(&c, t1).unwrap().coords(), sp.gamma(&c, t2).unwrap().coords());
        t.residual((1.0 - 1e-9) * (t1 - t2).abs() - d, 1e-12);
    }
}

fn comparable_chain_monotone(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, a, b) = comparable_pair(rng, 8);
        let k = rng.gen_range(1..=6);
        let chain = geodesic::dyadic_chain_direct(&c, &a, &b, k).unwrap();
        let ok = chain
            .windows(2)
            .all(|w| riesz::leq(w[0].coords(), w[1].coords(), 1e-12 * scale(b.coords())));
        t.holds(ok);
    }
}

fn midpoint_equidistance(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, sp) = span(rng, 8);
        let u = c.unit();
        let (a, b) = (sp.x1().coords(), sp.x2().coords());
        let m = geodesic::midpoint_raw(u, a, b);
        let half = 0.5 * riesz::dist_hu(u, a, b);
        let r = (riesz::dist_hu(u, a, &m) - half)
            .abs()
            .max((riesz::dist_hu(u, &m, b) - half).abs())
            .max(riesz::dist_u(u, &m, &geodesic::midpoint_raw(u, b, a)));
        t.residual(r, 1e-9);
    }
}

fn dyadic_recursion(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, sp) = span(rng, 6);
        let k = rng.gen_range(1..=10);
        let chain = geodesic::dyadic_chain(&c, sp.x1(), sp.x2(), k).unwrap();
        t.residual(chain.midpoint_deviation, 1e-9 * (1.0 + sp.length()));
    }
}

// ---- hull ----

fn random_hull(rng: &mut ChaCha8Rng) -> Polytope {
    let (c, _) = space(rng, 4);
    let m = rng.gen_range(1..=4);
    polytope(rng, &c, m, 5.0)
}

fn hull_monotone(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let big = random_hull(rng);
        let keep = rng.gen_range(1..=big.len());
        let small = Polytope::new(big.ctx().clone(), big.gens()[..keep].to_vec()).unwrap();
        let ok = small
            .sample(4, rng.gen())
            .iter()
            .all(|z| big.member_raw(z.coords()).inside);
        t.holds(ok);
    }
}

fn hull_idempotent(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let p = random_hull(rng);
        let ys = p.sample(5, rng.gen());
        let inner = Polytope::new(p.ctx().clone(), ys.clone()).unwrap();
        let mut union = p.gens().to_vec();
        union.extend(ys);
        let outer = Polytope::new(p.ctx().clone(), union).unwrap();
        let ok = inner
            .sample(4, rng.gen())
            .iter()
            .chain(outer.sample(4, rng.gen()).iter())
            .all(|z| p.member_raw(z.coords()).inside);
        t.holds(ok);
    }
}

fn segment_recursion(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let p = random_hull(rng);
        let c = p.ctx().clone();
        let x = point(rng, c.dim(), 5.0);
        let m = p.len();
        let mut coeffs: Vec<f64> = (0..=m).map(|_| -rng.gen_range(0.0..8.0f64)).collect();
        let top = coeffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        coeffs.iter_mut().for_each(|v| *v -= top);
        let mut all = p.gens().to_vec();
        all.push(x.clone());
        let z = Polytope::new(c.clone(), all).unwrap().combine_raw(&coeffs);
        let ms = coeffs[..m].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let ys: Vec<f64> = coeffs[..m].iter().map(|v| v - ms).collect();
        let y = p.combine_raw(&ys);
        let on = hull::segment_member(&c, &x, &Point::from_raw(y), &Point::from_raw(z)).unwrap();
        t.holds(on);
    }
}

fn quasiconvexity(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let p = random_hull(rng);
        let u = p.ctx().unit();
        let y = vector(rng, u.len(), 8.0);
        let bound = p
            .gens()
            .iter()
            .map(|g| riesz::dist_hu(u, &y, g.coords()))
            .fold(0.0, f64::max);
        let worst = p
            .sample(4, rng.gen())
            .iter()
            .map(|x| riesz::dist_hu(u, &y, x.coords()))
            .fold(0.0, f64::max);
        t.residual(worst - bound, 1e-9);
    }
}

fn ball_convexity(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, n) = space(rng, 4);
        let center = point(rng, n, 3.0);
        let delta = rng.gen_range(0.5..3.0);
        let metric = if rng.gen_bool(0.5) { Metric::Hu } else { Metric::U };
        let esc = hyperspace::ball_convexity_escapes(&c, &center, delta, metric, 1, 4, rng.gen()).unwrap();
        t.holds(esc == 0);
    }
}

fn closed_under_join_midpoint(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let p = random_hull(rng);
        let c = p.ctx().clone();
        let s = p.sample(2, rng.gen());
        let j = Point::from_raw(riesz::join(s[0].coords(), s[1].coords()));
        let mut ok = p.member_raw(j.coords()).inside;
        for z in geodesic::dyadic_chain_direct(&c, &s[0], &j, 3).unwrap() {
            ok &= p.member_raw(z.coords()).inside;
        }
        t.holds(ok);
    }
}

/// Smallest `‖combine(t) − z‖_u` over a coefficient grid with step `h` on
/// `[−Δ, 0]^m` (one coefficient pinned at 0).
pub(crate) fn grid_residual(p: &Polytope, z: &[f64], h: f64) -> f64 {
    let u = p.ctx().unit();
    let m = p.len();
    let delta = p.diameter();
    let steps = (delta / h).ceil() as usize;
    let mut best = f64::INFINITY;
    let mut idx = vec![0usize; m];
    for pin in 0..m {
        idx.iter_mut().for_each(|v| *v = 0);
        loop {
            let coeffs: Vec<f64> = (0..m)
                .map(|i| if i == pin { 0.0 } else { -(idx[i] as f64) * h })
                .collect();
            best = best.min(riesz::dist_u(u, &p.combine_raw(&coeffs), z));
            let mut i = 0;
            loop {
                if i == m {
                    break;
                }
                if i == pin {
                    i += 1;
                    continue;
                }
                idx[i] += 1;
                if idx[i] <= steps {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
        }
    }
    best
}

fn membership_oracle(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    let h = 0.05;
    for _ in 0..trials {
        let n = rng.gen_range(1..=3);
        let c = SpaceCtx::new((0..n).map(|_| rng.gen_range(0.5..2.0)).collect()).unwrap();
        let m = rng.gen_range(1..=3);
        let p = polytope(rng, &c, m, 0.6);
        let z = if rng.gen_bool(0.5) {
            let s = p.sample(1, rng.gen()).remove(0).into_coords();
            s.iter().map(|v| v + rng.gen_range(-0.1..0.1)).collect()
        } else {
            vector(rng, n, 1.0)
        };
        let r = grid_residual(&p, &z, h);
        // rounding coefficients to the grid moves a combination by at most h/2
        let oracle = r <= 0.5 * h + 1e-12;
        let member = p.member_raw(&z).inside;
        // disagreement is tolerated only inside the grid's boundary band
        t.holds(oracle == member || r <= 2.0 * h);
    }
}

fn nearest_point(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let p = random_hull(rng);
        let u = p.ctx().unit();
        let z = vector(rng, u.len(), 8.0);
        let samples = p.sample(64, rng.gen());
        let mut r: f64 = 0.0;
        for metric in [Metric::U, Metric::Hu] {
            let near = p.nearest_raw(&z, metric);
            if !p.member_raw(near.point.coords()).inside {
                r = f64::INFINITY;
            }
            let sampled = samples
                .iter()
                .chain(p.gens())
                .map(|s| riesz::dist(u, &z, s.coords(), metric))
                .fold(f64::INFINITY, f64::min);
            r = r.max(near.distance - sampled);
            r = r.max((riesz::dist(u, &z, near.point.coords(), metric) - near.distance).abs());
        }
        t.residual(r, 1e-9);
    }
}

// ---- hyperspace ----

fn cloud(rng: &mut ChaCha8Rng, c: &SpaceCtx, m: usize) -> CompactSet {
    let pts = (0..m).map(|_| point(rng, c.dim(), 4.0)).collect();
    CompactSet::cloud(c.clone(), pts).unwrap()
}

fn hausdorff_axioms(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, _) = space(rng, 4);
        let (ma, mb, mc) = (rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (a, b, d) = (cloud(rng, &c, ma), cloud(rng, &c, mb), cloud(rng, &c, mc));
        let metric = if rng.gen_bool(0.5) { Metric::Hu } else { Metric::U };
        let h = |x: &CompactSet, y: &CompactSet| hyperspace::hausdorff(&c, x, y, metric).unwrap();
        let r = h(&a, &a)
            .max((h(&a, &b) - h(&b, &a)).abs())
            .max(h(&a, &d) - h(&a, &b) - h(&b, &d));
        t.residual(r, 1e-9);
    }
}

fn hull_lipschitz(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    let cfg = SamplingConfig {
        samples: 64,
        seed: 1,
    };
    for _ in 0..trials {
        let (c, _) = space(rng, 3);
        let (m1, m2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (s1, s2) = (cloud(rng, &c, m1), cloud(rng, &c, m2));
        let (h1, h2) = (hyperspace::hull_of(&s1).unwrap(), hyperspace::hull_of(&s2).unwrap());
        let hh = hyperspace::hausdorff_with(&c, &h1, &h2, Metric::Hu, cfg).unwrap();
        let base_hu = hyperspace::hausdorff(&c, &s1, &s2, Metric::Hu).unwrap();
        let base_u = hyperspace::hausdorff(&c, &s1, &s2, Metric::U).unwrap();
        let tol = hyperspace::set_tolerance(&h1, &h2);
        let r = (hh - 2.0 * base_hu - tol)
            .max(base_u - base_hu)
            .max(base_hu - 2.0 * base_u);
        t.residual(r, 1e-9);
    }
}

fn neighbourhood_sandwich(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let p = random_hull(rng);
        let c = p.ctx().clone();
        let u = c.unit();
        let z = vector(rng, u.len(), 8.0);
        let du = p.nearest_raw(&z, Metric::U).distance;
        let dhu = p.nearest_raw(&z, Metric::Hu).distance;
        let mut r = (du - dhu).max(dhu - 2.0 * du);
        // U_δ of the hull is max-plus convex
        let delta = rng.gen_range(0.2..2.0);
        let near: Vec<Point> = p
            .sample(2, rng.gen())
            .into_iter()
            .map(|s| {
                let v: Vec<f64> = (0..u.len())
                    .map(|j| s.coords()[j] + 0.99 * delta * u[j] * rng.gen_range(-1.0..1.0))
                    .collect();
                Point::from_raw(v)
            })
            .collect();
        for w in geodesic::dyadic_chain_direct(&c, &near[0], &near[1], 3).unwrap() {
            r = r.max(p.nearest_raw(w.coords(), Metric::U).distance - delta);
        }
        t.residual(r, 1e-9);
    }
}

fn interior_convexity(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    let c = SpaceCtx::ones(2).unwrap();
    for _ in 0..trials {
        let r = rng.gen_range(1.0..3.0);
        let ball = hull::ball_polytope_2d(&c, &Point::zeros(2), r).unwrap();
        let delta = 0.05 * r;
        let interior = |z: &[f64]| {
            [-1.0, 0.0, 1.0].iter().all(|a| {
                [-1.0, 0.0, 1.0]
                    .iter()
                    .all(|b| ball.member_raw(&[z[0] + a * delta, z[1] + b * delta]).inside)
            })
        };
        let mut pick = || loop {
            let z = vector(rng, 2, r);
            if interior(&z) {
                return Point::from_raw(z);
            }
        };
        let (a, b) = (pick(), pick());
        let ok = geodesic::dyadic_chain_direct(&c, &a, &b, 4)
            .unwrap()
            .iter()
            .all(|z| interior(z.coords()));
        t.holds(ok);
    }
}

fn diameter_preserved(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let p = random_hull(rng);
        let u = p.ctx().unit();
        let d = p.diameter();
        let s = p.sample(16, rng.gen());
        let mut worst: f64 = 0.0;
        for (i, a) in s.iter().enumerate() {
            for b in s[i + 1..].iter().chain(p.gens()) {
                worst = worst.max(riesz::dist_hu(u, a.coords(), b.coords()));
            }
        }
        t.residual(worst - d, 1e-9 * (1.0 + d));
    }
}

fn ball_join(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let (c, n) = space(rng, 4);
        let (a, b) = (point(rng, n, 3.0), point(rng, n, 3.0));
        let delta = rng.gen_range(0.1..2.0);
        let rep = hyperspace::ball_join_check(&c, &a, &b, delta, 1, rng.gen()).unwrap();
        t.holds(rep.passed());
    }
}

fn ball_polytope_grid(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let c = ctx(rng, 2);
        let u = c.unit().to_vec();
        let center = point(rng, 2, 2.0);
        let r = rng.gen_range(0.5..3.0);
        let ball = hull::ball_polytope_2d(&c, &center, r).unwrap();
        let mut disagree = 0;
        let k = 40;
        for i in 0..=k {
            for j in 0..=k {
                let z = [
                    center.coords()[0] + 2.5 * r * u[0] * (i as f64 / k as f64 - 0.5) * 2.0,
                    center.coords()[1] + 2.5 * r * u[1] * (j as f64 / k as f64 - 0.5) * 2.0,
                ];
                let d = riesz::dist_hu(&u, &z, center.coords());
                if (d - r).abs() <= 1e-9 * (1.0 + r) {
                    continue;
                }
                if (d < r) != ball.member_raw(&z).inside {
                    disagree += 1;
                }
            }
        }
        t.holds(disagree == 0);
    }
}

// ---- approx ----

fn best_approx_member(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let p = random_hull(rng);
        let target = point(rng, p.ctx().dim(), 8.0);
        let (x, d) = approx::best_approx_point_seeded(&p, &target, 2, rng.gen()).unwrap();
        let ok = p.member_raw(x.coords()).inside
            && (riesz::dist_hu(p.ctx().unit(), x.coords(), target.coords()) - d).abs() <= 1e-9;
        t.holds(ok);
    }
}

fn best_approx_monotone(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let p = random_hull(rng);
        let target = point(rng, p.ctx().dim(), 8.0);
        let seed = rng.gen();
        let d1 = approx::best_approx_point_seeded(&p, &target, 1, seed).unwrap().1;
        let d2 = approx::best_approx_point_seeded(&p, &target, 2, seed).unwrap().1;
        let d4 = approx::best_approx_point_seeded(&p, &target, 4, seed).unwrap().1;
        t.residual((d2 - d1).max(d4 - d2), 1e-9);
    }
}

fn best_approx_inside(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let p = random_hull(rng);
        let target = p.sample(1, rng.gen()).remove(0);
        let d = approx::best_approx_point(&p, &target, 1).unwrap().1;
        t.residual(d, 1e-9);
    }
}

fn fixpoint_budget_monotone(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let f = approx::contraction_instance(rng.gen()).unwrap();
        let mut last = f64::INFINITY;
        let mut r: f64 = 0.0;
        for budget in [1, 3, 9, 27, 81] {
            let now = approx::fixpoint_search(&f, 1e-12, budget).unwrap().residual;
            r = r.max(now - last);
            last = now;
        }
        t.residual(r, 0.0);
    }
}

fn fixpoint_contraction(rng: &mut ChaCha8Rng, trials: usize, t: &mut Tally) {
    for _ in 0..trials {
        let f = approx::contraction_instance(rng.gen()).unwrap();
        let out = approx::fixpoint_search(&f, 1e-3, approx::DEFAULT_BUDGET).unwrap();
        let check = out.residual
            == riesz::dist_hu(
                f.domain().ctx().unit(),
                out.point.coords(),
                SelfMap::apply(&f, &out.point).unwrap().point.coords(),
            );
        t.residual(if check { out.residual } else { f64::INFINITY }, 1e-3);
    }
}

// ---- render ----

fn svg_determinism(_: &mut ChaCha8Rng, _: usize, t: &mut Tally) {
    let c = SpaceCtx::ones(2).unwrap();
    let a = render::ball_figure(&c, &Point::zeros(2), 2.0).unwrap().to_svg();
    let b = render::ball_figure(&c, &Point::zeros(2), 2.0).unwrap().to_svg();
    let e1 = render::extension_figure().unwrap().to_svg();
    let e2 = render::extension_figure().unwrap().to_svg();
    t.holds(a == b && e1 == e2);
}

fn hexagon_trace(_: &mut ChaCha8Rng, _: usize, t: &mut Tally) {
    let c = SpaceCtx::ones(2).unwrap();
    let ball = hull::ball_polytope_2d(&c, &Point::zeros(2), 2.0).unwrap();
    let scene = render::Scene::framing(c, &ball.feature_points()).unwrap();
    let outlines = render::trace_polytope(&scene, &ball).unwrap();
    let want = [[0.0, 2.0], [2.0, 2.0], [2.0, 0.0], [0.0, -2.0], [-2.0, -2.0], [-2.0, 0.0]];
    let px = 1.0 / scene.resolution();
    let worst = if outlines.len() == 1 && outlines[0].len() == want.len() {
        want.iter()
            .map(|w| {
                outlines[0]
                    .iter()
                    .map(|g| (g[0] - w[0]).hypot(g[1] - w[1]))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    t.residual(worst, px);
}
