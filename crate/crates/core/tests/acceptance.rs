//! Acceptance suite. Each test checks one criterion against an independent
//! reference and prints a single PASS/FAIL line to stdout (written directly,
//! so it shows up even when the harness captures output).

mod support;

use std::collections::HashMap;
use std::io::Write;

use maxplus::approx;
use maxplus::geodesic::{self, GeodesicSpan};
use maxplus::hull::{self, Polytope};
use maxplus::hyperspace::{self, CompactSet, SamplingConfig};
use maxplus::render::{self, Layer};
use maxplus::{Metric, Point, SpaceCtx};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support as oracle;

fn report(id: u32, title: &str, ok: bool, detail: String) {
    let line = format!(
        "{} criterion {id:>2}: {title} [{detail}]",
        if ok { "PASS" } else { "FAIL" }
    );
    let _ = writeln!(std::io::stdout().lock(), "{line}");
    assert!(ok, "{line}");
}

fn rng(id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_5500 + id)
}

fn pt(c: &[f64]) -> Point {
    Point::new(c.to_vec()).unwrap()
}

#[test]
fn criterion_01_norm_values() {
    let ctx = SpaceCtx::ones(2).unwrap();
    let a = ctx.norm_hu(&pt(&[-1.0, 1.0])).unwrap();
    let b = ctx.norm_hu(&pt(&[1.0, 1.0])).unwrap();
    let abs = ctx.abs_val(&pt(&[-1.0, 1.0])).unwrap();
    let c = ctx.norm_hu(&abs).unwrap();
    let ok = a == 2.0 && b == 1.0 && c == 1.0;
    report(1, "norm values", ok, format!("|(-1,1)|={a} |(1,1)|={b} ||x||={c}"));
}

#[test]
fn criterion_02_norm_sandwich() {
    let mut r = rng(2);
    let (mut violations, mut mismatch, mut worst) = (0, 0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let n = r.gen_range(1..=8);
        let u = oracle::rand_unit(&mut r, n);
        let x = oracle::rand_vec(&mut r, n, 10.0);
        let ctx = SpaceCtx::new(u.clone()).unwrap();
        let xp = pt(&x);
        let (nu, nhu) = (ctx.norm_u(&xp).unwrap(), ctx.norm_hu(&xp).unwrap());
        mismatch = mismatch
            .max((nu - oracle::norm_u(&u, &x)).abs() / nu)
            .max((nhu - oracle::norm_hu(&u, &x)).abs() / nhu);
        let rel = ((nu - nhu) / nu).max((nhu - 2.0 * nu) / nu);
        worst = worst.max(rel);
        if rel > 1e-12 {
            violations += 1;
        }
    }
    let ok = violations == 0 && mismatch <= 1e-15;
    report(
        2,
        "norm sandwich",
        ok,
        format!("10000 draws, violations={violations}, worst rel={worst:e}, reference mismatch={mismatch:e}"),
    );
}

#[test]
fn criterion_03_geodesic_isometry() {
    let mut r = rng(3);
    let (mut fails, mut worst, mut route) = (0, 0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let n = r.gen_range(1..=8);
        let u = oracle::rand_unit(&mut r, n);
        let (a, b) = (oracle::rand_vec(&mut r, n, 5.0), oracle::rand_vec(&mut r, n, 5.0));
        let ctx = SpaceCtx::new(u.clone()).unwrap();
        let sp = GeodesicSpan::new(&ctx, &pt(&a), &pt(&b)).unwrap();
        let (al, be) = oracle::span(&u, &a, &b);
        let (t1, t2) = (r.gen_range(al..=be), r.gen_range(al..=be));
        let (g1, g2) = (sp.gamma(&ctx, t1).unwrap(), sp.gamma(&ctx, t2).unwrap());
        route = route
            .max(oracle::d_u(&u, g1.coords(), &oracle::gamma(&u, &a, &b, t1)))
            .max((sp.alpha() - al).abs() + (sp.beta() - be).abs());
        let res = (oracle::d_hu(&u, g1.coords(), g2.coords()) - (t1 - t2).abs()).abs();
        let tol = 1e-9 * (1.0 + be - al);
        worst = worst.max(res / (1.0 + be - al));
        if res > tol {
            fails += 1;
        }
    }
    let ok = fails == 0 && route <= 1e-12;
    report(
        3,
        "geodesic isometry",
        ok,
        format!("10000 draws, failures={fails}, worst scaled residual={worst:e}, route gap={route:e}"),
    );
}

#[test]
fn criterion_04_additivity_and_split() {
    let mut r = rng(4);
    let (mut add_worst, mut split_worst) = (0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let n = r.gen_range(1..=8);
        let u = oracle::rand_unit(&mut r, n);
        let (a, b) = (oracle::rand_vec(&mut r, n, 5.0), oracle::rand_vec(&mut r, n, 5.0));
        let ctx = SpaceCtx::new(u.clone()).unwrap();
        let (pa, pb) = (pt(&a), pt(&b));
        let s = r.gen_range(0.0..=1.0);
        let z = geodesic::gamma_hat(&ctx, &pa, &pb, s).unwrap();
        let d = ctx.dist_hu(&pa, &pb).unwrap();
        let add = ctx.dist_hu(&pa, &z).unwrap() + ctx.dist_hu(&z, &pb).unwrap() - d;
        add_worst = add_worst.max(add.abs());
        let j = oracle::join(&a, &b);
        let split = oracle::d_hu(&u, &a, &j) + oracle::d_hu(&u, &b, &j) - d;
        split_worst = split_worst.max(split.abs());
    }
    let ok = add_worst <= 1e-9 && split_worst <= 1e-9;
    report(
        4,
        "additivity and split identity",
        ok,
        format!("10000 draws, additivity residual={add_worst:e}, split residual={split_worst:e}"),
    );
}

/// Exhaustive coefficient-grid reference: every combination with
/// coefficients on the grid `{0, −h, …}` down to `−Δ`, one pinned at 0,
/// bucketed for nearest-neighbour lookups within `reach`.
struct GridOracle {
    u: Vec<f64>,
    cell: f64,
    buckets: HashMap<Vec<i64>, Vec<Vec<f64>>>,
}

impl GridOracle {
    fn new(u: &[f64], gens: &[Vec<f64>], h: f64, reach: f64) -> Self {
        let m = gens.len();
        let delta = oracle::diameter(u, gens);
        let steps = (delta / h).ceil() as usize;
        let cell = reach * u.iter().copied().fold(0.0, f64::max);
        let mut buckets: HashMap<Vec<i64>, Vec<Vec<f64>>> = HashMap::new();
        let mut idx = vec![0usize; m];
        for pin in 0..m {
            idx.iter_mut().for_each(|v| *v = 0);
            'combos: loop {
                let t: Vec<f64> = (0..m)
                    .map(|i| if i == pin { 0.0 } else { -(idx[i] as f64) * h })
                    .collect();
                let z = oracle::combine(u, gens, &t);
                let key: Vec<i64> = z.iter().map(|v| (v / cell).floor() as i64).collect();
                buckets.entry(key).or_default().push(z);
                let mut i = 0;
                loop {
                    if i == m {
                        break 'combos;
                    }
                    if i != pin {
                        idx[i] += 1;
                        if idx[i] <= steps {
                            break;
                        }
                        idx[i] = 0;
                    }
                    i += 1;
                }
            }
        }
        GridOracle {
            u: u.to_vec(),
            cell,
            buckets,
        }
    }

    /// Smallest `D_u` from `z` to a grid combination, or `∞` if none lies
    /// within one bucket.
    fn residual(&self, z: &[f64]) -> f64 {
        let n = z.len();
        let base: Vec<i64> = z.iter().map(|v| (v / self.cell).floor() as i64).collect();
        let mut best = f64::INFINITY;
        for k in 0..3usize.pow(n as u32) {
            let mut key = base.clone();
            let mut rest = k;
            for c in key.iter_mut() {
                *c += (rest % 3) as i64 - 1;
                rest /= 3;
            }
            if let Some(list) = self.buckets.get(&key) {
                for y in list {
                    best = best.min(oracle::d_u(&self.u, z, y));
                }
            }
        }
        best
    }
}

#[test]
fn criterion_05_membership_oracle() {
    let mut r = rng(5);
    let h = 0.05;
    let (mut queries, mut outside_band, mut in_band, mut members) = (0, 0, 0, 0);
    while queries < 1200 {
        let n = r.gen_range(1..=3);
        let m = r.gen_range(1..=4);
        let u: Vec<f64> = (0..n).map(|_| r.gen_range(0.5..2.0)).collect();
        let gens: Vec<Vec<f64>> = (0..m).map(|_| oracle::rand_vec(&mut r, n, 0.5)).collect();
        let ctx = SpaceCtx::new(u.clone()).unwrap();
        let p = Polytope::new(ctx, gens.iter().map(|g| pt(g)).collect()).unwrap();
        let grid = GridOracle::new(&u, &gens, h, 2.0 * h);
        for _ in 0..24 {
            let z: Vec<f64> = match r.gen_range(0..3) {
                0 => oracle::combine(&u, &gens, &oracle::coeffs(&mut r, m, 2.0)),
                1 => {
                    let c = oracle::combine(&u, &gens, &oracle::coeffs(&mut r, m, 2.0));
                    c.iter().map(|v| v + r.gen_range(-0.2..0.2)).collect()
                }
                _ => oracle::rand_vec(&mut r, n, 0.8),
            };
            let res = grid.residual(&z);
            // grid rounding moves a combination by at most h/2 in D_u
            let reference = res <= 0.5 * h + 1e-12;
            let inside = p.contains(&pt(&z)).unwrap();
            members += usize::from(inside);
            if inside != reference {
                if res <= 2.0 * h {
                    in_band += 1;
                } else {
                    outside_band += 1;
                }
            }
            queries += 1;
        }
    }
    report(
        5,
        "membership oracle equivalence",
        outside_band == 0,
        format!("{queries} queries ({members} members), disagreements outside band={outside_band}, inside band={in_band}"),
    );
}

#[test]
fn criterion_06_quasiconvexity_and_diameter() {
    let mut r = rng(6);
    let (mut quasi_fail, mut diam_fail, mut worst) = (0, 0, 0.0f64);
    for _ in 0..1000 {
        let n = r.gen_range(1..=4);
        let m = r.gen_range(1..=5);
        let u = oracle::rand_unit(&mut r, n);
        let gens: Vec<Vec<f64>> = (0..m).map(|_| oracle::rand_vec(&mut r, n, 5.0)).collect();
        let y = oracle::rand_vec(&mut r, n, 8.0);
        let x = oracle::combine(&u, &gens, &oracle::coeffs(&mut r, m, 10.0));
        let x2 = oracle::combine(&u, &gens, &oracle::coeffs(&mut r, m, 10.0));
        let bound = gens.iter().map(|g| oracle::d_hu(&u, &y, g)).fold(0.0, f64::max);
        let excess = oracle::d_hu(&u, &y, &x) - bound;
        worst = worst.max(excess);
        if excess > 1e-9 {
            quasi_fail += 1;
        }
        // the library diameter of the generator set bounds every pair of members
        let ctx = SpaceCtx::new(u.clone()).unwrap();
        let p = Polytope::new(ctx, gens.iter().map(|g| pt(g)).collect()).unwrap();
        let d = p.diameter();
        if (d - oracle::diameter(&u, &gens)).abs() > 1e-12 || oracle::d_hu(&u, &x, &x2) > d + 1e-9 {
            diam_fail += 1;
        }
    }
    report(
        6,
        "quasiconvexity and diameter equality",
        quasi_fail == 0 && diam_fail == 0,
        format!("1000 triples, quasiconvexity violations={quasi_fail} (worst excess {worst:e}), diameter violations={diam_fail}"),
    );
}

#[test]
fn criterion_07_hull_lipschitz() {
    let mut r = rng(7);
    let (mut bound_fail, mut sandwich_fail, mut route_fail) = (0, 0, 0);
    let mut worst_ratio = 0.0f64;
    let cfg = SamplingConfig {
        samples: 64,
        seed: 7,
    };
    for _ in 0..1000 {
        let n = r.gen_range(1..=3);
        let u = oracle::rand_unit(&mut r, n);
        let ctx = SpaceCtx::new(u.clone()).unwrap();
        let (m1, m2) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let s1: Vec<Vec<f64>> = (0..m1).map(|_| oracle::rand_vec(&mut r, n, 4.0)).collect();
        let s2: Vec<Vec<f64>> = (0..m2).map(|_| oracle::rand_vec(&mut r, n, 4.0)).collect();
        let c1 = CompactSet::cloud(ctx.clone(), s1.iter().map(|p| pt(p)).collect()).unwrap();
        let c2 = CompactSet::cloud(ctx.clone(), s2.iter().map(|p| pt(p)).collect()).unwrap();

        let base_hu = oracle::hausdorff(&u, &s1, &s2, true);
        let base_u = oracle::hausdorff(&u, &s1, &s2, false);
        let lib_hu = hyperspace::hausdorff(&ctx, &c1, &c2, Metric::Hu).unwrap();
        let lib_u = hyperspace::hausdorff(&ctx, &c1, &c2, Metric::U).unwrap();
        if (lib_hu - base_hu).abs() > 1e-12 || (lib_u - base_u).abs() > 1e-12 {
            route_fail += 1;
        }
        if base_u > base_hu || base_hu > 2.0 * base_u {
            sandwich_fail += 1;
        }

        let (h1, h2) = (hyperspace::hull_of(&c1).unwrap(), hyperspace::hull_of(&c2).unwrap());
        let est = hyperspace::hausdorff_estimate(&ctx, &h1, &h2, Metric::Hu, cfg).unwrap();
        let tol = hyperspace::set_tolerance(&h1, &h2);
        // the estimate brackets the true value; both ends must obey the bound
        if est.value > 2.0 * base_hu + tol || est.upper > 2.0 * base_hu + tol {
            bound_fail += 1;
        }
        if base_hu > 0.0 {
            worst_ratio = worst_ratio.max(est.upper / base_hu);
        }
        // point-to-hull distances never exceed a sampled member's distance
        let target = match &h2 {
            CompactSet::Hull(p) => p.clone(),
            _ => unreachable!(),
        };
        let x = oracle::combine(&u, &s1, &oracle::coeffs(&mut r, m1, 6.0));
        let exact = target.nearest(&pt(&x), Metric::Hu).unwrap().distance;
        let sampled = (0..32)
            .map(|_| oracle::combine(&u, &s2, &oracle::coeffs(&mut r, m2, 6.0)))
            .chain(s2.iter().cloned())
            .map(|y| oracle::d_hu(&u, &x, &y))
            .fold(f64::INFINITY, f64::min);
        if exact > sampled + 1e-9 {
            route_fail += 1;
        }
    }
    report(
        7,
        "hull-operator Lipschitz bound",
        bound_fail == 0 && sandwich_fail == 0 && route_fail == 0,
        format!(
            "1000 cloud pairs, bound violations={bound_fail}, sandwich violations={sandwich_fail}, route mismatches={route_fail}, worst ratio={worst_ratio:.4}"
        ),
    );
}

#[test]
fn criterion_08_ball_identities() {
    let mut r = rng(8);

    // join of balls, library check
    let mut lib_fail = 0;
    let mut own_sub = 0;
    let mut own_sup = 0;
    for trial in 0..1000 {
        let n = r.gen_range(1..=4);
        let u = oracle::rand_unit(&mut r, n);
        let ctx = SpaceCtx::new(u.clone()).unwrap();
        let (a, b) = (oracle::rand_vec(&mut r, n, 3.0), oracle::rand_vec(&mut r, n, 3.0));
        let delta = r.gen_range(0.1..2.0);
        let rep = hyperspace::ball_join_check(&ctx, &pt(&a), &pt(&b), delta, 1, trial).unwrap();
        lib_fail += rep.subset_failures + rep.superset_failures;

        // independent: y1 ∨ y2 lands in the ball about a ∨ b
        let inner = |r: &mut ChaCha8Rng, c: &[f64]| -> Vec<f64> {
            c.iter().zip(&u).map(|(x, w)| x + 0.999 * delta * w * r.gen_range(-1.0..1.0)).collect()
        };
        let top = oracle::join(&a, &b);
        let (y1, y2) = (inner(&mut r, &a), inner(&mut r, &b));
        if oracle::d_u(&u, &oracle::join(&y1, &y2), &top) >= delta {
            own_sub += 1;
        }
        // independent: every y near a ∨ b splits as y1 ∨ y2 with y_i near x_i
        let y = inner(&mut r, &top);
        let piece = |x: &[f64], other: &[f64]| -> Vec<f64> {
            (0..n)
                .map(|j| {
                    let z = if other[j] <= x[j] {
                        y[j]
                    } else {
                        x[j] + u[j] * ((y[j] - x[j]) / u[j]).clamp(-0.999 * delta, 0.999 * delta)
                    };
                    y[j].min(z)
                })
                .collect()
        };
        let (p1, p2) = (piece(&a, &b), piece(&b, &a));
        let back = oracle::join(&p1, &p2);
        if oracle::d_u(&u, &p1, &a) >= delta || oracle::d_u(&u, &p2, &b) >= delta || oracle::d_u(&u, &back, &y) > 1e-12 {
            own_sup += 1;
        }
    }

    // balls are convex: dyadic chains between ball points stay inside
    let mut escapes = 0;
    for _ in 0..1000 {
        let n = r.gen_range(1..=4);
        let u = oracle::rand_unit(&mut r, n);
        let c = oracle::rand_vec(&mut r, n, 3.0);
        let delta = r.gen_range(0.5..3.0);
        let hu = r.gen_bool(0.5);
        let dist = |x: &[f64]| if hu { oracle::d_hu(&u, x, &c) } else { oracle::d_u(&u, x, &c) };
        let mut draw = || loop {
            let y: Vec<f64> = c.iter().zip(&u).map(|(x, w)| x + delta * w * r.gen_range(-1.0..1.0)).collect();
            if dist(&y) < delta {
                return y;
            }
        };
        let (a, b) = (draw(), draw());
        for k in 0..=16 {
            let z = oracle::gamma_hat(&u, &a, &b, k as f64 / 16.0);
            if dist(&z) >= delta {
                escapes += 1;
            }
        }
    }

    // ball_polytope_2d against the distance test on a grid
    let (mut agree, mut total) = (0usize, 0usize);
    for _ in 0..20 {
        let u = oracle::rand_unit(&mut r, 2);
        let c = oracle::rand_vec(&mut r, 2, 2.0);
        let rad = r.gen_range(0.5..3.0);
        let ctx = SpaceCtx::new(u.clone()).unwrap();
        let ball = hull::ball_polytope_2d(&ctx, &pt(&c), rad).unwrap();
        let k = 50;
        for i in 0..=k {
            for j in 0..=k {
                let z = [
                    c[0] + 2.5 * rad * u[0] * (2.0 * i as f64 / k as f64 - 1.0),
                    c[1] + 2.5 * rad * u[1] * (2.0 * j as f64 / k as f64 - 1.0),
                ];
                total += 1;
                if (oracle::d_hu(&u, &z, &c) <= rad + 1e-9) == ball.contains(&pt(&z)).unwrap() {
                    agree += 1;
                }
            }
        }
    }
    let rate = agree as f64 / total as f64;
    let ok = lib_fail == 0 && own_sub == 0 && own_sup == 0 && escapes == 0 && rate >= 0.999;
    report(
        8,
        "ball identities",
        ok,
        format!(
            "join check failures={lib_fail} (reference: subset={own_sub}, superset={own_sup}), chain escapes={escapes}, ball grid agreement={:.4}%",
            100.0 * rate
        ),
    );
}

fn paths(scene: &render::Scene) -> Vec<Vec<[f64; 2]>> {
    scene
        .layers()
        .iter()
        .filter_map(|l| match l {
            Layer::SegmentPath { points } => Some(points.clone()),
            _ => None,
        })
        .collect()
}

/// Ordered vertices of a rendered path: points where the direction changes.
fn corners(path: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut out = vec![path[0]];
    for w in path.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        let cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
        if cross.abs() > 1e-9 {
            out.push(b);
        }
    }
    out.push(path[path.len() - 1]);
    out
}

/// Whether `x` lies on one of the path's segments.
fn passes_through(path: &[[f64; 2]], x: [f64; 2]) -> bool {
    path.windows(2).any(|w| {
        let (a, b) = (w[0], w[1]);
        let cross = (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
        let within = |i: usize| a[i].min(b[i]) - 1e-12 <= x[i] && x[i] <= a[i].max(b[i]) + 1e-12;
        cross.abs() < 1e-12 && within(0) && within(1)
    })
}

fn same(a: &[[f64; 2]], b: &[[f64; 2]]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(p, q)| (p[0] - q[0]).abs() < 1e-12 && (p[1] - q[1]).abs() < 1e-12)
}

#[test]
fn criterion_09_figure_reproduction() {
    // hexagon through the command-line front end
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ball.svg");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let args = ["maxplus", "ball-svg", "--unit", "1 1", "--center", "0 0", "--radius", "2", "-o"];
    let code = maxplus::cli::cli_main(
        args.iter().map(|s| s.to_string()).chain([file.display().to_string()]),
        &mut out,
        &mut err,
    );
    let svg = std::fs::read_to_string(&file).unwrap_or_default();
    let d = svg
        .lines()
        .find(|l| l.contains("class=\"ball\""))
        .and_then(|l| l.split("d=\"").nth(1))
        .and_then(|s| s.split('"').next())
        .unwrap_or("");
    let ctx = SpaceCtx::ones(2).unwrap();
    let ball = hull::ball_polytope_2d(&ctx, &pt(&[0.0, 0.0]), 2.0).unwrap();
    let view = render::Scene::framing(ctx.clone(), &ball.feature_points()).unwrap().viewport();
    let res = render::DEFAULT_RESOLUTION;
    let nums: Vec<f64> = d
        .split(|c: char| c == 'M' || c == 'L' || c == 'Z' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().unwrap())
        .collect();
    let trace: Vec<[f64; 2]> = nums
        .chunks(2)
        .map(|c| [view.xmin + c[0] / res, view.ymax - c[1] / res])
        .collect();
    let want = [[0.0, 2.0], [2.0, 2.0], [2.0, 0.0], [0.0, -2.0], [-2.0, -2.0], [-2.0, 0.0]];
    let px = 1.0 / res;
    let hex_ok = code == 0
        && trace.len() == 6
        && want.iter().all(|w| trace.iter().any(|t| (t[0] - w[0]).hypot(t[1] - w[1]) <= px));
    let hex_err = want
        .iter()
        .map(|w| trace.iter().map(|t| (t[0] - w[0]).hypot(t[1] - w[1])).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);

    // degenerate polytope: no area, three branches meeting at (-5, 0)
    let deg = render::degenerate_figure().unwrap();
    let no_fill = deg.layers().iter().all(|l| match l {
        Layer::PolytopeFill { outlines } => outlines.is_empty(),
        _ => true,
    });
    let want_branches = [
        vec![[-8.0, 0.0], [-5.0, 0.0], [-2.0, 3.0]],
        vec![[-8.0, 0.0], [-5.0, 0.0], [-5.0, -4.0]],
        vec![[-2.0, 3.0], [-5.0, 0.0], [-5.0, -4.0]],
    ];
    let got = paths(&deg);
    let deg_ok = no_fill && got.len() == 3 && got.iter().zip(&want_branches).all(|(g, w)| same(g, w));

    // extension figure: all three paths run through x2 = (-4, 3)
    let ext = render::extension_figure().unwrap();
    let want_ext = [
        vec![[-9.0, 3.0], [0.0, 3.0]],
        vec![[-9.0, 3.0], [-4.0, 3.0], [-1.0, 6.0]],
        vec![[-9.0, 3.0], [-4.0, 3.0], [-4.0, -2.0]],
    ];
    let ext_paths = paths(&ext);
    let ext_ok = ext_paths.len() == 3
        && ext_paths.iter().all(|p| p.len() > render::GEODESIC_SAMPLES && passes_through(p, [-4.0, 3.0]))
        && ext_paths.iter().zip(&want_ext).all(|(p, w)| same(&corners(p), w));

    report(
        9,
        "figure reproduction",
        hex_ok && deg_ok && ext_ok,
        format!("hexagon vertices={} max error={hex_err:.2e} (1px={px}), three-branch={deg_ok}, extensions={ext_ok}", trace.len()),
    );
}

#[test]
fn criterion_10_midpoint_and_dyadic_chain() {
    let mut r = rng(10);
    let (mut mid_worst, mut chain_worst) = (0.0f64, 0.0f64);
    for _ in 0..2000 {
        let n = r.gen_range(1..=8);
        let u = oracle::rand_unit(&mut r, n);
        let (a, b) = (oracle::rand_vec(&mut r, n, 5.0), oracle::rand_vec(&mut r, n, 5.0));
        let ctx = SpaceCtx::new(u.clone()).unwrap();
        let m = geodesic::midpoint(&ctx, &pt(&a), &pt(&b)).unwrap();
        let half = 0.5 * oracle::d_hu(&u, &a, &b);
        mid_worst = mid_worst
            .max((oracle::d_hu(&u, &a, m.coords()) - half).abs())
            .max((oracle::d_hu(&u, m.coords(), &b) - half).abs());
    }
    for _ in 0..200 {
        let n = r.gen_range(1..=6);
        let u = oracle::rand_unit(&mut r, n);
        let (a, b) = (oracle::rand_vec(&mut r, n, 5.0), oracle::rand_vec(&mut r, n, 5.0));
        let ctx = SpaceCtx::new(u.clone()).unwrap();
        let k = r.gen_range(1..=10u32);
        // reference chain by repeated midpoints of consecutive points
        let mut chain = vec![a.clone(), b.clone()];
        for _ in 0..k {
            let mut next = Vec::with_capacity(2 * chain.len() - 1);
            for w in chain.windows(2) {
                next.push(w[0].clone());
                next.push(oracle::midpoint(&u, &w[0], &w[1]));
            }
            next.push(b.clone());
            chain = next;
        }
        let sp = GeodesicSpan::new(&ctx, &pt(&a), &pt(&b)).unwrap();
        let scale = 1e-9 * (1.0 + sp.length());
        let lib = geodesic::dyadic_chain(&ctx, &pt(&a), &pt(&b), k).unwrap();
        let mut dev = lib.midpoint_deviation / scale;
        for (j, z) in chain.iter().enumerate() {
            let s = j as f64 / (1u64 << k) as f64;
            let g = sp.gamma_hat(&ctx, s).unwrap();
            dev = dev.max(oracle::d_u(&u, z, g.coords()) / scale);
        }
        chain_worst = chain_worst.max(dev);
    }
    report(
        10,
        "midpoint and dyadic chain",
        mid_worst <= 1e-9 && chain_worst <= 1.0,
        format!("equidistance residual={mid_worst:e}, chain deviation/(1e-9 diam)={chain_worst:.2e}"),
    );
}

#[test]
fn criterion_11_fixed_point_demo() {
    let (mut found, mut worst, mut mismatch) = (0, 0.0f64, 0.0f64);
    for seed in 0..100 {
        let f = approx::contraction_instance(seed).unwrap();
        let out = approx::fixpoint_search(&f, 1e-3, approx::DEFAULT_BUDGET).unwrap();
        let u = f.domain().ctx().unit();
        let image = f.apply(&out.point).unwrap().point;
        let res = oracle::d_hu(u, out.point.coords(), image.coords());
        mismatch = mismatch.max((res - out.residual).abs());
        worst = worst.max(res);
        if out.found && res <= 1e-3 && f.domain().contains(&out.point).unwrap() {
            found += 1;
        }
    }
    report(
        11,
        "fixed-point demo",
        found == 100 && mismatch <= 1e-12,
        format!("{found}/100 instances within 1e-3, worst residual={worst:e}"),
    );
}
