//! Nearest-member search and fixed-point location for continuous self-maps
//! of a max-plus polytope.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geodesic;
use crate::hull::Polytope;
use crate::riesz::{self, Metric, Point};

/// Largest accepted `grid_k` (the sample count is `4^grid_k`).
pub const MAX_GRID_K: u32 = 10;

/// The rule a [`SelfMap`] applies before snapping back into its domain.
#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    /// `x ↦ A·x + b`.
    AffineClamp {
        matrix: Vec<Vec<f64>>,
        offset: Vec<f64>,
    },
    /// `x_j ↦ x_j + a·u_j·sin(ω·x_{j+1}/u_{j+1})`, indices cyclic.
    CoordinatePerturb { amplitude: f64, frequency: f64 },
    /// Multilinear interpolation of values tabulated on a rectilinear grid;
    /// inputs outside the grid box are clamped onto it. `values` is in
    /// row-major order (last axis fastest).
    UserTable {
        axes: Vec<Vec<f64>>,
        values: Vec<Vec<f64>>,
    },
}

/// A continuous map of a polytope into itself: a raw rule followed by the
/// exact `D_hu`-nearest-member snap.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfMap {
    kind: MapKind,
    domain: Polytope,
}

/// One evaluation of a [`SelfMap`].
#[derive(Debug, Clone, PartialEq)]
pub struct MapValue {
    pub point: Point,
    /// `D_hu` between the raw image and its snapped version.
    pub snap_distance: f64,
}

impl SelfMap {
    pub fn new(domain: Polytope, kind: MapKind) -> Result<Self> {
        let n = domain.ctx().dim();
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        match &kind {
            MapKind::AffineClamp { matrix, offset } => {
                if matrix.len() != n || offset.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: if matrix.len() != n { matrix.len() } else { offset.len() },
                    });
                }
                for row in matrix {
                    if row.len() != n {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            found: row.len(),
                        });
                    }
                }
                if !matrix.iter().all(|r| finite(r)) || !finite(offset) {
                    return Err(Error::InvalidArgument("non-finite affine map".into()));
                }
            }
            MapKind::CoordinatePerturb {
                amplitude,
                frequency,
            } => {
                if !(amplitude.is_finite() && frequency.is_finite()) {
                    return Err(Error::InvalidArgument("non-finite perturbation".into()));
                }
            }
            MapKind::UserTable { axes, values } => {
                if axes.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: axes.len(),
                    });
                }
                for a in axes {
                    if a.len() < 2 || !finite(a) || a.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(Error::InvalidArgument(
                            "table axes need at least two strictly increasing nodes".into(),
                        ));
                    }
                }
                let cells: usize = axes.iter().map(Vec::len).product();
                if values.len() != cells {
                    return Err(Error::InvalidArgument(format!(
                        "table needs {cells} values, got {}",
                        values.len()
                    )));
                }
                for v in values {
                    if v.len() != n {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            found: v.len(),
                        });
                    }
                    if !finite(v) {
                        return Err(Error::InvalidArgument("non-finite table value".into()));
                    }
                }
            }
        }
        Ok(SelfMap { kind, domain })
    }

    pub fn identity(domain: Polytope) -> Self {
        let n = domain.ctx().dim();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        SelfMap {
            kind: MapKind::AffineClamp {
                matrix,
                offset: vec![0.0; n],
            },
            domain,
        }
    }

    pub fn constant(domain: Polytope, c: &Point) -> Result<Self> {
        domain.ctx().check(c)?;
        let n = c.dim();
        SelfMap::new(
            domain,
            MapKind::AffineClamp {
                matrix: vec![vec![0.0; n]; n],
                offset: c.coords().to_vec(),
            },
        )
    }

    /// `x ↦ snap(λ·x + b)`.
    pub fn scaled(domain: Polytope, lambda: f64, offset: &[f64]) -> Result<Self> {
        let n = domain.ctx().dim();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { lambda } else { 0.0 }).collect())
            .collect();
        SelfMap::new(
            domain,
            MapKind::AffineClamp {
                matrix,
                offset: offset.to_vec(),
            },
        )
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn domain(&self) -> &Polytope {
        &self.domain
    }

    /// The image before snapping.
    pub fn raw(&self, x: &[f64]) -> Vec<f64> {
        let u = self.domain.ctx().unit();
        let n = u.len();
        match &self.kind {
            MapKind::AffineClamp { matrix, offset } => matrix
                .iter()
                .zip(offset)
                .map(|(row, b)| row.iter().zip(x).map(|(a, xi)| a * xi).sum::<f64>() + b)
                .collect(),
            MapKind::CoordinatePerturb {
                amplitude,
                frequency,
            } => (0..n)
                .map(|j| {
                    let k = (j + 1) % n;
                    x[j] + amplitude * u[j] * (frequency * x[k] / u[k]).sin()
                })
                .collect(),
            MapKind::UserTable { axes, values } => interpolate(axes, values, x),
        }
    }

    pub fn apply(&self, x: &Point) -> Result<MapValue> {
        self.domain.ctx().check(x)?;
        Ok(self.apply_raw(x.coords()))
    }

    pub(crate) fn apply_raw(&self, x: &[f64]) -> MapValue {
        let y = self.raw(x);
        let near = self.domain.nearest_raw(&y, Metric::Hu);
        MapValue {
            point: near.point,
            snap_distance: near.distance,
        }
    }

    fn residual(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let fx = self.apply_raw(x).point.into_coords();
        let r = riesz::dist_hu(self.domain.ctx().unit(), x, &fx);
        (r, fx)
    }
}

fn interpolate(axes: &[Vec<f64>], values: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let n = axes.len();
    // per axis: lower node index and weight of the upper node
    let cell: Vec<(usize, f64)> = axes
        .iter()
        .zip(x)
        .map(|(a, &xi)| {
            let xi = xi.clamp(a[0], a[a.len() - 1]);
            let i = a.partition_point(|v| *v <= xi).clamp(1, a.len() - 1) - 1;
            (i, (xi - a[i]) / (a[i + 1] - a[i]))
        })
        .collect();
    let mut out = vec![0.0; values[0].len()];
    for corner in 0..(1usize << n) {
        let mut w = 1.0;
        let mut flat = 0;
        for (d, (i, t)) in cell.iter().enumerate() {
            let up = corner >> d & 1 == 1;
            w *= if up { *t } else { 1.0 - t };
            flat = flat * axes[d].len() + i + usize::from(up);
        }
        if w != 0.0 {
            for (o, v) in out.iter_mut().zip(&values[flat]) {
                *o += w * v;
            }
        }
    }
    out
}

/// Seeded sampling plus local coefficient descent, without the closed-form
/// projection. Returns the best member found and its `D_hu` to `target`.
pub fn best_approx_by_search(
    p: &Polytope,
    target: &Point,
    grid_k: u32,
    seed: u64,
) -> Result<(Point, f64)> {
    p.ctx().check(target)?;
    if grid_k == 0 || grid_k > MAX_GRID_K {
        return Err(Error::InvalidArgument(format!(
            "grid_k must lie in 1..={MAX_GRID_K}, got {grid_k}"
        )));
    }
    let u = p.ctx().unit();
    let z = target.coords();
    let cost = |c: &[f64]| riesz::dist_hu(u, z, &p.combine_raw(c));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = 4usize.pow(grid_k);
    let mut best_coeffs = vec![0.0; p.len()];
    let mut best = f64::INFINITY;
    // the generators themselves first, then random members
    for i in 0..p.len() {
        let mut c = vec![f64::NEG_INFINITY; p.len()];
        c[i] = 0.0;
        let c: Vec<f64> = c.iter().map(|v| v.max(-1e6)).collect();
        let d = cost(&c);
        if d < best {
            best = d;
            best_coeffs = c;
        }
    }
    let scale = p.diameter().max(1e-12);
    for _ in 0..count {
        let mut c: Vec<f64> = (0..p.len())
            .map(|_| -scale * 1.5 * rng.gen::<f64>())
            .collect();
        let pick = rng.gen_range(0..p.len());
        c[pick] = 0.0;
        let d = cost(&c);
        if d < best {
            best = d;
            best_coeffs = c;
        }
    }
    let (coeffs, d) = descend(&cost, best_coeffs, best, scale);
    Ok((Point::from_raw(p.combine_raw(&coeffs)), d))
}

/// Compass search over coefficient vectors, step halving from `scale` down
/// to `2^-20·scale`. Coefficients stay `≤ 0` with maximum pinned at 0.
fn descend<F: Fn(&[f64]) -> f64>(cost: &F, mut c: Vec<f64>, mut best: f64, scale: f64) -> (Vec<f64>, f64) {
    let floor = scale * (-20f64).exp2();
    let mut step = scale;
    while step >= floor {
        let mut improved = true;
        while improved {
            improved = false;
            for i in 0..c.len() {
                for dir in [step, -step] {
                    let mut trial = c.clone();
                    trial[i] = (trial[i] + dir).min(0.0);
                    let top = trial.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    trial.iter_mut().for_each(|v| *v -= top);
                    let d = cost(&trial);
                    if d < best {
                        best = d;
                        c = trial;
                        improved = true;
                    }
                }
            }
        }
        step *= 0.5;
    }
    (c, best)
}

/// A hull member minimizing `D_hu(·, target)`, with the distance.
///
/// Combines the closed-form nearest member with a seeded search over
/// `4^grid_k` members refined by coefficient descent, returning whichever is
/// closer (the closed form, up to rounding).
pub fn best_approx_point(p: &Polytope, target: &Point, grid_k: u32) -> Result<(Point, f64)> {
    best_approx_point_seeded(p, target, grid_k, 0)
}

pub fn best_approx_point_seeded(
    p: &Polytope,
    target: &Point,
    grid_k: u32,
    seed: u64,
) -> Result<(Point, f64)> {
    let exact = p.nearest(target, Metric::Hu)?;
    let (searched, d) = best_approx_by_search(p, target, grid_k, seed)?;
    if d < exact.distance {
        Ok((searched, d))
    } else {
        Ok((exact.point, exact.distance))
    }
}

/// Parameters of [`fixpoint_search_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixpointConfig {
    pub starts: usize,
    /// Picard steps per start before moving on.
    pub picard_steps: usize,
    pub seed: u64,
}

impl Default for FixpointConfig {
    fn default() -> Self {
        FixpointConfig {
            starts: 8,
            picard_steps: 64,
            seed: 0,
        }
    }
}

/// Default evaluation budget for [`fixpoint_search`].
pub const DEFAULT_BUDGET: usize = 4096;

/// Outcome of a fixed-point search. `found` is false when the budget ran
/// out before the residual dropped to `tol`; that says nothing about
/// whether a fixed point exists.
#[derive(Debug, Clone, PartialEq)]
pub struct FixpointOutcome {
    pub point: Point,
    /// `D_hu(x, f(x))` at `point`.
    pub residual: f64,
    pub found: bool,
    pub evaluations: usize,
    /// Index of the start whose run produced `point`; `None` if it came
    /// from the final refinement phase.
    pub start: Option<usize>,
}

pub fn fixpoint_search(f: &SelfMap, tol: f64, budget: usize) -> Result<FixpointOutcome> {
    fixpoint_search_with(f, tol, budget, FixpointConfig::default())
}

struct Tracker {
    budget: usize,
    used: usize,
    tol: f64,
    best: Vec<f64>,
    residual: f64,
    start: Option<usize>,
}

impl Tracker {
    fn done(&self) -> bool {
        self.used >= self.budget || self.residual <= self.tol
    }

    /// Evaluates `f` at `x` if budget remains; returns `f(x)` and the residual.
    fn eval(&mut self, f: &SelfMap, x: &[f64], start: Option<usize>) -> Option<(f64, Vec<f64>)> {
        if self.done() {
            return None;
        }
        self.used += 1;
        let (r, fx) = f.residual(x);
        if r < self.residual {
            self.residual = r;
            self.best = x.to_vec();
            self.start = start;
        }
        Some((r, fx))
    }
}

/// Multi-start Picard iteration, then Mann averaging `x ← μ(x, f(x))` from the
/// best point, then coefficient descent on the residual.
///
/// The evaluation order does not depend on `budget`, so a larger budget
/// only extends the same sequence and the reported residual never grows.
pub fn fixpoint_search_with(
    f: &SelfMap,
    tol: f64,
    budget: usize,
    cfg: FixpointConfig,
) -> Result<FixpointOutcome> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol {tol} must be positive")));
    }
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be positive".into()));
    }
    let p = f.domain();
    let u = p.ctx().unit();

    let mut starts: Vec<Vec<f64>> = p.gens().iter().map(|g| g.coords().to_vec()).collect();
    starts.push(p.join_all().into_coords());
    if starts.len() < cfg.starts {
        let extra = p.sample(cfg.starts - starts.len(), cfg.seed);
        starts.extend(extra.into_iter().map(Point::into_coords));
    }
    starts.truncate(cfg.starts.max(1));

    let mut t = Tracker {
        budget,
        used: 0,
        tol,
        best: starts[0].clone(),
        residual: f64::INFINITY,
        start: Some(0),
    };

    for (s, x0) in starts.iter().enumerate() {
        let mut x = x0.clone();
        for _ in 0..cfg.picard_steps {
            match t.eval(f, &x, Some(s)) {
                Some((r, fx)) if r > 0.0 => x = fx,
                _ => break,
            }
        }
    }

    let mut x = t.best.clone();
    let mut stall = 0;
    while stall < 32 {
        let before = t.residual;
        match t.eval(f, &x, None) {
            Some((_, fx)) => x = geodesic::midpoint_raw(u, &x, &fx),
            None => break,
        }
        stall = if t.residual < before { 0 } else { stall + 1 };
    }

    if !t.done() {
        if let Some(w) = p.member_raw(&t.best).witness {
            let scale = p.diameter().max(1e-12);
            let floor = scale * (-20f64).exp2();
            let mut c = w;
            let mut step = scale;
            'outer: while step >= floor {
                let mut improved = true;
                while improved {
                    improved = false;
                    for i in 0..c.len() {
                        for dir in [step, -step] {
                            let mut trial = c.clone();
                            trial[i] = (trial[i] + dir).min(0.0);
                            let top = trial.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                            trial.iter_mut().for_each(|v| *v -= top);
                            let before = t.residual;
                            if t.eval(f, &p.combine_raw(&trial), None).is_none() {
                                break 'outer;
                            }
                            if t.residual < before {
                                c = trial;
                                improved = true;
                            }
                        }
                    }
                }
                step *= 0.5;
            }
        }
    }

    Ok(FixpointOutcome {
        point: Point::from_raw(t.best),
        residual: t.residual,
        found: t.residual <= tol,
        evaluations: t.used,
        start: t.start,
    })
}

/// The shipped contraction example class: a seeded random polytope in the
/// plane (2 to 4 generators) and `x ↦ snap(λ·x + b)` with `λ ∈ [0.1, 0.7]`.
pub fn contraction_instance(seed: u64) -> Result<SelfMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = crate::riesz::SpaceCtx::new(vec![1.0, rng.gen_range(0.5..2.0)])?;
    let m = rng.gen_range(2..=4);
    let gens = (0..m)
        .map(|_| Point::new(vec![rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)]))
        .collect::<Result<Vec<_>>>()?;
    let p = Polytope::new(ctx, gens)?;
    let lambda = rng.gen_range(0.1..=0.7);
    let b = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
    SelfMap::scaled(p, lambda, &b)
}
