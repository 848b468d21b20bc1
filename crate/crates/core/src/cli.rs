//! The `maxplus` command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::approx::{self, MapKind, SelfMap};
use crate::error::Error;
use crate::geodesic::GeodesicSpan;
use crate::hull::{self, Polytope};
use crate::hyperspace::{self, CompactSet, SamplingConfig};
use crate::io;
use crate::render::{self, Scene};
use crate::riesz::{Metric, Point, SpaceCtx};
use crate::verify;

#[derive(Debug, Parser)]
#[command(name = "maxplus", version, about = "Max-plus convexity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Space {
    /// Unit vector, e.g. "1 1". Defaults to all ones.
    #[arg(long, allow_hyphen_values = true)]
    unit: Option<String>,
    /// Comparison tolerance.
    #[arg(long)]
    eps: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distance between two points.
    Dist {
        #[command(flatten)]
        space: Space,
        /// u or hu; both are printed when omitted.
        #[arg(long)]
        metric: Option<Metric>,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Norm of a point.
    Norm {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        metric: Option<Metric>,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Hull membership with a witness.
    Member {
        #[command(flatten)]
        space: Space,
        /// Generator file.
        #[arg(long)]
        gens: PathBuf,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// Points along the geodesic from x1 to x2, or its SVG.
    Geodesic {
        #[command(flatten)]
        space: Space,
        #[arg(allow_hyphen_values = true)]
        x1: String,
        #[arg(allow_hyphen_values = true)]
        x2: String,
        /// Number of evenly spaced samples.
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// Print only the exact vertices of the path.
        #[arg(long)]
        vertices: bool,
        /// Emit SVG instead of coordinates.
        #[arg(long)]
        svg: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// SVG drawing of a planar polytope.
    HullSvg {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = render::DEFAULT_RESOLUTION)]
        resolution: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// SVG drawing of a ball in the plane.
    BallSvg {
        #[command(flatten)]
        space: Space,
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = render::DEFAULT_RESOLUTION)]
        resolution: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hausdorff distance between two point sets or their hulls.
    Hausdorff {
        #[command(flatten)]
        space: Space,
        a: PathBuf,
        b: PathBuf,
        /// Replace both sets by their hulls.
        #[arg(long)]
        hull: bool,
        #[arg(long, default_value = "hu")]
        metric: Metric,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Distance from a point to a polytope, with the nearest member.
    HullDistance {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        gens: PathBuf,
        #[arg(allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value = "hu")]
        metric: Metric,
        /// Cross-check against seeded sampling.
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fixed-point search for a self-map of a polytope.
    Fixpoint {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        gens: PathBuf,
        /// `x ↦ snap(λx + b)` with this λ.
        #[arg(long, conflicts_with = "amplitude")]
        lambda: Option<f64>,
        /// The offset b.
        #[arg(long, allow_hyphen_values = true)]
        offset: Option<String>,
        /// Sine perturbation amplitude (with --frequency).
        #[arg(long, requires = "frequency")]
        amplitude: Option<f64>,
        #[arg(long)]
        frequency: Option<f64>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = approx::DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the randomized property checks.
    Verify {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run a single check by name.
        #[arg(long)]
        only: Option<String>,
    },
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn literal(what: &str, text: &str) -> std::result::Result<Vec<f64>, Failure> {
    io::parse_point(text).map_err(|e| Failure(format!("{what}: {e}")))
}

fn point_file(path: &Path) -> std::result::Result<Vec<Vec<f64>>, Failure> {
    io::read_points(path).map_err(|e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => Failure(format!("{}:{line}:{column}: {message}", path.display())),
        other => Failure(other.to_string()),
    })
}

impl Space {
    fn ctx(&self, dim: usize) -> std::result::Result<SpaceCtx, Failure> {
        let ctx = match &self.unit {
            Some(u) => SpaceCtx::new(literal("--unit", u)?)?,
            None => SpaceCtx::ones(dim)?,
        };
        Ok(match self.eps {
            Some(e) => ctx.with_eps(e)?,
            None => ctx,
        })
    }
}

fn points(ctx: &SpaceCtx, raw: Vec<Vec<f64>>) -> std::result::Result<Vec<Point>, Failure> {
    raw.into_iter()
        .map(|p| ctx.point(p).map_err(Failure::from))
        .collect()
}

fn fmt(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else {
        format!("{v}")
    }
}

fn fmt_point(p: &[f64]) -> String {
    p.iter().map(|v| fmt(*v)).collect::<Vec<_>>().join(" ")
}

fn emit(out: &mut dyn Write, output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

/// Runs the CLI on `args` (including the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code: 0 on
/// success, 1 on a domain or input error, 2 on a usage error.
pub fn cli_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Dist {
            space,
            metric,
            x,
            y,
        } => {
            let (x, y) = (literal("x", &x)?, literal("y", &y)?);
            let ctx = space.ctx(x.len())?;
            let (x, y) = (ctx.point(x)?, ctx.point(y)?);
            match metric {
                Some(m) => writeln!(out, "{}", fmt(ctx.dist(&x, &y, m)?))?,
                None => {
                    writeln!(out, "u {}", fmt(ctx.dist_u(&x, &y)?))?;
                    writeln!(out, "hu {}", fmt(ctx.dist_hu(&x, &y)?))?;
                }
            }
            Ok(0)
        }
        Command::Norm { space, metric, x } => {
            let x = literal("x", &x)?;
            let ctx = space.ctx(x.len())?;
            let x = ctx.point(x)?;
            match metric {
                Some(m) => writeln!(out, "{}", fmt(ctx.norm(&x, m)?))?,
                None => {
                    writeln!(out, "u {}", fmt(ctx.norm_u(&x)?))?;
                    writeln!(out, "hu {}", fmt(ctx.norm_hu(&x)?))?;
                }
            }
            Ok(0)
        }
        Command::Member { space, gens, z } => {
            let raw = point_file(&gens)?;
            let ctx = space.ctx(raw[0].len())?;
            let p = Polytope::new(ctx.clone(), points(&ctx, raw)?)?;
            let m = p.member(&ctx.point(literal("z", &z)?)?)?;
            writeln!(out, "{}", m.inside)?;
            if let Some(w) = m.witness {
                writeln!(out, "witness {}", fmt_point(&w))?;
            }
            Ok(0)
        }
        Command::Geodesic {
            space,
            x1,
            x2,
            samples,
            vertices,
            svg,
            output,
        } => {
            let (a, b) = (literal("x1", &x1)?, literal("x2", &x2)?);
            let ctx = space.ctx(a.len())?;
            let (a, b) = (ctx.point(a)?, ctx.point(b)?);
            let sp = GeodesicSpan::new(&ctx, &a, &b)?;
            if svg {
                let mut scene = Scene::framing(ctx.clone(), &[a.clone(), b.clone(), ctx.join(&a, &b)?])?;
                scene.push(render::Layer::Axis);
                scene.push(render::render_geodesic(&scene, &a, &b)?);
                scene.push(render::Layer::PointMarker { at: [a.coords()[0], a.coords()[1]] });
                scene.push(render::Layer::PointMarker { at: [b.coords()[0], b.coords()[1]] });
                return emit(out, output.as_deref(), &scene.to_svg());
            }
            let mut text = String::new();
            if vertices {
                for p in sp.polyline(&ctx) {
                    text.push_str(&fmt_point(p.coords()));
                    text.push('\n');
                }
            } else {
                if samples == 0 {
                    return Err(Failure("--samples must be positive".into()));
                }
                for k in 0..=samples {
                    let s = k as f64 / samples as f64;
                    let p = sp.gamma_hat(&ctx, s)?;
                    text.push_str(&format!("{} {}\n", fmt(s), fmt_point(p.coords())));
                }
            }
            emit(out, output.as_deref(), &text)
        }
        Command::HullSvg {
            space,
            gens,
            resolution,
            output,
        } => {
            let raw = point_file(&gens)?;
            let ctx = space.ctx(raw[0].len())?;
            let p = Polytope::new(ctx.clone(), points(&ctx, raw)?)?;
            let framed = Scene::framing(ctx.clone(), &p.feature_points())?;
            let mut scene = Scene::new(ctx, framed.viewport(), resolution)?;
            scene.push(render::Layer::Axis);
            scene.extend(render::render_polytope(&scene, &p)?);
            emit(out, output.as_deref(), &scene.to_svg())
        }
        Command::BallSvg {
            space,
            center,
            radius,
            resolution,
            output,
        } => {
            let c = literal("--center", &center)?;
            let ctx = space.ctx(c.len())?;
            let c = ctx.point(c)?;
            let ball = hull::ball_polytope_2d(&ctx, &c, radius)?;
            let framed = Scene::framing(ctx.clone(), &ball.feature_points())?;
            let mut scene = Scene::new(ctx, framed.viewport(), resolution)?;
            scene.push(render::Layer::Axis);
            scene.extend(render::render_ball(&scene, &c, radius)?);
            scene.extend(render::render_polytope(&scene, &ball)?);
            emit(out, output.as_deref(), &scene.to_svg())
        }
        Command::Hausdorff {
            space,
            a,
            b,
            hull,
            metric,
            samples,
            seed,
        } => {
            let (ra, rb) = (point_file(&a)?, point_file(&b)?);
            let ctx = space.ctx(ra[0].len())?;
            let mut sa = CompactSet::cloud(ctx.clone(), points(&ctx, ra)?)?;
            let mut sb = CompactSet::cloud(ctx.clone(), points(&ctx, rb)?)?;
            if hull {
                sa = hyperspace::hull_of(&sa)?;
                sb = hyperspace::hull_of(&sb)?;
            }
            let est = hyperspace::hausdorff_estimate(&ctx, &sa, &sb, metric, SamplingConfig { samples, seed })?;
            writeln!(out, "{}", fmt(est.value))?;
            if !est.exact {
                writeln!(out, "upper {}", fmt(est.upper))?;
            }
            Ok(0)
        }
        Command::HullDistance {
            space,
            gens,
            z,
            metric,
            certify,
            seed,
        } => {
            let raw = point_file(&gens)?;
            let ctx = space.ctx(raw[0].len())?;
            let p = Polytope::new(ctx.clone(), points(&ctx, raw)?)?;
            let z = ctx.point(literal("z", &z)?)?;
            let near = p.nearest(&z, metric)?;
            writeln!(out, "{}", fmt(near.distance))?;
            writeln!(out, "nearest {}", fmt_point(near.point.coords()))?;
            if certify {
                let cert = hyperspace::certify_point_set_distance(
                    &ctx,
                    &z,
                    &CompactSet::Hull(p),
                    metric,
                    SamplingConfig { samples: 256, seed },
                )?;
                writeln!(out, "sampled {}", fmt(cert.sampled_min))?;
                writeln!(out, "certified {}", cert.certified)?;
                if !cert.certified {
                    return Ok(1);
                }
            }
            Ok(0)
        }
        Command::Fixpoint {
            space,
            gens,
            lambda,
            offset,
            amplitude,
            frequency,
            tol,
            budget,
            seed,
        } => {
            let raw = point_file(&gens)?;
            let ctx = space.ctx(raw[0].len())?;
            let p = Polytope::new(ctx.clone(), points(&ctx, raw)?)?;
            let n = ctx.dim();
            let f = match (amplitude, frequency) {
                (Some(a), Some(w)) => SelfMap::new(
                    p,
                    MapKind::CoordinatePerturb {
                        amplitude: a,
                        frequency: w,
                    },
                )?,
                _ => {
                    let b = match offset {
                        Some(o) => literal("--offset", &o)?,
                        None => vec![0.0; n],
                    };
                    if b.len() != n {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            found: b.len(),
                        }
                        .into());
                    }
                    SelfMap::scaled(p, lambda.unwrap_or(0.5), &b)?
                }
            };
            let cfg = approx::FixpointConfig {
                seed,
                ..Default::default()
            };
            let res = approx::fixpoint_search_with(&f, tol, budget, cfg)?;
            writeln!(out, "{}", fmt_point(res.point.coords()))?;
            writeln!(out, "residual {}", fmt(res.residual))?;
            writeln!(out, "evaluations {}", res.evaluations)?;
            if res.found {
                Ok(0)
            } else {
                writeln!(out, "not found within budget")?;
                Ok(1)
            }
        }
        Command::Verify { trials, seed, only } => {
            let reports = match only {
                Some(name) => vec![verify::run_named(&name, trials, seed)
                    .ok_or_else(|| Failure(format!("unknown check {name:?}")))?],
                None => verify::run_all(trials, seed),
            };
            writeln!(out, "{:<28} {:<10} {:>7} {:>8} {:>12}  status", "check", "module", "trials", "failures", "worst")?;
            let mut failed = 0;
            for r in &reports {
                writeln!(
                    out,
                    "{:<28} {:<10} {:>7} {:>8} {:>12.3e}  {}",
                    r.name,
                    r.module,
                    r.trials,
                    r.failures,
                    r.worst,
                    if r.passed() { "PASS" } else { "FAIL" }
                )?;
                failed += usize::from(!r.passed());
            }
            writeln!(out, "{} of {} checks passed", reports.len() - failed, reports.len())?;
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}
