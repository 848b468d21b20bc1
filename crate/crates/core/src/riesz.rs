//! Lattice and norm arithmetic on `E = ℝ^n` ordered coordinatewise, with a
//! strictly positive unit `u`.
//!
//! Everything here is a pure function of immutable values. The public
//! methods on [`SpaceCtx`] validate dimensions; the `pub(crate)` slice
//! helpers at the bottom skip validation and are what the rest of the crate
//! builds on.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite coordinate vector, i.e. an element of `E`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    /// Builds a point, rejecting NaN and infinite coordinates.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Point(coords))
    }

    pub fn zeros(n: usize) -> Self {
        Point(vec![0.0; n])
    }

    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        debug_assert!(coords.iter().all(|v| v.is_finite()));
        Point(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v)?;
        }
        Ok(())
    }
}

/// Which of the two equivalent norms a distance is measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// `‖x‖_u = max_i |x_i| / u_i`.
    U,
    /// The max-plus (Hilbert affine) norm `p_u(x⁺) + p_u(x⁻)`.
    Hu,
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" => Ok(Metric::U),
            "hu" => Ok(Metric::Hu),
            other => Err(Error::InvalidArgument(format!(
                "unknown metric {other:?} (expected \"u\" or \"hu\")"
            ))),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::U => "u",
            Metric::Hu => "hu",
        })
    }
}

/// The ambient space: dimension, unit and comparison tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceCtx {
    unit: Vec<f64>,
    eps: f64,
}

impl SpaceCtx {
    pub const DEFAULT_EPS: f64 = 1e-9;

    /// Context with the default tolerance. Every unit coordinate must be
    /// finite and strictly positive.
    pub fn new(unit: Vec<f64>) -> Result<Self> {
        if unit.is_empty() {
            return Err(Error::EmptyUnit);
        }
        if let Some((index, &value)) = unit
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::NonPositiveUnit { index, value });
        }
        SpaceCtx {
            unit,
            eps: Self::DEFAULT_EPS,
        }
        .with_eps(Self::DEFAULT_EPS)
    }

    /// All-ones unit in dimension `n`.
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(vec![1.0; n])
    }

    /// Replaces the tolerance; requires `0 <= eps < min_i u_i`.
    pub fn with_eps(mut self, eps: f64) -> Result<Self> {
        let min_unit = self.unit.iter().copied().fold(f64::INFINITY, f64::min);
        if !(eps.is_finite() && eps >= 0.0 && eps < min_unit) {
            return Err(Error::InvalidTolerance { eps, min_unit });
        }
        self.eps = eps;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn unit(&self) -> &[f64] {
        &self.unit
    }

    pub fn unit_point(&self) -> Point {
        Point::from_raw(self.unit.clone())
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Validates coordinates for this context and wraps them.
    pub fn point(&self, coords: Vec<f64>) -> Result<Point> {
        let p = Point::new(coords)?;
        self.check(&p)?;
        Ok(p)
    }

    pub fn check(&self, x: &Point) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(())
    }

    fn check2(&self, x: &Point, y: &Point) -> Result<()> {
        self.check(x)?;
        self.check(y)
    }

    pub fn join(&self, x: &Point, y: &Point) -> Result<Point> {
        self.check2(x, y)?;
        Ok(Point::from_raw(join(x.coords(), y.coords())))
    }

    pub fn meet(&self, x: &Point, y: &Point) -> Result<Point> {
        self.check2(x, y)?;
        Ok(Point::from_raw(meet(x.coords(), y.coords())))
    }

    /// `x⁺ = 0 ∨ x`.
    pub fn pos_part(&self, x: &Point) -> Result<Point> {
        self.check(x)?;
        Ok(Point::from_raw(x.coords().iter().map(|v| v.max(0.0)).collect()))
    }

    /// `x⁻ = 0 ∨ (−x)`.
    pub fn neg_part(&self, x: &Point) -> Result<Point> {
        self.check(x)?;
        Ok(Point::from_raw(x.coords().iter().map(|v| (-v).max(0.0)).collect()))
    }

    /// `|x| = x⁺ + x⁻`.
    pub fn abs_val(&self, x: &Point) -> Result<Point> {
        let pos = self.pos_part(x)?;
        let neg = self.neg_part(x)?;
        Ok(Point::from_raw(add(pos.coords(), neg.coords())))
    }

    /// `p_u(x) = inf{t : x ≤ t·u}`.
    pub fn p_u(&self, x: &Point) -> Result<f64> {
        self.check(x)?;
        Ok(p_u(&self.unit, x.coords()))
    }

    /// `q_u(x) = sup{t : t·u ≤ x}`.
    pub fn q_u(&self, x: &Point) -> Result<f64> {
        self.check(x)?;
        Ok(q_u(&self.unit, x.coords()))
    }

    pub fn norm_u(&self, x: &Point) -> Result<f64> {
        self.check(x)?;
        Ok(norm_u(&self.unit, x.coords()))
    }

    pub fn norm_hu(&self, x: &Point) -> Result<f64> {
        self.check(x)?;
        Ok(norm_hu(&self.unit, x.coords()))
    }

    pub fn norm(&self, x: &Point, metric: Metric) -> Result<f64> {
        match metric {
            Metric::U => self.norm_u(x),
            Metric::Hu => self.norm_hu(x),
        }
    }

    pub fn dist_u(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check2(x, y)?;
        Ok(dist_u(&self.unit, x.coords(), y.coords()))
    }

    /// `max{0, p_u(x−y)} + max{0, p_u(y−x)}`.
    pub fn dist_hu(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check2(x, y)?;
        Ok(dist_hu(&self.unit, x.coords(), y.coords()))
    }

    pub fn dist(&self, x: &Point, y: &Point, metric: Metric) -> Result<f64> {
        match metric {
            Metric::U => self.dist_u(x, y),
            Metric::Hu => self.dist_hu(x, y),
        }
    }

    /// The Riesz isomorphism `x_i ↦ x_i / u_i` carrying `u` to the all-ones unit.
    pub fn gauge_to_one(&self, x: &Point) -> Result<Point> {
        self.check(x)?;
        Ok(Point::from_raw(to_gauge(&self.unit, x.coords())))
    }

    pub fn gauge_from_one(&self, x: &Point) -> Result<Point> {
        self.check(x)?;
        Ok(Point::from_raw(from_gauge(&self.unit, x.coords())))
    }

    /// The all-ones context matching [`gauge_to_one`](Self::gauge_to_one).
    /// The tolerance is rescaled by `1 / min_i u_i`, which stays below 1.
    pub fn gauged(&self) -> SpaceCtx {
        let min_unit = self.unit.iter().copied().fold(f64::INFINITY, f64::min);
        SpaceCtx {
            unit: vec![1.0; self.dim()],
            eps: self.eps / min_unit,
        }
    }

    /// `x + t·u`, the max-plus scalar action.
    pub fn shift(&self, x: &Point, t: f64) -> Result<Point> {
        self.check(x)?;
        Ok(Point::from_raw(shift(&self.unit, x.coords(), t)))
    }

    pub fn sub(&self, x: &Point, y: &Point) -> Result<Point> {
        self.check2(x, y)?;
        Ok(Point::from_raw(sub(x.coords(), y.coords())))
    }

    pub fn add(&self, x: &Point, y: &Point) -> Result<Point> {
        self.check2(x, y)?;
        Ok(Point::from_raw(add(x.coords(), y.coords())))
    }

    /// `x ≤ y` coordinatewise, up to `eps`.
    pub fn leq(&self, x: &Point, y: &Point) -> Result<bool> {
        self.check2(x, y)?;
        Ok(leq(x.coords(), y.coords(), self.eps))
    }

    /// Coordinatewise equality up to `eps`.
    pub fn approx_eq(&self, x: &Point, y: &Point) -> Result<bool> {
        self.check2(x, y)?;
        Ok(approx_eq(x.coords(), y.coords(), self.eps))
    }
}

// Unchecked slice kernels. Callers guarantee equal lengths.

pub(crate) fn join(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a.max(*b)).collect()
}

pub(crate) fn meet(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a.min(*b)).collect()
}

pub(crate) fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub(crate) fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub(crate) fn shift(u: &[f64], x: &[f64], t: f64) -> Vec<f64> {
    x.iter().zip(u).map(|(a, w)| a + t * w).collect()
}

pub(crate) fn to_gauge(u: &[f64], x: &[f64]) -> Vec<f64> {
    x.iter().zip(u).map(|(a, w)| a / w).collect()
}

pub(crate) fn from_gauge(u: &[f64], x: &[f64]) -> Vec<f64> {
    x.iter().zip(u).map(|(a, w)| a * w).collect()
}

pub(crate) fn p_u(u: &[f64], x: &[f64]) -> f64 {
    x.iter()
        .zip(u)
        .map(|(a, w)| a / w)
        .fold(f64::NEG_INFINITY, f64::max)
}

pub(crate) fn q_u(u: &[f64], x: &[f64]) -> f64 {
    x.iter()
        .zip(u)
        .map(|(a, w)| a / w)
        .fold(f64::INFINITY, f64::min)
}

/// `p_u(x − y)` without allocating.
pub(crate) fn p_u_diff(u: &[f64], x: &[f64], y: &[f64]) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 0..u.len() {
        best = best.max((x[i] - y[i]) / u[i]);
    }
    best
}

/// `q_u(x − y)` without allocating.
pub(crate) fn q_u_diff(u: &[f64], x: &[f64], y: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..u.len() {
        best = best.min((x[i] - y[i]) / u[i]);
    }
    best
}

pub(crate) fn norm_u(u: &[f64], x: &[f64]) -> f64 {
    x.iter()
        .zip(u)
        .map(|(a, w)| a.abs() / w)
        .fold(0.0, f64::max)
}

pub(crate) fn norm_hu(u: &[f64], x: &[f64]) -> f64 {
    let pos = x.iter().zip(u).map(|(a, w)| a.max(0.0) / w).fold(0.0, f64::max);
    let neg = x.iter().zip(u).map(|(a, w)| (-a).max(0.0) / w).fold(0.0, f64::max);
    pos + neg
}

pub(crate) fn dist_u(u: &[f64], x: &[f64], y: &[f64]) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..u.len() {
        best = best.max((x[i] - y[i]).abs() / u[i]);
    }
    best
}

pub(crate) fn dist_hu(u: &[f64], x: &[f64], y: &[f64]) -> f64 {
    p_u_diff(u, x, y).max(0.0) + p_u_diff(u, y, x).max(0.0)
}

pub(crate) fn dist(u: &[f64], x: &[f64], y: &[f64], metric: Metric) -> f64 {
    match metric {
        Metric::U => dist_u(u, x, y),
        Metric::Hu => dist_hu(u, x, y),
    }
}

pub(crate) fn leq(x: &[f64], y: &[f64], eps: f64) -> bool {
    x.iter().zip(y).all(|(a, b)| *a <= *b + eps)
}

pub(crate) fn approx_eq(x: &[f64], y: &[f64], eps: f64) -> bool {
    x.iter().zip(y).all(|(a, b)| (a - b).abs() <= eps)
}
