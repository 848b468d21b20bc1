//! Reference implementations written straight from the definitions, kept
//! separate from the library so tests compare two independent routes.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn p(u: &[f64], x: &[f64]) -> f64 {
    x.iter().zip(u).map(|(a, w)| a / w).fold(f64::NEG_INFINITY, f64::max)
}

pub fn q(u: &[f64], x: &[f64]) -> f64 {
    x.iter().zip(u).map(|(a, w)| a / w).fold(f64::INFINITY, f64::min)
}

pub fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn join(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a.max(*b)).collect()
}

pub fn shift(u: &[f64], x: &[f64], t: f64) -> Vec<f64> {
    x.iter().zip(u).map(|(a, w)| a + t * w).collect()
}

/// `‖x‖_u = max |x_i| / u_i`.
pub fn norm_u(u: &[f64], x: &[f64]) -> f64 {
    x.iter().zip(u).map(|(a, w)| a.abs() / w).fold(0.0, f64::max)
}

/// `max_i x_i⁺/u_i + max_i x_i⁻/u_i`.
pub fn norm_hu(u: &[f64], x: &[f64]) -> f64 {
    let pos = x.iter().zip(u).map(|(a, w)| a.max(0.0) / w).fold(0.0, f64::max);
    let neg = x.iter().zip(u).map(|(a, w)| (-a).max(0.0) / w).fold(0.0, f64::max);
    pos + neg
}

pub fn d_hu(u: &[f64], x: &[f64], y: &[f64]) -> f64 {
    norm_hu(u, &sub(x, y))
}

pub fn d_u(u: &[f64], x: &[f64], y: &[f64]) -> f64 {
    norm_u(u, &sub(x, y))
}

/// `(α, β)` of the geodesic from `a` to `b`.
pub fn span(u: &[f64], a: &[f64], b: &[f64]) -> (f64, f64) {
    let d = sub(a, b);
    (q(u, &d).min(0.0), p(u, &d).max(0.0))
}

/// The geodesic parametrization, branch by branch.
pub fn gamma(u: &[f64], a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    if t <= 0.0 {
        join(a, &shift(u, b, t))
    } else {
        join(&shift(u, a, -t), b)
    }
}

pub fn gamma_hat(u: &[f64], a: &[f64], b: &[f64], s: f64) -> Vec<f64> {
    let (al, be) = span(u, a, b);
    gamma(u, a, b, (1.0 - s) * al + s * be)
}

pub fn midpoint(u: &[f64], a: &[f64], b: &[f64]) -> Vec<f64> {
    gamma_hat(u, a, b, 0.5)
}

/// `⋁ (x_i + t_i·u)`.
pub fn combine(u: &[f64], gens: &[Vec<f64>], t: &[f64]) -> Vec<f64> {
    let mut out = vec![f64::NEG_INFINITY; u.len()];
    for (g, ti) in gens.iter().zip(t) {
        for j in 0..u.len() {
            out[j] = out[j].max(g[j] + ti * u[j]);
        }
    }
    out
}

/// Random coefficients `≤ 0` with maximum 0, spread over `[−spread, 0]`.
pub fn coeffs(rng: &mut ChaCha8Rng, m: usize, spread: f64) -> Vec<f64> {
    let mut t: Vec<f64> = (0..m).map(|_| -rng.gen_range(0.0..spread)).collect();
    let top = t.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    t.iter_mut().for_each(|v| *v -= top);
    t
}

pub fn diameter(u: &[f64], pts: &[Vec<f64>]) -> f64 {
    let mut best: f64 = 0.0;
    for a in pts {
        for b in pts {
            best = best.max(d_hu(u, a, b));
        }
    }
    best
}

/// Directed Hausdorff distance between finite sets.
pub fn directed(u: &[f64], a: &[Vec<f64>], b: &[Vec<f64>], hu: bool) -> f64 {
    a.iter()
        .map(|x| {
            b.iter()
                .map(|y| if hu { d_hu(u, x, y) } else { d_u(u, x, y) })
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

pub fn hausdorff(u: &[f64], a: &[Vec<f64>], b: &[Vec<f64>], hu: bool) -> f64 {
    directed(u, a, b, hu).max(directed(u, b, a, hu))
}

pub fn rand_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.25..4.0)).collect()
}

pub fn rand_vec(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-r..r)).collect()
}
