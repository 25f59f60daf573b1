//! Averages over the Bloch sphere.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{param, Result};

/// How sphere averages are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereSampling {
    /// Gauss-Legendre in `cos w` times a uniform rule in `θ`, using
    /// `⌈√n_points⌉` nodes along each axis.
    Quadrature { n_points: usize },
    /// Uniform random points from a seeded stream.
    MonteCarlo { n_points: usize, seed: u64 },
}

impl Default for SphereSampling {
    fn default() -> Self {
        SphereSampling::Quadrature { n_points: 1024 }
    }
}

impl SphereSampling {
    pub fn n_points(&self) -> usize {
        match *self {
            SphereSampling::Quadrature { n_points } | SphereSampling::MonteCarlo { n_points, .. } => n_points,
        }
    }

    /// Nodes `(cos w, θ, weight)` with weights summing to one.
    pub fn points(&self) -> Result<Vec<SpherePoint>> {
        match *self {
            SphereSampling::Quadrature { n_points } => {
                if n_points == 0 {
                    return Err(param("n_points", "must be at least 1"));
                }
                let n = (n_points as f64).sqrt().ceil() as usize;
                let (nodes, weights) = gauss_legendre(n);
                let mut out = Vec::with_capacity(n * n);
                for (x, wx) in nodes.iter().zip(&weights) {
                    for j in 0..n {
                        out.push(SpherePoint {
                            cos_w: *x,
                            theta: TAU * j as f64 / n as f64,
                            weight: 0.5 * wx / n as f64,
                        });
                    }
                }
                Ok(out)
            }
            SphereSampling::MonteCarlo { n_points, seed } => {
                if n_points == 0 {
                    return Err(param("n_points", "must be at least 1"));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok((0..n_points)
                    .map(|_| SpherePoint {
                        cos_w: rng.gen_range(-1.0..=1.0),
                        theta: rng.gen_range(0.0..TAU),
                        weight: 1.0 / n_points as f64,
                    })
                    .collect())
            }
        }
    }
}

/// One node of a sphere rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub cos_w: f64,
    pub theta: f64,
    pub weight: f64,
}

impl SpherePoint {
    pub fn w(&self) -> f64 {
        self.cos_w.clamp(-1.0, 1.0).acos()
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// Pairwise (tree) summation; the result depends only on the order of `xs`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Weighted mean of `f` over the rule, with the sample standard error for
/// Monte Carlo rules (zero for quadrature).
pub fn sphere_average(
    sampling: &SphereSampling,
    mut f: impl FnMut(&SpherePoint) -> Result<f64>,
) -> Result<(f64, f64)> {
    let points = sampling.points()?;
    let values: Vec<f64> = points.iter().map(&mut f).collect::<Result<_>>()?;
    let weighted: Vec<f64> = values.iter().zip(&points).map(|(v, p)| v * p.weight).collect();
    let mean = pairwise_sum(&weighted);
    let stderr = match sampling {
        SphereSampling::Quadrature { .. } => 0.0,
        SphereSampling::MonteCarlo { .. } => {
            let n = values.len() as f64;
            if values.len() < 2 {
                0.0
            } else {
                let sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
                (pairwise_sum(&sq) / (n - 1.0)).sqrt() / n.sqrt()
            }
        }
    };
    Ok((mean, stderr))
}
