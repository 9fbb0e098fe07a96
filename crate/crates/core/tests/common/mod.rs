//! Oracles and generators shared by the integration tests.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use regrisk::cone::rvec;
use regrisk::{ConeLiftMode, DataMatrix, PolyhedralCone, RiskConfig};

/// Empirical CVaR of `losses` at level `alpha` by breakpoint enumeration:
/// `min_z (1/α) Σ w_h (L_h + z)⁺ − z` is piecewise linear and convex in `z`,
/// so the minimum sits at one of the kinks `z = −L_h`.
pub fn cvar_oracle(losses: &[f64], weights: &[f64], alpha: f64) -> f64 {
    losses
        .iter()
        .map(|&l| {
            let z = -l;
            let tail: f64 = losses.iter().zip(weights).map(|(&lh, &w)| w * (lh + z).max(0.0)).sum();
            tail / alpha - z
        })
        .fold(f64::INFINITY, f64::min)
}

pub fn uniform(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

/// Random integer entries in `[-bound, bound]`, scaled by `1/4` so the
/// values are exact binary fractions.
pub fn entries(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-4 * bound..=4 * bound) as f64 / 4.0).collect()
}

/// A random cone containing `ℝ^d₊`: the unit vectors plus up to `extra`
/// integer generators with positive coordinate sum, so the cone is pointed.
pub fn cone_over_orthant(rng: &mut ChaCha8Rng, d: usize, extra: usize) -> PolyhedralCone {
    let mut gens: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    let k = rng.gen_range(0..=extra);
    while gens.len() < d + k {
        let g: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        if g.iter().sum::<i64>() > 0 {
            gens.push(g);
        }
    }
    let gens: Vec<_> = gens.iter().map(|g| rvec(g)).collect();
    PolyhedralCone::from_generators(d, &gens).unwrap()
}

pub fn orthant_config(alpha: f64, d: usize, m: usize, mode: ConeLiftMode) -> RiskConfig {
    RiskConfig::new(alpha, PolyhedralCone::orthant(d).unwrap(), m, mode, None, 32).unwrap()
}

/// A `1 × n` data matrix with at least one negative entry.
pub fn loss_row(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> DataMatrix {
    let mut row = entries(rng, n, bound);
    if row.iter().all(|&v| v >= 0.0) {
        let h = rng.gen_range(0..n);
        row[h] = -row[h] - 0.25;
    }
    DataMatrix::single_block(vec![row]).unwrap()
}
