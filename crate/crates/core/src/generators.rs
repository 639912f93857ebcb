//! Example network families and seeded random instances.
//!
//! Random instances use ChaCha8 (`rand_chacha`) seeded with
//! `ChaCha8Rng::seed_from_u64(seed)` and, for split streams,
//! `set_stream(stream)`. A uniform draw on `[low, high]` is
//! `low + (high − low) · u` with `u = (next_u64() >> 11) · 2⁻⁵³`; rows are
//! filled in row-major order. This pins every generated matrix bit for bit.

use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::network::{default_labels, Network};

/// A discretized directed circle, optionally with reversibility `ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleSpec {
    pub n: usize,
    pub rho: Option<f64>,
}

impl CircleSpec {
    pub fn build(&self) -> Result<Network> {
        match self.rho {
            None => directed_circle(self.n),
            Some(rho) => directed_circle_reversible(self.n, rho),
        }
    }
}

/// Counterclockwise angular distance between sample points `j` and `k`.
fn ccw(n: usize, j: usize, k: usize) -> f64 {
    ((k + n - j) % n) as f64 * TAU / n as f64
}

/// `n` equally spaced points of the directed circle starting at angle 0;
/// weight `(j, k)` is the counterclockwise distance from `θ_j` to `θ_k`.
pub fn directed_circle(n: usize) -> Result<Network> {
    if n == 0 {
        return Err(Error::invalid("a circle needs at least one sample point"));
    }
    let weights = (0..n)
        .flat_map(|j| (0..n).map(move |k| ccw(n, j, k)))
        .collect();
    Network::new(default_labels(n), weights)
}

/// As [`directed_circle`], but clockwise travel is allowed at cost `ρ` times
/// the clockwise arc: `min(d⃗(θ_j, θ_k), ρ·d⃗(θ_k, θ_j))`.
pub fn directed_circle_reversible(n: usize, rho: f64) -> Result<Network> {
    if n == 0 {
        return Err(Error::invalid("a circle needs at least one sample point"));
    }
    if !(rho >= 1.0 && rho.is_finite()) {
        return Err(Error::invalid(format!("reversibility must be a finite value >= 1, got {rho}")));
    }
    let weights = (0..n)
        .flat_map(|j| (0..n).map(move |k| ccw(n, j, k).min(rho * ccw(n, k, j))))
        .collect();
    Network::new(default_labels(n), weights)
}

/// Certified upper bound on `d_N` between the `n`- and `2n`-point samples of
/// the reversible circle, via the nearest-node correspondence: fine point
/// `k` is matched to coarse point `⌊k/2⌋`, which lies at or just behind it.
pub fn circle_refinement_bound(n: usize, rho: f64) -> Result<f64> {
    let coarse = directed_circle_reversible(n, rho)?;
    let fine = directed_circle_reversible(2 * n, rho)?;
    let pairs = (0..2 * n).map(|k| (k / 2, k)).collect();
    let r = Correspondence::new(pairs, n, 2 * n)?;
    Ok(0.5 * r.distortion(&coarse, &fine)?)
}

/// `n` nodes, every weight equal to `alpha`.
pub fn constant_network(n: usize, alpha: f64) -> Result<Network> {
    if n == 0 {
        return Err(Error::invalid("a network needs at least one node"));
    }
    Network::new(default_labels(n), vec![alpha; n * n])
}

/// Deterministic generator for stream `stream` of `seed`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A uniform draw from `[0, 1)` with 53 bits of precision.
pub fn unit_draw(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Entries drawn independently and uniformly from `[low, high]`.
pub fn random_network(n: usize, low: f64, high: f64, seed: u64) -> Result<Network> {
    random_network_with(n, low, high, &mut seeded_rng(seed, 0))
}

pub fn random_network_with(
    n: usize,
    low: f64,
    high: f64,
    rng: &mut impl RngCore,
) -> Result<Network> {
    if !(low < high) || !low.is_finite() || !high.is_finite() {
        return Err(Error::invalid(format!("need finite low < high, got [{low}, {high}]")));
    }
    if n == 0 {
        return Err(Error::invalid("a network needs at least one node"));
    }
    let weights = (0..n * n)
        .map(|_| low + (high - low) * unit_draw(rng))
        .collect();
    Network::new(default_labels(n), weights)
}

/// A uniformly random ordering of `0..n`.
pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}
