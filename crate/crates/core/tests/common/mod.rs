#![allow(dead_code)]

use netmet::generators::{random_network_with, seeded_rng};
use netmet::Network;
use rand_chacha::ChaCha8Rng;

/// `d_N` by brute force over every subset of `X × Y` whose projections are
/// both surjective. Independent of the function-pair reduction used by the
/// solver.
pub fn naive_distance(x: &Network, y: &Network) -> f64 {
    let (n, m) = (x.len(), y.len());
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..m).map(move |b| (a, b))).collect();
    let p = pairs.len();
    assert!(p <= 20, "oracle limited to 20 pairs");
    // cost[i * p + j] = |ω_X(a, a2) − ω_Y(b, b2)| for pairs i = (a, b), j = (a2, b2)
    let mut cost = vec![0.0f64; p * p];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(a2, b2)) in pairs.iter().enumerate() {
            cost[i * p + j] = (x.weight(a, a2) - y.weight(b, b2)).abs();
        }
    }
    let full_x = (1u32 << n) - 1;
    let full_y = (1u32 << m) - 1;
    let mut dis = vec![0.0f64; 1 << p];
    let mut cover_x = vec![0u32; 1 << p];
    let mut cover_y = vec![0u32; 1 << p];
    let mut best = f64::INFINITY;
    for mask in 1usize..(1 << p) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        // every pair-pair inside `mask` avoids `low`, avoids `second`, or is
        // exactly {low, second}
        let d = if rest == 0 {
            cost[low * p + low]
        } else {
            let second = rest.trailing_zeros() as usize;
            let without_second = mask & !(1 << second);
            dis[rest]
                .max(dis[without_second])
                .max(cost[low * p + second])
                .max(cost[second * p + low])
        };
        dis[mask] = d;
        cover_x[mask] = cover_x[rest] | (1 << pairs[low].0);
        cover_y[mask] = cover_y[rest] | (1 << pairs[low].1);
        if cover_x[mask] == full_x && cover_y[mask] == full_y {
            best = best.min(d);
        }
    }
    0.5 * best
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    seeded_rng(seed, 7)
}

/// Random network with `1..=max_nodes` nodes and weights in `[-1, 1]`.
pub fn random_small(rng: &mut ChaCha8Rng, max_nodes: usize) -> Network {
    use rand::Rng;
    let n = rng.gen_range(1..=max_nodes);
    random_network_with(n, -1.0, 1.0, rng).unwrap()
}
