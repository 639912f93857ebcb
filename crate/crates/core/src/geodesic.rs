//! Straight-line geodesics between finite networks.
//!
//! Given an optimal correspondence `R`, the network on node set `R` with
//! weights `(1 − t)·ω_X(x, x′) + t·ω_Y(y, y′)` traces a geodesic from `X`
//! (at `t = 0`) to `Y` (at `t = 1`). Endpoints are returned on `R` itself,
//! so they are blow-ups of `X` and `Y` rather than the networks themselves.

use crate::correspondence::Correspondence;
use crate::distance::{exact_distance, ExactDistance};
use crate::error::{Error, Result};
use crate::network::Network;

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPoint {
    pub t: f64,
    pub network: Network,
}

/// Points sampled along one geodesic, with the optimal correspondence used.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGeodesic {
    pub distance: ExactDistance,
    pub points: Vec<GeodesicPoint>,
}

pub fn geodesic_point(
    x: &Network,
    y: &Network,
    r: &Correspondence,
    t: f64,
) -> Result<GeodesicPoint> {
    if !r.validate(x, y) {
        return Err(Error::invalid("relation is not a correspondence between the networks"));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::invalid(format!("geodesic parameter {t} outside [0, 1]")));
    }
    let pairs = r.pairs();
    let labels = pairs
        .iter()
        .map(|&(a, b)| format!("({}|{})", x.label(a), y.label(b)))
        .collect();
    let weights = pairs
        .iter()
        .flat_map(|&(a, b)| {
            pairs
                .iter()
                .map(move |&(a2, b2)| (1.0 - t) * x.weight(a, a2) + t * y.weight(b, b2))
        })
        .collect();
    Ok(GeodesicPoint {
        t,
        network: Network::new(labels, weights)?,
    })
}

/// Samples the geodesic built on the solver's optimal correspondence.
pub fn sample_geodesic(x: &Network, y: &Network, ts: &[f64]) -> Result<SampledGeodesic> {
    if let Some(&t) = ts.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        return Err(Error::invalid(format!("geodesic parameter {t} outside [0, 1]")));
    }
    let distance = exact_distance(x, y)?;
    let points = ts
        .iter()
        .map(|&t| geodesic_point(x, y, &distance.witness, t))
        .collect::<Result<_>>()?;
    Ok(SampledGeodesic { distance, points })
}

/// A network at distance `½·d_N(X, Y)` from both `X` and `Y`.
pub fn midpoint(x: &Network, y: &Network) -> Result<Network> {
    let mut sampled = sample_geodesic(x, y, &[0.5])?;
    Ok(sampled.points.remove(0).network)
}
