//! Distances, motifs and geodesics for finite weighted directed networks.
//!
//! A network is a finite node set with an arbitrary real weight on every
//! ordered pair of nodes. The central quantity is the network distance
//! `d_N(X, Y) = ½ min_R dis(R)`, minimized over correspondences `R` between
//! the node sets. It vanishes exactly on weakly isomorphic networks, i.e.
//! networks whose skeleta are isomorphic.

pub mod correspondence;
pub mod distance;
pub mod error;
pub mod format;
pub mod generators;
pub mod geodesic;
pub mod iso;
pub mod motifs;
pub mod network;

pub use correspondence::Correspondence;
pub use distance::{
    distance_report, exact_distance, exact_distance_with_budget, lower_bound_diameter,
    lower_bound_motif, upper_bound_greedy, upper_bound_product, DistanceReport, ExactDistance,
    ReportOptions, DEFAULT_NODE_BUDGET,
};
pub use error::{Error, Result};
pub use generators::{
    constant_network, directed_circle, directed_circle_reversible, random_network, CircleSpec,
};
pub use geodesic::{geodesic_point, midpoint, sample_geodesic, GeodesicPoint, SampledGeodesic};
pub use iso::{
    enumerate_automorphisms, strong_isomorphic, strong_isomorphic_within, weak_isomorphic,
    weak_isomorphic_within, Bijection, WeakIsomorphism,
};
pub use motifs::{hausdorff_linf, motif_set, reconstruct_generic, tuple_weight_matrix, MotifSet};
pub use network::{NetExtraction, Network, SkeletonResult};
