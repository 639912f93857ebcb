//! Correspondences between node sets and their distortion.

use std::fmt;

use crate::error::{Error, Result};
use crate::network::Network;

/// A relation `R ⊆ X × Y` stored as sorted, duplicate-free index pairs.
///
/// Construction only checks index ranges. Whether both projections are
/// surjective is checked by [`Correspondence::validate`], since the operations
/// that need a true correspondence take the networks as well.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Correspondence {
    pairs: Vec<(usize, usize)>,
    n_x: usize,
    n_y: usize,
}

impl Correspondence {
    pub fn new(mut pairs: Vec<(usize, usize)>, n_x: usize, n_y: usize) -> Result<Self> {
        if let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| i >= n_x || j >= n_y) {
            return Err(Error::invalid(format!(
                "pair ({i}, {j}) out of range for sizes ({n_x}, {n_y})"
            )));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Correspondence { pairs, n_x, n_y })
    }

    /// The diagonal `Δ = {(i, i)}` on an `n`-node set.
    pub fn diagonal(n: usize) -> Self {
        Correspondence {
            pairs: (0..n).map(|i| (i, i)).collect(),
            n_x: n,
            n_y: n,
        }
    }

    /// The full relation `X × Y`.
    pub fn product(n_x: usize, n_y: usize) -> Self {
        Correspondence {
            pairs: (0..n_x).flat_map(|i| (0..n_y).map(move |j| (i, j))).collect(),
            n_x,
            n_y,
        }
    }

    /// `graph(f) ∪ graph(g)ᵀ`; valid by construction whenever `f` and `g`
    /// are total.
    pub fn from_function_pair(f: &[usize], g: &[usize]) -> Result<Self> {
        let (n_x, n_y) = (f.len(), g.len());
        let pairs = f
            .iter()
            .enumerate()
            .map(|(x, &y)| (x, y))
            .chain(g.iter().enumerate().map(|(y, &x)| (x, y)))
            .collect();
        Correspondence::new(pairs, n_x, n_y)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.n_x, self.n_y)
    }

    pub fn contains(&self, pair: (usize, usize)) -> bool {
        self.pairs.binary_search(&pair).is_ok()
    }

    pub fn is_subset_of(&self, other: &Correspondence) -> bool {
        self.pairs.iter().all(|&p| other.contains(p))
    }

    /// True iff the recorded sizes match the networks and both projections
    /// are surjective.
    pub fn validate(&self, x: &Network, y: &Network) -> bool {
        self.n_x == x.len() && self.n_y == y.len() && self.covers()
    }

    fn covers(&self) -> bool {
        let mut hit_x = vec![false; self.n_x];
        let mut hit_y = vec![false; self.n_y];
        for &(i, j) in &self.pairs {
            hit_x[i] = true;
            hit_y[j] = true;
        }
        !self.pairs.is_empty() && hit_x.into_iter().all(|b| b) && hit_y.into_iter().all(|b| b)
    }

    /// `dis(R) = max |ω_X(x, x′) − ω_Y(y, y′)|` over all `(x, y), (x′, y′) ∈ R`.
    pub fn distortion(&self, x: &Network, y: &Network) -> Result<f64> {
        if !self.validate(x, y) {
            return Err(Error::invalid(format!(
                "relation is not a correspondence between networks of sizes ({}, {})",
                x.len(),
                y.len()
            )));
        }
        let mut dis = 0.0_f64;
        for &(a, b) in &self.pairs {
            for &(a2, b2) in &self.pairs {
                dis = dis.max((x.weight(a, a2) - y.weight(b, b2)).abs());
            }
        }
        Ok(dis)
    }

    pub fn transpose(&self) -> Correspondence {
        let pairs = self.pairs.iter().map(|&(i, j)| (j, i)).collect();
        Correspondence::new(pairs, self.n_y, self.n_x).expect("transposed pairs stay in range")
    }

    /// `R ∘ S = {(x, z) : ∃y, (x, y) ∈ R, (y, z) ∈ S}`.
    pub fn compose(&self, other: &Correspondence) -> Result<Correspondence> {
        if self.n_y != other.n_x {
            return Err(Error::invalid(format!(
                "cannot compose: inner sizes {} and {} differ",
                self.n_y, other.n_x
            )));
        }
        let mut by_middle: Vec<Vec<usize>> = vec![Vec::new(); other.n_x];
        for &(y, z) in &other.pairs {
            by_middle[y].push(z);
        }
        let pairs = self
            .pairs
            .iter()
            .flat_map(|&(x, y)| by_middle[y].iter().map(move |&z| (x, z)))
            .collect();
        Correspondence::new(pairs, self.n_x, other.n_y)
    }
}

impl fmt::Debug for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Correspondence({}x{}: {:?})", self.n_x, self.n_y, self.pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n2() -> Network {
        Network::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let x = Network::from_rows(&[[0.0; 3]; 3]).unwrap();
        assert!(Correspondence::diagonal(3).validate(&x, &x));
        assert!(Correspondence::product(3, 3).validate(&x, &x));
        let r = Correspondence::new(vec![(0, 0)], 2, 1).unwrap();
        assert!(!r.validate(&n2(), &Network::single(0.0).unwrap()));
        // sizes recorded must match the networks
        assert!(!Correspondence::diagonal(2).validate(&x, &x));
    }

    #[test]
    fn out_of_range_pairs_rejected() {
        assert!(Correspondence::new(vec![(2, 0)], 2, 1).is_err());
    }

    #[test]
    fn distortion_examples() {
        let x = n2();
        assert_eq!(Correspondence::diagonal(2).distortion(&x, &x).unwrap(), 0.0);
        let a = Network::single(2.0).unwrap();
        let b = Network::single(5.0).unwrap();
        assert_eq!(Correspondence::diagonal(1).distortion(&a, &b).unwrap(), 3.0);
        let z = Network::single(0.0).unwrap();
        assert_eq!(Correspondence::product(1, 2).distortion(&z, &x).unwrap(), 4.0);
    }

    #[test]
    fn distortion_of_invalid_relation_is_an_error() {
        let r = Correspondence::new(vec![(0, 0)], 2, 1).unwrap();
        assert!(r.distortion(&n2(), &Network::single(0.0).unwrap()).is_err());
    }

    #[test]
    fn composition_examples() {
        let d = Correspondence::diagonal(3);
        assert_eq!(d.compose(&d).unwrap(), d);
        let full = Correspondence::product(2, 3).compose(&Correspondence::product(3, 4)).unwrap();
        assert_eq!(full, Correspondence::product(2, 4));
        assert!(d.compose(&Correspondence::diagonal(2)).is_err());
    }

    #[test]
    fn function_pair_examples() {
        let r = Correspondence::from_function_pair(&[0, 1, 2], &[0, 1, 2]).unwrap();
        assert_eq!(r, Correspondence::diagonal(3));
        let r = Correspondence::from_function_pair(&[0, 0], &[0]).unwrap();
        assert_eq!(r.pairs(), &[(0, 0), (1, 0)]);
        assert!(r.validate(&n2(), &Network::single(1.0).unwrap()));
    }

    #[test]
    fn duplicates_collapse() {
        let r = Correspondence::new(vec![(1, 0), (0, 0), (1, 0)], 2, 1).unwrap();
        assert_eq!(r.pairs(), &[(0, 0), (1, 0)]);
    }
}
