//! The finite network model: a node set with a dense real weight matrix.

use std::collections::HashSet;
use std::fmt;

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};

/// A finite network `(X, ω_X)`.
///
/// Weights are stored row-major: entry `(i, j)` is the weight of the ordered
/// pair `(x_i, x_j)`. Weights are arbitrary finite reals; they need not be
/// symmetric, nonnegative or zero on the diagonal.
#[derive(Clone, PartialEq)]
pub struct Network {
    labels: Vec<String>,
    weights: Vec<f64>,
}

/// Outcome of [`Network::skeletonize`].
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonResult {
    pub skeleton: Network,
    /// `class_of[i]` is the skeleton node that original node `i` collapses onto.
    pub class_of: Vec<usize>,
}

/// Outcome of [`Network::extract_net`].
#[derive(Debug, Clone, PartialEq)]
pub struct NetExtraction {
    pub network: Network,
    /// Original indices of the kept nodes, ascending.
    pub kept: Vec<usize>,
    /// Certified upper bound on the network distance to the original.
    pub bound: f64,
    pub witness: Correspondence,
}

impl Network {
    /// Builds a network from labels and a row-major weight matrix.
    ///
    /// Labels must be distinct, nonempty and free of whitespace (so that they
    /// survive the text file format). Every weight must be finite.
    pub fn new(labels: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::invalid("a network needs at least one node"));
        }
        if weights.len() != n * n {
            return Err(Error::invalid(format!(
                "expected {} weights for {} nodes, got {}",
                n * n,
                n,
                weights.len()
            )));
        }
        let mut seen = HashSet::with_capacity(n);
        for label in &labels {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::invalid(format!(
                    "label {label:?} must be nonempty and contain no whitespace"
                )));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::invalid(format!("duplicate label {label:?}")));
            }
        }
        if let Some(pos) = weights.iter().position(|w| !w.is_finite()) {
            return Err(Error::invalid(format!(
                "weight ({}, {}) is not finite",
                pos / n,
                pos % n
            )));
        }
        // -0.0 and 0.0 are the same weight; keep one bit pattern so that
        // sorting and exact comparisons agree.
        let weights = weights
            .into_iter()
            .map(|w| if w == 0.0 { 0.0 } else { w })
            .collect();
        Ok(Network { labels, weights })
    }

    /// Builds `N_k(Σ)` from matrix rows, labelling nodes `0, 1, …, k-1`.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut weights = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            weights.extend_from_slice(row);
        }
        Network::new(default_labels(n), weights)
    }

    /// The one-node network `N_1(α)`.
    pub fn single(alpha: f64) -> Result<Self> {
        Network::new(vec!["p".to_string()], vec![alpha])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.len() + j]
    }

    /// Row-major weight matrix.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.weights[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        Network::new(labels, self.weights.clone())
    }

    /// Relabels nodes: node `i` of the result is node `order[i]` of `self`,
    /// i.e. the result carries the matrix `P·W·Pᵀ`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true))
        {
            return Err(Error::invalid("permutation must list every node exactly once"));
        }
        Ok(self.restrict_unchecked(order))
    }

    /// The subnetwork on the given nodes, in the given order.
    pub fn restrict(&self, nodes: &[usize]) -> Result<Self> {
        let n = self.len();
        if nodes.is_empty() {
            return Err(Error::invalid("cannot restrict to an empty node set"));
        }
        let mut seen = vec![false; n];
        for &i in nodes {
            if i >= n {
                return Err(Error::invalid(format!("node index {i} out of range")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::invalid(format!("node index {i} repeated")));
            }
        }
        Ok(self.restrict_unchecked(nodes))
    }

    fn restrict_unchecked(&self, nodes: &[usize]) -> Self {
        let labels = nodes.iter().map(|&i| self.labels[i].clone()).collect();
        let weights = nodes
            .iter()
            .flat_map(|&i| nodes.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.weight(i, j))
            .collect();
        Network { labels, weights }
    }

    /// `max |ω_X(x, x′)|` over all ordered pairs.
    pub fn diameter(&self) -> f64 {
        self.weights.iter().fold(0.0, |acc, w| acc.max(w.abs()))
    }

    /// True iff all `n²` weights are pairwise distinct.
    pub fn is_generic(&self) -> bool {
        let mut sorted = self.weights.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// The blow-up `X[k]`: node `x` is replaced by `k_x` copies labelled
    /// `(x,1) … (x,k_x)`, all carrying the in and out weights of `x`.
    pub fn blow_up(&self, multiplicities: &[usize]) -> Result<Self> {
        if multiplicities.len() != self.len() {
            return Err(Error::invalid(format!(
                "expected {} multiplicities, got {}",
                self.len(),
                multiplicities.len()
            )));
        }
        if let Some(i) = multiplicities.iter().position(|&k| k == 0) {
            return Err(Error::invalid(format!(
                "multiplicity of node {} must be positive",
                self.labels[i]
            )));
        }
        let mut origin = Vec::new();
        let mut labels = Vec::new();
        for (x, &k) in multiplicities.iter().enumerate() {
            for copy in 1..=k {
                origin.push(x);
                labels.push(format!("({},{})", self.labels[x], copy));
            }
        }
        let weights = origin
            .iter()
            .flat_map(|&a| origin.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.weight(a, b))
            .collect();
        Network::new(labels, weights)
    }

    /// `Γ_A(x, x′)` for all node pairs, where `A` is given by node indices.
    pub fn canonical_pseudometric(&self, subset: &[usize]) -> Result<Vec<Vec<f64>>> {
        if subset.is_empty() {
            return Err(Error::invalid("reference subset must be nonempty"));
        }
        let n = self.len();
        if let Some(&a) = subset.iter().find(|&&a| a >= n) {
            return Err(Error::invalid(format!("node index {a} out of range")));
        }
        let mut gamma = vec![vec![0.0; n]; n];
        for x in 0..n {
            for y in (x + 1)..n {
                let d = subset.iter().fold(0.0_f64, |acc, &a| {
                    let out = (self.weight(x, a) - self.weight(y, a)).abs();
                    let inc = (self.weight(a, x) - self.weight(a, y)).abs();
                    acc.max(out).max(inc)
                });
                gamma[x][y] = d;
                gamma[y][x] = d;
            }
        }
        Ok(gamma)
    }

    fn full_pseudometric(&self) -> Vec<Vec<f64>> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.canonical_pseudometric(&all)
            .expect("full node set is a valid reference subset")
    }

    /// Collapses nodes whose weight rows and columns agree.
    ///
    /// With `tolerance == 0` classes are exact (the relation `x ∼ x′`). With a
    /// positive tolerance, classes are the connected components of the graph
    /// joining nodes at `Γ_X` distance at most `tolerance`; this is a
    /// heuristic for noisy data. Each class is represented by its member with
    /// the lexicographically least label, which also names the class.
    pub fn skeletonize(&self, tolerance: f64) -> SkeletonResult {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();

        if tolerance > 0.0 {
            let gamma = self.full_pseudometric();
            for start in 0..n {
                if class_of[start] != usize::MAX {
                    continue;
                }
                let class = members.len();
                let mut component = vec![start];
                class_of[start] = class;
                let mut head = 0;
                while head < component.len() {
                    let x = component[head];
                    head += 1;
                    for y in 0..n {
                        if class_of[y] == usize::MAX && gamma[x][y] <= tolerance {
                            class_of[y] = class;
                            component.push(y);
                        }
                    }
                }
                component.sort_unstable();
                members.push(component);
            }
        } else {
            for x in 0..n {
                let found = members
                    .iter()
                    .position(|m| self.same_profile(m[0], x));
                match found {
                    Some(c) => {
                        class_of[x] = c;
                        members[c].push(x);
                    }
                    None => {
                        class_of[x] = members.len();
                        members.push(vec![x]);
                    }
                }
            }
        }

        let reps: Vec<usize> = members
            .iter()
            .map(|m| {
                *m.iter()
                    .min_by(|&&a, &&b| self.labels[a].cmp(&self.labels[b]))
                    .expect("classes are nonempty")
            })
            .collect();
        SkeletonResult {
            skeleton: self.restrict_unchecked(&reps),
            class_of,
        }
    }

    fn same_profile(&self, a: usize, b: usize) -> bool {
        (0..self.len())
            .all(|z| self.weight(a, z) == self.weight(b, z) && self.weight(z, a) == self.weight(z, b))
    }

    /// Snaps every weight to the nearest integer multiple of `step`; ties go
    /// toward +∞.
    pub fn quantize(&self, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::invalid(format!("grid step must be positive, got {step}")));
        }
        let weights = self
            .weights
            .iter()
            .map(|&w| (w / step + 0.5).floor() * step)
            .collect();
        Network::new(self.labels.clone(), weights)
    }

    /// Greedy farthest-point selection of an `ε`-net under `Γ_X`, seeded at
    /// node 0. Returns the induced subnetwork together with a certified
    /// distance bound `½·dis(R)`, where `R` matches every node to each kept
    /// node within `ε` of it.
    pub fn extract_net(&self, epsilon: f64) -> Result<NetExtraction> {
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::invalid(format!(
                "net radius must be nonnegative and finite, got {epsilon}"
            )));
        }
        let n = self.len();
        let gamma = self.full_pseudometric();
        let mut kept = vec![0];
        let mut to_net: Vec<f64> = gamma[0].clone();
        loop {
            let (far, dist) = to_net
                .iter()
                .copied()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, d)| if d > best.1 { (i, d) } else { best });
            if dist <= epsilon {
                break;
            }
            kept.push(far);
            for (x, d) in to_net.iter_mut().enumerate() {
                *d = d.min(gamma[far][x]);
            }
        }
        kept.sort_unstable();

        let mut pairs = Vec::new();
        for x in 0..n {
            for (s_idx, &s) in kept.iter().enumerate() {
                if x == s || gamma[x][s] <= epsilon {
                    pairs.push((x, s_idx));
                }
            }
        }
        let network = self.restrict_unchecked(&kept);
        let witness = Correspondence::new(pairs, n, kept.len())?;
        let bound = 0.5 * witness.distortion(self, &network)?;
        Ok(NetExtraction {
            network,
            kept,
            bound,
            witness,
        })
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl fmt::Debug for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Network")
            .field("labels", &self.labels)
            .field("weights", &self.rows())
            .finish()
    }
}
