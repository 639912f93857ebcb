//! Strong and weak isomorphism, and automorphism enumeration.
//!
//! Candidate partners are filtered before backtracking. With exact
//! comparison, nodes of both networks are colored by iterated refinement:
//! a node's new color is its old color together with the sorted multiset of
//! `(out-weight, in-weight, neighbour color)` triples. With a positive
//! tolerance, the filter is the weaker but still necessary condition that
//! sorted rows, sorted columns and self-weights agree within the tolerance.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::network::Network;

/// A bijection between node index sets; `forward[i]` is the image of node `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bijection {
    forward: Vec<usize>,
}

impl Bijection {
    pub fn new(forward: Vec<usize>) -> Result<Self> {
        let n = forward.len();
        let mut seen = vec![false; n];
        for &j in &forward {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::invalid("map is not a bijection"));
            }
        }
        Ok(Bijection { forward })
    }

    pub fn identity(n: usize) -> Self {
        Bijection {
            forward: (0..n).collect(),
        }
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn apply(&self, i: usize) -> usize {
        self.forward[i]
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn inverse(&self) -> Bijection {
        let mut inv = vec![0; self.forward.len()];
        for (i, &j) in self.forward.iter().enumerate() {
            inv[j] = i;
        }
        Bijection { forward: inv }
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Bijection) -> Bijection {
        Bijection {
            forward: self.forward.iter().map(|&j| other.forward[j]).collect(),
        }
    }

    /// Whether `|ω_X(x, x′) − ω_Y(φx, φx′)| ≤ tolerance` for every pair.
    pub fn preserves_weights(&self, x: &Network, y: &Network, tolerance: f64) -> bool {
        let n = self.forward.len();
        n == x.len()
            && n == y.len()
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    (x.weight(i, j) - y.weight(self.forward[i], self.forward[j])).abs()
                        <= tolerance
                })
            })
    }
}

/// Default node limit for [`enumerate_automorphisms`].
pub const DEFAULT_AUTOMORPHISM_BUDGET: usize = 8;

/// Color refinement on the disjoint union of the two networks. Returns the
/// stable colors of `x`'s nodes followed by `y`'s.
fn refine_colors(x: &Network, y: &Network) -> Vec<usize> {
    let nets = [x, y];
    let nodes: Vec<(usize, usize)> = nets
        .iter()
        .enumerate()
        .flat_map(|(g, net)| (0..net.len()).map(move |v| (g, v)))
        .collect();
    let offset = [0, x.len()];

    let mut colors = assign_ids(
        nodes
            .iter()
            .map(|&(g, v)| vec![nets[g].weight(v, v).to_bits()])
            .collect(),
    );
    let mut classes = count_distinct(&colors);
    loop {
        let signatures = nodes
            .iter()
            .map(|&(g, v)| {
                let net = nets[g];
                let mut triples: Vec<[u64; 3]> = (0..net.len())
                    .map(|z| {
                        [
                            net.weight(v, z).to_bits(),
                            net.weight(z, v).to_bits(),
                            colors[offset[g] + z] as u64,
                        ]
                    })
                    .collect();
                triples.sort_unstable();
                let mut sig = vec![colors[offset[g] + v] as u64];
                sig.extend(triples.into_iter().flatten());
                sig
            })
            .collect();
        let next = assign_ids(signatures);
        let next_classes = count_distinct(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn assign_ids(signatures: Vec<Vec<u64>>) -> Vec<usize> {
    let mut unique: Vec<&Vec<u64>> = signatures.iter().collect();
    unique.sort();
    unique.dedup();
    let ids: HashMap<&Vec<u64>, usize> = unique.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
    signatures.iter().map(|s| ids[s]).collect()
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn sorted_profile(net: &Network, v: usize) -> (Vec<f64>, Vec<f64>) {
    let n = net.len();
    let mut row = net.row(v).to_vec();
    let mut col: Vec<f64> = (0..n).map(|z| net.weight(z, v)).collect();
    row.sort_by(f64::total_cmp);
    col.sort_by(f64::total_cmp);
    (row, col)
}

fn within(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(p, q)| (p - q).abs() <= tol)
}

/// `allowed[i]` lists the nodes of `y` that node `i` of `x` may map to.
fn candidate_lists(x: &Network, y: &Network, tolerance: f64) -> Vec<Vec<usize>> {
    let (n, m) = (x.len(), y.len());
    if tolerance > 0.0 {
        let px: Vec<_> = (0..n).map(|v| sorted_profile(x, v)).collect();
        let py: Vec<_> = (0..m).map(|v| sorted_profile(y, v)).collect();
        (0..n)
            .map(|i| {
                (0..m)
                    .filter(|&j| {
                        (x.weight(i, i) - y.weight(j, j)).abs() <= tolerance
                            && within(&px[i].0, &py[j].0, tolerance)
                            && within(&px[i].1, &py[j].1, tolerance)
                    })
                    .collect()
            })
            .collect()
    } else {
        let colors = refine_colors(x, y);
        (0..n)
            .map(|i| (0..m).filter(|&j| colors[i] == colors[n + j]).collect())
            .collect()
    }
}

struct Matcher<'a> {
    x: &'a Network,
    y: &'a Network,
    tolerance: f64,
    allowed: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn consistent(&self, i: usize, j: usize) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= self.tolerance;
        close(self.x.weight(i, i), self.y.weight(j, j))
            && (0..i).all(|k| {
                let jk = self.map[k];
                close(self.x.weight(i, k), self.y.weight(j, jk))
                    && close(self.x.weight(k, i), self.y.weight(jk, j))
            })
    }

    /// Visits complete maps in lexicographic order; stops when `visit`
    /// returns false.
    fn search(&mut self, i: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if i == self.x.len() {
            return visit(&self.map);
        }
        for idx in 0..self.allowed[i].len() {
            let j = self.allowed[i][idx];
            if self.used[j] || !self.consistent(i, j) {
                continue;
            }
            self.map[i] = j;
            self.used[j] = true;
            let keep_going = self.search(i + 1, visit);
            self.used[j] = false;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

fn matcher<'a>(x: &'a Network, y: &'a Network, tolerance: f64) -> Option<Matcher<'a>> {
    if x.len() != y.len() {
        return None;
    }
    let allowed = candidate_lists(x, y, tolerance);
    if allowed.iter().any(Vec::is_empty) {
        return None;
    }
    Some(Matcher {
        x,
        y,
        tolerance,
        allowed,
        map: vec![usize::MAX; x.len()],
        used: vec![false; y.len()],
    })
}

/// A weight-preserving bijection `X → Y`, if one exists; the
/// lexicographically least one is returned.
pub fn strong_isomorphic(x: &Network, y: &Network) -> Option<Bijection> {
    strong_isomorphic_within(x, y, 0.0)
}

/// As [`strong_isomorphic`], accepting weight disagreements up to
/// `tolerance`. A positive tolerance is a heuristic for noisy data: the
/// resulting relation is not transitive.
pub fn strong_isomorphic_within(x: &Network, y: &Network, tolerance: f64) -> Option<Bijection> {
    let mut m = matcher(x, y, tolerance)?;
    let mut found = None;
    m.search(0, &mut |map| {
        found = Some(Bijection {
            forward: map.to_vec(),
        });
        false
    });
    found
}

/// Outcome of a weak isomorphism decision.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakIsomorphism {
    pub isomorphic: bool,
    /// Bijection between the two skeleta, when isomorphic.
    pub witness: Option<Bijection>,
    pub skeleton_x: Network,
    pub skeleton_y: Network,
}

/// Decides `X ≅w Y` by comparing skeleta up to strong isomorphism.
pub fn weak_isomorphic(x: &Network, y: &Network) -> WeakIsomorphism {
    weak_isomorphic_within(x, y, 0.0)
}

pub fn weak_isomorphic_within(x: &Network, y: &Network, tolerance: f64) -> WeakIsomorphism {
    let skeleton_x = x.skeletonize(tolerance).skeleton;
    let skeleton_y = y.skeletonize(tolerance).skeleton;
    let witness = strong_isomorphic_within(&skeleton_x, &skeleton_y, tolerance);
    WeakIsomorphism {
        isomorphic: witness.is_some(),
        witness,
        skeleton_x,
        skeleton_y,
    }
}

/// All weight-preserving self-bijections of `x`, in lexicographic order.
pub fn enumerate_automorphisms(x: &Network, size_budget: usize) -> Result<Vec<Bijection>> {
    if x.len() > size_budget {
        return Err(Error::BudgetExceeded {
            what: "automorphism enumeration node count",
            required: x.len() as u128,
            budget: size_budget as u128,
        });
    }
    let mut all = Vec::new();
    if let Some(mut m) = matcher(x, x, 0.0) {
        m.search(0, &mut |map| {
            all.push(Bijection {
                forward: map.to_vec(),
            });
            true
        });
    }
    Ok(all)
}
