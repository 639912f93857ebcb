//! Motif sets `M_n(X)`, the Hausdorff ℓ∞ distance between them, and
//! reconstruction of generic networks from their motifs.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::network::Network;

/// Default cap on the number of enumerated tuples.
pub const DEFAULT_TUPLE_BUDGET: u128 = 1_000_000;

/// The set of `n × n` weight matrices realized by `n`-tuples of nodes.
///
/// Matrices are row-major, deduplicated by exact equality and sorted
/// lexicographically. Exact comparison means noisy weights produce many
/// near-duplicates; quantize such networks first.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifSet {
    order: usize,
    matrices: Vec<Vec<f64>>,
}

impl MotifSet {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn matrices(&self) -> &[Vec<f64>] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn contains(&self, matrix: &[f64]) -> bool {
        self.matrices
            .binary_search_by(|m| lex_cmp(m, matrix))
            .is_ok()
    }

    fn from_unsorted(order: usize, seen: HashSet<Vec<u64>>) -> Self {
        let mut matrices: Vec<Vec<f64>> = seen
            .into_iter()
            .map(|bits| bits.into_iter().map(f64::from_bits).collect())
            .collect();
        matrices.sort_by(|a, b| lex_cmp(a, b));
        MotifSet { order, matrices }
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

/// `Ψ(x_1, …, x_n)`: entry `(i, j)` is `ω_X(x_i, x_j)`. Repeats are allowed.
pub fn tuple_weight_matrix(x: &Network, tuple: &[usize]) -> Result<Vec<f64>> {
    if let Some(&i) = tuple.iter().find(|&&i| i >= x.len()) {
        return Err(Error::invalid(format!("node index {i} out of range")));
    }
    Ok(tuple_matrix_unchecked(x, tuple))
}

fn tuple_matrix_unchecked(x: &Network, tuple: &[usize]) -> Vec<f64> {
    tuple
        .iter()
        .flat_map(|&a| tuple.iter().map(move |&b| x.weight(a, b)))
        .collect()
}

fn bits_of(matrix: Vec<f64>) -> Vec<u64> {
    matrix.into_iter().map(f64::to_bits).collect()
}

/// Number of order-`n` tuples over `x`, checked against `budget`.
pub fn tuple_count(x: &Network, n: usize, budget: u128) -> Result<u128> {
    let count = (x.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::BudgetExceeded {
            what: "motif enumeration",
            required: count,
            budget,
        });
    }
    Ok(count)
}

/// Enumerates all `|X|ⁿ` tuples and collects their weight matrices.
pub fn motif_set(x: &Network, n: usize, budget: u128) -> Result<MotifSet> {
    if n == 0 {
        return Err(Error::invalid("motif order must be at least 1"));
    }
    tuple_count(x, n, budget)?;
    let size = x.len();
    let mut tuple = vec![0usize; n];
    let mut seen = HashSet::new();
    loop {
        seen.insert(bits_of(tuple_matrix_unchecked(x, &tuple)));
        // odometer increment, last position fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(MotifSet::from_unsorted(n, seen));
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < size {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// Entrywise maximum absolute difference of two equal-shape matrices.
fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

fn directed_hausdorff(from: &MotifSet, to: &MotifSet) -> f64 {
    from.matrices
        .iter()
        .map(|a| {
            to.matrices
                .iter()
                .map(|b| linf(a, b))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Hausdorff distance between two motif sets of equal order under the ℓ∞
/// matrix distance.
pub fn hausdorff_linf(a: &MotifSet, b: &MotifSet) -> Result<f64> {
    if a.order != b.order {
        return Err(Error::invalid(format!(
            "motif orders differ: {} vs {}",
            a.order, b.order
        )));
    }
    Ok(directed_hausdorff(a, b).max(directed_hausdorff(b, a)))
}

/// Calls `visit` with every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        visit(&perm);
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("pivot has a successor");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)).unwrap_or(u128::MAX)
}

/// Recovers a weight-preserving bijection between two generic networks from
/// their motif sets.
///
/// Compares the matrices of duplicate-free `n`-tuples (`n` the common
/// cardinality). When they coincide, the tuple of `Y` matching `X`'s
/// identity tuple defines the bijection. Returns `None` when the cardinalities
/// or the matrix sets differ.
pub fn reconstruct_generic(x: &Network, y: &Network) -> Result<Option<Vec<usize>>> {
    if !x.is_generic() || !y.is_generic() {
        return Err(Error::invalid("reconstruction requires generic networks"));
    }
    let n = x.len();
    if y.len() != n {
        return Ok(None);
    }
    let required = factorial(n);
    if required > DEFAULT_TUPLE_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "injective tuple enumeration",
            required,
            budget: DEFAULT_TUPLE_BUDGET,
        });
    }
    let distinct_tuples = |net: &Network| {
        let mut set = HashSet::new();
        for_each_permutation(n, |p| {
            set.insert(bits_of(tuple_matrix_unchecked(net, p)));
        });
        set
    };
    if distinct_tuples(x) != distinct_tuples(y) {
        return Ok(None);
    }
    let identity: Vec<usize> = (0..n).collect();
    let target = tuple_matrix_unchecked(x, &identity);
    let mut found = None;
    for_each_permutation(n, |p| {
        if found.is_none() && tuple_matrix_unchecked(y, p) == target {
            found = Some(p.to_vec());
        }
    });
    Ok(found)
}
