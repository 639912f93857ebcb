//! The network distance `d_N`: exact branch-and-bound solver and certified
//! bounds.
//!
//! Every correspondence contains a sub-correspondence `graph(f) ∪ graph(g)ᵀ`
//! for some maps `f: X → Y`, `g: Y → X`, and distortion only grows with
//! inclusion, so minimizing over such function pairs yields `d_N` exactly.
//!
//! The search assigns `f` first, then `g`. Once `f` is fixed, a node `y`
//! already in the image of `f` gains nothing from an extra pair `(g(y), y)`,
//! so `g(y)` is taken to be the least preimage and no branching happens
//! there. Each partial assignment carries, for every unassigned node and
//! every candidate partner, the largest pair-pair discrepancy against the
//! pairs chosen so far; a branch dies as soon as some node has no candidate
//! below the incumbent.

use std::time::Instant;

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::motifs::{hausdorff_linf, motif_set, DEFAULT_TUPLE_BUDGET};
use crate::network::Network;

pub const DEFAULT_NODE_BUDGET: usize = 7;

/// `d_N(X, Y)` together with a correspondence attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactDistance {
    pub value: f64,
    pub witness: Correspondence,
}

pub fn exact_distance(x: &Network, y: &Network) -> Result<ExactDistance> {
    exact_distance_with_budget(x, y, DEFAULT_NODE_BUDGET)
}

/// Exact `d_N`, refusing inputs with more than `node_budget` nodes.
pub fn exact_distance_with_budget(
    x: &Network,
    y: &Network,
    node_budget: usize,
) -> Result<ExactDistance> {
    let largest = x.len().max(y.len());
    if largest > node_budget {
        return Err(Error::BudgetExceeded {
            what: "exact distance node count",
            required: largest as u128,
            budget: node_budget as u128,
        });
    }
    Ok(Solver::new(x, y).solve())
}

/// `½·dis(X × Y)`, always a valid upper bound.
pub fn upper_bound_product(x: &Network, y: &Network) -> (f64, Correspondence) {
    let witness = Correspondence::product(x.len(), y.len());
    let dis = witness
        .distortion(x, y)
        .expect("the product relation is a correspondence");
    (0.5 * dis, witness)
}

/// Distortion-greedy correspondence: nodes of `X` in solver order each take
/// the partner that raises the distortion least, then uncovered nodes of `Y`
/// do the same.
pub fn upper_bound_greedy(x: &Network, y: &Network) -> (f64, Correspondence) {
    let solver = Solver::new(x, y);
    let (dis, witness) = solver.greedy();
    (0.5 * dis, witness)
}

/// `½·|diam X − diam Y|`.
pub fn lower_bound_diameter(x: &Network, y: &Network) -> f64 {
    0.5 * (x.diameter() - y.diameter()).abs()
}

/// `½·d_n(M_n(X), M_n(Y))`.
pub fn lower_bound_motif(x: &Network, y: &Network, n: usize, tuple_budget: u128) -> Result<f64> {
    let mx = motif_set(x, n, tuple_budget)?;
    let my = motif_set(y, n, tuple_budget)?;
    Ok(0.5 * hausdorff_linf(&mx, &my)?)
}

struct Solver<'a> {
    x: &'a Network,
    y: &'a Network,
    n: usize,
    m: usize,
    /// `cost[p * pairs + q]` for pair ids `p = a·m + b`: the larger of the
    /// two discrepancies the pairs `p, q` contribute to the distortion.
    cost: Vec<f64>,
    /// Search order: `Slot::Forward(x)` assigns `f(x)`, `Slot::Backward(y)`
    /// assigns `g(y)`.
    slots: Vec<Slot>,
    /// Distortion lower bound valid for every correspondence.
    floor: f64,
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Forward(usize),
    Backward(usize),
}

struct Search {
    best: f64,
    found: bool,
    done: bool,
    best_f: Vec<usize>,
    best_g: Vec<usize>,
    f: Vec<usize>,
    g: Vec<usize>,
    image_count: Vec<usize>,
}

impl Search {
    /// Whether a partial distortion `v` cannot lead to a new incumbent.
    /// Before any search leaf is reached, ties with the initial bound are
    /// kept so that the witness is the first optimum in search order.
    #[inline]
    fn hopeless(&self, v: f64) -> bool {
        if self.found {
            v >= self.best
        } else {
            v > self.best
        }
    }
}

fn profile_variance(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let count = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / count;
    values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / count
}

fn variance_order(net: &Network) -> Vec<usize> {
    let n = net.len();
    let var: Vec<f64> = (0..n)
        .map(|i| profile_variance(net.row(i).iter().copied().chain((0..n).map(|z| net.weight(z, i)))))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| var[b].total_cmp(&var[a]).then(a.cmp(&b)));
    order
}

fn diagonal_hausdorff(x: &Network, y: &Network) -> f64 {
    let directed = |a: &Network, b: &Network| {
        (0..a.len())
            .map(|i| {
                (0..b.len())
                    .map(|j| (a.weight(i, i) - b.weight(j, j)).abs())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    directed(x, y).max(directed(y, x))
}

impl<'a> Solver<'a> {
    fn new(x: &'a Network, y: &'a Network) -> Self {
        let (n, m) = (x.len(), y.len());
        let pairs = n * m;
        let mut cost = vec![0.0; pairs * pairs];
        for a in 0..n {
            for b in 0..m {
                let p = a * m + b;
                for a2 in 0..n {
                    for b2 in 0..m {
                        let q = a2 * m + b2;
                        let fwd = (x.weight(a, a2) - y.weight(b, b2)).abs();
                        let bwd = (x.weight(a2, a) - y.weight(b2, b)).abs();
                        cost[p * pairs + q] = fwd.max(bwd);
                    }
                }
            }
        }
        let slots = variance_order(x)
            .into_iter()
            .map(Slot::Forward)
            .chain(variance_order(y).into_iter().map(Slot::Backward))
            .collect();
        let floor = (x.diameter() - y.diameter()).abs().max(diagonal_hausdorff(x, y));
        Solver {
            x,
            y,
            n,
            m,
            cost,
            slots,
            floor,
        }
    }

    #[inline]
    fn pair_id(&self, a: usize, b: usize) -> usize {
        a * self.m + b
    }

    #[inline]
    fn pair_cost(&self, p: usize, q: usize) -> f64 {
        self.cost[p * self.n * self.m + q]
    }

    fn candidates(&self, slot: Slot) -> usize {
        match slot {
            Slot::Forward(_) => self.m,
            Slot::Backward(_) => self.n,
        }
    }

    fn slot_pair(&self, slot: Slot, candidate: usize) -> usize {
        match slot {
            Slot::Forward(a) => self.pair_id(a, candidate),
            Slot::Backward(b) => self.pair_id(candidate, b),
        }
    }

    /// Row width of the per-slot candidate table.
    fn width(&self) -> usize {
        self.n.max(self.m)
    }

    /// Candidate table before any assignment: each pair's self-discrepancy.
    fn initial_table(&self) -> Vec<f64> {
        let w = self.width();
        let mut table = vec![f64::INFINITY; self.slots.len() * w];
        for (s, &slot) in self.slots.iter().enumerate() {
            for c in 0..self.candidates(slot) {
                let p = self.slot_pair(slot, c);
                table[s * w + c] = self.pair_cost(p, p);
            }
        }
        table
    }

    /// Folds the newly chosen pair `q` into the table rows of slots after `depth`.
    fn absorb(&self, table: &mut [f64], depth: usize, q: usize) {
        let w = self.width();
        for s in (depth + 1)..self.slots.len() {
            let slot = self.slots[s];
            for c in 0..self.candidates(slot) {
                let p = self.slot_pair(slot, c);
                let cell = &mut table[s * w + c];
                *cell = cell.max(self.pair_cost(p, q));
            }
        }
    }

    fn least_preimage(f: &[usize], b: usize) -> usize {
        f.iter().position(|&fb| fb == b).expect("covered node has a preimage")
    }

    fn witness(&self, f: &[usize], g: &[usize]) -> Correspondence {
        Correspondence::from_function_pair(f, g).expect("function pairs are in range")
    }

    fn greedy(&self) -> (f64, Correspondence) {
        let w = self.width();
        let mut table = self.initial_table();
        let mut f = vec![0; self.n];
        let mut g = vec![0; self.m];
        let mut covered = vec![false; self.m];
        let mut dis = 0.0_f64;
        for (depth, &slot) in self.slots.iter().enumerate() {
            if let Slot::Backward(b) = slot {
                if covered[b] {
                    g[b] = Self::least_preimage(&f, b);
                    continue;
                }
            }
            let row = &table[depth * w..depth * w + self.candidates(slot)];
            let (c, v) = row
                .iter()
                .copied()
                .enumerate()
                .fold((0, f64::INFINITY), |best, (c, v)| if v < best.1 { (c, v) } else { best });
            dis = dis.max(v);
            match slot {
                Slot::Forward(a) => {
                    f[a] = c;
                    covered[c] = true;
                }
                Slot::Backward(b) => g[b] = c,
            }
            let q = self.slot_pair(slot, c);
            self.absorb(&mut table, depth, q);
        }
        (dis, self.witness(&f, &g))
    }

    fn solve(&self) -> ExactDistance {
        let (product_dis, product) = {
            let (v, r) = upper_bound_product(self.x, self.y);
            (2.0 * v, r)
        };
        let (greedy_dis, greedy) = self.greedy();
        let (init, init_witness) = if greedy_dis <= product_dis {
            (greedy_dis, greedy)
        } else {
            (product_dis, product)
        };
        if init <= self.floor {
            return ExactDistance {
                value: 0.5 * init,
                witness: init_witness,
            };
        }

        let mut search = Search {
            best: init,
            found: false,
            done: false,
            best_f: Vec::new(),
            best_g: Vec::new(),
            f: vec![0; self.n],
            g: vec![0; self.m],
            image_count: vec![0; self.m],
        };
        let table = self.initial_table();
        self.descend(&mut search, 0, 0.0, &table);

        if search.found {
            ExactDistance {
                value: 0.5 * search.best,
                witness: self.witness(&search.best_f, &search.best_g),
            }
        } else {
            ExactDistance {
                value: 0.5 * init,
                witness: init_witness,
            }
        }
    }

    fn descend(&self, search: &mut Search, depth: usize, current: f64, table: &[f64]) {
        if depth == self.slots.len() {
            search.best = current;
            search.found = true;
            search.best_f.clone_from(&search.f);
            search.best_g.clone_from(&search.g);
            if current <= self.floor {
                search.done = true;
            }
            return;
        }
        let slot = self.slots[depth];
        if let Slot::Backward(b) = slot {
            if search.image_count[b] > 0 {
                search.g[b] = Self::least_preimage(&search.f, b);
                self.descend(search, depth + 1, current, table);
                return;
            }
        }

        let w = self.width();
        let mut next = table.to_vec();
        for c in 0..self.candidates(slot) {
            if search.done {
                return;
            }
            let value = current.max(table[depth * w + c]);
            if search.hopeless(value) {
                continue;
            }
            let q = self.slot_pair(slot, c);
            next.copy_from_slice(table);
            self.absorb(&mut next, depth, q);
            if self.dead_end(search, &next, depth) {
                continue;
            }
            match slot {
                Slot::Forward(a) => {
                    search.f[a] = c;
                    search.image_count[c] += 1;
                }
                Slot::Backward(b) => search.g[b] = c,
            }
            self.descend(search, depth + 1, value, &next);
            if let Slot::Forward(_) = slot {
                search.image_count[c] -= 1;
            }
        }
    }

    /// True when some later slot has no candidate that keeps the branch alive.
    ///
    /// A node `y` that ends up covered by `f` still enters the correspondence
    /// through some pair `(x, y)`, so its row bounds the cost either way.
    fn dead_end(&self, search: &Search, table: &[f64], depth: usize) -> bool {
        let w = self.width();
        ((depth + 1)..self.slots.len()).any(|s| {
            let k = self.candidates(self.slots[s]);
            table[s * w..s * w + k].iter().all(|&v| search.hopeless(v))
        })
    }
}

/// A named lower bound on `d_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBound {
    pub method: String,
    pub value: f64,
}

/// A named upper bound on `d_N` with the correspondence that certifies it.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperBound {
    pub method: String,
    pub value: f64,
    pub witness: Correspondence,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Skipped {
    pub method: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    pub node_budget: usize,
    /// Motif bounds are computed for orders `1..=max_motif_order`.
    pub max_motif_order: usize,
    pub tuple_budget: u128,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            max_motif_order: 2,
            tuple_budget: DEFAULT_TUPLE_BUDGET,
        }
    }
}

/// Everything known about `d_N(X, Y)` after running the bounds and, when
/// feasible, the exact solver.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport {
    pub x_nodes: usize,
    pub y_nodes: usize,
    pub lower_bounds: Vec<LowerBound>,
    pub upper_bounds: Vec<UpperBound>,
    pub exact: Option<ExactDistance>,
    pub skipped: Vec<Skipped>,
    /// Wall-clock seconds per method.
    pub timings: Vec<(String, f64)>,
}

impl DistanceReport {
    pub fn max_lower(&self) -> f64 {
        self.lower_bounds.iter().map(|b| b.value).fold(0.0, f64::max)
    }

    pub fn min_upper(&self) -> f64 {
        self.upper_bounds
            .iter()
            .map(|b| b.value)
            .fold(f64::INFINITY, f64::min)
    }

    /// Checks the ordering `lower ≤ exact ≤ upper` with `1e-12` slack, and
    /// that the exact value is half the distortion of its witness.
    pub fn is_consistent(&self, x: &Network, y: &Network) -> bool {
        const SLACK: f64 = 1e-12;
        let lo = self.max_lower();
        let hi = self.min_upper();
        if lo > hi + SLACK {
            return false;
        }
        match &self.exact {
            None => true,
            Some(exact) => {
                lo <= exact.value + SLACK
                    && exact.value <= hi + SLACK
                    && exact
                        .witness
                        .distortion(x, y)
                        .map(|d| 0.5 * d == exact.value)
                        .unwrap_or(false)
            }
        }
    }
}

fn timed<T>(timings: &mut Vec<(String, f64)>, method: &str, run: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = run();
    timings.push((method.to_string(), start.elapsed().as_secs_f64()));
    out
}

/// Runs every bound that fits its budget and the exact solver when the
/// networks are small enough. Never fails; over-budget methods are listed
/// under `skipped`.
pub fn distance_report(x: &Network, y: &Network, options: &ReportOptions) -> DistanceReport {
    let mut timings = Vec::new();
    let mut lower_bounds = Vec::new();
    let mut upper_bounds = Vec::new();
    let mut skipped = Vec::new();

    let diam = timed(&mut timings, "diameter", || lower_bound_diameter(x, y));
    lower_bounds.push(LowerBound {
        method: "diameter".into(),
        value: diam,
    });
    for order in 1..=options.max_motif_order {
        let method = format!("motif-{order}");
        match timed(&mut timings, &method, || {
            lower_bound_motif(x, y, order, options.tuple_budget)
        }) {
            Ok(value) => lower_bounds.push(LowerBound { method, value }),
            Err(e) => skipped.push(Skipped {
                method,
                reason: e.to_string(),
            }),
        }
    }

    let (value, witness) = timed(&mut timings, "product", || upper_bound_product(x, y));
    upper_bounds.push(UpperBound {
        method: "product".into(),
        value,
        witness,
    });
    let (value, witness) = timed(&mut timings, "greedy", || upper_bound_greedy(x, y));
    upper_bounds.push(UpperBound {
        method: "greedy".into(),
        value,
        witness,
    });

    let exact = match timed(&mut timings, "exact", || {
        exact_distance_with_budget(x, y, options.node_budget)
    }) {
        Ok(e) => Some(e),
        Err(e) => {
            skipped.push(Skipped {
                method: "exact".into(),
                reason: e.to_string(),
            });
            None
        }
    };

    DistanceReport {
        x_nodes: x.len(),
        y_nodes: y.len(),
        lower_bounds,
        upper_bounds,
        exact,
        skipped,
        timings,
    }
}
