//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line with its
//! measured quantity, then asserts. Run with
//! `cargo test -p netmet --test acceptance -- --nocapture` to see the lines.

mod common;

use std::time::{Duration, Instant};

use netmet::generators::{circle_refinement_bound, random_permutation};
use netmet::motifs::{for_each_permutation, DEFAULT_TUPLE_BUDGET};
use netmet::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{naive_distance, random_small, rng};

fn verdict(id: &str, name: &str, pass: bool, detail: String, elapsed: Duration, limit: Duration) {
    let in_time = elapsed <= limit;
    let ok = pass && in_time;
    println!(
        "[{}] {id} {name}: {detail} ({:.2?}, limit {:?})",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        limit
    );
    assert!(pass, "{id} {name} failed: {detail}");
    assert!(in_time, "{id} {name} exceeded its time limit: {elapsed:?} > {limit:?}");
}

fn d(x: &Network, y: &Network) -> f64 {
    exact_distance(x, y).unwrap().value
}

// α = 1, δ = 2, γ = 3, β = 4 in Ω = [[α, δ], [γ, β]]
fn omega() -> Network {
    Network::new(vec!["p".into(), "q".into()], vec![1.0, 2.0, 3.0, 4.0]).unwrap()
}

#[test]
fn c01_motif_fixtures() {
    let start = Instant::now();
    let (alpha, delta, gamma, beta) = (1.0, 2.0, 3.0, 4.0);
    let m1 = motif_set(&omega(), 1, DEFAULT_TUPLE_BUDGET).unwrap();
    let m2 = motif_set(&omega(), 2, DEFAULT_TUPLE_BUDGET).unwrap();
    let mut expected_m2 = vec![
        vec![alpha, alpha, alpha, alpha],
        vec![beta, beta, beta, beta],
        vec![alpha, delta, gamma, beta],
        vec![beta, gamma, delta, alpha],
    ];
    expected_m2.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let single = motif_set(&Network::single(alpha).unwrap(), 2, DEFAULT_TUPLE_BUDGET).unwrap();
    let pass = m1.matrices() == [vec![alpha], vec![beta]]
        && m2.matrices() == expected_m2.as_slice()
        && single.matrices() == [vec![alpha; 4]];
    verdict(
        "C1",
        "motif fixtures",
        pass,
        format!("|M1| = {}, |M2| = {}, |M2(N1)| = {}", m1.len(), m2.len(), single.len()),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn c02_blow_up_round_trip() {
    let start = Instant::now();
    let base = Network::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
    let blown = base.blow_up(&[2, 2]).unwrap();
    let printed = vec![
        vec![1.0, 1.0, 2.0, 2.0],
        vec![1.0, 1.0, 2.0, 2.0],
        vec![3.0, 3.0, 4.0, 4.0],
        vec![3.0, 3.0, 4.0, 4.0],
    ];
    let sk = blown.skeletonize(0.0);
    let weak = weak_isomorphic(&base, &blown).isomorphic;
    let dist = d(&base, &blown);
    let pass = blown.rows() == printed
        && sk.skeleton.rows() == base.rows()
        && sk.class_of == [0, 0, 1, 1]
        && weak
        && dist == 0.0;
    verdict(
        "C2",
        "blow-up round trip",
        pass,
        format!("weak = {weak}, d_N = {dist}"),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn c03_pseudometric() {
    let start = Instant::now();
    let mut r = rng(3);
    let mut worst_sym = 0.0f64;
    let mut worst_tri = f64::NEG_INFINITY;
    let mut self_zero = true;
    for _ in 0..100 {
        let x = random_small(&mut r, 4);
        let y = random_small(&mut r, 4);
        let z = random_small(&mut r, 4);
        let (xy, yx, yz, xz) = (d(&x, &y), d(&y, &x), d(&y, &z), d(&x, &z));
        worst_sym = worst_sym.max((xy - yx).abs());
        worst_tri = worst_tri.max(xz - xy - yz);
        self_zero &= d(&x, &x) == 0.0 && d(&y, &y) == 0.0 && d(&z, &z) == 0.0;
    }
    verdict(
        "C3",
        "pseudometric axioms",
        worst_sym <= 1e-9 && worst_tri <= 1e-9 && self_zero,
        format!("max |d(X,Y)-d(Y,X)| = {worst_sym:e}, max triangle excess = {worst_tri:e}, d(X,X)=0: {self_zero}"),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn c04_motif_stability() {
    let start = Instant::now();
    let mut r = rng(4);
    let mut worst_motif = f64::NEG_INFINITY;
    let mut worst_diam = f64::NEG_INFINITY;
    for _ in 0..200 {
        let x = random_small(&mut r, 4);
        let y = random_small(&mut r, 4);
        let exact = d(&x, &y);
        for n in 1..=3 {
            let lb = lower_bound_motif(&x, &y, n, DEFAULT_TUPLE_BUDGET).unwrap();
            worst_motif = worst_motif.max(lb - exact);
        }
        worst_diam = worst_diam.max(lower_bound_diameter(&x, &y) - exact);
    }
    verdict(
        "C4",
        "motif stability",
        worst_motif <= 1e-12 && worst_diam <= 0.0,
        format!("max (½d_n − d_N) = {worst_motif:e}, max (½|Δdiam| − d_N) = {worst_diam:e}"),
        start.elapsed(),
        Duration::from_secs(300),
    );
}

fn random_blow_up_of_permuted(r: &mut ChaCha8Rng, x: &Network) -> Network {
    let order = random_permutation(x.len(), r);
    let permuted = x.permuted(&order).unwrap();
    let mut mult = vec![1usize; x.len()];
    let extra = r.gen_range(0..=(DEFAULT_NODE_BUDGET - x.len()));
    for _ in 0..extra {
        let i = r.gen_range(0..x.len());
        mult[i] += 1;
    }
    permuted.blow_up(&mult).unwrap()
}

fn small_alphabet(r: &mut ChaCha8Rng, max_nodes: usize) -> Network {
    let n = r.gen_range(1..=max_nodes);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| r.gen_range(0..2) as f64).collect())
        .collect();
    Network::from_rows(&rows).unwrap()
}

#[test]
fn c05_zero_distance_characterization() {
    let start = Instant::now();
    let mut r = rng(5);
    let mut cases = Vec::new();
    for _ in 0..100 {
        let x = random_small(&mut r, 4);
        let y = random_blow_up_of_permuted(&mut r, &x);
        cases.push((x, y));
    }
    for i in 0..100 {
        if i % 2 == 0 {
            cases.push((random_small(&mut r, 4), random_small(&mut r, 4)));
        } else {
            cases.push((small_alphabet(&mut r, 3), small_alphabet(&mut r, 3)));
        }
    }
    let mut disagreements = 0;
    let mut zeros = 0;
    for (x, y) in &cases {
        let weak = weak_isomorphic(x, y).isomorphic;
        let zero = d(x, y) == 0.0;
        let skel = strong_isomorphic(
            &x.skeletonize(0.0).skeleton,
            &y.skeletonize(0.0).skeleton,
        )
        .is_some();
        zeros += zero as usize;
        if weak != zero || zero != skel {
            disagreements += 1;
        }
    }
    verdict(
        "C5",
        "zero-distance characterization",
        disagreements == 0 && zeros >= 100,
        format!("{disagreements} disagreements over {} pairs ({zeros} at distance 0)", cases.len()),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn c06_geodesic_linearity() {
    let start = Instant::now();
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut r = rng(6);
    let mut worst = 0.0f64;
    let mut worst_mid = 0.0f64;
    for _ in 0..50 {
        let x = random_small(&mut r, 3);
        let y = random_small(&mut r, 3);
        let geo = sample_geodesic(&x, &y, &grid).unwrap();
        let total = geo.distance.value;
        for a in &geo.points {
            for b in &geo.points {
                let got = d(&a.network, &b.network);
                worst = worst.max((got - (a.t - b.t).abs() * total).abs());
            }
        }
        let m = midpoint(&x, &y).unwrap();
        worst_mid = worst_mid
            .max((d(&x, &m) - 0.5 * total).abs())
            .max((d(&m, &y) - 0.5 * total).abs());
    }
    verdict(
        "C6",
        "geodesic linearity",
        worst <= 1e-9 && worst_mid <= 1e-9,
        format!("max |d(γs,γt) − |t−s|d| = {worst:e}, max midpoint error = {worst_mid:e}"),
        start.elapsed(),
        Duration::from_secs(300),
    );
}

/// Every network on 1..=3 nodes with weights in `alphabet`, one
/// representative per strong isomorphism class.
fn alphabet_corpus(alphabet: &[f64]) -> Vec<Network> {
    let mut corpus = Vec::new();
    for k in 1..=3usize {
        let cells = k * k;
        let total = alphabet.len().pow(cells as u32);
        let mut canon = std::collections::BTreeSet::new();
        for code in 0..total {
            let digits: Vec<usize> = (0..cells)
                .map(|c| code / alphabet.len().pow(c as u32) % alphabet.len())
                .collect();
            let mut best: Option<Vec<usize>> = None;
            for_each_permutation(k, |p| {
                let relabeled: Vec<usize> = (0..cells).map(|c| digits[p[c / k] * k + p[c % k]]).collect();
                if best.as_ref().map_or(true, |b| relabeled < *b) {
                    best = Some(relabeled);
                }
            });
            canon.insert(best.unwrap());
        }
        for digits in canon {
            let rows: Vec<Vec<f64>> = digits.chunks(k).map(|row| row.iter().map(|&i| alphabet[i]).collect()).collect();
            corpus.push(Network::from_rows(&rows).unwrap());
        }
    }
    corpus
}

#[test]
fn c07_solver_matches_exhaustive_oracle() {
    let start = Instant::now();
    let corpus = alphabet_corpus(&[0.0, 1.0, 3.0]);
    let pairs: Vec<(usize, usize)> = (0..corpus.len())
        .flat_map(|i| (i..corpus.len()).map(move |j| (i, j)))
        .collect();
    let mismatches: usize = pairs
        .par_iter()
        .filter(|&&(i, j)| {
            let (x, y) = (&corpus[i], &corpus[j]);
            let exact = exact_distance(x, y).unwrap();
            exact.value != naive_distance(x, y)
                || 0.5 * exact.witness.distortion(x, y).unwrap() != exact.value
        })
        .count();
    verdict(
        "C7",
        "solver vs exhaustive oracle",
        mismatches == 0,
        format!(
            "{mismatches} mismatches over {} pairs of {} isomorphism-class representatives",
            pairs.len(),
            corpus.len()
        ),
        start.elapsed(),
        Duration::from_secs(600),
    );
}

fn random_correspondence(r: &mut ChaCha8Rng, n: usize, m: usize) -> Correspondence {
    let f: Vec<usize> = (0..n).map(|_| r.gen_range(0..m)).collect();
    let g: Vec<usize> = (0..m).map(|_| r.gen_range(0..n)).collect();
    let mut pairs = Correspondence::from_function_pair(&f, &g).unwrap().pairs().to_vec();
    for a in 0..n {
        for b in 0..m {
            if r.gen_bool(0.3) {
                pairs.push((a, b));
            }
        }
    }
    Correspondence::new(pairs, n, m).unwrap()
}

#[test]
fn c08_composition_lemma() {
    let start = Instant::now();
    let mut r = rng(8);
    let mut worst = f64::NEG_INFINITY;
    let mut all_valid = true;
    for _ in 0..100 {
        let x = random_small(&mut r, 4);
        let y = random_small(&mut r, 4);
        let z = random_small(&mut r, 4);
        let rxy = random_correspondence(&mut r, x.len(), y.len());
        let ryz = random_correspondence(&mut r, y.len(), z.len());
        let rxz = rxy.compose(&ryz).unwrap();
        all_valid &= rxz.validate(&x, &z);
        let lhs = rxz.distortion(&x, &z).unwrap();
        let rhs = rxy.distortion(&x, &y).unwrap() + ryz.distortion(&y, &z).unwrap();
        worst = worst.max(lhs - rhs);
    }
    verdict(
        "C8",
        "composition lemma",
        all_valid && worst <= 1e-12,
        format!("max dis(R∘S) − dis(R) − dis(S) = {worst:e}"),
        start.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn c09_generic_reconstruction() {
    let start = Instant::now();
    let mut r = rng(9);
    let mut recovered = 0;
    let mut rejected = 0;
    for _ in 0..50 {
        let x = netmet::generators::random_network_with(4, -1.0, 1.0, &mut r).unwrap();
        assert!(x.is_generic());
        let y = x.permuted(&random_permutation(4, &mut r)).unwrap();
        if let Some(phi) = reconstruct_generic(&x, &y).unwrap() {
            if Bijection::new(phi).unwrap().preserves_weights(&x, &y, 0.0) {
                recovered += 1;
            }
        }
    }
    let mut negatives = 0;
    while negatives < 50 {
        let x = netmet::generators::random_network_with(4, -1.0, 1.0, &mut r).unwrap();
        let y = if negatives % 2 == 0 {
            netmet::generators::random_network_with(4, -1.0, 1.0, &mut r).unwrap()
        } else {
            // same weight multiset, two off-diagonal entries exchanged
            let mut rows = x.rows();
            let tmp = rows[0][1];
            rows[0][1] = rows[2][3];
            rows[2][3] = tmp;
            Network::from_rows(&rows).unwrap()
        };
        if strong_isomorphic(&x, &y).is_some() {
            continue;
        }
        negatives += 1;
        if reconstruct_generic(&x, &y).unwrap().is_none() {
            rejected += 1;
        }
    }
    verdict(
        "C9",
        "generic reconstruction",
        recovered == 50 && rejected == 50,
        format!("{recovered}/50 permuted copies recovered, {rejected}/50 non-isomorphic pairs rejected"),
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn c10_quantization_bound() {
    let start = Instant::now();
    let mut r = rng(10);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..50 {
        let x = netmet::generators::random_network_with(4, -3.0, 3.0, &mut r).unwrap();
        for step in [1.0, 0.5, 0.1] {
            let q = x.quantize(step).unwrap();
            worst = worst.max(d(&x, &q) - step / 2.0);
        }
    }
    verdict(
        "C10",
        "quantization bound",
        worst <= 0.0,
        format!("max d_N(X, Q(X)) − δ/2 = {worst:e}"),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn c11_circle_refinement() {
    let start = Instant::now();
    let mut pass = true;
    let mut details = Vec::new();
    for rho in [1.0, 2.0, 5.0] {
        let bounds: Vec<f64> = (4..=32).map(|n| circle_refinement_bound(n, rho).unwrap()).collect();
        let monotone = bounds.windows(2).all(|w| w[1] <= w[0]);
        let first = bounds[0];
        let last = *bounds.last().unwrap();
        pass &= monotone && last * 4.0 <= first;
        details.push(format!("ρ={rho}: {first:.4} → {last:.4}, monotone {monotone}"));
    }
    verdict(
        "C11",
        "circle refinement",
        pass,
        details.join("; "),
        start.elapsed(),
        Duration::from_secs(60),
    );
}
