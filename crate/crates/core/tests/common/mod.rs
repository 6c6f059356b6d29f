#![allow(dead_code)]

use mayerpath::complex::Digraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `MAYERPATH_SEED` overrides the fixed default.
pub fn seed() -> u64 {
    std::env::var("MAYERPATH_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(20_240_601)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt)
}

/// Edge probability in [0.25, 0.35), 2 to 6 vertices, no self-loops.
pub fn random_digraph(rng: &mut ChaCha8Rng) -> Digraph {
    random_digraph_up_to(rng, 6)
}

pub fn random_digraphs(count: usize, salt: u64) -> Vec<Digraph> {
    let mut r = rng(salt);
    (0..count).map(|_| random_digraph(&mut r)).collect()
}

pub fn has_antiparallel_pair(g: &Digraph) -> bool {
    g.edges().iter().any(|&(u, v)| g.has_edge(v, u))
}

pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Rank of `∂̄` on edges (`∂̄e_{ab} = e_b + ξ e_a`) in complex floating point.
pub fn float_edge_boundary_rank(g: &Digraph, n_order: u32) -> usize {
    let xi = num_complex_root(n_order);
    let mut rows: Vec<Vec<(f64, f64)>> = vec![vec![(0.0, 0.0); g.edges().len()]; g.vertex_count()];
    for (j, &(a, b)) in g.edges().iter().enumerate() {
        rows[b][j].0 += 1.0;
        rows[a][j].0 += xi.0;
        rows[a][j].1 += xi.1;
    }
    float_rank(rows)
}

fn num_complex_root(n: u32) -> (f64, f64) {
    let t = 2.0 * std::f64::consts::PI / n as f64;
    (t.cos(), t.sin())
}

/// Gaussian elimination with partial pivoting over complex pairs.
pub fn float_rank(mut rows: Vec<Vec<(f64, f64)>>) -> usize {
    let norm = |z: (f64, f64)| z.0.hypot(z.1);
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let div = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).max_by(|&x, &y| norm(rows[x][c]).total_cmp(&norm(rows[y][c]))) else {
            break;
        };
        if norm(rows[p][c]) < 1e-9 {
            continue;
        }
        rows.swap(rank, p);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest {
            let f = div(row[c], pivot[c]);
            for (x, &y) in row[c..].iter_mut().zip(&pivot[c..]) {
                let s = mul(f, y);
                x.0 -= s.0;
                x.1 -= s.1;
            }
        }
        rank += 1;
    }
    rank
}

pub fn random_digraph_up_to(rng: &mut ChaCha8Rng, max_vertices: usize) -> Digraph {
    let n = rng.gen_range(2..=max_vertices);
    let p = rng.gen_range(0.25..0.35);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Digraph::from_edges(n, &edges).unwrap()
}

pub fn path_by_labels(labels: &[String], names: &[&str]) -> mayerpath::complex::ElementaryPath {
    let ids = names
        .iter()
        .map(|n| {
            labels
                .iter()
                .position(|l| l == n)
                .unwrap_or_else(|| panic!("no vertex {n}"))
        })
        .collect();
    mayerpath::complex::ElementaryPath::new(ids)
}
