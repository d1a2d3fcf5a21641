#![allow(dead_code)]

use std::collections::BTreeSet;

use hyperlin_core::structures::EdgePartition;
use hyperlin_core::Hypergraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Builds a hypergraph from an incidence pattern `cols[e][v]`, dropping
/// empty and repeated hyperedges. All `n` vertices are declared, so some may
/// be isolated.
pub fn from_pattern(n: usize, cols: &[Vec<bool>]) -> Hypergraph {
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for col in cols {
        let members: Vec<String> = (0..n).filter(|&v| col[v]).map(|v| vertices[v].clone()).collect();
        if !members.is_empty() && seen.insert(members.clone()) {
            edges.push((format!("e{}", edges.len() + 1), members));
        }
    }
    Hypergraph::new(vertices, edges).expect("pattern yields a valid hypergraph")
}

/// Seeded random hypergraphs with `|V|, |E| ≤ 8` and incidence density 0.4.
pub fn random_hypergraphs(count: usize, seed: u64) -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=8);
            let m = rng.random_range(1..=8);
            let cols: Vec<Vec<bool>> = (0..m).map(|_| (0..n).map(|_| rng.random_bool(0.4)).collect()).collect();
            from_pattern(n, &cols)
        })
        .collect()
}

/// `I_H` as small integers, rows = vertices.
pub fn int_incidence(h: &Hypergraph) -> Vec<Vec<i64>> {
    (0..h.num_vertices())
        .map(|v| (0..h.num_edges()).map(|e| h.contains(e, v) as i64).collect())
        .collect()
}

/// Every `x ∈ {−1, 0, 1}^V` with `I_Hᵀ x = 0`, first nonzero entry `+1`,
/// as `(U, V)` label lists. Exhaustive; only for small `|V|`.
pub fn brute_force_partitions(h: &Hypergraph) -> BTreeSet<EdgePartition> {
    let n = h.num_vertices();
    let inc = int_incidence(h);
    let mut out = BTreeSet::new();
    let total = 3usize.pow(n as u32);
    for code in 1..total {
        let mut x = vec![0i64; n];
        let mut c = code;
        for xi in x.iter_mut() {
            *xi = (c % 3) as i64 - 1;
            c /= 3;
        }
        if x.iter().find(|&&v| v != 0) != Some(&1) {
            continue;
        }
        let balanced = (0..h.num_edges()).all(|e| (0..n).map(|v| inc[v][e] * x[v]).sum::<i64>() == 0);
        if balanced {
            let pick = |s: i64| (0..n).filter(|&v| x[v] == s).map(|v| h.vertex(v).to_string()).collect();
            out.insert(EdgePartition { u: pick(1), v: pick(-1) });
        }
    }
    out
}

/// Replaces vertex `i` of `base` by `copies[i]` twins, giving a hypergraph
/// whose units are exactly the twin classes.
pub fn blow_up(base: &Hypergraph, copies: &[usize]) -> Hypergraph {
    let twins = |v: usize| (0..copies[v]).map(move |k| format!("{}.{k}", v + 1));
    let vertices: Vec<String> = (0..base.num_vertices()).flat_map(twins).collect();
    let edges: Vec<(String, Vec<String>)> = (0..base.num_edges())
        .map(|e| {
            let members = base.members(e).iter().flat_map(|&v| twins(v)).collect();
            (base.edge_label(e).to_string(), members)
        })
        .collect();
    Hypergraph::new(vertices, edges).expect("blow-up of a valid hypergraph is valid")
}

/// Like [`from_pattern`], but keeps only hyperedges with at least two
/// members and only vertices that lie in one, so every uniform walk is
/// defined. Falls back to a single edge when nothing survives.
pub fn walkable(n: usize, cols: &[Vec<bool>]) -> Hypergraph {
    let mut seen = BTreeSet::new();
    let mut edges: Vec<(String, Vec<String>)> = Vec::new();
    for col in cols {
        let members: Vec<String> = (0..n).filter(|&v| col[v]).map(|v| format!("v{}", v + 1)).collect();
        if members.len() >= 2 && seen.insert(members.clone()) {
            edges.push((format!("e{}", edges.len() + 1), members));
        }
    }
    if edges.is_empty() {
        edges.push(("e1".into(), vec!["v1".into(), "v2".into()]));
    }
    Hypergraph::from_edges(edges).expect("walkable pattern is valid")
}
