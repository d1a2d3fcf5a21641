//! The worked-example hypergraphs used throughout the tests, the CLI fixture
//! pack and the benchmarks.

use std::collections::BTreeMap;

use crate::hypergraph::Hypergraph;

fn build(vertices: &[&str], edges: &[(&str, &[&str])]) -> Hypergraph {
    Hypergraph::new(
        vertices.iter().copied(),
        edges
            .iter()
            .map(|(l, m)| (l.to_string(), m.iter().copied())),
    )
    .expect("fixture is a valid hypergraph")
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Five vertices, five hyperedges, with `χ_e1 − χ_e2 + χ_e3 = χ_e4`.
pub fn h_a() -> Hypergraph {
    build(
        &["1", "2", "3", "4", "5"],
        &[
            ("e1", &["1", "2", "5"]),
            ("e2", &["2", "3", "5"]),
            ("e3", &["3", "4", "5"]),
            ("e4", &["1", "4", "5"]),
            ("e5", &["1", "2"]),
        ],
    )
}

/// Lower-triangular family: `e1 = {1}` and `e_i = {1, ..., i}`, so the
/// incidence matrix is unit upper-triangular when both axes are in index
/// order.
pub fn lower_triangular(n: usize) -> Hypergraph {
    let vertices = numbered(n);
    let edges = (1..=n).map(|i| (format!("e{i}"), vertices[..i].to_vec()));
    Hypergraph::new(vertices.clone(), edges).expect("valid family member")
}

/// Circulant family: `e_i = V ∖ {i}`. Requires `n ≥ 2`.
pub fn circulant(n: usize) -> Hypergraph {
    assert!(n >= 2, "circulant family needs n >= 2");
    let vertices = numbered(n);
    let edges = (1..=n).map(|i| {
        let members: Vec<String> = vertices.iter().filter(|v| **v != i.to_string()).cloned().collect();
        (format!("e{i}"), members)
    });
    Hypergraph::new(vertices.clone(), edges).expect("valid family member")
}

/// Eleven vertices, five hyperedges and six units.
pub fn h_units() -> Hypergraph {
    build(
        &["1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11"],
        &[
            ("e1", &["1", "2", "5", "6", "7", "10", "11"]),
            ("e2", &["1", "2", "3", "4"]),
            ("e3", &["3", "4", "10"]),
            ("e4", &["5", "6", "7", "8", "9"]),
            ("e5", &["8", "9", "10", "11"]),
        ],
    )
}

/// Three hyperedges on five vertices where `U = {1, 5}`, `V = {2, 3, 4}` is
/// an equal partition not explained by units.
pub fn h_eq() -> Hypergraph {
    build(
        &["1", "2", "3", "4", "5"],
        &[
            ("e1", &["1", "2", "3", "5"]),
            ("e2", &["1", "3", "4", "5"]),
            ("e3", &["1", "2", "4", "5"]),
        ],
    )
}

/// Sixteen-vertex cover of [`h_cov_base`].
pub fn h_cov() -> Hypergraph {
    let vertices: Vec<String> = (1..=8)
        .flat_map(|i| [format!("u{i}"), format!("v{i}")])
        .collect();
    let edges: &[(&str, &[&str])] = &[
        ("e1", &["u3", "u4", "u5"]),
        ("e2", &["v3", "v4", "v5"]),
        ("f1", &["u5", "v6", "v7"]),
        ("f2", &["v5", "u6", "u7"]),
        ("g1", &["u1", "u7", "u8"]),
        ("g2", &["v1", "v7", "v8"]),
        ("h1", &["u1", "u2", "u3"]),
        ("h2", &["v1", "v2", "v3"]),
    ];
    Hypergraph::new(
        vertices,
        edges.iter().map(|(l, m)| (l.to_string(), m.iter().copied())),
    )
    .expect("fixture is a valid hypergraph")
}

/// Eight-vertex base of the covering pair.
pub fn h_cov_base() -> Hypergraph {
    build(
        &["1", "2", "3", "4", "5", "6", "7", "8"],
        &[
            ("e", &["3", "4", "5"]),
            ("f", &["5", "6", "7"]),
            ("g", &["1", "7", "8"]),
            ("h", &["1", "2", "3"]),
        ],
    )
}

/// The projection `u_i ↦ i`, `v_i ↦ i`.
pub fn h_cov_map() -> BTreeMap<String, String> {
    (1..=8)
        .flat_map(|i| [(format!("u{i}"), i.to_string()), (format!("v{i}"), i.to_string())])
        .collect()
}
