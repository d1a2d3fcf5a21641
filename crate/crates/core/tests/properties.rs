mod common;

use hyperlin_core::centrality::{
    graph_projection, rw_betweenness, rw_closeness, unit_closeness, unit_eccentricity, CentralityReport,
};
use hyperlin_core::linalg::{is_zero_vector, rat, to_f64};
use hyperlin_core::randwalk::{
    delta, first_hit_probabilities, hitting_times, transition_matrix, verify_partition_transition,
};
use hyperlin_core::spectra::{build_q, spectrum, JacobiOptions};
use hyperlin_core::structures::{
    contraction_nullspace_lift, dependent_hyperedges, dependent_vertices, incidence_graph_adjacency,
    is_dependent_set, unit_contraction, units, verify_equal_edge_partition,
};
use hyperlin_core::{
    Axis, Format, Hypergraph, MatrixKind, Preset, Rational, RationalMatrix, ReturnConvention, WalkPolicy,
    WeightScheme,
};
use proptest::collection::vec;
use proptest::prelude::*;

fn pattern() -> impl Strategy<Value = (usize, Vec<Vec<bool>>)> {
    (1..=8usize, 1..=8usize)
        .prop_flat_map(|(n, m)| (Just(n), vec(vec(prop::bool::weighted(0.4), n), m)))
}

fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    pattern().prop_map(|(n, cols)| common::from_pattern(n, &cols))
}

fn walkable() -> impl Strategy<Value = Hypergraph> {
    pattern().prop_map(|(n, cols)| common::walkable(n.max(2), &pad(n.max(2), cols)))
}

fn pad(n: usize, cols: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    cols.into_iter()
        .map(|mut c| {
            c.resize(n, false);
            c
        })
        .collect()
}

fn square_matrix() -> impl Strategy<Value = RationalMatrix> {
    (1..=6usize).prop_flat_map(|n| vec(vec(-3i64..=3, n), n).prop_map(|rows| RationalMatrix::from_ints(&rows)))
}

/// Splits vertices into `U`, `V` and neither by a ternary code.
fn split(h: &Hypergraph, code: &[u8]) -> (Vec<String>, Vec<String>) {
    let pick = |k| {
        (0..h.num_vertices())
            .filter(|&v| code[v % code.len()] == k)
            .map(|v| h.vertex(v).to_string())
            .collect()
    };
    (pick(1), pick(2))
}

fn unit_pairs(h: &Hypergraph) -> Vec<(usize, usize)> {
    units(h)
        .member_indices
        .iter()
        .flat_map(|m| m.iter().flat_map(move |&a| m.iter().filter(move |&&b| b > a).map(move |&b| (a, b))))
        .collect()
}

fn assert_unit_constant(r: &CentralityReport, h: &Hypergraph) {
    assert_eq!(r.unit_spread(&units(h)), 0.0, "{:?} varies within a unit", r.kind);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_and_nullity_laws(h in hypergraph()) {
        let i = h.incidence_matrix();
        let r = i.rank();
        prop_assert_eq!(r, i.transpose().rank());
        let agh = incidence_graph_adjacency(&h);
        let (n, m) = (h.num_vertices(), h.num_edges());
        prop_assert_eq!(agh.nullity(), (m - r) + (n - r));
        prop_assert!(agh.nullity() >= n.abs_diff(m));
        prop_assert!(units(&h).excess() <= agh.nullity());
    }

    #[test]
    fn bareiss_agrees_with_elimination(m in square_matrix(), k in square_matrix()) {
        let det = m.determinant().unwrap();
        prop_assert_eq!(det == rat(0), m.rank() < m.rows());
        prop_assert_eq!(&det, &m.transpose().determinant().unwrap());
        if k.rows() == m.rows() {
            let product = m.mul(&k).unwrap().determinant().unwrap();
            prop_assert_eq!(product, det * k.determinant().unwrap());
        }
    }

    #[test]
    fn nullspace_bases_are_sound(h in hypergraph()) {
        for m in [h.incidence_matrix(), h.incidence_matrix().transpose(), incidence_graph_adjacency(&h)] {
            let basis = m.nullspace();
            prop_assert_eq!(basis.dim(), m.nullity());
            for v in &basis.vectors {
                prop_assert!(is_zero_vector(&m.mul_vec(v).unwrap()));
            }
        }
    }

    #[test]
    fn certificates_are_sound(h in hypergraph(), mask in vec(any::<bool>(), 8)) {
        let r = h.incidence_matrix().rank();
        let vc = dependent_vertices(&h);
        prop_assert_eq!(vc.is_some(), r < h.num_vertices());
        prop_assert!(vc.is_none_or(|c| c.verify(&h) && !c.is_zero()));
        let ec = dependent_hyperedges(&h);
        prop_assert_eq!(ec.is_some(), r < h.num_edges());
        prop_assert!(ec.is_none_or(|c| c.verify(&h) && !c.is_zero()));

        let rows: Vec<usize> = (0..h.num_vertices()).filter(|&v| mask[v]).collect();
        let labels: Vec<&str> = rows.iter().map(|&v| h.vertex(v)).collect();
        let sub = is_dependent_set(&h, &labels, Axis::Vertices).unwrap();
        let sub_rank = h.incidence_matrix().select_rows(&rows).rank();
        prop_assert_eq!(sub.is_some(), sub_rank < rows.len());
        if let Some(c) = sub {
            prop_assert!(c.verify(&h));
            prop_assert!(c.support.iter().all(|l| labels.contains(&l.as_str())));
        }
    }

    #[test]
    fn equal_partition_iff_nullspace(h in hypergraph(), code in vec(0u8..3, 8)) {
        let (u, v) = split(&h, &code);
        let holds = verify_equal_edge_partition(&h, &u, &v).unwrap().holds;
        let mut x = vec![rat(0); h.num_vertices()];
        for (labels, sign) in [(&u, 1), (&v, -1)] {
            for l in labels {
                x[h.vertex_index(l).unwrap()] = rat(sign);
            }
        }
        let annihilated = is_zero_vector(&h.incidence_matrix().transpose().mul_vec(&x).unwrap());
        prop_assert_eq!(holds, annihilated);
    }

    #[test]
    fn equal_partitions_balance_transitions(h in walkable(), code in vec(0u8..3, 8)) {
        let (u, v) = split(&h, &code);
        if verify_equal_edge_partition(&h, &u, &v).unwrap().holds {
            for policy in [WalkPolicy::UniformNonLazy, WalkPolicy::UniformLazy] {
                let p = transition_matrix(&h, policy).unwrap();
                prop_assert!(verify_partition_transition(&p, &u, &v).unwrap());
            }
        }
    }

    #[test]
    fn bipartite_spectrum_is_symmetric(h in hypergraph()) {
        let s = spectrum(&h, MatrixKind::AGH, &WeightScheme::unit(&h), JacobiOptions::default()).unwrap();
        let v = s.values();
        for i in 0..v.len() {
            prop_assert!((v[i] + v[v.len() - 1 - i]).abs() < 1e-8);
        }
    }

    #[test]
    fn signless_laplacian_kernel_matches_incidence(h in hypergraph()) {
        let w = WeightScheme::unit(&h);
        let s = spectrum(&h, MatrixKind::Q, &w, JacobiOptions::default()).unwrap();
        prop_assert!(s.values().iter().all(|&x| x > -1e-9));
        let kernel = h.num_vertices() - h.incidence_matrix().rank();
        prop_assert_eq!(s.multiplicity_of(0.0, 1e-8), kernel);
        let q = build_q(&h, &w).unwrap();
        let trace: f64 = (0..q.rows()).map(|i| to_f64(q.get(i, i))).sum();
        prop_assert!((s.values().iter().sum::<f64>() - trace).abs() < 1e-8);
    }

    #[test]
    fn q_annihilates_vertex_nullspace(h in walkable()) {
        let basis = h.incidence_matrix().transpose().nullspace();
        for preset in Preset::ALL {
            let q = build_q(&h, &WeightScheme::preset(&h, preset).unwrap()).unwrap();
            for v in &basis.vectors {
                prop_assert!(is_zero_vector(&q.mul_vec(v).unwrap()));
            }
        }
    }

    #[test]
    fn contraction_lifts_stay_in_nullspace(h in hypergraph()) {
        let c = unit_contraction(&h);
        prop_assert!(c.edge_map_is_bijective());
        let agh = incidence_graph_adjacency(&h);
        for z in incidence_graph_adjacency(&c.contracted).nullspace().vectors {
            let x = contraction_nullspace_lift(&h, &c, &z).unwrap();
            prop_assert!(is_zero_vector(&agh.mul_vec(&x).unwrap()));
        }
    }

    #[test]
    fn text_formats_round_trip(h in hypergraph()) {
        prop_assert_eq!(&Hypergraph::parse(&h.to_json(), Format::Json).unwrap(), &h);
        prop_assert_eq!(&Hypergraph::parse(&h.to_lines(), Format::Lines).unwrap(), &h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn walks_are_symmetric_within_units(h in walkable()) {
        for policy in [WalkPolicy::UniformNonLazy, WalkPolicy::UniformLazy] {
            let p = transition_matrix(&h, policy).unwrap().p;
            for (u, v) in unit_pairs(&h) {
                for w in (0..h.num_vertices()).filter(|&w| w != u && w != v) {
                    prop_assert_eq!(p.get(w, u), p.get(w, v));
                    prop_assert_eq!(p.get(u, w), p.get(v, w));
                }
            }
        }
    }

    #[test]
    fn hitting_times_are_symmetric_within_units(h in walkable()) {
        prop_assume!(h.is_connected());
        let p = transition_matrix(&h, WalkPolicy::UniformNonLazy).unwrap();
        let times: Vec<_> = h
            .vertices()
            .iter()
            .map(|v| hitting_times(&p, v, ReturnConvention::FirstReturn).unwrap())
            .collect();
        for (u, v) in unit_pairs(&h) {
            prop_assert_eq!(&times[v].times[u], &times[u].times[v]);
            for w in (0..h.num_vertices()).filter(|&w| w != u && w != v) {
                prop_assert_eq!(&times[u].times[w], &times[v].times[w]);
            }
        }
    }

    #[test]
    fn first_hit_partial_sums(h in walkable()) {
        prop_assume!(h.is_connected());
        let p = transition_matrix(&h, WalkPolicy::UniformLazy).unwrap();
        let target = h.vertex(h.num_vertices() - 1).to_string();
        let init = delta(&p, h.vertex(0)).unwrap();
        let probs = first_hit_probabilities(&p, &init, &target, 40).unwrap();
        let mut total = Rational::from_integer(0.into());
        let mut mean = Rational::from_integer(0.into());
        for (t, x) in probs.iter().enumerate() {
            prop_assert!(*x >= rat(0));
            total += x;
            mean += x * rat(t as i64 + 1);
        }
        prop_assert!(total <= rat(1));
        let exact = hitting_times(&p, &target, ReturnConvention::FirstReturn).unwrap();
        prop_assert!(mean <= exact.times[0]);
    }

    #[test]
    fn centralities_are_unit_constant(h in walkable()) {
        prop_assume!(h.is_connected());
        let policy = WalkPolicy::UniformNonLazy;
        assert_unit_constant(&rw_closeness(&h, policy.clone(), ReturnConvention::FirstReturn).unwrap(), &h);
        assert_unit_constant(&rw_betweenness(&h, policy, 6).unwrap(), &h);
        assert_unit_constant(&unit_eccentricity(&h).unwrap(), &h);
        if h.num_edges() >= 2 {
            assert_unit_constant(&unit_closeness(&h).unwrap(), &h);
        }
    }

    #[test]
    fn projection_distance_is_a_pseudometric(h in walkable()) {
        prop_assume!(h.is_connected());
        let d = graph_projection(&h).vertex_distances().unwrap();
        let n = h.num_vertices();
        for a in 0..n {
            prop_assert_eq!(d[a][a], 0);
            for b in 0..n {
                prop_assert_eq!(d[a][b], d[b][a]);
                for c in 0..n {
                    prop_assert!(d[a][c] <= d[a][b] + d[b][c]);
                }
            }
        }
    }
}
