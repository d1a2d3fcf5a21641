//! The `check` command: every theorem test that applies to the input.
//!
//! Each check recomputes its claim along an independent route (exact
//! matrix products against combinatorial counts, or one library result
//! against another) and reports a witness.

use serde_json::{json, Value};

use hyperlin_core::linalg::{is_zero_vector, rat};
use hyperlin_core::randwalk::{hitting_times, transition_matrix, verify_partition_transition};
use hyperlin_core::spectra::{build_q, verify_a_eigenvalue, verify_l_eigenvalue};
use hyperlin_core::structures::{
    contraction_nullspace_lift, dependent_hyperedges, dependent_vertices, equal_edge_partition_certificate,
    find_equal_edge_partitions, incidence_graph_adjacency, unit_contraction, units, verify_unit_maximality,
};
use hyperlin_core::{Certificate, CertificateKind, Hypergraph, Preset, Rational, ReturnConvention, WalkPolicy, WeightScheme};

use crate::report::{Status, TheoremCheck};

fn check(name: &'static str, holds: bool, witness: Value) -> TheoremCheck {
    TheoremCheck {
        name,
        status: if holds { Status::Pass } else { Status::Fail },
        witness,
    }
}

fn not_applicable(name: &'static str, reason: impl Into<String>) -> TheoremCheck {
    TheoremCheck {
        name,
        status: Status::NotApplicable,
        witness: json!({ "reason": reason.into() }),
    }
}

/// Pairs of distinct vertices inside one unit.
fn unit_pairs(h: &Hypergraph) -> Vec<(usize, usize)> {
    let d = units(h);
    let mut pairs = Vec::new();
    for m in &d.member_indices {
        for (i, &a) in m.iter().enumerate() {
            for &b in &m[i + 1..] {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

fn pair_certificate(h: &Hypergraph, u: usize, v: usize) -> Certificate {
    let mut x = vec![rat(0); h.num_vertices()];
    x[u] = rat(1);
    x[v] = rat(-1);
    Certificate::new(CertificateKind::DependentVertices, h.vertices().to_vec(), x)
}

pub fn run(h: &Hypergraph, max_support: usize) -> (Value, Vec<TheoremCheck>) {
    let mut checks = Vec::new();
    let inc = h.incidence_matrix();
    let (n, m) = (h.num_vertices(), h.num_edges());
    let rank = inc.rank();
    let rank_t = inc.transpose().rank();
    checks.push(check("rank_equality", rank == rank_t, json!({ "rank_I": rank, "rank_I_T": rank_t })));

    let agh = incidence_graph_adjacency(h);
    let nullity_agh = agh.nullity();
    let (null_i, null_it) = (m - rank, n - rank);
    checks.push(check(
        "nullity_bound",
        nullity_agh == null_i + null_it && nullity_agh >= n.abs_diff(m),
        json!({ "nullity_A_GH": nullity_agh, "nullity_I": null_i, "nullity_I_T": null_it, "abs_V_minus_E": n.abs_diff(m) }),
    ));

    if n == m {
        let det = inc.determinant().expect("square");
        checks.push(check(
            "determinant_nonsingularity",
            (det != rat(0)) == (nullity_agh == 0),
            json!({ "det_I": det.to_string(), "nullity_A_GH": nullity_agh }),
        ));
    } else {
        checks.push(not_applicable("determinant_nonsingularity", "I_H is not square"));
    }

    let vc = dependent_vertices(h);
    let ec = dependent_hyperedges(h);
    let sound = vc.as_ref().is_none_or(|c| c.verify(h))
        && ec.as_ref().is_none_or(|c| c.verify(h))
        && vc.is_some() == (rank < n)
        && ec.is_some() == (rank < m);
    checks.push(check(
        "certificate_soundness",
        sound,
        json!({ "vertex_certificate": vc, "hyperedge_certificate": ec }),
    ));

    let d = units(h);
    let multi: Vec<&Vec<String>> = d.units.iter().map(|u| &u.members).filter(|m| m.len() >= 2).collect();
    let maximal = multi.iter().all(|m| verify_unit_maximality(h, m).unwrap_or(false));
    checks.push(check(
        "unit_soundness",
        maximal && d.excess() <= nullity_agh,
        json!({ "units": d.len(), "excess": d.excess(), "nullity_A_GH": nullity_agh }),
    ));

    let c = unit_contraction(h);
    let basis = incidence_graph_adjacency(&c.contracted).nullspace();
    let lifts_ok = basis.vectors.iter().all(|z| {
        contraction_nullspace_lift(h, &c, z).is_ok_and(|x| is_zero_vector(&agh.mul_vec(&x).expect("sized to A_GH")))
    });
    checks.push(check(
        "contraction_lift",
        lifts_ok && c.edge_map_is_bijective(),
        json!({ "lifted": basis.dim(), "contracted_vertices": c.contracted.num_vertices() }),
    ));

    let vertex_basis = inc.transpose().nullspace();
    let mut presets_used = Vec::new();
    let mut annihilated = true;
    for preset in Preset::ALL {
        let Ok(w) = WeightScheme::preset(h, preset) else { continue };
        let q = build_q(h, &w).expect("weights sized to h");
        annihilated &= vertex_basis.vectors.iter().all(|v| is_zero_vector(&q.mul_vec(v).expect("sized")));
        presets_used.push(w.name);
    }
    if vertex_basis.is_empty() {
        checks.push(not_applicable("q_annihilation", "I_H^T has trivial nullspace"));
    } else {
        checks.push(check(
            "q_annihilation",
            annihilated,
            json!({ "vectors": vertex_basis.dim(), "presets": presets_used }),
        ));
    }

    let pairs = unit_pairs(h);
    if pairs.is_empty() {
        checks.push(not_applicable("unit_eigenvalues", "no unit has two members"));
    } else {
        let w = WeightScheme::unit(h);
        let mut eigen = Vec::new();
        let mut ok = true;
        for &(u, v) in &pairs {
            let cert = pair_certificate(h, u, v);
            let a = verify_a_eigenvalue(h, &w, &cert);
            let l = verify_l_eigenvalue(h, &w, &cert);
            ok &= matches!((&a, &l), (Ok(Some(_)), Ok(Some(_))));
            let show = |r: &hyperlin_core::Result<Option<Rational>>| match r {
                Ok(Some(x)) => Value::String(x.to_string()),
                _ => Value::Null,
            };
            eigen.push(json!({ "pair": [h.vertex(u), h.vertex(v)], "A": show(&a), "L": show(&l) }));
        }
        checks.push(check("unit_eigenvalues", ok, json!({ "unit_weights": eigen })));
    }

    let partitions = find_equal_edge_partitions(h, max_support);
    if partitions.is_empty() {
        checks.push(not_applicable("partition_nullspace", "no equal partition within the support bound"));
    } else {
        let ok = partitions.iter().all(|p| {
            equal_edge_partition_certificate(h, &p.u, &p.v).is_ok_and(|c| c.is_some_and(|c| c.verify(h)))
        });
        checks.push(check("partition_nullspace", ok, json!({ "partitions": partitions.len() })));
    }

    match transition_matrix(h, WalkPolicy::UniformNonLazy) {
        Err(e) => {
            checks.push(not_applicable("walk_unit_symmetry", e.to_string()));
            checks.push(not_applicable("partition_transition", e.to_string()));
        }
        Ok(p) => {
            let entries_ok = pairs.iter().all(|&(u, v)| {
                (0..n)
                    .filter(|&w| w != u && w != v)
                    .all(|w| p.p.get(w, u) == p.p.get(w, v) && p.p.get(u, w) == p.p.get(v, w))
            });
            let mut witness = json!({ "unit_pairs": pairs.len() });
            let mut ok = entries_ok;
            if h.is_connected() && !pairs.is_empty() {
                let times: Vec<_> = h
                    .vertices()
                    .iter()
                    .map(|v| hitting_times(&p, v, ReturnConvention::FirstReturn).expect("connected"))
                    .collect();
                ok &= pairs.iter().all(|&(u, v)| {
                    times[v].times[u] == times[u].times[v]
                        && (0..n)
                            .filter(|&w| w != u && w != v)
                            .all(|w| times[u].times[w] == times[v].times[w])
                });
                witness["hitting_times_checked"] = json!(true);
            }
            checks.push(check("walk_unit_symmetry", ok, witness));
            if partitions.is_empty() {
                checks.push(not_applicable("partition_transition", "no equal partition within the support bound"));
            } else {
                let ok = partitions
                    .iter()
                    .all(|part| verify_partition_transition(&p, &part.u, &part.v).unwrap_or(false));
                checks.push(check("partition_transition", ok, json!({ "partitions": partitions.len() })));
            }
        }
    }

    let summary = json!({
        "vertices": n,
        "hyperedges": m,
        "rank_I": rank,
        "nullity_A_GH": nullity_agh,
        "units": d.len(),
        "equal_partitions": partitions.len(),
    });
    (summary, checks)
}
