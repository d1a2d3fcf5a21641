//! Vertex centralities that are constant on units.
//!
//! Random-walk closeness and truncated betweenness are exact rationals.
//! Unit closeness and unit eccentricity come from distances in the graph
//! projection `Γ_H`. The Perron centrality is a float eigenvector.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hypergraph::{quote, Hypergraph};
use crate::linalg::{to_f64, Rational};
use crate::randwalk::{hitting_times, transition_matrix, ReturnConvention, WalkPolicy};
use crate::structures::{units, UnitDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CentralityKind {
    RwCloseness,
    RwBetweenness,
    UnitCloseness,
    UnitEccentricity,
    Perron,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CentralityValues {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CentralityReport {
    pub kind: CentralityKind,
    pub labels: Vec<String>,
    pub values: CentralityValues,
    pub parameters: Map<String, Value>,
}

impl CentralityReport {
    pub fn as_f64(&self) -> Vec<f64> {
        match &self.values {
            CentralityValues::Exact(v) => v.iter().map(to_f64).collect(),
            CentralityValues::Float(v) => v.clone(),
        }
    }

    pub fn exact(&self) -> Option<&[Rational]> {
        match &self.values {
            CentralityValues::Exact(v) => Some(v),
            CentralityValues::Float(_) => None,
        }
    }

    /// Largest gap between two members of one unit (0 when exact and
    /// constant).
    pub fn unit_spread(&self, units: &UnitDecomposition) -> f64 {
        let mut worst = 0.0f64;
        for members in &units.member_indices {
            let first = members[0];
            for &v in &members[1..] {
                let gap = match &self.values {
                    CentralityValues::Exact(x) if x[v] == x[first] => 0.0,
                    CentralityValues::Exact(x) => to_f64(&(&x[v] - &x[first])).abs().max(f64::MIN_POSITIVE),
                    CentralityValues::Float(x) => (x[v] - x[first]).abs(),
                };
                worst = worst.max(gap);
            }
        }
        worst
    }

    /// Indices of the most central vertices: the argmax, or the argmin for
    /// eccentricity. Float values tie within `10·tol`.
    pub fn center(&self) -> Vec<usize> {
        let minimize = self.kind == CentralityKind::UnitEccentricity;
        match &self.values {
            CentralityValues::Exact(x) => {
                let best = if minimize { x.iter().min() } else { x.iter().max() };
                let Some(best) = best else { return Vec::new() };
                (0..x.len()).filter(|&i| x[i] == *best).collect()
            }
            CentralityValues::Float(x) => {
                let tol = self.parameters.get("tol").and_then(Value::as_f64).unwrap_or(0.0) * 10.0;
                let best = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                (0..x.len()).filter(|&i| best - x[i] <= tol).collect()
            }
        }
    }
}

impl Serialize for CentralityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let values: Map<String, Value> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let v = match &self.values {
                    CentralityValues::Exact(x) => Value::String(x[i].to_string()),
                    CentralityValues::Float(x) => json!(x[i]),
                };
                (l.clone(), v)
            })
            .collect();
        let center: Vec<&str> = self.center().into_iter().map(|i| self.labels[i].as_str()).collect();
        let mut s = serializer.serialize_struct("CentralityReport", 4)?;
        s.serialize_field("kind", &self.kind)?;
        s.serialize_field("parameters", &self.parameters)?;
        s.serialize_field("values", &values)?;
        s.serialize_field("center", &center)?;
        s.end()
    }
}

fn report(h: &Hypergraph, kind: CentralityKind, values: CentralityValues, parameters: Value) -> CentralityReport {
    let Value::Object(parameters) = parameters else {
        unreachable!("parameters are built with json!({{..}})")
    };
    CentralityReport {
        kind,
        labels: h.vertices().to_vec(),
        values,
        parameters,
    }
}

/// `c_r(v) = |V| / Σ_u E_u^v`.
pub fn rw_closeness(h: &Hypergraph, policy: WalkPolicy, convention: ReturnConvention) -> Result<CentralityReport> {
    let name = policy.name();
    let p = transition_matrix(h, policy)?;
    let n = Rational::from_integer(h.num_vertices().into());
    let values = h
        .vertices()
        .par_iter()
        .map(|v| {
            let times = hitting_times(&p, v, convention)?;
            let total = times.times.iter().fold(Rational::zero(), |acc, t| acc + t);
            Ok(&n / total)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report(
        h,
        CentralityKind::RwCloseness,
        CentralityValues::Exact(values),
        json!({ "policy": name, "convention": convention }),
    ))
}

type IntMatrix = Vec<Vec<BigInt>>;

fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// `Σ_{t=0}^{T} d^{T−t} Nᵗ`, which is `d^T Σ_t Pᵗ` for `P = N / d`.
fn scaled_power_sum(n: &IntMatrix, d: &BigInt, horizon: usize) -> IntMatrix {
    let mut power = int_identity(n.len());
    let mut sum = power.clone();
    for _ in 0..horizon {
        power = int_mul(&power, n);
        for (srow, prow) in sum.iter_mut().zip(&power) {
            for (s, p) in srow.iter_mut().zip(prow) {
                *s = &*s * d + p;
            }
        }
    }
    sum
}

/// Truncated `c_B(w) = Σ_{u,v ≠ w} N_T(u,v) / D_T(u,v)` where `D_T` sums
/// `Pᵗ_uv` and `N_T` sums the mass of paths through `w`, both over
/// `0 ≤ t ≤ T`. Pairs with `D_T = 0` contribute nothing.
///
/// Both sums carry the same factor `d^T` once `P` is written as `N / d`
/// with integer `N`, so they are accumulated as integers and only the
/// final ratios are reduced.
pub fn rw_betweenness(h: &Hypergraph, policy: WalkPolicy, horizon: usize) -> Result<CentralityReport> {
    if horizon == 0 {
        return Err(Error::BadHorizon);
    }
    let name = policy.name();
    let p = transition_matrix(h, policy)?;
    let size = p.len();
    let d = p
        .p
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let n: IntMatrix = (0..size)
        .map(|u| p.p.row(u).iter().map(|x| x.numer() * (&d / x.denom())).collect())
        .collect();
    let full = scaled_power_sum(&n, &d, horizon);
    let values = (0..size)
        .into_par_iter()
        .map(|w| {
            let rest: Vec<usize> = (0..size).filter(|&i| i != w).collect();
            let taboo: IntMatrix = rest.iter().map(|&u| rest.iter().map(|&v| n[u][v].clone()).collect()).collect();
            let avoiding = scaled_power_sum(&taboo, &d, horizon);
            let mut total = Rational::zero();
            for (i, &u) in rest.iter().enumerate() {
                for (j, &v) in rest.iter().enumerate() {
                    let all = &full[u][v];
                    if !all.is_zero() {
                        total += Rational::new(all - &avoiding[i][j], all.clone());
                    }
                }
            }
            total
        })
        .collect();
    Ok(report(
        h,
        CentralityKind::RwBetweenness,
        CentralityValues::Exact(values),
        json!({ "policy": name, "horizon": horizon }),
    ))
}

/// `Γ_H`: units as nodes, joined when some hyperedge contains both.
#[derive(Clone, Debug)]
pub struct GraphProjection {
    pub units: UnitDecomposition,
    pub adjacency: Vec<BTreeSet<usize>>,
}

impl GraphProjection {
    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, nbrs)| nbrs.range(i + 1..).map(move |&j| (i, j)))
            .collect()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(&j)
    }

    /// BFS distances between units; `None` when unreachable.
    pub fn distances(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.len())
            .map(|s| {
                let mut dist = vec![None; self.len()];
                dist[s] = Some(0);
                let mut queue = VecDeque::from([s]);
                while let Some(x) = queue.pop_front() {
                    let next = dist[x].map(|d| d + 1);
                    for &y in &self.adjacency[x] {
                        if dist[y].is_none() {
                            dist[y] = next;
                            queue.push_back(y);
                        }
                    }
                }
                dist
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.distances().first().is_none_or(|row| row.iter().all(Option::is_some))
    }

    /// The pseudometric `d̂(u, v)` between vertices, or `Disconnected`.
    pub fn vertex_distances(&self) -> Result<Vec<Vec<usize>>> {
        let units = self.distances();
        let of = &self.units.unit_of;
        of.iter()
            .map(|&a| of.iter().map(|&b| units[a][b].ok_or(Error::Disconnected)).collect())
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph projection {\n");
        for i in 0..self.len() {
            let _ = writeln!(out, "  u{i} [label={}];", quote(&self.units.unit_label(i)));
        }
        for (i, j) in self.edges() {
            let _ = writeln!(out, "  u{i} -- u{j};");
        }
        out.push_str("}\n");
        out
    }
}

impl Serialize for GraphProjection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let nodes: Vec<String> = (0..self.len()).map(|i| self.units.unit_label(i)).collect();
        let edges: Vec<[&str; 2]> = self
            .edges()
            .into_iter()
            .map(|(i, j)| [nodes[i].as_str(), nodes[j].as_str()])
            .collect();
        let mut s = serializer.serialize_struct("GraphProjection", 2)?;
        s.serialize_field("nodes", &nodes)?;
        s.serialize_field("edges", &edges)?;
        s.end()
    }
}

pub fn graph_projection(h: &Hypergraph) -> GraphProjection {
    let units = units(h);
    let mut adjacency = vec![BTreeSet::new(); units.len()];
    for e in 0..h.num_edges() {
        let inside: BTreeSet<usize> = h.members(e).iter().map(|&v| units.unit_of[v]).collect();
        for &a in &inside {
            for &b in &inside {
                if a != b {
                    adjacency[a].insert(b);
                }
            }
        }
    }
    GraphProjection { units, adjacency }
}

/// `cl(v) = 1 / Σ_u d̂(u, v)`.
pub fn unit_closeness(h: &Hypergraph) -> Result<CentralityReport> {
    if h.num_edges() < 2 {
        return Err(Error::TooFewEdges(h.num_edges()));
    }
    let dist = graph_projection(h).vertex_distances()?;
    let values = dist
        .iter()
        .map(|row| {
            let status: usize = row.iter().sum();
            if status == 0 {
                return Err(Error::TooFewEdges(h.num_edges()));
            }
            Ok(Rational::new(1.into(), status.into()))
        })
        .collect::<Result<_>>()?;
    Ok(report(h, CentralityKind::UnitCloseness, CentralityValues::Exact(values), json!({})))
}

/// `e(v) = max_u d̂(v, u)`.
pub fn unit_eccentricity(h: &Hypergraph) -> Result<CentralityReport> {
    let dist = graph_projection(h).vertex_distances()?;
    let values = dist
        .iter()
        .map(|row| Rational::from_integer(row.iter().copied().max().unwrap_or(0).into()))
        .collect();
    Ok(report(h, CentralityKind::UnitEccentricity, CentralityValues::Exact(values), json!({})))
}

/// Result of power iteration on `M_V = I diag(w) Iᵀ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerronVector {
    /// Positive, max-norm 1.
    pub vector: Vec<f64>,
    /// Rayleigh quotient at the final iterate.
    pub radius: f64,
    /// `max |M_V c − ρ c|`.
    pub residual: f64,
    pub iterations: usize,
}

pub const PERRON_MAX_ITERATIONS: usize = 100_000;

/// Power iteration from the all-ones vector until successive normalized
/// iterates differ by less than `tol` in max norm.
pub fn perron_vector(h: &Hypergraph, w_edge: &[Rational], tol: f64) -> Result<PerronVector> {
    if w_edge.len() != h.num_edges() {
        return Err(Error::WeightDomainMismatch(format!(
            "{} weights for {} hyperedges",
            w_edge.len(),
            h.num_edges()
        )));
    }
    if let Some(bad) = w_edge.iter().find(|w| **w <= Rational::zero()) {
        return Err(Error::InvalidWeight(format!("weight {bad} is not positive")));
    }
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = h.num_vertices();
    let w: Vec<f64> = w_edge.iter().map(to_f64).collect();
    let m: Vec<Vec<f64>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| h.star_of(u).intersection(h.star_of(v)).map(|&e| w[e]).sum())
                .collect()
        })
        .collect();
    let apply = |x: &[f64]| -> Vec<f64> { m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect() };
    let mut x = vec![1.0; n];
    for iterations in 1..=PERRON_MAX_ITERATIONS {
        let y = apply(&x);
        let scale = y.iter().copied().fold(0.0, f64::max);
        let y: Vec<f64> = y.iter().map(|v| v / scale).collect();
        let delta = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        if delta < tol {
            let mx = apply(&x);
            let radius = mx.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() / x.iter().map(|v| v * v).sum::<f64>();
            let residual = mx.iter().zip(&x).map(|(a, b)| (a - radius * b).abs()).fold(0.0, f64::max);
            return Ok(PerronVector {
                vector: x,
                radius,
                residual,
                iterations,
            });
        }
    }
    Err(Error::NoConvergence(PERRON_MAX_ITERATIONS))
}

pub fn perron_centrality(h: &Hypergraph, w_edge: &[Rational], tol: f64) -> Result<CentralityReport> {
    let pv = perron_vector(h, w_edge, tol)?;
    Ok(report(
        h,
        CentralityKind::Perron,
        CentralityValues::Float(pv.vector),
        json!({
            "tol": tol,
            "radius": pv.radius,
            "residual": pv.residual,
            "iterations": pv.iterations,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hypergraph::Format;
    use crate::linalg::{rat, ratio};

    fn parse(text: &str) -> Hypergraph {
        Hypergraph::parse(text, Format::Lines).unwrap()
    }

    fn path() -> Hypergraph {
        parse("e: a b\nf: b c")
    }

    #[test]
    fn flip_chain_closeness() {
        let r = rw_closeness(&parse("e: a b"), WalkPolicy::UniformNonLazy, ReturnConvention::FirstReturn).unwrap();
        assert_eq!(r.exact().unwrap(), [ratio(2, 3), ratio(2, 3)]);
        let r = rw_closeness(&parse("e: a b"), WalkPolicy::UniformNonLazy, ReturnConvention::Zero).unwrap();
        assert_eq!(r.exact().unwrap(), [rat(2), rat(2)]);
    }

    #[test]
    fn vertex_transitive_closeness_is_constant() {
        let h = fixtures::circulant(5);
        let r = rw_closeness(&h, WalkPolicy::UniformNonLazy, ReturnConvention::FirstReturn).unwrap();
        let x = r.exact().unwrap();
        assert!(x.iter().all(|v| *v == x[0]));
        assert_eq!(r.center().len(), 5);
    }

    #[test]
    fn betweenness_on_a_path() {
        let h = path();
        let r = rw_betweenness(&h, WalkPolicy::UniformNonLazy, 50).unwrap();
        let x = r.exact().unwrap();
        assert!(x[1] > x[0]);
        assert_eq!(x[0], x[2]);
        assert_eq!(r.center(), [1]);
    }

    #[test]
    fn horizon_one_betweenness_vanishes() {
        let h = fixtures::h_a();
        let r = rw_betweenness(&h, WalkPolicy::UniformNonLazy, 1).unwrap();
        assert!(r.exact().unwrap().iter().all(Zero::is_zero));
        assert_eq!(rw_betweenness(&h, WalkPolicy::UniformNonLazy, 0).unwrap_err(), Error::BadHorizon);
    }

    #[test]
    fn betweenness_matches_rational_powers() {
        // direct route on a tiny chain: w = b separates a and c
        let h = path();
        let t = 4;
        let p = transition_matrix(&h, WalkPolicy::UniformNonLazy).unwrap().p;
        let mut taboo = p.clone();
        for k in 0..3 {
            taboo.set(1, k, Rational::zero());
            taboo.set(k, 1, Rational::zero());
        }
        let sums = |m: &crate::linalg::RationalMatrix| {
            let mut power = crate::linalg::RationalMatrix::identity(3);
            let mut acc = power.clone();
            for _ in 0..t {
                power = power.mul(m).unwrap();
                acc = acc.add(&power).unwrap();
            }
            acc
        };
        let (all, avoid) = (sums(&p), sums(&taboo));
        let mut expected = Rational::zero();
        for u in [0, 2] {
            for v in [0, 2] {
                if !all.get(u, v).is_zero() {
                    expected += (all.get(u, v) - avoid.get(u, v)) / all.get(u, v);
                }
            }
        }
        let r = rw_betweenness(&h, WalkPolicy::UniformNonLazy, t).unwrap();
        assert_eq!(r.exact().unwrap()[1], expected);
    }

    #[test]
    fn projection_of_units_fixture() {
        let g = graph_projection(&fixtures::h_units());
        assert_eq!(g.len(), 6);
        let unit = |label: &str| (0..g.len()).find(|&i| g.units.unit_label(i) == label).unwrap();
        assert!(g.adjacent(unit("{1,2}"), unit("{3,4}")));
        assert!(!g.adjacent(unit("{5,6,7}"), unit("{3,4}")));
        assert!(g.is_connected());
        assert!(g.to_dot().contains("\"{5,6,7}\""));

        let single = graph_projection(&parse("e: a b c"));
        assert_eq!((single.len(), single.edges().len()), (1, 0));
    }

    #[test]
    fn unit_closeness_on_path() {
        let r = unit_closeness(&path()).unwrap();
        let x = r.exact().unwrap();
        // units {a}, {b}, {c}: statuses 3, 2, 3
        assert_eq!(x, [ratio(1, 3), ratio(1, 2), ratio(1, 3)]);
        assert_eq!(unit_closeness(&parse("e: a b")).unwrap_err(), Error::TooFewEdges(1));
        assert_eq!(unit_closeness(&parse("e: a b\nf: c d")).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn unit_eccentricity_on_path() {
        let r = unit_eccentricity(&path()).unwrap();
        assert_eq!(r.exact().unwrap(), [2, 1, 2].map(rat));
        assert_eq!(r.center(), [1]);
        let r = unit_eccentricity(&parse("e: a b c")).unwrap();
        assert!(r.exact().unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn perron_single_edge() {
        let h = parse("e: a b");
        let pv = perron_vector(&h, &[rat(1)], 1e-12).unwrap();
        assert_eq!(pv.vector, [1.0, 1.0]);
        assert!((pv.radius - 2.0).abs() < 1e-12);
    }

    #[test]
    fn perron_scale_invariance() {
        let h = fixtures::h_a();
        let w1: Vec<_> = (1..=5).map(rat).collect();
        let w2: Vec<_> = (1..=5).map(|i| rat(7 * i)).collect();
        let a = perron_vector(&h, &w1, 1e-12).unwrap();
        let b = perron_vector(&h, &w2, 1e-12).unwrap();
        for (x, y) in a.vector.iter().zip(&b.vector) {
            assert!((x - y).abs() < 1e-9);
        }
        assert!((b.radius / a.radius - 7.0).abs() < 1e-9);
        assert!(a.residual < 1e-10);
    }

    #[test]
    fn perron_preconditions() {
        let h = parse("e: a b\nf: c d");
        assert_eq!(perron_vector(&h, &[rat(1), rat(1)], 1e-12).unwrap_err(), Error::Disconnected);
        assert!(matches!(perron_vector(&h, &[rat(1)], 1e-12), Err(Error::WeightDomainMismatch(_))));
    }

    #[test]
    fn report_json() {
        let r = unit_eccentricity(&path()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["kind"], "unit-eccentricity");
        assert_eq!(v["values"]["a"], "2");
        assert_eq!(v["center"], json!(["b"]));
    }
}
