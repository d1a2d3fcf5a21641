//! Substructures witnessed by linear dependence among incidence rows and
//! columns: dependent sets, units, unit contraction, equal partitions of
//! hyperedges and stars, and covering projections.
//!
//! Every detector returns a [`Certificate`], a coefficient vector that the
//! named matrix annihilates exactly, so results can be re-checked without
//! trusting the search that found them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::{quote, Axis, Hypergraph};
use crate::linalg::{format_rational, is_zero_vector, primitive_integer, rat, Rational, RationalMatrix};

/// Matrix that annihilates a certificate's coefficient vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Annihilator {
    /// `I_Hᵀ`, acting on vectors indexed by vertices.
    #[serde(rename = "I_H^T")]
    IncidenceTranspose,
    /// `I_H`, acting on vectors indexed by hyperedges.
    #[serde(rename = "I_H")]
    Incidence,
    /// Adjacency of the incidence graph, on vertices followed by hyperedges.
    #[serde(rename = "A_GH")]
    IncidenceGraphAdjacency,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    DependentVertices,
    DependentHyperedges,
    EqualEdgePartition,
    EqualStarPartition,
    StarPartition,
    UnitWitness,
}

impl CertificateKind {
    pub fn annihilator(self) -> Annihilator {
        match self {
            CertificateKind::DependentVertices
            | CertificateKind::EqualEdgePartition
            | CertificateKind::StarPartition => Annihilator::IncidenceTranspose,
            CertificateKind::DependentHyperedges | CertificateKind::EqualStarPartition => {
                Annihilator::Incidence
            }
            CertificateKind::UnitWitness => Annihilator::IncidenceGraphAdjacency,
        }
    }
}

/// A coefficient vector witnessing a linear dependence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub annihilated_by: Annihilator,
    /// Axis labels the coefficients are indexed by.
    pub labels: Vec<String>,
    pub coefficients: Vec<Rational>,
    /// Labels with a nonzero coefficient, in axis order.
    pub support: Vec<String>,
}

impl Certificate {
    pub fn new(kind: CertificateKind, labels: Vec<String>, coefficients: Vec<Rational>) -> Self {
        assert_eq!(labels.len(), coefficients.len(), "one coefficient per label");
        let support = labels
            .iter()
            .zip(&coefficients)
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, _)| l.clone())
            .collect();
        Self {
            kind,
            annihilated_by: kind.annihilator(),
            labels,
            coefficients,
            support,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn coefficient(&self, label: &str) -> Option<&Rational> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.coefficients[i])
    }

    /// The matrix this certificate claims to lie in the nullspace of.
    pub fn annihilating_matrix(&self, h: &Hypergraph) -> RationalMatrix {
        match self.annihilated_by {
            Annihilator::IncidenceTranspose => h.incidence_matrix().transpose(),
            Annihilator::Incidence => h.incidence_matrix(),
            Annihilator::IncidenceGraphAdjacency => incidence_graph_adjacency(h),
        }
    }

    /// Exact soundness check against `h`: labels match the annihilator's
    /// column axis, the support is consistent and the product is zero.
    pub fn verify(&self, h: &Hypergraph) -> bool {
        let m = self.annihilating_matrix(h);
        if m.col_labels() != self.labels.as_slice() {
            return false;
        }
        let support_ok = self
            .labels
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, _)| l)
            .eq(self.support.iter());
        support_ok && m.mul_vec(&self.coefficients).is_ok_and(|r| is_zero_vector(&r))
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            kind: CertificateKind,
            annihilated_by: Annihilator,
            support: &'a [String],
            coefficients: BTreeMapInOrder<'a>,
        }
        Out {
            kind: self.kind,
            annihilated_by: self.annihilated_by,
            support: &self.support,
            coefficients: BTreeMapInOrder(&self.labels, &self.coefficients),
        }
        .serialize(serializer)
    }
}

/// Serializes parallel label/value slices as an insertion-ordered JSON object.
struct BTreeMapInOrder<'a>(&'a [String], &'a [Rational]);

impl Serialize for BTreeMapInOrder<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (l, v) in self.0.iter().zip(self.1) {
            map.serialize_entry(l, &format_rational(v))?;
        }
        map.end()
    }
}

/// Labels for the incidence-graph axis: vertices then hyperedges. When a
/// vertex and a hyperedge share a label both sides get a `v:`/`e:` prefix.
pub fn incidence_graph_labels(h: &Hypergraph) -> Vec<String> {
    let clash = h
        .edge_labels()
        .iter()
        .any(|e| h.vertex_index(e).is_some());
    if clash {
        h.vertices()
            .iter()
            .map(|v| format!("v:{v}"))
            .chain(h.edge_labels().iter().map(|e| format!("e:{e}")))
            .collect()
    } else {
        h.vertices().iter().chain(h.edge_labels()).cloned().collect()
    }
}

/// `A_{G_H} = [[0, I_H], [I_Hᵀ, 0]]`.
pub fn incidence_graph_adjacency(h: &Hypergraph) -> RationalMatrix {
    let n = h.num_vertices();
    let size = n + h.num_edges();
    let mut m = RationalMatrix::zeros(size, size);
    for e in 0..h.num_edges() {
        for &v in h.members(e) {
            m.set(v, n + e, Rational::one());
            m.set(n + e, v, Rational::one());
        }
    }
    let labels = incidence_graph_labels(h);
    m.with_labels(labels.clone(), labels)
        .expect("incidence graph labels are unique")
}

fn first_nullspace_vector(m: &RationalMatrix) -> Option<Vec<Rational>> {
    m.nullspace().vectors.into_iter().next().map(|v| primitive_integer(&v))
}

/// A vertex-dependence certificate (`I_Hᵀ c = 0`), or `None` when the rows
/// of the incidence matrix are independent.
pub fn dependent_vertices(h: &Hypergraph) -> Option<Certificate> {
    let it = h.incidence_matrix().transpose();
    first_nullspace_vector(&it)
        .map(|c| Certificate::new(CertificateKind::DependentVertices, h.vertices().to_vec(), c))
}

/// A hyperedge-dependence certificate (`I_H c = 0`), or `None`.
pub fn dependent_hyperedges(h: &Hypergraph) -> Option<Certificate> {
    first_nullspace_vector(&h.incidence_matrix())
        .map(|c| Certificate::new(CertificateKind::DependentHyperedges, h.edge_labels().to_vec(), c))
}

/// Whether the labelled subset of one axis is linearly dependent; the
/// returned certificate is supported inside the subset.
pub fn is_dependent_set(h: &Hypergraph, subset: &[impl AsRef<str>], axis: Axis) -> Result<Option<Certificate>> {
    let mut idx = h.resolve(axis, subset)?;
    idx.sort_unstable();
    idx.dedup();
    if idx.is_empty() {
        return Ok(None);
    }
    let incidence = h.incidence_matrix();
    let (restricted, labels, kind) = match axis {
        Axis::Vertices => (
            incidence.select_rows(&idx).transpose(),
            h.vertices().to_vec(),
            CertificateKind::DependentVertices,
        ),
        Axis::Hyperedges => (
            incidence.select_cols(&idx),
            h.edge_labels().to_vec(),
            CertificateKind::DependentHyperedges,
        ),
    };
    Ok(first_nullspace_vector(&restricted).map(|local| {
        let mut full = vec![Rational::zero(); labels.len()];
        for (pos, c) in idx.iter().zip(local) {
            full[*pos] = c;
        }
        Certificate::new(kind, labels, full)
    }))
}

/// A maximal set of vertices sharing one star.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unit {
    /// The common star, as hyperedge labels in edge order.
    pub generator: Vec<String>,
    /// Member vertex labels in vertex order.
    pub members: Vec<String>,
}

/// Partition of `V(H)` into units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitDecomposition {
    pub units: Vec<Unit>,
    /// `unit_of[v]` is the index of the unit containing vertex `v`.
    #[serde(skip)]
    pub unit_of: Vec<usize>,
    #[serde(skip)]
    pub member_indices: Vec<Vec<usize>>,
}

impl UnitDecomposition {
    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    /// `Σ_W (|W| − 1)`: the nullity units alone force on `A_{G_H}`.
    pub fn excess(&self) -> usize {
        self.member_indices.iter().map(|m| m.len() - 1).sum()
    }

    pub fn same_unit(&self, u: usize, v: usize) -> bool {
        self.unit_of[u] == self.unit_of[v]
    }

    /// Label used for a unit when it becomes a vertex of the contraction.
    pub fn unit_label(&self, unit: usize) -> String {
        format!("{{{}}}", self.units[unit].members.join(","))
    }
}

/// Groups vertices by equal stars. Units are ordered by their first member
/// in vertex order; isolated vertices form a unit with an empty generator.
pub fn units(h: &Hypergraph) -> UnitDecomposition {
    let mut by_star: HashMap<&BTreeSet<usize>, usize> = HashMap::new();
    let mut member_indices: Vec<Vec<usize>> = Vec::new();
    let mut unit_of = Vec::with_capacity(h.num_vertices());
    for v in 0..h.num_vertices() {
        let next = member_indices.len();
        let u = *by_star.entry(h.star_of(v)).or_insert(next);
        if u == next {
            member_indices.push(Vec::new());
        }
        member_indices[u].push(v);
        unit_of.push(u);
    }
    let units = member_indices
        .iter()
        .map(|m| Unit {
            generator: h.star_of(m[0]).iter().map(|&e| h.edge_label(e).to_string()).collect(),
            members: m.iter().map(|&v| h.vertex(v).to_string()).collect(),
        })
        .collect();
    UnitDecomposition {
        units,
        unit_of,
        member_indices,
    }
}

/// The unit contraction `H/R_u(H)` together with the quotient maps.
#[derive(Clone, Debug)]
pub struct ContractionMap {
    pub contracted: Hypergraph,
    pub decomposition: UnitDecomposition,
    /// `vertex_map[v]` = unit index (= contracted vertex index) of `v`.
    pub vertex_map: Vec<usize>,
    /// `edge_map[e]` = contracted hyperedge index of `e`.
    pub edge_map: Vec<usize>,
}

impl ContractionMap {
    /// The vertex map as a label-to-label projection onto the contraction.
    pub fn projection(&self, h: &Hypergraph) -> BTreeMap<String, String> {
        (0..h.num_vertices())
            .map(|v| {
                (
                    h.vertex(v).to_string(),
                    self.contracted.vertex(self.vertex_map[v]).to_string(),
                )
            })
            .collect()
    }

    pub fn edge_map_is_bijective(&self) -> bool {
        let image: BTreeSet<usize> = self.edge_map.iter().copied().collect();
        image.len() == self.edge_map.len() && image.len() == self.contracted.num_edges()
    }

    /// DOT rendering with units as boxes.
    pub fn to_dot(&self) -> String {
        let c = &self.contracted;
        let mut out = String::from("graph contraction {\n");
        for v in c.vertices() {
            let _ = writeln!(out, "  {} [shape=box];", quote(&format!("u:{v}")));
        }
        for e in c.edge_labels() {
            let _ = writeln!(out, "  {} [label={}, shape=point];", quote(&format!("e:{e}")), quote(e));
        }
        for e in 0..c.num_edges() {
            for &v in c.members(e) {
                let _ = writeln!(
                    out,
                    "  {} -- {};",
                    quote(&format!("u:{}", c.vertex(v))),
                    quote(&format!("e:{}", c.edge_label(e)))
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Contracts every unit to a single vertex. Hyperedges keep their labels and
/// become `ẽ = {W : W ∩ e ≠ ∅}`.
pub fn unit_contraction(h: &Hypergraph) -> ContractionMap {
    let decomposition = units(h);
    let labels: Vec<String> = (0..decomposition.len()).map(|u| decomposition.unit_label(u)).collect();
    let edges: Vec<(String, Vec<String>)> = (0..h.num_edges())
        .map(|e| {
            let image: BTreeSet<usize> = h.members(e).iter().map(|&v| decomposition.unit_of[v]).collect();
            (
                h.edge_label(e).to_string(),
                image.into_iter().map(|u| labels[u].clone()).collect(),
            )
        })
        .collect();
    // Two hyperedges with the same unit image would have the same members,
    // which construction already forbids.
    let contracted = Hypergraph::new(labels, edges).expect("unit contraction is a valid hypergraph");
    ContractionMap {
        vertex_map: decomposition.unit_of.clone(),
        edge_map: (0..h.num_edges()).collect(),
        contracted,
        decomposition,
    }
}

/// The unit characterisation through the nullspace of `A_{G_H}`: every
/// difference vector `x_{v0,v}` over `W` is annihilated, and no vertex
/// outside `W` can be added with that property still holding.
pub fn verify_unit_maximality(h: &Hypergraph, subset: &[impl AsRef<str>]) -> Result<bool> {
    let mut idx = h.resolve(Axis::Vertices, subset)?;
    idx.sort_unstable();
    idx.dedup();
    if idx.len() < 2 {
        return Err(Error::TooSmall(idx.len()));
    }
    let a = incidence_graph_adjacency(h);
    let size = a.cols();
    let annihilated = |v0: usize, v: usize| {
        let mut x = vec![Rational::zero(); size];
        x[v0] = rat(-1);
        x[v] = rat(1);
        is_zero_vector(&a.mul_vec(&x).expect("vector sized to A_GH"))
    };
    let v0 = idx[0];
    if !idx[1..].iter().all(|&v| annihilated(v0, v)) {
        return Ok(false);
    }
    let inside: BTreeSet<usize> = idx.iter().copied().collect();
    Ok((0..h.num_vertices())
        .filter(|v| !inside.contains(v))
        .all(|u| !annihilated(v0, u)))
}

/// Lifts a nullspace vector of the contraction's incidence-graph adjacency to
/// one of `A_{G_H}`: unit coordinates are spread evenly over the unit's
/// members, hyperedge coordinates are copied.
pub fn contraction_nullspace_lift(h: &Hypergraph, contraction: &ContractionMap, z: &[Rational]) -> Result<Vec<Rational>> {
    let c = &contraction.contracted;
    let small = incidence_graph_adjacency(c);
    if z.len() != small.cols() {
        return Err(Error::DimensionMismatch {
            expected: small.cols(),
            found: z.len(),
        });
    }
    if !is_zero_vector(&small.mul_vec(z)?) {
        return Err(Error::NotInNullspace);
    }
    let units = &contraction.decomposition;
    let n = h.num_vertices();
    let mut lifted = Vec::with_capacity(n + h.num_edges());
    for v in 0..n {
        let u = contraction.vertex_map[v];
        let size = units.member_indices[u].len() as i64;
        lifted.push(&z[u] / rat(size));
    }
    for e in 0..h.num_edges() {
        lifted.push(z[c.num_vertices() + contraction.edge_map[e]].clone());
    }
    Ok(lifted)
}

fn disjoint_indices(h: &Hypergraph, axis: Axis, a: &[impl AsRef<str>], b: &[impl AsRef<str>]) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
    let a: BTreeSet<usize> = h.resolve(axis, a)?.into_iter().collect();
    let b: BTreeSet<usize> = h.resolve(axis, b)?.into_iter().collect();
    if let Some(&shared) = a.intersection(&b).next() {
        let label = match axis {
            Axis::Vertices => h.vertex(shared),
            Axis::Hyperedges => h.edge_label(shared),
        };
        return Err(Error::NotDisjoint(label.to_string()));
    }
    Ok((a, b))
}

fn signed_indicator(len: usize, plus: &BTreeSet<usize>, minus: &BTreeSet<usize>) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); len];
    for &i in plus {
        x[i] = rat(1);
    }
    for &i in minus {
        x[i] = rat(-1);
    }
    x
}

/// Outcome of an equal-partition-of-hyperedges check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgePartitionCheck {
    pub holds: bool,
    /// `(hyperedge, |U ∩ e|, |V ∩ e|)` for every hyperedge.
    pub per_edge: Vec<(String, usize, usize)>,
}

/// Checks `|U ∩ e| = |V ∩ e|` for every hyperedge by direct counting.
pub fn verify_equal_edge_partition(h: &Hypergraph, u: &[impl AsRef<str>], v: &[impl AsRef<str>]) -> Result<EdgePartitionCheck> {
    let (u, v) = disjoint_indices(h, Axis::Vertices, u, v)?;
    let per_edge: Vec<_> = (0..h.num_edges())
        .map(|e| {
            let m = h.members(e);
            (
                h.edge_label(e).to_string(),
                m.intersection(&u).count(),
                m.intersection(&v).count(),
            )
        })
        .collect();
    Ok(EdgePartitionCheck {
        holds: per_edge.iter().all(|(_, a, b)| a == b),
        per_edge,
    })
}

/// The certificate `χ_U − χ_V` if it is annihilated by `I_Hᵀ`.
pub fn equal_edge_partition_certificate(h: &Hypergraph, u: &[impl AsRef<str>], v: &[impl AsRef<str>]) -> Result<Option<Certificate>> {
    let (u, v) = disjoint_indices(h, Axis::Vertices, u, v)?;
    let x = signed_indicator(h.num_vertices(), &u, &v);
    let holds = is_zero_vector(&h.incidence_matrix().transpose().mul_vec(&x)?);
    Ok(holds.then(|| Certificate::new(CertificateKind::EqualEdgePartition, h.vertices().to_vec(), x)))
}

/// An equal partition of hyperedges as vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EdgePartition {
    pub u: Vec<String>,
    pub v: Vec<String>,
}

/// Default cap on `|U ∪ V|` for the exhaustive partition search.
pub const DEFAULT_MAX_SUPPORT: usize = 8;

/// All equal partitions `(U, V)` with `U ≠ ∅` and `|U ∪ V| ≤ max_support`.
///
/// Each unordered pair is reported once, oriented so that the first vertex
/// of `U ∪ V` (in vertex order) lies in `U`. Only vertices in the support of
/// the nullspace of `I_Hᵀ` can take part; the search assigns `+1/−1/0` to
/// those and prunes on per-edge imbalance.
pub fn find_equal_edge_partitions(h: &Hypergraph, max_support: usize) -> Vec<EdgePartition> {
    let basis = h.incidence_matrix().transpose().nullspace();
    let candidates: Vec<usize> = (0..h.num_vertices())
        .filter(|&v| basis.vectors.iter().any(|b| !b[v].is_zero()))
        .collect();
    if candidates.is_empty() || max_support == 0 {
        return Vec::new();
    }

    // remaining[i][e]: candidates at position >= i lying in e
    let m = h.num_edges();
    let mut remaining = vec![vec![0usize; m]; candidates.len() + 1];
    for i in (0..candidates.len()).rev() {
        remaining[i] = remaining[i + 1].clone();
        for &e in h.star_of(candidates[i]) {
            remaining[i][e] += 1;
        }
    }

    struct Search<'a> {
        h: &'a Hypergraph,
        candidates: &'a [usize],
        remaining: &'a [Vec<usize>],
        max_support: usize,
        balance: Vec<i64>,
        signs: Vec<i8>,
        used: usize,
        out: Vec<EdgePartition>,
    }

    impl Search<'_> {
        fn run(&mut self, pos: usize) {
            let budget = (self.max_support - self.used) as i64;
            let feasible = self
                .balance
                .iter()
                .zip(&self.remaining[pos])
                .all(|(&b, &r)| b.abs() <= budget.min(r as i64));
            if !feasible {
                return;
            }
            if pos == self.candidates.len() {
                if self.used > 0 && self.balance.iter().all(|&b| b == 0) {
                    self.emit();
                }
                return;
            }
            self.signs.push(0);
            self.run(pos + 1);
            self.signs.pop();
            if self.used == self.max_support {
                return;
            }
            let v = self.candidates[pos];
            let choices: &[i8] = if self.used == 0 { &[1] } else { &[1, -1] };
            for &s in choices {
                for &e in self.h.star_of(v) {
                    self.balance[e] += s as i64;
                }
                self.signs.push(s);
                self.used += 1;
                self.run(pos + 1);
                self.used -= 1;
                self.signs.pop();
                for &e in self.h.star_of(v) {
                    self.balance[e] -= s as i64;
                }
            }
        }

        fn emit(&mut self) {
            let pick = |want: i8| {
                self.candidates
                    .iter()
                    .zip(&self.signs)
                    .filter(|(_, &s)| s == want)
                    .map(|(&v, _)| self.h.vertex(v).to_string())
                    .collect()
            };
            self.out.push(EdgePartition { u: pick(1), v: pick(-1) });
        }
    }

    let mut search = Search {
        h,
        candidates: &candidates,
        remaining: &remaining,
        max_support: max_support.min(candidates.len()),
        balance: vec![0; m],
        signs: Vec::with_capacity(candidates.len()),
        used: 0,
        out: Vec::new(),
    };
    search.run(0);
    let mut out = search.out;
    let position = |l: &String| h.vertex_index(l).expect("label from hypergraph");
    out.sort_by_key(|p| {
        (
            p.u.len() + p.v.len(),
            p.u.iter().map(position).collect::<Vec<_>>(),
            p.v.iter().map(position).collect::<Vec<_>>(),
        )
    });
    out
}

/// Whether the stars of `parts` partition the star of `v0`. Cross-checked
/// against `I_Hᵀ x = 0` with `x(v0) = −1` and `x = +1` on the parts.
pub fn verify_star_partition(h: &Hypergraph, v0: &str, parts: &[impl AsRef<str>]) -> Result<bool> {
    let centre = h
        .vertex_index(v0)
        .ok_or_else(|| Error::UnknownLabel(v0.to_string()))?;
    let parts: BTreeSet<usize> = h.resolve(Axis::Vertices, parts)?.into_iter().collect();
    if parts.contains(&centre) {
        return Err(Error::Overlap(v0.to_string()));
    }
    let mut covered = BTreeSet::new();
    let mut disjoint = true;
    for &p in &parts {
        for &e in h.star_of(p) {
            disjoint &= covered.insert(e);
        }
    }
    let combinatorial = disjoint && &covered == h.star_of(centre);

    let algebraic = star_partition_certificate(h, centre, &parts).verify(h);
    debug_assert_eq!(combinatorial, algebraic);
    Ok(combinatorial)
}

fn star_partition_certificate(h: &Hypergraph, centre: usize, parts: &BTreeSet<usize>) -> Certificate {
    let x = signed_indicator(h.num_vertices(), parts, &BTreeSet::from([centre]));
    Certificate::new(CertificateKind::StarPartition, h.vertices().to_vec(), x)
}

/// Checks `|E_v ∩ E| = |E_v ∩ F|` for every vertex.
pub fn verify_equal_star_partition(h: &Hypergraph, e: &[impl AsRef<str>], f: &[impl AsRef<str>]) -> Result<bool> {
    let (e, f) = disjoint_indices(h, Axis::Hyperedges, e, f)?;
    Ok((0..h.num_vertices()).all(|v| {
        let star = h.star_of(v);
        star.intersection(&e).count() == star.intersection(&f).count()
    }))
}

/// The certificate `χ_E − χ_F` if annihilated by `I_H`.
pub fn equal_star_partition_certificate(h: &Hypergraph, e: &[impl AsRef<str>], f: &[impl AsRef<str>]) -> Result<Option<Certificate>> {
    let (e, f) = disjoint_indices(h, Axis::Hyperedges, e, f)?;
    let y = signed_indicator(h.num_edges(), &e, &f);
    let holds = is_zero_vector(&h.incidence_matrix().mul_vec(&y)?);
    Ok(holds.then(|| Certificate::new(CertificateKind::EqualStarPartition, h.edge_labels().to_vec(), y)))
}

/// Classification of a vertex map between hypergraphs, from weakest to
/// strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ProjectionClass {
    NotHomomorphism,
    Homomorphism,
    Covering,
    CardinalityPreservingCovering,
}

fn resolve_map(h: &Hypergraph, base: &Hypergraph, f: &BTreeMap<String, String>) -> Result<Vec<usize>> {
    for key in f.keys() {
        if h.vertex_index(key).is_none() {
            return Err(Error::UnknownLabel(key.clone()));
        }
    }
    h.vertices()
        .iter()
        .map(|v| {
            let image = f.get(v).ok_or_else(|| Error::UnknownLabel(v.clone()))?;
            base.vertex_index(image)
                .ok_or_else(|| Error::UnknownLabel(image.clone()))
        })
        .collect()
}

/// Image hyperedge index of every hyperedge of `h`, or `None` if some image
/// is not a hyperedge of `base`.
fn edge_images(h: &Hypergraph, base: &Hypergraph, map: &[usize]) -> Option<Vec<usize>> {
    let mut lookup: HashMap<&BTreeSet<usize>, usize> = HashMap::new();
    for e in 0..base.num_edges() {
        lookup.insert(base.members(e), e);
    }
    (0..h.num_edges())
        .map(|e| {
            let image: BTreeSet<usize> = h.members(e).iter().map(|&v| map[v]).collect();
            lookup.get(&image).copied()
        })
        .collect()
}

/// Classifies `f : V(H) → V(H̄)`.
pub fn verify_covering_projection(h: &Hypergraph, base: &Hypergraph, f: &BTreeMap<String, String>) -> Result<ProjectionClass> {
    let map = resolve_map(h, base, f)?;
    let Some(images) = edge_images(h, base, &map) else {
        return Ok(ProjectionClass::NotHomomorphism);
    };
    let surjective = map.iter().copied().collect::<BTreeSet<_>>().len() == base.num_vertices();
    let locally_bijective = (0..h.num_vertices()).all(|v| {
        let image: BTreeSet<usize> = h.star_of(v).iter().map(|&e| images[e]).collect();
        image.len() == h.degree(v) && &image == base.star_of(map[v])
    });
    if !(surjective && locally_bijective) {
        return Ok(ProjectionClass::Homomorphism);
    }
    let preserving = (0..h.num_edges()).all(|e| h.edge_size(e) == base.edge_size(images[e]));
    Ok(if preserving {
        ProjectionClass::CardinalityPreservingCovering
    } else {
        ProjectionClass::Covering
    })
}

/// Pulls a vertex-dependence certificate of `base` back along a
/// cardinality-preserving covering projection: `x(u) = c(f(u))`.
pub fn pullback_dependent_set(
    h: &Hypergraph,
    base: &Hypergraph,
    f: &BTreeMap<String, String>,
    cert: &Certificate,
) -> Result<Certificate> {
    if verify_covering_projection(h, base, f)? != ProjectionClass::CardinalityPreservingCovering {
        return Err(Error::NotCardinalityPreserving);
    }
    if cert.annihilated_by != Annihilator::IncidenceTranspose {
        return Err(Error::InvalidCertificate(format!(
            "{:?} is not a vertex certificate",
            cert.kind
        )));
    }
    if !cert.verify(base) {
        return Err(Error::InvalidCertificate("not annihilated by I^T of the base".into()));
    }
    let map = resolve_map(h, base, f)?;
    let x: Vec<Rational> = map.iter().map(|&b| cert.coefficients[b].clone()).collect();
    let out = Certificate::new(cert.kind, h.vertices().to_vec(), x);
    assert!(out.verify(h), "pullback along a cardinality-preserving cover must verify");
    Ok(out)
}
