//! Hypergraph data model: parsing, stars, duals, incidence matrices and
//! incidence graphs.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use num_traits::One;
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix};

/// Input formats accepted by [`Hypergraph::parse`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// `{"vertices": [...], "hyperedges": {"e1": [...], ...}}`
    Json,
    /// One hyperedge per line, `label: v1 v2 ...`, with an optional
    /// `#vertices: ...` header for isolated vertices.
    Lines,
}

/// A finite hypergraph with ordered, labelled vertices and hyperedges.
///
/// Members are stored as vertex indices; vertex and hyperedge order is fixed
/// at construction so every derived matrix is deterministic.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    vertices: Vec<String>,
    edge_labels: Vec<String>,
    members: Vec<BTreeSet<usize>>,
    stars: Vec<BTreeSet<usize>>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edge_labels == other.edge_labels
            && self.members == other.members
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Builds a hypergraph from declared vertices and labelled member lists.
    pub fn new<V, E, M>(vertices: V, hyperedges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, M)>,
        M: IntoIterator,
        M::Item: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }

        let mut edge_labels: Vec<String> = Vec::new();
        let mut members = Vec::new();
        let mut edge_index = HashMap::new();
        let mut seen_sets: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        for (label, list) in hyperedges {
            let mut set = BTreeSet::new();
            for m in list {
                let m = m.as_ref();
                let idx = *vertex_index
                    .get(m)
                    .ok_or_else(|| Error::UnknownVertex(m.to_string()))?;
                set.insert(idx);
            }
            if set.is_empty() {
                return Err(Error::EmptyHyperedge(label));
            }
            if let Some(&prev) = seen_sets.get(&set) {
                return Err(Error::DuplicateHyperedgeSet {
                    first: edge_labels[prev].clone(),
                    second: label,
                });
            }
            if edge_index.insert(label.clone(), edge_labels.len()).is_some() {
                return Err(Error::DuplicateLabel(label));
            }
            seen_sets.insert(set.clone(), edge_labels.len());
            edge_labels.push(label);
            members.push(set);
        }

        let mut stars = vec![BTreeSet::new(); vertices.len()];
        for (e, set) in members.iter().enumerate() {
            for &v in set {
                stars[v].insert(e);
            }
        }
        Ok(Self {
            vertices,
            edge_labels,
            members,
            stars,
            vertex_index,
            edge_index,
        })
    }

    /// Builds a hypergraph whose vertex set is inferred from the hyperedges
    /// in first-appearance order.
    pub fn from_edges<L, M, S>(hyperedges: impl IntoIterator<Item = (L, M)>) -> Result<Self>
    where
        L: Into<String>,
        M: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let edges: Vec<(String, Vec<String>)> = hyperedges
            .into_iter()
            .map(|(l, m)| (l.into(), m.into_iter().map(Into::into).collect()))
            .collect();
        let mut vertices: Vec<String> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (_, m) in &edges {
            for v in m {
                if seen.insert(v.clone()) {
                    vertices.push(v.clone());
                }
            }
        }
        Self::new(vertices, edges)
    }

    pub fn parse(text: &str, format: Format) -> Result<Self> {
        match format {
            Format::Json => Self::from_json(text),
            Format::Lines => Self::from_lines(text),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: JsonHypergraph = serde_json::from_str(text).map_err(|e| Error::SyntaxError {
            line: e.line(),
            message: e.to_string(),
        })?;
        raw.into_hypergraph()
    }

    pub fn from_lines(text: &str) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut edges: Vec<(String, Vec<String>)> = Vec::new();
        let mut declare = |v: &str, vertices: &mut Vec<String>| {
            if seen.insert(v.to_string()) {
                vertices.push(v.to_string());
            }
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(list) = rest.trim_start().strip_prefix("vertices:") {
                    for v in list.split_whitespace() {
                        declare(v, &mut vertices);
                    }
                }
                continue;
            }
            let Some((label, list)) = line.split_once(':') else {
                return Err(Error::SyntaxError {
                    line: lineno + 1,
                    message: "expected `label: v1 v2 ...`".into(),
                });
            };
            let label = label.trim();
            if label.is_empty() || label.contains(char::is_whitespace) {
                return Err(Error::SyntaxError {
                    line: lineno + 1,
                    message: format!("bad hyperedge label {label:?}"),
                });
            }
            let members: Vec<String> = list.split_whitespace().map(str::to_string).collect();
            for m in &members {
                declare(m, &mut vertices);
            }
            edges.push((label.to_string(), members));
        }
        Self::new(vertices, edges)
    }

    /// Canonical, order-preserving JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serialization is infallible")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("hypergraph serialization is infallible")
    }

    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        // The header is needed whenever first appearance in the hyperedge
        // lines would not reproduce the vertex order.
        let mut appearance = Vec::with_capacity(self.num_vertices());
        let mut seen = vec![false; self.num_vertices()];
        for &v in self.members.iter().flatten() {
            if !std::mem::replace(&mut seen[v], true) {
                appearance.push(v);
            }
        }
        if !appearance.iter().copied().eq(0..self.num_vertices()) {
            let _ = writeln!(out, "#vertices: {}", self.vertices.join(" "));
        }
        for e in 0..self.num_edges() {
            let members: Vec<&str> = self.members[e].iter().map(|&v| self.vertices[v].as_str()).collect();
            let _ = writeln!(out, "{}: {}", self.edge_labels[e], members.join(" "));
        }
        out
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_labels.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge_labels(&self) -> &[String] {
        &self.edge_labels
    }

    pub fn vertex(&self, idx: usize) -> &str {
        &self.vertices[idx]
    }

    pub fn edge_label(&self, idx: usize) -> &str {
        &self.edge_labels[idx]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertex_index.get(label).copied()
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.edge_index.get(label).copied()
    }

    pub fn require_vertex(&self, label: &str) -> Result<usize> {
        self.vertex_index(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Resolves labels on either axis, reporting [`Error::UnknownLabel`].
    pub fn resolve(&self, axis: Axis, labels: &[impl AsRef<str>]) -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|l| {
                let l = l.as_ref();
                match axis {
                    Axis::Vertices => self.vertex_index(l),
                    Axis::Hyperedges => self.edge_index(l),
                }
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
            })
            .collect()
    }

    /// Member vertex indices of hyperedge `e`.
    pub fn members(&self, e: usize) -> &BTreeSet<usize> {
        &self.members[e]
    }

    /// Hyperedge indices of the star of vertex `v`.
    pub fn star_of(&self, v: usize) -> &BTreeSet<usize> {
        &self.stars[v]
    }

    /// The star `E_v(H)`: labels of hyperedges containing `v`, in edge order.
    pub fn star(&self, v: &str) -> Result<Vec<&str>> {
        let idx = self.require_vertex(v)?;
        Ok(self.stars[idx].iter().map(|&e| self.edge_labels[e].as_str()).collect())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.stars[v].len()
    }

    pub fn edge_size(&self, e: usize) -> usize {
        self.members[e].len()
    }

    pub fn contains(&self, e: usize, v: usize) -> bool {
        self.members[e].contains(&v)
    }

    /// 0/1 incidence matrix, rows = vertices, columns = hyperedges.
    pub fn incidence_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.num_vertices(), self.num_edges());
        for (e, set) in self.members.iter().enumerate() {
            for &v in set {
                m.set(v, e, Rational::one());
            }
        }
        m.with_labels(self.vertices.clone(), self.edge_labels.clone())
            .expect("hypergraph labels are unique")
    }

    /// The dual hypergraph: vertices are the hyperedges of `self`, hyperedges
    /// are the distinct stars. Each dual hyperedge is labelled by the first
    /// vertex whose star it is.
    pub fn dual(&self) -> Result<Self> {
        let mut seen: HashMap<&BTreeSet<usize>, ()> = HashMap::new();
        let mut edges = Vec::new();
        for v in 0..self.num_vertices() {
            let star = &self.stars[v];
            if star.is_empty() {
                return Err(Error::EmptyStar(self.vertices[v].clone()));
            }
            if seen.insert(star, ()).is_none() {
                edges.push((
                    self.vertices[v].clone(),
                    star.iter().map(|&e| self.edge_labels[e].clone()).collect::<Vec<_>>(),
                ));
            }
        }
        Self::new(self.edge_labels.clone(), edges)
    }

    pub fn incidence_graph(&self) -> IncidenceGraph {
        let edges = self
            .members
            .iter()
            .enumerate()
            .flat_map(|(e, set)| set.iter().map(move |&v| (v, e)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        IncidenceGraph {
            left: self.vertices.clone(),
            right: self.edge_labels.clone(),
            edges,
        }
    }

    /// Connected in the sense of the incidence graph: every vertex reaches
    /// every other through shared hyperedges. Isolated vertices disconnect.
    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut used_edge = vec![false; self.num_edges()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.stars[v] {
                if std::mem::replace(&mut used_edge[e], true) {
                    continue;
                }
                for &u in &self.members[e] {
                    if !std::mem::replace(&mut seen[u], true) {
                        stack.push(u);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_lines())
    }
}

/// Which axis of the incidence matrix a label set refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Vertices,
    Hyperedges,
}

/// Bipartite incidence graph: left nodes are vertices, right nodes are
/// hyperedges, and `(v, e)` is an edge iff `v ∈ e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceGraph {
    pub left: Vec<String>,
    pub right: Vec<String>,
    /// `(vertex index, hyperedge index)` pairs, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl IncidenceGraph {
    pub fn num_nodes(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph incidence {\n");
        for v in &self.left {
            let _ = writeln!(out, "  {} [label={}, shape=circle];", quote(&format!("v:{v}")), quote(v));
        }
        for e in &self.right {
            let _ = writeln!(out, "  {} [label={}, shape=box];", quote(&format!("e:{e}")), quote(e));
        }
        for &(v, e) in &self.edges {
            let _ = writeln!(
                out,
                "  {} -- {};",
                quote(&format!("v:{}", self.left[v])),
                quote(&format!("e:{}", self.right[e]))
            );
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

struct EdgeList(Vec<(String, Vec<String>)>);

impl<'de> Deserialize<'de> for EdgeList {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = EdgeList;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from hyperedge labels to member lists")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<EdgeList, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, Vec<String>>()? {
                    out.push((k, v));
                }
                Ok(EdgeList(out))
            }
        }
        deserializer.deserialize_map(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonHypergraph {
    #[serde(default)]
    vertices: Option<Vec<String>>,
    hyperedges: EdgeList,
}

impl JsonHypergraph {
    fn into_hypergraph(self) -> Result<Hypergraph> {
        match self.vertices {
            Some(vs) => Hypergraph::new(vs, self.hyperedges.0),
            None => Hypergraph::from_edges(self.hyperedges.0),
        }
    }
}

impl Serialize for Hypergraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Edges<'a>(&'a Hypergraph);
        impl Serialize for Edges<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let h = self.0;
                let mut map = serializer.serialize_map(Some(h.num_edges()))?;
                for e in 0..h.num_edges() {
                    let members: Vec<&str> = h.members[e].iter().map(|&v| h.vertices[v].as_str()).collect();
                    map.serialize_entry(&h.edge_labels[e], &members)?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("vertices", &self.vertices)?;
        map.serialize_entry("hyperedges", &Edges(self))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        JsonHypergraph::deserialize(deserializer)?
            .into_hypergraph()
            .map_err(D::Error::custom)
    }
}
