//! Weighted hypergraph matrices and their spectra.
//!
//! `Q = D_V I D_E Iᵀ` is the weighted signless Laplacian, `A = Q − D` the
//! adjacency (same off-diagonal entries, zero diagonal) and `L = K − A` the
//! Laplacian with `K = diag(A·1)`. All are built exactly; eigenvalues come
//! from a cyclic Jacobi solver on a float copy.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::{is_zero_vector, rat, to_f64, Rational, RationalMatrix};
use crate::structures::{incidence_graph_adjacency, Annihilator, Certificate};

/// Named weight presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// `w_V = 1`, `w_E = 1`.
    Unit,
    /// `w_V = 1`, `w_E = 1/(|e| − 1)`.
    EdgeNormalized,
    /// `w_V = 1/|E_v|`, `w_E = 1/(|e| − 1)`.
    FullyNormalized,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Unit, Preset::EdgeNormalized, Preset::FullyNormalized];
}

/// Strictly positive vertex and hyperedge weights, indexed like the
/// hypergraph they were built for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightScheme {
    pub name: String,
    pub vertex: Vec<Rational>,
    pub edge: Vec<Rational>,
}

impl WeightScheme {
    pub fn unit(h: &Hypergraph) -> Self {
        Self {
            name: "unit".into(),
            vertex: vec![Rational::one(); h.num_vertices()],
            edge: vec![Rational::one(); h.num_edges()],
        }
    }

    pub fn edge_normalized(h: &Hypergraph) -> Result<Self> {
        Ok(Self {
            name: "edgenorm".into(),
            vertex: vec![Rational::one(); h.num_vertices()],
            edge: inverse_edge_sizes(h)?,
        })
    }

    pub fn fully_normalized(h: &Hypergraph) -> Result<Self> {
        let vertex = (0..h.num_vertices())
            .map(|v| match h.degree(v) {
                0 => Err(Error::InvalidWeight(format!(
                    "vertex {} has an empty star; 1/|E_v| is undefined",
                    h.vertex(v)
                ))),
                d => Ok(Rational::new(1.into(), d.into())),
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            name: "fullnorm".into(),
            vertex,
            edge: inverse_edge_sizes(h)?,
        })
    }

    pub fn preset(h: &Hypergraph, preset: Preset) -> Result<Self> {
        match preset {
            Preset::Unit => Ok(Self::unit(h)),
            Preset::EdgeNormalized => Self::edge_normalized(h),
            Preset::FullyNormalized => Self::fully_normalized(h),
        }
    }

    pub fn custom(name: impl Into<String>, vertex: Vec<Rational>, edge: Vec<Rational>) -> Result<Self> {
        if let Some(bad) = vertex.iter().chain(&edge).find(|w| **w <= Rational::zero()) {
            return Err(Error::InvalidWeight(format!("weight {bad} is not positive")));
        }
        Ok(Self {
            name: name.into(),
            vertex,
            edge,
        })
    }

    fn check(&self, h: &Hypergraph) -> Result<()> {
        if self.vertex.len() != h.num_vertices() || self.edge.len() != h.num_edges() {
            return Err(Error::WeightDomainMismatch(format!(
                "{} has {}+{} weights for {} vertices and {} hyperedges",
                self.name,
                self.vertex.len(),
                self.edge.len(),
                h.num_vertices(),
                h.num_edges()
            )));
        }
        Ok(())
    }
}

fn inverse_edge_sizes(h: &Hypergraph) -> Result<Vec<Rational>> {
    (0..h.num_edges())
        .map(|e| match h.edge_size(e) {
            1 => Err(Error::InvalidWeight(format!(
                "hyperedge {} is a singleton; 1/(|e|-1) is undefined",
                h.edge_label(e)
            ))),
            s => Ok(Rational::new(1.into(), (s - 1).into())),
        })
        .collect()
}

fn square_over_vertices(h: &Hypergraph, m: RationalMatrix) -> RationalMatrix {
    m.with_labels(h.vertices().to_vec(), h.vertices().to_vec())
        .expect("vertex labels are unique")
}

/// `q_uv = w_V(u) · Σ_{e ∋ u, v} w_E(e)`.
pub fn build_q(h: &Hypergraph, w: &WeightScheme) -> Result<RationalMatrix> {
    w.check(h)?;
    let n = h.num_vertices();
    let mut q = RationalMatrix::zeros(n, n);
    for u in 0..n {
        for v in 0..n {
            let shared = h
                .star_of(u)
                .intersection(h.star_of(v))
                .fold(Rational::zero(), |acc, &e| acc + &w.edge[e]);
            if !shared.is_zero() {
                q.set(u, v, &w.vertex[u] * shared);
            }
        }
    }
    Ok(square_over_vertices(h, q))
}

/// Diagonal `w_V(v) · Σ_{e ∋ v} w_E(e)`, the diagonal of `Q`.
pub fn build_d(h: &Hypergraph, w: &WeightScheme) -> Result<RationalMatrix> {
    w.check(h)?;
    let diag = (0..h.num_vertices())
        .map(|v| {
            let s = h.star_of(v).iter().fold(Rational::zero(), |acc, &e| acc + &w.edge[e]);
            &w.vertex[v] * s
        })
        .collect();
    RationalMatrix::diagonal(diag, h.vertices().to_vec())
}

pub fn build_a(h: &Hypergraph, w: &WeightScheme) -> Result<RationalMatrix> {
    let mut a = build_q(h, w)?;
    for v in 0..h.num_vertices() {
        a.set(v, v, Rational::zero());
    }
    Ok(a)
}

/// Diagonal of row sums of `A`.
pub fn build_k(h: &Hypergraph, w: &WeightScheme) -> Result<RationalMatrix> {
    let a = build_a(h, w)?;
    let sums = (0..a.rows())
        .map(|r| a.row(r).iter().fold(Rational::zero(), |acc, x| acc + x))
        .collect();
    RationalMatrix::diagonal(sums, h.vertices().to_vec())
}

pub fn build_l(h: &Hypergraph, w: &WeightScheme) -> Result<RationalMatrix> {
    build_k(h, w)?.sub(&build_a(h, w)?)
}

pub fn build_a_gh(h: &Hypergraph) -> RationalMatrix {
    incidence_graph_adjacency(h)
}

/// Which matrix a spectrum (or CLI request) refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixKind {
    #[serde(rename = "I")]
    Incidence,
    Q,
    A,
    L,
    D,
    K,
    #[serde(rename = "A_GH")]
    AGH,
}

impl MatrixKind {
    pub fn build(self, h: &Hypergraph, w: &WeightScheme) -> Result<RationalMatrix> {
        match self {
            MatrixKind::Incidence => Ok(h.incidence_matrix()),
            MatrixKind::Q => build_q(h, w),
            MatrixKind::A => build_a(h, w),
            MatrixKind::L => build_l(h, w),
            MatrixKind::D => build_d(h, w),
            MatrixKind::K => build_k(h, w),
            MatrixKind::AGH => Ok(build_a_gh(h)),
        }
    }

    /// Whether the matrix is `D_V` times a symmetric matrix.
    fn vertex_weighted(self) -> bool {
        !matches!(self, MatrixKind::Incidence | MatrixKind::AGH)
    }
}

/// Jacobi solver settings. `tol` bounds the off-diagonal Frobenius norm
/// (relative to the matrix norm when that exceeds 1); eigenvalues closer
/// than `group_tol` are reported as one value with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiOptions {
    pub tol: f64,
    pub group_tol: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            group_tol: 1e-8,
            max_sweeps: 100,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub matrix: MatrixKind,
    pub tol: f64,
    pub eigs: Vec<Eigenvalue>,
}

impl Spectrum {
    pub fn dimension(&self) -> usize {
        self.eigs.iter().map(|e| e.multiplicity).sum()
    }

    /// All eigenvalues with repetition, ascending.
    pub fn values(&self) -> Vec<f64> {
        self.eigs
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity))
            .collect()
    }

    /// Multiplicity of the group within `tol` of `value` (0 if absent).
    pub fn multiplicity_of(&self, value: f64, tol: f64) -> usize {
        self.eigs
            .iter()
            .filter(|e| (e.value - value).abs() <= tol)
            .map(|e| e.multiplicity)
            .sum()
    }

    pub fn contains(&self, value: f64, tol: f64) -> bool {
        self.multiplicity_of(value, tol) > 0
    }
}

/// Cyclic Jacobi rotations on a dense symmetric matrix. Returns the
/// unsorted diagonal once the off-diagonal norm drops below the threshold.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>, tol: f64, max_sweeps: usize) -> Result<Vec<f64>> {
    let n = a.len();
    let frob: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = tol * frob.max(1.0);
    let off_norm = |a: &[Vec<f64>]| -> f64 {
        let mut s = 0.0;
        for (i, row) in a.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    s += x * x;
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off_norm(&a) >= threshold {
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence(max_sweeps));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (kp, kq) = (row[p], row[q]);
                    row[p] = c * kp - s * kq;
                    row[q] = s * kp + c * kq;
                }
                for k in 0..n {
                    let (pk, qk) = (a[p][k], a[q][k]);
                    a[p][k] = c * pk - s * qk;
                    a[q][k] = s * pk + c * qk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    Ok((0..n).map(|i| a[i][i]).collect())
}

fn group(mut values: Vec<f64>, group_tol: f64) -> Vec<Eigenvalue> {
    values.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, Vec<f64>)> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some((first, members)) if (v - *first).abs() <= group_tol => members.push(v),
            _ => out.push((v, vec![v])),
        }
    }
    out.into_iter()
        .map(|(_, m)| Eigenvalue {
            value: m.iter().sum::<f64>() / m.len() as f64,
            multiplicity: m.len(),
        })
        .collect()
}

/// Spectrum of a symmetric matrix.
pub fn eigenvalues_sym(m: &RationalMatrix, kind: MatrixKind, opts: JacobiOptions) -> Result<Spectrum> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetrizable);
    }
    let values = jacobi_eigenvalues(m.to_f64_rows(), opts.tol, opts.max_sweeps)?;
    Ok(Spectrum {
        matrix: kind,
        tol: opts.group_tol,
        eigs: group(values, opts.group_tol),
    })
}

/// `D^{1/2} (D^{-1} M) D^{1/2}` as floats, provided `D^{-1} M` is exactly
/// symmetric. Similar to `M`, so the spectrum is unchanged.
pub fn symmetrize(m: &RationalMatrix, d: &[Rational]) -> Result<Vec<Vec<f64>>> {
    if !m.is_square() || d.len() != m.rows() || d.iter().any(|x| *x <= Rational::zero()) {
        return Err(Error::NotSymmetrizable);
    }
    let n = m.rows();
    let mut b = m.clone();
    for r in 0..n {
        let inv = d[r].recip();
        for c in 0..n {
            let v = m.get(r, c) * &inv;
            b.set(r, c, v);
        }
    }
    if !b.is_symmetric() {
        return Err(Error::NotSymmetrizable);
    }
    Ok((0..n)
        .map(|r| {
            (0..n)
                .map(|c| to_f64(b.get(r, c)) * to_f64(&(&d[r] * &d[c])).sqrt())
                .collect()
        })
        .collect())
}

/// Spectrum of a matrix that is either symmetric or `diag(d)` times a
/// symmetric matrix.
pub fn eigenvalues_similar(m: &RationalMatrix, d: &[Rational], kind: MatrixKind, opts: JacobiOptions) -> Result<Spectrum> {
    if m.is_symmetric() {
        return eigenvalues_sym(m, kind, opts);
    }
    let s = symmetrize(m, d)?;
    let values = jacobi_eigenvalues(s, opts.tol, opts.max_sweeps)?;
    Ok(Spectrum {
        matrix: kind,
        tol: opts.group_tol,
        eigs: group(values, opts.group_tol),
    })
}

/// Builds the requested matrix and computes its spectrum.
pub fn spectrum(h: &Hypergraph, kind: MatrixKind, w: &WeightScheme, opts: JacobiOptions) -> Result<Spectrum> {
    let m = kind.build(h, w)?;
    if kind.vertex_weighted() {
        eigenvalues_similar(&m, &w.vertex, kind, opts)
    } else {
        eigenvalues_sym(&m, kind, opts)
    }
}

fn vertex_certificate(h: &Hypergraph, cert: &Certificate) -> Result<()> {
    if cert.annihilated_by != Annihilator::IncidenceTranspose {
        return Err(Error::InvalidCertificate(format!("{:?} is not a vertex certificate", cert.kind)));
    }
    if cert.labels.as_slice() != h.vertices() {
        return Err(Error::InvalidCertificate("labels do not match the vertex set".into()));
    }
    Ok(())
}

/// Exact check of `Q_H c = 0`.
pub fn verify_q_annihilation(h: &Hypergraph, w: &WeightScheme, cert: &Certificate) -> Result<bool> {
    vertex_certificate(h, cert)?;
    Ok(is_zero_vector(&build_q(h, w)?.mul_vec(&cert.coefficients)?))
}

/// Shared shape of the adjacency and Laplacian eigenvalue checks: if
/// `diag` is constant `c` on the support, confirm `M x = sign·c·x` exactly.
fn constant_diagonal_eigenvalue(
    h: &Hypergraph,
    cert: &Certificate,
    diag: &[Rational],
    m: &RationalMatrix,
    sign: i64,
) -> Result<Option<Rational>> {
    vertex_certificate(h, cert)?;
    if cert.is_zero() {
        return Err(Error::InvalidCertificate("zero vector".into()));
    }
    let mut on_support = cert
        .coefficients
        .iter()
        .zip(diag)
        .filter(|(x, _)| !x.is_zero())
        .map(|(_, d)| d);
    let c = on_support.next().expect("nonzero certificate").clone();
    if on_support.any(|d| *d != c) {
        return Ok(None);
    }
    let eigenvalue = rat(sign) * c;
    let lhs = m.mul_vec(&cert.coefficients)?;
    let holds = lhs
        .iter()
        .zip(&cert.coefficients)
        .all(|(l, x)| *l == &eigenvalue * x);
    if !holds {
        return Err(Error::InvalidCertificate("eigen-equation fails; certificate is not sound".into()));
    }
    Ok(Some(eigenvalue))
}

/// If `w_V(u) Σ_{e ∈ E_u} w_E(e)` is a constant `c` on the support of a
/// vertex certificate, `−c` is an eigenvalue of `A_H` with the certificate
/// as eigenvector. Returns `None` when the constancy condition fails.
pub fn verify_a_eigenvalue(h: &Hypergraph, w: &WeightScheme, cert: &Certificate) -> Result<Option<Rational>> {
    let d = build_d(h, w)?;
    let diag: Vec<Rational> = (0..h.num_vertices()).map(|v| d.get(v, v).clone()).collect();
    constant_diagonal_eigenvalue(h, cert, &diag, &build_a(h, w)?, -1)
}

/// Laplacian analogue: the diagonal of `K + D` (row sums of `Q`) must be
/// constant `c` on the support, and then `L_H x = c x`.
pub fn verify_l_eigenvalue(h: &Hypergraph, w: &WeightScheme, cert: &Certificate) -> Result<Option<Rational>> {
    let q = build_q(h, w)?;
    let diag: Vec<Rational> = (0..q.rows())
        .map(|r| q.row(r).iter().fold(Rational::zero(), |acc, x| acc + x))
        .collect();
    constant_diagonal_eigenvalue(h, cert, &diag, &build_l(h, w)?, 1)
}
