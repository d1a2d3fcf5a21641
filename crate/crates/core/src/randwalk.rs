//! Random walks on hypergraphs.
//!
//! A walk at `u` picks a hyperedge `e ∈ E_u` with probability `r(u, e)` and
//! then a vertex `v ∈ e` with probability `s(u, e, v)`, so
//! `P_uv = Σ_{e ∈ E_u ∩ E_v} r(u, e) s(u, e, v)`.
//!
//! The uniform walks take `r = 1/|E_u|`. The non-lazy one moves to one of
//! the other `|e| − 1` vertices; the lazy one picks uniformly among all
//! `|e|` vertices of `e`, including `u` itself.
//!
//! Hitting times, first-hit laws and betweenness all use the taboo matrix:
//! `P` restricted to the rows and columns other than the target.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::{to_f64, Rational, RationalMatrix};

/// Explicit `r` and `s` tables keyed by labels. Absent entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CustomPolicy {
    /// `(vertex, hyperedge) → r`.
    pub r: BTreeMap<(String, String), Rational>,
    /// `(vertex, hyperedge, vertex) → s`.
    pub s: BTreeMap<(String, String, String), Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkPolicy {
    UniformNonLazy,
    UniformLazy,
    Custom(CustomPolicy),
}

impl WalkPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            WalkPolicy::UniformNonLazy => "nonlazy",
            WalkPolicy::UniformLazy => "lazy",
            WalkPolicy::Custom(_) => "custom",
        }
    }

    pub fn is_uniform(&self) -> bool {
        !matches!(self, WalkPolicy::Custom(_))
    }
}

impl Serialize for WalkPolicy {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Row-stochastic `P` over `V(H)`, rows and columns labelled by vertex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransitionMatrix {
    pub p: RationalMatrix,
    pub policy: WalkPolicy,
}

impl TransitionMatrix {
    pub fn len(&self) -> usize {
        self.p.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.p.rows() == 0
    }

    pub fn labels(&self) -> &[String] {
        self.p.row_labels()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

pub fn transition_matrix(h: &Hypergraph, policy: WalkPolicy) -> Result<TransitionMatrix> {
    let n = h.num_vertices();
    if let Some(v) = (0..n).find(|&v| h.degree(v) == 0) {
        return Err(Error::IsolatedVertex(h.vertex(v).to_string()));
    }
    let mut p = RationalMatrix::zeros(n, n);
    match &policy {
        WalkPolicy::UniformNonLazy | WalkPolicy::UniformLazy => {
            let lazy = policy == WalkPolicy::UniformLazy;
            if !lazy {
                if let Some(e) = (0..h.num_edges()).find(|&e| h.edge_size(e) == 1) {
                    return Err(Error::SingletonEdgeNonLazy(h.edge_label(e).to_string()));
                }
            }
            for u in 0..n {
                let r = Rational::new(1.into(), h.degree(u).into());
                for &e in h.star_of(u) {
                    let choices = if lazy { h.edge_size(e) } else { h.edge_size(e) - 1 };
                    let step = &r / Rational::from_integer(choices.into());
                    for &v in h.members(e) {
                        if lazy || v != u {
                            let acc = p.get(u, v) + &step;
                            p.set(u, v, acc);
                        }
                    }
                }
            }
        }
        WalkPolicy::Custom(custom) => fill_custom(h, custom, &mut p)?,
    }
    let p = p
        .with_labels(h.vertices().to_vec(), h.vertices().to_vec())
        .expect("vertex labels are unique");
    debug_assert!(is_row_stochastic(&p));
    Ok(TransitionMatrix { p, policy })
}

fn fill_custom(h: &Hypergraph, custom: &CustomPolicy, p: &mut RationalMatrix) -> Result<()> {
    let invalid = |msg: String| Err(Error::InvalidPolicy(msg));
    for ((u, e), r) in &custom.r {
        let (ui, ei) = (h.require_vertex(u)?, edge(h, e)?);
        if !h.contains(ei, ui) && !r.is_zero() {
            return invalid(format!("r({u},{e}) is nonzero but {u} is not in {e}"));
        }
    }
    for ((u, e, v), s) in &custom.s {
        let (ui, ei, vi) = (h.require_vertex(u)?, edge(h, e)?, h.require_vertex(v)?);
        if !(h.contains(ei, ui) && h.contains(ei, vi)) && !s.is_zero() {
            return invalid(format!("s({u},{e},{v}) is nonzero outside {e}"));
        }
    }
    if let Some((k, _)) = custom.r.iter().find(|(_, x)| x.is_negative()) {
        return invalid(format!("r{k:?} is negative"));
    }
    if let Some((k, _)) = custom.s.iter().find(|(_, x)| x.is_negative()) {
        return invalid(format!("s{k:?} is negative"));
    }
    let zero = Rational::zero();
    for u in 0..h.num_vertices() {
        let ul = h.vertex(u).to_string();
        let mut total = Rational::zero();
        for &e in h.star_of(u) {
            let el = h.edge_label(e).to_string();
            let r = custom.r.get(&(ul.clone(), el.clone())).unwrap_or(&zero);
            total += r;
            let mut s_total = Rational::zero();
            for &v in h.members(e) {
                let s = custom
                    .s
                    .get(&(ul.clone(), el.clone(), h.vertex(v).to_string()))
                    .unwrap_or(&zero);
                s_total += s;
                let acc = p.get(u, v) + r * s;
                p.set(u, v, acc);
            }
            if !s_total.is_one() {
                return invalid(format!("s({ul},{el},·) sums to {s_total}"));
            }
        }
        if !total.is_one() {
            return invalid(format!("r({ul},·) sums to {total}"));
        }
    }
    Ok(())
}

fn edge(h: &Hypergraph, label: &str) -> Result<usize> {
    h.edge_index(label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

pub fn is_row_stochastic(p: &RationalMatrix) -> bool {
    (0..p.rows()).all(|r| {
        p.row(r).iter().all(|x| !x.is_negative())
            && p.row(r).iter().fold(Rational::zero(), |acc, x| acc + x).is_one()
    })
}

fn check_distribution(p: &TransitionMatrix, init: &[Rational]) -> Result<()> {
    if init.len() != p.len() {
        return Err(Error::BadDistribution(format!(
            "{} entries for {} vertices",
            init.len(),
            p.len()
        )));
    }
    if init.iter().any(|x| x.is_negative()) {
        return Err(Error::BadDistribution("negative mass".into()));
    }
    let total = init.iter().fold(Rational::zero(), |acc, x| acc + x);
    if !total.is_one() {
        return Err(Error::BadDistribution(format!("total mass {total}")));
    }
    Ok(())
}

/// `q P` for a row vector `q`.
fn push(p: &RationalMatrix, q: &[Rational]) -> Vec<Rational> {
    let n = p.cols();
    let mut out = vec![Rational::zero(); n];
    for (u, mass) in q.iter().enumerate() {
        if mass.is_zero() {
            continue;
        }
        for (v, x) in p.row(u).iter().enumerate() {
            if !x.is_zero() {
                out[v] += mass * x;
            }
        }
    }
    out
}

/// Point mass on one vertex.
pub fn delta(p: &TransitionMatrix, label: &str) -> Result<Vec<Rational>> {
    let i = p.index(label)?;
    let mut d = vec![Rational::zero(); p.len()];
    d[i] = Rational::one();
    Ok(d)
}

/// Exact `init · Pᵗ`.
pub fn step_distribution(p: &TransitionMatrix, init: &[Rational], t: usize) -> Result<Vec<Rational>> {
    check_distribution(p, init)?;
    let mut q = init.to_vec();
    for _ in 0..t {
        q = push(&p.p, &q);
    }
    Ok(q)
}

/// What `E_t^t` means.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReturnConvention {
    /// Expected time of the first return to the target.
    #[default]
    FirstReturn,
    /// Zero: the walk is already at the target.
    Zero,
}

/// `E_w^target` for every `w`, in vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingTimes {
    pub target: String,
    pub labels: Vec<String>,
    pub times: Vec<Rational>,
    pub convention: ReturnConvention,
}

impl HittingTimes {
    pub fn get(&self, from: &str) -> Option<&Rational> {
        self.labels.iter().position(|l| l == from).map(|i| &self.times[i])
    }
}

impl Serialize for HittingTimes {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let times: BTreeMap<&str, String> = self
            .labels
            .iter()
            .zip(&self.times)
            .map(|(l, t)| (l.as_str(), t.to_string()))
            .collect();
        let mut s = serializer.serialize_struct("HittingTimes", 3)?;
        s.serialize_field("target", &self.target)?;
        s.serialize_field("convention", &self.convention)?;
        s.serialize_field("times", &times)?;
        s.end()
    }
}

/// Vertices from which `target` is reachable along positive entries of `P`.
fn reaches(p: &RationalMatrix, target: usize) -> Vec<bool> {
    let n = p.rows();
    let mut seen = vec![false; n];
    seen[target] = true;
    let mut queue = VecDeque::from([target]);
    while let Some(v) = queue.pop_front() {
        for u in 0..n {
            if !seen[u] && !p.get(u, v).is_zero() {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    seen
}

/// Indices other than `target`, and `P` restricted to them.
fn taboo(p: &RationalMatrix, target: usize) -> (Vec<usize>, RationalMatrix) {
    let rest: Vec<usize> = (0..p.rows()).filter(|&i| i != target).collect();
    let restricted = p.select_rows(&rest).select_cols(&rest);
    (rest, restricted)
}

/// Solves `(Id − P_taboo) h = 1` exactly.
pub fn hitting_times(p: &TransitionMatrix, target: &str, convention: ReturnConvention) -> Result<HittingTimes> {
    let t = p.index(target)?;
    if let Some(from) = reaches(&p.p, t).iter().position(|r| !r) {
        return Err(Error::Unreachable {
            target: target.to_string(),
            from: p.labels()[from].clone(),
        });
    }
    let (rest, pt) = taboo(&p.p, t);
    let system = RationalMatrix::identity(rest.len()).sub(&pt)?;
    let h = system.solve(&vec![Rational::one(); rest.len()])?;
    let mut times = vec![Rational::zero(); p.len()];
    for (i, &w) in rest.iter().enumerate() {
        times[w] = h[i].clone();
    }
    if convention == ReturnConvention::FirstReturn {
        let mut ret = Rational::one();
        for (i, &w) in rest.iter().enumerate() {
            ret += p.p.get(t, w) * &h[i];
        }
        times[t] = ret;
    }
    Ok(HittingTimes {
        target: target.to_string(),
        labels: p.labels().to_vec(),
        times,
        convention,
    })
}

/// `Pr(X_t = target, X_s ≠ target for 0 < s < t)` for `t = 1..=horizon`.
/// Mass starting on the target counts its first return.
pub fn first_hit_probabilities(p: &TransitionMatrix, init: &[Rational], target: &str, horizon: usize) -> Result<Vec<Rational>> {
    if horizon == 0 {
        return Err(Error::BadHorizon);
    }
    check_distribution(p, init)?;
    let t = p.index(target)?;
    let mut q = init.to_vec();
    let mut out = Vec::with_capacity(horizon);
    for _ in 0..horizon {
        q = push(&p.p, &q);
        out.push(std::mem::take(&mut q[t]));
    }
    Ok(out)
}

/// Checks `Σ_{u∈U} P_wu = Σ_{v∈V} P_wv` for every `w ∉ U ∪ V`.
pub fn verify_partition_transition(p: &TransitionMatrix, u: &[impl AsRef<str>], v: &[impl AsRef<str>]) -> Result<bool> {
    if !p.policy.is_uniform() {
        return Err(Error::NonUniformPolicy);
    }
    let us: BTreeSet<usize> = u.iter().map(|l| p.index(l.as_ref())).collect::<Result<_>>()?;
    let vs: BTreeSet<usize> = v.iter().map(|l| p.index(l.as_ref())).collect::<Result<_>>()?;
    if let Some(&x) = us.intersection(&vs).next() {
        return Err(Error::NotDisjoint(p.labels()[x].clone()));
    }
    Ok((0..p.len())
        .filter(|w| !us.contains(w) && !vs.contains(w))
        .all(|w| {
            let total = |s: &BTreeSet<usize>| s.iter().fold(Rational::zero(), |acc, &x| acc + p.p.get(w, x));
            total(&us) == total(&vs)
        }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimulationOptions {
    pub steps: usize,
    pub trajectories: usize,
    pub seed: u64,
    /// Vertex index whose first hitting time is recorded.
    pub target: Option<usize>,
    /// End each trajectory at its first hit, so `visits` only covers the
    /// walk up to that time.
    pub stop_at_target: bool,
}

/// Aggregated trajectories. `visits[v]` counts `X_t = v` for
/// `0 ≤ t ≤ steps`; `first_hit[t]` counts trajectories first at the target
/// at time `t ≥ 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Simulation {
    pub seed: u64,
    pub steps: usize,
    pub trajectories: usize,
    pub labels: Vec<String>,
    pub visits: Vec<u64>,
    pub target: Option<String>,
    pub first_hit: BTreeMap<usize, u64>,
    /// Trajectories that never hit the target within `steps`.
    pub misses: u64,
}

impl Simulation {
    pub fn hits(&self) -> u64 {
        self.first_hit.values().sum()
    }

    /// Mean first-hit time over trajectories that hit.
    pub fn mean_first_hit(&self) -> Option<f64> {
        let n = self.hits();
        (n > 0).then(|| self.first_hit.iter().map(|(t, c)| *t as f64 * *c as f64).sum::<f64>() / n as f64)
    }

    /// Standard error of [`Self::mean_first_hit`].
    pub fn standard_error(&self) -> Option<f64> {
        let n = self.hits();
        let mean = self.mean_first_hit()?;
        if n < 2 {
            return None;
        }
        let ss: f64 = self
            .first_hit
            .iter()
            .map(|(t, c)| *c as f64 * (*t as f64 - mean).powi(2))
            .sum();
        Some((ss / (n - 1) as f64 / n as f64).sqrt())
    }
}

/// Cumulative float row, for inverse-CDF sampling.
fn cumulative(row: &[Rational]) -> Vec<f64> {
    let mut acc = 0.0;
    row.iter()
        .map(|x| {
            acc += to_f64(x);
            acc
        })
        .collect()
}

fn sample(cdf: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let x: f64 = rng.random::<f64>() * cdf[cdf.len() - 1];
    cdf.iter().position(|&c| x < c).unwrap_or(cdf.len() - 1)
}

#[derive(Default)]
struct Tally {
    visits: Vec<u64>,
    first_hit: BTreeMap<usize, u64>,
    misses: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        if self.visits.is_empty() {
            return other;
        }
        for (a, b) in self.visits.iter_mut().zip(other.visits) {
            *a += b;
        }
        for (t, c) in other.first_hit {
            *self.first_hit.entry(t).or_default() += c;
        }
        self.misses += other.misses;
        self
    }
}

/// Monte-Carlo walks. Trajectory `i` draws from ChaCha8 seeded with `seed`
/// on stream `i`, so the result does not depend on thread scheduling.
pub fn simulate(p: &TransitionMatrix, init: &[Rational], opts: SimulationOptions) -> Result<Simulation> {
    check_distribution(p, init)?;
    let n = p.len();
    let init_cdf = cumulative(init);
    let rows: Vec<Vec<f64>> = (0..n).map(|u| cumulative(p.p.row(u))).collect();
    let tally = (0..opts.trajectories)
        .into_par_iter()
        .fold(Tally::default, |mut tally, i| {
            if tally.visits.is_empty() {
                tally.visits = vec![0; n];
            }
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(i as u64);
            let mut x = sample(&init_cdf, &mut rng);
            tally.visits[x] += 1;
            let mut hit = None;
            for t in 1..=opts.steps {
                x = sample(&rows[x], &mut rng);
                tally.visits[x] += 1;
                if hit.is_none() && Some(x) == opts.target {
                    hit = Some(t);
                    if opts.stop_at_target {
                        break;
                    }
                }
            }
            match (hit, opts.target) {
                (Some(t), _) => *tally.first_hit.entry(t).or_default() += 1,
                (None, Some(_)) => tally.misses += 1,
                (None, None) => {}
            }
            tally
        })
        .reduce(Tally::default, Tally::merge);
    Ok(Simulation {
        seed: opts.seed,
        steps: opts.steps,
        trajectories: opts.trajectories,
        labels: p.labels().to_vec(),
        visits: if tally.visits.is_empty() { vec![0; n] } else { tally.visits },
        target: opts.target.map(|t| p.labels()[t].clone()),
        first_hit: tally.first_hit,
        misses: tally.misses,
    })
}
