//! Dense linear algebra over arbitrary-precision rationals.
//!
//! Everything here is exact: reduced row echelon form, rank, nullspace bases,
//! fraction-free determinants and linear solves. Matrices carry row and column
//! labels so results can be reported against hypergraph vertices and edges.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact fraction with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::BadRational(text.to_string());
    let text = text.trim();
    match text.split_once('/') {
        None => BigInt::from_str(text)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn to_f64(value: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Rescales `v` to the primitive integer vector on the same ray whose first
/// nonzero entry is positive. The zero vector is returned unchanged.
pub fn primitive_integer(v: &[Rational]) -> Vec<Rational> {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if first.is_negative() {
        gcd = -gcd;
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd))
        .collect()
}

/// Dense row-major matrix of rationals with labelled axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    entries: Vec<Rational>,
}

fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn check_labels(labels: &[String], expected: usize) -> Result<()> {
    if labels.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: labels.len(),
        });
    }
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            row_labels: index_labels(rows),
            col_labels: index_labels(cols),
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Diagonal matrix with the given labels on both axes.
    pub fn diagonal(values: Vec<Rational>, labels: Vec<String>) -> Result<Self> {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m.with_labels(labels.clone(), labels)
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            row_labels: index_labels(n),
            col_labels: index_labels(cols),
            entries,
        })
    }

    /// Convenience constructor from small integer rows. Panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }

    pub fn with_labels(mut self, row_labels: Vec<String>, col_labels: Vec<String>) -> Result<Self> {
        check_labels(&row_labels, self.rows)?;
        check_labels(&col_labels, self.cols)?;
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.entries)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            entries,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = other.col_labels.clone();
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (o, (a, b)) in out.entries.iter_mut().zip(self.entries.iter().zip(&other.entries)) {
            *o = f(a, b);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(indices.len() * self.cols);
        for &r in indices {
            entries.extend_from_slice(self.row(r));
        }
        Self {
            rows: indices.len(),
            cols: self.cols,
            row_labels: indices.iter().map(|&r| self.row_labels[r].clone()).collect(),
            col_labels: self.col_labels.clone(),
            entries,
        }
    }

    pub fn select_cols(&self, indices: &[usize]) -> Self {
        self.transpose().select_rows(indices).transpose()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(to_f64).collect())
            .collect()
    }

    /// Exact Gauss–Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(found, pivot_row);
            let inv = m.get(pivot_row, col).recip();
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let delta = &factor * m.get(pivot_row, c);
                    if !delta.is_zero() {
                        let v = m.get(r, c) - delta;
                        m.set(r, c, v);
                    }
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        Rref {
            rank: pivot_cols.len(),
            matrix: m,
            pivot_cols,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of `{x : Mx = 0}` read off the RREF: one vector per free column,
    /// with a 1 in that column and zeros in the other free columns.
    pub fn nullspace(&self) -> NullspaceBasis {
        let rref = self.rref();
        let pivots: HashSet<usize> = rref.pivot_cols.iter().copied().collect();
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &p) in rref.pivot_cols.iter().enumerate() {
                v[p] = -rref.matrix.get(r, free).clone();
            }
            vectors.push(v);
        }
        for v in &vectors {
            assert!(
                is_zero_vector(&self.mul_vec(v).expect("nullspace vector length")),
                "nullspace vector failed exact verification"
            );
        }
        NullspaceBasis {
            vectors,
            ambient_labels: self.col_labels.clone(),
        }
    }

    /// Fraction-free (Bareiss) determinant. Every division is exact; on
    /// integer input all intermediates stay integral.
    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = Rational::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        negate = !negate;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                let lead = a.get(i, k).clone();
                for j in k + 1..n {
                    let v = (a.get(i, j) * &pivot - &lead * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, Rational::zero());
            }
            prev = pivot;
        }
        let det = a.get(n - 1, n - 1).clone();
        Ok(if negate { -det } else { det })
    }

    /// Solves `Mx = b` exactly for square nonsingular `M`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n, b[r].clone());
        }
        let rref = aug.rref();
        if rref.pivot_cols.len() < n || rref.pivot_cols.iter().any(|&p| p >= n) {
            return Err(Error::Singular);
        }
        Ok((0..n).map(|r| rref.matrix.get(r, n).clone()).collect())
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    entries: Vec<String>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
            entries: self.entries.iter().map(format_rational).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJson::deserialize(deserializer)?;
        if raw.entries.len() != raw.rows * raw.cols {
            return Err(D::Error::custom(format!(
                "expected {} entries, found {}",
                raw.rows * raw.cols,
                raw.entries.len()
            )));
        }
        let entries = raw
            .entries
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let m = RationalMatrix {
            rows: raw.rows,
            cols: raw.cols,
            row_labels: Vec::new(),
            col_labels: Vec::new(),
            entries,
        };
        m.with_labels(raw.row_labels, raw.col_labels)
            .map_err(D::Error::custom)
    }
}

/// Reduced row echelon form together with its pivot structure.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RationalMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Basis of a nullspace, indexed by the column labels of the source matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullspaceBasis {
    pub vectors: Vec<Vec<Rational>>,
    pub ambient_labels: Vec<String>,
}

impl NullspaceBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

impl Serialize for NullspaceBasis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            dim: usize,
            ambient_labels: &'a [String],
            vectors: Vec<Vec<String>>,
        }
        Out {
            dim: self.dim(),
            ambient_labels: &self.ambient_labels,
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().map(format_rational).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = RationalMatrix::identity(3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
    }

    #[test]
    fn rref_of_zero_matrix() {
        let z = RationalMatrix::zeros(2, 3);
        let r = z.rref();
        assert_eq!(r.rank, 0);
        assert_eq!(r.matrix, z);
        assert!(r.pivot_cols.is_empty());
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        assert!(RationalMatrix::identity(4).nullspace().is_empty());
    }

    #[test]
    fn nullspace_free_variable_pattern() {
        let m = RationalMatrix::from_ints(&[[1, 2, 3], [2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.vectors, vec![v(&[-2, 1, 0]), v(&[-3, 0, 1])]);
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(RationalMatrix::from_ints(&[[0]]).determinant().unwrap(), rat(0));
        assert_eq!(
            RationalMatrix::from_ints(&[[0, 1], [1, 0]]).determinant().unwrap(),
            rat(-1)
        );
        assert_eq!(
            RationalMatrix::from_ints(&[[2, 0, 1], [1, 3, 2], [1, 1, 2]])
                .determinant()
                .unwrap(),
            rat(6)
        );
        assert_eq!(RationalMatrix::zeros(0, 0).determinant().unwrap(), rat(1));
    }

    #[test]
    fn determinant_rejects_rectangular() {
        let err = RationalMatrix::zeros(2, 3).determinant().unwrap_err();
        assert_eq!(err, Error::NotSquare { rows: 2, cols: 3 });
    }

    #[test]
    fn determinant_with_fractions() {
        let m = RationalMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 4), ratio(1, 5)],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), ratio(1, 10) - ratio(1, 12));
    }

    #[test]
    fn solve_identity_and_diagonal() {
        let b = v(&[3, -1, 7]);
        assert_eq!(RationalMatrix::identity(3).solve(&b).unwrap(), b);
        let d = RationalMatrix::from_ints(&[[2, 0], [0, 4]]);
        assert_eq!(d.solve(&v(&[1, 1])).unwrap(), vec![ratio(1, 2), ratio(1, 4)]);
    }

    #[test]
    fn solve_singular() {
        let m = RationalMatrix::from_ints(&[[1, 1], [1, 1]]);
        assert_eq!(m.solve(&v(&[1, 2])).unwrap_err(), Error::Singular);
    }

    #[test]
    fn primitive_integer_normalization() {
        let x = vec![ratio(-1, 2), ratio(1, 3), rat(0)];
        assert_eq!(primitive_integer(&x), v(&[3, -2, 0]));
        assert_eq!(primitive_integer(&v(&[0, 0])), v(&[0, 0]));
        assert_eq!(primitive_integer(&v(&[0, -4, 6])), v(&[0, 2, -3]));
    }

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "-3", "7/2", "-1/6"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn json_round_trip_keeps_labels() {
        let m = RationalMatrix::from_rows(vec![vec![ratio(1, 2), rat(0)], vec![rat(-3), ratio(5, 7)]])
            .unwrap()
            .with_labels(vec!["a".into(), "b".into()], vec!["x".into(), "y".into()])
            .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"1/2\""));
        let back: RationalMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = RationalMatrix::identity(2)
            .with_labels(vec!["a".into(), "a".into()], vec!["x".into(), "y".into()])
            .unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("a".into()));
    }
}
