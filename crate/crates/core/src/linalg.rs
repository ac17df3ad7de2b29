//! Exact rational linear algebra.
//!
//! Matrices are stored sparsely and reduced with plain rational Gaussian
//! elimination, pivoting on the first nonzero entry in column order. Every
//! subspace is kept in reduced row echelon form, so two subspaces are equal
//! exactly when their stored bases are equal.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::Rational;

pub type Vector = Vec<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the ambient subspace of the quotient")]
    NotASubspace,
}

fn check_len(expected: usize, found: usize) -> Result<(), LinalgError> {
    if expected == found {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { expected, found })
    }
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `target += c * source`
fn axpy(target: &mut [Rational], c: &Rational, source: &[Rational]) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t += c * s;
        }
    }
}

/// Reduces `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each surviving row.
fn rref_in_place(rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let c = -row[col].clone();
                axpy(row, &c, &pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// A rows × cols matrix with sparse exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vector], cols: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            check_len(cols, row.len())?;
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            check_len(rows, col.len())?;
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        if value.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), value);
        }
    }

    pub fn dense_rows(&self) -> Vec<Vector> {
        let mut out = vec![zero_vector(self.cols); self.rows];
        for (&(r, c), v) in &self.entries {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vector, LinalgError> {
        check_len(self.cols, x.len())?;
        let mut y = zero_vector(self.rows);
        for (&(r, c), v) in &self.entries {
            if !x[c].is_zero() {
                y[r] += v * &x[c];
            }
        }
        Ok(y)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn kernel(&self) -> Subspace {
        self.echelon().kernel()
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        let cols = self.transpose().dense_rows();
        Subspace::span_unchecked(self.rows, cols)
    }

    /// Some `x` with `self · x = b`, or `None` when `b` is not in the image.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vector>, LinalgError> {
        self.echelon().solve(b)
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::new(self)
    }
}

/// Reduced row echelon form `R = P·A` together with the row transform `P`,
/// so that repeated solves against one matrix cost a matrix-vector product.
#[derive(Debug, Clone)]
pub struct Echelon {
    rows: usize,
    cols: usize,
    reduced: Vec<Vector>,
    pivots: Vec<usize>,
    // full m×m transform; rows past the rank annihilate the image
    transform: Vec<Vector>,
}

impl Echelon {
    pub fn new(a: &RationalMatrix) -> Self {
        let (m, n) = (a.rows, a.cols);
        // eliminate on [A | I] and read R and P off the two halves
        let mut aug: Vec<Vector> = a
            .dense_rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend(unit_vector(m, i));
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..n {
            let Some(found) = (rank..m).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(rank, found);
            let inv = aug[rank][col].recip();
            for x in aug[rank].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            let pivot_row = aug[rank].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let c = -row[col].clone();
                    axpy(row, &c, &pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let mut reduced = Vec::with_capacity(rank);
        let mut transform = Vec::with_capacity(m);
        for (i, mut row) in aug.into_iter().enumerate() {
            let p = row.split_off(n);
            if i < rank {
                reduced.push(row);
            }
            transform.push(p);
        }
        Echelon {
            rows: m,
            cols: n,
            reduced,
            pivots,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn kernel(&self) -> Subspace {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = unit_vector(self.cols, free);
            for (row, &p) in self.reduced.iter().zip(&self.pivots) {
                v[p] = -row[free].clone();
            }
            basis.push(v);
        }
        let k = Subspace::span_unchecked(self.cols, basis);
        debug_assert_eq!(k.dim() + self.rank(), self.cols);
        k
    }

    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vector>, LinalgError> {
        check_len(self.rows, b.len())?;
        let pb: Vec<Rational> = self
            .transform
            .iter()
            .map(|row| {
                row.iter()
                    .zip(b)
                    .filter(|(p, x)| !p.is_zero() && !x.is_zero())
                    .map(|(p, x)| p * x)
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect();
        if pb[self.rank()..].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        let mut x = zero_vector(self.cols);
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = pb[i].clone();
        }
        Ok(Some(x))
    }
}

/// A linear subspace of ℚⁿ held in its unique reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(
        ambient: usize,
        vectors: impl IntoIterator<Item = Vector>,
    ) -> Result<Self, LinalgError> {
        let vectors: Vec<Vector> = vectors.into_iter().collect();
        for v in &vectors {
            check_len(ambient, v.len())?;
        }
        Ok(Self::span_unchecked(ambient, vectors))
    }

    pub(crate) fn span_unchecked(ambient: usize, mut vectors: Vec<Vector>) -> Self {
        vectors.retain(|v| !is_zero_vector(v));
        let pivots = rref_in_place(&mut vectors, ambient);
        Subspace {
            ambient,
            basis: vectors,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Normal form of `v` modulo this subspace: entries at pivot columns are
    /// cleared. Two vectors are congruent iff their normal forms agree.
    pub fn reduce(&self, v: &[Rational]) -> Result<Vector, LinalgError> {
        check_len(self.ambient, v.len())?;
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = -out[p].clone();
                axpy(&mut out, &c, row);
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        Ok(is_zero_vector(&self.reduce(v)?))
    }

    /// Coefficients of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates_of(&self, v: &[Rational]) -> Result<Option<Vector>, LinalgError> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, LinalgError> {
        check_len(self.ambient, other.ambient)?;
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        check_len(self.ambient, other.ambient)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::span_unchecked(self.ambient, vectors))
    }

    /// Intersection, from the kernel of `[S | -T]`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        check_len(self.ambient, other.ambient)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let mut columns: Vec<Vector> = self.basis.clone();
        columns.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let m = RationalMatrix::from_columns(&columns, self.ambient)?;
        let k = m.kernel();
        let vectors = k
            .basis
            .iter()
            .map(|c| {
                let mut v = zero_vector(self.ambient);
                for (coef, b) in c.iter().zip(&self.basis) {
                    if !coef.is_zero() {
                        axpy(&mut v, coef, b);
                    }
                }
                v
            })
            .collect();
        Ok(Self::span_unchecked(self.ambient, vectors))
    }

    /// `dim(self / sub)`; `sub` must lie in `self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize, LinalgError> {
        if !self.contains_subspace(sub)? {
            return Err(LinalgError::NotASubspace);
        }
        Ok(self.dim() - sub.dim())
    }

    /// Vectors of `self` whose classes form a basis of `self / sub`: the
    /// normal forms modulo `sub`, brought to echelon form.
    pub fn complement_in(&self, sub: &Subspace) -> Result<Subspace, LinalgError> {
        if !self.contains_subspace(sub)? {
            return Err(LinalgError::NotASubspace);
        }
        let reduced = self
            .basis
            .iter()
            .map(|v| sub.reduce(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::span_unchecked(self.ambient, reduced))
    }

    /// A basis of standard unit vectors completing `self` to the whole space,
    /// chosen greedily in index order.
    pub fn standard_complement(&self) -> Vec<usize> {
        let mut current = self.clone();
        let mut chosen = Vec::new();
        for i in 0..self.ambient {
            let e = unit_vector(self.ambient, i);
            if !current.contains(&e).expect("ambient matches") {
                chosen.push(i);
                current = current
                    .sum(&Subspace::span_unchecked(self.ambient, vec![e]))
                    .expect("ambient matches");
            }
        }
        chosen
    }
}
