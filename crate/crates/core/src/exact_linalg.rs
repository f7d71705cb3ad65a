//! Exact linear algebra over `Q` and `GF(p)`.
//!
//! Everything is expressed through sparse coordinate vectors. Spans are
//! accumulated by a field-specific [`RowReducer`]: fraction-free integer
//! elimination for the rationals and plain elimination modulo `p` for prime
//! fields. Finished spans are stored as reduced row-echelon bases, which are
//! unique, so subspace equality is a plain comparison of bases.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::scalars::{Field, PrimeField, Rational, Rationals, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension is zero")]
    EmptyAmbient,
    #[error("vector index {index} outside ambient dimension {ambient}")]
    OutOfRange { index: usize, ambient: usize },
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix shape mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    ShapeMismatch { expected: usize, rows: usize, cols: usize },
}

// ---------------------------------------------------------------------------
// Sparse vectors and matrices

/// Sparse coordinate vector: strictly increasing indices, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec<E> {
    entries: Vec<(usize, E)>,
}

impl<E: Clone> SparseVec<E> {
    pub fn zero() -> Self {
        Self { entries: Vec::new() }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs; repeated
    /// indices are summed and zeros dropped.
    pub fn from_pairs<R: Ring<Elem = E>>(ring: &R, pairs: impl IntoIterator<Item = (usize, E)>) -> Self {
        let mut acc: BTreeMap<usize, E> = BTreeMap::new();
        for (i, v) in pairs {
            match acc.get_mut(&i) {
                Some(x) => *x = ring.add(x, &v),
                None => {
                    acc.insert(i, v);
                }
            }
        }
        Self {
            entries: acc.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect(),
        }
    }

    pub fn from_dense<R: Ring<Elem = E>>(ring: &R, dense: &[E]) -> Self {
        Self {
            entries: dense
                .iter()
                .enumerate()
                .filter(|(_, v)| !ring.is_zero(v))
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R, len: usize) -> Vec<E> {
        let mut out = vec![ring.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Option<&E> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &E)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        if ring.is_zero(c) {
            return Self::zero();
        }
        Self {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, ring.mul(v, c)))
                .filter(|(_, v)| !ring.is_zero(v))
                .collect(),
        }
    }

    /// `self + c * other`
    pub fn axpy<R: Ring<Elem = E>>(&self, ring: &R, c: &E, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) if i == j => {
                    let v = ring.add(x, &ring.mul(c, y));
                    if !ring.is_zero(&v) {
                        out.push((*i, v));
                    }
                    a.next();
                    b.next();
                }
                (Some((i, x)), Some((j, _))) if i < j => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (Some(_), Some((j, y))) | (None, Some((j, y))) => {
                    let v = ring.mul(c, y);
                    if !ring.is_zero(&v) {
                        out.push((*j, v));
                    }
                    b.next();
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut entries: Vec<(usize, E)> = self.entries.iter().map(|(i, v)| (f(*i), v.clone())).collect();
        entries.sort_by_key(|(i, _)| *i);
        Self { entries }
    }

    pub fn to_json<R: Ring<Elem = E>>(&self, ring: &R) -> Value {
        Value::Array(self.entries.iter().map(|(i, v)| json!([i, ring.render(v)])).collect())
    }
}

/// Row-major sparse matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<E>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![SparseVec::zero(); rows] }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, size: usize) -> Self {
        Self {
            rows: size,
            cols: size,
            data: (0..size).map(|i| SparseVec { entries: vec![(i, ring.one())] }).collect(),
        }
    }

    pub fn from_triplets<R: Ring<Elem = E>>(
        ring: &R,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Self {
        let mut buckets: Vec<Vec<(usize, E)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            buckets[r].push((c, v));
        }
        Self {
            rows,
            cols,
            data: buckets.into_iter().map(|b| SparseVec::from_pairs(ring, b)).collect(),
        }
    }

    pub fn from_dense<R: Ring<Elem = E>>(ring: &R, m: &DenseMatrix<E>) -> Self {
        Self {
            rows: m.rows,
            cols: m.cols,
            data: (0..m.rows).map(|r| SparseVec::from_dense(ring, m.row(r))).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn row(&self, r: usize) -> &SparseVec<E> {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&E> {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.entries.iter().map(move |(c, v)| (r, c.to_owned(), v)))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::zero();
                for (k, a) in &row.entries {
                    acc = acc.axpy(ring, a, &rhs.data[*k]);
                }
                acc
            })
            .collect();
        Self { rows: self.rows, cols: rhs.cols, data }
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Self) -> Self {
        self.axpy(ring, &ring.one(), rhs)
    }

    pub fn axpy<R: Ring<Elem = E>>(&self, ring: &R, c: &E, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.axpy(ring, c, b)).collect(),
        }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scale(ring, c)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<Vec<(usize, E)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in &row.entries {
                buckets[*c].push((r, v.clone()));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data: buckets.into_iter().map(|entries| SparseVec { entries }).collect(),
        }
    }

    /// Kronecker product `self ⊗ rhs`, row index `r1 * rhs.rows + r2`.
    pub fn kron<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Self) -> Self {
        let mut data = Vec::with_capacity(self.rows * rhs.rows);
        for a_row in &self.data {
            for b_row in &rhs.data {
                let mut entries = Vec::with_capacity(a_row.nnz() * b_row.nnz());
                for (ca, va) in &a_row.entries {
                    for (cb, vb) in &b_row.entries {
                        let v = ring.mul(va, vb);
                        if !ring.is_zero(&v) {
                            entries.push((ca * rhs.cols + cb, v));
                        }
                    }
                }
                data.push(SparseVec { entries });
            }
        }
        Self { rows: self.rows * rhs.rows, cols: self.cols * rhs.cols, data }
    }

    /// Row-major flattening into a vector of length `rows * cols`.
    pub fn flatten(&self) -> SparseVec<E> {
        let entries = self
            .data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.entries.iter().map(move |(c, v)| (r * self.cols + c, v.clone())))
            .collect();
        SparseVec { entries }
    }

    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R) -> DenseMatrix<E> {
        let mut m = DenseMatrix::zeros(ring, self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            m.set(r, c, v.clone());
        }
        m
    }
}

/// Small dense matrix used for group elements and determinants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> DenseMatrix<E> {
    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows<R: Ring<Elem = E>>(ring: &R, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| ring.from_i64(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = ring.add(out.get(i, j), &ring.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| ring.mul(v, c)).collect(),
        }
    }

    pub fn map<T>(&self, f: impl Fn(&E) -> T) -> DenseMatrix<T> {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_json<R: Ring<Elem = E>>(&self, ring: &R) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|r| Value::Array(self.row(r).iter().map(|v| Value::String(ring.render(v))).collect()))
                .collect(),
        )
    }
}

/// Determinant by Gaussian elimination over a field.
pub fn determinant<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut det = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !field.is_zero(a.get(r, col))) else {
            return field.zero();
        };
        if piv != col {
            for c in 0..n {
                let tmp = a.get(piv, c).clone();
                a.set(piv, c, a.get(col, c).clone());
                a.set(col, c, tmp);
            }
            det = field.neg(&det);
        }
        let p = a.get(col, col).clone();
        det = field.mul(&det, &p);
        let pinv = field.inv(&p).expect("nonzero pivot");
        for r in col + 1..n {
            let f = field.mul(a.get(r, col), &pinv);
            if field.is_zero(&f) {
                continue;
            }
            for c in col..n {
                let v = field.sub(a.get(r, c), &field.mul(&f, a.get(col, c)));
                a.set(r, c, v);
            }
        }
    }
    det
}

// ---------------------------------------------------------------------------
// Reduced echelon bases

/// Canonical reduced row-echelon basis of a subspace of `F^ambient`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> SubspaceBasis<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Self { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Self {
            field: field.clone(),
            ambient,
            rows: (0..ambient).map(|i| SparseVec { entries: vec![(i, field.one())] }).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Exact membership test. Uses the reduced form: `v` lies in the span iff
    /// it equals `sum_i v[pivot_i] * row_i`.
    pub fn contains_vector(&self, v: &SparseVec<F::Elem>) -> bool {
        let f = &self.field;
        let mut combo = SparseVec::zero();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = v.get(p) {
                combo = combo.axpy(f, c, row);
            }
        }
        combo == *v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient": self.ambient,
            "dim": self.dim(),
            "pivots": self.pivots,
            "rows": self.rows.iter().map(|r| r.to_json(&self.field)).collect::<Vec<_>>(),
        })
    }
}

/// Incremental span builder.
pub trait RowReducer<F: Field> {
    /// Adds `v` to the span; returns whether the rank grew.
    fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool;
    fn contains(&self, v: &SparseVec<F::Elem>) -> bool;
    fn rank(&self) -> usize;
    fn finish(self) -> SubspaceBasis<F>;
}

/// Fields for which an elimination engine is available.
pub trait LinearField: Field {
    type Reducer: RowReducer<Self> + Send;
    fn reducer(&self, ambient: usize) -> Self::Reducer;
}

// --- fraction-free engine over Q -------------------------------------------

type IntRow = Vec<(usize, BigInt)>;

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let flip = row.first().is_some_and(|(_, v)| v.is_negative());
    if !g.is_one() && !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    if flip {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
}

/// `a * x - b * y`, dropping zeros.
fn int_combine(a: &BigInt, x: &IntRow, b: &BigInt, y: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let next = match (x.get(i), y.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                i += 1;
                j += 1;
                (*ci, a * vi - b * vj)
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                i += 1;
                (*ci, a * vi)
            }
            (Some(_), Some((cj, vj))) | (None, Some((cj, vj))) => {
                j += 1;
                (*cj, -(b * vj))
            }
            (Some((ci, vi)), None) => {
                i += 1;
                (*ci, a * vi)
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

fn integer_row(v: &SparseVec<Rational>) -> IntRow {
    let mut l = BigInt::one();
    for (_, x) in v.entries() {
        l = l.lcm(x.denom());
    }
    let mut row: IntRow = v
        .entries()
        .iter()
        .map(|(i, x)| (*i, x.numer() * (&l / x.denom())))
        .collect();
    make_primitive(&mut row);
    row
}

/// Reduces `v` against the pivot rows at its leading positions.
fn int_reduce(pivots: &BTreeMap<usize, IntRow>, mut v: IntRow) -> IntRow {
    while let Some((c, lead)) = v.first().cloned() {
        let Some(r) = pivots.get(&c) else { break };
        let g = lead.gcd(&r[0].1);
        let a = &r[0].1 / &g;
        let b = &lead / &g;
        v = int_combine(&a, &v, &b, r);
        make_primitive(&mut v);
    }
    v
}

/// Fraction-free elimination over `Z` for rational inputs.
#[derive(Debug, Clone)]
pub struct FractionFreeReducer {
    ambient: usize,
    pivots: BTreeMap<usize, IntRow>,
}

impl RowReducer<Rationals> for FractionFreeReducer {
    fn insert(&mut self, v: &SparseVec<Rational>) -> bool {
        if let Some(m) = v.max_index() {
            assert!(m < self.ambient, "index {m} outside ambient {}", self.ambient);
        }
        let row = int_reduce(&self.pivots, integer_row(v));
        match row.first() {
            Some((c, _)) => {
                self.pivots.insert(*c, row);
                true
            }
            None => false,
        }
    }

    fn contains(&self, v: &SparseVec<Rational>) -> bool {
        int_reduce(&self.pivots, integer_row(v)).is_empty()
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn finish(self) -> SubspaceBasis<Rationals> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut rows: Vec<IntRow> = self.pivots.into_values().collect();
        // Back substitution from the bottom; each row is cleared at every
        // later pivot column using the already-reduced rows below it.
        for i in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(i + 1);
            let row = &mut head[i];
            for (k, other) in tail.iter().enumerate() {
                let pc = cols[i + 1 + k];
                let Ok(pos) = row.binary_search_by_key(&pc, |(c, _)| *c) else { continue };
                let coef = row[pos].1.clone();
                let g = coef.gcd(&other[0].1);
                let a = &other[0].1 / &g;
                let b = &coef / &g;
                *row = int_combine(&a, row, &b, other);
                make_primitive(row);
            }
        }
        let rows = rows
            .into_iter()
            .map(|r| {
                let lead = r[0].1.clone();
                SparseVec {
                    entries: r.into_iter().map(|(c, v)| (c, Rational::new(v, lead.clone()))).collect(),
                }
            })
            .collect();
        SubspaceBasis { field: Rationals, ambient: self.ambient, rows, pivots: cols }
    }
}

impl LinearField for Rationals {
    type Reducer = FractionFreeReducer;
    fn reducer(&self, ambient: usize) -> FractionFreeReducer {
        FractionFreeReducer { ambient, pivots: BTreeMap::new() }
    }
}

// --- elimination modulo p ---------------------------------------------------

#[derive(Debug, Clone)]
pub struct ModularReducer {
    field: PrimeField,
    ambient: usize,
    // pivot rows normalised to leading coefficient 1
    pivots: BTreeMap<usize, SparseVec<u32>>,
}

impl ModularReducer {
    fn reduce(&self, mut v: SparseVec<u32>) -> SparseVec<u32> {
        while let Some((c, lead)) = v.leading().map(|(c, x)| (c, *x)) {
            let Some(r) = self.pivots.get(&c) else { break };
            v = v.axpy(&self.field, &self.field.neg(&lead), r);
        }
        v
    }
}

impl RowReducer<PrimeField> for ModularReducer {
    fn insert(&mut self, v: &SparseVec<u32>) -> bool {
        if let Some(m) = v.max_index() {
            assert!(m < self.ambient, "index {m} outside ambient {}", self.ambient);
        }
        let v = self.reduce(v.clone());
        match v.leading().map(|(c, x)| (c, *x)) {
            Some((c, lead)) => {
                let inv = self.field.inv(&lead).expect("nonzero");
                self.pivots.insert(c, v.scale(&self.field, &inv));
                true
            }
            None => false,
        }
    }

    fn contains(&self, v: &SparseVec<u32>) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn finish(self) -> SubspaceBasis<PrimeField> {
        let f = self.field;
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut rows: Vec<SparseVec<u32>> = self.pivots.into_values().collect();
        for i in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(i + 1);
            for (k, other) in tail.iter().enumerate() {
                if let Some(&c) = head[i].get(cols[i + 1 + k]) {
                    head[i] = head[i].axpy(&f, &f.neg(&c), other);
                }
            }
        }
        SubspaceBasis { field: f, ambient: self.ambient, rows, pivots: cols }
    }
}

impl LinearField for PrimeField {
    type Reducer = ModularReducer;
    fn reducer(&self, ambient: usize) -> ModularReducer {
        ModularReducer { field: *self, ambient, pivots: BTreeMap::new() }
    }
}

// ---------------------------------------------------------------------------
// Span, kernel, commutant

fn check_range<E: Clone>(v: &SparseVec<E>, ambient: usize) -> Result<(), LinalgError> {
    match v.max_index() {
        Some(index) if index >= ambient => Err(LinalgError::OutOfRange { index, ambient }),
        _ => Ok(()),
    }
}

/// Reduced-echelon basis of the span of `vectors`. The result does not
/// depend on the order of the input.
pub fn echelon_span<'a, F: LinearField>(
    field: &F,
    ambient: usize,
    vectors: impl IntoIterator<Item = &'a SparseVec<F::Elem>>,
) -> Result<SubspaceBasis<F>, LinalgError>
where
    F::Elem: 'a,
{
    if ambient == 0 {
        return Err(LinalgError::EmptyAmbient);
    }
    let mut red = field.reducer(ambient);
    for v in vectors {
        check_range(v, ambient)?;
        red.insert(v);
    }
    Ok(red.finish())
}

/// Null space of the linear system whose rows are `constraints`.
pub fn kernel<'a, F: LinearField>(
    field: &F,
    ambient: usize,
    constraints: impl IntoIterator<Item = &'a SparseVec<F::Elem>>,
) -> Result<SubspaceBasis<F>, LinalgError>
where
    F::Elem: 'a,
{
    let mut red = field.reducer(ambient);
    for c in constraints {
        check_range(c, ambient)?;
        red.insert(c);
    }
    Ok(kernel_of_reduced(field, red))
}

/// Null space of rows already accumulated in a reducer.
pub fn kernel_of_reduced<F: LinearField>(field: &F, red: F::Reducer) -> SubspaceBasis<F> {
    let rref = red.finish();
    let ambient = rref.ambient;
    let rank = rref.dim();
    if ambient == 0 {
        return SubspaceBasis::zero(field, 0);
    }
    let mut is_pivot = vec![false; ambient];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    // Column-major view of the non-pivot entries of the reduced rows.
    let mut by_col: BTreeMap<usize, Vec<(usize, F::Elem)>> = BTreeMap::new();
    for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
        for (c, v) in row.entries() {
            if *c != p {
                by_col.entry(*c).or_default().push((p, v.clone()));
            }
        }
    }
    let mut out = field.reducer(ambient);
    for free in (0..ambient).filter(|&c| !is_pivot[c]) {
        let mut pairs = vec![(free, field.one())];
        if let Some(col) = by_col.get(&free) {
            pairs.extend(col.iter().map(|(p, v)| (*p, field.neg(v))));
        }
        out.insert(&SparseVec::from_pairs(field, pairs));
    }
    let ker = out.finish();
    assert_eq!(ker.dim() + rank, ambient, "rank-nullity violated");
    ker
}

/// Alias of [`kernel`] for systems written as homogeneous constraints.
pub fn solve_homogeneous<'a, F: LinearField>(
    field: &F,
    ambient: usize,
    constraints: impl IntoIterator<Item = &'a SparseVec<F::Elem>>,
) -> Result<SubspaceBasis<F>, LinalgError>
where
    F::Elem: 'a,
{
    kernel(field, ambient, constraints)
}

/// Rows of the linear system `X M - M X = 0` in the unknowns `X[i][j]`,
/// flattened as `i * dim + j`.
pub fn commutation_constraints<R: Ring>(ring: &R, m: &SparseMatrix<R::Elem>) -> Vec<SparseVec<R::Elem>> {
    let dim = m.rows();
    let mt = m.transpose();
    let mut out = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            // (XM)_{ij} = sum_k X_{ik} M_{kj};  (MX)_{ij} = sum_k M_{ik} X_{kj}
            let left = mt.row(j).entries().iter().map(|(k, v)| (i * dim + k, v.clone()));
            let right = m.row(i).entries().iter().map(|(k, v)| (k * dim + j, ring.neg(v)));
            let row = SparseVec::from_pairs(ring, left.chain(right));
            if !row.is_zero() {
                out.push(row);
            }
        }
    }
    out
}

/// Rows of `X R - L X = 0` for an unknown `a x b` matrix `X` (row-major),
/// with `L` of size `a x a` and `R` of size `b x b`.
pub fn intertwining_constraints<R: Ring>(ring: &R, left: &SparseMatrix<R::Elem>, right: &SparseMatrix<R::Elem>) -> Vec<SparseVec<R::Elem>> {
    let (a, b) = (left.rows(), right.rows());
    let rt = right.transpose();
    let mut out = Vec::new();
    for i in 0..a {
        for j in 0..b {
            let xr = rt.row(j).entries().iter().map(|(k, v)| (i * b + k, v.clone()));
            let lx = left.row(i).entries().iter().map(|(k, v)| (k * b + j, ring.neg(v)));
            let row = SparseVec::from_pairs(ring, xr.chain(lx));
            if !row.is_zero() {
                out.push(row);
            }
        }
    }
    out
}

/// The commutant `{X : X M = M X for all M}` as a subspace of the
/// `dim^2`-dimensional space of matrices (row-major coordinates).
pub fn commutant<F: LinearField>(
    field: &F,
    dim: usize,
    matrices: &[SparseMatrix<F::Elem>],
) -> Result<SubspaceBasis<F>, LinalgError> {
    for m in matrices {
        if m.rows() != dim || m.cols() != dim {
            return Err(LinalgError::ShapeMismatch { expected: dim, rows: m.rows(), cols: m.cols() });
        }
    }
    let mut red = field.reducer(dim * dim);
    for m in matrices {
        for row in commutation_constraints(field, m) {
            red.insert(&row);
        }
    }
    Ok(kernel_of_reduced(field, red))
}

pub fn subspace_equal<F: Field>(a: &SubspaceBasis<F>, b: &SubspaceBasis<F>) -> Result<bool, LinalgError> {
    if a.ambient != b.ambient {
        return Err(LinalgError::AmbientMismatch(a.ambient, b.ambient));
    }
    Ok(a.pivots == b.pivots && a.rows == b.rows)
}

/// Whether `b ⊆ a`.
pub fn subspace_contains<F: Field>(a: &SubspaceBasis<F>, b: &SubspaceBasis<F>) -> Result<bool, LinalgError> {
    if a.ambient != b.ambient {
        return Err(LinalgError::AmbientMismatch(a.ambient, b.ambient));
    }
    Ok(b.dim() <= a.dim() && b.rows.iter().all(|r| a.contains_vector(r)))
}

/// Rank of a family of vectors.
pub fn rank<'a, F: LinearField>(field: &F, ambient: usize, vectors: impl IntoIterator<Item = &'a SparseVec<F::Elem>>) -> usize
where
    F::Elem: 'a,
{
    let mut red = field.reducer(ambient);
    for v in vectors {
        red.insert(v);
    }
    red.rank()
}
