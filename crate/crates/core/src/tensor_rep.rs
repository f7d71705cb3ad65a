//! The action of diagrams on the truncated tensor algebra `T^{≤s}(V)`.
//!
//! A tuple `(i_1, .., i_r)` of 0-based indices addresses `e_{i_1} ⊗ .. ⊗ e_{i_r}`
//! at position `Σ_k i_k n^{r-k}` (lexicographic, first factor most
//! significant). Block `(u, v)` of an endomorphism is the `n^u x n^v` matrix
//! of a map `⊗^v V → ⊗^u V`; globally block rows start at `Σ_{q<u} n^q`.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::diagram_algebra::AlgebraElement;
use crate::diagrams::{Diagram, Permutation, Vertex};
use crate::exact_linalg::{
    commutant, echelon_span, intertwining_constraints, kernel_of_reduced, DenseMatrix, LinalgError, LinearField, RowReducer,
    SparseMatrix, SparseVec, SubspaceBasis,
};
use crate::scalars::Ring;
use crate::symplectic_space::SympSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("expected {expected} indices, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("block ({0},{1}) exceeds the truncation bound {2}")]
    BoundExceeded(usize, usize, usize),
    #[error("block ({u},{v}) must be {rows}x{cols}")]
    BlockShape { u: usize, v: usize, rows: usize, cols: usize },
    #[error("operands disagree on (n, s) or scalars")]
    Incompatible,
}

/// The bilinear form on `V` used to evaluate edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// `<e_i, e_j> = ε_i δ_{ij'}`, with `e*_i` identified with `ε_{i'} e_{i'}`.
    Symplectic(SympSpace),
    /// The dot product on `k^n`, any `n`.
    Orthogonal(usize),
}

/// Which argument kind an edge endpoint carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Covector,
    Vector,
}

impl Form {
    pub fn n(&self) -> usize {
        match self {
            Form::Symplectic(sp) => sp.n(),
            Form::Orthogonal(n) => *n,
        }
    }

    /// `<z_a, z_b>` for basis arguments at 0-based indices `a`, `b`.
    pub fn pair(&self, (sa, a): (Slot, usize), (sb, b): (Slot, usize)) -> i64 {
        let delta = i64::from(a == b);
        match self {
            Form::Orthogonal(_) => delta,
            Form::Symplectic(sp) => match (sa, sb) {
                (Slot::Covector, Slot::Vector) => delta,
                (Slot::Vector, Slot::Covector) => -delta,
                _ => sp.form0(a, b),
            },
        }
    }
}

/// Position of a tuple in the lexicographic basis of `⊗^r k^n`.
pub fn encode(n: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * n + i)
}

/// Inverse of [`encode`].
pub fn decode(n: usize, r: usize, mut index: usize) -> Vec<usize> {
    let mut out = vec![0; r];
    for k in (0..r).rev() {
        out[k] = index % n;
        index /= n;
    }
    out
}

/// `F(D)` on basis covectors `e*_{cov}` and vectors `e_{vec}`: the product
/// over edges of `<initial, terminal>`.
pub fn f_eval(form: &Form, d: &Diagram, cov: &[usize], vec: &[usize]) -> Result<i64, RepError> {
    f_eval_edges(form, d.u(), d.v(), d.pairs(), cov, vec)
}

/// As [`f_eval`] but with each edge taken in the given orientation.
pub fn f_eval_edges(form: &Form, u: usize, v: usize, edges: &[(Vertex, Vertex)], cov: &[usize], vec: &[usize]) -> Result<i64, RepError> {
    if cov.len() != u {
        return Err(RepError::LengthMismatch { expected: u, got: cov.len() });
    }
    if vec.len() != v {
        return Err(RepError::LengthMismatch { expected: v, got: vec.len() });
    }
    let n = form.n();
    if let Some(&bad) = cov.iter().chain(vec).find(|&&i| i >= n) {
        return Err(RepError::IndexOutOfRange(bad, n));
    }
    let arg = |x: Vertex| match x {
        Vertex::Top(i) => (Slot::Covector, cov[i - 1]),
        Vertex::Bottom(j) => (Slot::Vector, vec[j - 1]),
    };
    Ok(edges.iter().map(|&(a, b)| form.pair(arg(a), arg(b))).product())
}

/// Nonzero entries `(row, col, value)` of `M(D)`, enumerated edge by edge.
fn diagram_triplets(form: &Form, d: &Diagram) -> Vec<(usize, usize, i64)> {
    let n = form.n();
    let mut cov = vec![0; d.u()];
    let mut vec = vec![0; d.v()];
    let mut out = Vec::new();
    fn set(x: Vertex, val: usize, cov: &mut [usize], vec: &mut [usize]) {
        match x {
            Vertex::Top(i) => cov[i - 1] = val,
            Vertex::Bottom(j) => vec[j - 1] = val,
        }
    }
    // every edge is nonzero only on a "matching" pair of indices
    let partner = |a: Vertex, b: Vertex, l: usize| -> usize {
        match (form, a, b) {
            (Form::Symplectic(sp), Vertex::Top(_), Vertex::Top(_)) | (Form::Symplectic(sp), Vertex::Bottom(_), Vertex::Bottom(_)) => sp.prime0(l),
            _ => l,
        }
    };
    let edges = d.pairs();
    let total = n.pow(edges.len() as u32);
    for code in 0..total {
        let ls = decode(n.max(1), edges.len(), code);
        for (&(a, b), &l) in edges.iter().zip(&ls) {
            set(a, l, &mut cov, &mut vec);
            set(b, partner(a, b, l), &mut cov, &mut vec);
        }
        let val = f_eval(form, d, &cov, &vec).expect("lengths match");
        if val != 0 {
            out.push((encode(n, &cov), encode(n, &vec), val));
        }
    }
    out
}

/// Element of `End(T^{≤s}(V)) = ⊕_{u,v} Hom(⊗^v V, ⊗^u V)`; absent blocks
/// are zero and no zero block is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockEndomorphism<R: Ring> {
    ring: R,
    n: usize,
    s: usize,
    blocks: BTreeMap<(usize, usize), SparseMatrix<R::Elem>>,
}

/// `Σ_{q<r} n^q`: first global index of the degree-`r` summand.
pub fn offset(n: usize, r: usize) -> usize {
    (0..r).map(|q| n.pow(q as u32)).sum()
}

/// `dim T^{≤s}(V)`.
pub fn total_dim(n: usize, s: usize) -> usize {
    offset(n, s + 1)
}

/// Maps the row-major position inside block `(u,v)` to the flat index of
/// the `D x D` matrix, `D = dim T^{≤s}(V)`. The map is increasing.
pub fn block_to_global(n: usize, s: usize, u: usize, v: usize) -> impl Fn(usize) -> usize {
    let d = total_dim(n, s);
    let (ou, ov, w) = (offset(n, u), offset(n, v), n.pow(v as u32));
    move |k| (ou + k / w) * d + ov + k % w
}

impl<R: Ring> BlockEndomorphism<R> {
    pub fn zero(ring: &R, n: usize, s: usize) -> Self {
        Self { ring: ring.clone(), n, s, blocks: BTreeMap::new() }
    }

    pub fn identity(ring: &R, n: usize, s: usize) -> Self {
        let mut out = Self::zero(ring, n, s);
        for r in 0..=s {
            out.blocks.insert((r, r), SparseMatrix::identity(ring, n.pow(r as u32)));
        }
        out
    }

    /// `E(c_r)`: the projection onto `⊗^r V`.
    pub fn projection(ring: &R, n: usize, s: usize, r: usize) -> Self {
        let mut out = Self::zero(ring, n, s);
        out.blocks.insert((r, r), SparseMatrix::identity(ring, n.pow(r as u32)));
        out
    }

    pub fn from_block(ring: &R, n: usize, s: usize, u: usize, v: usize, m: SparseMatrix<R::Elem>) -> Result<Self, RepError> {
        let mut out = Self::zero(ring, n, s);
        out.set_block(u, v, m)?;
        Ok(out)
    }

    pub fn set_block(&mut self, u: usize, v: usize, m: SparseMatrix<R::Elem>) -> Result<(), RepError> {
        if u > self.s || v > self.s {
            return Err(RepError::BoundExceeded(u, v, self.s));
        }
        let (rows, cols) = (self.n.pow(u as u32), self.n.pow(v as u32));
        if m.rows() != rows || m.cols() != cols {
            return Err(RepError::BlockShape { u, v, rows, cols });
        }
        if m.is_zero() {
            self.blocks.remove(&(u, v));
        } else {
            self.blocks.insert((u, v), m);
        }
        Ok(())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn block(&self, u: usize, v: usize) -> Option<&SparseMatrix<R::Elem>> {
        self.blocks.get(&(u, v))
    }
    pub fn blocks(&self) -> &BTreeMap<(usize, usize), SparseMatrix<R::Elem>> {
        &self.blocks
    }
    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }
    pub fn dim(&self) -> usize {
        total_dim(self.n, self.s)
    }

    fn compatible(&self, other: &Self) -> Result<(), RepError> {
        if self.n != other.n || self.s != other.s || self.ring != other.ring {
            return Err(RepError::Incompatible);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RepError> {
        self.axpy(&self.ring.one(), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &R::Elem, other: &Self) -> Result<Self, RepError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (&(u, v), m) in &other.blocks {
            let sum = match self.blocks.get(&(u, v)) {
                Some(x) => x.axpy(&self.ring, c, m),
                None => m.scale(&self.ring, c),
            };
            out.set_block(u, v, sum).expect("same shape");
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(&self.ring, self.n, self.s);
        for (&(u, v), m) in &self.blocks {
            out.set_block(u, v, m.scale(&self.ring, c)).expect("same shape");
        }
        out
    }

    /// Composition `self ∘ other`.
    pub fn mul(&self, other: &Self) -> Result<Self, RepError> {
        self.compatible(other)?;
        let mut acc: BTreeMap<(usize, usize), SparseMatrix<R::Elem>> = BTreeMap::new();
        for (&(u, v), a) in &self.blocks {
            for (&(_, w), b) in other.blocks.range((v, 0)..=(v, self.s)) {
                let p = a.mul(&self.ring, b);
                let e = acc.entry((u, w)).or_insert_with(|| SparseMatrix::zeros(p.rows(), p.cols()));
                *e = e.add(&self.ring, &p);
            }
        }
        let mut out = Self::zero(&self.ring, self.n, self.s);
        for ((u, w), m) in acc {
            out.set_block(u, w, m).expect("shapes follow");
        }
        Ok(out)
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool, RepError> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// The `D x D` matrix, `D = dim T^{≤s}(V)`.
    pub fn to_matrix(&self) -> SparseMatrix<R::Elem> {
        let d = self.dim();
        let mut trip = Vec::new();
        for (&(u, v), m) in &self.blocks {
            let (ou, ov) = (offset(self.n, u), offset(self.n, v));
            trip.extend(m.triplets().map(|(r, c, x)| (ou + r, ov + c, x.clone())));
        }
        SparseMatrix::from_triplets(&self.ring, d, d, trip)
    }

    /// Row-major coordinates in the `D^2`-dimensional space.
    pub fn flatten(&self) -> SparseVec<R::Elem> {
        self.to_matrix().flatten()
    }

    /// Inverse of [`flatten`](Self::flatten).
    pub fn from_flat(ring: &R, n: usize, s: usize, v: &SparseVec<R::Elem>) -> Self {
        let d = total_dim(n, s);
        let deg = |g: usize| (0..=s).rev().find(|&r| offset(n, r) <= g).expect("index in range");
        let mut acc: BTreeMap<(usize, usize), Vec<(usize, usize, R::Elem)>> = BTreeMap::new();
        for (k, x) in v.entries() {
            let (gr, gc) = (k / d, k % d);
            let (u, w) = (deg(gr), deg(gc));
            acc.entry((u, w)).or_default().push((gr - offset(n, u), gc - offset(n, w), x.clone()));
        }
        let mut out = Self::zero(ring, n, s);
        for ((u, w), t) in acc {
            let m = SparseMatrix::from_triplets(ring, n.pow(u as u32), n.pow(w as u32), t);
            out.set_block(u, w, m).expect("shape");
        }
        out
    }

    /// `{n, s, blocks: {"u,v": [[row, col, "value"], ..]}}`.
    pub fn to_json(&self) -> Value {
        let mut blocks = Map::new();
        for (&(u, v), m) in &self.blocks {
            let trip: Vec<Value> = m.triplets().map(|(r, c, x)| json!([r, c, self.ring.render(x)])).collect();
            blocks.insert(format!("{u},{v}"), Value::Array(trip));
        }
        json!({"n": self.n, "s": self.s, "blocks": blocks})
    }
}

/// `E(D)`: the single block `(u, v)` with entries `F(D)(e*_i.., e_j..)`.
pub fn rep_matrix<R: Ring>(ring: &R, form: &Form, s: usize, d: &Diagram) -> Result<BlockEndomorphism<R>, RepError> {
    let n = form.n();
    let trip = diagram_triplets(form, d).into_iter().map(|(r, c, v)| (r, c, ring.from_i64(v)));
    let m = SparseMatrix::from_triplets(ring, n.pow(d.u() as u32), n.pow(d.v() as u32), trip);
    BlockEndomorphism::from_block(ring, n, s, d.u(), d.v(), m)
}

/// Linear extension of [`rep_matrix`]; the algebra parameter must be `n`.
pub fn rep_element<R: Ring>(form: &Form, x: &AlgebraElement<R>) -> BlockEndomorphism<R> {
    let ring = x.ring();
    let mut out = BlockEndomorphism::zero(ring, form.n(), x.s());
    for (d, c) in x.terms() {
        let m = rep_matrix(ring, form, x.s(), d).expect("element diagrams respect s");
        out = out.axpy(c, &m).expect("same shape");
    }
    out
}

/// `⊗^r A` as a sparse matrix (`r = 0` gives the `1 x 1` identity).
pub fn tensor_power<R: Ring>(ring: &R, a: &DenseMatrix<R::Elem>, r: usize) -> SparseMatrix<R::Elem> {
    let base = SparseMatrix::from_dense(ring, a);
    (0..r).fold(SparseMatrix::identity(ring, 1), |acc, _| acc.kron(ring, &base))
}

/// `⊕_{r=0}^s ⊗^r A`.
pub fn group_rep<R: Ring>(ring: &R, s: usize, a: &DenseMatrix<R::Elem>) -> BlockEndomorphism<R> {
    let n = a.rows();
    let mut out = BlockEndomorphism::zero(ring, n, s);
    let base = SparseMatrix::from_dense(ring, a);
    let mut pow = SparseMatrix::identity(ring, 1);
    for r in 0..=s {
        out.set_block(r, r, pow.clone()).expect("square block");
        pow = pow.kron(ring, &base);
    }
    out
}

/// Place permutation `π·(x_1 ⊗ .. ⊗ x_r) = x_{π^{-1}(1)} ⊗ .. ⊗ x_{π^{-1}(r)}`.
pub fn sym_action<R: Ring>(ring: &R, n: usize, pi: &Permutation) -> SparseMatrix<R::Elem> {
    let r = pi.len();
    let inv = pi.inverse();
    let size = n.pow(r as u32);
    let trip = (0..size).map(|j| {
        let js = decode(n, r, j);
        let is: Vec<usize> = (0..r).map(|k| js[inv.apply(k)]).collect();
        (encode(n, &is), j, ring.one())
    });
    SparseMatrix::from_triplets(ring, size, size, trip)
}

/// Generators of `⊕_r k⟨Sym_r⟩` acting on `T^{≤s}(V)`: each projection onto
/// `⊗^r V` and each adjacent transposition supported on block `(r, r)`.
pub fn symmetric_generators<R: Ring>(ring: &R, n: usize, s: usize) -> Vec<BlockEndomorphism<R>> {
    let mut out = Vec::new();
    for r in 0..=s {
        out.push(BlockEndomorphism::projection(ring, n, s, r));
        for i in 0..r.saturating_sub(1) {
            let p = sym_action(ring, n, &Permutation::adjacent_transposition(r, i));
            out.push(BlockEndomorphism::from_block(ring, n, s, r, r, p).expect("square block"));
        }
    }
    out
}

/// Whether `t` commutes with every element of `⊕_r k⟨Sym_r⟩`.
pub fn is_bisymmetric<R: Ring>(t: &BlockEndomorphism<R>) -> bool {
    symmetric_generators(t.ring(), t.n(), t.s())
        .iter()
        .all(|g| t.commutes_with(g).expect("same shape"))
}

/// Bisymmetric space computed as the commutant of the full `D x D`
/// matrices of [`symmetric_generators`].
pub fn bisymmetric_space_raw<F: LinearField>(field: &F, n: usize, s: usize) -> Result<SubspaceBasis<F>, LinalgError> {
    let mats: Vec<_> = symmetric_generators(field, n, s).iter().map(|g| g.to_matrix()).collect();
    commutant(field, total_dim(n, s), &mats)
}

/// Bisymmetric space assembled from `End_{Sym_r}(⊗^r V)` block by block.
pub fn bisymmetric_space_blocks<F: LinearField>(field: &F, n: usize, s: usize) -> Result<SubspaceBasis<F>, LinalgError> {
    let d = total_dim(n, s);
    let mut rows = Vec::new();
    for r in 0..=s {
        let size = n.pow(r as u32);
        let gens: Vec<_> = (0..r.saturating_sub(1))
            .map(|i| sym_action(field, n, &Permutation::adjacent_transposition(r, i)))
            .collect();
        let local = commutant(field, size, &gens)?;
        let to_global = block_to_global(n, s, r, r);
        rows.extend(local.rows().iter().map(|v| v.map_indices(&to_global)));
    }
    echelon_span(field, d * d, &rows)
}

/// `{X_{uv} : X_{uv} R = L X_{uv}}` for one block, embedded in `D^2`
/// coordinates, for each pair `(L, R)` in `pairs`.
pub fn block_intertwiners<F: LinearField>(
    field: &F,
    n: usize,
    s: usize,
    u: usize,
    v: usize,
    pairs: &[(SparseMatrix<F::Elem>, SparseMatrix<F::Elem>)],
) -> Vec<SparseVec<F::Elem>> {
    let ambient = n.pow((u + v) as u32);
    let mut red = field.reducer(ambient);
    for (l, r) in pairs {
        for row in intertwining_constraints(field, l, r) {
            red.insert(&row);
        }
    }
    let local = kernel_of_reduced(field, red);
    let to_global = block_to_global(n, s, u, v);
    local.rows().iter().map(|x| x.map_indices(&to_global)).collect()
}
