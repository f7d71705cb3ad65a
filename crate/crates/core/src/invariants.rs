//! Polynomial side: functions on `Mat_n`, the quadrics `g_ij`, `ḡ_ij`, the
//! dilation, truncated ideal spans, Pfaffians, King tableaux and graded
//! dimensions of the coordinate ring of `Sp_n`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::diagram_algebra::AlgebraElement;
use crate::diagrams::{Diagram, Vertex};
use crate::exact_linalg::{echelon_span, DenseMatrix, SparseVec, SubspaceBasis};
use crate::scalars::{Rational, Rationals, Ring};
use crate::symplectic_space::SympSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("need 1 <= i < j <= {n}, got ({i},{j})")]
    BadPair { i: usize, j: usize, n: usize },
    #[error("n = {0} must be even and positive")]
    OddDimension(usize),
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("partition {0:?} has more than {1} parts")]
    TooManyParts(Vec<usize>, usize),
    #[error("truncation degree must be at least 2")]
    DegreeTooSmall,
}

/// Exponent vector over `x_11, x_12, .., x_nn` (row-major).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Self(vec![0; vars])
    }

    pub fn var(vars: usize, k: usize) -> Self {
        let mut e = vec![0; vars];
        e[k] = 1;
        Self(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Graded lex: higher degree first is "greater"; ties broken so that a
/// larger power of an earlier variable is greater.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of exact degree `d` in `vars` variables, ascending.
pub fn monomials_of_degree(vars: usize, d: usize) -> Vec<Monomial> {
    fn rec(k: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if k + 1 == cur.len() {
            cur[k] = left as u8;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[k] = e as u8;
            rec(k + 1, left - e, cur, out);
        }
    }
    if vars == 0 {
        return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; vars], &mut out);
    out.sort();
    out
}

/// Polynomial in the entry functions of `n x n` matrices over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatPoly {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MatPoly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: i64) -> Self {
        Self::zero(n).plus_term(Monomial::one(n * n), Rational::from_integer(c.into()))
    }

    /// The entry function `x_ij` (1-based).
    pub fn entry(n: usize, i: usize, j: usize) -> Self {
        Self::zero(n).plus_term(Monomial::var(n * n, (i - 1) * n + (j - 1)), Rational::one())
    }

    fn plus_term(mut self, m: Monomial, c: Rational) -> Self {
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        other.terms.iter().fold(self.clone(), |acc, (m, c)| acc.plus_term(m.clone(), c.clone()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.terms.iter().fold(Self::zero(self.n), |acc, (m, x)| acc.plus_term(m.clone(), x * c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out = out.plus_term(a.mul(b), x * y);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|(a, x)| (a.mul(m), x.clone())).collect() }
    }

    /// The part of exact degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        Self { n: self.n, terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Value at the matrix `a` over any ring receiving rationals through `lift`.
    pub fn eval<R: Ring>(&self, ring: &R, a: &DenseMatrix<R::Elem>, lift: impl Fn(&Rational) -> R::Elem) -> R::Elem {
        let n = self.n;
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut v = lift(c);
            for (k, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    v = ring.mul(&v, &ring.pow(a.get(k / n, k % n), e as u32));
                }
            }
            acc = ring.add(&acc, &v);
        }
        acc
    }

    /// Exact value at a rational matrix.
    pub fn eval_q(&self, a: &DenseMatrix<Rational>) -> Rational {
        self.eval(&Rationals, a, Clone::clone)
    }

    /// Coordinates against a monomial index.
    pub fn to_vector(&self, index: &BTreeMap<Monomial, usize>) -> SparseVec<Rational> {
        SparseVec::from_pairs(&Rationals, self.terms.iter().map(|(m, c)| (index[m], c.clone())))
    }
}

impl fmt::Display for MatPoly {
    /// Terms in descending graded-lex order, e.g. `x11*x22 - x12*x21`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            for (v, &e) in m.0.iter().enumerate() {
                let name = format!("x{}{}", v / self.n + 1, v % self.n + 1);
                factors.extend(std::iter::repeat(name).take(e as usize));
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

fn space(n: usize) -> Result<SympSpace, InvariantError> {
    SympSpace::new(n).map_err(|_| InvariantError::OddDimension(n))
}

/// `Σ_l ε_l x_{li} x_{l'j}` for any `i, j` (the `(i,j)` entry of `AᵀJA`).
pub fn column_pairing(i: usize, j: usize, n: usize) -> Result<MatPoly, InvariantError> {
    let sp = space(n)?;
    let mut out = MatPoly::zero(n);
    for l in 1..=n {
        let t = MatPoly::entry(n, l, i).mul(&MatPoly::entry(n, sp.prime(l).unwrap(), j));
        out = out.add(&t.scale(&Rational::from_integer(sp.eps(l).unwrap().into())));
    }
    Ok(out)
}

/// `Σ_l ε_l x_{il} x_{jl'}` for any `i, j` (the `(i,j)` entry of `AJAᵀ`).
pub fn row_pairing(i: usize, j: usize, n: usize) -> Result<MatPoly, InvariantError> {
    let sp = space(n)?;
    let mut out = MatPoly::zero(n);
    for l in 1..=n {
        let t = MatPoly::entry(n, i, l).mul(&MatPoly::entry(n, j, sp.prime(l).unwrap()));
        out = out.add(&t.scale(&Rational::from_integer(sp.eps(l).unwrap().into())));
    }
    Ok(out)
}

fn check_pair(i: usize, j: usize, n: usize) -> Result<(), InvariantError> {
    if i == 0 || i >= j || j > n {
        return Err(InvariantError::BadPair { i, j, n });
    }
    Ok(())
}

/// `g_ij`, `1 <= i < j <= n`.
pub fn gen_g(i: usize, j: usize, n: usize) -> Result<MatPoly, InvariantError> {
    check_pair(i, j, n)?;
    column_pairing(i, j, n)
}

/// `ḡ_ij`, `1 <= i < j <= n`.
pub fn gen_gbar(i: usize, j: usize, n: usize) -> Result<MatPoly, InvariantError> {
    check_pair(i, j, n)?;
    row_pairing(i, j, n)
}

/// `δ_{ij'} ε_i`, the value of `g_ij` on `Sp_n`.
pub fn shift(i: usize, j: usize, n: usize) -> i64 {
    let sp = SympSpace::new(n).expect("even n");
    if j == sp.prime(i).unwrap() {
        sp.eps(i).unwrap()
    } else {
        0
    }
}

/// The coefficient of dilation `ε_1 g_{1 1'}`.
pub fn dilation(n: usize) -> Result<MatPoly, InvariantError> {
    gen_g(1, n, n)
}

/// Which quadrics generate the ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSet {
    G,
    GBar,
    Both,
}

/// The quadrics `g_ij` and/or `ḡ_ij` (`i < j`), unshifted.
pub fn quadrics(n: usize, set: GeneratorSet) -> Result<Vec<(usize, usize, MatPoly)>, InvariantError> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if set != GeneratorSet::GBar {
                out.push((i, j, gen_g(i, j, n)?));
            }
            if set != GeneratorSet::G {
                out.push((i, j, gen_gbar(i, j, n)?));
            }
        }
    }
    Ok(out)
}

/// Shifted generators `g_ij - δ_{ij'}ε_i` (and/or the `ḡ` versions).
pub fn ideal_generators(n: usize, set: GeneratorSet) -> Result<Vec<MatPoly>, InvariantError> {
    Ok(quadrics(n, set)?
        .into_iter()
        .map(|(i, j, g)| g.sub(&MatPoly::constant(n, shift(i, j, n))))
        .collect())
}

/// Monomials of degree `<= s` in `n^2` variables, indexed in ascending order.
pub fn monomial_index(n: usize, s: usize) -> BTreeMap<Monomial, usize> {
    (0..=s)
        .flat_map(|d| monomials_of_degree(n * n, d))
        .enumerate()
        .map(|(k, m)| (m, k))
        .collect()
}

/// `C(a, b)`.
pub fn binomial(a: usize, b: usize) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1u128, |acc, k| acc * (a - k) as u128 / (k + 1) as u128)
}

/// `dim k[Mat_n]^{≤s} = C(n^2 + s, s)`.
pub fn dim_polys_upto(n: usize, s: usize) -> usize {
    binomial(n * n + s, s) as usize
}

/// `dim k[Mat_n]^l = C(n^2 + l - 1, l)`.
pub fn dim_polys_degree(n: usize, l: usize) -> usize {
    binomial(n * n + l - 1, l) as usize
}

/// `I^{≤s}` as the span of `(generator) * monomial` with total degree `<= s`.
pub fn truncated_ideal_span(n: usize, s: usize, set: GeneratorSet) -> Result<SubspaceBasis<Rationals>, InvariantError> {
    if s < 2 {
        return Err(InvariantError::DegreeTooSmall);
    }
    let index = monomial_index(n, s);
    let gens = ideal_generators(n, set)?;
    let mults: Vec<Monomial> = (0..=s - 2).flat_map(|d| monomials_of_degree(n * n, d)).collect();
    let vecs: Vec<SparseVec<Rational>> = gens
        .iter()
        .flat_map(|g| mults.iter().map(|m| g.mul_monomial(m).to_vector(&index)))
        .collect();
    Ok(echelon_span(&Rationals, index.len(), &vecs).expect("nonempty ambient"))
}

pub fn truncated_ideal_dim(n: usize, s: usize, set: GeneratorSet) -> Result<usize, InvariantError> {
    Ok(truncated_ideal_span(n, s, set)?.dim())
}

/// Degree-`l` piece of the homogeneous ideal generated by the unshifted
/// quadrics: span of `q * m` with `deg m = l - 2`.
pub fn homogeneous_ideal_dim(n: usize, l: usize, set: GeneratorSet) -> Result<usize, InvariantError> {
    if l < 2 {
        return Ok(0);
    }
    let index: BTreeMap<Monomial, usize> = monomials_of_degree(n * n, l).into_iter().enumerate().map(|(k, m)| (m, k)).collect();
    let qs = quadrics(n, set)?;
    let mults = monomials_of_degree(n * n, l - 2);
    let vecs: Vec<SparseVec<Rational>> = qs
        .iter()
        .flat_map(|(_, _, q)| mults.iter().map(|m| q.mul_monomial(m).to_vector(&index)))
        .collect();
    Ok(echelon_span(&Rationals, index.len(), &vecs).expect("nonempty ambient").dim())
}

/// Signed perfect matchings of `{0, .., 2r-1}`: pairs `(a, b)` with `a < b`,
/// first entries increasing; the sign is the parity of the permutation
/// `(a_1, b_1, a_2, b_2, ..)` by inversion count.
pub fn pfaffian_terms(size: usize) -> Vec<(i8, Vec<(usize, usize)>)> {
    fn rec(free: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(acc.clone());
            return;
        }
        let a = free.remove(0);
        for k in 0..free.len() {
            let b = free.remove(k);
            acc.push((a, b));
            rec(free, acc, out);
            acc.pop();
            free.insert(k, b);
        }
        free.insert(0, a);
    }
    if size % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(&mut (0..size).collect(), &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|pairs| {
            let word: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            let inv = (0..word.len()).flat_map(|i| (i + 1..word.len()).map(move |j| (i, j))).filter(|&(i, j)| word[i] > word[j]).count();
            (if inv % 2 == 0 { 1 } else { -1 }, pairs)
        })
        .collect()
}

/// `Pf(A) = Σ_π sgn(π) Π a_{π(2i-1) π(2i)}` for an alternating matrix.
pub fn pfaffian<R: Ring>(ring: &R, a: &DenseMatrix<R::Elem>) -> Result<R::Elem, InvariantError> {
    let k = a.rows();
    if a.cols() != k {
        return Err(InvariantError::NotAlternating);
    }
    for i in 0..k {
        if !ring.is_zero(a.get(i, i)) {
            return Err(InvariantError::NotAlternating);
        }
        for j in 0..i {
            if ring.add(a.get(i, j), a.get(j, i)) != ring.zero() {
                return Err(InvariantError::NotAlternating);
            }
        }
    }
    if k % 2 == 1 {
        return Ok(ring.zero());
    }
    let mut acc = ring.zero();
    for (sign, pairs) in pfaffian_terms(k) {
        let prod = pairs.iter().fold(ring.one(), |p, &(x, y)| ring.mul(&p, a.get(x, y)));
        acc = if sign > 0 { ring.add(&acc, &prod) } else { ring.sub(&acc, &prod) };
    }
    Ok(acc)
}

/// The Pfaffian of `(<z_i, z_j>)` over `z = (y_1..y_s, x_1..x_s)` written as
/// a signed sum of `(s,s)`-diagrams: the pair `(z_a, z_b)`, `a < b`, becomes
/// an edge already in canonical orientation.
pub fn pfaffian_diagram_combination(s: usize) -> AlgebraElement<Rationals> {
    let vertex = |a: usize| if a < s { Vertex::Top(a + 1) } else { Vertex::Bottom(a - s + 1) };
    let terms = pfaffian_terms(2 * s).into_iter().map(|(sign, pairs)| {
        let d = Diagram::new(s, s, pairs.into_iter().map(|(a, b)| (vertex(a), vertex(b)))).expect("matching");
        (d, Rational::from_integer(BigInt::from(sign)))
    });
    AlgebraElement::from_terms(&Rationals, s, terms).expect("square diagrams")
}

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }
    pub fn parts(&self) -> &[usize] {
        &self.0
    }
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partitions of `l` with at most `m` parts, in reverse lexicographic order.
pub fn partitions_at_most(l: usize, m: usize) -> Vec<Partition> {
    fn rec(left: usize, max: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(l, l, m, &mut Vec::new(), &mut out);
    out
}

/// A symplectic tableau: letters `1 < 1' < .. < m < m'` coded `0..2m`
/// (`k ↦ 2k-2`, `k' ↦ 2k-1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KingTableau {
    pub shape: Partition,
    pub rows: Vec<Vec<usize>>,
}

impl KingTableau {
    pub fn letter(code: usize) -> String {
        if code % 2 == 0 {
            format!("{}", code / 2 + 1)
        } else {
            format!("{}'", code / 2 + 1)
        }
    }
}

impl fmt::Display for KingTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.iter().map(|&c| Self::letter(c)).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// Semistandard fillings of `shape` over `1 < 1' < .. < m < m'` whose row
/// `i` entries are all at least the letter `i`.
pub fn king_tableaux(shape: &Partition, m: usize) -> Result<Vec<KingTableau>, InvariantError> {
    if shape.len() > m {
        return Err(InvariantError::TooManyParts(shape.0.clone(), m));
    }
    let cells: Vec<(usize, usize)> = shape.0.iter().enumerate().flat_map(|(i, &len)| (0..len).map(move |j| (i, j))).collect();
    let mut rows: Vec<Vec<usize>> = shape.0.iter().map(|&len| vec![0; len]).collect();
    let mut out = Vec::new();
    fn rec(k: usize, cells: &[(usize, usize)], m: usize, rows: &mut Vec<Vec<usize>>, shape: &Partition, out: &mut Vec<KingTableau>) {
        let Some(&(i, j)) = cells.get(k) else {
            out.push(KingTableau { shape: shape.clone(), rows: rows.clone() });
            return;
        };
        let mut lo = 2 * i;
        if j > 0 {
            lo = lo.max(rows[i][j - 1]);
        }
        if i > 0 {
            lo = lo.max(rows[i - 1][j] + 1);
        }
        for x in lo..2 * m {
            rows[i][j] = x;
            rec(k + 1, cells, m, rows, shape, out);
        }
    }
    rec(0, &cells, m, &mut rows, shape, &mut out);
    Ok(out)
}

/// `N_λ`: number of King tableaux of shape `λ` over `m` letter pairs.
pub fn king_count(shape: &Partition, m: usize) -> Result<u64, InvariantError> {
    Ok(king_tableaux(shape, m)?.len() as u64)
}

/// Dimension of the irreducible `Sp_{2m}`-module of highest weight `λ` by
/// the Weyl dimension formula for type `C_m`.
pub fn weyl_dim_c(shape: &Partition, m: usize) -> Result<u64, InvariantError> {
    if shape.len() > m {
        return Err(InvariantError::TooManyParts(shape.0.clone(), m));
    }
    let lam: Vec<i64> = (0..m).map(|i| shape.0.get(i).copied().unwrap_or(0) as i64).collect();
    let rho: Vec<i64> = (0..m).map(|i| (m - i) as i64).collect();
    let l: Vec<i64> = lam.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..m {
        for j in i + 1..m {
            num *= BigInt::from((l[i] - l[j]) * (l[i] + l[j]));
            den *= BigInt::from((rho[i] - rho[j]) * (rho[i] + rho[j]));
        }
        num *= BigInt::from(l[i]);
        den *= BigInt::from(rho[i]);
    }
    assert!((&num % &den).is_zero(), "Weyl quotient must be integral");
    Ok(u64::try_from(num / den).expect("fits"))
}

/// `Σ_{λ ⊢_m l} N_λ^2`, `m = n/2`.
pub fn graded_dim(n: usize, l: usize) -> Result<u64, InvariantError> {
    if n == 0 || n % 2 == 1 {
        return Err(InvariantError::OddDimension(n));
    }
    let m = n / 2;
    partitions_at_most(l, m).iter().map(|p| king_count(p, m).map(|c| c * c)).sum()
}

/// One row of the per-degree comparison table.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DimRow {
    pub l: usize,
    pub dim_poly: usize,
    pub dim_ideal_piece: usize,
    pub graded_dim: u64,
    pub pass: bool,
}

/// For each `l <= max_l`: `dim k[Mat_n]^l`, the degree-`l` piece of the
/// ideal generated by all `g_ij, ḡ_ij`, and the tableau count.
pub fn dimension_table(n: usize, max_l: usize) -> Result<Vec<DimRow>, InvariantError> {
    (0..=max_l)
        .map(|l| {
            let dim_poly = dim_polys_degree(n, l);
            let dim_ideal_piece = homogeneous_ideal_dim(n, l, GeneratorSet::Both)?;
            let g = graded_dim(n, l)?;
            Ok(DimRow { l, dim_poly, dim_ideal_piece, graded_dim: g, pass: (dim_poly - dim_ideal_piece) as u64 == g })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::determinant;
    use crate::symplectic_space::sample_symplectic;
    use proptest::prelude::*;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn monomial_counts_and_order() {
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert_eq!(monomial_index(2, 2).len(), 15);
        assert_eq!(dim_polys_upto(2, 3), 35);
        assert_eq!(dim_polys_upto(4, 2), 153);
        let x11 = Monomial::var(4, 0);
        let x12 = Monomial::var(4, 1);
        assert!(x11 > x12);
        assert!(x12.mul(&x12) > x11);
    }

    #[test]
    fn two_by_two_quadrics_are_the_determinant() {
        let g = gen_g(1, 2, 2).unwrap();
        assert_eq!(g.to_string(), "x11*x22 - x12*x21");
        assert_eq!(gen_gbar(1, 2, 2).unwrap(), g);
        assert_eq!(dilation(2).unwrap(), g);
        assert!(gen_g(2, 1, 2).is_err());
        assert!(gen_g(1, 1, 2).is_err());
        assert!(gen_g(1, 3, 2).is_err());
        assert!(gen_g(1, 2, 3).is_err());
    }

    #[test]
    fn quadrics_are_column_and_row_pairings() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2, 4] {
            let sp = SympSpace::new(n).unwrap();
            let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect()).collect();
            let a = DenseMatrix::from_i64_rows(&Rationals, &rows);
            let j = sp.gram(&Rationals);
            let atja = a.transpose().mul(&Rationals, &j).mul(&Rationals, &a);
            let ajat = a.mul(&Rationals, &j).mul(&Rationals, &a.transpose());
            for i in 1..=n {
                for k in i + 1..=n {
                    assert_eq!(gen_g(i, k, n).unwrap().eval_q(&a), *atja.get(i - 1, k - 1));
                    assert_eq!(gen_gbar(i, k, n).unwrap().eval_q(&a), *ajat.get(i - 1, k - 1));
                }
            }
        }
    }

    #[test]
    fn antisymmetry_of_pairings() {
        for n in [2, 4] {
            for i in 1..=n {
                for j in 1..=n {
                    assert_eq!(column_pairing(j, i, n).unwrap(), column_pairing(i, j, n).unwrap().scale(&q(-1)));
                    assert_eq!(row_pairing(j, i, n).unwrap(), row_pairing(i, j, n).unwrap().scale(&q(-1)));
                }
            }
        }
    }

    #[test]
    fn generators_vanish_on_the_group() {
        for n in [2, 4] {
            let sp = SympSpace::new(n).unwrap();
            let gens = ideal_generators(n, GeneratorSet::Both).unwrap();
            for a in sample_symplectic(sp, &Rationals, 17, 6).unwrap() {
                for g in &gens {
                    assert!(g.eval_q(a.matrix()).is_zero());
                }
                for i in 1..=n / 2 {
                    let e = q(sp.eps(i).unwrap());
                    let ii = sp.prime(i).unwrap();
                    assert_eq!(gen_g(i, ii, n).unwrap().eval_q(a.matrix()) * &e, q(1));
                    assert_eq!(gen_gbar(i, ii, n).unwrap().eval_q(a.matrix()) * &e, q(1));
                }
                assert_eq!(dilation(n).unwrap().eval_q(a.matrix()), q(1));
                let scaled = a.matrix().scale(&Rationals, &q(3));
                assert_eq!(dilation(n).unwrap().eval_q(&scaled), q(9));
            }
        }
        let j = SympSpace::new(4).unwrap().gram(&Rationals);
        assert_eq!(dilation(4).unwrap().eval_q(&j), q(1));
    }

    #[test]
    fn truncated_ideal_dimensions() {
        assert_eq!(truncated_ideal_dim(2, 2, GeneratorSet::Both).unwrap(), 1);
        assert_eq!(truncated_ideal_dim(2, 2, GeneratorSet::G).unwrap(), 1);
        assert_eq!(truncated_ideal_dim(2, 3, GeneratorSet::Both).unwrap(), 5);
        assert_eq!(truncated_ideal_dim(4, 2, GeneratorSet::Both).unwrap(), 11);
        assert!(truncated_ideal_dim(2, 1, GeneratorSet::Both).is_err());
    }

    #[test]
    fn pfaffian_small() {
        let e = DenseMatrix::from_rows(Vec::<Vec<Rational>>::new());
        assert_eq!(pfaffian(&Rationals, &e).unwrap(), q(1));
        let a = DenseMatrix::from_i64_rows(&Rationals, &[vec![0, 7], vec![-7, 0]]);
        assert_eq!(pfaffian(&Rationals, &a).unwrap(), q(7));
        let terms = pfaffian_terms(4);
        assert_eq!(
            terms,
            vec![(1, vec![(0, 1), (2, 3)]), (-1, vec![(0, 2), (1, 3)]), (1, vec![(0, 3), (1, 2)])]
        );
        assert_eq!(pfaffian_terms(6).len(), 15);
        let bad = DenseMatrix::from_i64_rows(&Rationals, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(pfaffian(&Rationals, &bad).unwrap_err(), InvariantError::NotAlternating);
    }

    #[test]
    fn pfaffian_combination_shape() {
        let x = pfaffian_diagram_combination(2);
        assert_eq!(x.terms().len(), 3);
        assert_eq!(pfaffian_diagram_combination(3).terms().len(), 15);
        // the term pairing y1 with y2 and x1 with x2 is the cup-cap, sign +1
        let cupcap = Diagram::new(2, 2, [(Vertex::Top(1), Vertex::Top(2)), (Vertex::Bottom(1), Vertex::Bottom(2))]).unwrap();
        assert_eq!(x.coefficient(&cupcap), q(1));
    }

    #[test]
    fn partitions() {
        assert_eq!(partitions_at_most(0, 2), vec![Partition::new(vec![])]);
        assert_eq!(partitions_at_most(4, 2), vec![Partition::new(vec![4]), Partition::new(vec![3, 1]), Partition::new(vec![2, 2])]);
        assert_eq!(partitions_at_most(4, 4).len(), 5);
        assert_eq!(Partition::new(vec![1, 3, 0]).parts(), &[3, 1]);
    }

    #[test]
    fn king_examples() {
        let t = king_tableaux(&Partition::new(vec![1]), 1).unwrap();
        assert_eq!(t.iter().map(|x| x.to_string()).collect::<Vec<_>>(), vec!["1", "1'"]);
        assert_eq!(king_count(&Partition::new(vec![2]), 1).unwrap(), 3);
        assert_eq!(king_count(&Partition::new(vec![1, 1]), 2).unwrap(), 5);
        assert!(king_count(&Partition::new(vec![1, 1]), 1).is_err());
        for t in king_tableaux(&Partition::new(vec![1, 1]), 2).unwrap() {
            assert!(t.rows[1][0] >= 2);
        }
    }

    #[test]
    fn king_matches_weyl() {
        for m in 1..=3 {
            for l in 0..=4 {
                for p in partitions_at_most(l, m) {
                    assert_eq!(king_count(&p, m).unwrap(), weyl_dim_c(&p, m).unwrap(), "{p} m={m}");
                }
            }
        }
        // fundamental representations of Sp_6: 6, 14, 14
        assert_eq!(weyl_dim_c(&Partition::new(vec![1, 1]), 3).unwrap(), 14);
        assert_eq!(weyl_dim_c(&Partition::new(vec![1, 1, 1]), 3).unwrap(), 14);
    }

    #[test]
    fn graded_dimensions() {
        assert_eq!(graded_dim(2, 0).unwrap(), 1);
        assert_eq!(graded_dim(2, 2).unwrap(), 9);
        assert_eq!(graded_dim(4, 1).unwrap(), 16);
        assert_eq!(graded_dim(4, 2).unwrap(), 125);
        assert_eq!(graded_dim(4, 3).unwrap(), 656);
        assert!(graded_dim(3, 1).is_err());
    }

    #[test]
    fn homogeneous_pieces_match_tableaux() {
        for row in dimension_table(2, 4).unwrap() {
            assert!(row.pass, "{row:?}");
        }
        for row in dimension_table(4, 2).unwrap() {
            assert!(row.pass, "{row:?}");
        }
    }

    proptest! {
        #[test]
        fn pfaffian_squared_is_determinant(seed in any::<u64>(), half in 1usize..=3) {
            let k = 2 * half;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rows = vec![vec![0i64; k]; k];
            for i in 0..k {
                for j in i + 1..k {
                    let v = rng.gen_range(-5..=5);
                    rows[i][j] = v;
                    rows[j][i] = -v;
                }
            }
            let a = DenseMatrix::from_i64_rows(&Rationals, &rows);
            let pf = pfaffian(&Rationals, &a).unwrap();
            prop_assert_eq!(&pf * &pf, determinant(&Rationals, &a));
        }
    }
}
