//! The truncated diagram algebras `𝔅_{≤s}(t)` (signed) and `𝔄_{≤s}(t)`
//! (unsigned), with `𝔅_r(t)` sitting inside as `c_r 𝔅_{≤s}(t) c_r`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::diagrams::{basis, embed_permutation, enumerate_diagrams, special_b, special_bbar, special_c, stack, Diagram, Permutation};
use crate::exact_linalg::{LinearField, RowReducer, SparseVec};
use crate::par;
use crate::scalars::{IntPoly, IntPolys, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live over different scalar rings")]
    RingMismatch,
    #[error("operands have truncation bounds {0} and {1}")]
    BoundMismatch(usize, usize),
    #[error("diagram {0} exceeds the truncation bound {1}")]
    OutOfRange(String, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    /// `𝔅`: products carry the path/cycle sign.
    Symplectic,
    /// `𝔄`: the same rule with every sign `+1`.
    Orthogonal,
}

impl AlgebraKind {
    pub fn sign(self, stacked_sign: i8) -> i8 {
        match self {
            AlgebraKind::Symplectic => stacked_sign,
            AlgebraKind::Orthogonal => 1,
        }
    }
}

/// A finite linear combination of diagrams with `u, v <= s`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<R: Ring> {
    ring: R,
    s: usize,
    terms: BTreeMap<Diagram, R::Elem>,
}

impl<R: Ring> AlgebraElement<R> {
    pub fn zero(ring: &R, s: usize) -> Self {
        Self { ring: ring.clone(), s, terms: BTreeMap::new() }
    }

    pub fn from_diagram(ring: &R, s: usize, d: Diagram) -> Result<Self, AlgebraError> {
        Self::from_terms(ring, s, [(d, ring.one())])
    }

    /// Sums repeated diagrams and drops zero coefficients.
    pub fn from_terms(ring: &R, s: usize, terms: impl IntoIterator<Item = (Diagram, R::Elem)>) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(ring, s);
        for (d, c) in terms {
            if d.u() > s || d.v() > s {
                return Err(AlgebraError::OutOfRange(d.to_string(), s));
            }
            out.add_term(d, &c);
        }
        Ok(out)
    }

    fn add_term(&mut self, d: Diagram, c: &R::Elem) {
        let ring = &self.ring;
        match self.terms.get_mut(&d) {
            Some(x) => {
                *x = ring.add(x, c);
                if ring.is_zero(x) {
                    self.terms.remove(&d);
                }
            }
            None if !ring.is_zero(c) => {
                self.terms.insert(d, c.clone());
            }
            None => {}
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn terms(&self) -> &BTreeMap<Diagram, R::Elem> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coefficient(&self, d: &Diagram) -> R::Elem {
        self.terms.get(d).cloned().unwrap_or_else(|| self.ring.zero())
    }

    fn compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch);
        }
        if self.s != other.s {
            return Err(AlgebraError::BoundMismatch(self.s, other.s));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.scale(&self.ring.from_i64(-1)))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(&self.ring, self.s);
        for (d, x) in &self.terms {
            out.add_term(d.clone(), &self.ring.mul(c, x));
        }
        out
    }

    /// Applies `f` to every coefficient, e.g. to specialise `t` after
    /// computing over `ℤ[t]`.
    pub fn map_coeffs<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> AlgebraElement<S> {
        let mut out = AlgebraElement::zero(target, self.s);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), &f(c));
        }
        out
    }

    /// Coordinates against `index` (diagram to position).
    pub fn to_vector(&self, index: &BTreeMap<Diagram, usize>) -> SparseVec<R::Elem> {
        SparseVec::from_pairs(&self.ring, self.terms.iter().map(|(d, c)| (index[d], c.clone())))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(d, c)| json!({"diagram": d.to_string(), "coef": self.ring.render(c)}))
                .collect(),
        )
    }
}

impl<R: Ring> fmt::Display for AlgebraElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            let text = self.ring.render(c);
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ if text.contains(' ') => (false, format!("({text})")),
                _ => (false, text),
            };
            match (k, neg) {
                (0, true) => write!(f, "-{body} * {d}")?,
                (0, false) => write!(f, "{body} * {d}")?,
                (_, true) => write!(f, " - {body} * {d}")?,
                (_, false) => write!(f, " + {body} * {d}")?,
            }
        }
        Ok(())
    }
}

/// Product of basis diagrams: `sign * t^gamma * result`, or `None` when the
/// middle rows differ.
pub fn multiply_diagrams<R: Ring>(kind: AlgebraKind, ring: &R, a: &Diagram, b: &Diagram, t: &R::Elem) -> Option<(R::Elem, Diagram)> {
    let st = stack(a, b)?;
    let coef = ring.pow(t, st.gamma as u32);
    let coef = if kind.sign(st.sign) < 0 { ring.neg(&coef) } else { coef };
    Some((coef, st.result))
}

/// Bilinear extension of the diagram product with parameter `t`.
pub fn multiply<R: Ring>(kind: AlgebraKind, x: &AlgebraElement<R>, y: &AlgebraElement<R>, t: &R::Elem) -> Result<AlgebraElement<R>, AlgebraError> {
    x.compatible(y)?;
    let ring = &x.ring;
    let mut out = AlgebraElement::zero(ring, x.s);
    for (a, ca) in &x.terms {
        for (b, cb) in y.terms.iter().filter(|(b, _)| b.u() == a.v()) {
            if let Some((coef, d)) = multiply_diagrams(kind, ring, a, b, t) {
                out.add_term(d, &ring.mul(&coef, &ring.mul(ca, cb)));
            }
        }
    }
    Ok(out)
}

/// `Σ_{r=0}^s c_r`.
pub fn unit<R: Ring>(ring: &R, s: usize) -> AlgebraElement<R> {
    AlgebraElement::from_terms(ring, s, (0..=s).map(|r| (special_c(r), ring.one()))).expect("in range")
}

/// `b_r, b̄_r` for `r <= s - 2`, then `c_0, c_1`, then the elementary
/// transpositions of each `Sym_r`, `2 <= r <= s`.
pub fn generators<R: Ring>(ring: &R, s: usize) -> Vec<AlgebraElement<R>> {
    let mut ds = Vec::new();
    for r in 0..=s.saturating_sub(2) {
        if r + 2 <= s {
            ds.push(special_b(r));
            ds.push(special_bbar(r));
        }
    }
    ds.push(special_c(0));
    if s >= 1 {
        ds.push(special_c(1));
    }
    for r in 2..=s {
        for i in 0..r - 1 {
            ds.push(embed_permutation(&Permutation::adjacent_transposition(r, i)));
        }
    }
    ds.into_iter().map(|d| AlgebraElement::from_diagram(ring, s, d).expect("in range")).collect()
}

/// Diagram-to-coordinate map for the basis of `𝔅_{≤s}`.
pub fn basis_index(s: usize) -> BTreeMap<Diagram, usize> {
    basis(s).into_iter().enumerate().map(|(i, d)| (d, i)).collect()
}

/// Dimension of the subalgebra generated by `gens` (unit included through
/// the generators themselves), by saturating the span under left and right
/// multiplication by generators.
pub fn generated_dimension<F: LinearField>(kind: AlgebraKind, field: &F, s: usize, gens: &[AlgebraElement<F>], t: &F::Elem) -> usize {
    let index = basis_index(s);
    let mut red = field.reducer(index.len());
    let mut queue: Vec<AlgebraElement<F>> = Vec::new();
    for g in gens {
        if red.insert(&g.to_vector(&index)) {
            queue.push(g.clone());
        }
    }
    while let Some(w) = queue.pop() {
        for g in gens {
            for p in [multiply(kind, g, &w, t), multiply(kind, &w, g, t)] {
                let p = p.expect("same algebra");
                if red.insert(&p.to_vector(&index)) {
                    queue.push(p);
                }
            }
        }
    }
    red.rank()
}

/// How associativity triples are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssociativityOutcome {
    pub triples_checked: usize,
    /// Violating triples with the nonzero associator.
    pub violations: Vec<([Diagram; 3], AlgebraElement<IntPolys>)>,
}

/// Checks `(DD')D'' = D(D'D'')` identically in `ℤ[t]` over basis triples.
pub fn check_associativity(kind: AlgebraKind, s: usize, mode: TripleMode) -> AssociativityOutcome {
    let all = basis(s);
    let triples: Vec<[usize; 3]> = match mode {
        TripleMode::Exhaustive => {
            let k = all.len();
            (0..k * k * k).map(|x| [x / (k * k), (x / k) % k, x % k]).collect()
        }
        TripleMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| [0; 3].map(|_| rng.gen_range(0..all.len()))).collect()
        }
    };
    let ring = IntPolys;
    let t = IntPoly::t();
    let results = par::map(&triples, |&[i, j, k]| {
        let e = |d: &Diagram| AlgebraElement::from_diagram(&ring, s, d.clone()).expect("in range");
        let (a, b, c) = (e(&all[i]), e(&all[j]), e(&all[k]));
        let left = multiply(kind, &multiply(kind, &a, &b, &t).unwrap(), &c, &t).unwrap();
        let right = multiply(kind, &a, &multiply(kind, &b, &c, &t).unwrap(), &t).unwrap();
        let assoc = left.sub(&right).unwrap();
        (!assoc.is_zero()).then(|| ([all[i].clone(), all[j].clone(), all[k].clone()], assoc))
    });
    AssociativityOutcome { triples_checked: triples.len(), violations: results.into_iter().flatten().collect() }
}

/// A sign `φ(D)` on the `(s,s)`-diagrams such that `D ↦ φ(D) D` is an
/// algebra isomorphism `𝔅_s(t) → 𝔄_s(-t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignTwist {
    pub s: usize,
    pub signs: BTreeMap<Diagram, i8>,
}

/// Constraints that cannot hold together: each entry `(D, D')` stands for
/// `φ(DD')(-1)^γ = sgn φ(D)φ(D')`, and the first entry with `None` for
/// `φ(c_s) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignTwistObstruction {
    pub s: usize,
    pub constraints: Vec<Option<(Diagram, Diagram)>>,
}

/// Row over GF(2): unknown bits, right-hand side, and which constraints
/// were combined to produce it.
#[derive(Clone)]
struct Gf2Row {
    bits: Vec<u64>,
    rhs: bool,
    origin: Vec<u64>,
}

impl Gf2Row {
    fn new(unknowns: usize, constraints: usize, id: usize) -> Self {
        let mut origin = vec![0; constraints.div_ceil(64)];
        origin[id / 64] |= 1 << (id % 64);
        Self { bits: vec![0; unknowns.div_ceil(64)], rhs: false, origin }
    }
    fn flip(&mut self, i: usize) {
        self.bits[i / 64] ^= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }
    fn xor(&mut self, other: &Self) {
        self.bits.iter_mut().zip(&other.bits).for_each(|(a, b)| *a ^= b);
        self.origin.iter_mut().zip(&other.origin).for_each(|(a, b)| *a ^= b);
        self.rhs ^= other.rhs;
    }
    fn leading(&self) -> Option<usize> {
        self.bits
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }
}

/// Searches for a [`SignTwist`] by Gaussian elimination over GF(2) on the
/// exponents `φ(D) = (-1)^{x_D}`; free unknowns are set to `+1`.
pub fn verify_sign_twist(s: usize) -> Result<SignTwist, SignTwistObstruction> {
    let ds = enumerate_diagrams(s, s);
    let pos: BTreeMap<&Diagram, usize> = ds.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let mut labels: Vec<Option<(Diagram, Diagram)>> = vec![None];
    let mut rows = Vec::new();
    let total = 1 + ds.len() * ds.len();
    let mut unit_row = Gf2Row::new(ds.len(), total, 0);
    unit_row.flip(pos[&special_c(s)]);
    rows.push(unit_row);
    for a in &ds {
        for b in &ds {
            let st = stack(a, b).expect("square diagrams compose");
            let mut row = Gf2Row::new(ds.len(), total, labels.len());
            row.flip(pos[a]);
            row.flip(pos[b]);
            row.flip(pos[&st.result]);
            // φ(R) = sgn (-1)^γ φ(D) φ(D')
            row.rhs = (st.sign < 0) ^ (st.gamma % 2 == 1);
            labels.push(Some((a.clone(), b.clone())));
            rows.push(row);
        }
    }
    let mut pivots: BTreeMap<usize, Gf2Row> = BTreeMap::new();
    for mut row in rows {
        while let Some(lead) = row.leading() {
            match pivots.get(&lead) {
                Some(p) => row.xor(p),
                None => break,
            }
        }
        match row.leading() {
            Some(lead) => {
                pivots.insert(lead, row);
            }
            None if row.rhs => {
                let constraints = (0..labels.len())
                    .filter(|&i| row.origin[i / 64] >> (i % 64) & 1 == 1)
                    .map(|i| labels[i].clone())
                    .collect();
                return Err(SignTwistObstruction { s, constraints });
            }
            None => {}
        }
    }
    // back substitution from the highest pivot down, free unknowns zero
    let mut x = vec![false; ds.len()];
    for (&lead, row) in pivots.iter().rev() {
        let mut v = row.rhs;
        for (j, xj) in x.iter().enumerate().skip(lead + 1) {
            if row.get(j) && *xj {
                v = !v;
            }
        }
        x[lead] = v;
    }
    let signs = ds.iter().zip(&x).map(|(d, &b)| (d.clone(), if b { -1 } else { 1 })).collect();
    Ok(SignTwist { s, signs })
}

impl SignTwist {
    /// Direct check of `φ(DD')(-1)^γ = sgn φ(D)φ(D')` on every pair.
    pub fn holds(&self) -> bool {
        let ds: Vec<&Diagram> = self.signs.keys().collect();
        self.signs.get(&special_c(self.s)) == Some(&1)
            && ds.iter().all(|a| {
                ds.iter().all(|b| {
                    let st = stack(a, b).expect("square");
                    let gamma_sign = if st.gamma % 2 == 1 { -1 } else { 1 };
                    self.signs[&st.result] * gamma_sign == st.sign * self.signs[*a] * self.signs[*b]
                })
            })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.signs
                .iter()
                .map(|(d, sg)| json!({"diagram": d.to_string(), "sign": sg}))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::Vertex::{Bottom as B, Top as T};
    use crate::scalars::{PrimeField, Rational, Rationals};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    fn cupcap() -> Diagram {
        Diagram::new(2, 2, [(T(1), T(2)), (B(1), B(2))]).unwrap()
    }

    fn swap() -> Diagram {
        embed_permutation(&Permutation::adjacent_transposition(2, 0))
    }

    fn random_element(s: usize, seed: u64) -> AlgebraElement<Rationals> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all = basis(s);
        let terms: Vec<_> = (0..4).map(|_| (all[rng.gen_range(0..all.len())].clone(), q(rng.gen_range(-5..=5)))).collect();
        AlgebraElement::from_terms(&Rationals, s, terms).unwrap()
    }

    #[test]
    fn small_products() {
        let r = IntPolys;
        let t = IntPoly::t();
        let e = |d: Diagram| AlgebraElement::from_diagram(&r, 2, d).unwrap();
        let p = multiply(AlgebraKind::Symplectic, &e(special_b(0)), &e(special_bbar(0)), &t).unwrap();
        assert_eq!(p, AlgebraElement::from_terms(&r, 2, [(special_c(0), IntPoly::t())]).unwrap());
        let p = multiply(AlgebraKind::Symplectic, &e(swap()), &e(cupcap()), &t).unwrap();
        assert_eq!(p, e(cupcap()).scale(&IntPoly::constant(-1)));
        let p = multiply(AlgebraKind::Orthogonal, &e(swap()), &e(cupcap()), &t).unwrap();
        assert_eq!(p, e(cupcap()));
        // mismatched middle rows give zero
        assert!(multiply(AlgebraKind::Symplectic, &e(special_c(1)), &e(special_c(2)), &t).unwrap().is_zero());
    }

    #[test]
    fn errors() {
        let a = AlgebraElement::from_diagram(&PrimeField::new(2).unwrap(), 1, special_c(1)).unwrap();
        let b = AlgebraElement::from_diagram(&PrimeField::new(3).unwrap(), 1, special_c(1)).unwrap();
        assert_eq!(multiply(AlgebraKind::Symplectic, &a, &b, &1).unwrap_err(), AlgebraError::RingMismatch);
        assert!(matches!(AlgebraElement::from_diagram(&Rationals, 1, special_c(2)), Err(AlgebraError::OutOfRange(..))));
        let c = AlgebraElement::from_diagram(&Rationals, 2, special_c(1)).unwrap();
        let d = AlgebraElement::from_diagram(&Rationals, 1, special_c(1)).unwrap();
        assert_eq!(c.add(&d).unwrap_err(), AlgebraError::BoundMismatch(2, 1));
    }

    #[test]
    fn unit_laws() {
        let t = q(3);
        for s in 0..=3 {
            let u = unit(&Rationals, s);
            assert_eq!(multiply(AlgebraKind::Symplectic, &u, &u, &t).unwrap(), u);
            for seed in 0..5 {
                let x = random_element(s, seed);
                assert_eq!(multiply(AlgebraKind::Symplectic, &u, &x, &t).unwrap(), x);
                assert_eq!(multiply(AlgebraKind::Symplectic, &x, &u, &t).unwrap(), x);
            }
            for r in 0..=s {
                let c = AlgebraElement::from_diagram(&Rationals, s, special_c(r)).unwrap();
                assert_eq!(multiply(AlgebraKind::Symplectic, &c, &u, &t).unwrap(), c);
            }
        }
        assert_eq!(unit(&Rationals, 0).to_string(), "1 * u=0,v=0;[]");
    }

    #[test]
    fn square_blocks_are_closed() {
        let t = IntPoly::t();
        for r in 0..=3 {
            let ds = enumerate_diagrams(r, r);
            for a in &ds {
                for b in &ds {
                    let (_, d) = multiply_diagrams(AlgebraKind::Symplectic, &IntPolys, a, b, &t).unwrap();
                    assert_eq!((d.u(), d.v()), (r, r));
                }
            }
        }
    }

    #[test]
    fn generator_lists() {
        let g = generators(&Rationals, 2);
        let ds: Vec<Diagram> = g.iter().map(|x| x.terms().keys().next().unwrap().clone()).collect();
        assert_eq!(ds, vec![special_b(0), special_bbar(0), special_c(0), special_c(1), swap()]);
        let g1: Vec<Diagram> = generators(&Rationals, 1).iter().map(|x| x.terms().keys().next().unwrap().clone()).collect();
        assert_eq!(g1, vec![special_c(0), special_c(1)]);
        assert_eq!(generators(&Rationals, 3).len(), 4 + 2 + 1 + 2);
    }

    #[test]
    fn generators_span_everything() {
        for (s, dim) in [(1, 2), (2, 7), (3, 28)] {
            for kind in [AlgebraKind::Symplectic, AlgebraKind::Orthogonal] {
                for t in [q(2), q(-3), q(0)] {
                    let g = generators(&Rationals, s);
                    assert_eq!(generated_dimension(kind, &Rationals, s, &g, &t), dim, "s={s} t={t}");
                }
            }
        }
    }

    #[test]
    fn associativity() {
        for kind in [AlgebraKind::Symplectic, AlgebraKind::Orthogonal] {
            let out = check_associativity(kind, 2, TripleMode::Exhaustive);
            assert_eq!(out.triples_checked, 343);
            assert!(out.violations.is_empty());
        }
        let out = check_associativity(AlgebraKind::Symplectic, 3, TripleMode::Sampled { count: 200, seed: 11 });
        assert_eq!(out.triples_checked, 200);
        assert!(out.violations.is_empty());
    }

    #[test]
    fn sign_twist_small() {
        let one = verify_sign_twist(1).unwrap();
        assert!(one.signs.values().all(|&x| x == 1));
        let two = verify_sign_twist(2).unwrap();
        assert!(two.holds());
        assert_eq!(two.signs[&swap()], -1);
        assert_eq!(two.signs[&cupcap()], -1);
        assert_eq!(two.signs[&special_c(2)], 1);
        let three = verify_sign_twist(3).unwrap();
        assert_eq!(three.signs.len(), 15);
        assert!(three.holds());
    }

    #[test]
    fn sign_twist_is_an_isomorphism() {
        // D ↦ φ(D) D carries the 𝔅_s(t) product to the 𝔄_s(-t) product
        for s in 1..=3 {
            let tw = verify_sign_twist(s).unwrap();
            let t = IntPoly::t();
            let mt = &IntPoly::constant(-1) * &t;
            let phi = |x: &AlgebraElement<IntPolys>| {
                AlgebraElement::from_terms(
                    &IntPolys,
                    s,
                    x.terms().iter().map(|(d, c)| (d.clone(), c * &IntPoly::constant(tw.signs[d] as i64))),
                )
                .unwrap()
            };
            let ds = enumerate_diagrams(s, s);
            for a in &ds {
                for b in &ds {
                    let ea = AlgebraElement::from_diagram(&IntPolys, s, a.clone()).unwrap();
                    let eb = AlgebraElement::from_diagram(&IntPolys, s, b.clone()).unwrap();
                    let lhs = phi(&multiply(AlgebraKind::Symplectic, &ea, &eb, &t).unwrap());
                    let rhs = multiply(AlgebraKind::Orthogonal, &phi(&ea), &phi(&eb), &mt).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn rendering() {
        let x = AlgebraElement::from_terms(&Rationals, 2, [(special_c(0), q(2)), (special_c(1), q(-1))]).unwrap();
        assert_eq!(x.to_string(), "2 * u=0,v=0;[] - 1 * u=1,v=1;[T1-B1]");
        let y = AlgebraElement::from_terms(&IntPolys, 2, [(special_c(0), IntPoly::from_i64s(&[-1, 0, 1]))]).unwrap();
        assert_eq!(y.to_string(), "(t^2 - 1) * u=0,v=0;[]");
        assert_eq!(x.to_json()[1]["coef"], "-1");
    }

    proptest! {
        #[test]
        fn bilinearity(s1 in 0u64..1000, s2 in 0u64..1000, s3 in 0u64..1000) {
            let t = q(-2);
            let (x, x2, y) = (random_element(3, s1), random_element(3, s2), random_element(3, s3));
            let lhs = multiply(AlgebraKind::Symplectic, &x.add(&x2).unwrap(), &y, &t).unwrap();
            let rhs = multiply(AlgebraKind::Symplectic, &x, &y, &t).unwrap()
                .add(&multiply(AlgebraKind::Symplectic, &x2, &y, &t).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn base_change(seed in 0u64..500, t0 in -4i64..=4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let all = basis(3);
            let pick = |rng: &mut ChaCha8Rng| {
                let terms: Vec<_> = (0..3).map(|_| (all[rng.gen_range(0..all.len())].clone(), rng.gen_range(-3i64..=3))).collect();
                terms
            };
            let (xa, ya) = (pick(&mut rng), pick(&mut rng));
            let over_z = |terms: &[(Diagram, i64)]| AlgebraElement::from_terms(&IntPolys, 3, terms.iter().map(|(d, c)| (d.clone(), IntPoly::constant(*c)))).unwrap();
            let generic = multiply(AlgebraKind::Symplectic, &over_z(&xa), &over_z(&ya), &IntPoly::t()).unwrap();
            for p in [2u64, 5] {
                let f = PrimeField::new(p).unwrap();
                let over_f = |terms: &[(Diagram, i64)]| AlgebraElement::from_terms(&f, 3, terms.iter().map(|(d, c)| (d.clone(), f.from_i64(*c)))).unwrap();
                let direct = multiply(AlgebraKind::Symplectic, &over_f(&xa), &over_f(&ya), &f.from_i64(t0)).unwrap();
                let specialised = generic.map_coeffs(&f, |c| c.specialize(&f, &f.from_i64(t0)));
                prop_assert_eq!(direct, specialised);
            }
        }
    }
}
