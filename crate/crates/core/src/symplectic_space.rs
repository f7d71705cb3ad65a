//! The symplectic space `k^n`, `n = 2m`, with form `<u,v> = sum_i eps_i u_i v_{i'}`,
//! and seeded sampling of exact symplectic matrices.
//!
//! Public index arguments are 1-based to match the usual `e_1..e_n`
//! notation; the `*0` helpers take 0-based indices for internal loops.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact_linalg::DenseMatrix;
use crate::scalars::{Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("n = {0} is not an even integer >= 2")]
    OddDimension(usize),
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix is {rows}x{cols}, expected {n}x{n}")]
    Shape { rows: usize, cols: usize, n: usize },
    #[error("matrix does not satisfy A^T J A = J")]
    NotSymplectic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SympSpace {
    n: usize,
}

impl SympSpace {
    pub fn new(n: usize) -> Result<Self, SpaceError> {
        if n < 2 || n % 2 != 0 {
            return Err(SpaceError::OddDimension(n));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.n / 2
    }

    fn check(&self, i: usize) -> Result<(), SpaceError> {
        if (1..=self.n).contains(&i) {
            Ok(())
        } else {
            Err(SpaceError::IndexOutOfRange { index: i, n: self.n })
        }
    }

    /// The involution `i' = n + 1 - i`.
    pub fn prime(&self, i: usize) -> Result<usize, SpaceError> {
        self.check(i)?;
        Ok(self.n + 1 - i)
    }

    /// `eps_i = +1` for `i <= m`, `-1` otherwise.
    pub fn eps(&self, i: usize) -> Result<i64, SpaceError> {
        self.check(i)?;
        Ok(if i <= self.m() { 1 } else { -1 })
    }

    /// `<e_i, e_j> = eps_i` if `j = i'`, else 0.
    pub fn form_basis(&self, i: usize, j: usize) -> Result<i64, SpaceError> {
        self.check(j)?;
        Ok(if j == self.prime(i)? { self.eps(i)? } else { 0 })
    }

    #[inline]
    pub fn prime0(&self, i: usize) -> usize {
        self.n - 1 - i
    }

    #[inline]
    pub fn eps0(&self, i: usize) -> i64 {
        if i < self.m() {
            1
        } else {
            -1
        }
    }

    #[inline]
    pub fn form0(&self, i: usize, j: usize) -> i64 {
        if j == self.prime0(i) {
            self.eps0(i)
        } else {
            0
        }
    }

    /// Gram matrix `J` with `J_ij = delta_{ij'} eps_i`.
    pub fn gram<R: Ring>(&self, ring: &R) -> DenseMatrix<R::Elem> {
        let mut j = DenseMatrix::zeros(ring, self.n, self.n);
        for i in 0..self.n {
            j.set(i, self.prime0(i), ring.from_i64(self.eps0(i)));
        }
        j
    }

    /// Whether `A^T J A = J` holds exactly.
    pub fn preserves_form<R: Ring>(&self, ring: &R, a: &DenseMatrix<R::Elem>) -> bool {
        let j = self.gram(ring);
        a.rows() == self.n && a.cols() == self.n && a.transpose().mul(ring, &j).mul(ring, a) == j
    }

    /// Matrix of the transvection `x -> x + c <x, v> v`, i.e. `I + c v (Jv)^T`.
    pub fn transvection<R: Ring>(&self, ring: &R, v: &[R::Elem], c: &R::Elem) -> DenseMatrix<R::Elem> {
        assert_eq!(v.len(), self.n);
        // (Jv)_b = eps_b v_{b'}
        let jv: Vec<R::Elem> = (0..self.n)
            .map(|b| ring.scale_i64(&v[self.prime0(b)], self.eps0(b)))
            .collect();
        let mut t = DenseMatrix::identity(ring, self.n);
        for a in 0..self.n {
            if ring.is_zero(&v[a]) {
                continue;
            }
            let cva = ring.mul(c, &v[a]);
            for b in 0..self.n {
                let x = ring.add(t.get(a, b), &ring.mul(&cva, &jv[b]));
                t.set(a, b, x);
            }
        }
        t
    }

    /// `diag(2, 3, .., m+1, 1/(m+1), .., 1/2)`; its weights separate the
    /// weight spaces of every tensor power.
    pub fn torus_element<F: Field>(&self, field: &F) -> DenseMatrix<F::Elem> {
        let mut t = DenseMatrix::identity(field, self.n);
        for i in 0..self.m() {
            let x = field.from_i64(i as i64 + 2);
            t.set(self.prime0(i), self.prime0(i), field.inv(&x).expect("nonzero in characteristic 0"));
            t.set(i, i, x);
        }
        t
    }

    /// A sparse family of group elements: the torus element and the unit
    /// transvections along `e_i` and `e_i + e_j`.
    pub fn sparse_elements<F: Field>(&self, field: &F) -> Vec<DenseMatrix<F::Elem>> {
        let unit = |idx: &[usize]| -> Vec<F::Elem> {
            (0..self.n).map(|k| if idx.contains(&k) { field.one() } else { field.zero() }).collect()
        };
        let mut out = vec![self.torus_element(field)];
        for i in 0..self.n {
            out.push(self.transvection(field, &unit(&[i]), &field.one()));
            for j in i + 1..self.n {
                out.push(self.transvection(field, &unit(&[i, j]), &field.one()));
            }
        }
        out
    }
}

/// An `n x n` matrix verified to lie in `Sp_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SympMatrix<F: Field> {
    space: SympSpace,
    entries: DenseMatrix<F::Elem>,
}

impl<F: Field> SympMatrix<F> {
    pub fn new(space: SympSpace, field: &F, entries: DenseMatrix<F::Elem>) -> Result<Self, SpaceError> {
        if entries.rows() != space.n() || entries.cols() != space.n() {
            return Err(SpaceError::Shape { rows: entries.rows(), cols: entries.cols(), n: space.n() });
        }
        if !space.preserves_form(field, &entries) {
            return Err(SpaceError::NotSymplectic);
        }
        Ok(Self { space, entries })
    }

    pub fn space(&self) -> SympSpace {
        self.space
    }

    pub fn matrix(&self) -> &DenseMatrix<F::Elem> {
        &self.entries
    }

    pub fn into_matrix(self) -> DenseMatrix<F::Elem> {
        self.entries
    }
}

const TRANSVECTION_PARAMS: [i64; 4] = [1, -1, 2, -2];

/// Seeded stream of random symplectic matrices: products of transvections
/// along `e_i` and `e_i + e_j` with parameters in `{±1, ±2}`, each product of
/// length between 1 and `3n`.
pub struct SymplecticSampler<F: Field> {
    space: SympSpace,
    field: F,
    rng: ChaCha8Rng,
    generators: Vec<DenseMatrix<F::Elem>>,
}

impl<F: Field> SymplecticSampler<F> {
    pub fn new(space: SympSpace, field: &F, seed: u64) -> Self {
        let n = space.n();
        let mut directions: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let mut v = vec![0; n];
            v[i] = 1;
            directions.push(v);
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = 1;
                directions.push(v);
            }
        }
        let mut generators = Vec::new();
        for d in &directions {
            let v: Vec<F::Elem> = d.iter().map(|&x| field.from_i64(x)).collect();
            for &c in &TRANSVECTION_PARAMS {
                generators.push(space.transvection(field, &v, &field.from_i64(c)));
            }
        }
        Self { space, field: field.clone(), rng: ChaCha8Rng::seed_from_u64(seed), generators }
    }

    pub fn next_matrix(&mut self) -> Result<SympMatrix<F>, SpaceError> {
        let len = self.rng.gen_range(1..=3 * self.space.n());
        let mut acc = DenseMatrix::identity(&self.field, self.space.n());
        for _ in 0..len {
            let g = &self.generators[self.rng.gen_range(0..self.generators.len())];
            acc = acc.mul(&self.field, g);
        }
        SympMatrix::new(self.space, &self.field, acc)
    }
}

/// `count` seeded samples from `Sp_n(field)`; every one is checked against
/// `A^T J A = J` and the error is returned if any check fails.
pub fn sample_symplectic<F: Field>(
    space: SympSpace,
    field: &F,
    seed: u64,
    count: usize,
) -> Result<Vec<SympMatrix<F>>, SpaceError> {
    let mut s = SymplecticSampler::new(space, field, seed);
    (0..count).map(|_| s.next_matrix()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{IntPoly, IntPolys, PrimeField, Rational, Rationals};

    #[test]
    fn sparse_elements_are_symplectic() {
        for n in [2, 4, 6] {
            let sp = SympSpace::new(n).unwrap();
            let els = sp.sparse_elements(&Rationals);
            assert_eq!(els.len(), 1 + n + n * (n - 1) / 2);
            assert!(els.iter().all(|g| sp.preserves_form(&Rationals, g)));
        }
        let t = SympSpace::new(4).unwrap().torus_element(&Rationals);
        assert_eq!(t.get(3, 3), &Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn involution_and_signs() {
        let s = SympSpace::new(4).unwrap();
        assert_eq!(s.prime(1).unwrap(), 4);
        assert_eq!(s.prime(3).unwrap(), 2);
        assert_eq!(s.eps(2).unwrap(), 1);
        assert_eq!(s.eps(3).unwrap(), -1);
        for n in [2, 4, 6, 8] {
            let s = SympSpace::new(n).unwrap();
            let mut total = 0;
            for i in 1..=n {
                assert_eq!(s.prime(s.prime(i).unwrap()).unwrap(), i);
                assert_eq!(s.eps(s.prime(i).unwrap()).unwrap(), -s.eps(i).unwrap());
                total += s.eps(i).unwrap();
            }
            assert_eq!(total, 0);
        }
        assert!(s.prime(0).is_err());
        assert!(s.eps(5).is_err());
        assert_eq!(SympSpace::new(3), Err(SpaceError::OddDimension(3)));
        assert_eq!(SympSpace::new(0), Err(SpaceError::OddDimension(0)));
    }

    #[test]
    fn form_on_basis_vectors() {
        let s = SympSpace::new(4).unwrap();
        assert_eq!(s.form_basis(1, 4).unwrap(), 1);
        assert_eq!(s.form_basis(4, 1).unwrap(), -1);
        assert_eq!(s.form_basis(1, 2).unwrap(), 0);
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(s.form_basis(i, j).unwrap(), -s.form_basis(j, i).unwrap());
            }
        }
    }

    #[test]
    fn gram_matrix_is_antidiagonal() {
        let expect = |n: usize| -> Vec<Vec<i64>> {
            (0..n)
                .map(|i| (0..n).map(|j| if i + j == n - 1 { if i < n / 2 { 1 } else { -1 } } else { 0 }).collect())
                .collect()
        };
        for n in [2, 4, 6] {
            let s = SympSpace::new(n).unwrap();
            assert_eq!(s.gram(&Rationals), DenseMatrix::from_i64_rows(&Rationals, &expect(n)));
        }
    }

    #[test]
    fn j_is_symplectic() {
        let s = SympSpace::new(4).unwrap();
        let j = s.gram(&Rationals);
        // J^2 = -I
        assert_eq!(j.mul(&Rationals, &j), DenseMatrix::identity(&Rationals, 4).scale(&Rationals, &Rationals.from_i64(-1)));
        assert!(SympMatrix::new(s, &Rationals, j).is_ok());
        assert!(SympMatrix::new(s, &Rationals, DenseMatrix::identity(&Rationals, 4)).is_ok());
        let not = DenseMatrix::from_i64_rows(&Rationals, &[vec![2, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(SympMatrix::new(s, &Rationals, not).unwrap_err(), SpaceError::NotSymplectic);
    }

    #[test]
    fn transvection_preserves_form_symbolically() {
        // n = 2, generic direction (1, 1) and parameter t over Z[t].
        let s = SympSpace::new(2).unwrap();
        let v = vec![IntPoly::constant(1), IntPoly::constant(1)];
        let t = s.transvection(&IntPolys, &v, &IntPoly::t());
        assert!(s.preserves_form(&IntPolys, &t));
        // and for every generator direction at n = 4
        let s4 = SympSpace::new(4).unwrap();
        for i in 0..4 {
            for j in i..4 {
                let mut v = vec![IntPoly::default(); 4];
                v[i] = IntPoly::constant(1);
                v[j] = &v[j] + &IntPoly::constant(1);
                assert!(s4.preserves_form(&IntPolys, &s4.transvection(&IntPolys, &v, &IntPoly::t())));
            }
        }
    }

    #[test]
    fn samples_are_symplectic_and_deterministic() {
        let s = SympSpace::new(4).unwrap();
        let a = sample_symplectic(s, &Rationals, 11, 5).unwrap();
        let b = sample_symplectic(s, &Rationals, 11, 5).unwrap();
        assert_eq!(a, b);
        let j = s.gram(&Rationals);
        for m in &a {
            let x = m.matrix();
            assert_eq!(x.mul(&Rationals, &j).mul(&Rationals, &x.transpose()), j);
        }
        let c = sample_symplectic(s, &Rationals, 12, 5).unwrap();
        assert_ne!(a, c);
        let f = PrimeField::new(3).unwrap();
        assert_eq!(sample_symplectic(SympSpace::new(6).unwrap(), &f, 1, 4).unwrap().len(), 4);
    }
}
