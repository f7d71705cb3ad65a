//! Exact coefficient rings: rationals, prime fields and `Z[t]`.
//!
//! Rings are described by small context values (`Rationals`, `PrimeField`,
//! `IntPolys`) that carry whatever runtime data the ring needs, such as the
//! modulus of a prime field. Elements are plain values; all arithmetic goes
//! through the context so generic code never has to conjure a zero out of
//! thin air.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed rings: GF({0}) and GF({1})")]
    ModulusMismatch(u32, u32),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is not below 2^31")]
    ModulusTooLarge(u64),
    #[error("cannot parse field {0:?} (expected \"q\" or \"gf:p\")")]
    BadFieldSpec(String),
}

/// A commutative ring with identity, addressed through a context value.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn render(&self, a: &Self::Elem) -> String;

    fn pow(&self, a: &Self::Elem, mut k: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn scale_i64(&self, a: &Self::Elem, c: i64) -> Self::Elem {
        match c {
            0 => self.zero(),
            1 => a.clone(),
            -1 => self.neg(a),
            _ => self.mul(a, &self.from_i64(c)),
        }
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ScalarError> {
        let inv = self.inv(b).ok_or(ScalarError::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn characteristic(&self) -> u64;

    /// Short tag used in reports: `q` or `gf:p`.
    fn tag(&self) -> String;
}

// ---------------------------------------------------------------------------
// Rationals

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> Rational {
        Rational::from_integer(v.clone())
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &Rational) -> String {
        a.to_string()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn tag(&self) -> String {
        "q".into()
    }
}

// ---------------------------------------------------------------------------
// Prime fields

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// GF(p) for a prime `p < 2^31`. Elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if p >= 1 << 31 {
            return Err(ScalarError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn elem(&self, v: i64) -> PrimeFieldElem {
        PrimeFieldElem {
            value: self.from_i64(v),
            modulus: self.p,
        }
    }

    fn reduce_i128(&self, v: i128) -> u32 {
        v.rem_euclid(self.p as i128) as u32
    }
}

impl Ring for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i128(v as i128)
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits in u32")
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn render(&self, a: &u32) -> String {
        format!("{} mod {}", a, self.p)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        Some(self.pow(a, self.p - 2))
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn tag(&self) -> String {
        format!("gf:{}", self.p)
    }
}

/// A self-describing GF(p) element; arithmetic checks that moduli agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElem {
    value: u32,
    modulus: u32,
}

impl PrimeFieldElem {
    pub fn value(&self) -> u32 {
        self.value
    }
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn field(&self, other: &Self) -> Result<PrimeField, ScalarError> {
        if self.modulus != other.modulus {
            return Err(ScalarError::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(PrimeField { p: self.modulus })
    }

    fn with(&self, value: u32) -> Self {
        Self { value, modulus: self.modulus }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let f = self.field(other)?;
        Ok(self.with(f.add(&self.value, &other.value)))
    }
    pub fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        let f = self.field(other)?;
        Ok(self.with(f.sub(&self.value, &other.value)))
    }
    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let f = self.field(other)?;
        Ok(self.with(f.mul(&self.value, &other.value)))
    }
    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        let f = self.field(other)?;
        Ok(self.with(f.div(&self.value, &other.value)?))
    }
}

impl fmt::Display for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Division of rationals that reports a zero divisor instead of panicking.
pub fn rational_div(a: &Rational, b: &Rational) -> Result<Rational, ScalarError> {
    Rationals.div(a, b)
}

// ---------------------------------------------------------------------------
// Z[t]

/// Univariate integer polynomial `c_0 + c_1 t + ... + c_d t^d`, trimmed so the
/// leading coefficient is nonzero (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: i64) -> Self {
        Self::from_i64s(&[c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Evaluation homomorphism `Z[t] -> R` at `t = t0`.
    pub fn specialize<R: Ring>(&self, ring: &R, t0: &R::Elem) -> R::Elem {
        let mut acc = ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = ring.add(&ring.mul(&acc, t0), &ring.from_bigint(c));
        }
        acc
    }
}

impl std::ops::Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        IntPoly::new(coeffs)
    }
}

impl std::ops::Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::default();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coef = if mag.is_one() { String::new() } else { format!("{mag}*") };
            match d {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coef}t")?,
                _ => write!(f, "{coef}t^{d}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// The ring `Z[t]` of integer polynomials in the Brauer parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IntPolys;

impl Ring for IntPolys {
    type Elem = IntPoly;

    fn zero(&self) -> IntPoly {
        IntPoly::default()
    }
    fn one(&self) -> IntPoly {
        IntPoly::constant(1)
    }
    fn from_i64(&self, v: i64) -> IntPoly {
        IntPoly::constant(v)
    }
    fn from_bigint(&self, v: &BigInt) -> IntPoly {
        IntPoly::new(vec![v.clone()])
    }
    fn add(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a + b
    }
    fn sub(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a - b
    }
    fn neg(&self, a: &IntPoly) -> IntPoly {
        -a
    }
    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a * b
    }
    fn is_zero(&self, a: &IntPoly) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &IntPoly) -> String {
        a.to_string()
    }
}

// ---------------------------------------------------------------------------
// Field selection from the command line

/// Which exact field a run uses: `q` or `gf:p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FromStr for FieldSpec {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix("gf:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| ScalarError::BadFieldSpec(s.to_string()))?;
        Ok(FieldSpec::Prime(PrimeField::new(p)?.modulus()))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn rational_sum_is_reduced() {
        let r = Rationals.add(&q(1, 2), &q(1, 3));
        assert_eq!(r, q(5, 6));
        assert_eq!(Rationals.render(&r), "5/6");
        assert_eq!(Rationals.render(&q(4, 2)), "2");
        assert_eq!(Rationals.render(&q(3, -6)), "-1/2");
    }

    #[test]
    fn rational_division_by_zero() {
        assert_eq!(rational_div(&q(1, 2), &q(0, 1)), Err(ScalarError::DivisionByZero));
        assert_eq!(rational_div(&q(1, 2), &q(1, 4)).unwrap(), q(2, 1));
    }

    #[test]
    fn gf5_product() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.mul(&3, &4), 2);
        assert_eq!(f.elem(3).try_mul(&f.elem(4)).unwrap().to_string(), "2 mod 5");
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 4);
    }

    #[test]
    fn gf_mixed_moduli_rejected() {
        let a = PrimeField::new(5).unwrap().elem(1);
        let b = PrimeField::new(7).unwrap().elem(1);
        assert_eq!(a.try_add(&b), Err(ScalarError::ModulusMismatch(5, 7)));
        let z = PrimeField::new(5).unwrap().elem(0);
        assert_eq!(a.try_div(&z), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn prime_field_construction() {
        assert!(PrimeField::new(2).is_ok());
        assert_eq!(PrimeField::new(9), Err(ScalarError::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(ScalarError::NotPrime(1)));
        assert!(matches!(PrimeField::new(1 << 31), Err(ScalarError::ModulusTooLarge(_))));
        // 2^31 - 1 is prime and allowed.
        assert!(PrimeField::new((1 << 31) - 1).is_ok());
    }

    #[test]
    fn poly_difference_of_squares() {
        let t = IntPoly::t();
        let one = IntPoly::constant(1);
        let p = &(&t + &one) * &(&t - &one);
        assert_eq!(p, IntPoly::from_i64s(&[-1, 0, 1]));
        assert_eq!(p.to_string(), "t^2 - 1");
        assert_eq!(IntPoly::from_i64s(&[0, -1, 0, 1]).to_string(), "t^3 - t");
        assert_eq!(IntPoly::from_i64s(&[3, -2]).to_string(), "-2*t + 3");
        assert_eq!(IntPoly::default().to_string(), "0");
        assert_eq!(IntPoly::from_i64s(&[1, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn specialization_examples() {
        let p = IntPoly::from_i64s(&[-1, 0, 1]);
        assert_eq!(p.specialize(&Rationals, &q(3, 1)), q(8, 1));
        assert_eq!(IntPoly::t().specialize(&Rationals, &q(4, 1)), q(4, 1));
        assert_eq!(IntPoly::default().specialize(&Rationals, &q(7, 3)), q(0, 1));
        let f = PrimeField::new(7).unwrap();
        assert_eq!(p.specialize(&f, &3), 1);
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("gf:3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert!("gf:4".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(7).to_string(), "gf:7");
    }

    fn poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..20, 0..5).prop_map(|c| IntPoly::from_i64s(&c))
    }

    fn rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(a, b)| q(a, b))
    }

    proptest! {
        #[test]
        fn poly_ring_axioms(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn rational_ring_axioms(a in rat(), b in rat(), c in rat()) {
            let r = Rationals;
            prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
            prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        }

        #[test]
        fn gf_ring_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 2147483647]),
                          a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let f = PrimeField::new(p).unwrap();
            let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }

        #[test]
        fn specialize_is_multiplicative(a in poly(), b in poly(), t0 in -6i64..6) {
            let t0q = Rationals.from_i64(t0);
            let lhs = (&a * &b).specialize(&Rationals, &t0q);
            let rhs = Rationals.mul(&a.specialize(&Rationals, &t0q), &b.specialize(&Rationals, &t0q));
            prop_assert_eq!(lhs, rhs);
            let f = PrimeField::new(5).unwrap();
            let t0f = f.from_i64(t0);
            prop_assert_eq!((&a + &b).specialize(&f, &t0f),
                            f.add(&a.specialize(&f, &t0f), &b.specialize(&f, &t0f)));
        }
    }
}
