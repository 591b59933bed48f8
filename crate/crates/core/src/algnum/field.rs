//! Exact arithmetic in real quadratic and multi-quadratic number fields.
//!
//! A multi-quadratic field `ℚ(√g₁,…,√g_k)` is stored by its generators
//! `g_i > 1`, squarefree and multiplicatively independent modulo squares.
//! Elements are coordinate vectors over the basis `e_S = ∏_{i∈S} √g_i`
//! indexed by bitmask `S`, so `e_S · e_T = (∏_{i∈S∩T} g_i) · e_{S△T}`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::interval::{Dyadic, Interval};
use crate::arith;
use crate::error::{Error, Result};
use crate::ser::rational_string;

/// Largest number of independent radicals supported in exact arithmetic.
pub const MAX_RADICALS: usize = 4;

fn primes_of(n: u128) -> BTreeSet<u128> {
    arith::factor(n).into_iter().filter(|&(_, e)| e % 2 == 1).map(|(p, _)| p).collect()
}

fn xor(a: &BTreeSet<u128>, b: &BTreeSet<u128>) -> BTreeSet<u128> {
    a.symmetric_difference(b).copied().collect()
}

fn prod(primes: &BTreeSet<u128>) -> BigInt {
    primes.iter().fold(BigInt::one(), |acc, &p| acc * BigInt::from(p))
}

/// A real multi-quadratic field given by independent squarefree generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiQuadField {
    gens: Vec<u64>,
}

impl MultiQuadField {
    pub fn rationals() -> Self {
        MultiQuadField { gens: Vec::new() }
    }

    /// Compositum of `ℚ(√d)` for the given positive radicands. Radicands that
    /// are squares, or already in the span of earlier ones, are dropped.
    pub fn from_radicands(radicands: &[u64]) -> Result<Self> {
        let mut gens: Vec<u64> = Vec::new();
        let mut span: Vec<BTreeSet<u128>> = vec![BTreeSet::new()];
        for &d in radicands {
            if d == 0 {
                return Err(Error::invalid("radicand 0"));
            }
            let s = primes_of(d as u128);
            if span.contains(&s) {
                continue;
            }
            if gens.len() == MAX_RADICALS {
                return Err(Error::unsupported(format!(
                    "compositum needs more than {MAX_RADICALS} independent radicals"
                )));
            }
            let extra: Vec<_> = span.iter().map(|t| xor(t, &s)).collect();
            span.extend(extra);
            gens.push(prod(&s).to_u64().expect("squarefree part fits"));
        }
        Ok(MultiQuadField { gens })
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    pub fn degree(&self) -> usize {
        1 << self.gens.len()
    }

    fn gen_primes(&self, i: usize) -> BTreeSet<u128> {
        primes_of(self.gens[i] as u128)
    }

    fn basis_primes(&self, mask: usize) -> BTreeSet<u128> {
        (0..self.gens.len())
            .filter(|i| mask >> i & 1 == 1)
            .fold(BTreeSet::new(), |acc, i| xor(&acc, &self.gen_primes(i)))
    }

    fn basis_product(&self, mask: usize) -> BigInt {
        (0..self.gens.len())
            .filter(|i| mask >> i & 1 == 1)
            .fold(BigInt::one(), |acc, i| acc * BigInt::from(self.gens[i]))
    }

    /// Smallest field containing both.
    pub fn join(&self, other: &MultiQuadField) -> Result<Self> {
        let mut all = self.gens.clone();
        all.extend_from_slice(&other.gens);
        MultiQuadField::from_radicands(&all)
    }

    /// Express `√d` (for squarefree `d > 0`) in this field, if it lies there.
    fn sqrt_coords(&self, d_primes: &BTreeSet<u128>) -> Option<(usize, BigRational)> {
        for mask in 0..self.degree() {
            if &self.basis_primes(mask) == d_primes {
                // d · P_T is a perfect square r², and √d = (r / P_T) · e_T
                let p_t = self.basis_product(mask);
                let r = (prod(d_primes) * &p_t).sqrt();
                return Some((mask, BigRational::new(r, p_t)));
            }
        }
        None
    }
}

impl fmt::Display for MultiQuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "Q");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| format!("sqrt({g})")).collect();
        write!(f, "Q({})", parts.join(", "))
    }
}

fn mul_coords(gens: &[BigInt], a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len();
    let mut out = vec![BigRational::zero(); n];
    for (s, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (t, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let common = s & t;
            let mut factor = BigInt::one();
            for (i, g) in gens.iter().enumerate() {
                if common >> i & 1 == 1 {
                    factor *= g;
                }
            }
            out[s ^ t] += x * y * BigRational::from_integer(factor);
        }
    }
    out
}

fn inv_coords(gens: &[BigInt], c: &[BigRational]) -> Option<Vec<BigRational>> {
    let Some((g, sub)) = gens.split_last() else {
        return (!c[0].is_zero()).then(|| vec![c[0].recip()]);
    };
    let half = c.len() / 2;
    let (u, v) = c.split_at(half);
    // (u + v√g)⁻¹ = (u − v√g) / (u² − g v²)
    let uu = mul_coords(sub, u, u);
    let vv = mul_coords(sub, v, v);
    let gq = BigRational::from_integer(g.clone());
    let norm: Vec<BigRational> = uu.iter().zip(&vv).map(|(x, y)| x - y * &gq).collect();
    let ninv = inv_coords(sub, &norm)?;
    let mut out = mul_coords(sub, u, &ninv);
    out.extend(mul_coords(sub, v, &ninv).into_iter().map(|x| -x));
    Some(out)
}

/// Exact element of a real multi-quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiQuadraticElement {
    field: MultiQuadField,
    coords: Vec<BigRational>,
}

impl MultiQuadraticElement {
    pub fn new(field: MultiQuadField, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::invalid(format!(
                "expected {} coordinates for {field}, got {}",
                field.degree(),
                coords.len()
            )));
        }
        Ok(MultiQuadraticElement { field, coords })
    }

    pub fn rational(q: BigRational) -> Self {
        MultiQuadraticElement { field: MultiQuadField::rationals(), coords: vec![q] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn field(&self) -> &MultiQuadField {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(One::is_one)
    }

    /// `true` iff the element equals `+1` or `−1`.
    pub fn is_plus_minus_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.abs().is_one())
    }

    /// Re-express in a larger field containing this one.
    pub fn embed(&self, target: &MultiQuadField) -> Result<Self> {
        if &self.field == target {
            return Ok(self.clone());
        }
        let mut coords = vec![BigRational::zero(); target.degree()];
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // e_S = √P_S = f · √d with d the squarefree part of P_S
            let p = self.field.basis_product(mask);
            let d_primes = self.field.basis_primes(mask);
            let f = (&p / prod(&d_primes)).sqrt();
            let (t, scale) = target
                .sqrt_coords(&d_primes)
                .ok_or_else(|| Error::invalid(format!("{} does not contain {}", target, self.field)))?;
            coords[t] += c * BigRational::from_integer(f) * scale;
        }
        Ok(MultiQuadraticElement { field: target.clone(), coords })
    }

    /// Bring two elements into a common field.
    pub fn unify(a: &Self, b: &Self) -> Result<(Self, Self)> {
        if a.field == b.field {
            return Ok((a.clone(), b.clone()));
        }
        let f = a.field.join(&b.field)?;
        Ok((a.embed(&f)?, b.embed(&f)?))
    }

    fn gens_big(&self) -> Vec<BigInt> {
        self.field.gens.iter().map(|&g| BigInt::from(g)).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::unify(self, other)?;
        let coords = mul_coords(&a.gens_big(), &a.coords, &b.coords);
        Ok(MultiQuadraticElement { field: a.field, coords })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::unify(self, other)?;
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        Ok(MultiQuadraticElement { field: a.field, coords })
    }

    pub fn neg(&self) -> Self {
        MultiQuadraticElement { field: self.field.clone(), coords: self.coords.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        MultiQuadraticElement { field: self.field.clone(), coords: self.coords.iter().map(|x| x * q).collect() }
    }

    pub fn inv(&self) -> Result<Self> {
        let coords = inv_coords(&self.gens_big(), &self.coords)
            .ok_or_else(|| Error::invalid("inverse of zero"))?;
        Ok(MultiQuadraticElement { field: self.field.clone(), coords })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let gens = self.gens_big();
        let mut acc = vec![BigRational::zero(); self.field.degree()];
        acc[0] = BigRational::one();
        let mut sq = base.coords;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = mul_coords(&gens, &acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = mul_coords(&gens, &sq, &sq);
            }
        }
        Ok(MultiQuadraticElement { field: self.field.clone(), coords: acc })
    }

    /// Interval enclosure at fixed working precision (no cancellation control).
    fn enclose_at(&self, w: u32) -> Interval {
        let mut acc = Interval::zero();
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cq = Interval::from_rational(c, w);
            let term = if mask == 0 {
                cq
            } else {
                let root = Interval::point(Dyadic::from_int(self.field.basis_product(mask))).sqrt(w).expect("positive");
                cq.mul(&root, w)
            };
            acc = acc.add(&term, w);
        }
        acc
    }

    /// Enclosure with relative width at most `2^-prec` (exact zero gives `[0,0]`).
    pub fn enclose(&self, prec: u32) -> Interval {
        if self.is_zero() {
            return Interval::zero();
        }
        let mut w = prec + 32;
        loop {
            let iv = self.enclose_at(w);
            if !iv.contains_zero() && iv.relative_width_at_most(prec) {
                return iv;
            }
            w *= 2;
        }
    }

    /// Sign of a nonzero element (exact, via adaptive enclosure).
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.enclose(8).is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(60).mid_f64()
    }
}

impl fmt::Display for MultiQuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if mask == 0 {
                parts.push(format!("{c}"));
            } else {
                parts.push(format!("({c})*sqrt({})", self.field.basis_product(mask)));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Exact element `a + b√D` of a real quadratic field (or of ℚ when `b = 0`).
///
/// `D` is kept squarefree and greater than one; a rational element is stored
/// with `b = 0, D = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticElement {
    #[serde(with = "rational_string")]
    pub a: BigRational,
    #[serde(with = "rational_string")]
    pub b: BigRational,
    #[serde(rename = "D")]
    pub d: u64,
}

impl QuadraticElement {
    /// `a + b√d` for any positive `d`; square factors of `d` are absorbed into `b`.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("radicand must be positive"));
        }
        let (s, f) = arith::squarefree_decompose(d as i128);
        let b = b * BigRational::from_integer(BigInt::from(f));
        if s == 1 || b.is_zero() {
            let a = if s == 1 { a + b } else { a };
            return Ok(QuadraticElement { a, b: BigRational::zero(), d: 1 });
        }
        Ok(QuadraticElement { a, b, d: s as u64 })
    }

    pub fn rational(q: BigRational) -> Self {
        QuadraticElement { a: q, b: BigRational::zero(), d: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadraticElement { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.into())
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    fn same_field(&self, other: &Self) -> Option<u64> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Some(1),
            (true, false) => Some(other.d),
            (false, true) => Some(self.d),
            (false, false) => (self.d == other.d).then_some(self.d),
        }
    }

    /// Product, when both factors lie in the same quadratic field.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self
            .same_field(other)
            .ok_or_else(|| Error::invalid("product of elements of different quadratic fields"))?;
        let dq = BigRational::from_integer(d.into());
        let a = &self.a * &other.a + &self.b * &other.b * dq;
        let b = &self.a * &other.b + &self.b * &other.a;
        QuadraticElement::new(a, b, d)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::invalid("inverse of zero"));
        }
        Ok(QuadraticElement { a: &self.a / &n, b: -&self.b / &n, d: self.d })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = QuadraticElement::from_int(1);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    pub fn to_multi(&self) -> MultiQuadraticElement {
        if self.is_rational() {
            return MultiQuadraticElement::rational(self.a.clone());
        }
        let field = MultiQuadField { gens: vec![self.d] };
        MultiQuadraticElement { field, coords: vec![self.a.clone(), self.b.clone()] }
    }

    pub fn enclose(&self, prec: u32) -> Interval {
        self.to_multi().enclose(prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_multi().to_f64()
    }
}

impl From<&QuadraticElement> for MultiQuadraticElement {
    fn from(q: &QuadraticElement) -> Self {
        q.to_multi()
    }
}

impl fmt::Display for QuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn golden() -> QuadraticElement {
        QuadraticElement::new(q(3, 2), q(1, 2), 5).unwrap()
    }

    #[test]
    fn quadratic_normalizes_radicand() {
        let x = QuadraticElement::new(q(1, 1), q(1, 1), 8).unwrap();
        assert_eq!(x.d, 2);
        assert_eq!(x.b, q(2, 1));
        let r = QuadraticElement::new(q(1, 1), q(3, 1), 4).unwrap();
        assert!(r.is_rational());
        assert_eq!(r.a, q(7, 1));
    }

    #[test]
    fn golden_square() {
        let l = golden();
        assert_eq!(l.norm(), q(1, 1));
        let l2 = l.pow(2).unwrap();
        assert_eq!(l2, QuadraticElement::new(q(7, 2), q(3, 2), 5).unwrap());
        assert_eq!(l.pow(-1).unwrap().mul(&l).unwrap(), QuadraticElement::from_int(1));
    }

    #[test]
    fn field_join_drops_dependent_radicands() {
        let f = MultiQuadField::from_radicands(&[2, 3, 6, 12, 5]).unwrap();
        assert_eq!(f.gens(), &[2, 3, 5]);
        assert!(MultiQuadField::from_radicands(&[2, 3, 5, 7, 11]).is_err());
    }

    #[test]
    fn sqrt6_is_sqrt2_times_sqrt3() {
        let s2 = QuadraticElement::new(q(0, 1), q(1, 1), 2).unwrap().to_multi();
        let s3 = QuadraticElement::new(q(0, 1), q(1, 1), 3).unwrap().to_multi();
        let s6 = QuadraticElement::new(q(0, 1), q(1, 1), 6).unwrap().to_multi();
        let p = s2.mul(&s3).unwrap();
        let (a, b) = MultiQuadraticElement::unify(&p, &s6).unwrap();
        assert_eq!(a, b);
        assert_eq!(s2.mul(&s2).unwrap().as_rational(), Some(&q(2, 1)));
    }

    #[test]
    fn multi_inverse() {
        let a = QuadraticElement::new(q(1, 1), q(1, 1), 2).unwrap().to_multi();
        let b = QuadraticElement::new(q(2, 1), q(1, 1), 3).unwrap().to_multi();
        let c = QuadraticElement::new(q(-1, 3), q(5, 7), 5).unwrap().to_multi();
        let x = a.mul(&b).unwrap().add(&c).unwrap();
        let y = x.inv().unwrap();
        assert!(x.mul(&y).unwrap().is_one());
    }

    #[test]
    fn enclosure_handles_cancellation() {
        // (3 - √5)/2 ≈ 0.381966 is the conjugate of the golden unit squared root
        let small = golden().conj().pow(20).unwrap();
        let iv = small.enclose(64);
        let expected = ((3.0 - 5f64.sqrt()) / 2.0).powi(20);
        assert!(iv.is_positive());
        assert!((iv.mid_f64() / expected - 1.0).abs() < 1e-9);
    }
}
