//! Local-global embedding criteria for commutative étale algebras in
//! central simple algebras, and truncation of reciprocal characteristic
//! polynomials.
//!
//! Places are opaque labels. The module never computes completions: all
//! local data (local degrees of the factors, local indices of the algebra)
//! is supplied by the caller.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algnum::MultiQuadraticElement;
use crate::error::{Error, Result};
use crate::ser::rational_vec;

/// `E = ∏_j E^{(j)}` described by the degrees of its factors and, at each
/// labelled place, the local degrees `[E^{(j)}_w : K_v]` of every factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaleProfile {
    pub factor_degrees: Vec<u32>,
    /// `local_degrees[v][j]` lists the local degrees of factor `j` at `v`.
    pub local_degrees: BTreeMap<String, Vec<Vec<u32>>>,
}

impl EtaleProfile {
    pub fn validate(&self) -> Result<()> {
        if self.factor_degrees.is_empty() || self.factor_degrees.contains(&0) {
            return Err(Error::invalid("factor degrees must be positive and nonempty"));
        }
        for (place, parts) in &self.local_degrees {
            if parts.len() != self.factor_degrees.len() {
                return Err(Error::invalid(format!("place {place}: one partition per factor is required")));
            }
            for (j, (part, &deg)) in parts.iter().zip(&self.factor_degrees).enumerate() {
                if part.contains(&0) || part.iter().sum::<u32>() != deg {
                    return Err(Error::invalid(format!(
                        "place {place}: local degrees of factor {j} must be positive and sum to {deg}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn total_degree(&self) -> u32 {
        self.factor_degrees.iter().sum()
    }
}

/// A central simple algebra of degree `n` described by its local indices.
/// Places not listed have index one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CSAProfile {
    pub degree: u32,
    pub local_index: BTreeMap<String, u32>,
}

impl CSAProfile {
    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::invalid("degree must be positive"));
        }
        for (place, &m) in &self.local_index {
            if m == 0 || !self.degree.is_multiple_of(m) {
                return Err(Error::invalid(format!("place {place}: local index {m} must divide {}", self.degree)));
            }
        }
        Ok(())
    }

    pub fn index_at(&self, place: &str) -> u32 {
        self.local_index.get(place).copied().unwrap_or(1)
    }

    /// Places with nontrivial local index.
    pub fn ramified_places(&self) -> BTreeSet<&str> {
        self.local_index.iter().filter(|(_, &m)| m > 1).map(|(p, _)| p.as_str()).collect()
    }
}

/// An étale algebra with factors of the given degrees embeds in
/// `M_k(Δ)` with `Δ` of index `m` exactly when `m` divides every degree.
pub fn embeds_in_csa_local(factor_degrees: &[u32], local_index: u32) -> Result<bool> {
    if local_index == 0 || factor_degrees.contains(&0) {
        return Err(Error::invalid("degrees and index must be positive"));
    }
    Ok(factor_degrees.iter().all(|d| d % local_index == 0))
}

/// Global criterion: at every place, every local degree of every factor is
/// divisible by the local index of the algebra.
pub fn embeds_in_csa_global(etale: &EtaleProfile, csa: &CSAProfile) -> Result<bool> {
    etale.validate()?;
    csa.validate()?;
    if etale.total_degree() != csa.degree {
        return Err(Error::invalid(format!(
            "étale algebra of degree {} cannot be maximal in an algebra of degree {}",
            etale.total_degree(),
            csa.degree
        )));
    }
    for place in csa.ramified_places() {
        let parts = etale
            .local_degrees
            .get(place)
            .ok_or_else(|| Error::invalid(format!("no local degrees supplied at ramified place {place}")))?;
        let m = csa.index_at(place);
        if parts.iter().flatten().any(|d| d % m != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Two algebras of equal degree admit the same maximal étale subalgebras
/// when their local indices agree everywhere.
pub fn same_maximal_etale(a: &CSAProfile, b: &CSAProfile) -> Result<bool> {
    a.validate()?;
    b.validate()?;
    if a.degree != b.degree {
        return Err(Error::invalid(format!("degrees differ: {} vs {}", a.degree, b.degree)));
    }
    let places: BTreeSet<&String> = a.local_index.keys().chain(b.local_index.keys()).collect();
    Ok(places.into_iter().all(|p| a.index_at(p) == b.index_at(p)))
}

/// Rational polynomial with coefficients listed from the leading one down,
/// satisfying `p(x) = x^deg · p(1/x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocalPolynomial {
    #[serde(with = "rational_vec")]
    pub coeffs: Vec<BigRational>,
}

fn strip_leading_zeros(p: &[BigRational]) -> &[BigRational] {
    let start = p.iter().position(|c| !c.is_zero()).unwrap_or(p.len());
    &p[start..]
}

pub fn is_palindromic(p: &[BigRational]) -> bool {
    p.iter().eq(p.iter().rev())
}

impl ReciprocalPolynomial {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        let c = strip_leading_zeros(&coeffs).to_vec();
        if c.is_empty() {
            return Err(Error::invalid("zero polynomial"));
        }
        if !is_palindromic(&c) {
            return Err(Error::invalid("coefficients are not palindromic"));
        }
        Ok(ReciprocalPolynomial { coeffs: c })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients of `(x − 1)·p(x)`, leading first.
    pub fn times_x_minus_one(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
            out[i + 1] -= c;
        }
        out
    }

    /// Exact evaluation at a multi-quadratic element.
    pub fn eval(&self, x: &MultiQuadraticElement) -> Result<MultiQuadraticElement> {
        self.coeffs.iter().try_fold(MultiQuadraticElement::from_int(0), |acc, c| {
            acc.mul(x)?.add(&MultiQuadraticElement::rational(c.clone()))
        })
    }
}

/// Divide an odd-degree polynomial with `p(1) = 0` by `x − 1` and check that
/// the quotient is palindromic (plus type).
pub fn truncate_reciprocal_charpoly(p: &[BigRational]) -> Result<ReciprocalPolynomial> {
    let p = strip_leading_zeros(p);
    if p.is_empty() {
        return Err(Error::invalid("zero polynomial"));
    }
    let deg = p.len() - 1;
    if deg.is_multiple_of(2) {
        return Err(Error::invalid(format!("degree {deg} is even; an odd degree 2n+1 is required")));
    }
    // synthetic division by (x − 1)
    let mut q = Vec::with_capacity(deg);
    let mut acc = BigRational::zero();
    for c in &p[..deg] {
        acc = &acc + c;
        q.push(acc.clone());
    }
    let remainder = acc + &p[deg];
    if !remainder.is_zero() {
        return Err(Error::invalid(format!("p(1) = {remainder} is not zero")));
    }
    if !is_palindromic(&q) {
        let minus = q.iter().zip(q.iter().rev()).all(|(a, b)| a == &-b.clone());
        return Err(Error::invalid(if minus {
            "quotient is anti-palindromic (minus type), which is rejected".to_string()
        } else {
            "quotient by (x − 1) is not palindromic".to_string()
        }));
    }
    Ok(ReciprocalPolynomial { coeffs: q })
}

/// `(x − 1)(x² − t·x + 1)` for a trace `t`, leading coefficient first.
pub fn norm_one_charpoly(t: &BigRational) -> Vec<BigRational> {
    let one = BigRational::one();
    let quad = ReciprocalPolynomial { coeffs: vec![one.clone(), -t.clone(), one] };
    quad.times_x_minus_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::quad_eigenvalue;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    fn csa(degree: u32, idx: &[(&str, u32)]) -> CSAProfile {
        CSAProfile { degree, local_index: idx.iter().map(|(p, m)| (p.to_string(), *m)).collect() }
    }

    fn quad_field(local: &[(&str, Vec<u32>)]) -> EtaleProfile {
        EtaleProfile {
            factor_degrees: vec![2],
            local_degrees: local.iter().map(|(p, v)| (p.to_string(), vec![v.clone()])).collect(),
        }
    }

    #[test]
    fn local_criterion() {
        assert!(embeds_in_csa_local(&[2], 2).unwrap());
        assert!(!embeds_in_csa_local(&[1, 1], 2).unwrap());
        assert!(embeds_in_csa_local(&[1, 3, 7], 1).unwrap());
    }

    #[test]
    fn global_criterion() {
        let d = csa(2, &[("2", 2), ("3", 2)]);
        assert!(embeds_in_csa_global(&quad_field(&[("2", vec![2]), ("3", vec![2])]), &d).unwrap());
        assert!(!embeds_in_csa_global(&quad_field(&[("2", vec![2]), ("3", vec![1, 1])]), &d).unwrap());
        let split = csa(2, &[]);
        assert!(embeds_in_csa_global(&quad_field(&[("3", vec![1, 1])]), &split).unwrap());
        let bad = EtaleProfile { factor_degrees: vec![3], local_degrees: BTreeMap::new() };
        assert!(embeds_in_csa_global(&bad, &split).is_err());
        assert!(embeds_in_csa_global(&quad_field(&[("2", vec![2])]), &d).is_err());
    }

    #[test]
    fn same_etale() {
        let d1 = csa(2, &[("2", 2), ("3", 2)]);
        let d2 = csa(2, &[("2", 2), ("3", 2), ("5", 2), ("7", 2)]);
        assert!(same_maximal_etale(&d1, &d1).unwrap());
        assert!(!same_maximal_etale(&d1, &d2).unwrap());
        let d1b = csa(2, &[("2", 2), ("3", 2), ("11", 1)]);
        assert!(same_maximal_etale(&d1, &d1b).unwrap());
        assert!(same_maximal_etale(&d1, &csa(4, &[])).is_err());
    }

    #[test]
    fn truncation_examples() {
        let t = truncate_reciprocal_charpoly(&q(&[1, -4, 4, -1])).unwrap();
        assert_eq!(t.coeffs, q(&[1, -3, 1]));
        let t = truncate_reciprocal_charpoly(&q(&[1, 0, 0, -1])).unwrap();
        assert_eq!(t.coeffs, q(&[1, 1, 1]));
        assert!(truncate_reciprocal_charpoly(&q(&[1, -3, 1])).is_err());
        assert!(truncate_reciprocal_charpoly(&q(&[1, 0, 0, 1])).is_err());
        // (x − 1)(x² − 1) has quotient x² − 1, which is anti-palindromic
        assert!(truncate_reciprocal_charpoly(&q(&[1, -1, -1, 1])).is_err());
    }

    #[test]
    fn round_trip_and_roots() {
        for t in 3..12 {
            let tq = BigRational::from_integer(t.into());
            let p = norm_one_charpoly(&tq);
            let r = truncate_reciprocal_charpoly(&p).unwrap();
            assert_eq!(r.times_x_minus_one(), p);
            let lam = quad_eigenvalue(&tq).unwrap().to_multi();
            assert!(r.eval(&lam).unwrap().is_zero());
            assert!(r.eval(&lam.inv().unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn json_round_trip() {
        let r = ReciprocalPolynomial::new(vec![BigRational::new(1.into(), 2.into()), q(&[3])[0].clone(), BigRational::new(1.into(), 2.into())]).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"coeffs":["1/2","3","1/2"]}"#);
        assert_eq!(serde_json::from_str::<ReciprocalPolynomial>(&s).unwrap(), r);
    }
}
