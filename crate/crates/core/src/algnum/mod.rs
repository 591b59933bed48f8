//! Exact real quadratic and multi-quadratic arithmetic, certified logarithms,
//! integer-relation detection with exact certification, and desk-scale
//! verdicts on multiplicative independence and weak containment.
//!
//! Character values enter every verdict through their absolute values: a
//! relation `∏ x_i^{n_i} = ±1` counts as a relation.

pub mod field;
pub mod interval;
pub mod lll;
pub mod relation;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

pub use field::{MultiQuadField, MultiQuadraticElement, QuadraticElement, MAX_RADICALS};
pub use interval::{DecimalInterval, Dyadic, Interval, DEFAULT_PRECISION};
pub use relation::{relation_search, RelationSearch};

use crate::error::{Error, Result};

/// Precision used when a computation at the requested precision reports
/// that its enclosures were too wide.
pub const ESCALATED_PRECISION: u32 = 1024;

/// Run `f` at `prec`, retrying once at [`ESCALATED_PRECISION`] on a
/// precision-insufficiency error.
pub fn with_escalation<T>(prec: u32, mut f: impl FnMut(u32) -> Result<T>) -> Result<T> {
    match f(prec) {
        Err(Error::PrecisionInsufficient { .. }) if prec < ESCALATED_PRECISION => f(ESCALATED_PRECISION),
        other => other,
    }
}

/// The eigenvalue `λ > 1` of a hyperbolic norm-one element with trace `t`:
/// the larger root of `λ² − |t|λ + 1 = 0`.
pub fn quad_eigenvalue(t: &BigRational) -> Result<QuadraticElement> {
    let two = BigRational::from_integer(2.into());
    let at = t.abs();
    if at <= two {
        return Err(Error::invalid(format!("trace {t} is not hyperbolic (|t| <= 2)")));
    }
    // t = p/q, t² − 4 = (p² − 4q²)/q²
    let p = at.numer();
    let q = at.denom();
    let rad = p * p - BigInt::from(4) * q * q;
    let rad = rad
        .to_u64()
        .ok_or_else(|| Error::unsupported(format!("discriminant of trace {t} exceeds 64 bits")))?;
    let half = BigRational::new(1.into(), 2.into());
    QuadraticElement::new(&at * &half, BigRational::new(1.into(), q * BigInt::from(2)), rad)
}

/// Certified enclosure of `log|x|` whose width is at most
/// `2^(3 − prec) · max(1, |log|x||)`.
pub fn log_abs(x: &MultiQuadraticElement, prec: u32) -> Result<Interval> {
    if x.is_zero() {
        return Err(Error::invalid("logarithm of zero"));
    }
    let w = prec + 10;
    x.enclose(w).abs().ln(w)
}

/// Candidate integer relation among logarithm enclosures, or `None`.
///
/// A returned vector has entries bounded by `coeff_bound` and an interval
/// combination consistent with zero; it still has to be certified.
pub fn find_integer_relation(log_intervals: &[Interval], coeff_bound: u64, prec: u32) -> Result<Option<Vec<i64>>> {
    if log_intervals.len() < 2 {
        return Err(Error::invalid("relation search needs at least two values"));
    }
    let r = relation_search(log_intervals, coeff_bound, prec)?;
    Ok(r.candidates.into_iter().next())
}

fn common_field(elements: &[&MultiQuadraticElement]) -> Result<MultiQuadField> {
    elements.iter().try_fold(MultiQuadField::rationals(), |f, x| f.join(x.field()))
}

/// Exact check that `∏ x_i^{n_i} = ±1`.
pub fn certify_relation(elements: &[MultiQuadraticElement], exponents: &[i64]) -> Result<bool> {
    if elements.len() != exponents.len() {
        return Err(Error::invalid("one exponent per element is required"));
    }
    let active: Vec<(&MultiQuadraticElement, i64)> =
        elements.iter().zip(exponents).filter(|(_, &n)| n != 0).map(|(x, &n)| (x, n)).collect();
    if active.is_empty() {
        return Err(Error::invalid("exponent vector is zero"));
    }
    if active.iter().any(|(x, _)| x.is_zero()) {
        return Err(Error::invalid("zero element"));
    }
    let field = common_field(&active.iter().map(|(x, _)| *x).collect::<Vec<_>>())?;
    // compare positive and negative parts to avoid field inversions
    let mut lhs = MultiQuadraticElement::one().embed(&field)?;
    let mut rhs = lhs.clone();
    for (x, n) in active {
        let x = x.embed(&field)?;
        let p = x.pow(n.abs())?;
        if n > 0 {
            lhs = lhs.mul(&p)?;
        } else {
            rhs = rhs.mul(&p)?;
        }
    }
    Ok(lhs == rhs || lhs == rhs.neg())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    Exact,
    IntervalOnly,
}

/// Exponent vector of a multiplicative relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationWitness {
    pub exponents: Vec<i64>,
    pub status: Certification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IndependenceVerdict {
    /// No certified relation with coefficients up to `bound`. When
    /// `lattice_certified` is set, the reduced lattice itself excludes all
    /// such relations; otherwise the claim rests on the search.
    IndependentUpToBound { bound: u64, lattice_certified: bool },
    Dependent { witness: RelationWitness },
}

fn certify_or_fallback(elements: &[MultiQuadraticElement], c: &[i64]) -> Result<Option<Certification>> {
    match certify_relation(elements, c) {
        Ok(true) => Ok(Some(Certification::Exact)),
        Ok(false) => Ok(None),
        Err(Error::Unsupported(_)) => Ok(Some(Certification::IntervalOnly)),
        Err(e) => Err(e),
    }
}

/// Bounded multiplicative-independence verdict for nonzero elements.
pub fn multiplicatively_independent(
    elements: &[MultiQuadraticElement],
    coeff_bound: u64,
    precision_bits: u32,
) -> Result<IndependenceVerdict> {
    if elements.is_empty() {
        return Err(Error::invalid("no elements"));
    }
    if elements.iter().any(MultiQuadraticElement::is_zero) {
        return Err(Error::invalid("zero element"));
    }
    with_escalation(precision_bits, |prec| {
        let logs = elements.iter().map(|x| log_abs(x, prec)).collect::<Result<Vec<_>>>()?;
        let search = relation_search(&logs, coeff_bound, prec)?;
        for c in &search.candidates {
            if let Some(status) = certify_or_fallback(elements, c)? {
                return Ok(IndependenceVerdict::Dependent {
                    witness: RelationWitness { exponents: c.clone(), status },
                });
            }
        }
        Ok(IndependenceVerdict::IndependentUpToBound {
            bound: coeff_bound,
            lattice_certified: search.absence_certified,
        })
    })
}

/// Exponents `a` (over side 1) and `b` (over side 2) with
/// `∏ s1_i^{a_i} = ∏ s2_j^{b_j} ≠ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentWitness {
    pub side1_exponents: Vec<i64>,
    pub side2_exponents: Vec<i64>,
    pub status: Certification,
}

/// Search a bounded exponent box for a weak-containment relation between
/// two lists of positive character values.
pub fn weak_containment_search(
    side1: &[MultiQuadraticElement],
    side2: &[MultiQuadraticElement],
    exponent_bound: u64,
    precision_bits: u32,
) -> Result<Option<ContainmentWitness>> {
    if side1.is_empty() {
        return Err(Error::invalid("side 1 must be nonempty"));
    }
    for x in side1.iter().chain(side2) {
        if x.signum() <= 0 {
            return Err(Error::invalid(format!("value {x} is not a positive real")));
        }
    }
    if side2.is_empty() {
        return Ok(None);
    }
    let all: Vec<MultiQuadraticElement> = side1.iter().chain(side2).cloned().collect();
    let m1 = side1.len();
    with_escalation(precision_bits, |prec| {
        let logs = all.iter().map(|x| log_abs(x, prec)).collect::<Result<Vec<_>>>()?;
        let search = relation_search(&logs, exponent_bound, prec)?;
        for c in &search.candidates {
            let a = c[..m1].to_vec();
            let b: Vec<i64> = c[m1..].iter().map(|x| -x).collect();
            if a.iter().all(|&x| x == 0) || b.iter().all(|&x| x == 0) {
                // relation internal to one side: common value is 1
                continue;
            }
            let Some(status) = certify_or_fallback(&all, c)? else { continue };
            let common = a
                .iter()
                .zip(&logs[..m1])
                .fold(Interval::zero(), |acc, (&n, iv)| acc.add(&iv.mul_int(n, prec), prec));
            let nontrivial = if common.contains_zero() {
                status == Certification::Exact && !side_product_is_one(side1, &a)?
            } else {
                true
            };
            if nontrivial {
                return Ok(Some(ContainmentWitness { side1_exponents: a, side2_exponents: b, status }));
            }
        }
        Ok(None)
    })
}

fn side_product_is_one(values: &[MultiQuadraticElement], exps: &[i64]) -> Result<bool> {
    if exps.iter().all(|&e| e == 0) {
        return Ok(true);
    }
    certify_relation(values, exps)
}

/// Convenience: integer or rational as an exact element.
pub fn rational_element(q: BigRational) -> MultiQuadraticElement {
    MultiQuadraticElement::rational(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn quad(a: (i64, i64), b: (i64, i64), d: u64) -> MultiQuadraticElement {
        QuadraticElement::new(q(a.0, a.1), q(b.0, b.1), d).unwrap().to_multi()
    }

    fn silver() -> MultiQuadraticElement {
        quad((1, 1), (1, 1), 2)
    }

    fn two_plus_sqrt3() -> MultiQuadraticElement {
        quad((2, 1), (1, 1), 3)
    }

    fn golden_sq() -> MultiQuadraticElement {
        quad((3, 2), (1, 2), 5)
    }

    #[test]
    fn eigenvalue_examples() {
        let l = quad_eigenvalue(&q(3, 1)).unwrap();
        assert_eq!(l, QuadraticElement::new(q(3, 2), q(1, 2), 5).unwrap());
        assert_eq!(quad_eigenvalue(&q(-3, 1)).unwrap(), l);
        assert!(quad_eigenvalue(&q(2, 1)).is_err());
        assert!(quad_eigenvalue(&q(-1, 1)).is_err());
        // t = 5/2 has rational eigenvalue 2
        assert_eq!(quad_eigenvalue(&q(5, 2)).unwrap(), QuadraticElement::from_int(2));
    }

    #[test]
    fn eigenvalue_satisfies_trace_identity() {
        for t in [3i64, 4, 5, 7, 10, 50, -9] {
            let l = quad_eigenvalue(&q(t, 1)).unwrap();
            let s = l.to_multi().add(&l.inv().unwrap().to_multi()).unwrap();
            assert_eq!(s.as_rational(), Some(&q(t.abs(), 1)));
        }
    }

    #[test]
    fn log_abs_values() {
        let iv = log_abs(&golden_sq(), 256).unwrap();
        assert!((iv.mid_f64() - 0.9624236501192069).abs() < 1e-15);
        assert!(iv.width_f64() <= 2f64.powi(3 - 256));
        let two = log_abs(&MultiQuadraticElement::from_int(2), 256).unwrap();
        assert!((two.mid_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        let one = log_abs(&MultiQuadraticElement::from_int(1), 256).unwrap();
        assert!(one.contains_zero());
        assert!(log_abs(&MultiQuadraticElement::from_int(0), 64).is_err());
    }

    #[test]
    fn relation_examples() {
        let l = golden_sq();
        let l3 = l.pow(3).unwrap();
        let logs = [log_abs(&l, 256).unwrap(), log_abs(&l3, 256).unwrap()];
        assert_eq!(find_integer_relation(&logs, 100, 256).unwrap(), Some(vec![3, -1]));

        let s = silver();
        let logs = [log_abs(&s, 256).unwrap(), log_abs(&s.pow(2).unwrap(), 256).unwrap()];
        assert_eq!(find_integer_relation(&logs, 100, 256).unwrap(), Some(vec![2, -1]));

        let logs = [
            log_abs(&MultiQuadraticElement::from_int(2), 256).unwrap(),
            log_abs(&MultiQuadraticElement::from_int(3), 256).unwrap(),
        ];
        assert_eq!(find_integer_relation(&logs, 1_000_000, 256).unwrap(), None);
        assert!(find_integer_relation(&logs[..1], 10, 256).is_err());
    }

    #[test]
    fn certify_examples() {
        let s = silver();
        assert!(certify_relation(&[s.clone(), s.pow(3).unwrap()], &[3, -1]).unwrap());
        let l = golden_sq();
        let l2 = quad((7, 2), (3, 2), 5);
        assert!(certify_relation(&[l, l2], &[2, -1]).unwrap());
        assert!(certify_relation(std::slice::from_ref(&s), &[0]).is_err());
    }

    #[test]
    fn no_small_relation_between_silver_and_two_plus_sqrt3() {
        // oracle: enumerate every exponent pair in the box
        let xs = [silver(), two_plus_sqrt3()];
        for a in -10i64..=10 {
            for b in -10i64..=10 {
                if a == 0 && b == 0 {
                    continue;
                }
                assert!(!certify_relation(&xs, &[a, b]).unwrap(), "({a}, {b})");
            }
        }
    }

    #[test]
    fn certify_sign_insensitive() {
        let minus_one = MultiQuadraticElement::from_int(-1);
        assert!(certify_relation(&[minus_one], &[1]).unwrap());
    }

    #[test]
    fn independence_verdicts() {
        let v = multiplicatively_independent(&[silver(), two_plus_sqrt3()], 1000, 256).unwrap();
        assert!(matches!(v, IndependenceVerdict::IndependentUpToBound { bound: 1000, .. }));

        let l = golden_sq();
        let v = multiplicatively_independent(&[l.clone(), l.pow(2).unwrap()], 1000, 256).unwrap();
        assert_eq!(
            v,
            IndependenceVerdict::Dependent {
                witness: RelationWitness { exponents: vec![2, -1], status: Certification::Exact }
            }
        );

        let v = multiplicatively_independent(&[l], 1000, 256).unwrap();
        assert!(matches!(v, IndependenceVerdict::IndependentUpToBound { .. }));
    }

    #[test]
    fn containment_examples() {
        let l = golden_sq();
        let w = weak_containment_search(std::slice::from_ref(&l), &[l.pow(3).unwrap()], 100, 256).unwrap().unwrap();
        assert_eq!(w.side1_exponents, vec![3]);
        assert_eq!(w.side2_exponents, vec![1]);
        assert_eq!(w.status, Certification::Exact);

        assert_eq!(weak_containment_search(&[silver()], &[two_plus_sqrt3()], 10, 256).unwrap(), None);
        assert_eq!(weak_containment_search(&[l], &[], 10, 256).unwrap(), None);
    }

    #[test]
    fn containment_ignores_relations_inside_one_side() {
        // s1 = {λ, λ²} has an internal relation; s2 = {2+√3} is unrelated
        let l = golden_sq();
        let w = weak_containment_search(&[l.clone(), l.pow(2).unwrap()], &[two_plus_sqrt3()], 50, 256).unwrap();
        assert_eq!(w, None);
    }
}
