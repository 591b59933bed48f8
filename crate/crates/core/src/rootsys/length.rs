//! Root values `α(γ)` of torus elements and the length functional.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Family, RootSystem};
use crate::algnum::{log_abs, Interval, MultiQuadraticElement};
use crate::arith::is_rational_square;
use crate::error::{Error, Result};

/// Eigenvalue parameters of a torus element, in the coordinates of the
/// ambient space of the root system: `n + 1` values with product one for
/// `A_n`, three values with product one for `G_2`, and `n` values for
/// `B_n`, `C_n`, `D_n`.
#[derive(Clone, Debug, PartialEq)]
pub enum TorusElement {
    Exact(Vec<MultiQuadraticElement>),
    Approx(Vec<Interval>),
}

/// The multiset `{α(γ) : α ∈ Φ}`, indexed like the roots of the system.
#[derive(Clone, Debug, PartialEq)]
pub enum RootValues {
    Exact(Vec<MultiQuadraticElement>),
    Approx(Vec<Interval>),
}

impl RootValues {
    pub fn len(&self) -> usize {
        match self {
            RootValues::Exact(v) => v.len(),
            RootValues::Approx(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Enclosures of all values.
    pub fn enclosures(&self, prec: u32) -> Vec<Interval> {
        match self {
            RootValues::Exact(v) => v.iter().map(|x| x.enclose(prec)).collect(),
            RootValues::Approx(v) => v.clone(),
        }
    }
}

/// Output of the length functional: a certified enclosure of
/// `√(Σ (log|α(γ)|)²)` together with the logarithms `log|α(γ)|` it was
/// computed from.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthValue {
    pub value: Interval,
    pub mu_vector: Vec<Interval>,
}

fn check_element(system: &RootSystem, len: usize) -> Result<()> {
    match system.family {
        Family::E | Family::F => Err(Error::unsupported(format!(
            "root values for {}{} need half-integral exponents; use log coordinates instead",
            system.family, system.rank
        ))),
        _ if len != system.ambient_dim() => Err(Error::invalid(format!(
            "{}{} expects {} eigenvalue parameters, got {len}",
            system.family,
            system.rank,
            system.ambient_dim()
        ))),
        _ => Ok(()),
    }
}

fn needs_unit_product(system: &RootSystem) -> bool {
    matches!(system.family, Family::A | Family::G)
}

/// Evaluate every root on a torus element.
pub fn torus_root_values(system: &RootSystem, element: &TorusElement, prec: u32) -> Result<RootValues> {
    match element {
        TorusElement::Exact(lams) => {
            check_element(system, lams.len())?;
            if lams.iter().any(MultiQuadraticElement::is_zero) {
                return Err(Error::invalid("eigenvalue parameters must be nonzero"));
            }
            if needs_unit_product(system) {
                let p = lams.iter().try_fold(MultiQuadraticElement::one(), |acc, x| acc.mul(x))?;
                if !p.is_one() {
                    return Err(Error::invalid("eigenvalue parameters must have product 1"));
                }
            }
            let inverses = lams.iter().map(MultiQuadraticElement::inv).collect::<Result<Vec<_>>>()?;
            let values = system
                .roots
                .iter()
                .map(|r| {
                    r.iter().enumerate().filter(|(_, &c)| c != 0).try_fold(MultiQuadraticElement::one(), |acc, (i, &c)| {
                        let base = if c > 0 { &lams[i] } else { &inverses[i] };
                        acc.mul(&base.pow(c.abs())?)
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(RootValues::Exact(values))
        }
        TorusElement::Approx(lams) => {
            check_element(system, lams.len())?;
            if lams.iter().any(Interval::contains_zero) {
                return Err(Error::invalid("eigenvalue parameters must be bounded away from zero"));
            }
            if needs_unit_product(system) {
                let p = lams.iter().fold(Interval::from_int(1), |acc, x| acc.mul(x, prec));
                if !p.contains_rational(&BigRational::one()) {
                    return Err(Error::invalid("eigenvalue parameters must have product 1"));
                }
            }
            let inverses = lams.iter().map(|x| x.recip(prec)).collect::<Result<Vec<_>>>()?;
            let values = system
                .roots
                .iter()
                .map(|r| {
                    r.iter().enumerate().filter(|(_, &c)| c != 0).fold(Interval::from_int(1), |acc, (i, &c)| {
                        let base = if c > 0 { &lams[i] } else { &inverses[i] };
                        (0..c.abs()).fold(acc, |a, _| a.mul(base, prec))
                    })
                })
                .collect();
            Ok(RootValues::Approx(values))
        }
    }
}

/// `√(Σ (log|v|)²)` over the given root values.
pub fn length_lambda(values: &RootValues, prec: u32) -> Result<LengthValue> {
    let logs = match values {
        RootValues::Exact(v) => v
            .iter()
            .map(|x| {
                if x.is_zero() {
                    Err(Error::invalid("root value is zero"))
                } else {
                    log_abs(x, prec)
                }
            })
            .collect::<Result<Vec<_>>>()?,
        RootValues::Approx(v) => v
            .iter()
            .map(|x| {
                if x.lo().is_zero() && x.hi().is_zero() {
                    Err(Error::invalid("root value is zero"))
                } else {
                    x.abs().ln(prec)
                }
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let sum = logs.iter().fold(Interval::zero(), |acc, l| acc.add(&l.square(prec), prec));
    Ok(LengthValue { value: sum.sqrt(prec)?, mu_vector: logs })
}

fn common_denominator(mu: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = mu.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let nums = mu.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    (nums, den)
}

fn check_log_dim(system: &RootSystem, len: usize) -> Result<()> {
    if len != system.ambient_dim() {
        return Err(Error::invalid(format!(
            "{}{} lives in dimension {}, got {len} log coordinates",
            system.family,
            system.rank,
            system.ambient_dim()
        )));
    }
    Ok(())
}

/// Exact values `log|α(γ)| = ⟨α, μ⟩` for the torus element with
/// logarithmic coordinates `μ`.
pub fn root_log_values(system: &RootSystem, mu: &[BigRational]) -> Result<Vec<BigRational>> {
    check_log_dim(system, mu.len())?;
    let (nums, den) = common_denominator(mu);
    let den = den * BigInt::from(system.scale);
    Ok(system
        .roots
        .iter()
        .map(|r| {
            let s: BigInt = r.iter().zip(&nums).filter(|(c, _)| **c != 0).map(|(&c, m)| m * c).sum();
            BigRational::new(s, den.clone())
        })
        .collect())
}

/// Exact `Σ_α ⟨α, μ⟩²`, the squared length in log coordinates.
pub fn log_length_squared(system: &RootSystem, mu: &[BigRational]) -> Result<BigRational> {
    check_log_dim(system, mu.len())?;
    let (nums, den) = common_denominator(mu);
    let total: BigInt = system
        .roots
        .iter()
        .map(|r| {
            let s: BigInt = r.iter().zip(&nums).filter(|(c, _)| **c != 0).map(|(&c, m)| m * c).sum();
            &s * &s
        })
        .sum();
    let d = den * BigInt::from(system.scale);
    Ok(BigRational::new(total, &d * &d))
}

/// Length enclosure from interval log coordinates.
pub fn length_from_log_coordinates(system: &RootSystem, mu: &[Interval], prec: u32) -> Result<Interval> {
    check_log_dim(system, mu.len())?;
    let scale_sq = Interval::from_int(system.scale * system.scale);
    let sum = system.roots.iter().fold(Interval::zero(), |acc, r| {
        let v = r
            .iter()
            .zip(mu)
            .filter(|(c, _)| **c != 0)
            .fold(Interval::zero(), |a, (&c, m)| a.add(&m.mul_int(c, prec), prec));
        acc.add(&v.square(prec), prec)
    });
    sum.div(&scale_sq, prec)?.sqrt(prec)
}

/// Lengths of the `B_n` element and its `C_n` partner with the same
/// logarithmic eigenvalue coordinates, and their ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct BcPair {
    pub n: u32,
    /// `λ₁²`, summed over the roots of `B_n`.
    pub lambda1_sq: BigRational,
    /// `λ₂²`, summed over the roots of `C_n`.
    pub lambda2_sq: BigRational,
    pub ratio_sq: BigRational,
    pub lambda1: Interval,
    pub lambda2: Interval,
    /// `λ₂ / λ₁`, divided as intervals.
    pub ratio: Interval,
}

fn sqrt_rational(q: &BigRational, prec: u32) -> Result<Interval> {
    Interval::from_rational(q, prec + 8).sqrt(prec)
}

/// Evaluate both length sums for `n ≥ 3` and a nonzero `μ ∈ ℚ^n`.
pub fn bn_cn_pair_lengths(n: u32, mu: &[BigRational], prec: u32) -> Result<BcPair> {
    if n < 3 {
        return Err(Error::invalid(format!("the B/C comparison needs n >= 3, got {n}")));
    }
    if mu.len() != n as usize {
        return Err(Error::invalid(format!("expected {n} log coordinates, got {}", mu.len())));
    }
    if mu.iter().all(Zero::is_zero) {
        return Err(Error::invalid("degenerate element: all log coordinates vanish"));
    }
    let b = RootSystem::new(Family::B, n)?;
    let c = RootSystem::new(Family::C, n)?;
    let lambda1_sq = log_length_squared(&b, mu)?;
    let lambda2_sq = log_length_squared(&c, mu)?;
    let lambda1 = sqrt_rational(&lambda1_sq, prec)?;
    let lambda2 = sqrt_rational(&lambda2_sq, prec)?;
    let ratio = lambda2.div(&lambda1, prec)?;
    let ratio_sq = &lambda2_sq / &lambda1_sq;
    Ok(BcPair { n, lambda1_sq, lambda2_sq, ratio_sq, lambda1, lambda2, ratio })
}

/// Closed form of `√q`: the exact root when `q` is a rational square,
/// otherwise `sqrt(q)`.
pub fn sqrt_closed_form(q: &BigRational) -> String {
    if q.is_negative() {
        return format!("sqrt({q})");
    }
    if is_rational_square(q.numer(), q.denom()) {
        let r = BigRational::new(q.numer().sqrt(), q.denom().sqrt());
        crate::ser::format_rational(&r)
    } else {
        format!("sqrt({})", crate::ser::format_rational(q))
    }
}
