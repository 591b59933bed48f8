//! Integer-relation detection among logarithms by lattice reduction.
//!
//! The lattice is spanned by the rows `[e_i | round(N · mid(log_i))]` with
//! `N = 2^(prec/2)`. A reduced row whose coefficient part is bounded and
//! whose interval combination `Σ c_i · log_i` contains zero is reported as a
//! candidate relation. Candidates are only candidates: the caller certifies
//! them exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::interval::{Dyadic, Interval};
use super::lll::lll_reduce;
use crate::error::{Error, Result};

/// Outcome of one lattice search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSearch {
    /// Candidate exponent vectors, first nonzero entry positive.
    pub candidates: Vec<Vec<i64>>,
    /// Set when the Gram–Schmidt norms of the reduced basis rule out every
    /// relation with coefficients bounded by the search bound.
    pub absence_certified: bool,
}

fn normalize_sign(mut v: Vec<i64>) -> Vec<i64> {
    if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        for x in &mut v {
            *x = -*x;
        }
    }
    v
}

fn round_dyadic(d: &Dyadic) -> BigInt {
    let q = d.to_rational();
    let two = BigInt::from(2);
    (q.numer() * &two + q.denom()).div_floor(&(q.denom() * &two))
}

/// Search for integer relations among the given logarithm enclosures.
pub fn relation_search(logs: &[Interval], coeff_bound: u64, prec: u32) -> Result<RelationSearch> {
    let m = logs.len();
    if m == 0 {
        return Err(Error::invalid("relation search needs at least one value"));
    }
    if coeff_bound == 0 {
        return Err(Error::invalid("coefficient bound must be at least 1"));
    }
    let scale_bits = (prec / 2) as i64;
    let total_width = logs.iter().fold(BigRational::zero(), |acc, iv| acc + iv.width().to_rational());
    let bound = BigRational::from_integer(BigInt::from(coeff_bound));
    let n_scale = Dyadic::new(1.into(), scale_bits).to_rational();
    // interval noise at the bound must stay below one lattice unit
    if &total_width * &bound * &n_scale >= BigRational::from_integer(1.into()) {
        return Err(Error::PrecisionInsufficient {
            bits: prec,
            reason: format!("log enclosures too wide to resolve coefficients up to {coeff_bound}"),
        });
    }

    let rows: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            let mut row = vec![BigInt::zero(); m + 1];
            row[i] = BigInt::from(1);
            let scaled = Dyadic::new(logs[i].mid().mantissa().clone(), logs[i].mid().exponent() + scale_bits);
            row[m] = round_dyadic(&scaled);
            row
        })
        .collect();
    let reduced = lll_reduce(rows)?;

    let mut candidates = Vec::new();
    for row in &reduced.basis {
        let coeffs: Option<Vec<i64>> = row[..m]
            .iter()
            .map(|c| c.to_i64().filter(|v| v.unsigned_abs() <= coeff_bound))
            .collect();
        let Some(coeffs) = coeffs else { continue };
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let combo = coeffs
            .iter()
            .zip(logs)
            .fold(Interval::zero(), |acc, (&c, iv)| acc.add(&iv.mul_int(c, prec), prec));
        if combo.contains_zero() {
            let c = normalize_sign(coeffs);
            if !candidates.contains(&c) {
                candidates.push(c);
            }
        }
    }

    // a true relation n with |n_i| <= B maps to a lattice vector of squared
    // length at most m·B² + (B·(N·Σw/2 + m/2))²
    let mq = BigRational::from_integer(BigInt::from(m));
    let half = BigRational::new(1.into(), 2.into());
    let tail = &bound * (&n_scale * &total_width * &half + &mq * &half);
    let max_norm = &mq * &bound * &bound + &tail * &tail;
    let min_gs = reduced.gs_norms.iter().min().cloned().unwrap_or_else(BigRational::zero);
    let absence_certified = candidates.is_empty() && min_gs > max_norm;
    Ok(RelationSearch { candidates, absence_certified })
}
