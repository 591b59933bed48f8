//! Exact LLL reduction of an integer lattice basis (rational Gram–Schmidt).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Result of a reduction: the reduced basis (rows) and the squared norms of
/// its Gram–Schmidt vectors.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub basis: Vec<Vec<BigInt>>,
    pub gs_norms: Vec<BigRational>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn round_half(q: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let n = q.numer() * &two + q.denom();
    let d = q.denom() * &two;
    num_integer::Integer::div_floor(&n, &d)
}

/// LLL-reduce linearly independent integer row vectors with parameter
/// `delta = 3/4`.
pub fn lll_reduce(rows: Vec<Vec<BigInt>>) -> Result<Reduced> {
    let n = rows.len();
    if n == 0 {
        return Ok(Reduced { basis: rows, gs_norms: vec![] });
    }
    let delta = BigRational::new(3.into(), 4.into());
    let half = BigRational::new(1.into(), 2.into());
    let mut b = rows;
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bn = vec![BigRational::zero(); n];

    let gram_row = |b: &[Vec<BigInt>], mu: &mut [Vec<BigRational>], bn: &mut [BigRational], k: usize| -> Result<()> {
        for j in 0..k {
            let mut v = BigRational::from_integer(dot(&b[k], &b[j]));
            for i in 0..j {
                v -= &mu[j][i] * &mu[k][i] * &bn[i];
            }
            mu[k][j] = v / &bn[j];
        }
        let mut v = BigRational::from_integer(dot(&b[k], &b[k]));
        for j in 0..k {
            v -= &mu[k][j] * &mu[k][j] * &bn[j];
        }
        if v.is_zero() {
            return Err(Error::invalid("lattice basis is linearly dependent"));
        }
        bn[k] = v;
        Ok(())
    };

    gram_row(&b, &mut mu, &mut bn, 0)?;
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            gram_row(&b, &mut mu, &mut bn, k)?;
        }
        size_reduce(&mut b, &mut mu, k, k - 1, &half);
        let lhs = bn[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bn[k - 1];
        if lhs < rhs {
            // swap b_k and b_{k-1}
            b.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = mu[k][j].clone();
                mu[k][j] = mu[k - 1][j].clone();
                mu[k - 1][j] = t;
            }
            let m = mu[k][k - 1].clone();
            let big_b = &bn[k] + &m * &m * &bn[k - 1];
            mu[k][k - 1] = &m * &bn[k - 1] / &big_b;
            bn[k] = &bn[k - 1] * &bn[k] / &big_b;
            bn[k - 1] = big_b;
            for i in k + 1..=kmax {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                mu[i][k - 1] = t + &mu[k][k - 1] * &mu[i][k];
            }
            k = (k - 1).max(1);
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                size_reduce(&mut b, &mut mu, k, l, &half);
            }
            k += 1;
        }
    }
    Ok(Reduced { basis: b, gs_norms: bn })
}

fn size_reduce(b: &mut [Vec<BigInt>], mu: &mut [Vec<BigRational>], k: usize, l: usize, half: &BigRational) {
    if mu[k][l].abs() <= *half {
        return;
    }
    let q = round_half(&mu[k][l]);
    let qr = BigRational::from_integer(q.clone());
    let bl = b[l].clone();
    for (x, y) in b[k].iter_mut().zip(&bl) {
        *x -= &q * y;
    }
    mu[k][l] -= &qr;
    for i in 0..l {
        let t = &qr * &mu[l][i];
        mu[k][i] -= t;
    }
    debug_assert!(mu[k][l].abs() <= BigRational::one());
}
