//! Polynomials over ℚ (coefficients in ascending degree) and an
//! irreducibility test combining rational roots with factorization patterns
//! modulo small primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::linalg::{self, QMatrix};

pub type QPoly = Vec<BigRational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &QPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &QPoly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &QPoly) -> QPoly {
    p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect()
}

/// Quotient and remainder.
pub fn divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r = a.clone();
    trim(&mut r);
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead = b[db].clone();
    while let Some(dr) = degree(&r).filter(|&d| d >= db) {
        let c = &r[dr] / &lead;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[dr - db + i] -= &c * bc;
        }
        q[dr - db] = c;
        trim(&mut r);
    }
    (q, r)
}

pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let l = x[d].clone();
        for c in x.iter_mut() {
            *c /= &l;
        }
    }
    x
}

/// Evaluate `p` at a square matrix.
pub fn eval_matrix(p: &QPoly, m: &QMatrix) -> QMatrix {
    let n = m.len();
    let mut acc = vec![vec![BigRational::zero(); n]; n];
    for c in p.iter().rev() {
        acc = linalg::mat_mul(&acc, m);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    acc
}

/// Monic minimal polynomial of a square matrix, by the first linear
/// dependency among `I, M, M², …`.
pub fn minimal_polynomial(m: &QMatrix) -> QPoly {
    let n = m.len();
    let flat = |a: &QMatrix| a.iter().flatten().cloned().collect::<Vec<_>>();
    let mut powers = vec![flat(&linalg::identity(n))];
    let mut cur = linalg::identity(n);
    loop {
        cur = linalg::mat_mul(&cur, m);
        let target = flat(&cur);
        // solve Σ c_k powers[k] = target
        let k = powers.len();
        let system: QMatrix = (0..n * n)
            .map(|r| {
                let mut row: Vec<BigRational> = powers.iter().map(|p| p[r].clone()).collect();
                row.push(target[r].clone());
                row
            })
            .collect();
        let (red, pivots) = linalg::rref(&system);
        if !pivots.contains(&k) {
            let mut coeffs = vec![BigRational::zero(); k + 1];
            for (row, &p) in pivots.iter().enumerate() {
                coeffs[p] = -red[row][k].clone();
            }
            coeffs[k] = BigRational::one();
            return coeffs;
        }
        powers.push(target);
    }
}

/// Primitive integer polynomial proportional to `p`.
pub fn primitive_part(p: &QPoly) -> Vec<BigInt> {
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: Vec<BigInt> = if g.is_zero() { ints } else { ints.iter().map(|c| c / &g).collect() };
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    if out.last().is_some_and(Signed::is_negative) {
        out = out.into_iter().map(|c| -c).collect();
    }
    out
}

fn divisors(n: &BigInt) -> Option<Vec<u128>> {
    let n = n.abs().to_u128()?;
    if n > 1 << 60 {
        return None;
    }
    let mut ds = vec![1u128];
    for (p, e) in arith::factor(n) {
        let mut next = Vec::new();
        for d in &ds {
            let mut pk = 1u128;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        ds = next;
    }
    Some(ds)
}

/// A rational root of `p`, if any; `Err(())` when the candidate set is
/// too large to enumerate.
pub fn rational_root(p: &QPoly) -> Result<Option<BigRational>, ()> {
    let z = primitive_part(p);
    if z.is_empty() {
        return Ok(Some(BigRational::zero()));
    }
    if z[0].is_zero() {
        return Ok(Some(BigRational::zero()));
    }
    let num = divisors(&z[0]).ok_or(())?;
    let den = divisors(z.last().expect("nonzero")).ok_or(())?;
    for a in &num {
        for b in &den {
            for s in [1i32, -1] {
                let r = BigRational::new(BigInt::from(*a) * s, BigInt::from(*b));
                if eval(p, &r).is_zero() {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

mod modp {
    pub type P = Vec<u64>;

    pub fn trim(a: &mut P) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    pub fn rem(a: &P, b: &P, p: u64) -> P {
        let mut r = a.clone();
        trim(&mut r);
        let db = b.len() - 1;
        let li = inv(b[db], p);
        while r.len() > db {
            let dr = r.len() - 1;
            let c = r[dr] * li % p;
            for i in 0..=db {
                r[dr - db + i] = (r[dr - db + i] + p - c * b[i] % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn div(a: &P, b: &P, p: u64) -> P {
        let mut r = a.clone();
        trim(&mut r);
        let db = b.len() - 1;
        let li = inv(b[db], p);
        let mut q = vec![0; r.len().saturating_sub(db)];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = r[dr] * li % p;
            q[dr - db] = c;
            for i in 0..=db {
                r[dr - db + i] = (r[dr - db + i] + p - c * b[i] % p) % p;
            }
            trim(&mut r);
        }
        q
    }

    pub fn mul(a: &P, b: &P, p: u64) -> P {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn gcd(a: &P, b: &P, p: u64) -> P {
        let mut x = a.clone();
        let mut y = b.clone();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn sub(a: &P, b: &P, p: u64) -> P {
        let n = a.len().max(b.len());
        let mut out: P = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect();
        trim(&mut out);
        out
    }

    pub fn derivative(a: &P, p: u64) -> P {
        let mut out: P = a.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % p) * c % p).collect();
        trim(&mut out);
        out
    }

    /// Degrees of the irreducible factors of a squarefree `f` (distinct
    /// degree factorization).
    pub fn factor_degrees(f: &P, p: u64) -> Vec<usize> {
        let mut f = f.clone();
        let mut out = Vec::new();
        let mut h = rem(&vec![0, 1], &f, p);
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                out.push(f.len() - 1);
                break;
            }
            // h = x^{p^d} mod f
            h = compose_power(&h, &f, p);
            let g = gcd(&sub(&h, &vec![0, 1], p), &f, p);
            if g.len() > 1 {
                let k = (g.len() - 1) / d;
                out.extend(std::iter::repeat_n(d, k));
                f = div(&f, &g, p);
                h = rem(&h, &f, p);
            }
        }
        out
    }

    fn compose_power(h: &P, f: &P, p: u64) -> P {
        // raise to the p-th power modulo f
        let mut result: P = vec![1];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &base, p), f, p);
            }
            base = rem(&mul(&base, &base, p), f, p);
            e >>= 1;
        }
        result
    }
}

/// Outcome of the irreducibility test over ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

const SMALL_PRIMES: [u64; 30] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
    109, 113, 127,
];

fn subset_sums(parts: &[usize], n: usize) -> Vec<bool> {
    let mut can = vec![false; n + 1];
    can[0] = true;
    for &d in parts {
        for s in (d..=n).rev() {
            if can[s - d] {
                can[s] = true;
            }
        }
    }
    can
}

/// Decide irreducibility over ℚ when the evidence is conclusive.
pub fn irreducibility(p: &QPoly) -> Irreducibility {
    let Some(n) = degree(p) else { return Irreducibility::Reducible };
    if n == 0 {
        return Irreducibility::Reducible;
    }
    if n == 1 {
        return Irreducibility::Irreducible;
    }
    if degree(&gcd(p, &derivative(p))).unwrap_or(0) > 0 {
        return Irreducibility::Reducible;
    }
    match rational_root(p) {
        Ok(Some(_)) => return Irreducibility::Reducible,
        Ok(None) if n <= 3 => return Irreducibility::Irreducible,
        _ => {}
    }
    let z = primitive_part(p);
    let mut possible = vec![true; n + 1];
    for &q in &SMALL_PRIMES {
        let qb = BigInt::from(q);
        if z[n].is_multiple_of(&qb) {
            continue;
        }
        let f: Vec<u64> = z.iter().map(|c| c.mod_floor(&qb).to_u64().expect("reduced")).collect();
        let fp = modp::derivative(&f, q);
        if modp::gcd(&f, &fp, q).len() > 1 {
            continue;
        }
        let sums = subset_sums(&modp::factor_degrees(&f, q), n);
        for (slot, ok) in possible.iter_mut().zip(sums) {
            *slot &= ok;
        }
        if (1..n).all(|d| !possible[d]) {
            return Irreducibility::Irreducible;
        }
    }
    Irreducibility::Unknown
}
