//! Small-integer number theory: factorization by trial division, squarefree
//! parts, valuations, Legendre symbols and integer square roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Prime factorization of `n > 0` as `(p, e)` pairs in increasing order.
pub fn factor(mut n: u128) -> Vec<(u128, u32)> {
    assert!(n > 0, "factor(0)");
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u128;
    factor(n).len() == 1 && factor(n)[0].1 == 1
}

/// Write `n = f² · s` with `s` squarefree (sign carried by `s`). Returns `(s, f)`.
pub fn squarefree_decompose(n: i128) -> (i128, u128) {
    assert!(n != 0, "squarefree part of zero");
    let mut s: i128 = n.signum();
    let mut f: u128 = 1;
    for (p, e) in factor(n.unsigned_abs()) {
        if e % 2 == 1 {
            s *= p as i128;
        }
        f *= p.pow(e / 2);
    }
    (s, f)
}

pub fn squarefree_part(n: i128) -> i128 {
    squarefree_decompose(n).0
}

pub fn is_squarefree(n: i128) -> bool {
    n != 0 && factor(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Exact exponent of `p` in `n != 0`.
pub fn valuation(mut n: i128, p: i128) -> u32 {
    assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Legendre symbol `(a / p)` for an odd prime `p`; zero when `p | a`.
pub fn legendre(a: i128, p: i128) -> i32 {
    let r = a.rem_euclid(p);
    if r == 0 {
        return 0;
    }
    let mut result: i128 = 1;
    let mut base = r;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Square root of a perfect square, `None` otherwise.
pub fn exact_sqrt(n: i128) -> Option<u128> {
    if n < 0 {
        return None;
    }
    let r = isqrt_u128(n as u128);
    (r * r == n as u128).then_some(r)
}

pub fn bigint_to_i128(n: &BigInt) -> Option<i128> {
    n.to_i128()
}

/// `true` iff the rational `num/den` is the square of a rational.
pub fn is_rational_square(num: &BigInt, den: &BigInt) -> bool {
    if num.is_zero() {
        return true;
    }
    if num.is_negative() != den.is_negative() {
        return false;
    }
    let g = num.gcd(den);
    let (n, d) = ((num / &g).abs(), (den / &g).abs());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    &rn * &rn == n && &rd * &rd == d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor(97), vec![(97, 1)]);
        assert_eq!(factor(1), vec![]);
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_decompose(-72), (-2, 6));
        assert_eq!(squarefree_decompose(5), (5, 1));
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
    }

    #[test]
    fn legendre_table() {
        // squares mod 7 are 1, 2, 4
        let got: Vec<i32> = (0..7).map(|a| legendre(a, 7)).collect();
        assert_eq!(got, vec![0, 1, 1, -1, 1, -1, -1]);
    }

    #[test]
    fn rational_squares() {
        assert!(is_rational_square(&BigInt::from(9), &BigInt::from(4)));
        assert!(!is_rational_square(&BigInt::from(2), &BigInt::from(1)));
        assert!(!is_rational_square(&BigInt::from(-1), &BigInt::from(1)));
    }
}
