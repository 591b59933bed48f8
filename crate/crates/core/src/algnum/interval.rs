//! Certified real intervals with dyadic endpoints and directed rounding.
//!
//! Every operation takes an explicit precision (significant bits kept per
//! endpoint). Lower endpoints are always rounded toward −∞ and upper
//! endpoints toward +∞, so an interval produced from exact inputs always
//! contains the exact real result.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Round {
    Down,
    Up,
}

/// An exact number `mant · 2^exp`, kept with odd mantissa (or zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n.into(), 0)
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Position of the leading bit: `2^(msb-1) <= |x| < 2^msb`.
    fn msb(&self) -> i64 {
        self.mant.bits() as i64 + self.exp
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.mant >> shift as usize).to_f64().unwrap_or(0.0);
        top * 2f64.powi((self.exp + shift).clamp(-2000, 2000) as i32)
    }

    fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        Dyadic::new(a + b, e)
    }

    fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = (bits - prec as u64) as usize;
        let m = match dir {
            Round::Down => &self.mant >> shift,
            Round::Up => -((-&self.mant) >> shift),
        };
        Dyadic::new(m, self.exp + shift as i64)
    }

    /// Directed rounding of an exact rational to `prec` significant bits.
    fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Dyadic {
        if q.is_zero() {
            return Dyadic::zero();
        }
        let num = q.numer();
        let den = q.denom();
        let k = prec as i64 + den.bits() as i64 - num.bits() as i64 + 2;
        let (n, d) = if k >= 0 {
            (num << k as usize, den.clone())
        } else {
            (num.clone(), den << (-k) as usize)
        };
        let m = match dir {
            Round::Down => n.div_floor(&d),
            Round::Up => -((-n).div_floor(&d)),
        };
        Dyadic::new(m, -k).round(prec, dir)
    }

    fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        let q = self.to_rational() / other.to_rational();
        Dyadic::from_rational(&q, prec, dir)
    }

    fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        debug_assert!(self.sign() != Sign::Minus);
        if self.is_zero() {
            return Dyadic::zero();
        }
        let c = (2 * prec as i64 + 2 - self.mant.bits() as i64).max(0);
        let t = Integer::div_floor(&(self.exp - c), &2);
        let big = &self.mant << (self.exp - 2 * t) as usize;
        let mut r = big.sqrt();
        if dir == Round::Up && &r * &r < big {
            r += 1;
        }
        Dyadic::new(r, t).round(prec, dir)
    }

    /// Round to `digits` significant decimal digits, directed.
    fn to_decimal(&self, digits: u32, dir: Round) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let q = self.to_rational();
        let abs = q.abs();
        // estimate the decimal exponent then correct it exactly
        let mut e10 = ((self.msb() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            let p = pow10(e10);
            if abs < p {
                e10 -= 1;
            } else if abs >= pow10(e10 + 1) {
                e10 += 1;
            } else {
                break;
            }
        }
        let scaled = &q * pow10(digits as i64 - 1 - e10);
        let int = match dir {
            Round::Down => scaled.floor().to_integer(),
            Round::Up => scaled.ceil().to_integer(),
        };
        let negative = int.is_negative();
        let mut s = int.abs().to_string();
        let mut exp = e10;
        // ceil may carry into an extra digit
        if s.len() as u32 > digits {
            exp += 1;
        }
        let tail = s.split_off(1);
        let tail = tail.trim_end_matches('0');
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&s);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        out.push('e');
        out.push_str(&exp.to_string());
        out
    }
}

fn pow10(e: i64) -> BigRational {
    let ten = BigInt::from(10u32);
    if e >= 0 {
        BigRational::from_integer(num_traits::pow(ten, e as usize))
    } else {
        BigRational::new(BigInt::one(), num_traits::pow(ten, (-e) as usize))
    }
}

/// Parse a decimal string such as `-1.25e-3`, `42` or `0.5` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| Error::invalid(format!("bad exponent in {s:?}")))?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::invalid(format!("empty decimal {s:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::invalid(format!("bad decimal {s:?}")));
    }
    let mut v = BigRational::from_integer(digits.parse::<BigInt>().unwrap_or_default());
    v *= pow10(exp - frac_part.len() as i64);
    Ok(if neg { -v } else { v })
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.sign(), other.sign()) {
            (a, b) if a != b => return sign_rank(a).cmp(&sign_rank(b)),
            (Sign::NoSign, _) => return Ordering::Equal,
            _ => {}
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

fn sign_rank(s: Sign) -> i8 {
    match s {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20, Round::Down))
    }
}

/// A closed interval `[lo, hi]` known to contain some real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn point(d: Dyadic) -> Self {
        Interval { lo: d.clone(), hi: d }
    }

    pub fn from_int(n: i64) -> Self {
        Interval::point(Dyadic::from_int(n))
    }

    pub fn zero() -> Self {
        Interval::point(Dyadic::zero())
    }

    pub fn from_endpoints(lo: Dyadic, hi: Dyadic) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid("interval with lo > hi"));
        }
        Ok(Interval { lo, hi })
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
        }
    }

    /// Interval around an `f64`, which is itself an exact dyadic.
    pub fn from_f64(x: f64) -> Result<Self> {
        let q = BigRational::from_float(x).ok_or_else(|| Error::invalid("non-finite float"))?;
        Ok(Interval::from_rational(&q, 64))
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.add(&self.lo.neg())
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64()
    }

    pub fn mid_f64(&self) -> f64 {
        self.lo.add(&self.hi).mul_pow2(-1).to_f64()
    }

    /// Exact midpoint `(lo + hi) / 2`.
    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() != Sign::Plus && self.hi.sign() != Sign::Minus
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.sign() == Sign::Plus
    }

    pub fn is_negative(&self) -> bool {
        self.hi.sign() == Sign::Minus
    }

    /// Relative width `(hi - lo) / min(|lo|, |hi|)` as a float, infinite when
    /// the interval touches zero.
    pub fn relative_width(&self) -> f64 {
        if self.contains_zero() {
            return f64::INFINITY;
        }
        let m = self.lo.to_f64().abs().min(self.hi.to_f64().abs());
        self.width_f64() / m
    }

    /// `true` when `width · 2^prec <= min(|lo|, |hi|)` (exact comparison).
    pub fn relative_width_at_most(&self, prec: u32) -> bool {
        if self.contains_zero() {
            return self.width().is_zero();
        }
        let a = self.abs();
        a.lo >= self.width().mul_pow2(prec as i64)
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn abs(&self) -> Interval {
        if self.lo.sign() != Sign::Minus {
            self.clone()
        } else if self.hi.sign() != Sign::Plus {
            self.neg()
        } else {
            let m = if self.lo.neg() > self.hi { self.lo.neg() } else { self.hi.clone() };
            Interval { lo: Dyadic::zero(), hi: m }
        }
    }

    pub fn add(&self, other: &Interval, prec: u32) -> Interval {
        Interval {
            lo: self.lo.add(&other.lo).round(prec, Round::Down),
            hi: self.hi.add(&other.hi).round(prec, Round::Up),
        }
    }

    pub fn sub(&self, other: &Interval, prec: u32) -> Interval {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Interval, prec: u32) -> Interval {
        let products = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = products.iter().min().cloned().unwrap_or_else(Dyadic::zero);
        let hi = products.iter().max().cloned().unwrap_or_else(Dyadic::zero);
        Interval { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up) }
    }

    pub fn mul_int(&self, n: i64, prec: u32) -> Interval {
        self.mul(&Interval::from_int(n), prec)
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    pub fn square(&self, prec: u32) -> Interval {
        let a = self.abs();
        Interval { lo: a.lo.mul(&a.lo).round(prec, Round::Down), hi: a.hi.mul(&a.hi).round(prec, Round::Up) }
    }

    pub fn recip(&self, prec: u32) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::PrecisionInsufficient {
                bits: prec,
                reason: "reciprocal of an interval containing zero".into(),
            });
        }
        let one = Dyadic::from_int(1);
        Ok(Interval { lo: one.div(&self.hi, prec, Round::Down), hi: one.div(&self.lo, prec, Round::Up) })
    }

    pub fn div(&self, other: &Interval, prec: u32) -> Result<Interval> {
        Ok(self.mul(&other.recip(prec)?, prec))
    }

    /// Square root; a slightly negative lower endpoint is clamped to zero.
    pub fn sqrt(&self, prec: u32) -> Result<Interval> {
        if self.is_negative() {
            return Err(Error::invalid("square root of a negative interval"));
        }
        let lo = if self.lo.sign() == Sign::Minus { Dyadic::zero() } else { self.lo.sqrt(prec, Round::Down) };
        Ok(Interval { lo, hi: self.hi.sqrt(prec, Round::Up) })
    }

    /// Natural logarithm of a positive interval.
    pub fn ln(&self, prec: u32) -> Result<Interval> {
        if !self.is_positive() {
            return Err(Error::PrecisionInsufficient {
                bits: prec,
                reason: "logarithm of an interval not bounded away from zero".into(),
            });
        }
        let lo = ln_dyadic(&self.lo, prec).lo;
        let hi = ln_dyadic(&self.hi, prec).hi;
        Ok(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    pub fn to_decimal(&self, prec: u32) -> DecimalInterval {
        let digits = decimal_digits(prec);
        DecimalInterval {
            lo: self.lo.to_decimal(digits, Round::Down),
            hi: self.hi.to_decimal(digits, Round::Up),
            precision_bits: prec,
        }
    }

    /// Bounds as a pair of decimal strings (outward rounded).
    pub fn to_decimal_pair(&self, prec: u32) -> [String; 2] {
        let d = self.to_decimal(prec);
        [d.lo, d.hi]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_decimal(20, Round::Down), self.hi.to_decimal(20, Round::Up))
    }
}

fn decimal_digits(prec: u32) -> u32 {
    ((prec as f64) * std::f64::consts::LOG10_2).ceil() as u32 + 2
}

/// Serialized interval: outward-rounded decimal endpoints plus the binary
/// precision they were produced at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecimalInterval {
    pub lo: String,
    pub hi: String,
    pub precision_bits: u32,
}

impl DecimalInterval {
    /// Convert back into an enclosing dyadic interval.
    pub fn to_interval(&self) -> Result<Interval> {
        let prec = self.precision_bits.max(64) + 16;
        let lo = parse_decimal(&self.lo)?;
        let hi = parse_decimal(&self.hi)?;
        Interval::from_endpoints(
            Dyadic::from_rational(&lo, prec, Round::Down),
            Dyadic::from_rational(&hi, prec, Round::Up),
        )
    }
}

/// `2·atanh(p/q)` for `0 <= p/q <= 1/2`, in fixed point with scale `2^-w`.
/// Returns the floor-computed value and a bound on its error in ulps.
fn two_atanh_fixed(p: &BigInt, q: &BigInt, w: u32) -> (BigInt, BigInt) {
    if p.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let p2 = p * p;
    let q2 = q * q;
    let mut term = (p << w as usize).div_floor(q);
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    while !term.is_zero() {
        sum += term.div_floor(&BigInt::from(2 * j + 1));
        term = (&term * &p2).div_floor(&q2);
        j += 1;
    }
    // each truncated term is off by at most 3 ulps, the tail by at most 4
    let err = BigInt::from(3 * (j + 1) + 4);
    (sum << 1usize, err << 1usize)
}

fn ln_dyadic(x: &Dyadic, prec: u32) -> Interval {
    debug_assert!(x.sign() == Sign::Plus);
    if x.to_rational().is_one() {
        return Interval::zero();
    }
    let m = &x.mant;
    let mut k = m.bits() as i64 - 1;
    // reduce to r = m / 2^k in [1/sqrt2, sqrt2)
    let m_sq = m * m;
    if m_sq > (BigInt::one() << (2 * k + 1) as usize) {
        k += 1;
    }
    let n = x.exp + k;
    let n_bits = 64 - (n.unsigned_abs() + 1).leading_zeros();
    let w = prec + 24 + 2 * (32 - prec.leading_zeros()) + n_bits;
    let pow = BigInt::one() << k as usize;
    let num = m - &pow;
    let den = m + &pow;
    let (mut r_val, r_err) = two_atanh_fixed(&num.abs(), &den, w);
    if num.is_negative() {
        // floor of a negated value: shift by one ulp to keep the error bound
        r_val = -r_val - 1;
    }
    let (l2_val, l2_err) = two_atanh_fixed(&BigInt::one(), &BigInt::from(3), w);
    let nb = BigInt::from(n);
    let val = r_val + &l2_val * &nb;
    let err = r_err + 1 + l2_err * nb.abs();
    let lo = Dyadic::new(&val - &err, -(w as i64)).round(prec, Round::Down);
    let hi = Dyadic::new(&val + &err, -(w as i64)).round(prec, Round::Up);
    Interval { lo, hi }
}

/// Enclosure of ln 2.
pub fn ln2(prec: u32) -> Interval {
    ln_dyadic(&Dyadic::from_int(2), prec)
}
