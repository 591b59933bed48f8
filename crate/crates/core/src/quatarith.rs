//! Quaternion algebras `(a, b)_ℚ`: Hilbert symbols, ramification, recovery
//! of an algebra from its ramification set, embeddings of quadratic fields,
//! enumeration of norm-one elements of the standard order and the trace
//! spectra built from them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algnum::{log_abs, quad_eigenvalue, Interval, QuadraticElement};
use crate::arith::{factor, is_prime, is_rational_square, isqrt_u128, legendre, squarefree_part};
use crate::error::{Error, Result};
use crate::etale::{CSAProfile, EtaleProfile};
use crate::ser::{format_rational, parse_rational, rational_string};

/// Upper bound on `max(|a|, |b|)` tried by [`algebra_from_ramset`].
pub const DEFAULT_SEARCH_BOUND: u64 = 500;

/// Largest `|a|`, `|b|` accepted by [`enumerate_norm_one`].
const MAX_ENUM_COEFF: i128 = 1 << 31;
/// Largest height accepted by [`enumerate_norm_one`].
pub const MAX_ENUM_HEIGHT: u64 = 1 << 16;

/// A place of ℚ. Finite places sort before the real one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Real,
}

impl Place {
    pub fn prime(p: u64) -> Result<Place> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(Place::Prime(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Real => f.write_str("real"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("real") || s.eq_ignore_ascii_case("inf") {
            return Ok(Place::Real);
        }
        let p: u64 = s.parse().map_err(|_| Error::invalid(format!("not a place: {s:?}")))?;
        Place::prime(p)
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Place, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parse a comma-separated list such as `"2,3,real"`, sorted and deduplicated.
pub fn parse_places(s: &str) -> Result<Vec<Place>> {
    let mut v = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Place>>>()?;
    v.sort();
    v.dedup();
    Ok(v)
}

/// The squarefree integer representing the square class of a nonzero rational.
pub fn square_class(q: &BigRational) -> Result<i128> {
    if q.is_zero() {
        return Err(Error::invalid("zero has no square class"));
    }
    let prod: BigInt = q.numer() * q.denom();
    let n = prod
        .to_i128()
        .ok_or_else(|| Error::Overflow(format!("square class of {q} exceeds 128 bits")))?;
    Ok(squarefree_part(n))
}

fn split_p(n: i128, p: i128) -> (u32, i128) {
    if n % p == 0 {
        (1, n / p)
    } else {
        (0, n)
    }
}

/// `(x − 1)/2 mod 2` for odd `x`.
fn eps(x: i128) -> u32 {
    (x.rem_euclid(4) == 3) as u32
}

/// `(x² − 1)/8 mod 2` for odd `x`.
fn omega(x: i128) -> u32 {
    matches!(x.rem_euclid(8), 3 | 5) as u32
}

/// Hilbert symbol of squarefree integers.
fn hilbert_squarefree(a: i128, b: i128, place: Place) -> i32 {
    match place {
        Place::Real => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (al, u) = split_p(a, 2);
            let (be, v) = split_p(b, 2);
            let e = eps(u) * eps(v) + al * omega(v) + be * omega(u);
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let p = p as i128;
            let (al, u) = split_p(a, p);
            let (be, v) = split_p(b, p);
            let mut s = if al * be * eps(p) % 2 == 1 { -1 } else { 1 };
            if be == 1 {
                s *= legendre(u, p);
            }
            if al == 1 {
                s *= legendre(v, p);
            }
            s
        }
    }
}

/// The Hilbert symbol `(a, b)_v ∈ {±1}` of nonzero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i32> {
    if let Place::Prime(p) = place {
        Place::prime(p)?;
    }
    Ok(hilbert_squarefree(square_class(a)?, square_class(b)?, place))
}

/// Integer convenience wrapper around [`hilbert_symbol`].
pub fn hilbert_symbol_int(a: i64, b: i64, place: Place) -> Result<i32> {
    hilbert_symbol(&BigRational::from_integer(a.into()), &BigRational::from_integer(b.into()), place)
}

fn ramification_of_classes(a: i128, b: i128) -> Vec<Place> {
    let mut candidates = vec![Place::Prime(2)];
    for n in [a, b] {
        for (p, _) in factor(n.unsigned_abs()) {
            if p != 2 {
                candidates.push(Place::Prime(p as u64));
            }
        }
    }
    candidates.push(Place::Real);
    candidates.sort();
    candidates.dedup();
    candidates.retain(|&v| hilbert_squarefree(a, b, v) == -1);
    candidates
}

/// Places where `(a, b)` ramifies, sorted with the real place last.
///
/// Only the real place and primes dividing `2ab` (after passing to
/// squarefree representatives of `a` and `b`) can ramify.
pub fn ramification_set(a: &BigRational, b: &BigRational) -> Result<Vec<Place>> {
    let ram = ramification_of_classes(square_class(a)?, square_class(b)?);
    if !ram.len().is_multiple_of(2) {
        return Err(Error::Inconclusive(format!("odd ramification set for ({a}, {b}); parity check failed")));
    }
    Ok(ram)
}

/// The quaternion algebra with `i² = a`, `j² = b`, `ij = −ji` over ℚ.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawAlgebra", into = "RawAlgebra")]
pub struct QuaternionAlgebra {
    a: BigRational,
    b: BigRational,
    ram: OnceLock<Vec<Place>>,
}

#[derive(Serialize, Deserialize)]
struct RawAlgebra {
    #[serde(with = "rational_string")]
    a: BigRational,
    #[serde(with = "rational_string")]
    b: BigRational,
}

impl TryFrom<RawAlgebra> for QuaternionAlgebra {
    type Error = Error;

    fn try_from(r: RawAlgebra) -> Result<Self> {
        QuaternionAlgebra::new(r.a, r.b)
    }
}

impl From<QuaternionAlgebra> for RawAlgebra {
    fn from(q: QuaternionAlgebra) -> Self {
        RawAlgebra { a: q.a, b: q.b }
    }
}

impl PartialEq for QuaternionAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl Eq for QuaternionAlgebra {}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.a), format_rational(&self.b))
    }
}

impl QuaternionAlgebra {
    pub fn new(a: BigRational, b: BigRational) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::invalid("quaternion parameters must be nonzero"));
        }
        Ok(QuaternionAlgebra { a, b, ram: OnceLock::new() })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    /// Parse `"a,b"` with rational entries.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::invalid(format!("expected \"a,b\", got {s:?}")))?;
        Self::new(parse_rational(a)?, parse_rational(b)?)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    /// Ramification set, computed once.
    pub fn ramification(&self) -> &[Place] {
        self.ram.get_or_init(|| {
            ramification_set(&self.a, &self.b).expect("nonzero parameters have an even ramification set")
        })
    }

    pub fn is_split(&self) -> bool {
        self.ramification().is_empty()
    }

    pub fn is_definite(&self) -> bool {
        self.ramification().contains(&Place::Real)
    }

    /// Reduced norm of `x0 + x1 i + x2 j + x3 k`.
    pub fn reduced_norm(&self, x: &[BigRational; 4]) -> BigRational {
        let ab = &self.a * &self.b;
        &x[0] * &x[0] - &self.a * &x[1] * &x[1] - &self.b * &x[2] * &x[2] + ab * &x[3] * &x[3]
    }

    fn integer_params(&self) -> Result<(i128, i128)> {
        let conv = |q: &BigRational| -> Result<i128> {
            if !q.is_integer() {
                return Err(Error::unsupported(format!("enumeration needs integer parameters, got {q}")));
            }
            q.numer()
                .to_i128()
                .filter(|v| v.abs() < MAX_ENUM_COEFF)
                .ok_or_else(|| Error::unsupported(format!("parameter {q} is too large to enumerate")))
        };
        Ok((conv(&self.a)?, conv(&self.b)?))
    }
}

/// `−1, 1, −2, 2, …, −h, h`.
fn signed_sequence(h: i64) -> impl Iterator<Item = i64> {
    (1..=h).flat_map(|k| [-k, k])
}

/// The first `(a, b)` in a fixed height-ordered search whose ramification
/// set is `places`.
///
/// Candidates are visited by increasing `max(|a|, |b|)`; within one height
/// both coordinates run through `−1, 1, −2, 2, …`.
pub fn algebra_from_ramset(places: &[Place], bound: u64) -> Result<QuaternionAlgebra> {
    let mut target = places.to_vec();
    for p in &target {
        if let Place::Prime(q) = p {
            Place::prime(*q)?;
        }
    }
    target.sort();
    target.dedup();
    if !target.len().is_multiple_of(2) {
        return Err(Error::invalid(format!("a ramification set must have even size, got {}", target.len())));
    }
    let needed: Vec<i128> = target
        .iter()
        .filter_map(|p| match p {
            Place::Prime(q) if *q != 2 => Some(*q as i128),
            _ => None,
        })
        .collect();
    let needs_real = target.contains(&Place::Real);
    let bound = i64::try_from(bound).map_err(|_| Error::invalid("search bound too large"))?;
    for h in 1..=bound {
        for a in signed_sequence(h) {
            for b in signed_sequence(h) {
                if a.abs().max(b.abs()) != h || (needs_real && (a > 0 || b > 0)) {
                    continue;
                }
                let (sa, sb) = (squarefree_part(a as i128), squarefree_part(b as i128));
                if needed.iter().any(|p| sa % p != 0 && sb % p != 0) {
                    continue;
                }
                if ramification_of_classes(sa, sb) == target {
                    return QuaternionAlgebra::from_ints(a, b);
                }
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no (a, b) with max(|a|, |b|) <= {bound} has ramification set {{{}}}",
        target.iter().map(Place::to_string).collect::<Vec<_>>().join(",")
    )))
}

/// Whether the squarefree integer `s` is a square in the completion at `place`.
pub fn is_local_square(s: i128, place: Place) -> bool {
    match place {
        Place::Real => s > 0,
        Place::Prime(2) => s % 2 != 0 && s.rem_euclid(8) == 1,
        Place::Prime(p) => {
            let p = p as i128;
            s % p != 0 && legendre(s, p) == 1
        }
    }
}

/// Whether `ℚ(√d)` embeds in `D`: `d` must fail to be a local square at
/// every ramified place of `D`.
pub fn embeds_quadratic_field(d_alg: &QuaternionAlgebra, d: &BigRational) -> Result<bool> {
    if d.is_zero() || is_rational_square(d.numer(), d.denom()) {
        return Err(Error::invalid(format!("ℚ(√{d}) is not a quadratic field")));
    }
    let s = square_class(d)?;
    Ok(d_alg.ramification().iter().all(|&v| !is_local_square(s, v)))
}

/// Whether the étale algebra `ℚ[x]/(x² − d)` embeds in `D`. For a square
/// `d` that algebra is `ℚ × ℚ`, which embeds only in a split algebra.
pub fn embeds_quadratic_etale(d_alg: &QuaternionAlgebra, d: &BigRational) -> Result<bool> {
    if d.is_zero() {
        return Err(Error::invalid("x² is not separable"));
    }
    if is_rational_square(d.numer(), d.denom()) {
        return Ok(d_alg.is_split());
    }
    embeds_quadratic_field(d_alg, d)
}

/// Coordinates `(x0, x1, x2, x3)` of a norm-one element of `ℤ⟨1, i, j, k⟩`.
pub type NormOneElement = [i64; 4];

fn norm_one_slab(a: i128, b: i128, h: i64, x1: i64) -> Vec<NormOneElement> {
    let h2 = (h as i128) * (h as i128);
    let ab = a * b;
    let mut out = Vec::new();
    let base1 = 1 + a * (x1 as i128) * (x1 as i128);
    for x2 in -h..=h {
        let base2 = base1 + b * (x2 as i128) * (x2 as i128);
        for x3 in -h..=h {
            let rhs = base2 - ab * (x3 as i128) * (x3 as i128);
            if rhs < 0 || rhs > h2 {
                continue;
            }
            let s = isqrt_u128(rhs as u128);
            if s * s == rhs as u128 {
                let s = s as i64;
                out.push([s, x1, x2, x3]);
                if s > 0 {
                    out.push([-s, x1, x2, x3]);
                }
            }
        }
    }
    out
}

/// All `x` with integer coordinates of absolute value at most `height` and
/// reduced norm one, sorted lexicographically. Needs integer `a`, `b`.
pub fn enumerate_norm_one(d_alg: &QuaternionAlgebra, height: u64) -> Result<Vec<NormOneElement>> {
    let (a, b) = d_alg.integer_params()?;
    if height == 0 || height > MAX_ENUM_HEIGHT {
        return Err(Error::invalid(format!("height must be in 1..={MAX_ENUM_HEIGHT}")));
    }
    let h = height as i64;
    #[cfg(feature = "parallel")]
    let mut out: Vec<NormOneElement> = {
        use rayon::prelude::*;
        (-h..=h).into_par_iter().flat_map_iter(|x1| norm_one_slab(a, b, h, x1)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut out: Vec<NormOneElement> = (-h..=h).flat_map(|x1| norm_one_slab(a, b, h, x1)).collect();
    out.sort_unstable();
    Ok(out)
}

/// One hyperbolic trace of a spectrum with its eigenvalue and length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    #[serde(with = "rational_string")]
    pub t: BigRational,
    /// Squarefree part of `t² − 4`.
    pub disc: i64,
    pub lambda: QuadraticElement,
    /// Enclosure of `2√2 · log λ`, outward rounded.
    pub length_interval: [String; 2],
    /// Smallest height at which an element with this trace was found.
    pub height: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSpectrum {
    pub algebra: QuaternionAlgebra,
    pub height: u64,
    pub precision_bits: u32,
    pub entries: Vec<SpectrumEntry>,
}

impl TraceSpectrum {
    pub fn traces(&self) -> impl Iterator<Item = &BigRational> {
        self.entries.iter().map(|e| &e.t)
    }

    pub fn find(&self, t: &BigRational) -> Option<&SpectrumEntry> {
        self.entries.binary_search_by(|e| e.t.cmp(t)).ok().map(|i| &self.entries[i])
    }

    pub fn length_enclosure(&self, entry: &SpectrumEntry) -> Result<Interval> {
        crate::algnum::DecimalInterval {
            lo: entry.length_interval[0].clone(),
            hi: entry.length_interval[1].clone(),
            precision_bits: self.precision_bits,
        }
        .to_interval()
    }
}

/// Enclosure of `2√2 · log λ`.
pub fn trace_length(lambda: &QuadraticElement, prec: u32) -> Result<Interval> {
    let l = log_abs(&lambda.to_multi(), prec)?;
    let root8 = Interval::from_int(8).sqrt(prec + 10)?;
    Ok(root8.mul(&l, prec + 10))
}

/// Distinct hyperbolic traces `|t| > 2` of norm-one elements of height at
/// most `height`, in increasing order.
pub fn trace_spectrum(d_alg: &QuaternionAlgebra, height: u64, prec: u32) -> Result<TraceSpectrum> {
    let elements = enumerate_norm_one(d_alg, height)?;
    let mut best: BTreeMap<i64, u64> = BTreeMap::new();
    for x in &elements {
        let t = 2 * x[0].abs();
        if t <= 2 {
            continue;
        }
        let ht = x.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
        best.entry(t).and_modify(|h| *h = (*h).min(ht)).or_insert(ht);
    }
    let entries = best
        .into_iter()
        .map(|(t, ht)| {
            let tq = BigRational::from_integer(t.into());
            let lambda = quad_eigenvalue(&tq)?;
            let len = trace_length(&lambda, prec)?;
            let disc = squarefree_part((t as i128) * (t as i128) - 4) as i64;
            Ok(SpectrumEntry { t: tq, disc, lambda, length_interval: len.to_decimal_pair(prec), height: ht })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TraceSpectrum { algebra: d_alg.clone(), height, precision_bits: prec, entries })
}

/// `V_n(t)`: the trace of `γ^n` for `γ` of trace `t` and norm one.
pub fn power_trace(t: &BigRational, n: u32) -> BigRational {
    let two = BigRational::from_integer(2.into());
    if n == 0 {
        return two;
    }
    let (mut prev, mut cur) = (two, t.clone());
    for _ in 1..n {
        let next = t * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Trace of the adjoint image of a norm-one element of trace `t`.
pub fn adjoint_trace(t: &BigRational) -> BigRational {
    t * t - BigRational::from_integer(1.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerWitness {
    /// The exponent `n` with `λ' = λ^n`.
    pub power: u32,
    #[serde(with = "rational_string")]
    pub target_t: BigRational,
    pub target_height: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionEntry {
    #[serde(with = "rational_string")]
    pub t: BigRational,
    pub disc: i64,
    /// Whether `ℚ[x]/(x² − t x + 1)` embeds in the target algebra.
    pub field_verdict: bool,
    pub witness: Option<PowerWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub source: QuaternionAlgebra,
    pub target: QuaternionAlgebra,
    pub source_height: u64,
    pub target_height: Option<u64>,
    pub power_bound: u32,
    /// No hyperbolic trace in the source spectrum.
    pub vacuous: bool,
    pub all_field_verdicts: bool,
    pub false_count: usize,
    pub witness_count: usize,
    pub entries: Vec<InclusionEntry>,
}

/// Compare the source spectrum against a target algebra: per source trace,
/// decide whether the eigenvalue field embeds in the target and, when a
/// target spectrum is given, look for a power of the eigenvalue among its
/// traces. Every witness is checked exactly.
pub fn spectrum_commensurable_inclusion(
    source: &TraceSpectrum,
    target_alg: &QuaternionAlgebra,
    target_spec: Option<&TraceSpectrum>,
    power_bound: u32,
) -> Result<InclusionReport> {
    if power_bound == 0 {
        return Err(Error::invalid("power bound must be positive"));
    }
    if let Some(ts) = target_spec {
        if &ts.algebra != target_alg {
            return Err(Error::invalid("target spectrum belongs to a different algebra"));
        }
    }
    let four = BigRational::from_integer(4.into());
    let mut entries = Vec::with_capacity(source.entries.len());
    for e in &source.entries {
        let field_verdict = embeds_quadratic_etale(target_alg, &(&e.t * &e.t - &four))?;
        let mut witness = None;
        if let Some(ts) = target_spec {
            for n in 1..=power_bound {
                let tn = power_trace(&e.t.abs(), n);
                let Some(hit) = ts.find(&tn) else { continue };
                if hit.lambda != e.lambda.pow(n as i64)? {
                    return Err(Error::Inconclusive(format!("trace {tn} matched V_{n}({}) but eigenvalues differ", e.t)));
                }
                witness = Some(PowerWitness { power: n, target_t: tn, target_height: hit.height });
                break;
            }
        }
        entries.push(InclusionEntry { t: e.t.clone(), disc: e.disc, field_verdict, witness });
    }
    let false_count = entries.iter().filter(|e| !e.field_verdict).count();
    Ok(InclusionReport {
        source: source.algebra.clone(),
        target: target_alg.clone(),
        source_height: source.height,
        target_height: target_spec.map(|t| t.height),
        power_bound,
        vacuous: entries.is_empty(),
        all_field_verdicts: false_count == 0,
        false_count,
        witness_count: entries.iter().filter(|e| e.witness.is_some()).count(),
        entries,
    })
}

/// Local index profile of a quaternion algebra: index two at each ramified place.
pub fn csa_profile(d_alg: &QuaternionAlgebra) -> CSAProfile {
    CSAProfile { degree: 2, local_index: d_alg.ramification().iter().map(|p| (p.to_string(), 2)).collect() }
}

/// Étale profile of `ℚ[x]/(x² − d)` at the given places.
pub fn quadratic_etale_profile(d: &BigRational, places: &[Place]) -> Result<EtaleProfile> {
    let s = square_class(d)?;
    if s == 1 {
        return Ok(EtaleProfile {
            factor_degrees: vec![1, 1],
            local_degrees: places.iter().map(|p| (p.to_string(), vec![vec![1], vec![1]])).collect(),
        });
    }
    Ok(EtaleProfile {
        factor_degrees: vec![2],
        local_degrees: places
            .iter()
            .map(|&p| (p.to_string(), vec![if is_local_square(s, p) { vec![1, 1] } else { vec![2] }]))
            .collect(),
    })
}
