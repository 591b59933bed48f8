//! Seeded checks of the structural invariants each module promises.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lenspec::algnum::{quad_eigenvalue, DecimalInterval, Interval, MultiQuadraticElement};
use lenspec::etale::{
    embeds_in_csa_global, norm_one_charpoly, same_maximal_etale, truncate_reciprocal_charpoly, CSAProfile,
    EtaleProfile,
};
use lenspec::galmod::{independence_check, FamilyDecomposition};
use lenspec::quatarith::{
    embeds_quadratic_field, hilbert_symbol_int, trace_spectrum, Place, QuaternionAlgebra,
};
use lenspec::rootsys::{length_lambda, torus_root_values, weyl_order, Family, RootSystem, TorusElement};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn nonzero(rng: &mut ChaCha8Rng, r: i64) -> i64 {
    loop {
        let x = rng.gen_range(-r..=r);
        if x != 0 {
            return x;
        }
    }
}

#[test]
fn ramification_sets_have_even_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let (a, b) = (nonzero(&mut rng, 500), nonzero(&mut rng, 500));
        let alg = QuaternionAlgebra::from_ints(a, b).unwrap();
        assert_eq!(alg.ramification().len() % 2, 0, "({a}, {b})");
    }
}

#[test]
fn hilbert_symbol_is_bimultiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let places = [Place::Real, Place::Prime(2), Place::Prime(3), Place::Prime(5), Place::Prime(7), Place::Prime(13)];
    for _ in 0..2000 {
        let (a, b1, b2) = (nonzero(&mut rng, 300), nonzero(&mut rng, 300), nonzero(&mut rng, 300));
        let v = places[rng.gen_range(0..places.len())];
        let lhs = hilbert_symbol_int(a, b1 * b2, v).unwrap();
        let rhs = hilbert_symbol_int(a, b1, v).unwrap() * hilbert_symbol_int(a, b2, v).unwrap();
        assert_eq!(lhs, rhs, "({a}, {b1}·{b2}) at {v}");
    }
}

#[test]
fn embedding_is_monotone_in_the_ramification_set() {
    let panel = [(-1, -1), (-1, 3), (3, 35), (2, 5), (-2, -3), (1, 1), (-1, 7), (5, 7), (-3, 10), (6, 35)];
    let algs: Vec<QuaternionAlgebra> = panel.iter().map(|&(a, b)| QuaternionAlgebra::from_ints(a, b).unwrap()).collect();
    let is_square = |d: i64| d >= 0 && (0..=d).any(|r| r * r == d);
    let ds: Vec<i64> = (-60..=60).filter(|&d| d != 0 && !is_square(d)).collect();
    let mut comparable = 0;
    for small in &algs {
        for big in &algs {
            if !small.ramification().iter().all(|v| big.ramification().contains(v)) {
                continue;
            }
            comparable += 1;
            for &d in &ds {
                if embeds_quadratic_field(big, &q(d)).unwrap() {
                    assert!(embeds_quadratic_field(small, &q(d)).unwrap(), "d = {d}: {big} embeds but {small} does not");
                }
            }
        }
    }
    assert!(comparable > algs.len());
}

#[test]
fn spectrum_entries_are_consistent() {
    for (a, b) in [(-1, 3), (3, 35), (2, 5), (1, 1)] {
        let alg = QuaternionAlgebra::from_ints(a, b).unwrap();
        let prec = 128;
        let spec = trace_spectrum(&alg, 15, prec).unwrap();
        for e in &spec.entries {
            assert_eq!(e.lambda.trace(), e.t);
            assert!(e.lambda.norm().is_one());
            let len = DecimalInterval { lo: e.length_interval[0].clone(), hi: e.length_interval[1].clone(), precision_bits: prec }
                .to_interval()
                .unwrap();
            let log = e.lambda.enclose(prec + 16).ln(prec).unwrap();
            let eight_log_sq = log.square(prec).mul(&Interval::from_int(8), prec);
            assert!(len.square(prec).overlaps(&eight_log_sq), "t = {}", e.t);
            assert!(len.width_f64() < 1e-30);
        }
    }
}

#[test]
fn identity_element_has_zero_length_and_inversion_is_harmless() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (family, rank) in [(Family::A, 3), (Family::B, 3), (Family::C, 4), (Family::D, 4), (Family::G, 2)] {
        let sys = RootSystem::new(family, rank).unwrap();
        let dim = sys.ambient_dim();
        let ones = TorusElement::Exact(vec![MultiQuadraticElement::one(); dim]);
        let vals = torus_root_values(&sys, &ones, 128).unwrap();
        assert!(length_lambda(&vals, 128).unwrap().value.contains_rational(&q(0)));

        // the last coordinate balances the product for the A and G realizations
        let mut lams: Vec<MultiQuadraticElement> = (0..dim)
            .map(|_| quad_eigenvalue(&q(rng.gen_range(3..40))).unwrap().to_multi())
            .collect();
        if matches!(family, Family::A | Family::G) {
            let p = lams[..dim - 1].iter().try_fold(MultiQuadraticElement::one(), |acc, x| acc.mul(x)).unwrap();
            lams[dim - 1] = p.inv().unwrap();
        }
        let inv: Vec<MultiQuadraticElement> = lams.iter().map(|x| x.inv().unwrap()).collect();
        let l = length_lambda(&torus_root_values(&sys, &TorusElement::Exact(lams), 192).unwrap(), 192).unwrap().value;
        let li = length_lambda(&torus_root_values(&sys, &TorusElement::Exact(inv), 192).unwrap(), 192).unwrap().value;
        assert!(l.overlaps(&li) && l.width_f64() < 1e-40, "{family}{rank}");
    }
}

#[test]
fn b_and_c_weyl_orders_agree() {
    let mut fact: u128 = 1;
    for n in 1..=20u32 {
        fact *= n as u128;
        let expected = (1u128 << n) * fact;
        if n >= 2 {
            assert_eq!(weyl_order(Family::B, n).unwrap(), expected);
            assert_eq!(weyl_order(Family::C, n).unwrap(), expected);
        }
    }
}

#[test]
fn single_torus_is_independent() {
    for n in [1u64, 2, 6, 48] {
        let d = FamilyDecomposition { big_group_order: n, quotient_orders: vec![n], compositum_order: n };
        assert!(independence_check(&d).unwrap());
    }
}

fn random_csa(rng: &mut ChaCha8Rng, places: &[&str]) -> CSAProfile {
    let degree = [2u32, 4, 6][rng.gen_range(0..3)];
    let divisors: Vec<u32> = (1..=degree).filter(|m| degree.is_multiple_of(*m)).collect();
    let local_index = places.iter().map(|p| (p.to_string(), divisors[rng.gen_range(0..divisors.len())])).collect();
    CSAProfile { degree, local_index }
}

fn random_partition(rng: &mut ChaCha8Rng, n: u32) -> Vec<u32> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let k = rng.gen_range(1..=left);
        parts.push(k);
        left -= k;
    }
    parts
}

fn random_etale(rng: &mut ChaCha8Rng, degree: u32, places: &[&str]) -> EtaleProfile {
    let factor_degrees = random_partition(rng, degree);
    let local_degrees = places
        .iter()
        .map(|p| (p.to_string(), factor_degrees.iter().map(|&d| random_partition(rng, d)).collect()))
        .collect::<BTreeMap<_, _>>();
    EtaleProfile { factor_degrees, local_degrees }
}

#[test]
fn global_embedding_is_monotone_under_shrinking_indices() {
    let places = ["2", "3", "5", "real"];
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut trues = 0;
    for _ in 0..3000 {
        let big = random_csa(&mut rng, &places);
        let small = CSAProfile {
            degree: big.degree,
            local_index: big
                .local_index
                .iter()
                .map(|(p, &m)| {
                    let divs: Vec<u32> = (1..=m).filter(|d| m % d == 0).collect();
                    (p.clone(), divs[rng.gen_range(0..divs.len())])
                })
                .collect(),
        };
        let e = random_etale(&mut rng, big.degree, &places);
        if embeds_in_csa_global(&e, &big).unwrap() {
            trues += 1;
            assert!(embeds_in_csa_global(&e, &small).unwrap(), "{e:?} into {small:?}");
        }
    }
    assert!(trues > 100);
}

#[test]
fn same_maximal_etale_gives_identical_verdicts() {
    let places = ["2", "3", "7", "real"];
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut same = 0;
    for _ in 0..400 {
        let a = random_csa(&mut rng, &places);
        let mut b = random_csa(&mut rng, &places);
        b.degree = a.degree;
        if rng.gen_bool(0.5) {
            b = a.clone();
        }
        let Ok(true) = same_maximal_etale(&a, &b) else { continue };
        same += 1;
        for _ in 0..30 {
            let e = random_etale(&mut rng, a.degree, &places);
            assert_eq!(embeds_in_csa_global(&e, &a).unwrap(), embeds_in_csa_global(&e, &b).unwrap());
        }
    }
    assert!(same > 50);
}

#[test]
fn truncated_norm_one_polynomial_has_the_eigenvalue_as_root() {
    for t in [3i64, 4, 7, 14, 52, 99] {
        let tq = q(t);
        let p = norm_one_charpoly(&tq);
        assert_eq!(p.len(), 4);
        let r = truncate_reciprocal_charpoly(&p).unwrap();
        assert_eq!(r.times_x_minus_one(), p);
        let lam = quad_eigenvalue(&tq).unwrap();
        for x in [lam.to_multi(), lam.inv().unwrap().to_multi()] {
            assert!(r.eval(&x).unwrap().is_zero(), "t = {t}");
        }
    }
}
