mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use lenspec::algnum::{
    multiplicatively_independent, quad_eigenvalue, IndependenceVerdict, Interval, MultiQuadraticElement,
};
use lenspec::etale::{truncate_reciprocal_charpoly, ReciprocalPolynomial};
use lenspec::galmod::GaloisModule;
use lenspec::quatarith::{
    embeds_quadratic_field, enumerate_norm_one, hilbert_symbol_int, power_trace, trace_spectrum, Place,
    QuaternionAlgebra,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn nonzero(range: i64) -> impl Strategy<Value = i64> {
    (-range..=range).prop_filter("nonzero", |x| *x != 0)
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![Just(Place::Real), prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29]).prop_map(Place::Prime)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn interval_ops_enclose_exact_results(a in -10_000i64..10_000, b in 1i64..500, c in -10_000i64..10_000, d in 1i64..500) {
        let (x, y) = (rat(a, b), rat(c, d));
        let (ix, iy) = (Interval::from_rational(&x, 80), Interval::from_rational(&y, 80));
        prop_assert!(ix.add(&iy, 64).contains_rational(&(&x + &y)));
        prop_assert!(ix.sub(&iy, 64).contains_rational(&(&x - &y)));
        prop_assert!(ix.mul(&iy, 64).contains_rational(&(&x * &y)));
        if c != 0 {
            prop_assert!(ix.div(&iy, 64).unwrap().contains_rational(&(&x / &y)));
        }
        let sq = &x * &x;
        prop_assert!(Interval::from_rational(&sq, 80).sqrt(64).unwrap().contains_rational(&num_traits::Signed::abs(&x)));
    }

    #[test]
    fn log_enclosure_is_tight_and_sound(n in 1i64..1_000_000, d in 1i64..1_000) {
        let x = rat(n, d);
        let l = Interval::from_rational(&x, 140).ln(128).unwrap();
        let f = (n as f64 / d as f64).ln();
        prop_assert!(l.lo().to_f64() <= f + 1e-12 && f - 1e-12 <= l.hi().to_f64());
        prop_assert!(l.width_f64() < 1e-30);
    }

    #[test]
    fn hilbert_symmetry_and_standard_identities(a in nonzero(400), b in nonzero(400), v in place()) {
        prop_assert_eq!(hilbert_symbol_int(a, b, v).unwrap(), hilbert_symbol_int(b, a, v).unwrap());
        prop_assert_eq!(hilbert_symbol_int(a, -a, v).unwrap(), 1);
        if a != 1 {
            prop_assert_eq!(hilbert_symbol_int(a, 1 - a, v).unwrap(), 1);
        }
        prop_assert_eq!(hilbert_symbol_int(a, b * b, v).unwrap(), 1);
    }

    #[test]
    fn ramification_is_even_for_rational_parameters(a in nonzero(200), b in 1i64..50, c in nonzero(200), d in 1i64..50) {
        let alg = QuaternionAlgebra::new(rat(a, b), rat(c, d)).unwrap();
        prop_assert_eq!(alg.ramification().len() % 2, 0);
    }

    #[test]
    fn embedding_matches_local_nonsplitting(a in nonzero(40), b in nonzero(40), d in nonzero(300)) {
        let alg = QuaternionAlgebra::from_ints(a, b).unwrap();
        if let Ok(verdict) = embeds_quadratic_field(&alg, &rat(d, 1)) {
            let locally_nonsquare = alg.ramification().iter().all(|&v| match v {
                Place::Real => d < 0,
                Place::Prime(p) => !is_local_square_brute(d, p),
            });
            prop_assert_eq!(verdict, locally_nonsquare);
        }
    }

    #[test]
    fn enumeration_elements_have_norm_one(a in nonzero(12), b in nonzero(12), h in 1u64..7) {
        let alg = QuaternionAlgebra::from_ints(a, b).unwrap();
        let v = enumerate_norm_one(&alg, h).unwrap();
        prop_assert_eq!(&v, &common::naive_norm_one(a, b, h as i64));
    }

    #[test]
    fn spectra_grow_with_height(a in nonzero(8), b in nonzero(8), h in 2u64..8) {
        let alg = QuaternionAlgebra::from_ints(a, b).unwrap();
        let small = trace_spectrum(&alg, h, 64).unwrap();
        let big = trace_spectrum(&alg, h + 3, 64).unwrap();
        for e in &small.entries {
            let f = big.find(&e.t);
            prop_assert!(f.is_some());
            prop_assert!(f.unwrap().height <= e.height);
        }
    }

    #[test]
    fn power_traces_follow_eigenvalue_powers(t in 3i64..500, n in 1u32..12) {
        let tq = rat(t, 1);
        let lam = quad_eigenvalue(&tq).unwrap();
        let p = lam.pow(n as i64).unwrap();
        let tn = power_trace(&tq, n);
        prop_assert_eq!(p.trace(), tn.clone());
        // the radicand t_n² − 4 must fit the 64-bit quadratic field tag
        if tn < rat(4_000_000_000, 1) {
            prop_assert_eq!(quad_eigenvalue(&tn).unwrap(), p);
        }
    }

    #[test]
    fn truncation_inverts_multiplication(half in prop::collection::vec(-20i64..20, 1..5), middle in -20i64..20) {
        let mut coeffs: Vec<BigRational> = half.iter().map(|&c| rat(c, 1)).collect();
        coeffs[0] = rat(1, 1);
        let mirror: Vec<BigRational> = coeffs.iter().rev().cloned().collect();
        coeffs.push(rat(middle, 1));
        coeffs.extend(mirror);
        let r = ReciprocalPolynomial::new(coeffs).unwrap();
        let p = r.times_x_minus_one();
        prop_assert_eq!(truncate_reciprocal_charpoly(&p).unwrap(), r);
    }

    #[test]
    fn fixed_rank_is_conjugation_invariant(ops in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 1..6), which in 0usize..3) {
        let gens: Vec<Vec<Vec<Vec<i64>>>> = vec![
            vec![vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]],
            vec![vec![vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]],
            vec![vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]],
        ];
        let m = GaloisModule::new(3, gens[which].clone(), None).unwrap();
        let mut u = identity(3);
        let mut u_inv = identity(3);
        for (i, j, c) in ops {
            if i == j {
                continue;
            }
            // E = I + c·e_ij, E⁻¹ = I − c·e_ij
            let mut e = identity(3);
            e[i][j] = c;
            let mut ei = identity(3);
            ei[i][j] = -c;
            u = mul(&e, &u);
            u_inv = mul(&u_inv, &ei);
        }
        prop_assert_eq!(mul(&u, &u_inv), identity(3));
        let conj: Vec<Vec<Vec<i64>>> = m.generators().iter().map(|g| mul(&mul(&u, g), &u_inv)).collect();
        let c = GaloisModule::new(3, conj, None).unwrap();
        prop_assert_eq!(c.fixed_sublattice_rank(), m.fixed_sublattice_rank());
        prop_assert_eq!(c.order(), m.order());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn planted_relations_are_found(t in 3i64..80, s in 3i64..80, e1 in 1i64..=6, e2 in -6i64..=-1) {
        let a = quad_eigenvalue(&rat(t, 1)).unwrap();
        let b = quad_eigenvalue(&rat(s, 1)).unwrap();
        let elems: Vec<MultiQuadraticElement> =
            vec![a.to_multi(), b.to_multi(), a.pow(e1).unwrap().to_multi(), b.pow(e2).unwrap().to_multi()];
        match multiplicatively_independent(&elems, 10, 256).unwrap() {
            IndependenceVerdict::Dependent { witness } => {
                prop_assert!(lenspec::algnum::certify_relation(&elems, &witness.exponents).unwrap());
            }
            other => prop_assert!(false, "missed relation: {:?}", other),
        }
    }
}

fn is_local_square_brute(d: i64, p: u64) -> bool {
    // squarefree part, then a unit test modulo p (or 8 when p = 2)
    let mut s = d;
    for q in 2..=d.unsigned_abs() as i64 {
        while q * q <= s.abs() && s % (q * q) == 0 {
            s /= q * q;
        }
    }
    let p = p as i64;
    if s % p == 0 {
        return false;
    }
    if p == 2 {
        return s.rem_euclid(8) == 1;
    }
    (1..p).any(|x| (x * x - s).rem_euclid(p) == 0)
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b[0].len();
    a.iter().map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect()).collect()
}
