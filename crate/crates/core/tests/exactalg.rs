use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;

use arbordyn_core::exactalg::intfactor::{factor_partial, is_prime_u64};
use arbordyn_core::exactalg::poly_fp::{fp_factor, fp_irreducible, PolyFp};
use arbordyn_core::exactalg::rational::{parse_rational, rat, ratio};
use arbordyn_core::exactalg::{discriminant, parse_poly, q_factor, reduce_mod_p, resultant, PolyQ, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn poly_q(max_deg: usize) -> impl Strategy<Value = PolyQ> {
    prop::collection::vec(small_rational(), 1..=max_deg + 1).prop_map(PolyQ::new)
}

fn from_roots(roots: &[Rational]) -> PolyQ {
    roots.iter().fold(PolyQ::one(), |acc, r| &acc * &PolyQ::linear_root(r))
}

const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

proptest! {
    #[test]
    fn display_parses_back(f in poly_q(5)) {
        let text = f.display_in("X");
        prop_assert_eq!(parse_poly(&text).unwrap(), f);
    }

    #[test]
    fn rational_text_round_trip(x in small_rational()) {
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn division_identity(a in poly_q(6), b in poly_q(3)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.deg() < b.deg());
    }

    #[test]
    fn second_iterate_is_self_composition(f in poly_q(3)) {
        prop_assume!(f.deg() >= 2);
        prop_assert_eq!(f.iterate(2, 1 << 20).unwrap(), f.compose(&f));
    }

    #[test]
    fn resultant_of_split_polys(rs in prop::collection::vec(small_rational(), 1..4),
                                ss in prop::collection::vec(small_rational(), 1..4)) {
        let mut expected = Rational::one();
        for r in &rs {
            for s in &ss {
                expected *= r - s;
            }
        }
        prop_assert_eq!(resultant(&from_roots(&rs), &from_roots(&ss)), expected);
    }

    #[test]
    fn discriminant_of_split_poly(rs in prop::collection::vec(small_rational(), 2..5)) {
        let mut expected = Rational::one();
        for i in 0..rs.len() {
            for j in i + 1..rs.len() {
                let diff = &rs[i] - &rs[j];
                expected *= &diff * &diff;
            }
        }
        prop_assert_eq!(discriminant(&from_roots(&rs)), expected);
    }

    #[test]
    fn q_factorization_expands(f in poly_q(5)) {
        prop_assume!(f.deg() >= 1);
        prop_assert_eq!(q_factor(&f).unwrap().expand(), f);
    }

    #[test]
    fn reduction_is_a_ring_map(a in poly_q(4), b in poly_q(4), i in 0usize..6) {
        let p = SMALL_PRIMES[i];
        if let (Ok(ra), Ok(rb), Ok(rab)) = (reduce_mod_p(&a, p), reduce_mod_p(&b, p), reduce_mod_p(&(&a * &b), p)) {
            prop_assert_eq!(ra.mul(&rb), rab);
        }
    }

    #[test]
    fn fp_factors_multiply_back(coeffs in prop::collection::vec(-20i64..20, 2..9), i in 0usize..6, seed in any::<u64>()) {
        let p = SMALL_PRIMES[i];
        let g = PolyFp::from_i64(p, &coeffs);
        prop_assume!(g.degree().is_some_and(|d| d >= 1));
        let factors = fp_factor(&g, seed);
        let mut product = PolyFp::one(p);
        for (h, m) in &factors {
            prop_assert!(fp_irreducible(h));
            for _ in 0..*m {
                product = product.mul(h);
            }
        }
        prop_assert_eq!(product, g.monic());
    }

    #[test]
    fn partial_factorization_multiplies_back(n in 2u64..10_000_000) {
        let f = factor_partial(&BigUint::from(n), 1000, Some(10_000));
        let mut product = BigUint::one();
        for (q, e) in &f.primes {
            prop_assert!(is_prime_u64(q.try_into().unwrap()));
            product *= q.pow(*e);
        }
        for c in &f.cofactors {
            product *= c;
        }
        prop_assert_eq!(product, BigUint::from(n));
    }
}

/// Low-degree irreducibility is the absence of roots.
#[test]
fn low_degree_irreducibility_by_roots() {
    for p in [2u64, 3, 5, 7] {
        for deg in 2..=3usize {
            let mut coeffs = vec![0u64; deg + 1];
            coeffs[deg] = 1;
            let count = p.pow(deg as u32);
            for code in 0..count {
                let mut c = code;
                for slot in coeffs.iter_mut().take(deg) {
                    *slot = c % p;
                    c /= p;
                }
                let g = PolyFp::new(p, coeffs.clone());
                let rootless = (0..p).all(|x| g.eval(x) != 0);
                assert_eq!(fp_irreducible(&g), rootless, "{g} mod {p}");
            }
        }
    }
}

#[test]
fn factor_partial_reports_cofactor() {
    let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
    let f = factor_partial(&n, 100, None);
    assert!(!f.is_complete());
    assert_eq!(f.cofactors, vec![n.clone()]);
    let g = factor_partial(&n, 100, Some(100_000));
    assert!(g.is_complete());
    assert_eq!(g.primes.len(), 2);
}

#[test]
fn parse_examples() {
    assert_eq!(parse_poly("1 - X^3").unwrap(), PolyQ::from_ints(&[1, 0, 0, -1]));
    assert_eq!(parse_poly("X^2/2 + 3/4").unwrap(), PolyQ::new(vec![ratio(3, 4), rat(0), ratio(1, 2)]));
    assert!(parse_poly("X^").is_err());
    assert_eq!(
        reduce_mod_p(&PolyQ::new(vec![ratio(1, 2), rat(1)]), 3).unwrap(),
        PolyFp::new(3, vec![2, 1])
    );
    assert!(reduce_mod_p(&PolyQ::new(vec![ratio(1, 3), rat(1)]), 3).is_err());
    assert!(BigInt::zero() < BigInt::one());
}
