use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use gengreen::cyclotomic::{Cyclo, RootOfUnity};
use gengreen::partitions::{partitions_of, Partition};
use gengreen::qpoly::{Poly, RatQ};

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-5i64..=5, 0..5).prop_map(|c| Poly::from_ints(&c))
}

fn ratq() -> impl Strategy<Value = RatQ> {
    (poly(), poly()).prop_map(|(n, d)| if d.is_zero() { RatQ::from_poly(n) } else { RatQ::new(n, d).unwrap() })
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, rng_seed: prop::test_runner::RngSeed::Fixed(0x5eed), failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in ratq(), b in ratq(), c in ratq()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RatQ::zero());
        prop_assert_eq!(&a * &RatQ::one(), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RatQ::one());
        }
    }

    #[test]
    fn negating_q_is_an_involutive_ring_map(a in ratq(), b in ratq()) {
        prop_assert_eq!(a.substitute_neg_q().substitute_neg_q(), a.clone());
        prop_assert_eq!((&a * &b).substitute_neg_q(), &a.substitute_neg_q() * &b.substitute_neg_q());
        prop_assert_eq!((&a + &b).substitute_neg_q(), &a.substitute_neg_q() + &b.substitute_neg_q());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in ratq(), b in ratq(), x in 2i64..20) {
        let x = int(x);
        if let (Ok(ea), Ok(eb)) = (a.evaluate(&x), b.evaluate(&x)) {
            prop_assert_eq!((&a + &b).evaluate(&x).unwrap(), &ea + &eb);
            prop_assert_eq!((&a * &b).evaluate(&x).unwrap(), &ea * &eb);
            prop_assert_eq!(a.substitute_neg_q().evaluate(&-x.clone()).unwrap(), ea);
        }
    }

    #[test]
    fn wire_format_round_trips(a in ratq()) {
        prop_assert_eq!(a.to_wire().parse::<RatQ>().unwrap(), a.clone());
        prop_assert_eq!(a.to_string().parse::<RatQ>().unwrap(), a);
    }

    #[test]
    fn galois_action_is_multiplicative(order in prop::sample::select(vec![3u32, 4, 5, 6, 8, 12]), e1 in 0i64..24, e2 in 0i64..24, k in 1i64..24, a in ratq()) {
        prop_assume!(num_integer::gcd(k, order as i64) == 1);
        let x = Cyclo::from_root(order, &RootOfUnity::new(e1, order), &a);
        let y = Cyclo::from_root(order, &RootOfUnity::new(e2, order), &RatQ::one());
        prop_assert_eq!(x.mul(&y).galois(k), x.galois(k).mul(&y.galois(k)));
        prop_assert_eq!(y.galois(k), Cyclo::from_root(order, &RootOfUnity::new(e2 * k, order), &RatQ::one()));
    }

    #[test]
    fn transpose_is_an_involution(n in 1usize..9, i in 0usize..30) {
        let parts = partitions_of(n);
        let l: &Partition = &parts[i % parts.len()];
        prop_assert_eq!(l.transpose().transpose(), l.clone());
        prop_assert_eq!(l.transpose().size(), n);
        prop_assert!(Partition::row(n).dominates(l) && l.dominates(&Partition::column(n)));
    }
}
