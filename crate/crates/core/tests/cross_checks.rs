mod common;

use common::ring;
use fsplit_core::oracle::{oracle_dual_splitting_length, oracle_length_mod_bracket};
use fsplit_core::splitting::dual_splitting_length;
use fsplit_core::{
    buchberger, bracket_power_of_maximal, f_signature_sequence, ideal_sum, length, normalized_splitting_number,
    BigUint, Config, Error, Field, IdealPresentation, Monomial, Polynomial, PrimeField, Ring,
};
use proptest::prelude::*;

fn build(r: &Ring<PrimeField>, terms: &[(i64, Vec<u16>)]) -> Polynomial<PrimeField> {
    r.from_terms(
        terms
            .iter()
            .map(|(c, e)| (Monomial::new(e), r.field().from_int(*c)))
            .collect(),
    )
}

fn term(n: usize, max: u16) -> impl Strategy<Value = (i64, Vec<u16>)> {
    (-3i64..4, proptest::collection::vec(0..=max, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn length_matches_oracle(
        p in prop::sample::select(vec![2u64, 3]),
        e in 1u32..=2,
        gens in proptest::collection::vec(proptest::collection::vec(term(2, 4), 1..4), 0..3),
    ) {
        let r = ring(p, 2);
        let gens: Vec<_> = gens.iter().map(|g| build(&r, g)).collect();
        let sum = ideal_sum(&r, &IdealPresentation::new(gens.clone()), &bracket_power_of_maximal(&r, e).unwrap()).unwrap();
        let lam = length(&r, &buchberger(&r, &sum).unwrap()).unwrap();
        let oracle = oracle_length_mod_bracket(&r, &gens, e, u128::MAX).unwrap();
        prop_assert_eq!(lam, BigUint::from(oracle));
    }

    #[test]
    fn dual_length_matches_oracle(
        p in prop::sample::select(vec![2u64, 3]),
        deg in 1u16..=3,
        count in 1usize..3,
        seed in proptest::collection::vec(proptest::collection::vec((1i64..4, proptest::collection::vec(0u16..=3, 2)), 1..4), 2),
    ) {
        let r = ring(p, 2);
        let gens: Vec<_> = seed[..count]
            .iter()
            .map(|ts| {
                let kept: Vec<_> = ts.iter().filter(|(_, e)| e.iter().sum::<u16>() == deg).cloned().collect();
                build(&r, &kept)
            })
            .filter(|g| !g.is_zero())
            .collect();
        let i = IdealPresentation::new(gens);
        let dual = dual_splitting_length(&r, &i, 1).unwrap();
        let oracle = oracle_dual_splitting_length(&r, &i, 1, u128::MAX).unwrap();
        prop_assert_eq!(dual, BigUint::from(oracle));
    }

    #[test]
    fn monomial_ideals_lie_in_unit_interval(
        p in prop::sample::select(vec![2u64, 3, 5]),
        e in 1u32..=2,
        gens in proptest::collection::vec(proptest::collection::vec(1u16..=3, 2), 1..3),
    ) {
        let r = ring(p, 2);
        let i = IdealPresentation::new(gens.iter().map(|m| r.monomial(Monomial::new(m))).collect());
        let rep = normalized_splitting_number(&r, &i, e, &Config::default()).unwrap();
        prop_assert!(rep.s_e >= num_traits::Zero::zero());
        prop_assert!(rep.s_e <= num_traits::One::one());
    }
}

#[test]
fn signature_sequence_stops_at_budget() {
    let r = ring(5, 2);
    let node = IdealPresentation::new(vec![r.monomial(Monomial::new(&[1, 1]))]);
    match f_signature_sequence(&r, &node, 5, &Config::with_budget(1000)) {
        Err(Error::CostGuardExceeded { partial: Some(est), budget, .. }) => {
            assert_eq!(budget, 1000);
            let es: Vec<u32> = est.reports.iter().map(|r| r.e).collect();
            assert_eq!(es, vec![0, 1, 2]);
        }
        other => panic!("expected a guard failure, got {other:?}"),
    }
    let full = f_signature_sequence(&r, &node, 2, &Config::default()).unwrap();
    assert_eq!(full.reports.len(), 3);
    let json = serde_json::to_string(&full).unwrap();
    let back: fsplit_core::SignatureEstimate = serde_json::from_str(&json).unwrap();
    assert_eq!(back, full);
}

#[test]
fn function_field_coefficients() {
    use fsplit_core::RationalFunctionField;
    let k = RationalFunctionField::new(3, vec!["t".into()]).unwrap();
    let r = Ring::new(k, vec!["x".into(), "y".into()], fsplit_core::MonomialOrder::Grevlex).unwrap();
    let t = r.constant(r.field().transcendental(0).unwrap());
    // t*x*y generates the same ideal as x*y
    let g = r.mul(&t, &r.monomial(Monomial::new(&[1, 1]))).unwrap();
    let rep = normalized_splitting_number(&r, &IdealPresentation::new(vec![g]), 1, &Config::default()).unwrap();
    assert_eq!(rep.s_e.to_string(), "1/3");
    assert_eq!(rep.alpha, 1);
    assert_eq!(rep.a_e.unwrap(), BigUint::from(3u32));
}
