mod common;

use common::base;
use pfd::factor::validate_factorization;
use pfd::poly::poly_gcd;
use pfd::{coprime_basis_refine, squarefree_decompose, FactoredDenominator, Poly, Rational};
use proptest::prelude::*;

fn denominator() -> impl Strategy<Value = FactoredDenominator<Rational>> {
    prop::collection::vec((base(3, 5), 1u32..=3), 1..=4)
        .prop_map(|parts| FactoredDenominator::from_parts(Rational::from(1), parts).unwrap())
}

fn is_basis(fd: &FactoredDenominator<Rational>) -> bool {
    let squarefree = fd
        .factors
        .iter()
        .all(|f| f.base.is_monic() && poly_gcd(&f.base, &f.base.derivative()).unwrap().is_one());
    let coprime = fd.factors.iter().enumerate().all(|(i, a)| {
        fd.factors[i + 1..]
            .iter()
            .all(|b| poly_gcd(&a.base, &b.base).unwrap().is_one())
    });
    squarefree && coprime
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn refinement_preserves_product(fd in denominator()) {
        let refined = coprime_basis_refine(&fd);
        prop_assert_eq!(refined.expand(), fd.expand());
        prop_assert!(validate_factorization(&refined, &fd.expand()));
        prop_assert!(is_basis(&refined));
        prop_assert!(refined.is_coprime_basis());
        prop_assert_eq!(coprime_basis_refine(&refined), refined);
    }

    #[test]
    fn squarefree_reproduces_input(fd in denominator()) {
        let p = fd.expand();
        let sq = squarefree_decompose(&p).unwrap();
        prop_assert_eq!(sq.expand(), p);
        prop_assert!(sq.factors.iter().all(|f| poly_gcd(&f.base, &f.base.derivative()).unwrap().is_one()));
        let mut mults: Vec<u32> = sq.factors.iter().map(|f| f.multiplicity).collect();
        mults.sort();
        mults.dedup();
        prop_assert_eq!(mults.len(), sq.factors.len());
    }
}

#[test]
fn shared_factor_is_split() {
    let fd = FactoredDenominator::from_parts(
        Rational::from(2),
        [(Poly::from_ints(&[-1, 0, 1]), 1), (Poly::from_ints(&[-1, 1]), 1)],
    )
    .unwrap();
    let refined = coprime_basis_refine(&fd);
    assert_eq!(refined.expand(), fd.expand());
    assert!(is_basis(&refined));
    assert_eq!(refined.factors.len(), 2);
}
