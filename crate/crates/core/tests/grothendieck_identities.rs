use klr_core::grothendieck::{cycle_alpha, orthogonal_idempotents_check, serre_check};
use klr_core::{CartanGraph, KlrAlgebra};
use num_bigint::BigInt;

#[test]
fn serre_relations() {
    let a2 = CartanGraph::a2();
    assert!(serre_check(&a2, 0, 1).unwrap());
    assert!(serre_check(&a2, 1, 0).unwrap());
    assert!(serre_check(&CartanGraph::a1xa1(), 0, 1).unwrap());
    let g = CartanGraph::a2xa1();
    assert!(serre_check(&g, 0, 2).unwrap());
    assert!(serre_check(&g, 0, 0).is_err());
}

#[test]
fn iji_idempotents() {
    let alg = KlrAlgebra::new(CartanGraph::a2());
    let report = orthogonal_idempotents_check(&alg, 0, 1).unwrap();
    assert!(report.all(), "{report:?}");
    let report = orthogonal_idempotents_check(&alg, 1, 0).unwrap();
    assert!(report.all(), "{report:?}");
}

#[test]
fn odd_cycle_alpha_squares_to_zero() {
    let alg = KlrAlgebra::new(CartanGraph::cycle(3).unwrap());
    let (alpha, square) = cycle_alpha(&alg, 3).unwrap();
    assert_eq!(alpha.degree(alg.graph()).unwrap(), klr_core::Degree::Homogeneous(0));
    assert!(square.is_zero(), "{}", square.display(alg.graph()));
}

#[test]
fn even_cycle_alpha_square() {
    let alg = KlrAlgebra::new(CartanGraph::cycle(4).unwrap());
    let (alpha, square) = cycle_alpha(&alg, 4).unwrap();
    assert_eq!(square, alpha.scale(&BigInt::from(-2)), "{}", square.display(alg.graph()));
}
