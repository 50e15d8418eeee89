use klr_core::linalg::Field;
use klr_core::quotients::{cyclotomic_spec, graded_basis, quotient_gdim, sym_plus_spec, IdealSpec};
use klr_core::seq::seq_enumerate;
use klr_core::{CartanGraph, KlrAlgebra, Weight};

fn all_weights(g: &CartanGraph, max: u32) -> Vec<Weight> {
    let n = g.num_vertices();
    let mut out = vec![Weight(vec![0; n])];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &out {
            for v in 0..n {
                let mut w2 = w.clone();
                w2.0[v] += 1;
                if !next.contains(&w2) && !out.contains(&w2) {
                    next.push(w2);
                }
            }
        }
        out.extend(next);
    }
    out.retain(|w| !w.is_zero());
    out
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn finite_quotient_has_dimension_m_factorial_squared_small() {
    for g in [CartanGraph::a2(), CartanGraph::a1xa1(), CartanGraph::a1()] {
        let alg = KlrAlgebra::new(g.clone());
        for nu in all_weights(&g, 2) {
            let spec = sym_plus_spec(&g, &nu).unwrap();
            let r = quotient_gdim(&alg, &spec, 10, 3, Field::Rational).unwrap();
            let m = nu.size();
            assert!(r.stabilized);
            assert_eq!(r.total(), factorial(m) * factorial(m), "{:?}", nu.0);
        }
    }
}

#[test]
fn cyclotomic_nilhecke_two_strands() {
    let g = CartanGraph::a1();
    let alg = KlrAlgebra::new(g.clone());
    let nu = Weight::parse(&g, "i:2").unwrap();
    let lambda = Weight::parse(&g, "i:2").unwrap();
    let r = quotient_gdim(&alg, &cyclotomic_spec(&g, &nu, &lambda).unwrap(), 10, 3, Field::Rational).unwrap();
    assert!(r.stabilized);
    assert_eq!(r.poly().to_string(), "q^-2 + 2 + q^2");
}

#[test]
fn zero_ideal_reproduces_the_ring() {
    let g = CartanGraph::a2();
    let alg = KlrAlgebra::new(g.clone());
    let nu = Weight::parse(&g, "i:2,j:1").unwrap();
    let spec = IdealSpec::new(&g, nu.clone(), vec![]).unwrap();
    let r = quotient_gdim(&alg, &spec, 4, 1, Field::Rational).unwrap();
    for (d, n) in &r.degrees {
        assert_eq!(*n, graded_basis(&g, &nu, *d).len());
    }
    assert!(!r.stabilized);
    assert_eq!(seq_enumerate(&nu).len(), 3);
}
