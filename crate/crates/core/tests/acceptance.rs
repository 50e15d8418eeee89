//! End-to-end acceptance run: one PASS/FAIL line per criterion, with the
//! time budget of each. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use klr_core::checks::{random_word_suite, relation_suite};
use klr_core::grothendieck::{
    char_projective, cycle_alpha, equal_in_f, orthogonal_idempotents_check, pair_monomials, pair_recursive,
    shuffle_product, tight, K0Vector, RecursivePairing, TightVerdict,
};
use klr_core::laurent::{qfact, qint};
use klr_core::linalg::Field;
use klr_core::poly::{monomials, Orientation, PolyRep, PolyVector};
use klr_core::quotients::{cyclotomic_spec, graded_basis, quotient_gdim, sym_plus_spec};
use klr_core::seq::{seq_enumerate, seqd_enumerate};
use klr_core::perm::{diagram_degree, Permutation};
use klr_core::{
    CartanGraph, Degree, DividedSequence, GradedDim, KlrAlgebra, KlrElement, LaurentPoly, Sequence, Weight,
};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: klr_core::KlrError) -> String {
    e.to_string()
}

/// Every nonzero weight of total size at most `max`.
fn weights(g: &CartanGraph, max: u32) -> Vec<Weight> {
    fn rec(n: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Weight>) {
        if prefix.len() == n {
            if prefix.iter().any(|&c| c > 0) {
                out.push(Weight(prefix.clone()));
            }
            return;
        }
        for c in 0..=budget {
            prefix.push(c);
            rec(n, budget - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(g.num_vertices(), max, &mut Vec::new(), &mut out);
    out
}

fn ds(g: &CartanGraph, s: &str) -> DividedSequence {
    DividedSequence::parse(g, s).unwrap()
}

fn test_graphs() -> Vec<(&'static str, CartanGraph)> {
    vec![
        ("A2", CartanGraph::a2()),
        ("A1xA1", CartanGraph::a1xa1()),
        ("A1", CartanGraph::a1()),
        ("3-cycle", CartanGraph::cycle(3).unwrap()),
    ]
}

fn relations() -> Outcome {
    let mut total = 0;
    for (name, g) in test_graphs() {
        let alg = KlrAlgebra::new(g);
        let checks = relation_suite(&alg, 3).map_err(err)?;
        if let Some(bad) = checks.iter().find(|c| !c.passed()) {
            return Err(format!("{name}: {} gives {} vs {}", bad.name, bad.lhs.display(alg.graph()), bad.rhs.display(alg.graph())));
        }
        total += checks.len();
    }
    Ok(format!("{total} identities"))
}

fn oracle() -> Outcome {
    let mut words = 0;
    let mut evaluations = 0;
    for (seed, (name, g)) in test_graphs().into_iter().enumerate() {
        let alg = KlrAlgebra::new(g);
        let report = random_word_suite(&alg, &Orientation::default_for(alg.graph()), 200, seed as u64, 3).map_err(err)?;
        if let Some(f) = report.failures.first() {
            return Err(format!("{name}: word {:?} on monomial {:?}", f.word, f.monomial));
        }
        words += report.words;
        evaluations += report.evaluations;
    }
    Ok(format!("{words} words, {evaluations} evaluations in both orientations"))
}

fn pairing() -> Outcome {
    let a1 = CartanGraph::a1();
    let one = LaurentPoly::one();
    let v = pair_monomials(&a1, &ds(&a1, "i"), &ds(&a1, "i")).map_err(err)?;
    ensure(v == GradedDim::new(one.clone(), vec![1]).unwrap(), || format!("(i, i) = {v}"))?;
    let v = pair_monomials(&a1, &ds(&a1, "i^(2)"), &ds(&a1, "i^(2)")).map_err(err)?;
    ensure(v == GradedDim::new(one, vec![1, 2]).unwrap(), || format!("(i^(2), i^(2)) = {v}"))?;
    let a2 = CartanGraph::a2();
    let mut recursive = RecursivePairing::new(&a2);
    let mut pairs = 0;
    for nu in weights(&a2, 5) {
        let thetas = seqd_enumerate(&nu);
        for a in &thetas {
            for b in &thetas {
                let x = pair_monomials(&a2, a, b).map_err(err)?;
                let y = recursive.pair(a, b).map_err(err)?;
                ensure(x == y, || format!("({}, {}): {x} vs {y}", a.display(&a2), b.display(&a2)))?;
                pairs += 1;
            }
        }
    }
    // one cross-check through the standalone entry point
    let (a, b) = (ds(&a2, "i j^(2) i"), ds(&a2, "j i^(2) j"));
    ensure(pair_recursive(&a2, &a, &b).map_err(err)? == pair_monomials(&a2, &a, &b).map_err(err)?, || "standalone".into())?;
    Ok(format!("{pairs} monomial pairs on A2 agree"))
}

fn shuffle_lemma() -> Outcome {
    let mut count = 0;
    for (name, g) in [("A2", CartanGraph::a2()), ("A1xA1", CartanGraph::a1xa1())] {
        let thetas: Vec<DividedSequence> = weights(&g, 4).iter().flat_map(seqd_enumerate).collect();
        for a in &thetas {
            for b in &thetas {
                if a.len() + b.len() > 4 {
                    continue;
                }
                let lhs = char_projective(&g, &a.concat(b)).map_err(err)?;
                let rhs = shuffle_product(&g, &char_projective(&g, a).map_err(err)?, &char_projective(&g, b).map_err(err)?);
                ensure(lhs == rhs, || format!("{name}: {} * {}", a.display(&g), b.display(&g)))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} products"))
}

fn k0(g: &CartanGraph, terms: &[(&str, LaurentPoly)]) -> K0Vector {
    let mut v: Option<K0Vector> = None;
    for (s, c) in terms {
        let t = K0Vector::monomial(g, ds(g, s), c.clone());
        v = Some(match v {
            None => t,
            Some(acc) => acc.add(&t).unwrap(),
        });
    }
    v.unwrap()
}

fn serre() -> Outcome {
    let one = LaurentPoly::one;
    let a2 = CartanGraph::a2();
    let a1xa1 = CartanGraph::a1xa1();
    let a1 = CartanGraph::a1();
    let cases = [
        ("P_ij = P_ji (i.j = 0)", &a1xa1, k0(&a1xa1, &[("ij", one())]), k0(&a1xa1, &[("ji", one())])),
        ("[2] P_iji = P_iij + P_jii", &a2, k0(&a2, &[("iji", qint(2))]), k0(&a2, &[("iij", one()), ("jii", one())])),
        ("P_iji = P_i(2)j + P_ji(2)", &a2, k0(&a2, &[("iji", one())]), k0(&a2, &[("i^(2)j", one()), ("ji^(2)", one())])),
        ("P_jij = P_j(2)i + P_ij(2)", &a2, k0(&a2, &[("jij", one())]), k0(&a2, &[("j^(2)i", one()), ("ij^(2)", one())])),
        ("P_ii = [2]! P_i(2)", &a1, k0(&a1, &[("ii", one())]), k0(&a1, &[("i^(2)", qfact(2))])),
    ];
    for (name, g, lhs, rhs) in &cases {
        ensure(equal_in_f(g, lhs, rhs).map_err(err)?, || format!("{name} fails"))?;
    }
    // the identities are not vacuous: a wrong coefficient is detected
    let wrong = k0(&a2, &[("iji", one())]);
    ensure(!equal_in_f(&a2, &wrong, &k0(&a2, &[("iij", one()), ("jii", one())])).map_err(err)?, || "form is degenerate".into())?;
    Ok(format!("{} identities", cases.len()))
}

fn idempotents() -> Outcome {
    let alg = KlrAlgebra::new(CartanGraph::a2());
    for (i, j) in [(0, 1), (1, 0)] {
        let r = orthogonal_idempotents_check(&alg, i, j).map_err(err)?;
        ensure(r.all(), || format!("{r:?}"))?;
    }
    Ok("E1^2 = E1, E2^2 = E2, E1E2 = E2E1 = 0, E1 + E2 = 1 on iji and jij".into())
}

fn nilhecke() -> Outcome {
    let g = CartanGraph::a1();
    let alg = KlrAlgebra::new(g.clone());
    let rep = PolyRep::with_default_orientation(&g);
    for m in 1..=5 {
        let e = alg.nilhecke_em(m, 0);
        ensure(!e.is_zero(), || format!("e_{m} vanishes"))?;
        ensure(e.degree(&g).map_err(err)? == Degree::Homogeneous(0), || format!("e_{m} has nonzero degree"))?;
        ensure(alg.multiply(&e, &e).map_err(err)? == e, || format!("e_{m}^2 != e_{m}"))?;
        // independently: e acts as a projection on polynomials
        if m <= 4 {
            for exps in monomials(m, 2) {
                let f = PolyVector::monomial(Sequence(vec![0; m]), exps);
                let once = rep.act(&e, &f).map_err(err)?;
                ensure(rep.act(&e, &once).map_err(err)? == once, || format!("e_{m} is not a projection"))?;
            }
        }
    }
    Ok("m = 1..5".into())
}

fn cycles() -> Outcome {
    let mut notes = Vec::new();
    for n in [3, 4] {
        let g = CartanGraph::cycle(n).unwrap();
        let alg = KlrAlgebra::new(g.clone());
        let (alpha, square) = cycle_alpha(&alg, n).map_err(err)?;
        let expected = if n % 2 == 1 { KlrElement::zero(alpha.weight().clone()) } else { alpha.scale(&BigInt::from(-2)) };
        ensure(square == expected, || format!("n = {n}: alpha^2 = {}", square.display(&g)))?;
        let rep = PolyRep::with_default_orientation(&g);
        ensure(rep.oracle_equal(&square, &expected, 1).map_err(err)?, || format!("n = {n}: polynomial action disagrees"))?;
        notes.push(if n == 3 { "alpha^2 = 0 on the 3-cycle" } else { "alpha^2 = -2 alpha on the 4-cycle" });
    }
    Ok(notes.join(", "))
}

fn tightness() -> Outcome {
    let g = CartanGraph::a2();
    let monomial = |a: u32, b: u32, c: u32| {
        let blocks: Vec<(usize, u32)> = [(0, a), (1, b), (0, c)].into_iter().filter(|&(_, n)| n > 0).collect();
        DividedSequence::new(blocks).unwrap()
    };
    for (a, b, c) in [(0, 1, 0), (1, 2, 1), (1, 3, 1), (2, 3, 1)] {
        let v = tight(&g, &monomial(a, b, c), 20).map_err(err)?;
        ensure(v.is_tight(), || format!("({a},{b},{c}): {v}"))?;
    }
    let v = tight(&g, &monomial(1, 1, 1), 20).map_err(err)?;
    ensure(v == TightVerdict::NotTight { exponent: 0, coeff: BigInt::from(2) }, || format!("(1,1,1): {v}"))?;
    Ok("4 tight monomials; iji has constant term 2".into())
}

fn quotients() -> Outcome {
    let a1 = CartanGraph::a1();
    let alg = KlrAlgebra::new(a1.clone());
    let w = |s: &str| Weight::parse(&a1, s).unwrap();
    for lambda in 0..=4i64 {
        let spec = cyclotomic_spec(&a1, &w("i:1"), &w(&format!("i:{lambda}"))).map_err(err)?;
        let r = quotient_gdim(&alg, &spec, 12, 3, Field::Rational).map_err(err)?;
        let expected = LaurentPoly::from_terms((0..lambda).map(|k| (2 * k, 1)));
        ensure(r.stabilized && r.poly() == expected, || format!("R(i; {lambda}i) = {}", r.poly()))?;
    }
    // brute-force fixtures
    for (m, lambda, expected) in [(1, 1, "1"), (1, 2, "1 + q^2"), (2, 2, "q^-2 + 2 + q^2")] {
        let spec = cyclotomic_spec(&a1, &w(&format!("i:{m}")), &w(&format!("i:{lambda}"))).map_err(err)?;
        let r = quotient_gdim(&alg, &spec, 12, 3, Field::Rational).map_err(err)?;
        ensure(r.stabilized && r.poly().to_string() == expected, || format!("({m},{lambda}): {}", r.poly()))?;
    }
    let mut runs = 0;
    for g in [CartanGraph::a2(), CartanGraph::a1xa1(), CartanGraph::a1()] {
        let alg = KlrAlgebra::new(g.clone());
        for nu in weights(&g, 3) {
            let r = quotient_gdim(&alg, &sym_plus_spec(&g, &nu).map_err(err)?, 10, 3, Field::Rational).map_err(err)?;
            let fact: usize = (1..=nu.size()).product();
            ensure(r.stabilized && r.total() == fact * fact, || format!("R'({:?}) has total {}", nu.0, r.total()))?;
            runs += 1;
        }
    }
    Ok(format!("cyclotomic lambda <= 4, fixtures (1,1) (1,2) (2,2), {runs} finite quotients"))
}

fn lower_bound() -> Outcome {
    let mut checked = 0;
    for g in [CartanGraph::a2(), CartanGraph::a1xa1(), CartanGraph::a1(), CartanGraph::cycle(3).unwrap()] {
        for nu in weights(&g, 4) {
            let bound = nu.degree_lower_bound();
            // independent minimum: lowest crossing-only diagram degree
            let seqs = seq_enumerate(&nu);
            let min = seqs
                .iter()
                .flat_map(|i| Permutation::all(i.len()).map(|w| diagram_degree(&g, i, &w)).collect::<Vec<_>>())
                .min()
                .unwrap();
            ensure(min == bound, || format!("{:?}: min diagram degree {min}, bound {bound}", nu.0))?;
            for d in (bound - 4)..bound {
                ensure(graded_basis(&g, &nu, d).is_empty(), || format!("{:?}: degree {d} nonempty", nu.0))?;
            }
            ensure(!graded_basis(&g, &nu, bound).is_empty(), || format!("{:?}: bound not attained", nu.0))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} weights"))
}

fn main() {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("relation suite", Duration::from_secs(5), relations),
        ("oracle consistency", Duration::from_secs(60), oracle),
        ("pairing values", Duration::from_secs(120), pairing),
        ("shuffle lemma", Duration::from_secs(60), shuffle_lemma),
        ("serre and K0 identities", Duration::from_secs(10), serre),
        ("orthogonal idempotents", Duration::from_secs(5), idempotents),
        ("nilHecke idempotents", Duration::from_secs(30), nilhecke),
        ("cycle phenomenon", Duration::from_secs(300), cycles),
        ("tightness", Duration::from_secs(60), tightness),
        ("quotients", Duration::from_secs(300), quotients),
        ("degree lower bound", Duration::from_secs(10), lower_bound),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= limit => format!("PASS {:>2} {name}: {detail} ({elapsed:.2?}, limit {limit:?})", k + 1),
            Ok(detail) => format!("FAIL {:>2} {name}: {detail} but took {elapsed:.2?}, limit {limit:?}", k + 1),
            Err(why) => format!("FAIL {:>2} {name}: {why} ({elapsed:.2?})", k + 1),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
