//! Self-checks shared by the command line and the test suites: the
//! defining relations on short sequences, and random generator words
//! compared against the polynomial representation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{GeneratorWord, KlrAlgebra, Token};
use crate::element::KlrElement;
use crate::error::Result;
use crate::graph::CartanGraph;
use crate::poly::{monomials, Orientation, PolyRep, PolyVector};
use crate::seq::Sequence;

/// One identity `lhs = rhs` checked in normal form and, independently, on
/// the polynomial representation.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: String,
    pub lhs: KlrElement,
    pub rhs: KlrElement,
    pub normal_form_ok: bool,
    pub oracle_ok: bool,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.normal_form_ok && self.oracle_ok
    }
}

fn all_sequences(graph: &CartanGraph, m: usize) -> Vec<Sequence> {
    let mut out = vec![Sequence::empty()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|s| graph.vertices().map(move |v| s.concat(&Sequence::new(vec![v]))))
            .collect();
    }
    out
}

struct Suite<'a> {
    alg: &'a KlrAlgebra,
    reps: Vec<PolyRep<'a>>,
    out: Vec<RelationCheck>,
}

impl<'a> Suite<'a> {
    fn word(&self, base: &Sequence, tokens: &[Token]) -> Result<KlrElement> {
        self.alg.evaluate_word(&GeneratorWord { base: base.clone(), tokens: tokens.to_vec() })
    }

    fn record(&mut self, name: String, lhs: KlrElement, rhs: KlrElement) -> Result<()> {
        let normal_form_ok = lhs == rhs;
        let mut oracle_ok = true;
        for rep in &self.reps {
            oracle_ok &= rep.oracle_equal(&lhs, &rhs, 3)?;
        }
        self.out.push(RelationCheck { name, lhs, rhs, normal_form_ok, oracle_ok });
        Ok(())
    }
}

/// Every defining relation for every labelling of 2 and 3 strands (up to
/// `max_strands`), under both orientations for the oracle.
pub fn relation_suite(alg: &KlrAlgebra, max_strands: usize) -> Result<Vec<RelationCheck>> {
    use Token::{Cross as C, Dot as D};
    let graph = alg.graph();
    let o = Orientation::default_for(graph);
    let mut suite = Suite { alg, reps: vec![PolyRep::new(graph, o.clone()), PolyRep::new(graph, o.reversed())], out: Vec::new() };
    let g = |s: &Sequence| s.display(graph);
    for m in 2..=max_strands {
        let seqs = all_sequences(graph, m);
        for i in &seqs {
            let one = alg.idempotent(i);
            let zero = KlrElement::zero(one.weight().clone());
            suite.record(format!("1_{0} 1_{0} = 1_{0}", g(i)), alg.multiply(&one, &one)?, one.clone())?;
            for j in seqs.iter().filter(|j| *j != i && j.weight(graph) == i.weight(graph)) {
                suite.record(format!("1_{} 1_{} = 0", g(j), g(i)), alg.multiply(&alg.idempotent(j), &one)?, zero.clone())?;
            }
            // dots commute
            for a in 1..=m {
                for b in (a + 1)..=m {
                    suite.record(format!("x{a} x{b} = x{b} x{a} on {}", g(i)), suite.word(i, &[D(b), D(a)])?, suite.word(i, &[D(a), D(b)])?)?;
                }
            }
            for k in 1..m {
                let (u, v) = (i.0[k - 1], i.0[k]);
                // quadratic relation
                let rhs = match graph.cartan(u, v) {
                    2 => zero.clone(),
                    0 => one.clone(),
                    _ => suite.word(i, &[D(k)])?.add(&suite.word(i, &[D(k + 1)])?)?,
                };
                suite.record(format!("d{k} d{k} on {}", g(i)), suite.word(i, &[C(k), C(k)])?, rhs)?;
                // dots far from the crossing slide through
                for a in (1..=m).filter(|&a| a != k && a != k + 1) {
                    suite.record(format!("x{a} d{k} = d{k} x{a} on {}", g(i)), suite.word(i, &[C(k), D(a)])?, suite.word(i, &[D(a), C(k)])?)?;
                }
                // dots on the crossing strands
                let (corr_top, corr_bottom) = if u == v { (one.clone(), one.neg()) } else { (zero.clone(), zero.clone()) };
                suite.record(
                    format!("x{k} d{k} on {}", g(i)),
                    suite.word(i, &[C(k), D(k)])?,
                    suite.word(i, &[D(k + 1), C(k)])?.add(&corr_top)?,
                )?;
                suite.record(
                    format!("x{} d{k} on {}", k + 1, g(i)),
                    suite.word(i, &[C(k), D(k + 1)])?,
                    suite.word(i, &[D(k), C(k)])?.add(&corr_bottom)?,
                )?;
            }
            for k in 1..m.saturating_sub(1) {
                let (a, b, c) = (i.0[k - 1], i.0[k], i.0[k + 1]);
                let rhs = if a == c && graph.cartan(a, b) == -1 { one.clone() } else { zero.clone() };
                let lhs = suite.word(i, &[C(k), C(k + 1), C(k)])?.sub(&suite.word(i, &[C(k + 1), C(k), C(k + 1)])?)?;
                suite.record(format!("braid at {k} on {}", g(i)), lhs, rhs)?;
            }
            for k in 1..m {
                for l in (k + 2)..m {
                    suite.record(format!("d{k} d{l} = d{l} d{k} on {}", g(i)), suite.word(i, &[C(l), C(k)])?, suite.word(i, &[C(k), C(l)])?)?;
                }
            }
        }
    }
    Ok(suite.out)
}

/// A word whose normal form disagreed with the composed generator actions.
#[derive(Clone, Debug)]
pub struct OracleFailure {
    pub word: GeneratorWord,
    pub monomial: Vec<u32>,
    pub reversed_orientation: bool,
}

/// Outcome of [`random_word_suite`].
#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub words: usize,
    pub evaluations: usize,
    pub failures: Vec<OracleFailure>,
}

/// A random word of at most `max_tokens` generators on at most
/// `max_strands` strands.
pub fn random_word(graph: &CartanGraph, rng: &mut impl Rng, max_strands: usize, max_tokens: usize) -> GeneratorWord {
    let m = rng.gen_range(1..=max_strands);
    let base = Sequence((0..m).map(|_| rng.gen_range(0..graph.num_vertices())).collect());
    let n = rng.gen_range(0..=max_tokens);
    let tokens = (0..n)
        .map(|_| {
            if m > 1 && rng.gen_bool(0.6) {
                Token::Cross(rng.gen_range(1..m))
            } else {
                Token::Dot(rng.gen_range(1..=m))
            }
        })
        .collect();
    GeneratorWord { base, tokens }
}

/// Compares the normal form of `count` random words against the composed
/// generator actions on every monomial of degree at most `bound`, under
/// `orientation` and its reversal.
pub fn random_word_suite(
    alg: &KlrAlgebra,
    orientation: &Orientation,
    count: usize,
    seed: u64,
    bound: u32,
) -> Result<OracleReport> {
    let graph = alg.graph();
    let reps = [(false, PolyRep::new(graph, orientation.clone())), (true, PolyRep::new(graph, orientation.reversed()))];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport::default();
    for _ in 0..count {
        let word = random_word(graph, &mut rng, 4, 6);
        let element = alg.evaluate_word(&word)?;
        report.words += 1;
        for exps in monomials(word.base.len(), bound) {
            let f = PolyVector::monomial(word.base.clone(), exps.clone());
            for (reversed, rep) in &reps {
                report.evaluations += 1;
                if rep.act(&element, &f)? != rep.act_tokens(&word.tokens, &f)? {
                    report.failures.push(OracleFailure { word: word.clone(), monomial: exps.clone(), reversed_orientation: *reversed });
                }
            }
        }
    }
    Ok(report)
}

/// `z * g = g * z` for every generator `g` on every sequence of the weight.
pub fn is_central(alg: &KlrAlgebra, z: &KlrElement) -> Result<bool> {
    for i in crate::seq::seq_enumerate(z.weight()) {
        let m = i.len();
        let tokens = (1..=m).map(Token::Dot).chain((1..m).map(Token::Cross));
        for t in tokens {
            let g = alg.generator(t, &i)?;
            if alg.multiply(z, &g)? != alg.multiply(&g, z)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
