//! The polynomial representation: `R(nu)` acts faithfully on
//! `⊕_i Z[x_1(i), ..., x_m(i)]`. Used as an independent oracle for the
//! rewriting engine, so nothing here touches normal forms beyond reading
//! off basis keys.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Token;
use crate::element::KlrElement;
use crate::error::{KlrError, Result};
use crate::graph::{CartanGraph, Vertex};
use crate::seq::{seq_enumerate, Sequence};

/// A direction for every edge of the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    /// `(tail, head)` pairs.
    arrows: BTreeSet<(Vertex, Vertex)>,
}

impl Orientation {
    /// Every edge points from the smaller to the larger vertex name.
    pub fn default_for(graph: &CartanGraph) -> Self {
        Self { arrows: graph.edges().collect() }
    }

    pub fn reversed(&self) -> Self {
        Self { arrows: self.arrows.iter().map(|&(a, b)| (b, a)).collect() }
    }

    /// From explicit `(tail, head)` names; every edge must appear once.
    pub fn from_arrows<S: AsRef<str>>(graph: &CartanGraph, arrows: &[(S, S)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in arrows {
            let (a, b) = (graph.vertex(a.as_ref())?, graph.vertex(b.as_ref())?);
            if !graph.is_edge(a, b) {
                return Err(KlrError::InvalidArgument(format!("{} -> {} is not an edge", graph.name(a), graph.name(b))));
            }
            if set.contains(&(b, a)) || !set.insert((a, b)) {
                return Err(KlrError::InvalidArgument("edge oriented twice".into()));
            }
        }
        if set.len() != graph.edges().count() {
            return Err(KlrError::InvalidArgument("every edge needs a direction".into()));
        }
        Ok(Self { arrows: set })
    }

    /// JSON list of `[tail, head]` pairs.
    pub fn from_json(graph: &CartanGraph, text: &str) -> Result<Self> {
        let pairs: Vec<[String; 2]> = serde_json::from_str(text).map_err(|e| KlrError::Parse(e.to_string()))?;
        let arrows: Vec<(String, String)> = pairs.into_iter().map(|[a, b]| (a, b)).collect();
        Self::from_arrows(graph, &arrows)
    }

    pub fn points(&self, tail: Vertex, head: Vertex) -> bool {
        self.arrows.contains(&(tail, head))
    }
}

/// Sparse integer polynomial in `m` variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exps: Vec<u32>, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        let mut out = MPoly::zero();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul_var(&self, k: usize, times: u32) -> MPoly {
        if times == 0 {
            return self.clone();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[k] += times;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn swap_vars(&self, k: usize) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(k, k + 1);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    fn mul_linear(&self, k: usize, sign: i64) -> MPoly {
        // self * (x_k + sign * x_{k+1})
        self.mul_var(k, 1).add(&self.mul_var(k + 1, 1).scale(&BigInt::from(sign)))
    }

    /// `(f - s_k f) / (x_k - x_{k+1})`, by long division in `x_k`.
    pub fn divided_difference(&self, k: usize) -> MPoly {
        let mut rem = self.add(&self.swap_vars(k).scale(&-BigInt::one()));
        let mut quot = MPoly::zero();
        while let Some((lead, c)) = rem.terms.iter().max_by_key(|(e, _)| (e[k], (*e).clone())).map(|(e, c)| (e.clone(), c.clone())) {
            assert!(lead[k] > 0, "divided difference: remainder not divisible by x_k - x_k+1");
            let mut q = lead;
            q[k] -= 1;
            let step = MPoly::monomial(q.clone(), c.clone());
            quot.add_term(q, c);
            rem = rem.add(&step.mul_linear(k, -1).scale(&-BigInt::one()));
        }
        quot
    }
}

/// An element of `⊕_i Pol_i`: one polynomial per sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyVector {
    parts: BTreeMap<Sequence, MPoly>,
}

impl PolyVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `x^exps` in the summand of `seq`.
    pub fn monomial(seq: Sequence, exps: Vec<u32>) -> Self {
        let mut v = Self::zero();
        v.add_part(seq, MPoly::monomial(exps, 1));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Sequence, &MPoly)> {
        self.parts.iter()
    }

    pub fn part(&self, seq: &Sequence) -> MPoly {
        self.parts.get(seq).cloned().unwrap_or_default()
    }

    pub fn add_part(&mut self, seq: Sequence, p: MPoly) {
        let merged = self.part(&seq).add(&p);
        if merged.is_zero() {
            self.parts.remove(&seq);
        } else {
            self.parts.insert(seq, merged);
        }
    }

    pub fn add(&self, other: &PolyVector) -> PolyVector {
        let mut out = self.clone();
        for (s, p) in &other.parts {
            out.add_part(s.clone(), p.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> PolyVector {
        let mut out = PolyVector::zero();
        for (s, p) in &self.parts {
            out.add_part(s.clone(), p.scale(c));
        }
        out
    }
}

/// The action for one graph and one orientation.
pub struct PolyRep<'g> {
    graph: &'g CartanGraph,
    orientation: Orientation,
}

impl<'g> PolyRep<'g> {
    pub fn new(graph: &'g CartanGraph, orientation: Orientation) -> Self {
        Self { graph, orientation }
    }

    pub fn with_default_orientation(graph: &'g CartanGraph) -> Self {
        Self::new(graph, Orientation::default_for(graph))
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    fn act_zero_based(&self, token: Token, seq: &Sequence, f: &MPoly) -> (Sequence, MPoly) {
        match token {
            Token::Dot(k) => (seq.clone(), f.mul_var(k, 1)),
            Token::Cross(k) => {
                let (a, b) = (seq.0[k], seq.0[k + 1]);
                let target = seq.swapped(k);
                let g = if a == b {
                    f.divided_difference(k)
                } else if self.graph.is_edge(a, b) && self.orientation.points(a, b) {
                    f.swap_vars(k).mul_linear(k, 1)
                } else {
                    f.swap_vars(k)
                };
                (target, g)
            }
        }
    }

    /// Action of `x_k` or `δ_k` (1-based) on every summand.
    pub fn act_generator(&self, token: Token, f: &PolyVector) -> Result<PolyVector> {
        let mut out = PolyVector::zero();
        for (seq, p) in f.parts() {
            let m = seq.len();
            let t0 = match token {
                Token::Dot(k) if (1..=m).contains(&k) => Token::Dot(k - 1),
                Token::Cross(k) if k >= 1 && k < m => Token::Cross(k - 1),
                Token::Dot(k) | Token::Cross(k) => return Err(KlrError::IndexOutOfRange { index: k, strands: m }),
            };
            let (s, g) = self.act_zero_based(t0, seq, p);
            out.add_part(s, g);
        }
        Ok(out)
    }

    /// Applies generators bottom to top.
    pub fn act_tokens(&self, tokens: &[Token], f: &PolyVector) -> Result<PolyVector> {
        tokens.iter().try_fold(f.clone(), |acc, &t| self.act_generator(t, &acc))
    }

    /// Action of a ring element. Each basis key acts by its dots, then the
    /// crossings of its canonical word from the bottom up.
    pub fn act(&self, x: &KlrElement, f: &PolyVector) -> Result<PolyVector> {
        for (seq, _) in f.parts() {
            if &seq.weight(self.graph) != x.weight() {
                return Err(KlrError::WeightMismatch(format!("polynomial on {} has the wrong weight", seq.display(self.graph))));
            }
        }
        let mut out = PolyVector::zero();
        for (key, c) in x.terms() {
            let p = f.part(&key.source);
            if p.is_zero() {
                continue;
            }
            let mut seq = key.source.clone();
            let mut g = p;
            for (k, &u) in key.dots.iter().enumerate() {
                g = g.mul_var(k, u);
            }
            for &k in key.perm.lex_word().iter().rev() {
                let (s, h) = self.act_zero_based(Token::Cross(k), &seq, &g);
                seq = s;
                g = h;
            }
            out.add_part(seq, g.scale(c));
        }
        Ok(out)
    }

    /// Whether `x` and `y` act identically on every monomial of degree at
    /// most `bound` in every summand of their weight. Evidence, not proof.
    pub fn oracle_equal(&self, x: &KlrElement, y: &KlrElement, bound: u32) -> Result<bool> {
        if x.weight() != y.weight() {
            return Err(KlrError::WeightMismatch("oracle_equal on different weights".into()));
        }
        for seq in seq_enumerate(x.weight()) {
            for exps in monomials(seq.len(), bound) {
                let f = PolyVector::monomial(seq.clone(), exps);
                if self.act(x, &f)? != self.act(y, &f)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// All exponent vectors of length `m` with total degree at most `bound`.
pub fn monomials(m: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(m, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, bound, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(exps: &[u32]) -> MPoly {
        MPoly::monomial(exps.to_vec(), 1)
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(x(&[1, 0]).divided_difference(0), x(&[0, 0]));
        assert_eq!(x(&[0, 1]).divided_difference(0), x(&[0, 0]).scale(&BigInt::from(-1)));
        assert!(x(&[1, 1]).divided_difference(0).is_zero());
        // x1^2 -> x1 + x2
        assert_eq!(x(&[2, 0]).divided_difference(0), x(&[1, 0]).add(&x(&[0, 1])));
    }

    #[test]
    fn divided_difference_inverts_multiplication() {
        for exps in monomials(3, 4) {
            let f = MPoly::monomial(exps, 3);
            for k in 0..2 {
                let d = f.divided_difference(k);
                let back = d.mul_linear(k, -1);
                assert_eq!(back, f.add(&f.swap_vars(k).scale(&BigInt::from(-1))));
            }
        }
    }

    #[test]
    fn spec_generator_examples() {
        let g = CartanGraph::new(&["1", "2"], &[("1", "2")]).unwrap();
        let rep = PolyRep::with_default_orientation(&g);
        let s12 = Sequence::parse(&g, "1 2").unwrap();
        let s21 = Sequence::parse(&g, "2 1").unwrap();
        let one = PolyVector::monomial(s12.clone(), vec![0, 0]);
        let got = rep.act_generator(Token::Cross(1), &one).unwrap();
        let want = PolyVector::monomial(s21.clone(), vec![1, 0]).add(&PolyVector::monomial(s21.clone(), vec![0, 1]));
        assert_eq!(got, want);
        let x1 = PolyVector::monomial(s21, vec![1, 0]);
        assert_eq!(rep.act_generator(Token::Cross(1), &x1).unwrap(), PolyVector::monomial(s12, vec![0, 1]));
    }

    #[test]
    fn nilhecke_rule() {
        let g = CartanGraph::a1();
        let rep = PolyRep::with_default_orientation(&g);
        let ii = Sequence::parse(&g, "ii").unwrap();
        let f = PolyVector::monomial(ii.clone(), vec![1, 0]);
        assert_eq!(rep.act_generator(Token::Cross(1), &f).unwrap(), PolyVector::monomial(ii, vec![0, 0]));
    }

    #[test]
    fn quadratic_relation_either_orientation() {
        let g = CartanGraph::a2();
        let ij = Sequence::parse(&g, "ij").unwrap();
        let want = PolyVector::monomial(ij.clone(), vec![1, 0]).add(&PolyVector::monomial(ij.clone(), vec![0, 1]));
        for o in [Orientation::default_for(&g), Orientation::default_for(&g).reversed()] {
            let rep = PolyRep::new(&g, o);
            let one = PolyVector::monomial(ij.clone(), vec![0, 0]);
            assert_eq!(rep.act_tokens(&[Token::Cross(1), Token::Cross(1)], &one).unwrap(), want);
        }
    }

    #[test]
    fn orientation_parsing() {
        let g = CartanGraph::a2();
        let o = Orientation::from_json(&g, r#"[["j","i"]]"#).unwrap();
        assert_eq!(o, Orientation::default_for(&g).reversed());
        assert!(Orientation::from_json(&g, "[]").is_err());
        assert!(Orientation::from_json(&g, r#"[["i","i"]]"#).is_err());
    }

    #[test]
    fn monomial_count() {
        // C(m + d, d)
        assert_eq!(monomials(3, 3).len(), 20);
        assert_eq!(monomials(0, 3).len(), 1);
    }
}
